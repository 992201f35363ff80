"""Exact typed matrices forming a strict symmetric monoidal category.

Objects are words of generators; a word's basis is indexed mixed-radix with
the leftmost factor most significant, so ``tensor`` is ``numpy.kron``.
Entries are exact: rationals are held as an integer numerator array over a
single positive denominator, residues mod p as integers in ``[0, p)``.
Integer arrays stay ``int64`` while a bound on the result proves there is no
overflow and fall back to Python ints otherwise.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import ShapeError

_SAFE = 2**62


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Ground field descriptor: the rationals, or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"modulus {p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def scalar(self, x) -> Fraction | int:
        """Canonical scalar from an int, Fraction or string like ``"-3/4"``."""
        if isinstance(x, str):
            x = Fraction(x.replace("−", "-").strip())
        if isinstance(x, bool):
            x = int(x)
        if self.p is None:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"{x} has no residue mod {self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def format(self, x):
        """Bundle literal: strings for rationals, integers for residues."""
        x = self.scalar(x)
        if self.p is None:
            return str(x)
        return int(x)

    def random_scalar(self, rng: random.Random, small: int = 3):
        if self.p is None:
            return Fraction(rng.randint(-small, small), rng.choice((1, 1, 1, 2, 3)))
        return rng.randrange(self.p)

    # array helpers

    def _normalize(self, arr: np.ndarray, den: int) -> tuple[np.ndarray, int]:
        if self.p is not None:
            return _downcast(arr % self.p), 1
        if den < 0:
            arr, den = -arr, -den
        if den != 1:
            g = _gcd_all(arr, den)
            if g != 1:
                arr = arr // g
                den //= g
        return _downcast(arr), den

    def _from_entries(self, entries) -> tuple[np.ndarray, int]:
        rows = [[self.scalar(x) for x in row] for row in entries]
        if self.p is not None:
            return _array(rows), 1
        den = reduce(_lcm, (x.denominator for row in rows for x in row), 1)
        num = [[x.numerator * (den // x.denominator) for x in row] for row in rows]
        return self._normalize(_array(num), den)


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _gcd_all(arr: np.ndarray, den: int) -> int:
    g = den
    for x in arr.flat:
        g = math.gcd(g, int(x))
        if g == 1:
            break
    return g


def _array(rows) -> np.ndarray:
    a = np.array(rows, dtype=object)
    if a.ndim != 2:
        a = a.reshape(len(rows), -1) if len(rows) else np.zeros((0, 0), dtype=object)
    return _downcast(a)


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == np.int64:
        return int(np.abs(a).max())
    return max(abs(int(x)) for x in a.flat)


def _downcast(a: np.ndarray) -> np.ndarray:
    if a.dtype == np.int64:
        return a
    if _maxabs(a) < _SAFE:
        return a.astype(np.int64)
    return a.astype(object)


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[1]
    if a.dtype == np.int64 and b.dtype == np.int64:
        if n * _maxabs(a) * _maxabs(b) < _SAFE:
            return a @ b
    return a.astype(object) @ b.astype(object)


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == np.int64 and b.dtype == np.int64:
        if _maxabs(a) * _maxabs(b) < _SAFE:
            return np.kron(a, b)
    return np.kron(a.astype(object), b.astype(object))


def _lincomb(a: np.ndarray, s: int, b: np.ndarray, t: int) -> np.ndarray:
    if a.dtype == np.int64 and b.dtype == np.int64:
        if _maxabs(a) * abs(s) + _maxabs(b) * abs(t) < _SAFE:
            return a * s + b * t
    return a.astype(object) * s + b.astype(object) * t


class Gen(NamedTuple):
    """A generator object with a finite dimension."""

    name: str
    dim: int

    def __repr__(self):
        return self.name


class Word(tuple):
    """Tensor word of generators; the empty word is the unit object I."""

    def __new__(cls, gens: Iterable[Gen] = ()):
        gens = tuple(gens)
        for g in gens:
            if not isinstance(g, Gen):
                raise TypeError(f"word factors must be Gen, got {g!r}")
            if g.dim < 1:
                raise ValueError(f"generator {g.name} has dimension {g.dim} < 1")
        return super().__new__(cls, gens)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(g.dim for g in self)

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    def __add__(self, other):
        return Word(tuple(self) + tuple(as_word(other)))

    def __radd__(self, other):
        return Word(tuple(as_word(other)) + tuple(self))

    def __getitem__(self, key):
        r = super().__getitem__(key)
        return Word(r) if isinstance(key, slice) else r

    def __repr__(self):
        return "⊗".join(g.name for g in self) if self else "I"

    __str__ = __repr__

    def names(self) -> list[str]:
        return [g.name for g in self]

    def unravel(self, index: int) -> tuple[int, ...]:
        """Basis index of the word as a tuple of per-factor indices."""
        if not self:
            return ()
        return tuple(int(i) for i in np.unravel_index(index, self.dims))


I = Word()


def as_word(x) -> Word:
    if isinstance(x, Word):
        return x
    if isinstance(x, Gen):
        return Word((x,))
    return Word(x)


def tensor_words(*ws) -> Word:
    return reduce(lambda a, b: a + b, (as_word(w) for w in ws), I)


class Mor:
    """A morphism ``dom -> cod``: an exact ``dim(cod) x dim(dom)`` matrix."""

    __slots__ = ("dom", "cod", "field", "_a", "_d")

    def __init__(self, dom, cod, entries, field: Field = QQ):
        dom, cod = as_word(dom), as_word(cod)
        if isinstance(entries, np.ndarray):
            entries = entries.tolist()
        entries = [list(row) for row in entries]
        if len(entries) != cod.dim or any(len(row) != dom.dim for row in entries):
            widths = sorted({len(row) for row in entries})
            raise ShapeError(
                f"matrix with {len(entries)} rows of widths {widths} does not fit "
                f"{dom} -> {cod} (expected {cod.dim}x{dom.dim})"
            )
        arr, den = field._from_entries(entries)
        if arr.shape != (cod.dim, dom.dim):
            raise ShapeError(
                f"matrix of shape {arr.shape[0]}x{arr.shape[1]} does not fit "
                f"{dom} -> {cod} (expected {cod.dim}x{dom.dim})"
            )
        self._init(dom, cod, field, arr, den)

    def _init(self, dom, cod, field, arr, den):
        arr.flags.writeable = False
        self.dom, self.cod, self.field, self._a, self._d = dom, cod, field, arr, den

    @classmethod
    def _raw(cls, dom: Word, cod: Word, field: Field, arr: np.ndarray, den: int = 1) -> "Mor":
        arr, den = field._normalize(arr, den)
        m = cls.__new__(cls)
        m._init(dom, cod, field, arr, den)
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def entry(self, i: int, j: int):
        x = int(self._a[i, j])
        return Fraction(x, self._d) if self.field.p is None else x

    def tolist(self) -> list[list]:
        return [[self.entry(i, j) for j in range(self.shape[1])] for i in range(self.shape[0])]

    def column(self, j: int) -> list:
        return [self.entry(i, j) for i in range(self.shape[0])]

    def is_zero(self) -> bool:
        return not np.any(self._a)

    def nonzero(self) -> Iterator[tuple[int, int]]:
        rows, cols = np.nonzero(self._a)
        return zip(rows.tolist(), cols.tolist())

    def first_difference(self, other: "Mor") -> tuple[int, int] | None:
        """Row-major first entry where the two matrices differ."""
        if self._d == other._d:
            diff = np.argwhere(self._a != other._a)
            return None if len(diff) == 0 else tuple(int(t) for t in diff[0])
        for i in range(self.shape[0]):
            for j in range(self.shape[1]):
                if self.entry(i, j) != other.entry(i, j):
                    return (i, j)
        return None

    def relabel(self, dom, cod) -> "Mor":
        """Same matrix viewed between other words of equal dimensions."""
        dom, cod = as_word(dom), as_word(cod)
        if (dom.dim, cod.dim) != (self.dom.dim, self.cod.dim):
            raise ShapeError(f"cannot relabel {self.dom} -> {self.cod} as {dom} -> {cod}")
        return Mor._raw(dom, cod, self.field, self._a, self._d)

    def __eq__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.field == other.field
            and self._d == other._d
            and np.array_equal(self._a, other._a)
        )

    __hash__ = None

    def _same_type(self, other: "Mor", op: str):
        if self.field != other.field:
            raise ShapeError(f"{op}: field mismatch {self.field} vs {other.field}")
        if self.dom != other.dom or self.cod != other.cod:
            raise ShapeError(f"{op}: {self.dom} -> {self.cod} vs {other.dom} -> {other.cod}")

    def __add__(self, other: "Mor") -> "Mor":
        self._same_type(other, "add")
        arr = _lincomb(self._a, other._d, other._a, self._d)
        return Mor._raw(self.dom, self.cod, self.field, arr, self._d * other._d)

    def __neg__(self) -> "Mor":
        return Mor._raw(self.dom, self.cod, self.field, _lincomb(self._a, -1, self._a, 0), self._d)

    def __sub__(self, other: "Mor") -> "Mor":
        return self + (-other)

    def __rmul__(self, c) -> "Mor":
        c = self.field.scalar(c)
        if self.field.p is None:
            arr = _lincomb(self._a, c.numerator, self._a, 0)
            return Mor._raw(self.dom, self.cod, self.field, arr, self._d * c.denominator)
        return Mor._raw(self.dom, self.cod, self.field, _lincomb(self._a, c, self._a, 0))

    def __matmul__(self, other: "Mor") -> "Mor":
        return compose(self, other)

    def __repr__(self):
        rows = "; ".join(" ".join(str(x) for x in row) for row in self.tolist())
        return f"Mor({self.dom} -> {self.cod}, [{rows}])"


def identity(x, field: Field = QQ) -> Mor:
    x = as_word(x)
    return Mor._raw(x, x, field, np.eye(x.dim, dtype=np.int64))


def zero(dom, cod, field: Field = QQ) -> Mor:
    dom, cod = as_word(dom), as_word(cod)
    return Mor._raw(dom, cod, field, np.zeros((cod.dim, dom.dim), dtype=np.int64))


def compose(*ms: Mor) -> Mor:
    """``compose(h, g, f) = h . g . f``; the rightmost map is applied first."""
    if not ms:
        raise ValueError("compose needs at least one morphism")
    out = ms[-1]
    for g in reversed(ms[:-1]):
        if g.dom != out.cod:
            raise ShapeError(f"cannot compose: codomain {out.cod} does not match domain {g.dom}")
        if g.field != out.field:
            raise ShapeError(f"cannot compose across fields {out.field} and {g.field}")
        out = Mor._raw(out.dom, g.cod, g.field, _matmul(g._a, out._a), g._d * out._d)
    return out


def tensor(*ms: Mor) -> Mor:
    """Kronecker product, leftmost factor most significant."""
    if not ms:
        raise ValueError("tensor needs at least one morphism (use identity(I) for the unit)")
    out = ms[0]
    for g in ms[1:]:
        if g.field != out.field:
            raise ShapeError(f"cannot tensor across fields {out.field} and {g.field}")
        out = Mor._raw(out.dom + g.dom, out.cod + g.cod, out.field, _kron(out._a, g._a), out._d * g._d)
    return out


def permutation(x, order: Sequence[int], field: Field = QQ) -> Mor:
    """Symmetry isomorphism reordering the factors of ``x``.

    Output factor ``k`` is input factor ``order[k]``.
    """
    x = as_word(x)
    order = list(order)
    if sorted(order) != list(range(len(x))):
        raise ValueError(f"{order} is not a permutation of {len(x)} factors")
    out = Word(x[i] for i in order)
    n = x.dim
    src = np.arange(n).reshape(x.dims or (1,)).transpose(order or [0]).ravel() if x else np.zeros(1, dtype=int)
    arr = np.zeros((n, n), dtype=np.int64)
    arr[np.arange(n), src] = 1
    return Mor._raw(x, out, field, arr)


def braid(x, y, field: Field = QQ) -> Mor:
    """Symmetry ``x (x) y -> y (x) x`` sending basis ``(i, j)`` to ``(j, i)``."""
    x, y = as_word(x), as_word(y)
    nx, ny = x.dim, y.dim
    src = np.arange(nx * ny).reshape(nx, ny).T.ravel()
    arr = np.zeros((nx * ny, nx * ny), dtype=np.int64)
    arr[np.arange(nx * ny), src] = 1
    return Mor._raw(x + y, y + x, field, arr)


def whisker(left, f: Mor, right=I) -> Mor:
    """``id_left (x) f (x) id_right``."""
    left, right = as_word(left), as_word(right)
    parts = []
    if left:
        parts.append(identity(left, f.field))
    parts.append(f)
    if right:
        parts.append(identity(right, f.field))
    return tensor(*parts)


def counit_of(x, field: Field = QQ) -> Mor:
    """The row of ones ``x -> I`` (every basis vector goes to 1)."""
    x = as_word(x)
    return Mor._raw(x, I, field, np.ones((1, x.dim), dtype=np.int64))


def basis_vector(x, index: int, field: Field = QQ) -> Mor:
    """The point ``I -> x`` picking basis element ``index``."""
    x = as_word(x)
    arr = np.zeros((x.dim, 1), dtype=np.int64)
    arr[index, 0] = 1
    return Mor._raw(I, x, field, arr)


def function_matrix(dom, cod, fn, field: Field = QQ) -> Mor:
    """0/1 matrix of a function between bases given on flat indices."""
    dom, cod = as_word(dom), as_word(cod)
    arr = np.zeros((cod.dim, dom.dim), dtype=np.int64)
    for j in range(dom.dim):
        arr[fn(j), j] = 1
    return Mor._raw(dom, cod, field, arr)


def matrix_units(dom, cod, field: Field = QQ) -> Iterator[Mor]:
    """Every ``E_ij``, row-major; a basis of the hom space."""
    dom, cod = as_word(dom), as_word(cod)
    for i in range(cod.dim):
        for j in range(dom.dim):
            arr = np.zeros((cod.dim, dom.dim), dtype=np.int64)
            arr[i, j] = 1
            yield Mor._raw(dom, cod, field, arr)


def random_mor(dom, cod, field: Field, rng: random.Random, density: float = 1.0) -> Mor:
    dom, cod = as_word(dom), as_word(cod)
    rows = [
        [field.random_scalar(rng) if rng.random() < density else 0 for _ in range(dom.dim)]
        for _ in range(cod.dim)
    ]
    return Mor(dom, cod, rows, field)


def shuffle(blocks: Sequence, order: Sequence[int], field: Field = QQ) -> Mor:
    """Symmetry reordering whole tensor factors ``blocks`` (each a word).

    Output block ``k`` is input block ``order[k]``; blocks may be empty.
    """
    blocks = [as_word(b) for b in blocks]
    if sorted(order) != list(range(len(blocks))):
        raise ValueError(f"{list(order)} is not a permutation of {len(blocks)} blocks")
    starts = [0]
    for b in blocks:
        starts.append(starts[-1] + len(b))
    gens = [i for k in order for i in range(starts[k], starts[k + 1])]
    return permutation(tensor_words(*blocks), gens, field)
