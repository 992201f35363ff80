"""Reference evaluators for the tests.

Nothing here touches the numpy layer: matrices are lists of Fractions (or
residues), composites are explicit index sums.
"""

import itertools
from fractions import Fraction


def red(x, p):
    if p is None:
        return Fraction(x)
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, p) % p


def mat(m):
    return [[red(x, m.field.p) for x in row] for row in m.tolist()]


def mm(a, b, p=None):
    n, k, c = len(a), len(b), len(b[0])
    return [[red(sum(a[i][t] * b[t][j] for t in range(k)), p) for j in range(c)] for i in range(n)]


def kron(a, b, p=None):
    return [
        [red(a[i][j] * b[k][l], p) for j in range(len(a[0])) for l in range(len(b[0]))]
        for i in range(len(a))
        for k in range(len(b))
    ]


def eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def basis(dims):
    """Multi-indices in order, leftmost factor slowest."""
    return list(itertools.product(*[range(d) for d in dims]))


def flat(idx, dims):
    k = 0
    for i, d in zip(idx, dims):
        k = k * d + i
    return k


def perm(dims, order):
    """Matrix sending basis tuple t to the tuple (t[order[0]], t[order[1]], ...)."""
    out_dims = [dims[i] for i in order]
    n = 1
    for d in dims:
        n *= d
    m = [[Fraction(0)] * n for _ in range(n)]
    for t in basis(dims):
        m[flat([t[i] for i in order], out_dims)][flat(t, dims)] = Fraction(1)
    return m


def sparse(m):
    """Mor -> {(row, col): value} over its multi-indices."""
    out = {}
    for i, j in m.nonzero():
        out[(m.cod.unravel(i), m.dom.unravel(j))] = m.entry(i, j)
    return out


def kleisli_sum(mo, f, g):
    """g∘f in the mixed Kleisli category, summed over basis indices.

    (g∘f)(c⊗x) = Σ μ3(a1, a3, a4) d(c)[a1,c1,c2] f(c2⊗x)[a2,y] z(c1⊗a2)[a3,c3] g(c3⊗y)[a4,o]
    """
    p = mo.field.p
    la, lc = len(mo.a), len(mo.c)
    d_s, f_s, z_s, g_s, mu_s = (_group(sparse(m)) for m in (mo.d, f.mat, mo.z, g.mat, mo.monoid.mul))
    out = {}
    for c in basis(mo.c.dims):
        for x in basis(f.dom.dims):
            for (acc, v1) in d_s.get(c, []):
                a1, c1, c2 = acc[:la], acc[la:la + lc], acc[la + lc:]
                for (ay, v2) in f_s.get(c2 + x, []):
                    a2, y = ay[:la], ay[la:]
                    for (ac, v3) in z_s.get(c1 + a2, []):
                        a3, c3 = ac[:la], ac[la:]
                        for (ao, v4) in g_s.get(c3 + y, []):
                            a4, o = ao[:la], ao[la:]
                            for (a13, v5) in mu_s.get(a1 + a3, []):
                                for (r, v6) in mu_s.get(a13 + a4, []):
                                    key = (r + o, c + x)
                                    out[key] = out.get(key, 0) + v1 * v2 * v3 * v4 * v5 * v6
    return {k: red(v, p) for k, v in out.items() if red(v, p) != 0}


def _group(sp):
    g = {}
    for (row, col), v in sp.items():
        g.setdefault(col, []).append((row, v))
    return g


def dense(sp, dom, cod, p=None):
    m = [[red(0, p)] * dom.dim for _ in range(cod.dim)]
    for (row, col), v in sp.items():
        m[flat(row, cod.dims)][flat(col, dom.dims)] = red(v, p)
    return m
