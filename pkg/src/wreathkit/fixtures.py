"""Builders for the example instances and the shipped corpus bundles.

``python -m wreathkit.fixtures [DIR]`` rewrites the corpus directory.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .bundle import Bundle, serialize_bundle
from .coaction import MonoidalTwistedCoactionData, TwistedCoactionData, trivial_coaction
from .extension import ExtensionData, FibrationData, analyze_fibration, extension_to_wreath
from .mixed import classical_opwreath, heisenberg_data, trivial_opwreath
from .structures import FinMonoid, linearize, trivial_bimonoid
from .tensor import GF, QQ, Field, Mor, braid, function_matrix, identity, tensor
from .wreath import WreathData, from_distributive_law

CORPUS_DIR = Path(__file__).with_name("corpus")


def z4_fibration() -> FibrationData:
    z4, z2 = FinMonoid.cyclic(4), FinMonoid.cyclic(2)
    return FibrationData(z4, z2, [0, 1, 0, 1], [0, 1])


def graded_coaction(field: Field = QQ, name: str = "K") -> TwistedCoactionData:
    """A = B = k[Z/2], each group element graded by itself."""
    k = linearize(FinMonoid.cyclic(2), field, name)
    x = k.carrier
    gamma = function_matrix(x, x + x, lambda i: i * 2 + i, field)
    return TwistedCoactionData(k.monoid, k, gamma, tensor(k.unit, k.unit, k.unit))


def monoidal_over_unit(b, field: Field = QQ) -> MonoidalTwistedCoactionData:
    """A = I with trivial γ, τ and 𝔡 = δ_B."""
    ai = trivial_bimonoid(field).monoid
    return MonoidalTwistedCoactionData(trivial_coaction(ai, b), b.comul)


def monoidal_trivial(field: Field = QQ) -> MonoidalTwistedCoactionData:
    t = trivial_bimonoid(field)
    return MonoidalTwistedCoactionData(trivial_coaction(t.monoid, t), t.comul)


def monoidal_trivial_coaction(field: Field = QQ, name: str = "K") -> MonoidalTwistedCoactionData:
    """Trivial coaction of k[Z/2] on itself with 𝔡 = η⊗δ."""
    k = linearize(FinMonoid.cyclic(2), field, name)
    return MonoidalTwistedCoactionData(trivial_coaction(k.monoid, k), tensor(k.unit, k.comul))


def non_coassociative_dd(field: Field = QQ, name: str = "B") -> MonoidalTwistedCoactionData:
    """A = I, B = k[Z/2] and a non-coassociative 𝔡: e -> e⊗x, x -> x⊗e.

    Over A = I every 𝔡 satisfying both counit laws is coassociative, so this
    one keeps only the left counit law.
    """
    b = linearize(FinMonoid.cyclic(2), field, name)
    base = monoidal_over_unit(b, field).base
    x = b.carrier
    dd = Mor(x, x + x, [[0, 0], [1, 0], [0, 1], [0, 0]], field)
    return MonoidalTwistedCoactionData(base, dd)


def corpus() -> dict[str, Bundle]:
    out = {}

    b = Bundle(QQ)
    fd = z4_fibration()
    ed = analyze_fibration(fd)
    b.put("fib", fd)
    b.put("ext", ed)
    b.put("w1", extension_to_wreath(ed, QQ))
    out["z4_extension"] = b

    b = Bundle(QQ)
    wd = extension_to_wreath(ed, QQ)
    lam = wd.lam
    broken = Mor(lam.dom, lam.cod, [row[::-1] for row in lam.tolist()], QQ)
    b.put("w1", WreathData(wd.monoid, wd.s, wd.nu, wd.sigma0, broken))
    out["z4_extension_corrupt_lambda"] = b

    f5 = GF(5)
    b = Bundle(f5)
    s = linearize(FinMonoid.cyclic(2), f5, "S")
    a = linearize(FinMonoid.cyclic(3), f5, "A")
    b.put("kZ2", s)
    b.put("kZ3", a)
    b.put("dl", from_distributive_law(s.monoid, a.monoid, braid(a.carrier, s.carrier, f5)))
    out["distributive_f5"] = b

    b = Bundle(QQ)
    b.put("kZ2", linearize(FinMonoid.cyclic(2), QQ, "G2"))
    b.put("kZ3", linearize(FinMonoid.cyclic(3), QQ, "G3"))
    b.put("kS3", linearize(FinMonoid.symmetric3(), QQ, "G6"))
    b.put("kZ2xZ2", linearize(FinMonoid.cyclic(2).product(FinMonoid.cyclic(2)), QQ, "G4"))
    b.put("unit", trivial_bimonoid(QQ))
    out["group_algebras"] = b

    b = Bundle(QQ)
    h2 = linearize(FinMonoid.cyclic(2), QQ, "H")
    h3 = linearize(FinMonoid.cyclic(3), QQ, "H3")
    b.put("kZ2", h2)
    b.put("kZ3", h3)
    b.put("h", heisenberg_data(h2))
    b.put("h3", heisenberg_data(h3))
    b.put("trivial", trivial_opwreath(h2.monoid))
    b.put("classical", classical_opwreath(h2.comonoid, h3.monoid))
    b.put("id", identity(h2.carrier, QQ))
    out["heisenberg"] = b

    b = Bundle(QQ)
    k = linearize(FinMonoid.cyclic(2), QQ, "K")
    b.put("trivial", trivial_coaction(k.monoid, k))
    b.put("graded", graded_coaction(QQ, "K"))
    bb = linearize(FinMonoid.cyclic(2), QQ, "B")
    b.put("over_unit", monoidal_over_unit(bb, QQ))
    b.put("all_unit", monoidal_trivial(QQ))
    b.put("trivial_z2", monoidal_trivial_coaction(QQ, "K"))
    out["coactions"] = b

    b = Bundle(QQ)
    b.put("bad_dd", non_coassociative_dd(QQ, "B"))
    out["coaction_bad_dd"] = b

    b = Bundle(QQ)
    z2, z3 = FinMonoid.cyclic(2), FinMonoid.cyclic(3)
    b.put("z2_over_z2", ExtensionData.trivial_action(z2, z2))
    b.put("z3_over_z2", ExtensionData.trivial_action(z2, z3))
    b.put("z2_twisted", ExtensionData.trivial_action(z2, z2, [[0, 0], [0, 1]]))
    out["cocycles"] = b
    return out


def write_corpus(directory=CORPUS_DIR):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, b in corpus().items():
        (directory / f"{name}.json").write_text(serialize_bundle(b), encoding="utf-8")


def corpus_paths() -> list[Path]:
    return sorted(CORPUS_DIR.glob("*.json"))


if __name__ == "__main__":
    write_corpus(sys.argv[1] if len(sys.argv) > 1 else CORPUS_DIR)
