"""Command-line driver.

Exit codes: 0 all checks pass, 1 a check or precondition failed,
2 bad input or usage.
"""

from __future__ import annotations

import argparse
import sys

from .bundle import Bundle, parse_bundle, serialize_bundle
from .coaction import build_opmonoidal, check_eckmann_hilton, check_monoidal_twisted_coaction, check_opmonoidal, check_twisted_coaction
from .errors import BundleError, FibrationError, SearchSpaceError, ShapeError, ValidationError
from .extension import (
    DEFAULT_MAX_CANDIDATES,
    ExtensionData,
    analyze_fibration,
    enumerate_cocycles,
    extension_to_wreath,
    reconstruct,
    verify_extension_data,
)
from .mixed import KleisliMor, check_mixed_opwreath, convolve, heisenberg_product, kleisli_compose
from .report import AxiomReport
from .structures import check_bimonoid, check_comonoid, check_monoid
from .tensor import Word
from .wreath import check_wreath, wreath_product

CHECKS = ["monoid", "comonoid", "bimonoid", "wreath", "opwreath", "coaction", "monoidal-coaction", "opmonoidal"]
TASKS = ["product-wreath", "reconstruct", "enumerate-cocycles", "convolve", "heisenberg", "kleisli-compose", "eckmann-hilton"]
EXTENSION = ["analyze", "verify", "reconstruct", "enumerate", "to-wreath"]


class UsageError(Exception):
    pass


def _print_report(rep: AxiomReport, fmt: str, out):
    print(rep.to_json() if fmt == "json" else rep.to_text(), file=out)


def _checked(b: Bundle, kind: str, name: str) -> AxiomReport:
    if kind == "monoid":
        return check_monoid(b.get(name, "monoid", "bimonoid"))
    if kind == "comonoid":
        v = b.get(name, "comonoid", "bimonoid")
        return check_comonoid(v.comonoid if b.kind(name) == "bimonoid" else v)
    if kind == "bimonoid":
        return check_bimonoid(b.get(name, "bimonoid"))
    if kind == "wreath":
        return check_wreath(b.get(name, "wreath"))
    if kind == "opwreath":
        return check_mixed_opwreath(b.get(name, "opwreath"))
    if kind == "coaction":
        return check_twisted_coaction(b.get(name, "coaction"))
    mtc, gens = b.get(name, "monoidal-coaction")
    if kind == "monoidal-coaction":
        return check_monoidal_twisted_coaction(mtc)
    rep = AxiomReport("opmonoidal")
    rep.extend(check_twisted_coaction(mtc.base), "coaction:")
    rep.extend(check_monoidal_twisted_coaction(mtc), "monoidal:")
    return rep.extend(check_opmonoidal(build_opmonoidal(mtc, validate=False), gens))


def run_check(b: Bundle, kind: str, name: str, fmt: str = "text", out=sys.stdout) -> int:
    rep = _checked(b, kind, name)
    _print_report(rep, fmt, out)
    return 0 if rep.passed else 1


def _strip(word: Word, prefix: Word, what: str) -> Word:
    if word[: len(prefix)] != prefix:
        raise UsageError(f"{what} {word} does not start with {prefix}")
    return word[len(prefix):]


def _morphism(b: Bundle, name):
    if name is None:
        raise UsageError("this task needs its morphism arguments")
    if name not in b.morphisms:
        raise BundleError(f"unknown morphism {name!r}")
    return b.morphisms[name]


def _kleisli(b: Bundle, name, mo) -> KleisliMor:
    m = _morphism(b, name)
    return KleisliMor(_strip(m.dom, mo.c, "domain"), _strip(m.cod, mo.a, "codomain"), m, mo)


def _emit_extensions(res: Bundle, ed: ExtensionData, cocycles):
    for k, rho in enumerate(cocycles):
        res.put(f"cocycle{k}", ExtensionData(ed.m, ed.a, ed.alpha, [list(r) for r in rho]))


def run_compute(b: Bundle, task: str, args, out=sys.stdout) -> tuple[int, Bundle]:
    """Run a task; returns the exit code and the bundle of results."""
    res = Bundle(b.field)
    name = args.structure
    validate = not args.skip_validate
    if task == "product-wreath":
        res.put("product", wreath_product(b.get(name, "wreath"), validate=validate))
    elif task == "reconstruct":
        res.put("reconstructed", reconstruct(b.get(name, "extension"), validate=validate))
    elif task == "enumerate-cocycles":
        ed = b.get(name, "extension")
        found = enumerate_cocycles(ed.m, ed.a, ed.alpha, args.max_candidates)
        _emit_extensions(res, ed, found)
        print(f"{len(found)} normalized cocycles", file=sys.stderr)
    elif task == "convolve":
        mo = b.get(name, "opwreath")
        res.put("convolution", convolve(_morphism(b, args.u), _morphism(b, args.v), mo))
    elif task == "heisenberg":
        bm = b.get(name, "bimonoid")
        u, v = args.u or args.f, args.v or args.g
        res.put("product", heisenberg_product(_morphism(b, u), _morphism(b, v), bm))
    elif task == "kleisli-compose":
        mo = b.get(name, "opwreath")
        f, g = _kleisli(b, args.f, mo), _kleisli(b, args.g, mo)
        res.put("composite", kleisli_compose(f, g).mat)
        print(f"composite = {args.g} ∘ {args.f} ({args.f} applied first)", file=sys.stderr)
    elif task == "eckmann-hilton":
        mtc, gens = b.get(name, "monoidal-coaction")
        rep = check_eckmann_hilton(build_opmonoidal(mtc, validate=validate))
        _print_report(rep, args.report, out)
        return (0 if rep.passed else 1), res
    return 0, res


def run_extension(b: Bundle, verb: str, args, out=sys.stdout) -> tuple[int, Bundle]:
    res = Bundle(b.field)
    name = args.structure
    validate = not args.skip_validate
    if verb == "analyze":
        res.put("ext", analyze_fibration(b.get(name, "fibration")))
    elif verb == "verify":
        rep = verify_extension_data(b.get(name, "extension"))
        _print_report(rep, args.report, out)
        return (0 if rep.passed else 1), res
    elif verb == "reconstruct":
        res.put("reconstructed", reconstruct(b.get(name, "extension"), validate=validate))
    elif verb == "enumerate":
        ed = b.get(name, "extension")
        found = enumerate_cocycles(ed.m, ed.a, ed.alpha, args.max_candidates)
        _emit_extensions(res, ed, found)
        print(f"{len(found)} normalized cocycles", file=sys.stderr)
    elif verb == "to-wreath":
        res.put("wreath", extension_to_wreath(b.get(name, "extension"), b.field, validate=validate))
    return 0, res


def _write(res: Bundle, path, out):
    text = serialize_bundle(res)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wreathkit", description="Exact checks and computations with wreaths and opwreaths.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, outputs=True):
        sp.add_argument("bundle", help="bundle file (JSON)")
        sp.add_argument("--structure", "-s", required=True, help="name of the structure in the bundle")
        sp.add_argument("--report", choices=["text", "json"], default="text")
        if outputs:
            sp.add_argument("--out", "-o", help="write the result bundle here instead of stdout")
            sp.add_argument("--skip-validate", action="store_true", help="do not check preconditions first")
            sp.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)

    c = sub.add_parser("check", help="run a law checker")
    c.add_argument("kind", choices=CHECKS)
    common(c, outputs=False)

    t = sub.add_parser("compute", help="compute a derived structure")
    t.add_argument("task", choices=TASKS)
    common(t)
    t.add_argument("-u", help="first morphism of a convolution")
    t.add_argument("-v", help="second morphism of a convolution")
    t.add_argument("-f", help="first morphism (applied first)")
    t.add_argument("-g", help="second morphism")

    e = sub.add_parser("extension", help="monoid extensions and fibrations")
    e.add_argument("verb", choices=EXTENSION)
    common(e)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        b = parse_bundle(args.bundle)
        if args.command == "check":
            return run_check(b, args.kind, args.structure, args.report, out)
        if args.command == "compute":
            code, res = run_compute(b, args.task, args, out)
        else:
            code, res = run_extension(b, args.verb, args, out)
        if args.command == "compute" and args.task == "eckmann-hilton" or args.command == "extension" and args.verb == "verify":
            return code
        _write(res, args.out, out)
        return code
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.report is not None:
            _print_report(e.report, args.report, out)
        return 1
    except (FibrationError, SearchSpaceError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (BundleError, ShapeError, UsageError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
