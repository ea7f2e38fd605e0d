"""Command-line surface: parse algebra descriptions, run analyses, emit
deterministic JSON reports, and drive the finite search.

Input files are JSON with exactly one of three shapes::

    {"finite":    {"n": 4, "oplus": [[...]], "neg": [...], "tilde": [...],
                   "zero": 0, "one": 3}}
    {"gamma":     {"group": "lex(Q,heis)", "unit": "(1,0,0,0)"}}
    {"catalogue": {"kind": "product",
                   "params": [{"kind": "boolean", "params": [1]},
                              {"kind": "chain", "params": [2]}]}}

Group constructors: ``Z``, ``Q``, ``D``, ``H(p)``, ``heis``,
``semi_numeric``, ``lex(G,G)``, ``prod(G,G)``.  Element literals are
rationals ``p/q`` or flat tuples ``(a, b, ...)``.

Reports are byte-stable for a fixed (input, flags, seed, version): keys are
sorted, rationals render as ``p/q``, floats with 12 significant digits.
Exit codes: 0 clean, 1 analysis found a violation, 2 axiom failure,
3 parse/usage error.  The environment variable ``PMV_SEED`` overrides
``--seed``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .core import (
    AlgebraError,
    AxiomReport,
    CheckResult,
    PseudoMV,
    SamplerConfig,
)
from .counterexamples import (
    NumericWitness,
    exp_action_verdicts,
    scaling_action_verdicts,
)
from .finite import (
    CatalogueSpec,
    FinitePMV,
    FiniteTable,
    build_catalogue,
    search_square_rootable,
)
from .ideals import (
    IDEAL_CEILING,
    NotAnIdeal,
    atoms,
    classify_ideal,
    enumerate_ideals,
    is_representable,
    quotient,
    strongly_atomless_scan,
)
from .lgroups import (
    DyadicGroup,
    GammaPMV,
    HeisenbergGroup,
    IntegerGroup,
    LexProduct,
    LGroup,
    DirectProductGroup,
    PowerDenominatorGroup,
    RationalGroup,
    ScalingSemidirect,
    gamma,
)
from .roots import (
    SKIPPED,
    Decomposition,
    SquareRootReport,
    decompose,
    detect_square_root,
    dyadic_ladder,
    square_root_properties,
    verify,
)

__all__ = ["main", "parse_group", "parse_element_literal", "load_algebra", "SpecFileError"]

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_AXIOMS = 2
EXIT_PARSE = 3


class SpecFileError(Exception):
    """The input file does not describe an algebra."""


# ----------------------------------------------------------------------
# the constructor DSL
# ----------------------------------------------------------------------

def parse_group(text: str, tolerance: float = 1e-9) -> LGroup:
    text = text.strip()

    def parse(s: str) -> tuple[LGroup, str]:
        s = s.lstrip()
        for name, ctor in (("lex", LexProduct), ("prod", DirectProductGroup)):
            if s.startswith(name + "("):
                left, rest = parse(s[len(name) + 1:])
                rest = rest.lstrip()
                if not rest.startswith(","):
                    raise SpecFileError(f"expected ',' in {name}(...)")
                right, rest = parse(rest[1:])
                rest = rest.lstrip()
                if not rest.startswith(")"):
                    raise SpecFileError(f"expected ')' closing {name}(...)")
                return ctor(left, right), rest[1:]
        if s.startswith("H("):
            close = s.index(")")
            return PowerDenominatorGroup(int(s[2:close])), s[close + 1:]
        for name, make in (
            ("heis", HeisenbergGroup),
            ("semi_numeric", lambda: ScalingSemidirect(tolerance)),
            ("Z", IntegerGroup),
            ("Q", RationalGroup),
            ("D", DyadicGroup),
        ):
            if s.startswith(name):
                return make(), s[len(name):]
        raise SpecFileError(f"unknown group constructor near {s[:20]!r}")

    try:
        group, rest = parse(text)
    except (ValueError, IndexError) as exc:
        raise SpecFileError(f"bad group expression {text!r}: {exc}") from exc
    if rest.strip():
        raise SpecFileError(f"trailing input after group expression: {rest!r}")
    return group


def _parse_scalar(tok: str) -> Any:
    tok = tok.strip()
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecFileError(f"bad numeric literal {tok!r}") from exc


def parse_element_literal(group: LGroup, text: str) -> Any:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        toks = text[1:-1].split(",")
    else:
        toks = [text]
    values = [_parse_scalar(t) for t in toks if t.strip()]
    if group.exact:
        if group.flat_arity == 1 and isinstance(group, IntegerGroup):
            if values[0].denominator != 1:
                raise SpecFileError(f"{text!r} is not an integer")
            return group.from_flat([int(values[0])])
        try:
            return group.from_flat(values)
        except AlgebraError as exc:
            raise SpecFileError(str(exc)) from exc
    return group.from_flat([float(v) for v in values])


def parse_catalogue(obj: dict) -> CatalogueSpec:
    try:
        kind = obj["kind"]
        params = obj["params"]
    except (KeyError, TypeError) as exc:
        raise SpecFileError("catalogue spec needs 'kind' and 'params'") from exc
    if kind in ("chain", "boolean"):
        return CatalogueSpec(kind, (int(params[0]),))
    if kind == "product":
        return CatalogueSpec(kind, (parse_catalogue(params[0]), parse_catalogue(params[1])))
    if kind == "interval":
        return CatalogueSpec(kind, (parse_catalogue(params[0]), int(params[1])))
    raise SpecFileError(f"unknown catalogue kind {kind!r}")


def load_algebra(path: str, sampler: SamplerConfig, tolerance: float) -> PseudoMV:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecFileError("top level must be an object")

    if "finite" in data:
        spec = data["finite"]
        try:
            table = FiniteTable(
                n=int(spec["n"]),
                oplus=tuple(tuple(int(v) for v in row) for row in spec["oplus"]),
                neg=tuple(int(v) for v in spec["neg"]),
                tilde=tuple(int(v) for v in spec["tilde"]),
                zero=int(spec["zero"]),
                one=int(spec["one"]),
            )
        except (KeyError, TypeError, ValueError, AlgebraError) as exc:
            raise SpecFileError(f"bad finite table: {exc}") from exc
        return FinitePMV(table, sampler=sampler, name="file")
    if "gamma" in data:
        spec = data["gamma"]
        try:
            group = parse_group(spec["group"], tolerance)
            unit = parse_element_literal(group, spec["unit"])
            return gamma(group, unit, sampler)
        except (KeyError, TypeError) as exc:
            raise SpecFileError(f"bad gamma spec: {exc}") from exc
        except AlgebraError as exc:
            raise SpecFileError(f"bad gamma spec: {exc}") from exc
    if "catalogue" in data:
        algebra = build_catalogue(parse_catalogue(data["catalogue"]))
        return FinitePMV(algebra.table, labels=algebra.labels, sampler=sampler,
                         name=algebra.name)
    raise SpecFileError("expected one of 'finite', 'gamma', 'catalogue'")


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------

def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _fmt(algebra: PseudoMV, x: Any) -> str:
    try:
        return algebra.format_element(x)
    except Exception:
        return str(x)


def _fmt_witness(algebra: PseudoMV, w: Any) -> str:
    if isinstance(w, tuple):
        return "(" + ", ".join(_fmt(algebra, v) for v in w) + ")"
    return _fmt(algebra, w)


def render_check(algebra: PseudoMV, res: CheckResult) -> dict:
    return {
        "passed": res.passed,
        "checked": res.checked,
        "witnesses": [_fmt_witness(algebra, w) for w in res.witnesses],
    }


def render_axioms(algebra: PseudoMV, report: AxiomReport) -> dict:
    out: dict[str, Any] = {"exhaustive": report.exhaustive, "all_pass": report.all_pass}
    for name, res in report.axioms.items():
        out[name] = render_check(algebra, res)
    return out


def render_root_report(algebra: PseudoMV, report: SquareRootReport) -> dict:
    out = {
        "square": render_check(algebra, report.square),
        "maximality": render_check(algebra, report.maximality),
        "negation_compat": render_check(algebra, report.negation_compat),
        "standard": render_check(algebra, report.standard),
        "strict": report.strict,
        "r0": _fmt(algebra, report.r0),
        "classification": report.classification,
        "boolean_witness": (None if report.witness_idempotent is None
                            else _fmt(algebra, report.witness_idempotent)),
    }
    return out


def render_decomposition(algebra: PseudoMV, dec: Decomposition) -> dict:
    out: dict[str, Any] = {
        "classification": dec.classification,
        "witness": _fmt(algebra, dec.witness),
        "checks": {name: render_check(algebra, res) for name, res in dec.checks.items()},
    }
    if dec.boolean_part is not None:
        out["boolean_part"] = dec.boolean_part.describe()
        out["strict_part"] = dec.strict_part.describe()
    return out


def render_numeric_witness(w: NumericWitness) -> dict:
    def pair(v):
        return [format(float(c), ".12g") for c in v]

    return {
        "point": pair(w.point),
        "lhs": pair(w.lhs),
        "rhs": pair(w.rhs),
        "gap": format(w.gap, ".12g"),
        "tolerance": format(w.tolerance, ".12g"),
        "violates": w.violates,
    }


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def _resolve_seed(args: argparse.Namespace) -> int:
    env = os.environ.get("PMV_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SpecFileError(f"PMV_SEED must be an integer, got {env!r}")
    return args.seed


def cmd_analyze(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    sampler = SamplerConfig(seed=seed, sample_count=args.samples)
    algebra = load_algebra(args.path, sampler, args.tolerance)

    ax = algebra.check_axioms(budget=args.samples, seed=seed)
    report: dict[str, Any] = {
        "version": __version__,
        "seed": seed,
        "samples": args.samples,
        "tolerance": format(args.tolerance, ".12g"),
        "algebra": algebra.describe(),
        "axioms": render_axioms(algebra, ax),
    }
    report["algebra"]["degenerate"] = algebra.is_degenerate
    if not ax.all_pass:
        sys.stdout.write(canonical_json(report))
        return EXIT_AXIOMS

    report["algebra"]["symmetric"] = algebra.symmetry_check(args.samples, seed).passed
    if isinstance(algebra, FinitePMV):
        report["algebra"]["representable"] = is_representable(algebra)
        report["algebra"]["boolean_skeleton_size"] = len(algebra.boolean_skeleton())
    else:
        report["algebra"]["representable"] = None

    root, how = detect_square_root(algebra)
    sqrt_section: dict[str, Any] = {"construction": how, "found": root is not None}
    if root is not None:
        sqrt_section["kind"] = root.kind
        rep = verify(algebra, root, budget=args.samples, seed=seed)
        sqrt_section.update(render_root_report(algebra, rep))
        if rep.is_square_root:
            dec = decompose(algebra, root, budget=args.samples, seed=seed)
            report["decomposition"] = render_decomposition(algebra, dec)
        else:
            report["decomposition"] = {"classification": rep.classification}
        props = square_root_properties(
            algebra, root, budget=min(args.samples, 400), seed=seed,
            negation_compat=rep.negation_compat.passed)
        report["properties"] = {
            name: (SKIPPED if res == SKIPPED else ("pass" if res.passed else "fail"))
            for name, res in props.items()
        }
    else:
        report["decomposition"] = None
        report["properties"] = None
    report["sqrt"] = sqrt_section

    if isinstance(algebra, FinitePMV) and algebra.size <= IDEAL_CEILING:
        handles = enumerate_ideals(algebra)
        scan = strongly_atomless_scan(algebra, budget=args.samples, root=root, seed=seed)
        report["ideals"] = {
            "count": len(handles),
            "normal": sum(h.is_normal for h in handles),
            "prime": sum(h.is_prime for h in handles),
            "boolean_ideals": sum(h.is_boolean_ideal for h in handles),
            "atoms": [_fmt(algebra, a) for a in atoms(algebra)],
            "strongly_atomless": scan["status"],
        }
    else:
        report["ideals"] = None
    report["counterexample_witnesses"] = []

    sys.stdout.write(canonical_json(report))
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    rows = search_square_rootable(args.max_size)
    width = max(len(r.name) for r in rows)
    print(f"{'algebra':<{width}}  size  weak-sqrt  boolean  consistent  detail")
    bad = 0
    for r in rows:
        mark = "yes" if r.consistent else "NO"
        if not r.consistent:
            bad += 1
        print(f"{r.name:<{width}}  {r.size:>4}  {str(r.has_weak_sqrt):<9}  "
              f"{str(r.is_boolean_algebra):<7}  {mark:<10}  {r.detail}")
    print(f"checked {len(rows)} algebras, {bad} inconsistent")
    return EXIT_OK if bad == 0 else EXIT_VIOLATION


def cmd_counterexamples(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    scaling = scaling_action_verdicts(budget=args.samples, seed=seed,
                                      tolerance=args.tolerance)
    expo = exp_action_verdicts(budget=args.samples, seed=seed,
                               tolerance=args.tolerance)

    def root_summary(rep: SquareRootReport) -> dict:
        return {
            "square": rep.square.passed,
            "maximality": rep.maximality.passed,
            "negation_compat": rep.negation_compat.passed,
            "standard": rep.standard.passed,
            "strict": rep.strict,
            "classification": rep.classification,
        }

    report = {
        "version": __version__,
        "seed": seed,
        "samples": args.samples,
        "tolerance": format(args.tolerance, ".12g"),
        "scaling_action": {
            "root": root_summary(scaling.report),
            "negation_gap": render_numeric_witness(scaling.gap_witness),
            "negation_gap_algebraic": render_numeric_witness(scaling.gap_witness_algebraic),
            "standard_gap": render_numeric_witness(scaling.standard_witness),
            "matches_weak_form": scaling.weak_form_agreement.passed,
            "sym_form_differs": [render_numeric_witness(w) for w in scaling.sym_form_differs],
            "symmetric": scaling.symmetry.passed,
            "r0_is_half_unit": scaling.r0_is_half_unit,
        },
        "exp_action": {
            "root": root_summary(expo.report),
            "negation_formula": expo.negation_formula.passed,
            "matches_weak_form": expo.weak_form_agreement.passed,
            "coordinate_change_intertwines": expo.intertwine.passed,
            "symmetric": expo.symmetry.passed,
            "r0_is_half_unit": expo.r0_is_half_unit,
        },
    }
    sys.stdout.write(canonical_json(report))
    ok = (scaling.report.is_weak_square_root
          and not scaling.report.negation_compat.passed
          and expo.report.is_weak_square_root
          and not expo.report.negation_compat.passed)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_ladder(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    sampler = SamplerConfig(seed=seed, sample_count=args.samples)
    algebra = load_algebra(args.path, sampler, args.tolerance)
    if not isinstance(algebra, GammaPMV):
        raise SpecFileError("the ladder needs a gamma-backed algebra")
    root, how = detect_square_root(algebra)
    if root is None:
        print(f"no root construction available: {how}", file=sys.stderr)
        return EXIT_VIOLATION
    rungs = dyadic_ladder(algebra, root, args.depth)
    report = {
        "version": __version__,
        "seed": seed,
        "algebra": algebra.describe(),
        "construction": how,
        "depth": args.depth,
        "ladder": [_fmt(algebra, a) for a in rungs],
    }
    sys.stdout.write(canonical_json(report))
    return EXIT_OK


def cmd_quotient(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    sampler = SamplerConfig(seed=seed, sample_count=args.samples)
    algebra = load_algebra(args.path, sampler, args.tolerance)
    if not isinstance(algebra, FinitePMV):
        raise SpecFileError("quotients need a finite algebra")
    ax = algebra.check_axioms()
    if not ax.all_pass:
        print(f"axioms fail: {', '.join(ax.failing)}", file=sys.stderr)
        return EXIT_AXIOMS
    try:
        members = [int(tok) for tok in args.ideal.split(",") if tok.strip()]
    except ValueError as exc:
        raise SpecFileError(f"bad ideal element list: {exc}") from exc
    try:
        handle = classify_ideal(algebra, members)
    except NotAnIdeal as exc:
        print(f"not an ideal: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    if not handle.is_normal:
        print("ideal is not normal; no quotient", file=sys.stderr)
        return EXIT_VIOLATION
    root, how = detect_square_root(algebra)
    result = quotient(algebra, handle, root)
    report = {
        "version": __version__,
        "seed": seed,
        "algebra": algebra.describe(),
        "ideal": {
            "members": sorted(handle.members),
            "normal": handle.is_normal,
            "prime": handle.is_prime,
            "boolean_ideal": handle.is_boolean_ideal,
            "proper": handle.is_proper,
        },
        "quotient": {
            "size": result.algebra.size,
            "classes": [list(lbl) for lbl in result.algebra.labels],
            "root_construction": how,
            "checks": {name: render_check(result.algebra, res)
                       for name, res in result.checks.items()},
        },
    }
    sys.stdout.write(canonical_json(report))
    return EXIT_OK


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudomv",
        description="analysis of pseudo MV-algebras and their square roots")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=2000)
        p.add_argument("--tolerance", type=float, default=1e-9)

    p = sub.add_parser("analyze", help="full analysis of one algebra file")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", help="finite catalogue search: weak root ⇔ Boolean")
    p.add_argument("--max-size", type=int, default=6)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("counterexamples",
                       help="verdicts for the two numeric weak-root algebras")
    common(p)
    p.set_defaults(func=cmd_counterexamples)

    p = sub.add_parser("ladder", help="halving ladder u/2, u/4, ... on a gamma algebra")
    p.add_argument("path")
    p.add_argument("--depth", type=int, default=10)
    common(p)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("quotient", help="quotient a finite algebra by a normal ideal")
    p.add_argument("path")
    p.add_argument("--ideal", required=True,
                   help="comma-separated element indices, e.g. '0,1'")
    common(p)
    p.set_defaults(func=cmd_quotient)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
