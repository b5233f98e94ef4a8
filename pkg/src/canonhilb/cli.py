"""Command-line front end.

Exit codes: 0 success, 1 invariant failure, 2 validation or hypothesis
failure, 3 parse failure.  Structured output (``--format json``) is one JSON
document on stdout with sorted keys; rationals are "num/den" strings.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import linalg
from .checks import random_check
from .errors import HypothesisViolated
from .gl_complex import build_complex, cohomology_dims, dualize, generic_cohomology_dims, verify_complex
from .local_model import build_pencil, evaluate_pencil, find_smooth_witness
from .sampling import COMPLEX_POLICY, PENCIL_POLICY, SamplingPolicy
from .surface_data import (
    SpecParseError,
    SpecValidationError,
    SurfaceSpec,
    product_of_curves,
    read_spec,
    spec_to_dict,
    validate,
)
from .virtual_degree import localization_support, poincare_degree

EXIT_OK, EXIT_PROPERTY, EXIT_INVALID, EXIT_PARSE = 0, 1, 2, 3
SWEEP_MIN_GENUS, SWEEP_MAX_GENUS = 2, 8
PG_MARKER = "hypothesis p_g>0 not met"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        self.code = code
        super().__init__(message)


def _emit(doc: dict, fmt: str, text_lines):
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for line in text_lines(doc):
            print(line)


def _rationals(values) -> list[str]:
    return [linalg.format_rational(v) for v in values]


def _vector(text: str) -> list[Fraction]:
    text = text.strip()
    if not text:
        return []
    try:
        return [linalg.parse_rational(part) for part in text.split(",")]
    except ValueError as exc:
        raise CliError(f"--at: {exc}", EXIT_PARSE) from None


def _policies(args) -> tuple[SamplingPolicy, SamplingPolicy]:
    pencil = SamplingPolicy(trials=args.trials, bounds=PENCIL_POLICY.bounds, seed=args.seed)
    cx = SamplingPolicy(trials=args.trials, bounds=COMPLEX_POLICY.bounds, seed=args.seed)
    return pencil, cx


def _load(args) -> SurfaceSpec:
    if getattr(args, "curves", None):
        g1, g2 = args.curves
        if g1 < 0 or g2 < 0:
            raise CliError("genera must be non-negative", EXIT_INVALID)
        return product_of_curves(g1, g2)
    if not args.spec:
        raise CliError("give a spec file or --curves G1 G2", EXIT_PARSE)
    try:
        return read_spec(args.spec)
    except OSError as exc:
        raise CliError(f"cannot read {args.spec}: {exc.strerror}", EXIT_PARSE) from None
    except SpecParseError as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE) from None
    except SpecValidationError as exc:
        raise CliError("invalid spec:\n  " + "\n  ".join(exc.violations), EXIT_INVALID) from None


# --- commands -------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        spec = read_spec(args.spec)
    except OSError as exc:
        raise CliError(f"cannot read {args.spec}: {exc.strerror}", EXIT_PARSE) from None
    except SpecParseError as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE) from None
    except SpecValidationError as exc:
        violations = exc.violations
        spec = None
    else:
        violations = list(validate(spec.tensor).violations)
    doc = {"file": args.spec, "ok": not violations, "violations": violations}
    if spec is not None:
        doc.update(label=spec.label, q=spec.q, p=spec.p)

    def text(d):
        yield f"{d['file']}: {'ok' if d['ok'] else 'INVALID'}"
        for v in d["violations"]:
            yield f"  - {v}"

    _emit(doc, args.format, text)
    return EXIT_OK if not violations else EXIT_INVALID


def build_report(spec: SurfaceSpec, pencil_policy: SamplingPolicy, cx_policy: SamplingPolicy) -> dict:
    """Everything the toolkit knows about one surface, as a plain dict."""
    cx = build_complex(spec.tensor)
    gen = generic_cohomology_dims(cx, cx_policy)
    doc = {
        "label": spec.label,
        "q": spec.q,
        "p": spec.p,
        "chi": spec.chi,
        "validation": list(validate(spec.tensor).violations),
        "complex": {"is_complex": verify_complex(cx), "generic_cohomology": gen.as_dict()},
    }
    if spec.intersection is not None:
        doc["intersection"] = spec.intersection.as_dict()
    try:
        deg = poincare_degree(spec, pencil_policy)
        support = localization_support(spec)
    except HypothesisViolated as exc:
        doc["pencil"] = {"status": PG_MARKER, "reason": str(exc)}
        doc["degree"] = {"status": PG_MARKER, "reason": str(exc)}
        return doc
    w = deg.witness
    doc["pencil"] = {
        "generic_rank": w.rank,
        "witness_z": list(w.witness_z),
        "fiber_dim": w.fiber_dim,
        "dim_M_tilde": w.dim_M_tilde,
        "dim_M": w.dim_M,
        "parity_ok": w.parity_ok,
        "trials": w.trials,
    }
    doc["degree"] = {
        "status": "ok",
        "degree": deg.degree,
        "chi": deg.chi,
        "dim_M": deg.dim_M,
        "paths_agree": deg.paths_agree,
        "support": support.as_dict(),
    }
    return doc


def _report_text(d):
    yield f"surface: {d['label']}"
    yield f"  q = {d['q']}, p_g = {d['p']}, chi(O_X) = {d['chi']}"
    if d["validation"]:
        yield f"  validation: {len(d['validation'])} violation(s)"
    g = d["complex"]["generic_cohomology"]
    yield f"  deformation complex: is_complex={d['complex']['is_complex']}"
    yield f"    generic (h0, h1, h2) = {tuple(g['dims'])} at t = {tuple(g['witness_t'])} (fiberwise, upper bound)"
    pen = d["pencil"]
    if "status" in pen:
        yield f"  pencil: {pen['status']}"
    else:
        yield f"  pencil: generic rank {pen['generic_rank']} at z = {tuple(pen['witness_z'])} (lower bound)"
        yield f"    fiber dim {pen['fiber_dim']}, dim M = {pen['dim_M']}, parity with chi: {'ok' if pen['parity_ok'] else 'FAILED'}"
    deg = d["degree"]
    if deg["status"] != "ok":
        yield f"  degree: {deg['status']}"
    else:
        yield f"  degree: {deg['degree']:+d}  ((-1)^chi, paths agree: {deg['paths_agree']})"
        yield f"    support: {deg['support']['support']}, virtual dimension {deg['support']['virtual_dimension']}"


def cmd_report(args) -> int:
    spec = _load(args)
    pencil_policy, cx_policy = _policies(args)
    _emit(build_report(spec, pencil_policy, cx_policy), args.format, _report_text)
    return EXIT_OK


def cmd_degree(args) -> int:
    spec = _load(args)
    pencil_policy, _ = _policies(args)
    try:
        deg = poincare_degree(spec, pencil_policy)
    except HypothesisViolated as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    doc = {"label": spec.label, **deg.as_dict()}

    def text(d):
        yield f"{d['label']}: degree {d['degree']:+d} (chi = {d['chi']}, dim M = {d['dim_M']}, paths agree: {d['paths_agree']})"

    _emit(doc, args.format, text)
    return EXIT_OK


def cmd_pencil(args) -> int:
    spec = _load(args)
    pencil = build_pencil(spec.tensor)
    doc = {"label": spec.label, "p": spec.p, "q": spec.q}
    if args.at is not None:
        z = _vector(args.at)
        if len(z) != spec.p:
            raise CliError(f"--at has length {len(z)}, expected p = {spec.p}", EXIT_INVALID)
        b = evaluate_pencil(pencil, z)
        r = linalg.rank(b)
        doc["at"] = {"z": _rationals(z), "matrix": [_rationals(row) for row in b], "rank": r, "fiber_dim": spec.q - r}
    if args.generic or args.at is None:
        try:
            doc["generic"] = find_smooth_witness(pencil, _policies(args)[0]).as_dict()
        except HypothesisViolated as exc:
            raise CliError(str(exc), EXIT_INVALID) from None

    def text(d):
        yield f"{d['label']}: skew pencil of {d['p']} slices, {d['q']}x{d['q']}"
        if "at" in d:
            yield f"  B({', '.join(d['at']['z'])}): rank {d['at']['rank']}, fiber dim {d['at']['fiber_dim']}"
            for row in d["at"]["matrix"]:
                yield "    [" + " ".join(f"{x:>6}" for x in row) + "]"
        if "generic" in d:
            g = d["generic"]
            yield f"  generic rank {g['rank']} at z = {tuple(g['witness_z'])}; dim M = {g['dim_M']}, parity ok: {g['parity_ok']}"

    _emit(doc, args.format, text)
    return EXIT_OK


def cmd_complex(args) -> int:
    spec = _load(args)
    cx = build_complex(spec.tensor)
    if args.dual:
        cx = dualize(cx)
    doc = {"label": spec.label, "ranks": list(cx.ranks), "dual": cx.dual, "is_complex": verify_complex(cx)}
    if args.at is not None:
        t = _vector(args.at)
        if len(t) != cx.nvars:
            raise CliError(f"--at has length {len(t)}, expected q = {cx.nvars}", EXIT_INVALID)
        doc["at"] = {
            "t": _rationals(t),
            "d0": [_rationals(row) for row in cx.d0.at(t)],
            "d1": [_rationals(row) for row in cx.d1.at(t)],
            "dims": list(cohomology_dims(cx, t)),
        }
    if args.generic or args.at is None:
        doc["generic"] = generic_cohomology_dims(cx, _policies(args)[1]).as_dict()

    def text(d):
        yield f"{d['label']}: complex with ranks {tuple(d['ranks'])}{' (dual)' if d['dual'] else ''}, d1.d0 = 0: {d['is_complex']}"
        if "at" in d:
            yield f"  at t = ({', '.join(d['at']['t'])}): (h0, h1, h2) = {tuple(d['at']['dims'])}"
        if "generic" in d:
            g = d["generic"]
            yield f"  generic (h0, h1, h2) <= {tuple(g['dims'])} at t = {tuple(g['witness_t'])}"

    _emit(doc, args.format, text)
    return EXIT_OK


def _genus_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise CliError(f"bad range {text!r}; use A..B", EXIT_PARSE) from None
    r = range(lo_i, hi_i + 1)
    if r and (r[0] < SWEEP_MIN_GENUS or r[-1] > SWEEP_MAX_GENUS):
        raise CliError(
            f"genus range {text} leaves [{SWEEP_MIN_GENUS}, {SWEEP_MAX_GENUS}] (general type needs g >= 2)",
            EXIT_INVALID,
        )
    return r


def sweep_rows(g1s, g2s, policy: SamplingPolicy) -> list[dict]:
    rows = []
    for g1 in g1s:
        for g2 in g2s:
            spec = product_of_curves(g1, g2)
            deg = poincare_degree(spec, policy)
            rows.append(
                {
                    "g1": g1,
                    "g2": g2,
                    "q": spec.q,
                    "p": spec.p,
                    "chi": deg.chi,
                    "generic_rank": deg.witness.rank,
                    "dim_M": deg.dim_M,
                    "degree": deg.degree,
                }
            )
    return rows


_SWEEP_COLUMNS = ("g1", "g2", "q", "p", "chi", "generic_rank", "dim_M", "degree")


def cmd_sweep(args) -> int:
    g1s, g2s = _genus_range(args.g1), _genus_range(args.g2)
    rows = sweep_rows(g1s, g2s, _policies(args)[0])
    doc = {"columns": list(_SWEEP_COLUMNS), "rows": rows, "seed": args.seed}

    def text(d):
        yield " ".join(f"{c:>12}" for c in _SWEEP_COLUMNS)
        for row in d["rows"]:
            yield " ".join(f"{row[c]:>12}" for c in _SWEEP_COLUMNS)

    _emit(doc, args.format, text)
    return EXIT_OK


def cmd_random_check(args) -> int:
    if args.p_max < 1 or args.q_max < 0 or args.instances < 0:
        raise CliError("need --p-max >= 1, --q-max >= 0, --instances >= 0", EXIT_INVALID)
    result = random_check(
        args.p_max,
        args.q_max,
        args.instances,
        seed=args.seed,
        z_samples=args.z_samples,
        t_samples=args.t_samples,
        inject_fault=args.inject_fault,
    )
    doc = result.as_dict()

    def text(d):
        yield f"{d['instances']} instances, {d['checks']} checks: {'PASS' if d['ok'] else 'FAIL'}"
        f = d["first_failure"]
        if f:
            yield f"  reproduce with seed={f['seed']} instance={f['instance']} (p={f['p']}, q={f['q']})"
            for msg in f["failures"]:
                yield f"    {msg}"

    _emit(doc, args.format, text)
    return EXIT_OK if result.ok else EXIT_PROPERTY


# --- parser ---------------------------------------------------------------

def _add_common(sp, with_input: bool = True):
    if with_input:
        sp.add_argument("spec", nargs="?", help="surface spec file (JSON)")
        sp.add_argument("--curves", nargs=2, type=int, metavar=("G1", "G2"), help="use the product of two curves instead of a file")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=8, help="samples per box")
    sp.add_argument("--format", choices=("text", "json"), default="text")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="canonhilb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check a spec file")
    sp.add_argument("spec")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("report", help="full surface report")
    _add_common(sp)
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("degree", help="localized virtual degree of Hilb^{k_X}")
    _add_common(sp)
    sp.set_defaults(func=cmd_degree)

    for name, func, helptext in (
        ("pencil", cmd_pencil, "skew pencil B(z)"),
        ("complex", cmd_complex, "deformation complex"),
    ):
        sp = sub.add_parser(name, help=helptext)
        _add_common(sp)
        sp.add_argument("--at", help="comma-separated rationals, e.g. 1,-2,3/4")
        sp.add_argument("--generic", action="store_true", help="sampled generic analysis")
        if name == "complex":
            sp.add_argument("--dual", action="store_true", help="use the dual complex")
        sp.set_defaults(func=func)

    sp = sub.add_parser("sweep", help="degree table over products of curves")
    sp.add_argument("--g1", default="2..3", help="genus range A..B within [2, 8]")
    sp.add_argument("--g2", default="2..3")
    _add_common(sp, with_input=False)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("random-check", help="invariant suite over random tensors")
    sp.add_argument("--p-max", type=int, default=6)
    sp.add_argument("--q-max", type=int, default=8)
    sp.add_argument("--instances", type=int, default=100)
    sp.add_argument("--z-samples", type=int, default=100)
    sp.add_argument("--t-samples", type=int, default=100)
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    _add_common(sp, with_input=False)
    sp.set_defaults(func=cmd_random_check)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 1) < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
