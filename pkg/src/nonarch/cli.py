"""Command-line entry point.

Subcommands: field-info, gauss-sum, theta, snf, symdiag, charfun, sample,
oplus, verify, converge.  Exit codes: 0 on success, 1 on usage or runtime
errors, 2 when a verification suite fails.  Every randomized subcommand
prints the seed it used.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import verification
from .errors import NonArchError
from .field import FieldElement, FieldParams, parse_field_spec
from .matrices import MatF, smith_normal_form, sym_diagonalize
from .orbital import convergence_experiment
from .params import DeltaParam, convolve, param_from_json
from .residue import gauss_sum
from .sampling import RandomStream, haar_gl, sample_corner
from .characters import theta_closed, KIND_SQUARE, KIND_BILINEAR

MIN_MC_SAMPLES = 100


def _parse_element(field: FieldParams, text: str) -> FieldElement:
    """Inline element syntax: ``ord=<k>,unit=<int>`` (unit expanded in base p)
    or a JSON object with "ord" and "digits"."""
    text = text.strip()
    if text.startswith("{"):
        return FieldElement.from_json(field, json.loads(text))
    kv = dict(item.split("=") for item in text.split(","))
    ordv = int(kv.get("ord", 0))
    unit = int(kv.get("unit", 1))
    digits = []
    u = unit
    for _ in range(field.precision):
        digits.append(u % field.p)
        u //= field.p
    return field.element(ordv, digits)


def _load_json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def _emit(args, payload) -> None:
    if args.format == "csv":
        out = io.StringIO()
        rows = payload if isinstance(payload, list) else [payload]
        if rows and isinstance(rows[0], dict) and "checks" in rows[0]:
            # verification reports mirror to one CSV row per check
            exploded = []
            for suite in rows:
                for check in suite["checks"]:
                    row = {"suite": suite["suite"], **check}
                    exploded.append(row)
            rows = exploded
        flat = [_flatten(r) for r in rows]
        keys = sorted({k for r in flat for k in r})
        w = csv.DictWriter(out, fieldnames=keys)
        w.writeheader()
        for r in flat:
            w.writerow(r)
        text = out.getvalue()
    else:
        text = json.dumps(payload, indent=2, default=str) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(obj, prefix=""):
    flat = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            flat.update(_flatten(v, f"{prefix}{k}."))
    elif isinstance(obj, list):
        flat[prefix.rstrip(".")] = json.dumps(obj, default=str)
    else:
        flat[prefix.rstrip(".")] = obj
    return flat


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--field", default="padic:p=3,prec=12", help="padic:p=<p>,prec=<N> | laurent:p=<p>,prec=<N>")
    p.add_argument("--seed", type=int, default=1, help="64-bit seed for randomized subcommands")
    p.add_argument("--samples", type=int, default=100_000, help="Monte Carlo sample count")
    p.add_argument("--out", default=None, help="write the report to a file instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nonarch", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="print the field constants")
    _add_common(p)

    p = sub.add_parser("gauss-sum", help="quadratic Gauss sum over the residue field")
    _add_common(p)
    p.add_argument("--a", type=int, default=1, help="nonzero twist a")

    p = sub.add_parser("theta", help="kernel value at an element")
    _add_common(p)
    p.add_argument("--x", required=True, help='element, e.g. "ord=-2,unit=1"')
    p.add_argument("--kind", choices=("square", "bilinear"), default="square")

    p = sub.add_parser("snf", help="Smith normal form of a square matrix (JSON)")
    _add_common(p)
    p.add_argument("--matrix", required=True, help="MatF JSON or @file")

    p = sub.add_parser("symdiag", help="symmetric congruence diagonalization (JSON)")
    _add_common(p)
    p.add_argument("--matrix", required=True, help="MatF JSON or @file")

    p = sub.add_parser("charfun", help="closed-form characteristic function of a measure parameter")
    _add_common(p)
    p.add_argument("--param", required=True, help="parameter JSON or @file")
    p.add_argument("--args", required=True, help="JSON list: integers (two-sided) or element objects (symmetric)")

    p = sub.add_parser("sample", help="draw matrices")
    _add_common(p)
    p.add_argument("--kind", choices=("mu", "nu", "haar"), required=True)
    p.add_argument("--param", default=None, help="parameter JSON or @file (mu/nu)")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--count", type=int, default=1)

    p = sub.add_parser("oplus", help="semigroup merge of two parameters")
    _add_common(p)
    p.add_argument("--a", required=True, help="parameter JSON or @file")
    p.add_argument("--b", required=True, help="parameter JSON or @file")

    p = sub.add_parser("verify", help="run verification suites (exit 2 on failure)")
    _add_common(p)
    p.add_argument(
        "suites",
        nargs="*",
        default=[],
        help=f"any of: {', '.join(verification.SUITE_ORDER)}, multiplicativity, all (default all)",
    )
    p.add_argument("--trials", type=int, default=1000, help="decomposition trial count")

    p = sub.add_parser("converge", help="orbital-measure convergence experiment")
    _add_common(p)
    p.add_argument("--param", required=True, help="parameter JSON or @file")
    p.add_argument("--n-list", default="4,8,16")
    return ap


def _cmd_field_info(args, field: FieldParams):
    from .characters import square_kernel_sign
    from .residue import gauss_sum_phase

    info = {
        "field": field.spec_string(),
        "family": field.family,
        "p": field.p,
        "q": field.q,
        "precision": field.precision,
    }
    if not field.is_dyadic:
        _, rho = gauss_sum_phase(field.q)
        info.update(
            {
                "nonsquare_unit_digit": field.nonsquare_unit_digit,
                "character_sign": square_kernel_sign(field),
                "gauss_phase": rho,
            }
        )
    _emit(args, info)
    return 0


def _cmd_gauss_sum(args, field: FieldParams):
    g = gauss_sum(args.a, field.p)
    _emit(
        args,
        {
            "p": field.p,
            "a": args.a % field.p,
            "value": [g.complex_value.real, g.complex_value.imag],
            "sign": g.sign,
            "rho": g.rho,
        },
    )
    return 0


def _cmd_theta(args, field: FieldParams):
    x = _parse_element(field, args.x)
    kind = KIND_SQUARE if args.kind == "square" else KIND_BILINEAR
    _emit(args, theta_closed(x, kind).to_json())
    return 0


def _cmd_snf(args, field: FieldParams):
    A = MatF.from_json(field, _load_json_arg(args.matrix))
    res = smith_normal_form(A)
    _emit(
        args,
        {
            "sing": [None if s == float("-inf") else int(s) for s in res.sing],
            "a": res.a.to_json(),
            "b": res.b.to_json(),
            "recomposes": res.recompose().agrees(A),
        },
    )
    return 0


def _cmd_symdiag(args, field: FieldParams):
    A = MatF.from_json(field, _load_json_arg(args.matrix))
    res = sym_diagonalize(A)
    _emit(
        args,
        {
            "diag": [x.to_json() for x in res.diag_entries],
            "classes": [list(l) for l in res.class_labels()],
            "g": res.g.to_json(),
            "recomposes": res.recompose().agrees(A),
        },
    )
    return 0


def _cmd_charfun(args, field: FieldParams):
    param = param_from_json(_load_json_arg(args.param))
    raw_args = _load_json_arg(args.args)
    if isinstance(param, DeltaParam):
        values = param.char([int(a) for a in raw_args])
    else:
        xs = [FieldElement.from_json(field, a) for a in raw_args]
        values = param.char(xs)
    _emit(args, {"param": param.to_json(), "values": [v.to_json() for v in values]})
    return 0


def _cmd_sample(args, field: FieldParams):
    rng = RandomStream(args.seed)
    mats = []
    for i in range(args.count):
        if args.kind == "haar":
            mats.append(haar_gl(rng.child("haar", i), field, args.n))
        else:
            if args.param is None:
                raise NonArchError("--param is required for mu/nu sampling")
            param = param_from_json(_load_json_arg(args.param))
            mats.append(sample_corner(field, param, args.n, rng.child(args.kind, i)))
    print(f"seed: {args.seed}", file=sys.stderr)
    _emit(args, [m.to_json() for m in mats])
    return 0


def _cmd_oplus(args, field: FieldParams):
    a = param_from_json(_load_json_arg(args.a))
    b = param_from_json(_load_json_arg(args.b))
    _emit(args, convolve(a, b).to_json())
    return 0


def _cmd_verify(args, field: FieldParams):
    names = args.suites or ["all"]
    if "all" in names:
        names = list(verification.SUITE_ORDER)
    if args.samples < MIN_MC_SAMPLES:
        raise NonArchError(f"--samples must be >= {MIN_MC_SAMPLES} for verification")
    print(f"seed: {args.seed}", file=sys.stderr)
    suites = verification.run_suites(names, field, args.seed, n_samples=args.samples, trials=args.trials)
    report = [s.to_json() for s in suites]
    for s in suites:
        status = "PASS" if s.passed else "FAIL"
        print(f"{status:4} {s.name} ({s.seconds:.1f}s)", file=sys.stderr)
    _emit(args, report)
    return 0 if all(s.passed for s in suites) else 2


def _cmd_converge(args, field: FieldParams):
    if args.samples < MIN_MC_SAMPLES:
        raise NonArchError(f"--samples must be >= {MIN_MC_SAMPLES}")
    param = param_from_json(_load_json_arg(args.param))
    n_list = [int(v) for v in args.n_list.split(",")]
    print(f"seed: {args.seed}", file=sys.stderr)
    rows = convergence_experiment(field, param, n_list, args.samples, RandomStream(args.seed))
    payload = [
        {"n": r.n, "max_gap": r.max_gap, "bound": r.bound, "pass": r.passed} for r in rows
    ]
    _emit(args, payload)
    return 0 if all(r.passed for r in rows) else 2


_COMMANDS = {
    "field-info": _cmd_field_info,
    "gauss-sum": _cmd_gauss_sum,
    "theta": _cmd_theta,
    "snf": _cmd_snf,
    "symdiag": _cmd_symdiag,
    "charfun": _cmd_charfun,
    "sample": _cmd_sample,
    "oplus": _cmd_oplus,
    "verify": _cmd_verify,
    "converge": _cmd_converge,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        field = parse_field_spec(args.field)
        return _COMMANDS[args.command](args, field)
    except NonArchError as exc:
        print(f"{type(exc).module}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
