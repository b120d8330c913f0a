"""Command-line front end: ``nczar <command> [flags]``.

Every command prints text, JSON or CSV and exits nonzero when a
verification it ran fails.  JSON output follows ``report_schema.json``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .algebra import Algebra
from .expr import ExprError, parse_element
from .gauge import SectionFamily, curvature_report
from .limit import DT, REPORT_COLUMNS, AdmissibleSeq, limit_report, torus_model_check
from .reconstruction import verify_duality
from .representation import Representation, SparseVec
from .scalars import AFFINE, TORUS
from .structures import StarParams, band, hat_sgn, sgn, star_function_check

COMMANDS = (
    "normalize",
    "adjoint",
    "relations-check",
    "act",
    "faithful",
    "duality",
    "hausdorff",
    "curvature",
    "starfn",
)


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("N values must be positive")
    return vals


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--case", choices=(AFFINE, TORUS), default=AFFINE)
    common.add_argument("--N", type=_positive_int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--precision", type=float, default=None,
                        help="numeric tolerance for verifications (command-specific default)")
    common.add_argument("--numeric", action="store_true", help="also print complex values")
    common.add_argument("--extended", action="store_true", help="include the W generator")

    p = argparse.ArgumentParser(prog="nczar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in ("normalize", "adjoint", "act", "faithful"):
            sp.add_argument("--expr", required=True)
        if name in ("act", "faithful", "duality", "starfn"):
            sp.add_argument("--samples", type=_positive_int, default=None)
        if name == "starfn":
            sp.add_argument("--z", type=complex, default=None, help="evaluate at this point, e.g. 1+2j")
        if name == "hausdorff":
            sp.add_argument("--Ns", type=_ints, default=[4, 16, 64, 256])
            sp.add_argument("--grid-step", type=float, default=0.01)
            sp.add_argument("--window", type=_floats, default=[0.0, 1.0])
            sp.add_argument("--alpha", type=float, default=None,
                            help="limit of the admissible sequence (default: dt = 1/sqrt(N))")
        if name == "curvature":
            sp.add_argument("--grid-step", type=float, default=1e-3)
            sp.add_argument("--window", type=_floats, default=None)
            sp.add_argument("--section-coeffs", type=_floats, default=None)
            sp.add_argument("--method", choices=("probe", "connection"), default="probe")
    return p


# output


def _num(x: float) -> str:
    return f"{x:.6g}"


def _complex_text(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (f"{v:.12g}" if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def _emit(args, result: dict, text: str, rows: list[dict] | None = None, columns=None) -> int:
    passed = bool(result.get("passed", True))
    if args.format == "json":
        doc = {"command": args.command, "case": args.case, "N": args.N,
               "passed": passed, "result": result}
        print(json.dumps(doc, indent=2, default=_json_default))
    elif args.format == "csv":
        if rows is None:
            rows = [{k: v for k, v in result.items() if not isinstance(v, (list, dict))}]
            columns = list(rows[0])
        print(_csv(rows, columns), end="")
    else:
        print(text)
    return 0 if passed else 1


def _json_default(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


# commands


def _algebra(args) -> Algebra:
    return Algebra(args.case, args.N, args.extended)


def _numeric_value(alg: Algebra, A) -> list:
    c1, c2 = StarParams.default(alg.case, alg.N).constants()
    return [{"monomial": alg.format_monomial(m), "value": c.evaluate(c1, c2)}
            for m, c in sorted(A.terms.items(), reverse=True)]


def cmd_normalize(args) -> int:
    alg = _algebra(args)
    A = parse_element(args.expr, alg)
    out = {"input": args.expr, "normal_form": A.to_text(), "is_zero": A.is_zero()}
    lines = [out["normal_form"]]
    if args.numeric:
        out["numeric"] = _numeric_value(alg, A)
        lines += [f"  {t['monomial']}: {_complex_text(t['value'])}" for t in out["numeric"]]
    return _emit(args, out, "\n".join(lines))


def cmd_adjoint(args) -> int:
    alg = _algebra(args)
    A = parse_element(args.expr, alg)
    star = A.adjoint()
    out = {"input": args.expr, "normal_form": A.to_text(), "adjoint": star.to_text(),
           "involutive": star.adjoint() == A}
    out["passed"] = out["involutive"]
    lines = [out["adjoint"]]
    if args.numeric:
        out["numeric"] = _numeric_value(alg, star)
        lines += [f"  {t['monomial']}: {_complex_text(t['value'])}" for t in out["numeric"]]
    return _emit(args, out, "\n".join(lines))


def cmd_relations(args) -> int:
    rep = _algebra(args).check_relations()
    n_ok = sum(r["passed"] for r in rep["relations"])
    lines = [f"{'ok  ' if r['passed'] else 'FAIL'} {r['name']:8s} {r['relation']}"
             + ("" if r["passed"] else f"   residual: {r['residual']}") for r in rep["relations"]]
    lines.append(f"{n_ok}/{len(rep['relations'])} relations pass")
    return _emit(args, rep, "\n".join(lines), rep["relations"], ("name", "relation", "passed", "residual"))


def _key_json(key) -> dict:
    d = dict(key.__dict__)
    if "base" in d:
        d["base"] = [d["base"].real, d["base"].imag]
    return d


def cmd_act(args) -> int:
    alg = _algebra(args)
    A = parse_element(args.expr, alg)
    rep = Representation(alg)
    rng = np.random.default_rng(args.seed)
    rows, lines = [], []
    for _ in range(args.samples or 3):
        key = rep.random_key(rng)
        v = rep.act(A, SparseVec.basis(key))
        outs = [{"key": _key_json(k), "mu": rep.mu(k), "coeff": c} for k, c in v.entries.items()]
        rows.append({"key": _key_json(key), "mu": rep.mu(key), "image": outs})
        lines.append(f"e[mu={_complex_text(rep.mu(key))}] ->")
        lines += [f"  {_complex_text(o['coeff'])} * e[mu={_complex_text(o['mu'])}]" for o in outs] or ["  0"]
    result = {"expr": A.to_text(), "samples": rows}
    if args.format == "csv":
        flat = [{"sample": i, "mu_in": _complex_text(r["mu"]), "mu_out": _complex_text(o["mu"]),
                 "coeff": _complex_text(o["coeff"])} for i, r in enumerate(rows) for o in r["image"]]
        return _emit(args, result, "", flat, ("sample", "mu_in", "mu_out", "coeff"))
    return _emit(args, result, "\n".join(lines))


def cmd_faithful(args) -> int:
    alg = _algebra(args)
    A = parse_element(args.expr, alg)
    rep = Representation(alg)
    tol = args.precision or 1e-10
    kills = rep.faithfulness_test(A, args.samples, np.random.default_rng(args.seed), tol)
    zero = A.is_zero()
    out = {"expr": A.to_text(), "is_zero": zero, "annihilates_sample": kills,
           "consistent": zero == kills, "passed": zero == kills}
    text = (f"normal form: {out['expr']}\nexact zero: {zero}\nannihilates sample: {kills}\n"
            f"{'consistent' if zero == kills else 'INCONSISTENT'}")
    return _emit(args, out, text)


def cmd_duality(args) -> int:
    rep = verify_duality(args.case, args.N, args.samples or 300, args.seed)
    rep["passed"] = all(c["passed"] for c in rep["checks"])
    lines = [f"{'ok  ' if c['passed'] else 'FAIL'} {c['name']}" for c in rep["checks"]]
    rows = [{"name": c["name"], "passed": c["passed"], "witnesses": len(c["witnesses"])} for c in rep["checks"]]
    return _emit(args, rep, "\n".join(lines), rows, ("name", "passed", "witnesses"))


def cmd_hausdorff(args) -> int:
    if len(args.window) != 2 or args.window[0] >= args.window[1]:
        raise argparse.ArgumentTypeError("--window takes lo,hi with lo < hi")
    if not 0 < args.grid_step < args.window[1] - args.window[0]:
        raise argparse.ArgumentTypeError("--grid-step must be positive and smaller than the window")
    seq = DT if args.alpha is None else AdmissibleSeq(args.alpha)
    rep = limit_report(args.Ns, tuple(args.window), args.grid_step, seq, seq)
    if args.case == TORUS:
        rep["torus_model"] = [torus_model_check(N, seed=args.seed) for N in args.Ns]
        rep["passed"] = rep["passed"] and all(t["passed"] for t in rep["torus_model"])
    cols = REPORT_COLUMNS
    lines = ["  ".join(f"{c:>16s}" for c in cols)]
    for r in rep["rows"]:
        lines.append("  ".join(f"{(_num(r[c]) if isinstance(r[c], float) else str(r[c])):>16s}" for c in cols))
    lines.append(f"nonincreasing in N: {rep['nonincreasing']}")
    return _emit(args, rep, "\n".join(lines), rep["rows"], cols)


def cmd_curvature(args) -> int:
    section = SectionFamily.from_coeffs(args.section_coeffs) if args.section_coeffs else None
    window = args.window
    if window is not None and len(window) != 4:
        raise argparse.ArgumentTypeError("--window takes x0,x1,y0,y1")
    rep = curvature_report(args.case, window, args.grid_step, args.method, section, args.seed, args.precision)
    res = rep.pop("_result")
    if args.format == "csv":
        step = max(1, res.values.shape[0] // 50)
        rows = [{"x": float(x), "y": float(y), "re": float(v.real), "im": float(v.imag),
                 "deviation": float(d)}
                for x, y, v, d in zip(res.X[::step, ::step].ravel(), res.Y[::step, ::step].ravel(),
                                      res.values[::step, ::step].ravel(), res.deviation[::step, ::step].ravel())]
        return _emit(args, rep, "", rows, ("x", "y", "re", "im", "deviation"))
    expected = "2*pi*i" if args.case == AFFINE else "1/(z1*z2)"
    text = (f"curvature vs {expected} ({args.method}, h={_num(rep['h'])})\n"
            f"max deviation: {_num(rep['max_dev'])} (tolerance {_num(rep['tolerance'])})\n"
            f"h/2 deviation: {_num(rep['max_dev_half_h'])}, ratio {_num(rep['ratio'])}, "
            f"order {_num(rep['order_estimate'])}")
    if not math.isfinite(rep["order_estimate"]):
        rep["order_estimate"] = None
    if not math.isfinite(rep["ratio"]):
        rep["ratio"] = None
    return _emit(args, rep, text)


def cmd_starfn(args) -> int:
    N = args.N
    if args.z is not None:
        z = complex(args.z)
        p = StarParams.affine(N)
        out = {"z": z, "band": band(z, p), "sgn": sgn(z, N) if z else None,
               "hat_sgn": hat_sgn(z, N) if z else None}
        text = f"bd(z) = eps^{out['band']}"
        if z:
            text += f"\nsgn(z) = eps^{out['sgn']}\nhat_sgn(z) = delta^{out['hat_sgn']}"
        return _emit(args, out, text)
    rep = star_function_check(N, args.samples or 1000, args.seed, args.precision or 1e-9)
    text = (f"band equations: {'ok' if not rep['band_failures'] else 'FAIL'}\n"
            f"sgn equations: {'ok' if not rep['sgn_failures'] else 'FAIL'} ({rep['sgn_skipped']} near sector edges skipped)\n"
            f"sup |sgn z - exp(i arg z)| = {_num(rep['sgn_sup_error'])} <= {_num(rep['sgn_bound'])}")
    return _emit(args, rep, text)


HANDLERS = {
    "normalize": cmd_normalize,
    "adjoint": cmd_adjoint,
    "relations-check": cmd_relations,
    "act": cmd_act,
    "faithful": cmd_faithful,
    "duality": cmd_duality,
    "hausdorff": cmd_hausdorff,
    "curvature": cmd_curvature,
    "starfn": cmd_starfn,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except ExprError as exc:
        print(f"nczar: {exc}", file=sys.stderr)
        return 2
    except (argparse.ArgumentTypeError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"nczar: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed the pipe (e.g. ``| head``)
        sys.stderr.close()
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
