"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 capacity.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

from . import __version__
from .chains import LensSpec, coprime_pairs, hj_expand
from .cyclo import CycNum
from .errors import CapacityError, DegenerateOrderError, InvalidInputError, InvalidOrderError, RTLensError
from .gauss import g_k
from .invariant import (
    DENSE,
    DIRECT,
    FACTORED,
    InvariantResult,
    chain_invariant,
    check_nondegenerate,
    lens_invariant,
    s2xs1_invariant,
    s3_invariant,
)
from .lattice import default_budget, validate_order
from .rootsys import LieType, build_root_datum
from .verify import SUITES, run_suite

SCHEMA = "rt-lens/1"
_STRATEGY = {"auto": "auto", "direct": DIRECT, "dense": DENSE, "factored": FACTORED}


def fmt_float(x: float) -> float:
    x = float(f"{x:.15g}")
    return 0.0 if x == 0 else x


def numeric(value: CycNum, embedding: int) -> list[float]:
    z = value.embed(embedding)
    imag = 0.0 if value.is_real() else z.imag
    return [fmt_float(z.real), fmt_float(imag)]


def render_value(value: CycNum, embedding: int) -> dict:
    return {"exact": value.to_json(), "value": numeric(value, embedding)}


def result_json(res: InvariantResult, embedding: int, timings: bool = False) -> dict:
    out = {
        "schema": SCHEMA,
        "algebra": res.lie_type,
        "order": res.order,
        "embedding": embedding,
        "lens": list(res.lens) if res.lens else None,
        "hj_terms": list(res.framings),
        "sign_count": res.sign_count,
        "strategy": res.strategy,
        "sigma": render_value(res.sigma, embedding),
        "f": render_value(res.f, embedding),
        "nabla": render_value(res.nabla, embedding),
    }
    if timings:
        out["timings"] = {k: round(v, 6) for k, v in res.timings.items()}
    return out


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algebra", required=True, help="g2, f4 or e8")
    p.add_argument("--order", type=int, required=True, help="odd order N of the root of unity q")
    p.add_argument("--embedding", type=int, default=1,
                   help="numeric embedding q -> exp(2 pi i c / N) (default 1)")
    p.add_argument("--strategy", choices=sorted(_STRATEGY), default="auto")
    p.add_argument("--budget", type=int, default=None,
                   help="state budget (default: RT_LENS_BUDGET or %d)" % 2_000_000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("text", "json", "csv"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rtlens",
        description="Exact quantum invariants of lens spaces for G2, F4 and E8 at odd roots of unity.",
    )
    parser.add_argument("--version", action="version", version=f"rtlens {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", help="Sigma, F and nabla of a lens space or framed chain")
    _common(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--lens", nargs=2, type=int, metavar=("M", "N"))
    which.add_argument("--chain", nargs="+", type=int, metavar="A", help="framings of a chain link")
    which.add_argument("--manifold", choices=("s3", "s2xs1"))
    p.add_argument("--timings", action="store_true", help="include timings in JSON output")

    p = sub.add_parser("table", help="F and nabla for all lens spaces L(m, n), m <= m_max")
    _common(p)
    p.add_argument("--m-max", type=int, required=True)

    p = sub.add_parser("verify", help="run a property suite")
    _common(p)
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-max", type=int, default=9, help="range of the homeo suite")

    p = sub.add_parser("gauss", help="the lattice Gauss sum G_k")
    _common(p)
    p.add_argument("--k", type=int, default=1)

    p = sub.add_parser("roots", help="dump the root datum")
    p.add_argument("--algebra", required=True)
    return parser


def _setup(args):
    try:
        lie = LieType.parse(args.algebra)
    except ValueError as exc:
        raise InvalidInputError(str(exc)) from None
    datum = build_root_datum(lie)
    if hasattr(args, "order"):
        validate_order(datum, args.order)
        if args.embedding % args.order == 0 or math.gcd(args.embedding, args.order) != 1:
            raise InvalidInputError(f"embedding index {args.embedding} is not coprime to {args.order}")
    return datum


def cmd_invariant(args, out) -> int:
    datum = _setup(args)
    budget = args.budget if args.budget is not None else default_budget()
    strategy = _STRATEGY[args.strategy]
    fmt = args.format or "json"
    N, c = args.order, args.embedding
    if args.manifold:
        value = s3_invariant(datum, N) if args.manifold == "s3" else s2xs1_invariant(datum, N)
        payload = {"schema": SCHEMA, "algebra": datum.lie_type.value, "order": N, "embedding": c,
                   "manifold": args.manifold, "f": render_value(value, c)}
        out.write(_dumps(payload) + "\n" if fmt == "json" else
                  f"{args.manifold}: F = {value!r}\n  ~ {numeric(value, c)}\n")
        return 0
    t0 = time.perf_counter()
    if args.lens:
        res = lens_invariant(datum, N, LensSpec(*args.lens), strategy, budget, args.threads)
    else:
        res = chain_invariant(datum, N, args.chain, strategy, budget, args.threads)
    elapsed = time.perf_counter() - t0
    if fmt == "json":
        out.write(_dumps(result_json(res, c, args.timings)) + "\n")
    else:
        head = f"L({res.lens[0]},{res.lens[1]})" if res.lens else f"chain {list(res.framings)}"
        out.write(f"{head}  {res.lie_type} N={N}  terms {list(res.framings)}  sign {res.sign_count}\n")
        for name in ("sigma", "f", "nabla"):
            v = getattr(res, name)
            out.write(f"  {name:5s} = {numeric(v, c)}\n          {v!r}\n")
        out.write(f"  strategy {res.strategy}\n")
        print(f"elapsed {elapsed:.3f}s", file=sys.stderr)
    return 0


TABLE_COLUMNS = ("m", "n", "hj_terms", "f_real", "f_imag", "nabla", "exact_f_json")


def cmd_table(args, out) -> int:
    datum = _setup(args)
    budget = args.budget if args.budget is not None else default_budget()
    strategy = _STRATEGY[args.strategy]
    fmt = args.format or "csv"
    N, c = args.order, args.embedding
    pairs = coprime_pairs(args.m_max)
    if pairs:
        check_nondegenerate(datum, N)
    rows = []
    for m, n in pairs:
        res = lens_invariant(datum, N, LensSpec(m, n), strategy, budget, args.threads)
        fr, fi = numeric(res.f, c)
        rows.append({
            "m": m,
            "n": n,
            "hj_terms": " ".join(map(str, hj_expand(LensSpec(m, n)).terms)),
            "f_real": fr,
            "f_imag": fi,
            "nabla": numeric(res.nabla, c)[0],
            "exact_f_json": _dumps(res.f.to_json()),
        })
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
        out.write(buf.getvalue())
    elif fmt == "json":
        out.write(_dumps({"schema": SCHEMA, "algebra": datum.lie_type.value, "order": N,
                          "embedding": c, "rows": rows}) + "\n")
    else:
        for row in rows:
            out.write(f"L({row['m']},{row['n']})  [{row['hj_terms']}]  F = {row['f_real']} "
                      f"{row['f_imag']:+}i  nabla = {row['nabla']}\n")
    return 0


def cmd_verify(args, out) -> int:
    datum = _setup(args)
    budget = args.budget if args.budget is not None else default_budget()
    suites = SUITES if args.suite == "all" else (args.suite,)
    fmt = args.format or "json"
    all_pass = True
    report = []
    for suite in suites:
        checks = run_suite(suite, datum, args.order, budget, args.seed, _STRATEGY[args.strategy], args.m_max)
        for ch in checks:
            all_pass &= ch.passed
            report.append({"suite": suite, **ch.to_json()})
    if fmt == "json":
        out.write(_dumps({"schema": SCHEMA, "algebra": datum.lie_type.value, "order": args.order,
                          "pass": all_pass, "checks": report}) + "\n")
    else:
        for item in report:
            out.write(f"{'PASS' if item['pass'] else 'FAIL'}  [{item['suite']}] {item['property']}\n")
            if not item["pass"]:
                out.write(f"      witness: {_dumps(item.get('witness', {}))}\n")
    return 0 if all_pass else 1


def cmd_gauss(args, out) -> int:
    datum = _setup(args)
    value = g_k(datum, args.order, args.k)
    payload = {"schema": SCHEMA, "algebra": datum.lie_type.value, "order": args.order, "k": args.k,
               "g_k": render_value(value, args.embedding),
               "abs_squared": fmt_float(abs(value.embed(args.embedding)) ** 2)}
    if (args.format or "json") == "json":
        out.write(_dumps(payload) + "\n")
    else:
        out.write(f"G_{args.k} = {value!r}\n  ~ {payload['g_k']['value']}  |G|^2 ~ {payload['abs_squared']}\n")
    return 0


def cmd_roots(args, out) -> int:
    out.write(_setup(args).dump() + "\n")
    return 0


COMMANDS = {
    "invariant": cmd_invariant,
    "table": cmd_table,
    "verify": cmd_verify,
    "gauss": cmd_gauss,
    "roots": cmd_roots,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except CapacityError as exc:
        print(f"rtlens: capacity exceeded: {exc}", file=sys.stderr)
        return 3
    except (InvalidOrderError, DegenerateOrderError, InvalidInputError) as exc:
        print(f"rtlens: invalid input: {exc}", file=sys.stderr)
        return 2
    except RTLensError as exc:
        print(f"rtlens: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
