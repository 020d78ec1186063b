"""``binomod`` command line.

Exit codes: 0 success (all checks pass), 1 a violation was found and
reported, 2 usage or configuration error.  Reports go to stdout (or
``--output``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .battery import run_battery, scan_remarks, scan_vertical_all
from .binom import SignConvention, binom_mod, binom_mod_split, column, is_power_of, residue_row
from .field import build_field, divisors, generates_field, subgroup_of_order
from .periodicity import (
    is_period,
    minimal_period,
    period_set,
    remark_patterns,
    scan_cor_general,
    scan_cor_weaker,
    scan_prop21,
    scan_thm1,
    scan_unsigned,
    scan_vertical,
    thm1_branch,
    thm1_hypotheses,
)
from .render import render_ppm
from .report import RunConfig, VerificationSummary, emit_report, write_report
from .subgroups import bounds_report, fermat_count, near_field_check, one_minus_intersection

SIGNS = {
    "none": SignConvention.UNSIGNED,
    "unsigned": SignConvention.UNSIGNED,
    "lower": SignConvention.SIGNED_LOWER,
    "upper": SignConvention.SIGNED_UPPER,
}
THEOREMS = ("thm1", "prop21", "cor22", "cor24", "thm41", "thm46", "remarks")


class UsageError(Exception):
    pass


def _primes(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"


def _csv(values) -> str:
    return ",".join(str(int(v)) for v in values) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="binomod", description="Binomial coefficients modulo primes and related checks.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def sign_arg(p: argparse.ArgumentParser, default: str) -> None:
        p.add_argument("--sign", choices=sorted(SIGNS), default=default)

    c = sub.add_parser("binom", help="C(k, i) mod p")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--i", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--r", type=int, help="evaluate through the split at p**r")

    c = sub.add_parser("row", help="row k as comma-separated residues")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    sign_arg(c, "lower")

    c = sub.add_parser("column", help="C(k, i) mod p for k in a range")
    c.add_argument("--i", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--k-min", type=int)
    c.add_argument("--k-max", type=int, required=True)
    sign_arg(c, "none")

    c = sub.add_parser("periods", help="all non-vacuous periods of a row on [0, k]")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    sign_arg(c, "lower")

    c = sub.add_parser("classify", help="evaluate one (p, k, h) instance")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--h", type=int, required=True)
    sign_arg(c, "lower")

    c = sub.add_parser("scan", help="exhaustive scan of one statement")
    c.add_argument("--theorem", choices=THEOREMS, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--k-max", type=int, default=300)
    c.add_argument("--s-max", type=int, default=2)
    c.add_argument("--s", type=int, help="thm46: a single exponent (default: all p**s <= --ps-max)")
    c.add_argument("--ps-max", type=int, default=625)
    c.add_argument("--r", type=int, help="remarks: a single r (default: all p**r <= 50)")
    c.add_argument("--conclusion", choices=("stated", "reflected"), default="stated")
    c.add_argument("--format", choices=("json", "csv", "text"), default="json")
    c.add_argument("--output")

    c = sub.add_parser("field", help="describe F_{p^n}")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--tables", action="store_true", help="include exp/log tables")

    c = sub.add_parser("subgroup", help="subgroup of order k and G & (1 - G)")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--k", type=int, required=True)

    c = sub.add_parser("fermat", help="points on x^e + y^e = z^e over F_{p^n}")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--exponent", "-e", type=int, required=True)

    c = sub.add_parser("bounds", help="point-count bounds for the subgroup of order k")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--k", type=int, help="subgroup order (default: every divisor of q-1)")

    c = sub.add_parser("near-field", help="near-field condition for subgroups H < G")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--g-order", type=int, required=True)
    c.add_argument("--h-order", type=int, default=1)
    c.add_argument("--sign", choices=("one_minus", "plus_one"), default="one_minus")

    c = sub.add_parser("verify-all", help="run the full verification battery")
    c.add_argument("--config", help="JSON file with RunConfig keys; flags override it")
    c.add_argument("--primes", type=_primes)
    c.add_argument("--k-max", type=int)
    c.add_argument("--q-max", type=int)
    c.add_argument("--s-max", type=int)
    c.add_argument("--ps-max", type=int)
    c.add_argument("--format", dest="output_format", choices=("json", "csv", "text"))
    c.add_argument("--output", dest="output_path")
    c.add_argument("--jobs", type=int)
    c.add_argument("--timings", action="store_true", default=None)
    c.add_argument("--inject-violation", help=argparse.SUPPRESS)

    c = sub.add_parser("render", help="write Pascal's triangle mod p as a binary PPM")
    c.add_argument("--k-max", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--scale", type=int, default=4)
    c.add_argument("--output", help="file path (default: stdout)")
    sign_arg(c, "none")
    return ap


def _load_config(args: argparse.Namespace) -> RunConfig:
    data: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
    for key in ("primes", "k_max", "q_max", "s_max", "ps_max", "output_format", "output_path", "jobs", "timings",
                "inject_violation"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    return RunConfig.from_mapping(data)


def _scan(args: argparse.Namespace):
    p, t = args.p, args.theorem
    if t == "thm1":
        return scan_thm1(p, args.k_max)
    if t == "prop21":
        return scan_prop21(p, args.k_max)
    if t == "cor22":
        return scan_cor_weaker(p, args.k_max)
    if t == "cor24":
        return scan_cor_general(p, args.k_max, args.s_max)
    if t == "thm41":
        return scan_unsigned(p, args.k_max)
    if t == "thm46":
        if args.s is not None:
            return scan_vertical(p, args.s, conclusion=args.conclusion)
        return scan_vertical_all(p, args.ps_max, args.conclusion)
    if args.r is not None:
        return remark_patterns(p, args.r)
    return scan_remarks(p)


def _emit(text: str, path: str | None) -> None:
    if path:
        try:
            write_report(text, path)
        except OSError as exc:
            raise UsageError(f"cannot write {path}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _dispatch(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "binom":
        if args.r is None:
            value = binom_mod(args.k, args.i, args.p)
        else:
            value = binom_mod_split(args.k, args.i, args.p, args.r)
        sys.stdout.write(f"{value}\n")
        return 0
    if cmd == "row":
        sys.stdout.write(_csv(residue_row(args.k, args.p, SIGNS[args.sign]).values))
        return 0
    if cmd == "column":
        k_min = args.i if args.k_min is None else args.k_min
        sys.stdout.write(_csv(column(args.i, args.p, k_min, args.k_max, SIGNS[args.sign])))
        return 0
    if cmd == "periods":
        row = residue_row(args.k, args.p, SIGNS[args.sign]).tolist()
        sys.stdout.write(_dump({
            "k": args.k, "p": args.p, "sign": SIGNS[args.sign].value, "row": row,
            "periods": sorted(period_set(row)), "minimal_period": minimal_period(row),
        }))
        return 0
    if cmd == "classify":
        conv = SIGNS[args.sign]
        row = residue_row(args.k, args.p, conv).tolist()
        v = is_period(row, args.h)
        sys.stdout.write(_dump({
            "p": args.p, "k": args.k, "h": args.h, "sign": conv.value,
            "periodic": v.holds, "vacuous": v.vacuous, "first_failure": v.first_failure,
            "thm1_hypotheses": thm1_hypotheses(args.p, args.k, args.h),
            "branch": thm1_branch(args.p, args.k, args.h),
            "k_plus_1_is_p_power": is_power_of(args.k + 1, args.p),
        }))
        return 0
    if cmd == "scan":
        rep = _scan(args)
        cfg = RunConfig(primes=[args.p], output_format=args.format)
        _emit(emit_report(VerificationSummary([rep], cfg), cfg), args.output)
        return 0 if rep.ok else 1
    if cmd == "field":
        F = build_field(args.p, args.n)
        info: dict[str, Any] = {"p": F.p, "n": F.n, "q": F.q, "modulus": list(F.modulus), "generator": F.generator}
        if args.tables:
            info["exp"] = F.exp[: F.q - 1].tolist()
            info["log"] = F.log.tolist()
        sys.stdout.write(_dump(info))
        return 0
    if cmd == "subgroup":
        F = build_field(args.p, args.n)
        G = subgroup_of_order(F, args.k)
        st = one_minus_intersection(F, G)
        sys.stdout.write(_dump({
            "q": F.q, "order": G.order, "generator": G.generator, "elements": list(G.elements),
            "intersection": list(st.intersection), "size": st.size, "ratio": str(st.ratio),
            "generates_field": generates_field(G),
        }))
        return 0
    if cmd == "fermat":
        fc = fermat_count(build_field(args.p, args.n), args.exponent)
        sys.stdout.write(_dump({"q": fc.q, "n": fc.n, "N": fc.N, "d": fc.d}))
        return 0
    if cmd == "bounds":
        F = build_field(args.p, args.n)
        ks = [args.k] if args.k is not None else divisors(F.q - 1)
        reports = [bounds_report(F, k) for k in ks]
        sys.stdout.write(_dump([b.to_dict() for b in reports]))
        return 0 if all(b.ok for b in reports) else 1
    if cmd == "near-field":
        F = build_field(args.p, args.n)
        G, H = subgroup_of_order(F, args.g_order), subgroup_of_order(F, args.h_order)
        v = near_field_check(F, G, H, args.sign)
        d = {name: getattr(v, name) for name in v.__dataclass_fields__}
        d["ok"] = v.ok
        sys.stdout.write(_dump(d))
        return 0 if v.ok else 1
    if cmd == "verify-all":
        cfg = _load_config(args)
        summary = run_battery(cfg)
        _emit(emit_report(summary, cfg), cfg.output_path)
        for s in summary.summaries:
            if s.violations:
                print(f"binomod: {s.theorem_id} {s.parameter_space}: {len(s.violations)} violations", file=sys.stderr)
        return 0 if summary.passed else 1
    if cmd == "render":
        data = render_ppm(args.k_max, args.p, SIGNS[args.sign], args.scale)
        if args.output:
            try:
                write_report(data, args.output)
            except OSError as exc:
                raise UsageError(f"cannot write {args.output}: {exc}") from exc
        else:
            sys.stdout.buffer.write(data)
        return 0
    raise UsageError(f"unknown command {cmd}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (UsageError, ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"binomod: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
