"""Command-line front end.

Exit codes: 0 success, 2 a mathematical verdict failed, 3 numerical
infeasibility (binomial tail too heavy for the exact engine), 64 usage
error, 65 parameters outside the domain of a construction.

CSV column order of ``verify`` is fixed::

    N, ks_exact, ks_err, ks_mc, mc_err, rhs_thm_main, rhs_thm_main2, smoothing_ub, verdict
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import EXAMPLE_MIN_N, example_1_4_check, reverse_condition, thm_main2_rhs, thm_reverse_witness
from .charfun import cf_pow_rescaled, local_envelope
from .errors import BerrylabError, DomainError, SearchExhausted, TruncationError
from .exactdist import sum_cdf
from .ksmetric import ks_empirical, ks_exact_mu_hw, smoothing_upper_bound
from .laws import MixedLaw, density_rectangle, law_from_json, moment_profile, mu_hw
from .montecarlo import SeedSpec, default_threads, sample_normalized_sum
from .svgplot import loglog_svg

EXIT_OK = 0
EXIT_VERDICT = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64
EXIT_DOMAIN = 65

VERIFY_COLUMNS = [
    "N", "ks_exact", "ks_err", "ks_mc", "mc_err", "rhs_thm_main", "rhs_thm_main2", "smoothing_ub", "verdict",
]
MODES = ("exact", "mc", "bounds", "smoothing")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class SweepSpec:
    N_list: list[int]
    modes: set[str]
    h: float | None = None
    w: float | None = None
    law_path: str | None = None
    k: int | None = None
    out: str | None = None
    svg: str | None = None
    fmt: str = "csv"
    seed: int = 0
    threads: int = 1
    reps: int = 10**6
    tol: float = 1e-6
    quad_tol: float = 1e-6
    conf: float = 0.99
    _law: MixedLaw | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self.N_list:
            raise UsageError("N list is empty")
        if any(n < 1 for n in self.N_list) or sorted(set(self.N_list)) != list(self.N_list):
            raise UsageError("N list must be strictly ascending positive integers")
        if not self.modes or self.modes - set(MODES):
            raise UsageError(f"modes must be a non-empty subset of {', '.join(MODES)}")
        if self.law_path is None and (self.h is None or self.w is None):
            raise UsageError("give either --h and --w or --law")

    @property
    def law(self) -> MixedLaw:
        if self._law is None:
            self._law = mu_hw(self.h, self.w) if self.law_path is None else load_law(self.law_path)
        return self._law


def load_law(path: str) -> MixedLaw:
    return law_from_json(Path(path).read_text())


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(float(tok)) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise UsageError(f"cannot parse N list {text!r}") from None


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in rows:
        wr.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _law_params(spec_law: MixedLaw, h, w, k):
    """(k, E|X|^{k+1}, h, w) for bounds: rectangle from the law unless h, w given."""
    prof = moment_profile(spec_law, k)
    if h is None or w is None:
        rect = density_rectangle(spec_law)
        h, w = rect.h, rect.w
    return prof, h, w


def run_verify(spec: SweepSpec) -> tuple[int, list[dict]]:
    law = spec.law
    prof, h, w = _law_params(law, spec.h, spec.w, spec.k)
    rows = []
    failed = False
    for N in spec.N_list:
        row = dict.fromkeys(VERIFY_COLUMNS)
        row["N"] = N
        rep = thm_main2_rhs(prof.k, prof.abs_moment_k1, h, w, N)
        if "bounds" in spec.modes or "exact" in spec.modes:
            row["rhs_thm_main"] = rep.rhs_thm_main
            row["rhs_thm_main2"] = rep.rhs_thm_main2
        if "exact" in spec.modes:
            if spec.law_path is not None:
                raise DomainError("exact mode is available only for the mu_hw family (--h/--w)")
            ks = ks_exact_mu_hw(spec.h, spec.w, N, spec.tol)
            row["ks_exact"], row["ks_err"] = ks.distance, ks.err
        if "mc" in spec.modes:
            s = np.sort(sample_normalized_sum(law, N, spec.reps, SeedSpec(spec.seed), spec.threads))
            r = ks_empirical(s, spec.conf)
            row["ks_mc"], row["mc_err"] = r.distance, r.err
        if "smoothing" in spec.modes:
            row["smoothing_ub"] = smoothing_upper_bound(law, N, rep.L, spec.quad_tol, k=prof.k)
        if row["ks_exact"] is None:
            row["verdict"] = "skip"
        else:
            lower = row["ks_exact"] - row["ks_err"]
            checks = [row[c] for c in ("rhs_thm_main", "rhs_thm_main2", "smoothing_ub") if row[c] is not None]
            ok = all(lower <= c for c in checks)
            row["verdict"] = "pass" if ok else "FAIL"
            failed |= not ok
        rows.append(row)
    return (EXIT_VERDICT if failed else EXIT_OK), rows


def _verify_svg(rows: list[dict]) -> str:
    Ns = [r["N"] for r in rows]
    series = {}
    for col, label in [
        ("ks_exact", "KS exact"),
        ("ks_mc", "KS Monte Carlo"),
        ("rhs_thm_main", "simple bound"),
        ("rhs_thm_main2", "refined bound"),
        ("smoothing_ub", "smoothing bound"),
    ]:
        ys = [r[col] for r in rows]
        if any(y is not None for y in ys):
            series[label] = (Ns, ys)
    return loglog_svg(series, title="KS distance vs N", xlabel="N", ylabel="distance")


def cmd_verify(args) -> int:
    spec = SweepSpec(
        N_list=parse_int_list(args.N),
        modes={m.strip() for m in args.modes.split(",") if m.strip()},
        h=args.h,
        w=args.w,
        law_path=args.law,
        k=args.k,
        out=args.out,
        svg=args.svg,
        fmt=args.format,
        seed=args.seed,
        threads=args.threads,
        reps=args.reps,
        tol=args.tol,
    )
    code, rows = run_verify(spec)
    if spec.fmt == "json":
        _write(json.dumps(rows, indent=2) + "\n", spec.out)
    elif spec.fmt == "svg":
        _write(_verify_svg(rows), spec.out)
    else:
        _write(_csv_text(VERIFY_COLUMNS, [[r[c] for c in VERIFY_COLUMNS] for r in rows]), spec.out)
    if spec.svg:
        Path(spec.svg).write_text(_verify_svg(rows))
    return code


def cmd_example(args) -> int:
    N = int(args.N or EXAMPLE_MIN_N)
    if N < EXAMPLE_MIN_N:
        raise UsageError(f"example requires N >= {EXAMPLE_MIN_N}, got {N}")
    rep = example_1_4_check(N)
    if args.format == "csv":
        rows = [[name, value, "true" if ok else "false"] for name, value, ok in rep.rows()]
        rows.append(["verdict", "", "true" if rep.verdict else "false"])
        _write(_csv_text(["check", "value", "holds"], rows), args.out)
    elif args.format == "json":
        _write(json.dumps(asdict(rep), indent=2) + "\n", args.out)
    else:
        lines = [f"Example chain for N = {N} (delta_N = {rep.delta:.6g})"]
        for name, value, ok in rep.rows():
            lines.append(f"  {name:<22} {value:>16}   {'ok' if ok else 'FAILS'}")
        lines.append(f"  bound with exact E[X^4] = {rep.rhs_actual * N:.6g}/N")
        lines.append(f"verdict: {'holds' if rep.verdict else 'FAILS'}")
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK if rep.verdict else EXIT_VERDICT


def _parse_witness(tokens: list[str]) -> dict:
    keys = {"C": "C", "c": "c", "rho": "rho", "rho'": "rho_prime", "rho_prime": "rho_prime"}
    vals = {"C": 1.0, "c": 1.0, "rho": 1.0, "rho_prime": 0.0}
    for tok in tokens:
        if "=" not in tok:
            raise UsageError(f"witness parameter {tok!r} is not key=value")
        k, v = tok.split("=", 1)
        if k not in keys:
            raise UsageError(f"unknown witness parameter {k!r}")
        try:
            vals[keys[k]] = float(v)
        except ValueError:
            raise UsageError(f"witness parameter {k!r} is not a number") from None
    return vals


def cmd_reverse(args) -> int:
    if args.witness is not None:
        p = _parse_witness(args.witness)
        try:
            wit = thm_reverse_witness(p["C"], p["c"], p["rho"], p["rho_prime"])
        except SearchExhausted as exc:
            print(f"no witness: {exc}", file=sys.stderr)
            return EXIT_VERDICT
        if args.format == "csv":
            _write(_csv_text(list(asdict(wit)), [list(asdict(wit).values())]), args.out)
        else:
            _write(
                f"witness N = {wit.N} (2^{int(math.log2(wit.N))}), h = w = {wit.h:.6g}\n"
                f"  lower bound 1/(50 sqrt N) = {wit.lhs_lower:.6g}\n"
                f"  right-hand side           = {wit.rhs_value:.6g} (with exact E[X^4]: {wit.rhs_actual:.6g})\n"
                f"  E[X^4] = {wit.fourth_moment:.6g} <= 2: {wit.fourth_moment <= 2}\n",
                args.out,
            )
        return EXIT_OK
    if args.h is None or args.w is None or args.N is None:
        raise UsageError("reverse needs --h, --w and --N (or --witness)")
    N = int(args.N)
    v = reverse_condition(args.h, args.w, N)
    if not v.admissible:
        print(
            f"inadmissible: need hw <= 1/2 and h w^3 N <= 1/24; got hw = {v.hw:.6g}, h w^3 N = {v.hw3N:.6g}",
            file=sys.stderr,
        )
        return EXIT_DOMAIN
    ks = ks_exact_mu_hw(args.h, args.w, N, args.tol) if N <= 64 else None
    ok = ks is None or ks.distance + ks.err >= v.lower
    if args.format == "csv":
        row = [args.h, args.w, N, v.hw3N, v.lower, None if ks is None else ks.distance,
               None if ks is None else ks.err, "true" if ok else "false"]
        _write(_csv_text(["h", "w", "N", "hw3N", "lower", "ks_exact", "ks_err", "holds"], [row]), args.out)
    else:
        lines = [
            f"h = {args.h}, w = {args.w}, N = {N}: hw = {v.hw:.6g} <= 1/2, h w^3 N = {v.hw3N:.6g} <= 1/24",
            f"  lower bound 1/(50 sqrt N) = {v.lower:.6g}",
        ]
        if ks is None:
            lines.append("  exact KS skipped (N > 64)")
        else:
            lines.append(f"  certified KS = {ks.distance:.9g} +- {ks.err:.2g} at s = {ks.arg_s:.6g}")
        lines.append(f"verdict: {'holds' if ok else 'FAILS'}")
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_VERDICT


def _cli_law(args) -> MixedLaw:
    if args.law:
        return load_law(args.law)
    if args.h is None or args.w is None:
        raise UsageError("give either --h and --w or --law")
    return mu_hw(args.h, args.w)


def cmd_bounds(args) -> int:
    if args.N is None:
        raise UsageError("bounds needs --N")
    law = _cli_law(args)
    prof, h, w = _law_params(law, args.h, args.w, args.k)
    E = prof.abs_moment_k1 if args.moment is None else args.moment
    rep = thm_main2_rhs(prof.k, E, h, w, int(args.N))
    _write(json.dumps(rep.to_dict(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_ks(args) -> int:
    if args.N is None:
        raise UsageError("ks needs --N")
    N = int(args.N)
    if args.law or args.mc:
        law = _cli_law(args)
        s = np.sort(sample_normalized_sum(law, N, args.reps, SeedSpec(args.seed), args.threads))
        res = ks_empirical(s, args.conf)
    else:
        if args.h is None or args.w is None:
            raise UsageError("ks needs --h and --w")
        res = ks_exact_mu_hw(args.h, args.w, N, args.tol)
    _write(res.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_cf_table(args) -> int:
    law = _cli_law(args)
    N = int(args.N or 1)
    prof = moment_profile(law, args.k)
    t = np.linspace(args.tmin, args.tmax, args.points)
    v = np.atleast_1d(cf_pow_rescaled(law, t, N))
    env = np.atleast_1d(local_envelope(prof.k, prof.abs_moment_k1, t, N))
    rows = [[float(a), float(z.real), float(z.imag), float(abs(z)), float(e)] for a, z, e in zip(t, v, env)]
    _write(_csv_text(["t", "re", "im", "modulus", "envelope"], rows), args.out)
    return EXIT_OK


def cmd_cdf_table(args) -> int:
    if args.h is None or args.w is None or args.N is None:
        raise UsageError("cdf-table needs --h, --w and --N")
    sc = sum_cdf(args.h, args.w, int(args.N), args.tol)
    s = np.linspace(args.smin, args.smax, args.points)
    val, err = sc.evaluate(s)
    rows = [[float(a), float(b), float(c)] for a, b, c in zip(s, val, err)]
    _write(_csv_text(["s", "value", "err"], rows), args.out)
    return EXIT_OK


def cmd_mc(args) -> int:
    if args.N is None:
        raise UsageError("mc needs --N")
    law = _cli_law(args)
    N = int(args.N)
    s = np.sort(sample_normalized_sum(law, N, args.reps, SeedSpec(args.seed), args.threads))
    res = ks_empirical(s, args.conf)
    if args.samples_out:
        Path(args.samples_out).write_text("".join(f"{v!r}\n" for v in s.tolist()))
    out = res.to_dict() | {"N": N, "reps": args.reps, "seed": args.seed}
    _write(json.dumps(out) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="berrylab", description="Berry-Esseen verification toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, N_help="sample size N"):
        sp.add_argument("--h", type=float, help="rectangle height of mu_hw")
        sp.add_argument("--w", type=float, help="rectangle width of mu_hw")
        sp.add_argument("--N", help=N_help)
        sp.add_argument("--k", type=int, default=None, help="moment matching order (default: detected)")
        sp.add_argument("--tol", type=float, default=1e-6, help="certification tolerance")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=default_threads())
        sp.add_argument("--reps", type=int, default=10**6)
        sp.add_argument("--conf", type=float, default=0.99)
        sp.add_argument("--law", help="JSON law literal file")
        sp.add_argument("--out", help="output path (default stdout)")

    sp = sub.add_parser("verify", help="KS-vs-bound sweep over N")
    common(sp, "comma-separated ascending N list")
    sp.add_argument("--modes", default="exact,bounds,smoothing", help="subset of exact,mc,bounds,smoothing")
    sp.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    sp.add_argument("--svg", help="also write a log-log SVG plot here")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("example", help="check the nu_N example chain")
    common(sp)
    sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("reverse", help="reverse inequality check or witness search")
    common(sp)
    sp.add_argument("--witness", nargs="*", metavar="KEY=VALUE", help="C=.. c=.. rho=.. rho'=..")
    sp.add_argument("--format", choices=["text", "csv"], default="text")
    sp.set_defaults(func=cmd_reverse)

    sp = sub.add_parser("bounds", help="JSON report of all bound constants")
    common(sp)
    sp.add_argument("--moment", type=float, help="override E|X|^(k+1)")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("ks", help="KS distance to the Gaussian as JSON")
    common(sp)
    sp.add_argument("--mc", action="store_true", help="use Monte Carlo instead of the exact engine")
    sp.set_defaults(func=cmd_ks)

    sp = sub.add_parser("cf-table", help="CSV of phi(t/sqrt N)^N and its local envelope")
    common(sp)
    sp.add_argument("--tmin", type=float, default=-10.0)
    sp.add_argument("--tmax", type=float, default=10.0)
    sp.add_argument("--points", type=int, default=201)
    sp.set_defaults(func=cmd_cf_table)

    sp = sub.add_parser("cdf-table", help="CSV of the exact CDF of the normalised sum")
    common(sp)
    sp.add_argument("--smin", type=float, default=-4.0)
    sp.add_argument("--smax", type=float, default=4.0)
    sp.add_argument("--points", type=int, default=161)
    sp.set_defaults(func=cmd_cdf_table)

    sp = sub.add_parser("mc", help="Monte Carlo KS estimate as JSON")
    common(sp)
    sp.add_argument("--samples-out", help="write the sorted samples, one per line")
    sp.set_defaults(func=cmd_mc)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"berrylab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TruncationError as exc:
        print(f"berrylab: numerically infeasible: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, BerrylabError, ValueError) as exc:
        print(f"berrylab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
