"""Command-line orchestration: witness queries, range scans, identity
verification batches, and table emission.

All data output (stdout or --output file) is deterministic for fixed
flags and seed; progress and summary lines go to stderr.  Verification
reports are emitted as JSON lines; tabular commands honor --format.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import verify as V
from .errors import CapExceeded, EvenModulus, HypothesisViolated, LprogError, NotPrime
from .modular import make_modulus, quadratic_character
from .witness import CSV_HEADER, WitnessRecord, least_witness, scan_range

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2


@dataclass
class RunConfig:
    tolerance: float = 1e-8
    segment_size: int = 1 << 20
    workers: int = 1
    seed: int = 0
    format: str = "json"
    output: str | None = None

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.segment_size < 1 << 10:
            raise ValueError("segment size must be at least 2^10")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 per the CLI contract (argparse default is 2)
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _default_workers() -> int:
    env = os.environ.get("LP_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--segment-size", type=int, default=1 << 20)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lprog", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("witness", help="least witness of each sign for one class")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.0)
    _add_common(p)

    p = sub.add_parser("scan", help="witness scan over all primes in a range")
    p.add_argument("--q-min", type=int, required=True)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.0)
    _add_common(p)

    p = sub.add_parser("verify", help="run identity and inequality checkers")
    p.add_argument("--lemma", required=True, choices=V.LEMMAS + ("all",))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p-cap", type=int, default=None)
    p.add_argument("--set-a", default=None, help="comma-separated residues")
    p.add_argument("--set-b", default=None, help="comma-separated residues")
    p.add_argument("--x", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("spectrum", help="per-character coefficient magnitudes")
    p.add_argument("--q", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("lfunction", help="L(1, chi_q) with certified error")
    p.add_argument("--q", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("census", help="per-interval sign census table")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    _add_common(p)

    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        tolerance=args.tolerance,
        segment_size=args.segment_size,
        workers=args.workers if args.workers is not None else _default_workers(),
        seed=args.seed,
        format=args.format,
        output=args.output,
    )


def _write(cfg: RunConfig, text: str):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_lines(objs) -> str:
    return "".join(json.dumps(o, separators=(",", ":")) + "\n" for o in objs)


def cmd_witness(args, cfg: RunConfig) -> int:
    pm = make_modulus(args.q)
    if not 1 <= args.a < pm.q:
        raise ValueError(f"class {args.a} is not a unit mod {pm.q}")
    cap = math.ceil(pm.q ** (2.5 + args.epsilon))
    lp = least_witness(pm, args.a, 1, cap, cfg.segment_size)
    lm = least_witness(pm, args.a, -1, cap, cfg.segment_size)
    if lp is None:
        raise CapExceeded(pm.q, args.a, 1, cap)
    if lm is None:
        raise CapExceeded(pm.q, args.a, -1, cap)
    rec = WitnessRecord(q=pm.q, a=args.a, least_plus=lp, least_minus=lm, cap=cap)
    if cfg.format == "csv":
        _write(cfg, _csv_text(("q", "a", "least_plus", "least_minus", "cap"),
                              [[rec.q, rec.a, rec.least_plus, rec.least_minus, rec.cap]]))
    else:
        _write(cfg, json.dumps(rec.to_dict(), separators=(",", ":")) + "\n")
    return EXIT_OK


def cmd_scan(args, cfg: RunConfig) -> int:
    reports = scan_range(
        args.q_min, args.q_max, args.epsilon,
        workers=cfg.workers, segment_size=cfg.segment_size,
    )
    if not reports:
        sys.stderr.write("no primes in range\n")
        return EXIT_OK
    if cfg.format == "csv":
        rows = [row for r in reports for row in r.csv_rows()]
        _write(cfg, _csv_text(CSV_HEADER, rows))
    else:
        _write(cfg, "".join(r.to_json() + "\n" for r in reports))
    top = max(reports, key=lambda r: r.exponent)
    sys.stderr.write(
        f"scanned {len(reports)} primes; max exponent {top.exponent:.6f} at q={top.q}\n"
    )
    return EXIT_OK


def _parse_set(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as e:
        raise ValueError(f"bad residue list {text!r}") from e


def _run_selector(sel: str, pm, args, cfg: RunConfig) -> V.VerificationReport:
    q = pm.q
    if sel == "gauss":
        return V.verify_gauss(pm)
    if sel == "poisson":
        n = args.n if args.n is not None else 2 * q
        return V.verify_poisson(quadratic_character(pm), n, tol=cfg.tolerance)
    if sel == "large-sieve":
        n = args.n if args.n is not None else q
        return V.verify_large_sieve_random(pm, n, trials=100, seed=cfg.seed)
    if sel == "parseval":
        return V.verify_parseval(pm, cfg.tolerance)
    if sel == "inversion":
        return V.verify_inversion(pm, cfg.tolerance)
    if sel == "comb":
        if args.set_a and args.set_b:
            sa, sb = _parse_set(args.set_a), _parse_set(args.set_b)
        else:
            half = [u for u in range(1, q)][: pm.phi // 2 + 1]
            sa = sb = half
        return V.verify_comb(pm, sa, sb)
    if sel == "hyperbola":
        n = args.n if args.n is not None else q
        return V.verify_hyperbola(pm, n)
    if sel == "lfunction":
        return V.verify_lfunction(pm, cfg.tolerance)
    if sel == "holder":
        return V.verify_holder(pm, args.n, args.p_cap)
    if sel == "key-identity":
        n = args.n if args.n is not None else 20
        p = args.p_cap if args.p_cap is not None else 10
        return V.key_identity_check(pm, n, p)
    if sel == "census":
        return V.verify_census(pm, args.x)
    if sel == "exceptional":
        return V.verify_exceptional(pm)
    raise ValueError(f"unknown lemma selector {sel!r}")


def cmd_verify(args, cfg: RunConfig) -> int:
    pm = make_modulus(args.q)
    selectors = list(V.LEMMAS) if args.lemma == "all" else [args.lemma]
    reports = [_run_selector(sel, pm, args, cfg) for sel in selectors]
    if cfg.format == "csv":
        rows = [[r.lemma, r.passed, r.residual, r.tolerance, r.runtime_ms] for r in reports]
        _write(cfg, _csv_text(("lemma", "pass", "residual", "tolerance", "runtime_ms"), rows))
    else:
        _write(cfg, "".join(r.to_json() + "\n" for r in reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_USAGE


def cmd_spectrum(args, cfg: RunConfig) -> int:
    pm = make_modulus(args.q)
    spec = V.fourier_spectrum(pm)
    mags = np.abs(spec.coefficients)
    if cfg.format == "csv":
        rows = [[pm.q, k, float(m)] for k, m in enumerate(mags)]
        _write(cfg, _csv_text(("q", "k", "magnitude"), rows))
    else:
        _write(cfg, _json_lines({"q": pm.q, "k": k, "magnitude": float(m)}
                                for k, m in enumerate(mags)))
    return EXIT_OK


def cmd_lfunction(args, cfg: RunConfig) -> int:
    pm = make_modulus(args.q)
    value = V.compute_L1(pm, cfg.tolerance)
    obj = {"q": pm.q, "l1": value, "tolerance": cfg.tolerance}
    if cfg.format == "csv":
        _write(cfg, _csv_text(("q", "l1", "tolerance"), [[pm.q, value, cfg.tolerance]]))
    else:
        _write(cfg, json.dumps(obj, separators=(",", ":")) + "\n")
    return EXIT_OK


def cmd_census(args, cfg: RunConfig) -> int:
    pm = make_modulus(args.q)
    rows = V.interval_census(pm, args.x)
    if cfg.format == "csv":
        data = [[pm.q, r.start, r.count_minus, r.count_plus] for r in rows]
        _write(cfg, _csv_text(("q", "m_start", "count_minus", "count_plus"), data))
    else:
        _write(cfg, _json_lines(
            {"q": pm.q, "m_start": r.start, "count_minus": r.count_minus,
             "count_plus": r.count_plus} for r in rows))
    dev = V.census_max_deviation(rows, pm)
    sys.stderr.write(f"max |count_minus - phi/2| = {dev} over {len(rows)} intervals\n")
    return EXIT_OK


_COMMANDS = {
    "witness": cmd_witness,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "lfunction": cmd_lfunction,
    "census": cmd_census,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config(args)
        return _COMMANDS[args.command](args, cfg)
    except CapExceeded as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_CAP
    except (NotPrime, EvenModulus, HypothesisViolated, LprogError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
