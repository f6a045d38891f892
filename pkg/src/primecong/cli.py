"""Command-line harness: statement suites, conjecture scans, composite search.

Exit codes: 0 clean run, 1 violations found, 2 usage error, 3 I/O failure.
Violations never raise: a failed congruence or a composite that satisfies
one is exactly what the harness exists to surface.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import bernoulli as bmod
from .bernoulli import IrregularCache, bernoulli_exact, load_cache, vsc_denominator
from .congruences import (
    CATALOG,
    DEFAULT_GUARD,
    ParamPolicy,
    PrimeContext,
    falsified,
    modular_exact_match,
    verify,
)
from .primes import prime_range
from .scanners import (
    FAMILY_MINUS,
    FAMILY_PLUS,
    HOLDS,
    TARGET_COMPOSITES,
    VIOLATED,
    classify_composite,
    composite_anomalies,
    scan_conj_1_1,
    scan_conj_1_2,
    scan_conj_1_2_all,
)
from .seqsums import harmonic_exact

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_IO = 3

ORACLE_PRIMES = (5, 7, 11, 13)


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; round-trips through to_dict/from_dict."""

    subcommand: str
    statements: tuple[str, ...] = ("all",)
    prime_lo: int = 5
    prime_hi: int = 499
    guard: int = DEFAULT_GUARD
    fmt: str = "human"
    output: str | None = None
    workers: int = 1
    bernoulli_cache: str | None = None
    falsify: str | None = None
    target: str | None = None
    m: int | None = None
    r: int | None = None
    p_max: int = 1000
    n_max: int | None = None
    a_max: int | None = None
    b_max: int = 4
    composite_lo: int = 4
    composite_hi: int = 120
    family: str = "both"
    policy_n_max: int = 10
    policy_s_cap: int = 50
    policy_k_cap: int = 50

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        d = dict(d)
        d["statements"] = tuple(d["statements"])
        return cls(**d)

    def policy(self) -> ParamPolicy:
        return ParamPolicy(
            n_max=self.policy_n_max, s_cap=self.policy_s_cap, k_cap=self.policy_k_cap
        )


# ---------------------------------------------------------------------------
# Records: plain dicts with a fixed key order per record type
# ---------------------------------------------------------------------------


def verify_record(report) -> dict:
    return {
        "statement_id": report.statement_id,
        "params": dict(report.params),
        "claimed": report.claimed,
        "observed_kind": report.computed.kind,
        "observed_amount": report.computed.amount,
        "pass": report.passed,
        "working_precision": report.working_precision,
        "residual": report.residual.value,
    }


def scan_record(rec) -> dict:
    meta = {}
    for key, value in rec.meta.items():
        if isinstance(value, dict):
            meta[key] = {str(k): v for k, v in value.items()}
        else:
            meta[key] = value
    return {
        "target": rec.target,
        "params": dict(rec.params),
        "required": rec.required,
        "observed_kind": None if rec.observed is None else rec.observed.kind,
        "observed_amount": None if rec.observed is None else rec.observed.amount,
        "verdict": rec.verdict,
        "meta": meta,
    }


def _params_str(params: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in params.items())


def write_records(records: list[dict], fmt: str, stream, summary_lines: list[str]) -> None:
    if fmt == "jsonl":
        for rec in records:
            stream.write(json.dumps(rec) + "\n")
    elif fmt == "csv":
        if records:
            fieldnames = list(records[0])
            writer = csv.DictWriter(stream, fieldnames=fieldnames)
            writer.writeheader()
            for rec in records:
                row = dict(rec)
                for key in ("params", "meta"):
                    if key in row and isinstance(row[key], dict):
                        row[key] = (
                            _params_str(row[key]) if key == "params"
                            else json.dumps(row[key])
                        )
                writer.writerow(row)
    elif fmt == "human":
        for line in _human_lines(records):
            stream.write(line + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "human":
        for line in summary_lines:
            stream.write(line + "\n")


def _human_lines(records: list[dict]) -> list[str]:
    lines = []
    if records and "statement_id" in records[0]:
        by_stmt: dict[str, list[dict]] = {}
        for rec in records:
            by_stmt.setdefault(rec["statement_id"], []).append(rec)
        for sid, recs in by_stmt.items():
            worst = min(r["observed_amount"] - r["claimed"] for r in recs)
            fails = [r for r in recs if not r["pass"]]
            status = "ok" if not fails else f"FAIL x{len(fails)}"
            lines.append(f"{sid:8s} cells={len(recs):6d} worst_margin={worst:+d} {status}")
        for rec in records:
            if not rec["pass"]:
                lines.append(
                    f"  FAIL {rec['statement_id']} {_params_str(rec['params'])} "
                    f"claimed={rec['claimed']} observed={_observed_str(rec)} "
                    f"residual={rec['residual']} working=p^{rec['working_precision']}"
                )
    else:
        for rec in records:
            lines.append(
                f"{rec['target']} {_params_str(rec['params'])} "
                f"required={rec['required']} observed={_observed_str(rec)} {rec['verdict']}"
            )
    return lines


def _observed_str(rec: dict) -> str:
    if rec["observed_kind"] is None:
        return "-"
    prefix = "" if rec["observed_kind"] == "exact" else ">="
    return f"{prefix}{rec['observed_amount']}"


# ---------------------------------------------------------------------------
# verify subcommand
# ---------------------------------------------------------------------------


def _select_statements(names: tuple[str, ...]) -> list[str]:
    if len(names) == 1 and names[0] == "all":
        return list(CATALOG)
    unknown = [n for n in names if n not in CATALOG]
    if unknown:
        raise KeyError(f"unknown statement ids: {', '.join(unknown)}")
    return list(names)


def _verify_one_prime(args: tuple) -> list[dict]:
    p, sids, guard, policy_fields, falsify = args
    policy = ParamPolicy(**policy_fields)
    ctx = PrimeContext(p, policy)
    out = []
    for sid in sids:
        stmt = CATALOG[sid]
        if falsify == sid:
            stmt = falsified(stmt)
        for params in stmt.param_iter(p, policy):
            if not stmt.applies(params):
                continue
            out.append(verify_record(verify(stmt, params, guard, ctx)))
    return out


def _record_sort_key(rec: dict) -> tuple:
    order = {sid: i for i, sid in enumerate(CATALOG)}
    sid = rec["statement_id"]
    stmt = CATALOG[sid]
    return (order[sid], tuple(rec["params"][k] for k in stmt.param_names))


def run_verify(config: RunConfig) -> tuple[list[dict], list[str], int]:
    sids = _select_statements(config.statements)
    primes = prime_range(config.prime_lo, config.prime_hi)
    policy_fields = {
        "n_max": config.policy_n_max,
        "s_cap": config.policy_s_cap,
        "k_cap": config.policy_k_cap,
    }
    tasks = [(p, sids, config.guard, policy_fields, config.falsify) for p in primes]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(_verify_one_prime, tasks))
    else:
        chunks = [_verify_one_prime(t) for t in tasks]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=_record_sort_key)
    fails = [r for r in records if not r["pass"]]
    margins = [r["observed_amount"] - r["claimed"] for r in records]
    summary = [
        f"summary: records={len(records)} pass={len(records) - len(fails)} "
        f"fail={len(fails)} min_margin={min(margins) if margins else 'n/a'}"
    ]
    return records, summary, EXIT_VIOLATIONS if fails else EXIT_OK


# ---------------------------------------------------------------------------
# scan subcommand
# ---------------------------------------------------------------------------


def _scan_sort_key(rec: dict) -> tuple:
    params = rec["params"]
    return (
        rec["target"],
        params.get("family", ""),
        params.get("m", 0),
        params.get("r", 0),
        params.get("p", 0),
        params.get("n", 0),
        rec["meta"].get("layer", ""),
    )


def _scan_conj11_task(args: tuple) -> list[dict]:
    p, family, n_max, a_max, b_max, guard = args
    recs = scan_conj_1_1(p, n_max, family, a_max, b_max, guard)
    return [scan_record(r) for r in recs]


def _scan_conj12_task(args: tuple) -> list[dict]:
    part, m, r, p_max, guard, hypothesis = args
    recs = scan_conj_1_2(part, m, r, p_max, guard, hypothesis)
    return [scan_record(r) for r in recs]


def run_scan(config: RunConfig) -> tuple[list[dict], list[str], int]:
    from .scanners import admissible_r_part_i, admissible_r_part_ii

    if config.target == "conj1_1":
        primes = prime_range(config.prime_lo, config.prime_hi)
        tasks = []
        for p in primes:
            families = [FAMILY_PLUS] if p <= 3 else [FAMILY_PLUS, FAMILY_MINUS]
            for family in families:
                tasks.append((p, family, config.n_max, config.a_max, config.b_max,
                              config.guard))
        worker = _scan_conj11_task
    elif config.target in ("conj1_2i", "conj1_2ii"):
        part = "ii" if config.target == "conj1_2ii" else "i"
        tasks = []
        m_values = [config.m] if config.m is not None else list(range(2, 9))
        for m in m_values:
            if part == "i" and m <= 2:
                continue
            if config.r is not None:
                pairs = [(config.r, "strict" if (part == "ii" or 2 * config.r >= -m)
                          else "extended")]
            else:
                pairs = admissible_r_part_i(m) if part == "i" else admissible_r_part_ii(m)
            for r, hypothesis in pairs:
                tasks.append((part, m, r, config.p_max, config.guard, hypothesis))
        worker = _scan_conj12_task
    else:
        raise KeyError(f"unknown scan target {config.target!r}")

    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(worker, tasks))
    else:
        chunks = [worker(t) for t in tasks]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=_scan_sort_key)
    counted = [
        r for r in records
        if r["verdict"] == VIOLATED and r["meta"].get("hypothesis", "strict") == "strict"
    ]
    extended_viol = [
        r for r in records
        if r["verdict"] == VIOLATED and r["meta"].get("hypothesis") == "extended"
    ]
    summary = [
        f"summary: records={len(records)} violated={len(counted)}"
        + (f" (plus {len(extended_viol)} under the extended boundary reading,"
           " not counted)" if extended_viol else "")
    ]
    return records, summary, EXIT_VIOLATIONS if counted else EXIT_OK


# ---------------------------------------------------------------------------
# search subcommand
# ---------------------------------------------------------------------------


def _search_task(args: tuple) -> dict:
    n, family = args
    return scan_record(classify_composite(n, family))


def run_search(config: RunConfig) -> tuple[list[dict], list[str], int]:
    families = {
        "both": (FAMILY_PLUS, FAMILY_MINUS),
        "plus": (FAMILY_PLUS,),
        "minus": (FAMILY_MINUS,),
    }[config.family]
    tasks = [
        (n, family)
        for n in range(config.composite_lo, config.composite_hi + 1)
        for family in families
        if not (family == FAMILY_MINUS and n <= 2)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_search_task, tasks))
    else:
        records = [_search_task(t) for t in tasks]
    records.sort(key=lambda rec: (rec["params"]["n"], rec["params"]["family"]))
    anomalies = []
    for rec in records:
        n = rec["params"]["n"]
        if rec["meta"].get("is_prime"):
            if n > 3 and rec["verdict"] != HOLDS:
                anomalies.append(rec)
        elif rec["verdict"] == HOLDS:
            anomalies.append(rec)
    counts = {}
    for rec in records:
        counts[rec["verdict"]] = counts.get(rec["verdict"], 0) + 1
    summary = [
        "summary: records={} verdicts={} anomalies={}".format(
            len(records),
            ",".join(f"{k}:{v}" for k, v in sorted(counts.items())),
            len(anomalies),
        )
    ]
    return records, summary, EXIT_VIOLATIONS if anomalies else EXIT_OK


# ---------------------------------------------------------------------------
# selftest subcommand
# ---------------------------------------------------------------------------


def run_selftest(config: RunConfig) -> tuple[list[str], int]:
    lines = []
    ok = True

    if config.bernoulli_cache:
        try:
            bmod.install_cache(load_cache(config.bernoulli_cache))
            lines.append(f"bernoulli-cache {config.bernoulli_cache}: validated")
        except IrregularCache as exc:
            return [f"IrregularCache: {exc}", "selftest: FAIL"], EXIT_VIOLATIONS

    policy = ParamPolicy()
    for p in ORACLE_PRIMES:
        ctx = PrimeContext(p, policy)
        bad = []
        for sid, stmt in CATALOG.items():
            for params in stmt.param_iter(p, policy):
                if not stmt.applies(params):
                    continue
                if not modular_exact_match(stmt, params, config.guard, ctx):
                    bad.append((sid, params))
        status = "ok" if not bad else f"MISMATCH {bad[:3]}"
        ok &= not bad
        lines.append(f"oracle equivalence p={p}: {status}")

    for p in ORACLE_PRIMES:
        h = {m: harmonic_exact(p - 1, m) for m in (1, 2, 3)}
        identities = [
            sum(h[1][1:], Fraction(0)) == p * h[1][p - 1] - (p - 1),
            sum(h[2][1:], Fraction(0)) == p * h[2][p - 1] - h[1][p - 1],
            sum(h[3][1:], Fraction(0)) == p * h[3][p - 1] - h[2][p - 1],
        ]
        ok &= all(identities)
        lines.append(f"exact prefix-sum identities p={p}: "
                     f"{'ok' if all(identities) else 'FAIL'}")

    bern_ok = bernoulli_exact(12) == Fraction(-691, 2730)
    for n in range(2, 121, 2):
        bern_ok &= bernoulli_exact(n).denominator == vsc_denominator(n)
    ok &= bern_ok
    lines.append(f"bernoulli recurrence vs von Staudt-Clausen (even n <= 120): "
                 f"{'ok' if bern_ok else 'FAIL'}")

    lines.append("selftest: PASS" if ok else "selftest: FAIL")
    return lines, EXIT_OK if ok else EXIT_VIOLATIONS


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------


def _parse_primes(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primecong",
        description="Verify prime-power congruences, scan conjectured bounds, "
                    "and search for composite counterexamples.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp):
        sp.add_argument("--guard", type=int, default=DEFAULT_GUARD,
                        help="extra p-adic digits beyond each claim (default 2)")
        sp.add_argument("--format", dest="fmt", choices=("jsonl", "csv", "human"),
                        default="human")
        sp.add_argument("--output", default=None, help="write records here (default stdout)")
        sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("verify", help="run the congruence statement suite")
    sp.add_argument("--statements", default="all",
                    help="'all' or comma-separated statement ids")
    sp.add_argument("--primes", default="5..499", help="prime range LO..HI")
    sp.add_argument("--bernoulli-cache", default=None)
    sp.add_argument("--falsify", default=None, metavar="ID",
                    help="diagnostic: raise ID's claimed valuation by 1")
    sp.add_argument("--n-max", dest="policy_n_max", type=int, default=10)
    sp.add_argument("--s-cap", dest="policy_s_cap", type=int, default=50)
    sp.add_argument("--k-cap", dest="policy_k_cap", type=int, default=50)
    add_common(sp)

    sp = sub.add_parser("scan", help="scan a conjectured valuation bound")
    sp.add_argument("--target", required=True,
                    choices=("conj1_1", "conj1_2i", "conj1_2ii"))
    sp.add_argument("--primes", default="2..11",
                    help="prime range for conj1_1 (default 2..11)")
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--r", type=int, default=None)
    sp.add_argument("--pmax", dest="p_max", type=int, default=1000)
    sp.add_argument("--nmax", dest="n_max", type=int, default=None,
                    help="dense partial-sum grid bound (default 4p^2)")
    sp.add_argument("--amax", dest="a_max", type=int, default=None)
    sp.add_argument("--bmax", dest="b_max", type=int, default=4)
    add_common(sp)

    sp = sub.add_parser("search", help="composite-counterexample search")
    sp.add_argument("--nmin", dest="composite_lo", type=int, default=4)
    sp.add_argument("--nmax", dest="composite_hi", type=int, default=120)
    sp.add_argument("--family", choices=("plus", "minus", "both"), default="both")
    add_common(sp)

    sp = sub.add_parser("selftest", help="oracle equivalence and integrity checks")
    sp.add_argument("--bernoulli-cache", default=None)
    sp.add_argument("--guard", type=int, default=DEFAULT_GUARD)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    kwargs = {"subcommand": args.subcommand}
    if args.subcommand == "verify":
        kwargs.update(
            statements=tuple(s.strip() for s in args.statements.split(",")),
            bernoulli_cache=args.bernoulli_cache,
            falsify=args.falsify,
            policy_n_max=args.policy_n_max,
            policy_s_cap=args.policy_s_cap,
            policy_k_cap=args.policy_k_cap,
        )
        kwargs["prime_lo"], kwargs["prime_hi"] = _parse_primes(args.primes)
    elif args.subcommand == "scan":
        kwargs.update(target=args.target, m=args.m, r=args.r, p_max=args.p_max,
                      n_max=args.n_max, a_max=args.a_max, b_max=args.b_max)
        kwargs["prime_lo"], kwargs["prime_hi"] = _parse_primes(args.primes)
    elif args.subcommand == "search":
        kwargs.update(composite_lo=args.composite_lo, composite_hi=args.composite_hi,
                      family=args.family)
    elif args.subcommand == "selftest":
        kwargs.update(bernoulli_cache=args.bernoulli_cache)
    for name in ("guard", "fmt", "output", "workers"):
        if hasattr(args, name):
            kwargs[name] = getattr(args, name)
    return RunConfig(**kwargs)


def run(config: RunConfig) -> int:
    try:
        if config.subcommand == "selftest":
            lines, code = run_selftest(config)
            print("\n".join(lines))
            return code

        if config.subcommand == "verify":
            if config.bernoulli_cache:
                try:
                    bmod.install_cache(load_cache(config.bernoulli_cache))
                except IrregularCache as exc:
                    print(f"IrregularCache: {exc}", file=sys.stderr)
                    return EXIT_VIOLATIONS
            records, summary, code = run_verify(config)
        elif config.subcommand == "scan":
            records, summary, code = run_scan(config)
        elif config.subcommand == "search":
            records, summary, code = run_search(config)
        else:
            raise KeyError(f"unknown subcommand {config.subcommand!r}")
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    buffer = io.StringIO()
    write_records(records, config.fmt, buffer, summary)
    try:
        if config.output:
            with open(config.output, "w") as fh:
                fh.write(buffer.getvalue())
        else:
            sys.stdout.write(buffer.getvalue())
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if config.fmt != "human":
        print(summary[0], file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
