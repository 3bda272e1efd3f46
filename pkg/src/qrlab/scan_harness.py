"""Batch verification over primes p = 4n - 1, conjecture tables and dossiers."""

from __future__ import annotations

import csv
import io
import json
import logging
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import IO, Iterable

from .arith_core import N_MAX, CompositeModulusError, is_prime, make_context, radical_floors
from .class_number import (
    IDENTITY_IDS,
    build_prime_data,
    h_dirichlet_estimate,
    verify_all,
)
from .jump_engine import (
    PropertyViolation,
    b_mid_cardinality_report,
    b_mid_members,
    bijection_A_ge,
    bijection_A_mid,
    gamma,
    structure_checks,
)

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
SCAN_N_MAX = 1 << 20

CSV_HEADER = ["n", "p", "id", "lhs_times_d", "rhs_times_d", "denominator", "holds", "skip_reason"]
CONJECTURE_HEADER = ["n", "p", "J_n", "M", "jn_over_n", "sum_RQ", "target_RQ", "rq_ratio"]


@dataclass
class ScanConfig:
    n_min: int
    n_max: int
    identities: tuple[str, ...] = IDENTITY_IDS
    output_format: str = "csv"
    output_path: str | None = None
    parallelism: int = 1
    dirichlet_check: bool = False
    max_terms: int | None = None  # default 50 p per prime

    def validate(self, cap: int | None = SCAN_N_MAX) -> None:
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError(f"invalid range: need 1 <= n_min <= n_max, got [{self.n_min}, {self.n_max}]")
        if cap is not None and self.n_max > cap:
            raise ValueError(f"n_max = {self.n_max} exceeds the cap {cap}")
        if self.n_max > N_MAX:
            raise ValueError(f"n_max = {self.n_max} exceeds supported range 2**30")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        if self.output_format not in ("csv", "json", "human"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        unknown = [i for i in self.identities if i not in IDENTITY_IDS]
        if unknown:
            raise ValueError(f"unknown identity ids: {', '.join(unknown)}")


@dataclass
class PrimeOutcome:
    """Result of the full verification pass for one prime."""

    n: int
    p: int
    rows: list[dict]
    checks: dict = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    dirichlet: dict | None = None


def prime_ns(n_min: int, n_max: int) -> list[int]:
    return [n for n in range(n_min, n_max + 1) if is_prime(4 * n - 1)]


def verify_prime(n: int, ids: tuple[str, ...] = IDENTITY_IDS, dirichlet: bool = False,
                 max_terms: int | None = None) -> PrimeOutcome:
    ctx = make_context(n)
    data = build_prime_data(ctx)
    order = {iid: i for i, iid in enumerate(IDENTITY_IDS)}
    rows = []
    for rep in sorted(verify_all(data, ids), key=lambda r: order[r.id]):
        rows.append({
            "n": n, "p": ctx.p, "id": rep.id,
            "lhs_times_d": rep.lhs_times_d, "rhs_times_d": rep.rhs_times_d,
            "denominator": rep.denominator, "holds": rep.holds,
            "skip_reason": rep.skip_reason, "witness": rep.witness,
        })
    out = PrimeOutcome(n, ctx.p, rows)

    if n > 3:
        part = data.partition
        try:
            out.checks["bijection_A_ge_pairs"] = len(bijection_A_ge(ctx, part).pairs)
            out.checks["bijection_A_mid_pairs"] = len(bijection_A_mid(ctx, part).pairs)
            out.checks["b_mid_members"] = list(b_mid_members(ctx, part))
        except PropertyViolation as exc:
            out.violations.append(str(exc))
        structure = structure_checks(ctx, data.profile, part, data.floors)
        out.checks["structure"] = structure
        out.violations += [f"n={n} p={ctx.p}: {name} failed" for name, ok in structure.items() if not ok]
        out.checks["endpoints"] = data.profile.endpoint_report()
        out.checks["b_mid_cardinality"] = b_mid_cardinality_report(ctx, part)
    else:
        out.checks["hypothesis_excluded"] = True

    if dirichlet and ctx.p > 3:
        est = h_dirichlet_estimate(ctx, max_terms)
        out.dirichlet = {**asdict(est), "h": data.h, "agrees": est.nearest == data.h}
        if not out.dirichlet["agrees"]:
            log.warning("Dirichlet estimate %d != h = %d at p = %d", est.nearest, data.h, ctx.p)
    return out


def _verify_star(args) -> PrimeOutcome:
    return verify_prime(*args)


def run_scan(config: ScanConfig) -> list[PrimeOutcome]:
    """Verify every prime in range; outcomes come back sorted by n."""
    config.validate()
    ns = prime_ns(config.n_min, config.n_max)
    work = [(n, tuple(config.identities), config.dirichlet_check, config.max_terms) for n in ns]
    if config.parallelism == 1 or len(work) < 2:
        outcomes = [_verify_star(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
            outcomes = list(pool.map(_verify_star, work, chunksize=max(1, len(work) // (8 * config.parallelism))))
    return sorted(outcomes, key=lambda o: o.n)


def _fmt_bool(v: bool | None) -> str:
    return "" if v is None else str(v).lower()


def write_csv(outcomes: Iterable[PrimeOutcome], fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for o in outcomes:
        for r in o.rows:
            w.writerow([
                r["n"], r["p"], r["id"],
                "" if r["lhs_times_d"] is None else r["lhs_times_d"],
                "" if r["rhs_times_d"] is None else r["rhs_times_d"],
                "" if r["denominator"] is None else r["denominator"],
                _fmt_bool(r["holds"]), r["skip_reason"] or "",
            ])


def write_json(outcomes: list[PrimeOutcome], config: ScanConfig, fh: IO[str]) -> None:
    doc = {
        "n_min": config.n_min,
        "n_max": config.n_max,
        "primes": [asdict(o) for o in outcomes],
        "summary": summarize(outcomes),
    }
    json.dump(doc, fh, indent=1, sort_keys=False)
    fh.write("\n")


def write_human(outcomes: list[PrimeOutcome], fh: IO[str]) -> None:
    for o in outcomes:
        fh.write(f"n={o.n} p={o.p}\n")
        for r in o.rows:
            if r["skip_reason"]:
                fh.write(f"  {r['id']:<4} skipped ({r['skip_reason']})\n")
            else:
                verdict = "pass" if r["holds"] else "FAIL"
                fh.write(f"  {r['id']:<4} {verdict}  {r['lhs_times_d']} = {r['rhs_times_d']}  (d={r['denominator']})\n")
        for v in o.violations:
            fh.write(f"  VIOLATION {v}\n")
        if o.dirichlet:
            d = o.dirichlet
            fh.write(f"  dirichlet {d['value']:.6f} -> {d['nearest']} (h={d['h']}, converged={d['converged']})\n")
    s = summarize(outcomes)
    fh.write(f"primes={s['primes']} pass={s['pass']} fail={s['fail']} skipped={s['skipped']} "
             f"violations={s['violations']}\n")


def summarize(outcomes: list[PrimeOutcome]) -> dict:
    rows = [r for o in outcomes for r in o.rows]
    s = {
        "primes": len(outcomes),
        "pass": sum(1 for r in rows if r["holds"] is True),
        "fail": sum(1 for r in rows if r["holds"] is False),
        "skipped": sum(1 for r in rows if r["skip_reason"]),
        "violations": sum(len(o.violations) for o in outcomes),
    }
    dirs = [o.dirichlet for o in outcomes if o.dirichlet]
    if dirs:
        s["dirichlet_checked"] = len(dirs)
        s["dirichlet_agree"] = sum(d["agrees"] for d in dirs)
        s["dirichlet_converged"] = sum(d["converged"] for d in dirs)
    return s


def first_failure(outcomes: list[PrimeOutcome]) -> str | None:
    for o in outcomes:
        for r in o.rows:
            if r["holds"] is False:
                return f"n={r['n']} id={r['id']} lhs={r['lhs_times_d']} rhs={r['rhs_times_d']}"
        if o.violations:
            return o.violations[0]
    return None


def scan(config: ScanConfig, stdout: IO[str] | None = None, stderr: IO[str] | None = None) -> int:
    """Run the verification scan and write the report; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        outcomes = run_scan(config)
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    buf = io.StringIO()
    if config.output_format == "csv":
        write_csv(outcomes, buf)
    elif config.output_format == "json":
        write_json(outcomes, config, buf)
    else:
        write_human(outcomes, buf)
    try:
        if config.output_path:
            with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
        else:
            stdout.write(buf.getvalue())
    except OSError as exc:
        stderr.write(f"error: cannot write report: {exc}\n")
        return EXIT_USAGE
    failure = first_failure(outcomes)
    if failure:
        stderr.write(f"identity violation: {failure}\n")
        return EXIT_VIOLATION
    return EXIT_OK


@dataclass(frozen=True)
class ConjectureRow:
    n: int
    p: int
    J_n: int
    M: int
    sum_RQ: int  # sum floor(R_m), m=1..M, plus sum floor(Q_m), m=0..M-1
    target_RQ: int  # floor((Mp + 2n) / 3)

    @property
    def jn_over_n(self) -> float:
        return self.J_n / self.n

    @property
    def rq_ratio(self) -> float:
        return self.sum_RQ / (self.M * self.p + 2 * self.n)

    @property
    def hypothesis_excluded(self) -> bool:
        return self.n <= 3


def conjecture_row(n: int) -> ConjectureRow:
    ctx = make_context(n)
    floors = radical_floors(ctx)
    J_n = sum(1 for k in range(2, n + 3) if gamma(ctx, k) >= ctx.p)
    return ConjectureRow(n, ctx.p, J_n, ctx.M, floors.sum_R + floors.sum_Q, (ctx.M * ctx.p + 2 * n) // 3)


def conjecture_rows(config: ScanConfig) -> list[ConjectureRow]:
    config.validate(cap=None)
    ns = prime_ns(config.n_min, config.n_max)
    if config.parallelism == 1 or len(ns) < 2:
        return [conjecture_row(n) for n in ns]
    with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
        return list(pool.map(conjecture_row, ns, chunksize=16))


def write_conjecture_csv(rows: list[ConjectureRow], fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CONJECTURE_HEADER)
    for r in rows:
        w.writerow([r.n, r.p, r.J_n, r.M, f"{r.jn_over_n:.6f}", r.sum_RQ, r.target_RQ, f"{r.rq_ratio:.6f}"])
    for r in rows:
        if r.hypothesis_excluded:
            fh.write(f"# n={r.n}: hypothesis-excluded (n <= 3), J_n from raw gamma\n")
    if rows:
        for label, vals in (("jn_over_n", [r.jn_over_n for r in rows]), ("rq_ratio", [r.rq_ratio for r in rows])):
            fh.write(f"# {label}: min={min(vals):.4f} mean={statistics.fmean(vals):.4f} max={max(vals):.4f}"
                     f" over {len(vals)} primes\n")


def conjecture_table(config: ScanConfig, stdout: IO[str] | None = None,
                     stderr: IO[str] | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        rows = conjecture_rows(config)
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    buf = io.StringIO()
    write_conjecture_csv(rows, buf)
    try:
        if config.output_path:
            with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
        else:
            stdout.write(buf.getvalue())
    except OSError as exc:
        stderr.write(f"error: cannot write report: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


def _set(xs) -> str:
    return "{" + ", ".join(map(str, xs)) + "}"


def prime_report(n: int) -> str:
    """Human-readable dossier for one prime.  Raises CompositeModulusError."""
    ctx = make_context(n)
    data = build_prime_data(ctx)
    p = ctx.p
    lines = [f"n = {n}, p = {p}"]
    lines.append(f"h(-p) = {data.h if data.h is not None else 'n/a (p = 3)'}")
    lines.append(f"M = {ctx.M}, M0 = {ctx.M0}, J_n = {data.profile.J_n}")
    lines.append(f"Γ({n + 1})={gamma(ctx, n + 1)}, Γ({n + 2})={gamma(ctx, n + 2)}")
    f = data.floors
    lines.append(f"floor(Q_m), m=0..M-1: {list(f.floor_Q)}")
    lines.append(f"floor(R_m), m=1..M: {list(f.floor_R)}")
    lines.append(f"k_m: {list(f.k_jump)}   l_m: {list(f.ell)}")
    pr = data.profile
    lines.append(f"jumps in [2, p]: {pr.J_total}  [2, 2n]: {pr.J_low}  [2n+1, p]: {pr.J_high}")
    if data.partition is not None:
        part = data.partition
        for label, name in (("A^<", "A_lt"), ("A^[)", "A_mid"), ("A^≥", "A_ge"),
                            ("B^<", "B_lt"), ("B^[)", "B_mid"), ("B^≥", "B_ge")):
            lines.append(f"{label} = {_set(getattr(part, name))}")
    outcome = verify_prime(n)
    if n > 3:
        part = data.partition
        try:
            lines.append(f"A^≥ -> B^< pairs: {list(bijection_A_ge(ctx, part).pairs)}")
            w = bijection_A_mid(ctx, part)
            lines.append(f"A^[) - {{y, z}} -> B^[) pairs: {list(w.pairs)}")
            for a in w.aux:
                lines.append(f"    k={a['k']} m={a['m']} u0={a['u0']} m_f={a['m_f']} w_f={a['w_f']}")
        except PropertyViolation as exc:
            lines.append(f"bijection violation: {exc}")
        bm = outcome.checks["b_mid_cardinality"]
        lines.append(f"|B^[)| = {bm['B_mid_size']}, M0 = {bm['M0']}, floor((n^2-4n+5)/2) = {bm['printed_half']}")
        ep = outcome.checks["endpoints"]
        lines.append("endpoint matches: " + ", ".join(k for k, v in ep.items() if v))
        for name, ok in outcome.checks["structure"].items():
            lines.append(f"  {name}: {'ok' if ok else 'FAILED'}")
    else:
        lines.append("n <= 3: hypothesis-excluded for jump counts and bijections")
    lines.append("identities:")
    for r in outcome.rows:
        if r["skip_reason"]:
            lines.append(f"  {r['id']:<4} skipped ({r['skip_reason']})")
        else:
            lines.append(f"  {r['id']:<4} {'pass' if r['holds'] else 'FAIL'}  "
                         f"{r['lhs_times_d']} = {r['rhs_times_d']}  (d={r['denominator']})")
    return "\n".join(lines) + "\n"


__all__ = [
    "CSV_HEADER", "CONJECTURE_HEADER", "ConjectureRow", "CompositeModulusError", "PrimeOutcome",
    "ScanConfig", "conjecture_row", "conjecture_rows", "conjecture_table", "prime_report",
    "run_scan", "scan", "verify_prime",
]
