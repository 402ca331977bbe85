"""Scans over odd squarefree n, density statistics and the end-to-end verifier."""
from __future__ import annotations

import csv
import json
import math
import warnings
from collections import Counter
from dataclasses import asdict, dataclass, field, fields
from multiprocessing import get_context

import numpy as np

from .arithmetic import FactoredOddSquarefree, sieve_odd_squarefree, spf_table
from .biquadratic import (
    check_final_identity,
    count_F,
    count_F_closed_form,
    delta,
    rk2_biquad,
    rk4_biquad,
    rk4_bounds,
)
from .config import settings
from .errors import FormulaAnomaly, ResourceLimit
from .forms import FormClassOracle, rk2k
from .pell import _in_E_unchecked, hasse_witness, solve_pm2
from .quadratic import (
    _redei_pair,
    fundamental_discriminants,
    index_i,
    rk2_narrow,
    rk2_ordinary,
    rk4_narrow,
)

ETA_TRUNCATION = 1e-15


def eta(r, t: float) -> float:
    """prod_{j=1}^{r} (1 - t^-j); r may be math.inf."""
    if t <= 1:
        raise ValueError("eta needs t > 1")
    out = 1.0
    j = 1
    while j <= r:
        term = t ** (-j)
        if term < ETA_TRUNCATION and r == math.inf:
            break
        out *= 1.0 - term
        j += 1
    return out


def fk_joint_density(r: int) -> float:
    """Limiting proportion of D = 1 mod 4 with rk4 Cl+(D) = rk4 Cl(-D) = r."""
    return (
        2.0 ** (-r * r - r)
        * (1 - 2.0 ** (-(r + 1)))
        * eta(math.inf, 2)
        / eta(r, 2)
        / eta(r + 1, 2)
    )


@dataclass
class ScanRecord:
    n: int
    omega: int
    omega1: int
    omega3: int
    has_p5mod8: bool
    in_E: bool
    Q: int
    delta: int
    epsilon: int
    rk2_plus: int
    rk2_minus: int
    rk2_K: int
    in_N: bool
    hypothesis_ordinary: bool | None
    rk4_K: int | None
    h_plus: int | None
    h_minus: int | None
    dirichlet_check: str  # pass / fail / not-applicable


CSV_COLUMNS = [f.name for f in fields(ScanRecord)]


def scan_record(fn: FactoredOddSquarefree, oracle: FormClassOracle | None = None) -> ScanRecord:
    n = fn.n
    eps = 1 if _in_E_unchecked(n) else 0
    r4p, r4m = _redei_pair(fn)
    member = r4p == 0 and r4m == 0
    hyp = h_plus = h_minus = None
    check = "not-applicable"
    if oracle is not None:
        plus, minus = fundamental_discriminants(fn)
        if oracle.covers(plus) and oracle.covers(minus):
            ordinary = oracle.ordinary_class_group(plus)
            negative = oracle.narrow_class_group(minus)
            h_plus, h_minus = ordinary.order, negative.order
            hyp = rk2k(ordinary, 2) == 0 and rk2k(negative, 2) == 0
    holds = hyp if hyp is not None else member
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FormulaAnomaly)
        rk4 = rk4_biquad(fn, holds, eps)
    if member and h_plus is not None:
        check = "pass" if check_final_identity(fn, h_plus, h_minus, True).passed else "fail"
    return ScanRecord(
        n=n,
        omega=fn.omega,
        omega1=fn.omega1,
        omega3=fn.omega3,
        has_p5mod8=fn.has_p5mod8,
        in_E=bool(eps),
        Q=1 + eps,
        delta=delta(fn),
        epsilon=eps,
        rk2_plus=rk2_ordinary(1, fn),
        rk2_minus=rk2_ordinary(-1, fn),
        rk2_K=rk2_biquad(fn),
        in_N=member,
        hypothesis_ordinary=hyp,
        rk4_K=rk4,
        h_plus=h_plus,
        h_minus=h_minus,
        dirichlet_check=check,
    )


def _scan_chunk(args):
    lo, hi, only_N, oracle_bound = args
    oracle = FormClassOracle(oracle_bound) if oracle_bound else None
    out = []
    for fn in sieve_odd_squarefree(hi, start=lo):
        rec = scan_record(fn, oracle)
        if rec.in_N or not only_N:
            out.append(rec)
    return out


def _chunks(limit: int, jobs: int):
    lo = 5
    if jobs <= 1:
        return [(lo, limit)]
    pieces = max(4 * jobs, 1)
    step = max((limit - lo) // pieces + 1, 1000)
    return [(a, min(a + step - 1, limit)) for a in range(lo, limit + 1, step)]


def scan(limit: int, only_N: bool = False, oracle_max: int | None = None, jobs: int = 1):
    """Records for every odd squarefree 3 < n <= limit, in ascending order.

    ``oracle_max`` bounds n for which the form class group oracle is run
    (it then covers discriminants up to 4 * oracle_max). Output does not
    depend on ``jobs``.
    """
    if limit > settings.sieve_limit:
        raise ResourceLimit(f"scan limit {limit} exceeds the sieve budget")
    if limit < 5:
        return
    oracle_bound = 4 * oracle_max if oracle_max else 0
    tasks = []
    for lo, hi in _chunks(limit, jobs):
        if oracle_max and lo <= oracle_max < hi:
            tasks.append((lo, oracle_max, only_N, oracle_bound))
            tasks.append((oracle_max + 1, hi, only_N, 0))
        else:
            tasks.append((lo, hi, only_N, oracle_bound if oracle_max and hi <= oracle_max else 0))
    if jobs <= 1:
        for t in tasks:
            yield from _scan_chunk(t)
        return
    with get_context("spawn").Pool(jobs) as pool:
        for chunk in pool.imap(_scan_chunk, tasks):
            yield from chunk


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    return str(v)


def write_csv(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    count = 0
    for rec in records:
        w.writerow([_csv_cell(getattr(rec, c)) for c in CSV_COLUMNS])
        count += 1
    return count


def write_json(records, fh):
    fh.write("[")
    count = 0
    for rec in records:
        fh.write(",\n" if count else "\n")
        fh.write(json.dumps(asdict(rec)))
        count += 1
    fh.write("\n]\n")
    return count


@dataclass
class DensityReport:
    limit: int
    count_odd_squarefree: int
    count_in_N: int
    fraction_in_N: float
    count_in_E: int
    fraction_in_E: float
    rk4_histogram: dict[int, int]
    omega3_mean: float
    omega3_variance: float
    half_loglog: float
    epsilon: float = 0.5
    near_half_loglog_fraction: float = 0.0
    anomalies: list[int] = field(default_factory=list)


def density_report(limit: int, epsilon: float = 0.5, jobs: int = 1) -> DensityReport:
    count = in_N = in_E = near = 0
    hist: Counter = Counter()
    w3_sum = w3_sq = 0
    anomalies = []
    for rec in scan(limit, jobs=jobs):
        count += 1
        in_E += rec.in_E
        w3_sum += rec.omega3
        w3_sq += rec.omega3 * rec.omega3
        if rec.in_N:
            in_N += 1
            hist[rec.rk4_K] += 1
            if rec.rk4_K < 0:
                anomalies.append(rec.n)
            ll = math.log(math.log(rec.n))
            if abs(rec.rk4_K - 0.5 * ll) <= epsilon * ll:
                near += 1
    mean = w3_sum / count if count else 0.0
    return DensityReport(
        limit=limit,
        count_odd_squarefree=count,
        count_in_N=in_N,
        fraction_in_N=in_N / count if count else 0.0,
        count_in_E=in_E,
        fraction_in_E=in_E / count if count else 0.0,
        rk4_histogram=dict(sorted(hist.items())),
        omega3_mean=mean,
        omega3_variance=w3_sq / count - mean * mean if count else 0.0,
        half_loglog=0.5 * math.log(math.log(limit)),
        epsilon=epsilon,
        near_half_loglog_fraction=near / count if count else 0.0,
        anomalies=anomalies,
    )


def omega3_table(limit: int) -> np.ndarray:
    """omega_3(m) for 0 <= m <= limit (entries 0 and 1 are 0)."""
    spf = spf_table(limit)
    idx = np.arange(limit + 1)
    primes = np.nonzero((spf == idx) & (idx % 4 == 3))[0]
    w3 = np.zeros(limit + 1, dtype=np.int16)
    for p in primes.tolist():
        w3[p::p] += 1
    return w3


def omega3_concentration(limit: int, eps: float = 0.8) -> float:
    """Fraction of 1 <= n <= limit with omega_3(n) outside
    [(1 - eps) L / 2, (1 + eps) L / 2], L = log log limit."""
    L = math.log(math.log(limit))
    w3 = omega3_table(limit)[1:]
    lo, hi = 0.5 * (1 - eps) * L, 0.5 * (1 + eps) * L
    outside = np.count_nonzero((w3 < lo) | (w3 > hi))
    return outside / limit


def rk4_quadratic_histogram(limit: int) -> dict[str, dict[int, int]]:
    """Empirical distribution of rk4 Cl+(n) and rk4 Cl(-n), 3 < n <= limit."""
    plus: Counter = Counter()
    minus: Counter = Counter()
    for fn in sieve_odd_squarefree(limit, start=5):
        a, b = _redei_pair(fn)
        plus[a] += 1
        minus[b] += 1
    return {"plus": dict(sorted(plus.items())), "minus": dict(sorted(minus.items()))}


# --- end-to-end verification -------------------------------------------------


def brute_force_pm2(ns, e_max: int = 10**4) -> dict[int, tuple[int, int] | None]:
    """Smallest (c, e) with c^2 - n e^2 = +-2 and e <= e_max, by exhaustion."""
    e = np.arange(1, e_max + 1, dtype=np.int64)
    e2 = e * e
    out = {}
    for n in ns:
        base = n * e2
        hit = None
        for s in (2, -2):
            v = base + s
            c = np.rint(np.sqrt(v.astype(np.float64))).astype(np.int64)
            ok = np.nonzero(c * c == v)[0]
            if ok.size and (hit is None or ok[0] < hit[1] - 1):
                hit = (int(c[ok[0]]), int(e[ok[0]]))
        out[n] = hit
    return out


@dataclass
class Failure:
    suite: str
    n: int
    detail: str


@dataclass
class VerifyResult:
    failures: list[Failure]
    checked: dict[str, int]

    @property
    def status(self) -> int:
        return 1 if self.failures else 0


def _suite_genus_redei(oracle_max, oracle, failures, checked):
    for fn in sieve_odd_squarefree(oracle_max, start=5):
        plus, minus = fundamental_discriminants(fn)
        g_plus = oracle.narrow_class_group(plus)
        g_ord = oracle.ordinary_class_group(plus)
        g_minus = oracle.narrow_class_group(minus)
        want = {
            "rk2 narrow +": (rk2_narrow(plus), rk2k(g_plus, 1)),
            "rk2 narrow -": (rk2_narrow(minus), rk2k(g_minus, 1)),
            "rk2 ordinary +": (rk2_ordinary(1, fn), rk2k(g_ord, 1)),
            "rk2 ordinary -": (rk2_ordinary(-1, fn), rk2k(g_minus, 1)),
        }
        idx = index_i(fn)
        want["index"] = (idx, g_plus.order // g_ord.order)
        for name, (a, b) in want.items():
            if a != b:
                failures.append(Failure("genus", fn.n, f"{name}: formula {a} != oracle {b}"))
        checked["genus"] += 1
        for D, g in ((plus, g_plus), (minus, g_minus)):
            r = rk4_narrow(D)
            if r != rk2k(g, 2):
                failures.append(Failure("redei", fn.n, f"D={D}: redei {r} != oracle {rk2k(g, 2)}"))
            checked["redei"] += 1


def _suite_f_count(limit, failures, checked):
    for fn in sieve_odd_squarefree(limit):
        f = count_F(fn)
        closed = count_F_closed_form(fn)
        via_rank = 4 << rk2_biquad(fn)
        if not f == closed == via_rank:
            failures.append(Failure("f_count", fn.n, f"{f}, {closed}, {via_rank}"))
        checked["f_count"] += 1


def _suite_e_membership(limit, failures, checked, e_max=10**4):
    ns = [fn.n for fn in sieve_odd_squarefree(limit, start=5)]
    brute = brute_force_pm2(ns, e_max)
    for n in ns:
        w = solve_pm2(n)
        b = brute[n]
        if w is None:
            if b is not None:
                failures.append(Failure("e_membership", n, f"brute force found {b}, CF did not"))
        else:
            try:
                hasse_witness(w, n)
            except ValueError as exc:
                failures.append(Failure("e_membership", n, str(exc)))
            # a CF witness within the brute-force window must have been seen
            if w.e <= e_max and b is None:
                failures.append(Failure("e_membership", n, f"brute force missed {w}"))
        checked["e_membership"] += 1


def _suite_dirichlet(oracle_max, oracle, failures, checked):
    for fn in sieve_odd_squarefree(oracle_max, start=5):
        a, b = _redei_pair(fn)
        if a or b:
            continue
        plus, minus = fundamental_discriminants(fn)
        rep = check_final_identity(
            fn, oracle.class_number(plus), oracle.class_number(minus), True
        )
        if not rep.passed:
            failures.append(Failure("dirichlet", fn.n, f"lhs {rep.lhs} != rhs {rep.rhs}"))
        g_ord = oracle.ordinary_class_group(plus)
        if rk2k(g_ord, 2) or rk2k(oracle.narrow_class_group(minus), 2):
            failures.append(Failure("dirichlet", fn.n, "in N but ordinary 4-rank nonzero"))
        checked["dirichlet"] += 1


def _suite_bounds(limit, failures, checked, jobs=1):
    for rec in scan(limit, only_N=True, jobs=jobs):
        lo, hi = rk4_bounds(rec.n)
        if not (rec.rk4_K >= 0 and lo <= rec.rk4_K <= hi):
            failures.append(Failure("bounds", rec.n, f"rk4 {rec.rk4_K} not in [{lo}, {hi}]"))
        if rec.rk2_K == 0 and rec.rk4_K != 0:
            failures.append(Failure("bounds", rec.n, "rk4 > 0 with rk2 = 0"))
        checked["bounds"] += 1


def verify_all(limit: int, oracle_max: int, jobs: int = 1) -> VerifyResult:
    failures: list[Failure] = []
    checked: Counter = Counter()
    oracle = FormClassOracle(4 * oracle_max)
    if oracle_max >= 5:
        _suite_genus_redei(oracle_max, oracle, failures, checked)
        _suite_dirichlet(oracle_max, oracle, failures, checked)
    if limit >= 3:
        _suite_f_count(limit, failures, checked)
    if limit >= 5:
        _suite_e_membership(min(limit, 2000), failures, checked)
        _suite_bounds(limit, failures, checked, jobs)
    return VerifyResult(failures=failures, checked=dict(checked))
