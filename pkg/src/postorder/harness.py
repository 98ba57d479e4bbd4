"""Exhaustive and randomised verification suites.

A suite is a generator of small JSON-able case dicts plus a checker for a
single case. Failures carry the case dict, so any failure can be re-run on
its own (``postorder verify --suite NAME --case '{...}'``).
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterator, Optional

from .dwt import analyze_levelwise, analyze_streaming, energy, synthesize
from .dyadic import (
    DyadicInterval,
    IntervalSet,
    carleson,
    carleson_witness,
    contains,
    enumerate_intervals,
    interval_of_index,
    lowermost_level,
    subtree,
)
from .geometry import (
    carleson_cone_fillup,
    carleson_order_interval,
    cone,
    maximal_decomposition,
    maximal_intervals,
    maximal_intervals_sweep,
    right_fill_up,
)
from .norms import (
    HaarExpansion,
    apply_hp_rearrangement,
    bmo_norm_sq,
    extremality_certificates,
    fefferman_check,
    h2_norm_sq,
    theorem_operatornorm1_suite,
)
from .ordinals import (
    Rearrangement,
    lex_ordinal,
    lex_order_interval,
    level_of,
    post_ordinal_closed,
    post_ordinal_traversal,
    post_order_interval,
    pos_of,
    precedes,
    precedes_geometric,
    sigma,
    tau,
    two_adic_valuation,
    valuation_sum,
)
from .rationals import DyadicRational

__all__ = [
    "SCHEMA_VERSION",
    "SUITES",
    "VerificationReport",
    "ConjectureRecord",
    "run_suite",
    "run_case",
    "verify_leftmost",
    "verify_kg0",
    "verify_remark",
    "conjecture_scan",
    "verify_all",
    "load_schema",
]

SCHEMA_VERSION = "1.0"
WORKERS_ENV = "POSTORDER_WORKERS"


@dataclass
class VerificationReport:
    suite: str
    params: dict
    asserting: bool = True
    cases: int = 0
    failures: list = field(default_factory=list)
    values: dict = field(default_factory=dict)
    elapsed: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "asserting": self.asserting,
            "params": self.params,
            "cases": self.cases,
            "passed": self.passed,
            "failure_count": len(self.failures),
            "failures": self.failures,
            "values": self.values,
        }
        if timings:
            out["elapsed_s"] = self.elapsed
        return out


def _iv(obj) -> DyadicInterval:
    return DyadicInterval(int(obj[0]), int(obj[1]))


def _dy(x: DyadicRational) -> str:
    return str(x)


# -- ordinal identities ------------------------------------------------------

def _ordinal_cases(n_max: int, seed: int) -> Iterator[dict]:
    for N in range(min(n_max, 10) + 1):
        yield {"N": N}
    for s in range(1, 21):
        yield {"s": s}


def _ordinal_check(case: dict) -> tuple[list, dict]:
    if "s" in case:
        s = case["s"]
        total = sum(two_adic_valuation(j) for j in range(1, (1 << (s - 1)) + 1))
        ok = total == (1 << (s - 1)) - 1 and valuation_sum(1 << (s - 1)) == total
        return ([] if ok else [{"reason": "partial-sum identity fails", "witness": {"s": s, "sum": total}}]), {}
    N = case["N"]
    fails = []

    def fail(reason, **w):
        fails.append({"reason": reason, "witness": {"N": N, **w}})

    seen_lex = set()
    for iv in enumerate_intervals(N):
        l, k = iv.level, iv.pos
        a = post_ordinal_closed(iv, N)
        if a != post_ordinal_traversal(iv, N):
            fail("closed-form ordinal differs from traversal", interval=iv.to_json())
        L = a.bit_length() - 1
        if level_of(iv, N) != L or pos_of(iv, N) != a - (1 << L):
            fail("Level/Pos closed form differs from ordinal split", interval=iv.to_json())
        if l < N:
            if a != post_ordinal_closed(DyadicInterval(l + 1, 2 * k + 1), N) + 1:
                fail("recursion via right child fails", interval=iv.to_json())
            if a != post_ordinal_closed(DyadicInterval(l + 1, 2 * k), N) + (1 << (N - l)):
                fail("recursion via left child fails", interval=iv.to_json())
        if k >= 1:
            prev = post_ordinal_closed(DyadicInterval(l, k - 1), N)
            if a - prev - 1 != two_adic_valuation(k) + (1 << (N - l + 1)) - 2:
                fail("gap formula fails", interval=iv.to_json())
            if level_of(iv, N) < level_of(DyadicInterval(l, k - 1), N):
                fail("Level is not monotone in the position", interval=iv.to_json())
        t = tau(iv, N)
        if lex_ordinal(t) != a:
            fail("tau does not send postorder ordinal n to lexicographic ordinal n", interval=iv.to_json())
        if sigma(t, N) != iv:
            fail("sigma(tau(I)) != I", interval=iv.to_json())
        seen_lex.add(t)
    if len(seen_lex) != (1 << (N + 1)) - 1:
        fail("tau is not injective")
    if N <= 6:
        ivs = enumerate_intervals(N)
        for a_ in ivs:
            for b_ in ivs:
                if precedes_geometric(a_, b_) != precedes(a_, b_, N):
                    fail("geometric postorder disagrees with ordinals", a=a_.to_json(), b=b_.to_json())
    return fails, {}


# -- subtree images ---------------------------------------------------------

def _level_cases(cap: int, start: int = 0):
    def gen(n_max: int, seed: int) -> Iterator[dict]:
        for N in range(min(n_max, cap) + 1):
            for l in range(start, N + 1):
                yield {"N": N, "l": l}
    return gen


def _image(N: int, C: IntervalSet) -> IntervalSet:
    # tau via closed forms, independent of materialised tables
    return IntervalSet(N, (tau(iv, N) for iv in C))


def _leftmost_check(case: dict) -> tuple[list, dict]:
    N, l = case["N"], case["l"]
    fails = []
    T = _image(N, subtree(l, 0, N))
    D = IntervalSet.from_mask(N, (1 << ((1 << (N - l + 1)) - 1)) - 1)
    if T != D:
        fails.append({"reason": "tau(T_{l,0}) differs from D_{N-l}", "witness": case})
    cT = carleson(T)
    if cT != N - l + 1:
        fails.append({"reason": f"car(tau(T_(l,0))) = {cT} != {N - l + 1}", "witness": case})
    cE = carleson(_image(N, lowermost_level(l, 0, N)))
    if 2 * cE < N - l + 1:
        fails.append({"reason": f"car(tau(E_(l,0))) = {cE} < (N-l+1)/2", "witness": case})
    return fails, {f"N={N},l={l}": {"car_tau_T": _dy(cT), "car_tau_E": _dy(cE)}}


def _kg0_check(case: dict) -> tuple[list, dict]:
    N, l = case["N"], case["l"]
    fails = []
    for k in range(1, 1 << l):
        T = _image(N, subtree(l, k, N))
        E = _image(N, lowermost_level(l, k, N))
        level = k.bit_length() + N - l
        if {iv.level for iv in T} != {level}:
            fails.append({"reason": "image of T_(l,k) is not on the single level ceil(log2(k+1))+N-l",
                          "witness": {**case, "k": k}})
        if carleson(T) != 1 or carleson(E) != 1:
            fails.append({"reason": "image Carleson constant is not 1", "witness": {**case, "k": k}})
    return fails, {}


def _remark_check(case: dict) -> tuple[list, dict]:
    N, l = case["N"], case["l"]
    c = carleson(_image(N, lowermost_level(l, 0, N)))
    fails = []
    if l >= N - 1:
        expected = DyadicRational(2 + N - l, 1)
        if c != expected:
            fails.append({"reason": f"car = {c}, expected 1 + (N-l)/2 = {expected}", "witness": case})
    elif c > N - l + 1:
        fails.append({"reason": f"car = {c} exceeds N-l+1", "witness": case})
    return fails, {f"N={N},l={l}": _dy(c)}


# -- order intervals --------------------------------------------------------

def _pair_cases(cap: int):
    def gen(n_max: int, seed: int) -> Iterator[dict]:
        from .ordinals import post_interval
        for N in range(min(n_max, cap) + 1):
            size = (1 << (N + 1)) - 1
            for a in range(1, size + 1):
                j1 = post_interval(a, N).to_json()
                for b in range(a, size + 1):
                    yield {"N": N, "j1": j1, "j2": post_interval(b, N).to_json()}
    return gen


def _decomposition_check(case: dict) -> tuple[list, dict]:
    N, j1, j2 = case["N"], _iv(case["j1"]), _iv(case["j2"])
    d = maximal_decomposition(j1, j2, N)
    fails = [{"reason": v, "witness": case} for v in d.violations]
    if list(d.maximal) != maximal_intervals_sweep(j1, j2, N):
        fails.append({"reason": "sweep and inclusion-maximality disagree", "witness": case})
    return fails, {}


def _coneright_cases(n_max: int, seed: int) -> Iterator[dict]:
    for N in range(min(n_max, 8) + 1):
        for iv in enumerate_intervals(N):
            j = iv
            while True:
                yield {"N": N, "i": iv.to_json(), "j": j.to_json()}
                if j.level == 0:
                    break
                j = DyadicInterval(j.level - 1, j.pos >> 1)


def _coneright_check(case: dict) -> tuple[list, dict]:
    N, i, j = case["N"], _iv(case["i"]), _iv(case["j"])
    fails = []
    c = cone(i, j, N)
    if carleson(c.as_set()) > 2:
        fails.append({"reason": "cone Carleson constant exceeds 2", "witness": case})
    fill = right_fill_up(i, j, N)
    for step, block in enumerate(fill.blocks, start=1):
        if block and carleson(block) != N + step - i.level:
            fails.append({"reason": f"fill-up block {step + 1} has car != N+{step}-log2(1/|I|)",
                          "witness": case})
    rep = carleson_cone_fillup(i, j, N)
    if rep.asserted and not rep.ok:
        fails.append({"reason": f"car = {rep.value} outside [{rep.lower}, {rep.upper}]", "witness": case})
    return fails, {}


def _orderint_check(case: dict) -> tuple[list, dict]:
    N, j1, j2 = case["N"], _iv(case["j1"]), _iv(case["j2"])
    rep = carleson_order_interval(j1, j2, N)
    if rep.ok:
        return [], {}
    d = maximal_decomposition(j1, j2, N)
    witness = {**case, "carleson": str(rep.value), "lower": rep.lower, "upper": rep.upper,
               "L1": d.maximal[0].to_json(), "fillup_empty": not d.fillup}
    reasons = []
    if not rep.lower_ok:
        reasons.append(f"car = {rep.value} below lower bound {rep.lower}")
    if not rep.upper_ok:
        reasons.append(f"car = {rep.value} above upper bound {rep.upper}")
    return [{"reason": r, "witness": witness} for r in reasons], {}


def _orderint_summary(report: VerificationReport) -> None:
    low = [f for f in report.failures if "below lower" in f["reason"]]
    report.values["lower_bound_failures"] = len(low)
    report.values["upper_bound_failures"] = len(report.failures) - len(low)
    report.values["lower_failures_with_nonempty_fillup"] = sum(
        1 for f in low if not f["witness"]["fillup_empty"])


@lru_cache(maxsize=16)
def _sigma_table(N: int) -> Rearrangement:
    return Rearrangement.inverse_postorder(N)


def _lexorder_check(case: dict) -> tuple[list, dict]:
    N, e1, e2 = case["N"], _iv(case["e1"]), _iv(case["e2"])
    image = _sigma_table(N).image(lex_order_interval(e1, e2, N))
    j1 = sigma(e1, N)
    B = post_order_interval(j1, sigma(e2, N), N)
    fails = []
    if image != B:
        fails.append({"reason": "sigma(E) is not the postorder interval of the endpoint images",
                      "witness": case})
    value = carleson(image)
    L1 = next(iv for iv in maximal_intervals(B) if contains(iv, j1))
    bound = N - L1.level + 2
    if value > bound:
        fails.append({"reason": f"car(sigma(E)) = {value} > {bound}", "witness": case})
    return fails, {}


def _lexorder_cases(n_max: int, seed: int) -> Iterator[dict]:
    for N in range(min(n_max, 6) + 1):
        size = (1 << (N + 1)) - 1
        for b1 in range(1, size + 1):
            for b2 in range(b1, size + 1):
                yield {"N": N, "e1": interval_of_index(b1).to_json(), "e2": interval_of_index(b2).to_json()}


# -- norms -----------------------------------------------------------------

def _opnorm_check(case: dict) -> tuple[list, dict]:
    N, l = case["N"], case["l"]
    fails = []
    vals = {}
    for b in theorem_operatornorm1_suite(N, l, seed=case.get("seed", 0)):
        for reason in b.failures:
            fails.append({"reason": f"{b.operator}: {reason}", "witness": case})
        vals[f"N={N},l={l},{b.operator}"] = {"lower_sq": str(b.lower.ratio_sq), "upper_sq": str(b.upper.ratio_sq)}
    if l == 0:
        cert, need, universal = extremality_certificates(N)
        if cert.ratio_sq < need or universal != N + 1:
            fails.append({"reason": "extremality certificates fail", "witness": case})
    return fails, vals


def _opnorm_cases(n_max: int, seed: int) -> Iterator[dict]:
    for N in range(min(n_max, 8) + 1):
        for l in range(N + 1):
            yield {"N": N, "l": l, "seed": seed}


def _bmo_cases(n_max: int, seed: int) -> Iterator[dict]:
    for N in range(min(n_max, 6) + 1):
        if N <= 3:
            yield {"N": N, "exhaustive": True}
        else:
            yield {"N": N, "seed": seed, "count": 500}


def _bmo_check(case: dict) -> tuple[list, dict]:
    N = case["N"]
    size = (1 << (N + 1)) - 1
    if case.get("exhaustive"):
        masks = range(1, 1 << size)
    else:
        rng = random.Random(case["seed"] * 7919 + N)
        masks = [rng.randrange(1, 1 << size) for _ in range(case["count"])]
    fails = []
    for mask in masks:
        C = IntervalSet.from_mask(N, mask)
        if bmo_norm_sq(HaarExpansion.indicator_sum(C)) != carleson(C):
            fails.append({"reason": "BMO norm of indicator sum differs from Carleson constant",
                          "witness": {"N": N, "set": C.to_json()["intervals"]}})
    return fails, {}


def _pair_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def _fefferman_cases(n_max: int, seed: int) -> Iterator[dict]:
    N = min(n_max, 6)
    for index in range(1000):
        yield {"N": N, "seed": seed, "index": index}


def _fefferman_check(case: dict) -> tuple[list, dict]:
    rng = _pair_rng(case["seed"], case["index"])
    f = HaarExpansion.random(case["N"], rng)
    h = HaarExpansion.random(case["N"], rng)
    rep = fefferman_check(f, h)
    if not rep.holds:
        return [{"reason": "Fefferman inequality violated", "witness": case}], {}
    return [], {}


def _parseval_cases(n_max: int, seed: int) -> Iterator[dict]:
    N = min(n_max, 6)
    for perm in range(10):
        yield {"N": N, "seed": seed, "perm": perm, "count": 100}


def _parseval_check(case: dict) -> tuple[list, dict]:
    N = case["N"]
    R = Rearrangement.random(N, _pair_rng(case["seed"], 10_000 + case["perm"]))
    rng = _pair_rng(case["seed"], 20_000 + case["perm"])
    fails = []
    for i in range(case["count"]):
        f = HaarExpansion.random(N, rng)
        direct = sum((x.square().scale2(-iv.level) for iv, x in f.coeffs.items()), DyadicRational(0))
        if h2_norm_sq(f) != direct:
            fails.append({"reason": "H2 norm differs from coefficient sum", "witness": {**case, "i": i}})
        if h2_norm_sq(apply_hp_rearrangement(R, 2, f)) != h2_norm_sq(f):
            fails.append({"reason": "T_(tau,2) is not an isometry", "witness": {**case, "i": i}})
    return fails, {}


# -- DWT -------------------------------------------------------------------

def _dwt_cases(n_max: int, seed: int) -> Iterator[dict]:
    for M in range(min(n_max + 1, 12) + 1):
        yield {"M": M, "seed": seed}


def _dwt_check(case: dict) -> tuple[list, dict]:
    from .ordinals import postorder_sequence
    M = case["M"]
    rng = _pair_rng(case["seed"], 30_000 + M)
    s = [rng.randint(-8, 8) for _ in range(1 << M)]
    fails = []

    def fail(reason):
        fails.append({"reason": reason, "witness": case})

    batch = analyze_levelwise(s)
    stream = analyze_streaming(s)
    expected = list(postorder_sequence(M - 1)) if M else []
    if stream.intervals() != expected:
        fail("streaming emission order is not the postorder of D_(M-1)")
    if dict(stream.emissions) != batch.details or stream.trend != batch.trend:
        fail("streaming and batch coefficients differ")
    if stream.max_pending > M + 1:
        fail(f"pending state reached {stream.max_pending} > M+1")
    if synthesize(batch) != s:
        fail("exact reconstruction fails")
    if energy(s) != energy([batch.trend, *batch.details.values()]):
        fail("exact Parseval fails")
    fs = [x / 3 for x in s]
    fb = analyze_levelwise(fs, exact=False)
    back = synthesize(fb)
    if max((abs(a - b) for a, b in zip(back, fs)), default=0.0) > 1e-12:
        fail("double reconstruction error exceeds 1e-12")
    e0, e1 = energy(fs), energy([fb.trend, *fb.details.values()])
    if abs(e0 - e1) > 1e-12 * max(e0, 1e-300):
        fail("double Parseval relative error exceeds 1e-12")
    return fails, {}


@dataclass(frozen=True)
class Suite:
    name: str
    cases: Callable[[int, int], Iterator[dict]]
    check: Callable[[dict], tuple[list, dict]]
    caps: dict
    asserting: bool = True
    summarize: Optional[Callable[[VerificationReport], None]] = None


SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("ordinals", _ordinal_cases, _ordinal_check, {"N": 10, "s": 20}),
    Suite("leftmost", _level_cases(10), _leftmost_check, {"N": 10}),
    Suite("kg0", _level_cases(10, start=1), _kg0_check, {"N": 10}),
    Suite("remark", _level_cases(10), _remark_check, {"N": 10}),
    Suite("decomposition", _pair_cases(6), _decomposition_check, {"N": 6}),
    Suite("coneright", _coneright_cases, _coneright_check, {"N": 8}),
    Suite("orderint", _pair_cases(6), _orderint_check, {"N": 6}, summarize=_orderint_summary),
    Suite("opnorm", _opnorm_cases, _opnorm_check, {"N": 8}),
    Suite("lexorder", _lexorder_cases, _lexorder_check, {"N": 6}),
    Suite("bmo", _bmo_cases, _bmo_check, {"N": 6}),
    Suite("fefferman", _fefferman_cases, _fefferman_check, {"N": 6, "pairs": 1000}),
    Suite("parseval", _parseval_cases, _parseval_check, {"N": 6, "bijections": 10}),
    Suite("dwt", _dwt_cases, _dwt_check, {"M": 12}),
]}


def run_case(name: str, case: dict) -> VerificationReport:
    """Re-run a single case of a suite, e.g. one taken from a failure witness."""
    suite = SUITES[name]
    report = VerificationReport(name, {"case": case}, suite.asserting)
    start = time.perf_counter()
    fails, vals = suite.check(case)
    report.cases = 1
    report.failures = [{"case": case, **f} for f in fails]
    report.values = vals
    report.elapsed = time.perf_counter() - start
    return report


def run_suite(name: str, n_max: int, seed: int = 0) -> VerificationReport:
    suite = SUITES[name]
    caps = {k: (min(n_max, v) if k == "N" else v) for k, v in suite.caps.items()}
    if "M" in caps:
        caps["M"] = min(n_max + 1, caps["M"])
    report = VerificationReport(name, {"n_max": n_max, "seed": seed, "range": caps}, suite.asserting)
    start = time.perf_counter()
    for case in suite.cases(n_max, seed):
        fails, vals = suite.check(case)
        report.cases += 1
        report.failures.extend({"case": case, **f} for f in fails)
        report.values.update(vals)
    if suite.summarize:
        suite.summarize(report)
    report.elapsed = time.perf_counter() - start
    return report


def verify_leftmost(n_max: int) -> VerificationReport:
    return run_suite("leftmost", n_max)


def verify_kg0(n_max: int) -> VerificationReport:
    return run_suite("kg0", n_max)


def verify_remark(n_max: int) -> VerificationReport:
    return run_suite("remark", n_max)


@dataclass(frozen=True)
class ConjectureRecord:
    N: int
    l: int
    measured: DyadicRational
    predicted: DyadicRational
    argsup: DyadicInterval
    maximizers: tuple
    match: bool

    @property
    def attained_at_I10(self) -> bool:
        return DyadicInterval(1, 0) in self.maximizers

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "l": self.l,
            "measured": self.measured.to_json(),
            "measured_str": str(self.measured),
            "predicted": self.predicted.to_json(),
            "predicted_str": str(self.predicted),
            "argsup": self.argsup.to_json(),
            "maximizers": [iv.to_json() for iv in self.maximizers],
            "attained_at_I10": self.attained_at_I10,
            "match": self.match,
        }


def conjecture_scan(n_max: int) -> list[ConjectureRecord]:
    """Measured ``car(tau_N(E_(l,0)))`` against ``(N-l)/2 + 3/2 - 2**(l+1-N)``.

    Only reports; nothing here is asserted.
    """
    out = []
    for N in range(2, min(n_max, 12) + 1):
        for l in range(N - 1):
            res = carleson_witness(_image(N, lowermost_level(l, 0, N)))
            # (N-l)/2 + 3/2 - 2**(l+1-N), over the common denominator 2**(N-l-1)
            e = N - l - 1
            predicted = DyadicRational(((N - l + 3) << e) - 2, e + 1)
            out.append(ConjectureRecord(N, l, res.value, predicted, res.argsup, res.maximizers,
                                        res.value == predicted))
    return out


def conjecture_summary(records: list[ConjectureRecord]) -> dict:
    matches = sum(r.match for r in records)
    return {
        "total": len(records),
        "matches": matches,
        "match_rate": matches / len(records) if records else None,
        "attained_at_I10": sum(r.attained_at_I10 for r in records),
        "records": [r.to_json() for r in records],
    }


def _run_named(args: tuple[str, int, int]) -> VerificationReport:
    return run_suite(*args)


def verify_all(n_max: int, seed: int = 0, suites: Optional[list[str]] = None,
               workers: Optional[int] = None, timings: bool = False) -> dict:
    """Run suites and assemble one JSON bundle.

    ``workers`` defaults to the ``POSTORDER_WORKERS`` environment variable
    (1 when unset). Suite order in the bundle never depends on it.
    """
    names = list(suites or SUITES)
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    jobs = [(name, n_max, seed) for name in names]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_named, jobs))
    else:
        reports = [_run_named(j) for j in jobs]
    conj = conjecture_summary(conjecture_scan(n_max))
    passed = all(r.passed for r in reports if r.asserting)
    return {
        "schema_version": SCHEMA_VERSION,
        "n_max": n_max,
        "seed": seed,
        "passed": passed,
        "suites": [r.to_json(timings) for r in reports],
        "conjecture": conj,
    }


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("report_schema.json").read_text())


def format_table(bundle: dict) -> str:
    lines = [f"{'suite':<14} {'cases':>8} {'failures':>9}  status"]
    for s in bundle["suites"]:
        status = "pass" if s["passed"] else "FAIL"
        lines.append(f"{s['suite']:<14} {s['cases']:>8} {s['failure_count']:>9}  {status}")
        for f in s["failures"][:3]:
            lines.append(f"    {f['reason']}  case={json.dumps(f['case'], separators=(',', ':'))}")
    c = bundle["conjecture"]
    if c["total"]:
        lines.append(f"conjecture: {c['matches']}/{c['total']} match "
                     f"(supremum attained at I[1,0] in {c['attained_at_I10']} cases; not asserted)")
    lines.append("overall: " + ("pass" if bundle["passed"] else "FAIL"))
    return "\n".join(lines)
