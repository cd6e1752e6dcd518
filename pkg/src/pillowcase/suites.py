"""Batch verification suites and the report they produce."""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import __version__
from .cyclotomic import CyclotomicElement
from .qgroup import cosine_operator, determinant, kauffman_operator, verify_product_to_sum
from .star import (
    check_associativity,
    check_bk_exponential,
    check_correspondence,
    operator_image,
    star,
)
from .theta import (
    GroupElement,
    ThetaSpec,
    check_index_shift,
    check_quasi_periodicity,
    gram_matrix,
    hermitian_residual,
    monomial_table,
    section_residual,
    theta_eval,
    verify_cocycle,
    zeta_eval,
)
from .trigpoly import CyclotomicRing, FormalRing, TrigPolynomial
from .uq_sl2 import verify_relations
from .weyl import compare_with_qgroup, lemma_regime, toeplitz_monomial_closed_form

__all__ = [
    "SUITES",
    "SuiteParams",
    "SuiteResult",
    "VerificationReport",
    "run_suite",
    "run_suites",
    "worker_count",
]


@dataclass
class SuiteParams:
    r_range: tuple[int, int] | None = None
    pq_range: tuple[int, int] | None = None
    tol: float | None = None
    trunc_order: int = 8
    quad_y: int = 400
    seed: int = 0
    samples: int = 100
    variant: str = "standard"

    def validate(self) -> None:
        if self.r_range is not None:
            lo, hi = self.r_range
            if lo < 3 or hi < lo:
                raise ValueError(f"invalid r range {lo}:{hi} (need 3 <= A <= B)")
        if self.pq_range is not None and self.pq_range[1] < self.pq_range[0]:
            raise ValueError(f"invalid pq range {self.pq_range[0]}:{self.pq_range[1]}")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive")
        if not 0 <= self.trunc_order <= 10:
            raise ValueError("trunc-order must lie in 0..10")
        if self.quad_y <= 0 or self.quad_y % 20:
            raise ValueError("quad-y must be a positive multiple of 20")
        if self.samples <= 0:
            raise ValueError("samples must be positive")
        if self.variant not in ("standard", "mu-nu"):
            raise ValueError(f"unknown cocycle variant {self.variant!r}")


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    worst_residual: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, residual: float = 0.0) -> None:
        self.cases += 1
        self.failures += 0 if ok else 1
        self.worst_residual = max(self.worst_residual, float(residual))

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


@dataclass
class VerificationReport:
    version: str
    parameters: dict
    suites: list[SuiteResult]
    timestamp: str | None = None

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def as_dict(self) -> dict:
        return {
            "version": self.version,
            "parameters": self.parameters,
            "suites": [s.as_dict() for s in self.suites],
            "timestamp": self.timestamp,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "cases", "failures", "worst_residual", "passed"])
        for s in self.suites:
            w.writerow([s.name, s.cases, s.failures, repr(s.worst_residual), s.passed])
        return buf.getvalue()


def worker_count() -> int:
    raw = os.environ.get("MODULI_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"MODULI_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"MODULI_THREADS must be a positive integer, got {raw!r}")
    return n


def _map(fn: Callable, items: list) -> list:
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _irange(bounds: tuple[int, int]) -> range:
    return range(bounds[0], bounds[1] + 1)


def _random_z(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.uniform(-0.5, 0.5, n) + 1j * rng.uniform(-0.5, 0.5, n)


def suite_uq_relations(params: SuiteParams) -> SuiteResult:
    res = SuiteResult("uq-relations")
    cases = [(k, r) for r in _irange(params.r_range or (3, 12)) for k in range(1, r)]
    for report in _map(lambda kr: verify_relations(*kr), cases):
        res.record(report.all_hold, 0.0 if report.all_hold else 1.0)
    return res


def suite_theta_identities(params: SuiteParams) -> SuiteResult:
    res = SuiteResult("theta-identities")
    tol_rel = params.tol or 1e-9
    rng = np.random.default_rng(params.seed)
    gram_worst = 0.0
    for r in _irange(params.r_range or (3, 10)):
        N = 2 * r
        spec = ThetaSpec.for_level(N, quad_y=params.quad_y)
        zs = _random_z(rng, params.samples)
        js = rng.integers(-N, N + 1, params.samples)
        ks = rng.integers(1, r, params.samples)
        for z, j, k in zip(zs, js, ks):
            j, k = int(j), int(k)
            checks = [
                check_index_shift(j, z, spec),
                abs(theta_eval(-j, -z, spec) - theta_eval(j, z, spec)) / abs(theta_eval(j, z, spec)),
                check_quasi_periodicity(j, int(rng.integers(-2, 3)), int(rng.integers(-1, 2)), z, spec),
            ]
            zk = zeta_eval(r - k, z, spec)
            scale = max(abs(zk), 1e-300)
            checks.append(abs(zeta_eval(r, z, spec)) / max(abs(zeta_eval(1, z, spec)), 1e-300))
            checks.append(abs(zeta_eval(r + k, z, spec) + zk) / scale)
            jj = int(rng.integers(-r + 1, r))
            zj = zeta_eval(jj, z, spec)
            if jj:
                checks.append(abs(zeta_eval(jj + 2 * r, z, spec) - zj) / abs(zj))
            for c in checks:
                res.record(c < tol_rel, c)
        dev = float(np.max(np.abs(gram_matrix(spec) - np.eye(r - 1))))
        gram_worst = max(gram_worst, dev)
        res.record(dev < 1e-8, dev)
    res.details["gram_max_deviation"] = gram_worst
    return res


def _random_group_element(rng: np.random.Generator) -> GroupElement:
    return GroupElement(int(rng.integers(-2, 3)), int(rng.integers(-2, 3)), int(rng.choice([-1, 1])))


def suite_cocycle(params: SuiteParams) -> SuiteResult:
    res = SuiteResult("cocycle")
    rng = np.random.default_rng(params.seed)
    tol = params.tol or 1e-10
    for z in _random_z(rng, params.samples):
        g, h = _random_group_element(rng), _random_group_element(rng)
        c = verify_cocycle(z, g, h, variant=params.variant)
        res.record(c < tol, c)
        c = hermitian_residual(z, int(rng.integers(-2, 3)), int(rng.integers(-2, 3)), params.variant)
        res.record(c < tol, c)
    for r in _irange(params.r_range or (3, 10)):
        spec = ThetaSpec.for_level(2 * r, quad_y=params.quad_y)
        for z in _random_z(rng, max(1, params.samples // 10)):
            j = int(rng.integers(0, 2 * r))
            c = section_residual(j, z, int(rng.integers(-1, 2)), int(rng.integers(-1, 2)), spec)
            res.record(c < 1e-9, c)
    return res


def lemma_error(p: int, q: int, j: int, table: np.ndarray, norms: np.ndarray, spec: ThetaSpec) -> float:
    """Closed-form scalar against the oracle, measured on the scale ||theta_j|| ||theta_k||.

    ``table[k, j]`` holds <e theta_j, theta_k>; the normalized matrix element is
    bounded by one, so the error is meaningful both for scalars near e^{30} and
    for those near e^{-20}.
    """
    k, closed = toeplitz_monomial_closed_form(p, q, j, spec)
    return abs(closed * norms[k] ** 2 - table[k, j]) / (norms[j] * norms[k])


def suite_toeplitz_lemmas(params: SuiteParams) -> SuiteResult:
    res = SuiteResult("toeplitz-lemmas")
    tol = params.tol or 1e-8
    pq = params.pq_range or (-6, 6)
    regimes = {"p0": 0, "p1": 0}
    for r in _irange(params.r_range or (3, 10)):
        N = 2 * r
        spec = ThetaSpec.for_level(N, quad_y=params.quad_y, max_freq=max(abs(pq[0]), abs(pq[1])))
        idx = range(N)
        norms = np.sqrt(np.diag(monomial_table(0, 0, idx, spec, kind="theta")).real)
        for p in _irange(pq):
            for q in _irange(pq):
                table = monomial_table(p, q, idx, spec, kind="theta")
                for j in idx:
                    regimes[lemma_regime(p, j, N)[0]] += 1
                    err = lemma_error(p, q, j, table, norms, spec)
                    res.record(err < tol, err)
    res.details["regime_counts"] = regimes
    if min(regimes.values()) < 100:
        res.failures += 1
        res.details["regime_coverage"] = "insufficient"
    return res


def suite_equivalence(params: SuiteParams) -> SuiteResult:
    res = SuiteResult("equivalence")
    tol = params.tol or 1e-8
    pq = params.pq_range or (-5, 5)
    fmax = max(abs(pq[0]), abs(pq[1]))
    per_case, specs = [], []
    for r in _irange(params.r_range or (3, 10)):
        spec = ThetaSpec.for_level(2 * r, quad_y=params.quad_y, max_freq=fmax)
        specs.append(asdict(spec))
        cases = [(p, q) for p in _irange(pq) for q in _irange(pq)]
        for rep in _map(lambda c: compare_with_qgroup(c[0], c[1], r, spec, tol), cases):
            res.record(rep.passed, rep.max_abs_deviation)
            per_case.append({"r": r, "p": rep.p, "q": rep.q, "max_abs_deviation": rep.max_abs_deviation})
    res.details["cases"] = per_case
    res.details["theta_spec"] = specs
    return res


def suite_product_to_sum(params: SuiteParams) -> SuiteResult:
    res = SuiteResult("product-to-sum")
    rng_ = _irange(params.pq_range or (-4, 4))
    for r in _irange(params.r_range or (3, 8)):
        cases = [(m, n, p, q) for m in rng_ for n in rng_ for p in rng_ for q in rng_]
        for ok in _map(lambda c: verify_product_to_sum(*c, r), cases):
            res.record(ok, 0.0 if ok else 1.0)
    return res


def kauffman_product_to_sum(m: int, n: int, p: int, q: int, r: int) -> bool:
    d = determinant(m, n, p, q)
    lhs = kauffman_operator(m, n, r) @ kauffman_operator(p, q, r)
    rhs = kauffman_operator(m + p, n + q, r).shift(d) + kauffman_operator(m - p, n - q, r).shift(-d)
    return lhs == rhs


def suite_kauffman(params: SuiteParams) -> SuiteResult:
    res = SuiteResult("kauffman")
    pq = _irange(params.pq_range or (-4, 4))
    odd_differs = 0
    for r in _irange(params.r_range or (3, 8)):
        for p in pq:
            for q in pq:
                T, C = kauffman_operator(p, q, r), cosine_operator(p, q, r)
                res.record(T == C.scale(-1 if q % 2 else 1))
                if q % 2:
                    # the two quantizations must differ on odd q
                    differs = not T == C
                    odd_differs += differs
                    res.record(differs)
        for m in pq:
            for n in pq:
                for p in pq:
                    for q in pq:
                        res.record(kauffman_product_to_sum(m, n, p, q, r))
    res.details["odd_q_cases_differing"] = odd_differs
    return res


def random_exact_polynomial(rng: np.random.Generator, r: int, terms: int = 3, freq: int = 3) -> TrigPolynomial:
    ring = CyclotomicRing(r)
    out = []
    for _ in range(int(rng.integers(1, terms + 1))):
        p, q = (int(x) for x in rng.integers(-freq, freq + 1, 2))
        coeffs = rng.integers(-3, 4, 2 * r)
        coeffs[rng.random(2 * r) < 0.6] = 0
        out.append(((p, q), CyclotomicElement(r, coeffs.tolist())))
    return TrigPolynomial(ring, out)


def random_rational_polynomial(rng: np.random.Generator, K: int, terms: int = 3, freq: int = 3) -> TrigPolynomial:
    ring = FormalRing(K)
    out = []
    for _ in range(int(rng.integers(1, terms + 1))):
        p, q = (int(x) for x in rng.integers(-freq, freq + 1, 2))
        out.append(((p, q), int(rng.integers(-4, 5))))
    return TrigPolynomial(ring, out)


def suite_star_formal(params: SuiteParams) -> SuiteResult:
    res = SuiteResult("star-formal")
    rng = np.random.default_rng(params.seed)
    K = params.trunc_order
    triples = 200
    for _ in range(triples):
        f, g, h = (random_rational_polynomial(rng, K) for _ in range(3))
        res.record(check_associativity(f, g, h))
    ratios = set()
    for _ in range(triples):
        f, g = random_rational_polynomial(rng, K), random_rational_polynomial(rng, K)
        rep = check_correspondence(f, g, K)
        res.record(rep.matches_b1)
        if rep.ratio is not None:
            ratios.add(str(rep.ratio))
        res.record(check_bk_exponential(f, g, min(K, 6)))
    res.details["poisson_ratios"] = sorted(ratios)
    for r in _irange(params.r_range or (3, 8)):
        for _ in range(triples):
            f, g, h = (random_exact_polynomial(rng, r) for _ in range(3))
            res.record(check_associativity(f, g, h))
        for _ in range(500):
            f, g = random_exact_polynomial(rng, r), random_exact_polynomial(rng, r)
            res.record(operator_image(star(f, g)) == operator_image(f) @ operator_image(g))
    return res


SUITES: dict[str, Callable[[SuiteParams], SuiteResult]] = {
    "uq-relations": suite_uq_relations,
    "theta-identities": suite_theta_identities,
    "cocycle": suite_cocycle,
    "toeplitz-lemmas": suite_toeplitz_lemmas,
    "equivalence": suite_equivalence,
    "product-to-sum": suite_product_to_sum,
    "kauffman": suite_kauffman,
    "star-formal": suite_star_formal,
}


def _parameters(params: SuiteParams) -> dict:
    d = asdict(params)
    return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}


def run_suites(names: list[str], params: SuiteParams) -> VerificationReport:
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    params.validate()
    results = [SUITES[n](params) for n in names]
    stamp = os.environ.get("SOURCE_DATE_EPOCH")
    return VerificationReport(__version__, _parameters(params), results, stamp)


def run_suite(name: str, params: SuiteParams | None = None) -> VerificationReport:
    return run_suites([name], params or SuiteParams())
