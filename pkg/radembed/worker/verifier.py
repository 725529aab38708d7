import logging
import random
from datetime import datetime, timezone
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional

import numpy as np

from radembed.core.config import settings
from radembed.core.errors import EmbeddingError, InvalidSpec
from radembed.core.numbers import exact, to_text
from radembed.models.domain import QInterval, Side
from radembed.models.potential import Power, Zero
from radembed.schemas.report_schemas import CheckRecord, LogEntry, VerificationReport
from radembed.services import engine, exponents, numerics, potentials, region

logger = logging.getLogger(__name__)

SUITES = ("exponents", "region", "appendix", "examples", "numerics")

# (alpha, q, N) combinations for the scaling-law fit
SCALING_CASES = ((0, 4, 3), (0, 8, 3), (1, 6, 3), (-1, 3, 4), (0, 3, 5), (2, 5, 3))
LEMMA_BETAS = (0.0, 0.25, 0.5, 0.75, 1.0)
MAX_FAILURE_RECORDS = 20


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return to_text(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)


def _rational(rng: random.Random, lo, hi, denominator: int = 64) -> Fraction:
    return Fraction(lo) + Fraction(rng.randint(0, int((Fraction(hi) - Fraction(lo)) * denominator)), denominator)


class VerificationWorker:
    """
    Runs the property suites and collects one record per check.

    ``scale`` multiplies every random sample count; the suites use the full
    counts at scale 1.
    """

    def __init__(self, suite: str = "all", seed: Optional[int] = None, scale: float = 1.0):
        if suite != "all" and suite not in SUITES:
            raise InvalidSpec(f"Unknown suite {suite!r}; choose one of {', '.join(SUITES + ('all',))}")
        self.suite = suite
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        self.scale = scale
        self.suites = SUITES if suite == "all" else (suite,)
        self.report = VerificationReport(suite=suite, seed=self.seed)

    def _log(self, message: str, suite: str = None, type: str = "info"):
        """Add log entry"""
        self.report.logs.append(
            LogEntry(timestamp=datetime.now(timezone.utc), message=message, suite=suite, type=type)
        )

    def _record(self, suite: str, name: str, holds: bool, inputs: Dict[str, Any] = None,
                lhs: float = None, rhs: float = None, detail: str = None) -> CheckRecord:
        slack = None if lhs is None or rhs is None else rhs - lhs
        record = CheckRecord(
            name=name,
            suite=suite,
            inputs={key: _plain(value) for key, value in (inputs or {}).items()},
            lhs=lhs,
            rhs=rhs,
            slack=slack,
            holds=bool(holds),
            detail=detail,
        )
        self.report.records.append(record)
        if not record.holds:
            logger.error("Check %s/%s failed: %s", suite, name, detail or record.inputs)
            self._log(f"Check {name} failed", suite, type="error")
        return record

    def _tally(self, suite: str, name: str, total: int, failures: List[Dict[str, Any]], detail: str = ""):
        """One summary record plus the first few failing inputs."""
        for inputs in failures[:MAX_FAILURE_RECORDS]:
            self._record(suite, f"{name}.sample", False, inputs)
        text = f"{len(failures)} violations out of {total}"
        self._record(suite, name, not failures, {"samples": total}, float(len(failures)), 0.0,
                     f"{text}; {detail}" if detail else text)

    def _count(self, full: int) -> int:
        return max(1, int(full * self.scale))

    def _rng(self, suite: str) -> random.Random:
        return random.Random(f"{self.seed}:{suite}")

    def run(self) -> VerificationReport:
        """Execute the selected suites"""
        try:
            self.report.status = "running"
            self.report.started_at = datetime.now(timezone.utc)
            self._log(f"Starting verification: suite={self.suite} seed={self.seed}")

            for name in self.suites:
                logger.info("Running suite %s", name)
                self._log(f"Running suite {name}", name)
                getattr(self, f"_suite_{name}")(self._rng(name))
                self._log(f"Suite {name} finished", name, type="success")

            self.report.status = "completed"
            failed = len(self.report.failures)
            self._log(f"Verification completed with {failed} failing checks",
                      type="success" if not failed else "error")

        except Exception as e:
            logger.error(f"Verification failed: {e}")
            self.report.status = "failed"
            self.report.error_message = str(e)
            self._log(f"Verification failed: {e}", type="error")
        finally:
            self.report.completed_at = datetime.now(timezone.utc)
        return self.report

    # exponents

    def _suite_exponents(self, rng: random.Random):
        suite = "exponents"
        for N in (3, 4, 5, 6):
            self._record(suite, "alpha_star.beta_one", exponents.alpha_star(1, N) == 0, {"N": N})
            half = exponents.alpha_star(Fraction(1, 2), N)
            self._record(suite, "alpha_star.branch_continuity", half == Fraction(-N, 2), {"N": N, "value": half})

        samples = self._count(10_000)
        failures = []
        for _ in range(samples):
            N = rng.randint(3, 8)
            alpha, beta = _rational(rng, -3 * N, 3 * N), _rational(rng, 0, 1)
            if exponents.thm1_threshold(alpha, beta, N) != exponents.thm1_threshold_piecewise(alpha, beta, N):
                failures.append({"N": N, "alpha": alpha, "beta": beta})
        self._tally(suite, "thm1_threshold.piecewise", samples, failures)

        failures = []
        for _ in range(samples):
            N = rng.randint(3, 8)
            alpha, beta = _rational(rng, -3 * N, 3 * N), _rational(rng, 0, 1)
            gamma = _rational(rng, -6, 2)
            direct = exponents.thm2_threshold(alpha, beta, gamma, N)
            if direct != exponents.thm2_threshold_piecewise(alpha, beta, gamma, N):
                failures.append({"N": N, "alpha": alpha, "beta": beta, "gamma": gamma})
        self._tally(suite, "thm2_threshold.piecewise", samples, failures)

        failures = []
        for _ in range(samples):
            N = rng.randint(3, 8)
            alpha, beta = _rational(rng, -3 * N, 3 * N), _rational(rng, -1, 1)
            qs = exponents.q_star(alpha, beta, N)
            if not exponents.q_sub(alpha, beta, 2, N) == exponents.q_subsub(alpha, beta, 2, N) == qs:
                failures.append({"N": N, "alpha": alpha, "beta": beta})
        self._tally(suite, "hardy_collapse.gamma_two", samples, failures)

        for alpha, q, N in SCALING_CASES:
            delta = exponents.scaling_exponent(alpha, 0, exponents.q_star(alpha, 0, N), N)
            self._record(suite, "scaling_exponent.vanishes_at_q_star", delta == 0, {"alpha": alpha, "N": N})

    # region

    def _suite_region(self, rng: random.Random):
        suite = "region"
        build = lru_cache(maxsize=None)(region.build_region)
        samples = self._count(100_000)
        failures = []
        for _ in range(samples):
            N = rng.randint(3, 8)
            beta = Fraction(rng.randint(-63, 63), 64)
            alpha = rng.uniform(-3 * N, 3 * N)
            q = rng.uniform(0, 6 * N)
            expected = QInterval.of(max(1.0, 2 * beta), exponents.q_star(alpha, beta, N)).contains(q)
            if region.membership(alpha, q, build(beta, 2, N)) != expected:
                failures.append({"N": N, "alpha": alpha, "beta": beta, "q": q})
        self._tally(suite, "hardy_consistency", samples, failures)

        samples = self._count(10_000)
        failures, members, attempts = [], 0, 0
        while members < samples and attempts < 50 * samples:
            attempts += 1
            N = rng.randint(3, 6)
            beta = _rational(rng, 0, 1)
            gamma1 = _rational(rng, 2, 4 * N)
            gamma2 = gamma1 + _rational(rng, 0, 2 * N) + Fraction(1, 64)
            alpha = _rational(rng, -3 * N, 2 * N)
            inner = region.slice_interval(alpha, build(beta, gamma1, N))
            if inner.is_empty:
                continue
            members += 1
            # q strictly inside the gamma1 slice, capped for half-lines
            top = min(inner.hi, inner.lo + 6 * N)
            q = inner.lo + (top - inner.lo) * Fraction(rng.randint(1, 63), 64)
            if not region.membership(alpha, q, build(beta, gamma2, N)):
                failures.append({"N": N, "alpha": alpha, "beta": beta, "q": q, "gamma1": gamma1, "gamma2": gamma2})
        self._tally(suite, "gamma_monotonicity", members, failures, f"{attempts} draws")

        spec = region.build_region(0, 2, 3)
        export = region.boundary_export(spec, (-3, 3), 25)
        labels = [curve.label for curve in export.curves if curve.kind == "upper"]
        self._record(suite, "export.coinciding_lines", labels == ["q_*=q_**"], {"labels": ",".join(labels)})

    # appendix

    def _suite_appendix(self, rng: random.Random):
        suite = "appendix"
        samples = self._count(10_000)
        failures, kept, skipped = [], 0, 0
        while kept < samples:
            N = rng.randint(3, 6)
            beta = _rational(rng, 0, 1)
            choice = rng.random()
            if choice < 0.2:
                gamma = exact(N)
            elif choice < 0.4:
                gamma = exact(2 * N - 2)
            else:
                gamma = _rational(rng, 2, 3 * N) + Fraction(1, 128)
            alpha, q = _rational(rng, -2 * N, N), _rational(rng, 1, 4 * N) + Fraction(1, 128)
            spec = region.build_region(beta, gamma, N)
            if region.boundary_distance(alpha, q, spec) <= 1e-6:
                skipped += 1
                continue
            kept += 1
            closed = region.membership(alpha, q, spec)
            brute = region.xi_feasible_brute(alpha, beta, gamma, q, region.xi_search(beta), N)
            if closed != brute:
                failures.append({"N": N, "alpha": alpha, "beta": beta, "gamma": gamma, "q": q,
                                 "closed_form": closed, "brute": brute})
        self._tally(suite, "xi_oracle_agreement", kept, failures, f"{skipped} near-boundary samples skipped")

    # examples

    def _suite_examples(self, rng: random.Random):
        suite = "examples"
        samples = self._count(20)
        for case in potentials.example_catalog():
            bindings = [dict(case.defaults)] + [case.sampler(rng) for _ in range(samples)]
            for params in bindings:
                self._check_example(suite, case, params)

        sww = potentials.find_example("EX_SWW")
        for params in ({"N": 3, "a": 1}, {"N": 3, "a": 2}):
            self._check_example(suite, sww, params)
        nnp2 = potentials.find_example("EX_NNP2")
        for variant in (0, 1, 2):
            self._check_example(suite, nnp2, {"N": 3, "b": Fraction(1, 2), "variant": variant})

        samples = self._count(1_000)
        st = potentials.find_example("EX_ST")
        failures = []
        for _ in range(samples):
            params = st.sampler(rng)
            _, _, single = st.expected(params)
            wide = potentials.power_weight_interval(params["N"], params["a"], params["b"], params["b0"])
            if not single.includes(wide):
                failures.append({**params, "prior": "power_weight"})
        self._tally(suite, "strong_power.wider_range", samples, failures)

        # b, b0 drawn inside the range where the sub-quadratic interval is defined
        failures = []
        for _ in range(samples):
            params = potentials.sublinear_sample(rng)
            _, _, single = st.expected(params)
            narrow = potentials.sublinear_interval(params["N"], params["a"], params["b"], params["b0"])
            if narrow is None or narrow.is_empty or not single.includes(narrow):
                failures.append({**params, "prior": "sublinear", "interval": None if narrow is None else str(narrow)})
        self._tally(suite, "strong_power.sublinear_range", samples, failures)

    def _check_example(self, suite: str, case: potentials.ExampleCase, params: Dict[str, Any]):
        try:
            bound, v, k, n = case.instantiate(params)
            verdict = engine.verdict_for_potentials(v, k, n)
            expected = case.expected(params)
        except EmbeddingError as e:
            self._record(suite, case.name, False, params, detail=str(e))
            return
        found = (verdict.q1_interval, verdict.q2_halfline, verdict.single_q)
        detail = f"engine {tuple(map(str, found))} vs expected {tuple(map(str, expected))}"
        self._record(suite, case.name, found == expected, bound, detail=detail)

    # numerics

    def _suite_numerics(self, rng: random.Random):
        suite = "numerics"
        nprng = np.random.default_rng(rng.randrange(2 ** 32))
        grid = numerics.default_grid()
        self._scaling_checks(suite)
        self._monotonicity_checks(suite)
        self._ni_invariance(suite, grid)
        self._quadrature_convergence(suite)
        self._ordering_checks(suite)
        self._lemma_checks(suite, nprng, grid)
        self._annulus_checks(suite, nprng, grid)
        self._sum_norm_checks(suite, grid)

    def _scaling_checks(self, suite: str):
        family = numerics.BumpFamily((0.125, 0.25, 0.5))
        radii = [2.0 ** -j for j in range(1, 7)]
        slopes = {}
        for alpha, q, N in SCALING_CASES:
            k = Power(1, alpha)
            values = [numerics.s_lower_bound(q, R, Side.ORIGIN, Zero(), k, family, N) for R in radii]
            slope = numerics.decay_slope_fit(radii, values)
            expected = float(exponents.scaling_exponent(alpha, 0, q, N))
            slopes[(alpha, q, N)] = slope
            self._record(suite, "scaling.slope", abs(slope - expected) <= 0.05,
                         {"alpha": alpha, "q": q, "N": N, "slope": slope, "expected": expected},
                         abs(slope - expected), 0.05)
        flip = slopes[(0, 4, 3)] > 0 > slopes[(0, 8, 3)]
        self._record(suite, "scaling.sign_flip_at_q_star", flip, {"below": slopes[(0, 4, 3)], "above": slopes[(0, 8, 3)]})

    def _monotonicity_checks(self, suite: str):
        k = Power(1, 0)
        origin = [numerics.s_lower_bound(4, 2.0 ** -j, Side.ORIGIN, Zero(), k,
                                         numerics.BumpFamily((0.125, 0.25, 0.5)), 3) for j in range(6, 0, -1)]
        rising = all(a <= b * (1 + settings.REPORT_TOL) for a, b in zip(origin, origin[1:]))
        self._record(suite, "monotonicity.origin", rising, {"q": 4, "N": 3})
        infinity = [numerics.s_lower_bound(8, 2.0 ** j, Side.INFINITY, Zero(), k,
                                           numerics.BumpFamily((1.0, 2.0, 4.0)), 3) for j in range(0, 6)]
        falling = all(b <= a * (1 + settings.REPORT_TOL) for a, b in zip(infinity, infinity[1:]))
        self._record(suite, "monotonicity.infinity", falling, {"q": 8, "N": 3})

    def _ni_invariance(self, suite: str, grid: numerics.RadialGrid):
        step = grid.nodes[1] / grid.nodes[0]
        family = numerics.BumpFamily(tuple(step ** j for j in (-800, -400, 0, 400, 800)))
        for N in (3, 4, 5):
            ratios = [numerics.pointwise_ratio(u, numerics.PointwiseMode.ni(), N) for u in family.members(N, grid)]
            spread = (max(ratios) - min(ratios)) / max(ratios)
            self._record(suite, "pointwise.ni_scale_invariance", spread <= 1e-6,
                         {"N": N, "max_ratio": max(ratios)}, spread, 1e-6)

    def _quadrature_convergence(self, suite: str):
        coarse = numerics.default_grid()
        fine = numerics.RadialGrid.log_spaced(count=2 * coarse.count - 1)
        v, k = Power(1, -1), Power(1, 0)
        for s in (0.25, 1.0, 4.0):
            family = numerics.BumpFamily((s,))
            u_c, u_f = family.member(s, 3, coarse), family.member(s, 3, fine)
            for name, a, b in (
                ("h1v_norm", numerics.h1v_norm(u_c, v, 3), numerics.h1v_norm(u_f, v, 3)),
                ("weighted_lq", numerics.weighted_lq(u_c, k, 3, n=3), numerics.weighted_lq(u_f, k, 3, n=3)),
            ):
                change = abs(a - b) / abs(b)
                self._record(suite, f"convergence.{name}", change < 1e-3, {"scale": s}, change, 1e-3)

    def _ordering_checks(self, suite: str):
        family = numerics.BumpFamily((0.25, 0.5, 1.0, 2.0))
        v, k = Power(1, -1), Power(1, 1)
        for side, R in ((Side.ORIGIN, 0.5), (Side.INFINITY, 2.0)):
            for q in (3.0, 5.0):
                s_value = numerics.s_lower_bound(q, R, side, v, k, family, 3)
                r_value = numerics.r_lower_bound(q, R, side, v, k, family, 3)
                self._record(suite, "ordering.s_below_r", s_value <= r_value * (1 + settings.REPORT_TOL),
                             {"side": side.value, "R": R, "q": q}, s_value, r_value)

    def _bump(self, nprng: np.random.Generator, grid: numerics.RadialGrid, N: int) -> numerics.RadialFunction:
        scale = float(nprng.uniform(0.25, 2.0))
        return numerics.BumpFamily((scale,)).member(scale, N, grid)

    def _lemma_checks(self, suite: str, nprng: np.random.Generator, grid: numerics.RadialGrid):
        samples = self._count(100)
        for beta in LEMMA_BETAS:
            for _ in range(samples):
                N = int(nprng.integers(3, 6))
                v = Power(round(float(nprng.uniform(0.5, 2.0)), 3), round(float(nprng.uniform(-2, 2)), 3))
                k = Power(1, round(float(nprng.uniform(-1, 2)), 3))
                alpha = float(nprng.uniform(-2, 2))
                q = max(1.0, 2 * beta) + float(nprng.uniform(0.1, 3.0))
                nu = float(nprng.uniform(0, 2))
                annulus = (float(nprng.uniform(0.05, 0.5)), float(nprng.uniform(1.0, 3.0)))
                u, h = self._bump(nprng, grid, N), self._bump(nprng, grid, N)
                window = grid.index_range(*annulus)
                r = grid.nodes[window]
                m = float(np.max(np.abs(u.values[window]) * r ** nu)) or 1.0
                inputs = {"beta": beta, "N": N, "alpha": alpha, "q": q, "nu": nu,
                          "r_lo": annulus[0], "r_hi": annulus[1]}
                try:
                    report = numerics.lemma_omega_check(u, h, annulus, alpha, beta, q, v, k, m, nu, N)
                except EmbeddingError as e:
                    self._record(suite, "lemma_omega", False, inputs, detail=str(e))
                    continue
                self._record(suite, f"lemma_omega.{report.case_label}", report.holds, inputs, report.lhs, report.rhs)

    def _annulus_checks(self, suite: str, nprng: np.random.Generator, grid: numerics.RadialGrid):
        samples = self._count(100)
        for branch in ("q<=q_tilde", "q>q_tilde"):
            for _ in range(samples):
                N = int(nprng.integers(3, 6))
                s = 2 * N / (N + 2) + float(nprng.uniform(0.05, 2.0))
                q_tilde = 2 * (1 + 1 / N - 1 / s)
                q = float(nprng.uniform(1.0, q_tilde)) if branch == "q<=q_tilde" else q_tilde + float(nprng.uniform(0.05, 3.0))
                q = max(q, 1.0 + 1e-6)
                k = Power(1, round(float(nprng.uniform(-1, 1)), 3))
                v = Zero() if nprng.random() < 0.5 else Power(1, round(float(nprng.uniform(-2, 0)), 3))
                r, R = float(nprng.uniform(0.05, 0.5)), float(nprng.uniform(1.0, 3.0))
                u, h = self._bump(nprng, grid, N), self._bump(nprng, grid, N)
                inputs = {"N": N, "s": s, "q": q, "r": r, "R": R}
                try:
                    report = numerics.annulus_check(u, h, r, R, q, k, s, v, N)
                except EmbeddingError as e:
                    self._record(suite, "annulus", False, inputs, detail=str(e))
                    continue
                self._record(suite, f"annulus.{report.case_label}", report.holds, inputs, report.lhs, report.rhs)

    def _sum_norm_checks(self, suite: str, grid: numerics.RadialGrid):
        k = Power(1, 0)
        for s in (0.5, 2.0):
            u = numerics.BumpFamily((s,)).member(s, 3, grid)
            for p1, p2 in ((2.0, 4.0), (3.0, 3.0)):
                bound = numerics.sum_norm_split(u, k, p1, p2, 3)
                ceiling = max(numerics.weighted_lq(u, k, p1, n=3) ** (1 / p1),
                              numerics.weighted_lq(u, k, p2, n=3) ** (1 / p2))
                self._record(suite, "sum_norm.below_global_norms", bound <= ceiling * (1 + settings.REPORT_TOL),
                             {"scale": s, "p1": p1, "p2": p2}, bound, ceiling)


def run_verification(suite: str = "all", seed: Optional[int] = None, scale: float = 1.0) -> VerificationReport:
    return VerificationWorker(suite, seed, scale).run()
