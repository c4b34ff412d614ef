import math
import random
from fractions import Fraction

import mpmath as mp
import pytest

from curvecomp.expfun import ExpPoly
from curvecomp.nevanlinna import (DegenerateCurveError, GeneralPositionError,
                                  HomDivisor, ProjCurve, characteristic,
                                  characteristic_scalar, counting,
                                  counting_entire, fit_linear, fmt_check,
                                  integrate_periodic, log_bound_factor,
                                  order_estimate, rational_growth_test,
                                  smt_check, smt_defect_on_sum_relation,
                                  winding_number, zero_count)
from curvecomp.polys import Poly
from curvecomp.scalars import CRat

from conftest import XI, XI2, cr, exp_of, poly


def curve(*components):
    return ProjCurve(list(components))


def hyper(*coeffs):
    return HomDivisor.hyperplane([CRat(Fraction(c)) for c in coeffs])


ONE = ExpPoly.constant(1)
E_XI = exp_of(XI)
E_XI2 = exp_of(XI2)


def oracle_circle_mean(fn, r, dps=25):
    """Independent quadrature oracle (mpmath tanh-sinh, not our trapezoid)."""
    with mp.workdps(dps):
        val = mp.quad(lambda th: fn(r * mp.e ** (1j * th)), [0, 2 * mp.pi])
        return float(val) / (2 * math.pi)


class TestCharacteristicScalar:
    def test_exp_at_pi(self):
        assert characteristic_scalar(E_XI, math.pi) == pytest.approx(1.0, abs=1e-6)

    def test_cubic_at_e(self):
        v = characteristic_scalar(ExpPoly.from_poly(poly(0, 0, 0, 1)), math.e)
        assert v == pytest.approx(3.0, abs=1e-7)

    def test_small_constant(self):
        half = ExpPoly.constant(Fraction(1, 2))
        assert characteristic_scalar(half, 5.0) == 0.0


class TestCharacteristic:
    def test_rational_closed_form(self):
        v = characteristic(curve(ONE, ExpPoly.from_poly(XI)), 10.0)
        assert v == pytest.approx(0.5 * math.log(101), abs=1e-8)

    def test_exp_against_oracle(self):
        got = characteristic(curve(ONE, E_XI), 10.0)
        want = oracle_circle_mean(
            lambda z: mp.log(1 + mp.e ** (2 * mp.re(z))) / 2, 10.0)
        assert got == pytest.approx(want, abs=1e-6)
        assert got == pytest.approx(10 / math.pi, rel=5e-3)

    def test_constant_curve(self):
        # a constant map has no growth: the circle average is r-independent
        f = curve(ExpPoly.constant(3), ExpPoly.constant(4))
        v = characteristic(f, 7.0)
        assert v == pytest.approx(math.log(25) / 2, abs=1e-8)
        assert characteristic(f, 70.0) - v == pytest.approx(0.0, abs=1e-8)

    def test_common_zero_check(self):
        assert curve(ONE, E_XI).check_no_common_zeros()
        shared = ExpPoly.from_poly(XI)
        assert not curve(shared, shared.scale(2)).check_no_common_zeros()

    def test_slope_of_linear_curve(self):
        radii = [10, 31.6, 100, 316, 1000]
        vals = [characteristic(curve(ONE, ExpPoly.from_poly(XI)), r)
                for r in radii]
        slope, _, _ = fit_linear([math.log(r) for r in radii], vals)
        assert slope == pytest.approx(1.0, abs=0.01)

    def test_monotone_in_radius(self):
        f = curve(ONE, E_XI + ExpPoly.from_poly(XI))
        vals = [characteristic(f, r) for r in (2, 4, 8, 16)]
        assert all(b >= a - 1e-9 for a, b in zip(vals, vals[1:]))

    def test_big_radius_overflow_safe(self):
        v = characteristic(curve(ONE, E_XI2), 40.0)
        assert v == pytest.approx(1600 / math.pi, rel=2e-2)


class TestWinding:
    def test_exp_minus_one_counts(self):
        h = E_XI - ONE
        for t, n in ((5.0, 1), (7.0, 3), (20.0, 7)):
            assert zero_count(h, t) == n

    def test_polynomial(self):
        h = ExpPoly.from_poly(poly(-1, 0, 0, 0, 1))  # x^4 - 1
        assert winding_number(h, 2.0) == 4
        assert winding_number(h, 0.5) == 0

    def test_zero_on_probe_circle_nudged(self):
        # e^x - 1 vanishes at 2 pi i, exactly on the circle |x| = 2 pi
        h = E_XI - ONE
        assert zero_count(h, 2 * math.pi) in (1, 3)


class TestCounting:
    def test_exp_unit_divisor(self):
        # zeros of e^x - 1 at 2 pi i k: exact radially integrated count
        n20 = counting(curve(ONE, E_XI), hyper(-1, 1), 20.0)
        closed = (math.log(2 * math.pi) + 3 * math.log(2)
                  + 5 * math.log(1.5) + 7 * math.log(20 / (6 * math.pi)))
        assert n20 == pytest.approx(closed, abs=2e-3)
        assert n20 == pytest.approx(20 / math.pi, rel=0.02)

    def test_linear_zero_at_origin(self):
        v = counting(curve(ONE, ExpPoly.from_poly(XI)), hyper(0, 1), 10.0)
        assert v == pytest.approx(math.log(10), abs=1e-6)

    def test_omitted_divisor(self):
        assert counting(curve(ONE, E_XI), hyper(0, 1), 30.0) == 0.0

    def test_methods_agree(self):
        f = curve(ONE, E_XI)
        d = hyper(-1, 1)
        a = counting(f, d, 12.0, method="winding")
        b = counting(f, d, 12.0, method="circle-mean")
        assert a == pytest.approx(b, abs=5e-3)

    def test_monotone(self):
        f = curve(ONE, E_XI)
        d = hyper(-1, 1)
        ns = [counting(f, d, r) for r in (5, 10, 20)]
        assert ns[0] <= ns[1] <= ns[2]

    def test_divisor_containing_curve_rejected(self):
        with pytest.raises(DegenerateCurveError):
            counting(curve(ONE, ONE), hyper(-1, 1), 5.0)


class TestOrderEstimate:
    def test_exp_order_one(self):
        rep = order_estimate(curve(ONE, E_XI), [2, 4, 8, 16, 32, 64, 128, 256])
        assert rep.fitted_order == pytest.approx(1.0, abs=0.05)

    def test_exp_sq_order_two(self):
        rep = order_estimate(curve(ONE, E_XI2), [2, 4, 8, 16, 32])
        assert rep.fitted_order == pytest.approx(2.0, abs=0.05)

    def test_quintic_order_zero(self):
        rep = order_estimate(curve(ONE, ExpPoly.from_poly(poly(0, 0, 0, 0, 0, 1))),
                             [10, 31.6, 100, 316, 1000])
        assert rep.fitted_order == 0.0
        assert "log-growth" in rep.flags
        assert rep.fitted_slope == pytest.approx(5.0, abs=1e-3)

    def test_constant_flagged(self):
        rep = order_estimate(curve(ONE, ExpPoly.constant(2)), [2, 4, 8, 16, 100, 300])
        assert rep.fitted_order == 0.0 and "constant" in rep.flags

    def test_lemma_e_structural(self):
        # unit-coefficient exponential components of degree <= lam miss the
        # coordinate hyperplanes; the fitted order must respect the degree
        for lam, comp in ((1, E_XI), (2, E_XI2)):
            rep = order_estimate(curve(ONE, comp), [4, 8, 16, 32, 64])
            assert rep.fitted_order <= lam + 0.1


class TestFmt:
    def test_near_equality(self):
        rep = fmt_check(curve(ONE, E_XI), hyper(-1, 1), [5, 10, 20])
        assert rep.passed
        assert rep.defect == pytest.approx(0.0, abs=0.02)

    def test_omitted(self):
        rep = fmt_check(curve(ONE, E_XI), hyper(0, 1), [5, 10, 20])
        assert rep.passed
        assert rep.counting == [0.0, 0.0, 0.0]
        assert rep.defect == 1.0

    def test_square_closed_forms(self):
        rep = fmt_check(curve(ONE, ExpPoly.from_poly(XI2)), hyper(0, 1),
                        [5, 10, 20])
        assert rep.passed
        assert rep.counting[0] == pytest.approx(2 * math.log(5), abs=1e-5)


class TestSmt:
    def test_exp_three_hyperplanes(self):
        hyps = [hyper(1, 0), hyper(0, 1), hyper(1, 1)]
        rep = smt_check(curve(ONE, E_XI), hyps, [4, 8, 16, 32])
        assert rep.passed
        assert rep.relative_residual < 0.05

    def test_rational_trivial(self):
        hyps = [hyper(1, 0), hyper(0, 1), hyper(1, 1)]
        rep = smt_check(curve(ONE, ExpPoly.from_poly(XI)), hyps, [4, 8, 16, 32])
        assert rep.passed

    def test_degenerate_curve_rejected(self):
        hyps = [hyper(1, 0), hyper(0, 1), hyper(1, 1)]
        const = curve(ONE, ExpPoly.constant(-1))
        with pytest.raises(DegenerateCurveError):
            smt_check(const, hyps, [4, 8, 16])

    def test_general_position_enforced(self):
        hyps = [hyper(1, 0), hyper(0, 1), hyper(0, 2)]
        with pytest.raises(GeneralPositionError):
            smt_check(curve(ONE, E_XI), hyps, [4, 8, 16])

    def test_too_few_hyperplanes(self):
        with pytest.raises(GeneralPositionError):
            smt_check(curve(ONE, E_XI), [hyper(1, 0), hyper(0, 1)], [4, 8])

    def test_sum_relation_witness(self):
        psi = [E_XI, E_XI2, -(E_XI + E_XI2)]
        rep = smt_defect_on_sum_relation(psi, [4, 8, 16, 32],
                                         n_method="circle-mean")
        assert rep.passed and rep.relative_residual < 0.05
        assert rep.log_factor_T >= 10

    def test_sum_relation_requires_minimality(self):
        with pytest.raises(DegenerateCurveError):
            smt_defect_on_sum_relation([E_XI, -E_XI, E_XI2, -E_XI2],
                                       [4, 8, 16])


class TestRationalGrowth:
    def test_polynomial_pair(self):
        assert rational_growth_test(ExpPoly.from_poly(poly(1, 0, 1)),
                                    ExpPoly.from_poly(XI))

    def test_exponential(self):
        assert not rational_growth_test(E_XI, ONE)

    def test_cancelled_exponentials(self):
        f0 = E_XI - E_XI + ExpPoly.from_poly(XI)
        assert rational_growth_test(f0, ONE)

    def test_zero_denominator_rejected(self):
        with pytest.raises(DegenerateCurveError):
            rational_growth_test(ONE, ExpPoly.zero())


class TestPaperInequalities:
    """O(1)-slack inequalities, one fitted constant per instance."""

    RADII = (5.0, 10.0, 20.0, 40.0)

    def _bounded(self, values, scale):
        mean = sum(values) / len(values)
        rms = math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))
        return rms / max(1.0, scale)

    def test_scalar_vs_projective_characteristic(self):
        # log-plus integrands have corners; 1e-6 absolute is ample here
        for g in (E_XI, ExpPoly.from_poly(poly(0, 0, 0, 1)), E_XI2):
            diffs, scale = [], 0.0
            for r in self.RADII:
                t0 = characteristic_scalar(g, r, tol=1e-6)
                t1 = characteristic(curve(ONE, g), r, tol=1e-6)
                diffs.append(t0 - t1)
                scale = max(scale, abs(t0))
            assert self._bounded(diffs, scale) < 0.05

    def _random_exppoly(self, rng):
        terms = []
        for _ in range(rng.randint(1, 2)):
            cdeg = rng.randint(0, 2)
            co = poly(*[Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                        for _ in range(cdeg + 1)])
            ed = rng.randint(0, 2)
            ex = poly(*([0] + [Fraction(rng.randint(-2, 2), 2)
                               for _ in range(ed)]))
            terms.append((co, ex))
        f = ExpPoly(terms)
        return f if not f.is_zero() else ONE

    def test_lemma_calc_sum_product_bounds(self):
        rng = random.Random(42)
        radii = (4.0, 8.0, 16.0)
        cache = {}

        def T(f, r):
            key = (f, r)  # ExpPoly hashes canonically; id() would be recycled
            if key not in cache:
                cache[key] = characteristic_scalar(f, r, tol=1e-6)
            return cache[key]

        for _ in range(10):
            f, g = self._random_exppoly(rng), self._random_exppoly(rng)
            for op, combo in (("mul", f * g), ("add", f + g)):
                if combo.is_zero():
                    continue
                excess = [T(combo, r) - T(f, r) - T(g, r) for r in radii]
                scale = max(1.0, *(abs(T(combo, r)) for r in radii))
                # bounded above by one constant: no upward drift beyond slack
                assert max(excess) - excess[0] < 0.05 * scale + 0.5

    def test_lemma_calc_projective_bound(self):
        rng = random.Random(7)
        radii = (4.0, 8.0, 16.0)
        for _ in range(5):
            f, g = self._random_exppoly(rng), self._random_exppoly(rng)
            excess = []
            for r in radii:
                tp = characteristic(curve(ONE, f, g), r, tol=1e-6)
                ts = (characteristic_scalar(f, r, tol=1e-6)
                      + characteristic_scalar(g, r, tol=1e-6))
                excess.append(tp - ts)
            scale = max(1.0, abs(excess[0]))
            assert max(excess) - excess[0] < 0.05 * max(
                1.0, *(abs(e) for e in excess)) + 0.5


class TestQuadrature:
    def test_smooth_integrand(self):
        val, err = integrate_periodic(lambda t: math.cos(3 * t) ** 2, 1e-10)
        assert val == pytest.approx(math.pi, abs=1e-9)

    def test_log_factor(self):
        radii = [4, 8, 16, 32]
        logs = [3 * math.log(r) for r in radii]
        assert log_bound_factor(radii, logs) == pytest.approx(1.0, abs=1e-9)
        quads = [r * r / math.pi for r in radii]
        assert log_bound_factor(radii, quads) > 20
