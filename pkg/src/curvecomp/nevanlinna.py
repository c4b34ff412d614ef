"""Growth functionals for entire curves with exponential-polynomial data.

The characteristic of a projective curve is computed as the circle average
of log||f||^2 (the radial integration constant is dropped); the scalar
characteristic is the classical log-plus average.  Counting functions come
from the argument principle: integer winding numbers on a ladder of radii,
with the radial integral done exactly on the resolved piecewise-constant
count.  For entire functions with very many zeros a circle-mean variant is
available (Jensen's identity: N(r) = m(r) - m(r0)); it computes the same
quantity and is cross-checked against the winding ladder in the tests.

All radial normalizations use r0 = 1.  The paper bounds carry O(1) slack;
every check here therefore fits one constant (or one a*log r + b line) per
instance and reports residuals relative to the characteristic scale.  The
main-theorem exceptional set (finite Lebesgue measure) is invisible to any
finite radius schedule, so the second-main-theorem check is a fit-based
heuristic by design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .expfun import ExpPoly
from .polys import MPoly, Poly, det_field
from .scalars import CRat

R0 = 1.0


class NevanlinnaError(Exception):
    pass


class QuadratureError(NevanlinnaError):
    def __init__(self, msg, achieved=None):
        super().__init__(msg)
        self.achieved = achieved


class WindingError(NevanlinnaError):
    pass


class GeneralPositionError(NevanlinnaError):
    pass


class DegenerateCurveError(NevanlinnaError):
    pass


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

class ProjCurve:
    """Entire curve [f_0 : ... : f_n] with ExpPoly components."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if not comps:
            raise ValueError("a curve needs at least one component")
        if all(c.is_zero() for c in comps):
            raise ValueError("all components are identically zero")
        object.__setattr__(self, "components", comps)

    def __setattr__(self, *a):
        raise AttributeError("ProjCurve is immutable")

    @property
    def n(self) -> int:
        return len(self.components) - 1

    def log_norm_sq(self, z: complex) -> float:
        """log sum_j |f_j(z)|^2, overflow-safe (exponents factored out)."""
        logs = []
        for comp in self.components:
            v, s = comp.eval_scaled(z)
            if v != 0:
                logs.append(s + math.log(abs(v)))
        if not logs:
            return float("-inf")
        m = max(logs)
        acc = sum(math.exp(2.0 * (l - m)) for l in logs)
        return 2.0 * m + math.log(acc)

    def check_no_common_zeros(self, samples: int = 64, seed: int = 0) -> bool:
        """Best-effort check that the components share no zero.

        Single-term components vanish exactly on their coefficient
        polynomial, so that case is decided by an exact gcd; otherwise a
        random sample probes for very small joint values (heuristic only).
        """
        if all(len(c.terms) == 1 for c in self.components):
            from .polys import poly_gcd_many
            g = poly_gcd_many([c.terms[0].coeff for c in self.components])
            return g.degree < 1
        import random
        rng = random.Random(seed)
        for _ in range(samples):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if self.log_norm_sq(z) < -80.0:
                return False
        return True

    def to_json(self):
        return {"components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data):
        return cls(ExpPoly.from_json(c) for c in data["components"])


class HomDivisor:
    """Divisor cut out by a homogeneous polynomial with exact coefficients."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly: MPoly, degree: int = None):
        if poly.is_zero():
            raise ValueError("divisor polynomial is zero")
        if not poly.is_homogeneous():
            raise ValueError("divisor polynomial is not homogeneous")
        d = poly.total_degree()
        if degree is not None and degree != d:
            raise ValueError(f"stated degree {degree} != actual {d}")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "degree", d)

    def __setattr__(self, *a):
        raise AttributeError("HomDivisor is immutable")

    @classmethod
    def hyperplane(cls, coeffs) -> "HomDivisor":
        n = len(coeffs)
        items = []
        for j, c in enumerate(coeffs):
            e = [0] * n
            e[j] = 1
            items.append((tuple(e), c))
        return cls(MPoly(n, items))

    def normal(self):
        """Coefficient vector for a degree-1 divisor."""
        if self.degree != 1:
            raise ValueError("normal vector only defined for hyperplanes")
        n = self.poly.nvars
        vec = [CRat(0)] * n
        for e, c in self.poly.terms.items():
            vec[e.index(1)] = c
        return vec

    def compose(self, curve: ProjCurve) -> ExpPoly:
        """The entire function P(f_0, ..., f_n)."""
        if self.poly.nvars != len(curve.components):
            raise ValueError("divisor arity does not match the curve")
        out = ExpPoly.zero()
        for e, c in self.poly.iter_sorted():
            term = ExpPoly.constant(c)
            for comp, k in zip(curve.components, e):
                if k:
                    term = term * comp ** k
            out = out + term
        return out

    def to_json(self):
        return {"monomials": self.poly.to_json(), "degree": self.degree}

    @classmethod
    def from_json(cls, data, nvars=None):
        mono = data["monomials"]
        if nvars is None:
            nvars = len(mono[0]["exponents"])
        return cls(MPoly.from_json(nvars, mono), data.get("degree"))


@dataclass
class GrowthReport:
    radii: list
    values: list
    fitted_slope: float
    fitted_order: float
    flags: list = field(default_factory=list)

    def to_json(self):
        return {"radii": list(self.radii), "values": list(self.values),
                "fitted_slope": self.fitted_slope,
                "fitted_order": self.fitted_order, "flags": list(self.flags)}


# ---------------------------------------------------------------------------
# quadrature on the circle
# ---------------------------------------------------------------------------

def integrate_periodic(fn, tol: float, max_pow: int = 18):
    """Adaptive trapezoid of fn over [0, 2pi): panel doubling to tolerance.

    Returns (integral, error_estimate).  For smooth periodic integrands the
    doubling converges spectrally; failure to meet tol raises with the
    achieved estimate attached.
    """
    two_pi = 2.0 * math.pi

    def safe(theta):
        v = fn(theta)
        if v != v or v == float("-inf"):
            v = fn(theta + 1e-9)
        return v

    p = 16
    total = sum(safe(two_pi * k / p) for k in range(p))
    est = total * two_pi / p
    prev_err = None
    while p <= (1 << max_pow):
        new = sum(safe(two_pi * (k + 0.5) / p) for k in range(p))
        p *= 2
        total += new
        nxt = total * two_pi / p
        err = abs(nxt - est)
        est = nxt
        if err < tol:
            return est, err
        prev_err = err
    raise QuadratureError(
        f"no convergence below {tol:g} after {p} panels "
        f"(last refinement moved {prev_err:g})", achieved=prev_err)


def characteristic(curve: ProjCurve, r: float, tol: float = 1e-8) -> float:
    """Circle average (1/4pi) int log||f||^2 at radius r."""
    if r <= 0:
        raise ValueError("radius must be positive")
    val, _ = integrate_periodic(
        lambda th: curve.log_norm_sq(r * complex(math.cos(th), math.sin(th))),
        tol * 4.0 * math.pi)
    return val / (4.0 * math.pi)


def characteristic_scalar(g: ExpPoly, r: float, tol: float = 1e-8) -> float:
    """Classical scalar characteristic (1/2pi) int log+ |g|."""
    if r <= 0:
        raise ValueError("radius must be positive")

    def integrand(th):
        v, s = g.eval_scaled(r * complex(math.cos(th), math.sin(th)))
        if v == 0:
            return 0.0
        return max(0.0, s + math.log(abs(v)))

    val, _ = integrate_periodic(integrand, tol * 2.0 * math.pi)
    return val / (2.0 * math.pi)


def circle_log_mean(h: ExpPoly, r: float, tol: float = 1e-8) -> float:
    """(1/2pi) int log|h| on the circle of radius r (dips are integrable)."""

    def integrand(th):
        v, s = h.eval_scaled(r * complex(math.cos(th), math.sin(th)))
        if v == 0:
            return -100.0  # exact-zero grid hit; retried by the integrator
        m = s + math.log(abs(v))
        return m

    val, _ = integrate_periodic(integrand, tol * 2.0 * math.pi, max_pow=17)
    return val / (2.0 * math.pi)


# ---------------------------------------------------------------------------
# winding numbers and counting functions
# ---------------------------------------------------------------------------

def _eval_unit(h: ExpPoly, z: complex):
    """Scaled value and a cancellation reference at z."""
    v, s = h.eval_scaled(z)
    ref = 0.0
    for t in h.terms:
        w = t.expconst.to_complex() + t.expo.eval_complex(z)
        ref += abs(t.coeff.eval_complex(z)) * math.exp(min(w.real - s, 0.0))
    return v, ref


def _winding_pass(h: ExpPoly, radius: float, n0: int, max_depth: int = 54):
    """One adaptive phase-continuation sweep; returns total phase / 2pi."""
    import cmath

    def val(theta):
        z = radius * complex(math.cos(theta), math.sin(theta))
        v, ref = _eval_unit(h, z)
        if abs(v) <= 1e-12 * max(ref, 1e-300):
            raise WindingError(f"near-zero on circle r={radius} at theta={theta}")
        return v

    total = 0.0
    thetas = [2.0 * math.pi * k / n0 for k in range(n0 + 1)]
    vals = [val(t) for t in thetas[:-1]]
    vals.append(vals[0])
    stack = list(zip(thetas[:-1], thetas[1:], vals[:-1], vals[1:],
                     [0] * n0))
    while stack:
        a, b, va, vb, depth = stack.pop()
        d = cmath.phase(vb / va)
        if abs(d) <= 0.5 * math.pi:
            total += d
            continue
        if depth >= max_depth:
            raise WindingError(
                f"phase jump unresolved at r={radius}; zero on the circle?")
        mth = 0.5 * (a + b)
        vm = val(mth)
        stack.append((a, mth, va, vm, depth + 1))
        stack.append((mth, b, vm, vb, depth + 1))
    return total / (2.0 * math.pi)


def winding_number(h: ExpPoly, radius: float, n0: int = 256) -> int:
    """Zeros of h inside the circle, by verified phase continuation.

    Two consecutive sweep resolutions must agree; a result further than 0.1
    from an integer is an error.
    """
    prev = None
    n = n0
    while n <= (1 << 17):
        w = _winding_pass(h, radius, n)
        k = round(w)
        if abs(w - k) > 0.1:
            raise WindingError(
                f"winding {w:.4f} too far from an integer at r={radius}")
        if prev is not None and prev == k:
            return k
        prev = k
        n *= 2
    raise WindingError(f"winding did not stabilize at r={radius}")


_NUDGES = (0.0, 1e-7, -1e-7, 7e-7, -7e-7, 5e-6, -5e-6, 4e-5, -4e-5, 3e-4)


def zero_count(h: ExpPoly, t: float) -> int:
    """n(t): zeros in the open disk of radius t, nudging off near-circle zeros."""
    last = None
    for eps in _NUDGES:
        try:
            return winding_number(h, t * (1.0 + eps))
        except WindingError as exc:
            last = exc
    raise WindingError(f"all probe radii near t={t} failed: {last}")


def counting(curve: ProjCurve, divisor: HomDivisor, r: float,
             tol: float = 1e-3, method: str = "winding") -> float:
    """N_f(D, r): radially integrated zero count of the composed function."""
    h = divisor.compose(curve)
    if h.is_zero():
        raise DegenerateCurveError("divisor pulls back to zero on the curve")
    return counting_entire(h, r, tol=tol, method=method)


def counting_entire(h: ExpPoly, r: float, tol: float = 1e-3,
                    method: str = "winding") -> float:
    if h.is_zero():
        raise DegenerateCurveError("cannot count zeros of the zero function")
    if r <= R0:
        return 0.0
    if method == "circle-mean":
        return (circle_log_mean(h, r, tol=tol * 0.25)
                - circle_log_mean(h, R0, tol=tol * 0.25))
    if method != "winding":
        raise ValueError(f"unknown counting method {method!r}")

    import heapq
    counts = {}

    def n_at(t):
        if t not in counts:
            counts[t] = zero_count(h, t)
        return counts[t]

    k = max(4, int(math.ceil(4 * math.log(r / R0, 2))))
    ladder = [R0 * (r / R0) ** (i / k) for i in range(k + 1)]
    segs = []
    for lo, hi in zip(ladder[:-1], ladder[1:]):
        jump = n_at(hi) - n_at(lo)
        if jump:
            heapq.heappush(segs, (-jump * math.log(hi / lo), lo, hi))
    lower = sum(n_at(lo) * math.log(hi / lo)
                for lo, hi in zip(ladder[:-1], ladder[1:]))
    err = -sum(s[0] for s in segs)
    while err > tol and segs:
        neg, lo, hi = heapq.heappop(segs)
        err += neg
        mid = math.sqrt(lo * hi)
        if mid <= lo or mid >= hi:
            # interval at floating resolution; accept midpoint estimate
            lower += (-neg) * 0.5
            continue
        nm = n_at(mid)
        lower += (nm - n_at(lo)) * math.log(hi / mid)
        for a, b in ((lo, mid), (mid, hi)):
            jump = n_at(b) - n_at(a)
            if jump:
                cost = jump * math.log(b / a)
                heapq.heappush(segs, (-cost, a, b))
                err += cost
    return lower + 0.5 * err


# ---------------------------------------------------------------------------
# fits and growth reports
# ---------------------------------------------------------------------------

def fit_linear(xs, ys):
    """Least squares y = a*x + b; returns (a, b, rms_residual)."""
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two samples to fit")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("degenerate fit abscissae")
    a = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    b = my - a * mx
    rms = math.sqrt(sum((y - (a * x + b)) ** 2
                        for x, y in zip(xs, ys)) / n)
    return a, b, rms


def log_bound_factor(radii, values) -> float:
    """How far values outgrow the pure-log ray through the first sample.

    For T = c*log r this stays near 1; for polynomial-order growth it blows
    up like r^order / log r.  The factor compares the last sample against
    the ray value (v_first / log r_first) * log r_last.
    """
    v0, v1 = values[0], values[-1]
    r0, r1 = radii[0], radii[-1]
    if r0 <= 1.0 or r1 <= r0:
        raise ValueError("radii must exceed 1 and increase")
    ray = (v0 / math.log(r0)) * math.log(r1)
    if abs(ray) < 1e-9:
        return float("inf") if abs(v1) > 1e-6 else 1.0
    return v1 / ray


def order_estimate(curve: ProjCurve, radii, tol: float = 1e-8) -> GrowthReport:
    """Growth order from a radius schedule.

    fitted_slope is the slope of T against log r (equal to the degree for
    rational curves); fitted_order is the log-log slope, with log-growth
    detected first so bounded-by-log curves report order zero exactly.
    """
    radii = sorted(float(r) for r in radii)
    if len(radii) < 4:
        raise ValueError("need at least four radii")
    flags = []
    if radii[-1] / radii[0] < 99.0:
        flags.append("narrow-schedule")
    values = [characteristic(curve, r, tol=tol) for r in radii]
    logs = [math.log(r) for r in radii]
    scale = max(1e-12, max(abs(v) for v in values))
    if max(values) - min(values) < 1e-9 * max(1.0, scale):
        return GrowthReport(radii, values, 0.0, 0.0, flags + ["constant"])
    slope, _, rms = fit_linear(logs, values)
    if rms < 1e-3 * max(1.0, scale):
        return GrowthReport(radii, values, slope, 0.0, flags + ["log-growth"])
    if min(values) <= 0:
        flags.append("nonpositive-T")
    lvals = [math.log(max(v, 1e-12)) for v in values]
    order, _, _ = fit_linear(logs, lvals)
    return GrowthReport(radii, values, slope, order, flags)


# ---------------------------------------------------------------------------
# main theorem checks
# ---------------------------------------------------------------------------

@dataclass
class FmtReport:
    radii: list
    counting: list
    d_times_T: list
    fitted_C: float
    max_violation: float
    defect: float
    passed: bool

    def to_json(self):
        return {"radii": self.radii, "counting": self.counting,
                "d_times_T": self.d_times_T, "fitted_C": self.fitted_C,
                "max_violation": self.max_violation, "defect": self.defect,
                "pass": self.passed}


def fmt_check(curve: ProjCurve, divisor: HomDivisor, radii,
              tol: float = 0.02, n_method: str = "winding") -> FmtReport:
    """First-main-theorem check: N <= d*T + C with one fitted constant.

    The defect reported is 1 - max_r N/(d*T); the check passes when no
    radius exceeds the fitted constant by more than tol on the scale of
    d*T (and the defect is above -tol).
    """
    radii = sorted(float(r) for r in radii)
    d = divisor.degree
    ns = [counting(curve, divisor, r, method=n_method) for r in radii]
    ts = [d * characteristic(curve, r) for r in radii]
    excess = [n - t for n, t in zip(ns, ts)]
    # the bound is one-sided; calibrate the constant at the smallest radius
    # and flag only upward drift beyond tol on the d*T scale
    c_fit = excess[0]
    scale = max(1.0, max(abs(t) for t in ts))
    max_violation = max(e - c_fit for e in excess) - tol * scale
    ratios = [n / t for n, t in zip(ns, ts) if abs(t) > 1e-9]
    defect = 1.0 - max(ratios) if ratios else 1.0
    passed = max_violation <= 0.0 and defect >= -tol
    return FmtReport(radii, ns, ts, c_fit, max_violation, defect, passed)


def _component_rank(components) -> int:
    """Exact rank of the components over the canonical term basis."""
    basis = {}
    rows = []
    for comp in components:
        row = {}
        for t in comp.terms:
            for k, c in enumerate(t.coeff.coeffs):
                if not c.is_zero():
                    key = (t.expo, t.expconst, k)
                    col = basis.setdefault(key, len(basis))
                    row[col] = c
        rows.append(row)
    pivots = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col in pivots:
                f = row.pop(col)
                for c2, v2 in pivots[col].items():
                    if c2 == col:
                        continue
                    nv = row.get(c2, CRat(0)) - f * v2
                    if nv.is_zero():
                        row.pop(c2, None)
                    else:
                        row[c2] = nv
            else:
                inv = row[col].inverse()
                pivots[col] = {c2: v2 * inv for c2, v2 in row.items()}
                rank += 1
                break
    return rank


def check_general_position(hyperplanes, n: int):
    """Every (n+1)-subset of hyperplane normals must be independent."""
    normals = [h.normal() for h in hyperplanes]
    for idx in combinations(range(len(normals)), n + 1):
        rows = [normals[i] for i in idx]
        if det_field(rows).is_zero():
            raise GeneralPositionError(
                f"hyperplanes {list(idx)} are linearly dependent")


@dataclass
class SmtReport:
    radii: list
    T: list
    N: list
    delta: list
    fit_slope: float
    fit_intercept: float
    relative_residual: float
    log_factor_T: float
    passed: bool

    def to_json(self):
        return {"radii": self.radii, "T": self.T, "N": self.N,
                "delta": self.delta,
                "fit": {"a": self.fit_slope, "b": self.fit_intercept},
                "relative_residual": self.relative_residual,
                "log_factor_T": self.log_factor_T, "pass": self.passed}


def smt_check(curve: ProjCurve, hyperplanes, radii,
              resid_tol: float = 0.05, n_method: str = "winding") -> SmtReport:
    """Second-main-theorem defect check against a fitted a*log r + b.

    delta(r) = (q-n-1) T(r) - sum_j N(H_j, r) should stay within log-size
    slack; the residual of the log fit is reported relative to the largest
    characteristic value (defects are always measured on the T scale).
    """
    radii = sorted(float(r) for r in radii)
    n = curve.n
    q = len(hyperplanes)
    if q < n + 2:
        raise GeneralPositionError(f"need at least n+2 = {n + 2} hyperplanes")
    for h in hyperplanes:
        if h.degree != 1:
            raise ValueError("smt_check expects hyperplanes")
    check_general_position(hyperplanes, n)
    if _component_rank(curve.components) < n + 1:
        raise DegenerateCurveError("curve is linearly degenerate")
    ts = [characteristic(curve, r) for r in radii]
    ns = [[counting(curve, h, r, method=n_method) for r in radii]
          for h in hyperplanes]
    delta = [(q - n - 1) * t - sum(col[i] for col in ns)
             for i, t in enumerate(ts)]
    a, b, rms = fit_linear([math.log(r) for r in radii], delta)
    scale = max(1.0, max(abs(t) for t in ts))
    rel = rms / scale
    factor = log_bound_factor(radii, ts) if radii[0] > 1.0 else float("nan")
    return SmtReport(radii, ts, ns, delta, a, b, rel, factor,
                     rel < resid_tol)


def smt_defect_on_sum_relation(components, radii,
                               resid_tol: float = 0.05,
                               n_method: str = "winding") -> SmtReport:
    """SMT defect for summand curves living in the hyperplane sum(z) = 0.

    The components must add up to zero exactly and the relation must be the
    only one (minimality): the curve then sits nondegenerately in the sum
    hyperplane, the L coordinate hyperplanes cut it in general position, and
    the defect is delta(r) = T(r) - sum_i N({z_i = 0}, r).
    """
    comps = list(components)
    L = len(comps)
    if L < 3:
        raise DegenerateCurveError("need at least three summands")
    total = comps[0]
    for c in comps[1:]:
        total = total + c
    if not total.is_zero():
        raise DegenerateCurveError("components do not satisfy the sum relation")
    if _component_rank(comps) != L - 1:
        raise DegenerateCurveError("extra linear relations among the summands")
    for j in range(L):
        rest = comps[:j] + comps[j + 1:]
        if _component_rank(rest) != L - 1:
            raise DegenerateCurveError(
                f"a relation omits component {j}: minimality fails")
    radii = sorted(float(r) for r in radii)
    curve = ProjCurve(comps)
    ts = [characteristic(curve, r) for r in radii]
    ns = [[counting_entire(c, r, method=n_method) for r in radii]
          for c in comps]
    delta = [t - sum(col[i] for col in ns) for i, t in enumerate(ts)]
    a, b, rms = fit_linear([math.log(r) for r in radii], delta)
    scale = max(1.0, max(abs(t) for t in ts))
    rel = rms / scale
    factor = log_bound_factor(radii, ts) if radii[0] > 1.0 else float("nan")
    return SmtReport(radii, ts, ns, delta, a, b, rel, factor, rel < resid_tol)


def rational_growth_test(f0: ExpPoly, f1: ExpPoly, radii=None) -> bool:
    """True iff [f0 : f1] has log-bounded growth, i.e. both parts polynomial.

    Decided syntactically on canonical forms; a numeric growth factor over
    the radius schedule guards against an inconsistent build.
    """
    if f1.is_zero():
        raise DegenerateCurveError("f1 must not vanish identically")
    syntactic = f0.is_polynomial() and f1.is_polynomial()
    radii = sorted(float(r) for r in (radii or (4.0, 8.0, 16.0, 32.0)))
    ts = [characteristic(ProjCurve([f0, f1]), r, tol=1e-6) for r in radii]
    if syntactic and abs(ts[0]) > 1e-9 and log_bound_factor(radii, ts) > 10.0:
        raise NevanlinnaError("polynomial data with super-log growth: broken")
    return syntactic
