"""Plane-curve configurations: exact intersections and genericity checks.

Intersection points and multiplicities come from resultant elimination after
a deterministic (seeded) linear change of coordinates chosen so that nothing
hides on the line at infinity, the elimination direction is regular, and
distinct points have distinct abscissae; multiplicities are then exact root
multiplicities of the eliminant, and the Bezout total is the eliminant
degree -- an exact integer identity.

The two-puncture case engine is purely combinatorial: it enumerates how an
irreducible curve meeting the three-component configuration in exactly two
points could distribute its intersection numbers, applies the forced
multiplicity equations, and tests them against the singularity bound

    m_P (m_P - 1) + m_Q (m_Q - 1) <= (d0 - 1)(d0 - 2)

whose consequence is m_P, m_Q < d0 unless d0 = m_P = m_Q = 1.  Every
"impossible" verdict ships an arithmetic certificate.

The quadric exclusion searches for a line meeting each non-quadric component
in a single point (restriction a perfect power -- a rank-one condition on
scaled binary-form coefficients) and passing through the two tangency points
on the quadric.  The search solves the rank-one system by resultants and is
supported for component degrees up to four.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from dataclasses import dataclass, field

import mpmath as mp

from .polys import (MPoly, Poly, biv_gcd, exact_roots, poly_gcd,
                    poly_roots_numeric, resultant_bivariate,
                    squarefree_decomposition)
from .scalars import CRat


class PlaneConfError(Exception):
    pass


class NonCoprimeError(PlaneConfError):
    pass


class UnsupportedDegreeError(PlaneConfError):
    pass


class DegenerateChangeError(PlaneConfError):
    pass


_BINOM = [[math.comb(n, k) for k in range(n + 1)] for n in range(12)]


# ---------------------------------------------------------------------------
# curves and configurations
# ---------------------------------------------------------------------------

class PlaneCurve:
    """Squarefree homogeneous curve in the projective plane."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly: MPoly, check_squarefree: bool = True):
        if poly.nvars != 3:
            raise ValueError("plane curves live in three homogeneous variables")
        if poly.is_zero() or not poly.is_homogeneous():
            raise ValueError("curve polynomial must be nonzero homogeneous")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "degree", poly.total_degree())
        if check_squarefree and not self._squarefree():
            raise ValueError("curve polynomial has a repeated component")

    def __setattr__(self, *a):
        raise AttributeError("PlaneCurve is immutable")

    def _squarefree(self) -> bool:
        if self.degree <= 1:
            return True
        for matrix in _change_schedule(seed=17):
            p = self.poly.substitute_linear(matrix)
            if p.substitute_value(2, CRat(0)).is_zero():
                continue  # the new infinity line divides the curve; re-aim
            a = p.substitute_value(2, CRat(1))
            g = biv_gcd(biv_gcd(a, a.partial(0)), a.partial(1))
            return g.total_degree() <= 0
        raise DegenerateChangeError("no usable coordinate change found")

    def eval_exact(self, point):
        return self.poly.eval_exact(list(point))

    def is_smooth(self) -> bool:
        """No projective point where the curve and its gradient all vanish."""
        if self.degree == 1:
            return True
        for chart in (0, 1, 2):
            a = self.poly.substitute_value(chart, CRat(1))
            au, av = a.partial(0), a.partial(1)
            if _bivariate_common_zero(au, av, a):
                return False
        return True

    def to_json(self):
        out = []
        for e, c in self.poly.iter_sorted():
            if c.im:
                out.append({"exponents": list(e), "coeff": c.to_json()})
            else:
                out.append({"exponents": list(e),
                            "coeff": [c.re.numerator, c.re.denominator]})
        return {"monomials": out}

    @classmethod
    def from_json(cls, data):
        return cls(MPoly.from_json(3, data["monomials"]))

    def __repr__(self):
        return f"PlaneCurve(deg={self.degree}, {self.poly!r})"


class Configuration:
    """Three squarefree curves with pairwise coprime equations."""

    __slots__ = ("curves",)

    def __init__(self, curves):
        curves = tuple(curves)
        if len(curves) != 3:
            raise ValueError("a configuration holds exactly three curves")
        for i in range(3):
            for j in range(i + 1, 3):
                if not _coprime(curves[i].poly, curves[j].poly):
                    raise NonCoprimeError(f"curves {i} and {j} share a component")
        object.__setattr__(self, "curves", curves)

    def __setattr__(self, *a):
        raise AttributeError("Configuration is immutable")

    def to_json(self):
        return {"curves": [c.to_json() for c in self.curves]}

    @classmethod
    def from_json(cls, data):
        return cls(PlaneCurve.from_json(c) for c in data["curves"])


def _coprime(p: MPoly, q: MPoly) -> bool:
    for matrix in _change_schedule(seed=23):
        pm = p.substitute_linear(matrix)
        qm = q.substitute_linear(matrix)
        if pm.substitute_value(2, CRat(0)).is_zero() or \
                qm.substitute_value(2, CRat(0)).is_zero():
            continue
        g = biv_gcd(pm.substitute_value(2, CRat(1)),
                    qm.substitute_value(2, CRat(1)))
        return g.total_degree() <= 0
    raise DegenerateChangeError("no usable coordinate change found")


def _change_schedule(seed: int, attempts: int = 6):
    """Identity first, then seeded random small-integer invertible changes."""
    from .polys import det_field
    ident = [[CRat(1 if i == j else 0) for j in range(3)] for i in range(3)]
    yield ident
    rng = random.Random(seed)
    produced = 0
    while produced < attempts:
        m = [[CRat(rng.randint(-4, 4)) for _ in range(3)] for _ in range(3)]
        if not det_field(m).is_zero():
            produced += 1
            yield m


# ---------------------------------------------------------------------------
# exact/numeric hybrid points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjPoint:
    """Projective point with exact coordinates when available."""

    coords: tuple          # CRat triple (exact) or complex triple (numeric)
    exact: bool

    @classmethod
    def from_exact(cls, cs):
        cs = tuple(cs)
        for c in cs:
            if not c.is_zero():
                inv = c.inverse()
                return cls(tuple(x * inv for x in cs), True)
        raise ValueError("zero vector is not a projective point")

    @classmethod
    def from_numeric(cls, cs):
        cs = tuple(complex(c) for c in cs)
        mx = max(abs(c) for c in cs)
        if mx == 0:
            raise ValueError("zero vector is not a projective point")
        cs = tuple(c / mx for c in cs)
        return cls(cs, False)

    def same_as(self, other: "ProjPoint", tol: float = 1e-9) -> bool:
        if self.exact and other.exact:
            for i in range(3):
                for j in range(i + 1, 3):
                    if not (self.coords[i] * other.coords[j]
                            - self.coords[j] * other.coords[i]).is_zero():
                        return False
            return True
        a = [complex(c.to_complex()) if hasattr(c, "to_complex") else complex(c)
             for c in self.coords]
        b = [complex(c.to_complex()) if hasattr(c, "to_complex") else complex(c)
             for c in other.coords]
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(a[i] * b[j] - a[j] * b[i]) > tol:
                    return False
        return True

    def to_json(self):
        if self.exact:
            return {"exact": True, "coords": [c.to_json() for c in self.coords]}
        return {"exact": False,
                "coords": [[c.real, c.imag] for c in self.coords]}

    def __repr__(self):
        if self.exact:
            return "(" + " : ".join(str(c) for c in self.coords) + ")"
        return "(" + " : ".join(f"{c:.6g}" for c in self.coords) + ")"


# ---------------------------------------------------------------------------
# intersection points
# ---------------------------------------------------------------------------

def intersection_points(c1: PlaneCurve, c2: PlaneCurve, seed: int = 0):
    """All intersection points with exact local multiplicities.

    Returns [(ProjPoint, multiplicity)] with the Bezout identity
    sum(multiplicities) == deg(c1) * deg(c2) asserted exactly.
    """
    if not _coprime(c1.poly, c2.poly):
        raise NonCoprimeError("curves share a component")
    d1, d2 = c1.degree, c2.degree
    last = None
    for matrix in _change_schedule(seed=seed, attempts=8):
        try:
            return _intersections_in_chart(c1, c2, matrix)
        except DegenerateChangeError as exc:
            last = exc
    raise DegenerateChangeError(
        f"no coordinate change separated the {d1 * d2} intersections: {last}")


def _intersections_in_chart(c1, c2, matrix):
    d1, d2 = c1.degree, c2.degree
    p1 = c1.poly.substitute_linear(matrix)
    p2 = c2.poly.substitute_linear(matrix)
    # nothing at infinity: the two restrictions to x2 = 0 share no root
    r1 = p1.substitute_value(2, CRat(0))
    r2 = p2.substitute_value(2, CRat(0))
    if r1.is_zero() or r2.is_zero():
        raise DegenerateChangeError("infinity line inside a curve")
    if _binary_resultant(r1, r2).is_zero():
        raise DegenerateChangeError("intersection on the infinity line")
    a1 = p1.substitute_value(2, CRat(1))
    a2 = p2.substitute_value(2, CRat(1))
    # regular elimination direction: top v-coefficients are constants
    if a1.degree_in(1) != d1 or a2.degree_in(1) != d2 or \
            a1.as_univariate(1)[d1].total_degree() > 0 or \
            a2.as_univariate(1)[d2].total_degree() > 0:
        raise DegenerateChangeError("elimination direction not regular")
    res = resultant_bivariate(a1, a2, elim=1)
    if res.degree != d1 * d2:
        raise DegenerateChangeError(
            f"eliminant degree {res.degree} != {d1 * d2}")
    out = []
    for factor, mult in squarefree_decomposition(res):
        ex, nu = exact_roots(factor)
        for alpha in ex:
            v = _common_v_exact(a1, a2, alpha)
            pt = ProjPoint.from_exact(_apply_matrix(matrix, (alpha, v, CRat(1))))
            out.append((pt, mult))
        for alpha in nu:
            v = _common_v_numeric(a1, a2, alpha)
            pt = ProjPoint.from_numeric(
                _apply_matrix_numeric(matrix, (complex(alpha), v, 1.0)))
            out.append((pt, mult))
    total = sum(m for _, m in out)
    if total != d1 * d2:
        raise AssertionError(f"Bezout total {total} != {d1 * d2} (build bug)")
    out.sort(key=_point_sort_key)
    return out


def _point_sort_key(pm):
    pt = pm[0]
    cs = [c.to_complex() if pm[0].exact else complex(c) for c in pt.coords]
    return tuple((round(c.real, 9), round(c.imag, 9)) for c in cs)


def _apply_matrix(matrix, y):
    return tuple(sum((matrix[i][j] * y[j] for j in range(3)), CRat(0))
                 for i in range(3))


def _apply_matrix_numeric(matrix, y):
    return tuple(sum(matrix[i][j].to_complex() * complex(y[j])
                     for j in range(3)) for i in range(3))


def _binary_resultant(f: MPoly, g: MPoly):
    """Resultant of two binary forms (exact scalar)."""
    from .polys import sylvester_det
    df, dg = f.total_degree(), g.total_degree()
    fc = [CRat(0)] * (df + 1)
    for (i, j), c in f.terms.items():
        fc[i] = c
    gc = [CRat(0)] * (dg + 1)
    for (i, j), c in g.terms.items():
        gc[i] = c
    return sylvester_det(fc, gc)


def _specialize_u(a: MPoly, alpha: CRat) -> Poly:
    return a.substitute_value(0, alpha).to_poly()


def _common_v_exact(a1, a2, alpha: CRat):
    g = poly_gcd(_specialize_u(a1, alpha), _specialize_u(a2, alpha))
    if g.degree < 1:
        raise DegenerateChangeError("eliminant root without a fiber point")
    sq = g.exact_div(poly_gcd(g, g.derivative())) if g.degree > 1 else g
    if sq.degree != 1:
        raise DegenerateChangeError("two intersections share an abscissa")
    return -sq.coeffs[0] / sq.coeffs[1]


def _common_v_numeric(a1, a2, alpha, tol: float = 1e-22):
    q1 = _poly_at_numeric(a1, alpha)
    q2 = _poly_at_numeric(a2, alpha)
    r1 = mp.polyroots(q1, maxsteps=200, extraprec=120) if len(q1) > 1 else []
    r2 = mp.polyroots(q2, maxsteps=200, extraprec=120) if len(q2) > 1 else []
    best = None
    for x in r1:
        for y in r2:
            d = abs(x - y)
            if best is None or d < best[0]:
                best = (d, x, y)
    if best is None or best[0] > 1e-12:
        raise DegenerateChangeError("no matching fiber root")
    matches = [x for x in r1 for y in r2 if abs(x - y) <= 1e-12]
    if len(matches) > 1:
        for m1 in matches:
            for m2 in matches:
                if m1 is not m2 and abs(m1 - m2) > 1e-10:
                    raise DegenerateChangeError(
                        "two intersections share an abscissa")
    return complex(best[1])


def _poly_at_numeric(a: MPoly, alpha):
    with mp.workdps(50):
        al = mp.mpc(alpha)
        cs = a.as_univariate(1)
        vals = []
        for c in cs:
            v = mp.mpc(0)
            for (e,), coeff in c.terms.items():
                v += mp.mpc(str(coeff.re), str(coeff.im)) * al ** e
            vals.append(v)
        while vals and abs(vals[-1]) < mp.mpf(10) ** (-40):
            vals.pop()
        return list(reversed(vals))


def _bivariate_common_zero(f: MPoly, g: MPoly, witness: MPoly) -> bool:
    """Does {f = g = 0} meet {witness = 0} in the affine chart?  Exact-first."""
    res = resultant_bivariate(f, g, elim=1)
    if res.is_zero():
        shared = biv_gcd(f, g)
        res2 = resultant_bivariate(shared, witness, elim=1)
        if res2.is_zero():
            return True  # a whole common curve inside the witness locus
        return _candidates_hit(shared, witness, witness, res2)
    return _candidates_hit(f, g, witness, res)


def _candidates_hit(f, g, witness, eliminant: Poly) -> bool:
    for factor, _ in squarefree_decomposition(eliminant):
        ex, nu = exact_roots(factor)
        for alpha in ex:
            gv = poly_gcd(_specialize_u(f, alpha), _specialize_u(g, alpha))
            if gv.degree < 1:
                continue
            for beta in exact_roots(gv)[0]:
                if witness.eval_exact([alpha, beta]).is_zero():
                    return True
            _, nroots = exact_roots(gv)
            for beta in nroots:
                w = witness.eval_complex([complex(alpha.to_complex()),
                                          complex(beta)])
                if abs(w) < 1e-10:
                    return True
        for alpha in nu:
            try:
                beta = _common_v_numeric(f, g, alpha)
            except DegenerateChangeError:
                continue
            w = witness.eval_complex([complex(alpha), beta])
            if abs(w) < 1e-10:
                return True
    return False


# ---------------------------------------------------------------------------
# normal crossings
# ---------------------------------------------------------------------------

@dataclass
class CrossingsReport:
    passed: bool
    smooth: list
    pairwise: list
    triple_points: list

    def to_json(self):
        return {"pass": self.passed, "smooth": self.smooth,
                "pairwise": self.pairwise,
                "triple_points": [p.to_json() for p in self.triple_points]}


def normal_crossings(conf: Configuration, seed: int = 0) -> CrossingsReport:
    """Smooth components, transversal pairwise meetings, no triple points."""
    smooth = [c.is_smooth() for c in conf.curves]
    pairwise = []
    points = {}
    for i in range(3):
        for j in range(i + 1, 3):
            pts = intersection_points(conf.curves[i], conf.curves[j], seed=seed)
            points[(i, j)] = pts
            worst = max(m for _, m in pts)
            pairwise.append({
                "pair": [i, j],
                "bezout_total": sum(m for _, m in pts),
                "transversal": worst == 1,
                "worst_multiplicity": worst,
            })
    triples = []
    for (pt, _m) in points[(0, 1)]:
        if pt.exact:
            if conf.curves[2].eval_exact(pt.coords).is_zero():
                triples.append(pt)
        else:
            val = conf.curves[2].poly.eval_complex(
                [complex(c) for c in pt.coords])
            if abs(val) < 1e-9:
                triples.append(pt)
    passed = all(smooth) and all(p["transversal"] for p in pairwise) \
        and not triples
    return CrossingsReport(passed, smooth, pairwise, triples)


# ---------------------------------------------------------------------------
# two-puncture case engine
# ---------------------------------------------------------------------------

def eq_star(d0: int, m_p: int, m_q: int) -> bool:
    """The multiplicity window singular curves leave open."""
    return (m_p < d0 and m_q < d0) or (d0 == 1 and m_p == 1 and m_q == 1)


def fulton_bound(d0: int, m_p: int, m_q: int) -> bool:
    return m_p * (m_p - 1) + m_q * (m_q - 1) <= (d0 - 1) * (d0 - 2)


@dataclass
class CaseVerdict:
    d0: int
    pattern: str
    tangency: str
    verdict: str              # "impossible" | "survivor"
    certificate: dict = field(default_factory=dict)

    def to_json(self):
        return {"d0": self.d0, "pattern": self.pattern,
                "tangency": self.tangency, "verdict": self.verdict,
                "certificate": dict(self.certificate)}


def two_puncture_case_engine(degrees, d0_max: int):
    """Enumerate every two-puncture meeting pattern up to degree d0_max.

    Patterns: the curve A meets the configuration in exactly two points P, Q;
    P sits on two components.  Either Q sits on the remaining component only,
    or Q sits on a second crossing sharing one component with P.  Transversal
    single-point meetings force m = d_component * d0; a two-point transversal
    split on the shared component forces m_P + m_Q = d_shared * d0.  Each
    branch is closed off by the multiplicity window or survives.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != 3 or min(degrees) < 2 or max(degrees) < 3:
        raise PlaneConfError(
            "engine expects three degrees, all >= 2 with at least one >= 3")
    verdicts = []
    for d0 in range(1, d0_max + 1):
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            pattern = f"P in C{i + 1} and C{j + 1}; Q in C{k + 1} only"
            # at a normal crossing A is tangent to at most one branch, so at
            # least one of C_i, C_j meets A transversally, entirely at P
            for tangent in (None, i, j):
                trans = j if tangent == i else i
                m_p = degrees[trans] * d0
                cert = {
                    "equation": f"m_P = I(P, A.C{trans + 1}) = "
                                f"{degrees[trans]}*{d0} = {m_p}",
                    "eq_star_holds": eq_star(d0, m_p, 1),
                    "fulton_with_mQ_1": fulton_bound(d0, m_p, 1),
                    "m_P": m_p, "m_Q_free": True,
                }
                tag = f"A tangent to C{tangent + 1} at P" if tangent is not None \
                    else "A transversal at P"
                verdicts.append(CaseVerdict(
                    d0, pattern, tag,
                    "survivor" if eq_star(d0, m_p, 1) and m_p == 1
                    else "impossible", cert))
        for shared in (0, 1, 2):
            others = [x for x in (0, 1, 2) if x != shared]
            i, k = others
            pattern = (f"P in C{i + 1} and C{shared + 1}; "
                       f"Q in C{shared + 1} and C{k + 1}")
            for tang_i in (False, True):
                for tang_k in (False, True):
                    tag = (f"tangent to C{i + 1} at P: {tang_i}; "
                           f"tangent to C{k + 1} at Q: {tang_k}")
                    if not tang_i:
                        m_p = degrees[i] * d0
                        cert = {"equation": f"m_P = {degrees[i]}*{d0} = {m_p}",
                                "eq_star_holds": eq_star(d0, m_p, 1),
                                "m_P": m_p}
                        verdicts.append(CaseVerdict(
                            d0, pattern, tag,
                            "survivor" if eq_star(d0, m_p, 1) and m_p == 1
                            else "impossible", cert))
                        continue
                    if not tang_k:
                        m_q = degrees[k] * d0
                        cert = {"equation": f"m_Q = {degrees[k]}*{d0} = {m_q}",
                                "eq_star_holds": eq_star(d0, 1, m_q),
                                "m_Q": m_q}
                        verdicts.append(CaseVerdict(
                            d0, pattern, tag,
                            "survivor" if eq_star(d0, 1, m_q) and m_q == 1
                            else "impossible", cert))
                        continue
                    # tangent to both outer components: the shared component
                    # is transversal at P and Q, so m_P + m_Q = d_shared * d0
                    ds = degrees[shared]
                    split = ds * d0
                    solutions = [(mp_, split - mp_)
                                 for mp_ in range(1, split)
                                 if eq_star(d0, mp_, split - mp_)]
                    cert = {"equation": f"m_P + m_Q = {ds}*{d0} = {split}",
                            "window_solutions": solutions}
                    if solutions:
                        cert["shared_degree"] = ds
                        verdicts.append(CaseVerdict(
                            d0, pattern, tag, "survivor", cert))
                    else:
                        cert["reason"] = ("no multiplicity split satisfies "
                                          "the window")
                        verdicts.append(CaseVerdict(
                            d0, pattern, tag, "impossible", cert))
    return verdicts


def surviving_cases(verdicts):
    return [v for v in verdicts if v.verdict == "survivor"]


# ---------------------------------------------------------------------------
# total tangent lines and the quadric exclusion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TangentLine:
    dual: tuple               # line coefficients, CRat or complex triple
    point: ProjPoint          # the single contact point
    exact: bool

    def same_line(self, other: "TangentLine", tol: float = 1e-9) -> bool:
        if self.exact and other.exact:
            for i in range(3):
                for j in range(i + 1, 3):
                    if not (self.dual[i] * other.dual[j]
                            - self.dual[j] * other.dual[i]).is_zero():
                        return False
            return True
        a = [c.to_complex() if hasattr(c, "to_complex") else complex(c)
             for c in self.dual]
        b = [c.to_complex() if hasattr(c, "to_complex") else complex(c)
             for c in other.dual]
        na = max(abs(x) for x in a)
        nb = max(abs(x) for x in b)
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(a[i] * b[j] - a[j] * b[i]) > tol * na * nb:
                    return False
        return True

    def to_json(self):
        if self.exact:
            dual = [c.to_json() for c in self.dual]
        else:
            dual = [[c.real, c.imag] for c in self.dual]
        return {"dual": dual, "exact": self.exact,
                "point": self.point.to_json()}


_CHARTS = (
    # (dual vector builder, two points spanning the line)
    (lambda l, m: (CRat(1), l, m),
     lambda l, m: ((-l, CRat(1), CRat(0)), (-m, CRat(0), CRat(1)))),
    (lambda l, m: (l, CRat(1), m),
     lambda l, m: ((CRat(1), -l, CRat(0)), (CRat(0), -m, CRat(1)))),
    (lambda l, m: (l, m, CRat(1)),
     lambda l, m: ((CRat(1), CRat(0), -l), (CRat(0), CRat(1), -m))),
)


def _compose_on_line(curve_poly: MPoly, p1, p2):
    """Binary-form coefficients of the restriction to the line span(p1, p2).

    p1, p2 have entries in MPoly(2) over the dual chart parameters; returns
    the list a_q (q = power of the first line parameter) of MPoly(2).
    """
    zero2 = MPoly(2)
    one2 = MPoly.monomial(2, (0, 0), CRat(1))
    d = curve_poly.total_degree()
    out = [zero2 for _ in range(d + 1)]
    # phi_c(s, t) = p1[c] * s + p2[c] * t; expand curve(phi) by monomial
    for e, c in curve_poly.iter_sorted():
        # product over coordinates of (p1_c s + p2_c t)^{e_c}
        # maintained as a list over powers of s of MPoly(2) coefficients
        acc = [one2.scale(c)]
        for coord in range(3):
            for _ in range(e[coord]):
                nxt = [zero2] * (len(acc) + 1)
                for q, a in enumerate(acc):
                    if a.is_zero():
                        continue
                    nxt[q + 1] = nxt[q + 1] + a * p1[coord]
                    nxt[q] = nxt[q] + a * p2[coord]
                acc = nxt
        for q, a in enumerate(acc):
            out[q] = out[q] + a
    return out


def _lambda_mu_mpolys():
    lam = MPoly.monomial(2, (1, 0), CRat(1))
    mu = MPoly.monomial(2, (0, 1), CRat(1))
    return lam, mu


def total_tangent_lines(curve: PlaneCurve):
    """All lines meeting the curve in a single point (full multiplicity).

    Supported for degrees 2..4 (the rank-one system is solved by pairwise
    resultants with exact verification; candidates found only numerically
    are kept and flagged inexact).
    """
    d = curve.degree
    if d < 2:
        raise UnsupportedDegreeError("total tangency needs degree >= 2")
    if d > 4:
        raise UnsupportedDegreeError(
            f"total-tangent search unsupported at degree {d} (cap 4)")
    lam, mu = _lambda_mu_mpolys()
    found = []
    for dual_of, points_of in _CHARTS:
        p1m, p2m = points_of(lam, mu)
        p1 = [x if isinstance(x, MPoly) else MPoly.monomial(2, (0, 0), x)
              for x in p1m]
        p2 = [x if isinstance(x, MPoly) else MPoly.monomial(2, (0, 0), x)
              for x in p2m]
        avec = _compose_on_line(curve.poly, p1, p2)
        bvec = [a.scale(Fraction(1, _BINOM[d][q])) for q, a in enumerate(avec)]
        minors = []
        for q in range(d):
            for r_ in range(q + 1, d):
                mqr = bvec[q] * bvec[r_ + 1] - bvec[r_] * bvec[q + 1]
                if not mqr.is_zero():
                    minors.append(mqr)
        if not minors:
            raise PlaneConfError(
                "every line is a total tangent: degenerate curve")
        sols = _solve_rank_one(minors)
        for lam0, mu0, is_exact in sols:
            tl = _build_tangent_line(curve, dual_of, points_of, lam0, mu0,
                                     is_exact)
            if tl is None:
                continue
            if not any(tl.same_line(t) for t in found):
                found.append(tl)
    return found


def _solve_rank_one(minors):
    """Common zeros of the minor system, exact-first, fully verified."""
    pairs = [(i, j) for i in range(len(minors)) for j in range(len(minors))
             if i < j]
    for i, j in pairs:
        g1, g2 = minors[i], minors[j]
        res = resultant_bivariate(g1, g2, elim=1)
        if res.is_zero():
            continue
        sols = []
        for factor, _ in squarefree_decomposition(res):
            exs, nus = exact_roots(factor)
            for lam0 in exs:
                q1, q2 = _specialize_u(g1, lam0), _specialize_u(g2, lam0)
                g = poly_gcd(q1, q2) if (not q1.is_zero() and not q2.is_zero()) \
                    else (q2 if q1.is_zero() else q1)
                if g.degree < 1:
                    continue
                mu_ex, mu_nu = exact_roots(g)
                for mu0 in mu_ex:
                    if all(m.eval_exact([lam0, mu0]).is_zero() for m in minors):
                        sols.append((lam0, mu0, True))
                for mu0 in mu_nu:
                    if _minors_small(minors, complex(lam0.to_complex()),
                                     complex(mu0)):
                        sols.append((complex(lam0.to_complex()),
                                     complex(mu0), False))
            for lam0 in nus:
                try:
                    mu0 = _common_v_numeric(g1, g2, lam0)
                except DegenerateChangeError:
                    continue
                if _minors_small(minors, complex(lam0), mu0):
                    sols.append((complex(lam0), mu0, False))
        return sols
    raise PlaneConfError("rank-one system degenerate in every direction")


def _minors_small(minors, lam0, mu0, tol: float = 1e-10):
    scale = 1.0 + abs(lam0) + abs(mu0)
    return all(abs(m.eval_complex([lam0, mu0])) < tol * scale ** 8
               for m in minors)


def _build_tangent_line(curve, dual_of, points_of, lam0, mu0, is_exact):
    if is_exact:
        dual = dual_of(lam0, mu0)
        p1, p2 = points_of(lam0, mu0)
        avec = _restrict_exact(curve.poly, p1, p2)
        nz = [q for q, a in enumerate(avec) if not a.is_zero()]
        if not nz:
            return None  # line inside the curve: not a tangent line
        d = curve.degree
        bq = [avec[q] / _BINOM[d][q] for q in range(d + 1)]
        if all(b.is_zero() for b in bq[:-1]):
            s, t = CRat(0), CRat(1)
        else:
            if bq[0].is_zero():
                return None  # not a perfect power (rank check failed)
            rho = bq[1] / bq[0]
            s, t = CRat(1), -rho
        pt = tuple(s * a + t * b for a, b in zip(p1, p2))
        try:
            point = ProjPoint.from_exact(pt)
        except ValueError:
            return None
        return TangentLine(tuple(dual), point, True)
    # numeric candidate
    lamc, muc = complex(lam0), complex(mu0)
    dual = tuple(c.to_complex() if hasattr(c, "to_complex") else complex(c)
                 for c in dual_of(CRat(0), CRat(0)))
    # rebuild dual numerically: charts are affine, substitute directly
    dual = _dual_numeric(dual_of, lamc, muc)
    p1n, p2n = _points_numeric(points_of, lamc, muc)
    avec = _restrict_numeric(curve.poly, p1n, p2n)
    d = curve.degree
    bq = [avec[q] / _BINOM[d][q] for q in range(d + 1)]
    lead = max(abs(b) for b in bq)
    if lead == 0:
        return None
    if all(abs(b) < 1e-18 * lead for b in bq[:-1]):
        s, t = 0.0, 1.0
    else:
        if abs(bq[0]) < 1e-18 * lead:
            return None
        rho = bq[1] / bq[0]
        s, t = 1.0, -rho
    pt = tuple(s * a + t * b for a, b in zip(p1n, p2n))
    try:
        point = ProjPoint.from_numeric(pt)
    except ValueError:
        return None
    return TangentLine(dual, point, False)


def _restrict_exact(poly, p1, p2):
    d = poly.total_degree()
    out = [CRat(0)] * (d + 1)
    for e, c in poly.terms.items():
        acc = [c]
        for coord in range(3):
            for _ in range(e[coord]):
                nxt = [CRat(0)] * (len(acc) + 1)
                for q, a in enumerate(acc):
                    nxt[q + 1] = nxt[q + 1] + a * p1[coord]
                    nxt[q] = nxt[q] + a * p2[coord]
                acc = nxt
        for q, a in enumerate(acc):
            out[q] = out[q] + a
    return out


def _restrict_numeric(poly, p1, p2):
    d = poly.total_degree()
    out = [0j] * (d + 1)
    for e, c in poly.terms.items():
        acc = [c.to_complex()]
        for coord in range(3):
            for _ in range(e[coord]):
                nxt = [0j] * (len(acc) + 1)
                for q, a in enumerate(acc):
                    nxt[q + 1] += a * p1[coord]
                    nxt[q] += a * p2[coord]
                acc = nxt
        for q, a in enumerate(acc):
            out[q] += a
    return out


def _dual_numeric(dual_of, lamc, muc):
    probe = dual_of(CRat(0), CRat(0))
    out = []
    for base, dl, dm in zip(probe,
                            dual_of(CRat(1), CRat(0)),
                            dual_of(CRat(0), CRat(1))):
        b = base.to_complex()
        out.append(b + (dl.to_complex() - b) * lamc + (dm.to_complex() - b) * muc)
    return tuple(out)


def _points_numeric(points_of, lamc, muc):
    p1r, p2r = points_of(CRat(0), CRat(0))
    p1l, p2l = points_of(CRat(1), CRat(0))
    p1m, p2m = points_of(CRat(0), CRat(1))

    def mix(base, at_l, at_m):
        return tuple(b.to_complex()
                     + (l.to_complex() - b.to_complex()) * lamc
                     + (m.to_complex() - b.to_complex()) * muc
                     for b, l, m in zip(base, at_l, at_m))

    return mix(p1r, p1l, p1m), mix(p2r, p2l, p2m)


@dataclass
class ExclusionReport:
    vacuous: bool
    passed: bool
    candidates: int
    violations: list
    notes: list = field(default_factory=list)

    def to_json(self):
        return {"vacuous": self.vacuous, "pass": self.passed,
                "candidates": self.candidates,
                "violations": [v for v in self.violations],
                "notes": list(self.notes)}


def quadric_line_exclusion(conf: Configuration) -> ExclusionReport:
    """Search for the excluded line when exactly one component is a quadric.

    A violating line meets each non-quadric component in one point (total
    tangency) and meets the quadric exactly in those two contact points.
    """
    quadrics = [i for i, c in enumerate(conf.curves) if c.degree == 2]
    if len(quadrics) != 1:
        return ExclusionReport(True, True, 0, [],
                               ["number of quadrics != 1: vacuous"])
    qi = quadrics[0]
    quadric = conf.curves[qi]
    others = [c for i, c in enumerate(conf.curves) if i != qi]
    for c in others:
        if c.degree > 4:
            raise UnsupportedDegreeError(
                f"component degree {c.degree} beyond the search cap 4")
    notes = []
    line_curves = [c for c in others if c.degree == 1]
    heavy = [c for c in others if c.degree >= 3]
    if len(line_curves) == 2:
        raise UnsupportedDegreeError(
            "two line components: the candidate family is not finite")
    tangent_sets = [total_tangent_lines(c) for c in heavy]
    violations = []
    candidates = 0
    if len(heavy) == 2:
        for t1 in tangent_sets[0]:
            for t2 in tangent_sets[1]:
                if not t1.same_line(t2):
                    continue
                candidates += 1
                v = _check_quadric_condition(quadric, t1, t2.point)
                if v is not None:
                    violations.append(v)
    else:
        # one line component: every total tangent of the heavy component
        # meets the line component once automatically
        line_curve = line_curves[0]
        for t1 in tangent_sets[0]:
            other_pt = _line_line_meet(t1, line_curve)
            if other_pt is None:
                notes.append("candidate equals the line component: skipped")
                continue
            candidates += 1
            v = _check_quadric_condition(quadric, t1, other_pt)
            if v is not None:
                violations.append(v)
    return ExclusionReport(False, not violations, candidates, violations, notes)


def _line_line_meet(tl: TangentLine, line_curve: PlaneCurve):
    lc = [CRat(0)] * 3
    for e, c in line_curve.poly.terms.items():
        lc[e.index(1)] = c
    if tl.exact:
        cross = (tl.dual[1] * lc[2] - tl.dual[2] * lc[1],
                 tl.dual[2] * lc[0] - tl.dual[0] * lc[2],
                 tl.dual[0] * lc[1] - tl.dual[1] * lc[0])
        if all(c.is_zero() for c in cross):
            return None
        return ProjPoint.from_exact(cross)
    a = [c.to_complex() if hasattr(c, "to_complex") else complex(c)
         for c in tl.dual]
    b = [c.to_complex() for c in lc]
    cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
             a[0] * b[1] - a[1] * b[0])
    if max(abs(c) for c in cross) < 1e-12:
        return None
    return ProjPoint.from_numeric(cross)


def _check_quadric_condition(quadric: PlaneCurve, tline: TangentLine,
                             other_point: ProjPoint):
    """Violation record if the quadric meets the line exactly at the two
    contact points (which must be distinct)."""
    p, q = tline.point, other_point
    if p.same_as(q):
        return None
    if p.exact and q.exact and tline.exact:
        if quadric.eval_exact(p.coords).is_zero() and \
                quadric.eval_exact(q.coords).is_zero():
            return {"line": tline.to_json(), "P": p.to_json(),
                    "Q": q.to_json(), "exact": True}
        return None
    pv = quadric.poly.eval_complex([complex(c.to_complex())
                                    if hasattr(c, "to_complex") else complex(c)
                                    for c in p.coords])
    qv = quadric.poly.eval_complex([complex(c.to_complex())
                                    if hasattr(c, "to_complex") else complex(c)
                                    for c in q.coords])
    if abs(pv) < 1e-10 and abs(qv) < 1e-10:
        return {"line": tline.to_json(), "P": p.to_json(), "Q": q.to_json(),
                "exact": False}
    return None
