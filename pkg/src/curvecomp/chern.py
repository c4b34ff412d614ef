"""Logarithmic Chern numbers of complete-intersection surfaces carrying a
three-component curve, and the degeneracy/hyperbolicity classifiers.

A surface is cut out of P_{r+2} by hypersurfaces of degrees a_1..a_r (the
projective plane itself is encoded by the device r=1, a=[1]); the three
curve components are transversal hypersurface sections of degrees b_1,b_2,b_3.
Everything here is exact integer arithmetic; no floating point enters.

Whether Pic = Z holds, or whether the ambient hypersurface is generic in the
Noether-Lefschetz sense, cannot be computed from degree data; both enter only
as caller-supplied hypothesis flags.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement


class InvalidDegreeError(ValueError):
    pass


@dataclass(frozen=True)
class CIData:
    """Degrees of a complete-intersection surface with a 3-component curve.

    `a` empty means the plane; it is normalized to the single degree-1
    hypersurface presentation so every formula below has one code path.
    """

    a: tuple
    b: tuple

    def __init__(self, a, b):
        a = tuple(int(x) for x in a)
        if not a:
            a = (1,)
        b = tuple(int(x) for x in b)
        if len(b) != 3:
            raise InvalidDegreeError("exactly three curve degrees required")
        if any(x < 1 for x in a) or any(x < 1 for x in b):
            raise InvalidDegreeError("all degrees must be >= 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def A(self) -> int:
        out = 1
        for x in self.a:
            out *= x
        return out

    @property
    def a_sum(self) -> int:
        return sum(self.a)

    @property
    def b_sum(self) -> int:
        return sum(self.b)

    def is_plane(self) -> bool:
        return all(x == 1 for x in self.a)


@dataclass(frozen=True)
class LogChernReport:
    euler_surface: int
    euler_components: tuple
    euler_C: int
    gamma_sq: int
    c1sq_minus_c2: int
    det_estar_degree: int
    pairwise_intersections: tuple

    def __post_init__(self):
        ident = self.gamma_sq - self.euler_surface + self.euler_C
        if ident != self.c1sq_minus_c2:
            raise AssertionError(
                f"internal identity broken: {self.c1sq_minus_c2} != {ident}")

    def to_json(self):
        return {
            "euler_surface": self.euler_surface,
            "euler_components": list(self.euler_components),
            "euler_C": self.euler_C,
            "gamma_sq": self.gamma_sq,
            "c1sq_minus_c2": self.c1sq_minus_c2,
            "det_estar_degree": self.det_estar_degree,
            "pairwise_intersections": list(self.pairwise_intersections),
        }


@dataclass
class TheoremVerdict:
    condition_i_pic: bool
    condition_ii: bool
    condition_iii: bool
    main2_case: str = "none"
    mt_applicable: bool = False
    notes: list = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return self.condition_i_pic and self.condition_ii and self.condition_iii

    def to_json(self):
        return {
            "condition_i_pic": self.condition_i_pic,
            "condition_ii": self.condition_ii,
            "condition_iii": self.condition_iii,
            "main2_case": self.main2_case,
            "mt_applicable": self.mt_applicable,
            "applicable": self.applicable,
            "notes": list(self.notes),
        }


def invariants(ci: CIData) -> LogChernReport:
    """All surface/curve invariants derived from the degree data, exactly."""
    A, a, r = ci.A, ci.a_sum, ci.r
    b1, b2, b3 = ci.b
    b = ci.b_sum
    e_surface = A * (2 + (a - r - 1) ** 2)
    e_comp = tuple(A * bj * (3 + r - a - bj) for bj in ci.b)
    pairwise = (A * b1 * b2, A * b1 * b3, A * b2 * b3)
    e_C = sum(e_comp) - sum(pairwise)
    gamma_sq = A * (a + b - r - 3) ** 2
    c1sq_minus_c2 = A * ((a - r - 3) * (b - 4) - 6 + (b1 * b2 + b1 * b3 + b2 * b3))
    det_deg = a + b - 3 - r
    return LogChernReport(
        euler_surface=e_surface,
        euler_components=e_comp,
        euler_C=e_C,
        gamma_sq=gamma_sq,
        c1sq_minus_c2=c1sq_minus_c2,
        det_estar_degree=det_deg,
        pairwise_intersections=pairwise,
    )


def theorem_main_check(ci: CIData, pic_is_Z: bool) -> TheoremVerdict:
    """Degeneracy criterion from the Chern-number and determinant conditions."""
    a, r, b = ci.a_sum, ci.r, ci.b_sum
    b1, b2, b3 = ci.b
    cond_ii = (a - r - 3) * (b - 4) + (b1 * b2 + b1 * b3 + b2 * b3) > 6
    cond_iii = a + b >= r + 3
    v = TheoremVerdict(condition_i_pic=bool(pic_is_Z),
                       condition_ii=cond_ii, condition_iii=cond_iii)
    if a + b == r + 3:
        # determinant bundle has degree zero here; effectivity is only
        # guaranteed by triviality, so flag the edge rather than decide it
        v.notes.append("degree of det(E*) is zero: borderline effectivity")
    if not cond_ii and (a - r - 3) * (b - 4) + (b1 * b2 + b1 * b3 + b2 * b3) == 6:
        v.notes.append("Chern-number criterion met with equality: borderline")
    return v


def classify_main2(ci: CIData, pic_is_Z: bool = False,
                   generic_NL: bool = False) -> TheoremVerdict:
    """Which (if any) of the three ready-made degeneracy cases applies.

    a) Pic = Z surfaces with a >= r+3 and total curve degree >= 5;
    b) generic hypersurfaces in P_3 of degree >= 4 with curve degree >= 5;
    c) the plane, with either all b_j >= 2 and one >= 3, or (sorted)
       b = (1, x, y) with x >= 3 and y >= 4.
    """
    v = theorem_main_check(ci, pic_is_Z)
    a, r, b = ci.a_sum, ci.r, ci.b_sum
    case = "none"
    if ci.is_plane():
        bs = sorted(ci.b)
        if bs[0] >= 2 and bs[2] >= 3:
            case = "c"
        elif bs[0] == 1 and bs[1] >= 3 and bs[2] >= 4:
            case = "c"
    if case == "none" and pic_is_Z and a >= r + 3 and b >= 5:
        case = "a"
    if case == "none" and r == 1 and generic_NL and ci.a[0] >= 4 and b >= 5:
        case = "b"
    v.main2_case = case
    if case == "c" and not ci.is_plane():
        raise AssertionError("case c is reserved for the plane")
    bs = sorted(ci.b)
    v.mt_applicable = ci.is_plane() and bs[0] >= 2 and bs[2] >= 3
    return v


def identity_check_main2c(b) -> bool:
    """Verify the two expansions of the plane Chern-number expression.

    Returns True when all three agree; on mismatch (which would indicate a
    broken build, not bad input) returns False and the caller can inspect
    :func:`identity_values_main2c`.
    """
    v0, v1, v2 = identity_values_main2c(b)
    return v0 == v1 == v2


def identity_values_main2c(b):
    b1, b2, b3 = (int(x) for x in b)
    s = b1 + b2 + b3
    direct = -3 * (s - 4) - 6 + (b1 * b2 + b1 * b3 + b2 * b3)
    exp1 = ((b1 - 2) * (b2 - 2) + (b1 - 2) * (b3 - 2) + (b2 - 2) * (b3 - 2)
            + s - 6)
    exp2 = ((b1 - 1) * (b2 - 1) + (b1 - 1) * (b3 - 2) + (b2 - 3) * (b3 - 4)
            + (2 * b2 + b3) - 9)
    return direct, exp1, exp2


def enumerate_configs(a, b_max: int, pic_is_Z: bool = False,
                      generic_NL: bool = False):
    """All sorted degree triples up to b_max with invariants and verdicts.

    Rows come back lexicographically sorted; each row is JSON-ready.
    """
    if b_max < 3:
        raise InvalidDegreeError("b_max must be at least 3")
    rows = []
    for b in combinations_with_replacement(range(1, b_max + 1), 3):
        ci = CIData(a, b)
        rep = invariants(ci)
        verdict = classify_main2(ci, pic_is_Z=pic_is_Z, generic_NL=generic_NL)
        rows.append({
            "b1": b[0], "b2": b[1], "b3": b[2],
            "invariants": rep.to_json(),
            "verdict": verdict.to_json(),
            "c1sq_minus_c2": rep.c1sq_minus_c2,
            "det_deg": rep.det_estar_degree,
            "case": verdict.main2_case,
        })
    return rows


def golden_csv_lines(rows):
    """The frozen golden-table format: b1,b2,b3,c1sq_minus_c2,det_deg,case."""
    out = ["b1,b2,b3,c1sq_minus_c2,det_deg,case"]
    for row in rows:
        out.append(f"{row['b1']},{row['b2']},{row['b3']},"
                   f"{row['c1sq_minus_c2']},{row['det_deg']},{row['case']}")
    return out
