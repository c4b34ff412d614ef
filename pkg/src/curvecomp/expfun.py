"""Exact algebra and identity testing for exponential polynomials.

An :class:`ExpPoly` is a finite sum of terms

    q(x) * exp(c) * exp(P(x))

with q, P polynomials over the Gaussian rationals and c an exact Gaussian
rational kept *symbolically* (exp(c) is irrational in general, so folding it
into q numerically would destroy exactness).  Canonical form:

* every exponent polynomial P has zero constant term (constants are moved
  into the symbolic tag c),
* the pairs (P, c) are pairwise distinct and sorted,
* no term has a zero coefficient polynomial.

Because exponentials of distinct polynomials with algebraic data are
linearly independent over the algebraic numbers, a canonical ExpPoly is the
zero function iff it has no terms; ``is_zero`` is therefore an exact
syntactic check.

All values are immutable; operations are pure functions.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .polys import Poly, as_crat
from .scalars import CRat


class EvalOverflowError(ArithmeticError):
    """A term's exponent exceeds the floating-point range at the point."""


class ExpTermRec:
    """One canonical term q(x)*exp(c)*exp(P(x)); P has zero constant term."""

    __slots__ = ("coeff", "expo", "expconst")

    def __init__(self, coeff: Poly, expo: Poly, expconst: CRat):
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "expo", expo)
        object.__setattr__(self, "expconst", expconst)

    def __setattr__(self, *a):
        raise AttributeError("term is immutable")

    def key(self):
        return (self.expo.sort_key(), self.expconst.sort_key())

    def __eq__(self, other):
        return (self.coeff, self.expo, self.expconst) == \
            (other.coeff, other.expo, other.expconst)

    def __hash__(self):
        return hash((self.coeff, self.expo, self.expconst))


class ExpPoly:
    """Canonical finite sum of q_k(x) * exp(c_k + P_k(x))."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        """Build from (coeff, expo[, expconst]) triples; canonicalizes."""
        merged: dict = {}
        for t in terms:
            if isinstance(t, ExpTermRec):
                coeff, expo, const = t.coeff, t.expo, t.expconst
            else:
                coeff, expo = t[0], t[1]
                const = t[2] if len(t) > 2 else CRat(0)
            if not isinstance(coeff, Poly):
                coeff = Poly([coeff])
            if not isinstance(expo, Poly):
                expo = Poly(expo)
            const = as_crat(const) + expo.constant()
            expo = expo.drop_constant()
            if coeff.is_zero():
                continue
            k = (expo, const)
            merged[k] = merged[k] + coeff if k in merged else coeff
        rec = []
        for (expo, const), coeff in merged.items():
            if not coeff.is_zero():
                rec.append(ExpTermRec(coeff, expo, const))
        rec.sort(key=ExpTermRec.key)
        object.__setattr__(self, "terms", tuple(rec))

    def __setattr__(self, *a):
        raise AttributeError("ExpPoly is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "ExpPoly":
        return cls([(Poly([as_crat(c)]), Poly())])

    @classmethod
    def from_poly(cls, p: Poly) -> "ExpPoly":
        return cls([(p, Poly())])

    @classmethod
    def exp_of(cls, p, coeff=1) -> "ExpPoly":
        """coeff * exp(p) for a polynomial exponent p."""
        if not isinstance(p, Poly):
            p = Poly(p)
        return cls([(Poly([as_crat(coeff)]), p)])

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        """Exact identity test: zero iff no canonical terms survive."""
        return not self.terms

    def is_polynomial(self) -> bool:
        """True iff every term has trivial exponential part."""
        return all(t.expo.is_zero() for t in self.terms)

    def polynomial_part(self) -> Poly:
        """The terms with trivial exponent, as a plain polynomial.

        Only meaningful when the exponent constants are zero too; used by
        the rational-growth test after checking :meth:`is_polynomial`.
        """
        out = Poly()
        for t in self.terms:
            if t.expo.is_zero() and t.expconst.is_zero():
                out = out + t.coeff
        return out

    def max_exp_degree(self) -> int:
        return max((t.expo.degree for t in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    # -- algebra -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return ExpPoly(self.terms + other.terms)

    def __neg__(self):
        return ExpPoly([(-t.coeff, t.expo, t.expconst) for t in self.terms])

    def __sub__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            return self.scale(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        out = []
        for a in self.terms:
            for b in other.terms:
                out.append((a.coeff * b.coeff, a.expo + b.expo,
                            a.expconst + b.expconst))
        return ExpPoly(out)

    __rmul__ = __mul__

    def scale(self, s) -> "ExpPoly":
        s = as_crat(s)
        return ExpPoly([(t.coeff.scale(s), t.expo, t.expconst)
                        for t in self.terms])

    def mul_poly(self, p: Poly) -> "ExpPoly":
        return ExpPoly([(t.coeff * p, t.expo, t.expconst) for t in self.terms])

    def __pow__(self, k: int):
        out, base = ExpPoly.constant(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def differentiate(self) -> "ExpPoly":
        """Exact derivative: (q e^P)' = (q' + q P') e^P."""
        out = []
        for t in self.terms:
            out.append((t.coeff.derivative() + t.coeff * t.expo.derivative(),
                        t.expo, t.expconst))
        return ExpPoly(out)

    # -- evaluation ----------------------------------------------------------
    def eval_scaled(self, z: complex):
        """Return (v, s) with f(z) = v * exp(s), s real.

        The scale s is the largest real part among the term exponents, so v
        never overflows; this is the evaluation every growth functional
        uses (only log|f| or arg f is ever needed).
        """
        if not self.terms:
            return 0j, 0.0
        ws = []
        for t in self.terms:
            w = t.expconst.to_complex() + t.expo.eval_complex(z)
            ws.append(w)
        s = max(w.real for w in ws)
        v = 0j
        for t, w in zip(self.terms, ws):
            e = w - s
            if e.real < -745.0:
                continue
            v += t.coeff.eval_complex(z) * cmath.exp(e)
        return v, s

    def evaluate(self, z: complex) -> complex:
        """Plain complex value; raises EvalOverflowError out of float range."""
        v, s = self.eval_scaled(z)
        if v == 0:
            return 0j
        mag = s + math.log(abs(v))
        if mag > 700.0:
            raise EvalOverflowError(
                f"|value| ~ exp({mag:.3g}) exceeds the floating range at {z}")
        return v * math.exp(s)

    # -- serialization ---------------------------------------------------------
    def to_json(self):
        return [{"coeff": t.coeff.to_json(),
                 "exp": t.expo.to_json(),
                 "expconst": t.expconst.to_json()} for t in self.terms]

    @classmethod
    def from_json(cls, data) -> "ExpPoly":
        terms = []
        for t in data:
            coeff = Poly.from_json(t["coeff"])
            expo = Poly.from_json(t.get("exp", []))
            const = CRat.from_json(t["expconst"]) if "expconst" in t else CRat(0)
            terms.append((coeff, expo, const))
        return cls(terms)

    def __repr__(self):
        if not self.terms:
            return "ExpPoly(0)"
        bits = []
        for t in self.terms:
            b = f"({t.coeff!r})"
            if not t.expconst.is_zero():
                b += f"*exp({t.expconst})"
            if not t.expo.is_zero():
                b += f"*exp({t.expo!r})"
            bits.append(b)
        return " + ".join(bits)


def combine(op: str, f: ExpPoly, g) -> ExpPoly:
    """Dispatch add/multiply/scale by name (the CLI entry point)."""
    if op == "add":
        return f + g
    if op == "multiply":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown combine op {op!r} (want add|multiply|scale)")
