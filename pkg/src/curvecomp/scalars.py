"""Exact scalar arithmetic.

Two scalar types are provided:

* ``CRat`` -- Gaussian rationals a + b*i with a, b arbitrary-precision
  ``Fraction``.  This is the coefficient field for almost everything in the
  package: exponential polynomials, divisors, plane curves.

* ``CycNum`` -- elements of the cyclotomic field Q(zeta_L), represented as
  polynomials in zeta of degree < phi(L) reduced modulo the L-th cyclotomic
  polynomial.  Only the covering module needs these (deck transformations
  rotate a coordinate by an exact root of unity).  Taking L = lcm(4, b)
  embeds both i and the b-th roots of unity into one field, so arithmetic
  never leaves exact ground.

Both types are immutable and hashable and expose the same small interface
(`is_zero`, `inverse`, arithmetic operators, `to_complex`), so the generic
polynomial layer in :mod:`curvecomp.polys` works over either.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


class CRat:
    """Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, CRat):
            if im:
                raise TypeError("cannot combine CRat with an imaginary part")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("CRat is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_json(cls, quad) -> "CRat":
        """Parse ``[re_num, re_den, im_num, im_den]`` (or ``[num, den]``)."""
        if len(quad) == 2:
            return cls(Fraction(int(quad[0]), int(quad[1])))
        if len(quad) == 4:
            return cls(Fraction(int(quad[0]), int(quad[1])),
                       Fraction(int(quad[2]), int(quad[3])))
        raise ValueError(f"expected [n,d] or [re_n,re_d,im_n,im_d], got {quad!r}")

    def to_json(self) -> list:
        return [self.re.numerator, self.re.denominator,
                self.im.numerator, self.im.denominator]

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_rational(self) -> bool:
        return not self.im

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, CRat):
            return other
        if isinstance(other, (int, Fraction)):
            return CRat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRat(self.re * o.re - self.im * o.im,
                    self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "CRat":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero CRat")
        return CRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = CRat(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "CRat":
        return CRat(self.re, -self.im)

    # -- comparisons / hashing ----------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def sort_key(self):
        """Deterministic total ordering key (for canonical term orders)."""
        return (self.re, self.im)

    # -- conversions ---------------------------------------------------------
    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        if not self.im:
            return f"CRat({self.re})"
        return f"CRat({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


ZERO = CRat(0)
ONE = CRat(1)
I = CRat(0, 1)


def crat(re, im=0) -> CRat:
    return CRat(re, im)


# ---------------------------------------------------------------------------
# Cyclotomic field Q(zeta_L)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial, ascending."""
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by the product of Phi_d for proper divisors d
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _zx_div(num, list(cyclotomic_poly(d)))
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def _zx_div(num, den):
    """Exact division of integer polynomial lists (ascending)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def _euler_phi(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


class CycField:
    """The field Q(zeta_L); a factory/context for CycNum elements."""

    _cache: dict = {}

    def __new__(cls, order: int):
        if order in cls._cache:
            return cls._cache[order]
        self = super().__new__(cls)
        self.order = order
        self.degree = _euler_phi(order)
        self.modulus = [Fraction(c) for c in cyclotomic_poly(order)]
        cls._cache[order] = self
        return self

    def element(self, coeffs) -> "CycNum":
        vec = [Fraction(0)] * self.degree
        for k, c in enumerate(coeffs):
            c = _frac(c) if not isinstance(c, Fraction) else c
            if k < self.degree:
                vec[k] += c
            else:
                # reduce high powers through the modulus
                red = self._reduce_power(k)
                for j, rj in enumerate(red):
                    vec[j] += c * rj
        return CycNum(self, tuple(vec))

    @lru_cache(maxsize=None)
    def _reduce_power(self, k: int) -> tuple:
        """zeta^k as a length-`degree` coefficient vector."""
        k %= self.order
        if k < self.degree:
            vec = [Fraction(0)] * self.degree
            vec[k] = Fraction(1)
            return tuple(vec)
        # polynomial remainder of x^k modulo Phi_L
        poly = [Fraction(0)] * (k + 1)
        poly[k] = Fraction(1)
        return tuple(_qx_mod(poly, self.modulus, self.degree))

    def zero(self) -> "CycNum":
        return self.element([])

    def one(self) -> "CycNum":
        return self.element([1])

    def zeta(self, k: int = 1) -> "CycNum":
        return CycNum(self, self._reduce_power(k))

    def i_unit(self) -> "CycNum":
        if self.order % 4:
            raise ValueError(f"Q(zeta_{self.order}) does not contain i")
        return self.zeta(self.order // 4)

    def embed_crat(self, c: CRat) -> "CycNum":
        out = self.element([c.re])
        if c.im:
            out = out + self.element([c.im]) * self.i_unit()
        return out

    def __repr__(self):
        return f"CycField({self.order})"


def _qx_mod(poly, modulus, degree):
    poly = list(poly)
    dm = len(modulus) - 1
    lead = modulus[-1]
    for k in range(len(poly) - 1, dm - 1, -1):
        c = poly[k] / lead
        if c:
            for j in range(dm + 1):
                poly[k - dm + j] -= c * modulus[j]
        poly[k] = Fraction(0)
    out = poly[:degree]
    out += [Fraction(0)] * (degree - len(out))
    return out


class CycNum:
    """Element of Q(zeta_L): coefficient vector over the power basis."""

    __slots__ = ("field", "vec")

    def __init__(self, field: CycField, vec: tuple):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "vec", vec)

    def __setattr__(self, *a):
        raise AttributeError("CycNum is immutable")

    def is_zero(self) -> bool:
        return all(not c for c in self.vec)

    def _check(self, other):
        if isinstance(other, CycNum):
            if other.field is not self.field:
                raise ValueError("mixed cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        if isinstance(other, CRat):
            return self.field.embed_crat(other)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return CycNum(self.field, tuple(a + b for a, b in zip(self.vec, o.vec)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.field, tuple(-a for a in self.vec))

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.vec):
            if not a:
                continue
            for j, b in enumerate(o.vec):
                if b:
                    prod[i + j] += a * b
        return CycNum(self.field, tuple(_qx_mod(prod, self.field.modulus, d)))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero CycNum")
        # extended Euclid in Q[x] against the cyclotomic modulus
        a = list(self.vec)
        m = list(self.field.modulus)
        s0, s1 = [Fraction(1)], [Fraction(0)]
        r0, r1 = a, m

        def trim(p):
            while p and not p[-1]:
                p.pop()
            return p

        r0, r1 = trim(r0), trim(r1)
        while r1:
            q, r = _qx_divmod(r0, r1)
            r0, r1 = r1, trim(r)
            s0, s1 = s1, trim(_qx_sub(s0, _qx_mul(q, s1)))
        if len(r0) != 1:
            raise ArithmeticError("element not invertible (unexpected)")
        inv_lead = 1 / r0[0]
        vec = [c * inv_lead for c in s0]
        return CycNum(self.field,
                      tuple(_qx_mod(vec, self.field.modulus, self.field.degree)))

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self.vec == o.vec

    def __hash__(self):
        return hash((self.field.order, self.vec))

    def sort_key(self):
        return tuple(self.vec)

    def conjugate(self):
        raise NotImplementedError("conjugation unused for cyclotomic scalars")

    def to_complex(self) -> complex:
        L = self.field.order
        z = 0j
        for k, c in enumerate(self.vec):
            if c:
                ang = 2 * math.pi * k / L
                z += complex(c) * complex(math.cos(ang), math.sin(ang))
        return z

    def to_crat(self) -> CRat:
        """Express the element in Q(i) if possible, else raise ValueError."""
        # solve  self = a*1 + b*zeta^(L/4)  exactly over Q
        if self.field.order % 4:
            if all(not c for c in self.vec[1:]):
                return CRat(self.vec[0])
            raise ValueError("element is not a Gaussian rational")
        one = self.field.one().vec
        iu = self.field.i_unit().vec
        n = self.field.degree
        a = b = None
        # the two basis vectors have disjoint-or-matching support; solve by
        # Gaussian elimination on the 2-column system
        rows = [(one[k], iu[k], self.vec[k]) for k in range(n)]
        piv = [r for r in rows if r[0] or r[1]]
        for r1 in piv:
            for r2 in piv:
                det = r1[0] * r2[1] - r1[1] * r2[0]
                if det:
                    a = (r1[2] * r2[1] - r1[1] * r2[2]) / det
                    b = (r1[0] * r2[2] - r1[2] * r2[0]) / det
                    break
            if a is not None:
                break
        if a is None:  # rank-1 system
            r = piv[0]
            if r[0]:
                a, b = r[2] / r[0], Fraction(0)
            else:
                a, b = Fraction(0), r[2] / r[1]
        cand = self.field.element([a]) + self.field.element([b]) * self.field.i_unit()
        if cand != self:
            raise ValueError("element is not a Gaussian rational")
        return CRat(a, b)

    def __repr__(self):
        return f"CycNum(L={self.field.order}, {list(self.vec)})"


def _qx_divmod(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if db < 0:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(a) - db)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[k + db] / lb
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return q, a[:db]


def _qx_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _qx_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]
