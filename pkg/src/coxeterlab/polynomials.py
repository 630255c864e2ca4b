"""Exact integer polynomials, rational functions, and certified real roots."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np


class IntPolynomial:
    """Dense integer polynomial; coefficients ascending, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def const(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * k + (c,))

    # -- basic structure ----------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.const(other)
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k <= self.degree else 0

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _coerce(v) -> "IntPolynomial":
        if isinstance(v, IntPolynomial):
            return v
        if isinstance(v, int):
            return IntPolynomial.const(v)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self or not other:
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by x**k."""
        if not self:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Exact quotient in Z[x]; raises if the division is not exact."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return IntPolynomial.zero()
        rem = [Fraction(c) for c in self.coeffs]
        q = [Fraction(0)] * (len(self.coeffs) - len(other.coeffs) + 1)
        if len(q) == 0:
            raise ValueError("inexact polynomial division")
        dlead = Fraction(other.lead)
        dd = other.degree
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] / dlead
            q[k - dd] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - dd + j] -= c * b
        if any(rem):
            raise ValueError("inexact polynomial division")
        if any(c.denominator != 1 for c in q):
            raise ValueError("quotient not integral")
        return IntPolynomial(int(c) for c in q)

    def divides(self, other: "IntPolynomial") -> bool:
        try:
            other.exact_div(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False

    # -- content / normalization --------------------------------------

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide by the positive content (sign preserved)."""
        g = self.content()
        if g <= 1:
            return self
        return IntPolynomial(c // g for c in self.coeffs)

    def with_positive_lead(self) -> "IntPolynomial":
        return self if self.lead >= 0 else -self

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def reciprocal(self) -> "IntPolynomial":
        """Coefficient reversal x**deg * p(1/x)."""
        return IntPolynomial(reversed(self.coeffs))

    def subs_square(self) -> "IntPolynomial":
        """p(x**2): interleave zero coefficients."""
        out = [0] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[2 * k] = c
        return IntPolynomial(out)

    # -- evaluation ----------------------------------------------------

    def __call__(self, x):
        result = 0 * x if not isinstance(x, (int, float, complex, Fraction)) else type(x)(0)
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.coeffs)


# -- gcd machinery -----------------------------------------------------


def _poly_rem_fraction(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive integer remainder of a mod b, sign matching the true remainder."""
    rem = [Fraction(c) for c in a.coeffs]
    dlead = Fraction(b.lead)
    dd = b.degree
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k] / dlead
        if c:
            for j, cb in enumerate(b.coeffs):
                rem[k - dd + j] -= c * cb
        rem[k] = Fraction(0)
    while rem and rem[-1] == 0:
        rem.pop()
    if not rem:
        return IntPolynomial.zero()
    den_lcm = 1
    for c in rem:
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in rem]
    return IntPolynomial(ints).primitive()


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Gcd in Z[x]: content gcd times primitive gcd, positive leading coefficient."""
    if not a:
        return b.with_positive_lead()
    if not b:
        return a.with_positive_lead()
    ca, cb = a.content(), b.content()
    pa, pb = a.primitive(), b.primitive()
    while pb:
        pa, pb = pb, _poly_rem_fraction(pa, pb)
    g = pa.primitive().with_positive_lead()
    return g * gcd(ca, cb)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    p = IntPolynomial.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


# -- Sturm sequences and certified real roots ---------------------------


def sturm_chain(p: IntPolynomial) -> list[IntPolynomial]:
    chain = [p.primitive(), p.derivative().primitive()]
    while chain[-1]:
        r = _poly_rem_fraction(chain[-2], chain[-1])
        chain.append(-r)
    chain.pop()
    return chain


def _sign_variations(chain, x: Fraction | None) -> int:
    # x=None means +infinity: use leading coefficient signs.
    signs = []
    for q in chain:
        v = q.lead if x is None else q(Fraction(x))
        if v > 0:
            signs.append(1)
        elif v < 0:
            signs.append(-1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_above(p: IntPolynomial, a: Fraction) -> int:
    """Number of distinct real roots of p in (a, +inf)."""
    chain = sturm_chain(p)
    return _sign_variations(chain, a) - _sign_variations(chain, None)


def root_upper_bound(p: IntPolynomial) -> Fraction:
    """Cauchy bound: every real root is below this."""
    lead = abs(p.lead)
    if lead == 0:
        raise ValueError("zero polynomial")
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return 1 + Fraction(m, lead)


def max_real_root(p: IntPolynomial, low: float = 0.0, tol: float = 1e-11) -> float:
    """Largest real root of p strictly above `low`, certified by Sturm counts."""
    if not p:
        raise ValueError("zero polynomial")
    chain = sturm_chain(p)
    lo = Fraction(low).limit_denominator(10**12)
    hi = root_upper_bound(p)
    v_inf = _sign_variations(chain, None)

    def n_above(x: Fraction) -> int:
        return _sign_variations(chain, x) - v_inf

    if n_above(lo) == 0:
        raise ValueError(f"no real root above {low}")
    while hi - lo > Fraction(tol).limit_denominator(10**15):
        mid = (lo + hi) / 2
        if n_above(mid) >= 1:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def mahler_measure(p: IntPolynomial, residual_tol: float = 1e-8) -> float:
    """Product of |root| over roots outside the unit circle (monic p up to sign)."""
    q = p.with_positive_lead()
    if not q or q.lead != 1:
        raise ValueError("polynomial must be monic up to sign")
    if q.degree == 0:
        return 1.0
    roots = np.roots(list(reversed(q.coeffs)))
    bound = residual_tol * q.l1_norm()
    measure = 1.0
    for r in roots:
        if abs(q(complex(r))) >= bound:
            raise ValueError(f"unvalidated root {r}")
        if abs(r) > 1 + 1e-10:
            measure *= abs(r)
    return measure


# -- rational functions --------------------------------------------------


class RationalFunction:
    """Quotient of integer polynomials in canonical form.

    Canonical: gcd(num, den) = 1 including content, denominator leading
    coefficient positive.  Equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=IntPolynomial.one()):
        num = IntPolynomial._coerce(num)
        den = IntPolynomial._coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = poly_gcd(num, den)
            if g.degree > 0 or g.lead > 1:
                num = num.exact_div(g)
                den = den.exact_div(g)
        else:
            den = IntPolynomial.one()
        if den.lead < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(IntPolynomial.zero())

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(IntPolynomial.one())

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, IntPolynomial)):
            other = RationalFunction(other)
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    @staticmethod
    def _coerce(v):
        if isinstance(v, RationalFunction):
            return v
        if isinstance(v, (int, IntPolynomial)):
            return RationalFunction(v)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction._coerce(other) / self

    def series(self, n: int) -> list[Fraction]:
        """Taylor coefficients at 0 through order n (denominator nonzero at 0)."""
        d0 = Fraction(self.den[0])
        if d0 == 0:
            raise ZeroDivisionError("denominator vanishes at 0")
        out = []
        for k in range(n + 1):
            acc = Fraction(self.num[k])
            for j in range(1, k + 1):
                if self.den[j]:
                    acc -= self.den[j] * out[k - j]
            out.append(acc / d0)
        return out
