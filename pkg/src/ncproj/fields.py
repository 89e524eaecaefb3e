"""Exact coefficient arithmetic: rationals, rational functions in q, quadratic fields.

Every scalar used anywhere in the package is one of

* ``fractions.Fraction`` -- the field Q,
* ``RatFunc``            -- the field Q(q) of univariate rational functions,
* ``QuadExt``            -- a real quadratic field Q(sqrt(D)).

All three support ``+ - * /``, equality and ``bool`` (nonzero test), so the
generic linear algebra in :mod:`ncproj.linalg` works over any of them.
No floating point enters any computation.
"""

from __future__ import annotations

import math
from fractions import Fraction


class FieldMismatchError(TypeError):
    """Raised when scalars from different coefficient fields are combined."""


# ---------------------------------------------------------------------------
# generic dense univariate polynomials
# ---------------------------------------------------------------------------

class UPoly:
    """Dense univariate polynomial; coefficients are any exact scalars.

    Coefficients are stored low degree first with trailing zeros stripped.
    The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c):
        return UPoly((c,)) if c else UPoly()

    @staticmethod
    def var(one=Fraction(1)):
        return UPoly((one * 0, one))

    def degree(self):
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly(out)

    def __neg__(self):
        return UPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) >= len(b):
            out = list(a)
            for i, c in enumerate(b):
                out[i] = out[i] - c
        else:
            out = [-c for c in b]
            for i, c in enumerate(a):
                out[i] = out[i] + c
        return UPoly(out)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return UPoly()
        a_nz = [(i, c) for i, c in enumerate(self.coeffs) if c]
        zero = self.coeffs[-1] * 0
        if len(a_nz) == 1:
            i, a = a_nz[0]
            return UPoly([zero] * i + [b * a for b in other.coeffs])
        b_nz = [(j, c) for j, c in enumerate(other.coeffs) if c]
        if len(b_nz) == 1:
            j, b = b_nz[0]
            return UPoly([zero] * j + [a * b for a in self.coeffs])
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in a_nz:
            for j, b in b_nz:
                out[i + j] = out[i + j] + a * b
        return UPoly(out)

    def scale(self, c):
        return UPoly(tuple(x * c for x in self.coeffs))

    def divmod(self, other):
        """Euclidean division; requires an invertible leading coefficient."""
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlead = other.coeffs[-1]
        dd = other.degree()
        quo = [dlead * 0] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd and rem:
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) - 1 < dd or not rem:
                break
            c = rem[-1] / dlead
            k = len(rem) - 1 - dd
            quo[k] = quo[k] + c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
        return UPoly(quo), UPoly(rem)

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return UPoly(tuple(c / lead for c in self.coeffs))

    def gcd(self, other):
        a, b = self, other
        while b.coeffs:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def eval(self, x):
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        return self.eval(x)

    def __pow__(self, n):
        if n == 0:
            return UPoly((Fraction(1),))
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def render(self, sym="q"):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                mono = None
            elif i == 1:
                mono = sym
            else:
                mono = f"{sym}^{i}"
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono is None:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"UPoly({self.render()})"


# ---------------------------------------------------------------------------
# Q(q): rational functions
# ---------------------------------------------------------------------------

_QONE = UPoly((Fraction(1),))


def _as_qpoly(x):
    if isinstance(x, UPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UPoly.const(Fraction(x))
    raise FieldMismatchError(f"cannot coerce {x!r} into Q[q]")


class RatFunc:
    """Element of Q(q), stored as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_qpoly(num)
        den = _QONE if den is None else _as_qpoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(q)")
        if num.is_zero():
            self.num = num
            self.den = _QONE
            return
        # constant denominators and numerators need no gcd
        if den.degree() == 0:
            c = den.coeffs[0]
            self.num = num if c == 1 else num.scale(1 / c)
            self.den = _QONE
            return
        if num.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        lead = den.coeffs[-1]
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num = num
        self.den = den

    @staticmethod
    def _raw(num, den):
        """Trusted constructor: num/den already reduced with monic den."""
        out = RatFunc.__new__(RatFunc)
        out.num = num
        out.den = den
        return out

    @staticmethod
    def q():
        return RatFunc(UPoly.var())

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, UPoly)):
            return RatFunc(other)
        raise FieldMismatchError(f"cannot mix {other!r} with Q(q) scalar")

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except FieldMismatchError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            if len(self.den.coeffs) == 1:
                return RatFunc._raw(self.num + other.num, _QONE)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            if len(self.den.coeffs) == 1:
                return RatFunc._raw(self.num - other.num, _QONE)
            return RatFunc(self.num - other.num, self.den)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int) and other == 0:
            return RatFunc(UPoly())
        other = self._coerce(other)
        if len(self.den.coeffs) == 1 and len(other.den.coeffs) == 1:
            return RatFunc._raw(self.num * other.num, _QONE)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def inverse(self):
        return RatFunc(self.den, self.num)

    def is_composite(self):
        """True when rendering needs parentheses as a coefficient."""
        if self.den.degree() > 0:
            return True
        return sum(1 for c in self.num.coeffs if c) > 1

    def __str__(self):
        if self.den.degree() == 0:
            return self.num.render()
        n = self.num.render()
        d = self.den.render()
        if sum(1 for c in self.num.coeffs if c) > 1:
            n = f"({n})"
        if sum(1 for c in self.den.coeffs if c) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# real quadratic fields Q(sqrt(D))
# ---------------------------------------------------------------------------

def squarefree_part(n):
    """Write n = f^2 * d with d squarefree; return (d, f)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    d, f, m = 1, 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e % 2:
                d *= p
            f *= p ** (e // 2)
        p += 1 if p == 2 else 2
    d *= m
    return d, f


class QuadExt:
    """Exact element (p + s*sqrt(D))/q of a real quadratic field.

    Normalized so that gcd(p, s, q) = 1, q > 0 and D is squarefree.
    Rational numbers are represented with s = 0 (D retained for coercion).
    """

    __slots__ = ("p", "s", "q", "D")

    def __init__(self, p, s, q, D):
        if q == 0:
            raise ZeroDivisionError("zero denominator in quadratic field element")
        if D <= 0:
            raise ValueError("D must be positive")
        d0, f = squarefree_part(D)
        if d0 == 1:
            # sqrt(D) is an integer; fold it into the rational part
            p, s, D = p + s * f, 0, 5
        else:
            s, D = s * f, d0
        if q < 0:
            p, s, q = -p, -s, -q
        g = math.gcd(math.gcd(abs(p), abs(s)), q)
        if g > 1:
            p, s, q = p // g, s // g, q // g
        self.p, self.s, self.q, self.D = p, s, q, D

    @staticmethod
    def from_rational(r, D=5):
        r = Fraction(r)
        return QuadExt(r.numerator, 0, r.denominator, D)

    @staticmethod
    def sqrt(D):
        return QuadExt(0, 1, 1, D)

    def is_rational(self):
        return self.s == 0

    def to_fraction(self):
        if self.s:
            raise ValueError("not a rational number")
        return Fraction(self.p, self.q)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.s and self.s and other.D != self.D:
                raise FieldMismatchError(
                    f"cannot mix Q(sqrt({self.D})) with Q(sqrt({other.D}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt.from_rational(other, self.D)
        raise FieldMismatchError(f"cannot mix {other!r} with quadratic scalar")

    def _pair_D(self, other):
        return self.D if self.s else other.D

    def is_zero(self):
        return self.p == 0 and self.s == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except FieldMismatchError:
            return NotImplemented
        return (self.p, self.s, self.q) == (other.p, other.s, other.q) and \
            (self.s == 0 or self.D == other.D)

    def __hash__(self):
        if self.s == 0:
            return hash(Fraction(self.p, self.q))
        return hash((self.p, self.s, self.q, self.D))

    def __add__(self, other):
        other = self._coerce(other)
        D = self._pair_D(other)
        return QuadExt(self.p * other.q + other.p * self.q,
                       self.s * other.q + other.s * self.q,
                       self.q * other.q, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.p, -self.s, self.q, self.D)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        D = self._pair_D(other)
        return QuadExt(self.p * other.p + self.s * other.s * D,
                       self.p * other.s + self.s * other.p,
                       self.q * other.q, D)

    __rmul__ = __mul__

    def inverse(self):
        # 1/((p + s sqrt(D))/q) = q (p - s sqrt(D)) / (p^2 - s^2 D)
        n = self.p * self.p - self.s * self.s * self.D
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadExt(self.q * self.p, -self.q * self.s, n, self.D)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def sign(self):
        """Exact sign of the real value."""
        p, s, D = self.p, self.s, self.D
        if s == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (s > 0) - (s < 0)
        if p > 0 and s > 0:
            return 1
        if p < 0 and s < 0:
            return -1
        # p and s of opposite sign: compare p^2 with s^2 D
        lhs, rhs = p * p, s * s * D
        if p > 0:  # s < 0
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def _cmp(self, other):
        return (self - self._coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def floor(self):
        approx = (self.p + self.s * math.sqrt(self.D)) / self.q
        n = math.floor(approx)
        while self._cmp(n) < 0:
            n -= 1
        while self._cmp(n + 1) >= 0:
            n += 1
        return n

    def __float__(self):
        return (self.p + self.s * math.sqrt(self.D)) / self.q

    def __str__(self):
        if self.s == 0:
            return str(Fraction(self.p, self.q))
        core = f"{self.p} + {self.s}*sqrt({self.D})"
        if self.s < 0:
            core = f"{self.p} - {-self.s}*sqrt({self.D})"
        return f"({core})/{self.q}"

    def __repr__(self):
        return f"QuadExt({self})"


# ---------------------------------------------------------------------------
# field tags
# ---------------------------------------------------------------------------

class FieldTag:
    """Identifies the coefficient field of a presentation or computation."""

    def __init__(self, name, zero, one, coerce):
        self.name = name
        self.zero = zero
        self.one = one
        self.coerce = coerce

    def __eq__(self, other):
        return isinstance(other, FieldTag) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"FieldTag({self.name})"


QQ = FieldTag("Q", Fraction(0), Fraction(1), lambda x: Fraction(x))
QQ_Q = FieldTag("Q(q)", RatFunc(0), RatFunc(1),
                lambda x: x if isinstance(x, RatFunc) else RatFunc(x))


def quad_field(D):
    d0, _ = squarefree_part(D)
    return FieldTag(f"Q(sqrt({d0}))", QuadExt(0, 0, 1, d0), QuadExt(1, 0, 1, d0),
                    lambda x, _d=d0: x if isinstance(x, QuadExt)
                    else QuadExt.from_rational(x, _d))


def field_by_name(name):
    name = name.strip()
    if name == "Q":
        return QQ
    if name.replace(" ", "") == "Q(q)":
        return QQ_Q
    raise ValueError(f"unknown field {name!r}")


def render_scalar(x):
    """Canonical text form of a scalar, used by polynomial rendering and JSON."""
    return str(x)


def scalar_is_composite(x):
    """Whether a coefficient needs parentheses in front of a monomial."""
    if isinstance(x, Fraction):
        return False
    if isinstance(x, RatFunc):
        return x.is_composite()
    if isinstance(x, QuadExt):
        return x.s != 0
    return False
