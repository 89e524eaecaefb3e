"""Quadratic irrationals, continued fractions, SL(2,Z) and real multiplication.

The fixing matrix of a quadratic irrational is read off the period of its
continued fraction; squaring when needed forces determinant 1 and positive
eigenvalues.  The orbit of a stable charge under the fixing matrix yields
the Hilbert function of the associated section algebra through the Euler
pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import QuadExt
from .heart import Charge, Slope, euler_pairing, hom_dim_stable, stable_p


@dataclass(frozen=True)
class SL2Matrix:
    """Integer matrix [[a, b], [c, d]] with determinant 1."""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be 1")

    @staticmethod
    def identity():
        return SL2Matrix(1, 0, 0, 1)

    @staticmethod
    def translation():
        """g = [[1, 1], [0, 1]], translation by 1."""
        return SL2Matrix(1, 1, 0, 1)

    @staticmethod
    def inversion():
        """h = [[0, 1], [-1, 0]], theta -> -1/theta."""
        return SL2Matrix(0, 1, -1, 0)

    def __mul__(self, other):
        return SL2Matrix(self.a * other.a + self.b * other.c,
                         self.a * other.b + self.b * other.d,
                         self.c * other.a + self.d * other.c,
                         self.c * other.b + self.d * other.d)

    def inverse(self):
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = SL2Matrix.identity()
        for _ in range(n):
            out = out * self
        return out

    def __neg__(self):
        # not in SL2 (det stays 1), kept for eigenvalue sign flips
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def trace(self):
        return self.a + self.d

    def entries(self):
        return [[self.a, self.b], [self.c, self.d]]

    def charge_action(self, z):
        """Action on the column (deg, rank); matches the action on slopes."""
        deg = self.a * z.deg + self.b * z.rank
        rank = self.c * z.deg + self.d * z.rank
        return Charge(rank, deg)

    def render(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def mobius_act(g, theta):
    """(a*theta + b)/(c*theta + d), exact; a left group action."""
    if isinstance(theta, (int, Fraction)):
        theta = QuadExt.from_rational(theta)
    num = theta * g.a + g.b
    den = theta * g.c + g.d
    if den.is_zero():
        raise ZeroDivisionError("fractional-linear action hits the pole")
    return num / den


@dataclass
class CFExpansion:
    preperiod: list
    period: list
    window: int

    def terms(self, count):
        out = list(self.preperiod)
        while len(out) < count and self.period:
            out.extend(self.period)
        return out[:count]

    def to_dict(self):
        return {"period": self.period, "preperiod": self.preperiod,
                "window": self.window}


def cf_expand(theta, max_terms=60):
    """Partial quotients by exact floor-and-invert; the period is detected at
    the first exact repeat of the surd state (Lagrange guarantees one)."""
    if theta.is_rational():
        raise ValueError("continued-fraction periodicity needs an irrational input")
    seen = {}
    quotients = []
    state = theta
    for k in range(max_terms):
        key = (state.p, state.s, state.q, state.D)
        if key in seen:
            start = seen[key]
            return CFExpansion(quotients[:start], quotients[start:], k)
        seen[key] = k
        a = state.floor()
        quotients.append(a)
        state = (state - a).inverse()
    return CFExpansion(quotients, [], max_terms)


def cf_value(preperiod, period, D):
    """Exact value of an eventually periodic continued fraction in Q(sqrt(D))."""
    if not period:
        raise ValueError("need a nonempty period for an exact value")
    # tail value x is the attracting fixed point x = (a x + b)/(c x + d)
    # of the period matrix, i.e. the larger root of c x^2 + (d - a) x - b = 0
    a, b, c, d = _word_matrix(period)
    disc = (d - a) * (d - a) + 4 * c * b
    x = QuadExt(a - d, 1, 2 * c, disc)
    for q in reversed(preperiod):
        x = x.inverse() + q
    return x


def _word_matrix(quotients):
    """Product of [[a_i, 1], [1, 0]]; returns (a, b, c, d)."""
    a, b, c, d = 1, 0, 0, 1
    for q in quotients:
        a, b, c, d = a * q + b, a, c * q + d, c
    return a, b, c, d


def morita_reduce(theta):
    """Translate theta into (0,1); the word is a power of the translation."""
    if theta.is_rational():
        raise ValueError("theta must be irrational")
    n = theta.floor()
    reduced = theta - n
    word = []
    if n > 0:
        word = [("g", -n)]
    elif n < 0:
        word = [("g", -n)]
    return reduced, word


def apply_word(word, theta):
    g = SL2Matrix.translation()
    out = theta
    for sym, e in word:
        if sym != "g":
            raise ValueError(f"unknown generator {sym!r}")
        out = mobius_act(g ** e, out)
    return out


def minus_inverse(theta):
    """theta -> -1/theta, the inversion generator's action."""
    if isinstance(theta, (int, Fraction)):
        theta = QuadExt.from_rational(theta)
    if theta.is_zero():
        raise ZeroDivisionError("-1/theta undefined at zero")
    return mobius_act(SL2Matrix.inversion(), theta)


def fixing_matrix(theta):
    """Hyperbolic g in SL(2,Z) fixing theta, with trace > 2.

    Built from one continued-fraction period, conjugated back through the
    preperiod; squared when needed to force determinant 1 and positive
    eigenvalues.
    """
    if theta.is_rational():
        raise ValueError("theta must be a quadratic irrational")
    cf = cf_expand(theta)
    if not cf.period:
        raise ValueError("period not detected; increase max_terms")
    pa, pb, pc, pd = _word_matrix(cf.period)
    det = pa * pd - pb * pc
    ma, mb, mc, md = (pa, pb, pc, pd)
    if det == -1:
        ma, mb, mc, md = (pa * pa + pb * pc, pa * pb + pb * pd,
                          pc * pa + pd * pc, pc * pb + pd * pd)
    # conjugate by the preperiod word: theta = W(tail) => g = W M W^{-1}
    wa, wb, wc, wd = _word_matrix(cf.preperiod)
    wdet = wa * wd - wb * wc
    # W^{-1} = adj(W)/det(W); det is +-1 so entries stay integral
    ia, ib, ic, id_ = wd * wdet, -wb * wdet, -wc * wdet, wa * wdet
    fa = wa * ma + wb * mc
    fb = wa * mb + wb * md
    fc = wc * ma + wd * mc
    fd = wc * mb + wd * md
    ga = fa * ia + fb * ic
    gb = fa * ib + fb * id_
    gc = fc * ia + fd * ic
    gd = fc * ib + fd * id_
    if ga + gd < 0:
        ga, gb, gc, gd = -ga, -gb, -gc, -gd
    g = SL2Matrix(ga, gb, gc, gd)
    while g.trace() <= 2:
        g = g * g
    if mobius_act(g, theta) != theta:
        raise AssertionError("fixing-matrix construction failed to fix theta")
    return g


@dataclass
class RmAlgebraReport:
    F: SL2Matrix
    G_charge: Charge
    theta: QuadExt
    dims: list
    slopes: list
    recurrence_checked: bool

    def to_dict(self):
        return {
            "F": self.F.entries(),
            "G": self.G_charge.render(),
            "dims": self.dims,
            "recurrence_checked": self.recurrence_checked,
            "slopes": [s.render() for s in self.slopes],
            "theta": str(self.theta),
        }


def rm_hilbert(F, G, theta, n_max):
    """Hilbert data of the real-multiplication algebra for (F, G, theta).

    Orbit charges z_n = F^n G must be stable with slopes strictly monotone
    on one side of theta; dims[n] = hom(z_0, z_n), and the Cayley-Hamilton
    trace recurrence is verified on the dims.
    """
    if not stable_p(G):
        raise ValueError("G must be a stable charge")
    if mobius_act(F, theta) != theta:
        raise ValueError("F does not fix theta")
    if F.trace() <= 2:
        raise ValueError("F must be hyperbolic with positive eigenvalues (trace > 2)")
    orbit = [G]
    for _ in range(n_max):
        orbit.append(F.charge_action(orbit[-1]))
    slopes = []
    for z in orbit:
        if not stable_p(z):
            raise ValueError(f"orbit charge {z.render()} is not stable")
        s = Slope.of(z)
        if s.is_infinite():
            raise ValueError("orbit hit a torsion charge")
        slopes.append(s)
    increasing = all(slopes[i] < slopes[i + 1] for i in range(len(slopes) - 1))
    decreasing = all(slopes[i] > slopes[i + 1] for i in range(len(slopes) - 1))
    if not (increasing or decreasing):
        raise ValueError("orbit slopes are not monotone; not an ample-type orbit")
    sides = {s.exceeds(theta) for s in slopes}
    if len(sides) != 1:
        raise ValueError("orbit slopes cross theta; heart consistency fails")
    dims = []
    for n in range(1, n_max + 1):
        hom, ext1 = hom_dim_stable(orbit[0], orbit[n])
        if ext1 != 0 or hom <= 0:
            raise ValueError("slope ordering does not concentrate Hom in degree 0")
        dims.append(hom)
    t = F.trace()
    recurrence = all(dims[n + 1] == t * dims[n] - dims[n - 1]
                     for n in range(1, len(dims) - 1))
    return RmAlgebraReport(F, G, theta, dims, slopes[1:], recurrence)
