"""Charge-level model of coherent sheaves on an elliptic curve.

Objects are multisets of semistable charge factors (rank, degree,
multiplicity).  Slopes, Harder-Narasimhan layers, the torsion pair at theta,
Hom-vanishing certificates and stable-pair dimension counts all reduce to
exact comparisons of rational (or quadratic-irrational) numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .fields import QuadExt

CERTAIN_ZERO = "CERTAIN_ZERO"
UNKNOWN = "UNKNOWN"
EMPTY = "EMPTY"


@dataclass(frozen=True)
class Charge:
    """(rank, degree) of a class; torsion classes have rank 0 and degree > 0."""
    rank: int
    deg: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if self.rank == 0 and self.deg <= 0:
            raise ValueError("torsion classes must have positive length")

    def render(self):
        return f"{self.rank}:{self.deg}"


class Slope:
    """deg/rank as an exact rational, or +infinity for torsion classes."""

    __slots__ = ("value",)
    INF = object()

    def __init__(self, value):
        self.value = value

    @staticmethod
    def infinite():
        return Slope(Slope.INF)

    @staticmethod
    def of(z):
        if z.rank == 0:
            return Slope.infinite()
        return Slope(Fraction(z.deg, z.rank))

    def is_infinite(self):
        return self.value is Slope.INF

    def __eq__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self.value is other.value if self.is_infinite() or other.is_infinite() \
            else self.value == other.value

    def __hash__(self):
        return hash("inf") if self.is_infinite() else hash(self.value)

    def __lt__(self, other):
        if self.is_infinite():
            return False
        if other.is_infinite():
            return True
        return self.value < other.value

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def exceeds(self, theta):
        """Exact comparison slope > theta; theta rational or quadratic."""
        if self.is_infinite():
            return True
        if isinstance(theta, QuadExt):
            return theta < self.value
        return self.value > Fraction(theta)

    def render(self):
        return "inf" if self.is_infinite() else str(self.value)

    def __repr__(self):
        return f"Slope({self.render()})"


def slope(z):
    return Slope.of(z)


class SheafClass:
    """Multiset of semistable charge factors with multiplicities."""

    def __init__(self, factors):
        fmap = {}
        for item in factors:
            if isinstance(item, Charge):
                z, m = item, 1
            else:
                z, m = item
            if m < 1:
                raise ValueError("multiplicities must be positive")
            fmap[z] = fmap.get(z, 0) + m
        if not fmap:
            raise ValueError("a nonzero object needs at least one factor")
        self.factors = dict(sorted(fmap.items(),
                                   key=lambda kv: (kv[0].rank, kv[0].deg)))

    def items(self):
        return list(self.factors.items())

    def charges(self):
        return list(self.factors.keys())

    def __eq__(self, other):
        return isinstance(other, SheafClass) and self.factors == other.factors

    def __repr__(self):
        inner = ", ".join(z.render() if m == 1 else f"{z.render()}*{m}"
                          for z, m in self.factors.items())
        return f"[{inner}]"

    def render(self):
        return repr(self)


@dataclass
class HNFiltration:
    """Layers (slope, factors) with strictly increasing slope."""
    layers: list

    def mu_min(self):
        return self.layers[0][0]

    def mu_max(self):
        return self.layers[-1][0]

    def to_dict(self):
        return {"layers": [{"slope": s.render(),
                            "factors": [[z.render(), m] for z, m in facs]}
                           for s, facs in self.layers]}


def hn(F):
    """Group factors by slope; layers ascend strictly.  Unique by construction."""
    buckets = {}
    for z, m in F.items():
        s = Slope.of(z)
        buckets.setdefault(s, []).append((z, m))
    layers = sorted(buckets.items(), key=lambda kv: (kv[0].is_infinite(), kv[0].value
                                                     if not kv[0].is_infinite() else 0))
    return HNFiltration([(s, sorted(f, key=lambda zm: (zm[0].rank, zm[0].deg)))
                         for s, f in layers])


def mu_min(F):
    return hn(F).mu_min()


def mu_max(F):
    return hn(F).mu_max()


def torsion_split(F, theta):
    """(t, q): factors with slope > theta, and the rest."""
    above = [(z, m) for z, m in F.items() if Slope.of(z).exceeds(theta)]
    below = [(z, m) for z, m in F.items() if not Slope.of(z).exceeds(theta)]
    t = SheafClass(above) if above else EMPTY
    q = SheafClass(below) if below else EMPTY
    return t, q


@dataclass
class HeartObject:
    """Two-term model of a heart object: shifted part in Coh_{<=theta},
    plain part in Coh_{>theta}."""
    shifted: object                # SheafClass or EMPTY
    plain: object                  # SheafClass or EMPTY
    theta: object                  # Fraction or QuadExt


def in_heart(K):
    if K.shifted is not EMPTY:
        if any(Slope.of(z).exceeds(K.theta) for z in K.shifted.charges()):
            return False
    if K.plain is not EMPTY:
        if any(not Slope.of(z).exceeds(K.theta) for z in K.plain.charges()):
            return False
    return True


def hom_vanishes(F, G):
    """CERTAIN_ZERO when every factor of F strictly out-slopes every factor of G."""
    if mu_min(F) > mu_max(G):
        return CERTAIN_ZERO
    return UNKNOWN


def euler_pairing(z1, z2):
    """chi(z1, z2) = rank1*deg2 - deg1*rank2; antisymmetric and bilinear."""
    return z1.rank * z2.deg - z1.deg * z2.rank


def stable_p(z):
    """Coprime charges and the point-sheaf class are the stable ones."""
    if z.rank == 0:
        return z.deg == 1
    return gcd(z.rank, z.deg) == 1


def hom_dim_stable(z1, z2):
    """(hom, ext1) between stable classes; always hom - ext1 = chi(z1, z2).

    Dimensions follow from slope vanishing plus the dimension-level
    Calabi-Yau duality ext1(a, b) = hom(b, a).
    """
    if not stable_p(z1) or not stable_p(z2):
        raise ValueError("both charges must be stable")
    chi = euler_pairing(z1, z2)
    if z1 == z2:
        return (1, 1)
    s1, s2 = Slope.of(z1), Slope.of(z2)
    if s1 < s2:
        return (chi, 0)
    if s1 > s2:
        return (0, -chi)
    return (0, 0)
