"""Exact p-adic quantities via resultants: Gauss norms, full-orbit Galois
averages, closed-form root-of-unity distances, and the empirical c(F)
estimator.

The computational backbone is the identity

    (1/phi(N)) * sum_a log|F(zeta^a)|_p  =  -(v_p(Res(Phi_N, G)) / phi(N)
                                             - v_p(c)) * log p

with G, c from orbit specialization: the product of G over the primitive
N-th roots of unity is the Phi_N-resultant, an exact integer.  No p-adic
field construction and no precision management is involved; the Hensel
engine in `local` is the independent second route for subgroup averages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import specialize_to_orbit
from .errors import (
    AllVanish,
    DegenerateDistance,
    VanishesOnOrbit,
    ZeroPolynomialError,
    ZeroSpecialization,
)
from .lpoly import LPoly
from .primes import euler_phi, factorize
from .resultant import cyclotomic_resultant, int_valuation
from .torsion import TorsionPoint


@dataclass(frozen=True)
class PadicLogValue:
    """The real number -valuation * log(p), kept exact on the valuation."""

    p: int
    valuation: Fraction

    def __post_init__(self):
        object.__setattr__(self, "valuation", Fraction(self.valuation))

    def to_float(self) -> float:
        return -float(self.valuation) * math.log(self.p)

    def __add__(self, other: "PadicLogValue") -> "PadicLogValue":
        if self.p != other.p:
            raise ValueError("cannot add values at different primes")
        return PadicLogValue(self.p, self.valuation + other.valuation)

    def scale(self, c) -> "PadicLogValue":
        return PadicLogValue(self.p, self.valuation * Fraction(c))

    def render(self) -> str:
        v = -self.valuation
        if v.denominator == 1:
            return f"{self.p}^({v.numerator})"
        return f"{self.p}^({v.numerator}/{v.denominator})"


def rational_valuation(x: Fraction, p: int) -> int:
    """v_p of a nonzero rational."""
    if not x:
        raise ZeroDivisionError("valuation of 0")
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def gauss_norm_log(f: LPoly, p: int) -> PadicLogValue:
    """log|F|_p: minus (min coefficient valuation) times log p."""
    if f.is_zero():
        raise ZeroPolynomialError("Gauss norm of the zero polynomial")
    v = min(rational_valuation(c, p) for c in f.terms.values())
    return PadicLogValue(p, Fraction(v))


def orbit_average_padic(f: LPoly, zeta: TorsionPoint, p: int) -> PadicLogValue:
    """Average of log|F(sigma(zeta))|_p over the full Galois orbit.

    Exact for any modulus: when zeta has order d < N each Gal(Q(w_d)/Q)
    conjugate is hit phi(N)/phi(d) times, so the normalized value is
    unchanged.
    """
    g, scalar = specialize_to_orbit(f, zeta)
    if g.is_zero():
        raise ZeroSpecialization("specialization collapsed to 0")
    res = cyclotomic_resultant(zeta.modulus, g)
    if res == 0:
        raise VanishesOnOrbit("F vanishes at a conjugate of zeta")
    avg = Fraction(int_valuation(res, p), euler_phi(zeta.modulus)) - int_valuation(scalar, p)
    return PadicLogValue(p, avg)


def root_of_unity_distance(order: int, p: int) -> PadicLogValue:
    """log|zeta - 1|_p for zeta of the given order, in closed form.

    0 when the order has a prime factor different from p, and
    -log(p)/phi(p^k) when the order is p^k: both follow from evaluating
    prod_{i<n}(1 - zeta^i) = n.
    """
    if order < 2:
        raise DegenerateDistance("order 1 gives |0|, log undefined")
    fac = factorize(order)
    if set(fac) == {p}:
        return PadicLogValue(p, Fraction(1, euler_phi(order)))
    return PadicLogValue(p, Fraction(0))


@dataclass(frozen=True)
class CEstimate:
    """Empirical lower bound for c(F) = -log(inf(F)/|F|_p), with witness.

    The bound is `bound * log(p)`; the true infimum over all torsion points
    is not computable, so this only ever grows with the sample.
    """

    p: int
    bound: Fraction
    witness: TorsionPoint | None

    def to_float(self) -> float:
        return float(self.bound) * math.log(self.p)


def c_estimate(f: LPoly, sample: list[TorsionPoint], p: int) -> CEstimate:
    """Lower bound for c(F) from full-orbit averages over a sample.

    For each point the orbit average of the valuation is a lower bound for
    the maximal conjugate valuation, hence certifies a nearby small value:
    c(F) >= (avg_valuation - min coefficient valuation) * log p.  Monotone
    nondecreasing in the sample and always >= 0.
    """
    if not sample:
        raise ValueError("empty sample")
    v_norm = min(rational_valuation(c, p) for c in f.terms.values())
    best: Fraction | None = None
    witness = None
    for zeta in sample:
        try:
            avg = orbit_average_padic(f, zeta, p)
        except (VanishesOnOrbit, ZeroSpecialization):
            continue
        candidate = avg.valuation - v_norm
        if best is None or candidate > best:
            best = candidate
            witness = zeta
    if best is None:
        raise AllVanish("every sampled point vanishes on its orbit")
    return CEstimate(p, best, witness)
