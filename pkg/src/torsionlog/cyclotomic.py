"""Cyclotomic polynomials and specialization of Laurent polynomials to the
Galois orbit of a torsion point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .lpoly import LPoly, UPoly
from .primes import divisors


@lru_cache(maxsize=None)
def _cyclotomic_int_coeffs(m: int) -> tuple[int, ...]:
    if m == 1:
        return (-1, 1)
    # X^m - 1 divided by Phi_d for every proper divisor d; division is exact
    # over Z because each Phi_d is monic.
    num = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        phi_d = _cyclotomic_int_coeffs(d)
        num = _exact_div(num, phi_d)
    return tuple(num)


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; remainder is known to be zero.
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - dd - 1, -1, -1):
        c = num[i + dd]
        if c:
            quot[i] = c
            for j in range(dd + 1):
                num[i + j] -= c * den[j]
    return quot


def cyclotomic(m: int) -> UPoly:
    """The m-th cyclotomic polynomial: monic, degree phi(m), integer coeffs."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return UPoly(list(_cyclotomic_int_coeffs(m)))


def specialize_to_orbit(f: LPoly, zeta) -> tuple[UPoly, int]:
    """Collapse F to the univariate G with G(w^a) = c * F(zeta^a-conjugate).

    zeta = (w^{u_1},...,w^{u_n}) for w of order N; a monomial with exponent
    vector e contributes at X^{<u,e> mod N}, so G has degree < N.  Like terms
    are merged after the reduction (a relation hitting the kernel can cancel
    everything, giving G = 0).  The positive integer c clears all rational
    denominators; callers fold v_p(c) back per conjugate.
    """
    n = zeta.n
    if f.nvars != n:
        raise ValueError(f"polynomial has {f.nvars} variables, point has {n}")
    big_n = zeta.modulus
    merged: dict[int, Fraction] = {}
    for exp, coeff in f.terms.items():
        k = sum(u * e for u, e in zip(zeta.exponents, exp)) % big_n
        merged[k] = merged.get(k, Fraction(0)) + coeff
    merged = {k: c for k, c in merged.items() if c}
    if not merged:
        return UPoly([]), 1
    c = 1
    for v in merged.values():
        c = c * v.denominator // math.gcd(c, v.denominator)
    coeffs = [0] * (max(merged) + 1)
    for k, v in merged.items():
        coeffs[k] = int(v * c)
    return UPoly(coeffs), c
