"""Exact integer resultants by modular computation and CRT.

Two strategies share the reconstruction machinery:

* `resultant(f, g)` -- general integer polynomials.  Works modulo word-sized
  primes (Euclidean algorithm over GF(q), numpy-vectorized) whose product
  exceeds twice the Hadamard bound of the Sylvester matrix, then lifts
  symmetrically.  Naive subresultant coefficient growth would be prohibitive
  at the degrees we need (up to a few thousand).

* `cyclotomic_resultant(N, g)` -- Res(Phi_N, g), the workhorse behind orbit
  averages and S-unit norms.  Uses primes q = 1 (mod N) so GF(q) contains
  elements of order N; then Res = prod over a coprime to N of g(w^a) mod q,
  which costs O(phi(N)) per prime for the sparse g produced by orbit
  specialization.  The magnitude bound here is l1(g)^phi(N) (all roots of
  Phi_N lie on the unit circle), far sharper than Hadamard for sparse g.
"""

from __future__ import annotations

import math

import numpy as np

from .lpoly import UPoly
from .primes import euler_phi, order_n_root, primes_one_mod, word_primes


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    inv = pow(m1, -1, m2)
    r = r1 + m1 * ((r2 - r1) * inv % m2)
    return r % (m1 * m2), m1 * m2


def _symmetric_lift(r: int, m: int) -> int:
    return r - m if r > m // 2 else r


def _resultant_mod(f: list[int], g: list[int], q: int) -> int:
    """Resultant of f, g modulo prime q via the Euclidean algorithm.

    Requires q to divide neither leading coefficient, so reduction preserves
    degrees and commutes with the Sylvester determinant.
    """
    a = np.array([c % q for c in f], dtype=np.int64)
    b = np.array([c % q for c in g], dtype=np.int64)
    res = 1
    while len(b) > 1:
        da, db = len(a) - 1, len(b) - 1
        # Remainder of a by b, tracking the degree drop.
        inv_lead = pow(int(b[-1]), -1, q)
        r = a.copy()
        for i in range(da - db, -1, -1):
            c = (int(r[i + db]) * inv_lead) % q
            if c:
                r[i : i + db + 1] = (r[i : i + db + 1] - c * b) % q
        r = r[:db]
        nz = np.nonzero(r)[0]
        r = r[: nz[-1] + 1] if len(nz) else r[:0]
        dr = len(r) - 1
        if dr < 0:
            return 0
        res = res * pow(int(b[-1]), da - dr, q) % q
        if (da % 2) and (db % 2):
            res = q - res
        a, b = b, r
    return res * pow(int(b[0]), len(a) - 1, q) % q


def _hadamard_sq(f: list[int], g: list[int]) -> int:
    """Square of the Hadamard bound for |Res(f, g)|, exactly in Z."""
    sf = sum(c * c for c in f)
    sg = sum(c * c for c in g)
    return sf ** (len(g) - 1) * sg ** (len(f) - 1)


def resultant(f: UPoly, g: UPoly) -> int:
    """Exact Res(f, g) for integer polynomials; Res = 0 signals a common root."""
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return 0
    fc, gc = f.int_coeffs(), g.int_coeffs()
    if len(fc) == 1:
        return fc[0] ** (len(gc) - 1)
    if len(gc) == 1:
        return gc[0] ** (len(fc) - 1)
    bound_sq = 4 * _hadamard_sq(fc, gc)
    residue, modulus = 0, 1
    count = 0
    lead = fc[-1] * gc[-1]
    while modulus * modulus <= bound_sq:
        count += 16
        for q in word_primes(count)[count - 16 :]:
            if lead % q == 0:
                continue
            residue, modulus = _crt_pair(residue, modulus, _resultant_mod(fc, gc, q), q)
            if modulus * modulus > bound_sq:
                break
    return _symmetric_lift(residue, modulus)


# ---------------------------------------------------------------------------
# Fast path: resultants against cyclotomic polynomials.

_root_power_cache: dict[tuple[int, int], np.ndarray] = {}


def _root_powers(q: int, big_n: int) -> np.ndarray:
    key = (q, big_n)
    powers = _root_power_cache.get(key)
    if powers is None:
        w = order_n_root(q, big_n)
        table = [1] * big_n
        for i in range(1, big_n):
            table[i] = table[i - 1] * w % q
        powers = np.array(table, dtype=np.int64)
        _root_power_cache[key] = powers
    return powers


def _tree_product_mod(values: np.ndarray, q: int) -> int:
    while len(values) > 1:
        half = len(values) // 2
        head = values[:half] * values[half : 2 * half] % q
        values = np.concatenate([head, values[2 * half :]])
    return int(values[0])


def cyclotomic_resultant(big_n: int, g: UPoly) -> int:
    """Res(Phi_N, g) = prod over gcd(a, N) = 1 of g(w_N^a), exactly.

    g must have integer coefficients and degree < N.  Returns 0 iff g shares
    a root with Phi_N (g vanishes on the primitive orbit).
    """
    if g.is_zero():
        return 0
    coeffs = g.int_coeffs()
    if len(coeffs) - 1 >= big_n and big_n > 1:
        raise ValueError("degree must be reduced below N first")
    phi = euler_phi(big_n)
    l1 = sum(abs(c) for c in coeffs)
    bound = l1**phi  # |g(w)| <= l1 on the unit circle
    exps = [i for i, c in enumerate(coeffs) if c]
    cs = [coeffs[i] for i in exps]
    a_vec = np.array([a for a in range(big_n) if math.gcd(a, big_n) == 1], dtype=np.int64)
    residue, modulus = 0, 1
    count = 0
    while modulus <= 2 * bound:
        count += 8
        for q in primes_one_mod(big_n, count)[count - 8 :]:
            powers = _root_powers(q, big_n)
            values = np.zeros(len(a_vec), dtype=np.int64)
            for e, c in zip(exps, cs):
                values = (values + (c % q) * powers[(a_vec * e) % big_n]) % q
            residue, modulus = _crt_pair(residue, modulus, _tree_product_mod(values, q), q)
            if modulus > 2 * bound:
                break
    return _symmetric_lift(residue, modulus)


def int_valuation(n: int, p: int) -> int:
    """v_p(n) for nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v
