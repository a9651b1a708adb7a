"""Constructive local places above p in cyclotomic fields, and exact
valuations of polynomial values at torsion points.

Write N = p^k * m with p not dividing m.  The completion of Q(w_N) at a
place above p is the compositum of

* an unramified part: Q_p with a root y of one irreducible factor of
  Phi_m mod p, Hensel-lifted to the working precision p^e (residue degree
  f = ord of p mod m), and
* a totally ramified part: a root z of Phi_{p^k}, represented through the
  uniformizer pi = z - 1, whose minimal polynomial E(T) = Phi_{p^k}(1 + T)
  is Eisenstein of degree e' = phi(p^k); v(pi) = 1/e'.

An element written as sum_i c_i(y) pi^i with i < e' has valuation
min_i (v_p(c_i) + i/e'): the candidates have pairwise distinct fractional
parts, so the ultrametric minimum is exact.  v_p(c_i) is read from the
coefficient vector of c_i because the power basis of y reduces to a basis
of the residue field.  A value is certified as soon as some row is nonzero
at the current precision; otherwise the precision doubles (8 up to the
place's maximum, default 512) before giving up.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cyclotomic import cyclotomic, specialize_to_orbit
from .errors import PrecisionExhausted, VanishesAtPoint
from .lpoly import LPoly, UPoly, upoly_gcd
from .padic import PadicLogValue, rational_valuation
from .primes import euler_phi, multiplicative_order
from .resultant import int_valuation
from .torsion import GaloisSubgroup, TorsionPoint

# ---------------------------------------------------------------------------
# GF(p)[X] arithmetic on int lists (ascending coefficients).


def _gf_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _gf_trim(out)


def _gf_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _gf_trim(a[:dm])


def _gf_pow_mod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    a = _gf_mod(a, m, p)
    while e:
        if e & 1:
            result = _gf_mod(_gf_mul(result, a, p), m, p)
        a = _gf_mod(_gf_mul(a, a, p), m, p)
        e >>= 1
    return result


def _gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = a[:], b[:]
    while b:
        a, b = b, _gf_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _gf_extended_gcd(a: list[int], b: list[int], p: int):
    """(g, s, t) with s*a + t*b = g (monic) over GF(p)."""
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        dm = len(r1) - 1
        inv = pow(r1[-1], -1, p)
        q = [0] * max(len(r0) - dm, 0)
        rem = r0[:]
        for i in range(len(rem) - 1, dm - 1, -1):
            c = rem[i] * inv % p
            if c:
                q[i - dm] = c
                for j in range(dm + 1):
                    rem[i - dm + j] = (rem[i - dm + j] - c * r1[j]) % p
        rem = _gf_trim(rem[:dm] if dm > 0 else [])
        r0, r1 = r1, rem
        s0, s1 = s1, _gf_trim([x - y for x, y in _zip_pad(s0, _gf_mul(q, s1, p), p)])
        t0, t1 = t1, _gf_trim([x - y for x, y in _zip_pad(t0, _gf_mul(q, t1, p), p)])
    inv = pow(r0[-1], -1, p)
    return (
        [x * inv % p for x in r0],
        [x * inv % p for x in s0],
        [x * inv % p for x in t0],
    )


def _zip_pad(a: list[int], b: list[int], p: int):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] % p if i < len(a) else 0), (b[i] % p if i < len(b) else 0)


def _gf_irreducible(f: int, p: int) -> list[int]:
    """Deterministically first monic irreducible of degree f over GF(p)."""
    if f == 1:
        return [0, 1]
    from .primes import factorize

    f_primes = list(factorize(f))
    tail = [0] * f
    while True:
        g = tail + [1]
        if g[0] != 0:
            x = [0, 1]
            ok = _gf_pow_mod(x, p**f, g, p) == _gf_mod(x, g, p)
            if ok:
                for ell in f_primes:
                    h = _gf_pow_mod(x, p ** (f // ell), g, p)
                    diff = _gf_trim([a - b for a, b in _zip_pad(h, x, p)])
                    diff = [c % p for c in diff]
                    if len(_gf_gcd(diff, g, p)) != 1:
                        ok = False
                        break
                if ok:
                    return g
        # next coefficient tuple in base-p counting order
        i = 0
        while i < f:
            tail[i] += 1
            if tail[i] < p:
                break
            tail[i] = 0
            i += 1
        if i == f:
            raise AssertionError("no irreducible found")  # pragma: no cover


# ---------------------------------------------------------------------------
# Factoring Phi_m mod p through GF(p^f) minimal polynomials.

_factor_cache: dict[tuple[int, int], list[list[int]]] = {}
_cache_lock = threading.Lock()


def factor_cyclotomic_mod_p(m: int, p: int) -> list[list[int]]:
    """Irreducible factors of Phi_m mod p (p not dividing m), each monic of
    degree f = ord of p mod m, sorted by coefficient tuple.

    The factors are the minimal polynomials of eta^j over GF(p) for eta of
    order m in GF(p^f), with j running over Frobenius orbits of the
    residues coprime to m.
    """
    if m % p == 0:
        raise ValueError("p must not divide m")
    with _cache_lock:
        cached = _factor_cache.get((m, p))
    if cached is not None:
        return cached
    f = multiplicative_order(p, m) if m > 1 else 1
    from .primes import factorize

    if m == 1:
        factors = [[-1 % p, 1]]
    else:
        modpoly = _gf_irreducible(f, p)
        q = p**f
        m_primes = list(factorize(m))
        # Deterministic scan for an element of order exactly m.
        eta = None
        counter = p if f > 1 else 2  # encodes the element t (resp. 2) first
        while True:
            digits = []
            c = counter
            while c:
                digits.append(c % p)
                c //= p
            theta = digits[:f]
            counter += 1
            cand = _gf_pow_mod(theta, (q - 1) // m, modpoly, p)
            if len(cand) == 0 or cand == [1]:
                continue
            if all(_gf_pow_mod(cand, m // ell, modpoly, p) != [1] for ell in m_primes):
                eta = cand
                break
        # Frobenius orbits of exponents, canonical representative = minimum.
        seen = set()
        factors = []
        for j in range(1, m):
            if math.gcd(j, m) != 1 or j in seen:
                continue
            orbit = []
            jj = j
            while jj not in orbit:
                orbit.append(jj)
                seen.add(jj)
                jj = jj * p % m
            # minimal polynomial prod (Y - eta^i) computed in GF(p^f)[Y]
            poly = [[1]]  # coefficients in GF(p^f), ascending in Y
            for i in orbit:
                root = _gf_pow_mod(eta, i, modpoly, p)
                new = [[] for _ in range(len(poly) + 1)]
                for d, coeff in enumerate(poly):
                    new[d + 1] = _gf_trim([a + b for a, b in _zip_pad(new[d + 1], coeff, p)])
                    prod = _gf_mod(_gf_mul(coeff, root, p), modpoly, p)
                    new[d] = _gf_trim([a - b for a, b in _zip_pad(new[d], prod, p)])
                poly = [[c % p for c in cs] for cs in new]
            flat = []
            for cs in poly:
                if len(cs) > 1:
                    raise AssertionError("minimal polynomial not over GF(p)")
                flat.append(cs[0] if cs else 0)
            factors.append(flat)
        factors.sort()
    with _cache_lock:
        _factor_cache[(m, p)] = factors
    return factors


# ---------------------------------------------------------------------------
# Hensel lifting of one factor (with cofactor and Bezout data).


def _zmod_mul(a: list[int], b: list[int], mod: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % mod
    while out and out[-1] == 0:
        out.pop()
    return out


def _zmod_add(a: list[int], b: list[int], mod: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % mod for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _zmod_sub(a: list[int], b: list[int], mod: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % mod for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _zmod_divmod(a: list[int], h: list[int], mod: int):
    """Division by monic h over Z/mod."""
    rem = [c % mod for c in a]
    dh = len(h) - 1
    quot = [0] * max(len(rem) - dh, 0)
    for i in range(len(rem) - dh - 1, -1, -1):
        c = rem[i + dh] % mod
        if c:
            quot[i] = c
            for j in range(dh + 1):
                rem[i + j] = (rem[i + j] - c * h[j]) % mod
    while rem and rem[-1] == 0:
        rem.pop()
    while quot and quot[-1] == 0:
        quot.pop()
    return quot, rem[:dh]


class _HenselLift:
    """State of the quadratic Hensel lift Phi_m = g * h, h the tracked
    monic factor; exponent doubles per step."""

    def __init__(self, m: int, p: int, factor_index: int):
        self.m = m
        self.p = p
        phi = [c % p for c in cyclotomic(m).int_coeffs()]
        h = factor_cyclotomic_mod_p(m, p)[factor_index]
        g, rem = _zmod_divmod(phi, h, p)
        if rem:
            raise AssertionError("factor does not divide")  # pragma: no cover
        one, s, t = _gf_extended_gcd(g, h, p)
        if one != [1]:
            raise AssertionError("factor and cofactor not coprime")  # pragma: no cover
        self.exponent = 1
        self.g, self.h, self.s, self.t = g, h, s, t

    def factor_mod(self, e: int) -> list[int]:
        with _cache_lock:
            while self.exponent < e:
                self._step()
            mod = self.p**e
            return [c % mod for c in self.h]

    def _step(self):
        p, m = self.p, self.m
        new_exp = self.exponent * 2
        mod = p**new_exp
        phi = [c % mod for c in cyclotomic(m).int_coeffs()]
        g, h, s, t = self.g, self.h, self.s, self.t
        e_err = _zmod_sub(phi, _zmod_mul(g, h, mod), mod)
        q, r = _zmod_divmod(_zmod_mul(s, e_err, mod), h, mod)
        g_new = _zmod_add(_zmod_add(g, _zmod_mul(t, e_err, mod), mod), _zmod_mul(q, g, mod), mod)
        h_new = _zmod_add(h, r, mod)
        b = _zmod_sub(
            _zmod_add(_zmod_mul(s, g_new, mod), _zmod_mul(t, h_new, mod), mod), [1], mod
        )
        c, d = _zmod_divmod(_zmod_mul(s, b, mod), h_new, mod)
        s_new = _zmod_sub(s, d, mod)
        t_new = _zmod_sub(_zmod_sub(t, _zmod_mul(t, b, mod), mod), _zmod_mul(c, g_new, mod), mod)
        self.g, self.h, self.s, self.t = g_new, h_new, s_new, t_new
        self.exponent = new_exp


_lift_cache: dict[tuple[int, int, int], _HenselLift] = {}


def lifted_factor(m: int, p: int, factor_index: int, e: int) -> list[int]:
    key = (m, p, factor_index)
    lift = _lift_cache.get(key)
    if lift is None:
        lift = _HenselLift(m, p, factor_index)
        with _cache_lock:
            lift = _lift_cache.setdefault(key, lift)
    return lift.factor_mod(e)


# ---------------------------------------------------------------------------
# Places and the evaluation engine.


@dataclass(frozen=True)
class LocalPlace:
    """A place of Q(w_N) above p: which irreducible factor of Phi_m mod p,
    plus the maximum working exponent of the precision schedule."""

    p: int
    modulus: int
    factor_index: int
    precision: int = 512

    @property
    def p_part_exponent(self) -> int:
        k = 0
        n = self.modulus
        while n % self.p == 0:
            n //= self.p
            k += 1
        return k

    @property
    def unramified_modulus(self) -> int:
        return self.modulus // self.p**self.p_part_exponent

    @property
    def residue_degree(self) -> int:
        m = self.unramified_modulus
        return multiplicative_order(self.p, m) if m > 1 else 1

    @property
    def ramification(self) -> int:
        return euler_phi(self.p**self.p_part_exponent)

    @property
    def local_degree(self) -> int:
        return self.residue_degree * self.ramification


def places_above(p: int, modulus: int, precision: int = 512) -> list[LocalPlace]:
    k = int_valuation(modulus, p) if modulus % p == 0 else 0
    m = modulus // p**k
    count = len(factor_cyclotomic_mod_p(m, p))
    return [LocalPlace(p, modulus, i, precision) for i in range(count)]


class _PlaceEngine:
    """Power tables for one place at one precision exponent e."""

    def __init__(self, place: LocalPlace, e: int):
        p = place.p
        self.p = p
        self.e = e
        self.mod = p**e
        k = place.p_part_exponent
        m = place.unramified_modulus
        self.m = m
        self.pk = p**k
        self.f = place.residue_degree
        self.eprime = euler_phi(self.pk)
        # CRT exponent split: w_N^t = y^(t*alpha mod m) * z^(t*beta mod p^k).
        alpha = pow(self.pk, -1, m) if m > 1 else 0
        beta = (1 - self.pk * alpha) // m % self.pk if self.pk > 1 else 0
        self.alpha, self.beta = alpha, beta
        self.dtype = np.int64 if self.mod < (1 << 31) else object
        h = lifted_factor(m, p, place.factor_index, e)
        self.ypow = self._y_table(h)
        self.zpow = self._z_table()

    def _y_table(self, h: list[int]) -> np.ndarray:
        f, mod = self.f, self.mod
        table = np.zeros((self.m, f), dtype=self.dtype)
        cur = [1] + [0] * (f - 1)
        for s in range(self.m):
            for j in range(f):
                table[s, j] = cur[j]
            shifted = [0] + cur  # multiply by y
            lead = shifted[f]
            if lead:
                cur = [(shifted[j] - lead * h[j]) % mod for j in range(f)]
            else:
                cur = [c % mod for c in shifted[:f]]
        return table

    def _z_table(self) -> np.ndarray:
        eprime, mod = self.eprime, self.mod
        # E(T) = Phi_{p^k}(1 + T), Eisenstein of degree e'.
        phi = cyclotomic(self.pk).int_coeffs()
        e_poly = [0] * (eprime + 1)
        for s, c in enumerate(phi):
            if not c:
                continue
            # add c * (1+T)^s
            binom = 1
            for i in range(min(s, eprime) + 1):
                e_poly[i] += c * binom
                binom = binom * (s - i) // (i + 1)
        table = np.zeros((self.pk, eprime), dtype=self.dtype)
        cur = [1] + [0] * (eprime - 1)
        for s in range(self.pk):
            table[s, :] = cur
            nxt = [0] * (eprime + 1)
            for i, c in enumerate(cur):
                nxt[i] = (nxt[i] + c) % mod
                nxt[i + 1] = (nxt[i + 1] + c) % mod
            lead = nxt[eprime]
            if lead:
                for j in range(eprime + 1):
                    nxt[j] = (nxt[j] - lead * e_poly[j]) % mod
            cur = nxt[:eprime]
        return table

    def valuations(self, exps: list[int], coeffs: list[int], a_list) -> list[Fraction | None]:
        """v(G(w_N^a)) for each a; None when inconclusive at this precision."""
        mod, p, e = self.mod, self.p, self.e
        a_arr = np.array(list(a_list), dtype=np.int64)
        acc = np.zeros((len(a_arr), self.eprime, self.f), dtype=self.dtype)
        for t, c in zip(exps, coeffs):
            c_red = c % mod
            if not c_red:
                continue
            ys = self.ypow[(a_arr * ((t * self.alpha) % self.m)) % self.m]
            zs = self.zpow[(a_arr * ((t * self.beta) % self.pk)) % self.pk]
            # two-step reduction keeps every int64 product below mod^2 < 2^62
            term = zs[:, :, None] * ys[:, None, :] % mod
            acc = (acc + c_red * term) % mod
        # vectorized v_p with zero rows mapped to >= e
        vals = np.zeros(acc.shape, dtype=np.int64)
        power = 1
        for _ in range(e):
            power *= p
            vals += np.asarray(acc % power == 0, dtype=np.int64)
        row_v = vals.min(axis=2)  # (A, e')
        scaled = row_v * self.eprime + np.arange(self.eprime)[None, :]
        huge = (e + 1) * self.eprime
        scaled = np.where(row_v < e, scaled, huge)
        best = scaled.min(axis=1)
        return [Fraction(int(b), self.eprime) if b < huge else None for b in best]


_engine_cache: dict[tuple[int, int, int, int], _PlaceEngine] = {}


def _engine(place: LocalPlace, e: int) -> _PlaceEngine:
    key = (place.p, place.modulus, place.factor_index, e)
    with _cache_lock:
        eng = _engine_cache.get(key)
    if eng is None:
        eng = _PlaceEngine(place, e)
        with _cache_lock:
            _engine_cache[key] = eng
    return eng


def _orbit_vanishes(g: UPoly, modulus: int) -> bool:
    """Exact check: does g share a root with Phi_N?  On the coprime orbit
    vanishing at one conjugate forces vanishing at all of them."""
    return upoly_gcd(g, cyclotomic(modulus)).degree() > 0


def _valuations_at(place: LocalPlace, g: UPoly, a_list) -> list[Fraction]:
    exps = [i for i, c in enumerate(g.coeffs) if c]
    coeffs = [int(g.coeffs[i]) for i in exps]
    pending = list(a_list)
    results: dict[int, Fraction] = {}
    e = 8
    while pending:
        if e > place.precision:
            raise PrecisionExhausted(
                f"valuation inconclusive at exponent {place.precision} for a={pending[0]}"
            )
        got = _engine(place, e).valuations(exps, coeffs, pending)
        still = []
        for a, v in zip(pending, got):
            if v is None:
                still.append(a)
            else:
                results[a] = v
        pending = still
        e *= 2
    return [results[a] for a in a_list]


def local_valuation(f: LPoly, zeta: TorsionPoint, place: LocalPlace, a: int) -> Fraction:
    """v(F(zeta^a)) at the given place, normalized so v(p) = 1; exact with
    denominator dividing the ramification phi(p^k)."""
    if place.modulus != zeta.modulus:
        raise ValueError("place and torsion point have different moduli")
    g, scalar = specialize_to_orbit(f, zeta)
    if g.is_zero() or _orbit_vanishes(g, zeta.modulus):
        raise VanishesAtPoint("F vanishes at the conjugates of zeta")
    value = _valuations_at(place, g, [a % zeta.modulus])[0]
    return value - int_valuation(scalar, place.p)


def subgroup_average_padic(
    f: LPoly, zeta: TorsionPoint, group: GaloisSubgroup, place: LocalPlace
) -> PadicLogValue:
    """Exact average of log|F(sigma(zeta))|_p over a Galois subgroup orbit,
    through the Hensel-lifted local engine (independent of the resultant
    route used by the full-orbit average)."""
    if group.modulus != zeta.modulus or place.modulus != zeta.modulus:
        raise ValueError("subgroup, place and torsion point must share a modulus")
    g, scalar = specialize_to_orbit(f, zeta)
    if g.is_zero() or _orbit_vanishes(g, zeta.modulus):
        raise VanishesAtPoint("F vanishes at the conjugates of zeta")
    values = _valuations_at(place, g, list(group.elements))
    total = sum(values, Fraction(0))
    avg = total / len(group.elements) - int_valuation(scalar, place.p)
    return PadicLogValue(place.p, avg)
