"""Primality, factorization and modular helpers used across the package.

Primality is deterministic Miller-Rabin for 64-bit inputs and BPSW beyond.
Everything here is pure and cached where it pays off.
"""

from __future__ import annotations

import math
from functools import lru_cache

# Witnesses proving primality for every n < 3.3e24, in particular all 64-bit n.
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIME_LIMIT = 1 << 20
_small_sieve: bytearray | None = None
_small_primes: list[int] | None = None


def _sieve() -> bytearray:
    global _small_sieve
    if _small_sieve is None:
        n = _SMALL_PRIME_LIMIT
        s = bytearray([1]) * n
        s[0] = s[1] = 0
        for i in range(2, math.isqrt(n) + 1):
            if s[i]:
                s[i * i :: i] = bytearray(len(range(i * i, n, i)))
        _small_sieve = s
    return _small_sieve


def small_primes() -> list[int]:
    """All primes below 2^20, ascending."""
    global _small_primes
    if _small_primes is None:
        s = _sieve()
        _small_primes = [i for i in range(2, _SMALL_PRIME_LIMIT) if s[i]]
    return _small_primes


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _strong_lucas(n: int) -> bool:
    # Selfridge parameter choice (method A).
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -(d + 2) if d > 0 else -(d - 2)
    p, q = 1, (1 - d) // 4
    # Lucas sequence by binary ladder on n+1.
    m = n + 1
    s = 0
    while m % 2 == 0:
        m //= 2
        s += 1
    u, v, qk = 1, p, q % n
    for bit in bin(m)[3:]:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) % n, (d * u + p * v) % n
            if u % 2:
                u += n
            if v % 2:
                v += n
            u //= 2
            v //= 2
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return 1 if n == 1 else 0 if n != 1 and a == 0 and n > 1 else result


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < _SMALL_PRIME_LIMIT:
        return bool(_sieve()[n])
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if n % p == 0:
            return n == p
    if n.bit_length() <= 64:
        return _miller_rabin(n, _MR_BASES_64)
    # BPSW: no counterexample is known.
    return _miller_rabin(n, (2,)) and _strong_lucas(n)


def next_prime(n: int) -> int:
    n += 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n


def prev_prime(n: int) -> int:
    n -= 1
    if n < 2:
        raise ValueError("no prime below 2")
    if n == 2:
        return 2
    if n % 2 == 0:
        n -= 1
    while not is_prime(n):
        n -= 2
    return n


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; intended for n whose prime
    factors are accessible this way (group orders, CRT moduli, contents)."""
    if n < 0:
        n = -n
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        if is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            # Square of a >2^20 prime, or worse; fall back to Pollard rho.
            for p, e in _rho_factor(n).items():
                out[p] = out.get(p, 0) + e
    return dict(sorted(out.items()))


def _rho_factor(n: int) -> dict[int, int]:
    if n == 1:
        return {}
    if is_prime(n):
        return {n: 1}
    d = _pollard_rho(n)
    out = _rho_factor(d)
    for p, e in _rho_factor(n // d).items():
        out[p] = out.get(p, 0) + e
    return out


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return tuple(sorted(ds))


def multiplicative_order(a: int, m: int) -> int:
    """Order of a in (Z/mZ)^*; requires gcd(a, m) = 1."""
    if m == 1:
        return 1
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} not invertible mod {m}")
    order = euler_phi(m)
    for p in factorize(order):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


# ---------------------------------------------------------------------------
# Word-sized prime supplies for CRT resultants.

_WORD_PRIME_TOP = (1 << 31) - 1
_word_primes: list[int] = []

_roots_primes_cache: dict[int, list[int]] = {}


def word_primes(count: int) -> list[int]:
    """The `count` largest primes below 2^31, descending."""
    while len(_word_primes) < count:
        q = prev_prime(_word_primes[-1]) if _word_primes else prev_prime(_WORD_PRIME_TOP + 1)
        _word_primes.append(q)
    return _word_primes[:count]


def primes_one_mod(n: int, count: int) -> list[int]:
    """`count` distinct primes q = 1 (mod n) below 2^31, descending.

    Such q admit elements of order n in GF(q)^*, so degree-n cyclotomic
    resultants reduce to root-of-unity evaluations mod q.
    """
    got = _roots_primes_cache.setdefault(n, [])
    t = ((_WORD_PRIME_TOP - 1) // n) if not got else (got[-1] - 1) // n
    while len(got) < count:
        q = t * n + 1
        t -= 1
        if t < 0 and q < 3:
            raise ValueError(f"ran out of word primes = 1 mod {n}")
        if q > 2 and is_prime(q):
            got.append(q)
    return got[:count]


@lru_cache(maxsize=None)
def order_n_root(q: int, n: int) -> int:
    """An element of order exactly n in GF(q)^*; requires n | q - 1."""
    if (q - 1) % n:
        raise ValueError(f"{n} does not divide {q - 1}")
    fac = factorize(q - 1)
    g = 2
    while True:
        if all(pow(g, (q - 1) // p, q) != 1 for p in fac):
            break
        g += 1
    return pow(g, (q - 1) // n, q)
