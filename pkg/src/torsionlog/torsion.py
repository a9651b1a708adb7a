"""Torsion points of the n-torus, their relation lattices, shortest
relations, and subgroups of (Z/NZ)^* with conductors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonCoprimeError
from .primes import divisors, euler_phi


class TorsionPoint:
    """zeta = (w^{u_1},...,w^{u_n}) for a fixed root of unity w of order N.

    Serialized as "N:u1,u2,...,un".  The exponents are stored reduced into
    [0, N); the order N/gcd(N, u_1,...,u_n) is cached.
    """

    __slots__ = ("modulus", "exponents", "order")

    def __init__(self, modulus: int, exponents):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        u = tuple(int(e) % modulus for e in exponents)
        if not u:
            raise ValueError("need at least one coordinate")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "exponents", u)
        g = math.gcd(modulus, *u)
        object.__setattr__(self, "order", modulus // g)

    def __setattr__(self, name, value):
        raise AttributeError("TorsionPoint is immutable")

    @property
    def n(self) -> int:
        return len(self.exponents)

    def conjugate(self, c: int) -> "TorsionPoint":
        return TorsionPoint(self.modulus, tuple(c * e for e in self.exponents))

    @classmethod
    def parse(cls, text: str) -> "TorsionPoint":
        mod_part, _, u_part = text.partition(":")
        return cls(int(mod_part), [int(x) for x in u_part.split(",")])

    def render(self) -> str:
        return f"{self.modulus}:" + ",".join(str(e) for e in self.exponents)

    def __eq__(self, other):
        return (
            isinstance(other, TorsionPoint)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return f"TorsionPoint({self.render()!r})"


@dataclass(frozen=True)
class RelationLattice:
    """Integer column basis, in column Hermite normal form, of the lattice
    of exponent vectors a with zeta^a = 1."""

    basis: tuple[tuple[int, ...], ...]  # rows; column j is a basis vector

    def determinant(self) -> int:
        # The HNF is triangular, so the determinant is the diagonal product.
        det = 1
        for i in range(len(self.basis)):
            det *= self.basis[i][i]
        return abs(det)


def _column_hnf(columns: list[list[int]], n: int) -> list[list[int]]:
    """Column HNF (lower triangular, positive diagonal, entries below a
    pivot row reduced into [0, pivot)) of the spanned full-rank lattice."""
    cols = [c[:] for c in columns]
    basis: list[list[int]] = []
    for i in range(n):
        cols = [c for c in cols if any(c)]
        while True:
            nz = [c for c in cols if c[i] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[i]))
            small = nz[0]
            for c in nz[1:]:
                q = c[i] // small[i]
                for k in range(n):
                    c[k] -= q * small[k]
        pivot = next((c for c in cols if c[i] != 0), None)
        if pivot is None:
            raise ValueError("lattice does not have full rank")
        if pivot[i] < 0:
            pivot = [-x for x in pivot]
        cols = [c for c in cols if c is not pivot]
        for b in basis:
            q = b[i] // pivot[i]
            if q:
                for k in range(n):
                    b[k] -= q * pivot[k]
        basis.append(pivot)
    return [[basis[j][i] for j in range(n)] for i in range(n)]


def relation_lattice(zeta: TorsionPoint) -> RelationLattice:
    """HNF basis of {a in Z^n : <u, a> = 0 mod N}; |det| = order(zeta)."""
    n = zeta.n
    # Kernel of (t, a) -> t*N + <u, a> over Z, projected onto the a-block.
    m = n + 1
    row = [zeta.modulus, *zeta.exponents]
    unimod = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    while True:
        nz = [j for j in range(m) if row[j] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda j: abs(row[j]))
        j0 = nz[0]
        for j in nz[1:]:
            q = row[j] // row[j0]
            row[j] -= q * row[j0]
            for i in range(m):
                unimod[i][j] -= q * unimod[i][j0]
    pivot_col = next(j for j in range(m) if row[j] != 0)
    kernel_cols = [[unimod[i][j] for i in range(1, m)] for j in range(m) if j != pivot_col]
    rows = _column_hnf(kernel_cols, n)
    return RelationLattice(tuple(tuple(r) for r in rows))


def _relation_box(zeta: TorsionPoint, radius: int):
    """All vectors in [-radius, radius]^n with <u, a> = 0 mod N, as an array."""
    n = zeta.n
    side = np.arange(-radius, radius + 1, dtype=np.int64)
    grids = np.meshgrid(*([side] * n), indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    dots = points @ np.array(zeta.exponents, dtype=np.int64)
    return points[dots % zeta.modulus == 0]


def delta_with_witness(zeta: TorsionPoint) -> tuple[int, tuple[int, ...]]:
    """min{|a|_inf : a in relation lattice, a != 0} and a witness.

    Minkowski for the sup norm bounds the minimum by det^(1/n) =
    order(zeta)^(1/n), so one box of that radius suffices.
    """
    if zeta.order == 1:
        return 1, (1,) + (0,) * (zeta.n - 1)
    bound = 1
    while bound**zeta.n < zeta.order:
        bound += 1
    sols = _relation_box(zeta, bound)
    norms = np.max(np.abs(sols), axis=1)
    nonzero = norms > 0
    idx = int(np.flatnonzero(nonzero)[np.argmin(norms[nonzero])])
    return int(norms[idx]), tuple(int(x) for x in sols[idx])


def delta(zeta: TorsionPoint) -> int:
    return delta_with_witness(zeta)[0]


def rho(u) -> int | float:
    """Sup norm of a shortest nonzero integer vector orthogonal to u.

    Infinity exactly when n = 1 and u != 0 (inf over the empty set); the
    zero vector gives 1.
    """
    u = tuple(int(x) for x in u)
    n = len(u)
    if all(x == 0 for x in u):
        return 1
    if n == 1:
        return math.inf
    if any(x == 0 for x in u):
        return 1
    # Swapping two coordinates (one negated) is orthogonal, so the minimum
    # is at most min over pairs of max(|u_i|, |u_j|).
    bound = min(max(abs(u[i]), abs(u[j])) for i in range(n) for j in range(i + 1, n))
    side = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(*([side] * n), indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    dots = points @ np.array(u, dtype=np.int64)
    sols = points[dots == 0]
    norms = np.max(np.abs(sols), axis=1)
    return int(norms[norms > 0].min())


@dataclass(frozen=True)
class GaloisSubgroup:
    """Subgroup of (Z/NZ)^* given by generators, with materialized sorted
    elements (desk scale keeps subgroup scans as plain set operations)."""

    modulus: int
    generators: tuple[int, ...]
    elements: tuple[int, ...] = field(compare=False)

    def __contains__(self, x: int) -> bool:
        return x % self.modulus in set(self.elements)

    def index(self) -> int:
        return euler_phi(self.modulus) // len(self.elements)


def subgroup_from_generators(modulus: int, generators) -> GaloisSubgroup:
    gens = tuple(int(g) % modulus for g in generators)
    for g in gens:
        if math.gcd(g, modulus) != 1:
            raise NonCoprimeError(f"generator {g} not coprime to {modulus}")
    identity = 1 % modulus
    elements = {identity}
    frontier = [identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % modulus
            if y not in elements:
                elements.add(y)
                frontier.append(y)
    return GaloisSubgroup(modulus, gens, tuple(sorted(elements)))


def full_group(modulus: int) -> GaloisSubgroup:
    if modulus == 1:
        return GaloisSubgroup(1, (0,), (0,))
    elements = tuple(a for a in range(1, modulus) if math.gcd(a, modulus) == 1)
    return GaloisSubgroup(modulus, elements, elements)


def conductor(group: GaloisSubgroup) -> int:
    """Least divisor f of N with ker((Z/N)^* -> (Z/f)^*) inside the group."""
    big_n = group.modulus
    if big_n == 1:
        return 1
    members = set(group.elements)
    for f in divisors(big_n):
        if all(
            x in members
            for x in range(1, big_n + 1)
            if x % f == 1 % f and math.gcd(x, big_n) == 1
        ):
            return f
    raise AssertionError("conductor scan failed")  # pragma: no cover
