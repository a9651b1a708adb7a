"""Sparse Laurent polynomials over Q, dense univariate polynomials, and
integer exponent-matrix substitution.

LPoly stores a map from integer exponent vectors (entries may be negative)
to nonzero Fraction coefficients; the zero polynomial is the empty map.
All values are immutable after construction and every operation is pure.

The canonical term order everywhere is graded lexicographic: compare total
degree first, then the exponent vector lexicographically.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DimensionMismatchError, ZeroPolynomialError

Exponent = tuple[int, ...]


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def grlex_key(exponent: Exponent):
    return (sum(exponent), exponent)


class LPoly:
    """Sparse multivariate Laurent polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Exponent, Fraction] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise DimensionMismatchError(f"exponent {exp} has length != {nvars}")
            coeff = _as_fraction(coeff)
            if coeff:
                clean[exp] = clean.get(exp, Fraction(0)) + coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("LPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "LPoly":
        return cls(nvars, {(0,) * nvars: _as_fraction(c)})

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "LPoly":
        exp = [0] * nvars
        exp[index] = power
        return cls(nvars, {tuple(exp): Fraction(1)})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> list[Fraction]:
        return [self.terms[e] for e in self.sorted_exponents()]

    def sorted_exponents(self) -> list[Exponent]:
        return sorted(self.terms, key=grlex_key, reverse=True)

    def total_degree(self) -> int:
        """Max absolute coordinate sum over the support; 0 for the zero poly."""
        if not self.terms:
            return 0
        return max(sum(abs(e) for e in exp) for exp in self.terms)

    def is_laurent(self) -> bool:
        return any(e < 0 for exp in self.terms for e in exp)

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.terms[self.sorted_exponents()[0]]

    # -- arithmetic ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, LPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __neg__(self) -> "LPoly":
        return LPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: "LPoly") -> "LPoly":
        self._check(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return LPoly(self.nvars, merged)

    def __sub__(self, other: "LPoly") -> "LPoly":
        return self + (-other)

    def __mul__(self, other: "LPoly") -> "LPoly":
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LPoly(self.nvars, out)

    def scale(self, c) -> "LPoly":
        c = _as_fraction(c)
        return LPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def _check(self, other: "LPoly"):
        if self.nvars != other.nvars:
            raise DimensionMismatchError(f"nvars {self.nvars} != {other.nvars}")

    def __repr__(self):
        return f"LPoly({self.nvars}, {render_lpoly(self)!r})"


class UPoly:
    """Dense univariate polynomial; coefficient index = exponent.

    Coefficients are ints or Fractions; the leading coefficient is nonzero
    unless the polynomial is zero (empty coefficient tuple).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [(_c if isinstance(_c, (int, Fraction)) else Fraction(_c)) for _c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def from_int_list(cls, coeffs: list[int]) -> "UPoly":
        return cls(coeffs)

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def leading_coefficient(self):
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs])

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        if self.is_zero() or other.is_zero():
            return UPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        """Exact polynomial division over Q."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        db = other.degree()
        lead = Fraction(other.coeffs[-1])
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db] / lead
            if c:
                quot[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * Fraction(b)
        return UPoly(quot), UPoly(rem[:db] if db > 0 else [])

    def shift_down(self, k: int) -> "UPoly":
        """Divide by X^k; requires the k lowest coefficients to vanish."""
        if any(self.coeffs[:k]):
            raise ValueError("not divisible by X^k")
        return UPoly(self.coeffs[k:])

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs) if i >= 1])

    def low_order(self) -> int:
        """Multiplicity of the root 0 (index of first nonzero coefficient)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ZeroPolynomialError("zero polynomial")

    def to_lpoly(self) -> LPoly:
        return LPoly(1, {(i,): c for i, c in enumerate(self.coeffs)})

    def __repr__(self):
        return f"UPoly({render_upoly(self)!r})"


def upoly_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd over Q by the Euclidean algorithm."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    lead = Fraction(a.coeffs[-1])
    return UPoly([Fraction(c) / lead for c in a.coeffs])


def squarefree_decomposition(f: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: f = c * prod a_i^i with the a_i squarefree, coprime.

    Returns the (a_i, i) pairs with a_i nonconstant; the constant is dropped.
    """
    if f.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if f.degree() == 0:
        return []
    out = []
    df = f.derivative()
    a = upoly_gcd(f, df)
    b = f.divmod(a)[0]
    c = df.divmod(a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = upoly_gcd(b, d)
        if a.degree() > 0:
            out.append((a, i))
        b = b.divmod(a)[0]
        c = d.divmod(a)[0]
        d = c - b.derivative()
        i += 1
    return out


# ---------------------------------------------------------------------------
# Exponent matrices and monomial substitution.


class ExpMatrix:
    """Integer matrix acting on exponents; rows = source variables."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("ExpMatrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged ExpMatrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]))
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ExpMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "ExpMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, ExpMatrix) and self.entries == other.entries

    def __matmul__(self, other: "ExpMatrix") -> "ExpMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError("matrix shapes do not compose")
        return ExpMatrix(
            [
                [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) for j in range(other.cols)]
                for i in range(self.rows)
            ]
        )

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatchError("determinant of non-square matrix")
        # Fraction-free Bareiss elimination.
        n = self.rows
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __repr__(self):
        return f"ExpMatrix({[list(r) for r in self.entries]})"


def substitute_monomial(f: LPoly, a: ExpMatrix) -> LPoly:
    """F(X^A): each source monomial with exponent vector e maps to A^T e.

    Satisfies substitute(substitute(F, A), B) = substitute(F, A @ B).
    """
    if a.rows != f.nvars:
        raise DimensionMismatchError(f"matrix has {a.rows} rows, polynomial has {f.nvars} variables")
    out: dict[Exponent, Fraction] = {}
    for exp, coeff in f.terms.items():
        new = tuple(sum(a.entries[i][j] * exp[i] for i in range(a.rows)) for j in range(a.cols))
        out[new] = out.get(new, Fraction(0)) + coeff
    return LPoly(a.cols, out)


def substitute_monomial_normalized(f: LPoly, a: ExpMatrix) -> tuple[LPoly, tuple[int, ...]]:
    """F(X^A) * X^v with the minimal v making the result a polynomial
    coprime to X_1...X_n; returns (result, v)."""
    g = substitute_monomial(f, a)
    if g.is_zero():
        return g, (0,) * a.cols
    mins = [min(exp[j] for exp in g.terms) for j in range(g.nvars)]
    v = tuple(-m for m in mins)
    shifted = {tuple(e + v[j] for j, e in enumerate(exp)): c for exp, c in g.terms.items()}
    return LPoly(g.nvars, shifted), v


# ---------------------------------------------------------------------------
# Content and primitive part.


def content_primitive(f):
    """Split f = content * primitive with an integer primitive part of
    content 1 and positive leading coefficient in graded-lex order.

    Accepts LPoly or UPoly; the primitive part has the same type.
    """
    if isinstance(f, UPoly):
        lp = f.to_lpoly()
        content, prim = content_primitive(lp)
        return content, UPoly([prim.terms.get((i,), 0) for i in range(f.degree() + 1)])
    if f.is_zero():
        raise ZeroPolynomialError("content of the zero polynomial")
    coeffs = [f.terms[e] for e in f.sorted_exponents()]
    num_gcd = 0
    den_lcm = 1
    for c in coeffs:
        num_gcd = math.gcd(num_gcd, c.numerator)
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    content = Fraction(num_gcd, den_lcm)
    if coeffs[0] < 0:
        content = -content
    prim = LPoly(f.nvars, {e: c / content for e, c in f.terms.items()})
    return content, prim


# ---------------------------------------------------------------------------
# Rendering (inverse of the parser; canonical graded-lex order).


def _render_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_lpoly(f: LPoly) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for exp in f.sorted_exponents():
        coeff = f.terms[exp]
        factors = []
        for j, e in enumerate(exp):
            if e == 1:
                factors.append(f"x{j + 1}")
            elif e != 0:
                factors.append(f"x{j + 1}^{e}")
        mag = abs(coeff)
        if not factors:
            body = _render_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_render_coeff(mag)] + factors)
        pieces.append(("-" if coeff < 0 else "+", body))
    sign, body = pieces[0]
    text = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def render_upoly(f: UPoly) -> str:
    """Univariate rendering with bare `x`, highest degree first."""
    if f.is_zero():
        return "0"
    pieces = []
    for i in range(f.degree(), -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        c = _as_fraction(c)
        mag = abs(c)
        if i == 0:
            body = _render_coeff(mag)
        else:
            xs = "x" if i == 1 else f"x^{i}"
            body = xs if mag == 1 else f"{_render_coeff(mag)}*{xs}"
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    text = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
