"""Exception hierarchy shared by all modules.

Every failure a caller is expected to branch on gets its own class; the CLI
maps them to exit codes (vanishing -> 3, precision -> 4, numeric -> 5).
"""


class TorsionlogError(Exception):
    pass


class PolynomialSyntaxError(TorsionlogError):
    """Raised by the expression parser, with 1-based line/column."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ZeroPolynomialError(TorsionlogError):
    pass


class DimensionMismatchError(TorsionlogError):
    pass


class NonCoprimeError(TorsionlogError):
    """Generator not coprime to the modulus, or a direction vector with gcd > 1."""


class VanishesOnOrbit(TorsionlogError):
    """The polynomial vanishes at some (hence every) full-orbit conjugate."""


class ZeroSpecialization(TorsionlogError):
    """Specializing to the orbit produced the zero polynomial."""


class VanishesAtPoint(TorsionlogError):
    pass


class PrecisionExhausted(TorsionlogError):
    """The local valuation stayed inconclusive at the maximum lift exponent."""


class DegenerateDistance(TorsionlogError):
    """Root-of-unity distance requested for order 1 (|zeta - 1| = 0)."""


class AllVanish(TorsionlogError):
    """Every sampled torsion point vanished on its orbit."""


class RootFindingFailure(TorsionlogError):
    pass


class BudgetTooSmall(TorsionlogError):
    pass


class NumericalUnderflow(TorsionlogError):
    pass


class InsufficientData(TorsionlogError):
    pass
