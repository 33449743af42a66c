"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PseudoredError(Exception):
    """Base class for every error raised by this package."""


class ParseError(PseudoredError, ValueError):
    pass


class NotPrime(PseudoredError, ValueError):
    pass


class NotPurelyInseparable(PseudoredError, ValueError):
    """A generator's power is already a p-th power below it."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class TowerMismatch(PseudoredError, ValueError):
    pass


class DivisionByZero(PseudoredError, ZeroDivisionError):
    pass


class DimensionMismatch(PseudoredError, ValueError):
    pass


class Singular(PseudoredError, ValueError):
    pass


class ZeroElement(PseudoredError, ValueError):
    pass


class NotScalarPower(PseudoredError, ArithmeticError):
    pass


class MissingIdentity(PseudoredError, ValueError):
    pass


class AmbientMismatch(PseudoredError, ValueError):
    pass


class ZeroSubspace(PseudoredError, ValueError):
    pass


class IncompatibleElement(PseudoredError, TypeError):
    pass


class NotCoprime(PseudoredError, ValueError):
    pass


class SubfieldMismatch(PseudoredError, ValueError):
    pass


class NotDiagonalizable(PseudoredError, ArithmeticError):
    pass


class NonCommutingGenerators(PseudoredError, ValueError):
    pass


class GeneratorCountMismatch(PseudoredError, ValueError):
    pass


class CapExceeded(PseudoredError, RuntimeError):
    pass


class NotDominant(PseudoredError, ValueError):
    pass


class MissingTableEntry(PseudoredError, KeyError):
    pass


class NotInvertible(PseudoredError, ValueError):
    pass


class DominanceViolated(PseudoredError, ValueError):
    pass
