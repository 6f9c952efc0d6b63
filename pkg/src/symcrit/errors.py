"""Exception types raised across the package.

Every error derives from ``SymcritError`` so callers (and the CLI) can catch
one base class and map it to an exit code.
"""


class SymcritError(Exception):
    """Base class for all package errors."""


# curve_core
class SingularModel(SymcritError):
    pass


class ZeroScale(SymcritError):
    pass


class ZeroTwist(SymcritError):
    pass


class ZeroInput(SymcritError):
    pass


# reduction
class UnclassifiedReduction(SymcritError):
    pass


class TableMiss(SymcritError):
    pass


# criteria
class InconsistentPair(SymcritError):
    pass


class DegreeDivisibleByP(SymcritError):
    pass


class NotSupportedPrime(SymcritError):
    pass


class PreconditionFailed(SymcritError):
    """A criterion's hypotheses do not hold for the given pair."""


# goodred
class NoValidH(SymcritError):
    pass


class PrecisionFailure(SymcritError):
    pass


class UnsupportedReduction(SymcritError):
    pass


class BadReduction(SymcritError):
    pass


class SingularReduction(SymcritError):
    pass


# torsion oracle
class CharacteristicClash(SymcritError):
    pass


class BasisNotFound(SymcritError):
    pass


class PairingDegenerate(SymcritError):
    pass


class NotIsomorphic(SymcritError):
    pass


class ResourceBound(SymcritError):
    pass


# diophantine
class DegenerateFrey(SymcritError):
    pass


class EquationViolated(SymcritError):
    pass


class GcdViolated(SymcritError):
    pass


class HypothesisFailed(SymcritError):
    pass


class InputError(SymcritError):
    """Malformed user input (curve JSON, CLI arguments)."""
