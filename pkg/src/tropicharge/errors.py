"""Exception hierarchy shared by all modules."""


class TropichargeError(Exception):
    """Base class for every error raised by the package."""


# exact lattice geometry
class EmptyInput(TropichargeError, ValueError):
    pass


class DimensionUnsupported(TropichargeError, ValueError):
    pass


class DimensionMismatch(TropichargeError, ValueError):
    pass


class NotFullDimensional(TropichargeError, ValueError):
    pass


class Unbounded(TropichargeError, ValueError):
    pass


class NotPrimitive(TropichargeError, ValueError):
    pass


class DegenerateSum(TropichargeError, ValueError):
    pass


# tropical polynomials
class DuplicateExponent(TropichargeError, ValueError):
    pass


class LengthMismatch(TropichargeError, ValueError):
    pass


# toric data
class FanError(TropichargeError, ValueError):
    """Ray data does not describe a smooth toric Fano variety."""


class RaysNotNormalized(FanError):
    pass


class NotReflexive(FanError):
    pass


class NotStrictlyConvex(FanError):
    pass


class FanoInequalityViolated(FanError):
    pass


class NotSmooth(FanError):
    pass


class NotAmple(TropichargeError, ValueError):
    pass


class DegenerateFacet(TropichargeError, ValueError):
    pass


# tropical curves
class NewtonMismatch(TropichargeError, ValueError):
    pass


class NotTransverse(TropichargeError, ValueError):
    pass


class DoesNotFit(TropichargeError, ValueError):
    pass


class WrongFacet(TropichargeError, ValueError):
    pass


# series
class GammaResidue(TropichargeError, ArithmeticError):
    pass


class GammaSquared(TropichargeError, ArithmeticError):
    """A product of two Euler-gamma terms was requested."""


class BadConstantTerm(TropichargeError, ValueError):
    pass


# central charges
class TelescopeFailure(TropichargeError, ArithmeticError):
    pass


# amoeba lab
class UnsupportedDimension(TropichargeError, ValueError):
    pass


# cli
class ConfigInvalid(TropichargeError, ValueError):
    pass


class NothingToRender(TropichargeError, ValueError):
    pass
