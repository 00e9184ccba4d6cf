"""Exception types shared across the package."""


class B2Error(Exception):
    """Base class for every error raised by b2dunkl."""


class ZeroDenominatorTerm(B2Error, ZeroDivisionError):
    """A denominator Pochhammer symbol vanishes inside the summed range."""


class NotTerminating(B2Error, ValueError):
    pass


class NotBalanced(B2Error, ValueError):
    pass


class DivisionByZero(B2Error, ZeroDivisionError):
    """An explicit coefficient of an identity has a vanishing denominator."""


class VarSetMismatch(B2Error, ValueError):
    pass


class NotDivisible(B2Error, ArithmeticError):
    pass


class RangeError(B2Error, ValueError):
    pass


class NotHomogeneous(B2Error, ValueError):
    pass


class SingularParameter(B2Error, ArithmeticError):
    """kappa hits a pole of the moment functional (or is a singular value)."""


class PoleInDegreeFactor(B2Error, ArithmeticError):
    """4*kappa + n or 8*kappa + n vanishes for an even degree n in use."""


class SingularSystem(B2Error, ArithmeticError):
    """The linear system defining V in some degree is rank deficient or inconsistent."""


class InvalidWeight(B2Error, ValueError):
    pass


class KappaOutOfRange(B2Error, ValueError):
    pass
