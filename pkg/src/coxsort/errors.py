"""Exception hierarchy."""


class CoxeterError(Exception):
    """Base class for every error raised by coxsort."""


class MalformedMatrix(CoxeterError, ValueError):
    pass


class NotFinite(CoxeterError, ValueError):
    pass


class SystemMismatch(CoxeterError, ValueError):
    pass


class NotInitial(CoxeterError, ValueError):
    pass


class NotInParabolic(CoxeterError, ValueError):
    """An element is not in the standard parabolic subgroup a Coxeter element lives in."""


class NotSortable(CoxeterError, ValueError):
    pass


class Reducible(CoxeterError, ValueError):
    pass


class KindMismatch(CoxeterError, ValueError):
    pass


class NotNoncrossing(CoxeterError, ValueError):
    pass


class NumericalDrift(CoxeterError, ArithmeticError):
    pass


class NonInteger(CoxeterError, ArithmeticError):
    pass


class BijectionViolation(CoxeterError, AssertionError):
    """A map that must be a bijection was found not to be one."""


class SearchExhausted(CoxeterError, RuntimeError):
    pass


class IterationCap(CoxeterError, RuntimeError):
    pass
