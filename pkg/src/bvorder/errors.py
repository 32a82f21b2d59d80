"""Exception hierarchy shared by every module of the package."""


class BVError(Exception):
    """Base class for all errors raised by bvorder."""


class InvalidArgument(BVError, ValueError):
    pass


class InvalidElement(BVError, ValueError):
    """Malformed element data: wrong length, non-finite entries, asymmetric matrix."""


class SpaceMismatch(BVError, ValueError):
    pass


class NotInCone(BVError, ValueError):
    pass


class NumericalFailure(BVError, ArithmeticError):
    """The Jacobi eigensolver did not reach its off-diagonal target."""


class OutOfDomain(BVError, ValueError):
    pass


class NonLatticeSpace(BVError, TypeError):
    """Operation needs a lattice-ordered codomain (suprema of variation sums)."""


class TooManyBreakpoints(BVError, ValueError):
    pass


class IntervalMismatch(BVError, ValueError):
    pass


class ModeMismatch(BVError, ValueError):
    """Binary operation on functions with different interpolation modes."""
