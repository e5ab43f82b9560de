"""Exception hierarchy shared by every module of the package."""


class GeometryError(Exception):
    """Base class for all errors raised by biharmonic_tanno."""


class OutOfRange(GeometryError, ValueError):
    """A parameter lies outside its admissible domain."""


class AntipodalPoint(GeometryError, ValueError):
    """A point sits at (or too near) the excluded point of a stereographic chart."""


class BaseMismatch(GeometryError, ValueError):
    """Tangent vectors combined pointwise live at different base points."""


class DomainBoundary(GeometryError, ValueError):
    """A finite-difference stencil would leave the sampled domain."""


class SingularMetric(GeometryError, ArithmeticError):
    """Chart metric matrix too ill-conditioned to invert."""


class DegenerateCurve(GeometryError, ValueError):
    """Curve speed below the regularity threshold."""


class NotUnitSpeed(GeometryError, ValueError):
    pass


class NotLegendre(GeometryError, ValueError):
    pass


class InvalidFrame(GeometryError, ValueError):
    pass


class InvalidDirection(GeometryError, ValueError):
    pass


class IllConditioned(GeometryError, ArithmeticError):
    """Linear system refused because its condition number exceeds the guard."""


class InconsistentSolution(GeometryError, ValueError):
    pass
