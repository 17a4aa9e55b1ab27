"""Exception hierarchy.

Every error carries a short machine ``code`` used by the session runner when
it renders ``ERROR <command> <code>: <message>`` lines.
"""


class PolarisError(Exception):
    code = "Error"


class DivisionByZero(PolarisError, ZeroDivisionError):
    code = "DivisionByZero"


class NotMonic(PolarisError):
    code = "NotMonic"


class NonInvertibleDenominator(PolarisError):
    code = "NonInvertibleDenominator"


class OutOfOverlap(PolarisError):
    code = "OutOfOverlap"


class PointNotOnVariety(PolarisError):
    code = "PointNotOnVariety"


class SingularPoint(PolarisError):
    code = "SingularPoint"


class UndecidableSmoothness(PolarisError):
    code = "UndecidableSmoothness"


class ChartMismatch(PolarisError):
    code = "ChartMismatch"


class SingularSubstitution(PolarisError):
    code = "SingularSubstitution"


class PoleOnRestrictionLocus(PolarisError):
    code = "PoleOnRestrictionLocus"


class ComponentNotDeclared(PolarisError):
    code = "ComponentNotDeclared"


class NotTopDegree(PolarisError):
    code = "NotTopDegree"


class NotTransverse(PolarisError):
    code = "NotTransverse"


class NotAdmissible(PolarisError):
    """A form fails the first-order / normal-crossing requirements."""

    code = "NotAdmissible"


class ConstantMap(PolarisError):
    code = "ConstantMap"


class InseparableFiber(PolarisError):
    code = "InseparableFiber"


class IncomparablePresentations(PolarisError):
    code = "IncomparablePresentations"


class UndecidableContainment(PolarisError):
    code = "UndecidableContainment"


class UnpresentableVariety(PolarisError):
    """The variety (or a boundary component) is not a catalog presentation."""

    code = "UnpresentableVariety"


class BasePoint(PolarisError):
    code = "BasePoint"


class UnknownSpace(PolarisError):
    code = "UnknownSpace"


class IrrationalIntersection(PolarisError):
    code = "IrrationalIntersection"


class BoundaryHit(PolarisError):
    code = "BoundaryHit"


class UnpresentableIntersection(PolarisError):
    code = "UnpresentableIntersection"


class NotABoundingChain(PolarisError):
    code = "NotABoundingChain"


class UndeterminedHomology(PolarisError):
    code = "UndeterminedHomology"
