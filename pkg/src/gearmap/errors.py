"""Exception hierarchy shared by all gearmap modules."""


class GearMapError(Exception):
    """Base class; the CLI maps these to exit code 3."""


class SingularityError(GearMapError):
    """Evaluation at (or numerically at) a pole."""


class PrevertexSingularity(SingularityError):
    pass


class LatticePointPole(SingularityError):
    pass


class PoleAtVertex(SingularityError):
    pass


class PoleAtPoint(SingularityError):
    pass


class PoleOnPath(SingularityError):
    pass


class ToleranceNotMet(GearMapError):
    pass


class DivisionByZeroSolution(GearMapError):
    pass


class BranchAmbiguity(GearMapError):
    pass


class ZeroDerivative(GearMapError):
    pass


class NotAPregear(GearMapError):
    pass


class InversionFailed(GearMapError):
    pass


class NotCentered(GearMapError):
    pass


class SeedVanishes(GearMapError):
    pass


class TailTooLarge(GearMapError):
    pass


class NoRoot(GearMapError):
    pass


class NoRealRoots(GearMapError):
    pass


class LeftRegion(GearMapError):
    pass


class MaxIterations(GearMapError):
    pass


class QuadratureFailure(GearMapError):
    pass
