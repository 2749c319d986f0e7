"""Exception types shared by all modules."""


class GeometryError(ValueError):
    pass


# projective_core
class ZeroVector(GeometryError):
    pass


class DependentPoints(GeometryError):
    pass


class EmptyIntersection(GeometryError):
    pass


class Singular(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


# quadric_engine
class DegenerateQuadric(GeometryError):
    pass


class PointOnQuadric(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class IsotropicMirror(GeometryError):
    pass


class NotOrthogonal(GeometryError):
    pass


class LineOnGenerator(GeometryError):
    pass


# cayley_klein
class PointOnAbsolute(GeometryError):
    pass


class InvalidCenter(GeometryError):
    pass


class OutsideSpaceForm(GeometryError):
    pass


class UnsupportedEuclidean(GeometryError):
    pass


class WrongSide(GeometryError):
    pass


# moebius_projection
class ProjectingCenter(GeometryError):
    pass


class EmptySection(GeometryError):
    pass


class NoRealLift(GeometryError):
    pass


class BranchPoint(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


class NonPositiveDistance(GeometryError):
    pass


# laguerre
class Degenerate(GeometryError):
    pass


class KindMismatch(GeometryError):
    pass


class NoCommonTangent(GeometryError):
    pass


class WrongFamily(GeometryError):
    pass


# lie_sphere
class NotUnit(GeometryError):
    pass


class NotOnQuadric(GeometryError):
    pass


class UnknownRow(GeometryError):
    pass


class OnPolarHyperplane(GeometryError):
    pass


class ZeroRadius(GeometryError):
    pass


class NoRealRepresentative(GeometryError):
    pass


# elliptic_fn
class DomainError(GeometryError):
    pass


class SumNotZero(GeometryError):
    pass


# nets
class DegenerateInput(GeometryError):
    pass


class TangentPlane(GeometryError):
    pass


class NotGeneric(GeometryError):
    pass


class HypothesisViolated(GeometryError):
    pass


class InvalidParams(GeometryError):
    pass


class InsufficientData(GeometryError):
    pass


class NotCoplanarNet(GeometryError):
    pass


class WindowEmpty(GeometryError):
    pass


class NotOnBaseCurve(GeometryError):
    pass


# cli_render
class NotRepresentable(GeometryError):
    pass
