"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for geometric failures."""


class CollinearityError(GeometryError):
    """Three of four correspondence points are collinear, or a quad is not."""


class VanishingLineError(GeometryError):
    """A point maps onto (or too close to) the vanishing line of a projective map."""


class LineMissesDomainError(GeometryError):
    """A chord was requested for a line that does not meet the domain interior."""


class NotInteriorError(GeometryError):
    """A point required to be interior is on or outside the boundary."""


class UnboundedImageError(GeometryError):
    """A projective image of a domain meets the vanishing line."""


class NotAsymptoticError(GeometryError):
    """Two geodesics do not share a forward endpoint."""


class SupportLineError(GeometryError):
    """No unique support line exists (polygon vertex) and none was supplied."""


class NotC2Error(GeometryError):
    """Curvature was requested at a point where the boundary is not C2."""


class DegenerateChordError(GeometryError):
    """A chord degenerates (boundary point coincides with an interior point)."""


class InfeasibleDataError(GeometryError):
    """Interpolation endpoint data violates the sandwich inequality."""


class SolverError(RuntimeError):
    """An iterative solver failed to converge or produced an invalid result."""
