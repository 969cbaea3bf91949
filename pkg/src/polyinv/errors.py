"""Exception types shared across the package."""


class PolyInvError(Exception):
    """Base class for all errors raised by polyinv."""


class DegenerateGeometry(PolyInvError):
    """Geometry is too close to a degenerate configuration to proceed."""


class CenterHit(DegenerateGeometry):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"point {index} coincides with an inversion center")


class PlanesMeetInLine(DegenerateGeometry):
    pass


class DegenerateArc(DegenerateGeometry):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"inversion center lies on edge {edge}")


class DegeneratePolygon(DegenerateGeometry):
    pass


class NormalizationFailed(DegenerateGeometry):
    pass


class NoGenericProjection(DegenerateGeometry):
    pass


class SkippedDegenerate(DegenerateGeometry):
    pass


class ParseError(PolyInvError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StateExplosion(PolyInvError):
    pass


class Unresolved(PolyInvError):
    pass
