"""Exception types shared by all modules.

Every error carries a short class name that the CLI prints on stderr, so
callers can match on ``type(err).__name__``.
"""


class LmapError(ValueError):
    """Base class for every input or precondition failure."""


class TooFewVertices(LmapError):
    pass


class NotConvex(LmapError):
    pass


class ParallelEdges(LmapError):
    def __init__(self, i: int, j: int, msg: str = ""):
        self.pair = (i, j)
        super().__init__(msg or f"edges {i} and {j} are parallel")


class SameEdge(LmapError):
    pass


class SameUnit(LmapError):
    pass


class ParallelLines(LmapError):
    pass


class ZeroFactor(LmapError):
    pass


class NotInPortion(LmapError):
    pass


class NotChasing(LmapError):
    pass


class VertexOutOfRange(LmapError):
    pass


class NotSorted(LmapError):
    pass


class QuadrantMismatch(LmapError):
    pass


class NoCandidates(LmapError):
    pass


class NotInscribed(LmapError):
    pass


class GenerationFailed(LmapError):
    pass
