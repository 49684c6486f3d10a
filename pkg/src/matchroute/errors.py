"""Exception hierarchy shared by all routing modules."""


class MatchRouteError(Exception):
    """Base class for every error raised by this package."""


# graph construction / generation


class GraphError(MatchRouteError, ValueError):
    pass


class NotSimple(GraphError):
    pass


class NotRegular(GraphError):
    pass


class Disconnected(GraphError):
    pass


class InfeasibleDegree(GraphError):
    pass


class RetriesExhausted(MatchRouteError):
    pass


class ParseError(MatchRouteError, ValueError):
    pass


# permutations


class PermutationError(MatchRouteError, ValueError):
    pass


# simulation


class MatchingError(MatchRouteError):
    """A round of a schedule is not a valid matching of the graph.

    ``round_index`` is filled in by the simulator when the failing matching
    is part of a schedule.
    """

    def __init__(self, message, round_index=None):
        super().__init__(message)
        self.round_index = round_index

    def __str__(self):
        msg = super().__str__()
        if self.round_index is not None:
            return f"round {self.round_index}: {msg}"
        return msg


class EdgeNotInGraph(MatchingError):
    def __init__(self, edge, round_index=None):
        super().__init__(f"edge {edge[0]}-{edge[1]} is not in the graph", round_index)
        self.edge = edge


class VertexReused(MatchingError):
    def __init__(self, vertex, round_index=None):
        super().__init__(f"vertex {vertex} appears in two edges", round_index)
        self.vertex = vertex


# partitioning


class ResamplesExhausted(MatchRouteError):
    def __init__(self, resamples, violators):
        super().__init__(
            f"no valid partition after {resamples} resamples "
            f"({violators} vertices still violate the degree condition)"
        )
        self.resamples = resamples
        self.violators = violators


# path building


class FrontierStuck(MatchRouteError):
    def __init__(self, layer, achieved, wanted):
        super().__init__(f"frontier stuck at layer {layer}: {achieved} of {wanted} vertices")
        self.layer = layer
        self.achieved = achieved
        self.wanted = wanted


class NoCrossingEdge(MatchRouteError):
    pass


class InvalidFamily(MatchRouteError):
    pass


class BatchFailed(MatchRouteError):
    def __init__(self, residual):
        super().__init__(f"could not route any of {len(residual)} batch vertices")
        self.residual = list(residual)


# scheduling


class PartitionFailed(MatchRouteError):
    pass


class RoutingFailed(MatchRouteError):
    def __init__(self, residual):
        super().__init__(f"{len(residual)} pairs left unrouted after the retry ladder")
        self.residual = list(residual)


# oracle


class ExceedsCap(MatchRouteError):
    pass


class TooLarge(MatchRouteError, ValueError):
    pass
