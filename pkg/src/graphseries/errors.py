"""Exception types shared across the package."""


class GraphSeriesError(Exception):
    """Base class; the CLI reports these by class name."""


# series core
class ZeroLeadingCoefficient(GraphSeriesError):
    pass


class OrderExceeded(GraphSeriesError):
    pass


class LatticeError(GraphSeriesError):
    pass


# catalog
class DivergentProduct(GraphSeriesError):
    pass


class UnknownVariant(GraphSeriesError):
    pass


class UnknownName(GraphSeriesError):
    pass


# graphs
class SpecViolation(GraphSeriesError):
    pass


class UnsupportedTopology(GraphSeriesError):
    pass


class UnknownGraph(GraphSeriesError):
    pass


# indefinite theta
class NonMonotoneCone(GraphSeriesError):
    pass


class DivergentRange(GraphSeriesError):
    pass


# jets
class BudgetExceeded(GraphSeriesError):
    pass


# registry
class UnknownIdentity(GraphSeriesError):
    pass


# asymptotics
class PrecisionLoss(GraphSeriesError):
    pass
