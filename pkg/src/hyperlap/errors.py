"""Exception types raised across the package."""


class HyperlapError(Exception):
    """Base class for all package errors."""


class InputError(HyperlapError, ValueError):
    """Malformed hypergraph input (unknown vertex, empty hyperedge, ...)."""


class FormatError(InputError):
    """A dataset or native file could not be parsed."""


class ArgumentError(HyperlapError, ValueError):
    """An argument is outside its valid domain."""


class SimplexLookupError(HyperlapError, KeyError):
    """A simplex id or vertex set is not present in the registry."""


class PreconditionError(HyperlapError):
    """An operation's structural precondition does not hold."""


class NumericalError(HyperlapError, ArithmeticError):
    """A numerical routine failed to converge or produced invalid output."""


class DegenerateNetworkError(HyperlapError, ValueError):
    """The contact network has no usable epidemic threshold."""


class SimulationError(HyperlapError, RuntimeError):
    """A simulation exceeded its step cap."""
