"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class TreqError(Exception):
    exit_code = 70


class ParseError(TreqError, ValueError):
    exit_code = 64


class RankError(TreqError, ValueError):
    exit_code = 65


class TrivialWordError(TreqError, ValueError):
    exit_code = 65


class PreconditionError(TreqError, ValueError):
    exit_code = 65


class NotAutomorphismError(TreqError, ValueError):
    exit_code = 65


class DegenerateImageError(TreqError, ValueError):
    """A nontrivial cyclic word was sent to the identity."""

    exit_code = 65


class SingularMatrixError(TreqError, ValueError):
    exit_code = 67


class RadiusError(TreqError, ValueError):
    """The search ball was too small to resolve an axis configuration."""

    exit_code = 66


class SamplingError(TreqError, RuntimeError):
    exit_code = 68
