class SynthesisError(Exception):
    """Base class for every failure the package reports. `exit_code` is what the CLI returns."""

    exit_code = 3


class TargetParseError(SynthesisError):
    exit_code = 2


class AllZero(SynthesisError):
    exit_code = 2


class DegreeZero(SynthesisError):
    pass


class NonConvergence(SynthesisError):
    pass


class CutoffExceeded(SynthesisError):
    pass


class ZeroNorm(SynthesisError):
    pass


class DegreeLimitExceeded(SynthesisError):
    pass


class NumericalInconsistency(SynthesisError):
    pass


class ConsistencyAlarm(SynthesisError):
    exit_code = 4


class ValidationFailure(SynthesisError):
    exit_code = 5
