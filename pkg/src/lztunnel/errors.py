"""Exception hierarchy for the tunneling-time toolkit."""


class LzError(Exception):
    """Base class for all errors raised by :mod:`lztunnel`."""

    code = "lz_error"


class InvalidParameters(LzError, ValueError):
    code = "invalid_parameters"


class WindowTooSmall(LzError):
    """The integration window cannot represent the asymptotic initial state."""

    code = "window_too_small"


class NormDriftExceeded(LzError):
    code = "norm_drift_exceeded"


class WindowNotConverged(LzError):
    code = "window_not_converged"


class StepUnderflow(LzError):
    code = "step_underflow"


class TailNotSettled(LzError):
    code = "tail_not_settled"


class NoCrossing(LzError):
    code = "no_crossing"


class DegenerateS1(LzError):
    code = "degenerate_s1"


class ZeroSlope(LzError):
    code = "zero_slope"
