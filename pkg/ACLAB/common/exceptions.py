class ACLabError(Exception):
    """Base class for every error raised by the lab."""


class ConfigError(ACLabError, ValueError):
    """Invalid model spec, run config or operation precondition.

    `key` names the offending field and `line` the config-file line it sits on,
    when known.
    """

    def __init__(self, message, key=None, line=None):
        self.message = message
        self.key = key
        self.line = line
        prefix = ""
        if line is not None:
            prefix = f"line {line}: "
        if key is not None:
            prefix = f"{prefix}{key}: "
        super().__init__(f"{prefix}{message}")


class NumericalError(ACLabError, ArithmeticError):
    """A computation could not deliver its contract."""


class NonHermitianError(NumericalError):
    def __init__(self, violation, atol):
        self.violation = violation
        self.atol = atol
        super().__init__(
            f"symmetry violation: max |H - H^dagger| = {violation:.3e} exceeds {atol:.1e}"
        )


class DegenerateIntruderError(NumericalError):
    def __init__(self, energy, condition):
        self.energy = energy
        self.condition = condition
        super().__init__(
            f"Q-resolvent is near-singular at E={energy:.12g} (condition {condition:.3e}); "
            "a bare Q level is degenerate with the resonant pair"
        )


class SeriesDivergenceError(NumericalError):
    def __init__(self, order, norms):
        self.order = order
        self.norms = list(norms)
        super().__init__(
            f"level-shift series diverges: term norms non-decreasing up to order {order}"
        )


class ConvergenceError(NumericalError):
    def __init__(self, iterations, residual):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"implicit energy iteration did not converge after {iterations} steps "
            f"(last residual {residual:.3e})"
        )


class WindowError(NumericalError):
    """Extremum on the window boundary, or a root not bracketed by it."""


class ThresholdUnreachableError(NumericalError):
    pass


class NonIsolatedCrossingWarning(UserWarning):
    pass


class TruncationLeakageWarning(UserWarning):
    pass
