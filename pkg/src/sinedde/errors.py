"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument violates a documented invariant (bad delay, step size, ...)."""


class DivergenceError(RuntimeError):
    """Integration aborted on a non-finite or runaway state.

    Attributes
    ----------
    time : float
        Time at which the blow-up was detected.
    component : str or None
        For coupled runs, which component diverged ("master"/"slave").
    """

    def __init__(self, time, component=None):
        self.time = time
        self.component = component
        where = f" in {component}" if component else ""
        super().__init__(f"state diverged at t={time:g}{where}")


class AnalysisError(RuntimeError):
    """A time-series analysis cannot proceed (series too short, degenerate, ...)."""


class LookupRangeError(RuntimeError):
    """A delayed-state lookup was requested outside the computed span."""
