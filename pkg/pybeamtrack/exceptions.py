class BeamTrackException(Exception):
    pass


class ConfigurationError(BeamTrackException, ValueError):
    """
    Exception to be raised for invalid geometries, scenarios or
    non-conforming matrix dimensions.
    """


class InvalidParameterError(BeamTrackException, ValueError):
    """
    Exception to be raised for unusable unscented transform parameters.
    """


class InvalidInputError(BeamTrackException, ValueError):
    """
    Exception to be raised when an aggregation receives no usable input.
    """


class DegenerateChannelError(BeamTrackException, ValueError):
    """
    Exception to be raised when no beam can be selected from a channel.
    """

    def __init__(self, shape):
        super().__init__(
            f"Cannot select beams from an all-zero beamspace channel of shape {shape}"
        )


class NumericalError(BeamTrackException, ArithmeticError):
    """
    Exception to be raised when a filter recursion breaks down numerically.

    Attributes
    ----------
    slot: int or None
        Tracking slot at which the failure happened, if known.
    """

    def __init__(self, message, slot=None):
        self.reason = message
        self.slot = slot
        if slot is not None:
            message = f"{message} (slot {slot})"
        super().__init__(message)

    def at_slot(self, slot):
        """Return a copy of this error annotated with ``slot``"""
        return NumericalError(self.reason, slot=slot)


class AllRunsFailedError(BeamTrackException, RuntimeError):
    """
    Exception to be raised when every Monte Carlo episode failed.
    """

    def __init__(self, n_failed):
        self.n_failed = n_failed
        super().__init__(f"All {n_failed} simulation runs failed")
