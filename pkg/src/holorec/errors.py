"""Exception hierarchy shared by all modules."""


class HolorecError(Exception):
    """Base class for every error raised by holorec."""


class ParseError(HolorecError):
    """Malformed generating-function expression."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class UnsupportedShape(HolorecError):
    """Expression or parameters do not fit any supported class."""


class PreconditionError(UnsupportedShape):
    """Class parameters violate a rationality or nonvanishing precondition."""


class DerivationError(HolorecError):
    """An ODE or recurrence could not be constructed."""


class ShorteningError(DerivationError):
    """Two recurrences could not be combined into a shorter one."""


class RecurrenceError(HolorecError):
    """Term generation failed (zero leading coefficient, bad initial segment)."""


class VerificationError(HolorecError):
    """A derived structure disagrees with the series oracle."""
