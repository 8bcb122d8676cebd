"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto its exit-code contract: parse failures exit 2,
precondition violations exit 3, pipeline stage failures exit 4.
"""


class HnnlatError(Exception):
    """Base class for all errors raised by this package."""


class InputParseError(HnnlatError):
    """Malformed JSON or an input file that does not match its schema."""


class PreconditionError(HnnlatError):
    """An operation was called on data violating its stated preconditions."""


class StageFailure(HnnlatError):
    """A pipeline stage aborted; carries the stage name."""

    def __init__(self, stage, message):
        super().__init__(f"stage '{stage}' failed: {message}")
        self.stage = stage
