"""Exception hierarchy.

Split on one axis that matters to callers (and to the CLI exit codes):
``InputError`` covers everything a user can cause with bad input, while
``IntegrityError`` flags a broken internal invariant, i.e. a bug.
"""


class StratfixError(Exception):
    """Base class for all errors raised by this package."""


class InputError(StratfixError):
    """Bad user input: malformed text, unknown model spec, unsafe rule."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SafetyError(InputError):
    """A rule uses a variable that no positive body atom binds."""


class ProgramError(InputError):
    """A structurally unusable program (e.g. no atoms at all)."""


class ModelSpecError(InputError):
    """Unknown or malformed lattice catalogue spec."""


class SizeLimitError(InputError):
    """An enumeration was refused because the search space is too large."""


class LatticeConstructionError(InputError):
    """A lattice constructor was given inconsistent ingredients."""


class StageRangeError(StratfixError, IndexError):
    """A stage index outside ``range(stage_count)``."""


class PreconditionError(StratfixError, ValueError):
    """An operation was called outside its stated domain."""


class TruncationError(StratfixError):
    """A truth level beyond the configured cap was produced.

    Callers recover by re-running with a larger level cap.
    """


class DivergenceError(StratfixError):
    """An iteration exceeded its step guard without stabilising."""


class IntegrityError(StratfixError):
    """An internal invariant failed; indicates a bug, never bad input."""
