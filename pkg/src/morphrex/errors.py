"""Exception types shared across the package.

Every error raised on a user-facing path carries a ``stage`` attribute so the
command line driver can report which pipeline stage failed.
"""


class MorphrexError(Exception):
    """Base class for all package errors."""

    stage = "run"


class LexiconError(MorphrexError):
    stage = "load"


class SolutionsError(MorphrexError):
    """A solutions file failed validation; message names the record."""

    stage = "load"


class RuleParseError(MorphrexError):
    """Rule source rejected; carries line and column of the offense."""

    stage = "load"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ProjectError(MorphrexError):
    stage = "load"


class TagsError(MorphrexError):
    stage = "load"


class SynBoundsError(MorphrexError):
    """Synonymy expansion level outside the supported 1..7 range."""

    stage = "mbf"


class BudgetExceededError(MorphrexError):
    """Simulation step budget exhausted; names the offending rule."""

    stage = "mre"

    def __init__(self, rule: str, budget: int):
        super().__init__(
            f"step budget of {budget} exceeded while matching rule {rule!r}"
        )
        self.rule = rule
        self.budget = budget


class ActionParseError(MorphrexError):
    stage = "load"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ActionRuntimeError(MorphrexError):
    stage = "actions"
