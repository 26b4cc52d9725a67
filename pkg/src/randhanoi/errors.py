"""Exception types raised across the package."""


class HanoiError(Exception):
    """Base class for all package errors."""


class IllegalMove(HanoiError):
    pass


class TooLarge(HanoiError):
    """Requested disk count exceeds what an explicit computation allows."""

    def __init__(self, n: int, limit: int, what: str = "explicit graph"):
        super().__init__(f"n={n} exceeds the {what} limit of {limit}")
        self.n = n
        self.limit = limit


class SolveFailure(HanoiError):
    pass


class NonPositiveResistance(HanoiError, ValueError):
    pass


class Censored(HanoiError):
    """A simulated trial reached its step cap before stopping."""

    def __init__(self, max_steps: int):
        super().__init__(f"trial censored at max_steps={max_steps}")
        self.max_steps = max_steps


class InsufficientTrials(HanoiError, ValueError):
    pass


class UnknownSequence(HanoiError, KeyError):
    def __str__(self):
        return f"unknown sequence {self.args[0]!r}"


class ParseError(HanoiError, ValueError):
    def __init__(self, line_no: int, line: str):
        super().__init__(f"line {line_no}: cannot parse {line!r}")
        self.line_no = line_no
        self.line = line


class NetworkError(HanoiError):
    pass
