"""Exception hierarchy shared by every module."""


class SobocertError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DomainError(SobocertError, ValueError):
    """An argument lies outside the real domain of an operation."""

    exit_code = 4


class ContractError(SobocertError):
    """A caller-supplied object does not satisfy an operation's contract."""

    exit_code = 3


class MaxRefinementError(SobocertError, RuntimeError):
    """Subdivision budget exhausted before the requested width was reached."""

    exit_code = 5


class UsageError(SobocertError):
    """Invalid command-line or configuration input."""

    exit_code = 2
