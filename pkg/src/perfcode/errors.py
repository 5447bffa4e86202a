class PerfCodeError(Exception):
    pass


class ConfigurationError(PerfCodeError):
    """Unsupported construction parameters (e.g. no modulus for this n)."""


class FieldDomainError(PerfCodeError, ZeroDivisionError):
    pass


class UsageError(PerfCodeError, ValueError):
    """Operands from different groups, precondition violations, bad literals."""


class GroupValidationError(PerfCodeError, ValueError):
    pass


class NotEnumerableError(PerfCodeError):
    pass


class LimitExceeded(PerfCodeError):
    """A search hit its size bound; the answer is unknown, not negative."""
