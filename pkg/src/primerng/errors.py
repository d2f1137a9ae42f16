"""Exception types raised by primerng.

Everything derives from :class:`PrimeRngError` (itself a ``ValueError``) so
callers, and the CLI, can separate domain failures from programming errors.
"""


class PrimeRngError(ValueError):
    pass


class InvalidModulusError(PrimeRngError):
    pass


class NotAUnitError(PrimeRngError):
    pass


class InvalidPrimeError(PrimeRngError):
    pass


class UnsupportedSizeError(PrimeRngError):
    pass


class InvalidSpecError(PrimeRngError):
    pass


class PreconditionError(PrimeRngError):
    pass


class ZeroValueError(PrimeRngError):
    pass


class NonPeriodicError(PrimeRngError):
    pass


class ConfigError(PrimeRngError):
    """Raised by :func:`primerng.rng.validate`; ``problems`` lists every failed check."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
