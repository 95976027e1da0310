"""Exception hierarchy.

Everything derives from :class:`CycleSplitError` so the CLI can map input
problems to exit code 2 with a single ``except``.
"""


class CycleSplitError(Exception):
    pass


class InputError(CycleSplitError, ValueError):
    """Malformed or inconsistent user input."""


class CapExceeded(CycleSplitError):
    pass


class DegreeMismatch(InputError):
    pass


class NotASubgroup(InputError):
    pass


class NotNormal(InputError):
    pass


class NotProper(InputError):
    pass


class EmptyFibre(InputError):
    pass


class EmptyAlgebra(InputError):
    pass


class EmptyComponent(InputError):
    pass


class InvalidPolynomial(InputError):
    pass


class NotSquarefree(CycleSplitError, ValueError):
    """Raised when a reduction mod p has a repeated factor (p is ramified)."""


class NoWitness(CycleSplitError, ValueError):
    pass


class NoRecords(CycleSplitError, ValueError):
    pass


class InternalExhaustion(CycleSplitError, RuntimeError):
    """An exhaustive search that is guaranteed to succeed came back empty."""
