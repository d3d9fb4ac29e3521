"""Exception hierarchy shared by every module."""


class CocoonError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CocoonError, ValueError):
    """An argument falls outside the domain an operation is defined on."""


class MemoryCapError(DomainError):
    """The requested limit would need more membership storage than allowed."""


class TheoremViolation(CocoonError, RuntimeError):
    """A structural guarantee about odd composites failed to hold.

    Never raised on correct input; its appearance means either the
    enumeration or the underlying mathematics is wrong, and the run must halt.
    """


class IdentityViolation(TheoremViolation):
    """A counting identity evaluated to two different integers."""

    def __init__(self, m, name, left, right):
        super().__init__(f"identity {name} fails at m={m}: {left} != {right}")
        self.m = m
        self.name = name
        self.left = left
        self.right = right
