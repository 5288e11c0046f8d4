"""Exception hierarchy.

``InputError`` subclasses map to CLI exit code 1 (malformed or inconsistent
input), ``PreconditionError`` subclasses to exit code 2.
"""


class LiecotError(Exception):
    pass


class InputError(LiecotError):
    pass


class PreconditionError(LiecotError):
    pass


class DimensionMismatch(InputError, ValueError):
    pass


class NotSymmetric(PreconditionError, ValueError):
    pass


class JacobiError(InputError, ValueError):
    def __init__(self, triple, residual=None):
        self.triple = triple
        self.residual = residual
        i, j, k = (t + 1 for t in triple)
        super().__init__(f"Jacobi identity fails on basis triple (e{i}, e{j}, e{k})")


class AlgebraMismatch(InputError, ValueError):
    pass


class UnknownName(InputError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class InvalidParam(InputError, ValueError):
    pass


class NotCotangent(PreconditionError, ValueError):
    pass


class NotOrthogonal(PreconditionError, ValueError):
    pass


class Degenerate(PreconditionError, ValueError):
    pass


class NotSimple(PreconditionError, ValueError):
    pass


class DomainError(PreconditionError, ValueError):
    pass


class NotInvertibleHere(PreconditionError, ValueError):
    pass


class DecompositionMismatch(LiecotError, AssertionError):
    """A structural identity that should hold exactly came out false."""
