"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HolantError(Exception):
    """Base class for all errors raised by :mod:`holant`."""


# field --------------------------------------------------------------------

class ParseError(HolantError, ValueError):
    pass


class FieldTooSmall(HolantError):
    """A root of unity or square root would need a field beyond the cap."""


class DivisionByZero(HolantError, ZeroDivisionError):
    pass


# tensors and files --------------------------------------------------------

class GadgetError(HolantError, ValueError):
    """A gadget violates the endpoint/slot invariants."""


class InputError(HolantError, ValueError):
    """Invalid input file; the message starts with a JSON path."""


class NotBipartite(HolantError, ValueError):
    pass


# reductions ---------------------------------------------------------------

class SingularSystem(HolantError, ArithmeticError):
    pass


class SingularBasis(HolantError, ValueError):
    pass


class NotOrthogonal(HolantError, ValueError):
    pass


class EigenvaluesOutsideField(HolantError):
    pass


class IdentityViolation(HolantError, AssertionError):
    """An identity that is expected to hold exactly did not."""


# groups -------------------------------------------------------------------

class GroupTooLarge(HolantError):
    def __init__(self, cap: int, partial: frozenset):
        super().__init__(f"closure exceeds {cap} elements")
        self.cap = cap
        self.partial = partial


class SignatureMismatch(HolantError):
    pass


class TraceNonzero(HolantError):
    pass


class NotTransposeFixed(HolantError, ValueError):
    pass


class NormalizationUnsupported(HolantError):
    pass


class NoClosedK4(HolantError):
    pass


# structure ----------------------------------------------------------------

class ArityTooLarge(HolantError, ValueError):
    pass


class OddArity(HolantError, ValueError):
    pass


class NoConsistentC(HolantError):
    pass


class RootOutsideField(HolantError):
    pass


class EdgeNotFound(HolantError, ValueError):
    pass


class NotFoundWithinBound(HolantError):
    pass


class HypothesisViolated(HolantError, ValueError):
    pass


class InternalContradiction(HolantError, AssertionError):
    """Exact computation disagrees with a case analysis that should be exhaustive."""
