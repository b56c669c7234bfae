"""Error hierarchy shared by all modules."""

from __future__ import annotations


class MvError(Exception):
    """Base class for all domain errors raised by this package."""


class ForeignElement(MvError):
    """An element was applied to an algebra it does not belong to."""


class NotEnumerable(MvError):
    """The algebra has infinitely many elements."""


class ClosureBudgetExceeded(MvError):
    """Subalgebra generation ran out of budget; carries the partial closure."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


class IdealLatticeUnknown(MvError):
    """No structural description of the ideal lattice for this shape."""


class DegenerateUnit(MvError):
    """The designated unit of a unital group must be strictly positive."""


class CompletionUnsupported(MvError):
    """The monoid falls outside the structurally supported completion shapes."""


class TrivialQuotient(MvError):
    """Quotient by the improper ideal is the one-element structure."""


class RetractionInconclusive(MvError):
    """The retraction search space is not finitely describable."""


class NotLexicographicIdeal(MvError):
    """An operation requiring a lexicographic ideal got one that fails an axiom."""


class NotLocallyRetractive(MvError):
    """Germ extraction needs a retraction that is absent at this maximal ideal."""


class SpectrumValueError(MvError):
    """A simple quotient did not embed in a rational chain (bug sentinel)."""


class IsolatedPoint(MvError):
    """A stalk was requested at a point in no open's support."""


class RequiresExternalEmbedding(MvError):
    """Embedding into a retractive-radical algebra needs machinery out of scope."""
