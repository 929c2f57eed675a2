"""Exception hierarchy.

Every error carries an optional ``witness`` (a tuple of labels or indices)
so callers can show the smallest object that caused the failure.

``StructuralError`` subclasses signal malformed input; ``LawFailure``
subclasses signal that well-formed input violates an axiom. The CLI maps
them to exit codes 2 and 1 respectively.
"""


class FuzzTopError(Exception):
    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness

    def __str__(self):
        msg = super().__str__()
        if self.witness is not None:
            msg = f"{msg} (witness: {self.witness})"
        return msg


class StructuralError(FuzzTopError):
    pass


class LawFailure(FuzzTopError):
    pass


# lattices and monoids
class NotAPartialOrder(LawFailure):
    pass


class NotALattice(LawFailure):
    pass


class NotDistributive(LawFailure):
    pass


class DegenerateLattice(LawFailure):
    pass


class NotAGLMonoid(LawFailure):
    pass


class UnknownCatalogName(StructuralError):
    pass


class ChainTooShort(StructuralError):
    pass


class NotMVAlgebra(StructuralError):
    pass


# L-valued sets
class ReflexivityFail(LawFailure):
    pass


class SymmetryFail(LawFailure):
    pass


class TransitivityFail(LawFailure):
    pass


class CarrierMismatch(StructuralError):
    pass


class ParentMismatch(StructuralError):
    pass


class EmptySubset(StructuralError):
    pass


class MonoidMismatch(StructuralError):
    pass


class DimensionMismatch(StructuralError):
    pass


# fuzzy functions
class AxiomViolation(LawFailure):
    """A matrix fails (1ff)-(3ff); ``report`` holds the per-axiom verdicts."""

    def __init__(self, message="", witness=None, report=None):
        super().__init__(message, witness)
        self.report = report


class CodomainMismatch(StructuralError):
    pass


class NotInjective(LawFailure):
    pass


class NotCrispRepresentable(LawFailure):
    pass


class RawViolates1ff(LawFailure):
    pass


class RawViolates2ff(LawFailure):
    pass


class RawViolates3ff(LawFailure):
    pass


class NotTopSurjective(LawFailure):
    pass


class ImageNotAFuzzyFunction(LawFailure):
    """The join-formula image equality exists but the raw matrix fails (1ff) against it."""


class EmptyFamily(StructuralError):
    pass


class CarrierTooLarge(StructuralError):
    pass


class BudgetExceeded(StructuralError):
    pass


# topology
class NotATopology(LawFailure):
    def __init__(self, message="", witness=None, report=None):
        super().__init__(message, witness)
        self.report = report


class ExplosionCap(StructuralError):
    pass


class NonExtensionalSubbase(LawFailure):
    pass


class BaseDoesNotGenerate(LawFailure):
    pass


class NotContinuous(LawFailure):
    pass


class MuNotTop(LawFailure):
    pass


class NotSurjective(LawFailure):
    pass


# documents and CLI
class DocumentSyntaxError(StructuralError):
    def __init__(self, message="", line=None, column=None):
        super().__init__(message, None if line is None else (line, column))
        self.line = line
        self.column = column


class UnknownReference(StructuralError):
    pass


class ValueNotInCarrier(StructuralError):
    pass


class ValidationFailure(LawFailure):
    pass


class UnknownCommand(StructuralError):
    pass


class ArityError(StructuralError):
    pass


class BoundsTooLarge(StructuralError):
    pass
