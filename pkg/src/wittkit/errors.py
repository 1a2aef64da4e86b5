"""Exception types shared across the library."""


class WittkitError(Exception):
    """Base class for all library errors."""


class MixedFields(WittkitError):
    """Operands belong to different fields."""


class DivisionByZero(WittkitError):
    """Division by the zero element."""


class DivisionUnrepresentable(WittkitError):
    """Exact quotient does not exist in the chosen representation.

    Finite Laurent polynomials are closed under division only by
    single-term units; anything else raises this.
    """


class ZeroElement(WittkitError):
    """Operation requires a nonzero element."""


class NotAUnit(WittkitError):
    """Residue requested for an element of nonzero valuation."""


class InfiniteSquareClassGroup(WittkitError):
    """Square-class representatives requested over a field with infinitely many."""


class ZeroPolynomial(WittkitError):
    """Factorization of the zero polynomial."""


class EmptyForm(WittkitError):
    """Invariant of the 0-dimensional form is not defined."""


class ZeroScalar(WittkitError):
    """Scaling a form by zero."""


class ZeroEntry(WittkitError):
    """Quadratic forms must have nonzero diagonal entries."""


class Undecided(WittkitError):
    """A certified interval spans the decision threshold."""


class UnsupportedField(WittkitError):
    """Operation not available over this field kind."""


class UnsupportedShape(WittkitError):
    """Element or form does not have the structural shape the routine needs."""


class ParityMismatch(WittkitError):
    """Dimension and complementary dimension have different parities."""


class OutOfRange(WittkitError):
    """Shifted parameters left the legal range."""


class InconsistentFacts(WittkitError):
    """Fact derivation produced a contradiction."""


class IncompleteTable(WittkitError):
    """A recursion needs table entries that were never filled."""


class SampleMissingSpecialPlaces(WittkitError):
    """Place sample omits a place the verification requires."""


class ParseError(WittkitError):
    """Malformed field, element, or form source text."""


class EvenCharacteristic(WittkitError):
    """Residue characteristic 2 is outside the supported tower."""


class CompositeP(WittkitError):
    """The given modulus base is not prime."""
