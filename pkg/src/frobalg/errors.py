"""Exception hierarchy shared by every module."""


class FrobalgError(Exception):
    """Base class for all library errors."""


class ShapeMismatch(FrobalgError, ValueError):
    """Wire words or matrix shapes do not line up."""


class NotNormal(FrobalgError):
    """An operator expected to be normal is not (within tolerance)."""


class NotFrobenius(FrobalgError):
    """A monoid expected to be dagger-Frobenius is not."""


class NotCommutative(FrobalgError):
    pass


class InvalidInvolution(FrobalgError):
    pass


class InvalidAlgebra(FrobalgError):
    """Structure constants fail associativity, unit or involution checks."""


class NotCStar(FrobalgError):
    """The regular trace form is not positive-definite.

    ``eigenvalue`` holds the offending smallest eigenvalue.
    """

    def __init__(self, msg, eigenvalue=None):
        super().__init__(msg)
        self.eigenvalue = eigenvalue


class NonpositiveScale(FrobalgError, ValueError):
    pass


class DegenerateSplit(FrobalgError):
    """Randomized splitting of a center failed for every retry."""


class NotHomomorphism(FrobalgError):
    pass


class NotPermutation(FrobalgError):
    pass


class TypeMismatch(FrobalgError):
    pass


class UnknownGenerator(FrobalgError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SignatureMismatch(FrobalgError):
    pass


class DiagramSyntaxError(FrobalgError, SyntaxError):
    """Parse failure; ``offset`` is the byte offset into the source text."""

    def __init__(self, msg, offset):
        SyntaxError.__init__(self, f"{msg} (at offset {offset})")
        self.msg = msg
        self.offset = offset

    def __str__(self):
        return f"{self.msg} (at offset {self.offset})"


class InvalidGroupoid(FrobalgError, ValueError):
    """Composition table violates the groupoid laws."""
