"""Exception hierarchy shared across the package."""


class DexactError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatch(DexactError):
    pass


class ShapeError(DexactError):
    pass


class InfiniteDimensional(DexactError):
    pass


class SearchExhausted(DexactError):
    """A bounded search for an invertible combination found nothing.

    This is an inconclusive outcome, never a proof of non-isomorphism.
    """


class DecompositionInconclusive(DexactError):
    pass


class CatalogCapExceeded(DexactError):
    pass


class ObjectOutsideSubcategory(DexactError):
    pass


class NotInSubcategory(DexactError):
    pass


class ApproximationNotMonic(DexactError):
    pass


class NotAdmissible(DexactError):
    pass


class ResolutionTooLong(DexactError):
    pass


class LiftFailed(DexactError):
    pass


class UnknownSummand(DexactError):
    pass


class ParseError(DexactError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
