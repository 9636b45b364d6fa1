"""Exception hierarchy.

Everything raised on purpose by the library derives from ``TapkitError`` so
the command-line front end can map it to exit status 1.
"""


class TapkitError(Exception):
    """Base class for mathematical / input errors."""


class NotMonic(TapkitError):
    pass


class Reducible(TapkitError):
    def __init__(self, factor):
        super().__init__(f"polynomial is reducible, factor {factor}")
        self.factor = factor


class NotSquarefree(TapkitError):
    pass


class FieldMismatch(TapkitError):
    pass


class PrecisionNotReached(TapkitError):
    pass


class ZeroPolynomial(TapkitError):
    pass


class ZeroPolynomialModP(TapkitError):
    pass


class ZeroRoot(TapkitError):
    pass


class DegreeCapExceeded(TapkitError):
    pass


class BadParameters(TapkitError):
    pass


class RepMismatch(TapkitError):
    pass


class RepCheckFailed(TapkitError):
    pass


class IndexOutOfRange(TapkitError):
    pass


class DimensionError(TapkitError):
    pass


class DeficiencyError(TapkitError):
    pass


class NonTorsion(TapkitError):
    pass


class AllColumnsDegenerate(TapkitError):
    pass


class MinorCapExceeded(TapkitError):
    pass


class NonIntegralEntry(TapkitError):
    pass


class RepNotIntegral(TapkitError):
    pass


class InternalMismatch(TapkitError):
    """Two independent routes disagreed.  Always a bug."""


class NotSquarefreeModP(TapkitError):
    pass


class RootsNotUnits(TapkitError):
    pass


class ExtensionTooLarge(TapkitError):
    pass


class ReducibleInput(TapkitError):
    pass


class GaloisDegreeUnknown(TapkitError):
    pass


class DegenerateAtOne(TapkitError):
    pass


class CatalogError(TapkitError):
    pass


class ParseError(CatalogError):
    def __init__(self, msg, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(msg + loc)
        self.line = line
        self.column = column


class ValidationError(CatalogError):
    def __init__(self, name, msg):
        super().__init__(f"{name}: {msg}")
        self.name = name
