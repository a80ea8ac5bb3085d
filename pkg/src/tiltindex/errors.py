"""Exception types shared across the package."""


class TiltIndexError(Exception):
    """Base class for all package-specific errors."""


class MalformedRelation(TiltIndexError):
    """A relation is not a combination of parallel paths of length >= 2."""


class NotAdmissible(TiltIndexError):
    """A path of maximal length survives reduction, so the ideal is not
    admissible for the given nilpotency bound."""


class ZeroModule(TiltIndexError):
    """Operation requires a nonzero module."""


class NotAbsolutelyIndecomposable(TiltIndexError):
    """End(X)/rad is a field extension of degree > 1, so the module is
    indecomposable over the rationals but not absolutely."""


class DecompositionError(TiltIndexError):
    """The splitting search exhausted its budget without a certificate."""


class EnumerationBudgetExceeded(TiltIndexError):
    """Indecomposable enumeration did not close within the budget."""


class IncompleteList(TiltIndexError):
    """A tilting summand is missing from the supplied indecomposable list."""


class ResolutionOverrun(TiltIndexError):
    """A left resolution needed more terms than the cluster-tilting degree
    allows."""


class ProjectiveInput(TiltIndexError):
    """Almost split sequences only end at non-projective modules."""


class NotUnimodular(TiltIndexError):
    """The Hom dimension matrix has determinant other than +-1."""


class WellDefinednessFailure(TiltIndexError):
    """A probe error vector escaped the relation lattice."""


class NotBasic(TiltIndexError):
    """Endomorphism algebra has isomorphic summand pairs."""


class DegenerateDraw(TiltIndexError):
    """All random draws were zero; try a different seed."""


class InputFormatError(TiltIndexError):
    """An algebra description file is malformed."""
