"""Exception hierarchy shared by all curvlab modules."""


class CurvlabError(Exception):
    """Base class for every error raised by curvlab."""


class UnsupportedRankError(CurvlabError):
    """A tensor rank or dimension falls outside the supported range."""


class RankMismatchError(CurvlabError):
    """Two tensors that must share rank or dimension do not."""


class CurvatureValidationError(CurvlabError):
    """A rank-4 array violates the curvature-tensor symmetries."""


class DegeneratePlaneError(CurvlabError):
    """Two vectors do not span a 2-plane."""


class SubspaceLeakError(CurvlabError):
    """An operator does not preserve the subspace it is restricted to."""


class ConventionMismatchError(CurvlabError):
    """Structure tensors fail their defining contraction identities."""


class StructureIdentificationError(CurvlabError):
    """A distinguished subspace has the wrong dimension."""


class InconsistentBoundsError(CurvlabError):
    """Sectional bounds are incompatible with each other or with the Einstein constant."""


class EinsteinFitError(CurvlabError):
    """A curvature tensor is not Einstein within tolerance."""


class PreconditionError(CurvlabError):
    """Inputs of an algebraic identity check do not satisfy its hypotheses."""


class MissingInputError(CurvlabError):
    """Required inputs for an evaluation were not supplied."""
