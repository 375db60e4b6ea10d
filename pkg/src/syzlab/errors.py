"""Exception types raised by the library.

Everything derives from SyzlabError so callers can catch broadly; the
subclasses exist because several of them drive control flow (retry loops,
sample growth, report truncation).
"""


class SyzlabError(Exception):
    pass


class DimensionMismatchError(SyzlabError):
    """Operands live in different ambient spaces or over different primes."""


class UnsupportedDegreeError(SyzlabError):
    """Requested graded piece outside the supported degree range."""


class DegenerateScrollError(SyzlabError):
    """Scroll frame with fewer than two nonzero blocks has no 2-row matrix."""


class TwistedSectionError(SyzlabError):
    """Only twist-0 sections lift to honest quadrics in the ambient space."""


class RollingFactorsInputError(SyzlabError):
    """Input not expressible in the two-row determinantal format."""


class EmptyLinearSystemError(SyzlabError):
    """A requested linear system on the scroll has no nonzero sections."""


class GenericityExhaustedError(SyzlabError):
    """Random draws kept violating a genericity requirement; gave up."""


class ModelInconsistencyError(SyzlabError):
    """Stored model data contradicts an invariant it is supposed to satisfy."""


class SampleExhaustedError(SyzlabError):
    """Point sampling could not stabilize an interpolation kernel."""


class InvalidSyzygyError(SyzlabError):
    """Vector fails the defining relation sum_i Z_i * q_i = 0."""


class SizeLimitError(SyzlabError):
    """Computation would exceed the configured matrix-size budget."""
