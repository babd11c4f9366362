"""Exception hierarchy shared across the package.

Every error raised on a bad input or a failed computation derives from
AiryIntError so callers (CLI, service) can map the whole family to their
own error channels.
"""


class AiryIntError(Exception):
    """Base class for all domain errors raised by this package."""


class NonFiniteInput(AiryIntError):
    """An evaluation point was NaN or infinite."""


class OverflowDomain(AiryIntError):
    """Evaluation requested outside the supported numeric domain.

    Bi grows super-exponentially; beyond |argument| = 50 the package
    refuses to evaluate instead of returning infinities.
    """


class ShiftMismatch(AiryIntError):
    """Two objects that must share an argument shift do not."""


class EqualShifts(AiryIntError):
    """A distinct-shift reduction was invoked with equal shifts."""


class NonFiniteIntegrand(AiryIntError):
    """The integrand returned NaN or infinity inside the interval."""


class NonConvergence(AiryIntError):
    """Adaptive integration exhausted its evaluation budget."""


class DivergentIntegrand(AiryIntError):
    """An improper integral has a non-decaying (Bi-containing) factor."""
