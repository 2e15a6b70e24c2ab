"""Exception types shared across the toolkit."""


class XcdofError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(XcdofError, ValueError):
    """Invalid antenna configuration or arguments."""


class InternalInconsistency(XcdofError, RuntimeError):
    """A derived scheme constant violates an identity it must satisfy.

    Raised only on formula-transcription bugs, never on valid input.
    """


class CausalityViolation(XcdofError, RuntimeError):
    """A precoder builder requested a channel matrix it cannot know yet."""


class BufferDeficit(XcdofError, RuntimeError):
    """Fewer independent overheard equations than the schedule requires."""


class CapacityViolation(XcdofError, RuntimeError):
    """Per-slot equation counts cannot be met within antenna limits."""


class ZeroDenominator(XcdofError, ZeroDivisionError):
    """Rank ratio undefined because the reference subspace is empty."""


class TrialAbort(XcdofError, RuntimeError):
    """A Monte Carlo trial hit repeated degenerate channel draws."""


class UnknownCorner(XcdofError, ValueError):
    """Requested DoF tuple is not a corner point of the region."""
