"""Exception types shared across the package."""


class RootPosetError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedDiagram(RootPosetError, ValueError):
    pass


class IdentityViolation(RootPosetError):
    """A numerical identity that must hold for every root poset failed."""


class VerificationFailure(RootPosetError):
    """A claimed property failed; ``counterexample`` carries the offending data."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class NotARoot(RootPosetError, ValueError):
    pass


class CoverFailure(VerificationFailure):
    pass


class WitnessNotFound(RootPosetError):
    pass


class ConclusionFailure(VerificationFailure):
    pass
