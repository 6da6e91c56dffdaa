"""Exception types shared across the package."""


class HodgeForgeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HodgeForgeError, ValueError):
    """Malformed or out-of-range input."""


class AxiomViolation(InputError):
    """A family of subsets fails one of the flat axioms.

    ``axiom`` names the failing condition and ``witness`` holds the flats
    and/or element exhibiting the failure.
    """

    def __init__(self, axiom: str, witness, message: str | None = None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"{axiom}: {witness}")


class ColoopInput(InputError):
    """The requested element is a coloop, so the deletion tower is undefined."""


class VerificationFailure(HodgeForgeError):
    """An exact theorem-level check failed."""


class PreconditionFailure(HodgeForgeError):
    """An input class does not satisfy the hypothesis of a check."""


class InternalMismatch(HodgeForgeError):
    """Two independent constructions that must agree did not."""
