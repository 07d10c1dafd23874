"""Exception types shared across the package."""

from __future__ import annotations


class PmLatticeError(Exception):
    """Base class for all package-specific errors."""


class PreconditionViolated(PmLatticeError):
    """An operation was called on an input outside its contract.

    ``reason`` is a short machine-readable tag (e.g. ``"bvn"``,
    ``"petersen_brick"``, ``"not_near_brick"``, ``"not_matching_covered"``).
    """

    def __init__(self, reason: str, message: str | None = None):
        self.reason = reason
        super().__init__(message or reason)


class TheoremFalsified(PmLatticeError):
    """A claim the implementation relies on failed on a concrete input.

    Never expected to fire; carries a machine-readable certificate so a
    failure doubles as a refutation report.
    """

    def __init__(self, claim: str, certificate: dict):
        self.claim = claim
        self.certificate = certificate
        super().__init__(f"claim falsified: {claim}")


class VertexCapExceeded(PmLatticeError):
    """An exponential scan was requested above the configured vertex cap."""

    def __init__(self, vertices: int, cap: int):
        self.vertices = vertices
        self.cap = cap
        super().__init__(f"graph has {vertices} vertices, scan capped at {cap}")
