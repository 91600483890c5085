"""Exception types shared across the package."""


class DiamondQCError(Exception):
    """Base class for all diamondqc domain errors."""


class TemperatureTooLow(DiamondQCError):
    """Temperature is zero, negative, or too small for finite Boltzmann weights."""


class PositivityViolation(DiamondQCError):
    """A matrix that should be positive semidefinite has a genuinely negative eigenvalue."""


class NotBellDiagonal(DiamondQCError):
    """State lacks the Bell-diagonal structure (vanishing local Bloch vectors, diagonal correlation matrix)."""


class GridTooLarge(DiamondQCError):
    """Requested sweep grid exceeds the configured point cap."""


class NoBracket(DiamondQCError):
    """Threshold bracket endpoints do not straddle the dead level."""
