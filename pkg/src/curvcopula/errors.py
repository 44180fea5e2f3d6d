"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class IntervalError(DomainError):
    """A subinterval request with lo > hi, or endpoints outside [0, 1]."""


class DisjointnessError(DomainError):
    """Open intervals required to be pairwise disjoint overlap."""


class ConfigError(ValueError):
    """A job or object configuration does not match its schema."""


class PropertyViolation(ValueError):
    """A candidate section fails one of the defining section properties.

    Attributes
    ----------
    which : str
        One of "bound", "monotone", "colipschitz".
    t : float
        Location of the violation.
    lhs, rhs : float
        The two sides of the inequality that failed.
    """

    def __init__(self, which: str, t: float, lhs: float, rhs: float):
        self.which = which
        self.t = float(t)
        self.lhs = float(lhs)
        self.rhs = float(rhs)
        super().__init__(
            f"section property {which!r} violated at t={t:.12g}: "
            f"lhs={lhs:.12g}, rhs={rhs:.12g}"
        )
