"""Exception taxonomy.

Every raise in the package goes through one of these classes so callers can
sort failures into input problems, geometry violations, and solver gates
without string matching.
"""

from __future__ import annotations


class SteinShapesError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------------------
# geometry / domain construction


class NonPositiveRadius(SteinShapesError):
    """Radius function takes a value <= 0 somewhere on the circle."""


class NotStarShaped(SteinShapesError):
    """Radial graph condition fails: kappa = min R / sqrt(R^2 + R'^2) <= 0."""


class GridTooCoarse(SteinShapesError):
    """Requested quadrature or raster grid cannot resolve the shape."""


class NoConvergence(SteinShapesError):
    """Richardson doubling hit the grid cap before reaching tolerance."""


class RecenterFailed(SteinShapesError):
    """Barycenter shift left the star-shaped class or did not contract."""


# ---------------------------------------------------------------------------
# PDE solvers


class IllConditioned(SteinShapesError):
    """Collocation or Ritz system condition number above the gate."""


class NotOblique(SteinShapesError):
    """Boundary field has a tangential or inward component too large."""


class NotElliptic(SteinShapesError):
    """Interior operator loses uniform ellipticity on the probe grid."""


class ResidualTooLarge(SteinShapesError):
    """Post-solve residual exceeds the acceptance gate."""


# ---------------------------------------------------------------------------
# Stein kernel / spectra


class NotCentered(SteinShapesError):
    """Boundary barycenter too far from the origin for the kernel identity."""


class IdentityViolated(SteinShapesError):
    """Integration-by-parts check on the test panel failed."""


class NotConverged(SteinShapesError):
    """Spectral quantity unstable under truncation increase."""


class DegenerateBasis(SteinShapesError):
    """Mass matrix lost more than half its basis to rank truncation."""


class ZeroTrace(SteinShapesError):
    """Rayleigh quotient denominator vanishes after mean removal."""


# ---------------------------------------------------------------------------
# stochastics / optimization


class SolverStall(SteinShapesError):
    """LP or optimizer hit an iteration cap without an optimum."""


class ReflectionFailed(SteinShapesError):
    """Pull-back root for a reflected path step has no real solution."""


# ---------------------------------------------------------------------------
# reporting / IO


class NormalizationMissing(SteinShapesError):
    """Operation requires a volume- or barycenter-normalized domain."""


class NotApplicable(SteinShapesError):
    """Requested check is outside its validity regime."""


class IoFailure(SteinShapesError):
    """Config or report file could not be read, parsed, or written."""
