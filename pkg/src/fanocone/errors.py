"""Exception hierarchy shared across the package.

Every error carries a machine-readable ``code`` that the CLI emits in its
JSON error payload.
"""

from __future__ import annotations


class FanoConeError(Exception):
    """Base class for all validation and computation errors."""

    code = "error"


class NotPointed(FanoConeError):
    """The cone contains a line, so dual/triangulation routines do not apply."""

    code = "not-pointed"


class NotFullDim(FanoConeError):
    """The rays span a proper subspace of the ambient lattice."""

    code = "not-full-dim"


class NotInReebCone(FanoConeError):
    """A vector required to be strictly interior to the Reeb cone is not."""

    code = "not-in-reeb-cone"


class NotQGorenstein(FanoConeError):
    """The boundary data admits no consistent Gorenstein covector."""

    code = "not-q-gorenstein"


class NotKlt(FanoConeError):
    """A boundary coefficient is >= 1, so the pair is not Kawamata log terminal."""

    code = "not-klt"


class RoundingExitsCone(FanoConeError):
    """Componentwise rounding of k*xi left the Reeb cone; retry with larger k."""

    code = "rounding-exits-cone"


class NotPrimary(FanoConeError):
    """The monomial ideal is not primary to the maximal ideal."""

    code = "not-primary"


class TruncationTooSmall(FanoConeError):
    """The truncation bound does not meet the requested tail tolerance."""

    code = "truncation-too-small"


class ExtrapolationDiverged(FanoConeError):
    """The extrapolation table failed to contract to a stable limit."""

    code = "extrapolation-diverged"


class DegenerateXi(FanoConeError):
    """The polarization has nonpositive log discrepancy (internal error)."""

    code = "degenerate-xi"
