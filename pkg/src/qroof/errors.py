"""Exception types raised by qroof."""


class QRoofError(Exception):
    """Base class for all qroof errors."""


class TraceRangeError(QRoofError, ValueError):
    """Diagonal entry of a density matrix outside [0, 1]."""


class NotPositiveError(QRoofError, ValueError):
    """Off-diagonal magnitude incompatible with a positive semidefinite matrix."""


class NormalizationError(QRoofError, ValueError):
    """Pure-state amplitudes are not unit-normalized."""


class WeightRangeError(QRoofError, ValueError):
    """Mixing weight outside [0, 1] or weights that do not sum to one."""


class NotIsometryError(QRoofError, ValueError):
    """Matrix columns are not orthonormal."""


class NonConvexMeasureError(QRoofError, ValueError):
    """Closed-form evaluation requested for a profile that is not convex and
    continuous in the off-diagonal magnitude; use the roof oracle instead."""


class MuRangeError(QRoofError, ValueError):
    """Family parameter mu outside [0, 1]."""


class BadOrderingError(QRoofError, ValueError):
    """Target parameters violate the required ordering tau <= theta."""
