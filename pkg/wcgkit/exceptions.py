"""
Error types raised by the toolkit
"""


class WCGError(Exception):
    """Base class for all toolkit errors"""


class GeometryError(WCGError, ValueError):
    """Degenerate or inconsistent gamut geometry"""


class EncodingMismatchError(WCGError, ValueError):
    """Image encoding does not match what the operation expects"""


class UndefinedChromaticityError(WCGError, ValueError):
    """Chromaticity of a zero tristimulus sum"""


class ImageFormatError(WCGError, ValueError):
    """Unsupported or unreadable image file"""


class DimensionMismatchError(WCGError, ValueError):
    """Image or vector dimensions disagree or are too small"""


class GamutMappingError(WCGError, ValueError):
    """Gamut mapping preconditions violated"""


class NestingError(WCGError, ValueError):
    """Target gamuts are not strictly nested"""


class UnsupportedDimensionError(WCGError, ValueError):
    """Operation is not defined for this feature dimension"""


class ResourceLimitError(WCGError):
    """Requested computation exceeds a configured cap"""


class ClusteringError(WCGError, ValueError):
    """k-means preconditions violated or objective increased"""


class DegenerateInputError(WCGError, ValueError):
    """Zero-variance or otherwise degenerate statistical input"""


class DomainError(WCGError, ValueError):
    """Argument outside the mathematical domain of a function"""


class ConvergenceError(WCGError):
    """Iterative evaluation failed to converge"""


class EmptyPoolError(WCGError):
    """No candidate images left after filtering"""
