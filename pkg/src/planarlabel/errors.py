class PlanarLabelError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PlanarLabelError):
    """Malformed graph file."""


class EmbeddingError(PlanarLabelError):
    """Rotation system is inconsistent or not planar."""


class SizeError(PlanarLabelError, ValueError):
    """Gadget requested for a cycle shorter than 3."""


class SeparatorError(PlanarLabelError):
    """No balanced separator found. Indicates a bug, never expected on valid input."""


class CodecError(PlanarLabelError):
    """Truncated or malformed bit stream."""


class FormatError(PlanarLabelError):
    """Bad label file or labels from different builds."""
