"""Exception types shared across the package."""


class GfdError(Exception):
    """Base class for all errors raised by gfdenoise."""


class DimensionMismatch(GfdError):
    """Operands have incompatible shapes."""


class InvalidRange(GfdError):
    """An index range or gain is outside its allowed bounds."""


class InvalidK(GfdError):
    """Neighbor count k is outside [1, n-1]."""


class InvalidSize(GfdError):
    """A size parameter is too small for the requested construction."""


class IsolatedVertex(GfdError):
    """A vertex has zero degree, so the normalized Laplacian is undefined."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"vertex {index} has zero degree")


class ZeroVector(GfdError):
    """A feature row has zero norm, so cosine similarity is undefined."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"feature row {index} has zero norm")


class ConvergenceFailure(GfdError):
    """The eigensolver failed to converge."""


class ClassTooSmall(GfdError):
    """A class has too few samples to build a graph."""

    def __init__(self, label: str, message: str | None = None):
        self.label = label
        super().__init__(message or f"class {label!r} has fewer than 2 samples")


class EmptyClass(GfdError):
    """A classifier was fit on an empty training set."""


class InsufficientPool(GfdError):
    """The feature pool cannot supply the requested episode."""


class TooFewSamples(GfdError):
    """A confidence interval needs at least two values."""


class ParseError(GfdError):
    """A text feature file could not be parsed."""

    def __init__(self, line: int, message: str | None = None):
        self.line = line
        super().__init__(message or f"parse error at line {line}")


class InconsistentDimension(ParseError):
    """A text feature file mixes rows of different dimensions."""

    def __init__(self, line: int, message: str | None = None):
        super().__init__(line, message or f"inconsistent dimension at line {line}")


class BadMagic(GfdError):
    """A binary feature file does not start with the expected magic."""


class TruncatedFile(GfdError):
    """A binary feature file's payload does not match its header."""


class ConfigError(GfdError):
    """A configuration file or CLI setting is invalid."""
