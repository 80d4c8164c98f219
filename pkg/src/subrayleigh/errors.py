"""Exception types shared across the package."""


class SubRayleighError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SubRayleighError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class GeometryError(SubRayleighError, ValueError):
    """Optical train is degenerate or violates the thin-lens condition."""


class SamplingError(SubRayleighError, ValueError):
    """A grid is too coarse for the requested evaluation (aliasing risk)."""


class ConvergenceError(SubRayleighError, RuntimeError):
    """A quadrature did not converge under grid refinement."""


class UnsupportedError(SubRayleighError, ValueError):
    """Requested mode is outside the supported problem scale."""


class DetectionError(SubRayleighError, RuntimeError):
    """Peaks could not be located in a simulated image."""


class ScanError(SubRayleighError, RuntimeError):
    """A parameter scan failed to bracket the sought transition."""


class VisibilityError(SubRayleighError, RuntimeError):
    """Visibility is undefined for a structureless field."""


class ConfigError(SubRayleighError, ValueError):
    """A scenario configuration file is malformed or inconsistent."""
