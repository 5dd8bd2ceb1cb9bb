"""Exception types shared across the package."""


class PlateFlutterError(Exception):
    """Base class for all package errors."""


class NoRootError(PlateFlutterError):
    """A branch equation has no root in its admissible interval."""


class BracketError(PlateFlutterError):
    """No sign change found inside the analytic bracket of a root."""


class ToleranceError(PlateFlutterError):
    """A numerical tolerance (integration drift, convergence) could not be met."""


class ConfigError(PlateFlutterError):
    """Invalid configuration file, field, or command-line value."""
