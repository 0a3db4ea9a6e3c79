class LanduseError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LanduseError):
    """Unreadable or malformed input data or resource file (CLI exit code 2)."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


class GeometryError(InputError):
    """Degenerate polygon or malformed GeoJSON."""


class ModelFormatError(LanduseError):
    """Corrupt, unversioned or incompatible model file (CLI exit code 3)."""


class ConfigError(LanduseError):
    """Invalid configuration or training setup (CLI exit code 3)."""
