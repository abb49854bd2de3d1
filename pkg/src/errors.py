"""
Exception hierarchy shared by every lpthreshold component.
"""

from typing import Any, Dict, Optional


class LpThresholdError(Exception):
    """Base class for all lpthreshold failures"""


class NoBracket(LpThresholdError):
    """Raised when a root-finding interval does not straddle a sign change"""


class NonFinite(LpThresholdError):
    """Raised when a function evaluates to inf/nan inside a bracket"""


class RankDeficient(LpThresholdError):
    """Raised when a least-squares system is singular beyond tolerance"""


class NoSolution(LpThresholdError):
    """Raised when the requested branch or threshold does not exist"""


class ConvergenceFailure(LpThresholdError):
    """Raised when an iterative solver gives up; carries its last state"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        return f"{base} ({details})"


class FormatError(LpThresholdError):
    """Parse failure in one of the text formats, with its location"""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.line = line
        self.field = field


class InstanceFormatError(FormatError):
    """Malformed problem-instance dump"""


class RecordFormatError(FormatError):
    """Malformed trials or estimates CSV"""


class ConfigError(LpThresholdError):
    """Invalid sweep configuration"""
