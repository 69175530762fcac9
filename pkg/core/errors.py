# core/errors.py
"""
Error types and the command-level error handler.

Every failure raised by the library derives from HOGNNError, which is a
ValueError so that callers written against plain ValueError keep working.
"""

from typing import Dict, Any, Optional


class HOGNNError(ValueError):
    """Base class for all library errors."""

    code = "hognn_error"
    exit_status = 2

    def __init__(self, message: str = "", **context: Any):
        super().__init__(message or self.code)
        self.context = context


class OutOfRange(HOGNNError):
    code = "out_of_range"


class DuplicateEdge(HOGNNError):
    code = "duplicate_edge"


class SizeMismatch(HOGNNError):
    code = "size_mismatch"


class TooLarge(HOGNNError):
    code = "too_large"


class FeatureWidthMismatch(HOGNNError):
    code = "feature_width_mismatch"


class KindMismatch(HOGNNError):
    code = "kind_mismatch"


class EmptyStructure(HOGNNError):
    code = "empty_structure"


class UnknownEntity(HOGNNError):
    code = "unknown_entity"


class UnknownTuple(HOGNNError):
    code = "unknown_tuple"


class EmptyClass(HOGNNError):
    code = "empty_class"


class MotifTooLarge(HOGNNError):
    code = "motif_too_large"


class BoundsInverted(HOGNNError):
    code = "bounds_inverted"


class BudgetExceeded(HOGNNError):
    code = "budget_exceeded"


class EmptyRelationSet(HOGNNError):
    code = "empty_relation_set"


class MixedTupleLengths(HOGNNError):
    code = "mixed_tuple_lengths"


class UnknownFunctionKind(HOGNNError):
    code = "unknown_function_kind"


class ShapeMismatch(HOGNNError):
    code = "shape_mismatch"


class EmptyIncidence(HOGNNError):
    code = "empty_incidence"


class EmptyCollection(HOGNNError):
    code = "empty_collection"


class OuterRequiresVertexAnchoring(HOGNNError):
    code = "outer_requires_vertex_anchoring"


class EmptyState(HOGNNError):
    code = "empty_state"


class UsageError(HOGNNError):
    code = "usage_error"


class InvalidParameter(HOGNNError):
    code = "invalid_parameter"


class DisconnectedInput(HOGNNError):
    code = "disconnected_input"


class ConfigError(HOGNNError):
    code = "config_error"


class DocumentError(HOGNNError):
    code = "document_error"


class ErrorHandler:
    """Turns exceptions raised under a CLI command into a report dict."""

    def handle_error(self, error: Exception, command: Optional[str] = None) -> Dict[str, Any]:
        if isinstance(error, HOGNNError):
            return {
                "error_occurred": True,
                "user_message": str(error),
                "error_type": type(error).__name__,
                "code": error.code,
                "command": command,
                "exit_status": error.exit_status,
            }

        # Anything else is an internal failure
        return {
            "error_occurred": True,
            "user_message": f"internal error: {type(error).__name__}: {error}",
            "error_type": "internal",
            "code": "internal_error",
            "command": command,
            "exit_status": 1,
        }

    def format_message(self, report: Dict[str, Any]) -> str:
        command = report.get("command") or "hognn"
        return f"❌ {command}: [{report['code']}] {report['user_message']}"


def handle_command_error(error: Exception, command: Optional[str] = None) -> Dict[str, Any]:
    return ErrorHandler().handle_error(error, command)
