"""Probabilistic clock-constraint checking over discrete tick traces."""

from .clocks import UNIVERSAL_CLOCK, HistoryTracker, Trace, trace_new
from .errors import (
    DeclarationError,
    ExpressionError,
    FaultTargetError,
    PrccslError,
    SpecError,
    SpecSyntaxError,
    SpecValidationError,
    TraceFormatError,
    UnknownClockError,
)
from .exprs import (
    ClockExpr,
    DelayFor,
    Inf,
    PeriodicOn,
    Ref,
    Sup,
    clocks_of,
    delay_for,
    eval_expr,
    inf_clock,
    periodic_on,
    sup_clock,
)
from .relations import (
    CheckResult,
    MonitorState,
    RelationError,
    RelationKind,
    RelationSpec,
    Verdict,
    check_relations,
    finalize,
    observe_causality,
    observe_coincidence,
    observe_exclusion,
    observe_precedence,
    observe_subclock,
)
from .report import build_report, render_text
from .simulator import (
    ALPHABET,
    FAULT_TARGETS,
    AVParams,
    ControllerState,
    FaultSpec,
    simulate,
    simulate_faulty,
)
from .speclang import (
    SPEC_FILE_EXTENSION,
    ClockDecl,
    Definition,
    RelationStmt,
    Settings,
    SpecFile,
    elaborate,
    format_expr,
    format_threshold,
    parse,
    pretty_print,
)
from .traceio import read_trace, trace_to_string, write_trace

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "UNIVERSAL_CLOCK",
    "HistoryTracker",
    "Trace",
    "trace_new",
    "PrccslError",
    "DeclarationError",
    "UnknownClockError",
    "ExpressionError",
    "SpecError",
    "SpecSyntaxError",
    "SpecValidationError",
    "TraceFormatError",
    "FaultTargetError",
    "ClockExpr",
    "Ref",
    "PeriodicOn",
    "DelayFor",
    "Inf",
    "Sup",
    "clocks_of",
    "eval_expr",
    "periodic_on",
    "delay_for",
    "inf_clock",
    "sup_clock",
    "RelationKind",
    "RelationSpec",
    "MonitorState",
    "Verdict",
    "RelationError",
    "CheckResult",
    "observe_subclock",
    "observe_coincidence",
    "observe_exclusion",
    "observe_causality",
    "observe_precedence",
    "finalize",
    "check_relations",
    "build_report",
    "render_text",
    "ALPHABET",
    "AVParams",
    "FaultSpec",
    "ControllerState",
    "FAULT_TARGETS",
    "simulate",
    "simulate_faulty",
    "SPEC_FILE_EXTENSION",
    "ClockDecl",
    "Definition",
    "RelationStmt",
    "Settings",
    "SpecFile",
    "parse",
    "pretty_print",
    "format_expr",
    "format_threshold",
    "elaborate",
    "read_trace",
    "write_trace",
    "trace_to_string",
]
