"""
Error codes and exception types for the simulator.

Codes are machine-readable and map to process exit codes for the management
commands (a run that fails validation must exit nonzero).
"""

from enum import Enum


class ErrorCode(str, Enum):
    """Machine-readable error codes."""

    INVALID_ARGUMENT = "invalid_argument"  # formula / API precondition violated
    TRACE_PARSE = "trace_parse"  # malformed BonnMotion trace
    SCENARIO_CONFIG = "scenario_config"  # unknown key or invariant violation
    UNKNOWN_PRESET = "unknown_preset"
    SIMULATOR_LOGIC = "simulator_logic"  # internal bookkeeping bug, aborts the run
    FOREIGN_REPORT = "foreign_report"  # NAP report sent to the wrong slave
    EMIT_FAILED = "emit_failed"  # output directory / file not writable
    DEMAND_INVALID = "demand_invalid"  # planner demand profile rejected


EXIT_CODES = {
    ErrorCode.INVALID_ARGUMENT: 2,
    ErrorCode.TRACE_PARSE: 3,
    ErrorCode.SCENARIO_CONFIG: 3,
    ErrorCode.UNKNOWN_PRESET: 3,
    ErrorCode.DEMAND_INVALID: 3,
    ErrorCode.EMIT_FAILED: 4,
    ErrorCode.FOREIGN_REPORT: 5,
    ErrorCode.SIMULATOR_LOGIC: 70,
}


def get_exit_code(error_code: ErrorCode) -> int:
    """Get the process exit code for an error code."""
    return EXIT_CODES.get(error_code, 1)


class SimulationError(Exception):
    code = ErrorCode.INVALID_ARGUMENT

    @property
    def exit_code(self) -> int:
        return get_exit_code(self.code)


class TraceParseError(SimulationError, ValueError):
    code = ErrorCode.TRACE_PARSE

    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class ScenarioConfigError(SimulationError, ValueError):
    code = ErrorCode.SCENARIO_CONFIG

    def __init__(self, message: str, key_path: str = ''):
        self.key_path = key_path
        super().__init__(f"{key_path}: {message}" if key_path else message)


class UnknownPresetError(SimulationError, KeyError):
    code = ErrorCode.UNKNOWN_PRESET

    def __init__(self, name: str, known: list[str]):
        self.name = name
        self.known = known
        super().__init__(f"unknown preset '{name}' (known: {', '.join(known)})")

    def __str__(self):
        return self.args[0]


class SimulatorLogicError(SimulationError, RuntimeError):
    code = ErrorCode.SIMULATOR_LOGIC


class ForeignReportError(SimulationError, ValueError):
    code = ErrorCode.FOREIGN_REPORT

    def __init__(self, nap_id: str, technology: str):
        self.nap_id = nap_id
        self.technology = technology
        super().__init__(f"NAP {nap_id} does not belong to technology {technology}")


class EmitError(SimulationError):
    code = ErrorCode.EMIT_FAILED

    def __init__(self, message: str, path):
        self.path = str(path)
        super().__init__(f"{self.path}: {message}")

    def __str__(self):
        return self.args[0]


class DemandValidationError(SimulationError, ValueError):
    code = ErrorCode.DEMAND_INVALID
