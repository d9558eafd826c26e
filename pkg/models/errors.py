"""
Exception hierarchy for the dispatch engine.

Every error raised on purpose derives from DispatchError so the command-line
driver can map each family to its own exit code.
"""


class DispatchError(Exception):
    """Base class for all dispatch engine errors."""


class StructuralError(DispatchError):
    """Shapes or structure do not match the case (dimensions, polygons, ramp data)."""


class DomainError(DispatchError):
    """A numeric input is outside the evaluator's domain (NaN, infinity)."""


class CaseParseError(DispatchError):
    """A case or config file is missing or is not valid JSON."""


class SchemaVersionError(DispatchError):
    """A file declares a schema version this build does not read."""


class CaseValidationError(DispatchError):
    """A case file parsed but violates one or more invariants.

    Attributes:
        errors: list of "<field path>: <message>" strings, all problems found
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__(f"{len(self.errors)} validation error(s):\n" + "\n".join(self.errors))


class ConfigError(DispatchError):
    """A run configuration violates its invariants."""


class ParameterError(DispatchError):
    """An algorithm parameter is out of range."""


class RepairFailedError(DispatchError):
    """The power-balance fixed point diverged."""


class InfeasibleCaseError(DispatchError):
    """Aggregate unit capacity cannot meet the demand."""


class DegenerateInputError(DispatchError):
    """Clustering input has fewer distinct points than clusters."""


class ArchiveError(DispatchError):
    """An archive cannot be written (for example, it is empty)."""
