"""Exception types shared across the audit engine."""


class AuditError(Exception):
    """Base class for all engine errors."""


class UnknownColumn(AuditError):
    """Schema names a column that is not present in the CSV."""


class NonBinaryOutcome(AuditError):
    """Outcome column cannot be coded as a binary beneficial/non-beneficial label."""


class NonBinaryProtected(AuditError):
    """Protected column does not have exactly two observed values."""


class EmptyDataset(AuditError):
    """No data rows survived ingestion."""


class LengthMismatch(AuditError):
    """A prediction vector does not align with the dataset rows."""


class UnknownModel(AuditError):
    """Requested model_id has no attached prediction vector."""


class TooFewRows(AuditError):
    """Not enough rows for parent discovery."""


class InsufficientGroupSupport(AuditError):
    """A condition leaves one of the two groups below the minimum support."""

    def __init__(self, message: str, thin_group: str):
        super().__init__(message)
        self.thin_group = thin_group


class NoResolvingAttributes(AuditError):
    """Resolving set is empty and the explicit override was not given."""


class ConfigMismatch(AuditError):
    """Two results were computed under configs that differ beyond model_id."""


class EmptySelection(AuditError):
    """Mitigation requested with no selected itemsets."""


class UnknownItemset(AuditError):
    """A selected canonical key is not part of the current result."""


class StalePlanError(AuditError):
    """A mitigation plan no longer matches the current prediction labels."""


class MitigationInfeasible(AuditError):
    """No flip sequence under the group-priority policy can reach the target."""
