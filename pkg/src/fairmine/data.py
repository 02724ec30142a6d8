"""Dataset ingestion, schema validation and categorical coding.

A CSV plus a schema sidecar (column -> kind/role and the beneficial /
protected labels) becomes a Dataset of raw cells; applying per-attribute
cut points turns it into a DiscretizedDataset where every column is a
dense small-integer code and the outcome / protected columns are binary
vectors. All mining downstream operates on the coded form.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    EmptyDataset,
    LengthMismatch,
    NonBinaryOutcome,
    NonBinaryProtected,
    UnknownColumn,
    UnknownModel,
)
from .mdl import CutPoints, discretize_mdl

KINDS = ("categorical", "continuous")
ROLES = ("protected", "resolving", "proxy", "context", "outcome", "prediction")


@dataclass
class AttributeSpec:
    """Declared kind/role of one column plus its category dictionary.

    For continuous attributes `categories` and `cut_points` are filled in
    by apply_discretization; `positive_value` marks the beneficial label
    (outcome role) or the protected-group label (protected role).
    """

    name: str
    kind: str
    role: str
    categories: list[str] = field(default_factory=list)
    cut_points: list[float] = field(default_factory=list)
    positive_value: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r} for {self.name}")
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r} for {self.name}")


@dataclass
class Dataset:
    """Raw rows with validated specs; item ids are dense 0..N-1."""

    attributes: list[AttributeSpec]
    rows: list[list[str]]
    n_skipped_missing: int = 0

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.attributes]

    def attribute(self, name: str) -> AttributeSpec:
        for a in self.attributes:
            if a.name == name:
                return a
        raise UnknownColumn(f"no attribute named {name!r}")

    def column(self, name: str) -> list[str]:
        j = self.names.index(name)
        return [row[j] for row in self.rows]

    @property
    def outcome_spec(self) -> AttributeSpec:
        return next(a for a in self.attributes if a.role == "outcome")

    @property
    def protected_spec(self) -> AttributeSpec:
        return next(a for a in self.attributes if a.role == "protected")


def load_dataset(csv_source, schema: Mapping[str, Mapping[str, str]]) -> Dataset:
    """Ingest a CSV byte/text stream under a role/kind schema.

    schema maps column name -> {kind, role, beneficial_label?,
    protected_label?}. Columns absent from the schema default to
    categorical context attributes. Rows with any missing cell are
    dropped and counted in `n_skipped_missing`.
    """
    if isinstance(csv_source, (bytes, bytearray)):
        csv_source = io.StringIO(csv_source.decode("utf-8"))
    elif isinstance(csv_source, str):
        csv_source = io.StringIO(csv_source)
    elif hasattr(csv_source, "read") and isinstance(csv_source.read(0), bytes):
        csv_source = io.TextIOWrapper(csv_source, encoding="utf-8")
    reader = csv.reader(csv_source)
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyDataset("CSV has no header row")

    for col in schema:
        if col not in header:
            raise UnknownColumn(f"schema names missing column {col!r}")

    specs: list[AttributeSpec] = []
    for name in header:
        decl = schema.get(name, {})
        specs.append(AttributeSpec(
            name=name,
            kind=decl.get("kind", "categorical"),
            role=decl.get("role", "context"),
            positive_value=decl.get("beneficial_label", decl.get("protected_label")),
        ))

    outcomes = [a for a in specs if a.role == "outcome"]
    protecteds = [a for a in specs if a.role == "protected"]
    if len(outcomes) != 1:
        raise NonBinaryOutcome(f"schema must declare exactly one outcome column, got {len(outcomes)}")
    if len(protecteds) != 1:
        raise NonBinaryProtected(f"schema must declare exactly one protected column, got {len(protecteds)}")

    rows: list[list[str]] = []
    skipped = 0
    for raw in reader:
        if len(raw) != len(header) or any(cell.strip() == "" for cell in raw):
            skipped += 1
            continue
        rows.append([cell.strip() for cell in raw])
    if not rows:
        raise EmptyDataset("no complete data rows")

    ds = Dataset(attributes=specs, rows=rows, n_skipped_missing=skipped)

    # Collect categorical dictionaries in first-appearance order and
    # sanity-check the continuous columns parse as numbers.
    for j, spec in enumerate(specs):
        col = [row[j] for row in rows]
        if spec.kind == "categorical":
            seen: list[str] = []
            for v in col:
                if v not in seen:
                    seen.append(v)
            spec.categories = seen
        else:
            for v in col:
                try:
                    float(v)
                except ValueError:
                    raise ValueError(f"non-numeric value {v!r} in continuous column {spec.name}")

    _validate_binary(ds, outcomes[0], NonBinaryOutcome)
    _validate_binary(ds, protecteds[0], NonBinaryProtected)
    return ds


def _validate_binary(ds: Dataset, spec: AttributeSpec, err) -> None:
    if spec.kind != "categorical":
        raise err(f"{spec.role} column {spec.name!r} must be categorical")
    observed = spec.categories
    if len(observed) > 2:
        raise err(f"{spec.role} column {spec.name!r} has {len(observed)} values: {observed}")
    if spec.positive_value is None:
        if set(observed) <= {"0", "1"}:
            spec.positive_value = "1"
        elif spec.role == "protected" and len(observed) == 2:
            # Default A=1 group: first-appearance order; override in config.
            spec.positive_value = observed[0]
        else:
            raise err(f"{spec.role} column {spec.name!r} needs an explicit positive label "
                      f"(observed values: {observed})")
    if spec.role == "protected" and len(observed) != 2:
        raise err(f"protected column {spec.name!r} must have exactly 2 observed values, got {observed}")


def _format_num(x: float) -> str:
    if math.isfinite(x) and x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return format(x, "g")


def interval_labels(thresholds: Sequence[float]) -> list[str]:
    """Bin labels for a discretized column: '≤t0', 'a<v≤b', '>tk'."""
    if not thresholds:
        return ["(-inf, inf)"]
    labels = [f"<={_format_num(thresholds[0])}"]
    for lo, hi in zip(thresholds, thresholds[1:]):
        labels.append(f"{_format_num(lo)}<v<={_format_num(hi)}")
    labels.append(f">{_format_num(thresholds[-1])}")
    return labels


@dataclass
class DiscretizedDataset:
    """Fully coded dataset: codes matrix, binary outcome/protected, predictions."""

    base: Dataset
    codes: np.ndarray                      # N x M small ints
    outcome: np.ndarray                    # N binary, 1 = beneficial
    protected_flag: np.ndarray             # N binary, 1 = protected group
    predictions: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.codes.shape[0])

    @property
    def attributes(self) -> list[AttributeSpec]:
        return self.base.attributes

    @property
    def names(self) -> list[str]:
        return self.base.names

    def column_codes(self, name: str) -> np.ndarray:
        return self.codes[:, self.names.index(name)]

    def prediction(self, model_id: str) -> np.ndarray:
        if model_id not in self.predictions:
            raise UnknownModel(f"no predictions attached for model {model_id!r}")
        return self.predictions[model_id]

    @property
    def condition_attrs(self) -> list[str]:
        """Attributes usable as condition literals (not outcome, not protected)."""
        return [a.name for a in self.attributes
                if a.role not in ("outcome", "protected")]

    def with_protected_group(self, value: str) -> "DiscretizedDataset":
        """New logical version with a different A=1 group label."""
        spec = self.base.protected_spec
        if value not in spec.categories:
            raise NonBinaryProtected(
                f"{value!r} is not an observed value of {spec.name!r} ({spec.categories})")
        col = self.base.column(spec.name)
        flag = np.fromiter((1 if v == value else 0 for v in col), dtype=np.int8, count=self.base.n)
        new_spec = replace(spec, positive_value=value)
        new_attrs = [new_spec if a.name == spec.name else a for a in self.attributes]
        new_base = Dataset(attributes=new_attrs, rows=self.base.rows,
                           n_skipped_missing=self.base.n_skipped_missing)
        return DiscretizedDataset(base=new_base, codes=self.codes, outcome=self.outcome,
                                  protected_flag=flag, predictions=dict(self.predictions))


def discretize_all(ds: Dataset) -> dict[str, CutPoints]:
    """MDL cut points for every continuous attribute, against training labels."""
    outcome = binarize(ds.column(ds.outcome_spec.name), ds.outcome_spec.positive_value)
    cuts: dict[str, CutPoints] = {}
    for spec in ds.attributes:
        if spec.kind == "continuous":
            values = [float(v) for v in ds.column(spec.name)]
            cuts[spec.name] = discretize_mdl(values, outcome.tolist(), attribute=spec.name)
    return cuts


def binarize(column: Iterable[str], positive: str) -> np.ndarray:
    return np.fromiter((1 if v == positive else 0 for v in column), dtype=np.int8)


def apply_discretization(ds: Dataset, cuts: Mapping[str, CutPoints]) -> DiscretizedDataset:
    """Code every column; continuous code = count of thresholds <= value."""
    n, m = ds.n, len(ds.attributes)
    codes = np.zeros((n, m), dtype=np.int32)
    for j, spec in enumerate(ds.attributes):
        col = [row[j] for row in ds.rows]
        if spec.kind == "continuous":
            if spec.name not in cuts:
                raise ValueError(f"no cut points provided for continuous attribute {spec.name!r}")
            thresholds = sorted(cuts[spec.name].thresholds)
            spec.cut_points = list(thresholds)
            spec.categories = interval_labels(thresholds)
            values = np.array([float(v) for v in col])
            codes[:, j] = np.searchsorted(np.array(thresholds), values, side="right")
        else:
            index = {c: i for i, c in enumerate(spec.categories)}
            codes[:, j] = [index[v] for v in col]

    outcome = binarize([row[ds.names.index(ds.outcome_spec.name)] for row in ds.rows],
                       ds.outcome_spec.positive_value)
    protected = binarize([row[ds.names.index(ds.protected_spec.name)] for row in ds.rows],
                         ds.protected_spec.positive_value)
    return DiscretizedDataset(base=ds, codes=codes, outcome=outcome, protected_flag=protected)


def attach_predictions(ddata: DiscretizedDataset, model_id: str,
                       labels: Sequence) -> DiscretizedDataset:
    """Attach (or replace) one model's binary prediction vector.

    Labels may be 0/1 ints or raw strings in the outcome's label space.
    Returns a new logical version; the input is left untouched.
    """
    if not model_id:
        raise ValueError("model_id must be nonempty")
    if len(labels) != ddata.n:
        raise LengthMismatch(
            f"predictions for {model_id!r} have length {len(labels)}, dataset has {ddata.n}")
    beneficial = ddata.base.outcome_spec.positive_value
    vec = np.empty(ddata.n, dtype=np.int8)
    for i, v in enumerate(labels):
        if isinstance(v, str) and v not in ("0", "1"):
            vec[i] = 1 if v == beneficial else 0
        else:
            vec[i] = 1 if int(v) == 1 else 0
    preds = dict(ddata.predictions)
    preds[model_id] = vec
    return DiscretizedDataset(base=ddata.base, codes=ddata.codes, outcome=ddata.outcome,
                              protected_flag=ddata.protected_flag, predictions=preds)


def attribute_histograms(ddata: DiscretizedDataset, model_id: str
                         ) -> dict[str, list[tuple[str, int, int]]]:
    """Per attribute: (category, count predicted beneficial, count not)."""
    pred = ddata.prediction(model_id)
    out: dict[str, list[tuple[str, int, int]]] = {}
    for j, spec in enumerate(ddata.attributes):
        col = ddata.codes[:, j]
        rows = []
        for code, cat in enumerate(spec.categories):
            mask = col == code
            benef = int(np.count_nonzero(pred[mask]))
            rows.append((cat, benef, int(np.count_nonzero(mask)) - benef))
        out[spec.name] = rows
    return out
