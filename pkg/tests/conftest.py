"""Shared builders for engine tests."""

from __future__ import annotations

import io
import random
from itertools import combinations, product

import numpy as np
import pytest

from fairmine.data import (
    DiscretizedDataset,
    apply_discretization,
    attach_predictions,
    discretize_all,
    load_dataset,
)


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def build_ddata(columns: dict[str, list], schema: dict,
                predictions: dict[str, list] | None = None) -> DiscretizedDataset:
    """Load a dataset from in-memory columns through the real CSV path."""
    header = list(columns)
    n = len(next(iter(columns.values())))
    rows = [[columns[h][i] for h in header] for i in range(n)]
    ds = load_dataset(csv_text(header, rows), schema)
    ddata = apply_discretization(ds, discretize_all(ds))
    for model_id, labels in (predictions or {}).items():
        ddata = attach_predictions(ddata, model_id, labels)
    return ddata


def random_ddata(rng: random.Random, *, max_rows=12, max_attrs=4, model_id="m"
                 ) -> DiscretizedDataset:
    """Small random dataset for oracle comparisons."""
    n = rng.randint(4, max_rows)
    n_attrs = rng.randint(1, max_attrs)
    columns: dict[str, list] = {}
    for j in range(n_attrs):
        n_cats = rng.randint(2, 3)
        columns[f"x{j}"] = [f"v{rng.randrange(n_cats)}" for _ in range(n)]
    columns["prot"] = [rng.choice(["p", "q"]) for _ in range(n)]
    # Force both protected values to appear.
    columns["prot"][0] = "p"
    columns["prot"][-1] = "q"
    columns["label"] = [str(rng.randint(0, 1)) for _ in range(n)]
    schema = {"prot": {"role": "protected", "protected_label": "p"},
              "label": {"role": "outcome"}}
    preds = {model_id: [rng.randint(0, 1) for _ in range(n)]}
    return build_ddata(columns, schema, preds)


def apriori_oracle(ddata: DiscretizedDataset, min_support: int, max_length: int
                   ) -> dict[frozenset, int]:
    """Exhaustive frequent-itemset enumeration by row filtering."""
    attrs = ddata.condition_attrs
    out: dict[frozenset, int] = {}
    for k in range(1, max_length + 1):
        for combo in combinations(attrs, k):
            domains = [range(len(ddata.base.attribute(a).categories)) for a in combo]
            for codes in product(*domains):
                support = 0
                for i in range(ddata.n):
                    if all(ddata.column_codes(a)[i] == c for a, c in zip(combo, codes)):
                        support += 1
                if support >= min_support:
                    out[frozenset(zip(combo, codes))] = support
    return out


def direct_rd(ddata: DiscretizedDataset, model_id: str,
              literals: frozenset) -> tuple[int, int, float, float]:
    """Pure-python recount: group sizes and rates for one condition."""
    pred = ddata.prediction(model_id)
    n_p = n_np = b_p = b_np = 0
    for i in range(ddata.n):
        if all(ddata.column_codes(a)[i] == c for a, c in literals):
            if ddata.protected_flag[i]:
                n_p += 1
                b_p += int(pred[i])
            else:
                n_np += 1
                b_np += int(pred[i])
    p_p = b_p / n_p if n_p else 0.0
    p_np = b_np / n_np if n_np else 0.0
    return n_p, n_np, p_p, p_np


@pytest.fixture
def simpson_ddata() -> DiscretizedDataset:
    return build_simpson_ddata()


def build_simpson_ddata() -> DiscretizedDataset:
    """Admission table with a Simpson reversal.

    Acceptance depends only on the major (CS 20%, Arts 80%); within each
    major the score split is the same for both genders, and within each
    score band the major mix is the same for both genders. Every
    conditional risk difference is exactly 0 while the overall rates are
    0.42 (female) vs 0.50 (male).
    """
    cells = [
        # gender, major, score, n_total, n_accepted
        ("F", "CS", "high", 30, 6),
        ("F", "CS", "low", 350, 70),
        ("F", "Arts", "high", 150, 120),
        ("F", "Arts", "low", 70, 56),
        ("M", "CS", "high", 50, 10),
        ("M", "CS", "low", 250, 50),
        ("M", "Arts", "high", 250, 200),
        ("M", "Arts", "low", 50, 40),
    ]
    gender, major, score, admit = [], [], [], []
    for g, m, s, total, accepted in cells:
        for i in range(total):
            gender.append(g)
            major.append(m)
            score.append(s)
            admit.append("yes" if i < accepted else "no")
    columns = {"gender": gender, "major": major, "test score": score, "admit": admit}
    schema = {"gender": {"role": "protected", "protected_label": "F"},
              "admit": {"role": "outcome", "beneficial_label": "yes"}}
    # The audited "model" predicts exactly the recorded decision.
    return build_ddata(columns, schema, {"m": list(admit)})
