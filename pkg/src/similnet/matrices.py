"""Count matrices over the stimulus pool and their normalized ratio.

C[i][j] counts panels showing i and j together; S[i][j] counts selections
grouping them; W = S/C is the fraction of co-showings that became
co-selections, the similarity-network edge weight. All three are symmetric
with zero diagonal. Accumulation is additive over event multisets, so logs
may be sharded and merged.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import InconsistentCountsError, OutOfRangeError
from .survey import SelectionEvent


class CoMatrix:
    """Symmetric non-negative integer count matrix with zero diagonal."""

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=np.int64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError(f"expected square matrix, got shape {values.shape}")
        if (values < 0).any():
            raise ValueError("counts must be non-negative")
        if not np.array_equal(values, values.T):
            raise ValueError("count matrix must be symmetric")
        if np.diagonal(values).any():
            raise ValueError("diagonal must be zero")
        self.values = values

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @classmethod
    def zeros(cls, n: int) -> "CoMatrix":
        return cls(np.zeros((n, n), dtype=np.int64))

    def __add__(self, other: "CoMatrix") -> "CoMatrix":
        return CoMatrix(self.values + other.values)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoMatrix) and np.array_equal(self.values, other.values)

    def __getitem__(self, key) -> int:
        return int(self.values[key])


class NormMatrix:
    """Elementwise S/C with a support mask marking where the ratio is defined."""

    def __init__(self, weights: np.ndarray, support_mask: np.ndarray):
        weights = np.asarray(weights, dtype=np.float64)
        support_mask = np.asarray(support_mask, dtype=bool)
        if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
            raise ValueError(f"expected square matrix, got shape {weights.shape}")
        if weights.shape != support_mask.shape:
            raise ValueError("weights and support_mask shapes differ")
        if ((weights < 0) | (weights > 1)).any():
            raise ValueError("weights must lie in [0, 1]")
        if (weights[~support_mask] != 0).any():
            raise ValueError("weights must be zero outside the support mask")
        if np.diagonal(weights).any() or np.diagonal(support_mask).any():
            raise ValueError("diagonal must be zero / unsupported")
        self.weights = weights
        self.support_mask = support_mask

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def __getitem__(self, key) -> float:
        return float(self.weights[key])


def _increment_pairs(matrix: np.ndarray, ids: tuple[int, ...]) -> None:
    if len(ids) < 2:
        return
    idx = np.asarray(ids)
    matrix[np.ix_(idx, idx)] += 1
    matrix[idx, idx] -= 1


def accumulate(
    events: Iterable[SelectionEvent], n: int
) -> tuple[CoMatrix, CoMatrix]:
    """Fold an event sequence into (co-occurrence C, co-selection S)."""
    c = np.zeros((n, n), dtype=np.int64)
    s = np.zeros((n, n), dtype=np.int64)
    for event in events:
        bad = [i for i in event.shown if not 0 <= i < n]
        if bad:
            raise OutOfRangeError(
                f"event {event.session_id}#{event.iteration_index} references ids "
                f"{bad} outside 0..{n - 1}"
            )
        _increment_pairs(c, event.shown)
        _increment_pairs(s, event.selected)
    return CoMatrix(c), CoMatrix(s)


def normalize(c: CoMatrix, s: CoMatrix, min_support: int = 1) -> NormMatrix:
    """W[i][j] = S[i][j] / C[i][j] where C >= max(1, min_support), else 0.

    Pairs never co-shown (or co-shown fewer than min_support times) carry no
    evidence: weight 0 with a false support mask, so downstream thresholding
    can distinguish "measured dissimilar" from "never measured".
    """
    if c.n != s.n:
        raise InconsistentCountsError(f"dimension mismatch: C is {c.n}, S is {s.n}")
    if (s.values > c.values).any():
        i, j = np.argwhere(s.values > c.values)[0]
        raise InconsistentCountsError(
            f"S[{i}][{j}]={s.values[i, j]} exceeds C[{i}][{j}]={c.values[i, j]}"
        )
    support = c.values >= max(1, min_support)
    weights = np.zeros_like(c.values, dtype=np.float64)
    np.divide(s.values, c.values, out=weights, where=support)
    return NormMatrix(weights, support)


# -- CSV export -----------------------------------------------------------


def _write_csv(path: Path, rows: Iterable[Iterable[str]], header: list[str]) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def export_count_csv(matrix: CoMatrix, path: str | Path) -> None:
    header = [str(i) for i in range(matrix.n)]
    rows = ([str(int(v)) for v in row] for row in matrix.values)
    _write_csv(Path(path), rows, header)


def export_weights_csv(norm: NormMatrix, path: str | Path) -> None:
    header = [str(i) for i in range(norm.n)]
    rows = ([f"{v:.6f}" for v in row] for row in norm.weights)
    _write_csv(Path(path), rows, header)


def export_matrices(
    c: CoMatrix, s: CoMatrix, w: NormMatrix, out_dir: str | Path
) -> dict[str, Path]:
    """Write cooccurrence.csv, coselection.csv, weights.csv into out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "cooccurrence": out_dir / "cooccurrence.csv",
        "coselection": out_dir / "coselection.csv",
        "weights": out_dir / "weights.csv",
    }
    export_count_csv(c, paths["cooccurrence"])
    export_count_csv(s, paths["coselection"])
    export_weights_csv(w, paths["weights"])
    return paths
