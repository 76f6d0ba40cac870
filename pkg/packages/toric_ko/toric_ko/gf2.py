"""Dense linear algebra over the two-element field.

Matrices are numpy uint8 arrays holding 0/1. Row reduction packs rows into
bytes so a pivot step is one vectorised XOR per affected row.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


def as_f2(matrix: Iterable | np.ndarray, n_cols: int | None = None) -> np.ndarray:
    arr = np.asarray(matrix, dtype=np.int64)
    if arr.ndim == 1:
        if arr.size == 0 and n_cols is not None:
            return np.zeros((0, n_cols), dtype=np.uint8)
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, n_cols or 0)
    return (arr & 1).astype(np.uint8)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return ((np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) & 1).astype(np.uint8)


def rref(matrix: Iterable | np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    a = as_f2(matrix)
    n_rows, n_cols = a.shape
    if n_rows == 0 or n_cols == 0:
        return np.zeros((0, n_cols), dtype=np.uint8), []
    packed = np.packbits(a, axis=1, bitorder="little")
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        byte, bit = divmod(c, 8)
        column = (packed[:, byte] >> bit) & 1
        candidates = np.nonzero(column[r:])[0]
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            packed[[r, p]] = packed[[p, r]]
            column[[r, p]] = column[[p, r]]
        hits = np.nonzero(column)[0]
        hits = hits[hits != r]
        if hits.size:
            packed[hits] ^= packed[r]
        pivots.append(c)
        r += 1
    reduced = np.unpackbits(packed[:r], axis=1, count=n_cols, bitorder="little")
    return reduced.astype(np.uint8), pivots


def rank(matrix: Iterable | np.ndarray) -> int:
    a = as_f2(matrix)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def is_invertible(matrix: Iterable | np.ndarray) -> bool:
    a = as_f2(matrix)
    return a.shape[0] == a.shape[1] and rank(a) == a.shape[0]


def nullspace(matrix: Iterable | np.ndarray, n_cols: int | None = None) -> np.ndarray:
    """Rows spanning {x : A x = 0}."""
    a = as_f2(matrix, n_cols)
    cols = a.shape[1]
    reduced, pivots = rref(a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, p in enumerate(pivots):
            basis[t, p] = reduced[i, f]
    return basis


def solve(matrix: Iterable | np.ndarray, rhs: Sequence[int] | np.ndarray) -> np.ndarray | None:
    """One solution x of A x = b, or None when the system is inconsistent."""
    a = as_f2(matrix)
    b = (np.asarray(rhs, dtype=np.int64).reshape(-1) & 1).astype(np.uint8)
    rows, cols = a.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.uint8) if not b.any() else None
    reduced, pivots = rref(np.concatenate([a, b[:, None]], axis=1))
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = reduced[i, cols]
    return x


def in_span(rows: np.ndarray, vector: Sequence[int] | np.ndarray) -> bool:
    rows = as_f2(rows, len(vector))
    if rows.shape[0] == 0:
        return not np.any(np.asarray(vector) & 1)
    return solve(rows.T, vector) is not None


def extend_to_basis(start: np.ndarray, candidates: np.ndarray) -> list[int]:
    """Greedy: indices of candidate rows that extend span(start) to full rank."""
    dim = candidates.shape[1]
    current = as_f2(start, dim)
    current_rank = rank(current) if current.shape[0] else 0
    chosen: list[int] = []
    for idx in range(candidates.shape[0]):
        if current_rank == dim:
            break
        trial = np.concatenate([current, candidates[idx : idx + 1]], axis=0)
        trial_rank = rank(trial)
        if trial_rank > current_rank:
            current, current_rank = trial, trial_rank
            chosen.append(idx)
    return chosen
