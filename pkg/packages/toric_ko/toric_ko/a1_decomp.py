"""Splitting H*(X; Z/2) as an A(1)-module into copies of Σ^{2j}S⁰ and Σ^{2j}M.

With cohomology in even degrees only, Sq¹ = 0 and Sq²Sq² = 0, so the
module is the chain complex (H*, Sq²). In each degree 2k:

  C_{2k}  = Sq²(B_{2k-2})                          (independent, killed by Sq²)
  extend C_{2k} to a basis with complement vectors u
  sweep the u's: when Sq²u depends on the images of kept B vectors, add
  that combination to u so Sq² kills it (-> D_{2k}); otherwise keep u in
  B_{2k}.

Each D vector spans a Σ^{2k}S⁰; each B vector b with Sq²b in C_{2k+2} spans
a Σ^{2k}M.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
import logging

import numpy as np

from . import gf2
from .face_ring import GradedAlgebraF2
from .steenrod import Sq2Operator, sq2_homology

logger = logging.getLogger("ToricKO.A1Decomp")


@dataclass(frozen=True, eq=False)
class Witness:
    """Rows are coordinate vectors in the canonical basis of H^degree."""

    degree: int
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray


@dataclass(frozen=True, eq=False)
class A1Decomposition:
    m_mult: tuple[int, ...]  # Σ^{2j} S0 summands, index j
    n_mult: tuple[int, ...]  # Σ^{2j} M summands, index j
    witnesses: dict[int, Witness] = field(default_factory=dict, repr=False)
    is_reduced: bool = False

    @property
    def top_index(self) -> int:
        return len(self.m_mult) - 1

    def summands(self) -> list[tuple[str, int, int]]:
        """(kind, shift, count) with kind S0 or M, in order of shift then kind."""
        out = []
        for j in range(len(self.m_mult)):
            if self.m_mult[j]:
                out.append(("S0", 2 * j, self.m_mult[j]))
            if self.n_mult[j]:
                out.append(("M", 2 * j, self.n_mult[j]))
        return out

    def summary_lines(self) -> list[str]:
        return [f"Σ^{shift} {kind} ×{count}" for kind, shift, count in self.summands()]

    def formula(self) -> str:
        parts = []
        for kind, shift, count in self.summands():
            prefix = "" if count == 1 else str(count)
            parts.append(f"{prefix}Σ^{shift}{kind}")
        return " ⊕ ".join(parts) if parts else "0"

    def total_dim(self) -> int:
        return sum(self.m_mult) + 2 * sum(self.n_mult)

    def reduced(self) -> "A1Decomposition":
        """Drops the unit summand Σ^0 S0 (reduced cohomology)."""
        if self.is_reduced or not self.m_mult or self.m_mult[0] == 0:
            return self
        m_mult = (self.m_mult[0] - 1,) + self.m_mult[1:]
        witnesses = dict(self.witnesses)
        if 0 in witnesses:
            w = witnesses[0]
            witnesses[0] = replace(w, d=w.d[1:])
        return replace(self, m_mult=m_mult, witnesses=witnesses, is_reduced=True)

    def to_dict(self) -> dict[str, object]:
        return {
            "m_mult": list(self.m_mult),
            "n_mult": list(self.n_mult),
            "summands": [{"kind": kind, "shift": shift, "count": count} for kind, shift, count in self.summands()],
            "formula": self.formula(),
        }


@dataclass(frozen=True, slots=True)
class Verdict:
    ok: bool
    failed: str | None = None
    detail: str = ""


def _rows(rows: list[np.ndarray], width: int) -> np.ndarray:
    return np.array(rows, dtype=np.uint8).reshape(len(rows), width)


def _images(op: Sq2Operator, degree: int, rows: np.ndarray) -> np.ndarray:
    """Sq² of each row, as rows in degree + 2."""
    return gf2.matmul(rows, op.mats[degree].T)


def decompose(A: GradedAlgebraF2, op: Sq2Operator, *, rng: np.random.Generator | None = None) -> A1Decomposition:
    witnesses: dict[int, Witness] = {}
    previous_b = np.zeros((0, 0), dtype=np.uint8)
    m_mult, n_mult = [], []
    for degree in A.degrees:
        dim = A.dim(degree)
        if degree == 0:
            c_rows = np.zeros((0, dim), dtype=np.uint8)
        else:
            c_rows = _images(op, degree - 2, previous_b)

        candidates = np.eye(dim, dtype=np.uint8)
        if rng is not None:
            candidates = candidates[rng.permutation(dim)]
        complement = candidates[gf2.extend_to_basis(c_rows, candidates)]

        d_rows: list[np.ndarray] = []
        b_rows: list[np.ndarray] = []
        b_images: list[np.ndarray] = []
        for u in complement:
            image = gf2.matmul(op.mats[degree], u)
            if not image.any():
                d_rows.append(u)
                continue
            coeffs = gf2.solve(np.array(b_images).T, image) if b_images else None
            if coeffs is None:
                b_rows.append(u)
                b_images.append(image)
            else:
                d_rows.append(u ^ gf2.matmul(coeffs, np.array(b_rows)))

        b = _rows(b_rows, dim)
        witnesses[degree] = Witness(degree=degree, b=b, c=c_rows, d=_rows(d_rows, dim))
        m_mult.append(len(d_rows))
        n_mult.append(len(b_rows))
        previous_b = b

    logger.info("A(1) decomposition: m=%s n=%s", m_mult, n_mult)
    return A1Decomposition(m_mult=tuple(m_mult), n_mult=tuple(n_mult), witnesses=witnesses)


def verify(dec: A1Decomposition, A: GradedAlgebraF2, op: Sq2Operator) -> Verdict:
    """Rechecks the decomposition from scratch; reports the first failed invariant."""
    previous_b = None
    for degree in A.degrees:
        k = degree // 2
        dim = A.dim(degree)
        w = dec.witnesses.get(degree)
        if w is None:
            return Verdict(False, "witnesses_present", f"no witness for degree {degree}")
        stacked = np.concatenate([w.c, w.d, w.b], axis=0) if dim else np.zeros((0, 0), dtype=np.uint8)
        if stacked.shape[0] != dim or gf2.rank(stacked) != dim:
            return Verdict(False, "basis", f"C, D, B do not form a basis of H^{degree}")
        expected_c = _images(op, degree - 2, previous_b) if previous_b is not None else np.zeros((0, dim), dtype=np.uint8)
        if not np.array_equal(expected_c, w.c):
            return Verdict(False, "c_equals_sq2_b", f"C_{degree} is not Sq2(B_{degree - 2})")
        if w.b.shape[0] and gf2.rank(_images(op, degree, w.b)) != w.b.shape[0]:
            return Verdict(False, "sq2_injective_on_b", f"Sq2 is not injective on B_{degree}")
        if w.d.shape[0] and _images(op, degree, w.d).any():
            return Verdict(False, "sq2_kills_d", f"Sq2 does not vanish on D_{degree}")
        if w.c.shape[0] and _images(op, degree, w.c).any():
            return Verdict(False, "sq2_kills_c", f"Sq2 does not vanish on C_{degree}")
        if w.d.shape[0] != dec.m_mult[k] or w.b.shape[0] != dec.n_mult[k]:
            return Verdict(False, "multiplicities_match_witnesses", f"counts disagree with witnesses in degree {degree}")
        lower = dec.n_mult[k - 1] if k else 0
        if dim != dec.m_mult[k] + dec.n_mult[k] + lower:
            return Verdict(False, "dimension_count", f"dim H^{degree} = {dim} is not m + n + n_prev")
        previous_b = w.b

    homology = sq2_homology(op)
    if tuple(dec.m_mult) != homology.dims:
        return Verdict(False, "homology_oracle", f"m = {list(dec.m_mult)} but Sq2-homology is {list(homology.dims)}")
    ranks = tuple(op.rank(d) for d in A.degrees)
    if tuple(dec.n_mult) != ranks:
        return Verdict(False, "rank_oracle", f"n = {list(dec.n_mult)} but Sq2 ranks are {list(ranks)}")
    if dec.total_dim() != A.total_dim:
        return Verdict(False, "total_dimension", f"{dec.total_dim()} != {A.total_dim}")
    return Verdict(True)
