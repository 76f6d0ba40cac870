"""The characteristic function λ as an n x m matrix, integral or mod 2.

Column i is λ(F_i). Only maximal faces of K are checked: a unimodular set
of columns spans a direct summand, and so does every subset of it.
"""
from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Sequence

import numpy as np
import sympy

from . import gf2
from .combinatorics import SimplicialComplex
from .errors import DimensionMismatchError, SingularAtFacetError, SingularAtFacetMod2Error

logger = logging.getLogger("ToricKO.CharFun")

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, slots=True)
class CharMatrixZ:
    entries: Rows

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "CharMatrixZ":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries[0]) if self.entries else 0


@dataclass(frozen=True, slots=True)
class CharMatrixF2:
    entries: Rows
    source: str = "integral"  # or "mod2" for raw mod-2 input
    verified_facets: int = 0

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.uint8).reshape(self.n, self.m)


def _check_shape(K: SimplicialComplex, rows: Rows) -> None:
    widths = {len(row) for row in rows}
    if len(rows) != K.n or widths != ({K.m} if rows else set()):
        got = f"{len(rows)}x{sorted(widths)[0] if widths else 0}"
        raise DimensionMismatchError(f"lambda is {got}, expected {K.n}x{K.m}")


def validate_integral(K: SimplicialComplex, lam: CharMatrixZ) -> CharMatrixZ:
    """Every facet minor must have determinant ±1; the first failing facet is reported."""
    _check_shape(K, lam.entries)
    matrix = sympy.Matrix(lam.entries)
    for facet in K.facets:
        det = int(matrix.extract(list(range(K.n)), list(facet)).det(method="bareiss"))
        if abs(det) != 1:
            raise SingularAtFacetError(tuple(v + 1 for v in facet), det)
    logger.debug("integral lambda unimodular on %d facets", len(K.facets))
    return lam


def reduce_mod2(lam: CharMatrixZ | Sequence[Sequence[int]], K: SimplicialComplex) -> CharMatrixF2:
    """Reduces entrywise mod 2 and checks every facet minor is invertible.

    A CharMatrixZ is labelled integral; plain rows are taken as mod-2 data.
    """
    if isinstance(lam, CharMatrixZ):
        source, rows = "integral", lam.entries
    else:
        source, rows = "mod2", tuple(tuple(int(x) for x in row) for row in lam)
    _check_shape(K, rows)
    reduced = tuple(tuple(x % 2 for x in row) for row in rows)
    array = np.array(reduced, dtype=np.uint8).reshape(K.n, K.m)
    for facet in K.facets:
        if not gf2.is_invertible(array[:, list(facet)]):
            raise SingularAtFacetMod2Error(tuple(v + 1 for v in facet))
    return CharMatrixF2(entries=reduced, source=source, verified_facets=len(K.facets))


def block_diagonal(lam1: Sequence[Sequence[int]], lam2: Sequence[Sequence[int]]) -> Rows:
    """Rows of the characteristic matrix of a product."""
    m1 = len(lam1[0]) if lam1 else 0
    m2 = len(lam2[0]) if lam2 else 0
    top = tuple(tuple(row) + (0,) * m2 for row in lam1)
    bottom = tuple((0,) * m1 + tuple(row) for row in lam2)
    return top + bottom


def quotient_at_face(lam: CharMatrixF2, face: Sequence[int], vertex_map: Sequence[int], link_complex: SimplicialComplex) -> CharMatrixF2:
    """Characteristic data of the face submanifold: link columns in F2^n / span(λ_σ)."""
    array = lam.array
    sigma_cols = array[:, list(face)]
    projection = gf2.nullspace(sigma_cols.T, lam.n)  # rows q with q·λ_σ = 0
    if link_complex.n == 0:
        return CharMatrixF2(entries=(), source=lam.source, verified_facets=0)
    projected = gf2.matmul(projection, array[:, list(vertex_map)])
    checked = reduce_mod2([list(row) for row in projected], link_complex)
    return CharMatrixF2(entries=checked.entries, source=lam.source, verified_facets=checked.verified_facets)


def _term(var: int) -> str:
    return f"v{var + 1}"


def linear_relations(lam: CharMatrixF2) -> list[str]:
    """Rows of λ mod 2 as linear equations in the v_i."""
    out = []
    for row in lam.entries:
        terms = [_term(i) for i, x in enumerate(row) if x]
        out.append(" + ".join(terms) + " = 0")
    return out


def solved_relations(lam: CharMatrixF2) -> list[str]:
    """The J relations solved for the pivot variables of the row-reduced matrix."""
    reduced, pivots = gf2.rref(lam.array)
    out = []
    for row, p in zip(reduced, pivots):
        rest = [_term(j) for j in range(lam.m) if j != p and row[j]]
        out.append(f"{_term(p)} = " + (" + ".join(rest) if rest else "0"))
    return out
