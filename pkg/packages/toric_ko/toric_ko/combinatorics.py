"""The dual simplicial complex K of a simple polytope and its face counts.

Duality dictionary: a facet F_i of P^n is the vertex i of K; a vertex of
P^n is a facet (maximal simplex) of K. Vertices are 1-based in I/O and
0-based inside this module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
import logging
from typing import Iterable, Sequence

import sympy

from .errors import (
    DehnSommervilleError,
    DuplicateFacetError,
    EmptyComplexError,
    IndexOutOfRangeError,
    NegativeEntryError,
    NonPureError,
    NotAFaceError,
    UnusedVertexError,
)

logger = logging.getLogger("ToricKO.Combinatorics")

Face = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class SimplicialComplex:
    m: int
    n: int
    facets: tuple[Face, ...]
    faces: frozenset[Face] = field(repr=False, compare=False)

    def is_face(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self.faces

    def faces_of_size(self, size: int) -> list[Face]:
        return sorted(face for face in self.faces if len(face) == size)

    def facets_1based(self) -> list[list[int]]:
        return [[v + 1 for v in facet] for facet in self.facets]


@dataclass(frozen=True, slots=True)
class FVector:
    f: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.f)


@dataclass(frozen=True, slots=True)
class HVector:
    h: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.h) - 1

    @property
    def is_symmetric(self) -> bool:
        return self.h == tuple(reversed(self.h))


def _closure(facets: Iterable[Face]) -> frozenset[Face]:
    faces: set[Face] = set()
    for facet in facets:
        for size in range(len(facet) + 1):
            faces.update(combinations(facet, size))
    return frozenset(faces)


def validate_complex(facet_list: Sequence[Iterable[int]], m: int, n: int) -> SimplicialComplex:
    """Validates a 1-based facet list and returns the complex with its face closure."""
    if not facet_list:
        raise EmptyComplexError("facet list is empty")
    seen: set[Face] = set()
    facets: list[Face] = []
    for raw in facet_list:
        vertices = [int(v) for v in raw]
        for v in vertices:
            if v < 1 or v > m:
                raise IndexOutOfRangeError(f"vertex {v} outside [1, {m}]")
        facet = tuple(sorted({v - 1 for v in vertices}))
        if len(facet) != n or len(vertices) != n:
            shown = "{" + ",".join(str(v) for v in vertices) + "}"
            raise NonPureError(f"maximal face {shown} has {len(set(vertices))} vertices, expected {n}")
        if facet in seen:
            shown = "{" + ",".join(str(v + 1) for v in facet) + "}"
            raise DuplicateFacetError(f"facet {shown} listed twice")
        seen.add(facet)
        facets.append(facet)
    used = {v for facet in facets for v in facet}
    missing = [v + 1 for v in range(m) if v not in used]
    if missing:
        raise UnusedVertexError(f"vertex {missing[0]} appears in no facet")
    faces = _closure(facets)
    logger.debug("complex m=%d n=%d: %d facets, %d faces", m, n, len(facets), len(faces))
    return SimplicialComplex(m=m, n=n, facets=tuple(facets), faces=faces)


def f_vector(K: SimplicialComplex) -> FVector:
    counts = [0] * K.n
    for face in K.faces:
        if face:
            counts[len(face) - 1] += 1
    return FVector(tuple(counts))


def h_vector(f: FVector, n: int, *, allow_negative: bool = False) -> HVector:
    """Coefficients of (t-1)^n + sum f_i (t-1)^(n-1-i), read as sum h_i t^(n-i).

    Negative entries raise NegativeEntryError unless allow_negative is set
    (singular inputs, where h no longer predicts the ring).
    """
    if f.n != n:
        raise ValueError(f"f-vector has length {f.n}, expected {n}")
    t = sympy.symbols("t")
    expr = (t - 1) ** n + sum(fi * (t - 1) ** (n - 1 - i) for i, fi in enumerate(f.f))
    coeffs = [int(c) for c in sympy.Poly(sympy.expand(expr), t).all_coeffs()]
    coeffs = [0] * (n + 1 - len(coeffs)) + coeffs
    negative = [i for i, c in enumerate(coeffs) if c < 0]
    if negative and not allow_negative:
        raise NegativeEntryError(f"h_{negative[0]} = {coeffs[negative[0]]} is negative; the complex is not valid")
    return HVector(tuple(coeffs))


def check_dehn_sommerville(h: HVector) -> None:
    if not h.is_symmetric or h.h[0] != 1:
        raise DehnSommervilleError(f"h-vector {list(h.h)} is not palindromic with h_0 = h_n = 1")


def betti_numbers(h: HVector) -> dict[int, int]:
    """Integral homology ranks: H_{2i} is free of rank h_i, odd groups vanish."""
    return {2 * i: hi for i, hi in enumerate(h.h)}


def minimal_nonfaces(K: SimplicialComplex) -> tuple[Face, ...]:
    """Generators of the Stanley-Reisner ideal, smallest first."""
    found: list[Face] = []
    for size in range(2, K.n + 2):
        for base in K.faces_of_size(size - 1):
            start = base[-1] + 1 if base else 0
            for v in range(start, K.m):
                candidate = base + (v,)
                if candidate in K.faces:
                    continue
                if all(sub in K.faces for sub in combinations(candidate, size - 1)):
                    found.append(candidate)
    return tuple(sorted(set(found), key=lambda face: (len(face), face)))


def link(K: SimplicialComplex, face: Iterable[int]) -> tuple[SimplicialComplex, tuple[int, ...]]:
    """Link of a (0-based) face, relabelled; also returns the old index of each new vertex."""
    sigma = tuple(sorted(face))
    if sigma not in K.faces:
        raise NotAFaceError(f"{[v + 1 for v in sigma]} is not a face of K")
    rest = [tuple(v for v in facet if v not in sigma) for facet in K.facets if set(sigma) <= set(facet)]
    vertex_map = tuple(sorted({v for tau in rest for v in tau}))
    relabel = {old: new for new, old in enumerate(vertex_map)}
    facet_list = [[relabel[v] + 1 for v in tau] for tau in rest]
    return validate_complex(facet_list, len(vertex_map), K.n - len(sigma)), vertex_map


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Join K1 * K2, the dual complex of the product polytope."""
    facets = [
        [v + 1 for v in sigma] + [K1.m + v + 1 for v in tau]
        for sigma in K1.facets
        for tau in K2.facets
    ]
    return validate_complex(facets, K1.m + K2.m, K1.n + K2.n)
