"""H*(M^{2n}(λ); Z/2) = Z/2[v_1..v_m] / (I + J) as a finite graded algebra.

Construction, degree by degree (weight k = topological degree 2k):
  1. the Stanley-Reisner quotient has basis all weight-k monomials whose
     support is a face of K;
  2. J_k is spanned by ℓ·μ for each row ℓ of λ mod 2 and each weight k-1
     face monomial μ;
  3. columns are ordered graded-lex (largest first) and J_k is row
     reduced; the non-pivot monomials are the canonical basis;
  4. structure constants come from multiplying basis monomials and
     reducing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
import logging
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .charfun import CharMatrixF2, quotient_at_face
from .combinatorics import SimplicialComplex, f_vector, h_vector, link
from .errors import DegreeOverflowError, InternalInvariantError, NoTopClassError, RankMismatchError

logger = logging.getLogger("ToricKO.FaceRing")

Monomial = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class CohomologyClass:
    degree: int
    coords: tuple[int, ...]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.uint8)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if other.degree != self.degree:
            raise ValueError(f"cannot add classes of degree {self.degree} and {other.degree}")
        return CohomologyClass(self.degree, tuple(a ^ b for a, b in zip(self.coords, other.coords)))


@dataclass(frozen=True, slots=True)
class _Reducer:
    monomials: tuple[Monomial, ...]
    index: dict[Monomial, int]
    reduced: np.ndarray
    pivots: tuple[int, ...]
    standard: tuple[int, ...]

    def coordinates(self, vector: np.ndarray) -> np.ndarray:
        if self.pivots:
            vector = vector ^ gf2.matmul(vector[list(self.pivots)], self.reduced)
        return vector[list(self.standard)]


@dataclass(frozen=True, eq=False)
class GradedAlgebraF2:
    n: int
    m: int
    basis: dict[int, tuple[Monomial, ...]]
    mult: dict[tuple[int, int], np.ndarray] = field(repr=False)
    variable_order: tuple[int, ...]
    presentation_assumed: bool = False
    _reducers: dict[int, _Reducer] = field(default_factory=dict, repr=False)
    _faces: frozenset = field(default_factory=frozenset, repr=False)

    @property
    def top_degree(self) -> int:
        return 2 * self.n

    @property
    def degrees(self) -> list[int]:
        return [2 * k for k in range(self.n + 1)]

    def dim(self, degree: int) -> int:
        return len(self.basis.get(degree, ()))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.dim(d) for d in self.degrees)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def zero(self, degree: int) -> CohomologyClass:
        return CohomologyClass(degree, (0,) * self.dim(degree))

    def unit(self) -> CohomologyClass:
        return CohomologyClass(0, (1,))

    def basis_class(self, degree: int, index: int) -> CohomologyClass:
        coords = [0] * self.dim(degree)
        coords[index] = 1
        return CohomologyClass(degree, tuple(coords))

    def class_of_monomial(self, exponents: Sequence[int]) -> CohomologyClass:
        exps = tuple(int(e) for e in exponents)
        weight = sum(exps)
        if weight > self.n:
            return CohomologyClass(2 * weight, ())
        support = tuple(i for i, e in enumerate(exps) if e)
        if support not in self._faces:
            return self.zero(2 * weight)
        reducer = self._reducers[weight]
        vector = np.zeros(len(reducer.monomials), dtype=np.uint8)
        vector[reducer.index[exps]] = 1
        return CohomologyClass(2 * weight, tuple(int(c) for c in reducer.coordinates(vector)))

    def generator(self, i: int) -> CohomologyClass:
        """Image of v_i (1-based) in H^2."""
        exps = [0] * self.m
        exps[i - 1] = 1
        return self.class_of_monomial(exps)

    def basis_names(self, degree: int) -> list[str]:
        return [monomial_name(mono) for mono in self.basis.get(degree, ())]

    def class_name(self, x: CohomologyClass) -> str:
        names = [monomial_name(mono) for mono, c in zip(self.basis.get(x.degree, ()), x.coords) if c]
        return " + ".join(names) if names else "0"

    def generator_relations(self, degree: int) -> list[str]:
        """Normal forms of the products of H^2 basis monomials that are not themselves basis elements."""
        weight = degree // 2
        if weight < 2 or weight > self.n:
            return []
        generators = [mono.index(1) for mono in self.basis.get(2, ())]
        own = set(self.basis.get(degree, ()))
        out = []
        for combo in _multisets(generators, weight):
            exps = [0] * self.m
            for v in combo:
                exps[v] += 1
            mono = tuple(exps)
            if mono in own:
                continue
            out.append(f"{monomial_name(mono)} = {self.class_name(self.class_of_monomial(mono))}")
        return out


@dataclass(frozen=True, slots=True)
class PairingResult:
    degree: int
    matrix: np.ndarray
    nondegenerate: bool


def monomial_name(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"v{i + 1}")
        elif e > 1:
            parts.append(f"v{i + 1}^{e}")
    return "".join(parts) if parts else "1"


def _multisets(items: Sequence[int], size: int) -> Iterable[tuple[int, ...]]:
    from itertools import combinations_with_replacement

    return combinations_with_replacement(items, size)


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _face_monomials(K: SimplicialComplex, weight: int, order: Sequence[int]) -> tuple[Monomial, ...]:
    monos: list[Monomial] = []
    for face in K.faces:
        if len(face) > weight or (weight > 0 and not face):
            continue
        for parts in _compositions(weight, len(face)):
            exps = [0] * K.m
            for v, e in zip(face, parts):
                exps[v] = e
            monos.append(tuple(exps))
    # graded lex, largest first, reading variables in the chosen order
    monos.sort(key=lambda e: tuple(-e[v] for v in order))
    return tuple(monos)


def _relation_matrix(
    K: SimplicialComplex,
    lam: np.ndarray,
    lower: tuple[Monomial, ...],
    index: dict[Monomial, int],
) -> np.ndarray:
    rows = np.zeros((lam.shape[0] * len(lower), len(index)), dtype=np.uint8)
    r = 0
    for ell in lam:
        active = np.nonzero(ell)[0]
        for mu in lower:
            for i in active:
                exps = list(mu)
                exps[i] += 1
                target = index.get(tuple(exps))
                if target is not None:
                    rows[r, target] ^= 1
            r += 1
    return rows


def build_face_ring(
    K: SimplicialComplex,
    lam: CharMatrixF2,
    *,
    trust_sphere: bool = False,
    variable_order: Sequence[int] | None = None,
    presentation_assumed: bool = False,
) -> GradedAlgebraF2:
    """Builds the mod-2 cohomology ring; variable_order is a 1-based permutation of 1..m."""
    order = tuple(v - 1 for v in variable_order) if variable_order else tuple(range(K.m))
    if sorted(order) != list(range(K.m)):
        raise ValueError(f"variable order must permute 1..{K.m}")
    lam_array = lam.array
    reducers: dict[int, _Reducer] = {}
    basis: dict[int, tuple[Monomial, ...]] = {}
    previous: tuple[Monomial, ...] = ()
    for k in range(K.n + 1):
        monos = _face_monomials(K, k, order)
        index = {mono: i for i, mono in enumerate(monos)}
        if k == 0:
            reduced, pivots = np.zeros((0, 1), dtype=np.uint8), []
        else:
            reduced, pivots = gf2.rref(_relation_matrix(K, lam_array, previous, index))
        pivot_set = set(pivots)
        standard = tuple(c for c in range(len(monos)) if c not in pivot_set)
        reducers[k] = _Reducer(monos, index, reduced, tuple(pivots), standard)
        basis[2 * k] = tuple(monos[c] for c in standard)
        logger.debug("weight %d: %d face monomials, rank J = %d, dim = %d", k, len(monos), len(pivots), len(standard))
        previous = monos

    algebra = GradedAlgebraF2(
        n=K.n,
        m=K.m,
        basis=basis,
        mult={},
        variable_order=tuple(v + 1 for v in order),
        presentation_assumed=presentation_assumed,
        _reducers=reducers,
        _faces=K.faces,
    )
    _tabulate(algebra)
    logger.info("face ring built: dims %s", list(algebra.dims))

    if trust_sphere:
        h = h_vector(f_vector(K), K.n)
        for k, expected in enumerate(h.h):
            if algebra.dim(2 * k) != expected:
                raise RankMismatchError(2 * k, algebra.dim(2 * k), expected)
    return algebra


def _tabulate(A: GradedAlgebraF2) -> None:
    for j in range(A.n + 1):
        for k in range(j, A.n + 1 - j):
            dj, dk, dt = A.dim(2 * j), A.dim(2 * k), A.dim(2 * (j + k))
            table = np.zeros((dj, dk, dt), dtype=np.uint8)
            for a, mono_a in enumerate(A.basis[2 * j]):
                for b, mono_b in enumerate(A.basis[2 * k]):
                    product = tuple(x + y for x, y in zip(mono_a, mono_b))
                    table[a, b] = A.class_of_monomial(product).coords
            A.mult[(2 * j, 2 * k)] = table
            A.mult[(2 * k, 2 * j)] = np.ascontiguousarray(table.transpose(1, 0, 2))


def multiply(A: GradedAlgebraF2, x: CohomologyClass, y: CohomologyClass, *, zero_extend: bool = True) -> CohomologyClass:
    degree = x.degree + y.degree
    if degree > A.top_degree:
        if not zero_extend:
            raise DegreeOverflowError(f"product lands in degree {degree} > {A.top_degree}")
        return CohomologyClass(degree, ())
    table = A.mult[(x.degree, y.degree)]
    coords = np.einsum("i,j,ijk->k", x.array.astype(np.int64), y.array.astype(np.int64), table.astype(np.int64)) & 1
    return CohomologyClass(degree, tuple(int(c) for c in coords))


def top_coefficient(A: GradedAlgebraF2, x: CohomologyClass) -> int:
    """⟨x, [M]⟩ for a top-degree class."""
    if A.dim(A.top_degree) != 1:
        raise NoTopClassError(f"H^{A.top_degree} has dimension {A.dim(A.top_degree)}, expected 1")
    return int(x.coords[0]) if x.degree == A.top_degree else 0


def poincare_pairing(A: GradedAlgebraF2, k: int) -> PairingResult:
    """Matrix of H^{2k} x H^{2n-2k} -> H^{2n}; nondegenerate iff full rank both ways."""
    top = A.top_degree
    if A.dim(top) != 1:
        raise NoTopClassError(f"H^{top} has dimension {A.dim(top)}, expected 1")
    low, high = 2 * k, top - 2 * k
    matrix = A.mult[(low, high)][:, :, 0].copy() if A.dim(low) and A.dim(high) else np.zeros((A.dim(low), A.dim(high)), dtype=np.uint8)
    r = gf2.rank(matrix) if matrix.size else 0
    return PairingResult(degree=low, matrix=matrix, nondegenerate=(r == A.dim(low) == A.dim(high)))


def verify_algebra(A: GradedAlgebraF2) -> None:
    """Exhaustive unit, commutativity and associativity checks."""
    for k in range(A.n + 1):
        d = 2 * k
        if A.dim(d) and not np.array_equal(A.mult[(0, d)][0], np.eye(A.dim(d), dtype=np.uint8)):
            raise InternalInvariantError(f"unit law fails in degree {d}", module="face_ring")
    for (a, b), table in A.mult.items():
        if not np.array_equal(table, A.mult[(b, a)].transpose(1, 0, 2)):
            raise InternalInvariantError(f"commutativity fails for degrees {a}, {b}", module="face_ring")
    for a in A.degrees:
        for b in A.degrees:
            for c in A.degrees:
                if a + b + c > A.top_degree:
                    continue
                left = np.einsum("ijp,pkq->ijkq", A.mult[(a, b)].astype(np.int64), A.mult[(a + b, c)].astype(np.int64)) & 1
                right = np.einsum("jkp,ipq->ijkq", A.mult[(b, c)].astype(np.int64), A.mult[(a, b + c)].astype(np.int64)) & 1
                if not np.array_equal(left, right):
                    raise InternalInvariantError(f"associativity fails for degrees {a}, {b}, {c}", module="face_ring")


# ─── ring maps and face submanifolds ───────────────────────────────────


@dataclass(frozen=True, eq=False)
class RingMap:
    source: GradedAlgebraF2
    target: GradedAlgebraF2
    gen_images: tuple[CohomologyClass, ...]  # image of each v_i, degree 2

    def image_of_monomial(self, exps: Sequence[int]) -> CohomologyClass:
        result = self.target.unit()
        for i, e in enumerate(exps):
            for _ in range(e):
                result = multiply(self.target, result, self.gen_images[i])
        return result

    def matrix(self, degree: int) -> np.ndarray:
        """Columns are images of the source basis in degree `degree`."""
        cols = [self.image_of_monomial(mono).coords for mono in self.source.basis.get(degree, ())]
        rows = self.target.dim(degree)
        if not cols:
            return np.zeros((rows, 0), dtype=np.uint8)
        return np.array(cols, dtype=np.uint8).reshape(len(cols), rows).T

    def apply(self, x: CohomologyClass) -> CohomologyClass:
        if x.degree > self.target.top_degree:
            return CohomologyClass(x.degree, ())
        coords = gf2.matmul(self.matrix(x.degree), x.array) if x.coords else np.zeros(self.target.dim(x.degree), dtype=np.uint8)
        return CohomologyClass(x.degree, tuple(int(c) for c in coords))


@dataclass(frozen=True, eq=False)
class FaceRestriction:
    face: tuple[int, ...]  # 1-based vertices of K
    link: SimplicialComplex
    vertex_map: tuple[int, ...]  # 0-based vertex of K for each link vertex
    lam: CharMatrixF2
    ring_map: RingMap

    @property
    def target(self) -> GradedAlgebraF2:
        return self.ring_map.target


def restrict_to_face(A: GradedAlgebraF2, K: SimplicialComplex, lam: CharMatrixF2, face: Iterable[int]) -> FaceRestriction:
    """Restriction H*(M) -> H*(M_F) to the submanifold over the face F dual to a simplex of K (1-based)."""
    sigma = tuple(sorted(v - 1 for v in face))
    sub_complex, vertex_map = link(K, sigma)
    sub_lam = quotient_at_face(lam, sigma, vertex_map, sub_complex)
    target = build_face_ring(sub_complex, sub_lam) if sub_complex.n else _point_algebra()
    new_index = {old: new for new, old in enumerate(vertex_map)}

    images: list[CohomologyClass | None] = [None] * K.m
    for old in range(K.m):
        if old in new_index:
            images[old] = target.generator(new_index[old] + 1)
        elif old not in sigma:
            images[old] = target.zero(2)

    lam_array = lam.array
    sigma_cols = lam_array[:, list(sigma)]
    for a, old in enumerate(sigma):
        unit = np.zeros(len(sigma), dtype=np.uint8)
        unit[a] = 1
        row = gf2.solve(sigma_cols.T, unit)  # row of a left inverse of λ_σ
        if row is None:
            raise InternalInvariantError(f"columns of face {face} are dependent", module="face_ring")
        coeffs = gf2.matmul(row, lam_array)
        value = target.zero(2)
        for j in range(K.m):
            if j not in sigma and coeffs[j]:
                value = value + images[j]
        images[old] = value

    ring_map = RingMap(source=A, target=target, gen_images=tuple(images))
    return FaceRestriction(
        face=tuple(v + 1 for v in sigma),
        link=sub_complex,
        vertex_map=vertex_map,
        lam=sub_lam,
        ring_map=ring_map,
    )


def _point_algebra() -> GradedAlgebraF2:
    reducer = _Reducer(monomials=((),), index={(): 0}, reduced=np.zeros((0, 1), dtype=np.uint8), pivots=(), standard=(0,))
    return GradedAlgebraF2(
        n=0,
        m=0,
        basis={0: ((),)},
        mult={(0, 0): np.ones((1, 1, 1), dtype=np.uint8)},
        variable_order=(),
        _reducers={0: reducer},
        _faces=frozenset({()}),
    )
