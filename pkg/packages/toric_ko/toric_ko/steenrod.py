"""Sq² on the face ring, its homology, and the Wu-class spin test.

Cohomology is concentrated in even degrees, so Sq¹ = 0 and on a degree-2
class Sq² is the cup square. The Cartan formula then gives, for a monomial
μ = v_1^e_1 ... v_m^e_m,

    Sq²(μ) = Σ_{i : e_i odd} v_i · μ.

The operator is a chain complex: Sq²Sq² = Sq³Sq¹ = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np

from . import gf2
from .face_ring import CohomologyClass, GradedAlgebraF2, RingMap, multiply, poincare_pairing
from .errors import ChainComplexViolation, InconsistentWitnessError, InternalInvariantError, PairingDegenerateError

logger = logging.getLogger("ToricKO.Steenrod")


@dataclass(frozen=True, eq=False)
class Sq2Operator:
    n: int
    mats: dict[int, np.ndarray]  # degree 2k -> matrix H^{2k} -> H^{2k+2}

    def matrix(self, degree: int) -> np.ndarray:
        return self.mats[degree]

    def rank(self, degree: int) -> int:
        matrix = self.mats.get(degree)
        if matrix is None or matrix.size == 0:
            return 0
        return gf2.rank(matrix)

    def apply(self, x: CohomologyClass) -> CohomologyClass:
        coords = gf2.matmul(self.mats[x.degree], x.array)
        return CohomologyClass(x.degree + 2, tuple(int(c) for c in coords))

    def to_dict(self) -> dict[str, list[list[int]]]:
        return {str(degree): matrix.tolist() for degree, matrix in sorted(self.mats.items())}


@dataclass(frozen=True, slots=True)
class Sq2Homology:
    dims: tuple[int, ...]  # index k is degree 2k

    def dim(self, degree: int) -> int:
        k = degree // 2
        return self.dims[k] if 0 <= k < len(self.dims) and degree % 2 == 0 else 0


@dataclass(frozen=True, slots=True)
class SpinVerdict:
    spin: bool
    wu_class: CohomologyClass
    wu_name: str

    def to_dict(self) -> dict[str, object]:
        return {"spin": self.spin, "wu_class": self.wu_name}


def sq2_class(A: GradedAlgebraF2, x: CohomologyClass) -> CohomologyClass:
    target = x.degree + 2
    if target > A.top_degree:
        return CohomologyClass(target, ())
    result = A.zero(target)
    for mono, coeff in zip(A.basis[x.degree], x.coords):
        if not coeff:
            continue
        for i, e in enumerate(mono):
            if e % 2:
                bumped = list(mono)
                bumped[i] += 1
                result = result + A.class_of_monomial(bumped)
    return result


def sq2_operator(A: GradedAlgebraF2) -> Sq2Operator:
    mats: dict[int, np.ndarray] = {}
    for degree in A.degrees:
        matrix = np.zeros((A.dim(degree + 2), A.dim(degree)), dtype=np.uint8)
        for col in range(A.dim(degree)):
            image = sq2_class(A, A.basis_class(degree, col))
            if image.coords:
                matrix[:, col] = image.coords
        mats[degree] = matrix
    for degree in A.degrees[:-1]:
        if gf2.matmul(mats[degree + 2], mats[degree]).any():
            raise ChainComplexViolation(f"Sq2 Sq2 is nonzero from degree {degree}")
    op = Sq2Operator(n=A.n, mats=mats)
    logger.debug("Sq2 ranks %s", [op.rank(d) for d in A.degrees])
    return op


def sq2_homology(op: Sq2Operator) -> Sq2Homology:
    dims = []
    for k in range(op.n + 1):
        degree = 2 * k
        kernel = op.mats[degree].shape[1] - op.rank(degree)
        dims.append(kernel - op.rank(degree - 2))
    return Sq2Homology(tuple(dims))


def verify_cartan(A: GradedAlgebraF2) -> None:
    """Sq²(xy) = Sq²(x)·y + x·Sq²(y) on every pair of basis classes."""
    for a in A.degrees:
        for b in A.degrees:
            if a + b > A.top_degree:
                continue
            for i in range(A.dim(a)):
                x = A.basis_class(a, i)
                for j in range(A.dim(b)):
                    y = A.basis_class(b, j)
                    left = sq2_class(A, multiply(A, x, y))
                    right_a = multiply(A, sq2_class(A, x), y)
                    right_b = multiply(A, x, sq2_class(A, y))
                    if left.coords and left != right_a + right_b:
                        raise InternalInvariantError(f"Cartan formula fails on degrees {a}, {b}", module="steenrod")


def is_spin(A: GradedAlgebraF2, op: Sq2Operator, *, mode: str = "manifold") -> SpinVerdict:
    """Spin iff the top class is not Sq² of anything; cross-checked against the Wu class v₂."""
    if mode != "manifold":
        raise PairingDegenerateError("spin test needs Poincaré duality; refused in singular mode")
    pairing = poincare_pairing(A, 1)
    if not pairing.nondegenerate:
        raise PairingDegenerateError(f"Poincaré pairing H^2 x H^{A.top_degree - 2} is degenerate")

    below = A.top_degree - 2
    spin = op.rank(below) == 0

    # rows: basis x of H^{2n-2}; columns: basis g of H^2; entry ⟨x·g, [M]⟩
    pairing_matrix = A.mult[(below, 2)][:, :, 0]
    sq2_top = op.mats[below][0]
    solution = gf2.solve(pairing_matrix, sq2_top)
    if solution is None:
        raise InconsistentWitnessError("Wu equation has no solution despite a nondegenerate pairing")
    wu = CohomologyClass(2, tuple(int(c) for c in solution))
    if spin != wu.is_zero():
        raise InconsistentWitnessError(f"kernel test says spin={spin} but Wu class is {A.class_name(wu)}")
    logger.info("spin=%s, Wu class v2 = %s", spin, A.class_name(wu))
    return SpinVerdict(spin=spin, wu_class=wu, wu_name=A.class_name(wu))


def commutes_with(ring_map: RingMap, op_source: Sq2Operator, op_target: Sq2Operator) -> bool:
    """Naturality: f∘Sq² = Sq²∘f in every degree the target carries."""
    target_top = ring_map.target.top_degree
    for degree in ring_map.source.degrees:
        if degree > target_top:
            continue
        left = gf2.matmul(op_target.mats[degree], ring_map.matrix(degree))
        right = gf2.matmul(ring_map.matrix(degree + 2), op_source.mats[degree])
        if not np.array_equal(left, right):
            return False
    return True
