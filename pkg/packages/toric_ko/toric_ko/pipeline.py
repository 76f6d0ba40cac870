"""End-to-end run: K and λ -> face ring -> Sq² -> A(1) splitting -> E₂ -> ko/KO/KO^*."""
from __future__ import annotations

from dataclasses import dataclass, field
import logging
from typing import Any, Optional, Sequence

from .a1_decomp import A1Decomposition, decompose, verify
from .charfun import CharMatrixF2, CharMatrixZ, linear_relations, solved_relations
from .combinatorics import (
    FVector,
    HVector,
    SimplicialComplex,
    betti_numbers,
    check_dehn_sommerville,
    f_vector,
    h_vector,
    minimal_nonfaces,
)
from .config import Settings, settings as default_settings
from .errors import InternalInvariantError, PairingDegenerateError
from .ext_charts import BigradedChart, assemble_e2
from .face_ring import GradedAlgebraF2, PairingResult, build_face_ring, monomial_name, poincare_pairing, verify_algebra
from .ko_groups import GradedAbelianGroup, KO_cohomology, ko_homology, ko_to_KO
from .problem import ProblemSpec
from .steenrod import Sq2Homology, Sq2Operator, SpinVerdict, is_spin, sq2_homology, sq2_operator

logger = logging.getLogger("ToricKO.Pipeline")

SCHEMA_VERSION = 1
COLLAPSE_WARNING = (
    "singular input of dimension {dim} >= {bound}: Adams differentials are only ruled out below "
    "dimension {bound}; showing E2 only"
)


@dataclass(eq=False)
class Report:
    spec: ProblemSpec
    complex: SimplicialComplex
    lam_z: Optional[CharMatrixZ]
    lam2: CharMatrixF2
    f: FVector
    h: HVector
    algebra: GradedAlgebraF2
    pairings: list[PairingResult]
    sq2: Sq2Operator
    homology: Sq2Homology
    decomposition: A1Decomposition
    chart: BigradedChart
    collapse_established: bool
    max_degree: int
    ko: Optional[GradedAbelianGroup] = None
    ko_reduced: Optional[GradedAbelianGroup] = None
    KO: Optional[GradedAbelianGroup] = None
    KO_co: Optional[GradedAbelianGroup] = None
    spin: Optional[SpinVerdict] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.collapse_established else 4

    def input_dict(self) -> dict[str, Any]:
        return {
            "name": self.spec.name,
            "n": self.spec.n,
            "m": self.spec.m,
            "mode": self.spec.mode,
            "lambda_source": self.lam2.source,
            "lambda": [list(row) for row in self.spec.lam],
            "facets": [list(f) for f in self.spec.facets],
        }

    def betti(self) -> dict[str, int]:
        """Ranks of H_*(M; Z); read off the ring when the presentation is only assumed."""
        if self.algebra.presentation_assumed:
            return {str(d): self.algebra.dim(d) for d in self.algebra.degrees}
        return {str(k): v for k, v in betti_numbers(self.h).items()}

    def results_dict(self) -> dict[str, Any]:
        """Everything computed from λ mod 2 onward; independent of how λ was supplied."""
        A = self.algebra
        return {
            "f_vector": list(self.f.f),
            "h_vector": list(self.h.h),
            "betti": self.betti(),
            "ring": {
                "dims": {str(d): A.dim(d) for d in A.degrees},
                "basis": {str(d): A.basis_names(d) for d in A.degrees},
                "stanley_reisner": [monomial_name(_indicator(face, A.m)) for face in minimal_nonfaces(self.complex)],
                "linear_relations": linear_relations(self.lam2),
                "solved_relations": solved_relations(self.lam2),
                "generator_relations": {str(d): A.generator_relations(d) for d in A.degrees[2:]},
                "presentation_assumed": A.presentation_assumed,
            },
            "pairing": [
                {"degree": p.degree, "matrix": p.matrix.tolist(), "nondegenerate": p.nondegenerate}
                for p in self.pairings
            ],
            "sq2": {
                "matrices": self.sq2.to_dict(),
                "ranks": {str(d): self.sq2.rank(d) for d in A.degrees},
                "homology": {str(2 * k): v for k, v in enumerate(self.homology.dims)},
            },
            "decomposition": self.decomposition.to_dict(),
            "e2": {
                "status": self.chart.status,
                "max_stem": self.chart.max_stem,
                "max_filt": self.chart.max_filt,
                "cells": [[stem, s, count] for (stem, s), count in self.chart.cell_counts().items()],
                "towers": [list(t) for t in sorted(self.chart.towers)],
                "differentials": [d.to_dict() for d in self.chart.differentials],
            },
            "collapse_established": self.collapse_established,
            "ko": self.ko.to_dict() if self.ko else None,
            "ko_reduced": self.ko_reduced.to_dict() if self.ko_reduced else None,
            "KO": self.KO.to_dict() if self.KO else None,
            "KO_cohomology": self.KO_co.to_dict() if self.KO_co else None,
            "spin": self.spin.to_dict() if self.spin else None,
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "input": self.input_dict(),
            "results": self.results_dict(),
            "warnings": list(self.warnings),
            "exit_code": self.exit_code,
        }


def _indicator(face: Sequence[int], m: int) -> tuple[int, ...]:
    return tuple(1 if v in face else 0 for v in range(m))


def run_pipeline(
    spec: ProblemSpec,
    *,
    mode: Optional[str] = None,
    trust_sphere: Optional[bool] = None,
    max_degree: Optional[int] = None,
    variable_order: Optional[Sequence[int]] = None,
    config: Optional[Settings] = None,
) -> Report:
    cfg = config or default_settings
    mode = mode or spec.mode
    trust = spec.trust_sphere if trust_sphere is None else trust_sphere
    warnings: list[str] = []

    K = spec.complex()
    f = f_vector(K)
    h = h_vector(f, K.n, allow_negative=(mode == "singular" and not trust))
    if trust:
        check_dehn_sommerville(h)
    if min(h.h) < 0:
        warnings.append(f"h-vector {list(h.h)} has negative entries; ring dimensions come from the presentation alone")
    lam_z, lam2 = spec.char_matrix(K)
    if lam_z is None:
        warnings.append("lambda supplied mod 2 only; integral data not checked")
    logger.info("%s: f=%s h=%s", spec.name, list(f.f), list(h.h))

    A = build_face_ring(
        K,
        lam2,
        trust_sphere=trust,
        variable_order=variable_order,
        presentation_assumed=(mode == "singular"),
    )
    if cfg.VERIFY_ALGEBRA:
        verify_algebra(A)

    pairings: list[PairingResult] = []
    if mode == "manifold" or trust:
        pairings = [poincare_pairing(A, k) for k in range(K.n + 1)]
        bad = [p.degree for p in pairings if not p.nondegenerate]
        if bad:
            raise PairingDegenerateError(f"Poincaré pairing degenerate in degree {bad[0]}")
    if mode == "singular":
        warnings.append("singular mode: ring presentation assumed, spin test skipped")

    op = sq2_operator(A)
    homology = sq2_homology(op)
    spin = is_spin(A, op) if mode == "manifold" else None

    dec = decompose(A, op)
    verdict = verify(dec, A, op)
    if not verdict.ok:
        raise InternalInvariantError(f"decomposition check '{verdict.failed}' failed: {verdict.detail}", module="a1_decomp")

    bound = cfg.COLLAPSE_DIMENSION_BOUND
    collapse = mode == "manifold" or 2 * K.n < bound
    degree = max_degree if max_degree is not None else (spec.max_degree if spec.max_degree is not None else 2 * K.n + cfg.CHART_STEM_PADDING)
    chart = assemble_e2(dec, 2 * K.n + cfg.CHART_STEM_PADDING, cfg.CHART_MAX_FILTRATION, collapsed=collapse)

    report = Report(
        spec=spec,
        complex=K,
        lam_z=lam_z,
        lam2=lam2,
        f=f,
        h=h,
        algebra=A,
        pairings=pairings,
        sq2=op,
        homology=homology,
        decomposition=dec,
        chart=chart,
        collapse_established=collapse,
        max_degree=degree,
        spin=spin,
        warnings=warnings,
    )
    if not collapse:
        message = COLLAPSE_WARNING.format(dim=2 * K.n, bound=bound)
        logger.warning(message)
        warnings.append(message)
        return report

    report.ko = ko_homology(dec, degree)
    report.ko_reduced = ko_homology(dec, degree, reduced=True)
    report.KO = ko_to_KO(dec, range(-8, degree + 1))
    report.KO_co = KO_cohomology(report.KO, range(-8, degree + 1))
    logger.info("%s: %s", spec.name, dec.formula())
    return report
