"""Whole-pipeline invariants over random polygons and products."""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[4]
if str(ROOT / "packages/toric_ko") not in sys.path:
    sys.path.insert(0, str(ROOT / "packages/toric_ko"))


def _examples():
    import numpy as np
    from toric_ko import corpus

    rng = np.random.default_rng(20240611)
    out = [corpus.random_polygon(m, rng) for m in range(3, 11) for _ in range(2)]
    out += [
        corpus.product(corpus.interval(), corpus.interval()),
        corpus.product(corpus.interval(), corpus.simplex(2)),
        corpus.product(corpus.simplex(2), corpus.simplex(2)),
        corpus.product(corpus.square_cp2cp2(), corpus.interval()),
        corpus.product(corpus.cube(), corpus.interval()),
        corpus.cube(),
        corpus.simplex(4),
    ]
    return out


EXAMPLES = _examples()


def test_enough_examples():
    assert len(EXAMPLES) >= 20


@pytest.mark.parametrize("spec", EXAMPLES, ids=[spec.name for spec in EXAMPLES])
def test_pipeline_invariants(spec):
    from itertools import combinations

    import sympy
    from toric_ko.a1_decomp import verify
    from toric_ko.ext_charts import read_groups
    from toric_ko.pipeline import run_pipeline

    report = run_pipeline(spec)
    A, dec = report.algebra, report.decomposition

    # f_(k-1) counts the vertex sets of size k lying in some facet
    facets = [set(facet) for facet in spec.facets]
    counted = tuple(
        sum(1 for subset in combinations(range(1, spec.m + 1), k) if any(set(subset) <= facet for facet in facets))
        for k in range(1, spec.n + 1)
    )
    assert report.f.f == counted

    # sum h_i t^(n-i) re-expands to (t-1)^n + sum f_i (t-1)^(n-1-i)
    t, n = sympy.symbols("t"), spec.n
    lhs = sum(hi * t ** (n - i) for i, hi in enumerate(report.h.h))
    rhs = (t - 1) ** n + sum(fi * (t - 1) ** (n - 1 - i) for i, fi in enumerate(report.f.f))
    assert sympy.expand(lhs - rhs) == 0
    assert report.h.h == tuple(reversed(report.h.h))
    assert report.h.h[0] == report.h.h[-1] == 1

    # rank of H^2k is h_k and Poincaré duality holds
    assert A.dims == report.h.h
    assert all(p.nondegenerate for p in report.pairings)
    assert verify(dec, A, report.sq2).ok
    assert dec.m_mult == report.homology.dims
    assert dec.total_dim() == sum(report.h.h)

    # spin iff Sq²: H^{2n-2} -> H^{2n} vanishes
    assert report.spin.spin == (report.sq2.rank(A.top_degree - 2) == 0)

    # groups read off the chart agree with the closed formulas
    groups = read_groups(report.chart, report.max_degree)
    for d, ranks in groups.items():
        assert ranks == report.ko.at(d).as_tuple(), d

    # Bott periodicity of the free part of KO^*
    for d in range(-8, 1):
        assert report.KO_co.at(d).free == report.KO_co.at(d + 8).free

    # KO^m = α_{m-4} Z ⊕ β_{m-5} Z/2 read back from the homology table
    for m in range(-4, report.max_degree + 1):
        assert report.KO_co.at(m).as_tuple() == (report.KO.at(m - 4).free, report.KO.at(m - 5).two)


@pytest.mark.parametrize("spec", EXAMPLES, ids=[spec.name for spec in EXAMPLES])
def test_cartan_and_basis_shuffles(spec):
    import numpy as np
    from toric_ko.a1_decomp import decompose, verify
    from toric_ko.face_ring import build_face_ring
    from toric_ko.steenrod import sq2_operator, verify_cartan

    K = spec.complex()
    _, lam2 = spec.char_matrix(K)
    A = build_face_ring(K, lam2)
    op = sq2_operator(A)
    verify_cartan(A)
    reference = decompose(A, op)
    rng = np.random.default_rng(len(spec.facets))
    for _ in range(10):
        dec = decompose(A, op, rng=rng)
        assert (dec.m_mult, dec.n_mult) == (reference.m_mult, reference.n_mult)
        assert verify(dec, A, op).ok


@pytest.mark.parametrize("spec", [s for s in EXAMPLES if not s.lambda_mod2], ids=lambda s: s.name)
def test_results_only_depend_on_lambda_mod2(spec):
    import json

    from toric_ko.pipeline import run_pipeline

    integral = run_pipeline(spec).results_dict()
    mod2 = run_pipeline(spec.as_mod2()).results_dict()
    assert json.dumps(integral, sort_keys=True, ensure_ascii=False) == json.dumps(mod2, sort_keys=True, ensure_ascii=False)


@pytest.mark.parametrize("spec", EXAMPLES[:6], ids=[spec.name for spec in EXAMPLES[:6]])
def test_sq2_is_natural_for_facet_restrictions(spec):
    from toric_ko.face_ring import restrict_to_face
    from toric_ko.pipeline import run_pipeline
    from toric_ko.steenrod import commutes_with, sq2_operator

    report = run_pipeline(spec)
    for vertex in range(1, spec.m + 1):
        restriction = restrict_to_face(report.algebra, report.complex, report.lam2, [vertex])
        assert restriction.target.dims == (1, 1)
        assert commutes_with(restriction.ring_map, report.sq2, sq2_operator(restriction.target))


def test_products_multiply_poincare_series():
    from toric_ko import corpus
    from toric_ko.pipeline import run_pipeline

    a, b = corpus.square_cp2cp2(), corpus.simplex(2)
    ha = run_pipeline(a).h.h
    hb = run_pipeline(b).h.h
    expected = [0] * (len(ha) + len(hb) - 1)
    for i, x in enumerate(ha):
        for j, y in enumerate(hb):
            expected[i + j] += x * y
    assert list(run_pipeline(corpus.product(a, b)).algebra.dims) == expected
