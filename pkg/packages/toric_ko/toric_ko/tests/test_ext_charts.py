"""Ext charts of S0 and M, rewriting, and the assembled E2 page."""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[4]
if str(ROOT / "packages/toric_ko") not in sys.path:
    sys.path.insert(0, str(ROOT / "packages/toric_ko"))

# stem -> filtrations holding one class, for stems <= 12 and s <= 6
S0_CLASSES = {
    0: [0, 1, 2, 3, 4, 5, 6],
    1: [1],
    2: [2],
    4: [3, 4, 5, 6],
    8: [4, 5, 6],
    9: [5],
    10: [6],
}
M_CLASSES = {stem: list(range(stem // 2, 7)) for stem in range(0, 13, 2)}


@pytest.mark.parametrize("which, expected", [("s0", S0_CLASSES), ("m", M_CLASSES)])
def test_chart_cells(which, expected):
    from toric_ko.ext_charts import ext_m, ext_s0

    chart = (ext_s0 if which == "s0" else ext_m)(12, 6)
    observed = {}
    for (stem, s), count in chart.cell_counts().items():
        assert count == 1
        observed.setdefault(stem, []).append(s)
    assert {stem: sorted(v) for stem, v in observed.items()} == expected


def test_towers():
    from toric_ko.ext_charts import ext_m, ext_s0

    assert ext_s0(12, 6).tower_set() == {(0, 0), (4, 3), (8, 4)}
    assert ext_m(12, 6).tower_set() == {(stem, stem // 2) for stem in range(0, 13, 2)}
    s0 = ext_s0(12, 6)
    assert not s0.elements["a1"].in_tower
    assert s0.elements["w"].in_tower


def test_w_squared_rewrites_to_a0_squared_b():
    from toric_ko.ext_charts import M_RULES, S0_RULES, X, Z, reduce

    assert reduce((0, 0, 2, 0, 0), S0_RULES) == (2, 0, 0, 1, 0)
    assert reduce((1, 1, 0, 0, 0), S0_RULES) is None
    assert reduce((0, 0, 1, 0, X), M_RULES) == (1, 0, 0, 0, Z)
    assert reduce((0, 0, 2, 0, X), M_RULES) == (2, 0, 0, 1, X)


def test_rewriting_is_confluent():
    from itertools import permutations

    import numpy as np
    from toric_ko.ext_charts import M_GENERATORS, M_RULES, S0_GENERATORS, S0_RULES, iter_monomials, reduce

    s0_monomials = list(iter_monomials(S0_GENERATORS, 16, 8))
    for order in permutations(range(len(S0_RULES))):
        for mono in s0_monomials:
            assert reduce(mono, S0_RULES, order) == reduce(mono, S0_RULES)

    rng = np.random.default_rng(11)
    m_monomials = list(iter_monomials(M_GENERATORS, 16, 8))
    for _ in range(20):
        order = [int(i) for i in rng.permutation(len(M_RULES))]
        for mono in m_monomials:
            assert reduce(mono, M_RULES, order) == reduce(mono, M_RULES)


def test_read_groups_match_ko_patterns():
    from toric_ko.ext_charts import ext_m, ext_s0, read_groups
    from toric_ko.ko_groups import ko_of_m, ko_of_s0

    s0 = read_groups(ext_s0(12, 8), 11)
    assert s0 == {d: ko_of_s0(d) for d in range(12)}
    m = read_groups(ext_m(12, 8), 12)
    assert m == {d: ko_of_m(d) for d in range(13)}


def test_negative_bounds_are_rejected():
    from toric_ko.ext_charts import ext_s0

    with pytest.raises(ValueError):
        ext_s0(-1, 4)


def _cube_decomposition():
    from toric_ko import corpus
    from toric_ko.a1_decomp import decompose
    from toric_ko.face_ring import build_face_ring
    from toric_ko.steenrod import sq2_operator

    spec = corpus.cube()
    K = spec.complex()
    _, lam2 = spec.char_matrix(K)
    A = build_face_ring(K, lam2)
    return decompose(A, sq2_operator(A))


def test_cube_e2_page():
    from toric_ko.ext_charts import assemble_e2, tower_count

    chart = assemble_e2(_cube_decomposition(), 14, 8)
    assert [cell for cell in chart.cells if cell[0] == 1] == [(1, 1)]
    assert [cell for cell in chart.cells if cell[0] == 3] == [(3, 1)]
    assert chart.status == "E2 = E_inf"
    assert chart.differentials == ()
    # Σ^2 S0 and two Σ^2 M towers start in stem 2
    assert tower_count(chart, 2) == 3
    assert chart.count(2, 1) == 3
    assert chart.count(2, 2) == 4
    assert all(":" in name for name in chart.elements)


def test_uncollapsed_page_marks_differentials():
    from toric_ko.ext_charts import assemble_e2

    chart = assemble_e2(_cube_decomposition(), 14, 8, collapsed=False)
    assert chart.status == "E2 only; differentials unresolved"
    assert [d.source for d in chart.differentials] == [(0, 0), (2, 0), (4, 0), (6, 0)]
    assert all(d.target is None and d.r is None for d in chart.differentials)
