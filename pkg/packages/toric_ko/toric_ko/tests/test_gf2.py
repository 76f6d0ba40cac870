"""Row reduction, kernels and solving over F2."""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[4]
if str(ROOT / "packages/toric_ko") not in sys.path:
    sys.path.insert(0, str(ROOT / "packages/toric_ko"))


def test_rank_and_invertibility():
    from toric_ko import gf2

    assert gf2.rank([[1, 1], [1, 1]]) == 1
    assert gf2.rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert gf2.rank([[2, 4], [6, 8]]) == 0
    assert gf2.is_invertible([[1, 1], [0, 1]])
    assert not gf2.is_invertible([[1, 1], [1, 1]])
    assert not gf2.is_invertible([[1, 0, 1]])


def test_rref_pivots():
    from toric_ko import gf2

    reduced, pivots = gf2.rref([[0, 1, 1, 1], [1, 0, 1, 0]])
    assert pivots == [0, 1]
    assert reduced.tolist() == [[1, 0, 1, 0], [0, 1, 1, 1]]


def test_nullspace_and_solve():
    import numpy as np
    from toric_ko import gf2

    kernel = gf2.nullspace([[1, 1, 0], [0, 1, 1]])
    assert kernel.tolist() == [[1, 1, 1]]

    assert gf2.solve([[1, 1], [0, 1]], [1, 1]).tolist() == [0, 1]
    assert gf2.solve([[1, 1], [1, 1]], [1, 0]) is None
    assert gf2.in_span(np.array([[1, 1, 0], [0, 1, 1]]), [1, 0, 1])
    assert not gf2.in_span(np.array([[1, 1, 0]]), [1, 0, 0])


def test_extend_to_basis_is_greedy():
    import numpy as np
    from toric_ko import gf2

    chosen = gf2.extend_to_basis(np.array([[1, 1, 0]]), np.eye(3, dtype=np.uint8))
    assert chosen == [0, 2]


def test_random_matrices_rank_nullity():
    import numpy as np
    from toric_ko import gf2

    rng = np.random.default_rng(7)
    for _ in range(25):
        rows, cols = rng.integers(1, 12, size=2)
        a = rng.integers(0, 2, size=(rows, cols)).astype(np.uint8)
        kernel = gf2.nullspace(a)
        assert gf2.rank(a) + kernel.shape[0] == cols
        assert not gf2.matmul(a, kernel.T).any()
        if kernel.shape[0]:
            assert gf2.rank(kernel) == kernel.shape[0]
