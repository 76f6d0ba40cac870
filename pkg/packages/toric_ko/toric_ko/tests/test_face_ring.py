"""The mod-2 cohomology ring: bases, products, pairing, restriction to faces."""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[4]
if str(ROOT / "packages/toric_ko") not in sys.path:
    sys.path.insert(0, str(ROOT / "packages/toric_ko"))


def _ring(spec, **kwargs):
    from toric_ko.face_ring import build_face_ring

    K = spec.complex()
    _, lam2 = spec.char_matrix(K)
    return K, lam2, build_face_ring(K, lam2, **kwargs)


def test_cp2_is_truncated_polynomial():
    from toric_ko import corpus
    from toric_ko.face_ring import multiply, poincare_pairing

    _, _, A = _ring(corpus.simplex(2))
    assert A.dims == (1, 1, 1)
    x = A.basis_class(2, 0)
    assert multiply(A, x, x).coords == (1,)
    assert poincare_pairing(A, 1).matrix.tolist() == [[1]]
    assert multiply(A, x, multiply(A, x, x)).coords == ()


def test_square_basis_and_pairing():
    from toric_ko import corpus
    from toric_ko.face_ring import multiply, poincare_pairing

    _, _, A = _ring(corpus.square_cp2cp2())
    assert A.dims == (1, 2, 1)
    assert A.basis_names(2) == ["v3", "v4"]
    pairing = poincare_pairing(A, 1)
    assert pairing.matrix.tolist() == [[0, 1], [1, 1]]
    assert pairing.nondegenerate

    v2, v4 = A.generator(2), A.generator(4)
    products = [[multiply(A, a, b).coords[0] for b in (v2, v4)] for a in (v2, v4)]
    assert products == [[1, 0], [0, 1]]
    assert multiply(A, v2, v2) == multiply(A, v4, v4)
    assert multiply(A, multiply(A, v2, v4), v2).coords == ()


def test_cube_ring_and_variable_order():
    from toric_ko import corpus
    from toric_ko.face_ring import verify_algebra

    spec = corpus.cube()
    _, _, A = _ring(spec, trust_sphere=True)
    assert A.dims == (1, 3, 3, 1)
    assert A.basis_names(2) == ["v4", "v5", "v6"]
    verify_algebra(A)

    _, _, B = _ring(spec, variable_order=[6, 5, 4, 3, 2, 1])
    assert B.dims == A.dims
    assert set(B.basis_names(2)) == {"v1", "v2", "v3"}


def test_stanley_reisner_products_vanish():
    from toric_ko import corpus
    from toric_ko.face_ring import multiply

    _, _, A = _ring(corpus.cube())
    for i, j in ((1, 6), (2, 4), (3, 5)):
        assert multiply(A, A.generator(i), A.generator(j)).is_zero()
    assert A.class_of_monomial([1, 0, 0, 0, 0, 1]).is_zero()


def test_generator_relations_are_normal_forms():
    from toric_ko import corpus

    _, _, A = _ring(corpus.square_cp2cp2())
    relations = A.generator_relations(4)
    assert len(relations) == 2
    assert all(" = " in line for line in relations)
    assert A.generator_relations(2) == []


def test_overflow_and_bad_order():
    from toric_ko import corpus
    from toric_ko.errors import DegreeOverflowError
    from toric_ko.face_ring import build_face_ring, multiply

    K, lam2, A = _ring(corpus.simplex(2))
    top = A.basis_class(4, 0)
    with pytest.raises(DegreeOverflowError):
        multiply(A, top, A.generator(1), zero_extend=False)
    with pytest.raises(ValueError):
        build_face_ring(K, lam2, variable_order=[1, 1, 2])


def test_singular_ring_has_no_pairing():
    from toric_ko import corpus
    from toric_ko.errors import NoTopClassError
    from toric_ko.face_ring import poincare_pairing

    _, _, A = _ring(corpus.disk_singular(), presentation_assumed=True)
    assert A.dims == (1, 1, 0, 0)
    assert A.presentation_assumed
    with pytest.raises(NoTopClassError):
        poincare_pairing(A, 1)


def test_restriction_to_a_facet_of_the_cube():
    from toric_ko import corpus
    from toric_ko.face_ring import multiply, restrict_to_face

    K, lam2, A = _ring(corpus.cube())
    facet = restrict_to_face(A, K, lam2, [1])
    assert facet.vertex_map == (1, 2, 3, 4)
    assert facet.target.dims == (1, 2, 1)

    f = facet.ring_map
    for i in range(A.dim(2)):
        for j in range(A.dim(2)):
            x, y = A.basis_class(2, i), A.basis_class(2, j)
            assert f.apply(multiply(A, x, y)) == multiply(facet.target, f.apply(x), f.apply(y))

    edge = restrict_to_face(A, K, lam2, [1, 2])
    assert edge.target.dims == (1, 1)

    vertex = restrict_to_face(A, K, lam2, [1, 2, 3])
    assert vertex.target.dims == (1,)
    assert vertex.ring_map.matrix(0).tolist() == [[1]]


def test_cube_relations_in_low_generators():
    from toric_ko import corpus
    from toric_ko.face_ring import multiply

    _, _, A = _ring(corpus.cube(), variable_order=[6, 5, 4, 3, 2, 1])
    assert set(A.basis_names(2)) == {"v1", "v2", "v3"}
    g = {i: A.generator(i) for i in range(1, 7)}

    # v1 = v6 = v3 + v5 = v2 + v4
    assert g[1] == g[6] == g[3] + g[5] == g[2] + g[4]

    assert multiply(A, g[1], g[1]).is_zero()
    assert multiply(A, g[2], g[2]) == multiply(A, g[1], g[2])
    assert multiply(A, g[3], g[3]) == multiply(A, g[1], g[3])

    top = multiply(A, g[3], multiply(A, g[2], g[2]))
    assert top == multiply(A, multiply(A, g[1], g[2]), g[3])
    assert not top.is_zero()
