"""
End-to-end runs on the bundled examples.

Verifies:
1. cube, square and CP^2 groups and spin verdicts
2. integral and mod-2 input give byte-identical results
3. singular mode: small inputs collapse, large ones stop at E2
4. every bundled report finishes in a few seconds
"""

import json
import sys
import time
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[3]
if str(ROOT / "packages/toric_ko") not in sys.path:
    sys.path.insert(0, str(ROOT / "packages/toric_ko"))
if str(ROOT / "apps") not in sys.path:
    sys.path.insert(0, str(ROOT / "apps"))


def test_cube_report():
    from toric_ko import corpus
    from toric_ko.pipeline import run_pipeline

    report = run_pipeline(corpus.cube())
    assert report.exit_code == 0
    assert report.algebra.dims == (1, 3, 3, 1)
    assert report.decomposition.m_mult == (1, 1, 1, 1)
    assert report.decomposition.n_mult == (0, 2, 0, 0)
    assert report.spin.spin
    assert [report.ko.at(d).as_tuple() for d in range(7)] == [(1, 0), (0, 1), (3, 1), (0, 1), (4, 1), (0, 1), (4, 1)]
    assert report.KO_co.at(-6).as_tuple() == (4, 1)
    assert report.warnings == ["lambda supplied mod 2 only; integral data not checked"]

    results = report.results_dict()
    assert results["ring"]["stanley_reisner"] == ["v1v6", "v2v4", "v3v5"]
    assert results["ring"]["linear_relations"] == ["v1 + v6 = 0", "v1 + v3 + v5 = 0", "v1 + v2 + v4 = 0"]
    assert results["ring"]["solved_relations"] == ["v1 = v6", "v2 = v4 + v6", "v3 = v5 + v6"]
    assert results["ring"]["basis"]["2"] == ["v4", "v5", "v6"]
    assert results["sq2"]["ranks"] == {"0": 0, "2": 2, "4": 0, "6": 0}


def test_cp2_report():
    from toric_ko import corpus
    from toric_ko.pipeline import run_pipeline

    report = run_pipeline(corpus.simplex(2))
    assert report.sq2.matrix(2).tolist() == [[1]]
    assert report.homology.dims == (1, 0, 0)
    assert not report.spin.spin
    assert report.spin.wu_name == "v3"
    for d in (2, 4, 6, 8):
        assert report.ko_reduced.at(d).as_tuple() == (1, 0)
    for d in (1, 3, 5, 7):
        assert report.ko_reduced.at(d).is_zero()


def test_square_report():
    from toric_ko import corpus
    from toric_ko.pipeline import run_pipeline

    report = run_pipeline(corpus.square_cp2cp2())
    assert report.sq2.rank(2) == 1
    assert report.decomposition.m_mult == (1, 1, 0)
    assert report.decomposition.n_mult == (0, 1, 0)
    assert [p.matrix.tolist() for p in report.pairings][1] == [[0, 1], [1, 1]]
    assert report.lam_z is not None


@pytest.mark.parametrize("name", ["square_cp2cp2", "simplex_cp3", "square_product"])
def test_integral_and_mod2_input_agree(name):
    from toric_ko import corpus
    from toric_ko.pipeline import run_pipeline

    spec = corpus.get(name)
    integral = run_pipeline(spec)
    mod2 = run_pipeline(spec.as_mod2())
    assert integral.input_dict()["lambda_source"] == "integral"
    assert mod2.input_dict()["lambda_source"] == "mod2"
    dump = lambda report: json.dumps(report.results_dict(), sort_keys=True, ensure_ascii=False)  # noqa: E731
    assert dump(integral) == dump(mod2)


def test_variable_order_does_not_change_groups():
    from toric_ko import corpus
    from toric_ko.pipeline import run_pipeline

    default = run_pipeline(corpus.cube())
    reordered = run_pipeline(corpus.cube(), variable_order=[6, 5, 4, 3, 2, 1])
    assert reordered.decomposition.m_mult == default.decomposition.m_mult
    assert reordered.decomposition.n_mult == default.decomposition.n_mult
    assert reordered.spin.spin == default.spin.spin
    assert reordered.ko.to_rows() == default.ko.to_rows()


def test_small_singular_input_collapses():
    from toric_ko import corpus
    from toric_ko.pipeline import run_pipeline

    report = run_pipeline(corpus.disk_singular())
    assert report.collapse_established
    assert report.exit_code == 0
    assert report.algebra.dims == (1, 1, 0, 0)
    assert report.algebra.presentation_assumed
    assert report.decomposition.m_mult == (1, 1, 0, 0)
    assert report.spin is None
    assert report.pairings == []
    assert any("singular mode" in w for w in report.warnings)
    assert report.ko.at(2).as_tuple() == (1, 1)


def test_large_singular_input_stops_at_e2():
    from toric_ko import corpus
    from toric_ko.pipeline import run_pipeline

    report = run_pipeline(corpus.simplex(6, mode="singular"))
    assert report.exit_code == 4
    assert not report.collapse_established
    assert report.ko is None and report.KO is None and report.KO_co is None
    assert report.chart.status == "E2 only; differentials unresolved"
    assert [d.source for d in report.chart.differentials] == [(0, 0)]
    payload = report.to_dict()
    assert payload["exit_code"] == 4
    assert payload["results"]["ko"] is None


def test_invalid_inputs():
    from toric_ko import corpus
    from toric_ko.errors import DehnSommervilleError, ValidationError
    from toric_ko.pipeline import run_pipeline

    with pytest.raises(DehnSommervilleError):
        run_pipeline(corpus.disk_singular(), trust_sphere=True)
    with pytest.raises(ValidationError):
        run_pipeline(corpus.disk_singular(), mode="manifold")


def test_report_has_schema_keys():
    from toric_ko import corpus
    from toric_ko.config import settings
    from toric_ko.pipeline import run_pipeline

    schema = json.loads(settings.REPORT_SCHEMA_PATH.read_text(encoding="utf-8"))
    payload = run_pipeline(corpus.square_cp2cp2()).to_dict()
    assert set(schema["required"]) <= set(payload)
    assert set(schema["properties"]["results"]["required"]) <= set(payload["results"])
    assert set(schema["properties"]["input"]["required"]) <= set(payload["input"])
    json.dumps(payload, ensure_ascii=False)


def test_singular_mode_accepts_negative_h_vector():
    from toric_ko.errors import NegativeEntryError
    from toric_ko.pipeline import run_pipeline
    from toric_ko.problem import ProblemSpec
    from toric_ko.render import render_report_text

    two_edges = ProblemSpec(
        name="two_edges",
        n=2,
        m=4,
        facets=((1, 2), (3, 4)),
        lam=((1, 0, 1, 0), (0, 1, 0, 1)),
        mode="singular",
    )
    report = run_pipeline(two_edges)
    assert report.h.h == (1, 2, -1)
    assert report.algebra.dims == (1, 2, 0)
    assert report.exit_code == 0
    assert report.results_dict()["betti"] == {"0": 1, "2": 2, "4": 0}
    assert any("negative entries" in w for w in report.warnings)
    assert "Z^-1" not in render_report_text(report)

    with pytest.raises(NegativeEntryError):
        run_pipeline(two_edges, mode="manifold")


def test_reports_are_fast():
    from toric_ko import corpus
    from toric_ko.pipeline import run_pipeline
    from toric_ko.render import render_report_json, render_report_text

    start = time.perf_counter()
    run_pipeline(corpus.cube())
    assert time.perf_counter() - start < 1.0

    for name in corpus.names():
        start = time.perf_counter()
        report = run_pipeline(corpus.get(name))
        render_report_text(report)
        render_report_json(report)
        assert time.perf_counter() - start < 5.0, name
