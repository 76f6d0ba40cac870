"""
The `.toric` format: bundled files, round trips and syntax errors.
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[3]
if str(ROOT / "packages/toric_ko") not in sys.path:
    sys.path.insert(0, str(ROOT / "packages/toric_ko"))
if str(ROOT / "apps") not in sys.path:
    sys.path.insert(0, str(ROOT / "apps"))


def test_bundled_files_match_generators():
    from toric_ko import corpus
    from toric_ko.problem import render_spec

    for name in corpus.names():
        spec = corpus.get(name)
        path = corpus.example_path(name)
        assert path.read_text(encoding="utf-8") == render_spec(spec), name
        loaded = corpus.load_bundled(name)
        assert loaded == spec
        assert loaded.description == spec.description


def test_round_trip_of_products():
    from toric_ko import corpus
    from toric_ko.problem import parse_spec, render_spec

    for a, b in (("interval_cp1", "simplex_cp2"), ("cube", "interval_cp1"), ("square_cp2cp2", "square_product")):
        spec = corpus.product(corpus.get(a), corpus.get(b))
        assert parse_spec(render_spec(spec)) == spec


def test_optional_keys():
    from toric_ko.problem import parse_spec

    text = "\n".join(
        [
            "# CP^1 with options",
            "name = line",
            "n = 1",
            "m = 2",
            "max_degree = 5",
            "trust_sphere = yes",
            "format = json",
            "facet: 1",
            "facet: 2",
            "lambda: 1, -1   # trailing comment",
        ]
    )
    spec = parse_spec(text)
    assert spec.name == "line"
    assert spec.max_degree == 5
    assert spec.trust_sphere
    assert spec.output_format == "json"
    assert spec.lam == ((1, -1),)
    assert spec.description == "CP^1 with options"


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("# only a comment\n", 1),
        ("n = 2\nm = x\n", 2),
        ("n = 2\nm = 3\nshape = round\n", 3),
        ("n = 2\nm = 3\nfacet: 1 a\n", 3),
        ("n = 2\nn = 2\nm = 3\n", 2),
        ("n = 2\nm = 3\nmode = orbifold\n", 3),
        ("n = 2\nm = 3\njust words\n", 3),
        ("m = 3\nfacet: 1 2\n", 2),
    ],
)
def test_syntax_errors_report_a_line(text, line):
    from toric_ko.errors import SpecSyntaxError
    from toric_ko.problem import parse_spec

    with pytest.raises(SpecSyntaxError) as info:
        parse_spec(text)
    assert info.value.line == line


def test_validation_runs_during_parse():
    from toric_ko.errors import SingularAtFacetError
    from toric_ko.problem import parse_spec

    text = "n = 2\nm = 4\nfacet: 1 2\nfacet: 2 3\nfacet: 3 4\nfacet: 1 4\nlambda: 1 0 1 0\nlambda: 0 1 0 2\n"
    with pytest.raises(SingularAtFacetError):
        parse_spec(text)
    assert parse_spec(text, validate=False).m == 4


def test_unknown_example():
    from toric_ko import corpus

    with pytest.raises(KeyError):
        corpus.get("dodecahedron")
    assert corpus.get("simplex_cp7").n == 7
