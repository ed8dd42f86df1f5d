import json
import random

import pytest

from django_bisolve.conf import Config
from django_bisolve.errors import PolynomialParseError
from django_bisolve.parser import (
    format_poly,
    format_uni,
    parse_monomial_json,
    parse_poly,
    tokenize,
)
from django_bisolve.poly import BiPoly, UniPoly
from django_bisolve.report import (
    DyadicSchema,
    SolveReportSchema,
    approx,
    render_json,
    render_text,
    to_schema,
    without_timings,
)
from django_bisolve.solver import solve


def test_parse_examples():
    assert parse_poly("x^2 + y^2 - 2") == BiPoly({(2, 0): 1, (0, 2): 1, (0, 0): -2})
    assert parse_poly("-x^2") == BiPoly({(2, 0): -1})
    assert parse_poly("(-x)^2") == BiPoly({(2, 0): 1})
    assert parse_poly("2*(x - y)*(x + y)") == BiPoly({(2, 0): 2, (0, 2): -2})
    assert parse_poly("  3 ") == BiPoly.constant(3)
    assert parse_poly("x^0 + 2^3") == BiPoly.constant(9)
    assert parse_poly("x - x") == BiPoly()
    assert parse_poly("123456789012345678901234567890*y") == BiPoly(
        {(0, 1): 123456789012345678901234567890}
    )


def test_tokenize_positions():
    assert tokenize("x +  12") == [("VAR", "x", 0), ("+", None, 2), ("INT", 12, 5), ("END", None, 7)]


@pytest.mark.parametrize(
    "text, position",
    [
        ("x^", 2),
        ("2x", 1),
        ("x + $", 4),
        ("(x + y", 6),
        ("x^y", 2),
        ("", 0),
        ("x * * y", 4),
    ],
)
def test_parse_errors_report_the_offset(text, position):
    with pytest.raises(PolynomialParseError) as excinfo:
        parse_poly(text)
    assert excinfo.value.position == position
    assert f"at offset {position}" in str(excinfo.value)
    assert str(excinfo.value).startswith("PARSE_ERROR: ")


def test_format_examples():
    assert format_poly(parse_poly("y^2 - 2 + x^2")) == "x^2 + y^2 - 2"
    assert format_poly(parse_poly("1 - 3*x + x^2*y")) == "x^2*y - 3*x + 1"
    assert format_poly(parse_poly("-x*y")) == "-x*y"
    assert format_poly(BiPoly()) == "0"
    assert format_uni(UniPoly([-2, 0, 2]), "x") == "2*x^2 - 2"
    assert format_uni(UniPoly([0, -1]), "y") == "-y"
    assert format_uni(UniPoly(), "y") == "0"


def test_printed_polynomials_parse_back():
    rng = random.Random(6)
    for _ in range(200):
        terms = {
            (rng.randint(0, 5), rng.randint(0, 5)): rng.randint(-(10**6), 10**6)
            for _ in range(rng.randint(0, 8))
        }
        p = BiPoly(terms)
        assert parse_poly(format_poly(p)) == p


def test_monomial_json():
    text = json.dumps({"monomials": [[2, 0, "1"], [0, 2, 1], [0, 0, "-2"], [0, 0, "0"]]})
    assert parse_monomial_json(text) == parse_poly("x^2 + y^2 - 2")
    repeated = json.dumps({"monomials": [[1, 1, "2"], [1, 1, "3"]]})
    assert parse_monomial_json(repeated) == parse_poly("5*x*y")
    big = json.dumps({"monomials": [[0, 1, "-98765432109876543210"]]})
    assert parse_monomial_json(big) == BiPoly({(0, 1): -98765432109876543210})


@pytest.mark.parametrize(
    "text",
    [
        '{"monomials": [[-1, 0, "1"]]}',
        '{"monomials": [[0, 0, "1.5"]]}',
        '{"monomials": [[0, 0]]}',
        '{"terms": []}',
        "not json",
    ],
)
def test_monomial_json_errors(text):
    with pytest.raises(PolynomialParseError) as excinfo:
        parse_monomial_json(text)
    assert excinfo.value.position == 0


def test_approx_and_dyadic_schema():
    assert approx(1) == "1"
    assert approx(0.5) == "0.5"
    d = DyadicSchema(m="3", e=-2, approx="0.75")
    assert d.to_dyadic().to_fraction() == 0.75


def solve_report(f, g, **options):
    F, G = parse_poly(f), parse_poly(g)
    return to_schema(solve(F, G, Config(**options)), F, G, include_timings=True)


def test_report_schema_round_trips_through_json():
    schema = solve_report("x^2 + y^2 - 2", "x - y")
    again = SolveReportSchema.model_validate_json(render_json(schema))
    assert again == schema
    assert again.all_decided
    assert [b.status for b in again.solutions] == ["CERTIFIED_UNIQUE"] * 2
    lo = again.solutions[1].x.lo
    assert (lo.m, lo.e, lo.approx) == ("1", 0, "1")
    assert again.stats.timings_ms.keys() == {"project", "isolate", "validate"}


def test_report_without_timings():
    schema = without_timings(solve_report("x^2 + y^2 - 2", "x - y"))
    assert schema.stats.timings_ms is None
    assert json.loads(render_json(schema))["stats"]["timings_ms"] is None


def test_render_text():
    schema = without_timings(solve_report("x^2 + y^2 - 2", "x - y"))
    text = render_text(schema)
    assert text.splitlines() == [
        "F = x^2 + y^2 - 2",
        "G = x - y",
        "Rx = 2*x^2 - 2",
        "Ry = 2*y^2 - 2",
        "solutions: 2",
        "  1. CERTIFIED_UNIQUE  x in {-1 ~ -1}  y in {-1 ~ -1}",
        "  2. CERTIFIED_UNIQUE  x in {1 ~ 1}  y in {1 ~ 1}",
        "undecided: 0",
        "candidates=4 excluded=2 certified_unique=2 certified_fiber=0 undecided=0 depth=0",
    ]


def test_render_text_lists_undecided_boxes_with_their_note():
    schema = without_timings(solve_report("y^2 - x^2", "x"))
    text = render_text(schema)
    assert "undecided: 1" in text
    assert "  1. UNDECIDED  x in {0 ~ 0}  y in {0 ~ 0}  (NO_PROGRESS)" in text
    assert not schema.all_decided


def test_render_text_shows_timings():
    text = render_text(solve_report("x - 1", "y - 2"))
    assert text.splitlines()[-1].startswith("timings_ms: project=")


def test_json_schema_is_published():
    schema = SolveReportSchema.model_json_schema()
    assert {"solutions", "undecided", "stats", "all_decided"} <= set(schema["properties"])
