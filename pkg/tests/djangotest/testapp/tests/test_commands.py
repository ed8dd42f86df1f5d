import csv
import io
import json
from datetime import timedelta
from unittest.mock import patch

import pytest
from django.core.cache import cache
from django.core.management import call_command
from django.core.management.base import CommandError
from django.utils import timezone

from django_bisolve.bench import BENCH_HEADER, MULTIPOINT_HEADER
from django_bisolve.conf import Config
from django_bisolve.models import SolveRecord
from django_bisolve.parser import parse_poly
from django_bisolve.runner import (
    EXIT_ERROR,
    EXIT_OK,
    EXIT_UNDECIDED,
    as_univariate,
    run,
    solve_schema,
)

pytestmark = pytest.mark.django_db


@pytest.fixture(autouse=True)
def clean_state():
    cache.clear()
    SolveRecord.objects.all().delete()
    yield
    cache.clear()
    SolveRecord.objects.all().delete()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


def bisolve(*args):
    out, err = io.StringIO(), io.StringIO()
    call_command("bisolve", *args, stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


def test_solve_text_output(write):
    out, _ = bisolve("solve", write("f.txt", "x^2 + y^2 - 2"), write("g.txt", "x - y"))
    lines = out.splitlines()
    assert lines[:5] == [
        "F = x^2 + y^2 - 2",
        "G = x - y",
        "Rx = 2*x^2 - 2",
        "Ry = 2*y^2 - 2",
        "solutions: 2",
    ]
    assert "undecided: 0" in lines
    assert not any(line.startswith("timings_ms") for line in lines)


def test_solve_json_output(write):
    out, _ = bisolve(
        "solve", write("f.txt", "y - x^2"), write("g.txt", "y"), "--format", "json", "--no-cache"
    )
    report = json.loads(out)
    assert report["all_decided"] is True
    assert [b["status"] for b in report["solutions"]] == ["CERTIFIED_FIBER"]
    assert report["stats"]["timings_ms"] is None


def test_solve_with_timings(write):
    out, _ = bisolve(
        "solve", write("f.txt", "x - 1"), write("g.txt", "y - 1"), "--timings", "--no-cache"
    )
    assert out.splitlines()[-1].startswith("timings_ms: project=")


def test_solve_json_input(write):
    f = write("f.json", json.dumps({"monomials": [[2, 0, "1"], [0, 2, "1"], [0, 0, "-2"]]}))
    g = write("g.json", json.dumps({"monomials": [[1, 0, 1], [0, 1, -1]]}))
    out, _ = bisolve("solve", f, g, "--json", "--no-cache")
    assert "solutions: 2" in out


def test_solve_undecided_exits_with_two(write):
    with pytest.raises(CommandError) as excinfo:
        bisolve("solve", write("f.txt", "y^2 - x^2"), write("g.txt", "x"))
    assert excinfo.value.returncode == 2
    assert "1 candidate boxes left undecided" in str(excinfo.value)


def test_solve_undecided_still_prints_the_report(write):
    out, err = io.StringIO(), io.StringIO()
    with pytest.raises(CommandError):
        call_command(
            "bisolve",
            "solve",
            write("f.txt", "y^2 - x^2"),
            write("g.txt", "x"),
            stdout=out,
            stderr=err,
        )
    assert "(NO_PROGRESS)" in out.getvalue()
    assert "left undecided" in err.getvalue()


@pytest.mark.parametrize(
    "f, g, code",
    [
        ("x^", "y", "PARSE_ERROR"),
        ("(x - y)*(x + y)", "(x - y)*x", "NOT_COPRIME"),
        ("0", "x", "ZERO_POLY"),
    ],
)
def test_solve_errors_exit_with_one(write, f, g, code):
    with pytest.raises(CommandError) as excinfo:
        bisolve("solve", write("f.txt", f), write("g.txt", g), "--no-cache")
    assert excinfo.value.returncode == 1
    assert str(excinfo.value).startswith(code)


def test_parse_error_names_the_offset(write):
    with pytest.raises(CommandError) as excinfo:
        bisolve("solve", write("f.txt", "x^"), write("g.txt", "y"))
    assert "at offset 2" in str(excinfo.value)


def test_missing_input_file(tmp_path):
    with pytest.raises(CommandError) as excinfo:
        bisolve("solve", str(tmp_path / "missing.txt"), str(tmp_path / "other.txt"))
    assert excinfo.value.returncode == 1


@pytest.mark.parametrize("option", [("--max-depth", "0"), ("--target-width", "abc"), ("--workers", "0")])
def test_invalid_options_exit_with_one(write, option):
    with pytest.raises(CommandError) as excinfo:
        bisolve("solve", write("f.txt", "x"), write("g.txt", "y"), *option)
    assert excinfo.value.returncode == 1
    assert str(excinfo.value).startswith("CONFIG_ERROR")


@pytest.mark.parametrize(
    "option",
    [
        ("--tau", "0"),
        ("--count", "0"),
        ("--n-min", "0"),
        ("--n-min", "4", "--n-max", "3"),
        ("--multipoint", "0"),
    ],
)
def test_invalid_bench_options_exit_with_one(option):
    with pytest.raises(CommandError) as excinfo:
        bisolve("bench", "--no-timings", *option)
    assert excinfo.value.returncode == 1
    assert str(excinfo.value).startswith("CONFIG_ERROR")


def test_settings_supply_defaults(write, settings):
    settings.BISOLVE_MAX_DEPTH = 0
    with pytest.raises(CommandError) as excinfo:
        bisolve("solve", write("f.txt", "x"), write("g.txt", "y"))
    assert excinfo.value.returncode == 1
    out, _ = bisolve("solve", write("f.txt", "x"), write("g.txt", "y"), "--max-depth", "5")
    assert "solutions: 1" in out


def test_solve_uses_the_report_cache(write):
    f, g = write("f.txt", "x^2 + y^2 - 5"), write("g.txt", "x*y - 2")
    with patch.object(SolveRecord.objects, "cache_reports_slower_than", timedelta(0)):
        first, _ = bisolve("solve", f, g)
        assert SolveRecord.objects.count() == 1
        record = SolveRecord.objects.get()
        assert record.certified == 4
        assert record.f_text == "x^2 + y^2 - 5"
        second, _ = bisolve("solve", f, g)
        assert first == second
        _, _ = bisolve("solve", f, g, "--no-cache", "--target-width", "1/1024")
        assert SolveRecord.objects.count() == 1


def test_isolate_command(write):
    out, _ = bisolve("isolate", write("p.txt", "x^2 - 2"))
    assert out == "p = x^2 - 2\nroots: 2\n  1. [-2, -1] ~ [-2, -1]\n  2. [1, 2] ~ [1, 2]\n"


def test_isolate_command_in_y_as_json(write):
    out, _ = bisolve("isolate", write("p.txt", "y^3 - y"), "--format", "json")
    report = json.loads(out)
    assert report["var"] == "y"
    assert [r["kind"] for r in report["roots"]][1] == "EXACT_POINT"
    assert len(report["roots"]) == 3


@pytest.mark.parametrize(
    "text, code", [("x*y - 1", "BAD_VAR"), ("(x - 1)^2", "NOT_SQUAREFREE"), ("0", "ZERO_POLY")]
)
def test_isolate_command_errors(write, text, code):
    with pytest.raises(CommandError) as excinfo:
        bisolve("isolate", write("p.txt", text))
    assert excinfo.value.returncode == 1
    assert str(excinfo.value).startswith(code)


def test_as_univariate():
    assert as_univariate(parse_poly("x^2 - 2")) == (parse_poly("x^2 - 2").coeffs_in("y")[0], "x")
    p, var = as_univariate(parse_poly("3*y - 1"))
    assert (p.coeffs, var) == ((-1, 3), "y")


def test_resultant_command(write):
    f, g = write("f.txt", "x^2 + y^2 - 2"), write("g.txt", "x - y")
    out, _ = bisolve("resultant", f, g)
    assert out == "res_y = 2*x^2 - 2\ndegree=2 bitlength=2\n"
    out, _ = bisolve("resultant", f, g, "--var", "x")
    assert out.splitlines()[0] == "res_x = 2*y^2 - 2"
    out, _ = bisolve("resultant", f, write("h.txt", "x^2 + y^2 - 2"), "--format", "json")
    assert json.loads(out) == {"var": "y", "resultant": "0", "magnitude": None}


def test_resultant_command_rejects_constant_input(write):
    with pytest.raises(CommandError) as excinfo:
        bisolve("resultant", write("f.txt", "x"), write("g.txt", "x + 1"))
    assert str(excinfo.value).startswith("BAD_VAR")


BENCH_ARGS = ("bench", "--seed", "7", "--n-min", "2", "--n-max", "4", "--tau", "4", "--count", "3")


def test_bench_is_reproducible_without_timings():
    first, _ = bisolve(*BENCH_ARGS, "--no-timings")
    second, _ = bisolve(*BENCH_ARGS, "--no-timings")
    assert first == second
    rows = list(csv.DictReader(io.StringIO(first)))
    assert len(rows) == 9
    assert tuple(rows[0]) == BENCH_HEADER
    assert [r["n"] for r in rows] == ["2"] * 3 + ["3"] * 3 + ["4"] * 3
    for row in rows:
        assert row["t_project_ms"] == ""
        assert int(row["res_degree"]) <= 2 * int(row["n"]) ** 2
        assert int(row["undecided"]) >= 0


def test_bench_writes_a_file(tmp_path):
    target = tmp_path / "bench.csv"
    out, _ = bisolve("bench", "--n-min", "2", "--n-max", "2", "--count", "1", "--out", str(target))
    assert f"Wrote {target}" in out
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert len(rows) == 1
    assert float(rows[0]["t_validate_ms"]) >= 0


def test_bench_multipoint():
    out, _ = bisolve("bench", "--multipoint", "64", "--seed", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0]) == MULTIPOINT_HEADER
    assert rows[0]["degree"] == "64"
    assert rows[0]["agree"] == "True"


def test_run_without_django():
    result = run("resultant", {"f": "y - x", "g": "y + x"})
    assert result.exit_code == EXIT_OK
    assert result.output.startswith("res_y = 2*x")
    result = run("solve", {"f": "y^2 - x^2", "g": "x"})
    assert result.exit_code == EXIT_UNDECIDED
    result = run("isolate", {"p": '{"monomials": [[2, 0, "1"], [0, 0, "-2"]]}', "json": True})
    assert result.output.splitlines()[1] == "roots: 2"
    result = run("frobnicate", {})
    assert result.exit_code == EXIT_ERROR
    assert "unknown command" in result.message


def test_run_accepts_a_custom_solver():
    calls = []

    def solver(F, G, config):
        calls.append((F, G, config))
        return solve_schema(F, G, config)

    config = Config(output_format="json", include_timings=True)
    result = run("solve", {"f": "x - 1", "g": "y - 1"}, config, solver=solver)
    assert len(calls) == 1
    assert json.loads(result.output)["stats"]["timings_ms"]["project"] >= 0


def test_prune_command_reports_deletions():
    past = timezone.now() - timedelta(hours=1)
    for i in range(3):
        SolveRecord.objects.create(
            system_hash=f"{i:032d}",
            f_text="x",
            g_text="y",
            report_json="{}",
            solve_ms=1.0,
            certified=1,
            undecided=0,
            expires_at=past,
        )
    out = io.StringIO()
    call_command("prune_solve_records", stdout=out)
    assert "Deleted 3 expired solve reports." in out.getvalue()
    assert SolveRecord.objects.count() == 0


def test_prune_command_with_nothing_expired():
    out = io.StringIO()
    call_command("prune_solve_records", stdout=out)
    assert "No solve reports were expired." in out.getvalue()
