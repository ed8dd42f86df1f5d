"""
Command dispatch independent of Django: parses inputs, runs a command and
renders its output. The `bisolve` management command is a thin wrapper.
"""
import io
import logging
from dataclasses import dataclass

from .bench import BENCH_HEADER, MULTIPOINT_HEADER, bench_rows, multipoint_row, write_csv
from .conf import Config
from .errors import BadVariableError, BiSolveError, ConfigError
from .isolate import isolate_real_roots
from .parser import parse_monomial_json, parse_poly
from .poly import UniPoly, magnitude, resultant
from .report import (
    isolate_schema,
    render_isolate_text,
    render_json,
    render_resultant_text,
    render_text,
    resultant_schema,
    to_schema,
    without_timings,
)
from .solver import solve

logger = logging.getLogger(__name__)

COMMANDS = ("solve", "isolate", "resultant", "bench")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2


@dataclass
class RunResult:
    exit_code: int
    output: str = ""
    message: str = ""


def load_poly(text, json_input=False):
    return parse_monomial_json(text) if json_input else parse_poly(text)


def solve_schema(F, G, config):
    """Default solve path: a fresh solve, serialized with its timings."""
    return to_schema(solve(F, G, config), F, G, include_timings=True)


def as_univariate(P):
    """A BiPoly in a single variable as a UniPoly, plus the variable name."""
    if P.degree_in("y") <= 0:
        return UniPoly([u.lc for u in P.coeffs_in("x")]), "x"
    if P.degree_in("x") <= 0:
        return UniPoly([u.lc for u in P.coeffs_in("y")]), "y"
    raise BadVariableError("isolate expects a polynomial in a single variable")


def _run_solve(inputs, config, solver):
    json_input = inputs.get("json", False)
    F, G = load_poly(inputs["f"], json_input), load_poly(inputs["g"], json_input)
    schema = (solver or solve_schema)(F, G, config)
    if not config.include_timings:
        schema = without_timings(schema)
    output = render_json(schema) + "\n" if config.output_format == "json" else render_text(schema)
    if schema.all_decided:
        return RunResult(EXIT_OK, output)
    return RunResult(
        EXIT_UNDECIDED, output, f"{len(schema.undecided)} candidate boxes left undecided"
    )


def _run_isolate(inputs, config):
    p, var = as_univariate(load_poly(inputs["p"], inputs.get("json", False)))
    schema = isolate_schema(p, isolate_real_roots(p), var)
    if config.output_format == "json":
        return RunResult(EXIT_OK, render_json(schema) + "\n")
    return RunResult(EXIT_OK, render_isolate_text(schema))


def _run_resultant(inputs, config):
    json_input = inputs.get("json", False)
    F, G = load_poly(inputs["f"], json_input), load_poly(inputs["g"], json_input)
    var = inputs.get("var", "y")
    res = resultant(F, G, var)
    schema = resultant_schema(res, var, magnitude(res) if res else None)
    if config.output_format == "json":
        return RunResult(EXIT_OK, render_json(schema) + "\n")
    return RunResult(EXIT_OK, render_resultant_text(schema))


def _bench_option(inputs, name, default, minimum):
    value = inputs.get(name)
    value = default if value is None else value
    if value < minimum:
        raise ConfigError(f"bench {name} must be at least {minimum}, got {value}")
    return value


def _run_bench(inputs, config):
    stream = io.StringIO()
    timings = inputs.get("timings", True)
    if inputs.get("multipoint") is not None:
        degree = _bench_option(inputs, "multipoint", None, 1)
        rows = [multipoint_row(degree, config.seed, timings)]
        write_csv(stream, MULTIPOINT_HEADER, rows)
    else:
        n_min = _bench_option(inputs, "n_min", 2, 1)
        n_max = _bench_option(inputs, "n_max", 4, n_min)
        rows = bench_rows(
            n_min,
            n_max,
            _bench_option(inputs, "tau", 4, 1),
            _bench_option(inputs, "count", 3, 1),
            config.seed,
            config,
            timings,
        )
        write_csv(stream, BENCH_HEADER, rows)
    return RunResult(EXIT_OK, stream.getvalue())


def run(command, inputs, config=None, solver=None):
    """
    Runs one command. `inputs` holds polynomial texts and command options;
    `solver(F, G, config)` may replace the default solve path (the report
    cache plugs in here). Library errors become exit code 1.
    """
    config = config or Config()
    if command not in COMMANDS:
        return RunResult(EXIT_ERROR, "", f"unknown command {command!r}")
    try:
        if command == "solve":
            return _run_solve(inputs, config, solver)
        if command == "isolate":
            return _run_isolate(inputs, config)
        if command == "resultant":
            return _run_resultant(inputs, config)
        return _run_bench(inputs, config)
    except BiSolveError as e:
        logger.info("%s failed: %s", command, e)
        return RunResult(EXIT_ERROR, "", str(e))
