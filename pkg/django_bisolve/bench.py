"""
Benchmark harness: random dense systems over an (n, tau) grid, and the
multipoint evaluation timing check. Output rows are plain dicts written as
CSV with fixed headers; with timings disabled the rows depend only on the
seed.
"""
import csv
import logging
import random
import time

from .arith import Dyadic
from .conf import Config
from .errors import BiSolveError
from .multipoint import subproduct_tree_eval
from .poly import BiPoly, UniPoly, eval_point
from .solver import preprocess, solve

logger = logging.getLogger(__name__)

BENCH_HEADER = (
    "n",
    "tau",
    "res_degree",
    "res_bitlength",
    "min_sep_lower_bound",
    "t_project_ms",
    "t_isolate_ms",
    "t_validate_ms",
    "max_depth",
    "certified",
    "undecided",
)
MULTIPOINT_HEADER = ("degree", "points", "t_horner_ms", "t_tree_ms", "agree")

MAX_REJECTIONS = 1000
# fractional bits of the multipoint benchmark's evaluation points
POINT_BITS = 16


def _coefficient(rng, tau):
    bound = (1 << tau) - 1
    return rng.randint(-bound, bound)


def random_dense_poly(n, tau, rng):
    """Total degree exactly n, every coefficient uniform in (-2^tau, 2^tau)."""
    while True:
        terms = {
            (i, j): _coefficient(rng, tau) for i in range(n + 1) for j in range(n + 1 - i)
        }
        p = BiPoly(terms)
        if p.total_degree == n:
            return p


def random_system(n, tau, rng):
    """A random dense pair, resampled until it is coprime."""
    for _ in range(MAX_REJECTIONS):
        F, G = random_dense_poly(n, tau, rng), random_dense_poly(n, tau, rng)
        try:
            preprocess(F, G)
        except BiSolveError as e:
            logger.warning("rejected random system (n=%s, tau=%s): %s", n, tau, e)
            continue
        return F, G
    raise RuntimeError(f"no usable random system for n={n}, tau={tau}")


def bench_rows(n_min, n_max, tau, count, seed, config=None, timings=True):
    """One row per solved system: `count` systems for each n in [n_min, n_max]."""
    config = config or Config()
    rng = random.Random(seed)
    for n in range(n_min, n_max + 1):
        for _ in range(count):
            F, G = random_system(n, tau, rng)
            report = solve(F, G, config)
            stats = report.stats
            t = stats.timings if timings else {}
            sep = stats.min_sep_lower_bound
            yield {
                "n": n,
                "tau": tau,
                "res_degree": stats.rx_magnitude.n,
                "res_bitlength": stats.rx_magnitude.tau,
                "min_sep_lower_bound": "" if sep is None else str(sep),
                "t_project_ms": t.get("project", ""),
                "t_isolate_ms": t.get("isolate", ""),
                "t_validate_ms": t.get("validate", ""),
                "max_depth": stats.max_depth,
                "certified": len(report.solutions),
                "undecided": len(report.undecided),
            }
            logger.info("bench n=%s tau=%s done", n, tau)


def multipoint_row(degree, seed, timings=True):
    """Repeated Horner against the subproduct tree on `degree` dyadic points."""
    rng = random.Random(seed)
    p = UniPoly([_coefficient(rng, 16) for _ in range(degree)] + [1])
    scale = 1 << POINT_BITS
    points = [Dyadic(rng.randint(-scale, scale), -POINT_BITS) for _ in range(degree)]
    fractions = [q.to_fraction() for q in points]
    start = time.perf_counter()
    horner = [eval_point(p, q) for q in fractions]
    t_horner = (time.perf_counter() - start) * 1000
    start = time.perf_counter()
    tree = subproduct_tree_eval(p, fractions)
    t_tree = (time.perf_counter() - start) * 1000
    return {
        "degree": degree,
        "points": len(points),
        "t_horner_ms": round(t_horner, 3) if timings else "",
        "t_tree_ms": round(t_tree, 3) if timings else "",
        "agree": horner == tree,
    }


def write_csv(stream, header, rows):
    writer = csv.DictWriter(stream, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
