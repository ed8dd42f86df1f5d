"""
The end-to-end solver: preprocess, project through resultants, isolate the
roots of both projections, then decide every box of the candidate grid.

A box is decided by interval exclusion, by one interval Newton step, or by
the exact fiber rules built on principal subresultant coefficients. Boxes
still pending after `max_depth` refinement rounds are reported as undecided,
never dropped.
"""
import enum
import logging
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .arith import Dyadic, DyadicInterval, Sign, iv_div, iv_sign
from .conf import Config
from .errors import BadVariableError, NotCoprimeError, ZeroPolynomialError
from .isolate import IsolationStats, bisect, isolate_real_roots, refine
from .multipoint import batch_signs
from .poly import (
    ONE,
    bipoly_gcd,
    bipoly_squarefree_part,
    eval_box,
    gcd_uni,
    magnitude,
    resultant,
    squarefree_part,
    subresultant_coeffs,
)

logger = logging.getLogger(__name__)

# fractional bits kept when the Newton step divides by the Jacobian determinant
NEWTON_PRECISION = 64


class BoxStatus(enum.Enum):
    PENDING = "PENDING"
    EXCLUDED = "EXCLUDED"
    CERTIFIED_UNIQUE = "CERTIFIED_UNIQUE"
    CERTIFIED_FIBER = "CERTIFIED_FIBER"
    UNDECIDED = "UNDECIDED"

    @property
    def certified(self):
        return self in (BoxStatus.CERTIFIED_UNIQUE, BoxStatus.CERTIFIED_FIBER)


class NewtonVerdict(enum.Enum):
    CERTIFIED_UNIQUE = "CERTIFIED_UNIQUE"
    UNKNOWN = "UNKNOWN"


class BoxNote(enum.Enum):
    """Why a box ended undecided."""

    LEADING_COEFF_DEGENERACY = "LEADING_COEFF_DEGENERACY"
    MAX_DEPTH_REACHED = "MAX_DEPTH_REACHED"
    NO_PROGRESS = "NO_PROGRESS"


@dataclass
class CandidateBox:
    """
    ix x iy, where ix isolates the x_index-th root of the x-resultant and iy
    the y_index-th root of the y-resultant. While PENDING the intervals follow
    the shared refinement of those roots; once decided they are frozen.
    """

    ix: object
    iy: object
    x_index: int = 0
    y_index: int = 0
    status: BoxStatus = BoxStatus.PENDING
    depth: int = 0
    note: Optional[BoxNote] = None

    @property
    def bx(self):
        return self.ix.as_interval()

    @property
    def by(self):
        return self.iy.as_interval()

    @property
    def pending(self):
        return self.status is BoxStatus.PENDING

    def set_status(self, status, note=None):
        if self.status is not BoxStatus.PENDING:
            raise ValueError(
                f"box ({self.x_index}, {self.y_index}) is already {self.status.value}"
            )
        self.status = status
        self.note = note

    def contains(self, x, y):
        return self.ix.contains(x) and self.iy.contains(y)


@dataclass(frozen=True)
class FiberInfo:
    """
    The fiber over the root alpha of the square-free x-resultant. k is the
    degree of gcd(F(alpha, y), G(alpha, y)); None when degenerate.
    """

    alpha: object
    k: Optional[int]
    degenerate: bool = False


@dataclass
class SolveStats:
    f_magnitude: object = None
    g_magnitude: object = None
    rx_magnitude: object = None
    ry_magnitude: object = None
    x_roots: int = 0
    y_roots: int = 0
    x_isolation: IsolationStats = field(default_factory=IsolationStats)
    y_isolation: IsolationStats = field(default_factory=IsolationStats)
    min_sep_lower_bound: object = None
    candidates: int = 0
    excluded: int = 0
    certified_unique: int = 0
    certified_fiber: int = 0
    undecided: int = 0
    fibers_analyzed: int = 0
    max_depth: int = 0
    timings: dict = field(default_factory=dict)


@dataclass
class SolveReport:
    solutions: list
    undecided: list
    stats: SolveStats
    rx: object = None
    ry: object = None

    @property
    def all_decided(self):
        return not self.undecided

    @property
    def exit_code(self):
        return 0 if self.all_decided else 2


# -- preprocessing and projection ---------------------------------------------


def preprocess(F, G):
    """Primitive square-free parts of F and G; raises NOT_COPRIME on a shared factor."""
    if not F or not G:
        raise ZeroPolynomialError("both polynomials of the system must be nonzero")
    F, G = bipoly_squarefree_part(F), bipoly_squarefree_part(G)
    common = bipoly_gcd(F, G)
    if common.total_degree > 0:
        raise NotCoprimeError(
            "the polynomials share a nonconstant factor; the solution set is infinite"
        )
    return F, G


def _projection(F, G, var):
    try:
        res = resultant(F, G, var)
    except BadVariableError:
        # neither depends on var: coprime, so no common root at all
        return ONE
    if not res:
        raise NotCoprimeError(f"the resultant with respect to {var} vanishes identically")
    return res


def project(F, G):
    """(Rx, Ry): Rx eliminates y and is a polynomial in x, Ry the reverse."""
    return _projection(F, G, "y"), _projection(F, G, "x")


def build_candidates(rx_roots, ry_roots):
    return [
        CandidateBox(ix, iy, i, j)
        for i, ix in enumerate(rx_roots)
        for j, iy in enumerate(ry_roots)
    ]


# -- box predicates ----------------------------------------------------------


def exclude_box(F, G, box):
    """True only when F or G provably has no zero on the box."""
    bx, by = box.bx, box.by
    return (
        iv_sign(eval_box(F, bx, by)) is not Sign.CONTAINS_ZERO
        or iv_sign(eval_box(G, bx, by)) is not Sign.CONTAINS_ZERO
    )


def _inside(image, iv):
    # degenerate sides must be met exactly, proper sides strictly inside
    if iv.is_point():
        return image.is_point() and image.lo == iv.lo
    return iv.lo < image.lo and image.hi < iv.hi


def newton_certify(F, G, box):
    """
    One interval Newton step N(B) = m - J(B)^-1 (F(m), G(m)), with J(B)^-1
    applied through the adjugate over the determinant.
    """
    if box.status is BoxStatus.EXCLUDED:
        raise ValueError("newton_certify called on an excluded box")
    bx, by = box.bx, box.by
    mx, my = bx.midpoint, by.midpoint
    fm = DyadicInterval.point(Dyadic.from_rational(F(mx, my)))
    gm = DyadicInterval.point(Dyadic.from_rational(G(mx, my)))
    a = eval_box(F.diff("x"), bx, by)
    b = eval_box(F.diff("y"), bx, by)
    c = eval_box(G.diff("x"), bx, by)
    d = eval_box(G.diff("y"), bx, by)
    det = a * d - b * c
    if iv_sign(det) is Sign.CONTAINS_ZERO:
        return NewtonVerdict.UNKNOWN
    step_x = iv_div(d * fm - b * gm, det, NEWTON_PRECISION)
    step_y = iv_div(a * gm - c * fm, det, NEWTON_PRECISION)
    nx = DyadicInterval.point(mx) - step_x
    ny = DyadicInterval.point(my) - step_y
    if _inside(nx, bx) and _inside(ny, by):
        return NewtonVerdict.CERTIFIED_UNIQUE
    return NewtonVerdict.UNKNOWN


def _check_box(task):
    F, G, box = task
    if exclude_box(F, G, box):
        return BoxStatus.EXCLUDED
    if newton_certify(F, G, box) is NewtonVerdict.CERTIFIED_UNIQUE:
        return BoxStatus.CERTIFIED_UNIQUE
    return BoxStatus.PENDING


# -- fibers ------------------------------------------------------------------


class FiberAnalyzer:
    """
    Exact fiber degrees over roots of the square-free x-resultant.

    p(alpha) == 0 is decided on h = gcd(p, Rx_sf): alpha is a root of h iff h
    changes sign over alpha's isolating interval, whose endpoints are
    non-roots of Rx_sf and hence of h. The gcds are computed once per
    polynomial and the endpoint signs for all fibers of a round are batched.
    """

    def __init__(self, F, G, rx_sf, fast_eval=True):
        if F.degree_in("y") < G.degree_in("y"):
            F, G = G, F
        self.F, self.G = F, G
        self.rx_sf = rx_sf
        self.fast_eval = fast_eval
        self.sres = subresultant_coeffs(F, G, "y") if F.degree_in("y") >= 1 else [ONE]
        self.lc_gcd = gcd_uni(F.lc_in("y"), G.lc_in("y"))
        self.lc_h = gcd_uni(self.lc_gcd, rx_sf)
        self._gcds = {}

    def _gcd(self, i):
        if i not in self._gcds:
            self._gcds[i] = gcd_uni(self.sres[i], self.rx_sf)
        return self._gcds[i]

    def _vanishing(self, h, alphas):
        """Indices of `alphas` (index -> IsolatingInterval) at which h vanishes."""
        if h.degree <= 0 or not alphas:
            return set()
        points = []
        for alpha in alphas.values():
            points.extend((alpha.lo,) if alpha.is_exact else (alpha.lo, alpha.hi))
        signs = iter(batch_signs(h, points, self.fast_eval))
        zero = set()
        for index, alpha in alphas.items():
            if alpha.is_exact:
                if next(signs) == 0:
                    zero.add(index)
            elif next(signs) * next(signs) < 0:
                zero.add(index)
        return zero

    def analyze(self, alphas):
        """FiberInfo for every entry of `alphas`, keyed the same way."""
        alphas = dict(alphas)
        result = {}
        for index in sorted(self._vanishing(self.lc_h, alphas)):
            result[index] = FiberInfo(alphas.pop(index), None, True)
        for i in range(1, len(self.sres)):
            if not alphas:
                break
            zero = self._vanishing(self._gcd(i), alphas)
            for index in sorted(set(alphas) - zero):
                result[index] = FiberInfo(alphas.pop(index), i, False)
        # every sres_i vanished: G(alpha, y) is identically zero
        for index, alpha in alphas.items():
            result[index] = FiberInfo(alpha, self.F.degree_in("y"), False)
        return result


def fiber_gcd_degree(F, G, rx_sf, alpha, fast_eval=True):
    return FiberAnalyzer(F, G, rx_sf, fast_eval).analyze({0: alpha})[0]


def fiber_filter(fiber, boxes_in_fiber):
    """
    Applies the fiber rules to every box over one root of the x-resultant.
    Returns "A" or "B" when a rule changed a status, else None.

    Rule A: k == 1 and one surviving box; it holds the fiber's only solution.
    Rule B: as many certified boxes as k; the other survivors hold nothing.
    """
    if fiber.degenerate:
        raise ValueError("fiber rules do not apply to a degenerate fiber")
    alive = [b for b in boxes_in_fiber if b.status is not BoxStatus.EXCLUDED]
    if fiber.k == 1 and len(alive) == 1 and alive[0].pending:
        alive[0].set_status(BoxStatus.CERTIFIED_FIBER)
        logger.debug(
            "rule A: fiber at x-root %s, k=1, certified box y-root %s",
            alive[0].x_index,
            alive[0].y_index,
        )
        return "A"
    certified = sum(1 for b in alive if b.status.certified)
    pending = [b for b in alive if b.pending]
    if pending and certified == fiber.k:
        for box in pending:
            box.set_status(BoxStatus.EXCLUDED)
        logger.debug(
            "rule B: fiber at x-root %s, k=%s certified, excluded %s boxes",
            pending[0].x_index,
            fiber.k,
            len(pending),
        )
        return "B"
    return None


# -- pipeline ----------------------------------------------------------------


def _refine_roots(roots, indices, p, fast_eval):
    """Halves roots[i] for each i in indices; returns True if any interval moved."""
    open_indices = [i for i in sorted(indices) if not roots[i].is_exact]
    if not open_indices:
        return False
    mids = [roots[i].as_interval().midpoint for i in open_indices]
    signs = batch_signs(p, mids, fast_eval)
    for i, s in zip(open_indices, signs):
        roots[i] = bisect(roots[i], p, mid_sign=s)
    return True


def _min_gap(roots):
    gaps = [(b.lo - a.hi).to_fraction() for a, b in zip(roots, roots[1:])]
    return min(gaps) if gaps else None


def _ms(start):
    return round((time.perf_counter() - start) * 1000, 3)


def _run_checks(F, G, boxes, executor):
    tasks = [(F, G, box) for box in boxes]
    if executor is None:
        return [_check_box(t) for t in tasks]
    return list(executor.map(_check_box, tasks, chunksize=max(1, len(tasks) // 16)))


def solve(F, G, config=None):
    """
    Isolates the real solutions of F = G = 0. Every certified box holds
    exactly one solution and every real solution lies in a certified or an
    undecided box.
    """
    config = config or Config()
    stats = SolveStats()
    start = time.perf_counter()
    F, G = preprocess(F, G)
    if F.degree_in("y") < G.degree_in("y"):
        F, G = G, F
    stats.f_magnitude, stats.g_magnitude = magnitude(F), magnitude(G)
    rx, ry = project(F, G)
    stats.rx_magnitude, stats.ry_magnitude = magnitude(rx), magnitude(ry)
    stats.timings["project"] = _ms(start)
    logger.info(
        "projected: deg Rx=%s, deg Ry=%s, bitlength %s/%s",
        rx.degree,
        ry.degree,
        stats.rx_magnitude.tau,
        stats.ry_magnitude.tau,
    )

    start = time.perf_counter()
    rx_sf, ry_sf = squarefree_part(rx), squarefree_part(ry)
    x_roots = [
        refine(iv, rx_sf, config.target_width)
        for iv in isolate_real_roots(rx_sf, stats.x_isolation)
    ]
    y_roots = [
        refine(iv, ry_sf, config.target_width)
        for iv in isolate_real_roots(ry_sf, stats.y_isolation)
    ]
    stats.x_roots, stats.y_roots = len(x_roots), len(y_roots)
    stats.min_sep_lower_bound = _min_gap(x_roots)
    stats.timings["isolate"] = _ms(start)
    logger.info("isolated %s x-roots and %s y-roots", len(x_roots), len(y_roots))

    start = time.perf_counter()
    boxes = build_candidates(x_roots, y_roots)
    stats.candidates = len(boxes)
    analyzer = FiberAnalyzer(F, G, rx_sf, config.fast_eval) if boxes else None
    fibers = {}
    stalled = False
    depth = 0
    executor = ProcessPoolExecutor(config.workers) if config.workers > 1 and boxes else None
    try:
        while True:
            pending = [b for b in boxes if b.pending]
            for box, status in zip(pending, _run_checks(F, G, pending, executor)):
                if status is not BoxStatus.PENDING:
                    box.set_status(status)

            columns = defaultdict(list)
            for box in boxes:
                columns[box.x_index].append(box)
            open_columns = [
                i for i, col in sorted(columns.items()) if any(b.pending for b in col)
            ]
            missing = {i: x_roots[i] for i in open_columns if i not in fibers}
            if missing:
                fibers.update(analyzer.analyze(missing))
                stats.fibers_analyzed = len(fibers)
            for i in open_columns:
                if not fibers[i].degenerate:
                    fiber_filter(fibers[i], columns[i])

            pending = [b for b in boxes if b.pending]
            logger.debug("round %s: %s boxes pending", depth, len(pending))
            if not pending or depth >= config.max_depth:
                break
            moved_x = _refine_roots(x_roots, {b.x_index for b in pending}, rx_sf, config.fast_eval)
            moved_y = _refine_roots(y_roots, {b.y_index for b in pending}, ry_sf, config.fast_eval)
            if not (moved_x or moved_y):
                stalled = True
                break
            depth += 1
            for box in pending:
                box.ix, box.iy, box.depth = x_roots[box.x_index], y_roots[box.y_index], depth
    finally:
        if executor is not None:
            executor.shutdown()

    for box in boxes:
        if box.pending:
            fiber = fibers.get(box.x_index)
            if fiber is not None and fiber.degenerate:
                note = BoxNote.LEADING_COEFF_DEGENERACY
            elif stalled:
                note = BoxNote.NO_PROGRESS
            else:
                note = BoxNote.MAX_DEPTH_REACHED
            box.set_status(BoxStatus.UNDECIDED, note)
            logger.warning(
                "box (%s, %s) undecided: %s", box.x_index, box.y_index, note.value
            )

    solutions = [b for b in boxes if b.status.certified]
    undecided = [b for b in boxes if b.status is BoxStatus.UNDECIDED]
    stats.excluded = sum(1 for b in boxes if b.status is BoxStatus.EXCLUDED)
    stats.certified_unique = sum(1 for b in solutions if b.status is BoxStatus.CERTIFIED_UNIQUE)
    stats.certified_fiber = len(solutions) - stats.certified_unique
    stats.undecided = len(undecided)
    stats.max_depth = depth
    stats.timings["validate"] = _ms(start)
    logger.info(
        "validated %s candidates: %s certified, %s undecided, depth %s",
        len(boxes),
        len(solutions),
        len(undecided),
        depth,
    )
    return SolveReport(solutions, undecided, stats, rx, ry)
