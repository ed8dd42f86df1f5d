"""
Real root isolation for square-free integer polynomials: Descartes' rule of
signs with bisection over dyadic intervals, plus refinement by sign
evaluation.
"""
import enum
import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from .arith import Dyadic, DyadicInterval, midpoint
from .backend import MPZ
from .errors import ConstantPolynomialError, NotSquareFreeError, ZeroPolynomialError
from .poly import gcd_uni, horner_ratio

logger = logging.getLogger(__name__)


class IntervalKind(enum.Enum):
    OPEN_INTERVAL = "OPEN_INTERVAL"
    EXACT_POINT = "EXACT_POINT"


@dataclass(frozen=True)
class IsolatingInterval:
    """
    [lo, hi] holding exactly one real root of the polynomial fingerprinted by
    `poly_id`. OPEN_INTERVAL endpoints are non-roots with opposite signs;
    EXACT_POINT has lo == hi equal to the root. `lo_sign` caches the sign of
    the polynomial at lo (0 when unknown).
    """

    lo: Dyadic
    hi: Dyadic
    kind: IntervalKind
    poly_id: str
    lo_sign: int = 0

    @classmethod
    def exact(cls, value, poly_id):
        return cls(value, value, IntervalKind.EXACT_POINT, poly_id)

    @property
    def is_exact(self):
        return self.kind is IntervalKind.EXACT_POINT

    @property
    def width(self):
        return self.hi - self.lo

    def as_interval(self):
        return DyadicInterval(self.lo, self.hi)

    def contains(self, value):
        return self.as_interval().contains(value)


@dataclass
class IsolationStats:
    """Size of the Descartes bisection tree."""

    nodes: int = 0
    max_depth: int = 0


def root_bound(p):
    """Cauchy bound 1 + max |a_i| / |a_n|; every real root lies in [-B, B]."""
    if not p:
        raise ZeroPolynomialError("root bound of the zero polynomial")
    if p.degree < 1:
        raise ConstantPolynomialError("root bound of a constant polynomial")
    top = max(abs(c) for c in p.coeffs[:-1])
    return 1 + Fraction(top, abs(p.lc))


def sign_at(p, q):
    """Exact sign of p(q) in {-1, 0, 1}."""
    if isinstance(q, Dyadic):
        num, den = q.as_ratio()
    else:
        q = Fraction(q)
        num, den = q.numerator, q.denominator
    value = horner_ratio(p.coeffs, num, den)
    return (value > 0) - (value < 0)


def sign_variations(coeffs):
    count, prev = 0, 0
    for c in coeffs:
        if c:
            s = 1 if c > 0 else -1
            if prev and s != prev:
                count += 1
            prev = s
    return count


def taylor_shift_one(coeffs):
    """Coefficients of q(x + 1)."""
    a = [MPZ(c) for c in coeffs]
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return [int(c) for c in a]


def _compose_linear(p, a, w):
    """Integer coefficients of 2**(K*n) * p(a + w*x), K clearing the dyadic denominators."""
    k = max(0, -a.e, -w.e)
    A = a.m << (a.e + k)
    W = w.m << (w.e + k)
    n = p.degree
    acc = [p.coeffs[-1]]
    for i in range(n - 1, -1, -1):
        nxt = [0] * (len(acc) + 1)
        for j, c in enumerate(acc):
            nxt[j] += c * A
            nxt[j + 1] += c * W
        nxt[0] += p.coeffs[i] << (k * (n - i))
        acc = nxt
    return acc


def _variations_on_unit(q):
    # roots of q in (0, 1) <-> positive roots of (x + 1)^n q(1 / (x + 1))
    return sign_variations(taylor_shift_one(q[::-1]))


def descartes_count(p, iv):
    """
    Sign variations after mapping (0, 1) onto the open interval iv. An upper
    bound on the number of roots inside, exact when it is 0 or 1.
    """
    if not p:
        raise ZeroPolynomialError("Descartes count of the zero polynomial")
    if p.degree < 1 or iv.is_point():
        return 0
    return _variations_on_unit(_compose_linear(p, iv.lo, iv.width))


def _halve(q):
    # 2^n q(x / 2)
    n = len(q) - 1
    return [c << (n - i) for i, c in enumerate(q)]


def _nudge_gap(p, m, half):
    """
    Smallest delta = half / 2^j (j >= 1) such that m - delta and m + delta are
    non-roots and (m - delta, m), (m, m + delta) hold no root.
    """
    delta = half.half()
    while True:
        lo, hi = m - delta, m + delta
        if (
            sign_at(p, lo)
            and sign_at(p, hi)
            and descartes_count(p, DyadicInterval(lo, m)) == 0
            and descartes_count(p, DyadicInterval(m, hi)) == 0
        ):
            return delta
        delta = delta.half()


def isolate_real_roots(p, stats=None):
    """
    Sorted, pairwise disjoint isolating intervals, one per real root of the
    square-free polynomial p. Traversal is left-to-right depth-first, so the
    output (including which roots come out as EXACT_POINT) is reproducible.
    """
    if not p:
        raise ZeroPolynomialError("cannot isolate the roots of the zero polynomial")
    if p.degree < 1:
        return []
    if gcd_uni(p, p.derivative()).degree > 0:
        raise NotSquareFreeError("isolation requires a square-free polynomial")
    stats = stats if stats is not None else IsolationStats()
    poly_id = p.key()
    bound = root_bound(p)
    k = 0
    while (1 << k) < bound:
        k += 1
    start, width = Dyadic(-1, k), Dyadic(1, k + 1)
    stack = [("node", start, width, _compose_linear(p, start, width), 0)]
    found = []
    while stack:
        item = stack.pop()
        if item[0] == "emit":
            found.append(item[1])
            continue
        _, a, w, q, depth = item
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, depth)
        v = _variations_on_unit(q)
        if v == 0:
            continue
        if v == 1:
            lo_sign = (q[0] > 0) - (q[0] < 0)
            found.append(
                IsolatingInterval(a, a + w, IntervalKind.OPEN_INTERVAL, poly_id, lo_sign)
            )
            continue
        half = w.half()
        m = a + half
        left = _halve(q)
        right = taylor_shift_one(left)
        if right[0] == 0:
            delta = _nudge_gap(p, m, half)
            logger.debug("midpoint %s is a root; children nudged by %s", m, delta)
            rlo, llen = m + delta, half - delta
            stack.append(("node", rlo, llen, _compose_linear(p, rlo, llen), depth + 1))
            stack.append(("emit", IsolatingInterval.exact(m, poly_id)))
            stack.append(("node", a, llen, _compose_linear(p, a, llen), depth + 1))
        else:
            stack.append(("node", m, half, right, depth + 1))
            stack.append(("node", a, half, left, depth + 1))
    return _separate(found, p)


def _separate(intervals, p):
    # siblings may share an endpoint; bisect both until the closed intervals are apart
    out = list(intervals)
    for i in range(len(out) - 1):
        while out[i + 1].lo <= out[i].hi:
            out[i] = bisect(out[i], p)
            out[i + 1] = bisect(out[i + 1], p)
    return out


def bisect(iv, p, mid_sign=None):
    """
    One halving step. `mid_sign` may carry a precomputed sign of p at the
    midpoint (batched evaluation); otherwise it is evaluated here.
    """
    if iv.is_exact:
        return iv
    m = midpoint(iv.lo, iv.hi)
    s = sign_at(p, m) if mid_sign is None else mid_sign
    if s == 0:
        return IsolatingInterval.exact(m, iv.poly_id)
    lo_sign = iv.lo_sign or sign_at(p, iv.lo)
    if s == lo_sign:
        return replace(iv, lo=m, lo_sign=s)
    return replace(iv, hi=m, lo_sign=lo_sign)


def refine(iv, p, target_width):
    """Bisect until the width is at most target_width or the root is hit exactly."""
    target = Fraction(target_width)
    while not iv.is_exact and iv.width.to_fraction() > target:
        iv = bisect(iv, p)
    return iv
