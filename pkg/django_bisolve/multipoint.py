"""
Multipoint evaluation by subproduct-tree remaindering.

Rational points are first brought to a common denominator s, so that the
tree is built from monic integer factors (z - s*q_i) and every remainder is
exact in Z[z]; the values are then p(q_i) = P(s*q_i) / s**deg p with
P(z) = s**deg p * p(z / s).

Going down the tree, a remainder is divided by a child's product with one
power-series inverse of the reversed child, so each division costs two
Kronecker products. The inverse of a child is read off its parent's:
1/rev(left) = rev(right)/rev(parent), and only lifted by Newton iteration
where the inherited precision falls short.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .arith import Dyadic
from .poly import eval_point, mul_coeffs

# fewer points than this are evaluated one by one with Horner
MULTIPOINT_CROSSOVER = 32
# nodes with at most this many points evaluate their remainder with Horner
LEAF_POINTS = 8
# quotients shorter than this are computed by schoolbook division
NEWTON_DIVISION_THRESHOLD = 16


def _to_fraction(q):
    return q.to_fraction() if isinstance(q, Dyadic) else Fraction(q)


@dataclass
class SubproductNode:
    zs: List[int]
    poly: List[int]
    left: Optional["SubproductNode"] = None
    right: Optional["SubproductNode"] = None

    @property
    def is_leaf(self):
        return self.left is None

    @property
    def degree(self):
        return len(self.poly) - 1


def build_subproduct_tree(zs):
    """
    Balanced tree over `zs`: a node holds prod (z - z_i) over its points and
    splits them in halves, left half first, down to LEAF_POINTS.
    """
    if len(zs) <= LEAF_POINTS:
        poly = [1]
        for z in zs:
            poly = mul_coeffs(poly, [-z, 1])
        return SubproductNode(list(zs), poly)
    mid = len(zs) // 2
    left, right = build_subproduct_tree(zs[:mid]), build_subproduct_tree(zs[mid:])
    return SubproductNode(list(zs), mul_coeffs(left.poly, right.poly), left, right)


def rem_monic(a, m):
    """a mod m for a monic m, by schoolbook division."""
    dm = len(m) - 1
    r = list(a)
    if len(r) - 1 < dm:
        return r
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            base = i - dm
            for j in range(dm):
                if m[j]:
                    r[base + j] -= c * m[j]
    return r[:dm]


def reversed_inverse(m, k, start=None):
    """
    1 / rev(m) mod t^k for a monic m. `start`, if given, must already be that
    inverse to a lower precision; Newton steps double it up to k.
    """
    rev = m[::-1]
    g = list(start) if start else [1]
    prec = len(g)
    while prec < k:
        prec = min(2 * prec, k)
        e = [-c for c in mul_coeffs(rev[:prec], g)[:prec]]
        e[0] += 2
        g = mul_coeffs(g, e)[:prec]
    return (g + [0] * k)[:k]


def rem_monic_newton(a, m, inv):
    """a mod m for a monic m, given inv = 1/rev(m) to at least len(a) - deg m terms."""
    d = len(m) - 1
    ql = len(a) - d
    if ql <= 0:
        return list(a)
    q_rev = mul_coeffs(a[::-1][:ql], inv[:ql])
    q = (q_rev + [0] * ql)[:ql][::-1]
    qm = mul_coeffs(q, m)
    return [a[i] - qm[i] for i in range(d)]


def _horner(coeffs, z):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _descend(node, rem, inv, out):
    """`rem` is P mod node.poly and `inv`, if set, 1/rev(node.poly) to some precision."""
    if node.is_leaf:
        out.extend(_horner(rem, z) for z in node.zs)
        return
    for child, sibling in ((node.left, node.right), (node.right, node.left)):
        need = len(rem) - child.degree
        # grandchildren divide by quotients of up to half the child's degree
        k = max(need, (child.degree + 1) // 2)
        child_inv = None
        if k >= NEWTON_DIVISION_THRESHOLD:
            start = None
            if inv:
                p = min(len(inv), k)
                start = mul_coeffs(inv[:p], sibling.poly[::-1][:p])[:p]
            child_inv = reversed_inverse(child.poly, k, start)
        if need >= NEWTON_DIVISION_THRESHOLD:
            child_rem = rem_monic_newton(rem, child.poly, child_inv)
        else:
            child_rem = rem_monic(rem, child.poly)
        _descend(child, child_rem, child_inv, out)


def remainder_tree_eval(coeffs, zs):
    """[P(z) for z in zs] for integer coefficients and integer points."""
    root = build_subproduct_tree(zs)
    need = len(coeffs) - root.degree
    k = max(need, (root.degree + 1) // 2)
    inv = reversed_inverse(root.poly, k) if k >= NEWTON_DIVISION_THRESHOLD else None
    if need >= NEWTON_DIVISION_THRESHOLD:
        rem = rem_monic_newton(coeffs, root.poly, inv)
    else:
        rem = rem_monic(coeffs, root.poly)
    out = []
    _descend(root, rem, inv, out)
    return out


def subproduct_tree_eval(p, points):
    points = [_to_fraction(q) for q in points]
    if not points:
        return []
    if p.is_zero():
        return [Fraction(0)] * len(points)
    d = p.degree
    scale = 1
    for q in points:
        scale = scale * q.denominator // math.gcd(scale, q.denominator)
    coeffs = [c * scale ** (d - k) for k, c in enumerate(p.coeffs)]
    zs = [q.numerator * (scale // q.denominator) for q in points]
    values = remainder_tree_eval(coeffs, zs)
    denom = scale**d
    return [Fraction(v, denom) for v in values]


def multipoint_eval(p, points):
    """
    values[i] == p(points[i]) exactly. Below MULTIPOINT_CROSSOVER points this
    is repeated Horner; above it the subproduct tree.
    """
    points = [_to_fraction(q) for q in points]
    if len(points) < MULTIPOINT_CROSSOVER:
        return [eval_point(p, q) for q in points]
    return subproduct_tree_eval(p, points)


def batch_signs(p, points, fast_eval=True):
    """Exact signs of p at every point, batched through the tree when it pays."""
    if fast_eval:
        values = multipoint_eval(p, points)
    else:
        values = [eval_point(p, _to_fraction(q)) for q in points]
    return [(v > 0) - (v < 0) for v in values]
