import random
from fractions import Fraction

from django_bisolve.arith import Dyadic
from django_bisolve.multipoint import (
    LEAF_POINTS,
    MULTIPOINT_CROSSOVER,
    batch_signs,
    build_subproduct_tree,
    multipoint_eval,
    rem_monic,
    rem_monic_newton,
    remainder_tree_eval,
    reversed_inverse,
    subproduct_tree_eval,
)
from django_bisolve.poly import ZERO, UniPoly, eval_point, mul_coeffs


def monic_from_roots(zs):
    m = [1]
    for z in zs:
        m = mul_coeffs(m, [-z, 1])
    return m


def test_multipoint_examples():
    assert multipoint_eval(UniPoly([-1, 0, 1]), [0, 1, 2, -1]) == [-1, 0, 3, 0]
    assert multipoint_eval(UniPoly([1, 2]), [Fraction(1, 2), Fraction(-1, 3)]) == [
        2,
        Fraction(1, 3),
    ]
    assert multipoint_eval(UniPoly([1, 2, 3]), []) == []


def test_subproduct_tree_examples():
    assert subproduct_tree_eval(UniPoly([-1, 0, 1]), [0, 1, 2, -1]) == [-1, 0, 3, 0]
    assert subproduct_tree_eval(UniPoly([4]), [Fraction(1, 3), 7]) == [4, 4]
    assert subproduct_tree_eval(ZERO, [1, 2, 3]) == [0, 0, 0]


def test_subproduct_tree_shape():
    small = build_subproduct_tree([1, 2, 3])
    assert small.is_leaf
    assert small.poly == [-6, 11, -6, 1]

    zs = list(range(1, 4 * LEAF_POINTS + 2))
    root = build_subproduct_tree(zs)
    assert root.degree == len(zs)
    assert root.left.zs == zs[: len(zs) // 2]
    assert root.right.zs == zs[len(zs) // 2 :]
    assert root.poly == mul_coeffs(root.left.poly, root.right.poly)
    assert root.poly == monic_from_roots(zs)

    def leaves(node):
        return [node] if node.is_leaf else leaves(node.left) + leaves(node.right)

    assert [z for leaf in leaves(root) for z in leaf.zs] == zs
    assert all(1 <= len(leaf.zs) <= LEAF_POINTS for leaf in leaves(root))


def test_reversed_inverse():
    m = monic_from_roots([3, -5, 7, 2**20, -1])
    inv = reversed_inverse(m, 40)
    assert len(inv) == 40
    assert (mul_coeffs(m[::-1], inv)[:40]) == [1] + [0] * 39
    # 1/(1 - 2t) = sum 2^k t^k
    assert reversed_inverse([-2, 1], 6) == [1, 2, 4, 8, 16, 32]
    assert reversed_inverse([-2, 1], 6, start=[1, 2, 4]) == [1, 2, 4, 8, 16, 32]


def test_newton_division_matches_schoolbook():
    rng = random.Random(5)
    for _ in range(100):
        m = monic_from_roots([rng.randint(-(2**16), 2**16) for _ in range(rng.randint(1, 40))])
        a = [rng.randint(-(2**64), 2**64) for _ in range(rng.randint(0, 120))]
        inv = reversed_inverse(m, max(1, len(a) - len(m) + 1))
        assert rem_monic_newton(a, m, inv) == rem_monic(a, m)


def test_remainder_tree_on_large_inputs():
    rng = random.Random(17)
    for degree, count in [(200, 150), (64, 300), (300, 40)]:
        coeffs = [rng.randint(-(2**16), 2**16) for _ in range(degree)] + [1]
        zs = [rng.randint(-(2**16), 2**16) for _ in range(count)]
        expected = [eval_point(UniPoly(coeffs), z) for z in zs]
        assert remainder_tree_eval(coeffs, zs) == expected


def test_tree_agrees_with_horner():
    rng = random.Random(99)
    for case in range(1000):
        degree = rng.randint(0, 40)
        p = UniPoly([rng.randint(-(2**20), 2**20) for _ in range(degree + 1)])
        count = rng.randint(1, 2 * MULTIPOINT_CROSSOVER)
        if case % 2:
            points = [Fraction(rng.randint(-1000, 1000), rng.randint(1, 64)) for _ in range(count)]
        else:
            points = [Dyadic(rng.randint(-(2**12), 2**12), -rng.randint(0, 10)) for _ in range(count)]
        expected = [eval_point(p, q.to_fraction() if isinstance(q, Dyadic) else q) for q in points]
        assert subproduct_tree_eval(p, points) == expected
        assert multipoint_eval(p, points) == expected


def test_batch_signs_paths_agree():
    rng = random.Random(4)
    p = UniPoly([-2, 0, 1]) * UniPoly([3, -7, 1])
    points = [Fraction(rng.randint(-400, 400), 64) for _ in range(3 * MULTIPOINT_CROSSOVER)]
    points += [Fraction(7, 2), 0]
    fast = batch_signs(p, points, fast_eval=True)
    slow = batch_signs(p, points, fast_eval=False)
    assert fast == slow
    assert set(fast) <= {-1, 0, 1}


def test_batch_signs_finds_exact_zeros():
    p = UniPoly([-1, 0, 1])
    points = [Fraction(k, 4) for k in range(-8, 9)] * 3
    signs = batch_signs(p, points)
    for q, s in zip(points, signs):
        assert s == (0 if abs(q) == 1 else (1 if abs(q) > 1 else -1))
