"""Continued-fraction dictionary, collapse identities, and the ordered
K0 machinery.  Golden / sqrt(2) values are checked against exact
algebraic identities (no floats in any decision)."""

import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from pathcat.cat_paths import KSequence, alpha_beta, constant_k, unit
from pathcat.boundary import zdiff, zset
from pathcat.cf_order import (
    CFStream, IDENTITY, INF, IntMatrix2, K0GiElement, OrderedZ2Element,
    SWAP, T, bmat, cf_eval, class_of_basic, cmat, collapse,
    collapse_grand_product, collapse_zeros, cone_transform_check,
    connecting_matrix, convergents, is_positive_cone, k0_is_positive,
    k0_push, k_sequence_from_sigma, theta_from_k, theta_interval,
    verify_theta_dictionary,
)
from pathcat.errors import LevelOverflow, PathcatError

ONES = constant_k(1)
GOLDEN_K = KSequence((0,), (1,))
SQRT2_K = KSequence((0, 1), (0, 2))

GOLDEN_SIGMA = CFStream((), (1,))          # [1; 1, 1, ...] shifted into (0,1)
SQRT2_SIGMA = CFStream((1,), (2,))         # sqrt(2) = [1; 2, 2, ...]

# simple CF streams of the two thetas (frozen from the collapse dictionary)
GOLDEN_THETA_SIMPLE = CFStream((0, 2), (1,))     # theta = (3 - sqrt5)/2
SQRT2_THETA_SIMPLE = CFStream((0, 2, 1), (2,))   # theta = 2 - sqrt2 ... /cf


def test_cf_eval_basics():
    assert cf_eval([2]) == 2
    assert cf_eval([1, 2]) == Fraction(3, 2)
    assert cf_eval([1, 2, 2]) == Fraction(7, 5)       # sqrt(2) convergent
    assert cf_eval([0, 1, 1, 1, 1]) == Fraction(3, 5)  # golden convergent
    assert cf_eval([], tail=INF) is INF


def test_convergents_alternate_around_value():
    cs = convergents(SQRT2_SIGMA, 8)
    # sqrt(2): even-index convergents below, odd above; test via squares
    for i, c in enumerate(cs):
        assert (c * c < 2) == (i % 2 == 0)


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9),
       st.integers(-9, 9))
@settings(max_examples=100)
def test_matrix_inverse_roundtrip(a, b, c, d):
    m = IntMatrix2(a, b, c, d)
    if abs(m.det()) != 1:
        return
    assert m * m.inverse() == IDENTITY
    assert m.inverse() * m == IDENTITY


def test_collapse_zeros_examples():
    # [DERIVED] golden theta: [0,1,0,1,1,1,...] -> [0,2,1,1,...]
    assert collapse_zeros([0, 1, 0, 1, 1, 1, 1])[:5] == [0, 2, 1, 1, 1]
    # interior zero merges its neighbours: [x, 0, y] -> [x + y]
    assert collapse_zeros([3, 0, 4]) == [7]
    assert collapse_zeros([1, 2, 0, 2, 5]) == [1, 4, 5]


def test_k_sequence_from_sigma_examples():
    # [DERIVED via dictionary] sigma = sqrt(2): k = 0,1,0,2,0,2,...
    k = k_sequence_from_sigma(SQRT2_SIGMA, 0)
    assert [k[i] for i in range(1, 9)] == [0, 1, 0, 2, 0, 2, 0, 2]
    k = k_sequence_from_sigma(GOLDEN_SIGMA, 0)
    assert [k[i] for i in range(1, 7)] == [0, 1, 1, 1, 1, 1]


def test_theta_dictionary_roundtrip():
    for sigma, k1 in ((SQRT2_SIGMA, 0), (GOLDEN_SIGMA, 0),
                      (GOLDEN_SIGMA, 2), (SQRT2_SIGMA, 1)):
        assert verify_theta_dictionary(sigma, k1, 8, Fraction(1, 10 ** 3))


def test_theta_interval_nested_and_contains_value():
    th = theta_from_k(GOLDEN_K)
    prev = None
    for depth in range(1, 10):
        lo, hi = theta_interval(th, depth)
        assert lo < hi
        if prev:
            assert prev[0] <= lo and hi <= prev[1]
        prev = (lo, hi)
        # theta = (3 - sqrt5)/2: lo < theta iff (3 - 2 lo)^2 > 5
        assert (3 - 2 * lo) ** 2 > 5 > (3 - 2 * hi) ** 2


@given(st.integers(1, 6), st.integers(0, 5))
@settings(max_examples=60)
def test_collapse_identity_matrices(c, z):
    # T^z B(c) = cmat(z+1) cmat(c) is the one-group collapse step
    assert T.power(z) * bmat(c) == cmat(z + 1) * cmat(c)


def test_connecting_matrices_backward_levels():
    assert connecting_matrix(-2, ONES) == SWAP
    assert connecting_matrix(-1, ONES) == T
    assert connecting_matrix(0, ONES) == bmat(1)
    try:
        connecting_matrix(-3, ONES)
        assert False
    except LevelOverflow:
        pass


def test_collapse_groups_sqrt2():
    groups = collapse(SQRT2_K, 9)
    # k_2..k_9 = 1,0,2,0,2,0,2: groups (1,0), (2,0), (2,0), (2,0)... the
    # last group may be withheld when its zeros could continue
    assert groups[0].c_even == 1 and groups[0].c_odd == 2
    for g in groups[1:]:
        assert g.c_even == 2 and g.c_odd == 2
        assert g.b_product == g.c_product
    grand = collapse_grand_product(groups)
    assert grand.det() in (-1, 1)


def test_unit_class_pushes_to_k1_plus_two():
    for k in (ONES, GOLDEN_K, SQRT2_K):
        v = k0_push(OrderedZ2Element(1, 1, 0), 1, k)
        assert (v.m, v.n) == (k[1] + 2, k[1] + 1)


def test_class_of_basic():
    nu = alpha_beta(1, 2, 1)
    assert class_of_basic(zset(nu)) == OrderedZ2Element(0, 1, 2)
    lam = alpha_beta(4, 0, 1)
    assert class_of_basic(zdiff(nu, alpha_beta(1, 2, 2))) == \
        OrderedZ2Element(1, 0, 3)
    assert class_of_basic(zset(unit(1))) == OrderedZ2Element(1, 1, 0)


def test_is_positive_cone_golden():
    # theta' = 1/golden = (sqrt5 - 1)/2 ~ 0.618 via sigma = [1,1,1,...]
    sigma = CFStream((0,), (1,))
    assert is_positive_cone((1, 0), sigma)
    assert is_positive_cone((-1, 1), sigma)       # 1 - 0.618 > 0
    assert not is_positive_cone((-2, 1), sigma)   # 1 - 1.236 < 0
    assert is_positive_cone((2, -1), sigma)
    assert not is_positive_cone((-1, 0), sigma)
    assert is_positive_cone((0, 0), sigma)


def test_cone_transform():
    assert cone_transform_check(2, SQRT2_THETA_SIMPLE.shift())
    # wrong d0 must fail on a separating vector (slope between the cones)
    assert not cone_transform_check(5, SQRT2_THETA_SIMPLE.shift(),
                                    vectors=[(1, -4)])
    assert cone_transform_check(1, CFStream((1,), (1,)))


def brute_k0_positive(a, i, k, horizon=40):
    """Independent check of the positivity inequalities over a long,
    fixed window of levels (no first-positive shortcut)."""
    if a.n < 0:
        return False
    cmap = a.coeff_map()
    top = max((lvl for (lvl, _r) in cmap), default=i)
    for lvl in range(i + 1, top + horizon):
        for r in range(1, k[lvl] + 1):
            for c in cmap.get((lvl, r), (0,)):
                if c + a.m + a.n * (lvl - i - 1) < 0:
                    return False
    return True


def test_k0_positivity_against_brute_force():
    rng = random.Random(7)
    agree_pos = agree_neg = 0
    for _ in range(300):
        k = random.Random(rng.random()).choice([ONES, GOLDEN_K, SQRT2_K])
        i = rng.randint(0, 3)
        coeffs = {}
        for _ in range(rng.randint(0, 3)):
            lvl = rng.randint(i + 1, i + 6)
            if k[lvl] == 0:
                continue
            r = rng.randint(1, k[lvl])
            coeffs[(lvl, r)] = tuple(rng.randint(-4, 4)
                                     for _ in range(rng.randint(1, 3)))
        a = K0GiElement.make(coeffs, rng.randint(-4, 4), rng.randint(-3, 3))
        got = k0_is_positive(a, i, k)
        assert got == brute_k0_positive(a, i, k)
        agree_pos += got
        agree_neg += not got
    assert agree_pos > 10 and agree_neg > 10
