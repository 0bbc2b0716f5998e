"""Symbolic boundary points, cylinder set algebra, and the P/Q/W
partitions.  Point counts at small resolutions are frozen from an
independent enumeration the first time they were computed."""

import pytest
from hypothesis import given, settings, strategies as st

from pathcat.cat_paths import (
    KSequence, L1, L2, alpha_beta, compose, constant_k, enumerate_words,
    make_path, unit,
)
from pathcat.boundary import (
    ABTail, GammaTail, OMEGA, canonical_point, contains, enumerate_points,
    make_point, partition_P, partition_Q, point_has_prefix, prepend,
    refinement_equations, refines, refines_all, strip_prefix,
    sweep_signatures, verify_identity, verify_partition, w_cover, zdiff,
    zset,
)
from pathcat.errors import InsufficientResolution, PathcatError

ONES = constant_k(1)
GOLDEN_K = KSequence((0,), (1,))
SQRT2_K = KSequence((0, 1), (0, 2))


def test_point_counts_frozen():
    # [DERIVED] distinct symbolic points for k = (1,1,...) at D = 1..4
    counts = [len(enumerate_points(d, ONES)) for d in range(1, 5)]
    assert counts == [4, 12, 33, 88]


def test_points_have_distinct_membership_signatures():
    # the quotient is faithful: every pair of emitted points is separated
    # by some cylinder of length < D
    d = 3
    pts = enumerate_points(d, ONES)
    sets = [zset(w) for length in range(1, d)
            for w in enumerate_words(ONES, length)]
    sigs = set()
    for x in pts:
        sigs.add(tuple(contains(e, x) for e in sets) + (repr(x.tail),
                                                        repr(x.prefix)))
    assert len(sigs) == len(pts)


def test_make_point_folds_trailing_l1():
    x = make_point(alpha_beta(1, 2, 1), ABTail(1, OMEGA), ONES, 8)
    assert x.prefix.is_unit
    assert x.tail == ABTail(3, OMEGA)


def test_canonical_point_strips_canonical_tail():
    # prefix gamma_1 gamma_2 with GammaTail == pure GammaTail at v_1
    x = make_point(make_path(1, [L2(1, 1), L2(2, 1)]), GammaTail(), ONES, 8)
    y = canonical_point(x)
    assert y.prefix.is_unit
    assert isinstance(y.tail, GammaTail)
    # idempotent
    assert canonical_point(y) == y


def test_prefix_strip_prepend_roundtrip():
    for x in enumerate_points(4, ONES):
        for w in enumerate_words(ONES, 2):
            if point_has_prefix(x, w):
                back = prepend(w, strip_prefix(x, w))
                assert canonical_point(back).prefix == \
                    canonical_point(x).prefix
                assert canonical_point(back).tail == canonical_point(x).tail


def test_contains_guard():
    x = make_point(unit(1), GammaTail(), ONES, 2)
    long_set = zset(alpha_beta(1, 3, 3))
    with pytest.raises(InsufficientResolution):
        contains(long_set, x)


def test_beta_infinity_properness_witness():
    # Z(beta^(i+1)) meets Z(alpha) yet contains beta^infty, which Z(alpha)
    # misses: the cylinders are not nested however deep you go
    from pathcat.cat_paths import mce
    beta_inf = make_point(unit(1), ABTail(0, OMEGA), ONES, 10)
    alpha = alpha_beta(1, 1, 0)
    for i in range(7):
        b = alpha_beta(1, 0, i + 1)
        assert mce(b, alpha) is not None
        assert point_has_prefix(beta_inf, b)
        assert not point_has_prefix(beta_inf, alpha)


def test_partition_P_small():
    for (m, n) in [(1, 0), (1, 1), (2, 1), (1, 2)]:
        p = partition_P(m, n, ONES)
        assert verify_partition(p, 3 * n + 6, ONES, root=m)


def test_partition_Q_small_all_k():
    for k in (ONES, GOLDEN_K, SQRT2_K):
        for n in (1, 2):
            q = partition_Q(n, k)
            assert verify_partition(q, 3 * n + 4, k)


def test_q2_refines_small_cylinders():
    q = partition_Q(2, ONES)
    exprs = [zset(w) for w in enumerate_words(ONES, 1)]
    exprs += [zdiff(w, compose(w, alpha_beta(w.source.index, 1, 0)))
              for w in enumerate_words(ONES, 2)]
    verdicts = refines_all(q, exprs, 10, ONES)
    assert all(verdicts)


def test_partition_refinement_failure_detected():
    # Z(alpha) splits the cell Z(beta)\Z(beta^2) (alpha beta = beta alpha),
    # so the coarse A_1-style partition does not refine Z(alpha)
    from pathcat.bratteli import ab_partition
    p1 = ab_partition(1, ONES)
    assert not refines(p1, zset(alpha_beta(1, 1, 0)), 9, ONES)


def test_refinement_equations_spot():
    for (m, p, q) in [(1, 0, 0), (1, 1, 0), (2, 0, 1), (1, 1, 1)]:
        for lhs, rhs in refinement_equations(m, p, q, ONES):
            assert verify_identity(lhs, list(rhs), p + q + 6, ONES,
                                   root=m)


def test_sweep_signature_partition_bit():
    # on a partition, each signature selects exactly one cell
    q = partition_Q(1, ONES)
    sigs = sweep_signatures(list(q.cells), 7, ONES)
    for sig in sigs:
        assert sum(sig) == 1
