"""The AF chain: E_i/F_i data, the A_i u B_i partitions, telescoping,
and diagram equivalence against the simple-CF chain."""

import pytest

from pathcat.cat_paths import KSequence, alpha_beta, constant_k
from pathcat.boundary import refines, refines_all, verify_partition, zset
from pathcat.bratteli import (
    BratteliDiagram, ab_partition, chain_effros_shen, chain_from_k,
    ef_counts, ef_sets, emit, equivalent, parse_diagram_json,
    simple_coeffs, telescope,
)
from pathcat.cf_order import IntMatrix2, bmat, theta_from_k
from pathcat.errors import BadCuts, PathcatError

ONES = constant_k(1)
GOLDEN_K = KSequence((0,), (1,))
SQRT2_K = KSequence((0, 1), (0, 2))


def test_ef_counts_frozen():
    # [DERIVED] (1,1), (3,2), (8,5), (21,13) for k = (1,1,...)
    assert [ef_counts(i, ONES) for i in range(4)] == \
        [(1, 1), (3, 2), (8, 5), (21, 13)]


def test_ef_sets_match_counts():
    for k in (ONES, GOLDEN_K, SQRT2_K):
        for i in range(6):
            ef = ef_sets(i, k)
            assert (len(ef.E), len(ef.F)) == ef_counts(i, k)
            for mu in ef.E:
                assert mu.length == i
            for nu in ef.F:
                assert nu.length == i + 1


def test_ab_partition_and_refinement():
    prev = None
    for i in range(4):
        p = ab_partition(i, ONES)
        res = i + 7
        assert verify_partition(p, res, ONES)
        if prev is not None:
            assert all(refines_all(p, list(prev.cells), res, ONES))
        prev = p


def test_diagram_validation():
    with pytest.raises(PathcatError):
        BratteliDiagram(((2, 1), (5, 3)), (IntMatrix2(1, 0, 0, 1),))
    with pytest.raises(PathcatError):
        BratteliDiagram(((1, 1), (1, 1)),
                        (IntMatrix2(1, 1, 0, 0),))  # zero row


def test_telescope_and_bad_cuts():
    d = chain_from_k(ONES, 5)
    t = telescope(d, [0, 2, 4])
    assert t.levels == (d.levels[0], d.levels[2], d.levels[4])
    assert t.edges[0] == bmat(1) * bmat(1)
    for cuts in ([], [4, 2], [0, 7], [-1, 2]):
        with pytest.raises(BadCuts):
            telescope(d, cuts)


def test_simple_coeffs():
    assert simple_coeffs(theta_from_k(GOLDEN_K), 6) == [0, 2, 1, 1, 1, 1, 1]
    assert simple_coeffs(theta_from_k(SQRT2_K), 6) == [0, 2, 1, 2, 2, 2, 2]


def test_equivalence_both_irrationals():
    for k in (GOLDEN_K, SQRT2_K):
        d1 = chain_from_k(k, 20)
        d2 = chain_effros_shen(theta_from_k(k), 20)
        assert equivalent(d1, d2)
        assert equivalent(d1, d1)
        # telescoping is invisible to equivalence
        assert equivalent(d1, telescope(d1, [0, 2, 4, 6, 8, 10]))


def test_inequivalent_chains():
    d1 = chain_from_k(GOLDEN_K, 16)
    d2 = chain_effros_shen(theta_from_k(SQRT2_K), 16)
    assert not equivalent(d1, d2)


def test_emit_roundtrip_and_dot():
    d = chain_from_k(SQRT2_K, 6)
    assert parse_diagram_json(emit(d, "json")) == d
    dot = emit(d, "dot")
    assert dot.startswith("digraph") and "->" in dot
    with pytest.raises(PathcatError):
        emit(d, "svg")
