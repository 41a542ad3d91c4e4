import random

import numpy as np
import pytest

from twistkit import (
    DimensionMismatchError,
    GF,
    GammaFamily,
    QQ,
    certify,
    direct_sum,
    duplicate_algebra,
    kn_algebra,
    kn_conditions,
    make_kn,
    make_ncd,
    make_quantum_duplicate,
    make_truncated,
    ncd_conditions,
    ncd_predicate,
    qdup_conditions,
    qdup_predicate,
    quadratic_algebra,
    quiver_of,
    truncated_conditions,
    truncated_from_first_row,
    truncated_poly_algebra,
)
from twistkit.twisting import direct_ok, oracle_ok

F2 = GF(2)
F3 = GF(3)


def seeded_pairs(field, count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        f = [[rng.randrange(field.p) for _ in range(2)] for _ in range(2)]
        d = [[rng.randrange(field.p) for _ in range(2)] for _ in range(2)]
        out.append((f, d))
    return out


# -- duplicates -------------------------------------------------------------------


def test_ncd_flip_case():
    a = kn_algebra(QQ, 2)
    cand = make_ncd(a, QQ.identity(2), QQ.zeros((2, 2)))
    assert cand.family == GammaFamily.flip(a, duplicate_algebra(QQ))
    assert certify(cand).verified
    assert ncd_predicate(a, QQ.identity(2), QQ.zeros((2, 2)))


def test_ncd_idempotent_endomorphism_accepted():
    a = kn_algebra(QQ, 2)
    f = [[1, 0], [1, 0]]
    assert ncd_predicate(a, f, [[0, 0], [0, 0]])
    assert certify(make_ncd(a, f, [[0, 0], [0, 0]])).verified


def test_ncd_nonvanishing_delta_at_unit_rejected():
    a = kn_algebra(QQ, 2)
    f = QQ.identity(2)
    delta = QQ.identity(2)
    report = ncd_conditions(a, f, delta)
    assert "ncd.4" in report.conditions()
    cand = make_ncd(a, f, delta)
    assert not direct_ok(cand.family)


def test_ncd_idempotency_of_delta_is_not_redundant():
    """Two data sets satisfy every condition except the idempotency of the
    derivation part; they are not twisting maps, which pins that condition
    as independent."""
    a = kn_algebra(F3, 2)
    for f, delta in [
        ([[0, 1], [0, 1]], [[2, 1], [0, 0]]),
        ([[1, 0], [1, 0]], [[0, 0], [1, 2]]),
    ]:
        report = ncd_conditions(a, f, delta)
        tags = report.conditions()
        # endomorphism, derivation and mixed-composition conditions all hold,
        # yet the data is not a twisting map: idempotency (and its derived
        # square condition) fail
        assert "ncd.1" in tags
        assert tags.isdisjoint({"ncd.2", "ncd.4", "ncd.5", "ncd.6", "ncd.7"})
        assert not direct_ok(make_ncd(a, f, delta).family)
        assert not oracle_ok(make_ncd(a, f, delta).family)


def test_ncd_implications_on_sampled_pairs():
    a = kn_algebra(F3, 2)
    hit_12 = hit_56 = 0
    for f, delta in seeded_pairs(F3, 200, seed=11):
        tags = ncd_conditions(a, f, delta).conditions()
        if "ncd.1" not in tags and "ncd.2" not in tags:
            assert "ncd.3" not in tags
            hit_12 += 1
        if "ncd.5" not in tags and "ncd.6" not in tags:
            assert "ncd.4" not in tags
            hit_56 += 1
    assert hit_12 and hit_56


def test_ncd_verdict_equals_predicate_sampled():
    a = kn_algebra(F3, 2)
    for f, delta in seeded_pairs(F3, 200, seed=12):
        assert ncd_predicate(a, f, delta) == direct_ok(make_ncd(a, f, delta).family)


# -- quantum duplicates --------------------------------------------------------------


def test_qdup_carrier_at_one_zero_is_duplicate():
    assert quadratic_algebra(QQ, 1, 0) == duplicate_algebra(QQ)


def test_qdup_swap_example():
    a = kn_algebra(QQ, 2)
    swap = [[0, 1], [1, 0]]
    zero = [[0, 0], [0, 0]]
    assert qdup_predicate(a, 0, -1, swap, zero)
    assert certify(make_quantum_duplicate(a, 0, -1, swap, zero)).verified


def test_qdup_swap_with_delta_f_fails():
    a = kn_algebra(QQ, 2)
    swap = [[0, 1], [1, 0]]
    report = qdup_conditions(a, 0, -1, swap, swap)
    assert "qdup.swap" in report.conditions()
    assert not qdup_predicate(a, 0, -1, swap, swap)
    assert not direct_ok(make_quantum_duplicate(a, 0, -1, swap, swap).family)


def test_qdup_at_one_zero_matches_ncd_sampled():
    a = kn_algebra(F3, 2)
    for f, delta in seeded_pairs(F3, 150, seed=13):
        assert qdup_predicate(a, 1, 0, f, delta) == ncd_predicate(a, f, delta)


def test_qdup_verdict_equals_predicate_sampled():
    a = kn_algebra(F3, 2)
    for alpha, beta in [(0, -1), (1, 1)]:
        for f, delta in seeded_pairs(F3, 120, seed=14 + alpha):
            cand = make_quantum_duplicate(a, alpha, beta, f, delta)
            assert qdup_predicate(a, alpha, beta, f, delta) == direct_ok(cand.family)


# -- K^n twists -------------------------------------------------------------------------


def test_kn_diagonal_identity_is_flip():
    a = kn_algebra(QQ, 2)
    eye = QQ.identity(2)
    zero = QQ.zeros((2, 2))
    cand = make_kn(a, 2, [[eye, zero], [zero, eye]])
    assert cand.family == GammaFamily.flip(a, kn_algebra(QQ, 2))
    assert kn_conditions(a, 2, cand.family.gamma).ok
    assert certify(cand).verified


def test_kn_dictionary_image_verifies():
    a = kn_algebra(QQ, 2)
    f = QQ.asarray([[1, 0], [1, 0]])
    eye = QQ.identity(2)
    zero = QQ.zeros((2, 2))
    grid = [[eye, QQ.sub(eye, f)], [zero, f]]
    cand = make_kn(a, 2, grid)
    assert kn_conditions(a, 2, cand.family.gamma).ok
    assert certify(cand).verified


def test_kn_non_idempotent_diagonal_rejected():
    a = kn_algebra(F3, 2)
    bad = F3.asarray([[1, 1], [0, 1]])  # not idempotent
    eye = F3.identity(2)
    grid = [[bad, F3.sub(eye, bad)], [F3.zeros((2, 2)), eye]]
    report = kn_conditions(a, 2, make_kn(a, 2, grid).family.gamma)
    assert "kn.1" in report.conditions()
    assert not direct_ok(make_kn(a, 2, grid).family)


def test_kn_conditions_match_checker_sampled():
    a = kn_algebra(F2, 2)
    rng = random.Random(77)
    for _ in range(200):
        grid = F2.asarray(
            [[[[rng.randrange(2) for _ in range(2)] for _ in range(2)] for _ in range(2)] for _ in range(2)]
        )
        cand = make_kn(a, 2, grid)
        assert kn_conditions(a, 2, grid).ok == direct_ok(cand.family)


# -- quivers -----------------------------------------------------------------------------


def test_quiver_of_flip_is_loops_only():
    a = kn_algebra(QQ, 2)
    cand = certify(make_kn(a, 2, [[QQ.identity(2), QQ.zeros((2, 2))], [QQ.zeros((2, 2)), QQ.identity(2)]]))
    quiver, rep = quiver_of(cand)
    assert quiver.arrows == ((0, 0), (1, 1))
    assert set(rep.maps) == {(0, 0), (1, 1)}


def test_quiver_arrows_match_nonzero_pattern():
    a = kn_algebra(F2, 2)
    rng = random.Random(99)
    seen_nontrivial = 0
    for _ in range(80):
        grid = F2.asarray(
            [[[[rng.randrange(2) for _ in range(2)] for _ in range(2)] for _ in range(2)] for _ in range(2)]
        )
        fam = make_kn(a, 2, grid).family
        quiver, rep = quiver_of(fam)
        expected = tuple(
            (j, i) for j in range(2) for i in range(2) if not F2.is_zero(grid[j, i])
        )
        assert quiver.arrows == expected
        seen_nontrivial += bool(expected)
    assert seen_nontrivial


def test_quiver_of_direct_sum_has_no_cross_arrows():
    a = kn_algebra(F2, 2)
    eye = F2.identity(2)
    zero = F2.zeros((2, 2))
    theta = certify(make_kn(a, 2, [[eye, zero], [zero, eye]]))
    ups = certify(make_kn(a, 1, [[eye]]))
    psi = direct_sum(theta, ups)
    quiver, _ = quiver_of(psi)
    for source, target in quiver.arrows:
        assert (source < 2) == (target < 2)


def test_quiver_rejects_other_carriers():
    a = kn_algebra(QQ, 2)
    cand = make_ncd(a, QQ.identity(2), QQ.zeros((2, 2)))
    with pytest.raises(DimensionMismatchError):
        quiver_of(cand)


# -- truncated twists ----------------------------------------------------------------------


def test_truncated_flip_verifies():
    a = kn_algebra(F2, 2)
    flip = GammaFamily.flip(a, truncated_poly_algebra(F2, 3))
    assert truncated_conditions(a, 3, flip.gamma).ok
    assert certify(flip).verified


def test_truncated_derivation_from_first_row_matches_oracle():
    a = kn_algebra(F2, 2)
    rng = random.Random(31337)
    eye = F2.identity(2)
    zero = F2.zeros((2, 2))
    nilpotent = F2.asarray([[0, 1], [0, 0]])
    rows = [[zero, eye, zero], [zero, eye, nilpotent], [zero, eye, eye]]
    rows += [
        [F2.asarray([[rng.randrange(2) for _ in range(2)] for _ in range(2)]) for _ in range(3)]
        for _ in range(150)
    ]
    accepted = 0
    for row in rows:
        cand = truncated_from_first_row(a, 3, row)
        verdict = direct_ok(cand.family)
        assert verdict == oracle_ok(cand.family)
        assert verdict == truncated_conditions(a, 3, cand.family.gamma).ok
        accepted += verdict
    assert accepted > 0


def test_truncated_convolution_violation_tagged():
    a = kn_algebra(F2, 2)
    nilpotent = F2.asarray([[0, 1], [0, 0]])
    eye = F2.identity(2)
    zero = F2.zeros((2, 2))
    cand = truncated_from_first_row(a, 3, [nilpotent, eye, zero])
    report = truncated_conditions(a, 3, cand.family.gamma)
    assert "trunc.3" in report.conditions()
    assert not direct_ok(cand.family)


def test_truncated_first_row_must_satisfy_row_zero():
    a = kn_algebra(F2, 2)
    grid = F2.zeros((3, 3, 2, 2))
    grid[0, 1] = F2.identity(2)  # exponent-zero row leaks upward
    grid[0, 0] = F2.identity(2)
    report = truncated_conditions(a, 3, grid)
    assert "trunc.1" in report.conditions()
