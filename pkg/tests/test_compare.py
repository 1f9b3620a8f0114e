import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infbranch import (Config, Leaf, apply_shear, approach_profile, branch_degree,
                       branches_convergent, hausdorff_estimate, infinity_branches,
                       leaves_convergent, parse_polynomial, prepare_pair,
                       same_asymptotic_behavior)
from infbranch.branches import branch_from_leaf
from infbranch.compare import PointMatchingError, leaf_pairing, sample_curve
from infbranch.errors import EmptySampleError

from conftest import APPROACH_FBAR, BEHAVIOR_FBAR, QUINTIC, PAIR_F, REFERENCE_CURVES, QUARTIC

P = parse_polynomial


def branches(text):
    f, _, _ = prepare_pair(P(text))
    return infinity_branches(f)


def at(bs, m):
    return next(b for b in bs if abs(b.point.m - m) < 1e-9)


def test_approaching_pair_leaves_converge():
    b, bbar = at(branches(PAIR_F), 0), at(branches(APPROACH_FBAR), 0)
    for k in range(3):
        assert leaves_convergent(Leaf(b, k), Leaf(bbar, k))
        assert not leaves_convergent(Leaf(b, k), Leaf(bbar, (k + 1) % 3))


def test_scaled_root_leaves_differ():
    [b] = branches("y^2 - x")
    [bb] = branches("y^2 - 2*x")
    assert not any(leaves_convergent(l1, l2) for l1 in b.leaves() for l2 in bb.leaves())


@pytest.mark.parametrize("name", list(REFERENCE_CURVES))
def test_leaf_converges_to_itself(name):
    for b in branches(REFERENCE_CURVES[name]):
        for leaf in b.leaves():
            assert leaves_convergent(leaf, leaf)


def test_quartic_parabola_witness():
    [bq], [bp] = branches(QUARTIC), branches("y^2 - x")
    w = branches_convergent(bq, bp)
    assert w is not None
    n = branch_degree(bq)
    assert abs(w.conjugation_root ** n - 1) <= 1e-12
    pairs = leaf_pairing(bq, bp)
    # L1, L3 <-> one leaf of the parabola and L2, L4 <-> the other
    assert sorted(pairs) == [(0, 0), (1, 1), (2, 0), (3, 1)]


def test_behavior_pair_witness_trivial_root():
    w = branches_convergent(at(branches(PAIR_F), 2), at(branches(BEHAVIOR_FBAR), 2))
    assert w is not None and w.conjugation_root == 1
    assert w.max_coefficient_deviation <= 1e-6


def test_different_exponents_no_witness():
    [b], [c] = branches("y^2 - x"), branches("y - x")
    assert branches_convergent(b, c) is None


def test_different_degree_no_witness():
    [b], [c] = branches("y^2 - x"), branches("y^3 - x")
    assert branches_convergent(b, c) is None


def test_behavior_pair_decision():
    r = same_asymptotic_behavior(P(PAIR_F), P(BEHAVIOR_FBAR))
    assert r.same and r.failure_stage is None and r.shear == 0
    assert {(round(p.point.m.real), p.branch_a, p.branch_b) for p in r.pairing} == {(0, 0, 0),
                                                                                   (2, 1, 1)}
    assert not r.unmatched_a and not r.unmatched_b


@pytest.mark.parametrize("name", list(REFERENCE_CURVES))
def test_curve_against_itself(name):
    r = same_asymptotic_behavior(P(REFERENCE_CURVES[name]), P(REFERENCE_CURVES[name]))
    assert r.same
    assert {(p.branch_a, p.branch_b) for p in r.pairing if p.branch_a == p.branch_b} == {
        (i, i) for i in range(len(r.branches_a))}


def test_modified_pair_fails_at_branches():
    r = same_asymptotic_behavior(P(PAIR_F), P(QUINTIC))
    assert r.verdict == "different"
    assert r.failure_stage == "branch_unmatched_forward"
    pa = sorted(round(p.m.real, 9) for p in r.points_a)
    pb = sorted(round(p.m.real, 9) for p in r.points_b)
    assert pa == pb == [0, 2]


def test_point_sets_differ():
    r = same_asymptotic_behavior(P("y^2 - x"), P("y - x"))
    assert r.verdict == "different" and r.failure_stage == "points"
    assert r.pairing == ()


def test_backward_stage():
    r = same_asymptotic_behavior(P("y"), P("x*y - 1"))
    assert r.failure_stage == "points"
    r = same_asymptotic_behavior(P("y*(y - x)"), P("y*(y - x) + y + 1"))
    assert r.verdict == "different"
    # the extra line y = x + 1 has no partner on the hyperbola
    r = same_asymptotic_behavior(P("y^2 - x^2 - 1"), P("(y - x)*(y + x)*(y - x - 1)"))
    assert r.failure_stage == "branch_unmatched_backward"


def test_extra_parallel_branch_unmatched():
    # y = x + 1 has no partner on the single line
    r = same_asymptotic_behavior(P("(y - x)*(y - x - 1)"), P("y - x"))
    assert r.verdict == "different" and r.failure_stage == "branch_unmatched_forward"


def test_ambiguous_points_raise():
    # points m=0 and m=1e-9 of one curve both sit within point tolerance of m=0
    with pytest.raises(PointMatchingError):
        same_asymptotic_behavior(P("y^2 - 1/1000000000*x*y + x"), P("y^2 + x"))


def test_report_invariant():
    for a, b in [(PAIR_F, BEHAVIOR_FBAR), (PAIR_F, QUINTIC), (QUARTIC, "y^2 - x")]:
        r = same_asymptotic_behavior(P(a), P(b))
        covered = ({p.branch_a for p in r.pairing} == set(range(len(r.branches_a)))
                   and {p.branch_b for p in r.pairing} == set(range(len(r.branches_b))))
        assert r.same == (covered and not r.unmatched_a and not r.unmatched_b)
        for p in r.pairing:
            n = branch_degree(r.branches_a[p.branch_a])
            assert abs(p.witness.conjugation_root ** n - 1) <= 1e-10
            assert p.witness.max_coefficient_deviation <= Config().compare_tol


TRIPLES = [(QUARTIC, "y^2 - x", "y^2 - x - 1"),
           ("y^2 - x", "y^2 - x - y", "y^2 - x + 3"),
           (PAIR_F, APPROACH_FBAR, BEHAVIOR_FBAR)]


@pytest.mark.parametrize("a, b, c", TRIPLES)
def test_symmetry_and_transitivity(a, b, c):
    A, B, C = branches(a), branches(b), branches(c)
    for x, y in [(A, B), (A, C), (B, C)]:
        for bx in x:
            for by in y:
                assert (branches_convergent(bx, by) is None) == (branches_convergent(by, bx) is None)
    for b0 in A:
        near = [b1 for b1 in B + C if branches_convergent(b0, b1) is not None]
        for i, b1 in enumerate(near):
            for b2 in near[i + 1:]:
                assert branches_convergent(b1, b2) is not None


@pytest.mark.parametrize("a, b", [(QUARTIC, "y^2 - x"), (PAIR_F, APPROACH_FBAR),
                                  (PAIR_F, QUINTIC)])
def test_conjugation_invariance(a, b):
    for ba in branches(a):
        for bb in branches(b):
            ref = branches_convergent(ba, bb) is not None
            for la in ba.leaves():
                for lb in bb.leaves():
                    got = branches_convergent(branch_from_leaf(la), branch_from_leaf(lb))
                    assert (got is not None) == ref


@pytest.mark.parametrize("a, b", [(PAIR_F, BEHAVIOR_FBAR), (PAIR_F, QUINTIC),
                                  ("y^2 - x", "y^2 - 2*x"), (QUARTIC, "y^2 - x")])
@pytest.mark.parametrize("lam", [1, 2])
def test_shear_invariance(a, b, lam):
    base = same_asymptotic_behavior(P(a), P(b)).verdict
    sheared = same_asymptotic_behavior(apply_shear(P(a), lam), apply_shear(P(b), lam))
    assert sheared.verdict == base


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(list(REFERENCE_CURVES.values())), st.fractions(-5, 5).filter(bool))
def test_scaling_keeps_zero_set(text, k):
    f = P(text)
    assert same_asymptotic_behavior(f, f * P(str(k))).same


def test_approach_same_curve_zero():
    f = P(PAIR_F)
    b = at(branches(PAIR_F), 0)
    # only the truncation error of r remains
    assert all(d <= 10 * rho ** -2 for rho, d in approach_profile(b, f, [50, 100, 200]))


def test_approach_parabola_closed_form():
    [b] = branches("y^2 - x")
    prof = approach_profile(b, P("y^2 - 2*x"), [1e2, 1e4])
    for rho, d in prof:
        assert abs(d - (math.sqrt(2) - 1) * math.sqrt(rho)) <= 1e-9 * math.sqrt(rho)
    assert prof[0][1] < prof[1][1]


def test_approach_rejects_bad_radius():
    [b] = branches("y^2 - x")
    with pytest.raises(ValueError):
        approach_profile(b, P("y^2 - x"), [0])


def test_hausdorff_identical_zero():
    f = P(PAIR_F)
    assert hausdorff_estimate(f, f, 10) == 0


def test_hausdorff_symmetric_exactly():
    f, g = P(PAIR_F), P(BEHAVIOR_FBAR)
    assert hausdorff_estimate(f, g, 10) == hausdorff_estimate(g, f, 10)


def test_hausdorff_parabola_growth():
    f, g = P("y^2 - x"), P("y^2 - 2*x")
    assert hausdorff_estimate(f, g, 40) >= 1.5 * hausdorff_estimate(f, g, 10)


def test_hausdorff_errors():
    with pytest.raises(ValueError):
        hausdorff_estimate(P("y"), P("y"), 0)
    with pytest.raises(ValueError):
        hausdorff_estimate(P("y"), P("y"), 1, grid_count=4)
    # every fiber root of y - 1000 lies outside |y| <= 10 R
    with pytest.raises(EmptySampleError):
        hausdorff_estimate(P("y - 1000"), P("y"), 1)


def test_sample_curve_shape():
    pts = sample_curve(P("y^2 - x"), 4, 9)
    assert pts.shape == (18, 4)
    for x, xi, yr, yi in pts:
        assert xi == 0 and abs(complex(yr, yi) ** 2 - x) < 1e-9


def test_many_to_one_pairing():
    # y = x and y ~ x + 1/x both converge to y = x; y ~ -1/x converges to y = 0
    r = same_asymptotic_behavior(P("(y - x)*(y^2 - x*y - 1)"), P("y*(y - x)"))
    assert r.same
    at_one = [p for p in r.pairing if abs(p.point.m - 1) < 1e-9]
    assert len(at_one) == 2 and len({p.branch_b for p in at_one}) == 1
