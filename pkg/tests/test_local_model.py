from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from canonhilb import linalg
from canonhilb.errors import HypothesisViolated
from canonhilb.local_model import (
    GammaModel,
    build_pencil,
    evaluate_pencil,
    fiber_dimension,
    find_smooth_witness,
    gamma_membership,
    generic_rank,
)
from canonhilb.sampling import SamplingPolicy
from canonhilb.surface_data import CupTensor, product_of_curves, random_tensor

vec = lambda n, lo=-9, hi=9: st.lists(st.integers(lo, hi), min_size=n, max_size=n)


def e(n, k):
    return [int(i == k) for i in range(n)]


def test_zero_tensor_pencil():
    pencil = build_pencil(CupTensor.from_entries(2, 3))
    assert all(x == 0 for s in pencil.slices for row in s for x in row)
    assert generic_rank(pencil).rank == 0


def test_product_of_curves_slices():
    pencil = build_pencil(product_of_curves(2, 2).tensor)
    for n, s in enumerate(pencil.slices):
        a, b = divmod(n, 2)
        upper = [(j, k) for j in range(4) for k in range(j + 1, 4) if s[j][k]]
        assert upper == [(a, 2 + b)] and s[a][2 + b] == 1 and s[2 + b][a] == -1


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 7), st.integers(0, 10**5), st.data())
def test_evaluations_are_skew_with_even_rank(p, q, seed, data):
    pencil = build_pencil(random_tensor(p, q, seed))
    z = data.draw(vec(p))
    b = evaluate_pencil(pencil, z)
    assert linalg.is_skew_symmetric(b)
    assert linalg.rank(b) % 2 == 0


def test_single_slice_evaluation():
    pencil = build_pencil(product_of_curves(2, 2).tensor)
    b = evaluate_pencil(pencil, e(4, 0))
    assert b[0][2] == 1 and b[2][0] == -1
    assert sum(abs(x) for row in b for x in row) == 2
    assert linalg.rank(b) == 2
    assert evaluate_pencil(pencil, [0] * 4) == [[0] * 4 for _ in range(4)]
    with pytest.raises(ValueError):
        evaluate_pencil(pencil, [1, 2])


def test_fiber_dimensions():
    pencil = build_pencil(product_of_curves(2, 2).tensor)
    assert fiber_dimension(pencil, [0] * 4) == 4
    assert fiber_dimension(pencil, (1, 2, 3, 4)) == 0
    assert fiber_dimension(pencil, e(4, 0)) == 2


@pytest.mark.parametrize("g1, g2", [(2, 2), (2, 3), (3, 2), (3, 4), (1, 5), (4, 4)])
def test_generic_rank_of_curve_products(g1, g2):
    # B(z) = [[0, M], [-M^T, 0]] with M the g1 x g2 matrix of z; rank 2 rank(M)
    pencil = build_pencil(product_of_curves(g1, g2).tensor)
    g = generic_rank(pencil)
    m = sympy.Matrix(g1, g2, list(g.witness_z))
    assert g.rank == 2 * m.rank() == 2 * min(g1, g2)


def test_generic_rank_needs_z_space():
    with pytest.raises(HypothesisViolated):
        generic_rank(build_pencil(product_of_curves(0, 3).tensor))
    with pytest.raises(HypothesisViolated):
        find_smooth_witness(build_pencil(CupTensor.from_entries(0, 2)))


def test_witness_reports():
    w = find_smooth_witness(build_pencil(product_of_curves(2, 2).tensor))
    assert (w.rank, w.fiber_dim, w.dim_M, w.chi, w.parity_ok) == (4, 0, 3, 1, True)
    w = find_smooth_witness(build_pencil(product_of_curves(2, 3).tensor))
    assert (w.rank, w.fiber_dim, w.dim_M, w.chi, w.parity_ok) == (4, 1, 6, 2, True)
    for p in (1, 2, 5):
        w = find_smooth_witness(build_pencil(CupTensor.from_entries(p, 0)))
        assert (w.rank, w.fiber_dim, w.dim_M, w.parity_ok) == (0, 0, p - 1, True)
        assert w.dim_M_tilde - 1 == w.dim_M


def test_witness_is_first_maximal():
    pencil = build_pencil(random_tensor(2, 6, 3, Fraction(1, 3)))
    policy = SamplingPolicy(trials=8, bounds=(10, 100, 1000), seed=4)
    w = find_smooth_witness(pencil, policy)
    for z in policy.points(2):
        if linalg.rank(evaluate_pencil(pencil, z)) == w.rank:
            assert z == w.witness_z
            break
    assert w.witness_z == find_smooth_witness(pencil, policy).witness_z


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 8), st.integers(0, 10**5), st.data())
def test_semicontinuity_and_parity(p, q, seed, data):
    pencil = build_pencil(random_tensor(p, q, seed))
    w = find_smooth_witness(pencil, crosscheck=True)
    assert w.rank % 2 == 0 and w.parity_ok
    assert (p + q - w.rank - 1 - (1 - q + p)) % 2 == 0
    z = data.draw(vec(p, -2, 2))
    assert fiber_dimension(pencil, z) >= q - w.rank


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 6), st.integers(0, 10**5), st.data())
def test_scaling_invariance(p, q, seed, data):
    pencil = build_pencil(random_tensor(p, q, seed))
    z = data.draw(vec(p))
    lam = data.draw(st.fractions(-5, 5, max_denominator=4).filter(bool))
    assert fiber_dimension(pencil, [lam * x for x in z]) == fiber_dimension(pencil, z)


def test_gamma_membership_examples():
    model = GammaModel(build_pencil(product_of_curves(2, 2).tensor))
    assert model.equation_count == 4
    assert gamma_membership(model, (3, -1, 2, 7), [0] * 4)
    assert gamma_membership(model, [0] * 4, (1, 2, 3, 4))
    assert gamma_membership(model, e(4, 0), e(4, 1))
    assert not gamma_membership(model, e(4, 0), e(4, 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6), st.integers(0, 10**5), st.data())
def test_gamma_bilinearity(p, q, seed, data):
    model = GammaModel(build_pencil(random_tensor(p, q, seed, Fraction(1, 3))))
    z = data.draw(vec(p, -2, 2))
    b = evaluate_pencil(model.pencil, z)
    # kernel vectors from sympy so the test exercises actual members
    kernel = [[Fraction(str(x)) for x in v] for v in sympy.Matrix(b).nullspace()]
    for t in kernel:
        assert gamma_membership(model, z, t)
        lam = data.draw(st.integers(1, 5))
        assert gamma_membership(model, [lam * x for x in z], t)
    if len(kernel) >= 2:
        assert gamma_membership(model, z, [a + c for a, c in zip(kernel[0], kernel[1])])
    t = data.draw(vec(q))
    lam = data.draw(st.integers(-3, 3).filter(bool))
    assert gamma_membership(model, z, t) == gamma_membership(model, [lam * x for x in z], t)
