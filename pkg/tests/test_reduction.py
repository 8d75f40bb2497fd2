import random
from fractions import Fraction
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holant.errors import NotBipartite, SingularBasis, SingularSystem
from holant.field import I, ONE, ZERO, as_scalar, zeta
from holant.linalg import identity, mat, matmul
from holant.reduction import (
    IDENTITY,
    K,
    Basis2,
    DiagRatioInfinite,
    DiagRatioOrder,
    JordanBlock,
    Rank1,
    build_D2d,
    chain_power,
    d2d_gadget,
    eigenvalues,
    holographic_invariance_check,
    holographic_pair,
    jordan_classify,
    corner_block_matrix,
    n_power_identity,
    corner_block_func,
    transform_func,
    vandermonde_solve,
)
from holant.sampling import random_bipartite_network, random_func, random_orthogonal, random_scalar
from holant.tensor import Func, Gadget, eq, gadget_function, neq2

seeds = st.integers(0, 10_000)


def to_np(m):
    return np.array([[x.to_complex() for x in row] for row in m])


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 4))
def test_transform_matches_kron_power(seed, arity):
    rng = random.Random(seed)
    f = random_func(rng, arity)
    m = Basis2(((random_scalar(rng), random_scalar(rng)), (random_scalar(rng), random_scalar(rng))))
    got = np.array([x.to_complex() for x in transform_func(f, m).values])
    power = reduce(np.kron, [to_np(m.entries)] * arity)
    want = np.array([x.to_complex() for x in f.values]) @ power
    assert np.allclose(got, want)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_random_orthogonal_is_orthogonal(seed):
    m = random_orthogonal(random.Random(seed))
    assert matmul(m.transpose.entries, m.entries) == identity(2)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_holographic_invariance(seed):
    rng = random.Random(seed)
    pool = [random_func(rng, a) for a in (1, 2, 3)]
    g = random_bipartite_network(rng, pool, pool, max_edges=5)
    # any invertible basis works once the right side uses the inverse
    m = Basis2(((ONE, as_scalar(2)), (I, as_scalar(3))))
    assert holographic_invariance_check(g, m)
    assert holographic_invariance_check(g, random_orthogonal(rng))


def test_holographic_needs_sides():
    g = Gadget([eq(2)], [((0, 0), (0, 1))])
    with pytest.raises(NotBipartite):
        holographic_pair(g, K)
    g = Gadget([eq(2), eq(2)], [((0, 0), (0, 1)), ((1, 0), (1, 1))], (), (0, 1))
    with pytest.raises(NotBipartite):
        holographic_pair(g, K)


def test_singular_basis():
    with pytest.raises(SingularBasis):
        Basis2(((ONE, ONE), (ONE, ONE)))


def test_k_sends_eq2_to_twice_neq():
    assert transform_func(eq(2), K) == neq2().scale(2)
    assert transform_func(eq(2), IDENTITY) == eq(2)
    # =3 picks out the sum of the cubes of the two rows of K
    want = [ONE + (-I) ** (3 - bin(x).count("1")) * I ** bin(x).count("1") for x in range(8)]
    assert transform_func(eq(3), K) == Func(want)


@pytest.mark.parametrize("s", [ONE, as_scalar(-2), I, zeta(3), as_scalar(Fraction(5, 3))])
def test_n_power_identity(s):
    for k in range(1, 11):
        n_power_identity(s, k)


def test_n_matrix_regroups_q():
    s = as_scalar(7)
    q = corner_block_func(s, 1)
    n = corner_block_matrix(s)
    for x in range(16):
        b = [(x >> (3 - j)) & 1 for j in range(4)]
        assert n[2 * b[0] + b[2]][2 * b[1] + b[3]] == q.values[x]
    assert n == mat([[7, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])


def test_n_power_rejects_bad_k():
    with pytest.raises(ValueError):
        n_power_identity(1, 0)


def test_chain_power():
    b = Func([1, 1, 0, 1])
    assert chain_power(b, 5) == Func([1, 5, 0, 1])
    assert chain_power(neq2(), 2) == eq(2)


def test_vandermonde_against_numpy():
    pairs = [(1, 1), (2, 1), (3, 2), (I, 1)]
    x = [as_scalar(3), -ONE, as_scalar(Fraction(1, 2)), I]
    d = len(pairs) - 1
    rhs = [sum((as_scalar(a) ** j * as_scalar(b) ** (d - j) * x[j] for j in range(d + 1)), ZERO) for a, b in pairs]
    assert vandermonde_solve(pairs, rhs) == x
    a = np.array([[as_scalar(p).to_complex() ** j * as_scalar(q).to_complex() ** (d - j) for j in range(d + 1)] for p, q in pairs])
    assert np.allclose(np.linalg.solve(a, [r.to_complex() for r in rhs]), [v.to_complex() for v in x])


def test_vandermonde_singular():
    with pytest.raises(SingularSystem):
        vandermonde_solve([(1, 1), (2, 2)], [0, 0])
    with pytest.raises(SingularSystem):
        vandermonde_solve([(1, 0), (2, 1)], [0, 0])


@pytest.mark.parametrize("m,kind", [
    ([[1, 2], [2, 4]], Rank1),
    ([[1, 1], [0, 1]], JordanBlock),
    ([[2, 1], [-1, 0]], JordanBlock),
    ([[1, 0], [0, 1]], DiagRatioOrder),
    ([[0, 1], [1, 0]], DiagRatioOrder),
    ([[1, 0], [0, 2]], DiagRatioInfinite),
])
def test_jordan_classify(m, kind):
    assert isinstance(jordan_classify(Func.from_matrix(m), order_bound=50), kind)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8, 12])
def test_jordan_ratio_order(n):
    got = jordan_classify(Func.from_matrix([[1, 0], [0, zeta(n)]]))
    assert got == DiagRatioOrder(n)


def test_jordan_order_without_eigenvalues_in_field():
    # eigenvalues 1 +- sqrt(2) i; their ratio is not a root of unity
    got = jordan_classify(Func.from_matrix([[1, -2], [1, 1]]), order_bound=40)
    assert got == DiagRatioInfinite(40)


def test_eigenvalues():
    a, b = eigenvalues(Func.from_matrix([[2, 1], [1, 2]]))
    assert {a, b} == {as_scalar(3), ONE}


@pytest.mark.parametrize("d", [2, 3, 4])
def test_d2d_gadget(d):
    assert gadget_function(d2d_gadget(d)) == build_D2d(d)


def test_d2d_support():
    f = build_D2d(3)
    assert f.support() == frozenset({0b010101, 0b101010})
