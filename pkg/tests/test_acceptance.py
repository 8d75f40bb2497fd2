"""Acceptance checks, one test per numbered criterion.

Each test is timed against its budget.  The terminal summary prints one
PASS/FAIL line per criterion.
"""

import random
import time
from itertools import permutations
from contextlib import contextmanager
from fractions import Fraction

import pytest

from holant.field import I, ONE, ZERO, as_scalar, is_real, zeta
from holant.group import PX, PY, PZ, ProjMat, canonicalize_K4, pipeline_classify
from holant.linalg import add, identity, kron, mat, matmul, trace, transpose
from holant.reduction import K, K_TENSOR2_TABLE, as_basis, holographic_pair, corner_block_matrix, transform_func
from holant.sampling import (
    random_bipartite_network,
    random_closed_network,
    random_func,
    random_neq_network,
    random_orthogonal,
    ratio_families,
    sample_c_instance,
    sample_contaminated,
    sample_member,
    sample_ratio_family,
    sample_ratio_violator,
)
from holant.structure import (
    Certificate,
    RatioCase,
    Violation,
    Witness4,
    arity_reduce,
    compute_c_and_normalize,
    is_genuine_arity4,
    membership_in_lambda_genB,
    pauli_basis_func,
    pauli_expand,
    ratio_equations,
    ratio_hypothesis,
    ratio_lemma_check,
    reality_check,
    rewiring_check,
)
from holant.tensor import Func, contract_subgadget, eq, gadget_function, holant_value, neq2
from holant.verify import EXPECTED_LABELS, c4_group, group_fixtures, trace_reality_failures


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    print(f"elapsed {elapsed:.3f}s of {seconds}s")
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def rng_for(tag):
    return random.Random(f"acceptance:{tag}")


@pytest.mark.criterion(1, "basis K identities")
def test_k_identities():
    with budget(1.0):
        k = K.entries
        twice_neq = mat([[0, 2], [2, 0]])
        assert matmul(matmul(transpose(k), eq(2).matrix()), k) == twice_neq

        # row vector (=2) times the listed 4x4 table
        row = (ONE, ZERO, ZERO, ONE)
        via_table = [sum((row[r] * K_TENSOR2_TABLE[r][c] for r in range(4)), ZERO) for c in range(4)]
        assert via_table == [0, 2, 2, 0]
        assert transform_func(eq(2), K) == Func([0, 2, 2, 0])

        # the table is K (x) K up to a swap of its two middle rows
        kk = kron(k, k)
        assert K_TENSOR2_TABLE == (kk[0], kk[2], kk[1], kk[3])


@pytest.mark.criterion(2, "corner-block power identity")
def test_n_powers():
    samples = [as_scalar(1), as_scalar(-3), as_scalar(Fraction(2, 7)), I + 2, zeta(8)]
    assert len(set(samples)) == 5
    neq_sq = kron(neq2().matrix(), neq2().matrix())
    with budget(1.0):
        for s in samples:
            step = matmul(corner_block_matrix(s), neq_sq)
            p = identity(4)
            for k in range(1, 11):
                p = matmul(p, step)
                corner = [[k * s if (r, c) == (0, 3) else 0 for c in range(4)] for r in range(4)]
                assert p == add(identity(4), mat(corner)), (str(s), k)


@pytest.mark.criterion(3, "holographic invariance")
def test_holographic_invariance():
    rng = rng_for(3)
    pool = [eq(2), eq(3), neq2(), Func([1, 2, 0, 3]), Func([0, 1, 1, 0, 1, 0, 0, I]), random_func(rng, 3)]
    fixed = [[as_scalar("3/5"), as_scalar("4/5")], [as_scalar("4/5"), as_scalar("-3/5")]]
    with budget(5.0):
        for k in range(20):
            g = random_bipartite_network(rng, pool, pool, max_edges=6)
            assert len(g.edges) <= 6
            m = fixed if k % 2 == 0 else random_orthogonal(rng)
            basis = as_basis(m)
            assert basis.orthogonal
            assert holant_value(holographic_pair(g, basis)) == holant_value(g, method="literal")


@pytest.mark.criterion(4, "contraction associativity")
def test_associativity():
    rng = rng_for(4)
    pool = [random_func(rng, a) for a in (1, 2, 2, 3, 3, 4)]
    with budget(10.0):
        for _ in range(50):
            g = random_closed_network(rng, pool, max_edges=7)
            literal = holant_value(g, method="literal")
            subset = [v for v in range(len(g.funcs)) if rng.random() < 0.5] or [0]
            assert holant_value(contract_subgadget(g, subset)) == literal
            assert holant_value(g) == literal


@pytest.mark.criterion(5, "group classification fixtures")
def test_group_fixtures():
    with budget(5.0):
        fixtures = group_fixtures()
        for name, funcs in fixtures.items():
            rep = pipeline_classify(funcs, budget=2)
            assert str(rep.label) == EXPECTED_LABELS[name], name
        rep = pipeline_classify(fixtures["Q3"], budget=2)
        assert rep.elements == {PX, PY, PZ, ProjMat([[1, 0], [0, 1]])}
        canon = canonicalize_K4(rep.elements)
        assert canon.kind == "Q3"
        assert canon.basis.entries == identity(2)
        assert set(canon.elements) == {PX, PY, PZ}


@pytest.mark.criterion(6, "order-2 elements have trace zero")
def test_order2_trace_zero():
    count = 0
    for funcs in group_fixtures().values():
        rep = pipeline_classify(funcs, budget=2)
        for g in rep.elements:
            if not g.is_identity() and (g * g).is_identity():
                assert trace(g.det_one_lift()) == 0, g
                count += 1
    assert count > 0


def _violated_equation_holds(q, k, name):
    (a, c), (d, b) = q
    lookup = {eq: (lhs, rhs) for eq, lhs, rhs in ratio_equations(a, b, c, d, k)}
    lhs, rhs = lookup[name]
    return lhs == rhs


@pytest.mark.criterion(7, "ratio lemma")
def test_ratio_lemma():
    rng = rng_for(7)
    with budget(10.0):
        for k in (2, 3, 4):
            for case in ratio_families(k):
                for _ in range(200):
                    q = sample_ratio_family(rng, k, case)
                    got = ratio_lemma_check(q, k)
                    assert isinstance(got, RatioCase) and got.case == case, (k, case, q)
                    assert ratio_hypothesis(q, k)
            for _ in range(200):
                q = sample_ratio_violator(rng, k)
                got = ratio_lemma_check(q, k)
                assert isinstance(got, Violation), (k, q)
                assert got.equation
                assert not _violated_equation_holds(q, k, got.equation)


@pytest.mark.criterion(8, "trace reality over the Q3 closure")
def test_trace_reality():
    with budget(1.0):
        assert trace_reality_failures() == []


@pytest.mark.criterion(9, "rewiring ratio")
def test_rewiring():
    rng = rng_for(9)
    seen = 0
    allowed = {ONE, as_scalar(2), as_scalar(Fraction(1, 2))}
    with budget(10.0):
        while seen < 50:
            g = random_neq_network(rng, 4)
            right = [v for v, s in enumerate(g.sides) if s == 1]
            if len(right) < 2:
                continue
            e1, e2 = rng.sample(right, 2)
            res = rewiring_check(g, e1, e2)
            assert res.applicable, res.reason
            r = res.result
            assert r.both_zero or r.ratio in allowed, (r.before, r.after)
            seen += 1


@pytest.mark.criterion(10, "membership and arity-reduction round trips")
def test_round_trips():
    rng = rng_for(10)
    grp = c4_group()
    with budget(60.0):
        for _ in range(100):
            f = sample_member(rng, grp, 6)
            mem = membership_in_lambda_genB(f, grp)
            assert mem is not None and mem.reassemble() == f
            res = arity_reduce(f, grp)
            assert isinstance(res, Certificate)
            assert res.membership.reassemble() == f
        for _ in range(100):
            f, g4 = sample_contaminated(rng, grp, 6)
            assert membership_in_lambda_genB(f, grp) is None
            res = arity_reduce(f, grp)
            assert isinstance(res, Witness4)
            assert gadget_function(res.gadget) == res.func
            assert res.genuine and is_genuine_arity4(res.func)
            # the shuffle survives elimination, so compare up to variable order
            assert any(res.func.proportional_to(g4.permute(o)) is not None for o in permutations(range(4)))


def _nu_real(rng, pairs):
    """A unit phase times a real combination of at least two basis functions."""
    names = ["".join(rng.choice("IXYZ") for _ in range(pairs)) for _ in range(4)]
    names = list(dict.fromkeys(names))
    while len(names) < 2:
        names.append("".join(rng.choice("IXYZ") for _ in range(pairs)))
        names = list(dict.fromkeys(names))
    coeffs = [as_scalar(Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 3))) for _ in names]
    nu = zeta(8, rng.randrange(8))
    f = Func([0] * (1 << (2 * pairs)))
    for n, c in zip(names, coeffs):
        f = f + pauli_basis_func(n).scale(c * nu)
    return f, names, coeffs, nu


@pytest.mark.criterion(11, "Pauli expansion")
def test_pauli():
    rng = rng_for(11)
    with budget(10.0):
        for _ in range(100):
            f = random_func(rng, rng.choice((4, 6)))
            assert pauli_expand(f).reconstruct() == f
        for _ in range(20):
            f, names, coeffs, nu = _nu_real(rng, rng.choice((2, 3)))
            assert reality_check(pauli_expand(f))
            # multiply a single coefficient by i
            bump = pauli_basis_func(names[0]).scale(coeffs[0] * nu * (I - 1))
            assert not reality_check(pauli_expand(f + bump))


@pytest.mark.criterion(12, "recovering c and normalizing")
def test_c_normalization():
    rng = rng_for(12)
    cs = [as_scalar(2), as_scalar(-1), I]
    with budget(5.0):
        for k in range(50):
            c = cs[k % 3]
            h = sample_c_instance(rng, c, rng.choice((4, 6)))
            res = compute_c_and_normalize(h)
            # deviations are even, so c and -c fit equally well
            assert res.c in (c, -c)
            assert res.htilde == res.htilde.flip()
            assert res.squares_real and all(is_real(v * v) for v in res.htilde.values)
