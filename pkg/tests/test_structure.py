import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holant.errors import HypothesisViolated, NoConsistentC, NotFoundWithinBound, OddArity, RootOutsideField
from holant.field import I, ONE, ZERO, as_scalar, zeta
from holant.group import Q3, ProjMat, group_closure
from holant.sampling import (
    random_func,
    random_genuine4,
    random_neq_network,
    random_pairing,
    random_scalar,
    sample_c_instance,
    sample_contaminated,
    sample_member,
    sample_ratio_violator,
)
from holant.structure import (
    Certificate,
    Inconclusive,
    RatioCase,
    Violation,
    Witness4,
    along,
    arity_reduce,
    assemble,
    classify_support,
    compute_c_and_normalize,
    decompose_arity4,
    deviation,
    eo_restrict,
    eo_symmetry_check,
    from_pairs,
    is_genuine_arity4,
    membership_in_lambda_genB,
    pairings,
    pauli_basis_func,
    pauli_expand,
    power_recurrence,
    ratio_hypothesis,
    ratio_lemma_check,
    reality_check,
    rewiring_check,
    rewiring_step,
    support_class,
)
from holant.tensor import Func, Gadget, eq, gadget_function, neq2

seeds = st.integers(0, 10_000)
C4 = group_closure([ProjMat([[1, 0], [0, I]])])
C3 = group_closure([ProjMat([[1, 0], [0, zeta(3)]])])


def bits(x, d):
    return [(x >> (d - 1 - k)) & 1 for k in range(d)]


# -- pairings and decomposition -------------------------------------------

@pytest.mark.parametrize("n,count", [(0, 1), (2, 1), (4, 3), (6, 15), (8, 105)])
def test_pairing_counts(n, count):
    ps = pairings(range(n))
    assert len(ps) == count == len(set(ps))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_along_round_trip(seed):
    rng = random.Random(seed)
    f = random_func(rng, 6)
    p = random_pairing(rng, 6)
    assert from_pairs(along(f, p), p) == f


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_decompose_products(seed):
    rng = random.Random(seed)
    a, b = random_func(rng, 2, zero_prob=0), random_func(rng, 2, zero_prob=0)
    p = rng.choice([((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))])
    f = assemble(ONE, p, [a, b])
    d = decompose_arity4(f)
    assert d is not None
    assert assemble(ONE, d.pairing, [d.left, d.right]) == f


def test_genuine_examples():
    assert is_genuine_arity4(eq(4))
    assert not is_genuine_arity4(eq(2).tensor(neq2()))
    with pytest.raises(ValueError):
        decompose_arity4(eq(2))


# -- support shapes ---------------------------------------------------------

def oracle_support_kind(support, d):
    support = frozenset(support)
    for p in pairings(range(d)):
        tied = {x for x in range(1 << d) if all(bits(x, d)[u] == bits(x, d)[v] for u, v in p)}
        if support == tied:
            return "Antelope"
        for u, v in p:
            for b in (0, 1):
                if support == {x for x in tied if bits(x, d)[u] == b}:
                    return f"Rhino{b}"
    return "Other"


def test_every_arity4_support_matches_oracle():
    # the oracle only accepts sets of size 2 or 4 built from tied pairs
    shaped = {}
    for p in pairings(range(4)):
        for s in ({x for x in range(16) if all(bits(x, 4)[u] == bits(x, 4)[v] for u, v in p)},):
            shaped[frozenset(s)] = "Antelope"
            for u, v in p:
                for b in (0, 1):
                    shaped[frozenset(x for x in s if bits(x, 4)[u] == b)] = f"Rhino{b}"
    for mask in range(1 << 16):
        supp = [x for x in range(16) if mask >> x & 1]
        assert classify_support(supp, 4).kind == shaped.get(frozenset(supp), "Other")
    for s, kind in shaped.items():
        assert oracle_support_kind(s, 4) == kind


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_arity6_support_matches_oracle(seed):
    rng = random.Random(seed)
    p = random_pairing(rng, 6)
    base = [x for x in range(64) if all(bits(x, 6)[u] == bits(x, 6)[v] for u, v in p)]
    choice = rng.randrange(3)
    if choice == 0:
        supp = base
    elif choice == 1:
        u, v = rng.choice(p)
        b = rng.randrange(2)
        supp = [x for x in base if bits(x, 6)[u] == b]
    else:
        supp = rng.sample(range(64), rng.randint(1, 10))
    assert classify_support(supp, 6).kind == oracle_support_kind(supp, 6)


def test_support_class_details():
    sc = support_class(eq(2).tensor(eq(2)))
    assert sc.kind == "Antelope" and sc.pairing == ((0, 1), (2, 3))
    f = Func.from_support(4, {"0000": 1, "0011": 2})
    sc = support_class(f)
    assert sc.kind == "Rhino0" and sc.horn == (0, 1)
    assert support_class(eq(4)).kind == "Other"
    with pytest.raises(OddArity):
        classify_support([0], 3)


# -- EO -------------------------------------------------------------------

def test_deviation():
    assert deviation("0011") == 0
    assert deviation("111") == 3
    assert deviation(0b1110, 4) == 2
    with pytest.raises(ValueError):
        deviation("012")


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_eo_restrict(seed):
    f = random_func(random.Random(seed), 4)
    e = eo_restrict(f)
    for x in range(16):
        assert e.values[x] == (f.values[x] if bin(x).count("1") == 2 else 0)
    sym = e + e.flip()
    assert eo_symmetry_check(sym)


def test_eo_asymmetric():
    assert not eo_symmetry_check(Func.from_support(2, {"01": 1, "10": 2}))
    assert eo_symmetry_check(neq2())


# -- membership -------------------------------------------------------------

def brute_member(f, group):
    mats = [Func.from_matrix(g.rep) for g in group]
    for p in pairings(range(f.arity)):
        for flips in itertools.product((False, True), repeat=len(p)):
            q = tuple((v, u) if fl else (u, v) for (u, v), fl in zip(p, flips))
            for combo in itertools.product(mats, repeat=len(q)):
                if f.proportional_to(assemble(ONE, q, combo)) is not None:
                    return True
    return f.is_zero()


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(["member", "perturbed", "random"]))
def test_membership_matches_brute_force(seed, kind):
    rng = random.Random(seed)
    if kind == "random":
        f = random_func(rng, 4, zero_prob=0.7)
    else:
        f = sample_member(rng, C4, 4)
        if kind == "perturbed":
            vals = list(f.values)
            vals[rng.randrange(16)] += random_scalar(rng)
            f = Func(vals)
    got = membership_in_lambda_genB(f, C4)
    assert (got is not None) == brute_member(f, C4)
    if got is not None:
        assert got.reassemble() == f


def test_membership_zero_and_orientation():
    z = membership_in_lambda_genB(Func([0] * 16), C4)
    assert z.lam == 0 and z.reassemble().is_zero()
    # the group holds b but not its transpose, so the pairs come back reversed
    b = ProjMat([[0, 1], [3, 0]])
    grp = group_closure([b])
    assert b.T not in grp
    bt = Func.from_matrix(b.T.rep)
    f = bt.tensor(bt)
    m = membership_in_lambda_genB(f, grp)
    assert m is not None and m.reassemble() == f
    assert m.pairing == ((1, 0), (3, 2))


# -- normalization -----------------------------------------------------------

@pytest.mark.parametrize("c", [as_scalar(2), as_scalar(-1), I, as_scalar(Fraction(1, 3)), zeta(8)])
def test_c_recovery(c):
    rng = random.Random(str(c))
    for arity in (2, 4, 6):
        h = sample_c_instance(rng, c, arity)
        res = compute_c_and_normalize(h, require_real_squares=False)
        assert res.c in (c, -c)
        assert res.htilde == res.htilde.flip()
        if res.basis is not None:
            (r, _), (_, s) = res.basis.entries
            assert r * r == res.c and r * s == 1


def test_c_failures():
    with pytest.raises(NoConsistentC):
        compute_c_and_normalize(Func([1, 0, 0, 0]))
    with pytest.raises(NoConsistentC):
        compute_c_and_normalize(Func.from_support(2, {"01": 1, "10": 2}))
    with pytest.raises(RootOutsideField):
        compute_c_and_normalize(Func.from_support(6, {"000000": 1, "111111": 2}))


def test_c_square_reality():
    h = Func.from_support(2, {"00": 1, "11": 1, "01": 1 + I, "10": 1 + I})
    with pytest.raises(HypothesisViolated):
        compute_c_and_normalize(h)
    assert not compute_c_and_normalize(h, require_real_squares=False).squares_real


# -- Pauli expansion -------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([2, 4, 6]))
def test_pauli_reconstruct(seed, arity):
    rng = random.Random(seed)
    f = random_func(rng, arity)
    p = random_pairing(rng, arity)
    assert pauli_expand(f, p).reconstruct() == f


def test_pauli_basis_coefficients():
    f = pauli_basis_func("XZ").scale(3) + pauli_basis_func("YI")
    c = pauli_expand(f)
    assert c["XZ"] == 3 and c["YI"] == 1
    assert set(c.nonzero()) == {"XZ", "YI"}
    p = ((0, 2), (1, 3))
    g = pauli_basis_func("ZZ", p)
    assert pauli_expand(g, p).nonzero() == {"ZZ": ONE}


def test_reality_check():
    f = pauli_basis_func("II") + pauli_basis_func("XY").scale(-2)
    assert reality_check(pauli_expand(f.scale(zeta(8))))
    assert not reality_check(pauli_expand(pauli_basis_func("II") + pauli_basis_func("XY").scale(I)))
    assert reality_check([ZERO, ZERO])


# -- rewiring -----------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(seeds)
def test_rewiring_bipartite(seed):
    rng = random.Random(seed)
    g = random_neq_network(rng, 3)
    right = [v for v, s in enumerate(g.sides) if s == 1]
    if len(right) < 2:
        return
    e1, e2 = rng.sample(right, 2)
    res = rewiring_check(g, e1, e2)
    assert res.applicable and res.holds
    r = res.result
    assert r.both_zero or r.ratio in (1, 2, as_scalar(Fraction(1, 2)))


def test_rewiring_not_applicable():
    # each disequality closes a loop through its own =2 vertex
    g = Gadget(
        [eq(2), eq(2), neq2(), neq2()],
        [((0, 0), (2, 0)), ((2, 1), (0, 1)), ((1, 0), (3, 0)), ((3, 1), (1, 1))],
    )
    res = rewiring_check(g, 2, 3)
    assert not res.applicable
    step = rewiring_step(g, 2, 3)
    assert step.before == 0 and step.after == 2


# -- ratio lemma ------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(seeds, st.sampled_from([2, 3, 4]))
def test_ratio_check_agrees_with_direct_test(seed, k):
    rng = random.Random(seed)
    q = [[random_scalar(rng, zero_prob=0.5) for _ in range(2)] for _ in range(2)]
    if rng.random() < 0.3:
        q[1][1] = q[0][0] * zeta(k, rng.randrange(k))
    got = ratio_lemma_check(q, k)
    assert isinstance(got, RatioCase) == ratio_hypothesis(q, k)


def test_ratio_violator_names_equation():
    rng = random.Random(1)
    q = sample_ratio_violator(rng, 3)
    got = ratio_lemma_check(q, 3)
    assert isinstance(got, Violation) and got.lhs != got.rhs
    assert "=" in str(got)
    with pytest.raises(ValueError):
        ratio_lemma_check(q, 1)


@pytest.mark.parametrize("q,k,case", [
    ([[0, 0], [0, 0]], 2, 1),
    ([[0, 1], [-1, 0]], 2, 2),
    ([[1, 0], [0, I]], 4, 3),
    ([[2, 3], [3, 2]], 2, 4),
    ([[2, 3], [-3, -2]], 2, 5),
])
def test_ratio_cases(q, k, case):
    assert ratio_lemma_check(q, k).case == case


# -- power recurrence --------------------------------------------------------

def test_power_recurrence():
    ident = Func.from_matrix([[1 if r == c else 0 for c in range(4)] for r in range(4)])
    rec = power_recurrence(ident, Func([1, 2, 3, 4]))
    assert (rec.s, rec.t, rec.eps) == (0, 1, 1)
    cycle = Func.from_matrix([[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 2]])
    rec = power_recurrence(cycle, Func([1, 0, 0, 0]))
    assert (rec.s, rec.t, rec.eps) == (0, 3, 1)
    shear = Func.from_matrix([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(NotFoundWithinBound):
        power_recurrence(shear, Func([0, 1, 0, 0]), bound=10)


# -- arity reduction ---------------------------------------------------------

@settings(max_examples=10, deadline=None)
@given(seeds)
def test_arity_reduce_member(seed):
    rng = random.Random(seed)
    f = sample_member(rng, C3, 6)
    res = arity_reduce(f, C3)
    assert isinstance(res, Certificate) and res.membership.reassemble() == f


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_arity_reduce_contaminated(seed):
    rng = random.Random(seed)
    f, _ = sample_contaminated(rng, C4, 6)
    res = arity_reduce(f, C4)
    assert isinstance(res, Witness4)
    assert gadget_function(res.gadget) == res.func
    assert membership_in_lambda_genB(res.func, C4) is None


def test_arity_reduce_edges():
    assert arity_reduce(Func([0] * 64), C4).lam == 0
    with pytest.raises(ValueError):
        arity_reduce(eq(4), C4)
    assert isinstance(arity_reduce(eq(10), C4), Inconclusive)
    with pytest.raises(HypothesisViolated):
        arity_reduce(eq(6), group_closure(Q3))
    with pytest.raises(HypothesisViolated):
        arity_reduce(eq(6), group_closure([ProjMat([[1, 0], [0, -1]])]))
    g4 = random_genuine4(random.Random(0))
    assert is_genuine_arity4(g4)
