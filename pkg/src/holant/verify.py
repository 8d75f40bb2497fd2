"""Registry of exact identity and property checks.

Each entry runs a self-contained check with a seeded generator and
returns an :class:`Outcome`.  ``holant verify`` runs them by id.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from .errors import HolantError
from .field import I, ONE, ZERO, Scalar, as_scalar, is_real, sqrt_if_simple, zeta
from .group import (
    PX,
    PY,
    PZ,
    Q3,
    Q3_PRIME,
    ProjMat,
    canonicalize_K4,
    check_order2_traces,
    group_closure,
    pipeline_classify,
    transpose_closure_check,
)
from .linalg import identity, kron, mat, mat_pow, matmul, scale, trace, transpose
from .reduction import (
    K,
    K_TENSOR2_TABLE,
    build_D2d,
    d2d_gadget,
    holographic_invariance_check,
    k_sandwich,
    n_power_identity,
    transform_func,
)
from .sampling import (
    random_bipartite_network,
    random_closed_network,
    random_func,
    random_neq_network,
    random_orthogonal,
    random_scalar,
    ratio_families,
    sample_c_instance,
    sample_contaminated,
    sample_member,
    sample_ratio_family,
    sample_ratio_violator,
)
from .structure import (
    RatioCase,
    Certificate,
    Violation,
    Witness4,
    arity_reduce,
    compute_c_and_normalize,
    membership_in_lambda_genB,
    pauli_basis_func,
    pauli_expand,
    ratio_hypothesis,
    ratio_lemma_check,
    reality_check,
    rewiring_check,
)
from .tensor import Func, contract_subgadget, eq, gadget_function, holant_value, neq2


@dataclass(frozen=True)
class Outcome:
    passed: bool
    detail: str
    seconds: float = 0.0


@dataclass(frozen=True)
class Entry:
    id: str
    description: str
    topic: str
    procedure: Callable[[random.Random], tuple[bool, str]]


REGISTRY: dict[str, Entry] = {}


def register(id: str, description: str, topic: str):
    def deco(fn):
        REGISTRY[id] = Entry(id, description, topic, fn)
        return fn

    return deco


def run(id: str, seed: int = 0) -> Outcome:
    entry = REGISTRY[id]
    rng = random.Random(f"{seed}:{id}")
    start = time.perf_counter()
    try:
        ok, detail = entry.procedure(rng)
    except HolantError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Outcome(ok, detail, time.perf_counter() - start)


def run_all(seed: int = 0) -> dict[str, Outcome]:
    return {k: run(k, seed) for k in REGISTRY}


# -- identities ------------------------------------------------------------

def k_identity_checks() -> list[tuple[str, bool]]:
    twice_neq = scale(neq2().matrix(), 2)
    row = (ONE, ZERO, ZERO, ONE)
    via_table = tuple(sum((row[r] * K_TENSOR2_TABLE[r][c] for r in range(4)), ZERO) for c in range(4))
    return [
        ("K^T (=2) K = 2 (neq2)", k_sandwich() == twice_neq),
        ("(=2) times the listed K(x)K table = 2 (neq2)", Func(via_table) == neq2().scale(2)),
        ("(=2) K^(x)2 = 2 (neq2) by modewise transform", transform_func(eq(2), K) == neq2().scale(2)),
        ("neq2 = -i Z", Func.from_matrix(scale(mat([[0, I], [I, 0]]), -I)) == neq2()),
        (
            "listed table is K(x)K with its middle rows exchanged",
            kron(K.entries, K.entries) == (K_TENSOR2_TABLE[0], K_TENSOR2_TABLE[2], K_TENSOR2_TABLE[1], K_TENSOR2_TABLE[3]),
        ),
    ]


@register("k-identities", "basis K sends =2 to twice the disequality", "K basis")
def _k_identities(rng: random.Random) -> tuple[bool, str]:
    checks = k_identity_checks()
    bad = [name for name, ok in checks if not ok]
    return not bad, "failed: " + "; ".join(bad) if bad else f"{len(checks)} identities hold"


def npower_samples(rng: random.Random, count: int = 5) -> list[Scalar]:
    out = [as_scalar(1)]
    while len(out) < count:
        s = random_scalar(rng)
        if s not in out:
            out.append(s)
    return out


@register("npower", "powers of the corner block times neq2 x neq2 equal I + k s E14, k <= 10", "interpolating a corner entry")
def _npower(rng: random.Random) -> tuple[bool, str]:
    samples = npower_samples(rng)
    for s in samples:
        for k in range(1, 11):
            n_power_identity(s, k)
    return True, f"{len(samples)} values of s, k = 1..10"


@register("q3-closure", "X, Y, Z close to a Klein four-group", "standard Klein four form")
def _q3_closure(rng: random.Random) -> tuple[bool, str]:
    ok = PX * PY == PZ and PY * PZ == PX and PZ * PX == PY
    ok = ok and all((g * g).is_identity() for g in Q3)
    grp = group_closure(Q3)
    ok = ok and len(grp) == 4 and transpose_closure_check(grp)
    canon = canonicalize_K4(grp)
    ok = ok and canon.kind == "Q3" and canon.basis.entries == identity(2)
    return ok, f"closure order {len(grp)}, canonical {canon.kind}"


def q3prime_matrices() -> list:
    r = sqrt_if_simple(2)
    b = mat([[0, (1 + I) / r], [(-1 + I) / r, 0]])
    c = mat([[0, (-1 + I) / r], [(1 + I) / r, 0]])
    return [mat([[I, 0], [0, -I]]), b, c]


@register("q3prime", "the twisted Klein four form", "transpose-twisted Klein four form")
def _q3prime(rng: random.Random) -> tuple[bool, str]:
    x, b, c = q3prime_matrices()
    elems = {ProjMat(m) for m in (x, b, c)}
    ok = elems == set(Q3_PRIME)
    ok = ok and transpose(b) == c and transpose(x) == x
    ok = ok and all(matmul(m, m) == scale(identity(2), -1) for m in (x, b, c))
    grp = group_closure(elems)
    canon = canonicalize_K4(grp)
    ok = ok and len(grp) == 4 and canon.kind == "Q3Prime"
    return ok, f"canonical form {canon.kind}"


def group_fixtures() -> dict[str, list[Func]]:
    fx = {
        "neq2": [neq2()],
        "Q3": [g.as_func() for g in Q3],
        "Q3'": [Func.from_matrix(m) for m in q3prime_matrices()],
        "jordan": [Func.from_matrix([[1, 1], [0, 1]])],
        "diag(1,2)": [Func.from_matrix([[1, 0], [0, 2]])],
    }
    for n in (3, 4, 5, 6):
        fx[f"diag(1,zeta{n})"] = [Func.from_matrix([[1, 0], [0, zeta(n)]])]
    return fx


EXPECTED_LABELS = {
    "neq2": "C2",
    "Q3": "K4",
    "Q3'": "K4",
    "jordan": "Resolved(JordanBlockFound)",
    "diag(1,2)": "Resolved(InfiniteOrderFound)",
    "diag(1,zeta3)": "CnHigh(3)",
    "diag(1,zeta4)": "CnHigh(4)",
    "diag(1,zeta5)": "CnHigh(5)",
    "diag(1,zeta6)": "CnHigh(6)",
}


@register("group-fixtures", "classification of the standard fixtures", "finite group taxonomy")
def _group_fixtures(rng: random.Random) -> tuple[bool, str]:
    bad = []
    for name, funcs in group_fixtures().items():
        rep = pipeline_classify(funcs, budget=2)
        if str(rep.label) != EXPECTED_LABELS[name]:
            bad.append(f"{name}: {rep.label}")
    return not bad, "; ".join(bad) or f"{len(EXPECTED_LABELS)} fixtures"


@register("trace-zero", "order-2 elements have trace zero", "order-2 elements")
def _trace_zero(rng: random.Random) -> tuple[bool, str]:
    count = 0
    for funcs in group_fixtures().values():
        rep = pipeline_classify(funcs, budget=2)
        check_order2_traces(rep.elements)
        for g in rep.elements:
            if not g.is_identity() and (g * g).is_identity():
                lift = g.det_one_lift()
                if trace(lift):
                    return False, f"{g} has a nonzero-trace lift"
                count += 1
    return True, f"{count} order-2 elements"


def trace_reality_failures() -> list[tuple[ProjMat, ProjMat, ProjMat]]:
    lifts = {g: g.det_one_lift() for g in group_closure(Q3)}
    bad = []
    for p, q, r in itertools.product(lifts, repeat=3):
        if not is_real(trace(matmul(matmul(lifts[p], lifts[q]), lifts[r]))):
            bad.append((p, q, r))
    return bad


@register("trace-reality", "products of three Q3 elements have real trace", "real coefficients")
def _trace_reality(rng: random.Random) -> tuple[bool, str]:
    bad = trace_reality_failures()
    return not bad, f"{len(bad)} of 64 triples non-real"


@register("aa-computations", "products of the arity-4 matrices used in the hardness cases", "matrix products")
def _aa(rng: random.Random) -> tuple[bool, str]:
    for _ in range(20):
        a, b, c, d, e, f = (random_scalar(rng) for _ in range(6))
        A = mat([[0, 0, 0, e], [0, a, c, 0], [0, d, b, 0], [f, 0, 0, 0]])
        if matmul(A, A) != mat([[e * f, 0, 0, 0], [0, a * a + c * d, (a + b) * c, 0], [0, (a + b) * d, b * b + c * d, 0], [0, 0, 0, e * f]]):
            return False, "A A"
        if matmul(A, transpose(A)) != mat([[e * e, 0, 0, 0], [0, a * a + c * c, a * d + b * c, 0], [0, a * d + b * c, b * b + d * d, 0], [0, 0, 0, f * f]]):
            return False, "A A^T"
        A2 = mat([[0, 0, 0, c], [0, a, e, 0], [0, -e, a, 0], [c, 0, 0, 0]])
        if matmul(A2, A2) != mat([[c * c, 0, 0, 0], [0, a * a - e * e, 2 * a * e, 0], [0, -2 * a * e, a * a - e * e, 0], [0, 0, 0, c * c]]):
            return False, "rotated A A"
        A3 = mat([[0, 0, 0, c], [0, e, a, 0], [0, -a, e, 0], [-c, 0, 0, 0]])
        if matmul(A3, A3) != mat([[-c * c, 0, 0, 0], [0, e * e - a * a, 2 * a * e, 0], [0, -2 * a * e, e * e - a * a, 0], [0, 0, 0, -c * c]]):
            return False, "skew A A"
        s, l1, l2 = random_scalar(rng), random_scalar(rng), random_scalar(rng)
        B = mat([[s, 0, 0, l1 * s], [0, a, a, 0], [0, a, a, 0], [l2 * s, 0, 0, l1 * l2 * s]])
        u = (1 + l1 * l1) * s * s
        want = mat([[u, 0, 0, u * l2], [0, 2 * a * a, 2 * a * a, 0], [0, 2 * a * a, 2 * a * a, 0], [u * l2, 0, 0, u * l2 * l2]])
        if matmul(B, transpose(B)) != want:
            return False, "B B^T"
        sign = rng.choice((1, -1))
        M = mat([[s, 0, 0, sign * s], [0, a, a, 0], [0, a, a, 0], [sign * s, 0, 0, s]])
        for n in range(1, 6):
            sn, an = s ** n, a ** n
            cn = scale(mat([[sn, 0, 0, sign * sn], [0, an, an, 0], [0, an, an, 0], [sign * sn, 0, 0, sn]]), as_scalar(4) ** n / 2)
            if mat_pow(scale(M, 2), n) != cn:
                return False, f"C^{n}"
    return True, "20 random parameter sets"


@register("oplus4", "the Hadamard basis sends the parity function to =4", "parity function")
def _oplus4(rng: random.Random) -> tuple[bool, str]:
    parity = Func([ONE if bin(x).count("1") % 2 == 0 else ZERO for x in range(16)])
    h = [[1, 1], [1, -1]]
    return transform_func(parity, h) == eq(4).scale(8), "parity (x) H^4 = 8 (=4)"


@register("d2d", "chained arity-4 disequality copies realize the arity-2d version", "gadget construction")
def _d2d(rng: random.Random) -> tuple[bool, str]:
    for d in (2, 3, 4):
        if gadget_function(d2d_gadget(d)) != build_D2d(d):
            return False, f"d = {d}"
    return True, "d = 2, 3, 4"


# -- property suites -------------------------------------------------------

def ratio_lemma_suite(rng: random.Random, samples: int = 200) -> list[str]:
    problems = []
    for k in (2, 3, 4):
        for case in ratio_families(k):
            for _ in range(samples):
                q = sample_ratio_family(rng, k, case)
                got = ratio_lemma_check(q, k)
                if not isinstance(got, RatioCase) or got.case != case or not ratio_hypothesis(q, k):
                    # case 2 and 3 overlap case 1 only at zero, never in samples
                    problems.append(f"k={k} family {case}: {got}")
                    break
        for _ in range(samples):
            q = sample_ratio_violator(rng, k)
            got = ratio_lemma_check(q, k)
            if not isinstance(got, Violation) or not got.equation or ratio_hypothesis(q, k):
                problems.append(f"k={k} violator accepted: {q}")
                break
    return problems


@register("ratio-lemma", "solution families of the k-th power system", "ratio lemma")
def _ratio(rng: random.Random) -> tuple[bool, str]:
    problems = ratio_lemma_suite(rng, 50)
    return not problems, "; ".join(problems) or "50 samples per family, k = 2, 3, 4"


HOLO_POOL = [eq(2), eq(3), neq2(), Func([1, 2, 0, 3]), Func([0, 1, 1, 0, 1, 0, 0, I])]


@register("holographic", "orthogonal basis changes preserve bipartite network values", "holographic transformation")
def _holographic(rng: random.Random) -> tuple[bool, str]:
    fixed = [[as_scalar("3/5"), as_scalar("4/5")], [as_scalar("4/5"), as_scalar("-3/5")]]
    for k in range(20):
        g = random_bipartite_network(rng, HOLO_POOL, HOLO_POOL, max_edges=6)
        m = fixed if k % 2 == 0 else random_orthogonal(rng)
        if not holographic_invariance_check(g, m):
            return False, f"network {k} changed value"
    return True, "20 networks"


@register("associativity", "contraction order does not change the value", "contraction")
def _associativity(rng: random.Random) -> tuple[bool, str]:
    pool = [random_func(rng, a) for a in (1, 2, 2, 3, 3, 4)]
    for k in range(50):
        g = random_closed_network(rng, pool, max_edges=7)
        lit = holant_value(g, method="literal")
        sub = [v for v in range(len(g.funcs)) if rng.random() < 0.5] or [0]
        if holant_value(contract_subgadget(g, sub)) != lit or holant_value(g) != lit:
            return False, f"network {k}"
    return True, "50 networks"


@register("rewiring", "rewiring two disequality edges keeps zero-ness and ratios 1, 2, 1/2", "rewiring")
def _rewiring(rng: random.Random) -> tuple[bool, str]:
    checked = 0
    for k in range(50):
        g = random_neq_network(rng, 4)
        right = [v for v, s in enumerate(g.sides) if s == 1]
        if len(right) < 2:
            continue
        e1, e2 = rng.sample(right, 2)
        res = rewiring_check(g, e1, e2)
        if not res.applicable or not res.holds:
            return False, f"network {k}: {res.reason or res.result}"
        checked += 1
    return True, f"{checked} rewiring steps"


def c4_group() -> frozenset[ProjMat]:
    return group_closure([ProjMat([[1, 0], [0, I]])])


@register("arity-reduce", "round trips for membership, certificates and arity-4 witnesses", "arity reduction")
def _arity_reduce(rng: random.Random) -> tuple[bool, str]:
    grp = c4_group()
    for _ in range(10):
        f = sample_member(rng, grp, 6)
        mem = membership_in_lambda_genB(f, grp)
        res = arity_reduce(f, grp)
        if mem is None or mem.reassemble() != f or not isinstance(res, Certificate):
            return False, "member not recovered"
        f, g4 = sample_contaminated(rng, grp, 6)
        res = arity_reduce(f, grp)
        if not isinstance(res, Witness4) or gadget_function(res.gadget) != res.func:
            return False, "no verified witness"
        if membership_in_lambda_genB(res.func, grp) is not None:
            return False, "witness lies in the span"
    return True, "10 members, 10 contaminated"


@register("pauli", "Pauli-type expansion reconstructs exactly and detects phases", "Pauli expansion")
def _pauli(rng: random.Random) -> tuple[bool, str]:
    for _ in range(10):
        f = random_func(rng, rng.choice((2, 4, 6)))
        if pauli_expand(f).reconstruct() != f:
            return False, "reconstruction"
    f = pauli_basis_func("II") + pauli_basis_func("XX")
    g = pauli_basis_func("II") + pauli_basis_func("XX").scale(I)
    return reality_check(pauli_expand(f)) and not reality_check(pauli_expand(g)), "reconstruction and phase test"


@register("normalize", "recovering c from h(a) = c^r(a) h(~a)", "non-EO structure")
def _normalize(rng: random.Random) -> tuple[bool, str]:
    for c in (as_scalar(2), as_scalar(-1), I):
        for _ in range(5):
            h = sample_c_instance(rng, c, 4)
            res = compute_c_and_normalize(h)
            if res.c not in (c, -c) or res.htilde != res.htilde.flip():
                return False, f"c = {c}"
    return True, "c in {2, -1, i}"
