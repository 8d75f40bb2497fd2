"""Structure of higher-arity functions.

Pairings, tensor decomposition along a pairing, membership in the
span of a binary group, support shapes, the EO (even-ones) part, the
Pauli-type expansion, rewiring of disequality edges, and the arity
reduction driver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    ArityTooLarge,
    EdgeNotFound,
    FieldTooSmall,
    GadgetError,
    HypothesisViolated,
    InternalContradiction,
    NoConsistentC,
    NotFoundWithinBound,
    OddArity,
    RootOutsideField,
)
from .field import I, ONE, ZERO, Scalar, as_scalar, is_real, sqrt_if_simple, zeta
from .group import ProjMat, classify_group
from .linalg import Matrix, mat, matvec, rank
from .reduction import Basis2
from .tensor import Endpoint, Func, Gadget, GadgetBuilder, gadget_function, holant_value, neq2, self_loop, tensor_all

MAX_ARITY = 8

Pairing = tuple[tuple[int, int], ...]


def pairings(variables: Sequence[int]) -> list[Pairing]:
    """All perfect matchings, lexicographic; the first element is always paired first."""
    variables = list(variables)
    if len(variables) % 2:
        raise OddArity(f"cannot pair {len(variables)} variables")
    if not variables:
        return [()]
    head, rest = variables[0], variables[1:]
    out = []
    for k, partner in enumerate(rest):
        for tail in pairings(rest[:k] + rest[k + 1:]):
            out.append(((head, partner),) + tail)
    return out


def _check_pairing(p: Pairing, arity: int) -> None:
    flat = [v for pair in p for v in pair]
    if sorted(flat) != list(range(arity)):
        raise ValueError(f"{p} is not a pairing of {arity} variables")


def _inverse_order(order: Sequence[int]) -> list[int]:
    inv = [0] * len(order)
    for j, v in enumerate(order):
        inv[v] = j
    return inv


def along(f: Func, p: Pairing) -> Func:
    """Reorder variables so that the pairs of ``p`` are adjacent, in order."""
    _check_pairing(p, f.arity)
    return f.permute([v for pair in p for v in pair])


def from_pairs(g: Func, p: Pairing) -> Func:
    """Inverse of :func:`along`."""
    return g.permute(_inverse_order([v for pair in p for v in pair]))


def assemble(lam: object, p: Pairing, factors: Sequence[Func]) -> Func:
    """``lam`` times the product of ``factors[j]`` on pair ``p[j]``."""
    if len(factors) != len(p):
        raise ValueError("one factor per pair")
    g = tensor_all(factors).scale(lam) if factors else Func.constant(lam)
    return from_pairs(g, p)


def _split_first_pair(g: Func) -> tuple[Func, Func] | None:
    """Write ``g = a(x0, x1) h(rest)`` if possible; None otherwise."""
    d = g.arity
    cols = 1 << (d - 2)
    rows = [g.values[r * cols:(r + 1) * cols] for r in range(4)]
    pivot = next(((r, c) for r in range(4) for c in range(cols) if rows[r][c]), None)
    if pivot is None:
        return Func([ZERO] * 4), Func([ZERO] * cols)
    r0, c0 = pivot
    rest = Func(rows[r0])
    inv = rows[r0][c0].inv()
    a = [rows[r][c0] * inv for r in range(4)]
    for r in range(4):
        for c in range(cols):
            if rows[r][c] != a[r] * rest.values[c]:
                return None
    return Func(a), rest


# -- decomposition ---------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    pairing: Pairing
    left: Func
    right: Func


ARITY4_PAIRINGS: tuple[Pairing, ...] = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def decompose_arity4(f: Func) -> Decomposition | None:
    """``f = left (x) right`` along one of the three pairings, or None if genuine."""
    if f.arity != 4:
        raise ValueError("decompose_arity4 needs an arity-4 function")
    for p in ARITY4_PAIRINGS:
        split = _split_first_pair(along(f, p))
        if split is not None:
            return Decomposition(p, *split)
    return None


def is_genuine_arity4(f: Func) -> bool:
    return decompose_arity4(f) is None


# -- membership ------------------------------------------------------------

@dataclass(frozen=True)
class Membership:
    lam: Scalar
    pairing: Pairing
    factors: tuple[Func, ...]

    def reassemble(self) -> Func:
        return assemble(self.lam, self.pairing, self.factors)


def membership_in_lambda_genB(f: Func, group: Iterable[ProjMat]) -> Membership | None:
    """``f = lam * prod b_j`` with every ``b_j`` the representative of a group element.

    Pairs are ordered; a pair is reported reversed when only the transpose
    of its binary lies in the group.  The zero function is a member with
    ``lam = 0`` and identity factors.
    """
    if f.arity % 2:
        raise OddArity(f"arity {f.arity} is odd")
    if f.arity > MAX_ARITY:
        raise ArityTooLarge(f"arity {f.arity} exceeds {MAX_ARITY}")
    group = frozenset(group)
    if f.is_zero():
        p = pairings(range(f.arity))[0]
        ident = Func.from_matrix([[1, 0], [0, 1]])
        return Membership(ZERO, p, (ident,) * len(p))
    for p in pairings(range(f.arity)):
        found = _members_along(along(f, p), p, group)
        if found is not None:
            return found
    return None


def _members_along(g: Func, p: Pairing, group: frozenset[ProjMat]) -> Membership | None:
    pairs, factors = [], []
    cur = g
    for u, v in p:
        split = _split_first_pair(cur)
        if split is None:
            return None
        a, cur = split
        pm = ProjMat(a)
        if pm in group:
            pairs.append((u, v))
            factors.append(Func.from_matrix(pm.rep))
        elif pm.T in group:
            pairs.append((v, u))
            factors.append(Func.from_matrix(pm.T.rep))
        else:
            return None
    q = tuple(pairs)
    prod = assemble(ONE, q, factors)
    lam = g_value_ratio(from_pairs(g, p), prod)
    if lam is None:
        return None
    return Membership(lam, q, tuple(factors))


def g_value_ratio(f: Func, g: Func) -> Scalar | None:
    return f.proportional_to(g)


# -- EO part and deviation -------------------------------------------------

def _popcount(x: int) -> int:
    return bin(x).count("1")


def deviation(alpha: str | Sequence[int] | int, arity: int | None = None) -> int:
    """Number of ones minus number of zeros."""
    if isinstance(alpha, int):
        if arity is None:
            raise ValueError("an integer index needs its arity")
        ones = _popcount(alpha)
        return 2 * ones - arity
    bits = [int(c) for c in alpha]
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"{alpha!r} is not a bit string")
    return 2 * sum(bits) - len(bits)


def eo_restrict(f: Func) -> Func:
    if f.arity % 2:
        raise OddArity(f"arity {f.arity} is odd")
    half = f.arity // 2
    return Func(v if _popcount(x) == half else ZERO for x, v in enumerate(f.values))


def eo_symmetry_check(f: Func) -> bool:
    """Is the EO part invariant under complementing every bit?"""
    e = eo_restrict(f)
    return e == e.flip()


# -- support shapes --------------------------------------------------------

@dataclass(frozen=True)
class SupportClass:
    kind: str  # Antelope, Rhino0, Rhino1 or Other
    pairing: Pairing | None = None
    horn: tuple[int, int] | None = None

    def __str__(self) -> str:
        if self.horn is not None:
            return f"{self.kind}(horn={self.horn})"
        return self.kind


def _pattern(arity: int, p: Pairing, fixed: tuple[int, int] | None, bit: int) -> frozenset[int]:
    out = set()
    free = [pair for pair in p if pair != fixed]
    for choice in itertools.product((0, 1), repeat=len(free)):
        x = 0
        for (u, v), b in zip(free, choice):
            x |= (b << (arity - 1 - u)) | (b << (arity - 1 - v))
        if fixed is not None:
            u, v = fixed
            x |= (bit << (arity - 1 - u)) | (bit << (arity - 1 - v))
        out.add(x)
    return frozenset(out)


@lru_cache(maxsize=None)
def _patterns(arity: int) -> dict[frozenset[int], SupportClass]:
    table: dict[frozenset[int], SupportClass] = {}
    for p in pairings(range(arity)):
        table.setdefault(_pattern(arity, p, None, 0), SupportClass("Antelope", p))
    for p in pairings(range(arity)):
        for pair in p:
            table.setdefault(_pattern(arity, p, pair, 0), SupportClass("Rhino0", p, pair))
            table.setdefault(_pattern(arity, p, pair, 1), SupportClass("Rhino1", p, pair))
    return table


def classify_support(support: Iterable[int], arity: int) -> SupportClass:
    if arity % 2:
        raise OddArity(f"arity {arity} is odd")
    if arity > MAX_ARITY:
        raise ArityTooLarge(f"arity {arity} exceeds {MAX_ARITY}")
    if arity == 0:
        return SupportClass("Other")
    return _patterns(arity).get(frozenset(support), SupportClass("Other"))


def support_class(f: Func) -> SupportClass:
    return classify_support(f.support(), f.arity)


# -- c extraction ---------------------------------------------------------

@dataclass(frozen=True)
class CNormalization:
    c: Scalar
    htilde: Func
    squares_real: bool
    basis: Basis2 | None  # diag(sqrt c, 1/sqrt c) when the root is in the field


def _power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _roots(target: Scalar, r: int) -> list[Scalar]:
    """All r-th roots of ``target`` reachable by repeated square roots."""
    if not _power_of_two(r):
        raise RootOutsideField(f"a {r}-th root is not reachable by square roots")
    cur = target
    m = r
    while m > 1:
        nxt = sqrt_if_simple(cur)
        if nxt is None:
            raise RootOutsideField(f"sqrt({cur}) is not in the field")
        cur, m = nxt, m // 2
    try:
        unity = [zeta(r, j) for j in range(r)]
    except FieldTooSmall:
        unity = [ONE, -ONE]
    return [cur * w for w in unity]


def compute_c_and_normalize(h: Func, require_real_squares: bool = True) -> CNormalization:
    """Find c with ``h(a) = c^r(a) h(~a)`` and symmetrize.

    Since r(a) is always even, c is only determined up to sign; the
    returned value is the first root that satisfies every relation.
    ``htilde(a) = h(a) c^(-r(a)/2)`` is flip-symmetric.
    """
    d = h.arity
    if d % 2:
        raise OddArity(f"arity {d} is odd")
    supp = h.support()
    top = (1 << d) - 1
    if any(top ^ x not in supp for x in supp):
        raise NoConsistentC("support is not closed under complement")
    for x in supp:
        if deviation(x, d) == 0 and h.values[x] != h.values[top ^ x]:
            raise NoConsistentC(f"balanced string {x:0{d}b} has h != h(complement)")
    if not supp:
        c = ONE
    else:
        skewed = sorted((deviation(x, d), x) for x in supp if deviation(x, d) > 0)
        if not skewed:
            c = ONE
        else:
            r, x = skewed[0]
            ratio = h.values[x] / h.values[top ^ x]
            c = None
            for cand in _roots(ratio, r):
                if all(h.values[y] == cand ** deviation(y, d) * h.values[top ^ y] for y in supp):
                    c = cand
                    break
            if c is None:
                raise NoConsistentC("no root satisfies every relation")
    vals = []
    for x, v in enumerate(h.values):
        vals.append(v * c ** (-(deviation(x, d) // 2)) if v else ZERO)
    ht = Func(vals)
    if ht != ht.flip():
        raise NoConsistentC("normalized function is not flip-symmetric")
    squares_real = all(is_real(v * v) for v in ht.values)
    if require_real_squares and not squares_real:
        raise HypothesisViolated("some normalized value has a non-real square")
    root = sqrt_if_simple(c)
    basis = Basis2(((root, ZERO), (ZERO, root.inv()))) if root is not None else None
    return CNormalization(c, ht, squares_real, basis)


# -- Pauli-type expansion --------------------------------------------------

PAULI = "IXYZ"
PAULI_MATRICES: dict[str, Matrix] = {
    "I": mat([[1, 0], [0, 1]]),
    "X": mat([[I, 0], [0, -I]]),
    "Y": mat([[0, 1], [-1, 0]]),
    "Z": mat([[0, I], [I, 0]]),
}
_HALF = as_scalar(Fraction(1, 2))
_HALF_I = (2 * I).inv()
# coefficient k of a pair table (v00, v01, v10, v11)
_TO_PAULI = (
    (_HALF, ZERO, ZERO, _HALF),
    (_HALF_I, ZERO, ZERO, -_HALF_I),
    (ZERO, _HALF, -_HALF, ZERO),
    (ZERO, _HALF_I, _HALF_I, ZERO),
)
_FROM_PAULI = tuple(
    tuple(PAULI_MATRICES[n][r][c] for n in PAULI) for r, c in ((0, 0), (0, 1), (1, 0), (1, 1))
)


def _apply_pairwise(vals: Sequence[Scalar], m: Sequence[Sequence[Scalar]], pairs: int) -> list[Scalar]:
    vals = list(vals)
    for j in range(pairs):
        shift = 2 * (pairs - 1 - j)
        new = [ZERO] * len(vals)
        for idx, v in enumerate(vals):
            if not v:
                continue
            digit = (idx >> shift) & 3
            base = idx & ~(3 << shift)
            for k in range(4):
                w = m[k][digit]
                if w:
                    new[base | (k << shift)] = new[base | (k << shift)] + w * v
        vals = new
    return vals


@dataclass(frozen=True)
class KBasisCoeffs:
    pairing: Pairing
    coeffs: tuple[Scalar, ...]

    def __getitem__(self, psi: str | int) -> Scalar:
        if isinstance(psi, str):
            idx = 0
            for ch in psi:
                idx = 4 * idx + PAULI.index(ch)
            psi = idx
        return self.coeffs[psi]

    def nonzero(self) -> dict[str, Scalar]:
        n = len(self.pairing)
        out = {}
        for idx, c in enumerate(self.coeffs):
            if c:
                name = "".join(PAULI[(idx >> (2 * (n - 1 - j))) & 3] for j in range(n))
                out[name] = c
        return out

    def reconstruct(self) -> Func:
        g = Func(_apply_pairwise(self.coeffs, _FROM_PAULI, len(self.pairing)))
        return from_pairs(g, self.pairing)


def pauli_expand(f: Func, p: Pairing | None = None) -> KBasisCoeffs:
    if f.arity % 2:
        raise OddArity(f"arity {f.arity} is odd")
    if f.arity > MAX_ARITY:
        raise ArityTooLarge(f"arity {f.arity} exceeds {MAX_ARITY}")
    if p is None:
        p = tuple((2 * j, 2 * j + 1) for j in range(f.arity // 2))
    g = along(f, p)
    return KBasisCoeffs(p, tuple(_apply_pairwise(g.values, _TO_PAULI, len(p))))


def pauli_basis_func(psi: str, p: Pairing | None = None) -> Func:
    """The basis function named by ``psi`` (one letter per pair)."""
    p = p or tuple((2 * j, 2 * j + 1) for j in range(len(psi)))
    parts = [Func.from_matrix(PAULI_MATRICES[ch]) for ch in psi]
    return assemble(ONE, p, parts)


def reality_check(coeffs: KBasisCoeffs | Sequence[Scalar]) -> bool:
    """Does one global factor make every coefficient real?"""
    vals = coeffs.coeffs if isinstance(coeffs, KBasisCoeffs) else coeffs
    lead = next((c for c in vals if c), None)
    if lead is None:
        return True
    inv = lead.inv()
    return all(is_real(c * inv) for c in vals if c)


# -- rewiring --------------------------------------------------------------

@dataclass(frozen=True)
class Rewired:
    gadget: Gadget
    before: Scalar
    after: Scalar

    @property
    def both_zero(self) -> bool:
        return not self.before and not self.after

    @property
    def ratio(self) -> Scalar | None:
        """after / before; None when either value is zero."""
        if not self.before or not self.after:
            return None
        return self.after / self.before


def _edge_partners(g: Gadget, e: int) -> tuple[Endpoint, Endpoint, list[int]]:
    if not 0 <= e < len(g.funcs):
        raise EdgeNotFound(f"vertex {e} does not exist")
    if g.funcs[e] != neq2():
        raise EdgeNotFound(f"vertex {e} is not a disequality edge")
    found: dict[int, tuple[Endpoint, int]] = {}
    for k, (a, b) in enumerate(g.edges):
        for mine, other in ((a, b), (b, a)):
            if mine[0] == e:
                found[mine[1]] = (other, k)
    if set(found) != {0, 1}:
        raise EdgeNotFound(f"vertex {e} is not internal on both slots")
    return found[0][0], found[1][0], [found[0][1], found[1][1]]


def rewiring_step(g: Gadget, e1: int, e2: int) -> Rewired:
    """Rewire two disequality edges ``(x, y), (z, w)`` into ``(x, z), (y, w)``.

    ``e1`` and ``e2`` are vertices carrying the binary disequality, each
    with both slots wired into the rest of a closed network.
    """
    if not g.closed:
        raise GadgetError("rewiring needs a closed network")
    if e1 == e2:
        raise EdgeNotFound("the two edges must be distinct")
    x, y, ka = _edge_partners(g, e1)
    z, w, kb = _edge_partners(g, e2)
    if any(ep[0] in (e1, e2) for ep in (x, y, z, w)):
        raise GadgetError("the two edges must not touch each other")
    drop = set(ka + kb)
    edges = [ed for k, ed in enumerate(g.edges) if k not in drop]
    edges += [((e1, 0), x), ((e1, 1), z), ((e2, 0), y), ((e2, 1), w)]
    new = Gadget(g.funcs, tuple(edges), (), g.sides)
    return Rewired(new, holant_value(g), holant_value(new))


@dataclass(frozen=True)
class RewiringCheck:
    applicable: bool
    holds: bool | None
    result: Rewired | None
    reason: str = ""


def cut_function(g: Gadget, e1: int, e2: int) -> Func:
    """Function of the network with both edges removed, on ``(x, y, z, w)``."""
    x, y, ka = _edge_partners(g, e1)
    z, w, kb = _edge_partners(g, e2)
    keep = [v for v in range(len(g.funcs)) if v not in (e1, e2)]
    index = {v: k for k, v in enumerate(keep)}
    drop = set(ka + kb)
    edges = tuple(
        ((index[a[0]], a[1]), (index[b[0]], b[1])) for k, (a, b) in enumerate(g.edges) if k not in drop
    )
    ext = tuple((index[ep[0]], ep[1]) for ep in (x, y, z, w))
    return gadget_function(Gadget(tuple(g.funcs[v] for v in keep), edges, ext))


def _is_neq_pair_product(h: Func) -> bool:
    if h.is_zero():
        return True
    dd = neq2().tensor(neq2())
    return any(h.proportional_to(from_pairs(dd, p)) is not None for p in ARITY4_PAIRINGS)


def rewiring_check(g: Gadget, e1: int, e2: int) -> RewiringCheck:
    """Both zero, or ratio in {1, 2, 1/2}, whenever the cut is lam * neq (x) neq."""
    h = cut_function(g, e1, e2)
    if not _is_neq_pair_product(h):
        return RewiringCheck(False, None, None, "cut function is not a multiple of a disequality pair")
    res = rewiring_step(g, e1, e2)
    if res.both_zero:
        return RewiringCheck(True, True, res)
    ok = res.ratio is not None and res.ratio in (ONE, as_scalar(2), as_scalar(Fraction(1, 2)))
    return RewiringCheck(True, ok, res)


# -- ratio lemma -----------------------------------------------------------

@dataclass(frozen=True)
class RatioCase:
    case: int
    description: str


@dataclass(frozen=True)
class Violation:
    equation: str
    lhs: Scalar
    rhs: Scalar

    def __str__(self) -> str:
        return f"{self.equation}: {self.lhs} != {self.rhs}"


def ratio_equations(a: Scalar, b: Scalar, c: Scalar, d: Scalar, k: int) -> list[tuple[str, Scalar, Scalar]]:
    """Both coefficient systems, in order; the second swaps c and d."""
    out = []
    for p, q, pn, qn in ((d, c, "d", "c"), (c, d, "c", "d")):
        out.append((f"a^{k} + {pn}^{k} = {qn}^{k} + b^{k}", a ** k + p ** k, q ** k + b ** k))
        for j in range(1, k):
            out.append((
                f"a^{k - j}*{pn}^{j} = {qn}^{k - j}*b^{j}",
                a ** (k - j) * p ** j,
                q ** (k - j) * b ** j,
            ))
    return out


def _is_kth_zeta(x: Scalar, k: int) -> bool:
    return x ** k == 1


def ratio_lemma_check(q: Sequence[Sequence[object]], k: int) -> RatioCase | Violation:
    """Solution family of ``q = [[a, c], [d, b]]`` under the k-th power system."""
    if k < 2:
        raise ValueError("k must be at least 2")
    (a, c), (d, b) = mat(q)
    for name, lhs, rhs in ratio_equations(a, b, c, d, k):
        if lhs != rhs:
            return Violation(name, lhs, rhs)
    zeros = [x.is_zero for x in (a, b, c, d)]
    if all(zeros):
        return RatioCase(1, "a=b=c=d=0")
    if zeros == [True, True, False, False] and c ** k == d ** k:
        return RatioCase(2, "a=b=0, c^k=d^k")
    if zeros == [False, False, True, True] and a ** k == b ** k:
        return RatioCase(3, "c=d=0, a^k=b^k")
    if not any(zeros):
        if k == 2:
            if b == a and d == c:
                return RatioCase(4, "b=a, d=c")
            if b == -a and d == -c:
                return RatioCase(5, "b=-a, d=-c")
        elif a * b == c * d and all(
            _is_kth_zeta(x / y, k) for x, y in itertools.combinations((a, b, c, d), 2)
        ):
            return RatioCase(4, "no zeros, ab=cd, all ratios k-th roots of unity")
    raise InternalContradiction(f"equations hold but no solution family matches {a, b, c, d}")


def ratio_hypothesis(q: Sequence[Sequence[object]], k: int) -> bool:
    """Directly test ``(a + t d)^k = (c + t b)^k`` and its c/d swap for every k-th root t."""
    (a, c), (d, b) = mat(q)
    for j in range(k):
        t = zeta(k, j)
        if (a + t * d) ** k != (c + t * b) ** k or (a + t * c) ** k != (d + t * b) ** k:
            return False
    return True


# -- power recurrence ------------------------------------------------------

@dataclass(frozen=True)
class Recurrence:
    s: int
    t: int
    eps: Scalar


def power_recurrence(q: Func, v: Func, bound: int = 64) -> Recurrence:
    """Least ``s < t <= bound`` with ``q^t v = eps q^s v``."""
    if q.arity != 4 or v.arity != 2:
        raise ValueError("need an arity-4 q and a binary v")
    m = q.matrix((0, 1))
    if rank(m) != 4:
        raise ValueError("q must have full rank as a 4x4 matrix")
    seq = [tuple(v.values)]
    for t in range(1, bound + 1):
        nxt = matvec(m, seq[-1])
        for s, prev in enumerate(seq):
            eps = Func(nxt).proportional_to(Func(prev))
            if eps is not None:
                return Recurrence(s, t, eps)
        seq.append(nxt)
    raise NotFoundWithinBound(f"no repetition within {bound} steps")


# -- arity reduction -------------------------------------------------------

@dataclass
class Step:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Certificate:
    membership: Membership
    steps: list[Step] = field(default_factory=list)

    @property
    def lam(self) -> Scalar:
        return self.membership.lam


@dataclass
class Witness4:
    func: Func
    gadget: Gadget
    genuine: bool
    steps: list[Step] = field(default_factory=list)


@dataclass
class Inconclusive:
    failed_step: str
    steps: list[Step] = field(default_factory=list)


def _check_hypothesis(group: frozenset[ProjMat]) -> None:
    if not group:
        raise HypothesisViolated("empty group")
    for a in group:
        for b in group:
            if a * b not in group:
                raise HypothesisViolated("group is not closed")
    if any(g.rep[0][1] or g.rep[1][0] for g in group):
        raise HypothesisViolated("group is not diagonal")
    label = classify_group(group)
    if label.kind != "CnHigh":
        raise HypothesisViolated(f"group is {label}, need a cyclic group of order >= 3")


def _structural_chain(f: Func) -> list[Step]:
    d = f.arity
    steps = []
    pair = next(
        ((x, y) for x, y in itertools.combinations(range(d), 2)
         if not f.pin({x: 0, y: 0}).is_zero() and not f.pin({x: 1, y: 1}).is_zero()),
        None,
    )
    steps.append(Step("pinning a pair to 00 and to 11 both nonzero", pair is not None, f"pair {pair}" if pair else ""))
    if pair is None:
        return steps
    quad = next(
        (qd for qd in itertools.permutations(range(d), 4)
         if not f.pin({v: 0 for v in qd}).is_zero()),
        None,
    )
    steps.append(Step("pinning four variables to 0 nonzero", quad is not None, f"variables {quad}" if quad else ""))
    if quad is None:
        return steps
    x, y, z, w = quad
    views = []
    for pinned, free in (((x, y), z), ((x, z), y), ((y, z), x)):
        h = f.pin({pinned[0]: 0, pinned[1]: 0})
        rest = [v for v in range(d) if v not in pinned]
        cls = support_class(h)
        views.append((rest, cls, free))
    ok = all(cls.kind != "Other" for _, cls, _ in views)
    steps.append(Step("pinned support types", ok, ", ".join(str(c) for _, c, _ in views)))
    if not ok:
        return steps
    mapped = []
    for rest, cls, free in views:
        pr = {frozenset((rest[u], rest[v])) for u, v in cls.pairing}
        horn = frozenset((rest[cls.horn[0]], rest[cls.horn[1]])) if cls.horn else None
        partner = next(next(iter(s - {free})) for s in pr if free in s)
        mapped.append((pr, horn, free, partner))
    partners = {m[3] for m in mapped}
    others = [{s for s in m[0] if m[2] not in s} for m in mapped]
    agree = len(partners) == 1 and all(o == others[0] for o in others)
    steps.append(Step("shared pairing", agree, f"partners {sorted(partners)}"))
    if not agree:
        return steps
    antelope_horns = sum(1 for pr, horn, free, partner in mapped if horn != frozenset((free, partner)))
    steps.append(Step("at most one antelope horn", antelope_horns <= 1, f"{antelope_horns} antelope horns"))
    return steps


def _eliminations(f: Func, group: Sequence[ProjMat]):
    """Yield ``(func, plan)`` for every single S-elimination of two variables."""
    for u, v in itertools.combinations(range(f.arity), 2):
        for s in group:
            yield self_loop(f, u, v, Func.from_matrix(s.rep)), (u, v, s)


def _splits_off(f: Func, pair: tuple[int, int]) -> bool:
    rest = [v for v in range(f.arity) if v not in pair]
    g = f.permute(list(pair) + rest)
    return _split_first_pair(g) is not None


def _reduction_gadget(f: Func, plans: list[tuple[int, int, ProjMat]]) -> Gadget:
    """Gadget realizing a sequence of eliminations on a single copy of ``f``."""
    gb = GadgetBuilder()
    root = gb.add(f)
    live = list(range(f.arity))
    for u, v, s in plans:
        sv = gb.add(Func.from_matrix(s.rep))
        gb.connect((root, live[u]), (sv, 0))
        gb.connect((sv, 1), (root, live[v]))
        live = [x for k, x in enumerate(live) if k not in (u, v)]
    return gb.build([(root, x) for x in live])


def arity_reduce(f: Func, group: Iterable[ProjMat]):
    """Certificate of membership, an arity-4 witness outside the span, or Inconclusive."""
    group = frozenset(group)
    _check_hypothesis(group)
    if f.arity % 2:
        raise OddArity(f"arity {f.arity} is odd")
    if f.arity < 6:
        raise ValueError("arity reduction starts at arity 6")
    if f.arity > MAX_ARITY:
        return Inconclusive("arity above 8 is not handled", [])
    if f.is_zero():
        return Certificate(membership_in_lambda_genB(f, group), [Step("zero function", True)])
    steps = _structural_chain(f)
    mem = membership_in_lambda_genB(f, group)
    if mem is not None and mem.reassemble() == f:
        steps.append(Step("assemble", True, f"lam = {mem.lam}"))
        return Certificate(mem, steps)
    steps.append(Step("assemble", False, "no pairing with group factors"))
    ordered = sorted(group)
    # eliminating a pair that splits off as a tensor factor isolates the rest
    frontier = [(f, [], True)]
    while frontier and frontier[0][0].arity > 4:
        nxt = []
        for g, plans, isolating in frontier:
            for h, plan in _eliminations(g, ordered):
                if not h.is_zero():
                    nxt.append((h, plans + [plan], isolating and _splits_off(g, plan[:2])))
        frontier = nxt
    candidates = []
    for h, plans, isolating in frontier:
        if membership_in_lambda_genB(h, group) is None:
            key = (0 if isolating else 1, 0 if is_genuine_arity4(h) else 1, len(candidates))
            candidates.append((key, h, plans))
    for _, h, plans in sorted(candidates, key=lambda c: c[0]):
        gad = _reduction_gadget(f, plans)
        if gadget_function(gad) == h:
            steps.append(Step("pair elimination", True, f"{len(plans)} eliminations"))
            return Witness4(h, gad, is_genuine_arity4(h), steps)
    steps.append(Step("pair elimination", False, "every arity-4 reduction lies in the span"))
    failed = next((s.name for s in steps if not s.passed), "pair elimination")
    return Inconclusive(failed, steps)
