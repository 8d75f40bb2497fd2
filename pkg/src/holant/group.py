"""Realizable binaries, their projective group, and its classification.

The pipeline has four stages.

1. Enumerate binary functions realizable by small gadgets over a function set.
2. Look for the easy outcomes: a rank-1 binary, a non-diagonalizable one,
   or one whose eigenvalue ratio is not a root of unity.
3. Otherwise close the binaries projectively into a finite matrix group and
   match its signature (order, number of order-2 elements, number of Klein
   four-subgroups) against the finite rotation groups.
4. Use transpose symmetry to move an order-2 element, or a whole Klein
   four-subgroup, into a standard form by an orthogonal basis change.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    EigenvaluesOutsideField,
    GroupTooLarge,
    InternalContradiction,
    NoClosedK4,
    NormalizationUnsupported,
    NotTransposeFixed,
    SignatureMismatch,
    TraceNonzero,
)
from .field import I, ONE, ZERO, Scalar, sqrt_if_simple
from .linalg import Matrix, det2, first_nonzero, mat, matmul, scale, trace, transpose
from .reduction import (
    IDENTITY,
    Basis2,
    DiagRatioInfinite,
    JordanBlock,
    jordan_classify,
)
from .tensor import Func, Gadget, GadgetBuilder, gadget_function


# --------------------------------------------------------------------------
# projective matrices
# --------------------------------------------------------------------------

class ProjMat:
    """A nonzero 2x2 matrix up to scalars, scaled so its first nonzero entry is 1."""

    __slots__ = ("rep", "_hash", "_key")

    def __init__(self, m: Sequence[Sequence[object]] | Func):
        if isinstance(m, Func):
            m = m.matrix()
        m = mat(m)
        lead = first_nonzero(m)
        if lead is None:
            raise ValueError("the zero matrix has no projective class")
        self.rep: Matrix = m if lead == 1 else scale(m, lead.inv())
        self._hash = None
        self._key = None

    @property
    def det_rep(self) -> Scalar:
        return det2(self.rep)

    def __mul__(self, other: ProjMat) -> ProjMat:
        return ProjMat(matmul(self.rep, other.rep))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjMat):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rep)
        return self._hash

    def sort_key(self) -> tuple[str, ...]:
        if self._key is None:
            self._key = tuple(str(x) for row in self.rep for x in row)
        return self._key

    def __lt__(self, other: ProjMat) -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def T(self) -> ProjMat:
        return ProjMat(transpose(self.rep))

    def is_identity(self) -> bool:
        r = self.rep
        return r[0][1].is_zero and r[1][0].is_zero and r[0][0] == r[1][1]

    def trace(self) -> Scalar:
        return trace(self.rep)

    def conjugate_by(self, m: Basis2) -> ProjMat:
        """``M^T g M``: the class after an orthogonal change of basis."""
        return ProjMat(matmul(matmul(transpose(m.entries), self.rep), m.entries))

    def det_one_lift(self) -> Matrix:
        root = sqrt_if_simple(self.det_rep)
        if root is None:
            raise NormalizationUnsupported(f"sqrt of determinant {self.det_rep} is not simple")
        return scale(self.rep, root.inv())

    def as_func(self) -> Func:
        return Func.from_matrix(self.rep)

    def __repr__(self) -> str:
        k = self.sort_key()
        return f"ProjMat([[{k[0]}, {k[1]}], [{k[2]}, {k[3]}]])"


PX = ProjMat([[I, 0], [0, -I]])
PY = ProjMat([[0, 1], [-1, 0]])
PZ = ProjMat([[0, I], [I, 0]])
PI = ProjMat([[1, 0], [0, 1]])
Q3 = frozenset({PX, PY, PZ})
Q3_PRIME = frozenset({PX, ProjMat([[0, 1], [I, 0]]), ProjMat([[0, 1], [-I, 0]])})


def proj_order(m: ProjMat, bound: int) -> int | None:
    """Least k <= bound with m^k proportional to the identity; None if unbounded."""
    if bound < 1:
        raise ValueError("bound must be positive")
    cur = m
    for k in range(1, bound + 1):
        if cur.is_identity():
            return k
        cur = cur * m
    return None


def group_closure(gens: Iterable[ProjMat], cap: int = 130) -> frozenset[ProjMat]:
    gens = list(dict.fromkeys(gens))
    for g in gens:
        if not g.det_rep:
            raise ValueError(f"generator {g} is singular")
    elements = {PI}
    frontier = [PI]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise GroupTooLarge(cap, frozenset(elements))
        frontier = nxt
    return frozenset(elements)


# --------------------------------------------------------------------------
# classification
# --------------------------------------------------------------------------

_KINDS = {
    "Resolved", "C1", "C2", "CnHigh", "DihedralOdd", "K4", "DihedralLargeEven",
    "Tetrahedral", "Octahedral", "Icosahedral", "TooLarge",
}
_REASONS = {"Rank1Found", "JordanBlockFound", "InfiniteOrderFound"}


@dataclass(frozen=True)
class CaseLabel:
    kind: str
    n: int | None = None
    reason: str | None = None
    bound: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown case {self.kind!r}")
        if self.kind == "Resolved" and self.reason not in _REASONS:
            raise ValueError(f"unknown resolution {self.reason!r}")
        if self.kind == "CnHigh" and (self.n is None or self.n < 3):
            raise ValueError("CnHigh needs n >= 3")
        if self.kind == "DihedralOdd" and (self.n is None or self.n < 3 or self.n % 2 == 0):
            raise ValueError("DihedralOdd needs odd n >= 3")
        if self.kind == "DihedralLargeEven" and (self.n is None or self.n <= 2 or self.n % 2):
            raise ValueError("DihedralLargeEven needs even n > 2")

    def __str__(self) -> str:
        if self.kind == "Resolved":
            return f"Resolved({self.reason})"
        if self.n is not None:
            return f"{self.kind}({self.n})"
        return self.kind


@dataclass(frozen=True)
class Signature:
    order: int
    order2_count: int
    k4_count: int
    cyclic: bool
    abelian: bool


def element_orders(elements: Iterable[ProjMat]) -> dict[ProjMat, int]:
    elements = list(elements)
    out = {}
    for g in elements:
        k = proj_order(g, len(elements))
        if k is None:
            raise SignatureMismatch(f"{g} has no finite order within the group size")
        out[g] = k
    return out


def k4_subgroups(elements: Iterable[ProjMat], orders: dict[ProjMat, int] | None = None) -> list[frozenset[ProjMat]]:
    """Klein four-subgroups, found by scanning triples of order-2 elements."""
    elements = list(elements)
    orders = orders or element_orders(elements)
    twos = sorted(g for g in elements if orders[g] == 2)
    out = []
    for a, b, c in itertools.combinations(twos, 3):
        if a * b == c and b * a == c:
            out.append(frozenset({PI, a, b, c}))
    return out


def signature(elements: Iterable[ProjMat]) -> Signature:
    elements = list(elements)
    orders = element_orders(elements)
    n = len(elements)
    abelian = all(a * b == b * a for a, b in itertools.combinations(elements, 2))
    return Signature(
        order=n,
        order2_count=sum(1 for k in orders.values() if k == 2),
        k4_count=len(k4_subgroups(elements, orders)),
        cyclic=any(k == n for k in orders.values()),
        abelian=abelian,
    )


def label_for_signature(sig: Signature) -> CaseLabel:
    n, t, k = sig.order, sig.order2_count, sig.k4_count
    if sig.cyclic:
        if n == 1:
            return CaseLabel("C1")
        if n == 2:
            return CaseLabel("C2")
        if t == (1 if n % 2 == 0 else 0) and k == 0:
            return CaseLabel("CnHigh", n)
    else:
        if (n, t, k) == (4, 3, 1):
            return CaseLabel("K4")
        if n % 2 == 0:
            h = n // 2
            if h >= 3 and h % 2 == 1 and t == h and k == 0:
                return CaseLabel("DihedralOdd", h)
            if h > 2 and h % 2 == 0 and t == h + 1 and k == h // 2 and not _is_polyhedral(n, t, k):
                return CaseLabel("DihedralLargeEven", h)
        if (n, t, k) == (12, 3, 1):
            return CaseLabel("Tetrahedral")
        if (n, t, k) == (24, 9, 4):
            return CaseLabel("Octahedral")
        if (n, t, k) == (60, 15, 5):
            return CaseLabel("Icosahedral")
    raise SignatureMismatch(
        f"no finite rotation group has order {n}, {t} order-2 elements, {k} Klein four-subgroups"
        + (" and is cyclic" if sig.cyclic else "")
    )


def _is_polyhedral(n: int, t: int, k: int) -> bool:
    return (n, t, k) in {(12, 3, 1), (24, 9, 4), (60, 15, 5)}


def classify_group(elements: Iterable[ProjMat]) -> CaseLabel:
    elements = frozenset(elements)
    for a in elements:
        for b in elements:
            if a * b not in elements:
                raise SignatureMismatch("element set is not closed under products")
    return label_for_signature(signature(elements))


# --------------------------------------------------------------------------
# transpose structure and canonical forms
# --------------------------------------------------------------------------

def transpose_closure_check(elements: Iterable[ProjMat]) -> bool:
    s = frozenset(elements)
    return all(g.T in s for g in s)


def transpose_fixed_order2(elements: Iterable[ProjMat]) -> ProjMat | None:
    s = frozenset(elements)
    for g in sorted(s):
        if not g.is_identity() and (g * g).is_identity() and g.T == g:
            return g
    return None


@dataclass(frozen=True)
class DiagForm:
    basis: Basis2


@dataclass(frozen=True)
class YForm:
    pass


def _eigenvector(a: Matrix, mu: Scalar) -> tuple[Scalar, Scalar]:
    (p, q), (r, s) = a
    if q:
        x, y = q, mu - p
    elif r:
        x, y = mu - s, r
    else:
        # diagonal: pick the coordinate axis belonging to mu
        x, y = (ONE, ZERO) if p == mu else (ZERO, ONE)
    lead = x if x else y
    return x / lead, y / lead


def canonicalize_order2(g: ProjMat) -> DiagForm | YForm:
    """Orthogonal M with ``M^T g M`` proportional to diag(i, -i), or the Y case."""
    if g.is_identity() or not (g * g).is_identity():
        raise ValueError(f"{g} does not have projective order 2")
    if g.T != g:
        raise NotTransposeFixed(f"{g} is not fixed by transposition")
    a = g.rep
    if g.trace():
        raise TraceNonzero(f"order-2 element {g} has nonzero trace")
    if g == PX:
        return DiagForm(IDENTITY)
    mu = sqrt_if_simple(-g.det_rep)
    if mu is None:
        raise EigenvaluesOutsideField(f"eigenvalues of {g} need sqrt({-g.det_rep})")
    x, y = _eigenvector(a, mu)
    norm = x * x + y * y
    if not norm:
        if g != PY:
            raise InternalContradiction(f"isotropic eigenvector but {g} is not the Y class")
        return YForm()
    r = sqrt_if_simple(norm)
    if r is None:
        raise NormalizationUnsupported(f"cannot normalize eigenvector: sqrt({norm}) is not simple")
    x, y = x / r, y / r
    m = Basis2(((x, y), (y, -x)))
    if not m.orthogonal or g.conjugate_by(m) != PX:
        raise InternalContradiction(f"basis change failed to diagonalize {g}")
    return DiagForm(m)


@dataclass(frozen=True)
class K4Canonical:
    kind: str  # "Q3" or "Q3Prime"
    elements: tuple[ProjMat, ProjMat, ProjMat]
    basis: Basis2
    subgroup: frozenset[ProjMat]


def canonicalize_K4(group: Iterable[ProjMat], via_y: bool = False) -> K4Canonical:
    """Standard form of a transpose-closed Klein four-subgroup.

    With ``via_y`` the Y class is used as the fixed element when present,
    and the standard form is reached by a rotation that diagonalizes a
    partner of Y.
    """
    group = frozenset(group)
    closed = [k for k in k4_subgroups(group) if all(x.T in k for x in k)]
    if not closed:
        raise NoClosedK4("no Klein four-subgroup is closed under transposition")
    sub = closed[0]
    triple = sorted(x for x in sub if not x.is_identity())
    # prefer X itself, then any fixed element other than Y
    fixed = min((x for x in triple if x.T == x), key=lambda x: (x != PX, (x == PY) != via_y, x.sort_key()))
    form = canonicalize_order2(fixed)
    if isinstance(form, YForm):
        # the other two elements are symmetric; diagonalize one by a rotation
        other = next(x for x in triple if x != fixed)
        if other.T != other:
            raise InternalContradiction("partner of Y is not symmetric")
        inner = canonicalize_order2(other)
        if not isinstance(inner, DiagForm):
            raise InternalContradiction("partner of Y is isotropic")
        (x, y), _ = inner.basis.entries
        basis = Basis2(((x, -y), (y, x)))
    else:
        basis = form.basis
    moved = [x.conjugate_by(basis) for x in triple]
    if PX not in moved:
        raise InternalContradiction("basis change did not produce X")
    rest = sorted(x for x in moved if x != PX)
    for b in rest:
        if b.rep[0][0] or b.rep[1][1]:
            raise InternalContradiction(f"{b} should be anti-diagonal")
    if rest[0].T == rest[0]:
        kind, target = "Q3", Q3
    else:
        kind, target = "Q3Prime", Q3_PRIME
    if frozenset(moved) != target:
        raise InternalContradiction(f"standardized triple {moved} is not {kind}")
    return K4Canonical(kind, (PX, rest[0], rest[1]), basis, sub)


# --------------------------------------------------------------------------
# gadget enumeration
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Realized:
    func: Func
    witness: Gadget
    cost: int


@dataclass
class Enumeration:
    binaries: list[Realized]
    unaries: list[Realized]
    budget: int
    truncated: bool


def _proj_key(f: Func) -> tuple[Scalar, ...] | None:
    lead = next((v for v in f.values if v), None)
    if lead is None:
        return None
    if lead == 1:
        return f.values
    inv = lead.inv()
    return tuple(v * inv for v in f.values)


class _Pool:
    def __init__(self) -> None:
        self.items: list[Realized] = []
        self.keys: set[tuple[Scalar, ...]] = set()

    def offer(self, f: Func, build, cost: int) -> bool:
        key = _proj_key(f)
        if key is None or key in self.keys:
            return False
        self.keys.add(key)
        self.items.append(Realized(f, build(), cost))
        return True

    def __contains__(self, f: Func) -> bool:
        return _proj_key(f) in self.keys


def _closings(slots: list[int], budget: int, binaries: list[Realized], unaries: list[Realized]):
    """Ways to close every slot with total attachment cost exactly ``budget``."""
    if not slots:
        if budget == 0:
            yield []
        return
    s, rest = slots[0], slots[1:]
    for u in unaries:
        if u.cost <= budget:
            for tail in _closings(rest, budget - u.cost, binaries, unaries):
                yield [("cap", s, u)] + tail
    for k, t in enumerate(rest):
        others = rest[:k] + rest[k + 1:]
        for tail in _closings(others, budget, binaries, unaries):
            yield [("edge", s, t)] + tail
        for b in binaries:
            if b.cost <= budget:
                for tail in _closings(others, budget - b.cost, binaries, unaries):
                    yield [("bin", s, t, b)] + tail
                    yield [("bin", t, s, b)] + tail


def _closed_seed(f: Func, ext: Sequence[int], plan: list, spliced: bool) -> Gadget:
    gb = GadgetBuilder()
    root = gb.add(f)
    for step in plan:
        if step[0] == "edge":
            gb.connect((root, step[1]), (root, step[2]))
        elif step[0] == "bin":
            _, s, t, b = step
            if spliced:
                e0, e1 = gb.splice(b.witness)
            else:
                v = gb.add(b.func)
                e0, e1 = (v, 0), (v, 1)
            gb.connect((root, s), e0)
            gb.connect(e1, (root, t))
        else:
            _, s, u = step
            if spliced:
                (e0,) = gb.splice(u.witness)
            else:
                v = gb.add(u.func)
                e0 = (v, 0)
            gb.connect((root, s), e0)
    return gb.build([(root, s) for s in ext])


def _serial(first: Realized, second: Realized, spliced: bool) -> Gadget:
    """first(x, e) second(e, y) for binaries, or u(e) b(e, y) for a cap."""
    gb = GadgetBuilder()
    if spliced:
        a = gb.splice(first.witness)
        b = gb.splice(second.witness)
    else:
        va, vb = gb.add(first.func), gb.add(second.func)
        a = [(va, s) for s in range(first.func.arity)]
        b = [(vb, s) for s in range(second.func.arity)]
    gb.connect(a[-1], b[0])
    return gb.build(a[:-1] + b[1:])


def enumerate_binaries(funcs: Sequence[Func], budget: int) -> Enumeration:
    """Breadth-first search over small gadgets, level by vertex count.

    A level-c candidate is either a function of the set with one or two
    slots left dangling and every other slot closed by a plain loop, by a
    realized binary spliced into a loop, or by a realized unary, with total
    vertex count c; or a serial composition of realized pieces whose costs
    add up to c.  Results are deduplicated up to scalar multiples and zero
    functions are dropped.  ``truncated`` is False only when the realized
    binaries and unaries are closed under serial composition.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    bins, uns = _Pool(), _Pool()
    for c in range(1, budget + 1):
        prior_b = list(bins.items)
        prior_u = list(uns.items)
        found: list[tuple[_Pool, Func, callable]] = []
        for f in funcs:
            if f.arity == 0:
                continue
            for width in (1, 2):
                if f.arity < width:
                    continue
                for ext in itertools.permutations(range(f.arity), width):
                    rest = [s for s in range(f.arity) if s not in ext]
                    for plan in _closings(rest, c - 1, prior_b, prior_u):
                        small = _closed_seed(f, ext, plan, spliced=False)
                        val = gadget_function(small)
                        pool = bins if width == 2 else uns
                        found.append((pool, val, lambda f=f, ext=ext, plan=plan: _closed_seed(f, ext, plan, True)))
        for x in prior_b + prior_u:
            for y in prior_b:
                if x.cost + y.cost != c:
                    continue
                val = gadget_function(_serial(x, y, spliced=False))
                pool = bins if x.func.arity == 2 else uns
                found.append((pool, val, lambda x=x, y=y: _serial(x, y, True)))
        for pool, val, build in found:
            pool.offer(val, build, c)
    truncated = not _composition_closed(bins, uns)
    return Enumeration(list(bins.items), list(uns.items), budget, truncated)


def _composition_closed(bins: _Pool, uns: _Pool) -> bool:
    for x in bins.items + uns.items:
        for y in bins.items:
            val = gadget_function(_serial(x, y, spliced=False))
            if val.is_zero():
                continue
            if val not in (bins if x.func.arity == 2 else uns):
                return False
    return True


# --------------------------------------------------------------------------
# pipeline
# --------------------------------------------------------------------------

@dataclass
class GroupReport:
    label: CaseLabel
    elements: frozenset[ProjMat] = frozenset()
    order: int = 0
    order2_count: int = 0
    k4_subgroups: list[frozenset[ProjMat]] = field(default_factory=list)
    binaries: list[Realized] = field(default_factory=list)
    budget: int = 0
    truncated: bool = False
    witness: Realized | None = None
    canonical_basis: Basis2 | None = None
    canonical_forms: K4Canonical | None = None
    order2_form: DiagForm | YForm | None = None
    notes: list[str] = field(default_factory=list)


def check_order2_traces(elements: Iterable[ProjMat]) -> None:
    """Every order-2 element must have trace zero (any lift)."""
    for g in elements:
        if not g.is_identity() and (g * g).is_identity() and g.trace():
            raise TraceNonzero(f"order-2 element {g} has nonzero trace")


def pipeline_classify(funcs: Sequence[Func], budget: int = 3, cap: int = 130) -> GroupReport:
    enum = enumerate_binaries(funcs, budget)
    base = dict(binaries=enum.binaries, budget=budget, truncated=enum.truncated)
    notes = ["binaries are realized by gadgets only"]
    for b in enum.binaries:
        if not det2(b.func.matrix()):
            return GroupReport(CaseLabel("Resolved", reason="Rank1Found"), witness=b, notes=notes, **base)
    for b in enum.binaries:
        jc = jordan_classify(b.func)
        if isinstance(jc, JordanBlock):
            return GroupReport(CaseLabel("Resolved", reason="JordanBlockFound"), witness=b, notes=notes, **base)
        if isinstance(jc, DiagRatioInfinite):
            label = CaseLabel("Resolved", reason="InfiniteOrderFound", bound=jc.bound)
            return GroupReport(label, witness=b, notes=notes, **base)
    gens: list[ProjMat] = []
    for b in enum.binaries:
        p = ProjMat(b.func)
        gens += [p, p.T]
    if not gens:
        notes.append("no binary was realized within the budget")
    try:
        elements = group_closure(gens, cap)
    except GroupTooLarge as exc:
        notes.append(str(exc))
        return GroupReport(CaseLabel("TooLarge"), elements=exc.partial, order=len(exc.partial), notes=notes, **base)
    check_order2_traces(elements)
    sig = signature(elements)
    label = label_for_signature(sig)
    report = GroupReport(
        label,
        elements=elements,
        order=sig.order,
        order2_count=sig.order2_count,
        k4_subgroups=k4_subgroups(elements),
        notes=notes,
        **base,
    )
    if report.k4_subgroups:
        try:
            canon = canonicalize_K4(elements)
            report.canonical_forms = canon
            report.canonical_basis = canon.basis
        except (NoClosedK4, NormalizationUnsupported, EigenvaluesOutsideField) as exc:
            notes.append(f"no canonical Klein four form: {exc}")
    elif sig.order2_count % 2 == 1:
        g = transpose_fixed_order2(elements)
        try:
            form = canonicalize_order2(g)
            report.order2_form = form
            if isinstance(form, DiagForm):
                report.canonical_basis = form.basis
        except (NormalizationUnsupported, EigenvaluesOutsideField) as exc:
            notes.append(f"no canonical order-2 form: {exc}")
    return report
