"""Boolean-input function tables, gadgets, and exact network contraction.

Conventions
-----------
A :class:`Func` of arity ``d`` stores ``2**d`` exact values indexed by the
input ``x1 x2 ... xd`` read as a big-endian integer, so variable 0 is the
most significant bit.  A :class:`Gadget` is a multigraph whose vertices
carry functions; each slot of each vertex is used exactly once, either by
an internal edge or as an external (dangling) edge.

Two evaluation paths exist: the literal sum over all edge assignments and
a greedy pairwise elimination.  They must agree exactly; the literal path
is kept as the reference.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import GadgetError
from .field import ONE, ZERO, Scalar, as_scalar
from .linalg import Matrix, mat

Endpoint = tuple[int, int]


def _bit(index: int, arity: int, var: int) -> int:
    return (index >> (arity - 1 - var)) & 1


def _bits(index: int, arity: int) -> tuple[int, ...]:
    return tuple((index >> (arity - 1 - v)) & 1 for v in range(arity))


def _index(bits: Iterable[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


class Func:
    """Exact function ``{0,1}^arity -> Q(zeta)`` as a value table."""

    __slots__ = ("values", "arity", "_hash")

    def __init__(self, values: Iterable[object], arity: int | None = None):
        vals = tuple(as_scalar(v) for v in values)
        d = len(vals).bit_length() - 1
        if len(vals) == 0 or 1 << d != len(vals):
            raise ValueError(f"table length {len(vals)} is not a power of two")
        if arity is not None and arity != d:
            raise ValueError(f"arity {arity} does not match table length {len(vals)}")
        self.values = vals
        self.arity = d
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, c: object) -> Func:
        return cls([c])

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence[object]]) -> Func:
        """Row index supplies the leading variables, column index the rest."""
        m = mat(m)
        return cls([x for row in m for x in row])

    @classmethod
    def from_support(cls, arity: int, support: Mapping[int | str, object]) -> Func:
        vals = [ZERO] * (1 << arity)
        for key, v in support.items():
            idx = int(key, 2) if isinstance(key, str) else key
            vals[idx] = as_scalar(v)
        return cls(vals)

    # -- access ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, key: int | str | Sequence[int]) -> Scalar:
        if isinstance(key, int):
            return self.values[key]
        if isinstance(key, str):
            return self.values[int(key, 2)]
        return self.values[_index(key)]

    def __iter__(self):
        return iter(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.values) if v)

    def matrix(self, row_vars: Sequence[int] = (0,)) -> Matrix:
        return reshape_matrix(self, row_vars)

    # -- algebra ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Func):
            return NotImplemented
        return self.arity == other.arity and self.values == other.values

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.values)
        return self._hash

    def __add__(self, other: Func) -> Func:
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return Func(a + b for a, b in zip(self.values, other.values))

    def __sub__(self, other: Func) -> Func:
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return Func(a - b for a, b in zip(self.values, other.values))

    def __neg__(self) -> Func:
        return Func(-a for a in self.values)

    def scale(self, c: object) -> Func:
        c = as_scalar(c)
        return Func(a * c for a in self.values)

    def __mul__(self, c: object) -> Func:
        if isinstance(c, Func):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def proportional_to(self, other: Func) -> Scalar | None:
        """lam with ``self == lam * other`` (other nonzero), else None."""
        if self.arity != other.arity:
            return None
        lam = None
        for x, y in zip(self.values, other.values):
            if not y:
                if x:
                    return None
                continue
            if lam is None:
                lam = x / y
            elif x != lam * y:
                return None
        return lam

    def permute(self, order: Sequence[int]) -> Func:
        """New function G with ``G(y) = F(x)`` where ``x[order[j]] = y[j]``."""
        d = self.arity
        if sorted(order) != list(range(d)):
            raise ValueError(f"{order} is not a permutation of range({d})")
        out = [ZERO] * len(self.values)
        for y in range(len(self.values)):
            x = 0
            for j, v in enumerate(order):
                if (y >> (d - 1 - j)) & 1:
                    x |= 1 << (d - 1 - v)
            out[y] = self.values[x]
        return Func(out)

    def flip(self) -> Func:
        """Global bit complement of the argument."""
        top = len(self.values) - 1
        return Func(self.values[top - i] for i in range(len(self.values)))

    def tensor(self, other: Func) -> Func:
        return tensor_product(self, other)

    def pin(self, assignment: Mapping[int, int]) -> Func:
        return pin(self, assignment)

    def __repr__(self) -> str:
        return f"Func({[str(v) for v in self.values]})"


# standard functions -------------------------------------------------------

def eq(k: int) -> Func:
    vals = [ZERO] * (1 << k)
    vals[0] = ONE
    vals[-1] = ONE
    return Func(vals)


def neq2() -> Func:
    return Func([0, 1, 1, 0])


def delta0() -> Func:
    return Func([1, 0])


def delta1() -> Func:
    return Func([0, 1])


def symmetric(weights: Sequence[object]) -> Func:
    """Symmetric function ``[f0, ..., fd]`` valued by Hamming weight."""
    d = len(weights) - 1
    w = [as_scalar(x) for x in weights]
    return Func(w[bin(i).count("1")] for i in range(1 << d))


# operations ----------------------------------------------------------------

def tensor_product(f: Func, g: Func) -> Func:
    return Func(a * b for a in f.values for b in g.values)


def tensor_all(funcs: Iterable[Func]) -> Func:
    out = Func([1])
    for f in funcs:
        out = tensor_product(out, f)
    return out


def reshape_matrix(f: Func, row_vars: Sequence[int]) -> Matrix:
    d = f.arity
    row_vars = list(row_vars)
    if len(set(row_vars)) != len(row_vars) or any(not 0 <= v < d for v in row_vars):
        raise ValueError(f"row variables {row_vars} invalid for arity {d}")
    col_vars = [v for v in range(d) if v not in row_vars]
    order = row_vars + col_vars
    g = f.permute(order)
    ncols = 1 << len(col_vars)
    vals = g.values
    return tuple(tuple(vals[r * ncols:(r + 1) * ncols]) for r in range(1 << len(row_vars)))


def pin(f: Func, assignment: Mapping[int, int]) -> Func:
    d = f.arity
    for v, b in assignment.items():
        if not 0 <= v < d:
            raise ValueError(f"variable {v} out of range for arity {d}")
        if b not in (0, 1):
            raise ValueError(f"pin value must be 0 or 1, got {b!r}")
    free = [v for v in range(d) if v not in assignment]
    out = []
    for y in range(1 << len(free)):
        x = 0
        for v, b in assignment.items():
            x |= b << (d - 1 - v)
        for j, v in enumerate(free):
            if (y >> (len(free) - 1 - j)) & 1:
                x |= 1 << (d - 1 - v)
        out.append(f.values[x])
    return Func(out)


def self_loop(f: Func, u: int, v: int, e: Func | None = None) -> Func:
    """Join variables u and v through the binary ``e`` (plain edge if None)."""
    if u == v:
        raise ValueError("self-loop needs two distinct variables")
    e = e if e is not None else eq(2)
    if e.arity != 2:
        raise ValueError("loop function must be binary")
    d = f.arity
    free = [w for w in range(d) if w not in (u, v)]
    out = []
    for y in range(1 << len(free)):
        base = 0
        for j, w in enumerate(free):
            if (y >> (len(free) - 1 - j)) & 1:
                base |= 1 << (d - 1 - w)
        acc = ZERO
        for e1 in (0, 1):
            for e2 in (0, 1):
                w = e.values[2 * e1 + e2]
                if not w:
                    continue
                x = base | (e1 << (d - 1 - u)) | (e2 << (d - 1 - v))
                val = f.values[x]
                if val:
                    acc = acc + w * val
        out.append(acc)
    return Func(out)


# --------------------------------------------------------------------------
# gadgets
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Gadget:
    """Vertices with functions, internal edges, and ordered external endpoints.

    ``sides`` optionally tags each vertex 0 or 1 for bipartite checks;
    ``names`` optionally carries function names for serialization.
    """

    funcs: tuple[Func, ...]
    edges: tuple[tuple[Endpoint, Endpoint], ...] = ()
    external: tuple[Endpoint, ...] = ()
    sides: tuple[int, ...] | None = None
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "funcs", tuple(self.funcs))
        object.__setattr__(
            self, "edges", tuple((tuple(a), tuple(b)) for a, b in self.edges)
        )
        object.__setattr__(self, "external", tuple(tuple(x) for x in self.external))
        if self.sides is not None:
            object.__setattr__(self, "sides", tuple(self.sides))
            if len(self.sides) != len(self.funcs):
                raise GadgetError("vertices: sides must tag every vertex")
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
        self._validate()

    def _validate(self) -> None:
        seen: dict[Endpoint, str] = {}

        def use(ep: Endpoint, where: str) -> None:
            if len(ep) != 2:
                raise GadgetError(f"{where}: endpoint must be [vertex, slot]")
            v, s = ep
            if not 0 <= v < len(self.funcs):
                raise GadgetError(f"{where}: vertex {v} does not exist")
            if not 0 <= s < self.funcs[v].arity:
                raise GadgetError(
                    f"{where}: slot {s} out of range for vertex {v} "
                    f"(arity {self.funcs[v].arity})"
                )
            if ep in seen:
                raise GadgetError(f"{where}: endpoint {list(ep)} already used by {seen[ep]}")
            seen[ep] = where

        for k, (a, b) in enumerate(self.edges):
            use(a, f"edges[{k}][0]")
            use(b, f"edges[{k}][1]")
        for k, ep in enumerate(self.external):
            use(ep, f"external[{k}]")
        for v, f in enumerate(self.funcs):
            for s in range(f.arity):
                if (v, s) not in seen:
                    raise GadgetError(f"vertices[{v}]: slot {s} is neither connected nor external")

    @property
    def arity(self) -> int:
        return len(self.external)

    @property
    def closed(self) -> bool:
        return not self.external

    def slot_map(self) -> dict[Endpoint, int]:
        """Label per endpoint: edge k -> k, external m -> -(m + 1)."""
        lab: dict[Endpoint, int] = {}
        for k, (a, b) in enumerate(self.edges):
            lab[a] = k
            lab[b] = k
        for m, ep in enumerate(self.external):
            lab[ep] = -(m + 1)
        return lab

    def neighbours(self, v: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a[0] == v:
                out.add(b[0])
            if b[0] == v:
                out.add(a[0])
        return out

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.funcs)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a[0]), find(b[0])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for v in range(len(self.funcs)):
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())


class GadgetBuilder:
    """Incremental construction of gadgets by adding and wiring pieces."""

    def __init__(self) -> None:
        self.funcs: list[Func] = []
        self.edges: list[tuple[Endpoint, Endpoint]] = []

    def add(self, f: Func) -> int:
        self.funcs.append(f)
        return len(self.funcs) - 1

    def connect(self, a: Endpoint, b: Endpoint) -> None:
        self.edges.append((a, b))

    def splice(self, g: Gadget) -> list[Endpoint]:
        """Copy ``g`` in; return its external endpoints in the new numbering."""
        off = len(self.funcs)
        self.funcs.extend(g.funcs)
        for a, b in g.edges:
            self.edges.append(((a[0] + off, a[1]), (b[0] + off, b[1])))
        return [(v + off, s) for v, s in g.external]

    def build(self, external: Sequence[Endpoint]) -> Gadget:
        return Gadget(tuple(self.funcs), tuple(self.edges), tuple(external))


def single_vertex(f: Func) -> Gadget:
    return Gadget((f,), (), tuple((0, s) for s in range(f.arity)))


def chain_gadget(funcs: Sequence[Func]) -> Gadget:
    """Binaries wired in a line; its function is the matrix product."""
    if not funcs:
        raise ValueError("empty chain")
    edges = [((k, 1), (k + 1, 0)) for k in range(len(funcs) - 1)]
    return Gadget(tuple(funcs), tuple(edges), ((0, 0), (len(funcs) - 1, 1)))


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

def _literal(g: Gadget) -> Func:
    lab = g.slot_map()
    slots = [[lab[(v, s)] for s in range(f.arity)] for v, f in enumerate(g.funcs)]
    ne, nx = len(g.edges), len(g.external)
    out = []
    for xa in range(1 << nx):
        xbits = _bits(xa, nx)
        acc = ZERO
        for ea in itertools.product((0, 1), repeat=ne):
            prod = ONE
            for v, f in enumerate(g.funcs):
                idx = 0
                for label in slots[v]:
                    idx = (idx << 1) | (ea[label] if label >= 0 else xbits[-label - 1])
                val = f.values[idx]
                if not val:
                    prod = ZERO
                    break
                prod = prod * val
            if prod:
                acc = acc + prod
        out.append(acc)
    return Func(out)


class _Tensor:
    __slots__ = ("labels", "table", "key")

    def __init__(self, labels: list[int], table: list[Scalar], key: int):
        self.labels = labels
        self.table = table
        self.key = key


def _trace_duplicates(t: _Tensor) -> _Tensor:
    labels, table = t.labels, t.table
    while True:
        dup = next((l for l in labels if labels.count(l) > 1), None)
        if dup is None:
            return _Tensor(labels, table, t.key)
        p = labels.index(dup)
        q = labels.index(dup, p + 1)
        d = len(labels)
        keep = [k for k in range(d) if k not in (p, q)]
        new = []
        for y in range(1 << len(keep)):
            base = 0
            for j, k in enumerate(keep):
                if (y >> (len(keep) - 1 - j)) & 1:
                    base |= 1 << (d - 1 - k)
            acc = ZERO
            for e in (0, 1):
                val = table[base | (e << (d - 1 - p)) | (e << (d - 1 - q))]
                if val:
                    acc = acc + val
            new.append(acc)
        labels = [labels[k] for k in keep]
        table = new


def _grouped(t: _Tensor, keep: list[int], shared: list[int]) -> dict[int, list[tuple[int, Scalar]]]:
    """Nonzero entries bucketed by the shared-label assignment."""
    d = len(t.labels)
    pos = {l: d - 1 - k for k, l in enumerate(t.labels)}
    kp = [pos[l] for l in keep]
    sp = [pos[l] for l in shared]
    out: dict[int, list[tuple[int, Scalar]]] = {}
    for idx, val in enumerate(t.table):
        if not val:
            continue
        a = 0
        for p in kp:
            a = (a << 1) | ((idx >> p) & 1)
        s = 0
        for p in sp:
            s = (s << 1) | ((idx >> p) & 1)
        out.setdefault(s, []).append((a, val))
    return out


def _contract(x: _Tensor, y: _Tensor) -> _Tensor:
    ys = set(y.labels)
    shared = [l for l in x.labels if l in ys]
    sh = set(shared)
    kx = [l for l in x.labels if l not in sh]
    ky = [l for l in y.labels if l not in sh]
    gx = _grouped(x, kx, shared)
    gy = _grouped(y, ky, shared)
    width = len(ky)
    table = [ZERO] * (1 << (len(kx) + width))
    for s, xs in gx.items():
        ylist = gy.get(s)
        if not ylist:
            continue
        for a, va in xs:
            base = a << width
            for b, vb in ylist:
                table[base | b] = table[base | b] + va * vb
    return _Tensor(kx + ky, table, min(x.key, y.key))


def contraction_order(g: Gadget) -> list[tuple[int, int]]:
    """Pairs of tensor keys in the order the greedy planner contracts them."""
    return _greedy(g, record=True)[1]


def _greedy(g: Gadget, record: bool = False) -> tuple[Func, list[tuple[int, int]]]:
    lab = g.slot_map()
    tensors = [
        _trace_duplicates(_Tensor([lab[(v, s)] for s in range(f.arity)], list(f.values), v))
        for v, f in enumerate(g.funcs)
    ]
    plan: list[tuple[int, int]] = []
    if not tensors:
        return Func([1]), plan
    while len(tensors) > 1:
        best = None
        for i in range(len(tensors)):
            li = set(tensors[i].labels)
            for j in range(i + 1, len(tensors)):
                lj = tensors[j].labels
                common = sum(1 for l in lj if l in li)
                score = len(li) + len(lj) - 2 * common
                key = (score, tensors[i].key, tensors[j].key)
                if best is None or key < best[0]:
                    best = (key, i, j)
        _, i, j = best
        if record:
            plan.append((tensors[i].key, tensors[j].key))
        merged = _contract(tensors[i], tensors[j])
        tensors[i] = merged
        del tensors[j]
    final = tensors[0]
    # reorder the surviving external labels into external order
    order = [final.labels.index(-(m + 1)) for m in range(len(g.external))]
    return Func(final.table).permute(order), plan


def gadget_function(g: Gadget, method: str = "greedy") -> Func:
    if method == "literal":
        return _literal(g)
    if method == "greedy":
        return _greedy(g)[0]
    raise ValueError(f"unknown evaluation method {method!r}")


def holant_value(g: Gadget, method: str = "greedy") -> Scalar:
    if not g.closed:
        raise GadgetError("holant_value needs a closed network (no external edges)")
    return gadget_function(g, method).values[0]


def induced_subgadget(g: Gadget, subset: Iterable[int]) -> tuple[Gadget, list[tuple[str, int]]]:
    """Sub-gadget on ``subset``; cut edges and owned externals become its externals.

    The second result describes each external of the sub-gadget as
    ``("edge", k)`` (cut edge k of g) or ``("ext", m)`` (external m of g).
    """
    s = sorted(set(subset))
    index = {v: k for k, v in enumerate(s)}
    inner, ext, origin = [], [], []
    for k, (a, b) in enumerate(g.edges):
        ina, inb = a[0] in index, b[0] in index
        if ina and inb:
            inner.append(((index[a[0]], a[1]), (index[b[0]], b[1])))
        elif ina or inb:
            ep = a if ina else b
            ext.append((index[ep[0]], ep[1]))
            origin.append(("edge", k))
    for m, ep in enumerate(g.external):
        if ep[0] in index:
            ext.append((index[ep[0]], ep[1]))
            origin.append(("ext", m))
    sub = Gadget(tuple(g.funcs[v] for v in s), tuple(inner), tuple(ext))
    return sub, origin


def contract_subgadget(g: Gadget, subset: Iterable[int], method: str = "greedy") -> Gadget:
    """Replace ``subset`` by one vertex carrying the induced sub-gadget's function."""
    s = set(subset)
    if not s:
        raise GadgetError("contraction subset must be nonempty")
    if not s <= set(range(len(g.funcs))):
        raise GadgetError(f"contraction subset {sorted(s)} names missing vertices")
    sub, origin = induced_subgadget(g, s)
    rest = [v for v in range(len(g.funcs)) if v not in s]
    index = {v: k for k, v in enumerate(rest)}
    new_v = len(rest)
    slot_of_edge = {k: slot for slot, (kind, k) in enumerate(origin) if kind == "edge"}
    slot_of_ext = {m: slot for slot, (kind, m) in enumerate(origin) if kind == "ext"}

    def remap(ep: Endpoint) -> Endpoint:
        return (index[ep[0]], ep[1])

    edges = []
    for k, (a, b) in enumerate(g.edges):
        ina, inb = a[0] in s, b[0] in s
        if not ina and not inb:
            edges.append((remap(a), remap(b)))
        elif ina != inb:
            outside = b if ina else a
            edges.append((remap(outside), (new_v, slot_of_edge[k])))
    external = []
    for m, ep in enumerate(g.external):
        external.append((new_v, slot_of_ext[m]) if ep[0] in s else remap(ep))
    funcs = tuple(g.funcs[v] for v in rest) + (gadget_function(sub, method),)
    return Gadget(funcs, tuple(edges), tuple(external))
