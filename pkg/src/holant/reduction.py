"""Basis changes, interpolation helpers and a few named constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    EigenvaluesOutsideField,
    GadgetError,
    IdentityViolation,
    NotBipartite,
    SingularBasis,
    SingularSystem,
)
from .field import I, ONE, ZERO, Scalar, as_scalar, field_cap, sqrt_if_simple
from .linalg import (
    Matrix,
    add,
    det2,
    identity,
    inverse,
    is_zero,
    kron,
    mat,
    mat_pow,
    matmul,
    scale,
    solve,
    trace,
    transpose,
)
from .tensor import Func, Gadget, GadgetBuilder, eq, holant_value, neq2


@dataclass(frozen=True)
class Basis2:
    """Invertible 2x2 basis-change matrix with its exact inverse."""

    entries: Matrix
    inverse: Matrix = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        m = mat(self.entries)
        if len(m) != 2 or len(m[0]) != 2:
            raise SingularBasis("a basis must be a 2x2 matrix")
        if not det2(m):
            raise SingularBasis("basis matrix has zero determinant")
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "inverse", inverse(m))

    @property
    def det(self) -> Scalar:
        return det2(self.entries)

    @property
    def transpose(self) -> Basis2:
        return Basis2(transpose(self.entries))

    @property
    def orthogonal(self) -> bool:
        return matmul(self.entries, transpose(self.entries)) == identity(2)

    def __matmul__(self, other: Basis2) -> Basis2:
        return Basis2(matmul(self.entries, other.entries))


IDENTITY = Basis2(((ONE, ZERO), (ZERO, ONE)))

# K sends =2 to a multiple of the disequality
K = Basis2(((ONE, ONE), (-I, I)))

# K tensor K with the two middle rows listed in the order (10), (01)
K_TENSOR2_TABLE: Matrix = mat(
    [
        [1, 1, 1, 1],
        [-I, -I, I, I],
        [-I, I, -I, I],
        [-1, 1, 1, -1],
    ]
)


def as_basis(m: Basis2 | Sequence[Sequence[object]]) -> Basis2:
    return m if isinstance(m, Basis2) else Basis2(mat(m))


def _apply_modewise(f: Func, m: Matrix) -> Func:
    # value row vector times m on every variable
    vals = list(f.values)
    d = f.arity
    for v in range(d):
        shift = d - 1 - v
        new = [ZERO] * len(vals)
        for idx, val in enumerate(vals):
            if not val:
                continue
            x = (idx >> shift) & 1
            base = idx & ~(1 << shift)
            for y in (0, 1):
                w = m[x][y]
                if w:
                    j = base | (y << shift)
                    new[j] = new[j] + val * w
        vals = new
    return Func(vals)


def transform_func(f: Func, m: Basis2 | Sequence[Sequence[object]]) -> Func:
    """``f`` as a row vector times the ``arity``-fold tensor power of ``m``."""
    return _apply_modewise(f, as_basis(m).entries)


def transform_column(f: Func, m: Basis2 | Sequence[Sequence[object]]) -> Func:
    """Tensor power of ``m`` times ``f`` as a column vector."""
    return _apply_modewise(f, transpose(as_basis(m).entries))


def transform_set(funcs: Sequence[Func], m: Basis2) -> list[Func]:
    return [transform_func(f, m) for f in funcs]


def holographic_pair(g: Gadget, m: Basis2) -> Gadget:
    """Side-0 functions become ``f M``; side-1 functions become ``M^-1 h``."""
    if not g.closed:
        raise GadgetError("holographic check needs a closed network")
    if g.sides is None:
        raise NotBipartite("network carries no side tags")
    for k, (a, b) in enumerate(g.edges):
        if g.sides[a[0]] == g.sides[b[0]]:
            raise NotBipartite(f"edges[{k}] joins two vertices on side {g.sides[a[0]]}")
    inv = Basis2(m.inverse)
    funcs = tuple(
        transform_func(f, m) if side == 0 else transform_column(f, inv)
        for f, side in zip(g.funcs, g.sides)
    )
    return Gadget(funcs, g.edges, g.external, g.sides)


def holographic_invariance_check(g: Gadget, m: Basis2 | Sequence[Sequence[object]]) -> bool:
    m = as_basis(m)
    return holant_value(holographic_pair(g, m)) == holant_value(g)


def chain_power(b: Func, k: int) -> Func:
    if b.arity != 2:
        raise ValueError("chain_power needs a binary function")
    if k < 1:
        raise ValueError("chain length must be positive")
    return Func.from_matrix(mat_pow(b.matrix(), k))


def vandermonde_solve(pairs: Sequence[tuple[object, object]], rhs: Sequence[object]) -> list[Scalar]:
    """Solve ``sum_j a_i^j b_i^(d-j) x_j = rhs_i`` for ``x_0..x_d``."""
    if len(pairs) != len(rhs):
        raise ValueError("need as many right-hand sides as pairs")
    d = len(pairs) - 1
    ab = [(as_scalar(a), as_scalar(b)) for a, b in pairs]
    if any(not b for _, b in ab):
        raise SingularSystem("every b_i must be nonzero")
    ratios = [a / b for a, b in ab]
    for i in range(len(ratios)):
        for j in range(i):
            if ratios[i] == ratios[j]:
                raise SingularSystem(f"ratios {i} and {j} coincide ({ratios[i]})")
    rows = tuple(tuple(a ** j * b ** (d - j) for j in range(d + 1)) for a, b in ab)
    return solve(rows, [as_scalar(r) for r in rhs])


# -- Jordan analysis ------------------------------------------------------

@dataclass(frozen=True)
class Rank1:
    pass


@dataclass(frozen=True)
class JordanBlock:
    eigenvalue: Scalar


@dataclass(frozen=True)
class DiagRatioOrder:
    k: int


@dataclass(frozen=True)
class DiagRatioInfinite:
    bound: int


def default_order_bound() -> int:
    return 2 * field_cap()


def jordan_classify(b: Func, order_bound: int | None = None) -> Rank1 | JordanBlock | DiagRatioOrder | DiagRatioInfinite:
    """Classify a binary by the shape of its Jordan form.

    For diagonalizable B the eigenvalue ratio r is never computed
    directly: ``r + 1/r = tr^2/det - 2`` and the sequence
    ``s_k = r^k + r^-k`` obeys ``s_(k+1) = u s_k - s_(k-1)``, while
    ``r^k = 1`` exactly when ``s_k = 2``.  This stays inside the field
    even when the eigenvalues do not.
    """
    m = b.matrix()
    if is_zero(m):
        raise ValueError("jordan_classify needs a nonzero binary")
    bound = default_order_bound() if order_bound is None else order_bound
    d = det2(m)
    if not d:
        return Rank1()
    t = trace(m)
    disc = t * t - 4 * d
    if not disc:
        lam = t / 2
        if m == scale(identity(2), lam):
            return DiagRatioOrder(1)
        return JordanBlock(lam)
    u = t * t / d - 2
    prev, cur = Scalar(2), u
    for k in range(1, bound + 1):
        if cur == 2:
            return DiagRatioOrder(k)
        prev, cur = cur, u * cur - prev
    return DiagRatioInfinite(bound)


def eigenvalues(b: Func | Matrix) -> tuple[Scalar, Scalar]:
    m = b.matrix() if isinstance(b, Func) else b
    t = trace(m)
    disc = t * t - 4 * det2(m)
    root = sqrt_if_simple(disc)
    if root is None:
        raise EigenvaluesOutsideField(f"sqrt({disc}) is not of the form r*zeta")
    return (t + root) / 2, (t - root) / 2


# -- constructions --------------------------------------------------------

def build_D2d(d: int) -> Func:
    """Arity-2d function with value 1 on ``(01)^d`` and ``(10)^d``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    a = int("01" * d, 2)
    vals = [ZERO] * (1 << (2 * d))
    vals[a] = ONE
    vals[((1 << (2 * d)) - 1) ^ a] = ONE
    return Func(vals)


def d2d_gadget(d: int) -> Gadget:
    """Realize ``build_D2d(d)`` from copies of the arity-4 case.

    Consecutive copies are joined through a disequality vertex from the
    last slot of one copy to the first slot of the next.
    """
    if d < 2:
        raise ValueError("the gadget needs d >= 2")
    base = build_D2d(2)
    gb = GadgetBuilder()
    copies = [gb.add(base) for _ in range(d - 1)]
    for left, right in zip(copies, copies[1:]):
        link = gb.add(neq2())
        gb.connect((left, 3), (link, 0))
        gb.connect((link, 1), (right, 0))
    ext = [(copies[0], 0)]
    for c in copies:
        ext += [(c, 1), (c, 2)]
    ext.append((copies[-1], 3))
    return gb.build(ext)


NEQ2_SQUARED: Matrix = kron(neq2().matrix(), neq2().matrix())


def corner_block_func(s: object, b: object) -> Func:
    """Arity-4 function whose matrix (rows x1 x2) is [[s,0,0,0],[0,1,b,0],[0,b,1,0],[0,0,0,0]]."""
    s, b = as_scalar(s), as_scalar(b)
    return Func.from_matrix([[s, 0, 0, 0], [0, 1, b, 0], [0, b, 1, 0], [0, 0, 0, 0]])


def corner_block_matrix(s: object) -> Matrix:
    """``corner_block_func(s, 1)`` regrouped with rows (x1, x3) and columns (x2, x4)."""
    return corner_block_func(s, 1).matrix((0, 2))


def n_power_identity(s: object, k: int) -> Matrix:
    """``(corner_block_matrix(s) (neq2 x neq2))^k``, asserted equal to ``I + k s E_14``."""
    if k < 1:
        raise ValueError("k must be positive")
    s = as_scalar(s)
    p = mat_pow(matmul(corner_block_matrix(s), NEQ2_SQUARED), k)
    corner = tuple(
        tuple(k * s if (r, c) == (0, 3) else ZERO for c in range(4)) for r in range(4)
    )
    expected = add(identity(4), corner)
    if p != expected:
        raise IdentityViolation(f"power {k} with s={s} differs from I + k*s*E14")
    return p


def k_sandwich() -> Matrix:
    """``K^T (=2) K`` as a matrix."""
    k = K.entries
    return matmul(matmul(transpose(k), eq(2).matrix()), k)
