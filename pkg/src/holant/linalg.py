"""Small exact matrix helpers over :class:`~holant.field.Scalar`.

Matrices are tuples of row tuples.  Everything here is exact; sizes stay
tiny (at most 16x16), so plain Python loops are adequate.
"""

from __future__ import annotations

from typing import Sequence

from .errors import SingularSystem
from .field import ONE, ZERO, Scalar, as_scalar

Matrix = tuple[tuple[Scalar, ...], ...]


def mat(rows: Sequence[Sequence[object]]) -> Matrix:
    """Coerce nested sequences (ints, Fractions, strings, Scalars) to a Matrix."""
    out = tuple(tuple(as_scalar(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple((ZERO,) * c for _ in range(r))


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), len(a[0]) if a else 0


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {shape(a)} @ {shape(b)}")
    bt = transpose(b)
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def matvec(a: Matrix, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x * y for x in ra for y in rb)
        for ra in a
        for rb in b
    )


def kron_power(a: Matrix, k: int) -> Matrix:
    out: Matrix = ((ONE,),)
    for _ in range(k):
        out = kron(out, a)
    return out


def scale(a: Matrix, c: object) -> Matrix:
    c = as_scalar(c)
    return tuple(tuple(x * c for x in row) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_pow(a: Matrix, k: int) -> Matrix:
    if k < 0:
        return mat_pow(inverse(a), -k)
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def trace(a: Matrix) -> Scalar:
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def det2(a: Matrix) -> Scalar:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def is_zero(a: Matrix) -> bool:
    return not any(x for row in a for x in row)


def first_nonzero(a: Matrix) -> Scalar | None:
    for row in a:
        for x in row:
            if x:
                return x
    return None


def proportional(a: Matrix, b: Matrix) -> Scalar | None:
    """Return lam with a == lam * b, or None.  Requires b nonzero."""
    lam = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if not y:
                if x:
                    return None
                continue
            if lam is None:
                lam = x / y
            elif x != lam * y:
                return None
    return lam


def rank(a: Matrix) -> int:
    rows = [list(r) for r in a]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inv()
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def solve(a: Matrix, rhs: Sequence[Scalar]) -> list[Scalar]:
    """Solve a square system exactly; SingularSystem if not invertible."""
    n = len(a)
    aug = [list(a[i]) + [as_scalar(rhs[i])] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c]), None)
        if p is None:
            raise SingularSystem("coefficient matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        inv = aug[c][c].inv()
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    if n == 2:
        d = det2(a)
        if not d:
            raise SingularSystem("matrix is singular")
        di = d.inv()
        return ((a[1][1] * di, -a[0][1] * di), (-a[1][0] * di, a[0][0] * di))
    cols = [solve(a, [ONE if i == j else ZERO for i in range(n)]) for j in range(n)]
    return transpose(tuple(tuple(c) for c in cols))


def fmt(a: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in a]
