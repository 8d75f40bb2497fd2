"""Exact arithmetic in cyclotomic fields.

A :class:`Scalar` is an element of ``Q(zeta_n)`` stored as an integer
coefficient vector over a common positive denominator, in the power basis
``1, zeta_n, ..., zeta_n**(phi(n)-1)`` reduced modulo the ``n``-th
cyclotomic polynomial.  Every scalar carries its own ``n``; binary
operations lift both operands to ``lcm(n1, n2)``.  Rationals are always
stored with ``n = 1`` so that the common case stays cheap.

The working field order (default 24, overridable through the
``HOLANT_FIELD_N`` environment variable) is promoted by :func:`parse_scalar`
whenever a larger root of unity is mentioned, up to :func:`field_cap`.
"""

from __future__ import annotations

import math
import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import DivisionByZero, FieldTooSmall, ParseError

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "as_scalar",
    "conj",
    "field_cap",
    "field_order",
    "is_pure_imaginary",
    "is_real",
    "parse_scalar",
    "set_field",
    "sqrt_if_simple",
    "totient",
    "zeta",
]

DEFAULT_N = 24
DEFAULT_CAP = 240

_session = {"n": DEFAULT_N, "cap": DEFAULT_CAP}


def _init_session() -> None:
    raw = os.environ.get("HOLANT_FIELD_N")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise FieldTooSmall(f"HOLANT_FIELD_N={raw!r} is not an integer") from None
        set_field(n)


def field_order() -> int:
    """Current working field order ``N``."""
    return _session["n"]


def field_cap() -> int:
    """Largest cyclotomic order any scalar may live in."""
    return _session["cap"]


def set_field(n: int | None = None, cap: int | None = None) -> None:
    """Reset the working field order and/or the cap."""
    if cap is not None:
        if cap < 1:
            raise FieldTooSmall(f"cap must be positive, got {cap}")
        _session["cap"] = cap
    if n is not None:
        if n < 1 or n > _session["cap"]:
            raise FieldTooSmall(f"field order {n} outside 1..{_session['cap']}")
        _session["n"] = n


def _check_order(n: int) -> int:
    if n > _session["cap"]:
        raise FieldTooSmall(f"Q(zeta_{n}) exceeds the field cap {_session['cap']}")
    return n


def _promote_session(m: int) -> None:
    _session["n"] = _check_order(math.lcm(_session["n"], m))


# --------------------------------------------------------------------------
# number theory tables
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    # x^n - 1 divided by Phi_d for every proper divisor d
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _exact_div(poly, _cyclotomic(d))
    return tuple(poly)


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for j, dc in enumerate(den):
                num[k - dd + j] -= c * dc
    return quot


@lru_cache(maxsize=None)
def _powers(n: int) -> tuple[tuple[int, ...], ...]:
    """``x**k mod Phi_n`` for every k up to ``max(n, 2*phi - 1)``."""
    phi = totient(n)
    cyc = _cyclotomic(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(max(n, 2 * phi - 1)):
        rows.append(tuple(cur))
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for j in range(phi):
                cur[j] -= lead * cyc[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    # Tr(zeta_n^j) / phi(n) depends only on the order m of zeta_n^j
    out = []
    for j in range(totient(n)):
        m = n // math.gcd(j, n)
        out.append(Fraction(_mobius(m), totient(m)))
    return tuple(out)


def _reduce(n: int, acc: dict[int, int] | list[int]) -> list[int]:
    phi = totient(n)
    pw = _powers(n)
    res = [0] * phi
    items = acc.items() if isinstance(acc, dict) else enumerate(acc)
    for k, c in items:
        if not c:
            continue
        if k < phi:
            res[k] += c
        else:
            row = pw[k]
            for j in range(phi):
                if row[j]:
                    res[j] += c * row[j]
    return res


# --------------------------------------------------------------------------
# Scalar
# --------------------------------------------------------------------------

Number = Union["Scalar", int, Fraction]

# inverses are expensive and the same entries recur across group products
_INV_CACHE: dict[tuple, "Scalar"] = {}


class Scalar:
    """Immutable element of a cyclotomic field."""

    __slots__ = ("n", "num", "den", "_hash")

    n: int
    num: tuple[int, ...]
    den: int

    def __init__(self, value: Number | str = 0):
        if isinstance(value, Scalar):
            self._set(value.n, value.num, value.den)
        elif isinstance(value, str):
            s = parse_scalar(value)
            self._set(s.n, s.num, s.den)
        else:
            q = Fraction(value)
            self._set(1, (q.numerator,), q.denominator)

    def _set(self, n: int, num: tuple[int, ...], den: int) -> None:
        self.n, self.num, self.den = n, num, den
        self._hash = None

    @classmethod
    def _make(cls, n: int, num: Iterable[int], den: int = 1) -> Scalar:
        num = list(num)
        if den < 0:
            den = -den
            num = [-c for c in num]
        if n > 1 and not any(num[1:]):
            n, num = 1, num[:1]
        g = math.gcd(den, *num)
        if g > 1:
            den //= g
            num = [c // g for c in num]
        if not num[0] and n == 1:
            den = 1
        obj = cls.__new__(cls)
        obj._set(n, tuple(num), den)
        return obj

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> Scalar:
        """``exp(2*pi*i*k/m)``."""
        if m < 1:
            raise ParseError(f"root of unity order must be positive, got {m}")
        _check_order(m)
        return cls._make(m, _reduce(m, {k % m: 1}))

    # -- representation ------------------------------------------------

    def _lift(self, m: int) -> tuple[int, ...]:
        if m == self.n:
            return self.num
        step = m // self.n
        if self.n == 1:
            return (self.num[0],) + (0,) * (totient(m) - 1)
        return tuple(_reduce(m, {j * step: c for j, c in enumerate(self.num) if c}))

    def is_rational(self) -> bool:
        return self.n == 1

    def as_fraction(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    @property
    def is_zero(self) -> bool:
        return self.n == 1 and self.num[0] == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: Number) -> Scalar:
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        a, b = self, other
        if a.n == 1 and b.n != 1:
            a, b = b, a
        if b.n == 1:
            if not b.num[0]:
                return a
            # rational shift of the constant coefficient
            num = [c * b.den for c in a.num]
            num[0] += b.num[0] * a.den
            return Scalar._make(a.n, num, a.den * b.den)
        n = a.n if a.n == b.n else _check_order(math.lcm(a.n, b.n))
        x, y = a._lift(n), b._lift(n)
        if a.den == b.den:
            return Scalar._make(n, [p + q for p, q in zip(x, y)], a.den)
        return Scalar._make(n, [p * b.den + q * a.den for p, q in zip(x, y)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        obj = Scalar.__new__(Scalar)
        obj._set(self.n, tuple(-c for c in self.num), self.den)
        return obj

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other: Number) -> Scalar:
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-Scalar(other) if not isinstance(other, Scalar) else -other)

    def __rsub__(self, other: Number) -> Scalar:
        return Scalar(other) + (-self)

    def __mul__(self, other: Number) -> Scalar:
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        a, b = self, other
        if a.n == 1 and b.n != 1:
            a, b = b, a
        if b.n == 1:
            k = b.num[0]
            if not k:
                return ZERO
            if k == 1 and b.den == 1:
                return a
            return Scalar._make(a.n, [c * k for c in a.num], a.den * b.den)
        n = a.n if a.n == b.n else _check_order(math.lcm(a.n, b.n))
        x, y = a._lift(n), b._lift(n)
        acc = [0] * (2 * len(x) - 1)
        for i, p in enumerate(x):
            if p:
                for j, q in enumerate(y):
                    if q:
                        acc[i + j] += p * q
        return Scalar._make(n, _reduce(n, acc), a.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        if self.n == 1:
            return Scalar._make(1, (self.den,), self.num[0])
        key = (self.n, self.num, self.den)
        hit = _INV_CACHE.get(key)
        if hit is not None:
            return hit
        s = _poly_inverse([Fraction(c, 1) for c in self.num], _cyclotomic(self.n))
        den = math.lcm(*(q.denominator for q in s))
        num = [int(q * den) * self.den for q in s]
        out = Scalar._make(self.n, num, den)
        if len(_INV_CACHE) > 50_000:
            _INV_CACHE.clear()
        _INV_CACHE[key] = out
        return out

    def __truediv__(self, other: Number) -> Scalar:
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: Number) -> Scalar:
        return Scalar(other) * self.inv()

    def __pow__(self, k: int) -> Scalar:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        k = abs(k)
        result = ONE
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- automorphisms ---------------------------------------------------

    def galois(self, t: int) -> Scalar:
        """Image under ``zeta_n -> zeta_n**t`` (t coprime to n)."""
        if self.n == 1:
            return self
        if math.gcd(t, self.n) != 1:
            raise ValueError(f"{t} is not a unit modulo {self.n}")
        acc: dict[int, int] = {}
        for j, c in enumerate(self.num):
            if c:
                k = (t * j) % self.n
                acc[k] = acc.get(k, 0) + c
        return Scalar._make(self.n, _reduce(self.n, acc), self.den)

    def conj(self) -> Scalar:
        return self.galois(-1)

    def is_real(self) -> bool:
        return self.conj() == self

    def is_pure_imaginary(self) -> bool:
        return self.conj() == -self

    # -- comparison ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return self.n == 1 and Fraction(self.num[0], self.den) == other
            return NotImplemented
        if self.n == other.n:
            return self.den == other.den and self.num == other.num
        if self.n == 1 or other.n == 1 or self.den != other.den:
            return False
        m = math.lcm(self.n, other.n)
        return self._lift(m) == other._lift(m)

    def __hash__(self) -> int:
        if self._hash is None:
            if self.n == 1:
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self._norm_trace(), (self * self.conj())._norm_trace()))
        return self._hash

    def _norm_trace(self) -> Fraction:
        if self.n == 1:
            return Fraction(self.num[0], self.den)
        w = _trace_weights(self.n)
        return sum((c * w[j] for j, c in enumerate(self.num) if c), Fraction(0)) / self.den

    def trace(self) -> Fraction:
        """Absolute trace ``Tr_{Q(zeta_n)/Q}``."""
        return self._norm_trace() * totient(self.n)

    # -- output ------------------------------------------------------------

    def to_complex(self) -> complex:
        z = complex(0)
        for j, c in enumerate(self.num):
            if c:
                ang = 2 * math.pi * j / self.n
                z += c * complex(math.cos(ang), math.sin(ang))
        return z / self.den

    def minimal_order(self) -> int:
        """Smallest m with this scalar in Q(zeta_m)."""
        if self.n == 1:
            return 1
        units = [t for t in range(1, self.n) if math.gcd(t, self.n) == 1]
        for d in _divisors(self.n):
            if all(self.galois(t) == self for t in units if t % d == 1 % d):
                return d
        return self.n

    def coefficients(self, m: int | None = None) -> list[Fraction]:
        """Power-basis coordinates in Q(zeta_m); default the minimal m."""
        if m is None:
            m = self.minimal_order()
        if m % self.n == 0:
            return [Fraction(c, self.den) for c in self._lift(m)]
        if self.n % m:
            raise ValueError(f"Q(zeta_{m}) and Q(zeta_{self.n}) are not nested")
        step = self.n // m
        cols = [_reduce(self.n, {j * step: 1}) for j in range(totient(m))]
        return _solve_columns(cols, [Fraction(c, self.den) for c in self.num])

    def __str__(self) -> str:
        if self.n == 1:
            return _fmt_fraction(Fraction(self.num[0], self.den))
        m = self.minimal_order()
        coeffs = self.coefficients(m)
        terms = []
        for j, c in enumerate(coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(_fmt_fraction(c))
                continue
            sym = "i" if m == 4 else f"zeta({m},{j})"
            if c == 1:
                terms.append(sym)
            elif c == -1:
                terms.append("-" + sym)
            else:
                terms.append(f"{_fmt_fraction(c)}*{sym}")
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        if c:
            q[k] = c
            for j, bc in enumerate(b):
                a[k + j] -= c * bc
    return _trim(q), _trim(a[: len(b) - 1])


def _poly_sub_mul(s0: list[Fraction], q: list[Fraction], s1: list[Fraction]) -> list[Fraction]:
    out = list(s0) + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
    for i, x in enumerate(q):
        for j, y in enumerate(s1):
            out[i + j] -= x * y
    return _trim(out)


def _poly_inverse(a: list[Fraction], modulus: tuple[int, ...]) -> list[Fraction]:
    """Extended Euclid: s with s*a = 1 mod modulus."""
    r0 = [Fraction(c) for c in modulus]
    r1 = _trim(list(a))
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    # r0 is a nonzero constant because the modulus is irreducible
    c = r0[0]
    phi = len(modulus) - 1
    out = [x / c for x in s0] + [Fraction(0)] * phi
    return out[:phi]


def _solve_columns(cols: list[list[int]], target: list[Fraction]) -> list[Fraction]:
    """Solve sum_j x_j cols[j] = target exactly (consistent, full column rank)."""
    rows = len(target)
    k = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [target[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, rows) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    out = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        out[c] = aug[i][k]
    return out


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar.root_of_unity(4, 1)


def zeta(m: int, k: int = 1) -> Scalar:
    return Scalar.root_of_unity(m, k)


def as_scalar(x: Number | str) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, bool):
        return ONE if x else ZERO
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def conj(a: Number) -> Scalar:
    return as_scalar(a).conj()


def is_real(a: Number) -> bool:
    return as_scalar(a).is_real()


def is_pure_imaginary(a: Number) -> bool:
    return as_scalar(a).is_pure_imaginary()


# --------------------------------------------------------------------------
# square roots of the form r * zeta
# --------------------------------------------------------------------------

def _legendre(a: int, p: int) -> int:
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def _sqrt_prime(p: int) -> Scalar:
    """Positive real square root of a prime as a Gauss sum."""
    if p == 2:
        return zeta(8, 1) + zeta(8, 7)
    need = p if p % 4 == 1 else 4 * p
    if need > field_cap():
        raise FieldTooSmall(f"sqrt({p}) lies in Q(zeta_{need}), beyond the cap {field_cap()}")
    g = Scalar._make(p, _reduce(p, {k: _legendre(k, p) for k in range(1, p)}))
    return g if p % 4 == 1 else -I * g


def _sqrt_rational(q: Fraction) -> Scalar:
    """Positive square root of a positive rational, or FieldTooSmall."""
    m = q.numerator * q.denominator
    outer = Fraction(1, q.denominator)
    root = ONE
    p = 2
    while p <= field_cap() and p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        outer *= p ** (e // 2)
        if e % 2:
            root = root * _sqrt_prime(p)
        p += 1
    if m > 1:
        s = math.isqrt(m)
        if s * s == m:
            outer *= s
        elif m <= field_cap():
            root = root * _sqrt_prime(m)
        else:
            raise FieldTooSmall(f"sqrt of {q} needs a prime beyond the field cap")
    return root * outer


def sqrt_if_simple(a: Number) -> Scalar | None:
    """Square root of ``a`` when ``a`` is a positive rational times a root of unity.

    Returns None when ``a`` has no such form.  Raises FieldTooSmall when the
    root exists but would need a cyclotomic order above the cap.
    """
    a = as_scalar(a)
    if a.is_zero:
        return ZERO
    m = math.lcm(2, a.n)
    for j in range(m):
        b = a * zeta(m, -j) if j else a
        if b.n == 1 and b.num[0] > 0:
            root = _sqrt_rational(b.as_fraction())
            if j == 0:
                return root
            if j % 2 == 0:
                return root * zeta(m, j // 2)
            _check_order(math.lcm(root.n, 2 * m))
            return root * zeta(2 * m, j)
    return None


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(zeta)|(i)\b|([()+\-*/^,]))")


def _tokenize(text: str) -> list[tuple[str, str | int]]:
    toks: list[tuple[str, str | int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        if m.group(1):
            toks.append(("int", int(m.group(1))))
        elif m.group(2):
            toks.append(("zeta", "zeta"))
        elif m.group(3):
            toks.append(("i", "i"))
        else:
            toks.append(("op", m.group(4)))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str | int] | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, kind: str, value: str | None = None) -> str | int:
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r} at token {self.pos} in {self.text!r}")
        self.pos += 1
        return tok[1]

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] in ops

    def expr(self) -> Scalar:
        val = self.term()
        while self.at_op("+", "-"):
            op = self.take("op")
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Scalar:
        val = self.unary()
        while self.at_op("*", "/"):
            op = self.take("op")
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if rhs.is_zero:
                    raise DivisionByZero(f"division by zero in {self.text!r}")
                val = val / rhs
        return val

    def unary(self) -> Scalar:
        if self.at_op("-"):
            self.take("op")
            return -self.unary()
        if self.at_op("+"):
            self.take("op")
            return self.unary()
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.at_op("^"):
            self.take("op")
            sign = 1
            if self.at_op("-"):
                self.take("op")
                sign = -1
            k = sign * int(self.take("int"))
            if k < 0 and base.is_zero:
                raise DivisionByZero(f"negative power of zero in {self.text!r}")
            return base ** k
        return base

    def atom(self) -> Scalar:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        kind, val = tok
        if kind == "int":
            self.pos += 1
            return Scalar(int(val))
        if kind == "i":
            self.pos += 1
            return I
        if kind == "zeta":
            self.pos += 1
            self.take("op", "(")
            m = int(self.take("int"))
            self.take("op", ",")
            sign = 1
            if self.at_op("-"):
                self.take("op")
                sign = -1
            k = sign * int(self.take("int"))
            self.take("op", ")")
            if m < 1:
                raise ParseError(f"zeta order must be positive in {self.text!r}")
            _promote_session(m)
            return zeta(m, k)
        if kind == "op" and val == "(":
            self.pos += 1
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse an exact expression such as ``"1/2 + 1/2*i"`` or ``"zeta(8,1)^3"``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string expression, got {type(text).__name__}")
    p = _Parser(text)
    if not p.toks:
        raise ParseError("empty expression")
    val = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.pos} in {text!r}")
    return val


_init_session()
