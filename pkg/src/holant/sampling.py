"""Seeded random scalars, functions, bases and networks for property checks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .field import I, ONE, ZERO, Scalar, as_scalar, zeta
from .reduction import Basis2
from .structure import assemble, is_genuine_arity4, ratio_hypothesis
from .tensor import Func, Gadget, neq2

PYTHAGOREAN = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29))


def random_scalar(rng: random.Random, spread: int = 3, zero_prob: float = 0.0) -> Scalar:
    """Small Gaussian-rational combination, occasionally times a 24th root of unity."""
    if zero_prob and rng.random() < zero_prob:
        return ZERO
    while True:
        re = Fraction(rng.randint(-spread, spread), rng.randint(1, 2))
        im = Fraction(rng.randint(-spread, spread), rng.randint(1, 2))
        x = as_scalar(re) + as_scalar(im) * I
        if rng.random() < 0.25:
            x = x * zeta(24, rng.randrange(24))
        if x:
            return x


def random_nonzero_rational(rng: random.Random, spread: int = 5) -> Scalar:
    while True:
        q = Fraction(rng.randint(-spread, spread), rng.randint(1, 3))
        if q:
            return as_scalar(q)


def random_func(rng: random.Random, arity: int, zero_prob: float = 0.2, spread: int = 3) -> Func:
    return Func([random_scalar(rng, spread, zero_prob) for _ in range(1 << arity)], arity)


def random_binary_set(rng: random.Random, k: int) -> list[Func]:
    return [random_func(rng, 2) for _ in range(k)]


def random_orthogonal(rng: random.Random) -> Basis2:
    """Rational rotation or reflection, optionally composed with a complex one."""
    a, b, c = rng.choice(PYTHAGOREAN)
    x, y = Fraction(a, c), Fraction(b, c)
    if rng.random() < 0.5:
        m = Basis2(((as_scalar(x), as_scalar(y)), (as_scalar(y), as_scalar(-x))))
    else:
        m = Basis2(((as_scalar(x), as_scalar(-y)), (as_scalar(y), as_scalar(x))))
    if rng.random() < 0.4:
        # [[p, q], [-q, p]] with p = (t + 1/t)/2, q = (t - 1/t)/(2i)
        t = as_scalar(Fraction(rng.choice((2, 3, 5)), rng.choice((1, 2, 3))))
        p = (t + t.inv()) / 2
        q = (t - t.inv()) / (2 * I)
        m = m @ Basis2(((p, q), (-q, p)))
    return m


def _match_slots(rng: random.Random, slots: list[tuple[int, int]]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    rng.shuffle(slots)
    return [(slots[k], slots[k + 1]) for k in range(0, len(slots), 2)]


def random_closed_network(rng: random.Random, pool: Sequence[Func], max_edges: int = 6) -> Gadget:
    """Vertices drawn from ``pool`` with slots matched uniformly at random."""
    if not any(f.arity for f in pool):
        raise ValueError("pool needs a function of positive arity")
    while True:
        funcs: list[Func] = []
        total = 0
        target = 2 * rng.randint(1, max_edges)
        while total < target:
            f = rng.choice(pool)
            if f.arity == 0 or total + f.arity > target:
                if all(total + g.arity > target for g in pool if g.arity):
                    break
                continue
            funcs.append(f)
            total += f.arity
        if total % 2 == 0 and total > 0:
            break
    slots = [(v, s) for v, f in enumerate(funcs) for s in range(f.arity)]
    return Gadget(tuple(funcs), tuple(_match_slots(rng, slots)))


def random_bipartite_network(
    rng: random.Random, left: Sequence[Func], right: Sequence[Func], max_edges: int = 6
) -> Gadget:
    """Closed network with every edge joining a side-0 vertex to a side-1 vertex.

    Side-0 functions come from ``left``, side-1 functions from ``right``.  The
    search retries until both sides expose the same number of slots.
    """
    for _ in range(10_000):
        n = rng.randint(1, max_edges)
        lf = _fill(rng, left, n)
        rf = _fill(rng, right, n)
        if lf is None or rf is None:
            continue
        funcs = lf + rf
        ls = [(v, s) for v, f in enumerate(lf) for s in range(f.arity)]
        rs = [(len(lf) + v, s) for v, f in enumerate(rf) for s in range(f.arity)]
        rng.shuffle(rs)
        sides = (0,) * len(lf) + (1,) * len(rf)
        return Gadget(tuple(funcs), tuple(zip(ls, rs)), (), sides)
    raise ValueError("could not balance the two sides")


def _fill(rng: random.Random, pool: Sequence[Func], n: int) -> list[Func] | None:
    out, total = [], 0
    for _ in range(4 * n + 8):
        if total == n:
            return out
        f = rng.choice(pool)
        if 0 < f.arity <= n - total:
            out.append(f)
            total += f.arity
    return out if total == n else None


def random_neq_network(rng: random.Random, pairs: int) -> Gadget:
    """Bipartite network of ``2 * pairs`` disequality vertices."""
    return random_bipartite_network(rng, [neq2()], [neq2()], max_edges=2 * pairs)


def random_diagonal(rng: random.Random, group: Sequence) -> Func:
    g = rng.choice(list(group))
    return Func.from_matrix(g.rep)


def random_root_of_unity(rng: random.Random, k: int) -> Scalar:
    return zeta(k, rng.randrange(k)) if k > 1 else ONE


# -- structured instances ----------------------------------------------------

def sample_ratio_family(rng: random.Random, k: int, case: int) -> list[list[Scalar]]:
    """A matrix ``[[a, c], [d, b]]`` from solution family ``case``."""
    def w() -> Scalar:
        return random_root_of_unity(rng, k)

    a = random_scalar(rng)
    c = random_scalar(rng)
    if case == 1:
        a = b = c = d = ZERO
    elif case == 2:
        a = b = ZERO
        d = c * w()
    elif case == 3:
        c = d = ZERO
        b = a * w()
    elif case == 4 and k >= 3:
        p, q = w(), w()
        b, c, d = a * p, a * q, a * p / q
    elif case == 4:
        b, d = a, c
    elif case == 5 and k == 2:
        b, d = -a, -c
    else:
        raise ValueError(f"no family {case} for k={k}")
    return [[a, c], [d, b]]


def ratio_families(k: int) -> tuple[int, ...]:
    return (1, 2, 3, 4, 5) if k == 2 else (1, 2, 3, 4)


def sample_ratio_violator(rng: random.Random, k: int) -> list[list[Scalar]]:
    while True:
        q = [[random_scalar(rng, zero_prob=0.2) for _ in range(2)] for _ in range(2)]
        if not ratio_hypothesis(q, k):
            return q


def random_pairing(rng: random.Random, arity: int) -> tuple[tuple[int, int], ...]:
    order = list(range(arity))
    rng.shuffle(order)
    return tuple((order[2 * j], order[2 * j + 1]) for j in range(arity // 2))


def sample_member(rng: random.Random, group: Sequence, arity: int) -> Func:
    """``lam`` times a product of group binaries along a random pairing."""
    pairs = random_pairing(rng, arity)
    factors = [random_diagonal(rng, group) for _ in pairs]
    return assemble(random_scalar(rng), pairs, factors)


def random_genuine4(rng: random.Random) -> Func:
    while True:
        f = random_func(rng, 4, zero_prob=0.3)
        if is_genuine_arity4(f):
            return f


def sample_contaminated(rng: random.Random, group: Sequence, arity: int) -> tuple[Func, Func]:
    """A genuine arity-4 function times group binaries, variables shuffled.

    Returns the function and the genuine factor.
    """
    g4 = random_genuine4(rng)
    f = g4
    for _ in range((arity - 4) // 2):
        f = f.tensor(random_diagonal(rng, group))
    order = list(range(arity))
    rng.shuffle(order)
    return f.permute(order).scale(random_scalar(rng)), g4


def sample_c_instance(rng: random.Random, c: Scalar, arity: int = 4) -> Func:
    """``h(a) = t(a) c^(r(a)/2)`` for a flip-symmetric ``t`` with real values."""
    top = (1 << arity) - 1
    vals = [ZERO] * (1 << arity)
    for x in range(1 << arity):
        if x > top ^ x:
            continue
        if rng.random() < 0.3:
            continue
        v = random_nonzero_rational(rng)
        vals[x] = vals[top ^ x] = v
    # arity - 1 ones gives r = arity - 2, which is zero for arity 2
    skew = (1 << (arity - 1)) - 1 if arity > 2 else 3
    vals[skew] = vals[top ^ skew] = random_nonzero_rational(rng)
    out = []
    for x, v in enumerate(vals):
        r = 2 * bin(x).count("1") - arity
        out.append(v * as_scalar(c) ** (r // 2) if v else ZERO)
    return Func(out)
