"""
Exact values and basis changes
==============================

Build small networks, evaluate them exactly, and watch a basis change
leave the value of a bipartite network alone.
"""

import random
from pathlib import Path

from holant import K, Func, Gadget, eq, holant_value, neq2, transform_func, zeta
from holant.io import load_network
from holant.reduction import holographic_invariance_check
from holant.sampling import random_bipartite_network, random_orthogonal

DATA = Path(__file__).parent / "data"

# A single =2 vertex with its two slots joined counts the two
# assignments of the loop edge.
print("self loop:", holant_value(load_network(DATA / "self_loop.json")))

# A cycle of disequalities needs an even length to be satisfiable.
for n in (3, 4, 5, 6):
    ring = Gadget([neq2()] * n, [((k, 1), ((k + 1) % n, 0)) for k in range(n)])
    print(f"disequality {n}-cycle:", holant_value(ring))

# Values stay exact in a cyclotomic field; no floating point anywhere.
phase = Func([1, 0, 0, zeta(8)])
ring = Gadget([phase] * 8, [((k, 1), ((k + 1) % 8, 0)) for k in range(8)])
print("eight diag(1, zeta8) in a ring:", holant_value(ring))

# The basis K sends =2 to twice the disequality.
print("=2 under K:", transform_func(eq(2), K))

# Orthogonal bases preserve the value of any bipartite network: the left
# side is transformed by M and the right side by its inverse.
rng = random.Random(7)
pool = [eq(2), eq(3), neq2(), Func([1, 2, 0, 3])]
for k in range(5):
    g = random_bipartite_network(rng, pool, pool, max_edges=6)
    m = random_orthogonal(rng)
    print(f"network {k}: value {holant_value(g)}, preserved: {holographic_invariance_check(g, m)}")
