"""
Structure of higher-arity functions
===================================

Decompose arity-4 functions, read off support shapes, expand in the
Pauli-type basis, and reduce an arity-6 function to an arity-4 witness.
"""

import random

from holant import (
    ProjMat,
    arity_reduce,
    compute_c_and_normalize,
    decompose_arity4,
    eq,
    group_closure,
    I,
    neq2,
    pauli_expand,
    ratio_lemma_check,
    support_class,
)
from holant.sampling import sample_c_instance, sample_contaminated, sample_member
from holant.tensor import gadget_function

# =2 (x) =2 splits along the first pairing; =4 does not split at all.
print(decompose_arity4(eq(2).tensor(eq(2))).pairing)
print(decompose_arity4(eq(4)))

# Support shapes.
print(support_class(eq(2).tensor(eq(2))))
print(support_class(eq(4)))

# Pauli-type coefficients of =2 (x) neq2 along the standard pairing.
for name, c in pauli_expand(eq(2).tensor(neq2())).nonzero().items():
    print(f"  {name}: {c}")

# The k-th power ratio system.
print(ratio_lemma_check([[2, 3], [3, 2]], 2))
print(ratio_lemma_check([[1, 2], [3, 4]], 3))

# Recover c from h(a) = c^r(a) h(~a) where r counts ones minus zeros.
rng = random.Random(1)
h = sample_c_instance(rng, I, 4)
res = compute_c_and_normalize(h)
print("c =", res.c, "symmetric:", res.htilde == res.htilde.flip())

# Arity reduction over the order-4 diagonal group: members get a
# certificate, contaminated functions an arity-4 witness gadget.
grp = group_closure([ProjMat([[1, 0], [0, I]])])
member = sample_member(rng, grp, 6)
cert = arity_reduce(member, grp)
print(type(cert).__name__, "lambda =", cert.lam, "pairing", cert.membership.pairing)
f, _ = sample_contaminated(rng, grp, 6)
w = arity_reduce(f, grp)
print(type(w).__name__, "genuine:", w.genuine, "verified:", gadget_function(w.gadget) == w.func)
for step in w.steps:
    print(f"  {'ok ' if step.passed else 'no '} {step.name} {step.detail}")
