"""
Groups generated by realizable binaries
=======================================

From a set of functions, search small gadgets for arity-2 functions,
close them into a projective matrix group, and name the group.
"""

from pathlib import Path

from holant import ProjMat, classify_group, group_closure, pipeline_classify, zeta
from holant.io import load_functions
from holant.linalg import fmt

DATA = Path(__file__).parent / "data"


def report(name):
    funcs = [f for _, f in load_functions(DATA / name)]
    rep = pipeline_classify(funcs, budget=2)
    print(f"{name:18} -> {rep.label}  (order {rep.order}, {len(rep.binaries)} binaries)")
    return rep


report("neq.json")
report("jordan.json")
rep = report("q3.json")

# The Klein four case carries a canonical form, reached by an orthogonal
# change of basis.  The standard triple needs none.
print("canonical kind:", rep.canonical_forms.kind)
print("basis:", fmt(rep.canonical_basis.entries))

# Every realized binary comes with the gadget that realizes it.
b = rep.binaries[0]
print("first binary", b.func, "from", len(b.witness.funcs), "vertices")

# Larger groups: a cyclic diagonal group, its dihedral extension, and the
# rotation group of the icosahedron over Q(zeta5).
print(classify_group(group_closure([ProjMat([[1, 0], [0, zeta(5)]])])))
print(classify_group(group_closure([ProjMat([[1, 0], [0, zeta(6)]]), ProjMat([[0, 1], [1, 0]])])))
z = zeta(5)
icosa = group_closure([
    ProjMat([[z ** 3, 0], [0, z ** 2]]),
    ProjMat([[-(z - z ** 4), z ** 2 - z ** 3], [z ** 2 - z ** 3, z - z ** 4]]),
])
print(len(icosa), classify_group(icosa))
