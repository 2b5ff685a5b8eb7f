"""Boolean subalgebra posets: enumeration, Bell counts, the Sachs property.

Run:  python demos/03_subalgebra_posets.py
"""

from omljordan.combinat import bell_number
from omljordan.oml import boolean_subalgebras, standard, subalgebras
from omljordan.poset import enumerate_order_isos

# Every Boolean subalgebra is determined by its atoms, an orthogonal
# partition of the top element; for a Boolean algebra with n atoms the
# subalgebras therefore count set partitions: Bell(n).
for n in range(1, 6):
    count = len(subalgebras(standard("boolean", n)))
    print(f"|BSub(boolean({n}))| = {count}  (Bell {bell_number(n)})")

# BSub as a labeled poset: labels resolve to member sets.
bsub = boolean_subalgebras(standard("boolean", 3))
print("BSub(boolean(3)) covers:")
for x, y in bsub.cover_pairs():
    print("  ", x, "<", y)

# Horizontal sums keep the blocks apart: MO(n) has the trivial subalgebra
# plus one per block.
for n in (2, 3, 4):
    print(f"|BSub(mo({n}))| =", len(subalgebras(standard("mo", n))))

# Desk-scale Sachs property: Boolean algebras with up to 16 elements are
# determined by their subalgebra posets.
sizes = range(1, 5)
posets = {n: boolean_subalgebras(standard("boolean", n)) for n in sizes}
for a in sizes:
    for b in sizes:
        isomorphic = bool(enumerate_order_isos(posets[a], posets[b]))
        marker = "==" if isomorphic else "!="
        print(f"BSub(boolean({a})) {marker} BSub(boolean({b}))", end="; ")
    print()
