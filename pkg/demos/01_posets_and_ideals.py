"""Finite posets: validation, order-isomorphism search, ideals, extension.

Run:  python demos/01_posets_and_ideals.py
"""

from omljordan.poset import (
    enumerate_order_isos,
    extend_iso_via_ideals,
    ideals,
    order_iso,
    parse_poset_text,
    verify_poset,
)

# verify_poset takes generator pairs and closes them; a < c is inferred.
chain = verify_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
print("3-chain relation includes a<=c:", chain.leq("a", "c"))

# The text format is line oriented.
diamond = parse_poset_text(
    """
    elements 0 x y 1
    le 0 x
    le 0 y
    le x 1
    le y 1
    """
)
print("diamond join(x,y):", diamond.join("x", "y"))
print("diamond meet(x,y):", diamond.meet("x", "y"))

# Order-isomorphism enumeration prunes on (downset, upset, degree) signatures.
autos = enumerate_order_isos(diamond, diamond)
print("diamond automorphisms:", len(autos))
for f in autos:
    print("  ", dict(f.mapping))

# Ideals: downsets closed under existing pairwise joins (the empty set counts).
two_antichain = verify_poset(["p", "q"], [])
print(
    "ideals of a 2-antichain:",
    [sorted(i.members) for i in ideals(two_antichain)],
)
# {p, q} is excluded: the pair has no join.

# Extending an isomorphism from a generating subposet by ideal joins.  Here
# the subposet is everything, so the extension is the identity extension;
# the formula is still evaluated and cross-checked against its dual.
mu = order_iso(diamond, diamond, {"0": "0", "x": "y", "y": "x", "1": "1"})
bar = extend_iso_via_ideals(mu, diamond, diamond)
print("extension agrees with mu:", dict(bar.mapping) == dict(mu.mapping))
