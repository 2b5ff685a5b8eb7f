"""Orthomodular lattices: axiom checking, standard families, Greechie pasting.

Run:  python demos/02_orthomodular_lattices.py
"""

from omljordan.oml import (
    PastingNotOml,
    blocks,
    commutes,
    from_greechie,
    greechie_diagram,
    standard,
    verify_oml,
)
from omljordan.poset import verify_poset

# MO(2): the smallest non-Boolean OML -- two 4-element blocks glued at 0, 1.
mo2 = standard("mo", 2)
print("MO(2) elements:", mo2.elements)
print("a1 commutes with b1 (its complement):", commutes(mo2, "a1", "b1"))
print("a1 commutes with a2 (other block):", commutes(mo2, "a1", "a2"))
print("blocks:", [sorted(b.members) for b in blocks(mo2)])

# The pentagon N5 admits no orthocomplementation: every candidate fails.
pentagon = verify_poset(
    ["0", "a", "b", "c", "1"],
    [("0", "a"), ("0", "b"), ("b", "c"), ("a", "1"), ("c", "1")],
)
try:
    verify_oml(pentagon, {"0": "1", "1": "0", "a": "b", "b": "a", "c": "c"})
except Exception as exc:
    print("pentagon rejected:", type(exc).__name__)

# Greechie diagrams paste Boolean blocks through shared atoms.  Sharing an
# atom forces its complements to be identified as well: 8 + 8 - 4 = 12.
pasted = from_greechie(
    greechie_diagram(list("abcde"), [("a", "b", "c"), ("c", "d", "e")])
)
print("pasting {a,b,c},{c,d,e}:", len(pasted), "elements")
print("complement of the shared atom c:", pasted.complement("c"))

# Loops that cannot carry an orthomodular structure are rejected by the
# axiom check (no admissibility conditions are hardcoded).
try:
    from_greechie(
        greechie_diagram(
            list("abcdef"), [("a", "b", "c"), ("c", "d", "e"), ("e", "f", "a")]
        )
    )
except PastingNotOml as exc:
    print("triangle loop rejected:", exc)
