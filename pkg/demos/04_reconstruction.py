"""Reconstructing lattice isomorphisms from subalgebra-poset isomorphisms.

The key dichotomy: without 4-element blocks the reconstruction is unique;
with them (the type-I2 regime) the orientation of each complementary pair
is undetermined and solutions multiply.

Run:  python demos/04_reconstruction.py
"""

from omljordan.oml import standard
from omljordan.reconstruct import (
    certify_unique,
    has_4element_block,
    identity_bsub_iso,
    reconstruct_oml_isos,
    serialize_bsub_iso,
)

# Unique case: two B8 blocks glued at bounds -- no 4-element blocks.
hs2 = standard("horizontal_sum_b8", 2)
print("horizontal_sum_b8(2) has 4-element blocks:", has_4element_block(hs2))
k = certify_unique(identity_bsub_iso(hs2))
print("unique reconstruction is the identity:", all(k.apply(x) == x for x in hs2.elements))

# Ambiguous case: MO(n) is all 4-element blocks; each complementary pair
# can be flipped independently, so the identity BSub iso has 2^n preimages.
for n in (2, 3):
    mo = standard("mo", n)
    sols = reconstruct_oml_isos(identity_bsub_iso(mo))
    print(f"MO({n}): {len(sols)} reconstructions")
    if n == 2:
        for s in sols:
            print("   ", dict(s.mapping))

# The exchange format ships both subalgebra lists plus the map lines; this
# is what the CLI `reconstruct` command consumes.
print("\nexchange file for MO(2), identity:")
print(serialize_bsub_iso(identity_bsub_iso(standard("mo", 2))))
