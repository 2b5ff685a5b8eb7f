"""Jordan maps: spectral extension, verification, iso/anti decomposition.

Run:  python demos/06_jordan_maps.py
"""

import random
from fractions import Fraction

from omljordan.jordan import (
    ad_unitary,
    compose_maps,
    decompose_jordan,
    map_from_callable,
    transpose_map,
    verify_jordan,
)
from omljordan.linalg import GaussScalar
from omljordan.matalg import AlgElement, FinDimAlgebra, format_element, from_vec

m3 = FinDimAlgebra((3,))
rng = random.Random(0)


def random_element(algebra):
    return from_vec(
        algebra,
        tuple(
            GaussScalar(
                Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
            )
            for _ in range(algebra.dimension)
        ),
    )


# The transpose is anti-multiplicative, hence a Jordan isomorphism.
t = transpose_map(m3)
samples = [(random_element(m3), random_element(m3)) for _ in range(4)]
print("transpose on M3:")
print(verify_jordan(t, samples).render())

# Scaling by 2 is linear but neither unital nor Jordan-multiplicative.
bad = map_from_callable(m3, m3, lambda x: x.scale(2))
print("\nx -> 2x on M3 (failures expected):")
print(verify_jordan(bad, samples[:1]).render())

# Decomposition into *-iso and *-anti-iso parts probes matrix units per
# summand and returns central projections.
m33 = FinDimAlgebra((3, 3))
mixed = map_from_callable(
    m33, m33, lambda x: AlgElement(m33, (x.blocks[0], x.blocks[1].transpose()))
)
p1, p2, labels = decompose_jordan(mixed)
print("\nidentity (+) transpose on M3 (+) M3:")
print("labels:", labels)
print("P1 =", format_element(p1))
print("P2 =", format_element(p2))

# Composing with an inner automorphism never changes the labels.
u = m3.from_rows(
    [
        [Fraction(3, 5), Fraction(4, 5), 0],
        [Fraction(-4, 5), Fraction(3, 5), 0],
        [0, 0, 1],
    ]
)
twisted = compose_maps(ad_unitary(m3, u), transpose_map(m3))
print("\ntranspose composed with Ad(U) labels:", decompose_jordan(twisted)[2])
