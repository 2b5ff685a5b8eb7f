"""Exact finite-dimensional *-algebras over Gaussian rationals.

Jordan product, commutants in B(H), and the correspondence between finite
abelian subalgebras and their Boolean algebras of projections.

Run:  python demos/05_exact_algebras.py
"""

from fractions import Fraction

from omljordan.matalg import (
    FinDimAlgebra,
    commutant,
    double_commutant,
    format_element,
    fragment_poset,
    coarsening_closure,
    jordan_product,
    lambda_embed,
    partition_of_unity,
    psi_project,
    spans_equal,
    spectral_decomposition,
)

m2 = FinDimAlgebra((2,))
m3 = FinDimAlgebra((3,))

# The Jordan product is exact: p = diag(1,0) against the projection onto
# the line spanned by (3,4)/5.
p = m2.from_rows([[1, 0], [0, 0]])
q = m2.from_rows(
    [[Fraction(9, 25), Fraction(12, 25)], [Fraction(12, 25), Fraction(16, 25)]]
)
print("p o q =", format_element(jordan_product(p, q)))

# Commutants live in B(H); the commutant of the matrix units of a summand
# is scalars there and everything elsewhere.
m21 = FinDimAlgebra((2, 1))
units = [m21.matrix_unit(0, i, j) for i in range(2) for j in range(2)]
print("commutant of M2-units in B(C^3):", len(commutant(m21, units)), "dimensions")
print("double commutant:", len(double_commutant(m21, units)), "dimensions")

# A partition of unity spans an abelian subalgebra; its projections are the
# subset sums of the atoms and regenerate the subalgebra by the double
# commutant.
part = partition_of_unity(
    m3,
    [
        m3.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        m3.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 1]]),
    ],
)
print("lambda(2,3) =", format_element(lambda_embed(part, [2, 3])))
projs = psi_project(part)
print("projections of the subalgebra:", len(projs))
print(
    "double commutant regenerates the span:",
    spans_equal(double_commutant(m3, projs), list(part.atoms)),
)

# Spectral decomposition factors characteristic polynomials over Q only.
a = m3.from_rows([[2, 0, 0], [0, 3, 0], [0, 0, 3]])
spec = spectral_decomposition(a)
print("eigenvalues of diag(2,3,3):", [str(v) for v, _ in spec.pairs])

# The poset of all diagonal partitions of C^3 is the partition lattice Pi_3.
frag = coarsening_closure(m3, {"diag": partition_of_unity(m3, m3.diagonal_atoms())})
print("fragment poset size:", len(fragment_poset(frag)))
