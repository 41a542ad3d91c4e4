"""
Algebras presented by structure constants
==========================================

A finite-dimensional associative algebra is a basis, a constants tensor
``lam`` with ``lam[i, j, k]`` the coefficient of basis vector k in the
product of basis vectors i and j, and the coordinates of the unit.  The
validator checks the associativity and unit identities of the tensor and
reports the first witness of any violation.
"""

from twistkit import (
    QQ,
    GF,
    FiniteDimAlgebra,
    direct_product,
    duplicate_algebra,
    kn_algebra,
    quadratic_algebra,
    truncated_poly_algebra,
    validate_algebra,
)

# The polynomial quotient K[X]/(X^2 - X): two basis vectors 1 and X, with
# X * X = X.  This is the carrier algebra of non-commutative duplicates.
dup = duplicate_algebra(QQ)
print("carrier:", dup.basis, "dim", dup.dim)
print("valid:", validate_algebra(dup).ok)

# Structure matrices encode left multiplication by a basis vector.
print("structure matrix of X:")
print(QQ.format_array(dup.structure_matrix(1).data))

# The split carrier K^n: componentwise products of idempotents.
k3 = kn_algebra(QQ, 3)
print("\nK^3 unit coordinates:", QQ.format_array(k3.unit))

# A general quadratic quotient K[X]/(X^2 - aX + b) keeps (a, b) in the
# constants; over F_5 with (a, b) = (2, 3):
q = quadratic_algebra(GF(5), 2, 3)
print("\nK[X]/(X^2-2X+3) over F_5, structure matrix of X:")
print(GF(5).format_array(q.structure_matrix(1).data))

# Truncated polynomials K[Y]/(Y^4): the structure matrix of Y is the shift.
t4 = truncated_poly_algebra(QQ, 4)
print("\nshift matrix of Y in K[Y]/(Y^4):")
print(QQ.format_array(t4.structure_matrix(1).data))

# Direct products concatenate the bases and keep the constants block-diagonal.
prod = direct_product(kn_algebra(QQ, 2), dup)
print("\nK^2 x K[X]/(X^2-X): dim", prod.dim, "unit", QQ.format_array(prod.unit))
print("valid:", validate_algebra(prod).ok)

# The validator pinpoints corrupted constants.
lam = kn_algebra(QQ, 2).lam.copy()
lam[0, 1, 0] = QQ.one
broken = FiniteDimAlgebra(QQ, 2, ("e1", "e2"), lam, kn_algebra(QQ, 2).unit.copy())
report = validate_algebra(broken)
print("\ncorrupted K^2 verdict:", report.ok)
for failure in report.failures:
    print("  ", failure.condition, "at", failure.witness, "count", failure.count)
