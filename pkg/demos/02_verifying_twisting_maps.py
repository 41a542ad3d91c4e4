"""
Three routes to the same verdict
================================

A candidate map chi: A (x) B -> B (x) A is a grid of endomorphisms of A,
one per pair of carrier basis vectors.  Whether it makes B (x) A into an
associative unital algebra with both factors embedded can be decided three
ways: the four structure-constant conditions on the grid, the two
matrix-representation criteria, or by brute force from the definition.
They always agree; each checker names the first condition that fails.
"""

from twistkit import (
    QQ,
    GammaFamily,
    certify,
    check_conditions_direct,
    check_phi_representation,
    check_rho_representation,
    chi_eval,
    duplicate_algebra,
    kn_algebra,
    make_ncd,
    oracle_check,
)

A = kn_algebra(QQ, 2)
B = duplicate_algebra(QQ)

# The flip grid encodes the ordinary tensor product; it always verifies.
flip = GammaFamily.flip(A, B)
print("flip:")
print("  conditions:", check_conditions_direct(flip).ok)
print("  End-valued route:", check_rho_representation(flip).ok)
print("  A-valued route:", check_phi_representation(flip).ok)
print("  definition-level oracle:", oracle_check(flip).ok)

# A duplicate candidate built from an idempotent endomorphism f(x, y) = (x, x).
cand = make_ncd(A, [[1, 0], [1, 0]], [[0, 0], [0, 0]])
print("\nidempotent duplicate:", check_conditions_direct(cand.family).ok)

# chi itself is evaluated through the grid: chi(a (x) X) lands in B (x) A.
a = A.element([3, "1/2"])
x = B.basis_element(1)
print("chi(a (x) X) coordinates:", QQ.format_array(chi_eval(cand.family, a, x)))

# Certification stamps the candidate; downstream constructions insist on it.
verified = certify(cand)
print("verified:", verified.verified)

# A failing candidate names its first violated condition: f(1) must be 1.
bad = make_ncd(A, [[0, 1], [0, 0]], [[0, 0], [0, 0]])
report = check_conditions_direct(bad.family)
print("\nprojection endomorphism verdict:", report.ok)
for failure in report.failures:
    print("  ", failure.condition, "witness", failure.witness,
          "left", failure.left, "right", failure.right)
oracle = oracle_check(bad.family)
print("oracle agrees:", oracle.ok, "first failing axiom:", oracle.failures[0].condition)
