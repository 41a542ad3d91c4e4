"""
Extending along a direct product of the carrier
===============================================

Over the carrier D = B x C a candidate splits into block data: End-valued
diagonal blocks per factor basis vector and four A-valued corner blocks.
Given that the restriction to B is already a twisting map, the candidate is
one exactly when the block conditions hold; and when both restrictions are
twisting maps, the whole candidate is one exactly when it is their
block-diagonal direct sum.
"""

from twistkit import (
    GF,
    GammaFamily,
    certify,
    check_extension_given_theta,
    check_lemma_blocks,
    check_remark_delta,
    direct_sum,
    kn_algebra,
    make_ncd,
    restrict,
    split_blocks,
)

F2 = GF(2)
A = kn_algebra(F2, 2)

theta = certify(GammaFamily.flip(A, kn_algebra(F2, 2)))
ups = certify(make_ncd(A, [[1, 0], [1, 0]], [[0, 0], [0, 0]]))

psi = direct_sum(theta, ups)
print("direct sum carrier:", psi.B.basis, "dim", psi.B.dim)
print("verified:", psi.verified)

blocks = split_blocks(psi.family, 2)
print("second-factor block over the first factor vanishes:", F2.is_zero(blocks.C1))
print("corner block at the unit vanishes:",
      F2.is_zero(blocks.gamma_block(0, 1, A.unit)))

print("\nblock criteria:")
print("  representation lemma:", check_lemma_blocks(psi.family, 2).ok)
print("  extension theorem:", check_extension_given_theta(psi.family, 2).ok)
print("  staged form (corner unconstrained):",
      check_extension_given_theta(psi.family, 2, require_gamma01_zero=False).ok)
print("  triangular-form identities:", check_remark_delta(psi, 2).ok)

# Restriction recovers the summands on the nose.
print("\nrestrictions recover the factors:",
      restrict(psi.family, "B", 2) == theta.family,
      restrict(psi.family, "C", 2) == ups.family)

# Perturbing a single cross entry is caught immediately.
grid = psi.family.gamma.copy()
grid[2, 0, 0, 0] = F2.one
report = check_extension_given_theta(GammaFamily(psi.A, psi.B, grid), 2)
print("\nperturbed cross entry verdict:", report.ok)
print("violated:", sorted(report.conditions()))
