"""
Morphisms of carriers and base change
=====================================

A morphism of carrier algebras induces a map of twisted products; whether
the induced map is an algebra morphism is an exact intertwining condition
between the two matrix representations.  Changing the carrier basis
transports the whole candidate and conjugates both representations by the
transition matrix; the conjugation identities are verified, not assumed.
"""

from twistkit import (
    QQ,
    KMatrix,
    certify,
    check_induced_morphism,
    kn_algebra,
    make_kn,
    make_morphism,
    make_ncd,
    rebase,
)

A = kn_algebra(QQ, 2)
chi = certify(make_ncd(A, [[1, 0], [1, 0]], [[0, 0], [0, 0]]))

# K[X]/(X^2 - X) is isomorphic to K^2: send 1 to e1 + e2 and X to e2.
k2 = kn_algebra(QQ, 2)
iso = make_morphism(chi.B, k2, [[1, 0], [1, 1]])
print("1 maps to", QQ.format_array(iso.apply(chi.B.unit)))
print("X maps to", QQ.format_array(iso.apply(chi.B.basis_element(1))))

# Rebasing along the matching new basis (e1 = 1 - X, e2 = X) rewrites the
# candidate over the idempotent carrier.
res = rebase(chi, KMatrix.from_rows(QQ, [[1, 0], [-1, 1]]))
print("\nrebased carrier equals K^2:", res.algebra == k2)
print("conjugation identities hold:", res.conjugation.ok)
print("rebased candidate verified:", res.candidate.verified)
print("grid over K^2:")
print(QQ.format_array(res.candidate.family.gamma))

# The rebased grid is exactly the dictionary between the two families:
# the lower-left entry carries the derivation part, and the difference of
# the second-row entries recovers the endomorphism.
varpi = certify(make_kn(A, 2, res.candidate.family.gamma))
report = check_induced_morphism(chi, varpi, iso)
print("\ninduced map is a morphism:", report.ok)

# Against a mismatched target the same criterion fails, coherently in both
# of its two equivalent forms.
from twistkit import GammaFamily

flip = certify(GammaFamily.flip(A, k2))
bad = check_induced_morphism(chi, flip, iso)
print("against the flip instead:", bad.ok,
      "| forms disagree:", "eq.agreement" in bad.conditions())
