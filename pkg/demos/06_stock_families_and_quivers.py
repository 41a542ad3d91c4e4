"""
The stock families and their own acceptance conditions
======================================================

Each catalog family (duplicates, quantum duplicates, idempotent carriers,
truncated carriers) has its own classical condition list on the defining
data.  The constructors always build; the family conditions and the generic
checkers then agree verdict for verdict.  Candidates over K^n additionally
draw a quiver: one vertex per idempotent, an arrow per nonzero grid entry.
"""

from twistkit import (
    GF,
    QQ,
    certify,
    kn_algebra,
    make_kn,
    make_ncd,
    make_quantum_duplicate,
    ncd_conditions,
    qdup_conditions,
    quiver_of,
    truncated_conditions,
    truncated_from_first_row,
)
from twistkit.twisting import direct_ok

A = kn_algebra(QQ, 2)

# Duplicates: data (f, delta) with f an endomorphism, delta a twisted
# derivation, their mixed compositions returning f, and delta idempotent.
f = [[1, 0], [1, 0]]
report = ncd_conditions(A, f, [[0, 0], [0, 0]])
print("duplicate conditions:", report.ok)

# Quantum duplicates at (alpha, beta) = (0, -1): the swap works, a swap with
# itself as derivation part does not.
swap = [[0, 1], [1, 0]]
print("quantum (swap, 0):", qdup_conditions(A, 0, -1, swap, [[0, 0], [0, 0]]).ok)
bad = qdup_conditions(A, 0, -1, swap, swap)
print("quantum (swap, swap):", bad.ok, sorted(bad.conditions()))

# Idempotent carriers: the grid rows sum to the identity and the columns are
# orthogonal idempotent families.
eye = QQ.identity(2)
zero = QQ.zeros((2, 2))
fq = QQ.asarray(f)
grid = [[eye, QQ.sub(eye, fq)], [zero, fq]]
cand = certify(make_kn(A, 2, grid))
print("\nK^2 grid verified:", cand.verified)

quiver, rep = quiver_of(cand)
print("quiver vertices:", quiver.vertices)
print("arrows (source, target):", quiver.arrows)
for arrow, mat in rep.maps.items():
    print("  map on", arrow, "=", QQ.format_array(mat.data))

# Truncated carriers: rows above the first are forced by a convolution rule,
# so a candidate is determined by its exponent-one row.
F2 = GF(2)
A2 = kn_algebra(F2, 2)
row = [F2.zeros((2, 2)), F2.identity(2), F2.zeros((2, 2))]
trunc = truncated_from_first_row(A2, 3, row)
print("\ntruncated flip verified:", direct_ok(trunc.family))
print("family conditions:", truncated_conditions(A2, 3, trunc.family.gamma).ok)

nil = F2.asarray([[0, 1], [0, 0]])
broken = truncated_from_first_row(A2, 3, [nil, F2.identity(2), F2.zeros((2, 2))])
report = truncated_conditions(A2, 3, broken.family.gamma)
print("nilpotent leading entry:", report.ok, sorted(report.conditions()))
