"""Extending twisting maps along a direct product of the finite factor.

For D = B x C with the B-block-first basis, a candidate on (A, D) splits into
four families of End-valued block matrices (the two diagonal blocks of the
End-valued representation at B- and C-basis vectors) and four A-valued corner
blocks of the matrix family attached to A.  The checkers here decide, given
that the restriction to B is already a twisting map, whether the whole
candidate is one, by testing the block conditions directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteDimAlgebra, direct_product
from .errors import (
    BlockFormError,
    DimensionMismatchError,
    FieldMismatchError,
    UnverifiedCandidateError,
)
from .linalg import EndoMatrix, _alg_entry_product, _freeze
from .report import VerificationReport, family_failures, pairs_ok, pairs_report
from .twisting import GammaFamily, TwistingCandidate, certify, direct_ok


def _split_dims(psi: GammaFamily, n: int) -> tuple[int, int]:
    total = psi.B.dim
    if not 0 < n < total:
        raise DimensionMismatchError(f"cut {n} out of range for dimension {total}")
    return n, total - n


def _check_block_structure(psi: GammaFamily, n: int) -> None:
    """The carrier of psi must be a direct product in the block basis."""
    field = psi.field
    lam = psi.B.lam
    blocks_ok = (
        field.is_zero(lam[:n, :n, n:])
        and field.is_zero(lam[n:, n:, :n])
        and field.is_zero(lam[:n, n:])
        and field.is_zero(lam[n:, :n])
    )
    if not blocks_ok:
        raise DimensionMismatchError(
            f"carrier algebra is not a direct product split at {n}"
        )


def factor_algebras(psi: GammaFamily, n: int) -> tuple[FiniteDimAlgebra, FiniteDimAlgebra]:
    """The two factors of the carrier D = B x C, recovered by slicing."""
    _check_block_structure(psi, n)
    D = psi.B
    field = psi.field
    m = D.dim - n
    b = FiniteDimAlgebra(field, n, D.basis[:n], D.lam[:n, :n, :n].copy(), D.unit[:n].copy())
    c = FiniteDimAlgebra(field, m, D.basis[n:], D.lam[n:, n:, n:].copy(), D.unit[n:].copy())
    return b, c


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """Block data of a candidate over D = B x C.

    ``B1[k]`` / ``B2[k]`` (k < n) are the two diagonal blocks of the
    End-valued matrix at the k-th B-basis vector, of sizes n x n and m x m;
    ``C1[k]`` / ``C2[k]`` (k < m) the analogues at C-basis vectors.  The four
    A-valued corner blocks of the matrix family attached to A are evaluated by
    slicing, not stored.
    """

    psi: GammaFamily
    n: int
    m: int
    B1: np.ndarray  # (n, n, n, d, d)
    B2: np.ndarray  # (n, m, m, d, d)
    C1: np.ndarray  # (m, n, n, d, d)
    C2: np.ndarray  # (m, m, m, d, d)

    def __post_init__(self):
        for arr in (self.B1, self.B2, self.C1, self.C2):
            _freeze(arr)

    def b1(self, k: int) -> EndoMatrix:
        return EndoMatrix(self.psi.field, self.B1[k].copy())

    def b2(self, k: int) -> EndoMatrix:
        return EndoMatrix(self.psi.field, self.B2[k].copy())

    def c1(self, k: int) -> EndoMatrix:
        return EndoMatrix(self.psi.field, self.C1[k].copy())

    def c2(self, k: int) -> EndoMatrix:
        return EndoMatrix(self.psi.field, self.C2[k].copy())

    def gamma_block(self, p: int, q: int, a: np.ndarray) -> np.ndarray:
        """A-valued corner block at an element of A, sliced from the full matrix."""
        field = self.psi.field
        images = field.tensordot(self.psi.gamma, field.asarray(a), axes=([3], [0]))
        full = images.transpose(1, 0, 2)  # entry (j, k) = gamma[k][j](a)
        rows = slice(0, self.n) if p == 0 else slice(self.n, None)
        cols = slice(0, self.n) if q == 0 else slice(self.n, None)
        return full[rows, cols]


def _block_rho(field, lam_factor: np.ndarray, gslice: np.ndarray) -> np.ndarray:
    """Block[k, i, j] = sum_l lam_factor[j, l, i] gslice[k, l]."""
    t = field.tensordot(lam_factor, gslice, axes=([1], [1]))  # (j, i, k, r, c)
    return t.transpose(2, 1, 0, 3, 4)


def split_blocks(psi, n: int, m: int | None = None) -> BlockDecomposition:
    """Compute all block matrices of a candidate over D = B x C."""
    psi = psi.family if isinstance(psi, TwistingCandidate) else psi
    n, m_inferred = _split_dims(psi, n)
    if m is not None and m != m_inferred:
        raise DimensionMismatchError(f"expected m = {m_inferred}, got {m}")
    m = m_inferred
    _check_block_structure(psi, n)
    field = psi.field
    G = psi.gamma
    lamB = psi.B.lam[:n, :n, :n]
    lamC = psi.B.lam[n:, n:, n:]
    return BlockDecomposition(
        psi=psi,
        n=n,
        m=m,
        B1=_block_rho(field, lamB, G[:n, :n]),
        B2=_block_rho(field, lamC, G[:n, n:]),
        C1=_block_rho(field, lamB, G[n:, :n]),
        C2=_block_rho(field, lamC, G[n:, n:]),
    )


def restrict(psi, side: str, n: int) -> GammaFamily:
    """Corner restriction of a candidate on D = B x C to one factor.

    ``side="B"`` keeps the upper-left n x n sub-grid, ``side="C"`` the
    lower-right one (shifted by n).
    """
    psi = psi.family if isinstance(psi, TwistingCandidate) else psi
    _split_dims(psi, n)
    factor_b, factor_c = factor_algebras(psi, n)
    if side == "B":
        return GammaFamily(psi.A, factor_b, psi.gamma[:n, :n].copy())
    if side == "C":
        return GammaFamily(psi.A, factor_c, psi.gamma[n:, n:].copy())
    raise ValueError(f"side must be 'B' or 'C', got {side!r}")


# -- block condition families ---------------------------------------------------


def _endo_block_mul(field, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Pairwise products of two stacks of End-valued matrices.

    ``x`` has shape (a, s, s, d, d), ``y`` (b, s, s, d, d); the result
    (a, b, s, s, d, d) holds x_i y_j for all pairs.
    """
    prod = field.tensordot(x, y, axes=([2, 4], [1, 3]))  # (a, u, r, b, v, c)
    return prod.transpose(0, 3, 1, 4, 2, 5)


def _rep_pairs(field, stack: np.ndarray, constants: np.ndarray, tag: str):
    """Family: stack_i stack_j = sum_k constants[j, i, k] stack_k."""
    left = _endo_block_mul(field, stack, stack)
    right = field.tensordot(constants, stack, axes=([2], [0])).transpose(1, 0, 2, 3, 4, 5)
    yield tag, left, right


def _endo_identity_pattern(field, size: int, d: int) -> np.ndarray:
    return field.reduce(
        field.identity(size)[:, :, None, None] * field.identity(d)[None, None, :, :]
    )


def _phi_tensor(field, G: np.ndarray) -> np.ndarray:
    """All A-valued matrices at basis elements: PHI[x, j, k] = gamma[k][j](e_x)."""
    return G.transpose(3, 1, 0, 2)


def _phi_of_products(field, G: np.ndarray, lamA: np.ndarray) -> np.ndarray:
    """PHIP[x, y, j, k] = gamma[k][j](e_x e_y)."""
    t = field.tensordot(G, lamA, axes=([3], [2]))  # (k, j, r, x, y)
    return t.transpose(3, 4, 1, 0, 2)


def check_lemma_blocks(psi, n: int, m: int | None = None) -> VerificationReport:
    """Block form of the two representation criteria on D = B x C.

    End-valued side: the B- and C-stacks represent the opposite factors in
    both diagonal blocks, annihilate each other, and their unit combinations
    sum to the identity (tags ``B.rep.l``, ``C.rep.l``, ``BC.zero.l``,
    ``CB.zero.l``, ``unit.sum.l`` for l in {1, 2}).  A-valued side: corner
    unit normalizations and the block product rule
    ``Gamma^p_q(a a') = Gamma^p_0(a) Gamma^0_q(a') + Gamma^p_1(a) Gamma^1_q(a')``
    (tags ``Gamma{p}{q}.unit`` and ``Gamma{p}{q}.mul``).

    Agrees with the combined representation checkers on D for every candidate.
    """
    blocks = split_blocks(psi, n, m)
    return pairs_report(blocks.psi.field, _lemma_pairs(blocks))


def lemma_blocks_ok(psi, n: int, m: int | None = None) -> bool:
    """Fast verdict of the block criterion."""
    blocks = split_blocks(psi, n, m)
    return pairs_ok(blocks.psi.field, _lemma_pairs(blocks))


def _lemma_pairs(blocks: BlockDecomposition):
    """Condition families of the block criterion, yielded lazily."""
    psi = blocks.psi
    n, m = blocks.n, blocks.m
    field = psi.field
    lamB = psi.B.lam[:n, :n, :n]
    lamC = psi.B.lam[n:, n:, n:]
    alpha = psi.B.unit[:n]
    beta = psi.B.unit[n:]
    d = psi.A.dim

    for l, bstack, cstack, size in ((1, blocks.B1, blocks.C1, n), (2, blocks.B2, blocks.C2, m)):
        yield from _rep_pairs(field, bstack, lamB, f"B.rep.{l}")
        yield from _rep_pairs(field, cstack, lamC, f"C.rep.{l}")
        bc = _endo_block_mul(field, bstack, cstack)
        cb = _endo_block_mul(field, cstack, bstack)
        yield f"BC.zero.{l}", bc, field.zeros(bc.shape)
        yield f"CB.zero.{l}", cb, field.zeros(cb.shape)
        unit_sum = field.add(
            field.tensordot(alpha, bstack, axes=([0], [0])),
            field.tensordot(beta, cstack, axes=([0], [0])),
        )
        yield f"unit.sum.{l}", unit_sum, _endo_identity_pattern(field, size, d)

    yield from _gamma_block_pairs(field, psi, n, m)


def _gamma_block_pairs(field, psi: GammaFamily, n: int, m: int):
    """A-valued corner families of the block criterion."""
    G = psi.gamma
    lamA, unitA = psi.A.lam, psi.A.unit
    phi = _phi_tensor(field, G)                       # (x, j, k, w)
    row = (slice(0, n), slice(n, None))
    col = (slice(0, n), slice(n, None))
    d = psi.A.dim

    unit_img = field.tensordot(G, unitA, axes=([3], [0])).transpose(1, 0, 2)  # (j, k, w)
    eye_n = field.identity(n)
    eye_m = field.identity(m)
    unit_expect = {
        (0, 0): field.reduce(eye_n[:, :, None] * unitA[None, None, :]),
        (1, 1): field.reduce(eye_m[:, :, None] * unitA[None, None, :]),
        (0, 1): field.zeros((n, m, d)),
        (1, 0): field.zeros((m, n, d)),
    }
    for p in (0, 1):
        for q in (0, 1):
            yield f"Gamma{p}{q}.unit", unit_img[row[p], col[q]], unit_expect[(p, q)]

    phip = _phi_of_products(field, G, lamA)           # (x, y, j, k, w)
    for p in (0, 1):
        for q in (0, 1):
            left = phip[:, :, row[p], col[q]]
            right = field.zeros(left.shape)
            for x in range(d):
                for y in range(d):
                    term0 = _alg_entry_product(
                        field, lamA, phi[x, row[p], col[0]], phi[y, row[0], col[q]]
                    )
                    term1 = _alg_entry_product(
                        field, lamA, phi[x, row[p], col[1]], phi[y, row[1], col[q]]
                    )
                    right[x, y] = field.add(term0, term1)
            yield f"Gamma{p}{q}.mul", left, right


def check_extension_given_theta(
    psi, n: int, m: int | None = None, *, require_gamma01_zero: bool = True
) -> VerificationReport:
    """Extension criterion: given that the B-restriction is a twisting map,
    the candidate on D = B x C is one iff these block conditions hold.

    With ``require_gamma01_zero=True`` (the strengthened form) the families
    are: ``B2.mul``, ``C1.zero``, ``C2.mul``, ``B2C2.zero`` / ``C2B2.zero``,
    ``unit.sum``, ``Gamma01`` (the upper-right corner vanishes identically),
    ``Gamma11.mul``, ``Gamma10.der``, ``Gamma11.unit``, ``Gamma10.unit``.
    With the flag off, the staged form keeps ``Gamma01`` unconstrained and
    instead checks the corner product rules ``Gamma01.rule`` / ``Gamma11.rule``,
    the mixed vanishing ``Gamma01Gamma10.zero`` and ``Gamma01.unit``.

    Raises ``UnverifiedCandidateError`` when the B-restriction fails its own
    verification.
    """
    blocks = split_blocks(psi, n, m)
    psi = blocks.psi
    n, m = blocks.n, blocks.m
    field = psi.field
    theta = restrict(psi, "B", n)
    if not direct_ok(theta):
        raise UnverifiedCandidateError("the restriction to the first factor is not a twisting map")

    lamB = psi.B.lam[:n, :n, :n]
    lamC = psi.B.lam[n:, n:, n:]
    alpha = psi.B.unit[:n]
    beta = psi.B.unit[n:]
    lamA, unitA = psi.A.lam, psi.A.unit
    d = psi.A.dim

    failures = []

    for tag, left, right in _rep_pairs(field, blocks.B2, lamB, "B2.mul"):
        failures.extend(family_failures(field, tag, left, right))
    failures.extend(
        family_failures(field, "C1.zero", blocks.C1, field.zeros(blocks.C1.shape))
    )
    for tag, left, right in _rep_pairs(field, blocks.C2, lamC, "C2.mul"):
        failures.extend(family_failures(field, tag, left, right))
    bc = _endo_block_mul(field, blocks.B2, blocks.C2)
    cb = _endo_block_mul(field, blocks.C2, blocks.B2)
    failures.extend(family_failures(field, "B2C2.zero", bc, field.zeros(bc.shape)))
    failures.extend(family_failures(field, "C2B2.zero", cb, field.zeros(cb.shape)))
    unit_sum = field.add(
        field.tensordot(alpha, blocks.B2, axes=([0], [0])),
        field.tensordot(beta, blocks.C2, axes=([0], [0])),
    )
    failures.extend(
        family_failures(field, "unit.sum", unit_sum, _endo_identity_pattern(field, m, d))
    )

    phi = _phi_tensor(field, psi.gamma)
    phip = _phi_of_products(field, psi.gamma, lamA)
    g00 = phi[:, :n, :n]
    g01 = phi[:, :n, n:]
    g10 = phi[:, n:, :n]
    g11 = phi[:, n:, n:]

    if require_gamma01_zero:
        failures.extend(
            family_failures(
                field, "Gamma01", psi.gamma[n:, :n], field.zeros(psi.gamma[n:, :n].shape)
            )
        )
        # Gamma11 multiplicative
        left = phip[:, :, n:, n:]
        right = field.zeros(left.shape)
        for x in range(d):
            for y in range(d):
                right[x, y] = _alg_entry_product(field, lamA, g11[x], g11[y])
        failures.extend(family_failures(field, "Gamma11.mul", left, right))
    else:
        # corner product rules with Gamma01 unconstrained: the Gamma^p_1 rule
        # for row block p in {0, 1}
        for tag, p in (("Gamma01.rule", 0), ("Gamma11.rule", 1)):
            rows = slice(0, n) if p == 0 else slice(n, None)
            left = phip[:, :, rows, n:]
            right = field.zeros(left.shape)
            gp0 = phi[:, rows, :n]
            gp1 = phi[:, rows, n:]
            for x in range(d):
                for y in range(d):
                    right[x, y] = field.add(
                        _alg_entry_product(field, lamA, gp0[x], g01[y]),
                        _alg_entry_product(field, lamA, gp1[x], g11[y]),
                    )
            failures.extend(family_failures(field, tag, left, right))
        # Gamma01(a) Gamma10(a') = 0
        mixed = field.zeros((d, d, n, n, d))
        for x in range(d):
            for y in range(d):
                mixed[x, y] = _alg_entry_product(field, lamA, g01[x], g10[y])
        failures.extend(
            family_failures(field, "Gamma01Gamma10.zero", mixed, field.zeros(mixed.shape))
        )
        unit_img01 = field.tensordot(psi.gamma[n:, :n], unitA, axes=([3], [0])).transpose(1, 0, 2)
        failures.extend(
            family_failures(field, "Gamma01.unit", unit_img01, field.zeros(unit_img01.shape))
        )

    # Gamma10 twisted-derivation rule, shared by both stages
    left = phip[:, :, n:, :n]
    right = field.zeros(left.shape)
    for x in range(d):
        for y in range(d):
            right[x, y] = field.add(
                _alg_entry_product(field, lamA, g10[x], g00[y]),
                _alg_entry_product(field, lamA, g11[x], g10[y]),
            )
    failures.extend(family_failures(field, "Gamma10.der", left, right))

    # unit normalizations
    unit_img = field.tensordot(psi.gamma, unitA, axes=([3], [0])).transpose(1, 0, 2)
    eye_m = field.identity(m)
    failures.extend(
        family_failures(
            field,
            "Gamma11.unit",
            unit_img[n:, n:],
            field.reduce(eye_m[:, :, None] * unitA[None, None, :]),
        )
    )
    failures.extend(
        family_failures(
            field, "Gamma10.unit", unit_img[n:, :n], field.zeros((m, n, psi.A.dim))
        )
    )

    return VerificationReport.from_failures(failures)


def direct_sum(theta: TwistingCandidate, ups: TwistingCandidate) -> TwistingCandidate:
    """Block-diagonal join of two verified candidates on the product carrier."""
    if not (isinstance(theta, TwistingCandidate) and theta.verified):
        raise UnverifiedCandidateError("direct_sum requires a verified first summand")
    if not (isinstance(ups, TwistingCandidate) and ups.verified):
        raise UnverifiedCandidateError("direct_sum requires a verified second summand")
    if theta.family.field != ups.family.field:
        raise FieldMismatchError("summands live over different fields")
    if theta.A != ups.A:
        raise DimensionMismatchError("summands twist different algebras")
    field = theta.family.field
    n, m, d = theta.B.dim, ups.B.dim, theta.A.dim
    carrier = direct_product(theta.B, ups.B)
    grid = field.zeros((n + m, n + m, d, d))
    grid[:n, :n] = theta.family.gamma
    grid[n:, n:] = ups.family.gamma
    out = certify(GammaFamily(theta.A, carrier, grid))
    if not out.verified:
        raise AssertionError("direct sum of verified candidates failed verification")
    return out


def check_remark_delta(psi: TwistingCandidate, n: int) -> VerificationReport:
    """Identities of the lower-triangular block form of a verified candidate.

    Requires the upper-right corner to vanish (raises ``BlockFormError``
    otherwise).  Families: the two diagonal corner families are multiplicative
    and the lower-left corner satisfies the twisted derivation rule
    (tags ``phiB.mul``, ``phiC.mul``, ``Delta.der``).
    """
    family = psi.family if isinstance(psi, TwistingCandidate) else None
    if family is None or not psi.verified:
        raise UnverifiedCandidateError("check_remark_delta requires a verified candidate")
    _split_dims(family, n)
    _check_block_structure(family, n)
    field = family.field
    if not field.is_zero(family.gamma[n:, :n]):
        raise BlockFormError("upper-right corner block does not vanish")
    lamA = family.A.lam
    d = family.A.dim
    phi = _phi_tensor(field, family.gamma)
    phip = _phi_of_products(field, family.gamma, lamA)
    g00 = phi[:, :n, :n]
    g10 = phi[:, n:, :n]
    g11 = phi[:, n:, n:]

    failures = []
    for tag, rows, cols, block in (
        ("phiB.mul", slice(0, n), slice(0, n), g00),
        ("phiC.mul", slice(n, None), slice(n, None), g11),
    ):
        left = phip[:, :, rows, cols]
        right = field.zeros(left.shape)
        for x in range(d):
            for y in range(d):
                right[x, y] = _alg_entry_product(field, lamA, block[x], block[y])
        failures.extend(family_failures(field, tag, left, right))

    left = phip[:, :, n:, :n]
    right = field.zeros(left.shape)
    for x in range(d):
        for y in range(d):
            right[x, y] = field.add(
                _alg_entry_product(field, lamA, g10[x], g00[y]),
                _alg_entry_product(field, lamA, g11[x], g10[y]),
            )
    failures.extend(family_failures(field, "Delta.der", left, right))
    return VerificationReport.from_failures(failures)
