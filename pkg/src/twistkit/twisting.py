"""Twisting-map candidates, their verification routes, and twisted products.

A linear map ``chi: A (x) B -> B (x) A`` with ``B`` of dimension n is encoded
by the grid of maps ``gamma[i][j]: A -> A`` through

    chi(a (x) b_i) = sum_j  b_j (x) gamma[i][j](a).

Three independent routes decide whether ``chi`` is a twisting map:

* ``check_conditions_direct``   the four structure-constant conditions on the
  gamma grid (units, twisted multiplicativity, unit sums, product rule);
* ``check_rho_representation`` + ``check_phi_representation``   the two
  matrix-representation criteria (an End-valued matrix family indexed by the
  opposite of B, and an A-valued matrix family indexed by A);
* ``oracle_check``   the definition itself: assemble the candidate product on
  B (x) A unconditionally and test associativity, units and the canonical
  inclusions.

The routes agree on every candidate; the exhaustive searches in
``twistkit.search`` cross-validate them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteDimAlgebra
from .errors import DimensionMismatchError, FieldMismatchError, UnverifiedCandidateError
from .linalg import AlgMatrix, EndoMatrix, KMatrix, _freeze, kernel_basis
from .report import VerificationReport, Failure, family_failures, pairs_ok, pairs_report


@dataclass(frozen=True, eq=False)
class GammaFamily:
    """The gamma grid of a candidate map A (x) B -> B (x) A.

    ``gamma`` has shape (n, n, d, d) with n = dim B, d = dim A;
    ``gamma[i, j]`` is the coordinate matrix (columns = images of basis
    vectors) of the map sending the A-component of ``a (x) b_i`` to the
    coefficient of ``b_j``.
    """

    A: FiniteDimAlgebra
    B: FiniteDimAlgebra
    gamma: np.ndarray

    def __post_init__(self):
        if self.A.field != self.B.field:
            raise FieldMismatchError(f"A over {self.A.field}, B over {self.B.field}")
        n, d = self.B.dim, self.A.dim
        if self.gamma.shape != (n, n, d, d):
            raise DimensionMismatchError(
                f"gamma grid has shape {self.gamma.shape}, expected {(n, n, d, d)}"
            )
        _freeze(self.gamma)

    @property
    def field(self):
        return self.A.field

    def endo(self, i: int, j: int) -> KMatrix:
        return KMatrix(self.field, self.gamma[i, j])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaFamily):
            return NotImplemented
        return (
            self.A == other.A
            and self.B == other.B
            and self.field.equal(self.gamma, other.gamma)
        )

    @classmethod
    def flip(cls, A: FiniteDimAlgebra, B: FiniteDimAlgebra) -> "GammaFamily":
        """The ordinary tensor product: gamma[i][j] = delta_ij * identity."""
        field = A.field
        n, d = B.dim, A.dim
        grid = field.zeros((n, n, d, d))
        eye = field.identity(d)
        for i in range(n):
            grid[i, i] = eye
        return cls(A, B, grid)

    @classmethod
    def from_endos(cls, A: FiniteDimAlgebra, B: FiniteDimAlgebra, grid) -> "GammaFamily":
        field = A.field
        n, d = B.dim, A.dim
        data = field.zeros((n, n, d, d))
        for i in range(n):
            for j in range(n):
                entry = grid[i][j]
                data[i, j] = entry.data if isinstance(entry, KMatrix) else field.asarray(entry)
        return cls(A, B, data)


@dataclass(frozen=True, eq=False)
class TwistingCandidate:
    """A gamma family together with its verification status.

    ``verified`` is a capability flag: it is meant to be set only through
    ``certify`` (or the extension module's constructions, which certify their
    output).  Consumers that require a twisting map refuse candidates whose
    flag is down instead of re-checking.
    """

    family: GammaFamily
    verified: bool = False

    @property
    def A(self) -> FiniteDimAlgebra:
        return self.family.A

    @property
    def B(self) -> FiniteDimAlgebra:
        return self.family.B

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistingCandidate):
            return NotImplemented
        return self.family == other.family and self.verified == other.verified


def _family_of(c) -> GammaFamily:
    return c.family if isinstance(c, TwistingCandidate) else c


def _require_verified(c: TwistingCandidate, what: str) -> GammaFamily:
    if not isinstance(c, TwistingCandidate) or not c.verified:
        raise UnverifiedCandidateError(f"{what} requires a verified twisting candidate")
    return c.family


def certify(c) -> TwistingCandidate:
    """Run the structure-constant checker and set the verified flag from it."""
    family = _family_of(c)
    return TwistingCandidate(family, verified=check_conditions_direct(family).ok)


# -- evaluation ---------------------------------------------------------------


def chi_eval(c, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coordinates of chi(a (x) b) in the basis b_j (x) a_r of B (x) A.

    The result has length n*d with entry (j, r) at position j*d + r.
    """
    family = _family_of(c)
    n, d = family.B.dim, family.A.dim
    if len(a) != d or len(b) != n:
        raise DimensionMismatchError("element lengths do not match the family")
    field = family.field
    images = field.tensordot(family.gamma, a, axes=([3], [0]))  # (i, j, r)
    out = field.tensordot(b, images, axes=([0], [0]))           # (j, r)
    return out.reshape(n * d)


# -- route 1: structure-constant conditions ------------------------------------


def _direct_pairs(family: GammaFamily):
    """The four condition families, yielded lazily as (tag, left, right)."""
    field = family.field
    G = family.gamma
    lamA, unitA = family.A.lam, family.A.unit
    lamB, unitB = family.B.lam, family.B.unit
    n, d = family.B.dim, family.A.dim
    eye_n = field.identity(n)
    eye_d = field.identity(d)

    # (1) gamma_i^j(1) = delta_ij 1
    left1 = field.tensordot(G, unitA, axes=([3], [0]))          # (i, j, r)
    right1 = field.reduce(eye_n[:, :, None] * unitA[None, None, :])
    yield "direct.1", left1, right1

    # (2) gamma_i^k(a a') = sum_j gamma_j^k(a) gamma_i^j(a') on basis pairs;
    #     witness axes (i, k, p, q, r)
    left2 = field.tensordot(G, lamA, axes=([3], [2])).transpose(0, 1, 3, 4, 2)
    t1 = field.tensordot(G, lamA, axes=([2], [0]))              # (j, k, p, v, w)
    right2 = field.tensordot(t1, G, axes=([0, 3], [1, 2]))      # (k, p, w, i, q)
    yield "direct.2", left2, right2.transpose(3, 0, 1, 4, 2)

    # (3) alpha_k id = sum_i alpha_i gamma_i^k; witness axes (k, r, c)
    left3 = field.reduce(unitB[:, None, None] * eye_d[None, :, :])
    right3 = field.tensordot(unitB, G, axes=([0], [0]))         # (k, r, c)
    yield "direct.3", left3, right3

    # (4) sum_k lam_ij^k gamma_k^m = sum_{k,l} lam_kl^m gamma_j^l o gamma_i^k;
    #     witness axes (i, j, m, r, c)
    left4 = field.tensordot(lamB, G, axes=([2], [0]))           # (i, j, m, r, c)
    comps = field.tensordot(G, G, axes=([3], [2]))              # (j, l, r, i, k, c)
    right4 = field.tensordot(lamB, comps, axes=([0, 1], [4, 1]))  # (m, j, r, i, c)
    yield "direct.4", left4, right4.transpose(3, 1, 0, 2, 4)


def check_conditions_direct(c) -> VerificationReport:
    """Verdict of the four structure-constant conditions on the gamma grid.

    Condition tags ``direct.1`` .. ``direct.4``; conditions quantified over A
    are checked on basis pairs, which suffices by bilinearity.
    """
    family = _family_of(c)
    return pairs_report(family.field, _direct_pairs(family))


def direct_ok(c) -> bool:
    family = _family_of(c)
    return pairs_ok(family.field, _direct_pairs(family))


def direct_condition_flags(c) -> tuple[bool, bool, bool, bool]:
    """Per-condition booleans (1, 2, 3, 4), each fully evaluated."""
    family = _family_of(c)
    field = family.field
    flags = [field.equal(left, right) for _, left, right in _direct_pairs(family)]
    return tuple(flags)


# -- route 2a: End-valued representation ---------------------------------------


def _rho_tensor(family: GammaFamily) -> np.ndarray:
    """All matrices at once: R[k, i, m] = sum_l lamB[m, l, i] gamma[k, l]."""
    field = family.field
    t = field.tensordot(family.B.lam, family.gamma, axes=([1], [1]))  # (m, i, k, r, c)
    return t.transpose(2, 1, 0, 3, 4)


def rho_hat(c, k: int) -> EndoMatrix:
    """The End-valued matrix attached to the k-th opposite basis vector."""
    family = _family_of(c)
    if not 0 <= k < family.B.dim:
        raise IndexError(f"basis index {k} out of range for dimension {family.B.dim}")
    return EndoMatrix(family.field, _rho_tensor(family)[k].copy())


def _rho_pairs(family: GammaFamily):
    field = family.field
    lamB, unitB = family.B.lam, family.B.unit
    n, d = family.B.dim, family.A.dim
    R = _rho_tensor(family)

    # unit: sum_k alpha_k R_k = identity; witness axes (i, m, r, c)
    left_u = field.tensordot(unitB, R, axes=([0], [0]))
    eye = field.reduce(
        field.identity(n)[:, :, None, None] * field.identity(d)[None, None, :, :]
    )
    yield "rho.unit", left_u, eye

    # multiplication against the opposite product: R_i R_j = sum_k lam[j, i, k] R_k;
    # witness axes (i, j, u, v, r, c)
    left_m = field.tensordot(lamB, R, axes=([2], [0])).transpose(1, 0, 2, 3, 4, 5)
    right_m = field.tensordot(R, R, axes=([2, 4], [1, 3])).transpose(0, 3, 1, 4, 2, 5)
    yield "rho.mul", left_m, right_m


def check_rho_representation(c) -> VerificationReport:
    """Representation criterion for the End-valued matrix family.

    Equivalent to conditions (3) and (4) of the direct route; entry products
    are compositions of endomorphisms.
    """
    family = _family_of(c)
    return pairs_report(family.field, _rho_pairs(family))


def rho_ok(c) -> bool:
    family = _family_of(c)
    return pairs_ok(family.field, _rho_pairs(family))


# -- route 2b: A-valued representation -----------------------------------------


def phi_hat(c, a: np.ndarray) -> AlgMatrix:
    """The A-valued matrix of an element a: entry (j, k) = gamma[k][j](a)."""
    family = _family_of(c)
    if len(a) != family.A.dim:
        raise DimensionMismatchError("element length does not match dim A")
    field = family.field
    images = field.tensordot(family.gamma, field.asarray(a), axes=([3], [0]))  # (k, j, r)
    return AlgMatrix(family.A, images.transpose(1, 0, 2).copy())


def _phi_pairs(family: GammaFamily):
    field = family.field
    G = family.gamma
    lamA, unitA = family.A.lam, family.A.unit
    n = family.B.dim

    # unit: phi(1_A) = identity matrix; witness axes (j, k, r)
    left_u = field.tensordot(G, unitA, axes=([3], [0])).transpose(1, 0, 2)
    right_u = field.reduce(field.identity(n)[:, :, None] * unitA[None, None, :])
    yield "phi.unit", left_u, right_u

    # multiplicativity on basis pairs: phi(a_p a_q) = phi(a_p) phi(a_q);
    # witness axes (p, q, j, l, w)
    left_m = field.tensordot(G, lamA, axes=([3], [2])).transpose(3, 4, 1, 0, 2)
    t1 = field.tensordot(G, lamA, axes=([2], [0]))            # (k, j, p, v, w)
    right_m = field.tensordot(t1, G, axes=([0, 3], [1, 2]))   # (j, p, w, l, q)
    yield "phi.mul", left_m, right_m.transpose(1, 4, 0, 3, 2)


def check_phi_representation(c) -> VerificationReport:
    """Representation criterion for the A-valued matrix family.

    Equivalent to conditions (1) and (2) of the direct route.
    """
    family = _family_of(c)
    return pairs_report(family.field, _phi_pairs(family))


def phi_ok(c) -> bool:
    family = _family_of(c)
    return pairs_ok(family.field, _phi_pairs(family))


def rep_ok(c) -> bool:
    """Combined representation-route verdict."""
    return rho_ok(c) and phi_ok(c)


def check_representations(c) -> VerificationReport:
    family = _family_of(c)
    return pairs_report(family.field, list(_rho_pairs(family)) + list(_phi_pairs(family)))


# -- twisted product ------------------------------------------------------------


def _product_tensor(family: GammaFamily) -> tuple[np.ndarray, np.ndarray]:
    """Structure constants and unit of the candidate product on B (x) A.

    (b_i (x) a_p)(b_j (x) a_q) = sum_{k,l} lamB[i,l,k] * (gamma[j][l](a_p) a_q)
    on the basis vector b_k (x) -, ordered (i, p) -> i*d + p.
    """
    field = family.field
    G = family.gamma
    lamA = family.A.lam
    lamB = family.B.lam
    n, d = family.B.dim, family.A.dim
    t = field.tensordot(G, lamA, axes=([2], [0]))       # (j, l, p, q, w)
    lam6 = field.tensordot(lamB, t, axes=([1], [1]))    # (i, k, j, p, q, w)
    lam = lam6.transpose(0, 3, 2, 4, 1, 5).reshape(n * d, n * d, n * d)
    unit = field.tensordot(family.B.unit, family.A.unit, axes=0).reshape(n * d)
    return lam, unit


@dataclass(frozen=True, eq=False)
class TwistedTensorAlgebra:
    """The twisted product algebra together with its provenance candidate."""

    algebra: FiniteDimAlgebra
    candidate: TwistingCandidate

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def include_B(self, b: np.ndarray) -> np.ndarray:
        """Coordinates of b (x) 1_A."""
        field = self.algebra.field
        return field.tensordot(field.asarray(b), self.candidate.A.unit, axes=0).reshape(self.dim)

    def include_A(self, a: np.ndarray) -> np.ndarray:
        """Coordinates of 1_B (x) a."""
        field = self.algebra.field
        return field.tensordot(self.candidate.B.unit, field.asarray(a), axes=0).reshape(self.dim)


def build_twisted_product(c: TwistingCandidate) -> TwistedTensorAlgebra:
    """The twisted tensor product algebra of a verified candidate."""
    family = _require_verified(c, "build_twisted_product")
    lam, unit = _product_tensor(family)
    labels = tuple(
        f"{bl}⊗{al}" for bl in family.B.basis for al in family.A.basis
    )
    algebra = FiniteDimAlgebra(family.field, family.B.dim * family.A.dim, labels, lam, unit)
    return TwistedTensorAlgebra(algebra, c)


# -- route 3: the definition-level oracle ----------------------------------------


def _oracle_pairs(family: GammaFamily):
    """Definition-level families: chi-unit axioms, associativity and units of
    the assembled product, and the canonical inclusions."""
    field = family.field
    G = family.gamma
    lamA, unitA = family.A.lam, family.A.unit
    lamB, unitB = family.B.lam, family.B.unit
    n, d = family.B.dim, family.A.dim
    nd = n * d
    eye_n = field.identity(n)
    eye_d = field.identity(d)

    # chi(1_A (x) b_i) = b_i (x) 1_A; witness axes (i, j, r)
    left_cu = field.tensordot(G, unitA, axes=([3], [0]))
    right_cu = field.reduce(eye_n[:, :, None] * unitA[None, None, :])
    yield "oracle.chi-left-unit", left_cu, right_cu

    # chi(a_p (x) 1_B) = 1_B (x) a_p; witness axes (p, j, r)
    left_ru = field.tensordot(unitB, G, axes=([0], [0])).transpose(2, 0, 1)
    right_ru = field.reduce(unitB[None, :, None] * eye_d[:, None, :])
    yield "oracle.chi-right-unit", left_ru, right_ru

    lam, unit = _product_tensor(family)

    # associativity of the assembled product; witness axes (x, y, z, w)
    assoc_l = field.tensordot(lam, lam, axes=([2], [0]))
    assoc_r = field.tensordot(lam, lam, axes=([2], [1])).transpose(2, 0, 1, 3)
    yield "oracle.assoc", assoc_l, assoc_r

    eye_nd = field.identity(nd)
    yield "oracle.unit-left", field.tensordot(unit, lam, axes=([0], [0])), eye_nd
    yield "oracle.unit-right", field.tensordot(unit, lam, axes=([0], [1])), eye_nd

    # canonical inclusions are algebra maps
    ib = field.tensordot(eye_n, unitA, axes=0).reshape(n, nd)
    ia = field.tensordot(unitB, eye_d, axes=0).transpose(1, 0, 2).reshape(d, nd)

    t1 = field.tensordot(ib, lam, axes=([1], [0]))                    # (x, t, m)
    prod_bb = field.tensordot(ib, t1, axes=([1], [1])).transpose(1, 0, 2)
    exp_bb = field.tensordot(lamB, ib, axes=([2], [0]))
    yield "oracle.iB", prod_bb, exp_bb

    t2 = field.tensordot(ia, lam, axes=([1], [0]))                    # (p, t, m)
    prod_aa = field.tensordot(ia, t2, axes=([1], [1])).transpose(1, 0, 2)
    exp_aa = field.tensordot(lamA, ia, axes=([2], [0]))
    yield "oracle.iA", prod_aa, exp_aa

    # i_B(b_i) i_A(a_p) = b_i (x) a_p; witness axes (i, p, m)
    prod_ba = field.tensordot(t1, ia, axes=([1], [1])).transpose(0, 2, 1)
    yield "oracle.factor", prod_ba, eye_nd.reshape(n, d, nd)


def oracle_check(c) -> VerificationReport:
    """Definition-level verdict computed without the condition formulas.

    Assembles the product on B (x) A unconditionally and checks: the two
    chi-unit axioms, associativity on all basis triples, the two-sided unit,
    that both canonical inclusions are algebra morphisms, and the
    factorization property.
    """
    family = _family_of(c)
    return pairs_report(family.field, _oracle_pairs(family))


def oracle_ok(c) -> bool:
    family = _family_of(c)
    return pairs_ok(family.field, _oracle_pairs(family))


# -- the faithful representation -------------------------------------------------


@dataclass(frozen=True, eq=False)
class FaithfulRep:
    """The faithful A-valued matrix representation of a twisted product.

    ``on_basis[k*d + p]`` is the image of the product basis vector
    b_k (x) a_p; ``apply`` extends linearly.
    """

    product: TwistedTensorAlgebra
    on_basis: tuple[AlgMatrix, ...]

    def apply(self, coords: np.ndarray) -> AlgMatrix:
        field = self.product.algebra.field
        stack = np.stack([m.data for m in self.on_basis])
        data = field.tensordot(field.asarray(coords), stack, axes=([0], [0]))
        return AlgMatrix(self.on_basis[0].algebra, data)


def _faithful_tensor(family: GammaFamily) -> np.ndarray:
    """Images of all product basis vectors, shape (n*d, n, n, d)."""
    field = family.field
    G = family.gamma
    lamA, unitA = family.A.lam, family.A.unit
    n, d = family.B.dim, family.A.dim
    # image of b_k: entry (i, j) = lamB[k, j, i] * 1_A
    pb = field.tensordot(family.B.lam, unitA, axes=0).transpose(0, 2, 1, 3)
    # image of a_p: entry (i, j) = gamma[j][i](a_p)
    pa = family.gamma.transpose(3, 1, 0, 2)
    # image of b_k (x) a_p is the matrix product pb[k] pa[p]
    t6 = field.tensordot(pb, pa, axes=([2], [1]))                  # (k, i, u, p, j, v)
    full = field.tensordot(t6, lamA, axes=([2, 5], [0, 1]))        # (k, i, p, j, w)
    return full.transpose(0, 2, 1, 3, 4).reshape(n * d, n, n, d)


def lift_structure_matrix(c, k: int) -> AlgMatrix:
    """A-valued structure matrix of the k-th carrier basis vector.

    Entry (i, j) is the scalar ``lam[k, j, i]`` times the unit of A; this is
    the image of ``b_k (x) 1`` under the faithful representation.
    """
    family = _family_of(c)
    if not 0 <= k < family.B.dim:
        raise IndexError(f"basis index {k} out of range for dimension {family.B.dim}")
    field = family.field
    data = field.tensordot(family.B.lam[k], family.A.unit, axes=0).transpose(1, 0, 2)
    return AlgMatrix(family.A, data.copy())


def faithful_rep(c: TwistingCandidate) -> FaithfulRep:
    """The faithful representation of a verified candidate, on all basis vectors."""
    family = _require_verified(c, "faithful_rep")
    product = build_twisted_product(c)
    images = _faithful_tensor(family)
    mats = tuple(AlgMatrix(family.A, images[x].copy()) for x in range(images.shape[0]))
    return FaithfulRep(product, mats)


def verify_faithful(c: TwistingCandidate) -> VerificationReport:
    """Morphism, unit and injectivity checks for the faithful representation.

    Tags: ``faithful.mul`` (all product-basis pairs), ``faithful.unit`` and
    ``faithful.kernel`` (the underlying linear map must be injective).
    """
    family = _require_verified(c, "verify_faithful")
    field = family.field
    lamA, unitA = family.A.lam, family.A.unit
    n, d = family.B.dim, family.A.dim
    nd = n * d
    lam, unit = _product_tensor(family)
    images = _faithful_tensor(family)

    failures = []

    # multiplicativity on all product-basis pairs; witness axes (x, y, i, l, w)
    t6 = field.tensordot(images, images, axes=([2], [1]))          # (x, i, u, y, l, v)
    prod = field.tensordot(t6, lamA, axes=([2, 5], [0, 1]))        # (x, i, y, l, w)
    prod = prod.transpose(0, 2, 1, 3, 4)
    expected = field.tensordot(lam, images, axes=([2], [0]))       # (x, y, i, l, w)
    failures.extend(family_failures(field, "faithful.mul", prod, expected))

    # image of the product unit is the identity matrix
    unit_img = field.tensordot(unit, images, axes=([0], [0]))
    eye = field.reduce(field.identity(n)[:, :, None] * unitA[None, None, :])
    failures.extend(family_failures(field, "faithful.unit", unit_img, eye))

    # injectivity of the underlying linear map (n*d -> n*n*d)
    flat = KMatrix(field, images.reshape(nd, n * n * d).T.copy())
    kernel = kernel_basis(flat)
    if kernel:
        failures.append(
            Failure(
                condition="faithful.kernel",
                witness=(),
                left=field.format_array(kernel[0]),
                right=None,
                count=len(kernel),
            )
        )

    return VerificationReport.from_failures(failures)
