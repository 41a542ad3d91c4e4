"""Constructors and acceptance predicates for the stock twisting families.

Each family comes with a constructor (which always builds; verification is a
separate call) and the family's own acceptance conditions, exposed as a
tagged report so the equivalence with the generic checkers can be swept
family by family.  The families:

* duplicates           carrier K[X]/(X^2 - X), data a pair (f, delta);
* quantum duplicates   carrier K[X]/(X^2 - alpha X + beta), same data;
* K^n twists           carrier K^n, data an n x n grid of endomorphisms;
* truncated twists     carrier K[Y]/(Y^n), grid indexed by exponents 0..n-1.

K^n candidates also yield a quiver (one vertex per basis idempotent, an arrow
per nonzero grid entry) carrying the grid maps as a representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    FiniteDimAlgebra,
    duplicate_algebra,
    kn_algebra,
    quadratic_algebra,
    truncated_poly_algebra,
)
from .errors import DimensionMismatchError
from .fields import Field
from .linalg import KMatrix
from .report import VerificationReport, family_failures
from .twisting import GammaFamily, TwistingCandidate


def _endo_array(field: Field, d: int, value) -> np.ndarray:
    arr = value.data if isinstance(value, KMatrix) else field.asarray(value)
    if arr.shape != (d, d):
        raise DimensionMismatchError(f"endomorphism must be {d} x {d}, got {arr.shape}")
    return arr


def _grid_array(field: Field, n: int, d: int, grid) -> np.ndarray:
    if isinstance(grid, np.ndarray) and grid.shape == (n, n, d, d):
        return grid
    data = field.zeros((n, n, d, d))
    for i in range(n):
        for j in range(n):
            data[i, j] = _endo_array(field, d, grid[i][j])
    return data


# -- shared condition families --------------------------------------------------


def _mult_failures(field, lam, tag, fm):
    """f(a_p a_q) = f(a_p) f(a_q) on basis pairs; witness (p, q, w)."""
    left = field.tensordot(fm, lam, axes=([1], [2])).transpose(1, 2, 0)
    t = field.tensordot(fm, lam, axes=([0], [0]))                   # (p, v, w)
    right = field.tensordot(fm, t, axes=([0], [1])).transpose(1, 0, 2)
    yield from family_failures(field, tag, left, right)


def _derivation_failures(field, lam, tag, dm, fm):
    """delta(a_p a_q) = a_p delta(a_q) + delta(a_p) f(a_q); witness (p, q, w)."""
    left = field.tensordot(dm, lam, axes=([1], [2])).transpose(1, 2, 0)
    term1 = field.tensordot(dm, lam, axes=([0], [1])).transpose(1, 0, 2)
    t = field.tensordot(dm, lam, axes=([0], [0]))                   # (p, v, w)
    term2 = field.tensordot(fm, t, axes=([0], [1])).transpose(1, 0, 2)
    yield from family_failures(field, tag, left, field.add(term1, term2))


def _grid_mult_failures(field, lam, tag, grid):
    """Twisted multiplicativity of a full grid on basis pairs:
    grid[j][i](a b) = sum_p grid[p][i](a) grid[j][p](b); witness (i, j, p, q, w)."""
    left = field.tensordot(grid, lam, axes=([3], [2])).transpose(0, 1, 3, 4, 2)
    t1 = field.tensordot(grid, lam, axes=([2], [0]))                # (p', i, x, v, w)
    right = field.tensordot(t1, grid, axes=([0, 3], [1, 2]))        # (i, x, w, j, y)
    yield from family_failures(field, tag, left, right.transpose(3, 0, 1, 4, 2))


def _grid_unit_failures(field, unitA, tag, grid):
    """grid[i][j](1) = delta_ij 1; witness (i, j, r)."""
    n = grid.shape[0]
    left = field.tensordot(grid, unitA, axes=([3], [0]))
    right = field.reduce(field.identity(n)[:, :, None] * unitA[None, None, :])
    yield from family_failures(field, tag, left, right)


# -- duplicates (carrier K[X]/(X^2 - X)) -----------------------------------------


def make_ncd(A: FiniteDimAlgebra, f, delta) -> TwistingCandidate:
    """Duplicate candidate: identity over the unit basis vector, (delta, f)
    over X.  Verification is a separate call."""
    field = A.field
    d = A.dim
    carrier = duplicate_algebra(field)
    grid = field.zeros((2, 2, d, d))
    grid[0, 0] = field.identity(d)
    grid[1, 0] = _endo_array(field, d, delta)
    grid[1, 1] = _endo_array(field, d, f)
    return TwistingCandidate(GammaFamily(A, carrier, grid))


def ncd_conditions(A: FiniteDimAlgebra, f, delta) -> VerificationReport:
    """The seven duplicate conditions on (f, delta), individually tagged.

    ``ncd.1``  delta o delta = delta
    ``ncd.2``  f o delta + delta o f + f o f = f
    ``ncd.3``  (delta + f)^2 = delta + f
    ``ncd.4``  delta(1) = 0
    ``ncd.5``  f(1) = 1
    ``ncd.6``  delta(ab) = a delta(b) + delta(a) f(b)
    ``ncd.7``  f(ab) = f(a) f(b)

    1 and 2 imply 3, and 5 and 6 imply 4, so {1, 2, 5, 6, 7} generate.
    """
    field = A.field
    d = A.dim
    fm = _endo_array(field, d, f)
    dm = _endo_array(field, d, delta)
    lam, unit = A.lam, A.unit

    failures = []
    failures.extend(family_failures(field, "ncd.1", field.matmul(dm, dm), dm))
    lhs2 = field.reduce(field.matmul(fm, dm) + field.matmul(dm, fm) + field.matmul(fm, fm))
    failures.extend(family_failures(field, "ncd.2", lhs2, fm))
    s = field.add(dm, fm)
    failures.extend(family_failures(field, "ncd.3", field.matmul(s, s), s))
    failures.extend(family_failures(field, "ncd.4", field.matmul(dm, unit), field.zeros((d,))))
    failures.extend(family_failures(field, "ncd.5", field.matmul(fm, unit), unit))
    failures.extend(_derivation_failures(field, lam, "ncd.6", dm, fm))
    failures.extend(_mult_failures(field, lam, "ncd.7", fm))
    return VerificationReport.from_failures(failures)


def ncd_predicate(A: FiniteDimAlgebra, f, delta) -> bool:
    """f a unital multiplicative endomorphism, delta a twisted derivation
    along (id, f) with delta o delta = delta and f = f^2 + delta o f + f o delta."""
    return ncd_conditions(A, f, delta).ok


# -- quantum duplicates (carrier K[X]/(X^2 - alpha X + beta)) ---------------------


def make_quantum_duplicate(A: FiniteDimAlgebra, alpha, beta, f, delta) -> TwistingCandidate:
    field = A.field
    d = A.dim
    carrier = quadratic_algebra(field, alpha, beta)
    grid = field.zeros((2, 2, d, d))
    grid[0, 0] = field.identity(d)
    grid[1, 0] = _endo_array(field, d, delta)
    grid[1, 1] = _endo_array(field, d, f)
    return TwistingCandidate(GammaFamily(A, carrier, grid))


def qdup_conditions(A: FiniteDimAlgebra, alpha, beta, f, delta) -> VerificationReport:
    """Quantum-duplicate conditions on (f, delta) for the polynomial
    X^2 - alpha X + beta.

    ``qdup.P``          delta^2 - alpha delta + beta id = beta f^2
    ``qdup.swap``       f o delta + delta o f = alpha (f - f^2)
    ``qdup.unital``     f(1) = 1
    ``qdup.derivation`` delta(ab) = a delta(b) + delta(a) f(b)
    ``qdup.mult``       f(ab) = f(a) f(b)
    """
    field = A.field
    d = A.dim
    a = field.scalar(alpha)
    b = field.scalar(beta)
    fm = _endo_array(field, d, f)
    dm = _endo_array(field, d, delta)
    lam, unit = A.lam, A.unit
    eye = field.identity(d)
    ff = field.matmul(fm, fm)

    failures = []
    lhs_p = field.reduce(field.matmul(dm, dm) - a * dm + b * eye)
    failures.extend(family_failures(field, "qdup.P", lhs_p, field.reduce(b * ff)))
    lhs_s = field.add(field.matmul(fm, dm), field.matmul(dm, fm))
    failures.extend(family_failures(field, "qdup.swap", lhs_s, field.reduce(a * (fm - ff))))
    failures.extend(family_failures(field, "qdup.unital", field.matmul(fm, unit), unit))
    failures.extend(_derivation_failures(field, lam, "qdup.derivation", dm, fm))
    failures.extend(_mult_failures(field, lam, "qdup.mult", fm))
    return VerificationReport.from_failures(failures)


def qdup_predicate(A: FiniteDimAlgebra, alpha, beta, f, delta) -> bool:
    return qdup_conditions(A, alpha, beta, f, delta).ok


# -- K^n twists -------------------------------------------------------------------


def make_kn(A: FiniteDimAlgebra, n: int, gamma_grid) -> TwistingCandidate:
    field = A.field
    carrier = kn_algebra(field, n)
    grid = _grid_array(field, n, A.dim, gamma_grid)
    return TwistingCandidate(GammaFamily(A, carrier, grid))


def kn_conditions(A: FiniteDimAlgebra, n: int, gamma_grid) -> VerificationReport:
    """The K^n family conditions on the grid.

    ``kn.1``  grid[i][p] o grid[j][p] = delta_ij grid[i][p]; witness (i, j, p, ...)
    ``kn.2``  sum_j grid[j][i] = id for every i; witness (i, ...)
    ``kn.3``  twisted multiplicativity on basis pairs
    ``kn.4``  grid[i][j](1) = delta_ij 1
    """
    field = A.field
    d = A.dim
    grid = _grid_array(field, n, d, gamma_grid)
    lam, unit = A.lam, A.unit

    failures = []
    comps = field.tensordot(grid, grid, axes=([3], [2]))            # (i, p, r, j, p', c)
    comps = comps.transpose(0, 3, 1, 4, 2, 5)                       # (i, j, p, p', r, c)
    diag = np.stack([comps[:, :, p, p] for p in range(n)], axis=2)  # (i, j, p, r, c)
    eye_n = field.identity(n)
    expected = field.reduce(eye_n[:, :, None, None, None] * grid[:, None])
    failures.extend(family_failures(field, "kn.1", diag, expected))

    row_sums = field.reduce(grid.sum(axis=0))                       # (i, r, c)
    eye_d = field.identity(d)
    ids = field.zeros(row_sums.shape)
    for i in range(n):
        ids[i] = eye_d
    failures.extend(family_failures(field, "kn.2", row_sums, ids))

    failures.extend(_grid_mult_failures(field, lam, "kn.3", grid))
    failures.extend(_grid_unit_failures(field, unit, "kn.4", grid))
    return VerificationReport.from_failures(failures)


def kn_admissible(candidate: TwistingCandidate | GammaFamily) -> VerificationReport:
    """Family conditions evaluated on an existing K^n candidate."""
    family = candidate.family if isinstance(candidate, TwistingCandidate) else candidate
    _require_kn_carrier(family)
    return kn_conditions(family.A, family.B.dim, family.gamma)


# -- quivers of K^n twists ---------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    """Vertices v_1..v_n; an arrow (source j, target i) per nonzero grid map."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class QuiverRep:
    """All vertex spaces equal the twisted algebra; arrow (j, i) carries grid[j][i]."""

    quiver: Quiver
    maps: dict[tuple[int, int], KMatrix]


def _require_kn_carrier(family: GammaFamily) -> None:
    expected = kn_algebra(family.field, family.B.dim)
    if family.B != expected:
        raise DimensionMismatchError("carrier is not K^n in the idempotent basis")


def quiver_of(candidate: TwistingCandidate | GammaFamily) -> tuple[Quiver, QuiverRep]:
    """Quiver with an arrow j -> i exactly at each nonzero grid entry."""
    family = candidate.family if isinstance(candidate, TwistingCandidate) else candidate
    _require_kn_carrier(family)
    field = family.field
    n = family.B.dim
    arrows = []
    maps = {}
    for j in range(n):
        for i in range(n):
            if not field.is_zero(family.gamma[j, i]):
                arrows.append((j, i))
                maps[(j, i)] = KMatrix(field, family.gamma[j, i])
    quiver = Quiver(tuple(f"v{i + 1}" for i in range(n)), tuple(arrows))
    return quiver, QuiverRep(quiver, maps)


# -- truncated polynomial twists ----------------------------------------------------


def make_truncated(A: FiniteDimAlgebra, n: int, gamma_grid) -> TwistingCandidate:
    field = A.field
    carrier = truncated_poly_algebra(field, n)
    grid = _grid_array(field, n, A.dim, gamma_grid)
    return TwistingCandidate(GammaFamily(A, carrier, grid))


def truncated_conditions(A: FiniteDimAlgebra, n: int, gamma_grid) -> VerificationReport:
    """The truncated-carrier conditions on a grid indexed by exponents 0..n-1.

    ``trunc.1``  grid[0][j] = delta_0j id
    ``trunc.2``  grid[r][j] = sum_{l<=j} grid[r-i][j-l] o grid[i][l]
                 for 1 < r < n, 0 < i < r, j < n; witness (r, i, j, ...)
    ``trunc.3``  sum_{l<=j} grid[n-i][j-l] o grid[i][l] = 0
                 for 0 < i < n, j < n; witness (i, j, ...)
    ``trunc.4``  twisted multiplicativity on basis pairs
    ``trunc.5``  grid[i][j](1) = delta_ij 1
    """
    field = A.field
    d = A.dim
    grid = _grid_array(field, n, d, gamma_grid)
    lam, unit = A.lam, A.unit

    failures = []
    eye_d = field.identity(d)
    first_expected = field.zeros((n, d, d))
    first_expected[0] = eye_d
    failures.extend(family_failures(field, "trunc.1", grid[0].copy(), first_expected))

    def convolution(r_hi: int, i_lo: int, j: int) -> np.ndarray:
        acc = field.zeros((d, d))
        for l in range(j + 1):
            acc = field.add(acc, field.matmul(grid[r_hi, j - l], grid[i_lo, l]))
        return acc

    if n > 2:
        left2 = []
        right2 = []
        for r in range(2, n):
            for i in range(1, r):
                for j in range(n):
                    left2.append(grid[r, j])
                    right2.append(convolution(r - i, i, j))
        failures.extend(
            family_failures(field, "trunc.2", np.stack(left2), np.stack(right2))
        )

    left3 = []
    for i in range(1, n):
        for j in range(n):
            left3.append(convolution(n - i, i, j))
    stacked = np.stack(left3)
    failures.extend(family_failures(field, "trunc.3", stacked, field.zeros(stacked.shape)))

    failures.extend(_grid_mult_failures(field, lam, "trunc.4", grid))
    failures.extend(_grid_unit_failures(field, unit, "trunc.5", grid))
    return VerificationReport.from_failures(failures)


def truncated_from_first_row(A: FiniteDimAlgebra, n: int, first_row) -> TwistingCandidate:
    """Grid generated from the exponent-1 row: row 0 is (id, 0, ..., 0) and
    each higher row is derived by the convolution rule with step 1."""
    field = A.field
    d = A.dim
    grid = field.zeros((n, n, d, d))
    grid[0, 0] = field.identity(d)
    for j in range(n):
        grid[1, j] = _endo_array(field, d, first_row[j])
    for r in range(2, n):
        for j in range(n):
            acc = field.zeros((d, d))
            for l in range(j + 1):
                acc = field.add(acc, field.matmul(grid[r - 1, j - l], grid[1, l]))
            grid[r, j] = acc
    return make_truncated(A, n, grid)
