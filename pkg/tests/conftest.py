import numpy as np
import pytest

from twistkit import (
    GF,
    QQ,
    GammaFamily,
    KMatrix,
    certify,
    duplicate_algebra,
    kn_algebra,
    make_ncd,
    quadratic_algebra,
    truncated_poly_algebra,
)

F2 = GF(2)
F3 = GF(3)
F5 = GF(5)


@pytest.fixture(scope="session")
def f2():
    return F2


@pytest.fixture(scope="session")
def f3():
    return F3


@pytest.fixture(scope="session")
def f5():
    return F5


@pytest.fixture(scope="session")
def k2_q():
    return kn_algebra(QQ, 2)


@pytest.fixture(scope="session")
def k2_f2():
    return kn_algebra(F2, 2)


@pytest.fixture(scope="session")
def dup_q():
    return duplicate_algebra(QQ)


@pytest.fixture(scope="session")
def trunc3_f2():
    return truncated_poly_algebra(F2, 3)


@pytest.fixture(scope="session")
def flip_22_f2(k2_f2):
    return GammaFamily.flip(k2_f2, k2_f2)


@pytest.fixture(scope="session")
def ncd_idempotent_q(k2_q):
    """Duplicate candidate with f(x, y) = (x, x) and no derivation part."""
    return certify(make_ncd(k2_q, [[1, 0], [1, 0]], [[0, 0], [0, 0]]))


@pytest.fixture(scope="session")
def generic_markers_f5():
    """Distinguishable marker endomorphisms over F5 for display-shape tests."""
    f = KMatrix.from_rows(F5, [[0, 1], [1, 0]])
    delta = KMatrix.from_rows(F5, [[1, 2], [3, 4]])
    return f, delta


