import numpy as np
import pytest

from bfw import (
    OperatorField,
    ProductDual,
    SemidirectDual,
    So3Dual,
    Su2Dual,
    TorusDual,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def su2():
    return Su2Dual()


@pytest.fixture
def t1():
    return TorusDual(1)


@pytest.fixture
def t2():
    return TorusDual(2)


@pytest.fixture
def sd():
    return SemidirectDual()


@pytest.fixture
def so3():
    return So3Dual()


@pytest.fixture
def prod_dual():
    return ProductDual(Su2Dual(), TorusDual(1))


def random_field(dual, radius, rng, n_terms=2, scale=1.0):
    """Random finitely supported field with support inside the given ball."""
    labels = list(dual.ball(radius))
    idx = rng.choice(len(labels), size=min(n_terms, len(labels)), replace=False)
    terms = {}
    for i in idx:
        a = labels[int(i)]
        d = dual.dim(a)
        terms[a] = scale * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    return OperatorField.from_terms(dual, terms)


def field_max_abs(f):
    return max((float(np.max(np.abs(M))) for M in f.coeffs.values()), default=0.0)


def fields_close(x, y, tol=1e-10):
    diff = x - y
    return field_max_abs(diff) <= tol
