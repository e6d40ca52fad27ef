import numpy as np
import pytest
from hypothesis import strategies as st

from leigq import QMatrix, Quaternion, QVector

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)

quaternions = st.builds(Quaternion, finite, finite, finite, finite)

nonzero_quaternions = quaternions.filter(lambda q: abs(q) > 1e-3)


def rand_quaternion(rng) -> Quaternion:
    return Quaternion.from_array(rng.standard_normal(4))


def rand_qvector(rng, n: int) -> QVector:
    return QVector(rng.standard_normal((n, 4)))


def rand_qmatrix(rng, n: int) -> QMatrix:
    return QMatrix(rng.standard_normal((n, n, 4)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
