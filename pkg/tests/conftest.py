import numpy as np
import pytest

from qcovdet import DensityMatrix

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@pytest.fixture
def pauli():
    return SIGMA_X, SIGMA_Y, SIGMA_Z


@pytest.fixture
def qubit_state():
    """D = diag(0.7, 0.3), the workhorse desk example."""
    return DensityMatrix(np.diag([0.7, 0.3]))


@pytest.fixture
def qutrit_state():
    return DensityMatrix(np.diag([0.5, 0.3, 0.2]))
