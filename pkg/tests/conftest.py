import numpy as np
import pytest

from diamondqc import ChainParams, validation_lattice


@pytest.fixture(scope="session")
def lattice():
    return validation_lattice(200)


@pytest.fixture(scope="session")
def maximally_mixed():
    return np.eye(4) / 4.0


@pytest.fixture(scope="session")
def bell_state():
    rho = np.zeros((4, 4))
    rho[0, 0] = rho[0, 3] = rho[3, 0] = rho[3, 3] = 0.5
    return rho


@pytest.fixture(scope="session")
def classical_correlated():
    return np.diag([0.5, 0.0, 0.0, 0.5])


def point(j=0.0, j2=1.0, jm=0.0, h=0.0, t=1.0):
    return ChainParams(j=j, j2=j2, jm=jm, h=h, t=t)
