import numpy as np
import pytest

from common.operators import build_ladder_operators
from hamiltonians.builders import SIGMA_MINUS, SIGMA_PLUS, build_generic_partition
from hamiltonians.models import ModelSpec, PartitionFamily
from utils.enums import ModelKind


@pytest.fixture
def rng():
    return np.random.default_rng(20081)


def linear_coupling_family(g0=0.1, n_fock=2):
    """Two-level model with V = g0 xi (a sigma_+ + h.c.): |r_ab| grows with xi.

    Exact solution: xi_S = 1 / (1 + 4 g0^2), xi_D = 1.
    """
    def perturbation(size, xi):
        annihilation, creation = build_ladder_operators(size)
        return g0 * xi * (np.kron(annihilation, SIGMA_PLUS) + np.kron(creation, SIGMA_MINUS))

    return PartitionFamily(
        build=lambda xi: build_generic_partition(1.0, xi, perturbation, n_fock),
        xi_0=1.0,
        E_0=0.5,
        window=(0.8, 1.2),
        name="linear_coupling",
    )


@pytest.fixture
def toy_family():
    return linear_coupling_family()


@pytest.fixture
def ss_spec():
    return ModelSpec(kind=ModelKind.SS_GATE, eta=0.3, rabi=1.0, n_fock=25)


@pytest.fixture
def cz_spec():
    return ModelSpec(kind=ModelKind.CZ_GATE, eta=0.1, rabi=0.3, detuning=1.0, n_fock=20)
