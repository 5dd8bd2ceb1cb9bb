import numpy as np
import pytest

from plateflutter import (CoupledSystem, ModalCoefficients, ModeBasis,
                          compute_galerkin_tensor)

GAMMA_TNB = 5.17e-4


@pytest.fixture(scope="session")
def basis():
    return ModeBasis.build()


@pytest.fixture(scope="session")
def coeffs(basis):
    return ModalCoefficients.from_basis(basis, GAMMA_TNB)


@pytest.fixture(scope="session")
def coeffs_by_gamma(basis):
    return {g: ModalCoefficients.from_basis(basis, g) for g in (1e-3, GAMMA_TNB, 1e-4)}


@pytest.fixture(scope="session")
def tensor(basis):
    return compute_galerkin_tensor(basis)


@pytest.fixture(scope="session")
def system(basis, tensor):
    return CoupledSystem.build(basis, GAMMA_TNB, tensor=tensor)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20140214)
