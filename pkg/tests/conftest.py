import warnings

import pytest

from lymanfield.atom import make_atom_params
from lymanfield.decay import DecaySpectrum


@pytest.fixture(scope="session")
def atom0():
    return make_atom_params(0)


@pytest.fixture(scope="session")
def hydrogen(atom0):
    return DecaySpectrum.hydrogen(atom0)


@pytest.fixture(scope="session")
def synth():
    """Synthetic preset of the far-field studies: A = 0.05, B = 0.3."""
    return DecaySpectrum.synthetic(0.05, 0.3)


@pytest.fixture(scope="session")
def synth_mild():
    """Weak-coupling synthetic set (Gamma_a/Omega_a = 0.01)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return DecaySpectrum.synthetic(0.0015, 0.3)
