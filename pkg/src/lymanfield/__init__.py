"""lymanfield: the single-photon state spontaneously emitted on the hydrogen
Lyman-alpha transition — decay amplitudes, position-space electromagnetic
energy density, and its far-field algebraic tail."""

__version__ = "0.1.0"

from .atom import (  # noqa: F401
    AtomParams,
    DimensionlessParams,
    from_dimensionless,
    ground_wavefunction,
    excited_wavefunction,
    make_atom_params,
    to_dimensionless,
)
from .coupling import CouplingFunction, coupling_overlap_oracle  # noqa: F401
from .decay import (  # noqa: F401
    DecaySpectrum,
    c0_exact,
    c0_weak,
    gamma_of_omega,
    lamb_shift_delta,
    norm_check,
    photon_amplitude_D,
    spectral_density_g,
)
from .farfield import (  # noqa: F401
    F1_asymptotic,
    R_endpoint_data,
    T_func,
    energy_density_asymptotic,
    fit_power_law,
    gamma_angular,
)
from .field import (  # noqa: F401
    FieldPoint,
    FieldScan,
    FLTriple,
    angular_scan,
    compute_FL,
    d_k_amplitude,
    energy_density,
    helicity_field,
    radial_scan,
)
from .harmonics import (  # noqa: F401
    AngularPoint,
    helicity_mode,
    spherical_bessel,
    vector_spherical_harmonic,
)
from .oscillatory import (  # noqa: F401
    EndpointData,
    OscillatoryResult,
    fourier_integral,
    ibp_asymptotic,
)
