from .client import IonCavityClient
from .errors import (
    CutoffTooSmall,
    DegenerateFit,
    DimensionMismatch,
    GridMiss,
    InvalidParams,
    InvalidState,
    IoError,
    IonCavityError,
    NoConvergence,
    NonHermitianInput,
    ParseError,
    QuadratureNoConvergence,
    ScenarioError,
    UnknownFigure,
    ValidationError,
)
from .linalg import HermitianEigenSystem, hermitian_eigensystem, hermitian_eigvals, hermitian_expm
from .model import (
    AnalyticEigenSystem,
    ModelBasis,
    SystemParams,
    analytic_eigensystem,
    build_h_full,
    build_h_is,
    derived_params,
)
from .bath import BathSpec, DephasingProfile, beta_from_temperature, build_profile, c_of_t, gamma_of_t
from .evolution import (
    DensityOperator,
    InitialState,
    dephased_limit,
    evolve_dephasing,
    purity,
    rho_closed_form,
    unitary_evolve,
)
from .observables import (
    GhzTarget,
    fidelity,
    ghz_generation_time,
    ghz_probability,
    ghz_probability_closed_form,
    inversion_closed_form,
    population_inversion,
)
from .entanglement import (
    TripartiteIndex,
    embed_tripartite,
    linear_entropy,
    negativity,
    partial_transpose,
    reduced_density,
)
from .leakage import (
    FockSpace,
    fit_power_law,
    full_space_evolve,
    leakage_probability,
    leakage_series,
    model_space_fidelity,
)
from .settings import ScenarioConfig, figure_preset, parse_config, to_scaled_units
from .pipeline import ObservableSeries, run_scenario
from .render import emit_csv, emit_svg

__all__ = [
    'IonCavityClient',
    'IonCavityError',
    'NonHermitianInput',
    'NoConvergence',
    'InvalidParams',
    'CutoffTooSmall',
    'QuadratureNoConvergence',
    'GridMiss',
    'InvalidState',
    'DimensionMismatch',
    'DegenerateFit',
    'ParseError',
    'ValidationError',
    'UnknownFigure',
    'IoError',
    'ScenarioError',
    'HermitianEigenSystem',
    'hermitian_eigensystem',
    'hermitian_eigvals',
    'hermitian_expm',
    'SystemParams',
    'ModelBasis',
    'AnalyticEigenSystem',
    'derived_params',
    'build_h_is',
    'analytic_eigensystem',
    'build_h_full',
    'BathSpec',
    'DephasingProfile',
    'beta_from_temperature',
    'gamma_of_t',
    'c_of_t',
    'build_profile',
    'DensityOperator',
    'InitialState',
    'evolve_dephasing',
    'rho_closed_form',
    'unitary_evolve',
    'dephased_limit',
    'purity',
    'GhzTarget',
    'ghz_probability',
    'ghz_probability_closed_form',
    'population_inversion',
    'inversion_closed_form',
    'ghz_generation_time',
    'fidelity',
    'TripartiteIndex',
    'embed_tripartite',
    'partial_transpose',
    'negativity',
    'reduced_density',
    'linear_entropy',
    'FockSpace',
    'full_space_evolve',
    'leakage_probability',
    'leakage_series',
    'model_space_fidelity',
    'fit_power_law',
    'ScenarioConfig',
    'parse_config',
    'figure_preset',
    'to_scaled_units',
    'ObservableSeries',
    'run_scenario',
    'emit_csv',
    'emit_svg',
]
