from typing import Dict, Optional, Sequence

import numpy as np

from .bath import BathSpec, DephasingProfile, build_profile
from .entanglement import embed_tripartite, linear_entropy, negativity, reduced_density
from .evolution import DensityOperator, InitialState, evolve_dephasing, rho_closed_form
from .leakage import FockSpace, leakage_series
from .model import AnalyticEigenSystem, ModelBasis, SystemParams, analytic_eigensystem, build_h_is
from .observables import GhzTarget, ghz_probability, population_inversion
from .pipeline import ObservableSeries, run_scenario
from .settings import ScenarioConfig, to_scaled_units


class IonCavityClient:
    """
    Main entry point for the ion-cavity dephasing simulator.
    Provides unified, cached access to profiles, states and observables.
    """

    def __init__(self, params: SystemParams, bath: BathSpec, times: Sequence[float], interpolate: bool = False, fock_space: FockSpace = None):
        """
        Initialize the client for one set of system and bath constants.

        Args:
            params: Derived system parameters
            bath: Bath specification; its kappa is ignored, kappas are chosen per call
            times: Strictly ascending time grid in the same units as params
            interpolate: Allow off-grid times through PCHIP profile interpolation
            fock_space: Truncation used for leakage (defaults to (6, 6))
        """
        self.params = params
        self.bath = bath
        self.times = np.asarray(times, dtype=float)
        self.interpolate = interpolate
        self.fock_space = fock_space or FockSpace()
        self.config: Optional[ScenarioConfig] = None

        # Built on first use
        self._eigensystem = None
        self._hamiltonian = None
        self._initial_state = None
        self._profiles: Dict[float, DephasingProfile] = {}

    @classmethod
    def from_config(cls, cfg: Optional[ScenarioConfig] = None) -> "IonCavityClient":
        """
        Build a client in a_11 = 1 units from a scenario (defaults when omitted).

        Example:
            >>> client = IonCavityClient.from_config()
            >>> client.ghz_probability(0.0, np.pi / 4)  # 1.0 at the GHZ point
        """
        cfg = cfg or ScenarioConfig()
        scaled = to_scaled_units(cfg)
        client = cls(scaled.params, scaled.bath, scaled.times, cfg.interpolate, FockSpace(*cfg.fock_cutoffs))
        client.config = cfg
        return client

    @property
    def eigensystem(self) -> AnalyticEigenSystem:
        """
        Get the analytic eigensystem of the model-space Hamiltonian.

        Returns:
            AnalyticEigenSystem instance
        """
        if self._eigensystem is None:
            self._eigensystem = analytic_eigensystem(self.params)
        return self._eigensystem

    @property
    def hamiltonian(self) -> np.ndarray:
        """
        Get the 4x4 model-space interaction Hamiltonian.

        Returns:
            complex128 array
        """
        if self._hamiltonian is None:
            self._hamiltonian = build_h_is(self.params)
        return self._hamiltonian

    @property
    def initial_state(self) -> DensityOperator:
        """
        Get the initial state |g, m-1, n-1>.

        Returns:
            DensityOperator in the model basis
        """
        if self._initial_state is None:
            self._initial_state = InitialState().density(ModelBasis(self.params.m, self.params.n))
        return self._initial_state

    def profile(self, kappa: float) -> DephasingProfile:
        """Dephasing profile on the client grid, built once per kappa."""
        kappa = float(kappa)
        if kappa not in self._profiles:
            self._profiles[kappa] = build_profile(self.bath.with_kappa(kappa), self.params, self.times, self.interpolate)
        return self._profiles[kappa]

    def state(self, kappa: float, t: float, initial: Optional[DensityOperator] = None) -> DensityOperator:
        """Decohered model-space state at time t."""
        rho0 = initial if initial is not None else self.initial_state
        return evolve_dephasing(rho0, self.eigensystem, self.profile(kappa), t)

    def closed_form_state(self, kappa: float, t: float) -> DensityOperator:
        return rho_closed_form(self.params, self.profile(kappa), t)

    def ghz_probability(self, kappa: float, t: float, target: GhzTarget = GhzTarget()) -> float:
        return ghz_probability(self.state(kappa, t), target)

    def inversion(self, kappa: float, t: float) -> float:
        return population_inversion(self.state(kappa, t))

    def negativity(self, kappa: float, t: float, cut: str = "A") -> float:
        return negativity(embed_tripartite(self.state(kappa, t)), subsystem=cut)

    def linear_entropy(self, kappa: float, t: float, cut: str = "A") -> float:
        return linear_entropy(reduced_density(embed_tripartite(self.state(kappa, t)), keep=cut))

    def leakage(self, times: Optional[Sequence[float]] = None) -> np.ndarray:
        """Model-space leakage on the given times (the client grid by default)."""
        return leakage_series(self.params, self.fock_space, self.times if times is None else times)

    def run(self, cfg: Optional[ScenarioConfig] = None) -> ObservableSeries:
        """Run a full scenario; defaults to the one this client was built from."""
        cfg = cfg or self.config or ScenarioConfig()
        return run_scenario(cfg)
