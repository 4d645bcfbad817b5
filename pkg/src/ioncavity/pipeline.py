"""
Scenario runner: kappa sweep -> dephasing profiles -> states -> observables.
"""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bath import build_profile
from .entanglement import embed_tripartite, linear_entropy, negativity, reduced_density
from .errors import IonCavityError, ScenarioError
from .evolution import InitialState, evolve_dephasing
from .leakage import FockSpace, leakage_series
from .model import ModelBasis, analytic_eigensystem
from .observables import GhzTarget, ghz_probability, population_inversion
from .settings import ScenarioConfig, to_scaled_units


@dataclass(frozen=True, eq=False)
class ObservableSeries:
    """
    Observable time series for every kappa of a scenario.

    Attributes:
        t_deg: Grid of T = a_11 t in degrees
        kappas: Coupling strengths, one row per kappa in each column
        values: Column name -> array of shape (len(kappas), len(t_deg))
        title: Optional plot title
    """
    t_deg: np.ndarray
    kappas: Tuple[float, ...]
    values: Dict[str, np.ndarray]
    title: Optional[str] = None

    def __post_init__(self):
        shape = (len(self.kappas), len(self.t_deg))
        if 0 in shape:
            raise ValueError("An observable series needs at least one kappa and one time")
        for name, column in self.values.items():
            if column.shape != shape:
                raise ValueError(f"Column '{name}' has shape {column.shape}, expected {shape}")
            if not np.all(np.isfinite(column)):
                raise ValueError(f"Column '{name}' contains non-finite values")

    @property
    def columns(self) -> List[str]:
        return list(self.values)

    def column(self, name: str, kappa: float) -> np.ndarray:
        """Series of one observable at one kappa."""
        if name not in self.values:
            raise KeyError(f"No column '{name}'; available: {', '.join(self.values)}")
        try:
            row = self.kappas.index(kappa)
        except ValueError:
            raise KeyError(f"kappa={kappa:g} is not part of this series") from None
        return self.values[name][row]


def column_names(cfg: ScenarioConfig) -> List[str]:
    """Output columns in canonical order; per-cut observables get a _A/_B/_C suffix."""
    names = []
    for output in cfg.outputs:
        if output in ("negativity", "linear_entropy"):
            names.extend(f"{output}_{cut}" for cut in cfg.cuts)
        else:
            names.append(output)
    return names


def _observe(rho, names: Sequence[str], target: GhzTarget) -> List[float]:
    needs_tripartite = any(name.startswith(("negativity", "linear_entropy")) for name in names)
    rho8 = embed_tripartite(rho) if needs_tripartite else None
    row = []
    for name in names:
        if name == "pghz":
            row.append(ghz_probability(rho, target))
        elif name == "inversion":
            row.append(population_inversion(rho))
        elif name.startswith("negativity_"):
            row.append(negativity(rho8, subsystem=name[-1]))
        elif name.startswith("linear_entropy_"):
            row.append(linear_entropy(reduced_density(rho8, keep=name[-1])))
    return row


def run_scenario(cfg: ScenarioConfig, progress: Optional[Callable[[float], None]] = None) -> ObservableSeries:
    """
    Compute every requested observable on the scenario grid for each kappa.

    The initial state is |g,0,0> and the GHZ target is GHZ-. Leakage does not
    involve the bath, so its column is the same for every kappa.

    Args:
        cfg: Validated scenario
        progress: Called with each kappa once its row is complete

    Returns:
        ObservableSeries over cfg.t_deg()

    Raises:
        ScenarioError: Wrapping any library error, with kappa and T attached

    Example:
        >>> series = run_scenario(figure_preset(1))
        >>> series.column("pghz", 0.0)[180]  # T = 45 degrees, 1.0
    """
    scaled = to_scaled_units(cfg)
    params, times = scaled.params, scaled.times
    t_deg = cfg.t_deg()
    names = column_names(cfg)
    per_state = [name for name in names if name != "leakage"]
    target = GhzTarget.minus()

    eig = analytic_eigensystem(params)
    rho0 = InitialState().density(ModelBasis(params.m, params.n))

    values = {name: np.zeros((len(cfg.kappas), len(times))) for name in names}
    if "leakage" in values:
        try:
            leak = leakage_series(params, FockSpace(*cfg.fock_cutoffs), times)
        except IonCavityError as exc:
            raise ScenarioError(f"Leakage evaluation failed: {exc}") from exc
        values["leakage"][:] = leak

    for i, kappa in enumerate(cfg.kappas):
        if per_state:
            try:
                profile = build_profile(scaled.bath.with_kappa(kappa), params, times, interpolate=cfg.interpolate)
            except IonCavityError as exc:
                raise ScenarioError(f"Dephasing profile failed: {exc}", kappa=kappa) from exc
            for j, t in enumerate(times):
                try:
                    rho = evolve_dephasing(rho0, eig, profile, t)
                    row = _observe(rho, per_state, target)
                except IonCavityError as exc:
                    raise ScenarioError(f"Evaluation failed: {exc}", kappa=kappa, t_deg=float(t_deg[j])) from exc
                for name, value in zip(per_state, row):
                    values[name][i, j] = value
        if progress is not None:
            progress(kappa)

    for column in values.values():
        column.setflags(write=False)
    return ObservableSeries(t_deg=t_deg, kappas=tuple(cfg.kappas), values=values, title=cfg.title)
