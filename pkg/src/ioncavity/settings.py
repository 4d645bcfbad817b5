"""
Scenario configuration, figure presets and unit conversion.

Frequencies in a scenario are given in units of 10^6 rad/s. Everything the
library computes runs in units where a_11 = 1: times become T = a_11 t
(radians; the plotted abscissa is T in degrees), frequencies are divided by
a_11 and beta is multiplied by it.
"""

import json
import math
import os
import warnings
from pathlib import Path
from typing import Any, Dict, Literal, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic import ValidationError as PydanticValidationError

from .bath import BathSpec, beta_from_temperature
from .errors import IoError, ParseError, UnknownFigure, ValidationError
from .model import SystemParams

OUTPUT_NAMES = ("pghz", "inversion", "negativity", "linear_entropy", "leakage")
CUT_NAMES = ("A", "B", "C")
FORMATS = ("csv", "svg", "both")

PRESET_KAPPAS = (0.0, 0.001, 0.01, 0.02, 0.05, 0.1)
GHZ_FIGURE_KAPPAS = (0.0, 0.001, 0.01, 0.1)

MAX_SENSIBLE_T_DEG = 720.0
MAX_SENSIBLE_GRID_POINTS = 20001
MEGA = 1e6

OutputName = Literal["pghz", "inversion", "negativity", "linear_entropy", "leakage"]
CutName = Literal["A", "B", "C"]


def _canonical(values, order) -> Tuple[str, ...]:
    chosen = set(values)
    return tuple(name for name in order if name in chosen)


class ScenarioConfig(BaseModel):
    """
    One simulation scenario.

    Attributes:
        omega_rabi_e6rad: Rabi frequency Omega in 10^6 rad/s
        alpha: Ratio mu_11 / a_11 (> 1)
        bath_cutoff_e6rad: Bath cutoff w_c in 10^6 rad/s
        temperature_k: Bath temperature in kelvin
        kappas: Coupling strengths to sweep
        t_max_deg: End of the T grid in degrees
        grid_points: Number of grid points on [0, t_max_deg]
        fock_cutoffs: (phonon, photon) cutoffs for the leakage output
        outputs: Observables to compute
        cuts: Bipartitions reported for negativity and linear entropy
        title: Optional plot title
        interpolate: Build profiles that accept off-grid times
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    omega_rabi_e6rad: float = Field(8.95, gt=0)
    alpha: float = Field(4.0, gt=1)
    bath_cutoff_e6rad: float = Field(1200.0, gt=0)
    temperature_k: float = Field(0.03, gt=0)
    kappas: Tuple[float, ...] = PRESET_KAPPAS
    t_max_deg: float = Field(180.0, gt=0)
    grid_points: int = Field(721, ge=2)
    fock_cutoffs: Tuple[int, int] = (6, 6)
    outputs: Tuple[OutputName, ...] = OUTPUT_NAMES
    cuts: Tuple[CutName, ...] = CUT_NAMES
    title: Optional[str] = None
    interpolate: bool = False

    @field_validator("kappas")
    @classmethod
    def _check_kappas(cls, value):
        if not value:
            raise ValueError("at least one kappa is required")
        bad = [k for k in value if not (math.isfinite(k) and k >= 0)]
        if bad:
            raise ValueError(f"kappas must be finite and >= 0, got {bad}")
        return tuple(float(k) for k in value)

    @field_validator("fock_cutoffs")
    @classmethod
    def _check_cutoffs(cls, value):
        if min(value) < 4:
            raise ValueError(f"fock cutoffs must be >= 4, got {value}")
        return value

    @field_validator("outputs")
    @classmethod
    def _order_outputs(cls, value):
        if not value:
            raise ValueError("at least one output is required")
        return _canonical(value, OUTPUT_NAMES)

    @field_validator("cuts")
    @classmethod
    def _order_cuts(cls, value):
        if not value:
            raise ValueError("at least one cut is required")
        return _canonical(value, CUT_NAMES)

    @model_validator(mode="after")
    def _warn_on_heavy_grids(self):
        if self.t_max_deg > MAX_SENSIBLE_T_DEG:
            warnings.warn(f"t_max_deg={self.t_max_deg:g} spans more than {MAX_SENSIBLE_T_DEG:g} degrees")
        if self.grid_points > MAX_SENSIBLE_GRID_POINTS:
            warnings.warn(f"grid_points={self.grid_points} is large; expect a slow run")
        return self

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "ScenarioConfig":
        """
        Validate a plain mapping.

        Raises:
            ValidationError: Listing every violated field
        """
        try:
            return cls.model_validate(data)
        except PydanticValidationError as exc:
            raise ValidationError(_describe(exc)) from None

    def with_overrides(self, **changes) -> "ScenarioConfig":
        """Copy with some fields replaced; the result is re-validated."""
        data = self.model_dump()
        data.update({k: v for k, v in changes.items() if v is not None})
        return ScenarioConfig.from_mapping(data)

    def t_deg(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max_deg, self.grid_points)


def _describe(exc: PydanticValidationError):
    problems = []
    for err in exc.errors():
        where = ".".join(str(part) for part in err.get("loc", ())) or "config"
        message = err.get("msg", "invalid value")
        if message.startswith("Value error, "):
            message = message[len("Value error, "):]
        problems.append(f"{where}: {message}")
    return problems


def _parse_key_values(text: str) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError("Expected 'key = value'", line=lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ParseError("Missing key before '='", line=lineno)
        if key not in ScenarioConfig.model_fields:
            raise ParseError("Unknown key", line=lineno, key=key)
        if key in data:
            raise ParseError("Duplicate key", line=lineno, key=key)
        try:
            data[key] = json.loads(value.strip())
        except json.JSONDecodeError as exc:
            raise ParseError(f"Value is not a JSON literal ({exc.msg})", line=lineno, key=key) from None
    return data


def _parse_json(text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Malformed JSON ({exc.msg})", line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("A JSON scenario must be an object")
    unknown = [key for key in data if key not in ScenarioConfig.model_fields]
    if unknown:
        raise ParseError("Unknown key", key=unknown[0])
    return data


def parse_config(path) -> ScenarioConfig:
    """
    Load a scenario file.

    Two syntaxes are accepted: a JSON object, or one `key = <JSON literal>`
    per line with `#` comments. Missing keys take their defaults, so an empty
    file yields the default scenario.

    Args:
        path: Path to the scenario file

    Returns:
        Validated ScenarioConfig

    Raises:
        IoError: If the file cannot be read
        ParseError: Malformed syntax or unknown key, with line/key context
        ValidationError: If a value violates a constraint

    Example:
        >>> # scenario.cfg
        >>> #   kappas = [0, 0.01]
        >>> #   outputs = ["pghz", "inversion"]
        >>> cfg = parse_config("scenario.cfg")
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"Cannot read scenario file '{path}': {exc.strerror or exc}") from exc
    data = _parse_json(text) if text.lstrip().startswith("{") else _parse_key_values(text)
    return ScenarioConfig.from_mapping(data)


_FIGURES = {
    1: dict(kappas=GHZ_FIGURE_KAPPAS, outputs=("pghz",), title="GHZ generation probability"),
    2: dict(kappas=GHZ_FIGURE_KAPPAS, outputs=("inversion",), title="Population inversion"),
    3: dict(kappas=PRESET_KAPPAS, outputs=("negativity",), cuts=("A",), title="Negativity, ion cut"),
    4: dict(kappas=PRESET_KAPPAS, outputs=("negativity",), cuts=("B", "C"), title="Negativity, phonon/photon cut"),
    5: dict(kappas=PRESET_KAPPAS, outputs=("linear_entropy",), cuts=("A",), title="Linear entropy, ion"),
    6: dict(kappas=PRESET_KAPPAS, outputs=("linear_entropy",), cuts=("B", "C"), title="Linear entropy, phonon/photon"),
}


def figure_preset(n: int, **overrides) -> ScenarioConfig:
    """
    Scenario reproducing one of the six standard figures.

    1: GHZ probability, 2: inversion (kappa in {0, 0.001, 0.01, 0.1});
    3/4: negativity for the ion cut / phonon and photon cuts, 5/6: linear
    entropy likewise (kappa in {0, 0.001, 0.01, 0.02, 0.05, 0.1}).

    Args:
        n: Figure number 1..6
        **overrides: ScenarioConfig fields to replace (None values ignored)

    Raises:
        UnknownFigure: If n is not 1..6
    """
    if isinstance(n, bool) or n not in _FIGURES:
        raise UnknownFigure(f"Unknown figure {n!r}; presets exist for 1..6")
    cfg = ScenarioConfig(**_FIGURES[n])
    if overrides:
        cfg = cfg.with_overrides(**overrides)
    if cfg.alpha != 4.0:
        warnings.warn(f"Figure {n} is defined for alpha = 4; with alpha = {cfg.alpha:g} the GHZ point is not reached")
    return cfg


class ScaledScenario(NamedTuple):
    """Library inputs derived from a ScenarioConfig."""
    params: SystemParams
    bath: BathSpec
    times: np.ndarray
    a11_rad_s: float


def a11_rad_s(cfg: ScenarioConfig) -> float:
    return cfg.omega_rabi_e6rad * MEGA / math.sqrt(cfg.alpha ** 2 - 1.0)


def to_scaled_units(cfg: ScenarioConfig) -> ScaledScenario:
    """
    Convert a scenario to a_11 = 1 units.

    The returned bath has kappa = 0; use bath.with_kappa() per sweep value.
    """
    scale = a11_rad_s(cfg)
    params = SystemParams.from_alpha(cfg.omega_rabi_e6rad * MEGA / scale, cfg.alpha)
    bath = BathSpec(
        kappa=0.0,
        cutoff=cfg.bath_cutoff_e6rad * MEGA / scale,
        beta=beta_from_temperature(cfg.temperature_k) * scale,
    )
    return ScaledScenario(params=params, bath=bath, times=np.deg2rad(cfg.t_deg()), a11_rad_s=scale)


def output_defaults() -> Tuple[str, str]:
    """
    (output directory, format) from IONCAVITY_OUTPUT_DIR / IONCAVITY_FORMAT.

    Raises:
        ValidationError: If IONCAVITY_FORMAT is not csv, svg or both
    """
    out_dir = os.getenv("IONCAVITY_OUTPUT_DIR") or "out"
    fmt = (os.getenv("IONCAVITY_FORMAT") or "both").strip().lower()
    if fmt not in FORMATS:
        raise ValidationError([f"IONCAVITY_FORMAT must be one of {', '.join(FORMATS)}, got '{fmt}'"])
    return out_dir, fmt
