# FILE: switchcert/config/experiment.py

"""
Experiment configuration: one JSON document with nested sections.

Unknown keys are rejected, and sections are cross-checked (dimensions,
mode counts, probability rows) before anything is computed.
"""

import json
import logging
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from switchcert.exceptions import ConfigurationError
from switchcert.utils.file_handler import check_file_exists

logger = logging.getLogger(__name__)

Matrix = List[List[float]]
PROBABILITY_TOLERANCE = 1e-12


class Section(BaseModel):
    model_config = ConfigDict(extra="forbid")

    notes: Optional[str] = Field(default=None, description="Free text, e.g. derivations of constants.")


class NoiseSection(Section):
    kind: Literal["delayed_output", "linear_mix", "zero"] = "delayed_output"
    C1: Optional[List[Matrix]] = None
    C2: Optional[List[Matrix]] = None

    @model_validator(mode="after")
    def _mix_matrices(self):
        if self.kind == "linear_mix" and (self.C1 is None or self.C2 is None):
            raise ValueError("linear_mix noise requires C1 and C2")
        return self


class NoiseBoundsSection(Section):
    a: List[float]
    E: List[Matrix]
    F: List[Matrix]


class ModelSection(Section):
    D: List[Matrix]
    A: List[Matrix]
    B: List[Matrix]
    nonlinearity: Literal["tanh"] = "tanh"
    noise: NoiseSection = Field(default_factory=NoiseSection)
    noise_bounds: Optional[NoiseBoundsSection] = None
    check_hypotheses: bool = True


class FamilySection(Section):
    kind: Literal["iid", "markov", "hidden_markov", "reflected_max_walk", "fixed"]
    dist: Optional[List[float]] = None
    R: Optional[Matrix] = None
    T: Optional[Matrix] = None
    emission: Optional[Matrix] = None
    initial_hidden: Optional[int] = None
    modes: Optional[List[int]] = None
    mode_count: Optional[int] = None

    @model_validator(mode="after")
    def _variant_fields(self):
        required = {
            "iid": ("dist",),
            "markov": ("R",),
            "hidden_markov": ("T", "emission", "initial_hidden"),
            "reflected_max_walk": (),
            "fixed": ("modes",),
        }[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.kind} family requires {', '.join(missing)}")
        rows = {"dist": [self.dist] if self.dist else [], "R": self.R or [], "T": self.T or [],
                "emission": self.emission or []}
        for name, matrix in rows.items():
            for i, row in enumerate(matrix):
                if any(p < 0 for p in row) or abs(sum(row) - 1.0) > PROBABILITY_TOLERANCE:
                    raise ValueError(f"{name} row {i} is not a probability vector")
        return self

    def emitted_modes(self) -> int:
        if self.kind == "iid":
            return len(self.dist)
        if self.kind == "markov":
            return len(self.R)
        if self.kind == "hidden_markov":
            return len(self.emission[0])
        if self.kind == "reflected_max_walk":
            return 2
        return self.mode_count or max(self.modes) + 1


class SwitchingSection(Section):
    family: FamilySection
    rates: List[float]
    mu0: Optional[float] = None
    initial_mode: int = Field(default=0, ge=0)


class DelaySection(Section):
    kind: Literal["constant", "affine"]
    c: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    allow_fast: bool = False


class NuSection(Section):
    kind: Literal["exp", "power", "log", "loglog"]
    alpha: Optional[float] = None
    offset: Optional[float] = None
    alpha_nu: Optional[float] = Field(default=None, description="Overrides the grid estimate.")
    beta_nu_thm4: Optional[float] = Field(default=None, description="Overrides the grid estimate.")
    beta_nu_thm5: Optional[float] = Field(default=None, description="Overrides the grid estimate.")
    grid_points: int = Field(default=2001, ge=2)


class Thm4Section(Section):
    P: List[Matrix]
    Z: List[float]
    Q: Matrix
    R: List[Matrix]


class Thm5Section(Section):
    P: List[Matrix]
    V: List[List[float]]
    W: List[List[float]]
    rho1: float
    kappa: float
    kappa_prime: float


class CertificateSection(Section):
    thm4: Optional[Thm4Section] = None
    thm5: Optional[Thm5Section] = None
    tolerance: float = 0.0
    relative_slack: bool = False


class InitSection(Section):
    kind: Literal["constant", "interpolated"] = "constant"
    value: Optional[List[float]] = None
    times: Optional[List[float]] = None
    values: Optional[Matrix] = None

    @model_validator(mode="after")
    def _variant_fields(self):
        if self.kind == "constant" and self.value is None:
            raise ValueError("constant initial segment requires value")
        if self.kind == "interpolated" and (self.times is None or self.values is None):
            raise ValueError("interpolated initial segment requires times and values")
        return self

    def dimension(self) -> int:
        return len(self.value) if self.kind == "constant" else len(self.values[0])


class SimulationSection(Section):
    h: float = Field(gt=0)
    horizon: float = Field(ge=0)
    trials: int = 200
    seed: int = 0
    init: InitSection
    epsilons: List[float] = Field(default_factory=list)
    record_step: Optional[float] = None
    threshold: float = 1e-2
    level: float = 0.05


class HalanaySection(Section):
    alpha: Optional[float] = None
    beta: Optional[float] = None
    eta: Optional[float] = None
    j0: float = 0.0
    u0: float = 1.0
    h: float = Field(default=1e-3, gt=0)
    horizon: float = Field(default=10.0, ge=0)


class ValidationSection(Section):
    sample_count: int = Field(default=1000, ge=1)
    radius: float = Field(default=1.0, gt=0)
    grid_points: int = Field(default=2001, ge=2)


class OutputSection(Section):
    directory: Optional[str] = None
    formats: List[Literal["json", "text", "csv"]] = Field(default_factory=lambda: ["json", "csv"])


class ExperimentConfig(BaseModel):
    """Complete experiment description."""
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    notes: Optional[str] = None
    model: ModelSection
    switching: SwitchingSection
    delay: DelaySection
    nu: NuSection
    certificate: Optional[CertificateSection] = None
    simulation: SimulationSection
    halanay: Optional[HalanaySection] = None
    validation: ValidationSection = Field(default_factory=ValidationSection)
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode="after")
    def _cross_validate(self):
        m = self.model
        n = len(m.D[0]) if m.D else 0
        if n == 0:
            raise ValueError("model.D: state dimension must be at least 1")
        modes = len(m.D)

        def square_family(name: str, mats: List[Matrix]) -> None:
            for k, mat in enumerate(mats):
                if len(mat) != n or any(len(row) != n for row in mat):
                    raise ValueError(f"{name}[{k}] must be {n} x {n}")

        for name in ("D", "A", "B"):
            mats = getattr(m, name)
            if len(mats) != modes:
                raise ValueError(f"model.{name} needs {modes} modes, got {len(mats)}")
            square_family(f"model.{name}", mats)
        if m.noise_bounds is not None:
            nb = m.noise_bounds
            if not (len(nb.a) == len(nb.E) == len(nb.F) == modes):
                raise ValueError(f"model.noise_bounds needs a, E and F for {modes} modes")
            square_family("model.noise_bounds.E", nb.E)
            square_family("model.noise_bounds.F", nb.F)
        if m.noise.kind == "linear_mix":
            for name in ("C1", "C2"):
                mats = getattr(m.noise, name)
                if len(mats) != modes:
                    raise ValueError(f"model.noise.{name} needs {modes} modes")
                square_family(f"model.noise.{name}", mats)

        emitted = self.switching.family.emitted_modes()
        if emitted > modes:
            raise ValueError(f"switching.family emits {emitted} modes but the model defines {modes}")
        if len(self.switching.rates) < emitted:
            raise ValueError(f"switching.rates covers {len(self.switching.rates)} modes, family emits {emitted}")
        if self.switching.initial_mode >= emitted:
            raise ValueError(f"switching.initial_mode {self.switching.initial_mode} out of range")

        if self.simulation.init.dimension() != n:
            raise ValueError(f"simulation.init has dimension {self.simulation.init.dimension()}, model has {n}")

        cert = self.certificate
        if cert is not None and cert.thm4 is not None:
            if len(cert.thm4.P) != modes or len(cert.thm4.R) != modes:
                raise ValueError(f"certificate.thm4 needs P and R for {modes} modes")
            square_family("certificate.thm4.P", cert.thm4.P)
            square_family("certificate.thm4.R", cert.thm4.R)
            square_family("certificate.thm4.Q", [cert.thm4.Q])
            if len(cert.thm4.Z) != n:
                raise ValueError(f"certificate.thm4.Z needs {n} diagonal entries")
        if cert is not None and cert.thm5 is not None:
            t5 = cert.thm5
            if not (len(t5.P) == len(t5.V) == len(t5.W) == modes):
                raise ValueError(f"certificate.thm5 needs P, V and W for {modes} modes")
            square_family("certificate.thm5.P", t5.P)
            if any(len(d) != n for d in t5.V + t5.W):
                raise ValueError(f"certificate.thm5 V and W need {n} diagonal entries per mode")
        return self

    @property
    def dimension(self) -> int:
        return len(self.model.D[0])


def _error_key(error: dict) -> str:
    return ".".join(str(part) for part in error.get("loc", ()))


def parse_experiment(data: dict) -> ExperimentConfig:
    """
    Validate a configuration mapping.

    Raises:
        ConfigurationError: With the dotted key path of the first error.
    """
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        key = _error_key(first) or None
        message = first.get("msg", str(e))
        logger.error(f"[load_experiment] {key}: {message}")
        raise ConfigurationError(message, key=key) from e


def load_experiment(path: str) -> ExperimentConfig:
    """Read and validate a JSON experiment file."""
    check_file_exists(path)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"'{path}' is not valid JSON: {e}") from e
    logger.info(f"[load_experiment] loaded '{path}'")
    return parse_experiment(data)


def dump_experiment(config: ExperimentConfig, path: Optional[str] = None) -> str:
    """Serialize to JSON text (optionally written to `path`); parsing it back yields an equal config."""
    text = json.dumps(config.model_dump(mode="json", exclude_none=True), indent=2) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    return text
