# FILE: switchcert/config/builders.py

"""
Turn a validated ExperimentConfig into domain objects.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from switchcert.certificates.models import CertificateThm4, CertificateThm5
from switchcert.config.experiment import ExperimentConfig, FamilySection, InitSection, ModelSection
from switchcert.dynamics.delays import DelayFunction, build_delay, default_grid
from switchcert.dynamics.network import (
    DelayedOutputNoise,
    LinearMixNoise,
    NoiseBounds,
    SwitchedNetworkModel,
    ZeroNoise,
)
from switchcert.dynamics.nu import NuConstants, NuFunction, build_nu, nu_constants
from switchcert.exceptions import ConfigurationError
from switchcert.simulation.segments import ConstantSegment, InitialSegment, InterpolatedSegment
from switchcert.switching.families import (
    FiniteMarkov,
    FixedSequence,
    HiddenMarkov,
    IndependentIID,
    RateMap,
    ReflectedMaxWalk,
    SwitchingFamily,
)

logger = logging.getLogger(__name__)


@dataclass
class Experiment:
    """Domain objects of one experiment."""
    config: ExperimentConfig
    model: SwitchedNetworkModel
    family: SwitchingFamily
    rates: RateMap
    delay: DelayFunction
    nu: NuFunction
    constants: NuConstants
    init: InitialSegment
    thm4: Optional[CertificateThm4] = None
    thm5: Optional[CertificateThm5] = None


def build_model(section: ModelSection) -> SwitchedNetworkModel:
    noise = {
        "delayed_output": DelayedOutputNoise,
        "zero": ZeroNoise,
    }.get(section.noise.kind)
    noise = noise() if noise is not None else LinearMixNoise(section.noise.C1, section.noise.C2)
    bounds = None
    if section.noise_bounds is not None:
        nb = section.noise_bounds
        bounds = NoiseBounds(a=tuple(nb.a), E=tuple(np.asarray(e) for e in nb.E), F=tuple(np.asarray(f) for f in nb.F))
    return SwitchedNetworkModel(section.D, section.A, section.B, noise=noise, noise_bounds=bounds,
                                check_hypotheses=section.check_hypotheses)


def build_family(section: FamilySection) -> SwitchingFamily:
    if section.kind == "iid":
        return IndependentIID(section.dist)
    if section.kind == "markov":
        return FiniteMarkov(section.R)
    if section.kind == "hidden_markov":
        return HiddenMarkov(section.T, section.emission, section.initial_hidden)
    if section.kind == "reflected_max_walk":
        return ReflectedMaxWalk()
    return FixedSequence(section.modes, mode_count=section.mode_count)


def build_init(section: InitSection) -> InitialSegment:
    if section.kind == "constant":
        return ConstantSegment(section.value)
    return InterpolatedSegment(section.times, section.values)


def build_experiment(config: ExperimentConfig) -> Experiment:
    """
    Build every domain object of `config`.

    nu constants are estimated on a grid over [0, simulation.horizon]; values
    given in the nu section override the estimates in the certificates.
    """
    sw = config.switching
    rates = RateMap(rates=tuple(sw.rates), mu0=sw.mu0 if sw.mu0 is not None else max(sw.rates))
    d = config.delay
    delay = build_delay(d.kind, c=d.c, a=d.a, b=d.b, allow_fast=d.allow_fast)
    nu_cfg = config.nu
    nu = build_nu(nu_cfg.kind, nu_cfg.alpha, delay.tau_b, nu_cfg.offset)
    constants = nu_constants(nu, delay, default_grid(config.simulation.horizon, nu_cfg.grid_points))

    alpha_nu = constants.alpha_nu if nu_cfg.alpha_nu is None else nu_cfg.alpha_nu
    beta4 = constants.beta_nu_thm4 if nu_cfg.beta_nu_thm4 is None else nu_cfg.beta_nu_thm4
    beta5 = constants.beta_nu_thm5 if nu_cfg.beta_nu_thm5 is None else nu_cfg.beta_nu_thm5

    thm4 = thm5 = None
    if config.certificate is not None and config.certificate.thm4 is not None:
        c4 = config.certificate.thm4
        thm4 = CertificateThm4(c4.P, c4.Z, c4.Q, c4.R, alpha_nu=alpha_nu, beta_nu=beta4, nu=nu)
    if config.certificate is not None and config.certificate.thm5 is not None:
        c5 = config.certificate.thm5
        thm5 = CertificateThm5(c5.P, c5.V, c5.W, c5.rho1, c5.kappa, c5.kappa_prime,
                               alpha_nu=alpha_nu, beta_nu=beta5, nu=nu)

    model = build_model(config.model)
    family = build_family(sw.family)
    if family.mode_count > model.mode_count:
        raise ConfigurationError("family emits more modes than the model defines", key="switching.family")
    logger.debug(f"[build_experiment] n={model.dimension}, modes={model.mode_count}, family={family.kind}")
    return Experiment(
        config=config,
        model=model,
        family=family,
        rates=rates,
        delay=delay,
        nu=nu,
        constants=constants,
        init=build_init(config.simulation.init),
        thm4=thm4,
        thm5=thm5,
    )
