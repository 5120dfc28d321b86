# FILE: switchcert/certificates/theorem4.py

"""
Block matrix Pi^k in the variables [x, g(x), g(x(t - tau))]:

    [ Sigma   P A     P B ]
    [   *     Lambda  Z B ]
    [   *       *     Gamma ]
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from switchcert.certificates.chi import ChiTerm, chi_term
from switchcert.certificates.loewner import SemidefReport, check_negative_semidefinite
from switchcert.certificates.models import CertificateThm4
from switchcert.dynamics.network import SwitchedNetworkModel
from switchcert.exceptions import CertificateStructureError, ConfigurationError
from switchcert.switching.families import FamilyState, RateMap, SwitchingFamily
from switchcert.utils.numerics import relative_asymmetry

logger = logging.getLogger(__name__)

ASSEMBLY_ASYMMETRY_TOLERANCE = 1e-12


class Thm4Report(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: bool = Field(alias="pass")
    worst_lambda_max: float
    worst_mode: int
    conservative: bool
    tolerance: float
    modes: List[SemidefReport]


def _check_compatible(model: SwitchedNetworkModel, cert: CertificateThm4, family: SwitchingFamily) -> None:
    if cert.dimension == 0 or model.dimension == 0:
        raise ConfigurationError("zero-dimensional system", key="model")
    if cert.dimension != model.dimension:
        raise CertificateStructureError(
            f"certificate dimension {cert.dimension} does not match model dimension {model.dimension}"
        )
    if cert.mode_count < family.mode_count or model.mode_count < family.mode_count:
        raise CertificateStructureError(
            f"missing mode data: family emits {family.mode_count} modes, certificate has "
            f"{cert.mode_count}, model has {model.mode_count}"
        )
    if model.noise_bounds is None:
        raise ConfigurationError("Theorem-4 check needs noise bounds a, E, F", key="model.noise_bounds")


def assemble_pi(model: SwitchedNetworkModel, cert: CertificateThm4, chi: np.ndarray, mode: int) -> np.ndarray:
    """Assemble Pi^k for a given chi matrix."""
    P = cert.P[mode]
    D, A, B = model.D[mode], model.A[mode], model.B[mode]
    G = model.nonlinearity.G
    G_inv = np.diag(1.0 / G)
    Z = np.diag(cert.Z)
    zg_max = float(np.max(cert.Z * G))
    a = model.noise_bounds.a[mode]
    E = model.noise_bounds.E[mode]
    F = model.noise_bounds.F[mode]

    sigma = cert.alpha_nu * (P + Z @ np.diag(G)) - (P @ D + D @ P) + cert.R[mode] + chi
    lam = (-2.0 * Z @ D @ G_inv + Z @ A + A.T @ Z - G_inv @ cert.R[mode] @ G_inv
           + a * P + cert.Q + zg_max * E)
    gamma = -cert.beta_nu * cert.Q + a * P + zg_max * F
    PA, PB, ZB = P @ A, P @ B, Z @ B

    pi = np.block([
        [sigma, PA, PB],
        [PA.T, lam, ZB],
        [PB.T, ZB.T, gamma],
    ])
    asymmetry = relative_asymmetry(pi)
    if asymmetry > ASSEMBLY_ASYMMETRY_TOLERANCE:
        raise CertificateStructureError(f"Pi({mode}) asymmetry {asymmetry:.3e} after assembly")
    return 0.5 * (pi + pi.T)


def build_pi(
    model: SwitchedNetworkModel,
    cert: CertificateThm4,
    family: SwitchingFamily,
    rates: RateMap,
    mode: int,
    state: Optional[FamilyState] = None,
) -> np.ndarray:
    """
    Build the symmetric 3n x 3n matrix Pi^k for `mode`.

    Raises:
        ConfigurationError: Zero dimension or missing noise bounds.
        CertificateStructureError: Dimension or mode mismatch, or a failed chi precondition.
    """
    _check_compatible(model, cert, family)
    chi = chi_term(family, cert.P, mode, rates, state=state)
    return assemble_pi(model, cert, chi.matrix, mode)


def check_thm4(
    model: SwitchedNetworkModel,
    cert: CertificateThm4,
    family: SwitchingFamily,
    rates: RateMap,
    tolerance: float = 0.0,
    relative_slack: bool = False,
) -> Thm4Report:
    """
    Verify Pi^k <= 0 for every mode and every family state the mode can occur in.

    Args:
        model (SwitchedNetworkModel): Network with noise bounds.
        cert (CertificateThm4): Certificate matrices.
        family (SwitchingFamily): Mode-sequence law, supplies chi.
        rates (RateMap): Cox intensities.
        tolerance (float): Pass iff every lambda_max <= tolerance.
        relative_slack (bool): Add ||Pi||_2 * 1e-9 to the tolerance.

    Returns:
        Thm4Report: Per-mode reports, the worst lambda_max and the verdict.
    """
    _check_compatible(model, cert, family)
    reports: List[SemidefReport] = []
    for mode in range(family.mode_count):
        states = family.states_for_mode(mode)
        if not states:
            logger.debug(f"[check_thm4] mode {mode} is never visited; skipped")
        for state in states:
            chi: ChiTerm = chi_term(family, cert.P, mode, rates, state=state)
            pi = assemble_pi(model, cert, chi.matrix, mode)
            reports.append(check_negative_semidefinite(
                pi, tolerance, relative_slack, label=f"Pi({mode})", mode=mode, conservative=chi.conservative,
            ))
    if not reports:
        raise CertificateStructureError("no mode of the family is reachable")

    worst = max(reports, key=lambda r: r.lambda_max)
    passed = all(r.passed for r in reports)
    conservative = any(r.conservative for r in reports)
    log = logger.info if passed else logger.warning
    log(f"[check_thm4] pass={passed} worst lambda_max={worst.lambda_max:.6g} (mode {worst.mode})"
        + (" [conservative]" if conservative else ""))
    return Thm4Report(
        passed=passed,
        worst_lambda_max=worst.lambda_max,
        worst_mode=int(worst.mode),
        conservative=conservative,
        tolerance=float(tolerance),
        modes=reports,
    )
