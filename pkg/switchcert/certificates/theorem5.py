# FILE: switchcert/certificates/theorem5.py

import logging
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import svdvals

from switchcert.certificates.chi import chi_term
from switchcert.certificates.loewner import SemidefReport, loewner_leq
from switchcert.certificates.models import CertificateThm5
from switchcert.dynamics.network import SwitchedNetworkModel
from switchcert.exceptions import CertificateStructureError, ConfigurationError
from switchcert.switching.families import FamilyState, RateMap, SwitchingFamily

logger = logging.getLogger(__name__)


class HalanayConstants(BaseModel):
    """Comparison constants implied by a passing Theorem-5 certificate."""
    alpha: float
    beta: float
    eta: float


class Thm5Report(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: bool = Field(alias="pass")
    worst_lambda_max: float
    conservative: bool
    tolerance: float
    decay: List[SemidefReport] = Field(description="M_k + kappa P <= 0")
    delay: List[SemidefReport] = Field(description="N_k - (kappa'/rho1) P <= 0")
    pairs: List[SemidefReport] = Field(description="P(xi) - rho1 P(xi') <= 0")
    halanay: HalanayConstants


def spectral_norm(matrix: np.ndarray) -> float:
    """Largest singular value."""
    return float(svdvals(matrix)[0])


def _inverse_diagonal(entries: np.ndarray, name: str, mode: int) -> np.ndarray:
    if np.any(entries == 0) or not np.all(np.isfinite(entries)):
        raise CertificateStructureError(f"{name}({mode}) is singular")
    if np.any(entries < 0):
        raise CertificateStructureError(f"{name}({mode}) must be positive")
    return np.diag(1.0 / entries)


def _check_compatible(model: SwitchedNetworkModel, cert: CertificateThm5, family: SwitchingFamily) -> None:
    if cert.dimension != model.dimension:
        raise CertificateStructureError(
            f"certificate dimension {cert.dimension} does not match model dimension {model.dimension}"
        )
    if cert.mode_count < family.mode_count or model.mode_count < family.mode_count:
        raise CertificateStructureError("missing mode data for the family's modes")
    if model.noise_bounds is None:
        raise ConfigurationError("Theorem-5 check needs the noise bound a", key="model.noise_bounds")


def assemble_MN(model: SwitchedNetworkModel, cert: CertificateThm5, chi: np.ndarray, mode: int
                ) -> Tuple[np.ndarray, np.ndarray]:
    P = cert.P[mode]
    D, A, B = model.D[mode], model.A[mode], model.B[mode]
    G = model.G
    V_inv = _inverse_diagonal(cert.V[mode], "V", mode)
    W_inv = _inverse_diagonal(cert.W[mode], "W", mode)
    V = np.diag(cert.V[mode])
    W = np.diag(cert.W[mode])
    a_norm = model.noise_bounds.a[mode] * spectral_norm(P)
    G2 = G @ G

    M = (cert.alpha_nu * P - (P @ D + D @ P) + a_norm * G2
         + P @ A @ V_inv @ A.T @ P.T + G @ V @ G
         + P @ B @ W_inv @ B.T @ P.T + chi)
    N = cert.beta_nu * (G @ W @ G + a_norm * G2)
    return 0.5 * (M + M.T), 0.5 * (N + N.T)


def build_MN(
    model: SwitchedNetworkModel,
    cert: CertificateThm5,
    family: SwitchingFamily,
    rates: RateMap,
    mode: int,
    state: Optional[FamilyState] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Build (M_k, N_k) for `mode`.

    Raises:
        CertificateStructureError: Singular V or W, or mismatched data.
    """
    _check_compatible(model, cert, family)
    chi = chi_term(family, cert.P, mode, rates, state=state)
    return assemble_MN(model, cert, chi.matrix, mode)


def check_thm5(
    model: SwitchedNetworkModel,
    cert: CertificateThm5,
    family: SwitchingFamily,
    rates: RateMap,
    tolerance: float = 0.0,
) -> Thm5Report:
    """
    Verify M_k <= -kappa P, N_k <= (kappa'/rho1) P and P(xi) <= rho1 P(xi').

    Raises:
        CertificateStructureError: If kappa <= kappa' or rho1 < 1, before any eigensolve.
    """
    if cert.kappa <= cert.kappa_prime:
        raise CertificateStructureError(f"kappa={cert.kappa} must exceed kappa'={cert.kappa_prime}")
    if cert.rho1 < 1:
        raise CertificateStructureError(f"rho1={cert.rho1} must be at least 1")
    _check_compatible(model, cert, family)

    decay: List[SemidefReport] = []
    delay: List[SemidefReport] = []
    for mode in range(family.mode_count):
        for state in family.states_for_mode(mode):
            chi = chi_term(family, cert.P, mode, rates, state=state)
            M, N = assemble_MN(model, cert, chi.matrix, mode)
            P = cert.P[mode]
            decay.append(loewner_leq(M, -cert.kappa * P, tolerance, label=f"M({mode})", mode=mode,
                                     conservative=chi.conservative))
            delay.append(loewner_leq(N, (cert.kappa_prime / cert.rho1) * P, tolerance, label=f"N({mode})",
                                     mode=mode, conservative=chi.conservative))

    pairs = [
        loewner_leq(cert.P[i], cert.rho1 * cert.P[j], tolerance, label=f"P({i}) <= rho1 P({j})", mode=i)
        for i in range(family.mode_count)
        for j in range(family.mode_count)
        if i != j
    ]

    every = decay + delay + pairs
    passed = all(r.passed for r in every)
    worst = max(r.lambda_max for r in every)
    log = logger.info if passed else logger.warning
    log(f"[check_thm5] pass={passed} worst lambda_max={worst:.6g}")
    return Thm5Report(
        passed=passed,
        worst_lambda_max=worst,
        conservative=any(r.conservative for r in every),
        tolerance=float(tolerance),
        decay=decay,
        delay=delay,
        pairs=pairs,
        halanay=HalanayConstants(alpha=cert.kappa, beta=cert.kappa_prime, eta=cert.kappa - cert.kappa_prime),
    )
