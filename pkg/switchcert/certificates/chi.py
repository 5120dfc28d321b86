# FILE: switchcert/certificates/chi.py

"""
Jump term chi = mu(xi) (E[P(xi') | history] - P(xi)) for quadratic V = x^T P(xi) x.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from switchcert.certificates.loewner import loewner_leq
from switchcert.exceptions import CertificateStructureError
from switchcert.switching.families import ConservativeBound, FamilyState, RateMap, SwitchingFamily

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChiTerm:
    """chi matrix; `conservative` marks an upper bound instead of the exact value."""
    matrix: np.ndarray
    conservative: bool = False


def chi_term(
    family: SwitchingFamily,
    P: Sequence[np.ndarray],
    current_mode: int,
    rates: RateMap,
    state: Optional[FamilyState] = None,
) -> ChiTerm:
    """
    Evaluate chi for the family's conditional next-mode law.

    Args:
        family (SwitchingFamily): Mode-sequence law.
        P (Sequence[np.ndarray]): Per-mode symmetric matrices.
        current_mode (int): xi^k.
        rates (RateMap): Cox intensities.
        state (FamilyState, optional): Family state; defaults to the first
            representative state of `current_mode`.

    Returns:
        ChiTerm: The exact term, or (1/2) mu(1) (P(0) - P(1)) flagged conservative
        when the law is only bounded.

    Raises:
        CertificateStructureError: If P lacks modes, or the bound is requested
            while P(0) >= P(1) fails.
    """
    if len(P) < family.mode_count:
        raise CertificateStructureError(f"P has {len(P)} modes, the family emits {family.mode_count}")
    if state is None:
        states = family.states_for_mode(current_mode)
        if not states:
            raise CertificateStructureError(f"mode {current_mode} is never visited by the family")
        state = states[0]

    mu = rates.rate(current_mode)
    law = family.conditional_next_distribution(state)
    P_now = np.asarray(P[current_mode], dtype=float)

    if isinstance(law, ConservativeBound):
        P0 = np.asarray(P[0], dtype=float)
        P1 = np.asarray(P[1], dtype=float)
        order = loewner_leq(P1, P0, tolerance=1e-12 * max(1.0, float(np.abs(P0).max())))
        if not order.passed:
            raise CertificateStructureError(
                f"chi bound needs P(0) >= P(1); lambda_max(P(1) - P(0)) = {order.lambda_max:.6g}"
            )
        logger.debug(f"[chi_term] conservative bound in mode {current_mode}")
        return ChiTerm(matrix=0.5 * mu * (P0 - P1), conservative=True)

    total = np.zeros_like(P_now)
    for j, p in enumerate(np.asarray(law, dtype=float)):
        if p != 0.0:
            total = total + p * (np.asarray(P[j], dtype=float) - P_now)
    return ChiTerm(matrix=mu * total, conservative=False)
