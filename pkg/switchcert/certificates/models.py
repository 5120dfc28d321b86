# FILE: switchcert/certificates/models.py

from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np

from switchcert.dynamics.nu import NuFunction
from switchcert.exceptions import CertificateStructureError, ConfigurationError
from switchcert.utils.numerics import is_positive_definite, require_symmetric


def _positive_definite_family(mats: Sequence, name: str) -> List[np.ndarray]:
    out = []
    for mode, mat in enumerate(mats):
        sym = require_symmetric(mat, f"{name}({mode})")
        if sym.size and not is_positive_definite(sym):
            raise CertificateStructureError(f"{name}({mode}) must be positive definite")
        out.append(sym)
    return out


def _positive_diagonal(entries, name: str) -> np.ndarray:
    arr = np.asarray(entries, dtype=float)
    if arr.ndim == 2:
        if np.any(arr != np.diag(np.diag(arr))):
            raise CertificateStructureError(f"{name} must be diagonal")
        arr = np.diag(arr)
    arr = arr.reshape(-1)
    if np.any(arr <= 0):
        raise CertificateStructureError(f"{name} must have positive diagonal entries")
    return arr


class CertificateThm4:
    """
    Matrix data for the quadratic-plus-integral functional V1.

    Args:
        P (Sequence): Per-mode symmetric positive-definite n x n.
        Z (array-like): Positive diagonal, given as entries or as a matrix.
        Q (array-like): Symmetric positive definite.
        R (Sequence): Per-mode symmetric positive definite.
        alpha_nu (float): Upper bound on nu'/nu.
        beta_nu (float): Lower bound on (1 - tau') nu(t - tau) / nu(t).
        nu (NuFunction, optional): Weight the constants came from.
    """

    def __init__(self, P: Sequence, Z, Q, R: Sequence, alpha_nu: float, beta_nu: float,
                 nu: Optional[NuFunction] = None):
        self.P = _positive_definite_family(P, "P")
        self.R = _positive_definite_family(R, "R")
        self.Q = _positive_definite_family([Q], "Q")[0]
        self.Z = _positive_diagonal(Z, "Z")
        if not self.P:
            raise ConfigurationError("certificate needs at least one mode", key="certificate.thm4.P")
        n = self.P[0].shape[0]
        if n == 0:
            raise ConfigurationError("certificate dimension must be at least 1", key="certificate.thm4")
        if len(self.R) != len(self.P):
            raise CertificateStructureError("P and R need the same number of modes")
        if any(m.shape != (n, n) for m in self.P + self.R + [self.Q]) or self.Z.shape != (n,):
            raise CertificateStructureError(f"certificate matrices must all be {n} x {n}")
        self.alpha_nu = float(alpha_nu)
        self.beta_nu = float(beta_nu)
        self.nu = nu

    @property
    def dimension(self) -> int:
        return self.P[0].shape[0]

    @property
    def mode_count(self) -> int:
        return len(self.P)

    def scaled(self, c: float) -> CertificateThm4:
        """Every matrix multiplied by c > 0."""
        return CertificateThm4([c * p for p in self.P], c * self.Z, c * self.Q, [c * r for r in self.R],
                               self.alpha_nu, self.beta_nu, self.nu)


class CertificateThm5:
    """
    Matrix data for V2 = nu(t) x^T P(r) x.

    V and W are per-mode diagonals given as entries (or matrices); their
    invertibility is checked when M and N are built.
    """

    def __init__(self, P: Sequence, V: Sequence, W: Sequence, rho1: float, kappa: float, kappa_prime: float,
                 alpha_nu: float, beta_nu: float, nu: Optional[NuFunction] = None):
        self.P = _positive_definite_family(P, "P")
        if not self.P or self.P[0].shape[0] == 0:
            raise ConfigurationError("certificate needs at least one mode of dimension >= 1", key="certificate.thm5")
        n = self.P[0].shape[0]
        self.V = [self._diagonal(v, "V") for v in V]
        self.W = [self._diagonal(w, "W") for w in W]
        if not (len(self.V) == len(self.W) == len(self.P)):
            raise CertificateStructureError("P, V and W need the same number of modes")
        if any(p.shape != (n, n) for p in self.P) or any(d.shape != (n,) for d in self.V + self.W):
            raise CertificateStructureError(f"certificate data must be {n}-dimensional")
        if not (rho1 > 0 and kappa > 0 and kappa_prime > 0):
            raise CertificateStructureError("rho1, kappa and kappa' must be positive")
        self.rho1 = float(rho1)
        self.kappa = float(kappa)
        self.kappa_prime = float(kappa_prime)
        self.alpha_nu = float(alpha_nu)
        self.beta_nu = float(beta_nu)
        self.nu = nu

    @staticmethod
    def _diagonal(entries, name: str) -> np.ndarray:
        arr = np.asarray(entries, dtype=float)
        if arr.ndim == 2:
            if np.any(arr != np.diag(np.diag(arr))):
                raise CertificateStructureError(f"{name} must be diagonal")
            arr = np.diag(arr)
        return arr.reshape(-1)

    @property
    def dimension(self) -> int:
        return self.P[0].shape[0]

    @property
    def mode_count(self) -> int:
        return len(self.P)
