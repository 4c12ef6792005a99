"""Double kicked top Floquet operator, its powers, and projective-period certification."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .spin import SpinSystem, _as_system, exp_quadratic_x, exp_quadratic_z, rotation_about_y


def transform_kicks(k: float, kprime: float) -> tuple[float, float]:
    """Physical kicks (k, k') -> (kr, ktheta) = ((k + k')/2, (k - k')/2)."""
    return (k + kprime) / 2, (k - kprime) / 2


def inverse_transform(kr: float, ktheta: float) -> tuple[float, float]:
    return kr + ktheta, kr - ktheta


@dataclass(frozen=True)
class KickParameters:
    k: float
    kprime: float
    p: float = np.pi / 2

    def __post_init__(self):
        for name in ("k", "kprime", "p"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def from_transformed(cls, kr: float, ktheta: float, p: float = np.pi / 2) -> "KickParameters":
        k, kprime = inverse_transform(kr, ktheta)
        return cls(k, kprime, p)

    @property
    def kr(self) -> float:
        return transform_kicks(self.k, self.kprime)[0]

    @property
    def ktheta(self) -> float:
        return transform_kicks(self.k, self.kprime)[1]

    def as_dict(self) -> dict:
        return {"k": self.k, "kprime": self.kprime, "kr": self.kr, "ktheta": self.ktheta, "p": self.p}


@dataclass(frozen=True, eq=False)
class FloquetOperator:
    matrix: np.ndarray
    sys: SpinSystem
    params: KickParameters

    @property
    def d(self) -> int:
        return self.sys.d

    @cached_property
    def schur(self) -> tuple[np.ndarray, np.ndarray]:
        """(eigenvalues, unitary eigenvectors) from the complex Schur form.

        For a normal matrix the Schur form is diagonal, so the vectors stay
        orthonormal even inside degenerate eigenspaces (unlike ``eig``).
        """
        T, Z = scipy.linalg.schur(self.matrix, output="complex")
        lam = np.diag(T).copy()
        lam /= np.abs(lam)
        return lam, Z

    def power(self, n: int, method: str = "squaring") -> np.ndarray:
        return floquet_power(self, n, method)


def build_floquet(sys, params: KickParameters) -> FloquetOperator:
    """U = exp(-i k'/(2j) Jx^2) exp(-i k/(2j) Jz^2) exp(-i p Jy)."""
    sys = _as_system(sys)
    twoj = 2 * sys.j
    U = exp_quadratic_z(sys, params.k / twoj) @ rotation_about_y(sys, params.p)
    if params.kprime != 0:
        U = exp_quadratic_x(sys, params.kprime / twoj) @ U
    U.flags.writeable = False
    return FloquetOperator(U, sys, params)


def dkt(j, kr: float, ktheta: float = 0.0, p: float = np.pi / 2) -> FloquetOperator:
    """Shorthand: Floquet operator from transformed parameters."""
    return build_floquet(SpinSystem(j), KickParameters.from_transformed(kr, ktheta, p))


def _matrix(U) -> np.ndarray:
    return U.matrix if isinstance(U, FloquetOperator) else np.asarray(U)


def floquet_power(U, n: int, method: str = "squaring") -> np.ndarray:
    """U**n by repeated squaring, or through the Schur eigendecomposition (method="spectral")."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if method == "spectral":
        if not isinstance(U, FloquetOperator):
            raise TypeError("spectral powers need a FloquetOperator")
        lam, Z = U.schur
        return (Z * lam**n) @ Z.conj().T
    if method != "squaring":
        raise ValueError(f"unknown method {method!r}")
    return np.linalg.matrix_power(_matrix(U), n)


def phase_residual(M: np.ndarray) -> tuple[float, float]:
    """Best global phase phi = arg(tr M / d) and max|M - e^{i phi} 1|."""
    d = M.shape[0]
    phi = float(np.angle(np.trace(M) / d)) % (2 * np.pi)
    R = M - np.exp(1j * phi) * np.eye(d)
    return phi, float(np.max(np.abs(R)))


@dataclass(frozen=True)
class PeriodCertificate:
    period: Optional[int]
    phase: Optional[float]
    residual: float
    cutoff: int
    tolerance: float
    residuals: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def found(self) -> bool:
        return self.period is not None

    def as_dict(self) -> dict:
        return {
            "period": self.period,
            "phase": self.phase,
            "residual": self.residual,
            "cutoff": self.cutoff,
            "tolerance": self.tolerance,
        }


def certify_projective_period(U, cutoff: int = 96, tol: float = 1e-9) -> PeriodCertificate:
    """Smallest m <= cutoff with U^m = e^{i phi} 1 (max-entry residual below tol)."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    M0 = _matrix(U)
    M = M0.copy()
    residuals = np.empty(cutoff)
    for m in range(1, cutoff + 1):
        if m > 1:
            M = M @ M0
        phi, res = phase_residual(M)
        residuals[m - 1] = res
        if res < tol:
            return PeriodCertificate(m, phi, res, cutoff, tol, residuals[:m])
    return PeriodCertificate(None, None, float(residuals.min()), cutoff, tol, residuals)


def evolve_trajectory(U, initial: np.ndarray, steps: int) -> np.ndarray:
    """States psi(0..steps) with psi(n+1) = U psi(n); rows of the returned array."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    M = _matrix(U)
    out = np.empty((steps + 1, M.shape[0]), dtype=complex)
    out[0] = initial
    for n in range(steps):
        out[n + 1] = M @ out[n]
    return out


def ktheta_independence_deviation(
    sys, kr: float, power: int, ktheta_set: Sequence[float], p: float = np.pi / 2
) -> float:
    """Largest pairwise max-entry deviation among U(ktheta)**power over ktheta_set."""
    if not len(ktheta_set):
        raise ValueError("ktheta_set must be nonempty")
    sys = _as_system(sys)
    mats = [
        floquet_power(build_floquet(sys, KickParameters.from_transformed(kr, kt, p)), power)
        for kt in ktheta_set
    ]
    dev = 0.0
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            dev = max(dev, float(np.max(np.abs(mats[a] - mats[b]))))
    return dev
