"""Spin-j representations in the Dicke basis |j, m>, m = j, j-1, ..., -j."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, xlogy


@dataclass(frozen=True)
class SpinSystem:
    """A spin of quantum number ``j`` (integer or half-odd integer)."""

    j: float

    def __post_init__(self):
        j = self.j
        if not np.isfinite(j) or j <= 0 or abs(2 * j - round(2 * j)) > 1e-12:
            raise ValueError(f"j must be a positive integer or half-integer, got {j!r}")
        object.__setattr__(self, "j", round(2 * j) / 2)

    @property
    def twoj(self) -> int:
        return int(round(2 * self.j))

    @property
    def d(self) -> int:
        return self.twoj + 1

    @property
    def integer(self) -> bool:
        """True for integer j (even 2j)."""
        return self.twoj % 2 == 0

    @property
    def m(self) -> np.ndarray:
        return self.j - np.arange(self.d)


@dataclass(frozen=True)
class SpinOperators:
    Jx: np.ndarray
    Jy: np.ndarray
    Jz: np.ndarray

    def __iter__(self):
        return iter((self.Jx, self.Jy, self.Jz))


@dataclass(frozen=True)
class SphericalPoint:
    """Point on the unit sphere; theta is clamped to [0, pi], phi wrapped to [-pi, pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        theta = float(np.clip(self.theta, 0.0, np.pi))
        phi = float((self.phi + np.pi) % (2 * np.pi) - np.pi)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)


def _as_system(sys) -> SpinSystem:
    return sys if isinstance(sys, SpinSystem) else SpinSystem(sys)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def raising_diagonal(sys) -> np.ndarray:
    """Superdiagonal of J+ : <m+1|J+|m> = sqrt(j(j+1) - m(m+1))."""
    sys = _as_system(sys)
    m = sys.m[1:]
    return np.sqrt(sys.j * (sys.j + 1) - m * (m + 1))


@lru_cache(maxsize=64)
def _angular_momentum(sys: SpinSystem) -> SpinOperators:
    jp = np.diag(raising_diagonal(sys), 1).astype(complex)
    jm = jp.conj().T
    Jx = 0.5 * (jp + jm)
    Jy = -0.5j * (jp - jm)
    Jz = np.diag(sys.m).astype(complex)
    return SpinOperators(_readonly(Jx), _readonly(Jy), _readonly(Jz))


def build_angular_momentum(sys) -> SpinOperators:
    """Return (Jx, Jy, Jz) for spin ``j``; Jz is diagonal and descending."""
    return _angular_momentum(_as_system(sys))


@lru_cache(maxsize=64)
def _jy_eig(sys: SpinSystem):
    w, v = np.linalg.eigh(_angular_momentum(sys).Jy)
    return _readonly(w), _readonly(v)


def rotation_about_y(sys, angle: float) -> np.ndarray:
    """exp(-i angle Jy) via the Hermitian eigendecomposition of Jy."""
    sys = _as_system(sys)
    if not np.isfinite(angle):
        raise ValueError("angle must be finite")
    w, v = _jy_eig(sys)
    return (v * np.exp(-1j * angle * w)) @ v.conj().T


def exp_quadratic_z(sys, a: float) -> np.ndarray:
    """Diagonal unitary exp(-i a Jz^2)."""
    sys = _as_system(sys)
    return np.diag(np.exp(-1j * a * sys.m**2))


@lru_cache(maxsize=64)
def _z_to_x(sys: SpinSystem) -> np.ndarray:
    # R Jz R^dag = Jx for R = exp(+i pi/2 Jy)
    return _readonly(rotation_about_y(sys, -np.pi / 2))


def exp_quadratic_x(sys, a: float) -> np.ndarray:
    """exp(-i a Jx^2), built as R exp(-i a Jz^2) R^dag with R rotating Jz onto Jx."""
    sys = _as_system(sys)
    R = _z_to_x(sys)
    return (R * np.exp(-1j * a * sys.m**2)) @ R.conj().T


def coherent_amplitudes(sys, theta, phi) -> np.ndarray:
    """Coherent-state amplitudes for arrays of points; shape (..., d).

    Uses sqrt(C(2j, j-m)) cos(theta/2)^(j+m) sin(theta/2)^(j-m) exp(-i (j-m) phi),
    evaluated in log space so that large j does not overflow.
    """
    sys = _as_system(sys)
    theta = np.asarray(theta, dtype=float)[..., None]
    phi = np.asarray(phi, dtype=float)[..., None]
    up = sys.j + sys.m
    dn = sys.j - sys.m
    log_binom = gammaln(sys.twoj + 1) - gammaln(up + 1) - gammaln(dn + 1)
    logmag = 0.5 * log_binom + xlogy(up, np.cos(theta / 2)) + xlogy(dn, np.sin(theta / 2))
    return np.exp(logmag) * np.exp(-1j * dn * phi)


def coherent_state(sys, point: SphericalPoint) -> np.ndarray:
    if not isinstance(point, SphericalPoint):
        point = SphericalPoint(*point)
    return coherent_amplitudes(sys, point.theta, point.phi)
