"""Husimi fields, single-qubit entanglement entropy, and fidelity rate functions."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .floquet import FloquetOperator
from .spin import SphericalPoint, _as_system, coherent_amplitudes, raising_diagonal

Z_FLOOR = 1e-300


@dataclass(frozen=True)
class ObservableField:
    thetas: np.ndarray
    phis: np.ndarray
    values: np.ndarray
    kind: str = "field"
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def theta_count(self) -> int:
        return len(self.thetas)

    @property
    def phi_count(self) -> int:
        return len(self.phis)

    def nearest(self, theta: float, phi: float) -> tuple[int, int]:
        """Grid indices of the node closest to (theta, phi), with phi taken mod 2 pi."""
        it = int(np.argmin(np.abs(self.thetas - theta)))
        dphi = np.angle(np.exp(1j * (self.phis - phi)))
        return it, int(np.argmin(np.abs(dphi)))

    def at(self, theta: float, phi: float) -> float:
        return float(self.values[self.nearest(theta, phi)])


def closed_grid(theta_count: int, phi_count: int):
    """Nodes including both poles and phi in [-pi, pi]; suited to trapezoid quadrature."""
    if theta_count < 2 or phi_count < 2:
        raise ValueError("grid dimensions must be >= 2")
    return np.linspace(0, np.pi, theta_count), np.linspace(-np.pi, np.pi, phi_count)


def open_grid(theta_count: int, phi_count: int):
    """Cell-centred theta in (0, pi) and half-open phi in [-pi, pi)."""
    if theta_count < 2 or phi_count < 2:
        raise ValueError("grid dimensions must be >= 2")
    thetas = (np.arange(theta_count) + 0.5) * np.pi / theta_count
    phis = -np.pi + np.arange(phi_count) * 2 * np.pi / phi_count
    return thetas, phis


def coherent_grid_states(sys, thetas, phis) -> np.ndarray:
    """Coherent states for every grid node, theta outer / phi inner; shape (T*P, d)."""
    T, P = np.meshgrid(thetas, phis, indexing="ij")
    return coherent_amplitudes(sys, T.ravel(), P.ravel())


def husimi_field(state, sys, grid=(100, 100), nodes: str = "closed") -> ObservableField:
    """Q(theta, phi) = <theta,phi|rho|theta,phi> for a pure state vector or density matrix."""
    sys = _as_system(sys)
    thetas, phis = (closed_grid if nodes == "closed" else open_grid)(*grid)
    C = coherent_grid_states(sys, thetas, phis)
    state = np.asarray(state)
    if state.ndim == 1:
        q = np.abs(C.conj() @ state) ** 2
    else:
        q = np.einsum("si,ij,sj->s", C.conj(), state, C).real
    return ObservableField(thetas, phis, q.reshape(len(thetas), len(phis)), kind="husimi")


def husimi_normalization(f: ObservableField, sys) -> float:
    """(2j+1)/(4 pi) * integral of Q sin(theta) dtheta dphi by product trapezoid rule."""
    sys = _as_system(sys)
    inner = np.trapezoid(f.values, f.phis, axis=1)
    return sys.d / (4 * np.pi) * np.trapezoid(inner * np.sin(f.thetas), f.thetas)


def spin_expectations(states: np.ndarray, sys) -> np.ndarray:
    """<Jx>, <Jy>, <Jz> for the last-axis state vectors; shape (..., 3)."""
    sys = _as_system(sys)
    psi = np.asarray(states)
    prob = np.abs(psi) ** 2
    jz = prob @ sys.m
    jplus = np.sum(psi[..., :-1].conj() * raising_diagonal(sys) * psi[..., 1:], axis=-1)
    return np.stack([jplus.real, jplus.imag, jz], axis=-1)


_PAULI = np.array(
    [[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex
)


def reduced_qubit_density(state: np.ndarray, sys) -> np.ndarray:
    """Single-qubit marginal (1 + <J>.sigma / j) / 2 of a symmetric 2j-qubit state."""
    sys = _as_system(sys)
    b = spin_expectations(state, sys) / sys.j
    return 0.5 * (np.eye(2) + np.tensordot(b, _PAULI, axes=(-1, 0)))


def binary_entropy_from_bloch(r: np.ndarray) -> np.ndarray:
    """Entropy in bits of a qubit whose Bloch vector has length r."""
    r = np.clip(np.asarray(r, dtype=float), 0.0, 1.0)
    lam = np.stack([(1 + r) / 2, (1 - r) / 2])
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(lam > 0, -lam * np.log2(np.where(lam > 0, lam, 1.0)), 0.0)
    return terms.sum(axis=0)


def von_neumann_entropy(rho: np.ndarray, tol: float = 1e-10) -> float:
    """-Tr rho log2 rho for a valid density matrix (tiny negative eigenvalues clamped)."""
    rho = np.asarray(rho)
    if np.max(np.abs(rho - rho.conj().T)) > tol or abs(np.trace(rho) - 1) > tol:
        raise ValueError("not a Hermitian unit-trace matrix")
    lam = np.linalg.eigvalsh(rho)
    if lam.min() < -tol or lam.max() > 1 + tol:
        raise ValueError(f"eigenvalues {lam} outside [0, 1]")
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)))


def time_averaged_entropy(U: FloquetOperator, initial, steps: int) -> float:
    """Mean single-qubit entropy over n = 0..steps-1 starting from a coherent state."""
    return float(_entropy_averages(U, [initial], steps)[0])


CHUNK = 256


def _entropy_chunk(U: FloquetOperator, thetas, phis, steps: int) -> np.ndarray:
    sys = U.sys
    lam, Z = U.schur
    phase = np.angle(lam)
    c = coherent_amplitudes(sys, thetas, phis) @ Z.conj()  # rows hold Z^dag psi0
    acc = np.zeros(len(thetas))
    for n in range(steps):
        psi = (c * np.exp(1j * n * phase)) @ Z.T
        r = np.linalg.norm(spin_expectations(psi, sys), axis=-1) / sys.j
        acc += binary_entropy_from_bloch(r)
    return acc / steps


def _entropy_averages(U: FloquetOperator, points, steps: int, workers: int = 1) -> np.ndarray:
    # Chunk boundaries are fixed, so results do not depend on the worker count.
    if steps < 1:
        raise ValueError("steps must be >= 1")
    pts = [p if isinstance(p, SphericalPoint) else SphericalPoint(*p) for p in points]
    thetas = np.array([p.theta for p in pts])
    phis = np.array([p.phi for p in pts])
    U.schur
    bounds = [(lo, min(lo + CHUNK, len(pts))) for lo in range(0, len(pts), CHUNK)]

    def job(b):
        return _entropy_chunk(U, thetas[b[0]:b[1]], phis[b[0]:b[1]], steps)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(job, bounds))
    else:
        parts = [job(b) for b in bounds]
    return np.concatenate(parts) if parts else np.empty(0)


def landscape_cost(d: int, nodes: int, steps: int) -> float:
    """Rough flop count of a landscape run: one d x d product per node and step."""
    return 8.0 * d * d * nodes * steps


def entropy_landscape(U: FloquetOperator, grid=(64, 64), steps: int = 500, workers: int = 1) -> ObservableField:
    """Long-time-averaged entropy over an open (theta, phi) grid, theta outer / phi inner."""
    thetas, phis = open_grid(*grid)
    T, P = np.meshgrid(thetas, phis, indexing="ij")
    vals = _entropy_averages(U, list(zip(T.ravel(), P.ravel())), steps, workers)
    return ObservableField(thetas, phis, vals.reshape(T.shape), kind="entropy")


@dataclass(frozen=True)
class FidelitySeries:
    Z: np.ndarray
    R: np.ndarray
    j: float
    params: dict
    initial: tuple

    def as_rows(self):
        return [(n, z, r) for n, (z, r) in enumerate(zip(self.Z, self.R))]


def fidelity_series(U: FloquetOperator, initial, steps: int) -> FidelitySeries:
    """Z(n) = |<psi0|U^n|psi0>|^2 and R(n) = -ln Z(n) / (2j+1) for n = 0..steps-1."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    pt = initial if isinstance(initial, SphericalPoint) else SphericalPoint(*initial)
    psi0 = coherent_amplitudes(U.sys, pt.theta, pt.phi)
    lam, Zm = U.schur
    w = np.abs(Zm.conj().T @ psi0) ** 2
    n = np.arange(steps)
    amp = np.exp(1j * np.outer(n, np.angle(lam))) @ w
    Zn = np.clip(np.abs(amp) ** 2, 0.0, 1.0)
    R = -np.log(np.maximum(Zn, Z_FLOOR)) / U.sys.d
    return FidelitySeries(Zn, R, U.sys.j, U.params.as_dict(), (pt.theta, pt.phi))


def averaged_rate(U: FloquetOperator, initial, steps: int) -> float:
    return float(fidelity_series(U, initial, steps).R.mean())


def great_circle(t1, p1, t2, p2):
    c = np.cos(t1) * np.cos(t2) + np.sin(t1) * np.sin(t2) * np.cos(p1 - p2)
    return np.arccos(np.clip(c, -1.0, 1.0))


def local_minima(f: ObservableField, size: int = 5) -> np.ndarray:
    """Grid indices of local minima (periodic in phi, reflecting in theta)."""
    from scipy import ndimage

    V = f.values
    padded = np.pad(V, ((size, size), (0, 0)), mode="reflect")
    mins = ndimage.minimum_filter(padded, size=size, mode=("nearest", "wrap"))[size:-size]
    return np.argwhere(V == mins)


def island_pair_separation(f: ObservableField, theta0: float, phi0: float, radius: float = 0.6) -> float:
    """Angular distance between the two deepest local minima within ``radius`` of a point.

    Low-entropy islands near the trivial fixed points come in symmetric pairs;
    this distance shrinks as the pair merges onto the point.
    """
    idx = local_minima(f)
    cand = [
        (f.values[i, k], f.thetas[i], f.phis[k])
        for i, k in idx
        if great_circle(f.thetas[i], f.phis[k], theta0, phi0) <= radius
    ]
    if len(cand) < 2:
        return 0.0
    cand.sort(key=lambda c: c[0])
    (_, t1, p1), (_, t2, p2) = cand[:2]
    return float(great_circle(t1, p1, t2, p2))


def island_gap(f: ObservableField, theta0: float, phi0: float, radius: float = 0.6) -> float:
    """Field value at the node nearest a point minus the lowest value within ``radius``.

    Zero once the low-entropy islands around the point have merged onto it.
    """
    T, P = np.meshgrid(f.thetas, f.phis, indexing="ij")
    near = great_circle(T, P, theta0, phi0) <= radius
    return float(f.at(theta0, phi0) - f.values[near].min())
