"""Quasi-energy spectra, degeneracy profiles, and higher-order spacing-ratio statistics."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .floquet import FloquetOperator
from .spin import _jy_eig

TWO_PI = 2 * np.pi
DEFAULT_EDGES = np.linspace(0.0, 4.0, 41)


@dataclass(frozen=True)
class QuasiEnergySpectrum:
    phases: np.ndarray
    j: Optional[float] = None
    params: dict = field(default_factory=dict)
    sector: Optional[str] = None

    def __len__(self):
        return len(self.phases)


def _wrap_sorted(lam: np.ndarray, unit_tol: float) -> np.ndarray:
    dev = np.max(np.abs(np.abs(lam) - 1.0)) if len(lam) else 0.0
    if dev > unit_tol:
        raise ValueError(f"eigenvalue modulus deviates from 1 by {dev:.2e}; input not unitary")
    ph = np.mod(np.angle(lam), TWO_PI)
    ph[ph >= TWO_PI] = 0.0
    return np.sort(ph)


def quasi_energies(U, unit_tol: float = 1e-8) -> QuasiEnergySpectrum:
    """Eigenphases of U wrapped to [0, 2 pi), ascending."""
    M = U.matrix if isinstance(U, FloquetOperator) else np.asarray(U)
    ph = _wrap_sorted(np.linalg.eigvals(M), unit_tol)
    if isinstance(U, FloquetOperator):
        return QuasiEnergySpectrum(ph, U.sys.j, U.params.as_dict())
    return QuasiEnergySpectrum(ph)


def parity_sectors(U: FloquetOperator, unit_tol: float = 1e-8) -> list:
    """Spectra of U restricted to the eigenspaces of exp(-i pi Jy).

    The pi rotation about y leaves Jx^2, Jz^2 and Jy invariant, so it commutes
    with every DKT Floquet operator.  Its eigenspaces are spanned by Jy
    eigenvectors grouped by the parity of j - m.
    """
    w, v = _jy_eig(U.sys)
    parity = np.rint(U.sys.j - w).astype(int) % 2
    out = []
    for s in (0, 1):
        V = v[:, parity == s]
        block = V.conj().T @ U.matrix @ V
        ph = _wrap_sorted(np.linalg.eigvals(block), unit_tol)
        out.append(QuasiEnergySpectrum(ph, U.sys.j, U.params.as_dict(), sector="even" if s == 0 else "odd"))
    return out


def degeneracy_profile(spec, tol: float = 1e-8) -> list:
    """Single-linkage clusters of phases on the circle: [(representative phase, multiplicity)]."""
    ph = np.sort(np.asarray(spec.phases if isinstance(spec, QuasiEnergySpectrum) else spec))
    if len(ph) == 0:
        return []
    breaks = np.flatnonzero(np.diff(ph) > tol) + 1
    groups = np.split(ph, breaks)
    if len(groups) > 1 and (ph[0] + TWO_PI - ph[-1]) <= tol:
        groups[0] = np.concatenate([groups.pop() - TWO_PI, groups[0]])
    out = []
    for g in groups:
        rep = float(np.angle(np.mean(np.exp(1j * g))) % TWO_PI)
        out.append((rep, len(g)))
    return sorted(out)


def degeneracy_summary(profile: list, max_clusters: int = 24) -> tuple[int, float]:
    """(number of clusters, fraction of levels held by the largest max_clusters clusters)."""
    counts = sorted((c for _, c in profile), reverse=True)
    total = sum(counts)
    return len(counts), sum(counts[:max_clusters]) / total if total else 0.0


@dataclass(frozen=True)
class RatioSample:
    order: int
    ratios: np.ndarray
    dropped: int

    @property
    def mean_ratio(self) -> float:
        """Mean of min(r, 1/r), finite for every ensemble."""
        return float(np.mean(np.minimum(self.ratios, 1.0 / self.ratios)))

    def __add__(self, other: "RatioSample") -> "RatioSample":
        if other.order != self.order:
            raise ValueError("cannot pool ratios of different orders")
        return RatioSample(self.order, np.concatenate([self.ratios, other.ratios]), self.dropped + other.dropped)


def _raw_ratios(levels: np.ndarray, order: int, floor: float):
    E = np.sort(levels)
    k = order
    upper = E[2 * k:] - E[k:-k]
    lower = E[k:-k] - E[:-2 * k]
    keep = (lower >= floor) & (upper >= floor)
    return upper[keep] / lower[keep], int(np.count_nonzero(~keep))


def spacing_ratios(spec, order: int = 1, degeneracy_floor: float = 1e-12, min_count: int = 10) -> RatioSample:
    """r = (E[i+2k] - E[i+k]) / (E[i+k] - E[i]) on the sorted levels.

    Windows whose gaps fall below ``degeneracy_floor`` are dropped and counted.
    The circle is treated linearly (no wrap-around gap).
    """
    if order not in (1, 2, 3, 4):
        raise ValueError("order must be in {1, 2, 3, 4}")
    levels = np.asarray(spec.phases if isinstance(spec, QuasiEnergySpectrum) else spec, dtype=float)
    if len(levels) <= 2 * order:
        raise ValueError("spectrum too short for this order")
    r, dropped = _raw_ratios(levels, order, degeneracy_floor)
    if len(r) < min_count:
        raise ValueError(f"only {len(r)} valid ratios remain (need {min_count})")
    return RatioSample(order, r, dropped)


def pooled_ratios(spectra, order: int = 1, degeneracy_floor: float = 1e-12) -> RatioSample:
    """Ratios computed within each spectrum, then concatenated."""
    out = None
    for s in spectra:
        r = spacing_ratios(s, order, degeneracy_floor)
        out = r if out is None else out + r
    return out


@dataclass(frozen=True)
class RatioHistogram:
    edges: np.ndarray
    density: np.ndarray
    count: int
    order: int
    mean_ratio: float
    dropped: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def mass(self) -> np.ndarray:
        return self.density * np.diff(self.edges)

    def rows(self):
        return list(zip(self.edges[:-1], self.edges[1:], self.density))


def ratio_histogram(sample: RatioSample, edges=DEFAULT_EDGES, **meta) -> RatioHistogram:
    """Normalized histogram; ratios above the last edge are counted in the last bin."""
    edges = np.asarray(edges, dtype=float)
    r = np.minimum(sample.ratios, np.nextafter(edges[-1], 0))
    counts, _ = np.histogram(r, bins=edges)
    density = counts / (counts.sum() * np.diff(edges))
    return RatioHistogram(edges, density, len(sample.ratios), sample.order, sample.mean_ratio, sample.dropped, dict(meta))


def _reference(pool: list, order: int, edges, **meta) -> RatioHistogram:
    r, dropped = [], 0
    for lv in pool:
        rr, dd = _raw_ratios(lv, order, 1e-12)
        r.append(rr)
        dropped += dd
    return ratio_histogram(RatioSample(order, np.concatenate(r), dropped), edges, **meta)


def poisson_levels(count: int, size: int, seed) -> list:
    """``count`` spectra of ``size`` levels with independent unit-mean exponential gaps."""
    if count * size < 10_000:
        raise ValueError("count * size must be at least 1e4")
    out = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        out.append(np.cumsum(rng.exponential(1.0, size)))
    return out


def goe_levels(count: int, dim: int, seed) -> list:
    """Central 50% of eigenvalues of ``count`` GOE matrices of size ``dim``."""
    if dim < 100:
        raise ValueError("dim must be >= 100")
    lo, hi = dim // 4, dim - dim // 4
    out = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        A = rng.normal(size=(dim, dim))
        H = (A + A.T) / 2  # diagonal variance 1, off-diagonal 1/2
        out.append(np.linalg.eigvalsh(H)[lo:hi])
    return out


def sample_poisson_reference(count: int = 200, size: int = 1000, seed=0, order: int = 1, edges=DEFAULT_EDGES) -> RatioHistogram:
    return _reference(poisson_levels(count, size, seed), order, edges, ensemble="poisson", seed=seed, members=count, size=size)


def sample_goe_reference(count: int = 200, dim: int = 400, seed=0, order: int = 1, edges=DEFAULT_EDGES) -> RatioHistogram:
    return _reference(goe_levels(count, dim, seed), order, edges, ensemble="goe", seed=seed, members=count, size=dim)


def compare_to_reference(sample: RatioHistogram, reference: RatioHistogram) -> float:
    """Total-variation distance between the binned distributions."""
    if sample.edges.shape != reference.edges.shape or not np.allclose(sample.edges, reference.edges, rtol=0, atol=1e-12):
        raise ValueError("histograms have different bin edges")
    return float(0.5 * np.sum(np.abs(sample.mass - reference.mass)))
