"""Complex Hessians, positivity scans and the Hamiltonian equation on charts.

Real 2-forms are evaluated on tangent vectors written as complex vectors. For
``omega = 2i d d-bar rho = -dd^c rho`` with complex Hessian ``H``,
``omega(X, Y) = -4 Im(X^T H conj(Y))``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import moment_numerics as mn
from .potentials import (
    ChartBoundaryError,
    PotentialChart,
    builtin,
    fixed_o1,
    fs_affine,
    norm_sq,
    wrong_o1,
)

__all__ = [
    "ChartBoundaryError",
    "HermitianSample",
    "NoCOnGridError",
    "PotentialChart",
    "SamplerSpec",
    "ScanReport",
    "complex_hessian_fd",
    "hamiltonian_residual",
    "min_c_search",
    "positivity_scan",
    "wrong_metric_matrix",
]


class NoCOnGridError(ValueError):
    kind = "no-c-on-grid"


@dataclass
class HermitianSample:
    point: np.ndarray
    H: np.ndarray
    source: str  # "closed-form" | "finite-difference"

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.H)[0])


def hessian_step(v) -> float:
    # second differences lose ~eps/h^2, so the step is larger than for gradients
    return 1e-4 * (1.0 + float(np.linalg.norm(v)))


def complex_hessian_fd(pot: PotentialChart, v, step=None, richardson=False) -> HermitianSample:
    """``H[j, k] = d^2 rho / dz_j dzbar_k`` from 4-point central differences in real coordinates.

    With ``richardson=True`` the step-``h`` and step-``h/2`` estimates are
    combined to cancel the ``h^2`` error term; the default step is then
    ``1e-3 * (1 + |v|)``.
    """
    v = np.asarray(v, dtype=complex)
    if richardson:
        h = 1e-3 * (1.0 + float(np.linalg.norm(v))) if step is None else step
        coarse = complex_hessian_fd(pot, v, h).H
        fine = complex_hessian_fd(pot, v, h / 2).H
        return HermitianSample(v, (4 * fine - coarse) / 3, "finite-difference")
    n = v.shape[0]
    h = hessian_step(v) if step is None else step
    basis = []
    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1
        basis.append(e)
    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1j
        basis.append(e)

    def f(p):
        if not pot.domain(p):
            raise ChartBoundaryError(f"finite-difference stencil leaves chart {pot.id}")
        return pot.f(p)

    m = 2 * n
    R = np.empty((m, m))
    for a in range(m):
        for b in range(a, m):
            ea, eb = h * basis[a], h * basis[b]
            val = (f(v + ea + eb) - f(v + ea - eb) - f(v - ea + eb) + f(v - ea - eb)) / (4 * h * h)
            R[a, b] = R[b, a] = val
    xx, yy, xy, yx = R[:n, :n], R[n:, n:], R[:n, n:], R[n:, :n]
    H = 0.25 * ((xx + yy) + 1j * (xy - yx))
    H = 0.5 * (H + H.conj().T)
    return HermitianSample(v, H, "finite-difference")


def wrong_metric_matrix(z, w, c) -> HermitianSample:
    """Closed-form Gram matrix of ``i d d-bar chi_h + c pi^* omega_FS`` on the O(1) chart.

    Returned exactly as displayed in the source, i.e. in the ``X^* M X``
    convention; this is the transpose of ``d^2/dz_j dzbar_k`` of
    ``1/s + c log s`` (see :func:`momentforge.potentials.wrong_o1`).
    """
    z, w, c = complex(z), complex(w), float(c)
    a, b = abs(z) ** 2, abs(w) ** 2
    s = a + b
    if s == 0:
        raise ValueError("origin-excluded: (z, w) = (0, 0) is not in the chart")
    M = np.array(
        [
            [a * (1 + c * b) - b + c * b * b, (2 - c * s) * z * np.conj(w)],
            [(2 - c * s) * np.conj(z) * w, (1 + c * a) * b - a + c * a * a],
        ],
        dtype=complex,
    )
    return HermitianSample(np.array([z, w]), M / s**3, "closed-form")


def wrong_metric_matrix_batch(points, c) -> np.ndarray:
    z, w = points[:, 0], points[:, 1]
    a, b = np.abs(z) ** 2, np.abs(w) ** 2
    s = a + b
    M = np.empty((len(points), 2, 2), dtype=complex)
    M[:, 0, 0] = a * (1 + c * b) - b + c * b * b
    M[:, 0, 1] = (2 - c * s) * z * np.conj(w)
    M[:, 1, 0] = (2 - c * s) * np.conj(z) * w
    M[:, 1, 1] = (1 + c * a) * b - a + c * a * a
    return M / (s**3)[:, None, None]


# --------------------------------------------------------------------------
# Scans


@dataclass(frozen=True)
class SamplerSpec:
    """Log-uniform radius in ``[r_min, r_max]`` times a uniform direction on the sphere."""

    kind: str = "log-radial"
    n: int = 10_000
    r_min: float = 1e-3
    r_max: float = 1e2

    def sample(self, dim: int, seed: int) -> np.ndarray:
        if self.kind != "log-radial":
            raise ValueError(f"unknown sampler {self.kind!r}")
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        g = rng.standard_normal((self.n, 2 * dim))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        r = np.exp(rng.uniform(np.log(self.r_min), np.log(self.r_max), self.n))
        pts = g[:, :dim] + 1j * g[:, dim:]
        return pts * r[:, None]


@dataclass
class ScanReport:
    potential: str
    c: float | None
    samples: int
    seed: int
    sampler: dict
    min_eigenvalue: float
    witness: list  # [re, im] pairs
    verdict: str  # "pd-on-samples" | "counterexample"
    note: str = "sampled check only: pd-on-samples is not a proof of positivity"

    def to_json(self) -> dict:
        return asdict(self)

    def witness_point(self) -> np.ndarray:
        return np.array([complex(re, im) for re, im in self.witness])


def _scan_hessians(pid, pot, pts):
    if pid == "wrong-o1":
        return wrong_metric_matrix_batch(pts, pot.params["c"])
    if pot.hessian is not None:
        return pot.hessian(pts)
    return np.array([complex_hessian_fd(pot, p).H for p in pts])


def _resolve(potential, c, dim):
    if isinstance(potential, PotentialChart):
        return potential.id, potential
    return potential, builtin(potential, n=dim, c=c)


def positivity_scan(potential, c=None, sampler: SamplerSpec = SamplerSpec(), seed: int = 0, dim=None) -> ScanReport:
    """Smallest Hessian eigenvalue over the sampled points, with the worst point."""
    pid, pot = _resolve(potential, c, dim)
    pts = sampler.sample(pot.dim, seed)
    eig = np.linalg.eigvalsh(_scan_hessians(pid, pot, pts))[:, 0]
    i = int(np.argmin(eig))
    lam = float(eig[i])
    witness = pts[i]
    # re-evaluate the witness on its own
    again = float(np.linalg.eigvalsh(_scan_hessians(pid, pot, witness[None, :]))[0, 0])
    if abs(again - lam) > 1e-8 * max(1.0, abs(lam)):
        raise AssertionError("scan witness does not reproduce its eigenvalue")
    return ScanReport(
        potential=pid,
        c=pot.params.get("c"),
        samples=sampler.n,
        seed=seed,
        sampler=asdict(sampler),
        min_eigenvalue=lam,
        witness=[[float(x.real), float(x.imag)] for x in witness],
        verdict="pd-on-samples" if lam > 0 else "counterexample",
    )


@dataclass
class MinCReport:
    threshold: float
    verdicts: dict  # c -> verdict
    monotone: bool
    failing_below: ScanReport | None
    scans: list = field(default_factory=list)


def min_c_search(potential="fixed-o1", sampler: SamplerSpec = SamplerSpec(), seed: int = 0, c_grid=(0.25, 0.5, 1, 2, 4, 8)) -> MinCReport:
    """Smallest grid value of ``c`` whose scan reports pd-on-samples."""
    grid = [float(c) for c in c_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("c-grid must be strictly increasing")
    scans = [positivity_scan(potential, c, sampler, seed) for c in grid]
    ok = [s.verdict == "pd-on-samples" for s in scans]
    if not any(ok):
        raise NoCOnGridError("no-c-on-grid: no grid value gives pd-on-samples")
    first = ok.index(True)
    monotone = all(ok[first:])
    return MinCReport(
        threshold=grid[first],
        verdicts={c: s.verdict for c, s in zip(grid, scans)},
        monotone=monotone,
        failing_below=scans[first - 1] if first > 0 else None,
        scans=scans,
    )


# --------------------------------------------------------------------------
# Hamiltonian equation


def omega(H, X, Y) -> float:
    """``omega(X, Y)`` for ``omega = 2i sum H_jk dz_j ^ dzbar_k``."""
    return float(-4 * np.imag(X @ H @ np.conj(Y)))


def default_momentum(pot: PotentialChart, act: mn.LieAlgebraAction):
    """Closed-form momentum map attached to a built-in potential, else the d^c formula."""
    if pot.id == "norm-sq":
        return lambda v: mn.momentum_affine(act, v)
    if pot.id == "fs-affine":
        ext = act.extended()
        return lambda v: mn.momentum_projective(ext, np.append(v, 1.0))
    return lambda v: mn.momentum_from_potential(pot, act, v)


def hamiltonian_residual(pot: PotentialChart, act: mn.LieAlgebraAction, points=None, directions=None, seed=0, samples=100, momentum=None) -> float:
    """``max |d mu^xi(X) - omega(xi_X, X)|`` over sample points and tangent directions."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    n = pot.dim
    if points is None:
        pts = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
        pts *= 0.7
    else:
        pts = np.asarray(points, dtype=complex)
    if directions is None:
        dirs = rng.standard_normal((len(pts), n)) + 1j * rng.standard_normal((len(pts), n))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    else:
        dirs = np.asarray(directions, dtype=complex)
    mu = momentum or default_momentum(pot, act)
    worst = 0.0
    for v, X in zip(pts, dirs):
        if not pot.domain(v):
            raise ChartBoundaryError(f"sample outside chart {pot.id}")
        h = mn.fd_step(v)
        plus, minus = v + h * X, v - h * X
        if not (pot.domain(plus) and pot.domain(minus)):
            raise ChartBoundaryError(f"finite-difference stencil leaves chart {pot.id}")
        dmu = (mu(plus) - mu(minus)) / (2 * h)
        H = complex_hessian_fd(pot, v).H
        for j in range(act.rank):
            xi = act.apply(j, v)
            worst = max(worst, abs(dmu[j] - omega(H, xi, X)))
    return worst


__all__ += ["builtin", "fixed_o1", "fs_affine", "norm_sq", "wrong_o1", "omega", "MinCReport"]
