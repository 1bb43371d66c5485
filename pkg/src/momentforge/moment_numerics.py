"""Momentum maps for linear actions of compact groups on C^N and P(C^N + C).

Hermitian products are conjugate-linear in the second slot,
``<a, b> = sum a_i conj(b_i)``, and ``d^c f = df o J`` with ``J`` the
multiplication by ``i``. With these conventions the weight-1 circle action on C
has momentum map ``-2 |v|^2`` for the form ``-dd^c |v|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .potentials import ChartBoundaryError, PotentialChart


class DivergedError(RuntimeError):
    kind = "diverged"


@dataclass(frozen=True)
class LieAlgebraAction:
    """A basis of a Lie algebra acting linearly on C^N.

    Either ``weights`` (torus shortcut: ``xi_j`` acts as ``i * diag(weights[j])``)
    or ``matrices`` (anti-Hermitian N x N) is set.
    """

    N: int
    weights: np.ndarray | None = None
    matrices: tuple | None = None

    @classmethod
    def torus(cls, weights) -> "LieAlgebraAction":
        A = np.atleast_2d(np.asarray(weights, dtype=float))
        return cls(A.shape[1], weights=A)

    @classmethod
    def from_matrices(cls, mats, tol=1e-12) -> "LieAlgebraAction":
        mats = tuple(np.asarray(m, dtype=complex) for m in mats)
        if not mats:
            raise ValueError("need at least one basis element")
        N = mats[0].shape[0]
        for m in mats:
            if m.shape != (N, N):
                raise ValueError("basis matrices must be square and of equal size")
            if np.max(np.abs(m + m.conj().T)) > tol:
                raise ValueError("basis matrix is not anti-Hermitian")
        return cls(N, matrices=mats)

    @property
    def rank(self) -> int:
        return len(self.weights) if self.weights is not None else len(self.matrices)

    def apply(self, j: int, v) -> np.ndarray:
        """Fundamental vector field ``xi_j`` at ``v`` (``d/dt exp(t xi_j) v`` at 0)."""
        v = np.asarray(v, dtype=complex)
        if self.weights is not None:
            return 1j * self.weights[j] * v
        return self.matrices[j] @ v

    def extended(self) -> "LieAlgebraAction":
        """The same action on ``C^N + C`` with the last factor trivial."""
        if self.weights is not None:
            return LieAlgebraAction.torus(np.hstack([self.weights, np.zeros((self.rank, 1))]))
        mats = []
        for m in self.matrices:
            big = np.zeros((self.N + 1, self.N + 1), dtype=complex)
            big[: self.N, : self.N] = m
            mats.append(big)
        return LieAlgebraAction(self.N + 1, matrices=tuple(mats))

    def group_element(self, t) -> np.ndarray:
        """Torus element ``exp(sum t_j xi_j)`` acting diagonally (torus shortcut only)."""
        if self.weights is None:
            raise ValueError("group elements only for the torus shortcut")
        return np.exp(1j * (np.asarray(t, dtype=float) @ self.weights))


def _shift(shift, k):
    return np.zeros(k) if shift is None else np.asarray(shift, dtype=float)


def hermitian(a, b) -> complex:
    """``<a, b>``, conjugate-linear in ``b``."""
    return complex(np.vdot(b, a))


def momentum_affine(act: LieAlgebraAction, v, shift=None) -> np.ndarray:
    """``mu^xi(v) = 2 <i xi v, v> - shift`` for each basis element."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (act.N,):
        raise ValueError("point has wrong dimension")
    vals = [2 * hermitian(1j * act.apply(j, v), v).real for j in range(act.rank)]
    return np.asarray(vals) - _shift(shift, act.rank)


def momentum_projective(act_w: LieAlgebraAction, w, shift=None) -> np.ndarray:
    """``mu^xi([w]) = 2 <i xi w, w> / <w, w> - shift``; invariant under ``w -> lambda w``."""
    w = np.asarray(w, dtype=complex)
    if w.shape != (act_w.N,):
        raise ValueError("point has wrong dimension")
    norm = hermitian(w, w).real
    if norm == 0:
        raise ValueError("homogeneous coordinates must not all vanish")
    vals = [2 * hermitian(1j * act_w.apply(j, w), w).real / norm for j in range(act_w.rank)]
    return np.asarray(vals) - _shift(shift, act_w.rank)


def fd_step(v) -> float:
    return 1e-5 * max(1.0, float(np.linalg.norm(v)))


def directional_derivative(pot: PotentialChart, v, direction, step=None) -> float:
    """Central difference of ``pot`` at ``v`` along a real tangent direction (given in C^n)."""
    v = np.asarray(v, dtype=complex)
    d = np.asarray(direction, dtype=complex)
    size = float(np.linalg.norm(d))
    if size == 0:
        return 0.0
    h = (fd_step(v) if step is None else step) / size
    plus, minus = v + h * d, v - h * d
    if not (pot.domain(plus) and pot.domain(minus)):
        raise ChartBoundaryError(f"finite-difference stencil leaves chart {pot.id}")
    return (pot.f(plus) - pot.f(minus)) / (2 * h)


def momentum_from_potential(pot: PotentialChart, act: LieAlgebraAction, v, shift=None, step=None) -> np.ndarray:
    """``mu^xi(v) = d rho(J xi_V(v))`` by central differences."""
    v = np.asarray(v, dtype=complex)
    if not pot.domain(v):
        raise ChartBoundaryError(f"point outside chart {pot.id}")
    vals = [directional_derivative(pot, v, 1j * act.apply(j, v), step) for j in range(act.rank)]
    return np.asarray(vals) - _shift(shift, act.rank)


def torus_momentum(weights, z) -> np.ndarray:
    """Analytic momentum map of the torus shortcut: ``-2 A |z|^2``."""
    A = np.atleast_2d(np.asarray(weights, dtype=float))
    return -2 * A @ (np.abs(np.asarray(z, dtype=complex)) ** 2)


def orbit_distance_minimize(weights, z, target, seed=0, iters=200, bound=1e12) -> float:
    """Distance from the real torus orbit of ``z`` to the fibre over ``target``.

    Works with ``s(x) = |z|^2 exp(2 A^T x)`` for ``x`` in R^k, i.e. with the
    orbit of ``exp(x)`` acting with weights ``A``. The residual
    ``|A s(x) - target|`` is the gradient norm of the convex function
    ``phi(x) = sum(s(x))/2 - <target, x>``, which is minimized by damped Newton
    steps (capped length, Armijo backtracking). Returns the final residual,
    which is ``|mu - level| / 2`` for ``level = -2 * target``.
    """
    A = np.atleast_2d(np.asarray(weights, dtype=float))
    s0 = np.abs(np.asarray(z, dtype=complex)) ** 2
    b = np.asarray([float(t) for t in target])
    k = A.shape[0]
    rng = np.random.default_rng(seed)
    x = 0.1 * rng.standard_normal(k)

    live = s0 > 0

    def state(x):
        s = np.zeros_like(s0)
        with np.errstate(over="ignore"):
            s[live] = s0[live] * np.exp(2 * (A.T @ x)[live])
        return s, 0.5 * s.sum() - b @ x, A @ s - b

    s, phi, g = state(x)
    for _ in range(iters):
        if np.linalg.norm(g) < 1e-14:
            break
        H = 2 * (A * s) @ A.T
        p = np.linalg.lstsq(H, -g, rcond=1e-14)[0]
        if not np.all(np.isfinite(p)) or p @ g >= 0:
            p = -g
        size = np.linalg.norm(p)
        if size > 10.0:
            p *= 10.0 / size
        t = 1.0
        while t > 1e-12:
            s_new, phi_new, g_new = state(x + t * p)
            if np.isfinite(phi_new) and phi_new <= phi + 1e-4 * t * (g @ p):
                break
            t *= 0.5
        else:
            break
        x = x + t * p
        s, phi, g = s_new, phi_new, g_new
        if np.max(np.abs(x)) > bound:
            raise DivergedError("orbit iterate exceeded magnitude bound")
    return float(np.linalg.norm(g))
