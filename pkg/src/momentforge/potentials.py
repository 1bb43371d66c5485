"""Potential charts: real functions on open subsets of C^n, plus the built-in ones.

Complex Hessians use ``H[j, k] = d^2 rho / dz_j dzbar_k``. For the radial
potentials below, ``rho = f(|v|^2)`` and ``H = f'(s) I + f''(s) conj(v) v^T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class ChartBoundaryError(ValueError):
    """A finite-difference stencil or sample left the chart's domain."""

    kind = "chart-boundary"


@dataclass(frozen=True)
class PotentialChart:
    id: str
    dim: int
    f: Callable[[np.ndarray], float]
    domain: Callable[[np.ndarray], bool] = lambda v: True
    params: dict = field(default_factory=dict)
    hessian: Callable[[np.ndarray], np.ndarray] | None = None  # closed form, batched over leading axes
    invariance: str = "U(n)"
    description: str = ""

    def __call__(self, v) -> float:
        v = np.asarray(v, dtype=complex)
        if not self.domain(v):
            raise ChartBoundaryError(f"{self.id}: point {v} outside chart")
        return self.f(v)


def _sq(v):
    return float(np.vdot(v, v).real)


def radial_hessian(fp, fpp):
    """Closed-form complex Hessian of ``f(|v|^2)`` given ``f'`` and ``f''``."""

    def hess(v):
        v = np.asarray(v, dtype=complex)
        s = np.sum(np.abs(v) ** 2, axis=-1)
        n = v.shape[-1]
        eye = np.eye(n)
        a = np.asarray(fp(s))[..., None, None]
        b = np.asarray(fpp(s))[..., None, None]
        return a * eye + b * (np.conj(v)[..., :, None] * v[..., None, :])

    return hess


def norm_sq(n: int = 1) -> PotentialChart:
    return PotentialChart(
        "norm-sq",
        n,
        _sq,
        hessian=radial_hessian(lambda s: np.ones_like(s), lambda s: np.zeros_like(s)),
        description="|v|^2 on C^n",
    )


def fs_affine(n: int = 1) -> PotentialChart:
    return PotentialChart(
        "fs-affine",
        n,
        lambda v: float(np.log1p(_sq(v))),
        hessian=radial_hessian(lambda s: 1 / (1 + s), lambda s: -1 / (1 + s) ** 2),
        description="log(|v|^2 + 1) on C^n (affine chart of Fubini-Study)",
    )


def _punctured(v):
    return bool(np.any(v != 0))


def wrong_o1(c: float) -> PotentialChart:
    """``1/s + c log s`` on C^2 minus the origin, ``s = |z|^2 + |w|^2``.

    Chart ``(z, w) = (z0/z2, z1/z2)`` of P^2 minus [0:0:1]; ``1/s`` is the
    length function ``|z2|^2 / (|z0|^2 + |z1|^2)`` of O(1) over P^1 and
    ``log s`` a potential for the pulled-back Fubini-Study form.
    """
    c = float(c)
    return PotentialChart(
        "wrong-o1",
        2,
        lambda v: 1 / _sq(v) + c * np.log(_sq(v)),
        domain=_punctured,
        params={"c": c},
        hessian=radial_hessian(lambda s: -1 / s**2 + c / s, lambda s: 2 / s**3 - c / s**2),
        description="length function of O(1) plus c times the base potential",
    )


def fixed_o1(c: float) -> PotentialChart:
    """``log(1/s + 1) + c log s`` on the same chart as :func:`wrong_o1`."""
    c = float(c)
    return PotentialChart(
        "fixed-o1",
        2,
        lambda v: float(np.log1p(1 / _sq(v)) + c * np.log(_sq(v))),
        domain=_punctured,
        params={"c": c},
        hessian=radial_hessian(
            lambda s: 1 / (1 + s) + (c - 1) / s,
            lambda s: -1 / (1 + s) ** 2 - (c - 1) / s**2,
        ),
        description="log(length + 1) plus c times the base potential",
    )


def o1_log_length() -> PotentialChart:
    """``log(1/s + 1)`` alone (the fibrewise part of :func:`fixed_o1`)."""
    return PotentialChart(
        "o1-log-length",
        2,
        lambda v: float(np.log1p(1 / _sq(v))),
        domain=_punctured,
        hessian=radial_hessian(lambda s: 1 / (1 + s) - 1 / s, lambda s: -1 / (1 + s) ** 2 + 1 / s**2),
    )


def o1_glued(c: float) -> PotentialChart:
    """``log(1/s + 1) + c * log(1 + |w/z|^2)`` on ``{z != 0}``.

    The second term is a genuine pullback of a base potential from the chart
    ``{z0 != 0}`` of P^1, so it is constant along the fibres.
    """
    c = float(c)

    def f(v):
        z, w = v
        return float(np.log1p(1 / _sq(v)) + c * np.log1p(abs(w) ** 2 / abs(z) ** 2))

    return PotentialChart("o1-glued", 2, f, domain=lambda v: v[0] != 0, params={"c": c})


BUILTIN = {
    "norm-sq": lambda n=1, c=None: norm_sq(n),
    "fs-affine": lambda n=1, c=None: fs_affine(n),
    "wrong-o1": lambda n=2, c=1.0: wrong_o1(c),
    "fixed-o1": lambda n=2, c=1.0: fixed_o1(c),
}


def builtin(pid: str, n: int | None = None, c: float | None = None) -> PotentialChart:
    if pid not in BUILTIN:
        raise KeyError(f"unknown potential id {pid!r}; choose from {sorted(BUILTIN)}")
    kwargs = {}
    if n is not None:
        kwargs["n"] = n
    if c is not None:
        kwargs["c"] = c
    return BUILTIN[pid](**kwargs)
