"""Continuation of the solutions of a square system p(x, t) = q(x, t) = 0 in (C*)^2.

The coefficients move along a complex pencil: every coefficient is
``c0 + lam * c1``.  Loops in the lam-plane are ``LoopSpec`` objects from the
univariate tracker, so the same lasso construction serves both settings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .numeric import LoopSpec, TrackingError
from .permgroup import Perm

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LaurentPencil:
    """sum over terms of (c0 + lam c1) x^a t^b."""
    a: np.ndarray
    b: np.ndarray
    c0: np.ndarray
    c1: np.ndarray

    @classmethod
    def of(cls, points: Sequence[Sequence[int]], c0, c1) -> "LaurentPencil":
        pts = np.asarray(points, dtype=int).reshape(-1, 2)
        return cls(pts[:, 0].copy(), pts[:, 1].copy(), np.asarray(c0, dtype=complex), np.asarray(c1, dtype=complex))

    def coefficients(self, lam: complex) -> np.ndarray:
        return self.c0 + lam * self.c1

    def with_coefficients(self, c0, c1=None) -> "LaurentPencil":
        c1 = np.zeros_like(self.c1) if c1 is None else np.asarray(c1, dtype=complex)
        return LaurentPencil(self.a, self.b, np.asarray(c0, dtype=complex), c1)

    def partial(self, x: complex, t: complex, lam: complex, i: int = 0, j: int = 0, k: int = 0) -> complex:
        """d^i/dx^i d^j/dt^j d^k/dlam^k of the pencil at a single point (k <= 1)."""
        c = self.coefficients(lam) if k == 0 else (self.c1 if k == 1 else np.zeros_like(self.c1))
        mult = np.ones(len(self.a), dtype=complex)
        for r in range(i):
            mult = mult * (self.a - r)
        for r in range(j):
            mult = mult * (self.b - r)
        live = mult != 0
        if not np.any(live):
            return 0j
        mono = complex(x) ** (self.a[live] - i) * complex(t) ** (self.b[live] - j)
        return complex(np.sum(c[live] * mult[live] * mono))

    def evaluate(self, x: np.ndarray, t: np.ndarray, lam: complex):
        """Values, partial derivatives in x and t, and the lam-derivative at every point."""
        mono = x[:, None] ** self.a[None, :] * t[:, None] ** self.b[None, :]
        c = self.coefficients(lam)
        f = mono @ c
        fx = (mono * self.a[None, :] / x[:, None]) @ c
        ft = (mono * self.b[None, :] / t[:, None]) @ c
        fl = mono @ self.c1
        return f, fx, ft, fl


def log_distance(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """max(|log(x/x')|, |log(t/t')|) row by row."""
    r = np.abs(np.log(z / w))
    return r.max(axis=-1)


def nearest_log_distance(z: np.ndarray) -> np.ndarray:
    n = len(z)
    if n < 2:
        return np.full(n, np.inf)
    d = log_distance(z[:, None, :], z[None, :, :])
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)


class SystemTracker:
    def __init__(self, p: LaurentPencil, q: LaurentPencil, tol: float = 1e-11, max_steps: int = 100000):
        self.p, self.q = p, q
        self.tol = tol
        self.max_steps = max_steps

    def _residual_and_jacobian(self, z: np.ndarray, lam: complex):
        x, t = z[:, 0], z[:, 1]
        f, fx, ft, fl = self.p.evaluate(x, t, lam)
        g, gx, gt, gl = self.q.evaluate(x, t, lam)
        F = np.stack([f, g], axis=1)
        J = np.empty((len(z), 2, 2), dtype=complex)
        J[:, 0, 0], J[:, 0, 1], J[:, 1, 0], J[:, 1, 1] = fx, ft, gx, gt
        return F, J, np.stack([fl, gl], axis=1)

    def newton(self, z: np.ndarray, lam: complex, iters: int = 8) -> tuple[np.ndarray, bool]:
        for _ in range(iters):
            F, J, _ = self._residual_and_jacobian(z, lam)
            try:
                dz = np.linalg.solve(J, F[..., None])[..., 0]
            except np.linalg.LinAlgError:
                return z, False
            z = z - dz
            if not np.all(np.isfinite(z)) or np.any(z == 0):
                return z, False
            if np.all(np.abs(dz) <= self.tol * np.abs(z)):
                return z, True
        return z, False

    def _predict(self, z: np.ndarray, lam: complex, lam_new: complex) -> np.ndarray:
        _, J, Fl = self._residual_and_jacobian(z, lam)
        dz = np.linalg.solve(J, Fl[..., None])[..., 0]
        return z - dz * (lam_new - lam)

    def track(self, loop: LoopSpec, start: np.ndarray) -> np.ndarray:
        """Follow the solutions ``start`` (shape (N, 2)) along the loop; return the endpoints."""
        z = np.array(start, dtype=complex)
        steps = 0
        for seg in loop.segments:
            u, h = 0.0, 1.0 / 32
            lam = seg.at(0.0)
            while u < 1.0:
                steps += 1
                if steps > self.max_steps:
                    raise TrackingError("system tracking: step budget exhausted")
                if h < 1e-12:
                    raise TrackingError("system tracking: step underflow")
                u_new = min(1.0, u + h)
                lam_new = seg.at(u_new)
                pred = self._predict(z, lam, lam_new)
                y, ok = self.newton(pred, lam_new)
                if not ok:
                    h /= 2
                    continue
                near = nearest_log_distance(y)
                if np.any(log_distance(y, z) > 0.25 * near) or np.any(log_distance(y, pred) > 0.1 * near):
                    h /= 2
                    continue
                z, lam, u = y, lam_new, u_new
                h = min(1.6 * h, 0.25)
        return z

    def path(self, path_points: Callable[[float], complex], start: np.ndarray) -> np.ndarray:
        loop = LoopSpec([_Curve(path_points)])
        return self.track(loop, start)


@dataclass
class _Curve:
    f: Callable[[float], complex]

    def at(self, u: float) -> complex:
        return complex(self.f(u))


def match(end: np.ndarray, start: np.ndarray, rel_tol: float = 1e-6) -> list[int]:
    """Index in ``start`` of every endpoint; raises when the matching is not a bijection."""
    d = log_distance(end[:, None, :], start[None, :, :])
    idx = np.argmin(d, axis=1)
    if len(set(idx.tolist())) != len(start) or np.max(d[np.arange(len(end)), idx]) > rel_tol:
        raise TrackingError("system tracking: monodromy mismatch at loop close")
    return idx.tolist()


def loop_permutation(end: np.ndarray, start: np.ndarray) -> Perm:
    """p[end label] = start label, labels being row indices of ``start``."""
    idx = match(end, start)
    p = [0] * len(start)
    for i, j in enumerate(idx):
        p[j] = i
    return Perm(p)


def fft_roots(f: Callable[[np.ndarray], np.ndarray], degree_bound: int, radius: float = 1.0) -> list[complex]:
    """Roots of a polynomial known only through its values, by interpolation on circles."""
    M = 1 << int(math.ceil(math.log2(degree_bound + 1)))
    R = radius
    cand: list[complex] = []
    for _ in range(3):
        lam = R * np.exp(2j * math.pi * np.arange(M) / M)
        coef = np.fft.fft(f(lam)) / M / R ** np.arange(M)
        top = np.max(np.abs(coef))
        nz = np.nonzero(np.abs(coef) > 1e-10 * top)[0]
        poly = coef[nz[0]: nz[-1] + 1]
        cand = list(np.roots(poly[::-1])) if len(poly) > 1 else []
        if not cand:
            break
        newR = float(np.exp(np.mean(np.log(np.abs(cand)))))
        if abs(math.log(newR / R)) < 0.3:
            break
        R = newR
    return [complex(c) for c in cand]
