"""Numerical root tracking and extraction of annular braid words.

Strands are the roots of phi(x, t) in C*, followed while t travels along a
closed loop.  A braid word is read off the argument projection with the cut
at angle ``cut``: slots are numbered by increasing argument from the cut,
a strand passing the cut clockwise emits tau (counterclockwise: tau^-1), and
two strands in slots s, s+1 exchanging their arguments emit b_s^{+-1}.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .braid import TAU, BraidWord
from .permgroup import Perm, PermGroup

TWO_PI = 2.0 * math.pi

# Sign of b_s when the strand moving up in argument has the smaller modulus.
# Calibrated once against the trinomial loops (see tests/test_trinomial_numeric.py).
CROSSING_SIGN = -1


class TrackingError(RuntimeError):
    """Raised when a path cannot be followed reliably."""


# ---------------------------------------------------------------------------
# polynomial families


@dataclass(frozen=True)
class Family:
    """phi(x, t) = sum c * x^i * t^j over terms (i, j, c), Laurent in t."""
    terms: tuple[tuple[int, int, complex], ...]

    def __post_init__(self):
        xs = [i for i, _, _ in self.terms]
        js = [j for _, j, _ in self.terms]
        lo = min(xs)
        N = max(xs) - lo
        jmin, jmax = min(js), max(js)
        C = np.zeros((N + 1, jmax - jmin + 1), dtype=complex)
        for i, j, c in self.terms:
            C[i - lo, j - jmin] += c
        object.__setattr__(self, "_C", C)
        object.__setattr__(self, "_jmin", jmin)
        object.__setattr__(self, "_jpow", np.arange(jmin, jmax + 1))

    @classmethod
    def from_support(cls, points, coefficients) -> "Family":
        return cls(tuple((int(p[0]), int(p[1]), complex(c)) for p, c in zip(points, coefficients)))

    @property
    def degree(self) -> int:
        return self._C.shape[0] - 1

    def coeffs(self, t: complex) -> np.ndarray:
        return self._C @ (complex(t) ** self._jpow)

    def dcoeffs(self, t: complex) -> np.ndarray:
        t = complex(t)
        return self._C @ (self._jpow * t ** (self._jpow - 1))

    def coefficient_polys(self) -> tuple[np.ndarray, int]:
        """Rows of t-coefficients (ascending from t^jmin) for each power of x."""
        return self._C.copy(), self._jmin


def _horner(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    out = np.full(x.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        out = out * x + a
    return out


def _deriv(c: np.ndarray) -> np.ndarray:
    return c[1:] * np.arange(1, len(c))


# ---------------------------------------------------------------------------
# simultaneous root finding


def roots(coeffs: Sequence[complex], tol: float = 1e-12, max_iter: int = 500) -> np.ndarray:
    """All roots of sum coeffs[i] x^i by Aberth iteration, polished by Newton."""
    c = np.asarray(coeffs, dtype=complex)
    if c.size == 0 or not np.any(c):
        raise ValueError("zero polynomial")
    if c[-1] == 0:
        raise ValueError("leading coefficient vanishes")
    n = len(c) - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    dc = _deriv(c)
    # initial guesses on a circle sized by the coefficient moduli, slightly rotated
    mags = np.abs(c)
    nz = mags > 0
    k = np.arange(n + 1)[nz]
    lo_k, hi_k = k[0], k[-1]
    radius = (mags[lo_k] / mags[hi_k]) ** (1.0 / max(hi_k - lo_k, 1)) if hi_k > lo_k else 1.0
    z = radius * np.exp(1j * (TWO_PI * np.arange(n) / n + 0.4))
    if lo_k > 0:
        z[:lo_k] = 0.0
    scale = _horner(np.abs(c), np.abs(z) + 1e-300)
    for _ in range(max_iter):
        f = _horner(c, z)
        fp = _horner(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = f / fp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        z = z - w
        scale = _horner(np.abs(c), np.abs(z))
        if np.all(np.abs(_horner(c, z)) <= tol * np.maximum(scale, 1e-300)):
            break
    else:
        raise TrackingError("root finder did not converge")
    for _ in range(3):
        fp = _horner(dc, z)
        step = np.where(fp != 0, _horner(c, z) / np.where(fp != 0, fp, 1), 0)
        z = z - step
    return z


def relative_residual(coeffs: Sequence[complex], z: np.ndarray) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    return np.abs(_horner(c, z)) / np.maximum(_horner(np.abs(c), np.abs(z)), 1e-300)


# ---------------------------------------------------------------------------
# loops


@dataclass(frozen=True)
class Segment:
    kind: str                 # "line", "arc" or "ray" (geometric in the modulus)
    a: complex = 0j           # line start / arc centre
    b: complex = 0j           # line end
    radius: float = 0.0
    theta0: float = 0.0       # arc start angle (radians)
    theta1: float = 0.0       # arc end angle; theta1 > theta0 means counterclockwise

    def at(self, u: float) -> complex:
        if self.kind == "line":
            return self.a + (self.b - self.a) * u
        if self.kind == "ray":
            return self.a * (self.b / self.a) ** u
        th = self.theta0 + (self.theta1 - self.theta0) * u
        return self.a + self.radius * cmath.exp(1j * th)


def line(a: complex, b: complex) -> Segment:
    return Segment("line", a=complex(a), b=complex(b))


def ray(a: complex, b: complex) -> Segment:
    """Radial segment from a to b (same argument), parametrized geometrically."""
    return Segment("ray", a=complex(a), b=complex(b))


def arc(centre: complex, radius: float, theta0: float, theta1: float) -> Segment:
    return Segment("arc", a=complex(centre), radius=float(radius), theta0=float(theta0), theta1=float(theta1))


@dataclass
class LoopSpec:
    segments: list[Segment]
    name: str = ""
    encloses: list[complex] = field(default_factory=list)

    @property
    def base(self) -> complex:
        return self.segments[0].at(0.0)

    def check_closed(self, tol: float = 1e-9) -> None:
        pts = [(s.at(0.0), s.at(1.0)) for s in self.segments]
        for (_, e), (s, _) in zip(pts, pts[1:] + pts[:1]):
            if abs(e - s) > tol * max(1.0, abs(s)):
                raise ValueError(f"loop {self.name!r} is not closed")

    def sample(self, per_segment: int = 200) -> np.ndarray:
        u = np.linspace(0.0, 1.0, per_segment)
        return np.concatenate([[s.at(x) for x in u] for s in self.segments])

    def clearance(self, points: Sequence[complex]) -> float:
        pts = self.sample()
        return min((float(np.min(np.abs(pts - p))) for p in points), default=math.inf)


def railway_graph(bif_points: Sequence[complex], eps: float, outer: float,
                  nu0: float | None = None) -> list[LoopSpec]:
    """Inner circle, outer circle and radial segments between the bifurcation points.

    The base point sits on the inner circle at argument ``nu0`` (default: a quarter
    of a cell counterclockwise from the first bifurcation point).  Loop j approaches
    its cell clockwise along the inner circle, goes once counterclockwise around the
    j-th point met in that direction and returns the same way.  Loop 0 is the inner
    circle, counterclockwise.
    """
    pts = [complex(p) for p in bif_points if abs(p) > 0]
    delta = len(pts)
    if delta == 0:
        raise ValueError("no nonzero bifurcation points")
    rho = float(np.mean(np.abs(pts)))
    if not (0 < eps < rho < outer):
        raise ValueError("need eps < rho < outer")
    cell = TWO_PI / delta
    if nu0 is None:
        nu0 = min(cmath.phase(p) % TWO_PI for p in pts) + cell / 4
    # lifted arguments in (nu0 - 2 pi, nu0], met clockwise from nu0
    lifted = sorted(((nu0 - (nu0 - cmath.phase(p)) % TWO_PI, p) for p in pts), key=lambda e: -e[0])
    t0 = eps * cmath.exp(1j * nu0)
    loops = [LoopSpec([arc(0, eps, nu0, nu0 + TWO_PI)], name="l0", encloses=[0j])]
    for j, (beta, p) in enumerate(lifted, start=1):
        lo, hi = beta - cell / 2, beta + cell / 2
        segs = [
            arc(0, eps, nu0, lo),
            ray(eps * cmath.exp(1j * lo), outer * cmath.exp(1j * lo)),
            arc(0, outer, lo, hi),
            ray(outer * cmath.exp(1j * hi), eps * cmath.exp(1j * hi)),
            arc(0, eps, hi, nu0),
        ]
        loops.append(LoopSpec(segs, name=f"l{j}", encloses=[p]))
    for lp in loops:
        lp.check_closed()
        if abs(lp.base - t0) > 1e-12 * max(1.0, eps):
            raise AssertionError("loops must start at the base point")
    return loops


def lasso_loops(points: Sequence[complex], base: complex, radii: Sequence[float]) -> list[LoopSpec]:
    """Straight tail from the base point, then a counterclockwise circle around each point."""
    out = []
    for k, (p, r) in enumerate(zip(points, radii)):
        direction = (base - p) / abs(base - p)
        entry = p + r * direction
        th = cmath.phase(direction)
        segs = [line(base, entry), arc(p, r, th, th + TWO_PI), line(entry, base)]
        out.append(LoopSpec(segs, name=f"lasso{k}", encloses=[p]))
    return out


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    u = ((p - a) * ab.conjugate()).real / max(abs(ab) ** 2, 1e-300)
    u = min(max(u, 0.0), 1.0)
    return abs(p - (a + u * ab))


def _star_radii(pts: list[complex], base: complex) -> list[float]:
    out = []
    for i, p in enumerate(pts):
        gap = abs(base - p)
        for j, q in enumerate(pts):
            if j != i:
                gap = min(gap, abs(p - q), _segment_distance(p, base, q))
        out.append(0.45 * gap)
    return out


def star_loops(points: Sequence[complex], rng: np.random.Generator, tries: int = 400) -> list[LoopSpec]:
    """Lassos around every point from a common base point with clear straight tails.

    Radii adapt to the candidate base point; the candidate whose worst circle is
    largest relative to its point's nearest neighbour wins.
    """
    pts = [complex(p) for p in points]
    if not pts:
        raise ValueError("no points")
    if len(pts) == 1:
        r = 0.5 * max(abs(pts[0]), 1.0)
        return lasso_loops(pts, pts[0] + 2 * r, [r])
    nearest = [min(abs(p - q) for j, q in enumerate(pts) if j != i) for i, p in enumerate(pts)]
    span = max(abs(p) for p in pts) + max(nearest)
    centre = complex(np.mean(pts))
    best, best_score = None, -math.inf
    for _ in range(tries):
        cand = centre + span * rng.uniform(0.2, 1.5) * cmath.exp(1j * rng.uniform(0, TWO_PI))
        score = min(r / n for r, n in zip(_star_radii(pts, cand), nearest))
        if score > best_score:
            best, best_score = cand, score
    if best_score <= 0.01:
        raise TrackingError("could not place a base point with clear lasso tails")
    return lasso_loops(pts, best, _star_radii(pts, best))


# ---------------------------------------------------------------------------
# tracking


@dataclass
class TrackedBraid:
    word: BraidWord
    start: np.ndarray            # base roots in slot order
    end: np.ndarray              # tracked endpoints, strand i started at start[i]
    permutation: Perm            # p[end slot] = start slot
    winding: int                 # clockwise winding of the product of the roots
    min_separation: float
    steps: int
    samples: list[np.ndarray] = field(default_factory=list)


def _wrap(a: np.ndarray | float):
    return (np.asarray(a) + math.pi) % TWO_PI - math.pi


def base_configuration(fam: Family, t0: complex, cut: float | None = None) -> tuple[np.ndarray, float]:
    """Roots at t0 in slot order, together with the cut angle (middle of the widest gap by default)."""
    z = roots(fam.coeffs(t0))
    if np.any(np.abs(z) == 0):
        raise TrackingError("root at the origin")
    ang = np.sort(np.angle(z) % TWO_PI)
    if cut is None:
        gaps = np.diff(np.concatenate([ang, [ang[0] + TWO_PI]]))
        k = int(np.argmax(gaps))
        cut = float((ang[k] + gaps[k] / 2) % TWO_PI)
    rel = (np.angle(z) - cut) % TWO_PI
    order = np.argsort(rel)
    return z[order], float(cut)


class Tracker:
    def __init__(self, fam: Family, tol: float = 1e-10, max_steps: int = 200000, keep_samples: bool = False):
        self.fam = fam
        self.tol = tol
        self.max_steps = max_steps
        self.keep_samples = keep_samples
        self.N = fam.degree

    def _newton(self, x: np.ndarray, t: complex) -> tuple[np.ndarray, bool]:
        c = self.fam.coeffs(t)
        dc = _deriv(c)
        for _ in range(10):
            f = _horner(c, x)
            fp = _horner(dc, x)
            dx = f / fp
            x = x - dx
            if np.all(np.abs(dx) <= self.tol * np.maximum(np.abs(x), 1e-300)):
                return x, True
        return x, False

    def _predict(self, x: np.ndarray, t: complex, t_new: complex) -> np.ndarray:
        c = self.fam.coeffs(t)
        dxc = _horner(_deriv(c), x)
        dtc = _horner(self.fam.dcoeffs(t), x)
        return x - dtc / dxc * (t_new - t)

    def track(self, loop: LoopSpec, cut: float | None = None, base_roots: np.ndarray | None = None) -> TrackedBraid:
        N = self.N
        t0 = loop.base
        if base_roots is None:
            base_roots, cut = base_configuration(self.fam, t0, cut)
        elif cut is None:
            raise ValueError("cut required with explicit base roots")
        x = np.array(base_roots, dtype=complex)
        start = x.copy()
        rel = (np.angle(x) - cut) % TWO_PI
        slots = list(np.argsort(rel))          # slots[s] = strand in slot s
        letters: list[tuple[int, int]] = []
        total_arg = 0.0
        min_sep = math.inf
        steps = 0
        samples = [x.copy()] if self.keep_samples else []
        max_dtheta = math.pi / (8 * max(N, 1))

        for seg in loop.segments:
            u, h = 0.0, 1.0 / 64
            t = seg.at(0.0)
            while u < 1.0:
                if steps > self.max_steps:
                    raise TrackingError("tracking failure: step budget exhausted")
                if h < 1e-13:
                    raise TrackingError("tracking failure: refine (step underflow)")
                u_new = min(1.0, u + h)
                t_new = seg.at(u_new)
                x_pred = self._predict(x, t, t_new)
                y, ok = self._newton(x_pred, t_new)
                if not ok or not np.all(np.isfinite(y)) or np.any(y == 0):
                    h /= 2
                    continue
                near = _nearest(y) if N > 1 else np.full(N, np.inf)
                sep = float(np.min(near))
                if N > 1 and (np.any(np.abs(y - x) > 0.25 * near) or np.any(np.abs(y - x_pred) > 0.1 * near)):
                    h /= 2
                    continue
                dth = _wrap(np.angle(y) - np.angle(x))
                if np.max(np.abs(dth)) > max_dtheta:
                    h /= 2
                    continue
                events = _events(x, y, dth, cut, slots)
                if events is None:
                    h /= 2
                    continue
                # accept
                for ev in events:
                    if ev[0] == "cut":
                        letters.append((TAU, ev[1]))
                    else:
                        _, s, mover_up, other, frac = ev
                        r_up = abs(x[mover_up] + frac * (y[mover_up] - x[mover_up]))
                        r_other = abs(x[other] + frac * (y[other] - x[other]))
                        sign = CROSSING_SIGN if r_up < r_other else -CROSSING_SIGN
                        letters.append((s + 1, sign))
                total_arg += float(np.sum(dth))
                min_sep = min(min_sep, sep)
                x, t, u = y, t_new, u_new
                new_rel = (np.angle(x) - cut) % TWO_PI
                slots = list(np.argsort(new_rel))
                steps += 1
                if self.keep_samples:
                    samples.append(x.copy())
                h = min(h * 1.6, 1.0 / 8)

        # endpoint matching
        dist = np.abs(x[:, None] - start[None, :])
        match = np.argmin(dist, axis=1)
        scale = _min_separation(start) if N > 1 else abs(start[0])
        if len(set(match.tolist())) != N or np.max(dist[np.arange(N), match]) > 1e-6 * max(scale, 1e-12) + 1e-9:
            raise TrackingError("monodromy mismatch at loop close")
        word = BraidWord(max(N, 1), tuple(letters))
        # slot of strand i at the start is rank of start[i]; start is in slot order, so strand i <-> slot i
        p = [0] * N
        for i in range(N):
            p[int(match[i])] = i
        winding = -int(round(total_arg / TWO_PI))
        return TrackedBraid(word=word, start=start, end=x, permutation=Perm(p), winding=winding,
                            min_separation=min_sep, steps=steps, samples=samples)


def _nearest(z: np.ndarray) -> np.ndarray:
    """Distance from each root to its nearest neighbour."""
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)


def _min_separation(z: np.ndarray) -> float:
    return float(np.min(_nearest(z)))


def _events(x, y, dth, cut, slots):
    """Events in one step, in time order, or None when the step has to be refined.

    Each event is ("cut", +-1) or ("cross", s, i, j, frac): the strands i (slot s)
    and j (slot s+1) exchange arguments.  Arguments move linearly within a step.
    """
    N = len(x)
    a = (np.angle(x) - cut) % TWO_PI
    b = a + dth
    timed = []
    for i in range(N):
        if b[i] < 0 or b[i] >= TWO_PI:
            edge = 0.0 if b[i] < 0 else TWO_PI
            timed.append(((edge - a[i]) / dth[i], 0, i))
    for i in range(N):
        for j in range(i + 1, N):
            d0 = a[j] - a[i]
            d1 = b[j] - b[i]
            for k in (-1, 0, 1):
                lo, hi = d0 - k * TWO_PI, d1 - k * TWO_PI
                if lo * hi < 0 or (hi == 0 and lo != 0):
                    timed.append((lo / (lo - hi), 1, (i, j)))
    timed.sort(key=lambda e: e[0])
    cur = list(slots)
    out = []
    for frac, kind, data in timed:
        frac = float(min(max(frac, 0.0), 1.0))
        if kind == 0:
            i = data
            if b[i] < 0:
                if cur[0] != i:
                    return None
                cur = cur[1:] + [i]
                out.append(("cut", 1))
            else:
                if cur[-1] != i:
                    return None
                cur = [i] + cur[:-1]
                out.append(("cut", -1))
        else:
            pi, pj = cur.index(data[0]), cur.index(data[1])
            s = min(pi, pj)
            if abs(pi - pj) != 1:
                return None
            lower, upper = cur[s], cur[s + 1]
            cur[s], cur[s + 1] = upper, lower
            out.append(("cross", s, lower, upper, frac))
    return out


def track(fam: Family, loop: LoopSpec, cut: float | None = None, tol: float = 1e-10) -> TrackedBraid:
    return Tracker(fam, tol=tol).track(loop, cut=cut)


def monodromy_group(fam: Family, loops: Sequence[LoopSpec], cut: float | None = None,
                    tol: float = 1e-10) -> tuple[PermGroup, list[TrackedBraid]]:
    """Permutation group generated by the tracked loops (all loops must share the base point)."""
    tr = Tracker(fam, tol=tol)
    base = loops[0].base
    start, cut = base_configuration(fam, base, cut)
    out = []
    for lp in loops:
        if abs(lp.base - base) > 1e-12 * max(1.0, abs(base)):
            raise ValueError("loops must share a base point")
        out.append(tr.track(lp, cut=cut, base_roots=start))
    return PermGroup([b.permutation for b in out], fam.degree), out


# ---------------------------------------------------------------------------
# bifurcation sets of one-parameter families


def discriminant_samples(fam: Family, ts: np.ndarray) -> np.ndarray:
    N = fam.degree
    out = np.empty(len(ts), dtype=complex)
    for k, t in enumerate(ts):
        c = fam.coeffs(t)
        z = roots(c)
        diff = z[:, None] - z[None, :]
        iu = np.triu_indices(N, 1)
        out[k] = c[-1] ** (2 * N - 2) * np.prod(diff[iu] ** 2)
    return out


def _laurent_roots(row: np.ndarray) -> list[complex]:
    nz = np.nonzero(np.abs(row) > 0)[0]
    if len(nz) <= 1:
        return []
    r = row[nz[0]: nz[-1] + 1]
    return list(np.roots(r[::-1]))


def bifurcation_points(fam: Family, radius: float | None = None, polish: bool = True) -> list[complex]:
    """Nonzero parameter values where phi has fewer than deg distinct roots in C*.

    The discriminant is sampled on a circle, interpolated by FFT and its roots
    are polished by Newton's method on the system phi = d phi/dx = 0.
    """
    C, jmin = fam.coefficient_polys()
    N = fam.degree
    span = C.shape[1] - 1
    out: list[complex] = []
    out += _laurent_roots(C[0])
    out += _laurent_roots(C[-1])
    if N >= 2 and span > 0:
        deg = (2 * N - 2) * span
        M = 1 << int(math.ceil(math.log2(deg + 1)))
        R = 1.0 if radius is None else radius
        for _ in range(2):
            ts = R * np.exp(2j * math.pi * np.arange(M) / M)
            vals = discriminant_samples(fam, ts) * ts ** (-(2 * N - 2) * jmin)
            coef = np.fft.fft(vals) / M / (R ** np.arange(M))
            top = np.max(np.abs(coef))
            nzc = np.nonzero(np.abs(coef) > 1e-9 * top)[0]
            poly = coef[: nzc[-1] + 1]
            low = nzc[0]
            cand = list(np.roots(poly[low:][::-1]))
            if not cand:
                break
            newR = float(np.exp(np.mean(np.log(np.abs(cand)))))
            if radius is not None or abs(math.log(newR / R)) < 0.5:
                break
            R = newR
        for tc in cand:
            tp = _polish_singular(fam, tc) if polish else tc
            # Newton may wander off when two candidates are close; keep the raw root then
            out.append(tp if abs(tp - tc) <= 1e-3 * max(1.0, abs(tc)) else tc)
    uniq: list[complex] = []
    for t in out:
        if abs(t) < 1e-12:
            continue
        if all(abs(t - u) > 1e-8 * max(1.0, abs(u)) for u in uniq):
            uniq.append(complex(t))
    return uniq


def _polish_singular(fam: Family, t: complex, iters: int = 30) -> complex:
    """Newton on (phi, phi_x) = 0 starting from the closest pair of roots at t."""
    z = roots(fam.coeffs(t))
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    i, j = np.unravel_index(np.argmin(d), d.shape)
    x = (z[i] + z[j]) / 2
    for _ in range(iters):
        c = fam.coeffs(t)
        dc = fam.dcoeffs(t)
        cx = _deriv(c)
        f = _horner(c, np.array([x]))[0]
        fx = _horner(cx, np.array([x]))[0]
        ft = _horner(dc, np.array([x]))[0]
        fxx = _horner(_deriv(cx), np.array([x]))[0]
        fxt = _horner(_deriv(dc), np.array([x]))[0]
        J = np.array([[fx, ft], [fxx, fxt]])
        try:
            dx, dt = np.linalg.solve(J, -np.array([f, fx]))
        except np.linalg.LinAlgError:
            break
        x, t = x + dx, t + dt
        if abs(dx) <= 1e-16 * abs(x) and abs(dt) <= 1e-16 * abs(t):
            break
    return complex(t)


def random_unit_coefficients(n: int, rng: np.random.Generator) -> np.ndarray:
    return np.exp(2j * math.pi * rng.uniform(size=n))
