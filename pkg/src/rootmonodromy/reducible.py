"""Galois groups of reducible systems p(x, t) = q(x, t) = 0 where supp q lies on a line.

After a monomial change of coordinates, supp q sits on the t-axis, so q is a
univariate polynomial in t with h roots (the set Q) and every fiber over a root
of q holds the n roots of p(., t).  Solutions are labelled by pairs (s, j):
``s`` is the slot of the root of q (arguments increasing from a cut) and ``j``
indexes the roots of the special member p = 1 + t^c x^n, where (n, c) is a
point of A1 in the last column.

The symmetry group S of the pair acts on solutions, S' is the part acting
inside fibers, and the kernel of G -> G_{A2} is cut out by the S'-phase index
of every fiber (all equal when the pair is sharp, equal along multiplication by
exp(2 pi i / kappa) otherwise).
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import galois
from .braid import TAU, BraidWord
from .numeric import Family, TrackingError, bifurcation_points, random_unit_coefficients, roots, star_loops
from .permgroup import Perm, PermGroup, WreathGround, wreath_subgroup_generators
from .polysystem import LaurentPencil, SystemTracker, fft_roots, loop_permutation
from .support import SupportSet, gcd_all, is_collinear, smith_normal_form

Point = tuple[int, int]
Torsion = tuple[Fraction, Fraction]     # (phi_x, phi_t) standing for (e^{2 pi i phi_x}, e^{2 pi i phi_t})

TWO_PI = 2.0 * math.pi


def _points(A) -> list[Point]:
    pts = A.points if isinstance(A, SupportSet) else A
    out = sorted({(int(p[0]), int(p[1])) for p in pts})
    if any(len(p) != 2 for p in pts):
        raise ValueError("reducible pairs live in Z^2")
    return out


def _primitive_direction(pts: Sequence[Point]) -> Point:
    p0 = pts[0]
    g = gcd_all(c for p in pts for c in (p[0] - p0[0], p[1] - p0[1]))
    if g == 0:
        raise ValueError("support is a single point")
    v = next((p[0] - p0[0], p[1] - p0[1]) for p in pts if p != p0)
    k = gcd(abs(v[0]), abs(v[1]))
    u = (v[0] // k, v[1] // k)
    if u[1] < 0 or (u[1] == 0 and u[0] < 0):
        u = (-u[0], -u[1])
    return u


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _line_coordinates(pts: Sequence[Point], u: Point) -> list[int]:
    p0 = pts[0]
    out = []
    for p in pts:
        dx, dt = p[0] - p0[0], p[1] - p0[1]
        out.append(dx // u[0] if u[0] else dt // u[1])
    lo = min(out)
    return sorted(k - lo for k in out)


# ---------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class TwoLines:
    """Routing marker: both supports are collinear."""
    A1: tuple[Point, ...]
    A2: tuple[Point, ...]


@dataclass(frozen=True)
class ReduciblePair:
    A1: tuple[Point, ...]
    A2: tuple[Point, ...]
    n: int
    h: int
    matrix: tuple[tuple[int, int], tuple[int, int]]
    shift1: Point
    shift2: Point
    normalized: bool = True

    @property
    def N(self) -> int:
        return self.n * self.h

    @property
    def A_t(self) -> list[int]:
        return sorted(p[1] for p in self.A2)

    @property
    def varsigma(self) -> int:
        """t-exponent of the chosen point (n, c) of the last column."""
        return min(p[1] for p in self.A1 if p[0] == self.n)

    @property
    def dx(self) -> int:
        return gcd_all(p[0] for p in self.A1)

    @property
    def dt(self) -> int:
        return gcd_all(self.A_t)

    def column(self, x: int) -> list[int]:
        return sorted(p[1] for p in self.A1 if p[0] == x)

    def as_dict(self) -> dict:
        return {"A1": [list(p) for p in self.A1], "A2": [list(p) for p in self.A2],
                "n": self.n, "h": self.h, "N": self.N}


def normalize_pair(A1, A2) -> ReduciblePair | TwoLines:
    """Change coordinates so that A2 lies on {0} x [0, h] and A1 in [0, n] x Z, both through 0."""
    a1, a2 = _points(A1), _points(A2)
    if len(a2) < 2 or not is_collinear(a2):
        raise ValueError("A2 must be a collinear set of at least two points")
    if len(a1) < 2:
        raise ValueError("A1 needs at least two points")
    if is_collinear(a1):
        return TwoLines(tuple(a1), tuple(a2))
    ux, ut = _primitive_direction(a2)
    _, al, be = _ext_gcd(ux, ut)           # al ux + be ut = 1
    M = ((ut, -ux), (al, be))

    def apply(p):
        return (M[0][0] * p[0] + M[0][1] * p[1], M[1][0] * p[0] + M[1][1] * p[1])

    b1 = [apply(p) for p in a1]
    b2 = [apply(p) for p in a2]
    lo, hi = min(p[0] for p in b1), max(p[0] for p in b1)
    if hi == lo:
        raise ValueError("A1 is parallel to A2")
    c0 = min(p[1] for p in b1 if p[0] == lo)
    s1 = (-lo, -c0)
    b1 = sorted((p[0] - lo, p[1] - c0) for p in b1)
    x2 = b2[0][0]
    m2 = min(p[1] for p in b2)
    s2 = (-x2, -m2)
    b2 = sorted((p[0] - x2, p[1] - m2) for p in b2)
    h = max(p[1] for p in b2)
    return ReduciblePair(tuple(b1), tuple(b2), hi - lo, h, M, s1, s2)


# ---------------------------------------------------------------------------
# invariants


def torsion_group(rows: Sequence[Sequence[int]]) -> tuple[list[int], list[Torsion]]:
    """Invariant factors and elements of {phi in (Q/Z)^2 : <row, phi> in Z for every row}."""
    U, D, V = smith_normal_form(rows)
    diag = [D[i][i] for i in range(2)] if len(D) >= 2 else [D[0][0], 0]
    if 0 in diag:
        raise ValueError("the rows do not span a full-rank lattice")
    elems = set()
    for ks in itertools.product(*(range(d) for d in diag)):
        phi = [sum(Fraction(k, d) * V[r][i] for i, (k, d) in enumerate(zip(ks, diag))) % 1 for r in range(2)]
        elems.add((phi[0], phi[1]))
    return [d for d in diag if d > 1], sorted(elems)


@dataclass(frozen=True)
class PairInvariants:
    S_factors: tuple[int, ...]
    S: tuple[Torsion, ...]
    S_prime: tuple[Torsion, ...]
    kappa: int
    sharp: bool
    kappa_singleton_convention: bool    # a singleton extremal column contributed 0

    @property
    def order_S(self) -> int:
        return len(self.S)

    def as_dict(self) -> dict:
        return {"S": list(self.S_factors), "S_order": self.order_S, "S_prime_order": len(self.S_prime),
                "kappa": self.kappa, "sharp": self.sharp,
                "kappa_singleton_convention": self.kappa_singleton_convention}


def _affine_index(values: Sequence[int]) -> int:
    """Index of the affine lattice spanned by integers in its saturation, 0 for a single point."""
    return gcd_all(v - values[0] for v in values)


def pair_invariants(P: ReduciblePair) -> PairInvariants:
    factors, S = torsion_group(list(P.A1) + list(P.A2))
    S_prime = tuple(e for e in S if e[1] == 0)
    left, right = P.column(0), P.column(P.n)
    sharp = len(left) == 1 and len(right) == 1
    kappa = gcd_all([_affine_index(left), _affine_index(right), _affine_index(P.A_t)])
    return PairInvariants(tuple(factors), tuple(S), S_prime, kappa, sharp,
                          len(left) == 1 or len(right) == 1)


# ---------------------------------------------------------------------------
# combinatorial model on the ground set (slot, j)


class PairModel:
    """Labels s * n + j of the solutions at the special member p = 1 + t^c x^n."""

    def __init__(self, P: ReduciblePair, inv: PairInvariants | None = None):
        self.P = P
        self.inv = inv or pair_invariants(P)
        self.n, self.h, self.c = P.n, P.h, P.varsigma
        self.N = P.N
        self.dx, self.dt = P.dx, P.dt
        self.wreath = WreathGround(self.n, self.dx)

    def label(self, s: int, j: int) -> int:
        return s * self.n + j % self.n

    def split(self, y: int) -> tuple[int, int]:
        return divmod(y, self.n)

    # braid lifts ----------------------------------------------------------
    def _tau(self) -> Perm:
        n, h = self.n, self.h
        p = [0] * self.N
        for s in range(h):
            for j in range(n):
                if s >= 1:
                    p[self.label(s - 1, j)] = self.label(s, j)
                else:
                    p[self.label(h - 1, j + self.c)] = self.label(0, j)
        return Perm(p)

    def _swap(self, i: int) -> Perm:
        """Slots i-1 and i exchanged (1 <= i < h)."""
        p = list(range(self.N))
        for j in range(self.n):
            a, b = self.label(i - 1, j), self.label(i, j)
            p[a], p[b] = b, a
        return Perm(p)

    def lift(self, word: BraidWord) -> Perm:
        """Monodromy of a braid of the roots of q, with p held at the special member."""
        if word.N != self.h:
            raise ValueError("braid on the wrong number of strands")
        tau = self._tau()
        out = Perm.identity(self.N)
        for g, e in word.letters:
            if g == TAU:
                step = tau ** e
            elif g < self.h:
                step = self._swap(g) ** (e % 2)
            else:
                step = (tau * self._swap(self.h - 1) * tau.inverse()) ** (e % 2)
            out = out * step
        return out

    # symmetry ---------------------------------------------------------------
    def s_action(self, e: Torsion) -> Perm:
        """The map y -> e.y on labels."""
        fx, ft = e
        k = ft * self.dt
        if k.denominator != 1:
            raise ValueError("t-part of a symmetry must be a dt-th root of unity")
        k = int(k) % self.dt
        shift = k * self.h // self.dt
        base = self.n * fx + self.c * Fraction(k, self.dt)
        if base.denominator != 1:
            raise ValueError("not a symmetry of the pair")
        img = [0] * self.N
        for s in range(self.h):
            s2 = s + shift
            w = 1 if s2 >= self.h else 0
            for j in range(self.n):
                img[self.label(s, j)] = self.label(s2 - w * self.h, j + int(base) - self.c * w)
        return Perm(img)

    def reference_points(self, cut: float = 0.0) -> np.ndarray:
        """Solutions of p = 1 + t^c x^n, q = t^h - e^{i h cut}(-1)... with |t| = 1, evenly spaced."""
        out = np.empty((self.N, 2), dtype=complex)
        for s in range(self.h):
            th = cut + TWO_PI * (s + 0.5) / self.h
            for j in range(self.n):
                out[self.label(s, j)] = (self.x_of(1.0, th, j), cmath.exp(1j * th))
        return out

    def x_of(self, modulus: float, theta: float, j: int) -> complex:
        """Root x_j of 1 + t^c x^n at t = modulus * e^{i theta}, theta measured from 0."""
        r = modulus ** (-self.c / self.n)
        return r * cmath.exp(1j * ((math.pi - self.c * theta) / self.n + TWO_PI * j / self.n))

    # fiber coordinates ------------------------------------------------------
    def to_point(self, j: int) -> int:
        blocks = self.n // self.dx
        return (j % blocks) * self.dx + j // blocks

    def from_point(self, pt: int) -> int:
        blocks = self.n // self.dx
        b, phi = divmod(pt, self.dx)
        return b + phi * blocks


def _fiber_orbits(model: PairModel, extra_shift: int | None) -> tuple[list[int], list[list[int]]]:
    """Representatives of S-orbits of fibers and the classes they are glued into."""
    h = model.h
    parent = list(range(h))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[max(a, b)] = min(a, b)

    for e in model.inv.S:
        g = model.s_action(e)
        for s in range(h):
            union(s, model.split(g[model.label(s, 0)])[0])
    reps = sorted({find(s) for s in range(h)})
    cls = list(range(h))
    for s in range(h):
        cls[s] = find(s)
    # glue classes
    parent2 = {r: r for r in reps}

    def find2(a):
        while parent2[a] != a:
            a = parent2[a]
        return a

    if extra_shift is None:
        for r in reps[1:]:
            parent2[find2(r)] = find2(reps[0])
    elif extra_shift:
        for s in range(h):
            a, b = find2(cls[s]), find2(cls[(s + extra_shift) % h])
            if a != b:
                parent2[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for r in reps:
        groups.setdefault(find2(r), []).append(r)
    return reps, list(groups.values())


def _extend(model: PairModel, rep: int, local: Perm, S_perms: Sequence[Perm]) -> Perm:
    """S-equivariant extension of a permutation of the fiber ``rep`` (given on wreath points)."""
    img: dict[int, int] = {}
    for g in S_perms:
        for j in range(model.n):
            y = model.label(rep, j)
            sy = model.label(rep, model.from_point(local[model.to_point(j)]))
            a, b = g[y], g[sy]
            if img.get(a, b) != b:
                raise AssertionError("fiber permutation does not extend S-equivariantly")
            img[a] = b
    return Perm(img.get(i, i) for i in range(model.N))


def kernel_generators(model: PairModel) -> list[Perm]:
    inv = model.inv
    S_perms = [model.s_action(e) for e in inv.S]
    shift = None if inv.sharp else (model.h // inv.kappa if inv.kappa else 0) % model.h
    reps, classes = _fiber_orbits(model, shift)
    w = model.wreath
    gens = []
    for r in reps:
        for loc in wreath_subgroup_generators(model.n, model.dx, model.dx):
            gens.append(_extend(model, r, loc, S_perms))
    if model.dx > 1:
        push = w.phase_shift([1] + [0] * (w.blocks - 1))
        for cl in classes:
            g = Perm.identity(model.N)
            for r in cl:
                g = g * _extend(model, r, push, S_perms)
            gens.append(g)
    return [g for g in gens if not g.is_identity()]


@dataclass
class ReduciblePrediction:
    pair: ReduciblePair
    invariants: PairInvariants
    group: PermGroup
    kernel: PermGroup
    lifts: list[Perm]
    galois_A2_order: int

    @property
    def sequence_order(self) -> int:
        """|G_{A2}| * |K|, the order forced by the exact sequence."""
        return self.galois_A2_order * self.kernel.order()

    def as_dict(self) -> dict:
        out = self.pair.as_dict()
        out.update(self.invariants.as_dict())
        out.update({"galois_order": self.group.order(), "kernel_order": self.kernel.order(),
                    "galois_A2_order": self.galois_A2_order, "sequence_order": self.sequence_order})
        return out


def univariate_prediction(exponents: Sequence[int]) -> galois.Prediction:
    """Braid monodromy of the generic univariate polynomial with the given exponents."""
    return galois.predict(SupportSet.of([(e, i) for e in exponents for i in (0, 1)]))


def predicted_galois_reducible(P: ReduciblePair) -> ReduciblePrediction:
    model = PairModel(P)
    K = PermGroup(kernel_generators(model), P.N)
    base = univariate_prediction(P.A_t)
    lifts = [model.lift(w) for w in base.braid_generators]
    G = PermGroup(list(K.generators) + lifts, P.N)
    return ReduciblePrediction(P, model.inv, G, K, lifts, base.galois_group.order())


def fiber_blocks(P: ReduciblePair) -> list[list[int]]:
    return [[s * P.n + j for j in range(P.n)] for s in range(P.h)]


# ---------------------------------------------------------------------------
# brute force


def _group_from_elements(elements: Iterable[Perm], degree: int) -> PermGroup:
    gens: list[Perm] = []
    G = PermGroup([], degree)
    for e in elements:
        if e not in G:
            gens.append(e)
            G = PermGroup(gens, degree)
    return G


def kernel_bruteforce(P: ReduciblePair, bound: int = 10, budget: int = 2_000_000) -> tuple[PermGroup, int]:
    """Fiber-preserving S-equivariant permutations with S'-index in J, by enumeration.

    Phases are read from the complex coordinates of a reference configuration.
    Returns the group and the number of elements found.
    """
    if P.N > bound:
        raise ValueError(f"N = {P.N} exceeds the enumeration bound {bound}")
    if math.factorial(P.n) ** P.h > budget:
        raise ValueError("enumeration too large")
    model = PairModel(P)
    inv = model.inv
    n, h, N = P.n, P.h, P.N
    pts = model.reference_points(cut=0.1)
    S_perms = [model.s_action(e) for e in inv.S]
    dx = model.dx
    # S'-orbits inside each fiber, found from ratios of x-coordinates
    orbits = []
    for s in range(h):
        seen, fiber = set(), []
        for j in range(n):
            y = model.label(s, j)
            if y in seen:
                continue
            orb = [z for z in range(model.label(s, 0), model.label(s, 0) + n)
                   if abs((pts[z, 0] / pts[y, 0]) ** dx - 1) < 1e-9]
            seen.update(orb)
            fiber.append(orb)
        orbits.append(fiber)
    # fibers related by e^{2 pi i / kappa}
    partner = None
    if not inv.sharp and inv.kappa:
        rot = cmath.exp(TWO_PI * 1j / inv.kappa)
        ts = pts[[model.label(s, 0) for s in range(h)], 1]
        partner = [int(np.argmin(np.abs(ts - ts[s] * rot))) for s in range(h)]

    def index(sigma: list[int], s: int) -> int:
        prod = 1 + 0j
        for orb in orbits[s]:
            y = orb[0]
            prod *= pts[sigma[y], 0] / pts[y, 0]
        k = cmath.phase(prod) * dx / TWO_PI
        if abs(k - round(k)) > 1e-6 or abs(abs(prod) - 1) > 1e-6:
            raise AssertionError("total translation is not in S'")
        return round(k) % dx

    found = []
    for local in itertools.product(itertools.permutations(range(n)), repeat=h):
        sigma = [0] * N
        for s, loc in enumerate(local):
            for j in range(n):
                sigma[model.label(s, j)] = model.label(s, loc[j])
        sp = Perm(sigma)
        if any(sp * g != g * sp for g in S_perms):
            continue
        # S-equivariance makes x(sigma z)/x(z) constant on every S'-orbit
        idx = [index(sigma, s) for s in range(h)]
        if inv.sharp:
            ok = len(set(idx)) == 1
        elif partner is not None:
            ok = all(idx[s] == idx[partner[s]] for s in range(h))
        else:
            ok = True
        if ok:
            found.append(sp)
    return _group_from_elements(found, N), len(found)


# ---------------------------------------------------------------------------
# numerics


@dataclass
class ReducibleReport:
    N: int
    predicted_order: int
    numeric_order: int
    groups_equal: bool
    sequence_order: int
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return self.groups_equal

    def as_dict(self) -> dict:
        out = {"N": self.N, "galois_order": self.predicted_order, "numeric_order": self.numeric_order,
               "verified": self.groups_equal, "sequence_order": self.sequence_order}
        out.update(self.extra)
        return out


def _solve_fibered(pc: np.ndarray, qc: np.ndarray, P: ReduciblePair) -> np.ndarray:
    """All solutions at given coefficient vectors (ordered like P.A1 and P.A2)."""
    qpoly = np.zeros(P.h + 1, dtype=complex)
    for (_, c), v in zip(P.A2, qc):
        qpoly[c] += v
    ts = roots(qpoly)
    out = []
    for t in ts:
        ppoly = np.zeros(P.n + 1, dtype=complex)
        for (a, c), v in zip(P.A1, pc):
            ppoly[a] += v * t ** c
        for x in roots(ppoly):
            out.append((x, t))
    return np.array(out, dtype=complex)


def _discriminant_along(P: ReduciblePair, p: LaurentPencil, q: LaurentPencil):
    """A polynomial in lam vanishing where the fibered system degenerates, and a degree bound."""
    n, h = P.n, P.h
    cols = {k: [(i, c) for i, (a, c) in enumerate(P.A1) if a == k] for k in range(n + 1)}
    emin = min(c for _, c in P.A1)
    emax = max(c for _, c in P.A1)
    lo = (2 * n - 2) * emin + min(c for _, c in cols[0]) + min(c for _, c in cols[n])
    hi = (2 * n - 2) * emax + max(c for _, c in cols[0]) + max(c for _, c in cols[n])
    qa, qb = max(0, -lo), max(0, hi)
    bound = (hi - lo) + 2 * n * h + qa + qb + 2 * h + 2
    q_index = [c for _, c in P.A2]

    def value(lam: complex) -> complex:
        pc, qc = p.coefficients(lam), q.coefficients(lam)
        qpoly = np.zeros(h + 1, dtype=complex)
        for c, v in zip(q_index, qc):
            qpoly[c] += v
        ts = roots(qpoly)
        D = qpoly[0] ** (qa + 1) * qpoly[h] ** (qb + 1 + 2 * h - 2)
        if h > 1:
            diff = ts[:, None] - ts[None, :]
            D *= np.prod(diff[np.triu_indices(h, 1)] ** 2)
        for t in ts:
            ppoly = np.zeros(n + 1, dtype=complex)
            for (a, c), v in zip(P.A1, pc):
                ppoly[a] += v * t ** c
            xs = roots(ppoly)
            diff = xs[:, None] - xs[None, :]
            D *= ppoly[n] ** (2 * n - 1) * ppoly[0] * np.prod(diff[np.triu_indices(n, 1)] ** 2)
        return D

    def f(lams: np.ndarray) -> np.ndarray:
        return np.array([value(l) for l in lams])

    return f, bound


def _newton(F, z0: np.ndarray, iters: int = 40) -> np.ndarray | None:
    """Newton's method for F(z) = (values, jacobian); None when it does not settle."""
    z = np.array(z0, dtype=complex)
    for _ in range(iters):
        val, jac = F(z)
        try:
            dz = np.linalg.solve(jac, -val)
        except np.linalg.LinAlgError:
            return None
        z = z + dz
        if not np.all(np.isfinite(z)):
            return None
        if np.all(np.abs(dz) <= 1e-14 * np.maximum(np.abs(z), 1.0)):
            return z
    return z if np.all(np.abs(dz) <= 1e-9 * np.maximum(np.abs(z), 1.0)) else None


def _quotient_pencils(P: ReduciblePair, p: LaurentPencil, q: LaurentPencil):
    """The same pencils on the quotient torus by S: coordinates in a basis of the lattice of A1 and A2.

    The covering is unramified, so both systems degenerate at the same lam, but the
    quotient has no S-symmetry and hence no perfect powers in its discriminant.
    """
    rows = list(P.A1) + list(P.A2)
    _, D, V = smith_normal_form(rows)
    d = (D[0][0], D[1][1])

    def coords(a):
        return tuple((a[0] * V[0][i] + a[1] * V[1][i]) // d[i] for i in range(2))

    c1, c2 = [coords(a) for a in P.A1], [coords(a) for a in P.A2]
    Q = normalize_pair(c1, c2)
    M = Q.matrix

    def moved(c, shift):
        return (M[0][0] * c[0] + M[0][1] * c[1] + shift[0], M[1][0] * c[0] + M[1][1] * c[1] + shift[1])

    i1 = [Q.A1.index(moved(c, Q.shift1)) for c in c1]
    i2 = [Q.A2.index(moved(c, Q.shift2)) for c in c2]

    def reorder(pen: LaurentPencil, idx, pts):
        c0 = np.zeros(len(pts), dtype=complex)
        c1_ = np.zeros(len(pts), dtype=complex)
        c0[idx], c1_[idx] = pen.c0, pen.c1
        return LaurentPencil.of(pts, c0, c1_)

    return Q, reorder(p, i1, Q.A1), reorder(q, i2, Q.A2)


def _q_poly(P: ReduciblePair, q: LaurentPencil, lam: complex) -> np.ndarray:
    out = np.zeros(P.h + 1, dtype=complex)
    for (_, c), v in zip(P.A2, q.coefficients(lam)):
        out[c] += v
    return out


def _exact_q_ends(P: ReduciblePair, q: LaurentPencil) -> list[complex]:
    """lam where a root of q escapes to 0 or infinity (extreme coefficients are linear in lam)."""
    out = []
    for c in (0, P.h):
        i = [k for k, pt in enumerate(P.A2) if pt[1] == c][0]
        if q.c1[i] != 0:
            out.append(complex(-q.c0[i] / q.c1[i]))
    return out


def _q_double_roots(P: ReduciblePair, q: LaurentPencil) -> list[complex]:
    """lam where q has a double root, from the discriminant of q(s^(1/dt)) in s."""
    dt = P.dt
    k = P.h // dt
    if k < 2:
        return []

    def disc(lams):
        out = []
        for lam in lams:
            c = _q_poly(P, q, lam)[::dt]
            s = roots(c)
            diff = s[:, None] - s[None, :]
            out.append(c[-1] ** (2 * k - 2) * np.prod(diff[np.triu_indices(k, 1)] ** 2))
        return np.array(out)

    found = []
    for lam0 in fft_roots(disc, 2 * k - 2):
        ts = roots(_q_poly(P, q, lam0))
        dd = np.abs(ts[:, None] - ts[None, :])
        np.fill_diagonal(dd, np.inf)
        i, j = np.unravel_index(np.argmin(dd), dd.shape)

        def Fq(z):
            t, lam = z
            return (np.array([q.partial(1, t, lam), q.partial(1, t, lam, j=1)]),
                    np.array([[q.partial(1, t, lam, j=1), q.partial(1, t, lam, k=1)],
                              [q.partial(1, t, lam, j=2), q.partial(1, t, lam, j=1, k=1)]]))
        r = _newton(Fq, [(ts[i] + ts[j]) / 2, lam0])
        found.append(lam0 if r is None else r[1])
    return found


def _column_meets_q(P: ReduciblePair, p: LaurentPencil, q: LaurentPencil) -> list[complex]:
    """lam where an extremal x-coefficient of p vanishes at a root of q (resultant in t)."""
    found = []
    for col in (0, P.n):
        idx = [i for i, pt in enumerate(P.A1) if pt[0] == col]
        if len(idx) < 2:
            continue
        lo = min(p.b[idx])
        sub = LaurentPencil(np.zeros(len(idx), dtype=int), p.b[idx] - lo, p.c0[idx], p.c1[idx])
        deg = int(max(sub.b))

        def res(lams, sub=sub, deg=deg):
            out = []
            for lam in lams:
                qp = _q_poly(P, q, lam)
                ts = roots(qp)
                out.append(qp[-1] ** deg * np.prod([sub.partial(1, t, lam) for t in ts]))
            return np.array(out)

        for lam0 in fft_roots(res, deg + P.h):
            ts = roots(_q_poly(P, q, lam0))
            t0 = min(ts, key=lambda t: abs(sub.partial(1, t, lam0)))

            def Fc(z, sub=sub):
                t, lam = z
                return (np.array([sub.partial(1, t, lam), q.partial(1, t, lam)]),
                        np.array([[sub.partial(1, t, lam, j=1), sub.partial(1, t, lam, k=1)],
                                  [q.partial(1, t, lam, j=1), q.partial(1, t, lam, k=1)]]))
            r = _newton(Fc, [t0, lam0])
            found.append(lam0 if r is None else r[1])
    return found


def _fiber_double_root(P: ReduciblePair, p: LaurentPencil, q: LaurentPencil, lam0: complex) -> complex:
    """Polish lam0 onto a lam where p(., t) has a double root over a root t of q."""
    Z = _solve_fibered(p.coefficients(lam0), q.coefficients(lam0), P)
    best = None
    for a in range(len(Z)):
        for b in range(a + 1, len(Z)):
            if abs(Z[a, 1] - Z[b, 1]) > 1e-9 * abs(Z[a, 1]):
                continue
            gap = abs(Z[a, 0] - Z[b, 0]) / abs(Z[a, 0])
            if best is None or gap < best[0]:
                best = (gap, a, b)
    if best is None:
        return lam0
    _, a, b = best

    def Fp(z):
        x, t, lam = z
        val = np.array([p.partial(x, t, lam), p.partial(x, t, lam, i=1), q.partial(1, t, lam)])
        jac = np.array([
            [p.partial(x, t, lam, i=1), p.partial(x, t, lam, j=1), p.partial(x, t, lam, k=1)],
            [p.partial(x, t, lam, i=2), p.partial(x, t, lam, i=1, j=1), p.partial(x, t, lam, i=1, k=1)],
            [0.0, q.partial(1, t, lam, j=1), q.partial(1, t, lam, k=1)]])
        return val, jac
    r = _newton(Fp, [(Z[a, 0] + Z[b, 0]) / 2, Z[a, 1], lam0])
    if r is None or abs(r[2] - lam0) > 0.05 * max(1.0, abs(lam0)):
        return lam0
    return complex(r[2])


def _winding(f, centre: complex, radius: float, samples: int = 256) -> int:
    lam = centre + radius * np.exp(2j * math.pi * np.arange(samples + 1) / samples)
    ang = np.unwrap(np.angle(f(lam)))
    return int(round((ang[-1] - ang[0]) / TWO_PI))


def _dedupe(values: Iterable[complex], rel: float = 1e-8) -> list[complex]:
    out: list[complex] = []
    for v in values:
        if all(abs(v - u) > rel * max(1.0, abs(u)) for u in out):
            out.append(complex(v))
    return out


def _bifurcation_fibered(P: ReduciblePair, p: LaurentPencil, q: LaurentPencil) -> list[complex]:
    """Every lam at which the pencil system loses a solution in (C*)^2 or two solutions collide."""
    P, p, q = _quotient_pencils(P, p, q)
    known = _dedupe(_exact_q_ends(P, q) + _q_double_roots(P, q) + _column_meets_q(P, p, q))
    f, bound = _discriminant_along(P, p, q)
    mult = []
    for r in known:
        others = [abs(r - u) for u in known if u != r]
        rad = min([1e-4 * max(1.0, abs(r))] + [0.3 * d for d in others])
        mult.append(_winding(f, r, rad))

    def rest(lams):
        out = f(lams)
        for r, m in zip(known, mult):
            out = out / (lams - r) ** m
        return out

    remaining = bound - sum(mult)
    fibers = [_fiber_double_root(P, p, q, lam) for lam in fft_roots(rest, max(remaining, 0))] if remaining > 0 else []
    return _dedupe(known + fibers)


def _model_labels(model: PairModel, Z: np.ndarray, tol: float = 1e-6) -> list[int]:
    """Labels of the solutions of the special member, read from their coordinates."""
    P = model.P
    ts = Z[:, 1]
    uniq: list[complex] = []
    for t in ts:
        if all(abs(t - u) > 1e-8 * abs(u) for u in uniq):
            uniq.append(t)
    if len(uniq) != P.h:
        raise TrackingError("fibers are not separated")
    ang = np.sort(np.angle(uniq) % TWO_PI)
    gaps = np.diff(np.concatenate([ang, [ang[0] + TWO_PI]]))
    k = int(np.argmax(gaps))
    cut = float((ang[k] + gaps[k] / 2) % TWO_PI)
    rel = [(cmath.phase(u) - cut) % TWO_PI for u in uniq]
    order = np.argsort(rel)
    slot_of = {int(i): s for s, i in enumerate(order)}
    labels = []
    for x, t in Z:
        i = min(range(P.h), key=lambda r: abs(uniq[r] - t))
        s = slot_of[i]
        theta = cut + rel[i]
        x0 = model.x_of(abs(t), theta, 0)
        j = (cmath.phase(x / x0) * P.n / TWO_PI) % P.n
        jr = round(j) % P.n
        if abs(x - model.x_of(abs(t), theta, jr)) > tol * abs(x):
            raise TrackingError("solution does not sit on the special member's model")
        labels.append(model.label(s, jr))
    if len(set(labels)) != P.N:
        raise TrackingError("model labelling is not a bijection")
    return labels


def numeric_group_reducible(P: ReduciblePair, seed: int = 0, tol: float = 1e-11):
    """Monodromy group of a random pencil through a random system, on model labels."""
    rng = np.random.default_rng(seed)
    p = LaurentPencil.of(P.A1, random_unit_coefficients(len(P.A1), rng), random_unit_coefficients(len(P.A1), rng))
    q = LaurentPencil.of(P.A2, random_unit_coefficients(len(P.A2), rng), random_unit_coefficients(len(P.A2), rng))
    bif = _bifurcation_fibered(P, p, q)
    loops = star_loops(bif, rng)
    base = loops[0].base
    tracker = SystemTracker(p, q, tol=tol)
    Z0 = _solve_fibered(p.coefficients(base), q.coefficients(base), P)
    Z0, _ = tracker.newton(Z0, base)
    perms = [loop_permutation(tracker.track(L, Z0), Z0) for L in loops]
    # carry the labels to the special member p = 1 + t^c x^n
    special = np.array([1.0 if pt in ((0, 0), (P.n, P.varsigma)) else 0.0 for pt in P.A1], dtype=complex)
    pb = p.coefficients(base)
    move = SystemTracker(LaurentPencil.of(P.A1, pb, special - pb),
                         LaurentPencil.of(P.A2, q.coefficients(base), np.zeros(len(P.A2))), tol=tol)
    bend = complex(rng.normal(), rng.normal()) * 0.3
    Z1 = move.path(lambda u: u + bend * u * (1 - u), Z0)
    model = PairModel(P)
    label = _model_labels(model, Z1)
    relabelled = [galois.relabel(g, label) for g in perms]
    info = {"bifurcation_points": len(bif), "loops": len(loops)}
    return PermGroup(relabelled, P.N), info


def numeric_check_reducible(P: ReduciblePair, seed: int = 0, tol: float = 1e-11,
                            prediction: ReduciblePrediction | None = None) -> ReducibleReport:
    pred = prediction or predicted_galois_reducible(P)
    G, info = numeric_group_reducible(P, seed=seed, tol=tol)
    rep = ReducibleReport(P.N, pred.group.order(), G.order(), G == pred.group, pred.sequence_order, info)
    return rep


# ---------------------------------------------------------------------------
# two collinear supports


@dataclass(frozen=True)
class TwoLinesPair:
    u1: Point
    u2: Point
    K1: tuple[int, ...]          # exponents of the univariate [p] in y1 = z^u1
    K2: tuple[int, ...]
    S: tuple[Torsion, ...]       # xi cap chi as U^{-1} Z^2 mod 1

    @property
    def n1(self) -> int:
        return max(self.K1)

    @property
    def n2(self) -> int:
        return max(self.K2)

    @property
    def nu(self) -> int:
        return abs(self.u1[0] * self.u2[1] - self.u1[1] * self.u2[0])

    @property
    def N(self) -> int:
        return self.n1 * self.n2 * self.nu

    def column(self, i: int) -> tuple[Fraction, Fraction]:
        """i-th column of U^{-1}, U having rows u1 and u2."""
        (a, b), (c, d) = self.u1, self.u2
        det = a * d - b * c
        col = (Fraction(d, det), Fraction(-c, det)) if i == 0 else (Fraction(-b, det), Fraction(a, det))
        return col

    def as_dict(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "nu": self.nu, "N": self.N, "S_order": len(self.S)}


def twolines_pair(A1, A2) -> TwoLinesPair:
    a1, a2 = _points(A1), _points(A2)
    if not (len(a1) >= 2 and len(a2) >= 2 and is_collinear(a1) and is_collinear(a2)):
        raise ValueError("both supports must be collinear with at least two points")
    u1, u2 = _primitive_direction(a1), _primitive_direction(a2)
    if u1[0] * u2[1] - u1[1] * u2[0] == 0:
        raise ValueError("parallel supports: no solutions generically")
    _, S = torsion_group([u1, u2])
    return TwoLinesPair(u1, u2, tuple(_line_coordinates(a1, u1)), tuple(_line_coordinates(a2, u2)), tuple(S))


class TwoLinesModel:
    """Labels (a * n2 + b) * nu + f: slot a of y1, slot b of y2, element f of S."""

    def __init__(self, T: TwoLinesPair):
        self.T = T
        self.n1, self.n2, self.nu = T.n1, T.n2, len(T.S)
        self.N = T.N
        self.index = {e: i for i, e in enumerate(T.S)}

    def label(self, a: int, b: int, f: int) -> int:
        return (a * self.n2 + b) * self.nu + f

    def split(self, y: int) -> tuple[int, int, int]:
        ab, f = divmod(y, self.nu)
        a, b = divmod(ab, self.n2)
        return a, b, f

    def _shift(self, f: int, v: Torsion, sign: int) -> int:
        e = self.T.S[f]
        return self.index[((e[0] + sign * v[0]) % 1, (e[1] + sign * v[1]) % 1)]

    def _tau(self, which: int) -> Perm:
        col = self.T.column(which)
        p = [0] * self.N
        n_here = self.n1 if which == 0 else self.n2
        for y in range(self.N):
            a, b, f = self.split(y)
            s = a if which == 0 else b
            if s >= 1:
                end = (a - 1, b, f) if which == 0 else (a, b - 1, f)
            else:
                g = self._shift(f, col, -1)
                end = (n_here - 1, b, g) if which == 0 else (a, n_here - 1, g)
            p[self.label(*end)] = y
        return Perm(p)

    def _swap(self, which: int, i: int) -> Perm:
        p = list(range(self.N))
        for y in range(self.N):
            a, b, f = self.split(y)
            s = a if which == 0 else b
            if s == i - 1:
                z = self.label(a + 1, b, f) if which == 0 else self.label(a, b + 1, f)
                p[y], p[z] = z, y
        return Perm(p)

    def lift(self, word: BraidWord, which: int) -> Perm:
        tau = self._tau(which)
        m = self.n1 if which == 0 else self.n2
        out = Perm.identity(self.N)
        for g, e in word.letters:
            if g == TAU:
                step = tau ** e
            elif g < m:
                step = self._swap(which, g) ** (e % 2)
            else:
                step = (tau * self._swap(which, m - 1) * tau.inverse()) ** (e % 2)
            out = out * step
        return out


@dataclass
class TwoLinesPrediction:
    pair: TwoLinesPair
    group: PermGroup
    kernel_order: int
    candidate_orders: dict
    candidate_equal: dict

    def as_dict(self) -> dict:
        out = self.pair.as_dict()
        out.update({"galois_order": self.group.order(), "kernel_order": self.kernel_order,
                    "candidates": {k: {"order": self.candidate_orders[k], "equals_kernel": self.candidate_equal[k]}
                                   for k in self.candidate_orders}})
        return out


def _candidate_kernel(T: TwoLinesPair, row_mult: int, col_mult: int) -> set[tuple[int, ...]]:
    """Translation tuples whose row sums lie in row_mult*S and column sums in col_mult*S."""
    S = list(T.S)
    idx = {e: i for i, e in enumerate(S)}

    def add(u, v):
        return ((u[0] + v[0]) % 1, (u[1] + v[1]) % 1)

    def times(k, u):
        return ((k * u[0]) % 1, (k * u[1]) % 1)

    rows_ok = {times(row_mult, e) for e in S}
    cols_ok = {times(col_mult, e) for e in S}
    zero = (Fraction(0), Fraction(0))
    out = set()
    for tup in itertools.product(range(len(S)), repeat=T.n1 * T.n2):
        grid = [[S[tup[a * T.n2 + b]] for b in range(T.n2)] for a in range(T.n1)]
        ok = True
        for a in range(T.n1):
            acc = zero
            for b in range(T.n2):
                acc = add(acc, grid[a][b])
            ok &= acc in rows_ok
        for b in range(T.n2):
            acc = zero
            for a in range(T.n1):
                acc = add(acc, grid[a][b])
            ok &= acc in cols_ok
        if ok:
            out.add(tuple(idx[grid[a][b]] for a in range(T.n1) for b in range(T.n2)))
    return out


def _winding_kernel(T: TwoLinesPair) -> set[tuple[int, ...]]:
    """Span of the row translations by U^{-1}e1 and the column translations by U^{-1}e2."""
    S = list(T.S)
    idx = {e: i for i, e in enumerate(S)}
    c1, c2 = (tuple(x % 1 for x in T.column(i)) for i in (0, 1))
    gens = []
    for a in range(T.n1):
        gens.append(tuple(c1 if r == a else (Fraction(0), Fraction(0)) for r in range(T.n1) for _ in range(T.n2)))
    for b in range(T.n2):
        gens.append(tuple(c2 if c == b else (Fraction(0), Fraction(0)) for _ in range(T.n1) for c in range(T.n2)))
    zero = tuple((Fraction(0), Fraction(0)) for _ in range(T.n1 * T.n2))
    seen, todo = {zero}, [zero]
    while todo:
        u = todo.pop()
        for g in gens:
            v = tuple(((x[0] + y[0]) % 1, (x[1] + y[1]) % 1) for x, y in zip(u, g))
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return {tuple(idx[e] for e in u) for u in seen}


def predicted_galois_twolines(A1, A2, bound: int = 10, max_elements: int = 500_000) -> TwoLinesPrediction:
    """G_A generated by the lifts of G_{A1} x G_{A2}; its kernel is compared with both readings."""
    T = twolines_pair(A1, A2)
    model = TwoLinesModel(T)
    gens = [model.lift(w, 0) for w in univariate_prediction(T.K1).braid_generators]
    gens += [model.lift(w, 1) for w in univariate_prediction(T.K2).braid_generators]
    G = PermGroup(gens, T.N)
    cand_orders, cand_equal, kernel_order = {}, {}, -1
    if T.N <= bound and G.order() <= max_elements and len(T.S) ** (T.n1 * T.n2) <= max_elements:
        kernel = set()
        zero = model.index[(Fraction(0), Fraction(0))]
        for g in G.elements():
            tup = []
            for a in range(T.n1):
                for b in range(T.n2):
                    y = model.label(a, b, zero)
                    a2, b2, f2 = model.split(g[y])
                    if (a2, b2) != (a, b):
                        break
                    tup.append(f2)
                else:
                    continue
                break
            else:
                kernel.add(tuple(tup))
        kernel_order = len(kernel)
        for name, (r, c) in {"n1S on P, n2S on Q": (T.n1, T.n2), "n2S on P, n1S on Q": (T.n2, T.n1)}.items():
            cand = _candidate_kernel(T, r, c)
            cand_orders[name] = len(cand)
            cand_equal[name] = cand == kernel
        wind = _winding_kernel(T)
        cand_orders["row and column windings"] = len(wind)
        cand_equal["row and column windings"] = wind == kernel
    return TwoLinesPrediction(T, G, kernel_order, cand_orders, cand_equal)


def numeric_group_twolines(A1, A2, seed: int = 0, tol: float = 1e-11) -> PermGroup:
    """Monodromy of random loops on the product of the two univariate discriminant complements."""
    T = twolines_pair(A1, A2)
    model = TwoLinesModel(T)
    rng = np.random.default_rng(seed)
    a1, a2 = _points(A1), _points(A2)
    o1, o2 = a1[0], a2[0]
    a1 = [(p[0] - o1[0], p[1] - o1[1]) for p in a1]
    a2 = [(p[0] - o2[0], p[1] - o2[1]) for p in a2]
    k1 = [(p[0] // T.u1[0] if T.u1[0] else p[1] // T.u1[1]) for p in a1]
    k2 = [(p[0] // T.u2[0] if T.u2[0] else p[1] // T.u2[1]) for p in a2]
    cp = [random_unit_coefficients(len(a1), rng) for _ in range(2)]
    cq = [random_unit_coefficients(len(a2), rng) for _ in range(2)]
    fam1 = Family.from_support([(k, i) for i in (0, 1) for k in k1], np.concatenate(cp))
    fam2 = Family.from_support([(k, i) for i in (0, 1) for k in k2], np.concatenate(cq))
    bif = sorted(set(bifurcation_points(fam1)) | set(bifurcation_points(fam2)), key=lambda z: (z.real, z.imag))
    loops = star_loops(bif, rng)
    base = loops[0].base
    p = LaurentPencil.of(a1, cp[0], cp[1])
    q = LaurentPencil.of(a2, cq[0], cq[1])
    U = np.array([T.u1, T.u2], dtype=float)
    Uinv = np.linalg.inv(U)

    def univariate_roots(ks, c):
        lo = min(ks)
        poly = np.zeros(max(ks) - lo + 1, dtype=complex)
        for k, v in zip(ks, c):
            poly[k - lo] += v
        return roots(poly)

    y1 = univariate_roots(k1, p.coefficients(base))
    y2 = univariate_roots(k2, q.coefficients(base))
    cuts = []
    for ys in (y1, y2):
        ang = np.sort(np.angle(ys) % TWO_PI)
        gaps = np.diff(np.concatenate([ang, [ang[0] + TWO_PI]]))
        k = int(np.argmax(gaps))
        cuts.append(float((ang[k] + gaps[k] / 2) % TWO_PI))
    rel1 = (np.angle(y1) - cuts[0]) % TWO_PI
    rel2 = (np.angle(y2) - cuts[1]) % TWO_PI
    Z, labels = [], []
    for a, i in enumerate(np.argsort(rel1)):
        for b, j in enumerate(np.argsort(rel2)):
            logy = np.array([math.log(abs(y1[i])) + 1j * (cuts[0] + rel1[i]),
                             math.log(abs(y2[j])) + 1j * (cuts[1] + rel2[j])])
            w = Uinv @ logy
            for f, e in enumerate(T.S):
                Z.append(np.exp(w + 2j * math.pi * np.array([float(e[0]), float(e[1])])))
                labels.append(model.label(a, b, f))
    Z = np.array(Z)
    tracker = SystemTracker(p, q, tol=tol)
    Z, ok = tracker.newton(Z, base)
    perms = [galois.relabel(loop_permutation(tracker.track(L, Z), Z), labels) for L in loops]
    return PermGroup(perms, T.N)
