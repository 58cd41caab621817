"""Lattice computations on support sets.

A support lives in Z^{k+1}; the first coordinate is the exponent of x and the
remaining k coordinates are exponents of the parameters t_1..t_k.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Point = tuple[int, ...]


def gcd_all(values: Iterable[int]) -> int:
    """GCD of a family, with GCD of the empty or all-zero family equal to 0."""
    return reduce(gcd, (abs(int(v)) for v in values), 0)


@dataclass(frozen=True)
class SupportSet:
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(sorted({tuple(int(c) for c in p) for p in self.points}))
        if len(pts) != len(self.points):
            raise ValueError("support points must be distinct")
        if pts and len({len(p) for p in pts}) != 1:
            raise ValueError("support points must share one dimension")
        if pts and len(pts[0]) < 2:
            raise ValueError("support points need an x-exponent and at least one parameter")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[Sequence[int]]) -> "SupportSet":
        return cls(tuple(tuple(p) for p in points))

    @classmethod
    def from_json(cls, text: str) -> "SupportSet":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(p, list) for p in data):
            raise ValueError("support JSON must be a list of integer lists")
        if any(not isinstance(c, int) or isinstance(c, bool) for p in data for c in p):
            raise ValueError("support coordinates must be integers")
        return cls.of(data)

    def to_json(self) -> str:
        return json.dumps([list(p) for p in self.points])

    @property
    def k(self) -> int:
        return len(self.points[0]) - 1

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def translate(self, v: Sequence[int]) -> "SupportSet":
        return SupportSet(tuple(tuple(a + b for a, b in zip(p, v)) for p in self.points))


@dataclass(frozen=True)
class SupportInvariants:
    N: int
    d: int
    sharp: bool
    theta: int
    g: int
    on_line: bool
    extremal_exponent: tuple[int, ...] | None

    def as_dict(self) -> dict:
        return {
            "N": self.N, "d": self.d, "theta": self.theta, "g": self.g,
            "sharp": self.sharp, "on_line": self.on_line,
            "extremal_exponent": list(self.extremal_exponent) if self.extremal_exponent is not None else None,
        }


def normalize(s: SupportSet) -> SupportSet:
    """Translate so that the lexicographically smallest point is the origin."""
    if len(s) == 0:
        raise ValueError("empty support")
    base = s.points[0]
    return s.translate(tuple(-c for c in base))


def is_collinear(points: Sequence[Point]) -> bool:
    if len(points) <= 2:
        return True
    p0 = points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
    ref = next((v for v in diffs if any(v)), None)
    if ref is None:
        return True
    for v in diffs:
        for i, j in itertools.combinations(range(len(ref)), 2):
            if ref[i] * v[j] - ref[j] * v[i] != 0:
                return False
    return True


def invariants(s: SupportSet) -> SupportInvariants:
    """Horizontal width N, horizontal index d, border index theta and g = GCD(d, theta)."""
    xs = [p[0] for p in s.points]
    lo, hi = min(xs), max(xs)
    N = hi - lo
    if N == 0:
        raise ValueError("degenerate support: no dependence on x")
    d = gcd_all(x - lo for x in xs)
    left = [p[1:] for p in s.points if p[0] == lo]
    right = [p[1:] for p in s.points if p[0] == hi]
    sharp = len(left) == 1 and len(right) == 1
    on_line = is_collinear(s.points)
    a = None
    if sharp:
        # exponent of c_q / c_{q+N}
        a = tuple(u - v for u, v in zip(left[0], right[0]))
        theta = gcd_all(a)
    else:
        theta = 1
    return SupportInvariants(N=N, d=d, sharp=sharp, theta=theta, g=gcd(d, theta),
                             on_line=on_line, extremal_exponent=a)


def _box(k: int, radius: int):
    """Integer vectors of sup-norm exactly `radius`, in lexicographic order."""
    for w in itertools.product(range(-radius, radius + 1), repeat=k):
        if max(abs(c) for c in w) == radius:
            yield w


def monomial_specialization(s: SupportSet, max_radius: int = 50) -> tuple[tuple[int, ...], SupportSet]:
    """Weights n with t_j -> t^{n_j} that keep N, d, theta and leave the support off a line.

    Returns the weights and the image support in Z^2 (duplicates merged).
    """
    k = s.k
    if k < 2:
        raise ValueError("already bivariate")
    if is_collinear(s.points):
        raise ValueError("degenerate support")
    inv = invariants(s)
    pts = s.points
    diffs = [tuple(a - b for a, b in zip(p[1:], q[1:])) for p, q in itertools.combinations(pts, 2) if p[0] == q[0]]

    def image(w):
        return tuple(sorted({(p[0], sum(c * n for c, n in zip(p[1:], w))) for p in pts}))

    for radius in range(1, max_radius + 1):
        for w in _box(k, radius):
            if inv.sharp and inv.theta != 0:
                if sum(ai * wi for ai, wi in zip(inv.extremal_exponent, w)) != inv.theta:
                    continue
            else:
                if any(sum(c * n for c, n in zip(v, w)) == 0 for v in diffs):
                    continue
            img = image(w)
            if is_collinear(img):
                continue
            s2 = SupportSet(img)
            inv2 = invariants(s2)
            if (inv2.N, inv2.d, inv2.theta) == (inv.N, inv.d, inv.theta):
                return tuple(w), normalize(s2)
    raise ValueError("no monomial specialization found within search box")


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U M V = D, U and V unimodular and d_1 | d_2 | ... on the diagonal."""
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility on the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, A, V


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    _, D, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
