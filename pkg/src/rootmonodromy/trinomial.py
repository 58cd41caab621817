"""Exact combinatorics of trinomials 1 + t^a x^m + t^b x^n.

Angles are kept as exact fractions of a full turn (``Fraction`` in [0, 1)).
"""
from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .braid import BraidWord
from .support import SupportSet, is_collinear, normalize


@dataclass(frozen=True)
class Type2:
    """Marker for supports with two points on one vertical line."""
    points: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TrinomialModel:
    m: int
    n: int
    a: int
    b: int

    def __post_init__(self):
        if not (0 < self.m < self.n):
            raise ValueError("need 0 < m < n")
        if gcd(self.m, self.n) != 1:
            raise ValueError("need GCD(m, n) = 1")
        if self.delta <= 0:
            raise ValueError("need n a - m b > 0")

    @property
    def delta(self) -> int:
        return self.n * self.a - self.m * self.b

    @property
    def gcd_nb(self) -> int:
        return gcd(self.n, self.b)

    @property
    def support(self) -> SupportSet:
        return SupportSet.of([(0, 0), (self.m, self.a), (self.n, self.b)])

    @property
    def binomial_constant(self) -> float:
        """C with t^delta = C at the nonzero bifurcation points."""
        m, n = self.m, self.n
        return (-1) ** n * n ** n * float(n - m) ** (m - n) / m ** m

    @property
    def rho(self) -> float:
        m, n = self.m, self.n
        log_c = n * math.log(n) + (m - n) * math.log(n - m) - m * math.log(m)
        return math.exp(log_c / self.delta)

    def terms(self) -> tuple[tuple[int, int, complex], ...]:
        return ((0, 0, 1 + 0j), (self.m, self.a, 1 + 0j), (self.n, self.b, 1 + 0j))


@dataclass(frozen=True)
class Transform:
    translation: tuple[int, int]
    t_inverted: bool
    x_inverted: bool
    d: int


def to_type1(s: SupportSet) -> tuple[TrinomialModel, Transform] | Type2:
    s = normalize(s)
    if len(s) != 3 or s.k != 1:
        raise ValueError("expected three points in Z^2")
    if is_collinear(s.points):
        raise ValueError("line support")
    xs = [p[0] for p in s.points]
    if len(set(xs)) < 3:
        return Type2(s.points)
    pts = sorted(s.points)
    x0, t0 = pts[0]
    (m, a), (n, b) = [(p[0] - x0, p[1] - t0) for p in pts[1:]]
    inverted = n * a - m * b < 0
    if inverted:
        a, b = -a, -b
    d = gcd(m, n)
    model = TrinomialModel(m // d, n // d, a, b)
    return model, Transform(translation=(-x0, -t0), t_inverted=inverted, x_inverted=False, d=d)


# ---------------------------------------------------------------------------
# bifurcation set and coamoeba


def bifurcation_arguments(T: TrinomialModel) -> list[Fraction]:
    """Arguments (in turns) of the delta nonzero bifurcation points, increasing."""
    base = Fraction(T.n % 2, 2 * T.delta)
    return [base + Fraction(k, T.delta) for k in range(T.delta)]


def bifurcation_set(T: TrinomialModel) -> tuple[float, list[complex]]:
    rho = T.rho
    return rho, [rho * cmath.exp(2j * math.pi * float(f)) for f in bifurcation_arguments(T)]


@dataclass(frozen=True)
class CoamoebaData:
    singular_vertices: tuple[tuple[Fraction, Fraction], ...]
    d_geodesic_count: int
    base_arg: Fraction
    cut: Fraction
    d_positions: tuple[Fraction, ...]          # theta of D-segment k at height base_arg
    parallelogram_labels: dict = field(default_factory=dict)   # vertex -> k


def singular_vertices(T: TrinomialModel) -> list[tuple[Fraction, Fraction]]:
    """Solutions of n theta + b nu = 0 and m theta + a nu = 1/2 (mod 1)."""
    m, n, a, b, dl = T.m, T.n, T.a, T.b, T.delta
    found = set()
    for p in range(dl):
        for q in range(dl):
            qq = Fraction(2 * q + 1, 2)
            theta = (a * p - b * qq) / dl
            nu = (-m * p + n * qq) / dl
            found.add((theta % 1, nu % 1))
    verts = sorted(found, key=lambda v: v[1])
    if len(verts) != dl:
        raise AssertionError("vertex count differs from delta")
    if len({v[1] for v in verts}) != dl:
        raise AssertionError("vertices share a nu-coordinate")
    return verts


def default_base_arg(T: TrinomialModel) -> Fraction:
    """A quarter cell counterclockwise from the first bifurcation argument."""
    return bifurcation_arguments(T)[0] + Fraction(1, 4 * T.delta)


def d_positions(T: TrinomialModel, nu0: Fraction) -> tuple[Fraction, list[Fraction]]:
    """Cut and the arguments of the small-|t| roots at nu0, labelled from the cut."""
    first = ((Fraction(1, 2) - T.b * nu0) / T.n) % 1
    cut = (first - Fraction(1, 2 * T.n)) % 1
    return cut, [(first + Fraction(k, T.n)) % 1 for k in range(T.n)]


def coamoeba(T: TrinomialModel, nu0: Fraction | None = None) -> CoamoebaData:
    nu0 = default_base_arg(T) if nu0 is None else Fraction(nu0)
    verts = singular_vertices(T)
    if any(v[1] == nu0 % 1 for v in verts):
        raise ValueError("degenerate base argument")
    cut, pos = d_positions(T, nu0)
    labels = {}
    for th, nu in verts:
        lifted = nu0 - (nu0 - nu) % 1                   # in (nu0 - 1, nu0]
        left = pos[0] + (nu0 - lifted) * Fraction(T.b, T.n)
        k = int(((th - left) % 1) * T.n) + 1
        labels[(th, nu)] = k
    return CoamoebaData(tuple(verts), T.gcd_nb, nu0, cut, tuple(pos), labels)


def loop_vertices(T: TrinomialModel, nu0: Fraction | None = None) -> list[tuple[Fraction, Fraction]]:
    """Vertex enclosed by loop j (j = 1..delta), loops ordered clockwise from nu0."""
    data = coamoeba(T, nu0)
    nu0 = data.base_arg
    return sorted(data.singular_vertices, key=lambda v: (nu0 - v[1]) % 1)


def predicted_monodromy(T: TrinomialModel, nu0: Fraction | None = None) -> dict[int, BraidWord]:
    data = coamoeba(T, nu0)
    out = {0: BraidWord.tau(T.n, T.b)}
    for j, v in enumerate(loop_vertices(T, data.base_arg), start=1):
        out[j] = BraidWord.b(T.n, data.parallelogram_labels[v])
    return out


def fiber_data(T: TrinomialModel, nu0: Fraction | None = None) -> dict[int, int]:
    data = coamoeba(T, nu0)
    hist = Counter(data.parallelogram_labels.values())
    return {k: hist.get(k, 0) for k in range(1, T.n + 1)}


def turns_to_radians(f: Fraction) -> float:
    return 2 * math.pi * float(f)
