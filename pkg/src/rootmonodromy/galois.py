"""Predicted braid monodromy and Galois groups of a support, and numeric verification."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .braid import BraidWord
from .numeric import (Family, LoopSpec, TrackedBraid, TrackingError, arc, bifurcation_points, railway_graph,
                      monodromy_group, random_unit_coefficients, star_loops)
from .permgroup import Perm, PermGroup, WreathGround, effective_g, wreath_order, wreath_subgroup_generators
from .support import SupportInvariants, SupportSet, invariants, monomial_specialization, normalize


@dataclass
class Prediction:
    invariants: SupportInvariants
    braid_generators: list[BraidWord]
    galois_group: PermGroup
    order_formula_value: int

    def as_dict(self) -> dict:
        inv = self.invariants
        return {
            "N": inv.N, "d": inv.d, "theta": inv.theta, "g": inv.g, "sharp": inv.sharp,
            "on_line": inv.on_line,
            "galois_order": self.galois_group.order(),
            "order_formula": self.order_formula_value,
            "braid_generators": [str(b) for b in self.braid_generators],
        }


def line_galois_group(N: int, theta: int) -> PermGroup:
    """Permutation image of <tau^theta>: rotation of the N slots by theta."""
    rot = BraidWord.tau(N, theta).permutation() if N > 1 else Perm.identity(N)
    return PermGroup([rot], N)


def predict(s: SupportSet) -> Prediction:
    s = normalize(s)
    inv = invariants(s)
    N, d = inv.N, inv.d
    if inv.on_line:
        gens = [BraidWord.tau(N, inv.theta)]
        G = line_galois_group(N, inv.theta)
        return Prediction(inv, gens, G, G.order())
    m = N // d
    upstairs = [BraidWord.b(m, j) for j in range(1, m + 1)] if m >= 2 else []
    upstairs.append(BraidWord.tau(m, inv.theta))
    gens = [w.f_embed(d) for w in upstairs]
    g = effective_g(d, inv.theta)
    G = PermGroup(wreath_subgroup_generators(N, d, g), N)
    return Prediction(inv, gens, G, wreath_order(N, d, g))


# ---------------------------------------------------------------------------
# comparison


@dataclass
class Report:
    N: int
    predicted_order: int
    numeric_order: int
    groups_equal: bool
    ind_ok: list[bool]
    words_equal: list[bool] | None = None
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        ok = self.groups_equal and all(self.ind_ok)
        if self.words_equal is not None:
            ok = ok and all(self.words_equal)
        return ok

    def as_dict(self) -> dict:
        out = {
            "N": self.N, "predicted_order": self.predicted_order, "group_order": self.numeric_order,
            "groups_equal": self.groups_equal, "ind_in_theta_Z": self.ind_ok, "match": self.verdict,
        }
        if self.words_equal is not None:
            out["words_equal"] = self.words_equal
        out.update(self.extra)
        return out


def compare(pred: Prediction, numeric: PermGroup, words: Sequence[BraidWord],
            predicted_words: Sequence[BraidWord] | None = None) -> Report:
    N = pred.invariants.N
    if numeric.degree != N or any(w.N != N for w in words):
        raise ValueError("size mismatch")
    theta = pred.invariants.theta
    ind_ok = [(w.ind() == 0) if theta == 0 else (w.ind() % theta == 0) for w in words]
    same = numeric == pred.galois_group
    eq = None
    if predicted_words is not None:
        eq = [w.equals(v) for w, v in zip(words, predicted_words)]
        if len(predicted_words) != len(words):
            eq.append(False)
    return Report(N, pred.galois_group.order(), numeric.order(), same, ind_ok, eq)


# ---------------------------------------------------------------------------
# numeric verification


def orbit_labels(z: np.ndarray, d: int, rel_tol: float = 1e-6) -> list[int]:
    """Ground point (block * d + phase) of every root, blocks being mu_d-orbits."""
    n = len(z)
    label = [-1] * n
    zeta = np.exp(2j * math.pi / d)
    block = 0
    for i in range(n):
        if label[i] >= 0:
            continue
        for k in range(d):
            w = z[i] * zeta ** k
            j = int(np.argmin(np.abs(z - w)))
            if abs(z[j] - w) > rel_tol * abs(w) or label[j] >= 0:
                raise TrackingError("roots are not closed under x -> x e^{2 pi i/d}")
            label[j] = block * d + k
        block += 1
    return label


def relabel(p: Perm, label: Sequence[int]) -> Perm:
    """Transport a permutation of root indices to the ground set."""
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[label[i]] = label[j]
    return Perm(out)


def _family_k1(s: SupportSet, rng: np.random.Generator) -> Family:
    coeffs = random_unit_coefficients(len(s), rng)
    return Family.from_support(s.points, coeffs)


def numeric_group(s: SupportSet, seed: int = 0, tol: float = 1e-10) -> tuple[PermGroup, list[TrackedBraid], dict]:
    """Monodromy group of a random member of C^A (A in Z^2) on the mu_d-labelled ground set."""
    s = normalize(s)
    if s.k != 1:
        raise ValueError("expected a support in Z^2")
    inv = invariants(s)
    rng = np.random.default_rng(seed)
    fam = _family_k1(s, rng)
    pts = bifurcation_points(fam)
    if pts:
        loops = star_loops(list(pts) + [0j], rng)
    else:
        loops = [LoopSpec([arc(0, 1.0, 0.0, 2 * math.pi)], name="l0", encloses=[0j])]
    G, tracked = monodromy_group(fam, loops, tol=tol)
    # line supports: the prediction lives on argument slots
    label = list(range(inv.N)) if inv.on_line else orbit_labels(tracked[0].start, inv.d)
    perms = [relabel(b.permutation, label) for b in tracked]
    info = {"bifurcation_points": len(pts), "loops": len(loops)}
    return PermGroup(perms, inv.N), tracked, info


def verify(s: SupportSet, seed: int = 0, tol: float = 1e-10) -> Report:
    """Track a random polynomial with support s and compare with predict(s)."""
    s = normalize(s)
    weights = None
    if s.k > 1:
        weights, s = monomial_specialization(s)
    pred = predict(s)
    G, tracked, info = numeric_group(s, seed=seed, tol=tol)
    words = [b.word for b in tracked]
    rep = compare(pred, G, words)
    sound = all(b.word.permutation() == b.permutation and b.word.ind() == b.winding for b in tracked)
    rep.extra.update(info)
    rep.extra["words"] = [str(w) for w in words]
    rep.extra["extraction_sound"] = sound
    if weights is not None:
        rep.extra["weights"] = list(weights)
        rep.extra["specialized_support"] = [list(p) for p in s.points]
    return rep


# ---------------------------------------------------------------------------
# trinomials: loop-by-loop certification


@dataclass
class TrinomialCertificate:
    model: tuple[int, int, int, int]
    bifurcation_error: float
    report: Report
    predicted_words: list[BraidWord]
    tracked_words: list[BraidWord]
    tracked_k: list[int | None]          # k with tracked l_j equal to b_k, j >= 1
    fiber_histogram: dict[int, int]
    tracked_histogram: dict[int, int]

    @property
    def ok(self) -> bool:
        return (self.report.verdict and self.bifurcation_error <= 1e-9
                and self.fiber_histogram == self.tracked_histogram)

    def as_dict(self) -> dict:
        out = self.report.as_dict()
        out.update({
            "model": list(self.model), "bifurcation_error": self.bifurcation_error,
            "predicted": [str(w) for w in self.predicted_words],
            "fiber_histogram": {str(k): v for k, v in self.fiber_histogram.items()},
            "tracked_histogram": {str(k): v for k, v in self.tracked_histogram.items()},
            "certified": self.ok,
        })
        return out


def _which_b(w: BraidWord) -> int | None:
    return next((k for k in range(1, w.N + 1) if w.equals(BraidWord.b(w.N, k))), None)


def certify_trinomial(T, eps: float = 1e-2, outer: float = 1e2, tol: float = 1e-10) -> TrinomialCertificate:
    """Track the railway loops of 1 + t^a x^m + t^b x^n and compare every word with its prediction.

    ``eps`` and ``outer`` are the radii of the two circles as multiples of rho.
    """
    from . import trinomial as tri

    rho, pts = tri.bifurcation_set(T)
    fam = Family(T.terms())
    num = bifurcation_points(fam)
    if len(num) != len(pts):
        err = math.inf
    else:
        err = max(min(abs(p - q) / abs(q) for p in num) for q in pts)
    data = tri.coamoeba(T)
    pred = tri.predicted_monodromy(T, data.base_arg)
    loops = railway_graph(pts, eps * rho, outer * rho, nu0=tri.turns_to_radians(data.base_arg))
    G, tracked = monodromy_group(fam, loops, cut=tri.turns_to_radians(data.cut), tol=tol)
    words = [b.word for b in tracked]
    predicted_words = [pred[j] for j in range(len(loops))]
    rep = compare(predict(T.support), G, words, predicted_words)
    rep.extra["extraction_sound"] = all(
        b.word.permutation() == b.permutation and b.word.ind() == b.winding for b in tracked)
    ks = [_which_b(w) for w in words[1:]]
    hist = tri.fiber_data(T, data.base_arg)
    counted = {k: sum(1 for x in ks if x == k) for k in hist}
    return TrinomialCertificate((T.m, T.n, T.a, T.b), err, rep, predicted_words, words, ks, hist, counted)
