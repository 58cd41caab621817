"""Permutation groups via deterministic Schreier-Sims, plus the wreath-type subgroups.

Permutations act on {0..M-1}; ``p * q`` is the composition p after q, so
``(p * q)[i] == p[q[i]]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial, gcd
from typing import Iterable, Iterator, Sequence


class Perm(tuple):
    """An immutable permutation stored as its image array."""

    def __new__(cls, images: Iterable[int]):
        p = super().__new__(cls, (int(i) for i in images))
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {list(p)}")
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return tuple.__new__(cls, range(n))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Perm":
        img = list(range(n))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":
        if len(self) != len(other):
            raise ValueError("degree mismatch")
        return tuple.__new__(Perm, (self[i] for i in other))

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return tuple.__new__(Perm, inv)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        out = Perm.identity(len(self))
        for _ in range(abs(k)):
            out = base * out
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            c, j = [], i
            while j not in seen:
                seen.add(j)
                c.append(j)
                j = self[j]
            out.append(tuple(c))
        return out

    def __repr__(self) -> str:
        cyc = self.cycles()
        return "Perm(" + ("".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()") + f", n={len(self)})"


def _compose_list(perms: Sequence[Perm], n: int) -> Perm:
    out = Perm.identity(n)
    for p in perms:
        out = out * p
    return out


@dataclass
class _Level:
    point: int
    gens: list[Perm] = field(default_factory=list)
    transversal: dict[int, Perm] = field(default_factory=dict)

    def rebuild(self, n: int) -> None:
        self.transversal = {self.point: Perm.identity(n)}
        queue = [self.point]
        while queue:
            x = queue.pop(0)
            ux = self.transversal[x]
            for s in self.gens:
                y = s[x]
                if y not in self.transversal:
                    self.transversal[y] = s * ux
                    queue.append(y)


class PermGroup:
    """Group generated by a list of permutations, with a base and strong generating set."""

    def __init__(self, gens: Iterable[Sequence[int]], degree: int | None = None):
        gens = [g if isinstance(g, Perm) else Perm(g) for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators on mismatched ground sets")
        self.degree = degree
        self.generators = gens
        self.levels: list[_Level] = []
        self._schreier_sims()

    # construction -------------------------------------------------------
    def _new_base_point(self, h: Perm) -> int:
        used = {lv.point for lv in self.levels}
        return next(i for i in range(self.degree) if h[i] != i and i not in used)

    def _schreier_sims(self) -> None:
        n = self.degree
        for g in self.generators:
            if g.is_identity():
                continue
            if all(g[lv.point] == lv.point for lv in self.levels):
                self.levels.append(_Level(self._new_base_point(g)))
            for lv in self.levels:
                lv.gens.append(g)
                if g[lv.point] != lv.point:
                    break
        for lv in self.levels:
            lv.rebuild(n)
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            restart = False
            for b, ub in list(lv.transversal.items()):
                for s in list(lv.gens):
                    c = s[b]
                    sg = lv.transversal[c].inverse() * s * ub
                    h, j = self._strip(sg, i + 1)
                    if j < len(self.levels) or not h.is_identity():
                        if j == len(self.levels):
                            self.levels.append(_Level(self._new_base_point(h)))
                        for lvl in range(i + 1, j + 1):
                            self.levels[lvl].gens.append(h)
                            self.levels[lvl].rebuild(n)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def _strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            x = g[lv.point]
            if x not in lv.transversal:
                return g, j
            g = lv.transversal[x].inverse() * g
        return g, len(self.levels)

    # queries ------------------------------------------------------------
    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def strong_generators(self) -> list[list[Perm]]:
        return [list(lv.gens) for lv in self.levels]

    def order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= len(lv.transversal)
        return out

    def __contains__(self, g: Sequence[int]) -> bool:
        g = g if isinstance(g, Perm) else Perm(g)
        if len(g) != self.degree:
            raise ValueError("degree mismatch")
        h, j = self._strip(g)
        return j == len(self.levels) and h.is_identity()

    contains = __contains__

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return self.order() == other.order() and self.is_subgroup_of(other)

    __hash__ = None

    def elements(self) -> Iterator[Perm]:
        n = self.degree
        if not self.levels:
            yield Perm.identity(n)
            return
        for combo in itertools.product(*(list(lv.transversal.values()) for lv in self.levels)):
            yield _compose_list(combo, n)

    def block_images(self, blocks: Sequence[Sequence[int]]) -> "PermGroup":
        """Action on a block system, as a group on len(blocks) points."""
        where = {x: i for i, blk in enumerate(blocks) for x in blk}
        gens = []
        for g in self.generators:
            img = [where[g[blk[0]]] for blk in blocks]
            gens.append(Perm(img))
        return PermGroup(gens, len(blocks))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order()}, ngens={len(self.generators)})"


def bsgs_build(gens: Iterable[Sequence[int]], degree: int | None = None) -> PermGroup:
    return PermGroup(gens, degree)


def group_order(G: PermGroup) -> int:
    return G.order()


def groups_equal(G: PermGroup, H: PermGroup) -> bool:
    return G == H


def symmetric_group(n: int) -> PermGroup:
    gens = [Perm.from_cycles(n, (i, i + 1)) for i in range(n - 1)]
    return PermGroup(gens, n)


# wreath-type subgroups ------------------------------------------------------

@dataclass(frozen=True)
class WreathGround:
    """N points grouped in N/d blocks of size d; point p = block * d + phase."""
    N: int
    d: int

    def __post_init__(self):
        if self.d < 1 or self.N % self.d:
            raise ValueError("d must divide N")

    @property
    def blocks(self) -> int:
        return self.N // self.d

    def point(self, block: int, phase: int) -> int:
        return block * self.d + phase % self.d

    def rotation(self) -> Perm:
        return Perm(self.point(p // self.d, p % self.d + 1) for p in range(self.N))

    def phase_shift(self, shifts: Sequence[int]) -> Perm:
        """Rotate the phases of block b by shifts[b]."""
        return Perm(self.point(p // self.d, p % self.d + shifts[p // self.d]) for p in range(self.N))

    def block_perm(self, sigma: Sequence[int]) -> Perm:
        """Lift a permutation of the blocks, keeping phases."""
        return Perm(self.point(sigma[p // self.d], p % self.d) for p in range(self.N))


def in_wreath(sigma: Sequence[int], w: WreathGround) -> bool:
    d = w.d
    for b in range(w.blocks):
        first = sigma[b * d]
        for ph in range(d):
            if sigma[b * d + ph] != w.point(first // d, first % d + ph):
                return False
    return True


def ind_sigma(sigma: Sequence[int], w: WreathGround) -> int:
    """Sum over blocks of the phase shift, in Z/d."""
    if len(sigma) != w.N:
        raise ValueError("degree mismatch")
    if not in_wreath(sigma, w):
        raise ValueError("not d-equivariant")
    return sum(sigma[b * w.d] % w.d for b in range(w.blocks)) % w.d


def wreath_subgroup_generators(N: int, d: int, g: int) -> list[Perm]:
    """Generators of the elements of S_{N,d} whose ind lies in the subgroup generated by g."""
    if d < 1 or N % d:
        raise ValueError("d must divide N")
    if g < 1 or d % g:
        raise ValueError("g must divide d")
    w = WreathGround(N, d)
    m = w.blocks
    gens = []
    for b in range(m - 1):
        sigma = list(range(m))
        sigma[b], sigma[b + 1] = b + 1, b
        gens.append(w.block_perm(sigma))
    if d > 1:
        if m >= 2:
            gens.append(w.phase_shift([1, -1] + [0] * (m - 2)))
        if g % d:
            gens.append(w.phase_shift([g] + [0] * (m - 1)))
    return [p for p in gens if not p.is_identity()]


def wreath_order(N: int, d: int, g: int) -> int:
    m = N // d
    return d ** (m - 1) * (d // g) * factorial(m)


def effective_g(d: int, theta: int) -> int:
    """GCD(d, theta) with GCD(d, 0) = d."""
    return gcd(d, theta)
