"""Words in the annular braid group B*_N and a faithful action deciding equality.

Generators: b_1..b_N (crossing of the strands in cyclically adjacent argument
slots j, j+1, slot N wrapping to slot 1 across the cut) and tau (clockwise
rotation of every strand by one slot).  Words are read in time order.

Equality is decided through an action on the free group F(x_1..x_N, z):

    tau: x_i -> x_{i+1} (i < N),  x_N -> z x_1 z^-1,  z -> z
    b_i: x_i -> x_i x_{i+1} x_i^-1,  x_{i+1} -> x_i     (i < N)
    b_N: defined as tau b_{N-1} tau^-1

with Phi(uv) = Phi(u) o Phi(v).  Sending tau to s_1 s_2 ... s_{N-1} s_N^2 and b_i
to s_i embeds B*_N in the Artin group B_{N+1} (type B inside type A), and the
action above is Artin's action of that image composed with conjugation by
x_1^-1.  Artin's action is faithful and its inner automorphisms come only from
the centre, which meets the image in the powers of tau^N; tau^{N k} acts as
conjugation by z^k, which is trivial only for k = 0.  So the action is faithful.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .permgroup import Perm

FreeWord = tuple[int, ...]   # letters +-1..+-(N+1); N+1 stands for z
TAU = 0


def free_reduce(w: Iterable[int]) -> FreeWord:
    out: list[int] = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def free_inverse(w: FreeWord) -> FreeWord:
    return tuple(-a for a in reversed(w))


def _substitute(images: dict[int, FreeWord], w: FreeWord) -> FreeWord:
    out: list[int] = []
    for a in w:
        out.extend(images[a] if a > 0 else free_inverse(images[-a]))
    return free_reduce(out)


def _compose(f: dict[int, FreeWord], g: dict[int, FreeWord]) -> dict[int, FreeWord]:
    """f o g."""
    return {y: _substitute(f, w) for y, w in g.items()}


@lru_cache(maxsize=None)
def _letter_actions(N: int) -> dict[tuple[int, int], dict[int, FreeWord]]:
    z = N + 1
    ident = {y: (y,) for y in range(1, N + 2)}
    tau = dict(ident)
    tau_inv = dict(ident)
    for i in range(1, N):
        tau[i] = (i + 1,)
        tau_inv[i + 1] = (i,)
    tau[N] = (z, 1, -z)
    tau_inv[1] = (-z, N, z)
    acts = {(TAU, 1): tau, (TAU, -1): tau_inv}
    if N == 1:
        return acts
    for i in range(1, N):
        b = dict(ident)
        b[i] = (i, i + 1, -i)
        b[i + 1] = (i,)
        bi = dict(ident)
        bi[i] = (i + 1,)
        bi[i + 1] = (-(i + 1), i, i + 1)
        acts[(i, 1)] = b
        acts[(i, -1)] = bi
    acts[(N, 1)] = _compose(tau, _compose(acts[(N - 1, 1)], tau_inv))
    acts[(N, -1)] = _compose(tau, _compose(acts[(N - 1, -1)], tau_inv))
    return acts


_TOKEN = re.compile(r"^(t|b(\d+))(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class BraidWord:
    """A freely reduced word; letters are (generator, exponent), generator 0 is tau."""
    N: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("need at least one strand")
        merged: list[list[int]] = []
        for gen, e in self.letters:
            gen, e = int(gen), int(e)
            if not (gen == TAU or (1 <= gen <= self.N and self.N >= 2)):
                raise ValueError(f"generator b{gen} out of range for N={self.N}")
            if e == 0:
                continue
            if merged and merged[-1][0] == gen:
                merged[-1][1] += e
                if merged[-1][1] == 0:
                    merged.pop()
            else:
                merged.append([gen, e])
        object.__setattr__(self, "letters", tuple((g, e) for g, e in merged))

    # constructors ---------------------------------------------------------
    @classmethod
    def tau(cls, N: int, k: int = 1) -> "BraidWord":
        return cls(N, ((TAU, k),))

    @classmethod
    def b(cls, N: int, j: int, e: int = 1) -> "BraidWord":
        return cls(N, (((j - 1) % N + 1, e),))

    @classmethod
    def identity(cls, N: int) -> "BraidWord":
        return cls(N, ())

    @classmethod
    def parse(cls, N: int, tokens: Sequence[str]) -> "BraidWord":
        letters = []
        for tok in tokens:
            m = _TOKEN.match(tok.strip())
            if not m:
                raise ValueError(f"bad braid token {tok!r}")
            gen = TAU if m.group(1) == "t" else int(m.group(2))
            letters.append((gen, int(m.group(3) or 1)))
        return cls(N, tuple(letters))

    def tokens(self) -> list[str]:
        out = []
        for g, e in self.letters:
            name = "t" if g == TAU else f"b{g}"
            out.append(name if e == 1 else f"{name}^{e}")
        return out

    def __str__(self) -> str:
        return " ".join(self.tokens()) or "1"

    # group operations -------------------------------------------------------
    def _check(self, other: "BraidWord") -> None:
        if self.N != other.N:
            raise ValueError("strand mismatch")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        self._check(other)
        return BraidWord(self.N, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.N, tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.N, base.letters * abs(k))

    def conjugate(self, by: "BraidWord") -> "BraidWord":
        """by * self * by^-1."""
        return by * self * by.inverse()

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    # homomorphisms ------------------------------------------------------------
    def ind(self) -> int:
        return sum(e for g, e in self.letters if g == TAU)

    def permutation(self) -> Perm:
        """Slot permutation p with p[end slot] = start slot (0-based)."""
        N = self.N
        tau = Perm([(i + 1) % N for i in range(N)])
        out = Perm.identity(N)
        for g, e in self.letters:
            if g == TAU:
                step = tau ** e
            else:
                i, j = g - 1, g % N
                img = list(range(N))
                img[i], img[j] = j, i
                step = Perm(img) ** (e % 2)
            out = out * step
        return out

    def action(self) -> dict[int, FreeWord]:
        acts = _letter_actions(self.N)
        images = {y: (y,) for y in range(1, self.N + 2)}
        for g, e in reversed(self.letters):
            step = acts[(g, 1 if e > 0 else -1)]
            for _ in range(abs(e)):
                images = _compose(step, images)
        return images

    def is_trivial(self) -> bool:
        return all(w == (y,) for y, w in self.action().items())

    def equals(self, other: "BraidWord") -> bool:
        self._check(other)
        if self.ind() != other.ind() or self.permutation() != other.permutation():
            return False
        return (self * other.inverse()).is_trivial()

    def f_embed(self, d: int) -> "BraidWord":
        """Pull back along x -> x^d: a word on N*d strands."""
        if d < 1:
            raise ValueError("d must be positive")
        m = self.N
        N = m * d
        letters = []
        for g, e in self.letters:
            if g == TAU:
                letters.append((TAU, e))
            else:
                block = [(g + r * m, 1 if e > 0 else -1) for r in range(d)]
                letters.extend(block * abs(e))
        return BraidWord(N, tuple(letters))

    def to_json(self) -> list[str]:
        return self.tokens()


def compose(u: BraidWord, v: BraidWord) -> BraidWord:
    return u * v


def invert(u: BraidWord) -> BraidWord:
    return u.inverse()


def equals(u: BraidWord, v: BraidWord) -> bool:
    return u.equals(v)


def f_embed(u: BraidWord, d: int) -> BraidWord:
    return u.f_embed(d)


def random_word(N: int, length: int, rng: random.Random) -> BraidWord:
    gens = [TAU] + (list(range(1, N + 1)) if N >= 2 else [])
    return BraidWord(N, tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(length)))


def relation_pairs(N: int) -> list[tuple[BraidWord, BraidWord, str]]:
    """The defining relations of B*_N as pairs of words that must be equal."""
    b = lambda j, e=1: BraidWord.b(N, j, e)
    t = BraidWord.tau(N)
    rels = []
    if N < 2:
        return rels
    for j in range(1, N + 1):
        rels.append((b(j).conjugate(t), b(j + 1), f"tau b{j} tau^-1 = b{(j % N) + 1}"))
    if N >= 3:
        for j in range(1, N + 1):
            rels.append((b(j) * b(j + 1) * b(j), b(j + 1) * b(j) * b(j + 1), f"braid b{j} b{(j % N) + 1}"))
    if N >= 4:
        for i in range(1, N + 1):
            for j in range(i + 2, N + 1):
                if (j - i) % N in (1, N - 1):
                    continue
                rels.append((b(i) * b(j), b(j) * b(i), f"commute b{i} b{j}"))
    return rels
