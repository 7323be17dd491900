"""Order-preserving maps between finite ordinals and lattice-path chains.

An ``OrdinalMap`` is a monotone map [m] -> [n]; these are the arrows of the
simplex category and act contravariantly on everything else in this package.
A ``MaximalChain`` is a monotone lattice path through the grid [n] x [r]; the
chains triangulate the prism and index every fiberwise-integration sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class OrdinalMap:
    """A monotone map [m] -> [n], stored by its tuple of images.

    ``target`` is n; the source dimension m is ``len(images) - 1``.
    """

    target: int
    images: tuple[int, ...]

    def __post_init__(self):
        if self.target < 0 or not self.images:
            raise ValueError("ordinal map needs target >= 0 and a nonempty image tuple")
        last = 0
        for v in self.images:
            if v < last or v > self.target:
                raise ValueError(f"images {self.images} not monotone into [{self.target}]")
            last = v

    @property
    def source(self) -> int:
        return len(self.images) - 1

    def __call__(self, j: int) -> int:
        return self.images[j]

    def is_surjective(self) -> bool:
        return set(self.images) == set(range(self.target + 1))

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_identity(self) -> bool:
        return self.target == self.source and all(v == j for j, v in enumerate(self.images))

    @staticmethod
    def identity(n: int) -> "OrdinalMap":
        return OrdinalMap(n, tuple(range(n + 1)))

    @staticmethod
    def delta(i: int, n: int) -> "OrdinalMap":
        """The face map [n-1] -> [n] skipping the value i."""
        if not 0 <= i <= n:
            raise ValueError(f"delta index {i} out of range for [{n}]")
        return OrdinalMap(n, tuple(v for v in range(n + 1) if v != i))

    @staticmethod
    def sigma(i: int, n: int) -> "OrdinalMap":
        """The degeneracy map [n+1] -> [n] repeating the value i."""
        if not 0 <= i <= n:
            raise ValueError(f"sigma index {i} out of range for [{n}]")
        return OrdinalMap(n, tuple(sorted(tuple(range(n + 1)) + (i,))))

    @staticmethod
    def constant(source: int, value: int, target: int) -> "OrdinalMap":
        return OrdinalMap(target, (value,) * (source + 1))


def compose(outer: OrdinalMap, inner: OrdinalMap) -> OrdinalMap:
    """The composite ``outer . inner``, defined when inner lands in outer's source."""
    if inner.target != outer.source:
        raise ValueError(
            f"cannot compose: inner targets [{inner.target}] but outer sources [{outer.source}]"
        )
    return OrdinalMap(outer.target, tuple(outer(v) for v in inner.images))


def epi_mono_factor(alpha: OrdinalMap) -> tuple[OrdinalMap, OrdinalMap]:
    """Factor alpha = mono . epi with epi surjective and mono injective."""
    image = sorted(set(alpha.images))
    k = len(image) - 1
    index = {v: j for j, v in enumerate(image)}
    epi = OrdinalMap(k, tuple(index[v] for v in alpha.images))
    mono = OrdinalMap(alpha.target, tuple(image))
    return epi, mono


@dataclass(frozen=True)
class MaximalChain:
    """A monotone lattice path from (0,0) to (n,r) in the grid [n] x [r].

    Each step increments exactly one coordinate: a base step ('S') increments
    the first, a fiber step ('F') the second.
    """

    n: int
    r: int
    points: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.points[0] != (0, 0) or self.points[-1] != (self.n, self.r):
            raise ValueError("chain must run from (0,0) to (n,r)")
        if len(self.points) != self.n + self.r + 1:
            raise ValueError("chain has the wrong number of points")
        for (a, b), (c, d) in zip(self.points, self.points[1:]):
            if (c - a, d - b) not in ((1, 0), (0, 1)):
                raise ValueError(f"invalid step {(a, b)} -> {(c, d)}")

    @property
    def steps(self) -> str:
        out = []
        for (a, _), (c, _) in zip(self.points, self.points[1:]):
            out.append("S" if c - a == 1 else "F")
        return "".join(out)

    @staticmethod
    def from_steps(n: int, r: int, steps: str) -> "MaximalChain":
        pts = [(0, 0)]
        for ch in steps:
            a, b = pts[-1]
            if ch == "S":
                pts.append((a + 1, b))
            elif ch == "F":
                pts.append((a, b + 1))
            else:
                raise ValueError(f"bad step character {ch!r}")
        return MaximalChain(n, r, tuple(pts))


@lru_cache(maxsize=None)
def enumerate_chains(n: int, r: int) -> tuple[MaximalChain, ...]:
    """All maximal chains of [n] x [r], ordered by step string with 'S' < 'F'.

    There are binomial(n+r, r) of them; the order is fixed so that every sum
    over chains elsewhere in the package is reproducible.
    """
    if n < 0 or r < 0:
        raise ValueError("grid dimensions must be nonnegative")

    out: list[MaximalChain] = []

    def walk(a: int, b: int, steps: str):
        if a == n and b == r:
            out.append(MaximalChain.from_steps(n, r, steps))
            return
        if a < n:
            walk(a + 1, b, steps + "S")
        if b < r:
            walk(a, b + 1, steps + "F")

    walk(0, 0, "")
    assert len(out) == math.comb(n + r, r)
    return tuple(out)


def chain_projections(chain: MaximalChain) -> tuple[OrdinalMap, OrdinalMap]:
    """The coordinate projections of the chain, as maps [n+r] -> [n] and [n+r] -> [r]."""
    base = OrdinalMap(chain.n, tuple(p[0] for p in chain.points))
    fiber = OrdinalMap(chain.r, tuple(p[1] for p in chain.points))
    return base, fiber


@lru_cache(maxsize=None)
def chain_sections(chain: MaximalChain) -> tuple[OrdinalMap, OrdinalMap, tuple[int, ...]]:
    """The section data (b, f, u) of a chain.

    b: [n] -> [n+r] picks the first position where the base projection hits i.
    f: [r] -> [n+r] picks the first position where the fiber projection reaches i.
    u: for i = 1..r, the position just below where the run of fiber steps
       containing position f(i) began; it supplies the upper integration bound
       for the i-th fiber variable.
    """
    base, fiber = chain_projections(chain)
    b = OrdinalMap(
        chain.n + chain.r,
        tuple(min(j for j in range(chain.n + chain.r + 1) if base(j) == i) for i in range(chain.n + 1)),
    )
    f = OrdinalMap(
        chain.n + chain.r,
        tuple(min(j for j in range(chain.n + chain.r + 1) if fiber(j) >= i) for i in range(chain.r + 1)),
    )
    u = []
    for i in range(1, chain.r + 1):
        offset = f(i) - i
        j0 = min(j for j in range(1, chain.r + 1) if f(j) - j == offset)
        u.append(f(j0) - 1)
    return b, f, tuple(u)
