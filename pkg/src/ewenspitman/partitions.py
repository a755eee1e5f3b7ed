"""Integer partitions, the Kingman graph and the Pascal triangle.

A partition is stored only as its weakly decreasing tuple of positive
parts.  The frequency notation ``(1^{r_1} 2^{r_2} ...)`` and the
zero-padded infinite sequence are derived on demand.

Levels are enumerated in reverse-lexicographic order on the parts, e.g.
``(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`` for n = 4.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterator

from .errors import NotCovering

__all__ = [
    "Partition",
    "PascalVertex",
    "BranchingGraph",
    "KingmanGraph",
    "PascalTriangle",
    "KINGMAN",
    "PASCAL",
    "enumerate_level",
    "partition_count",
    "covers",
    "kingman_multiplicity",
    "kingman_dim",
    "graph_dim",
    "growth_paths",
    "pascal_dim",
    "check_harmonic",
    "pascal_boundary_ratio",
]


@dataclass(frozen=True, order=False)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for p in parts:
            if not isinstance(p, int) or p <= 0:
                raise ValueError(f"parts must be positive integers, got {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing, got {parts}")

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def from_frequencies(cls, freqs: dict[int, int]) -> "Partition":
        parts = []
        for j in sorted(freqs, reverse=True):
            parts.extend([j] * freqs[j])
        return cls(tuple(parts))

    @classmethod
    def from_unsorted(cls, values) -> "Partition":
        return cls(tuple(sorted((v for v in values if v), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def r(self, j: int) -> int:
        """Number of parts equal to ``j``."""
        return self.parts.count(j)

    def frequencies(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def frequency_vector(self) -> list[int]:
        """``[r_1, ..., r_n]`` for n = size."""
        c = Counter(self.parts)
        return [c.get(j, 0) for j in range(1, self.size + 1)]

    def padded(self, k: int) -> tuple[int, ...]:
        """The first ``k`` terms of the zero-padded sequence."""
        if k < self.length:
            raise ValueError("padding length shorter than the partition")
        return self.parts + (0,) * (k - self.length)

    def freq_factorial_product(self) -> int:
        """``prod_j r_j!``."""
        return math.prod(math.factorial(c) for c in Counter(self.parts).values())

    def successors(self) -> list[tuple["Partition", int]]:
        """Partitions covering this one, with Kingman multiplicities."""
        out = []
        seen = set()
        for i, v in enumerate(self.parts):
            if v in seen:
                continue
            seen.add(v)
            grown = list(self.parts)
            grown[i] += 1
            lam = Partition.from_unsorted(grown)
            out.append((lam, lam.r(v + 1)))
        lam = Partition(self.parts + (1,))
        out.append((lam, lam.r(1)))
        return out

    def predecessors(self) -> list[tuple["Partition", int]]:
        """Partitions covered by this one, with multiplicities ``r_v(self)``."""
        out = []
        seen = set()
        for i, v in enumerate(self.parts):
            if v in seen:
                continue
            seen.add(v)
            shrunk = list(self.parts)
            shrunk[i] -= 1
            out.append((Partition.from_unsorted(shrunk), self.r(v)))
        return out

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "()"


@dataclass(frozen=True)
class PascalVertex:
    h: int
    t: int

    def __post_init__(self):
        if self.h < 0 or self.t < 0:
            raise ValueError("Pascal vertices have nonnegative coordinates")

    @property
    def level(self) -> int:
        return self.h + self.t


class BranchingGraph:
    """A graded graph with edge multiplicities, rooted at level 0."""

    root: Hashable

    def level(self, v) -> int:
        raise NotImplementedError

    def vertices(self, n: int) -> list:
        raise NotImplementedError

    def successors(self, v) -> list[tuple[Hashable, int]]:
        raise NotImplementedError

    def predecessors(self, v) -> list[tuple[Hashable, int]]:
        raise NotImplementedError


class KingmanGraph(BranchingGraph):
    root = Partition()

    def level(self, v: Partition) -> int:
        return v.size

    def vertices(self, n: int) -> list[Partition]:
        return enumerate_level(n)

    def successors(self, v: Partition):
        return v.successors()

    def predecessors(self, v: Partition):
        return v.predecessors()


class PascalTriangle(BranchingGraph):
    root = PascalVertex(0, 0)

    def level(self, v: PascalVertex) -> int:
        return v.level

    def vertices(self, n: int) -> list[PascalVertex]:
        return [PascalVertex(h, n - h) for h in range(n, -1, -1)]

    def successors(self, v: PascalVertex):
        return [(PascalVertex(v.h + 1, v.t), 1), (PascalVertex(v.h, v.t + 1), 1)]

    def predecessors(self, v: PascalVertex):
        out = []
        if v.h:
            out.append((PascalVertex(v.h - 1, v.t), 1))
        if v.t:
            out.append((PascalVertex(v.h, v.t - 1), 1))
        return out


KINGMAN = KingmanGraph()
PASCAL = PascalTriangle()


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(n, n))


def enumerate_level(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_level(n))


def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def _grown_row(mu: Partition, lam: Partition) -> int | None:
    """Length k of the row that grew from mu to lam, or None if lam does not cover mu."""
    if lam.size != mu.size + 1:
        return None
    a, b = Counter(lam.parts), Counter(mu.parts)
    gained = a - b
    lost = b - a
    if sum(gained.values()) != 1:
        return None
    (k,) = gained
    if k == 1:
        return k if not lost else None
    return k if lost == Counter({k - 1: 1}) else None


def covers(mu: Partition, lam: Partition) -> bool:
    """True when ``lam`` is obtained from ``mu`` by adding one box."""
    return _grown_row(mu, lam) is not None


def kingman_multiplicity(mu: Partition, lam: Partition) -> int:
    """``r_k(lam)`` with k the length of the row where the box was added."""
    k = _grown_row(mu, lam)
    if k is None:
        raise NotCovering(f"{lam} does not cover {mu}")
    return lam.r(k)


def kingman_dim(lam: Partition) -> int:
    """Multinomial coefficient ``n! / (lam_1! ... lam_l!)``."""
    return math.factorial(lam.size) // math.prod(math.factorial(p) for p in lam.parts)


def graph_dim(graph: BranchingGraph, v) -> int:
    """Weighted path count from the root, via the forward recursion."""
    memo = {graph.root: 1}

    def rec(u):
        if u in memo:
            return memo[u]
        val = sum(k * rec(w) for w, k in graph.predecessors(u))
        memo[u] = val
        return val

    return rec(v)


def growth_paths(graph: BranchingGraph, v) -> Iterator[tuple[list, int]]:
    """Every path root -> ... -> v with its weight (product of multiplicities)."""
    if v == graph.root:
        yield [v], 1
        return
    for w, k in graph.predecessors(v):
        for path, weight in growth_paths(graph, w):
            yield path + [v], weight * k


def pascal_dim(start: PascalVertex, end: PascalVertex) -> int:
    """Number of paths ``start -> end``: ``binom(h+t-a-b, t-b)``, or 0."""
    if end.h < start.h or end.t < start.t:
        return 0
    return math.comb(end.level - start.level, end.t - start.t)


def check_harmonic(graph: BranchingGraph, phi: Callable, level: int) -> bool:
    """Exact check of ``phi(v) = sum kappa(v, w) phi(w)`` on one level, plus phi(root) = 1."""
    if phi(graph.root) != 1:
        return False
    for v in graph.vertices(level):
        if phi(v) != sum(k * phi(w) for w, k in graph.successors(v)):
            return False
    return True


def pascal_boundary_ratio(fixed: PascalVertex, p, n: int) -> Fraction:
    """``dim(fixed, nu(n)) / dim(nu(n))`` along ``nu(n) = (floor(p n), n - floor(p n))``.

    Tends to ``p^a (1-p)^b`` as ``n`` grows.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if n < fixed.level:
        raise ValueError("n must be at least the level of the fixed vertex")
    h = math.floor(p * n)
    target = PascalVertex(h, n - h)
    return Fraction(pascal_dim(fixed, target), pascal_dim(PASCAL.root, target))
