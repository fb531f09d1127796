"""k-uniform hypergraphs: random generation, peeling, connectivity, enumeration.

Candidate edges are enumerated in colexicographic order (sorted by largest
vertex, ties broken recursively), so a given seed reproduces the same graph
bit-for-bit on every platform and backend.  Vertices are dense 0-based ints.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .numerics import choose

__all__ = [
    "GENERATE_GUARD",
    "ENUMERATE_GUARD",
    "HypergraphParams",
    "Hypergraph",
    "candidate_edges",
    "generate",
    "peel",
    "is_connected_on",
    "has_rcore_on",
    "enumerate_all",
]

# Seeds are plain 64-bit unsigned ints throughout (wrapped mod 2^64).
Seed = int

GENERATE_GUARD = 2**31  # max candidate edges for random generation
ENUMERATE_GUARD = 20    # max candidate edges for exhaustive enumeration


@dataclass(frozen=True)
class HypergraphParams:
    """The random-model tuple: v vertices, k-uniform edges with probability p, core order r."""

    v: int
    k: int
    p: float
    r: int

    def __post_init__(self) -> None:
        if self.v < 1:
            raise ValueError(f"v must be >= 1, got {self.v}")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    @property
    def expected_edges(self) -> float:
        """p * C(v, k), the expected edge count of the model."""
        return self.p * float(choose(self.v, self.k))


@dataclass(frozen=True)
class Hypergraph:
    """A concrete k-uniform hypergraph: vertex count plus a duplicate-free edge set."""

    v: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = set()
        for edge in self.edges:
            if len(edge) != self.k or len(set(edge)) != self.k:
                raise ValueError(f"edge {edge} is not {self.k} distinct vertices")
            if any(not 0 <= x < self.v for x in edge):
                raise ValueError(f"edge {edge} has a vertex outside [0, {self.v})")
            if tuple(edge) != tuple(sorted(edge)):
                raise ValueError(f"edge {edge} is not sorted")
            if edge in seen:
                raise ValueError(f"duplicate edge {edge}")
            seen.add(edge)

    @classmethod
    def from_edges(cls, v: int, k: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        canon = sorted(tuple(sorted(int(x) for x in e)) for e in edges)
        return cls(v, k, tuple(canon))

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, k) int64 array (empty -> shape (0, k))."""
        if not self.edges:
            return np.empty((0, self.k), dtype=np.int64)
        return np.array(self.edges, dtype=np.int64)

    def degrees(self) -> np.ndarray:
        arr = self.edge_array()
        if arr.size == 0:
            return np.zeros(self.v, dtype=np.int64)
        return np.bincount(arr.ravel(), minlength=self.v)

    def to_text(self) -> str:
        """Plain-text dump: first line "v k", then one sorted edge per line."""
        lines = [f"{self.v} {self.k}"]
        lines.extend(" ".join(str(x) for x in e) for e in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        v, k = (int(t) for t in lines[0].split())
        edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
        return cls.from_edges(v, k, edges)


def _colex_combinations(n: int, k: int) -> Iterator[tuple[int, ...]]:
    # Colex recursion: order by largest member, then colex on the remainder.
    if k == 0:
        yield ()
        return
    for last in range(k - 1, n):
        for rest in _colex_combinations(last, k - 1):
            yield rest + (last,)


@lru_cache(maxsize=None)
def candidate_edges(v: int, k: int) -> np.ndarray:
    """All C(v, k) candidate edges in colexicographic order, as (M, k) int64.

    The returned array is cached and read-only; copy before mutating.
    """
    m = choose(v, k)
    arr = np.empty((m, k), dtype=np.int64)
    for i, combo in enumerate(_colex_combinations(v, k)):
        arr[i] = combo
    arr.flags.writeable = False
    return arr


def generate(params: HypergraphParams, seed: Seed) -> Hypergraph:
    """Sample one hypergraph: every candidate edge kept independently with probability p.

    Deterministic in (params, seed).  A Monte Carlo trial ``t`` with master
    seed ``s`` sees exactly ``generate(params, kernels.trial_seed(s, t))``.
    """
    m = choose(params.v, params.k)
    if m > GENERATE_GUARD:
        raise ValueError(f"C(v, k) = {m} exceeds the generation guard {GENERATE_GUARD}")
    cand = candidate_edges(params.v, params.k)
    mask = kernels.sample_edge_mask(m, params.p, seed)
    edges = tuple(tuple(int(x) for x in row) for row in cand[mask])
    return Hypergraph(params.v, params.k, edges)


def peel(h: Hypergraph, r: int) -> frozenset[int]:
    """The maximal r-core of ``h``: repeat rounds removing every vertex of degree < r
    (with its incident edges) until a round removes nothing; return the survivors."""
    mask = kernels.peel_survivor_mask(h.edge_array(), h.v, r)
    return frozenset(int(x) for x in np.flatnonzero(mask))


def _induced_edges(h: Hypergraph, subset: frozenset[int]) -> list[tuple[int, ...]]:
    return [e for e in h.edges if all(x in subset for x in e)]


def _check_subset(h: Hypergraph, subset) -> frozenset[int]:
    sub = frozenset(int(x) for x in subset)
    if not sub:
        raise ValueError("subset must be nonempty")
    if any(not 0 <= x < h.v for x in sub):
        raise ValueError(f"subset {sorted(sub)} not contained in [0, {h.v})")
    return sub


def is_connected_on(h: Hypergraph, subset) -> bool:
    """True iff the subgraph induced on ``subset`` connects all of it.

    Only edges lying entirely inside ``subset`` count; singletons are connected.
    """
    sub = _check_subset(h, subset)
    relabel = {x: i for i, x in enumerate(sorted(sub))}
    induced = [[relabel[x] for x in e] for e in _induced_edges(h, sub)]
    arr = np.array(induced, dtype=np.int64) if induced else np.empty((0, h.k), dtype=np.int64)
    return kernels.connected_all(arr, len(sub))


def has_rcore_on(h: Hypergraph, subset, r: int) -> bool:
    """True iff in the subgraph induced on ``subset`` every vertex has degree >= r."""
    sub = _check_subset(h, subset)
    relabel = {x: i for i, x in enumerate(sorted(sub))}
    induced = [[relabel[x] for x in e] for e in _induced_edges(h, sub)]
    arr = np.array(induced, dtype=np.int64) if induced else np.empty((0, h.k), dtype=np.int64)
    return kernels.min_degree_ok(arr, len(sub), r)


def enumerate_all(v: int, k: int) -> Iterator[Hypergraph]:
    """Yield all 2^C(v,k) hypergraphs on v vertices, in bitmask order over the
    colexicographic candidate enumeration (bit j of the mask = candidate j)."""
    m = choose(v, k)
    if m > ENUMERATE_GUARD:
        raise ValueError(f"C(v, k) = {m} exceeds the enumeration guard {ENUMERATE_GUARD}")
    cand = [tuple(int(x) for x in row) for row in candidate_edges(v, k)]
    for mask in range(1 << m):
        edges = tuple(cand[j] for j in range(m) if mask >> j & 1)
        yield Hypergraph(v, k, edges)
