"""Pure abstract simplicial complexes.

A complex is identified with its facet set.  Vertices are 1-based; facets are
stored as ascending tuples and the facet list is kept in lexicographic order,
which is also the serialization order.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

Facet = tuple[int, ...]
Coloring = dict[int, int]


class ComplexError(ValueError):
    pass


class InvalidComplementError(ComplexError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    dim: int
    facets: tuple[Facet, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ComplexError("vertex count must be positive")
        if self.dim < 0:
            raise ComplexError("dimension must be nonnegative")
        if not self.facets:
            raise ComplexError("a complex needs at least one facet")
        seen = set()
        for f in self.facets:
            if len(f) != self.dim + 1 or len(set(f)) != len(f):
                raise ComplexError(f"facet {f} does not have {self.dim + 1} distinct vertices")
            if list(f) != sorted(f):
                raise ComplexError(f"facet {f} is not sorted")
            if f[0] < 1 or f[-1] > self.n:
                raise ComplexError(f"facet {f} has a vertex outside 1..{self.n}")
            if f in seen:
                raise ComplexError(f"duplicate facet {f}")
            seen.add(f)
        if list(self.facets) != sorted(self.facets):
            raise ComplexError("facets are not in canonical order")

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int]], dim: int | None = None) -> "SimplicialComplex":
        fs = sorted({tuple(sorted(f)) for f in facets})
        if not fs:
            raise ComplexError("a complex needs at least one facet")
        if dim is None:
            dim = len(fs[0]) - 1
        return cls(n, dim, tuple(fs))

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __contains__(self, facet) -> bool:
        return tuple(sorted(facet)) in self.facet_set

    @property
    def facet_set(self) -> frozenset[Facet]:
        return frozenset(self.facets)

    def vertices(self) -> list[int]:
        return sorted({v for f in self.facets for v in f})

    def edges(self) -> list[tuple[int, int]]:
        """1-skeleton: pairs of vertices lying in a common facet."""
        return sorted({e for f in self.facets for e in combinations(f, 2)})

    def relabel(self, perm: Mapping[int, int]) -> "SimplicialComplex":
        return SimplicialComplex.from_facets(self.n, ([perm.get(v, v) for v in f] for f in self.facets), self.dim)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.dim == other.dim and self.facet_set <= other.facet_set

    def to_json(self) -> dict:
        return {"n": self.n, "dim": self.dim, "facets": [list(f) for f in self.facets]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialComplex":
        c = cls.from_facets(data["n"], data["facets"], data.get("dim"))
        if len(c) != len(data["facets"]):
            raise ComplexError("duplicate facets in input")
        return c

    @classmethod
    def loads(cls, text: str) -> "SimplicialComplex":
        return cls.from_json(json.loads(text))


def complement(gamma: SimplicialComplex) -> SimplicialComplex:
    new_dim = gamma.n - gamma.dim - 2
    if new_dim < 0:
        raise InvalidComplementError(
            f"complement of a {gamma.dim}-complex on {gamma.n} vertices would have negative dimension"
        )
    full = set(range(1, gamma.n + 1))
    return SimplicialComplex.from_facets(gamma.n, (full - set(f) for f in gamma.facets), new_dim)


def adjacency_graph(gamma: SimplicialComplex) -> list[list[int]]:
    """Neighbour lists over facet indices; two facets are adjacent when they share ``dim`` vertices."""
    d = gamma.dim
    # bucket facets by their codimension-one faces
    by_ridge: dict[Facet, list[int]] = {}
    for i, f in enumerate(gamma.facets):
        for ridge in combinations(f, d):
            by_ridge.setdefault(ridge, []).append(i)
    adj: list[set[int]] = [set() for _ in gamma.facets]
    for members in by_ridge.values():
        for a, b in combinations(members, 2):
            adj[a].add(b)
            adj[b].add(a)
    return [sorted(s) for s in adj]


def adjacency_edges(gamma: SimplicialComplex) -> list[tuple[Facet, Facet]]:
    adj = adjacency_graph(gamma)
    return [(gamma.facets[i], gamma.facets[j]) for i, nb in enumerate(adj) for j in nb if i < j]


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    # facet -> side in {0, 1} when bipartite
    sides: dict[Facet, int] | None = None
    # closed odd cycle of facets (first facet not repeated) otherwise
    odd_cycle: tuple[Facet, ...] | None = None

    def __bool__(self):
        return self.bipartite


def is_bipartite(gamma: SimplicialComplex) -> BipartiteResult:
    adj = adjacency_graph(gamma)
    depth = [-1] * len(adj)
    parent = [-1] * len(adj)
    for root in range(len(adj)):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if depth[v] < 0:
                    depth[v] = depth[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif depth[v] == depth[u] and v != u:
                    return BipartiteResult(False, odd_cycle=_cycle_through(u, v, parent, gamma))
    return BipartiteResult(True, sides={f: depth[i] % 2 for i, f in enumerate(gamma.facets)})


def _cycle_through(u: int, v: int, parent: list[int], gamma: SimplicialComplex) -> tuple[Facet, ...]:
    left, right = [u], [v]
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    cycle = left + right[-2::-1]
    return tuple(gamma.facets[i] for i in cycle)


def is_adjacency_cycle(gamma: SimplicialComplex, cycle: Iterable[Iterable[int]]) -> bool:
    """Whether consecutive facets (cyclically) are adjacent facets of ``gamma``."""
    cyc = [tuple(sorted(f)) for f in cycle]
    if len(cyc) < 3 or len(set(cyc)) != len(cyc) or any(f not in gamma for f in cyc):
        return False
    return all(len(set(a) & set(b)) == gamma.dim for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def is_proper_coloring(gamma: SimplicialComplex, coloring: Mapping[int, int]) -> bool:
    k = gamma.dim + 1
    if any(not 1 <= coloring.get(v, 0) <= k for v in gamma.vertices()):
        return False
    return all(coloring[a] != coloring[b] for a, b in gamma.edges())


def find_coloring(gamma: SimplicialComplex) -> Coloring | None:
    """Exhaustive search for a proper (dim+1)-colouring of the 1-skeleton.

    Returns ``None`` when no colouring exists; the search is complete, so
    ``None`` certifies the complex is not balanced.  Vertices outside every
    facet get colour 1.
    """
    k = gamma.dim + 1
    nbrs: dict[int, set[int]] = {v: set() for v in range(1, gamma.n + 1)}
    for a, b in gamma.edges():
        nbrs[a].add(b)
        nbrs[b].add(a)

    coloring: Coloring = {}
    # colour permutations are symmetric; fixing the first facet loses nothing
    for c, v in enumerate(gamma.facets[0], start=1):
        coloring[v] = c

    # BFS order keeps constrained vertices early
    order: list[int] = []
    seen = set(gamma.facets[0])
    queue = deque(gamma.facets[0])
    starts = iter(gamma.vertices())
    while True:
        while queue:
            u = queue.popleft()
            for w in sorted(nbrs[u]):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        # next connected component, if any
        v = next((v for v in starts if v not in seen), None)
        if v is None:
            break
        seen.add(v)
        order.append(v)
        queue.append(v)

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {coloring[w] for w in nbrs[v] if w in coloring}
        for c in range(1, k + 1):
            if c not in used:
                coloring[v] = c
                if extend(i + 1):
                    return True
                del coloring[v]
        return False

    if not extend(0):
        return None
    for v in range(1, gamma.n + 1):
        coloring.setdefault(v, 1)
    return dict(sorted(coloring.items()))
