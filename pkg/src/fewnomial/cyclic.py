"""Odd-dimensional cyclic polytope boundaries and the bipartite subcomplexes S.

A facet of the boundary of C(n, 2k) is a union of k disjoint pairs
``{i, i+1}`` (cyclically, ``n+1`` means ``1``).  We call the increasing list
of the ``i``'s a pair sequence.  Pair sequences double as edge labels of the
corona graph: odd ``i`` is the spike at ``i``, even ``i`` is the cycle edge
joining ``i-1`` and ``i+1``.
"""

from __future__ import annotations

from math import comb
from typing import Iterator

from .complexes import SimplicialComplex

PairSequence = tuple[int, ...]


class CyclicParameterError(ValueError):
    pass


def pair_sequences(n: int, k: int) -> Iterator[PairSequence]:
    """Increasing ``i_1 < ... < i_k`` in ``[1, n]`` with gaps of at least 2 (cyclically)."""

    def grow(prefix: list[int], lo: int):
        if len(prefix) == k:
            # wraparound: i_k = n uses vertex 1
            if prefix[-1] == n and prefix[0] == 1:
                return
            yield tuple(prefix)
            return
        for i in range(lo, n + 1):
            prefix.append(i)
            yield from grow(prefix, i + 2)
            prefix.pop()

    yield from grow([], 1)


def pairs_to_facet(seq: PairSequence, n: int) -> tuple[int, ...]:
    verts = set()
    for i in seq:
        verts.add(i)
        verts.add(1 if i == n else i + 1)
    return tuple(sorted(verts))


def cyclic_facet_count(n: int, k: int) -> int:
    return comb(n - k - 1, k - 1) + comb(n - k, k)


def cyclic_boundary_facets(n: int, k: int) -> SimplicialComplex:
    """Boundary complex of the cyclic polytope C(n, 2k); dimension 2k-1."""
    if not n > 2 * k >= 2:
        raise CyclicParameterError(f"need n > 2k >= 2, got n={n}, k={k}")
    return SimplicialComplex.from_facets(n, (pairs_to_facet(s, n) for s in pair_sequences(n, k)), 2 * k - 1)


def _in_s(seq: PairSequence, n: int) -> bool:
    for a, b in zip(seq, seq[1:]):
        if a % 2 == 0 and b - a <= 2:
            return False
    return not (seq[0] == 2 and seq[-1] == n)


def s_pair_sequences(m: int, k: int) -> list[PairSequence]:
    if not 1 <= k < m:
        raise CyclicParameterError(f"need 1 <= k < m, got m={m}, k={k}")
    n = 2 * m
    return [s for s in pair_sequences(n, k) if _in_s(s, n)]


def s_complex(m: int, k: int) -> SimplicialComplex:
    """S_{2m,2k-1}: no two consecutive pairs may both start at an even index."""
    n = 2 * m
    return SimplicialComplex.from_facets(n, (pairs_to_facet(s, n) for s in s_pair_sequences(m, k)), 2 * k - 1)


def s_deletion(m: int, k: int) -> SimplicialComplex:
    """S_{2m-1,2k-1}: facets of S_{2m,2k-1} avoiding vertex 2m."""
    full = s_complex(m, k)
    n = 2 * m
    return SimplicialComplex.from_facets(n - 1, (f for f in full if n not in f), full.dim)


def s_link(m: int, k: int) -> SimplicialComplex:
    """S_{2m-1,2k-2}: facets of S_{2m,2k-1} through vertex 2m, with 2m removed."""
    full = s_complex(m, k)
    n = 2 * m
    return SimplicialComplex.from_facets(
        n - 1, ([v for v in f if v != n] for f in full if n in f), full.dim - 1
    )


def s_variant(m: int, k: int, variant: str = "full") -> SimplicialComplex:
    try:
        return {"full": s_complex, "deletion": s_deletion, "link": s_link}[variant](m, k)
    except KeyError:
        raise CyclicParameterError(f"unknown variant {variant!r}") from None


def swap_permutation(n: int) -> dict[int, int]:
    if n % 2:
        raise CyclicParameterError("the pair swap needs an even vertex count")
    perm = {}
    for i in range(1, n, 2):
        perm[i], perm[i + 1] = i + 1, i
    return perm


def relabel_swap(gamma: SimplicialComplex) -> SimplicialComplex:
    """Swap labels i <-> i+1 for every odd i."""
    return gamma.relabel(swap_permutation(gamma.n))


# ---------------------------------------------------------------------------
# facets of S as corona matchings


def corona_edge(label: int, m: int) -> tuple[int, int]:
    """Endpoints of the corona edge with pair label ``label`` on 2m vertices."""
    n = 2 * m
    if label % 2:
        return (label, label + 1)
    return (label - 1, 1 if label == n else label + 1)


def facet_to_matching(seq: PairSequence, m: int) -> tuple[tuple[int, int], ...]:
    return tuple(corona_edge(i, m) for i in seq)


def is_matching(edges) -> bool:
    used: set[int] = set()
    for a, b in edges:
        if a == b or a in used or b in used:
            return False
        used.update((a, b))
    return True
