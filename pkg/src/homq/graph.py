"""Simple undirected graphs and connected vertex-subset enumeration.

Edges carry dense integer ids ``0..|E|-1`` assigned in input order; the ids
double as distinct edge colours, so every induced subgraph of an instance is
its own colour-isomorphism class.

Subsets are exchanged as sorted tuples of vertex ids.  Internally the
enumeration works on bitmasks held in numpy arrays (``int64`` up to 62
vertices, Python ints in ``object`` arrays beyond that).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptySubsetError,
    InstanceTooLargeError,
    ParallelEdgeError,
    SelfLoopError,
    VertexOutOfRangeError,
)

VertexSubset = tuple[int, ...]

_INT64_BITS = 62


@dataclass(frozen=True, eq=False)
class Graph:
    """Validated simple graph; build with :func:`build_graph`."""

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_endpoints(self) -> np.ndarray:
        """``(|E|, 2)`` integer array of endpoints indexed by edge id."""
        out = np.zeros((len(self.edges), 2), dtype=np.int64)
        for eid, u, v in self.edges:
            out[eid] = (u, v)
        return out

    @cached_property
    def mask_dtype(self) -> type | np.dtype:
        return np.dtype(np.int64) if self.vertex_count <= _INT64_BITS else np.dtype(object)

    @cached_property
    def neighbor_masks(self) -> list[int]:
        masks = []
        for nbrs in self.adjacency:
            mask = 0
            for w, _ in nbrs:
                mask |= 1 << w
            masks.append(mask)
        return masks

    @cached_property
    def edge_lookup(self) -> dict[tuple[int, int], int]:
        table = {}
        for eid, u, v in self.edges:
            table[(u, v)] = eid
            table[(v, u)] = eid
        return table

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def __repr__(self) -> str:
        pairs = [(u, v) for _, u, v in self.edges]
        return f"Graph(vertex_count={self.vertex_count}, edges={pairs})"


def build_graph(vertex_count: int, edge_pairs: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edge_pairs`` and build the graph.

    Edge ids follow input order.  Raises :class:`SelfLoopError`,
    :class:`ParallelEdgeError` or :class:`VertexOutOfRangeError`, each naming
    the offending edge.
    """
    if vertex_count < 0:
        raise VertexOutOfRangeError(f"vertex_count must be nonnegative, got {vertex_count}")
    edges: list[tuple[int, int, int]] = []
    seen: set[frozenset[int]] = set()
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(vertex_count)]
    for eid, pair in enumerate(edge_pairs):
        u, v = (int(x) for x in pair)
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise VertexOutOfRangeError(
                f"edge {eid} ({u}, {v}) references a vertex outside [0, {vertex_count})"
            )
        if u == v:
            raise SelfLoopError(f"edge {eid} ({u}, {v}) is a self-loop")
        key = frozenset((u, v))
        if key in seen:
            raise ParallelEdgeError(f"edge {eid} ({u}, {v}) duplicates an earlier edge")
        seen.add(key)
        edges.append((eid, u, v))
        adjacency[u].append((v, eid))
        adjacency[v].append((u, eid))
    return Graph(
        vertex_count=vertex_count,
        edges=tuple(edges),
        adjacency=tuple(tuple(nbrs) for nbrs in adjacency),
    )


def max_degree(G: Graph) -> int:
    return max((len(nbrs) for nbrs in G.adjacency), default=0)


def _check_subset(G: Graph, U: Iterable[int]) -> VertexSubset:
    members = tuple(sorted(set(int(v) for v in U)))
    for v in members:
        if not 0 <= v < G.vertex_count:
            raise VertexOutOfRangeError(f"vertex {v} outside [0, {G.vertex_count})")
    return members


def induced_edges(G: Graph, U: Iterable[int]) -> list[int]:
    """Edge ids with both endpoints in ``U``, ascending."""
    members = set(_check_subset(G, U))
    return [eid for eid, u, v in G.edges if u in members and v in members]


def is_connected_subset(G: Graph, U: Iterable[int]) -> bool:
    members = _check_subset(G, U)
    if not members:
        raise EmptySubsetError("connectivity of the empty subset is undefined")
    inside = set(members)
    seen = {members[0]}
    queue = deque([members[0]])
    while queue:
        x = queue.popleft()
        for w, _ in G.adjacency[x]:
            if w in inside and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(inside)


def popcount(masks: np.ndarray) -> np.ndarray:
    if masks.dtype == object:
        return np.array([int(x).bit_count() for x in masks], dtype=np.int64)
    return np.bitwise_count(masks).astype(np.int64)


def mask_of(members: Iterable[int]) -> int:
    mask = 0
    for v in members:
        mask |= 1 << int(v)
    return mask


def members_of(mask: int) -> VertexSubset:
    mask = int(mask)
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def neighborhood_masks(G: Graph, masks: np.ndarray) -> np.ndarray:
    """Union of neighbour masks over the members of each subset."""
    out = np.zeros(len(masks), dtype=G.mask_dtype)
    if out.dtype == object:
        out[:] = 0
    for v, nb in enumerate(G.neighbor_masks):
        if nb == 0:
            continue
        hit = ((masks >> v) & 1) == 1
        if np.any(hit):
            out[hit] = out[hit] | nb
    return out


def connected_subset_masks(
    G: Graph, size_bound: int, max_subsets: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """All connected subsets with at most ``size_bound`` vertices as bitmasks.

    Anchored growth: a subset is grown from its minimum vertex by adding
    neighbours larger than that anchor, level by level, with duplicates
    removed per level.  Returns ``(masks, sizes)`` sorted by mask value.
    """
    if size_bound < 1:
        raise ValueError(f"size_bound must be >= 1, got {size_bound}")
    n = G.vertex_count
    dtype = G.mask_dtype
    if n == 0:
        return np.zeros(0, dtype=dtype), np.zeros(0, dtype=np.int64)
    bits = [1 << v for v in range(n)]
    level = np.array(bits, dtype=dtype)
    nbr = np.array(G.neighbor_masks, dtype=dtype)
    levels = [level]
    total = len(level)
    size = 1
    while size < size_bound and len(level):
        low = level & -level
        grown, grown_nbr = [], []
        for u in range(n):
            bit = bits[u]
            ok = (((nbr >> u) & 1) == 1) & (((level >> u) & 1) == 0) & (low < bit)
            if not np.any(ok):
                continue
            grown.append(level[ok] | bit)
            grown_nbr.append(nbr[ok] | G.neighbor_masks[u])
        if not grown:
            break
        cand = np.concatenate(grown)
        cand_nbr = np.concatenate(grown_nbr)
        level, first = np.unique(cand, return_index=True)
        nbr = cand_nbr[first]
        size += 1
        total += len(level)
        if max_subsets is not None and total > max_subsets:
            raise InstanceTooLargeError(
                f"more than {max_subsets} connected subsets of size <= {size_bound}"
            )
        levels.append(level)
    masks = np.concatenate(levels)
    order = np.argsort(masks, kind="stable")
    masks = masks[order]
    return masks, popcount(masks)


def enumerate_connected_subsets(G: Graph, size_bound: int) -> list[VertexSubset]:
    """Every connected subset with ``1 <= |U| <= size_bound``, exactly once,
    in lexicographic order of the sorted member lists."""
    masks, _ = connected_subset_masks(G, size_bound)
    return sorted(members_of(x) for x in masks)
