"""Immutable k-uniform hypergraphs and structural predicates.

Vertices are dense integers ``0..n-1``.  Edges are stored as sorted tuples
and the edge list itself is sorted, so two hypergraphs are equal exactly
when their edge sets are equal.  All operations here are pure.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import MultipleEdgeError, SizeLimitError

#: Backtracking isomorphism is exhaustive; refuse inputs beyond this size.
ISO_VERTEX_LIMIT = 20


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices ``0..n-1`` with at least one edge.

    Every edge must contain exactly ``k`` distinct vertices and no two edges
    may coincide.  Isolated vertices are tolerated (they can appear
    transiently after edge moves) but never produced by the constructors.
    """

    k: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"edge cardinality k must be >= 2, got {self.k}")
        if self.n < 1:
            raise ValueError(f"vertex count n must be >= 1, got {self.n}")
        norm = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "edges", norm)
        if not norm:
            raise ValueError("hypergraph must have at least one edge")
        seen = set()
        for e in norm:
            if len(set(e)) != self.k:
                raise ValueError(f"edge {e} must have exactly {self.k} distinct vertices")
            if e[0] < 0 or e[-1] >= self.n:
                raise ValueError(f"edge {e} has vertices outside [0, {self.n})")
            if e in seen:
                raise MultipleEdgeError(f"duplicate edge {e}")
            seen.add(e)

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self.edges)


@dataclass(frozen=True)
class VertexStats:
    """Degrees and pendency classification of a hypergraph.

    ``non_pendent_count`` is the number of vertices of degree other than one.
    """

    degrees: tuple[int, ...]
    pendent_vertices: frozenset[int]
    pendent_edges: frozenset[int]
    non_pendent_count: int


@lru_cache(maxsize=None)
def vertex_stats(h: Hypergraph) -> VertexStats:
    """Compute per-vertex degrees and the pendent vertex/edge sets.

    A vertex is pendent when its degree is one.  An edge is pendent when all
    but at most one of its vertices are pendent; this covers the one-edge
    hypergraph, whose single edge counts as pendent.
    """
    degrees = [0] * h.n
    for e in h.edges:
        for v in e:
            degrees[v] += 1
    pendent = frozenset(v for v in range(h.n) if degrees[v] == 1)
    pendent_edges = frozenset(
        i for i, e in enumerate(h.edges)
        if sum(1 for v in e if v in pendent) >= h.k - 1
    )
    return VertexStats(
        degrees=tuple(degrees),
        pendent_vertices=pendent,
        pendent_edges=pendent_edges,
        non_pendent_count=h.n - len(pendent),
    )


def incidence_lists(h: Hypergraph) -> tuple[tuple[int, ...], ...]:
    """Edge indices incident to each vertex."""
    inc: list[list[int]] = [[] for _ in range(h.n)]
    for i, e in enumerate(h.edges):
        for v in e:
            inc[v].append(i)
    return tuple(tuple(ix) for ix in inc)


def is_connected(h: Hypergraph) -> bool:
    """True iff every vertex is reachable from vertex 0 via shared edges."""
    inc = incidence_lists(h)
    seen_v = {0}
    seen_e: set[int] = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i in inc[v]:
            if i in seen_e:
                continue
            seen_e.add(i)
            for w in h.edges[i]:
                if w not in seen_v:
                    seen_v.add(w)
                    queue.append(w)
    return len(seen_v) == h.n


def is_supertree(h: Hypergraph) -> bool:
    """True iff ``h`` is connected and satisfies m(k-1) = n-1.

    For connected k-uniform hypergraphs the edge-count condition is
    equivalent to acyclicity, so this tests the supertree property.
    """
    return h.m * (h.k - 1) == h.n - 1 and is_connected(h)


# --- canonical form ---------------------------------------------------------
#
# For a supertree the bipartite vertex-edge incidence graph is a tree with
# m + n nodes.  Dropping the pendent vertices (leaves interchangeable under
# isomorphism; their count per edge is implied by k) leaves a smaller tree
# whose nodes are the edges and the non-pendent vertices.  That typed tree is
# a complete isomorphism invariant, so a canonical rooted encoding of it,
# minimized over all roots, is a canonical key.


def _reduced_tree(h: Hypergraph) -> tuple[list[str], list[list[int]]]:
    """Typed adjacency of the reduced incidence tree (edges + non-pendent)."""
    stats = vertex_stats(h)
    nonpend = sorted(set(range(h.n)) - stats.pendent_vertices)
    vnode = {v: h.m + j for j, v in enumerate(nonpend)}
    types = ["E"] * h.m + ["V"] * len(nonpend)
    adj: list[list[int]] = [[] for _ in types]
    for i, e in enumerate(h.edges):
        for v in e:
            if v in vnode:
                adj[i].append(vnode[v])
                adj[vnode[v]].append(i)
    return types, adj


def _rooted_code(root: int, types: list[str], adj: list[list[int]]) -> str:
    def code(node: int, parent: int) -> str:
        children = sorted(code(c, node) for c in adj[node] if c != parent)
        return types[node] + "(" + "".join(children) + ")"

    return code(root, -1)


@lru_cache(maxsize=None)
def canonical_key(h: Hypergraph) -> bytes:
    """Canonical byte-string: equal for two supertrees iff isomorphic.

    Rejects non-supertrees, since the reduced incidence tree only exists in
    the acyclic case.
    """
    if not is_supertree(h):
        raise ValueError("canonical_key requires a supertree")
    types, adj = _reduced_tree(h)
    best = min(_rooted_code(r, types, adj) for r in range(len(types)))
    return f"{h.k}|{best}".encode("ascii")


# --- exhaustive isomorphism -------------------------------------------------


def _edge_profiles(h: Hypergraph, degrees: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [tuple(sorted(degrees[v] for v in e)) for e in h.edges]


def _edge_search_order(h: Hypergraph) -> list[int]:
    """Edges ordered so each one shares a vertex with an earlier one when possible."""
    order: list[int] = []
    placed: set[int] = set()
    covered: set[int] = set()
    while len(order) < h.m:
        pick = None
        for i in range(h.m):
            if i in placed:
                continue
            if pick is None:
                pick = i
            if covered & set(h.edges[i]):
                pick = i
                break
        order.append(pick)
        placed.add(pick)
        covered |= set(h.edges[pick])
    return order


def are_isomorphic(h1: Hypergraph, h2: Hypergraph, max_vertices: int = ISO_VERTEX_LIMIT) -> bool:
    """Exhaustive backtracking test for a vertex bijection mapping edges onto edges.

    Intended for small instances only; raises SizeLimitError beyond
    ``max_vertices``.  Used as the validation oracle for canonical_key.
    """
    if h1.k != h2.k or h1.n != h2.n or h1.m != h2.m:
        return False
    if max(h1.n, h2.n) > max_vertices:
        raise SizeLimitError(
            f"isomorphism backtracking limited to {max_vertices} vertices, got {max(h1.n, h2.n)}"
        )
    d1 = vertex_stats(h1).degrees
    d2 = vertex_stats(h2).degrees
    if sorted(d1) != sorted(d2):
        return False
    prof1 = _edge_profiles(h1, d1)
    prof2 = _edge_profiles(h2, d2)
    if sorted(prof1) != sorted(prof2):
        return False

    order = _edge_search_order(h1)
    vmap: dict[int, int] = {}
    images: set[int] = set()
    used: set[int] = set()

    def extend(pos: int) -> bool:
        if pos == h1.m:
            return True
        e1 = h1.edges[order[pos]]
        p1 = prof1[order[pos]]
        mapped_images = sorted(vmap[v] for v in e1 if v in vmap)
        free1 = [v for v in e1 if v not in vmap]
        for j, e2 in enumerate(h2.edges):
            if j in used or prof2[j] != p1:
                continue
            hit = sorted(w for w in e2 if w in images)
            if hit != mapped_images:
                continue
            free2 = [w for w in e2 if w not in images]
            for perm in itertools.permutations(free2):
                if any(d1[a] != d2[b] for a, b in zip(free1, perm)):
                    continue
                for a, b in zip(free1, perm):
                    vmap[a] = b
                    images.add(b)
                used.add(j)
                if extend(pos + 1):
                    return True
                used.discard(j)
                for a, b in zip(free1, perm):
                    del vmap[a]
                    images.discard(b)
        return False

    return extend(0)


# --- interchange format -----------------------------------------------------


def to_interchange(h: Hypergraph) -> dict:
    """Plain-dict form: {"k": int, "n": int, "edges": [[int, ...], ...]}."""
    return {"k": h.k, "n": h.n, "edges": [list(e) for e in h.edges]}


def from_interchange(obj: dict) -> Hypergraph:
    """Inverse of to_interchange; validates through the Hypergraph constructor."""
    try:
        k = int(obj["k"])
        n = int(obj["n"])
        edges = tuple(tuple(int(v) for v in e) for e in obj["edges"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed hypergraph object: {exc}") from exc
    return Hypergraph(k=k, n=n, edges=edges)
