"""Builders for the named supertree families and the edge-moving operation."""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass

from .errors import DanglingVertexWarning, MultipleEdgeError
from .hypergraph import Hypergraph, vertex_stats


@dataclass(frozen=True)
class OrdinaryTree:
    """An ordinary tree on vertices ``0..n-1``, edges as sorted pairs."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"tree needs at least 2 vertices, got {self.n}")
        norm = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "edges", norm)
        if len(norm) != self.n - 1:
            raise ValueError(f"tree on {self.n} vertices needs {self.n - 1} edges, got {len(norm)}")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in norm:
            if not (0 <= a < self.n and 0 <= b < self.n) or a == b:
                raise ValueError(f"bad tree edge ({a}, {b})")
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != self.n:
            raise ValueError("tree edges are not connected")


def star(n: int) -> OrdinaryTree:
    """Star on n vertices, center 0."""
    if n < 2:
        raise ValueError("star needs n >= 2")
    return OrdinaryTree(n=n, edges=tuple((0, v) for v in range(1, n)))


def path(n: int) -> OrdinaryTree:
    """Path on n vertices, 0-1-...-(n-1)."""
    if n < 2:
        raise ValueError("path needs n >= 2")
    return OrdinaryTree(n=n, edges=tuple((v, v + 1) for v in range(n - 1)))


def double_star(a: int, b: int) -> OrdinaryTree:
    """Tree on a+b+2 vertices: a central edge (0,1) with a pendants at 0 and b at 1."""
    if a < 1 or b < 1:
        raise ValueError("double star needs a, b >= 1")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return OrdinaryTree(n=a + b + 2, edges=tuple(edges))


def f_tree(n: int) -> OrdinaryTree:
    """Tree on n vertices: two paths of length 2 plus n-5 pendants, all at vertex 0.

    For n = 5 this degenerates to the path on 5 vertices.
    """
    if n < 5:
        raise ValueError("f_tree needs n >= 5")
    edges = [(0, 1), (1, 2), (0, 3), (3, 4)]
    edges += [(0, 5 + i) for i in range(n - 5)]
    return OrdinaryTree(n=n, edges=tuple(edges))


def tree_power(t: OrdinaryTree, k: int) -> Hypergraph:
    """kth power of an ordinary tree: each edge gains k-2 fresh vertices.

    Fresh vertices are numbered after the original ones, edge by edge in the
    stored (sorted) edge order, so the output is deterministic.  For k = 2
    the tree is returned unchanged as a 2-uniform hypergraph.
    """
    if k < 2:
        raise ValueError("tree_power needs k >= 2")
    if k == 2:
        return Hypergraph(k=2, n=t.n, edges=t.edges)
    edges = []
    nxt = t.n
    for e in t.edges:
        edges.append(tuple(e) + tuple(range(nxt, nxt + k - 2)))
        nxt += k - 2
    return Hypergraph(k=k, n=nxt, edges=tuple(edges))


def hyperstar(m: int, k: int) -> Hypergraph:
    """Supertree with m edges all sharing the single vertex 0."""
    if m < 1:
        raise ValueError("hyperstar needs m >= 1")
    return tree_power(star(m + 1), k)


def broom(t1: int, t2: int, t3: int, k: int) -> Hypergraph:
    """Supertree with one central edge whose vertices 0, 1, 2 carry t1, t2, t3
    pendent edges.

    The three designated vertices get the lowest ids and end up with degrees
    t1+1, t2+1, t3+1.  Requires 1 <= t1 <= t2 <= t3 and k >= 3 (a 2-edge
    cannot hold three distinct vertices).
    """
    if k < 3:
        raise ValueError("broom needs k >= 3: a 2-edge cannot contain three branch vertices")
    if not (1 <= t1 <= t2 <= t3):
        raise ValueError(f"broom needs 1 <= t1 <= t2 <= t3, got ({t1}, {t2}, {t3})")
    edges = [tuple(range(k))]  # central edge: 0, 1, 2 plus k-3 fillers
    nxt = k
    for u, t in ((0, t1), (1, t2), (2, t3)):
        for _ in range(t):
            edges.append((u,) + tuple(range(nxt, nxt + k - 1)))
            nxt += k - 1
    return Hypergraph(k=k, n=nxt, edges=tuple(edges))


def move_edges(g: Hypergraph, u: int, moves: list[tuple[int, int]]) -> Hypergraph:
    """Replace each edge e_i in ``moves`` by (e_i minus v_i) plus u.

    ``moves`` is a list of (edge index, vertex) pairs with distinct edge
    indices, u outside every moved edge and v_i inside its edge.  An empty
    move list returns g unchanged.  Raises MultipleEdgeError when two
    resulting edges coincide; warns (DanglingVertexWarning) when a v_i loses
    its last edge.
    """
    if not moves:
        return g
    if not (0 <= u < g.n):
        raise ValueError(f"target vertex {u} out of range")
    seen_idx = set()
    new_edges = list(g.edges)
    for idx, v in moves:
        if idx in seen_idx:
            raise ValueError(f"edge index {idx} moved twice")
        seen_idx.add(idx)
        if not (0 <= idx < g.m):
            raise ValueError(f"edge index {idx} out of range")
        e = g.edges[idx]
        if u in e:
            raise ValueError(f"target vertex {u} already in edge {e}")
        if v not in e:
            raise ValueError(f"vertex {v} not in edge {e}")
        new_edges[idx] = tuple(sorted(set(e) - {v} | {u}))
    if len(set(new_edges)) != len(new_edges):
        raise MultipleEdgeError("moving edges would create a multiple edge")
    moved = Hypergraph(k=g.k, n=g.n, edges=tuple(new_edges))
    degrees = vertex_stats(moved).degrees
    dangling = sorted({v for _, v in moves if degrees[v] == 0})
    if dangling:
        warnings.warn(
            f"vertices {dangling} are now isolated", DanglingVertexWarning, stacklevel=2
        )
    return moved


def is_hypertree(h: Hypergraph) -> bool:
    """True iff h is the kth power of some ordinary tree.

    Equivalent, for supertrees, to every edge containing at most two
    non-pendent vertices.
    """
    from .hypergraph import is_supertree

    if not is_supertree(h):
        return False
    pend = vertex_stats(h).pendent_vertices
    return all(sum(1 for v in e if v not in pend) <= 2 for e in h.edges)


def base_tree(h: Hypergraph) -> OrdinaryTree:
    """Recover an ordinary tree whose kth power is isomorphic to h.

    Non-pendent vertices keep their identity (renumbered densely); each
    pendent edge contributes one fresh leaf.
    """
    if not is_hypertree(h):
        raise ValueError("base_tree requires the power of an ordinary tree")
    pend = vertex_stats(h).pendent_vertices
    nonpend = sorted(set(range(h.n)) - pend)
    vid = {v: i for i, v in enumerate(nonpend)}
    nxt = len(nonpend)
    edges = []
    for e in h.edges:
        core = [v for v in e if v not in pend]
        if len(core) == 2:
            edges.append((vid[core[0]], vid[core[1]]))
        elif len(core) == 1:
            edges.append((vid[core[0]], nxt))
            nxt += 1
        else:  # single-edge hypergraph: no non-pendent vertices at all
            edges.append((nxt, nxt + 1))
            nxt += 2
    return OrdinaryTree(n=nxt, edges=tuple(edges))
