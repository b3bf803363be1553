"""Weighted incidence certificates for bounding spectral radii.

A weighted incidence matrix assigns a positive weight B(v, e) to every
incident vertex-edge pair.  Comparing the per-vertex weight sums against 1
and the per-edge weight products against a parameter alpha classifies the
pair (H, B, alpha) as normal, strictly subnormal, or strictly supernormal;
the strict cases bound the spectral radius by alpha^(-1/k) from above or
below.  On supertrees the normality conditions pin B down uniquely once
alpha is fixed, which turns the spectral radius into the root of a scalar
monotone function of alpha; ``alpha_normal_radius`` solves it by bisection.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .constructors import broom
from .errors import BracketError, IncidenceMismatchError, PositivityError
from .hypergraph import Hypergraph, incidence_lists, is_supertree, vertex_stats

DEFAULT_CERT_TOL = 1e-9
ALPHA_BISECT_TOL = 1e-14
ALPHA_BISECT_MAX_ITER = 200

NORMAL = "normal"
STRICTLY_SUBNORMAL = "strictly-subnormal"
STRICTLY_SUPERNORMAL = "strictly-supernormal"
NEITHER = "neither"


@dataclass(frozen=True)
class WeightedIncidence:
    """Positive weights on exactly the incident (vertex, edge index) pairs."""

    host: Hypergraph
    entries: dict[tuple[int, int], float] = field(compare=False)

    def __post_init__(self):
        expected = {(v, i) for i, e in enumerate(self.host.edges) for v in e}
        got = set(self.entries)
        if got != expected:
            missing = sorted(expected - got)[:3]
            extra = sorted(got - expected)[:3]
            raise IncidenceMismatchError(
                f"entries do not match incidence (missing {missing}, extra {extra})"
            )
        for pair, w in self.entries.items():
            if not w > 0.0:
                raise PositivityError(f"weight at {pair} must be positive, got {w}")

    def weight(self, v: int, e_idx: int) -> float:
        return self.entries[(v, e_idx)]


@dataclass(frozen=True)
class CertificateVerdict:
    """Classification of (H, B, alpha) with per-constraint slacks.

    ``vertex_slacks[v]`` is 1 minus the weight sum at v; ``edge_slacks[i]``
    is the weight product over edge i minus alpha.  ``consistent`` reports
    whether the weights admit a global potential (trivially true on
    acyclic input).
    """

    alpha: float
    classification: str
    vertex_slacks: tuple[float, ...]
    edge_slacks: tuple[float, ...]
    consistent: bool


def _consistent(h: Hypergraph, b: WeightedIncidence, tol: float) -> bool:
    """Cycle products equal 1, checked via potentials over a spanning structure.

    Within a single edge the ratio constraints compose exactly, so only
    genuine vertex-edge cycles can fail; acyclic hypergraphs always pass.
    """
    inc = incidence_lists(h)
    pot = [0.0] * h.n
    seen = [False] * h.n
    for start in range(h.n):
        if seen[start]:
            continue
        seen[start] = True
        pot[start] = 1.0
        stack = [start]
        while stack:
            v = stack.pop()
            for i in inc[v]:
                bv = b.weight(v, i)
                for w in h.edges[i]:
                    if w == v:
                        continue
                    ratio = b.weight(w, i) / bv
                    if not seen[w]:
                        seen[w] = True
                        pot[w] = pot[v] * ratio
                        stack.append(w)
                    elif abs(pot[w] - pot[v] * ratio) > tol * max(pot[w], pot[v] * ratio):
                        return False
    return True


def classify(
    h: Hypergraph,
    b: WeightedIncidence,
    alpha: float,
    tol: float = DEFAULT_CERT_TOL,
) -> CertificateVerdict:
    """Evaluate vertex sums and edge products and assign the strongest class.

    A slack within ``tol`` of zero counts as an equality; "strict" means at
    least one slack lies beyond ``tol`` on the permitted side.
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    if b.host != h:
        raise IncidenceMismatchError("weighted incidence was built for a different hypergraph")
    sums = [0.0] * h.n
    prods = [1.0] * h.m
    for (v, i), w in b.entries.items():
        sums[v] += w
        prods[i] *= w
    vertex_slacks = tuple(1.0 - s for s in sums)
    edge_slacks = tuple(p - alpha for p in prods)
    sub_ok = all(vs >= -tol for vs in vertex_slacks) and all(es >= -tol for es in edge_slacks)
    sup_ok = all(vs <= tol for vs in vertex_slacks) and all(es <= tol for es in edge_slacks)
    if sub_ok and sup_ok:
        classification = NORMAL
    elif sub_ok:
        classification = STRICTLY_SUBNORMAL
    elif sup_ok:
        classification = STRICTLY_SUPERNORMAL
    else:
        classification = NEITHER
    return CertificateVerdict(
        alpha=alpha,
        classification=classification,
        vertex_slacks=vertex_slacks,
        edge_slacks=edge_slacks,
        consistent=_consistent(h, b, tol),
    )


def t11m3_certificate(m: int, k: int, alpha: float) -> WeightedIncidence:
    """The explicit certificate on the supertree with branch counts (1, 1, m-3).

    Pendent vertices get weight 1.  Each of the two singly-branched vertices
    splits 1 as alpha on its pendent edge and 1-alpha on the central edge;
    the heavy vertex puts alpha on each of its m-3 pendent edges and
    1-(m-3)*alpha on the central edge.  Every vertex sum is exactly 1 and
    every pendent-edge product is exactly alpha, so the classification is
    decided by the central edge alone.

    Requires 0 < alpha < 1/(m-3) so all weights stay positive.
    """
    if m < 4:
        raise ValueError("t11m3_certificate needs m >= 4")
    if not 0.0 < alpha < 1.0 / (m - 3):
        raise PositivityError(
            f"alpha must lie in (0, {1.0 / (m - 3)!r}) to keep weights positive, got {alpha}"
        )
    host = broom(1, 1, m - 3, k)
    # Sorted edge order puts the central edge first, then the pendent edges
    # at vertices 0, 1, 2 in that order.
    pend = vertex_stats(host).pendent_vertices
    entries: dict[tuple[int, int], float] = {}
    for i, e in enumerate(host.edges):
        for v in e:
            if v in pend:
                entries[(v, i)] = 1.0
    entries[(0, 1)] = alpha
    entries[(0, 0)] = 1.0 - alpha
    entries[(1, 2)] = alpha
    entries[(1, 0)] = 1.0 - alpha
    for i in range(3, m):
        entries[(2, i)] = alpha
    entries[(2, 0)] = 1.0 - (m - 3) * alpha
    return WeightedIncidence(host=host, entries=entries)


# --- leaf-to-root propagation and the bisection radius solver ---------------


def _propagation_order(h: Hypergraph) -> tuple[int, list[int], list[int]]:
    """Root the supertree and give edges in leaf-to-root processing order.

    The root is a vertex of maximum degree (every edge of a hyperstar is
    pendent, so rooting inside a non-pendent edge is not always possible;
    the scalar equation below has the same unique root either way).
    Returns (root vertex, parent vertex per edge, edge order deepest first).
    """
    degrees = vertex_stats(h).degrees
    root = max(range(h.n), key=lambda v: (degrees[v], -v))
    inc = incidence_lists(h)
    parent = [-1] * h.m
    bfs_edges: list[int] = []
    seen_v = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for i in inc[v]:
            if parent[i] >= 0:
                continue
            parent[i] = v
            bfs_edges.append(i)
            for w in h.edges[i]:
                if w not in seen_v:
                    seen_v.add(w)
                    queue.append(w)
    return root, parent, bfs_edges[::-1]


def _propagate(h: Hypergraph, alpha: float) -> tuple[float, dict[tuple[int, int], float] | None]:
    """Force the unique weights meeting all non-root constraints at this alpha.

    Away from the root every vertex sum is pinned to 1 and every edge product
    to alpha; the returned scalar is the root vertex's sum minus 1.  A forced
    non-positive weight means alpha is already too large, reported as
    (+inf, None).
    """
    root, parent, order = _propagation_order(h)
    entries: dict[tuple[int, int], float] = {}
    carried = [0.0] * h.n
    for i in order:
        p = parent[i]
        prod = 1.0
        for v in h.edges[i]:
            if v == p:
                continue
            w = 1.0 - carried[v]
            if w <= 0.0:
                return math.inf, None
            entries[(v, i)] = w
            prod *= w
        bp = alpha / prod
        entries[(p, i)] = bp
        carried[p] += bp
    return carried[root] - 1.0, entries


def propagate_certificate(h: Hypergraph, alpha: float) -> WeightedIncidence:
    """The propagated weights as a certificate; everything but the root's
    vertex sum holds with equality, so its sign decides sub vs supernormal.

    Raises PositivityError when alpha is large enough to force a
    non-positive weight.
    """
    if not is_supertree(h):
        raise ValueError("propagation requires a supertree")
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    _, entries = _propagate(h, alpha)
    if entries is None:
        raise PositivityError(f"propagation infeasible at alpha = {alpha}")
    return WeightedIncidence(host=h, entries=entries)


def alpha_normal_radius(h: Hypergraph, tol: float = DEFAULT_CERT_TOL) -> float:
    """Spectral radius of a supertree via bisection on the certificate parameter.

    The propagated root-sum defect is strictly increasing in alpha, negative
    below the normal point and positive (or infeasible) above it, exactly the
    two directions in which strict sub/supernormality bound the radius.
    Bisection therefore converges to the alpha at which the supertree is
    alpha-normal, and the radius is alpha^(-1/k).  The propagated certificate
    at the final alpha satisfies all constraints within ``tol``.
    """
    if not is_supertree(h):
        raise ValueError("alpha_normal_radius requires a supertree")
    degrees = vertex_stats(h).degrees
    lo = 1.0 / (max(degrees) * h.m)
    hi = 1.0
    f_hi, _ = _propagate(h, hi)
    if f_hi <= 0.0:
        # Radius 1 sits exactly at the bracket top (the one-edge supertree).
        return 1.0
    f_lo, _ = _propagate(h, lo)
    if not f_lo < 0.0:
        raise BracketError(f"no sign change: defect {f_lo:.3e} at alpha = {lo}", alpha=lo)
    for _ in range(ALPHA_BISECT_MAX_ITER):
        if hi - lo <= ALPHA_BISECT_TOL:
            break
        mid = 0.5 * (lo + hi)
        f_mid, _ = _propagate(h, mid)
        if f_mid > 0.0:
            hi = mid
        else:
            lo = mid
    alpha = 0.5 * (lo + hi)
    f_final, _ = _propagate(h, alpha)
    if not abs(f_final) <= tol:
        raise BracketError(
            f"bisection stalled: defect {f_final:.3e} at alpha = {alpha}", alpha=alpha
        )
    return alpha ** (-1.0 / h.k)
