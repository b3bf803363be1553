"""Spectral radius computation for k-uniform hypergraphs.

The adjacency tensor of a k-uniform hypergraph acts on a vector by

    (Ax)_i = sum over edges e containing i of the product of x_j, j in e, j != i,

and the spectral radius is the largest eigenvalue of ``Ax = rho * x^[k-1]``.
For a connected hypergraph it carries a unique positive eigenvector with
k-norm 1 (the principal pair).  This module computes it by a shifted power
method with Collatz-Wielandt bracketing, plus closed forms for the families
whose radii reduce to quartic equations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constructors import OrdinaryTree, tree_power
from .errors import DisconnectedInputError, NonConvergenceError
from .hypergraph import Hypergraph, is_connected

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000

#: Radius comparisons downstream treat gaps below this as ties (10x solver tol
#: with margin, so numerical noise never masquerades as a genuine tie).
TIE_TOL = 1e-7


@dataclass(frozen=True)
class PrincipalPair:
    """Converged spectral radius estimate with its positive eigenvector.

    The eigenvector has k-norm 1 and ``residual`` is the max-norm defect of
    the eigenequation at (rho, x).
    """

    rho: float
    x: tuple[float, ...]
    residual: float
    iterations: int


def tensor_apply(h: Hypergraph, x: list[float] | tuple[float, ...]) -> list[float]:
    """Apply the adjacency tensor: component i sums, over edges containing i,
    the product of the other k-1 coordinates.

    Leave-one-out products are formed by prefix/suffix sweeps, so zero
    coordinates are handled exactly.
    """
    if len(x) != h.n:
        raise ValueError(f"vector length {len(x)} does not match n = {h.n}")
    out = [0.0] * h.n
    for e in h.edges:
        vals = [x[v] for v in e]
        kk = len(vals)
        pre = [1.0] * (kk + 1)
        for i in range(kk):
            pre[i + 1] = pre[i] * vals[i]
        suf = [1.0] * (kk + 1)
        for i in range(kk - 1, -1, -1):
            suf[i] = suf[i + 1] * vals[i]
        for i, v in enumerate(e):
            out[v] += pre[i] * suf[i + 1]
    return out


def eigen_residual(h: Hypergraph, rho: float, x: list[float] | tuple[float, ...]) -> float:
    """Max-norm defect of the eigenequation: max_i |(Ax)_i - rho * x_i^(k-1)|."""
    ax = tensor_apply(h, x)
    km1 = h.k - 1
    return max(abs(a - rho * xi**km1) for a, xi in zip(ax, x))


def power_iteration(
    h: Hypergraph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> PrincipalPair:
    """Shifted power method for the spectral radius of a connected hypergraph.

    Starting from the uniform positive vector, each step computes
    ``y = Ax + x^[k-1]`` (the unit shift makes the iteration converge for any
    connected input, bipartite 2-graphs included) and renormalizes
    ``x = y^[1/(k-1)]`` to k-norm 1.  For positive x the Collatz-Wielandt
    ratios ``(Ax)_i / x_i^(k-1)`` bracket the true radius at every iterate;
    iteration stops once the bracket width drops below ``tol`` relative to
    the bracket, and the returned rho is the bracket midpoint.

    Raises DisconnectedInputError for disconnected input and
    NonConvergenceError (carrying the final bracket) past ``max_iter``.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if not is_connected(h):
        raise DisconnectedInputError("power iteration requires a connected hypergraph")
    k = h.k
    km1 = k - 1
    x = [h.n ** (-1.0 / k)] * h.n
    lam_lo = lam_hi = 0.0
    for it in range(1, max_iter + 1):
        ax = tensor_apply(h, x)
        pw = [xi**km1 for xi in x]
        ratios = [a / p for a, p in zip(ax, pw)]
        lam_lo = min(ratios)
        lam_hi = max(ratios)
        if lam_hi - lam_lo <= tol * max(1.0, lam_lo):
            rho = 0.5 * (lam_lo + lam_hi)
            residual = max(abs(a - rho * p) for a, p in zip(ax, pw))
            return PrincipalPair(rho=rho, x=tuple(x), residual=residual, iterations=it)
        y = [a + p for a, p in zip(ax, pw)]
        x = [yi ** (1.0 / km1) for yi in y]
        norm = sum(xi**k for xi in x) ** (1.0 / k)
        x = [xi / norm for xi in x]
    raise NonConvergenceError(
        f"no convergence after {max_iter} iterations; bracket width {lam_hi - lam_lo:.3e}",
        bracket=(lam_lo, lam_hi),
    )


def graph_spectral_radius(t: OrdinaryTree, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Largest adjacency eigenvalue of an ordinary tree (the k = 2 code path)."""
    return power_iteration(tree_power(t, 2), tol=tol, max_iter=max_iter).rho


def power_formula_radius(t: OrdinaryTree, k: int, tol: float = DEFAULT_TOL) -> float:
    """Radius of the kth power of a tree: the tree's radius raised to 2/k."""
    if k < 2:
        raise ValueError("power_formula_radius needs k >= 2")
    return graph_spectral_radius(t, tol=tol) ** (2.0 / k)


def double_star_power_radius(m: int, k: int) -> float:
    """Closed-form radius of the kth power of the double star with 2 and m-3
    pendants (m edges total).

    The base radius solves rho^4 - m*rho^2 + 2(m-3) = 0; the largest root
    satisfies rho > sqrt(m-2) and the power radius is rho^(2/k).
    """
    if m < 4:
        raise ValueError("double_star_power_radius needs m >= 4")
    if k < 2:
        raise ValueError("k must be >= 2")
    rho_sq = 0.5 * (m + math.sqrt(m * m - 8.0 * (m - 3)))
    return rho_sq ** (1.0 / k)


def f_tree_power_radius(m: int, k: int) -> float:
    """Closed-form radius of the kth power of the f-tree on m+1 vertices.

    The base radius solves rho^4 - (m-1)*rho^2 + (m-4) = 0.
    """
    if m < 4:
        raise ValueError("f_tree_power_radius needs m >= 4")
    if k < 2:
        raise ValueError("k must be >= 2")
    rho_sq = 0.5 * ((m - 1) + math.sqrt((m - 1.0) ** 2 - 4.0 * (m - 4)))
    return rho_sq ** (1.0 / k)
