"""Tensor application, power iteration, and the closed-form radii.

Expected values come from independent routes: dense numpy eigendecompositions
of the underlying trees, the cosine formula for paths, and direct evaluation
of the defining quartics.
"""

import math
import random

import pytest

from supertrees import (
    DisconnectedInputError,
    Hypergraph,
    NonConvergenceError,
    broom,
    double_star,
    double_star_power_radius,
    eigen_residual,
    f_tree,
    f_tree_power_radius,
    graph_spectral_radius,
    hyperstar,
    path,
    power_formula_radius,
    power_iteration,
    star,
    tensor_apply,
    tree_power,
)

from oracles import eig_tree_radius, path_radius, random_tree, star_radius


def test_tensor_apply_single_edge():
    h = Hypergraph(k=3, n=3, edges=((0, 1, 2),))
    assert tensor_apply(h, [1.0, 1.0, 1.0]) == [1.0, 1.0, 1.0]
    assert tensor_apply(h, [1.0, 2.0, 3.0]) == [6.0, 3.0, 2.0]


def test_tensor_apply_hyperstar_uniform():
    h = hyperstar(2, 3)
    c = 0.7
    out = tensor_apply(h, [c] * h.n)
    assert out[0] == pytest.approx(2 * c * c, abs=1e-15)
    assert all(o == pytest.approx(c * c, abs=1e-15) for o in out[1:])


def test_tensor_apply_dimension_mismatch():
    with pytest.raises(ValueError):
        tensor_apply(hyperstar(2, 3), [1.0, 2.0])


def test_tensor_apply_scale_invariance():
    rng = random.Random(11)
    h = broom(1, 2, 2, 3)
    x = [rng.uniform(0.1, 2.0) for _ in range(h.n)]
    for c in (0.5, 2.0, 3.7):
        lhs = tensor_apply(h, [c * xi for xi in x])
        rhs = [c ** (h.k - 1) * yi for yi in tensor_apply(h, x)]
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_tensor_apply_handles_zero_coordinates():
    h = Hypergraph(k=3, n=3, edges=((0, 1, 2),))
    assert tensor_apply(h, [0.0, 2.0, 3.0]) == [6.0, 0.0, 0.0]


# --- power iteration -------------------------------------------------------------


def test_single_edge_collapses_immediately():
    for k in (2, 3, 4, 5):
        pair = power_iteration(Hypergraph(k=k, n=k, edges=(tuple(range(k)),)))
        assert pair.rho == pytest.approx(1.0, abs=1e-12)
        assert pair.iterations == 1
        assert pair.residual <= 1e-14


def test_hyperstar_radius_matches_star_oracle():
    pair = power_iteration(hyperstar(4, 3))
    assert pair.rho == pytest.approx(eig_tree_radius(star(5)) ** (2 / 3), abs=1e-8)
    assert pair.rho == pytest.approx(4 ** (1 / 3), abs=1e-8)


def test_double_star_power_example():
    pair = power_iteration(tree_power(double_star(2, 2), 3))
    assert pair.rho == pytest.approx(2 ** (2 / 3), abs=1e-8)


def test_eigenvector_contract():
    pair = power_iteration(broom(1, 1, 2, 3))
    h = broom(1, 1, 2, 3)
    assert all(xi > 0 for xi in pair.x)
    assert sum(xi**h.k for xi in pair.x) == pytest.approx(1.0, rel=1e-12)
    assert pair.residual <= 1e-10 * max(1.0, pair.rho)


def test_bracket_contains_converged_radius():
    # drive a few iterations by hand; the ratio bracket must contain the
    # converged value at every positive iterate
    # rho itself carries the solver tolerance, so allow that much slop
    for h in (hyperstar(3, 3), tree_power(path(5), 3), broom(1, 1, 2, 3)):
        rho = power_iteration(h).rho
        km1 = h.k - 1
        x = [h.n ** (-1.0 / h.k)] * h.n
        for _ in range(25):
            ax = tensor_apply(h, x)
            ratios = [a / xi**km1 for a, xi in zip(ax, x)]
            assert min(ratios) <= rho + 1e-9
            assert max(ratios) >= rho - 1e-9
            y = [a + xi**km1 for a, xi in zip(ax, x)]
            x = [yi ** (1.0 / km1) for yi in y]
            norm = sum(xi**h.k for xi in x) ** (1.0 / h.k)
            x = [xi / norm for xi in x]


def test_radius_at_least_one():
    rng = random.Random(23)
    from supertrees import random_supertree

    for _ in range(10):
        h = random_supertree(rng.randint(1, 6), rng.choice((2, 3, 4)), rng)
        assert power_iteration(h).rho >= 1.0 - 1e-10


def test_disconnected_rejected():
    with pytest.raises(DisconnectedInputError):
        power_iteration(Hypergraph(k=3, n=6, edges=((0, 1, 2), (3, 4, 5))))


def test_non_convergence_reports_bracket():
    with pytest.raises(NonConvergenceError) as err:
        power_iteration(tree_power(path(6), 2), tol=1e-12, max_iter=3)
    lo, hi = err.value.bracket
    assert lo < hi


def test_invalid_parameters():
    h = hyperstar(2, 3)
    with pytest.raises(ValueError):
        power_iteration(h, tol=0.0)
    with pytest.raises(ValueError):
        power_iteration(h, max_iter=0)


# --- residual --------------------------------------------------------------------


def test_residual_zero_for_exact_pair():
    k = 3
    h = Hypergraph(k=k, n=k, edges=(tuple(range(k)),))
    x = [k ** (-1.0 / k)] * k
    assert eigen_residual(h, 1.0, x) <= 1e-15


def test_residual_detects_perturbation():
    pair = power_iteration(hyperstar(3, 3))
    x = list(pair.x)
    x[1] += 0.1
    assert eigen_residual(hyperstar(3, 3), pair.rho, x) > 1e-10


def test_power_iteration_residual_within_tolerance():
    pair = power_iteration(tree_power(f_tree(6), 3))
    assert pair.residual <= 1e-10 * pair.rho


# --- ordinary graphs and the power formula ---------------------------------------


def test_graph_radius_examples():
    assert graph_spectral_radius(path(2)) == pytest.approx(1.0, abs=1e-10)
    assert graph_spectral_radius(star(5)) == pytest.approx(2.0, abs=1e-10)
    assert graph_spectral_radius(star(5)) == pytest.approx(star_radius(5), abs=1e-10)
    assert graph_spectral_radius(path(5)) == pytest.approx(path_radius(5), abs=1e-10)
    assert graph_spectral_radius(path(5)) == pytest.approx(math.sqrt(3.0), abs=1e-10)


def test_graph_radius_matches_dense_oracle():
    rng = random.Random(31)
    for _ in range(10):
        t = random_tree(rng.randint(2, 10), rng)
        assert graph_spectral_radius(t) == pytest.approx(eig_tree_radius(t), abs=1e-9)


def test_power_formula_k2_is_identity():
    t = double_star(2, 3)
    assert power_formula_radius(t, 2) == graph_spectral_radius(t)


def test_power_formula_star_example():
    assert power_formula_radius(star(5), 3) == pytest.approx(2 ** (2 / 3), abs=1e-9)


def test_power_formula_agrees_with_tensor_iteration():
    rng = random.Random(41)
    for _ in range(8):
        t = random_tree(rng.randint(2, 8), rng)
        for k in (3, 4):
            direct = power_iteration(tree_power(t, k)).rho
            assert abs(direct - eig_tree_radius(t) ** (2 / k)) <= 1e-6


# --- closed-form quartic radii ----------------------------------------------------


def test_double_star_power_radius_values():
    assert double_star_power_radius(5, 2) == pytest.approx(2.0, abs=1e-12)
    assert double_star_power_radius(4, 2) == pytest.approx(math.sqrt(2 + math.sqrt(2)), abs=1e-12)
    assert double_star_power_radius(5, 3) == pytest.approx(2 ** (2 / 3), abs=1e-12)


def test_f_tree_power_radius_values():
    assert f_tree_power_radius(4, 2) == pytest.approx(math.sqrt(3.0), abs=1e-12)
    assert f_tree_power_radius(5, 2) == pytest.approx(math.sqrt(2 + math.sqrt(3)), abs=1e-12)


def test_quartic_residuals():
    for m in range(4, 13):
        rho = double_star_power_radius(m, 2)
        assert abs(rho**4 - m * rho**2 + 2 * (m - 3)) <= 1e-10
        assert rho > math.sqrt(m - 2)
        rho = f_tree_power_radius(m, 2)
        assert abs(rho**4 - (m - 1) * rho**2 + (m - 4)) <= 1e-10


def test_closed_forms_match_tree_oracles():
    for m in range(4, 11):
        assert double_star_power_radius(m, 2) == pytest.approx(
            eig_tree_radius(double_star(2, m - 3)), abs=1e-10
        )
        assert f_tree_power_radius(m, 2) == pytest.approx(
            eig_tree_radius(f_tree(m + 1)), abs=1e-10
        )


def test_f_tree_power_matches_power_formula():
    for m in (4, 6, 9):
        for k in (2, 3, 5):
            assert abs(f_tree_power_radius(m, k) - power_formula_radius(f_tree(m + 1), k)) <= 1e-9
