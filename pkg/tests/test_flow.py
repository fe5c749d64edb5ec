"""Resistor-network flows and betweenness modes."""
import numpy as np
import pytest

import lapflow as lf
from lapflow.errors import (
    BadAlphaError,
    InvalidPairError,
    NotConnectedError,
    WrongBasisSizeError,
)
from lapflow.flow import SupplyPair
from lapflow.spectral import dense_eigenbasis

from conftest import random_graph


def exact_op(g):
    return lf.ExactPinv(lf.exact_pinv(g))


class TestSolveFlow:
    def test_p3_end_to_end(self, p3):
        res = lf.solve_flow(p3, exact_op(p3), SupplyPair(0, 2))
        assert np.allclose(res.potentials, [1.0, 0.0, -1.0])
        assert np.allclose(np.abs(res.edge_currents), 1.0)
        assert np.allclose(res.node_flow, [1.0, 1.0, 1.0])

    def test_k3_split(self, k3):
        res = lf.solve_flow(k3, exact_op(k3), SupplyPair(0, 1))
        third = [i for i in range(3) if i not in (0, 1)][0]
        assert res.node_flow[third] == pytest.approx(1.0 / 3.0)

    def test_invalid_pair(self, p3):
        with pytest.raises(InvalidPairError):
            lf.solve_flow(p3, exact_op(p3), SupplyPair(1, 1))
        with pytest.raises(InvalidPairError):
            lf.solve_flow(p3, exact_op(p3), SupplyPair(0, 5))

    @pytest.mark.parametrize("case", range(12))
    def test_kirchhoff_conservation(self, case):
        g = random_graph(case)
        rng = np.random.default_rng(case)
        s, t = rng.choice(g.n, size=2, replace=False)
        res = lf.solve_flow(g, exact_op(g), SupplyPair(int(s), int(t)))
        v = res.potentials
        net = g.laplacian_apply(v)
        expect = np.zeros(g.n)
        expect[s], expect[t] = 1.0, -1.0
        assert np.allclose(net, expect, atol=1e-8)

    def test_gauge_invariance(self, p3):
        # shifting all potentials by a constant leaves currents untouched
        res = lf.solve_flow(p3, exact_op(p3), SupplyPair(0, 2))
        v = res.potentials + 7.5
        currents = p3.weight * (v[p3.edge_i] - v[p3.edge_j])
        assert np.allclose(currents, res.edge_currents, atol=1e-12)


class TestFlowThroughNode:
    def test_p3_middle(self, p3):
        assert lf.flow_through_node(p3, exact_op(p3), SupplyPair(0, 2), 1) == pytest.approx(1.0)

    def test_k3_bypass(self, k3):
        assert lf.flow_through_node(k3, exact_op(k3), SupplyPair(0, 1), 2) == pytest.approx(1.0 / 3.0)

    def test_endpoint_convention(self, p3):
        assert lf.flow_through_node(p3, exact_op(p3), SupplyPair(0, 2), 0) == 1.0


class TestBetweennessFull:
    def test_p3(self, p3):
        b = lf.betweenness(p3, exact_op(p3)).b
        assert np.allclose(b, [2.0 / 3.0, 1.0, 2.0 / 3.0])

    def test_k3(self, k3):
        b = lf.betweenness(k3, exact_op(k3)).b
        assert np.allclose(b, 7.0 / 9.0)

    def test_p2(self, p2):
        b = lf.betweenness(p2, exact_op(p2)).b
        assert np.allclose(b, 1.0)

    @pytest.mark.parametrize("seed", range(8))
    def test_exact_mode_bounds(self, seed):
        g = random_graph(seed)
        b = lf.betweenness(g, exact_op(g)).b
        assert np.all(b >= 2.0 / g.n - 1e-10)
        assert np.all(b <= 1.0 + 1e-10)

    @pytest.mark.parametrize("seed", range(4))
    def test_cutoff_full_rank_equals_exact(self, seed):
        g = random_graph(seed, max_n=40)
        full = lf.build_cutoff(dense_eigenbasis(g))
        a = lf.betweenness(g, exact_op(g)).b
        b = lf.betweenness(g, full).b
        assert np.allclose(a, b, atol=1e-8)

    def test_not_connected(self):
        g = lf.from_edge_list([("a", "b"), ("c", "d")])
        with pytest.raises(NotConnectedError):
            lf.betweenness(g, None)


class TestBetweennessSampled:
    def test_alpha_one_equals_full(self):
        g = random_graph(4)
        op = exact_op(g)
        full = lf.betweenness(g, op).b
        sampled = lf.betweenness(g, op, sample=(1.0, 0)).b
        assert np.allclose(sampled, full, atol=1e-12)

    def test_deterministic_given_seed(self):
        g = random_graph(4)
        op = exact_op(g)
        a = lf.betweenness(g, op, sample=(0.4, 3)).b
        b = lf.betweenness(g, op, sample=(0.4, 3)).b
        assert np.array_equal(a, b)

    def test_mean_consistency(self):
        # the sampled estimator is unbiased: seed-averaged scores approach
        # the full-pair scores
        g = lf.gen_er(100, 4.0, seed=0)
        op = exact_op(g)
        full = lf.betweenness(g, op).b
        acc = np.zeros(g.n)
        nseeds = 100
        for seed in range(nseeds):
            acc += lf.betweenness(g, op, sample=(0.5, seed)).b
        assert np.max(np.abs(acc / nseeds - full)) < 0.05

    def test_pair_count_budget(self):
        g = lf.gen_er(100, 4.0, seed=1)
        alpha = np.sqrt(0.1)
        scores = lf.betweenness(g, exact_op(g), sample=(alpha, 0))
        ordered_pairs = g.n * (g.n - 1)
        assert scores.pair_count == g.n * int(np.ceil(alpha * alpha * g.n))
        assert scores.pair_count / ordered_pairs == pytest.approx(0.1, rel=0.15)

    def test_bad_alpha(self, p3):
        with pytest.raises(BadAlphaError):
            lf.betweenness(p3, exact_op(p3), sample=(0.0, 0))
        with pytest.raises(BadAlphaError):
            lf.betweenness(p3, exact_op(p3), sample=(1.5, 0))


class TestFiedlerMode:
    def test_p3_profile(self, p3):
        basis = lf.smallest_eigenpairs(p3, 1)
        h = lf.betweenness_fiedler(p3, basis).b
        assert np.allclose(h, np.array([1.0, 2.0, 1.0]) / np.sqrt(2), atol=1e-7)
        assert np.argmax(h) == 1

    def test_p2_tie(self, p2):
        basis = lf.smallest_eigenpairs(p2, 1)
        h = lf.betweenness_fiedler(p2, basis).b
        assert h[0] == pytest.approx(h[1])

    def test_star_center_dominates(self, star4):
        basis = lf.smallest_eigenpairs(star4, 1)
        h = lf.betweenness_fiedler(star4, basis).b
        assert np.argmax(h) == 0
        assert h[0] > h[1:].max()

    def test_wrong_basis_size(self, p3):
        basis = lf.smallest_eigenpairs(p3, 2)
        with pytest.raises(WrongBasisSizeError):
            lf.betweenness_fiedler(p3, basis)

    @pytest.mark.parametrize("seed", range(5))
    def test_per_pair_flow_proportional_to_profile(self, seed):
        # with one eigenpair the non-endpoint flow of any pair is the
        # local profile scaled by a pair constant, so rankings agree
        # pair by pair
        g = random_graph(seed)
        basis = dense_eigenbasis(g).truncate(1)
        h = lf.betweenness_fiedler(g, basis).b
        rng = np.random.default_rng(seed)
        s, t = (int(x) for x in rng.choice(g.n, size=2, replace=False))
        flow = lf.solve_flow(g, lf.build_cutoff(basis), SupplyPair(s, t)).node_flow
        v2 = basis.vectors[:, 0]
        c = abs(v2[s] - v2[t]) / (2.0 * basis.values[0])
        mask = np.ones(g.n, dtype=bool)
        mask[[s, t]] = False
        assert np.allclose(flow[mask], c * h[mask], atol=1e-10)

    @pytest.mark.parametrize("seed", range(5))
    def test_aggregate_ranking_close_to_cutoff_one_pair(self, seed):
        from scipy import stats
        g = random_graph(seed)
        basis = dense_eigenbasis(g).truncate(1)
        h = lf.betweenness_fiedler(g, basis).b
        b = lf.betweenness(g, lf.build_cutoff(basis)).b
        assert stats.spearmanr(h, b).statistic > 0.85
