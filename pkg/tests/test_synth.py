import numpy as np
import pytest

from fangraph.errors import FangraphError
from fangraph.stats import fit_power_law
from fangraph.synth import MarketGenConfig, PlantedConfig, gen_market, gen_planted


class TestMarket:
    def test_deterministic(self):
        cfg = MarketGenConfig(500, 60, 5, attachment_bias=1.1, n_genres=3, genre_affinity=0.5, seed=4)
        b1, g1 = gen_market(cfg)
        b2, g2 = gen_market(cfg)
        assert np.array_equal(b1.offsets, b2.offsets)
        assert np.array_equal(b1.neighbors, b2.neighbors)
        assert np.array_equal(g1, g2)

    def test_seeds_differ(self):
        cfg1 = MarketGenConfig(200, 30, 5, seed=1)
        cfg2 = MarketGenConfig(200, 30, 5, seed=2)
        assert not np.array_equal(gen_market(cfg1)[0].neighbors, gen_market(cfg2)[0].neighbors)

    def test_invariants_hold(self):
        b, genres = gen_market(MarketGenConfig(300, 40, 6, attachment_bias=1.3, n_genres=4, genre_affinity=0.7, seed=9))
        b.validate()
        assert b.n_left == 300 and b.n_right == 40
        assert genres.size == 40
        assert set(np.unique(genres)) <= set(range(4))

    def test_single_fan_single_membership(self):
        b, _ = gen_market(MarketGenConfig(1, 5, 1, seed=0))
        assert b.edge_count == 1

    def test_min_one_membership(self):
        b, _ = gen_market(MarketGenConfig(400, 30, 1, seed=2))
        assert np.all(b.left_degrees() >= 1)

    def test_uniform_when_unbiased(self):
        b, _ = gen_market(MarketGenConfig(10_000, 200, 5, attachment_bias=0.0, seed=3))
        deg = b.right_degrees()
        assert deg.min() > 0
        assert deg.max() / deg.min() < 3

    def test_bias_concentrates(self):
        b, _ = gen_market(MarketGenConfig(100_000, 1000, 5, attachment_bias=1.2, seed=0))
        deg = b.right_degrees().astype(float)
        fit = fit_power_law(deg[deg > 0].astype(int), kmin="auto")
        assert 1.5 < fit.alpha < 3.5
        assert deg.max() > 20 * np.median(deg[deg > 0])

    def test_top_share_monotone_in_bias(self):
        shares = []
        for bias in (0.0, 0.5, 1.0, 1.5):
            tops = []
            for seed in range(5):
                b, _ = gen_market(MarketGenConfig(2000, 100, 5, attachment_bias=bias, seed=seed))
                deg = b.right_degrees()
                tops.append(deg.max() / deg.sum())
            shares.append(np.mean(tops))
        assert all(a < b for a, b in zip(shares, shares[1:]))

    def test_affinity_one_stays_in_genre(self):
        cfg = MarketGenConfig(300, 30, 4, n_genres=3, genre_affinity=1.0, seed=6)
        b, genres = gen_market(cfg)
        rng = np.random.Generator(np.random.Philox(key=np.uint64(6)))
        counts = rng.poisson(4, 300).astype(np.int64)
        np.maximum(counts, 1, out=counts)
        prefs = rng.integers(0, 3, 300)
        rows = np.repeat(np.arange(300), np.diff(b.offsets))
        assert np.all(genres[b.neighbors] == prefs[rows])

    def test_genre_skew_shifts_mass(self):
        flat, _ = gen_market(MarketGenConfig(5000, 90, 4, n_genres=9, genre_affinity=1.0, seed=8))
        skew, genres = gen_market(
            MarketGenConfig(5000, 90, 4, n_genres=9, genre_affinity=1.0, genre_skew=1.5, seed=8)
        )
        def genre_mass(b, genres):
            deg = b.right_degrees()
            return np.bincount(genres, weights=deg, minlength=9)
        m_flat = genre_mass(flat, genres)
        m_skew = genre_mass(skew, genres)
        assert m_skew[0] > 1.5 * m_flat[0]

    def test_config_validation(self):
        with pytest.raises(FangraphError):
            MarketGenConfig(0, 10, 5)
        with pytest.raises(FangraphError):
            MarketGenConfig(10, 10, 5, attachment_bias=-1)
        with pytest.raises(FangraphError):
            MarketGenConfig(10, 5, 5, n_genres=6)
        with pytest.raises(FangraphError):
            MarketGenConfig(10, 10, 5, genre_affinity=1.5)


class TestPlanted:
    def test_cliques_at_extreme_probs(self):
        g, truth = gen_planted(PlantedConfig((8, 8), 1.0, 0.0, seed=1))
        assert g.edge_count == 2 * 28
        assert truth.k == 2
        u, v, _ = g.edge_list()
        assert np.all(truth.assignment[u] == truth.assignment[v])

    def test_deterministic(self):
        cfg = PlantedConfig((10, 12), 0.6, 0.1, seed=5)
        g1, _ = gen_planted(cfg)
        g2, _ = gen_planted(cfg)
        assert np.array_equal(g1.neighbors, g2.neighbors)

    def test_p_in_must_exceed_p_out(self):
        with pytest.raises(FangraphError):
            PlantedConfig((5, 5), 0.3, 0.3)

    def test_block_sizes_positive(self):
        with pytest.raises(FangraphError):
            PlantedConfig((5, 0), 0.5, 0.1)

    def test_ground_truth_blocks(self):
        g, truth = gen_planted(PlantedConfig((4, 6, 3), 0.9, 0.05, seed=2))
        assert list(truth.sizes()) == [4, 6, 3]
        g.validate()
