import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fangraph.errors import FangraphError
from fangraph.graphs import build_bipartite
from fangraph.projection import ProjectionConfig, project

from oracles import brute_force_projection, graph_edge_dict


FANS = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0)]  # f1->{a1,a2}, f2->{a1,a2}, f3->{a1}


def test_shared_artist_counts():
    g = project(build_bipartite(FANS), ProjectionConfig("left", 1))
    assert graph_edge_dict(g) == {(0, 1): 2.0, (0, 2): 1.0, (1, 2): 1.0}


def test_threshold_keeps_equal_weight():
    g = project(build_bipartite(FANS), ProjectionConfig("left", 2))
    assert graph_edge_dict(g) == {(0, 1): 2.0}
    assert g.n == 3  # f3 retained as isolated vertex
    assert g.degree(2) == 0.0


def test_lone_fan_is_isolated():
    b = build_bipartite([(0, 0), (0, 1), (0, 2)])
    g = project(b, ProjectionConfig("left", 1))
    assert g.n == 1 and g.edge_count == 0


def test_right_side():
    g = project(build_bipartite(FANS), ProjectionConfig("right", 1))
    # a1 and a2 share fans f1, f2
    assert graph_edge_dict(g) == {(0, 1): 2.0}


def test_invalid_config():
    with pytest.raises(FangraphError):
        ProjectionConfig("middle", 1)
    with pytest.raises(FangraphError):
        ProjectionConfig("left", 0)


def test_empty_graph():
    g = project(build_bipartite([]), ProjectionConfig("left", 1))
    assert g.n == 0 and g.edge_count == 0


def test_pivot_degree_cap_skips_heavy_pivot():
    # a0 joined by everyone; capping it removes its pair contributions
    pairs = [(f, 0) for f in range(5)] + [(0, 1), (1, 1), (2, 2), (3, 2)]
    b = build_bipartite(pairs)
    exact = project(b, ProjectionConfig("left", 1))
    capped = project(b, ProjectionConfig("left", 1, pivot_degree_cap=4))
    _, expected = brute_force_projection([p for p in pairs if p[1] != 0], "left", 1, n_left=5)
    assert graph_edge_dict(capped) == expected
    assert exact.edge_count > capped.edge_count


def test_monotone_in_min_weight():
    rng = np.random.default_rng(3)
    pairs, nl, nr = [], 10, 8
    pairs = sorted({(int(rng.integers(0, nl)), int(rng.integers(0, nr))) for _ in range(60)})
    b = build_bipartite(pairs, n_left=nl, n_right=nr)
    prev = graph_edge_dict(project(b, ProjectionConfig("left", 1)))
    for mw in (2, 3):
        cur = graph_edge_dict(project(b, ProjectionConfig("left", mw)))
        assert set(cur) <= set(prev)
        for e, w in cur.items():
            assert w == prev[e]
        prev = cur


def test_weight_bounded_by_degrees():
    rng = np.random.default_rng(4)
    pairs = sorted({(int(rng.integers(0, 9)), int(rng.integers(0, 9))) for _ in range(50)})
    b = build_bipartite(pairs)
    degs = b.left_degrees()
    g = project(b, ProjectionConfig("left", 1))
    for (u, v), w in graph_edge_dict(g).items():
        assert w <= min(degs[u], degs[v])


def test_determinism():
    rng = np.random.default_rng(9)
    pairs = sorted({(int(rng.integers(0, 30)), int(rng.integers(0, 20))) for _ in range(150)})
    b = build_bipartite(pairs)
    g1 = project(b, ProjectionConfig("left", 2))
    g2 = project(b, ProjectionConfig("left", 2))
    assert np.array_equal(g1.neighbors, g2.neighbors)
    assert np.array_equal(g1.weights, g2.weights)


def test_block_chunking_matches_single_block(monkeypatch):
    # force tiny work blocks; output must be identical to the one-shot result
    import fangraph.projection as proj

    rng = np.random.default_rng(12)
    pairs = sorted({(int(rng.integers(0, 40)), int(rng.integers(0, 25))) for _ in range(300)})
    b = build_bipartite(pairs)
    full = graph_edge_dict(project(b, ProjectionConfig("left", 2)))
    monkeypatch.setattr(proj, "_BLOCK_WORK", 10)
    chunked = graph_edge_dict(project(b, ProjectionConfig("left", 2)))
    assert full == chunked


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_oracle_equivalence(data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    m = int(rng.integers(0, 200))
    pairs = sorted(
        {(int(rng.integers(0, 12)), int(rng.integers(0, 12))) for _ in range(m)}
    )
    side = data.draw(st.sampled_from(["left", "right"]))
    mw = data.draw(st.sampled_from([1, 2, 3]))
    b = build_bipartite(pairs) if pairs else build_bipartite([])
    got = graph_edge_dict(project(b, ProjectionConfig(side, mw)))
    n, expected = brute_force_projection(pairs, side, mw)
    assert got == expected
