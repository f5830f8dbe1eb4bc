from __future__ import annotations

import pytest

from mdsc_ldpc.ensemble import EnsembleParams
from mdsc_ldpc.exceptions import ParameterError
from mdsc_ldpc.finite import Layout, make_rng, sample_graph


@pytest.fixture
def params() -> EnsembleParams:
    return EnsembleParams(dl=4, dr=8, L1=6, gamma1=2, L2=3, gamma2=2, T=0.1)


def test_sizes(params):
    g = sample_graph(params, 16, seed=3)
    assert g.n_vn == 288
    assert g.n_cn == 168
    assert g.edge_count() == 288 * 4


def test_vn_model_degrees_without_parallel_edges(params):
    g = sample_graph(params, 16, seed=3)
    assert set(g.vn_degrees()) == {4}
    assert all(len(set(n)) == len(n) for n in g.vn_adj)
    assert g.is_consistent()


def test_purged_checks_have_no_neighbours(params):
    g = sample_graph(params, 16, seed=3)
    assert all(not g.cn_adj[c] for c in g.purged)
    assert len(g.purged) == sum(1 for n in g.cn_adj if not n)


def test_edges_stay_local(params):
    g = sample_graph(params, 16, seed=8)
    layout = g.layout
    for v, c in g.edges():
        i, _, _ = layout.vn_section(v)
        a, _, _ = layout.cn_section(c)
        assert 0 <= a - i < params.gamma1


def test_no_coupling_keeps_edges_in_segment(params):
    g = sample_graph(params.replace(T=0), 16, seed=8)
    layout = g.layout
    for v, c in g.edges():
        assert layout.vn_section(v)[1] == layout.cn_section(c)[1]


def test_check_node_model(params):
    g = sample_graph(params, 16, seed=5, model="cn")
    assert g.model == "cn"
    assert max(g.cn_degrees()) <= params.dr
    assert all(len(set(n)) == len(n) for n in g.cn_adj)
    assert g.is_consistent()
    assert any(len(g.cn_adj[c]) < params.dr for c in g.section_cns(0, 0))


def test_sampling_is_deterministic(params):
    assert sample_graph(params, 16, seed=11).vn_adj == sample_graph(params, 16, seed=11).vn_adj
    assert sample_graph(params, 16, seed=11).vn_adj != sample_graph(params, 16, seed=12).vn_adj


def test_unknown_model(params):
    with pytest.raises(ParameterError):
        sample_graph(params, 16, seed=1, model="edge")


def test_edge_list(tmp_path, params):
    g = sample_graph(params, 16, seed=2)
    target = tmp_path / "graph.edges"
    g.write_edge_list(target)
    lines = target.read_text().splitlines()
    assert len(lines) == g.edge_count()
    assert all(len(line.split()) == 6 for line in lines)


def test_layout_round_trip(params):
    layout = Layout.of(params, 16)
    assert layout.vn_section(layout.vn_id(4, 2, 7)) == (4, 2, 7)
    assert layout.cn_section(layout.cn_id(6, 1, 3)) == (6, 1, 3)


def test_streams_are_independent():
    assert make_rng(7, 0).random() != make_rng(7, 1).random()
    assert make_rng(7, 1).random() == make_rng(7, 1).random()
