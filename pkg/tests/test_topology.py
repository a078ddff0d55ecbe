import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlocalnet import (ConfigurationError, InvalidParameterError, NetworkConfig,
                       NodeId, attachments, build_chain, build_star, build_tree,
                       parse_config, serialize_config, validate)


def incidence_graph(config):
    graph = nx.Graph()
    for r, (u, v) in config.edges.items():
        graph.add_node(("S", r), kind="source")
        for node in (u, v):
            graph.add_node(node.name, kind=node.kind)
        graph.add_edge(("S", r), u.name)
        graph.add_edge(("S", r), v.name)
    return graph


def test_chain_two_matches_documented_edges():
    config = build_chain(2)
    assert (config.n, config.m, config.p, config.l) == (2, 2, 2, 1)
    assert config.edges == {
        1: (NodeId.extremal(1), NodeId.intermediate(1)),
        2: (NodeId.intermediate(1), NodeId.extremal(2)),
    }


def test_chain_endpoints_and_counts():
    config = build_chain(3)
    assert config.l == 2
    attach = attachments(config)
    assert attach.intermediate[NodeId.intermediate(1)] == (1, 2)
    assert attach.intermediate[NodeId.intermediate(2)] == (2, 3)
    assert attach.extremal[NodeId.extremal(1)] == 1
    assert attach.extremal[NodeId.extremal(2)] == 3


def test_chain_rejects_single_source():
    with pytest.raises(InvalidParameterError):
        build_chain(1)


def test_star_counts_and_attachments():
    config = build_star(3)
    assert (config.n, config.m, config.p, config.l) == (3, 3, 3, 1)
    attach = attachments(config)
    assert attach.intermediate[NodeId.intermediate(1)] == (1, 2, 3)
    config4 = build_star(4)
    assert config4.l == (2 * 4 - 4) // 4 == 1


def test_star_two_has_chain_shape():
    a = incidence_graph(build_star(2))
    b = incidence_graph(build_chain(2))
    assert nx.is_isomorphic(a, b, node_match=lambda x, y: x["kind"] == y["kind"])


def test_star_rejects_single_source():
    with pytest.raises(InvalidParameterError):
        build_star(1)


def test_tree_fifteen_three():
    config = build_tree(15, 3)
    assert (config.p, config.l) == (9, 7)
    assert validate(config) == []


def test_tree_five_three():
    config = build_tree(5, 3)
    assert (config.p, config.l) == (4, 2)
    assert validate(config) == []


def test_tree_equal_arity_is_star():
    assert build_tree(4, 4) == build_star(4)


def test_tree_rejects_bad_divisibility():
    with pytest.raises(InvalidParameterError, match="divisible"):
        build_tree(6, 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_tree_arity_two_is_chain_shaped(n):
    a = incidence_graph(build_tree(n, 2))
    b = incidence_graph(build_chain(n))
    assert nx.is_isomorphic(a, b, node_match=lambda x, y: x["kind"] == y["kind"])


@given(st.integers(2, 12))
@settings(max_examples=30)
def test_chain_invariants(n):
    config = build_chain(n)
    assert validate(config) == []
    assert config.l * config.m + config.p == 2 * config.n
    assert config.l == n - 1


@given(st.integers(2, 8))
@settings(max_examples=30)
def test_star_invariants(n):
    config = build_star(n)
    assert validate(config) == []
    assert config.l == 1
    assert config.l * config.m + config.p == 2 * config.n


@given(st.integers(2, 4), st.integers(0, 4))
@settings(max_examples=40)
def test_tree_invariants(m, layers):
    n = m + layers * (m - 1)
    config = build_tree(n, m)
    assert validate(config) == []
    assert config.l * config.m + config.p == 2 * config.n
    assert config.p <= config.n
    graph = incidence_graph(config)
    assert nx.is_connected(graph)
    assert nx.is_tree(graph)
    # handshake: 2n incidences over l + p + n vertices
    assert graph.number_of_edges() == 2 * n
    assert graph.number_of_nodes() == config.l + config.p + config.n


@given(st.integers(2, 8))
@settings(max_examples=20)
def test_serialization_round_trip(n):
    config = build_tree(n, 2) if n % 2 else build_chain(n)
    assert parse_config(serialize_config(config)) == config


def test_serialized_key_order():
    text = serialize_config(build_chain(2))
    assert text.index('"n"') < text.index('"m"') < text.index('"p"') < text.index('"edges"')
    assert text.index('"source"') < text.index('"ends"')


def test_each_source_appears_twice_in_attachments():
    for config in (build_chain(4), build_star(5), build_tree(7, 3)):
        attach = attachments(config)
        counts = {r: 0 for r in range(1, config.n + 1)}
        for sources in attach.intermediate.values():
            for r in sources:
                counts[r] += 1
        for r in attach.extremal.values():
            counts[r] += 1
        assert all(count == 2 for count in counts.values())


def test_validate_reports_divisibility():
    config = NetworkConfig(n=5, m=3, p=2, edges=build_chain(5).edges)
    issues = validate(config)
    assert any("divisible" in issue for issue in issues)


def test_validate_reports_cycle():
    edges = {
        1: (NodeId.intermediate(1), NodeId.intermediate(2)),
        2: (NodeId.intermediate(1), NodeId.intermediate(2)),
    }
    issues = validate(NetworkConfig(n=2, m=2, p=2, edges=edges))
    assert any("cycle" in issue for issue in issues)


def test_validate_reports_disconnected():
    # two separate two-source chains declared as one (4, 2, 4) layout
    edges = {
        1: (NodeId.extremal(1), NodeId.intermediate(1)),
        2: (NodeId.intermediate(1), NodeId.extremal(2)),
        3: (NodeId.extremal(3), NodeId.intermediate(2)),
        4: (NodeId.intermediate(2), NodeId.extremal(4)),
    }
    issues = validate(NetworkConfig(n=4, m=2, p=4, edges=edges))
    assert any("disconnected" in issue for issue in issues)


def test_validate_reports_bad_degree():
    edges = dict(build_chain(3).edges)
    edges[3] = (NodeId.extremal(1), NodeId.extremal(2))  # B1 now touches 2 sources
    issues = validate(NetworkConfig(n=3, m=2, p=2, edges=edges))
    assert any("touches" in issue for issue in issues)


def test_attachments_rejects_invalid_config():
    config = NetworkConfig(n=5, m=3, p=2, edges=build_chain(5).edges)
    with pytest.raises(ConfigurationError):
        attachments(config)


def test_parse_config_rejects_garbage():
    with pytest.raises(InvalidParameterError):
        parse_config("not json")
    with pytest.raises(InvalidParameterError):
        parse_config('{"n": 2, "m": 2}')
    with pytest.raises(InvalidParameterError):
        parse_config('{"n": 2, "m": 2, "p": 2, "edges": [{"source": 1, "ends": ["Q1", "A1"]}]}')


def test_node_id_parse_and_name():
    assert NodeId.parse("A3") == NodeId.intermediate(3)
    assert NodeId.parse("B1") == NodeId.extremal(1)
    assert NodeId.intermediate(7).name == "A7"
    with pytest.raises(InvalidParameterError):
        NodeId.parse("A0")
    with pytest.raises(InvalidParameterError):
        NodeId.parse("C2")
