import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rccg.commuting import commuting_graph
from rccg.errors import (
    ColoringIncomplete,
    Disconnected,
    FileParseError,
    FingerprintMismatch,
    InvalidParameter,
    TrivialGraph,
)
from rccg.graphs import (
    UndirectedGraph,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    is_connected,
    path_graph,
    star_graph,
)
from rccg.groups import make_alternating, make_dihedral, make_generalized_quaternion
from rccg.rainbow import (
    EdgeColoring,
    RcVerdict,
    SearchConfig,
    is_rainbow_connected,
    load_coloring,
    rainbow_path,
    rc_complete_multipartite,
    rc_exact,
    rc_lower_bound,
    rc_upper_from_coloring,
    save_coloring,
)

WIDE = SearchConfig(max_search_edges=60, max_nodes=10**7)


def test_coloring_validation():
    g = path_graph(3)
    with pytest.raises(ColoringIncomplete):
        EdgeColoring(g, {(0, 1): 1})
    with pytest.raises(ColoringIncomplete):
        EdgeColoring(g, {(0, 1): 1, (1, 2): 1, (0, 2): 1})
    with pytest.raises(InvalidParameter):
        EdgeColoring(g, {(0, 1): 0, (1, 2): 1})
    with pytest.raises(ColoringIncomplete):
        EdgeColoring.from_sequence(g, [1])
    c = EdgeColoring.from_sequence(g, [2, 1])
    assert c.color(1, 0) == 2 and c.sequence() == [2, 1] and c.k == 2


def test_verifier_on_path():
    g = path_graph(4)
    assert is_rainbow_connected(g, EdgeColoring.distinct(g))
    check = is_rainbow_connected(g, EdgeColoring.from_sequence(g, [1, 2, 1]))
    assert not check
    assert check.failing_pairs == [(0, 3)]


def test_rainbow_path_is_simple_and_rainbow():
    g = cycle_graph(6)
    c = EdgeColoring(g, {(min(i, (i + 1) % 6), max(i, (i + 1) % 6)): i % 3 + 1 for i in range(6)})
    for u, v in itertools.combinations(range(6), 2):
        p = rainbow_path(g, c, u, v)
        assert p is not None and p[0] == u and p[-1] == v
        assert len(set(p)) == len(p)
        cols = [c.color(a, b) for a, b in zip(p, p[1:])]
        assert len(set(cols)) == len(cols)
    assert rainbow_path(g, c, 2, 2) == [2]
    assert rainbow_path(path_graph(3), EdgeColoring.constant(path_graph(3)), 0, 2) is None


def test_lower_bound_provenance():
    assert rc_lower_bound(complete_graph(4)) == (1, ["diameter", "non-complete"])
    assert rc_lower_bound(star_graph(5)).value == 5
    assert "pendant" in rc_lower_bound(star_graph(5)).provenance
    assert rc_lower_bound(path_graph(2)).value == 1
    with pytest.raises(Disconnected):
        rc_lower_bound(UndirectedGraph.from_edges(3, [(0, 1)]))
    with pytest.raises(TrivialGraph):
        rc_lower_bound(UndirectedGraph.from_edges(1, []))


def test_upper_from_coloring():
    g = cycle_graph(5)
    v = rc_upper_from_coloring(g, EdgeColoring.distinct(g))
    assert (v.lower, v.upper) == (2, 5) and v.exact is None
    bad = EdgeColoring.constant(g)
    with pytest.raises(Exception):
        rc_upper_from_coloring(g, bad)


def test_verdict_invariants():
    g = path_graph(3)
    with pytest.raises(InvalidParameter):
        RcVerdict(3, 2)
    with pytest.raises(InvalidParameter):
        RcVerdict(2, 2, witness=EdgeColoring.constant(g))
    v = RcVerdict(2, 2, ("x",), EdgeColoring.distinct(g))
    assert v.exact == 2 and str(v) == "rc = 2 [x]"
    assert json.loads(json.dumps(v.to_dict()))["exact"] == 2


@pytest.mark.parametrize(
    "graph,expected",
    [
        (path_graph(4), 3),
        (star_graph(4), 4),
        (cycle_graph(4), 2),
        (cycle_graph(5), 3),
        (cycle_graph(6), 3),
        (cycle_graph(7), 4),
        (complete_graph(5), 1),
        (complete_multipartite_graph([3, 3, 3]), 2),
        (complete_multipartite_graph([1, 1, 7]), 3),
    ],
    ids=["P4", "star4", "C4", "C5", "C6", "C7", "K5", "K333", "K117"],
)
def test_rc_exact_known_values(graph, expected):
    v = rc_exact(graph, WIDE)
    assert v.exact == expected
    assert v.witness.k == expected
    assert is_rainbow_connected(graph, v.witness)


@pytest.mark.parametrize(
    "make,expected",
    [(lambda: make_dihedral(3), 3), (lambda: make_generalized_quaternion(2), 2), (lambda: make_alternating(4), 3)],
    ids=["D_6", "Q_8", "A_4"],
)
def test_rc_exact_commuting_graphs(make, expected):
    assert rc_exact(commuting_graph(make()), WIDE).exact == expected


def test_rc_exact_bounds_only_when_too_large():
    g = commuting_graph(make_dihedral(6))
    v = rc_exact(g, SearchConfig(max_search_edges=20))
    assert v.exact is None and v.witness is None
    assert v.lower == 2 and v.upper == g.edge_count
    assert "search-skipped" in v.method


def test_rc_exact_budget_exhausted():
    g = complete_multipartite_graph([1, 1, 7])
    v = rc_exact(g, SearchConfig(max_search_edges=60, max_nodes=5))
    assert v.exact is None
    assert "search-budget-exceeded" in v.method


def test_rc_exact_color_cap():
    g = star_graph(5)
    assert rc_exact(g, SearchConfig(max_colors=3)).exact == 5  # lower bound meets edge count
    v = rc_exact(path_graph(6), SearchConfig(max_colors=3))
    assert v.exact == 5


def test_rc_exact_parallel_agrees():
    g = cycle_graph(7)
    v = rc_exact(g, SearchConfig(max_search_edges=60, threads=2))
    assert v.exact == 4
    assert is_rainbow_connected(g, v.witness)


def test_rc_exact_deterministic():
    g = commuting_graph(make_alternating(4))
    a = rc_exact(g, WIDE)
    b = rc_exact(g, WIDE)
    assert a.witness.sequence() == b.witness.sequence()


def test_search_config_env(monkeypatch):
    monkeypatch.setenv("RCCG_MAX_SEARCH_EDGES", "33")
    monkeypatch.setenv("RCCG_THREADS", "3")
    cfg = SearchConfig.from_env(max_nodes=99)
    assert cfg == SearchConfig(max_search_edges=33, max_nodes=99, threads=3)
    monkeypatch.setenv("RCCG_MAX_NODES", "many")
    with pytest.raises(InvalidParameter):
        SearchConfig.from_env()


@pytest.mark.parametrize(
    "parts,expected",
    [([1, 1, 1], 1), ([2, 2, 3], 2), ([1, 1, 2], 2), ([1, 1, 4], 2), ([1, 1, 5], 3), ([1, 2, 8], 2), ([1, 2, 9], 3)],
)
def test_multipartite_formula(parts, expected):
    assert rc_complete_multipartite(parts) == expected
    with pytest.raises(InvalidParameter):
        rc_complete_multipartite([2, 3])


def test_coloring_file_round_trip(tmp_path):
    g = cycle_graph(5)
    c = EdgeColoring.from_sequence(g, [1, 2, 3, 1, 2])
    path = tmp_path / "c.json"
    save_coloring(c, path, theorem="demo")
    back = load_coloring(g, path)
    assert back.colors == c.colors
    assert json.loads(path.read_text())["theorem"] == "demo"
    with pytest.raises(FingerprintMismatch):
        load_coloring(cycle_graph(6), path)
    path.write_text("{}")
    with pytest.raises(FileParseError):
        load_coloring(g, path)


def brute_force_rc(g):
    m = g.edge_count
    for k in range(1, m + 1):
        for seq in itertools.product(range(1, k + 1), repeat=m):
            if is_rainbow_connected(g, EdgeColoring.from_sequence(g, seq)):
                return k
    return m


@st.composite
def small_connected_graphs(draw):
    n = draw(st.integers(2, 6))
    pairs = list(itertools.combinations(range(n), 2))
    tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3))
    edges = sorted(set(tree) | set(extra))
    return UndirectedGraph.from_edges(n, edges)


@settings(max_examples=40, deadline=None)
@given(small_connected_graphs())
def test_rc_exact_matches_brute_force(g):
    assert is_connected(g)
    v = rc_exact(g, WIDE)
    assert v.exact == brute_force_rc(g)
    assert v.lower >= rc_lower_bound(g).value
