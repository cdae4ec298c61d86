import json

import pytest

from rccg.commuting import commuting_graph, maximal_abelian_subgroups
from rccg.constructions import (
    THEOREM_TAGS,
    color_nontrivial_center,
    color_pstar,
    color_trivial_center_small_t,
    color_trivial_center_t,
    color_tuple_two,
    has_commuting_neighbors,
    hub_ordering,
)
from rccg.errors import (
    AbelianInput,
    CenterNotTrivial,
    CenterTooSmall,
    HTooSmall,
    IntersectionMismatch,
    InvalidParameter,
    TooFewPendants,
    TooManyPendants,
    TooManySubgroups,
)
from rccg.groups import (
    center,
    make_alternating,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_generalized_quaternion,
    make_semidihedral,
    make_symmetric,
)
from rccg.rainbow import is_rainbow_connected


def verified(report, k):
    assert report.verified
    assert report.k == k
    assert is_rainbow_connected(report.graph, report.coloring)


def test_nontrivial_center_three_colors():
    g = make_dihedral(4)
    rep = color_nontrivial_center(g)
    verified(rep, 3)
    assert rep.ordering_notes == {"z1": "e", "z2": "r^2"}


def test_nontrivial_center_preconditions():
    with pytest.raises(CenterTooSmall):
        color_nontrivial_center(make_dihedral(3))
    with pytest.raises(AbelianInput):
        color_nontrivial_center(make_cyclic(4))


def test_hub_parity_on_d6_and_a4():
    verified(color_trivial_center_small_t(make_dihedral(3)), 3)
    rep = color_trivial_center_small_t(make_alternating(4))
    verified(rep, 3)
    assert rep.ordering_notes["pendants"] == []


def test_hub_ordering_is_valid():
    for g in (make_dihedral(3), make_alternating(4), make_symmetric(4), make_alternating(5)):
        seq = hub_ordering(g)
        assert has_commuting_neighbors(g, seq)
        assert g.identity not in seq
        assert len(seq) == len(set(seq))


def test_has_commuting_neighbors():
    g = make_dihedral(3)
    assert has_commuting_neighbors(g, [g["r"], g["r^2"]])
    assert not has_commuting_neighbors(g, [g["r"], g["s"]])


def test_trivial_center_preconditions():
    with pytest.raises(CenterNotTrivial):
        color_trivial_center_small_t(make_dihedral(4))
    with pytest.raises(TooManyPendants):
        color_trivial_center_small_t(make_dihedral(5))
    with pytest.raises(TooFewPendants):
        color_trivial_center_t(make_dihedral(3))
    with pytest.raises(AbelianInput):
        color_trivial_center_t(make_cyclic(5))


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_pendant_colors(n):
    rep = color_trivial_center_t(make_dihedral(n))
    verified(rep, n)
    assert len(rep.ordering_notes["pendants"]) == n


def test_tuple_two_on_sd24_and_q8():
    rep = color_tuple_two(make_semidihedral(3))
    verified(rep, 2)
    assert rep.ordering_notes["tuples"]["{e, a, a^2, a^3, a^4, a^5, a^6, a^7, a^8, a^9, a^10, a^11}"] == [1, 1, 1, 1]
    verified(color_tuple_two(make_generalized_quaternion(2)), 2)


def test_tuple_two_preconditions():
    with pytest.raises(TooManySubgroups):
        color_tuple_two(make_generalized_quaternion(4))
    with pytest.raises(CenterTooSmall):
        color_tuple_two(make_alternating(4))
    with pytest.raises(AbelianInput):
        color_tuple_two(make_cyclic(6))


def test_pstar_three_color_case_q16():
    g = make_generalized_quaternion(4)
    cat = maximal_abelian_subgroups(g)
    rep = color_pstar(g, center(g), cat.subgroups)
    verified(rep, 3)
    assert rep.ordering_notes["case"] == "three-color"
    assert rep.graph.vertex_count == g.order


def test_pstar_tuple_case():
    g = make_dihedral(4)
    cat = maximal_abelian_subgroups(g)
    rep = color_pstar(g, center(g), cat.subgroups[:3])
    verified(rep, 2)
    assert rep.ordering_notes["case"] == "tuples"


def test_pstar_on_a_proper_subset():
    # D_6 x Z_2: the three reflection subgroups meet pairwise in the center
    g = make_direct_product(make_dihedral(3), make_cyclic(2))
    cat = maximal_abelian_subgroups(g)
    z = center(g)
    col = [s for s in cat.subgroups if len(s) == 4]
    rep = color_pstar(g, z, col)
    verified(rep, 2)
    assert rep.graph.vertex_count == 8


def test_pstar_preconditions():
    g = make_alternating(4)
    cat = maximal_abelian_subgroups(g)
    with pytest.raises(HTooSmall):
        color_pstar(g, center(g), cat.subgroups)
    q = make_generalized_quaternion(4)
    qcat = maximal_abelian_subgroups(q)
    with pytest.raises(IntersectionMismatch):
        color_pstar(q, q.subset([q.identity]), qcat.subgroups)
    with pytest.raises(InvalidParameter):
        color_pstar(q, center(q), qcat.subgroups[:1])


def test_report_serialization():
    rep = color_trivial_center_t(make_dihedral(5))
    doc = json.loads(json.dumps(rep.to_dict()))
    assert doc["theorem"] == "pendant-colors"
    assert doc["graph_fingerprint"] == commuting_graph(make_dihedral(5)).fingerprint()
    assert len(doc["colors"]) == rep.graph.edge_count


def test_tags():
    assert set(THEOREM_TAGS.values()) == {"3a", "3b", "4", "5", "7"}
