"""Explicit rainbow colorings of commuting graphs, each checked by the verifier.

Every function returns a :class:`ConstructionReport` whose coloring has passed
:func:`rccg.rainbow.is_rainbow_connected`. A coloring that fails verification
is a falsification event and raises :class:`ConstructionFalsified`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .commuting import MasCatalog, commuting_graph, maximal_abelian_subgroups
from .errors import (
    AbelianInput,
    CenterNotTrivial,
    CenterTooSmall,
    ConstructionFalsified,
    HTooSmall,
    IntersectionMismatch,
    InvalidParameter,
    OrderingNotFound,
    TooFewPendants,
    TooManyPendants,
    TooManySubgroups,
)
from .graphs import UndirectedGraph
from .groups import ElementSet, FiniteGroup, center, is_abelian
from .rainbow import EdgeColoring, coloring_to_dict, is_rainbow_connected

# construction name -> command-line choice
THEOREM_TAGS = {
    "nontrivial-center": "3a",
    "hub-parity": "3b",
    "center-tuples": "4",
    "pstar": "5",
    "pendant-colors": "7",
}


@dataclass(frozen=True, eq=False)
class ConstructionReport:
    graph: UndirectedGraph
    coloring: EdgeColoring
    theorem: str
    verified: bool
    ordering_notes: dict = field(default_factory=dict)
    vertices: tuple[int, ...] = ()

    @property
    def k(self) -> int:
        return self.coloring.k

    def to_dict(self) -> dict:
        doc = coloring_to_dict(self.coloring)
        doc["theorem"] = self.theorem
        doc["ordering_notes"] = self.ordering_notes
        return doc


def _finish(g: FiniteGroup, graph, colors, theorem: str, notes: dict, vertices=()) -> ConstructionReport:
    coloring = EdgeColoring(graph, colors)
    check = is_rainbow_connected(graph, coloring)
    if not check:
        names = graph.labels
        bad = [(names[u], names[v]) for u, v in check.failing_pairs[:5]]
        raise ConstructionFalsified(
            f"{theorem} coloring of CG({g.label}) leaves {len(check.failing_pairs)} pairs "
            f"without a rainbow path, e.g. {bad}",
            check.failing_pairs,
        )
    return ConstructionReport(graph, coloring, theorem, True, notes, tuple(vertices))


def _catalog(g: FiniteGroup, catalog: MasCatalog | None) -> MasCatalog:
    return catalog if catalog is not None else maximal_abelian_subgroups(g)


# ---------------------------------------------------------------- nontrivial center


def color_nontrivial_center(g: FiniteGroup) -> ConstructionReport:
    """Three colors through two central elements z1, z2.

    x z1 -> 1 and x z2 -> 2 for non-central x, z1 z2 -> 3, everything else 1,
    so any two non-central vertices meet along x z1 z2 y.
    """
    if is_abelian(g):
        raise AbelianInput(f"{g.label} is abelian")
    z = center(g)
    if len(z) < 2:
        raise CenterTooSmall(f"center of {g.label} has {len(z)} element(s)")
    z1, z2 = z.members[0], z.members[1]
    graph = commuting_graph(g)
    colors = {}
    for u, v in graph.edges:
        if {u, v} == {z1, z2}:
            colors[(u, v)] = 3
        elif (u == z2 and v not in z) or (v == z2 and u not in z):
            colors[(u, v)] = 2
        else:
            colors[(u, v)] = 1
    notes = {"z1": g.names[z1], "z2": g.names[z2]}
    return _finish(g, graph, colors, "nontrivial-center", notes)


# ---------------------------------------------------------------- trivial center, hub parity


def has_commuting_neighbors(g: FiniteGroup, seq: Sequence[int]) -> bool:
    """True when every entry commutes with the entry before or after it."""
    masks = g.centralizer_masks
    for i, x in enumerate(seq):
        left = i > 0 and masks[x] >> seq[i - 1] & 1
        right = i + 1 < len(seq) and masks[x] >> seq[i + 1] & 1
        if not (left or right):
            return False
    return True


def _blocks(g: FiniteGroup, subgroups: Sequence[ElementSet]) -> list[list[int]]:
    """Concatenation blocks: per subgroup, its non-identity elements not yet placed."""
    e = g.identity
    placed = 0
    blocks = []
    for s in subgroups:
        fresh = [x for x in s if x != e and not placed >> x & 1]
        for x in fresh:
            placed |= 1 << x
        if fresh:
            blocks.append(fresh)
    return blocks


def _repair(g: FiniteGroup, blocks: list[list[int]]) -> list[list[int]] | None:
    """Merge singleton blocks into a neighbor block they commute with.

    A block is a run in which consecutive entries commute; singletons are
    moved next to a commuting partner at a block end, or a block is split
    around the partner when both halves stay runs of length >= 2.
    """
    masks = g.centralizer_masks
    blocks = [list(b) for b in blocks]
    clique = [True] * len(blocks)
    while True:
        single = next((i for i, b in enumerate(blocks) if len(b) == 1), None)
        if single is None:
            return blocks
        x = blocks[single][0]
        del blocks[single]
        del clique[single]
        done = False
        for bi, b in enumerate(blocks):
            for pos, y in enumerate(b):
                if not masks[x] >> y & 1:
                    continue
                if pos == len(b) - 1:
                    b.append(x)
                elif pos == 0:
                    b.insert(0, x)
                elif clique[bi]:
                    b.remove(y)
                    b.extend([y, x])
                elif pos >= 2:
                    blocks.append([x] + b[pos:])
                    clique.append(False)
                    del b[pos:]
                elif len(b) - pos - 1 >= 2:
                    blocks.append(b[: pos + 1] + [x])
                    clique.append(False)
                    del b[: pos + 1]
                else:
                    continue
                clique[bi] = False
                done = True
                break
            if done:
                break
        if not done:
            return None


def hub_ordering(
    g: FiniteGroup, catalog: MasCatalog | None = None, *, max_tries: int = 5000
) -> list[int]:
    """Order the non-identity elements outside order-2 subgroups so each commutes with a sequence neighbor.

    Tries the catalog order, then a repair pass, then other subgroup orders
    (largest first) up to ``max_tries`` permutations.
    """
    cat = _catalog(g, catalog)
    big = [s for s in cat.subgroups if len(s) > 2]
    if not big:
        return []
    candidates = itertools.chain(
        [big, sorted(big, key=lambda s: (-len(s), s.members))],
        itertools.islice(itertools.permutations(big), max_tries),
    )
    for order in candidates:
        blocks = _blocks(g, order)
        seq = [x for b in blocks for x in b]
        if has_commuting_neighbors(g, seq):
            return seq
        fixed = _repair(g, blocks)
        if fixed is not None:
            seq = [x for b in fixed for x in b]
            if has_commuting_neighbors(g, seq):
                return seq
    raise OrderingNotFound(f"no hub ordering found for {g.label} within {max_tries} subgroup orders")


def _pendant_hub_coloring(g: FiniteGroup, cat: MasCatalog, theorem: str) -> ConstructionReport:
    e = g.identity
    pendants = [next(x for x in s if x != e) for s in cat.order2_subgroups]
    hub = hub_ordering(g, cat)
    graph = commuting_graph(g)
    want: dict[int, int] = {}
    for i, x in enumerate(pendants, start=1):
        want[x] = i
    for i, x in enumerate(hub, start=1):
        want[x] = 1 if i % 2 else 2
    colors = {}
    for u, v in graph.edges:
        if u == e:
            colors[(u, v)] = want[v]
        elif v == e:
            colors[(u, v)] = want[u]
        else:
            colors[(u, v)] = 3
    notes = {"pendants": [g.names[x] for x in pendants], "hub_order": [g.names[x] for x in hub]}
    return _finish(g, graph, colors, theorem, notes)


def _trivial_center_catalog(g: FiniteGroup, catalog: MasCatalog | None) -> MasCatalog:
    if is_abelian(g):
        raise AbelianInput(f"{g.label} is abelian")
    if len(center(g)) != 1:
        raise CenterNotTrivial(f"center of {g.label} has {len(center(g))} elements")
    return _catalog(g, catalog)


def color_trivial_center_small_t(g: FiniteGroup, catalog: MasCatalog | None = None) -> ConstructionReport:
    """Three colors for a trivial center with at most three order-2 subgroups.

    Pendant edges e c_i get color i, hub edges alternate 1/2 along
    :func:`hub_ordering`, and all remaining edges get 3.
    """
    cat = _trivial_center_catalog(g, catalog)
    if cat.order2_count >= 4:
        raise TooManyPendants(f"{g.label} has {cat.order2_count} order-2 maximal abelian subgroups")
    return _pendant_hub_coloring(g, cat, "hub-parity")


def color_trivial_center_t(g: FiniteGroup, catalog: MasCatalog | None = None) -> ConstructionReport:
    """t colors for a trivial center with t >= 4 order-2 subgroups."""
    cat = _trivial_center_catalog(g, catalog)
    if cat.order2_count < 4:
        raise TooFewPendants(f"{g.label} has only {cat.order2_count} order-2 maximal abelian subgroups")
    return _pendant_hub_coloring(g, cat, "pendant-colors")


# ---------------------------------------------------------------- tuples over the center


def _tuples(width: int, count: int) -> list[tuple[int, ...]]:
    return list(itertools.islice(itertools.product((1, 2), repeat=width), count))


def color_tuple_two(g: FiniteGroup, catalog: MasCatalog | None = None) -> ConstructionReport:
    """Two colors when there are at most 2^|Z| maximal abelian subgroups.

    Subgroup i is labelled with the i-th tuple of {1,2}^|Z| in lexicographic
    order; a non-central vertex x colors its edge to z_j with coordinate j of
    the label of the first subgroup containing x. Non-adjacent vertices never
    share a subgroup, so their labels differ and they meet through some z_j.
    """
    if is_abelian(g):
        raise AbelianInput(f"{g.label} is abelian")
    z = center(g)
    if len(z) < 2:
        raise CenterTooSmall(f"center of {g.label} has {len(z)} element(s)")
    cat = _catalog(g, catalog)
    if cat.m > 2 ** len(z):
        raise TooManySubgroups(f"{cat.m} maximal abelian subgroups > 2^{len(z)}")
    labels = _tuples(len(z), cat.m)
    zpos = {a: j for j, a in enumerate(z.members)}
    graph = commuting_graph(g)
    colors = {}
    for u, v in graph.edges:
        if (u in zpos) == (v in zpos):
            colors[(u, v)] = 1
            continue
        x, c = (v, u) if u in zpos else (u, v)
        colors[(u, v)] = labels[cat.index_containing(x)][zpos[c]]
    notes = {
        "center_order": [g.names[a] for a in z],
        "tuples": {str(s): list(t) for s, t in zip(cat.subgroups, labels)},
    }
    return _finish(g, graph, colors, "center-tuples", notes)


# ---------------------------------------------------------------- collections with a common intersection


def color_pstar(g: FiniteGroup, h: ElementSet, collection: Sequence[ElementSet]) -> ConstructionReport:
    """Rainbow coloring of CG(g, X), X the union of ``collection``, whose members meet pairwise in ``h``.

    With m members and m <= 2^|h| each member gets a distinct {1,2}-tuple on
    its edges into h (two colors). Otherwise the three-color scheme on
    representatives w_i: h_i h_(i+1) -> 1, h_i w_i -> 1 for i <= |h|,
    h_1 w_i -> 2 for i > |h|, and 3 on the rest of the h-incident edges, is
    applied to every element of each member at once.
    """
    cols = list(collection)
    if len(cols) < 2:
        raise InvalidParameter("collection needs at least two subgroups")
    for a, b in itertools.combinations(cols, 2):
        if (a & b) != h:
            raise IntersectionMismatch(f"{a} and {b} meet in {a & b}, not {h}")
    if len(h) < 2:
        raise HTooSmall(f"common intersection {h} has fewer than two elements")
    x = cols[0]
    for s in cols[1:]:
        x = x | s
    graph = commuting_graph(g, x)
    verts = x.members
    hlist = list(h.members)
    hpos = {a: j for j, a in enumerate(hlist)}
    owner = {}
    for i, s in enumerate(cols):
        for a in s:
            if a not in hpos:
                owner[a] = i
    m, width = len(cols), len(hlist)
    two = m <= 2**width
    labels = _tuples(width, m) if two else None

    def hw_color(i: int, j: int) -> int:
        # i: member index of the non-h end, j: position of the h end (both 0-based)
        if two:
            return labels[i][j]
        if i < width:
            return 1 if i == j else 3
        return 2 if j == 0 else 3

    colors = {}
    for u, v in graph.edges:
        a, b = verts[u], verts[v]
        if a in hpos and b in hpos:
            if two:
                colors[(u, v)] = 1
            else:
                colors[(u, v)] = 1 if abs(hpos[a] - hpos[b]) == 1 else 3
        elif a in hpos or b in hpos:
            hh, w = (a, b) if a in hpos else (b, a)
            colors[(u, v)] = hw_color(owner[w], hpos[hh])
        else:
            colors[(u, v)] = 1
    reps = [next(a for a in s if a not in hpos) for s in cols]
    notes = {
        "case": "tuples" if two else "three-color",
        "h_order": [g.names[a] for a in hlist],
        "representatives": [g.names[a] for a in reps],
    }
    if two:
        notes["tuples"] = [list(t) for t in labels]
    return _finish(g, graph, colors, "pstar", notes, verts)
