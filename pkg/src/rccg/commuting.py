"""Commuting graphs and the maximal abelian subgroup structure behind them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import CliqueCorrespondenceError, EmptySubset
from .graphs import DEFAULT_CLIQUE_CAP, UndirectedGraph, maximal_cliques
from .groups import ElementSet, FiniteGroup, center, is_commuting, is_subgroup


def commuting_graph(g: FiniteGroup, x: ElementSet | None = None) -> UndirectedGraph:
    """CG(g, x): vertices are the members of ``x`` in sorted order.

    Vertex ``i`` of the result is element ``x.members[i]``.
    """
    members = range(g.order) if x is None else x.members
    members = list(members)
    if not members:
        raise EmptySubset("commuting graph needs a non-empty vertex set")
    pos = {a: i for i, a in enumerate(members)}
    sel = 0
    for a in members:
        sel |= 1 << a
    masks = g.centralizer_masks
    adj = []
    for a in members:
        m = masks[a] & sel & ~(1 << a)
        if x is None:
            adj.append(m)
            continue
        local = 0
        while m:
            low = m & -m
            local |= 1 << pos[low.bit_length() - 1]
            m ^= low
        adj.append(local)
    return UndirectedGraph(tuple(adj), tuple(g.names[a] for a in members))


@dataclass(frozen=True, eq=False)
class MasCatalog:
    """All maximal abelian subgroups of a group, in canonical sorted order."""

    group: FiniteGroup
    subgroups: tuple[ElementSet, ...]

    def __len__(self) -> int:
        return len(self.subgroups)

    @property
    def m(self) -> int:
        return len(self.subgroups)

    @property
    def order2_count(self) -> int:
        return sum(1 for s in self.subgroups if len(s) == 2)

    @property
    def order2_subgroups(self) -> list[ElementSet]:
        return [s for s in self.subgroups if len(s) == 2]

    @cached_property
    def common_intersections(self) -> dict[ElementSet, list[tuple[ElementSet, ...]]]:
        return common_intersection_collections(self)

    def index_containing(self, a: int) -> int:
        """Lowest catalog index of a subgroup containing element ``a``."""
        bit = 1 << a
        for i, s in enumerate(self.subgroups):
            if s.mask & bit:
                return i
        raise KeyError(a)

    def same_as(self, other: "MasCatalog") -> bool:
        return set(self.subgroups) == set(other.subgroups)

    def violations(self) -> list[str]:
        """Structural invariants that fail for this catalog (empty when sound)."""
        g = self.group
        out = []
        union = 0
        for s in self.subgroups:
            union |= s.mask
            if g.identity not in s:
                out.append(f"{s} lacks the identity")
            if not is_subgroup(g, s):
                out.append(f"{s} is not a subgroup")
            if not is_commuting(g, s):
                out.append(f"{s} is not abelian")
        for s, t in combinations(self.subgroups, 2):
            if s.issubset(t) or t.issubset(s):
                out.append(f"{s} and {t} are nested")
        if union != (1 << g.order) - 1:
            out.append("subgroups do not cover the group")
        z = center(g)
        for s in self.subgroups:
            if not z.issubset(s):
                out.append(f"{s} misses part of the center")
        if len(self.subgroups) == 1 and self.subgroups[0] != g.whole():
            out.append("single subgroup is not the whole group")
        if 1 < len(self.subgroups) < 3:
            out.append(f"non-abelian group with only {len(self.subgroups)} maximal abelian subgroups")
        return out

    def to_dict(self) -> dict:
        g = self.group
        names = g.names
        inter = []
        for (i, s), (j, t) in combinations(enumerate(self.subgroups), 2):
            inter.append({"i": i, "j": j, "intersection": (s & t).names})
        return {
            "group": g.label,
            "order": g.order,
            "subgroups": [{"size": len(s), "elements": [names[a] for a in s]} for s in self.subgroups],
            "order2_count": self.order2_count,
            "intersections": inter,
        }


def maximal_abelian_subgroups(g: FiniteGroup, *, cap: int = DEFAULT_CLIQUE_CAP) -> MasCatalog:
    """Maximal abelian subgroups as the maximal cliques of CG(g).

    Each clique is checked to be an abelian subgroup; a failure raises
    :class:`CliqueCorrespondenceError`.
    """
    subs = []
    for clique in maximal_cliques(commuting_graph(g), cap=cap):
        s = ElementSet(g, clique)
        if not is_subgroup(g, s):
            raise CliqueCorrespondenceError(f"maximal clique {s} of CG({g.label}) is not a subgroup")
        subs.append(s)
    return MasCatalog(g, tuple(sorted(subs)))


def mas_by_centralizer_oracle(g: FiniteGroup) -> MasCatalog:
    """Maximal commuting subsets by centralizer closure and backtracking.

    Works from a commuting seed S and K = intersection of the centralizers of
    S. When K is itself commuting it is the unique maximal commuting set over
    S. Otherwise pick x in K not central in K: every maximal set over S
    either contains x or contains some y in K that fails to commute with x,
    so branching on those two options is exhaustive.
    """
    masks = g.centralizer_masks
    full = (1 << g.order) - 1
    found: set[int] = set()
    seen: set[int] = set()
    stack = [full]
    while stack:
        k = stack.pop()
        if k in seen:
            continue
        seen.add(k)
        rest = k
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            rest ^= low
            if masks[x] & k != k:
                bad = x
                break
        else:
            found.add(k)
            continue
        stack.append(k & masks[bad])
        others = k & ~masks[bad]
        while others:
            low = others & -others
            others ^= low
            stack.append(k & masks[low.bit_length() - 1])
    subs = sorted(ElementSet.from_mask(g, m) for m in found)
    return MasCatalog(g, tuple(subs))


def isolated_involutions(g: FiniteGroup) -> ElementSet:
    """Involutions whose centralizer is just {e, x}."""
    e = g.identity
    masks = g.centralizer_masks
    out = []
    for a in range(g.order):
        if a != e and g.table[a][a] == e and masks[a] == (1 << e) | (1 << a):
            out.append(a)
    return ElementSet(g, tuple(out))


def common_intersection_collections(
    catalog: MasCatalog, *, cap: int = DEFAULT_CLIQUE_CAP
) -> dict[ElementSet, list[tuple[ElementSet, ...]]]:
    """For every pairwise intersection H, the maximal collections meeting pairwise in H.

    Collections are the maximal cliques (size >= 2) of the graph on catalog
    members joined when their intersection is exactly H. Every collection is
    re-verified pairwise before it is returned.
    """
    subs = catalog.subgroups
    by_h: dict[int, list[tuple[int, int]]] = {}
    for i, j in combinations(range(len(subs)), 2):
        by_h.setdefault(subs[i].mask & subs[j].mask, []).append((i, j))
    g = catalog.group
    out: dict[ElementSet, list[tuple[ElementSet, ...]]] = {}
    for hmask in sorted(by_h, key=lambda m: ElementSet.from_mask(g, m)):
        pairs = by_h[hmask]
        aux = UndirectedGraph.from_edges(len(subs), pairs)
        cols = []
        for clique in maximal_cliques(aux, cap=cap):
            if len(clique) < 2:
                continue
            col = tuple(subs[i] for i in clique)
            assert all(a.mask & b.mask == hmask for a, b in combinations(col, 2))
            cols.append(col)
        out[ElementSet.from_mask(g, hmask)] = cols
    return out


def largest_collection(catalog: MasCatalog, h: ElementSet) -> tuple[ElementSet, ...] | None:
    cols = catalog.common_intersections.get(h, [])
    return max(cols, key=len) if cols else None
