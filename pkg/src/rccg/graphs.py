"""Undirected simple graphs on vertices 0..n-1 with bitset adjacency."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import CliqueExplosion, Disconnected, FileParseError, InvalidParameter, TrivialGraph

DEFAULT_CLIQUE_CAP = 10**5

Edge = tuple[int, int]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class UndirectedGraph:
    """Simple graph; ``adjacency[v]`` is the neighbor bitmask of ``v``."""

    adjacency: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.adjacency)
        if len(self.labels) != n:
            raise InvalidParameter(f"{len(self.labels)} labels for {n} vertices")
        for v, m in enumerate(self.adjacency):
            if m >> v & 1:
                raise InvalidParameter(f"loop at vertex {v}")
            if m >> n:
                raise InvalidParameter(f"vertex {v} has a neighbor outside 0..{n - 1}")
            for u in _bits(m):
                if not self.adjacency[u] >> v & 1:
                    raise InvalidParameter(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] | None = None
    ) -> "UndirectedGraph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidParameter(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"edge ({u}, {v}) outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(tuple(adj), tuple(labels))

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def __len__(self) -> int:
        return len(self.adjacency)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u, m in enumerate(self.adjacency) for v in _bits(m >> (u + 1) << (u + 1)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adjacency[v]))

    def degree(self, v: int) -> int:
        return bin(self.adjacency[v]).count("1")

    def fingerprint(self) -> str:
        """SHA-256 of the canonical edge list."""
        text = ";".join(f"{u}-{v}" for u, v in self.edges)
        return hashlib.sha256(text.encode("ascii")).hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.adjacency == other.adjacency and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.adjacency)

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.vertex_count}, m={self.edge_count})"


# ---------------------------------------------------------------- generators


def complete_graph(n: int) -> UndirectedGraph:
    full = (1 << n) - 1
    return UndirectedGraph(tuple(full & ~(1 << v) for v in range(n)), tuple(map(str, range(n))))


def path_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_multipartite_graph(sizes: Sequence[int]) -> UndirectedGraph:
    part = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(part)
    return UndirectedGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]])


# ---------------------------------------------------------------- metrics


def bfs_distances(g: UndirectedGraph, source: int) -> list[int]:
    """Hop distance from ``source``; -1 for unreachable vertices."""
    dist = [-1] * g.vertex_count
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    adj = g.adjacency
    while frontier:
        d += 1
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        nxt &= ~seen
        seen |= nxt
        for v in _bits(nxt):
            dist[v] = d
        frontier = nxt
    return dist


def is_connected(g: UndirectedGraph) -> bool:
    if g.vertex_count == 0:
        return True
    return -1 not in bfs_distances(g, 0)


def is_complete(g: UndirectedGraph) -> bool:
    n = g.vertex_count
    return g.edge_count == n * (n - 1) // 2


def diameter(g: UndirectedGraph) -> int:
    if g.vertex_count < 2:
        raise TrivialGraph("diameter needs at least two vertices")
    best = 0
    for s in range(g.vertex_count):
        dist = bfs_distances(g, s)
        if -1 in dist:
            raise Disconnected(f"vertex {dist.index(-1)} unreachable from {s}")
        best = max(best, max(dist))
    return best


def pendant_count(g: UndirectedGraph) -> int:
    return sum(1 for m in g.adjacency if m and m & (m - 1) == 0)


def complete_multipartite_parts(g: UndirectedGraph) -> list[int] | None:
    """Sorted part sizes if ``g`` is complete multipartite, else None.

    A graph is complete multipartite exactly when non-adjacency (plus
    equality) is an equivalence relation.
    """
    n = g.vertex_count
    full = (1 << n) - 1
    seen = 0
    parts = []
    for v in range(n):
        if seen >> v & 1:
            continue
        cls = full & ~g.adjacency[v]
        for u in _bits(cls):
            if full & ~g.adjacency[u] != cls:
                return None
        seen |= cls
        parts.append(bin(cls).count("1"))
    return sorted(parts)


# ---------------------------------------------------------------- cliques


def maximal_cliques(g: UndirectedGraph, *, cap: int = DEFAULT_CLIQUE_CAP) -> list[tuple[int, ...]]:
    """All inclusion-maximal cliques, sorted; isolated vertices come out as singletons.

    Bron-Kerbosch with Tomita pivoting on bitsets.
    """
    adj = g.adjacency
    out: list[tuple[int, ...]] = []
    if not adj:
        return out

    def expand(r: list[int], p: int, x: int) -> None:
        if not p:
            if not x:
                out.append(tuple(sorted(r)))
                if len(out) > cap:
                    raise CliqueExplosion(f"more than {cap} maximal cliques")
            return
        # pivot maximizing |P ∩ N(u)| over u in P ∪ X
        pivot = max(_bits(p | x), key=lambda u: bin(p & adj[u]).count("1"))
        for v in _bits(p & ~adj[pivot]):
            r.append(v)
            expand(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    expand([], (1 << g.vertex_count) - 1, 0)
    out.sort()
    return out


# ---------------------------------------------------------------- export

PALETTE = (
    "red", "blue", "forestgreen", "orange", "purple", "brown", "magenta", "cyan",
    "gold", "gray40", "navy", "olivedrab", "deeppink", "teal", "sienna", "black",
)


def _coloring_map(coloring) -> Mapping[Edge, int] | None:
    if coloring is None:
        return None
    return getattr(coloring, "colors", coloring)


def export_dot(g: UndirectedGraph, coloring=None, *, name: str = "G") -> str:
    """Graphviz ``graph``; colored edges get a palette color and a numeric label."""
    colors = _coloring_map(coloring)
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    for v, lab in enumerate(g.labels):
        lines.append(f'  {v} [label="{lab}"];')
    for u, v in g.edges:
        if colors is None:
            lines.append(f"  {u} -- {v};")
        else:
            c = colors[(u, v)]
            lines.append(f'  {u} -- {v} [color="{PALETTE[(c - 1) % len(PALETTE)]}", label="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(g: UndirectedGraph, coloring=None) -> dict:
    doc = {"labels": list(g.labels), "edges": [[u, v] for u, v in g.edges]}
    colors = _coloring_map(coloring)
    if colors is not None:
        doc["coloring"] = [{"u": u, "v": v, "color": colors[(u, v)]} for u, v in g.edges]
    return doc


def export_json(g: UndirectedGraph, coloring=None) -> str:
    return json.dumps(graph_to_dict(g, coloring), indent=1, sort_keys=True) + "\n"


def parse_graph_json(text: str) -> tuple[UndirectedGraph, dict[Edge, int] | None]:
    """Inverse of :func:`export_json`; returns the graph and the raw coloring map if present."""
    try:
        doc = json.loads(text)
        labels = [str(s) for s in doc["labels"]]
        edges = [(int(u), int(v)) for u, v in doc["edges"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise FileParseError(f"not a graph document: {exc}") from None
    g = UndirectedGraph.from_edges(len(labels), edges, labels)
    colors = None
    if "coloring" in doc:
        colors = {}
        for item in doc["coloring"]:
            u, v = sorted((int(item["u"]), int(item["v"])))
            colors[(u, v)] = int(item["color"])
    return g, colors
