"""Rainbow connectivity: verification, bounds, and exact search."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

from .errors import (
    ColoringIncomplete,
    Disconnected,
    FileParseError,
    FingerprintMismatch,
    InvalidParameter,
    NotRainbowConnected,
    SearchBudgetExceeded,
    TrivialGraph,
)
from .graphs import Edge, UndirectedGraph, diameter, is_complete, is_connected, pendant_count

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    """Color index >= 1 for every edge of ``graph``."""

    graph: UndirectedGraph
    colors: Mapping[Edge, int]

    def __post_init__(self):
        colors = self.colors
        for e in self.graph.edges:
            if e not in colors:
                raise ColoringIncomplete(f"edge {e} has no color")
        if len(colors) != self.graph.edge_count:
            extra = sorted(set(colors) - set(self.graph.edges))
            raise ColoringIncomplete(f"colors given for non-edges {extra[:5]}")
        for e, c in colors.items():
            if not isinstance(c, int) or c < 1:
                raise InvalidParameter(f"edge {e} has invalid color {c!r}")

    @classmethod
    def from_sequence(cls, graph: UndirectedGraph, seq: Sequence[int]) -> "EdgeColoring":
        """Colors listed in the graph's canonical edge order."""
        if len(seq) != graph.edge_count:
            raise ColoringIncomplete(f"{len(seq)} colors for {graph.edge_count} edges")
        return cls(graph, dict(zip(graph.edges, (int(c) for c in seq))))

    @classmethod
    def constant(cls, graph: UndirectedGraph, color: int = 1) -> "EdgeColoring":
        return cls(graph, {e: color for e in graph.edges})

    @classmethod
    def distinct(cls, graph: UndirectedGraph) -> "EdgeColoring":
        return cls(graph, {e: i + 1 for i, e in enumerate(graph.edges)})

    @property
    def k(self) -> int:
        return len(set(self.colors.values()))

    def color(self, u: int, v: int) -> int:
        return self.colors[(u, v) if u < v else (v, u)]

    def sequence(self) -> list[int]:
        return [self.colors[e] for e in self.graph.edges]


# ---------------------------------------------------------------- verifier


def _incidence(g: UndirectedGraph, coloring: EdgeColoring) -> list[list[tuple[int, int]]]:
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    for (u, v), c in coloring.colors.items():
        bit = 1 << (c - 1)
        inc[u].append((v, bit))
        inc[v].append((u, bit))
    return inc


def _rainbow_reach(inc, n: int, source: int, targets: int, parents: dict | None = None) -> int:
    """BFS over (vertex, colors-used) states; returns the reached subset of ``targets``."""
    sh = n.bit_length()
    vmask = (1 << sh) - 1
    seen = {source}
    queue = [source]
    reached = 0
    i = 0
    while i < len(queue):
        key = queue[i]
        i += 1
        v = key & vmask
        used = key >> sh
        for w, bit in inc[v]:
            if used & bit:
                continue
            nk = ((used | bit) << sh) | w
            if nk in seen:
                continue
            seen.add(nk)
            if parents is not None:
                parents[nk] = key
            reached |= (1 << w) & targets
            if reached == targets:
                return reached
            queue.append(nk)
    return reached


@dataclass
class RainbowCheck:
    connected: bool
    failing_pairs: list[tuple[int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.connected


def is_rainbow_connected(g: UndirectedGraph, coloring: EdgeColoring) -> RainbowCheck:
    """Exact rainbow-connectivity test; lists every vertex pair with no rainbow path.

    A rainbow walk never repeats a color, so a walk search over
    (vertex, used-color set) states finds a rainbow path whenever one exists.
    """
    if coloring.graph is not g and coloring.graph != g:
        raise ColoringIncomplete("coloring belongs to a different graph")
    n = g.vertex_count
    inc = _incidence(g, coloring)
    full = (1 << n) - 1
    failing = []
    for u in range(n):
        targets = full & ~g.adjacency[u] & ~((1 << (u + 1)) - 1)
        if not targets:
            continue
        reached = _rainbow_reach(inc, n, u, targets)
        missing = targets & ~reached
        while missing:
            low = missing & -missing
            failing.append((u, low.bit_length() - 1))
            missing ^= low
    return RainbowCheck(not failing, failing)


def rainbow_path(g: UndirectedGraph, coloring: EdgeColoring, u: int, v: int) -> list[int] | None:
    """A vertex sequence from ``u`` to ``v`` whose edges have distinct colors, or None."""
    if u == v:
        return [u]
    n = g.vertex_count
    inc = _incidence(g, coloring)
    parents: dict[int, int] = {}
    if not _rainbow_reach(inc, n, u, 1 << v, parents):
        return None
    sh = n.bit_length()
    vmask = (1 << sh) - 1
    end = next(k for k in parents if k & vmask == v)
    walk = [end & vmask]
    while end in parents:
        end = parents[end]
        walk.append(end & vmask)
    walk.reverse()
    # cut cycles out of the walk; the surviving edges keep distinct colors
    path: list[int] = []
    where: dict[int, int] = {}
    for x in walk:
        if x in where:
            for y in path[where[x] + 1:]:
                del where[y]
            del path[where[x] + 1:]
        else:
            where[x] = len(path)
            path.append(x)
    return path


# ---------------------------------------------------------------- bounds


class LowerBound(NamedTuple):
    value: int
    provenance: list[str]


def rc_lower_bound(g: UndirectedGraph) -> LowerBound:
    """max(diameter, pendant count, 2 for non-complete graphs), with the active bound named."""
    if g.vertex_count < 2:
        raise TrivialGraph("rainbow connection needs at least two vertices")
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    cands = [("diameter", diameter(g))]
    # the pendant bound needs |V| >= 3; K_2 has two pendants but rc 1
    if g.vertex_count >= 3:
        cands.append(("pendant", pendant_count(g)))
    cands.append(("non-complete", 1 if is_complete(g) else 2))
    best = max(v for _, v in cands)
    return LowerBound(best, [name for name, v in cands if v == best])


@dataclass(frozen=True, eq=False)
class RcVerdict:
    lower: int
    upper: int
    method: tuple[str, ...] = ()
    witness: EdgeColoring | None = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= self.lower <= self.upper:
            raise InvalidParameter(f"inconsistent bounds [{self.lower}, {self.upper}]")
        if self.witness is not None and self.witness.k != self.upper:
            raise InvalidParameter(f"witness uses {self.witness.k} colors, upper bound is {self.upper}")

    @property
    def exact(self) -> int | None:
        return self.lower if self.lower == self.upper else None

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "method": list(self.method),
            "witness": None if self.witness is None else coloring_to_dict(self.witness),
            "notes": self.notes,
        }

    def __str__(self) -> str:
        val = f"rc = {self.exact}" if self.exact is not None else f"{self.lower} <= rc <= {self.upper}"
        return f"{val} [{', '.join(self.method)}]"


def rc_upper_from_coloring(g: UndirectedGraph, coloring: EdgeColoring, method: str = "coloring") -> RcVerdict:
    """Verdict whose upper bound is the color count of a verified coloring."""
    check = is_rainbow_connected(g, coloring)
    if not check:
        raise NotRainbowConnected(
            f"{len(check.failing_pairs)} vertex pairs lack a rainbow path", check.failing_pairs
        )
    lb = rc_lower_bound(g)
    k = coloring.k
    if lb.value > k:
        raise NotRainbowConnected(f"coloring with {k} colors is below the lower bound {lb.value}")
    return RcVerdict(lb.value, k, tuple(lb.provenance) + (method,), coloring)


def _ceil_root(t: int, s: int) -> int:
    """Smallest r with r**s >= t."""
    r = 1
    while r**s < t:
        r += 1
    return r


def rc_complete_multipartite(part_sizes: Sequence[int]) -> int:
    """rc of the complete multipartite graph with the given part sizes (at least 3 parts)."""
    sizes = sorted(int(x) for x in part_sizes)
    if len(sizes) < 3 or sizes[0] < 1:
        raise InvalidParameter("need at least three non-empty parts")
    t = sizes[-1]
    s = sum(sizes[:-1])
    if t == 1:
        return 1
    if s > t:
        return 2
    return min(3, _ceil_root(t, s))


# ---------------------------------------------------------------- exact search


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameter(f"environment variable {name}={raw!r} is not an integer") from None


@dataclass(frozen=True)
class SearchConfig:
    max_search_edges: int = 20
    max_nodes: int = 10**7
    threads: int = 1
    max_colors: int = 16

    @classmethod
    def from_env(cls, **overrides) -> "SearchConfig":
        base = dict(
            max_search_edges=_env_int("RCCG_MAX_SEARCH_EDGES", cls.max_search_edges),
            max_nodes=_env_int("RCCG_MAX_NODES", cls.max_nodes),
            threads=_env_int("RCCG_THREADS", cls.threads),
        )
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)


def search_edge_order(g: UndirectedGraph) -> list[Edge]:
    """Edges grouped by BFS discovery from a maximum-degree vertex.

    Hub edges come first, which is where shortest rainbow paths in
    commuting graphs run, so infeasible prefixes die early.
    """
    n = g.vertex_count
    start = max(range(n), key=lambda v: (g.degree(v), -v))
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in sorted(g.neighbors(v), key=lambda w: (-g.degree(w), w)):
            if w not in seen:
                seen.add(w)
                order.append(w)
    rank = {v: r for r, v in enumerate(order)}
    return sorted(g.edges, key=lambda e: tuple(sorted((rank[e[0]], rank[e[1]]))))


class _Search:
    """Backtracking over colorings of a fixed edge order with k colors."""

    def __init__(self, n: int, adjacency: Sequence[int], edges: Sequence[Edge], k: int, max_nodes: int):
        self.n = n
        self.edges = list(edges)
        self.k = k
        self.allbits = (1 << k) - 1
        self.max_nodes = max_nodes
        self.nodes = 0
        self.inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for idx, (u, v) in enumerate(self.edges):
            self.inc[u].append((v, idx))
            self.inc[v].append((u, idx))
        full = (1 << n) - 1
        self.pending0 = {}
        for u in range(n):
            t = full & ~adjacency[u] & ~((1 << (u + 1)) - 1)
            if t:
                self.pending0[u] = t

    def _reach(self, col, source: int, targets: int, wild: bool) -> int:
        n = self.n
        sh = n.bit_length()
        vmask = (1 << sh) - 1
        allbits = self.allbits
        inc = self.inc
        seen = {source}
        queue = [source]
        reached = 0
        i = 0
        while i < len(queue):
            key = queue[i]
            i += 1
            v = key & vmask
            used = key >> sh
            for w, idx in inc[v]:
                c = col[idx]
                if c:
                    bit = 1 << (c - 1)
                    if used & bit:
                        continue
                    opts = bit
                elif wild:
                    opts = allbits & ~used
                else:
                    continue
                while opts:
                    bit = opts & -opts
                    opts ^= bit
                    nk = ((used | bit) << sh) | w
                    if nk in seen:
                        continue
                    seen.add(nk)
                    reached |= (1 << w) & targets
                    if reached == targets:
                        return reached
                    queue.append(nk)
        return reached

    def _update(self, col, pending: dict[int, int]) -> dict[int, int] | None:
        """Drop pairs already joined by a fully colored rainbow path; None if some pair is hopeless."""
        out = {}
        for u, t in pending.items():
            t &= ~self._reach(col, u, t, wild=False)
            if not t:
                continue
            if self._reach(col, u, t, wild=True) != t:
                return None
            out[u] = t
        return out

    def run(self, prefix: Sequence[int] = ()) -> list[int] | None:
        m = len(self.edges)
        col = [0] * m
        used = 0
        for i, c in enumerate(prefix):
            col[i] = c
            used = max(used, c)
        pending = self._update(col, self.pending0)
        if pending is None:
            return None
        return self._dfs(col, len(prefix), used, pending)

    def _dfs(self, col: list[int], i: int, used: int, pending: dict[int, int]) -> list[int] | None:
        if not pending:
            # every pair is joined already; any completion keeps that
            return [c or 1 for c in col]
        if i == len(col):
            return None
        top = min(self.k, used + 1)
        for c in range(1, top + 1):
            self.nodes += 1
            if self.nodes > self.max_nodes:
                raise SearchBudgetExceeded(f"more than {self.max_nodes} search nodes")
            col[i] = c
            nxt = self._update(col, pending)
            if nxt is not None:
                res = self._dfs(col, i + 1, max(used, c), nxt)
                if res is not None:
                    return res
        col[i] = 0
        return None

    def frontier(self, depth: int) -> list[list[int]]:
        """Feasible canonical prefixes of the first ``depth`` edges, in lexicographic order."""
        out: list[list[int]] = []
        m = len(self.edges)
        col = [0] * m

        def rec(i, used, pending):
            if i == depth or not pending:
                out.append(col[:i])
                return
            for c in range(1, min(self.k, used + 1) + 1):
                col[i] = c
                nxt = self._update(col, pending)
                if nxt is not None:
                    rec(i + 1, max(used, c), nxt)
            col[i] = 0

        start = self._update(col, self.pending0)
        if start is not None:
            rec(0, 0, start)
        return out


def _subtree_worker(args):
    n, adjacency, edges, k, max_nodes, prefix = args
    s = _Search(n, adjacency, edges, k, max_nodes)
    try:
        return s.run(prefix), s.nodes, False
    except SearchBudgetExceeded:
        return None, s.nodes, True


def _search_k(g: UndirectedGraph, edges: list[Edge], k: int, cfg: SearchConfig, budget: int):
    """Returns (coloring sequence in ``edges`` order or None, nodes used)."""
    if cfg.threads <= 1:
        s = _Search(g.vertex_count, g.adjacency, edges, k, budget)
        try:
            return s.run(), s.nodes
        except SearchBudgetExceeded:
            raise SearchBudgetExceeded(f"node budget exhausted at k={k}") from None
    probe = _Search(g.vertex_count, g.adjacency, edges, k, budget)
    depth = 1
    prefixes = probe.frontier(depth)
    while len(prefixes) < 4 * cfg.threads and depth < len(edges) and prefixes:
        depth += 1
        prefixes = probe.frontier(depth)
    share = max(1, budget // max(1, len(prefixes)))
    jobs = [(g.vertex_count, g.adjacency, edges, k, share, p) for p in prefixes]
    total = 0
    exhausted = False
    pool = ProcessPoolExecutor(max_workers=cfg.threads)
    try:
        # futures are consumed in lexicographic prefix order, so the reported
        # witness does not depend on which worker finishes first
        futures = [pool.submit(_subtree_worker, job) for job in jobs]
        for fut in futures:
            res, nodes, over = fut.result()
            total += nodes
            exhausted |= over
            if res is not None:
                return res, total
    finally:
        pool.shutdown(wait=True, cancel_futures=True)
    if exhausted:
        raise SearchBudgetExceeded(f"node budget exhausted at k={k}")
    return None, total


def rc_exact(g: UndirectedGraph, cfg: SearchConfig | None = None) -> RcVerdict:
    """Exact rc by iterative deepening on the color count.

    Colorings are enumerated with canonical color introduction (a new color
    index only after all smaller ones appear), and a partial coloring is
    abandoned as soon as some vertex pair has no rainbow path under any
    completion of the uncolored edges. Beyond ``cfg.max_search_edges`` edges,
    or when the node budget runs out, the verdict carries bounds only.
    """
    cfg = cfg or SearchConfig()
    lb = rc_lower_bound(g)
    m = g.edge_count
    lower = lb.value
    method = list(lb.provenance) + ["edge-count"]
    if lower >= m:
        return RcVerdict(m, m, tuple(lb.provenance) + ("edge-count",), EdgeColoring.distinct(g))
    if m > cfg.max_search_edges:
        return RcVerdict(lower, m, tuple(method) + ("search-skipped",), None,
                         {"reason": f"{m} edges > max_search_edges={cfg.max_search_edges}"})
    edges = search_edge_order(g)
    budget = cfg.max_nodes
    for k in range(lower, m):
        if k > cfg.max_colors:
            return RcVerdict(k, m, tuple(method) + ("search-stopped",), None,
                             {"reason": f"k={k} exceeds max_colors={cfg.max_colors}"})
        try:
            seq, used = _search_k(g, edges, k, cfg, budget)
        except SearchBudgetExceeded as exc:
            log.info("rc_exact: %s", exc)
            return RcVerdict(k, m, tuple(method) + ("search-budget-exceeded",), None, {"reason": str(exc)})
        budget -= used
        if seq is not None:
            witness = EdgeColoring(g, dict(zip(edges, seq)))
            assert is_rainbow_connected(g, witness), "search returned an unverified coloring"
            return RcVerdict(k, k, ("exhaustive-search",), witness, {"refuted_below": k})
        lower = k + 1
    return RcVerdict(m, m, ("exhaustive-search", "edge-count"), EdgeColoring.distinct(g), {"refuted_below": m})


# ---------------------------------------------------------------- file format


def coloring_to_dict(c: EdgeColoring) -> dict:
    return {
        "graph_fingerprint": c.graph.fingerprint(),
        "colors": [{"u": u, "v": v, "color": c.colors[(u, v)]} for u, v in c.graph.edges],
    }


def coloring_from_dict(g: UndirectedGraph, doc: dict) -> EdgeColoring:
    try:
        fp = doc["graph_fingerprint"]
        items = doc["colors"]
        colors = {}
        for it in items:
            u, v = sorted((int(it["u"]), int(it["v"])))
            colors[(u, v)] = int(it["color"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FileParseError(f"not a coloring document: {exc}") from None
    if fp != g.fingerprint():
        raise FingerprintMismatch("coloring was made for a different graph")
    return EdgeColoring(g, colors)


def save_coloring(c: EdgeColoring, path: str | Path, **extra) -> None:
    doc = coloring_to_dict(c)
    doc.update(extra)
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n", encoding="utf-8")


def load_coloring(g: UndirectedGraph, path: str | Path) -> EdgeColoring:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FileParseError(f"{path}: not valid JSON ({exc})") from None
    return coloring_from_dict(g, doc)
