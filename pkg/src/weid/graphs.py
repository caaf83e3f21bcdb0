"""Edge-weighted simple graphs and the structures the criteria are phrased in.

Vertex labels are opaque strings.  The x/y naming of matched pairs lives only
in :class:`VwcLabeling` and :class:`PendantMatching`, never in the graph.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

import networkx as nx

from .monomial import MonomialIdeal

__all__ = [
    "GraphError",
    "WeightedGraph",
    "VwcLabeling",
    "PendantMatching",
    "edge_ideal",
    "maximal_independent_sets",
    "minimal_vertex_covers",
    "is_very_well_covered",
    "iter_vwc_labelings",
    "find_vwc_labeling",
    "pendant_matching",
    "core",
    "star_center",
    "is_complete",
    "MAX_VWC_VERTICES",
]

MAX_VWC_VERTICES = 16

Edge = frozenset


class GraphError(ValueError):
    """Structural precondition on a graph is violated."""


class WeightedGraph:
    """Simple graph with positive integer edge weights."""

    __slots__ = ("vertices", "_w", "_adj")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple] = ()):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError(f"duplicate vertices in {self.vertices}")
        vs = set(self.vertices)
        self._w: dict[frozenset, int] = {}
        self._adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in edges:
            u, v, *rest = e
            w = rest[0] if rest else 1
            if u == v:
                raise GraphError(f"loop at {u!r}")
            if u not in vs or v not in vs:
                raise GraphError(f"edge {u}{v} uses an unknown vertex")
            if not isinstance(w, int) or w < 1:
                raise GraphError(f"weight of {u}{v} must be a positive integer, got {w!r}")
            key = frozenset((u, v))
            if key in self._w:
                raise GraphError(f"parallel edge {u}{v}")
            self._w[key] = w
            self._adj[u].add(v)
            self._adj[v].add(u)

    # -- io ---------------------------------------------------------------

    @classmethod
    def from_json(cls, data: Union[str, Mapping]) -> "WeightedGraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], [(e["u"], e["v"], e.get("w", 1)) for e in data["edges"]])

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"u": u, "v": v, "w": w} for u, v, w in self.edges()],
        }

    # -- queries ----------------------------------------------------------

    def edges(self) -> list[tuple[str, str, int]]:
        order = {v: i for i, v in enumerate(self.vertices)}
        out = []
        for key, w in self._w.items():
            u, v = sorted(key, key=order.__getitem__)
            out.append((u, v, w))
        return sorted(out, key=lambda e: (order[e[0]], order[e[1]]))

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._w

    def weight(self, u: str, v: str) -> int:
        try:
            return self._w[frozenset((u, v))]
        except KeyError:
            raise GraphError(f"{u}{v} is not an edge") from None

    def neighbors(self, v: str) -> set[str]:
        return set(self._adj[v])

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def num_edges(self) -> int:
        return len(self._w)

    def leaves(self) -> set[str]:
        return {v for v in self.vertices if len(self._adj[v]) == 1}

    def isolated(self) -> set[str]:
        return {v for v in self.vertices if not self._adj[v]}

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_weighted_edges_from(self.edges())
        return g

    def is_bipartite(self) -> bool:
        return nx.is_bipartite(self.to_networkx())

    def is_tree(self) -> bool:
        return len(self.vertices) > 0 and nx.is_tree(self.to_networkx())

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and nx.is_connected(self.to_networkx())

    def induced(self, A: Iterable[str]) -> "WeightedGraph":
        """Induced weighted subgraph on ``A`` (weights are inherited)."""
        A = set(A)
        missing = A - set(self.vertices)
        if missing:
            raise GraphError(f"{sorted(missing)} are not vertices")
        return WeightedGraph(
            [v for v in self.vertices if v in A],
            [(u, v, w) for u, v, w in self.edges() if u in A and v in A],
        )

    def delete(self, A: Iterable[str]) -> "WeightedGraph":
        """``G minus A``: the induced subgraph on the remaining vertices."""
        A = set(A)
        return self.induced(v for v in self.vertices if v not in A)

    def reweighted(self, weights: Mapping[frozenset, int]) -> "WeightedGraph":
        return WeightedGraph(
            self.vertices,
            [(u, v, weights.get(frozenset((u, v)), w)) for u, v, w in self.edges()],
        )

    def unweighted(self) -> "WeightedGraph":
        return WeightedGraph(self.vertices, [(u, v, 1) for u, v, _ in self.edges()])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeightedGraph)
            and set(self.vertices) == set(other.vertices)
            and self._w == other._w
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), frozenset(self._w.items())))

    def __repr__(self) -> str:
        es = ", ".join(f"{u}{v}:{w}" for u, v, w in self.edges())
        return f"WeightedGraph([{', '.join(self.vertices)}]; {es})"


def edge_ideal(G: WeightedGraph) -> MonomialIdeal:
    """``((uv)^w(uv) : uv in E)`` in the ring on ``V(G)``."""
    if not G.num_edges():
        raise GraphError("edge ideal of a graph without edges is the zero ideal")
    index = {v: i for i, v in enumerate(G.vertices)}
    n = len(G.vertices)
    gens = []
    for u, v, w in G.edges():
        g = [0] * n
        g[index[u]] = w
        g[index[v]] = w
        gens.append(tuple(g))
    return MonomialIdeal(G.vertices, gens)


# -- independent sets and covers ---------------------------------------------


def maximal_independent_sets(G: WeightedGraph) -> list[frozenset[str]]:
    """Maximal independent sets, as maximal cliques of the complement."""
    comp = nx.complement(G.to_networkx())
    return sorted((frozenset(c) for c in nx.find_cliques(comp)), key=sorted)


def minimal_vertex_covers(G: WeightedGraph) -> list[frozenset[str]]:
    vs = frozenset(G.vertices)
    return sorted((vs - s for s in maximal_independent_sets(G)), key=sorted)


def is_very_well_covered(G: WeightedGraph) -> bool:
    if G.isolated():
        raise GraphError(f"isolated vertices {sorted(G.isolated())}")
    n = len(G.vertices)
    if n > MAX_VWC_VERTICES:
        raise GraphError(f"exhaustive check limited to {MAX_VWC_VERTICES} vertices, got {n}")
    if n % 2:
        return False
    return all(len(s) == n // 2 for s in maximal_independent_sets(G))


# -- (*) labelings -----------------------------------------------------------


@dataclass(frozen=True)
class VwcLabeling:
    """Ordered pairs ``(x_i, y_i)``; index ``i`` is the position in ``pairs``."""

    pairs: tuple[tuple[str, str], ...]

    @property
    def t(self) -> int:
        return len(self.pairs)

    @property
    def xs(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.pairs)

    @property
    def ys(self) -> tuple[str, ...]:
        return tuple(y for _, y in self.pairs)

    def violations(self, G: WeightedGraph) -> list[str]:
        """Names of the conditions (1*)..(5*) that fail, plus partition errors."""
        out = []
        xs, ys = self.xs, self.ys
        if sorted(xs + ys) != sorted(G.vertices) or len(set(xs + ys)) != len(xs + ys):
            out.append("partition")
            return out
        E = G.has_edge
        t = self.t
        if not all(E(xs[i], ys[i]) for i in range(t)):
            out.append("1*")
        if any(E(xs[i], ys[j]) and i > j for i in range(t) for j in range(t)):
            out.append("2*")
        if any(E(xs[i], ys[j]) and E(xs[i], xs[j]) for i in range(t) for j in range(t) if i != j):
            out.append("3*")
        trip = [(i, j, k) for i, j, k in permutations(range(t), 3)]
        if any(E(xs[i], ys[k]) and E(xs[k], ys[j]) and not E(xs[i], ys[j]) for i, j, k in trip):
            out.append("4*")
        if any(E(xs[i], ys[k]) and E(xs[k], xs[j]) and not E(xs[i], xs[j]) for i, j, k in trip):
            out.append("5*")
        if any(E(ys[i], ys[j]) for i in range(t) for j in range(i + 1, t)):
            out.append("Y independent")
        return out

    def is_valid(self, G: WeightedGraph) -> bool:
        return not self.violations(G)

    def to_json(self) -> list[list[str]]:
        return [list(p) for p in self.pairs]


def _matchings(G: WeightedGraph, X: Sequence[str], Y: frozenset[str]) -> Iterator[dict[str, str]]:
    def rec(i: int, used: frozenset[str], acc: dict[str, str]):
        if i == len(X):
            yield dict(acc)
            return
        x = X[i]
        for y in sorted(G.neighbors(x) & Y - used):
            acc[x] = y
            yield from rec(i + 1, used | {y}, acc)
            del acc[x]

    yield from rec(0, frozenset(), {})


def _order_independent_ok(G: WeightedGraph, match: dict[str, str]) -> bool:
    pairs = sorted(match.items())
    lab = VwcLabeling(tuple(pairs))
    bad = set(lab.violations(G)) - {"2*"}
    return not bad


def _topological_pairs(G: WeightedGraph, match: dict[str, str]) -> Optional[list[tuple[str, str]]]:
    xs = sorted(match)
    before: dict[str, set[str]] = {x: set() for x in xs}  # x -> pairs that must follow
    indeg = {x: 0 for x in xs}
    for xi in xs:
        for xj in xs:
            if xi != xj and G.has_edge(xi, match[xj]):
                if xj not in before[xi]:
                    before[xi].add(xj)
                    indeg[xj] += 1
    heap = [x for x in xs if indeg[x] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        x = heapq.heappop(heap)
        order.append((x, match[x]))
        for nxt in before[x]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                heapq.heappush(heap, nxt)
    return order if len(order) == len(xs) else None


def iter_vwc_labelings(G: WeightedGraph) -> Iterator[VwcLabeling]:
    """Every (X, Y, matching) split that admits an order satisfying (1*)-(5*).

    For each split the lexicographically smallest valid order is produced;
    conditions (3*)-(5*) do not depend on the order, and (2*) is a
    precedence relation solved by topological sorting.
    """
    n = len(G.vertices)
    if n % 2 or G.isolated():
        return
    t = n // 2
    for Y in maximal_independent_sets(G):
        if len(Y) != t:
            continue
        X = sorted(set(G.vertices) - Y)
        for match in _matchings(G, X, Y):
            if not _order_independent_ok(G, match):
                continue
            order = _topological_pairs(G, match)
            if order is not None:
                lab = VwcLabeling(tuple(order))
                assert lab.is_valid(G)
                yield lab


def find_vwc_labeling(G: WeightedGraph) -> Optional[VwcLabeling]:
    return next(iter_vwc_labelings(G), None)


# -- pendant matchings and cores ---------------------------------------------


@dataclass(frozen=True)
class PendantMatching:
    """Perfect matching ``x_i y_i`` in which every ``y_i`` is a leaf."""

    pairs: tuple[tuple[str, str], ...]

    @property
    def t(self) -> int:
        return len(self.pairs)

    @property
    def xs(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.pairs)

    @property
    def ys(self) -> tuple[str, ...]:
        return tuple(y for _, y in self.pairs)

    def partner(self, x: str) -> str:
        return dict(self.pairs)[x]

    def is_valid(self, G: WeightedGraph) -> bool:
        verts = self.xs + self.ys
        return (
            sorted(verts) == sorted(G.vertices)
            and len(set(verts)) == len(verts)
            and all(G.has_edge(x, y) and G.degree(y) == 1 for x, y in self.pairs)
        )

    def to_json(self) -> list[list[str]]:
        return [list(p) for p in self.pairs]


def pendant_matching(G: WeightedGraph) -> Optional[PendantMatching]:
    """The perfect matching made of pendant edges, if there is one.

    It is unique up to orienting isolated edges, which are oriented by
    vertex order.
    """
    order = {v: i for i, v in enumerate(G.vertices)}
    leaves = G.leaves()
    pairs = []
    matched: set[str] = set()
    for x in G.vertices:
        if x in matched:
            continue
        leafy = sorted(G.neighbors(x) & leaves, key=order.__getitem__)
        if x in leaves:
            (y,) = G.neighbors(x)
            if y in leaves:  # isolated edge
                pairs.append((x, y))
                matched |= {x, y}
            continue
        if len(leafy) != 1:
            return None
        pairs.append((x, leafy[0]))
        matched |= {x, leafy[0]}
    if matched != set(G.vertices):
        return None
    return PendantMatching(tuple(pairs))


def core(G: WeightedGraph, M: PendantMatching) -> WeightedGraph:
    """Induced weighted subgraph on ``x_1 .. x_t``."""
    return G.induced(M.xs)


def star_center(T: WeightedGraph) -> Optional[str]:
    """A vertex adjacent to every other vertex of a star ``T``, else ``None``."""
    n = len(T.vertices)
    if n == 0:
        return None
    if T.num_edges() != n - 1:
        return None
    for v in T.vertices:
        if T.degree(v) == n - 1:
            return v
    return None


def is_complete(T: WeightedGraph) -> bool:
    n = len(T.vertices)
    return T.num_edges() == n * (n - 1) // 2
