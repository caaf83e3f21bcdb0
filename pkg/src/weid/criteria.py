"""Weight conditions deciding Cohen-Macaulayness of powers of weighted edge ideals.

Every predicate re-checks the structural shape it is stated for and returns
a :class:`CriterionReport` listing *all* violated inequalities.  Ceilings are
evaluated in integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from .graphs import (
    GraphError,
    PendantMatching,
    VwcLabeling,
    WeightedGraph,
    core,
    is_complete,
    pendant_matching,
    star_center,
)

__all__ = [
    "Violation",
    "CriterionReport",
    "ceil_div",
    "square_cm_criterion",
    "power_ell_criterion",
    "pn_bound",
    "path3_all_n",
    "path3_parts",
    "star_all_n",
    "complete_core_all_n",
    "tree_necessary",
    "dif_nonCM_threshold",
    "pqr_parts",
]


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class Violation:
    condition: str
    where: tuple
    required: str
    actual: dict

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "where": [list(w) if isinstance(w, tuple) else w for w in self.where],
            "required": self.required,
            "actual": self.actual,
        }


@dataclass
class CriterionReport:
    theorem: str
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "holds": self.holds,
            "violations": [v.to_json() for v in self.violations],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# -- very well-covered graphs ----------------------------------------------


def power_ell_criterion(G: WeightedGraph, L: VwcLabeling, ell: int) -> CriterionReport:
    """Weight inequalities with coefficient ``ell`` for a (*)-labeled graph.

    (1) ``ell*w(x_i z_j) <= min(w(x_i y_i), w(x_j y_j))`` for edges ``x_i z_j``, ``i != j``;
    (2) ``ell*w(x_i z_j) <= min(w(x_i y_k), w(x_k z_j))`` whenever ``x_i y_k`` and
    ``x_k z_j`` are edges, ``i, j, k`` distinct; here ``z_j`` is ``x_j`` or ``y_j``.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    bad = L.violations(G)
    if bad:
        raise GraphError(f"labeling violates {bad}")
    rep = CriterionReport("square-cm" if ell == 2 else f"powers-up-to-{ell}")
    xs, ys = L.xs, L.ys
    w = G.weight
    E = G.has_edge
    seen = set()
    for i, j in permutations(range(L.t), 2):
        for z in (xs[j], ys[j]):
            if not E(xs[i], z):
                continue
            key = frozenset((xs[i], z))
            if key in seen:
                continue
            seen.add(key)
            lhs = ell * w(xs[i], z)
            rhs = min(w(xs[i], ys[i]), w(xs[j], ys[j]))
            if lhs > rhs:
                rep.violations.append(
                    Violation(
                        "1",
                        ((xs[i], z),),
                        f"{ell}*w({xs[i]}{z}) <= min(w({xs[i]}{ys[i]}), w({xs[j]}{ys[j]}))",
                        {"lhs": lhs, "rhs": rhs},
                    )
                )
    for i, j, k in permutations(range(L.t), 3):
        if not E(xs[i], ys[k]):
            continue
        for z in (xs[j], ys[j]):
            if not E(xs[k], z):
                continue
            if not E(xs[i], z):
                raise GraphError(f"labeling inconsistent: {xs[i]}{z} missing")
            lhs = ell * w(xs[i], z)
            rhs = min(w(xs[i], ys[k]), w(xs[k], z))
            if lhs > rhs:
                rep.violations.append(
                    Violation(
                        "2",
                        ((xs[i], z), (xs[i], ys[k]), (xs[k], z)),
                        f"{ell}*w({xs[i]}{z}) <= min(w({xs[i]}{ys[k]}), w({xs[k]}{z}))",
                        {"lhs": lhs, "rhs": rhs},
                    )
                )
    return rep


def square_cm_criterion(G: WeightedGraph, L: VwcLabeling) -> CriterionReport:
    """Equivalent to Cohen-Macaulayness of ``I(G_w)^2``."""
    return power_ell_criterion(G, L, 2)


# -- pendant-matched graphs --------------------------------------------------


def _matching(G: WeightedGraph, M: Optional[PendantMatching]) -> PendantMatching:
    if M is None:
        M = pendant_matching(G)
        if M is None:
            raise GraphError("graph has no perfect matching of pendant edges")
    elif not M.is_valid(G):
        raise GraphError(f"{M} is not a pendant perfect matching of {G}")
    return M


def pn_bound(G: WeightedGraph, M: Optional[PendantMatching] = None) -> Optional[int]:
    """Largest ``k`` with ``w(x_i y_i) >= k * w(x_i x_j)`` for every core edge.

    ``0`` when even ``k = 1`` fails; ``None`` when the core has no edges, in
    which case every ``k`` qualifies.
    """
    M = _matching(G, M)
    best = None
    xs = set(M.xs)
    for x, y in M.pairs:
        heavy = [G.weight(x, z) for z in G.neighbors(x) if z in xs]
        if not heavy:
            continue
        k = G.weight(x, y) // max(heavy)
        best = k if best is None else min(best, k)
    return best


def path3_parts(G: WeightedGraph) -> tuple[str, str, str, str]:
    """``(a, b, x, y)`` for the path ``x - a - b - y``."""
    if len(G.vertices) != 4 or G.num_edges() != 3 or not G.is_tree():
        raise GraphError("expected the path with edges ab, ax, by")
    inner = sorted((v for v in G.vertices if G.degree(v) == 2), key=G.vertices.index)
    if len(inner) != 2 or not G.has_edge(*inner):
        raise GraphError("expected the path with edges ab, ax, by")
    a, b = inner
    (x,) = G.neighbors(a) - {b}
    (y,) = G.neighbors(b) - {a}
    return a, b, x, y


def path3_all_n(G: WeightedGraph) -> CriterionReport:
    """``min(w(ax), w(by)) >= 2 w(ab)``: all powers are Cohen-Macaulay."""
    a, b, x, y = path3_parts(G)
    k, p, q = G.weight(a, b), G.weight(a, x), G.weight(b, y)
    rep = CriterionReport("path3")
    if min(p, q) < 2 * k:
        rep.violations.append(
            Violation(
                "min-pendant",
                ((a, x), (b, y), (a, b)),
                f"min(w({a}{x}), w({b}{y})) >= 2*w({a}{b})",
                {"p": p, "q": q, "k": k},
            )
        )
    return rep


def _star_conditions(G: WeightedGraph, M: PendantMatching, center: str, rep: CriterionReport) -> None:
    partner = dict(M.pairs)
    others = [x for x in M.xs if x != center]
    d = {x: G.weight(x, center) for x in others}
    m = {x: G.weight(x, partner[x]) for x in M.xs}
    if others and m[center] < 2 * max(d.values()):
        rep.violations.append(
            Violation(
                "1",
                ((center, partner[center]),),
                f"m({center}) >= 2*max d",
                {"m_center": m[center], "max_d": max(d.values()), "center": center},
            )
        )
    for xi, xk in permutations(others, 2):
        di, dk = d[xi], d[xk]
        if di == dk:
            if xi < xk:
                rep.violations.append(
                    Violation("2", ((xi, center), (xk, center)), "d_i != d_k", {"d_i": di, "d_k": dk})
                )
            continue
        if di > dk:
            continue
        c = ceil_div(dk, dk - di)
        if m[xi] < di * c:
            rep.violations.append(
                Violation(
                    "2a",
                    ((xi, partner[xi]), (xi, center), (xk, center)),
                    "m_i >= d_i*ceil(d_k/(d_k-d_i))",
                    {"m_i": m[xi], "d_i": di, "d_k": dk, "bound": di * c},
                )
            )
        bound_b = dk * max(2, c - 2)
        if m[xk] < bound_b:
            rep.violations.append(
                Violation(
                    "2b",
                    ((xk, partner[xk]), (xi, center), (xk, center)),
                    "m_k >= d_k*max(2, ceil(d_k/(d_k-d_i))-2)",
                    {"m_k": m[xk], "d_i": di, "d_k": dk, "bound": bound_b},
                )
            )


def star_all_n(G: WeightedGraph, M: Optional[PendantMatching] = None) -> CriterionReport:
    """Conditions under which every power is Cohen-Macaulay, for a star core.

    When the core is a single edge both ends are centers; the conditions are
    required for each choice.
    """
    M = _matching(G, M)
    if not G.is_tree():
        raise GraphError("star criterion needs a tree")
    T = core(G, M)
    if star_center(T) is None:
        raise GraphError("core is not a star")
    n = len(T.vertices)
    centers = [v for v in T.vertices if T.degree(v) == n - 1] if n > 1 else list(T.vertices)
    rep = CriterionReport("star-core")
    for c in centers:
        _star_conditions(G, M, c, rep)
    return rep


def complete_core_all_n(G: WeightedGraph, M: Optional[PendantMatching] = None) -> CriterionReport:
    """Complete core with unit core weights: all powers CM iff pendant weights >= 2."""
    M = _matching(G, M)
    if M.t < 2 or not G.is_connected():
        raise GraphError("complete-core criterion needs a connected graph with t >= 2")
    T = core(G, M)
    if not is_complete(T):
        raise GraphError("core is not complete")
    heavy = [(u, v, w) for u, v, w in T.edges() if w != 1]
    if heavy:
        raise GraphError(f"hypothesis needs unit core weights; got {heavy}")
    rep = CriterionReport("complete-core")
    for x, y in M.pairs:
        if G.weight(x, y) < 2:
            rep.violations.append(Violation("pendant>=2", ((x, y),), f"w({x}{y}) >= 2", {"w": G.weight(x, y)}))
    return rep


def tree_necessary(G: WeightedGraph, M: Optional[PendantMatching] = None) -> CriterionReport:
    """Necessary conditions for all powers of a weighted tree to be CM.

    A violation proves some power is not Cohen-Macaulay; holding proves
    nothing by itself.
    """
    if not G.is_tree():
        raise GraphError("tree criterion needs a tree")
    rep = CriterionReport("tree-necessary")
    if M is None:
        M = pendant_matching(G)
        if M is None:
            rep.violations.append(Violation("matching", (), "perfect matching of pendant edges", {}))
            return rep
    M = _matching(G, M)
    partner = dict(M.pairs)
    xs = set(M.xs)
    m = {x: G.weight(x, partner[x]) for x in M.xs}
    for u, v, w in core(G, M).edges():
        if 2 * w > min(m[u], m[v]):
            rep.violations.append(
                Violation("1", ((u, v),), "2*w_ij <= min(m_i, m_j)", {"w_ij": w, "m_i": m[u], "m_j": m[v]})
            )
    for xj in M.xs:
        nbrs = sorted(G.neighbors(xj) & xs)
        for xi, xk in permutations(nbrs, 2):
            wij, wjk = G.weight(xi, xj), G.weight(xj, xk)
            if wij == wjk:
                if xi < xk:
                    rep.violations.append(
                        Violation("2", ((xi, xj), (xj, xk)), "w_ij != w_jk", {"w_ij": wij, "w_jk": wjk})
                    )
                continue
            if wij > wjk:
                continue
            c = ceil_div(wjk, wjk - wij)
            if m[xi] < wij * c:
                rep.violations.append(
                    Violation(
                        "2a",
                        ((xi, partner[xi]), (xi, xj), (xj, xk)),
                        "m_i >= w_ij*ceil(w_jk/(w_jk-w_ij))",
                        {"m_i": m[xi], "w_ij": wij, "w_jk": wjk, "bound": wij * c},
                    )
                )
            bound_b = wjk * (c - 2)
            if m[xk] < bound_b:
                rep.violations.append(
                    Violation(
                        "2b",
                        ((xk, partner[xk]), (xi, xj), (xj, xk)),
                        "m_k >= w_jk*(ceil(w_jk/(w_jk-w_ij))-2)",
                        {"m_k": m[xk], "w_ij": wij, "w_jk": wjk, "bound": bound_b},
                    )
                )
            elif m[xk] < wjk * max(2, c - 2):
                rep.notes.append(
                    f"{xk}: m_k={m[xk]} meets the (2b) bound here but not the star form "
                    f"w_jk*max(2, ceil-2)={wjk * max(2, c - 2)}"
                )
    return rep


def pqr_parts(G: WeightedGraph) -> dict[str, int]:
    """Weights ``k, m, p, q, r`` of the tree ``x-a-b-c-z`` with leaf ``y`` on ``b``."""
    M = pendant_matching(G)
    if M is None or M.t != 3 or not G.is_tree():
        raise GraphError("expected the six-vertex tree with core path a-b-c")
    T = core(G, M)
    mid = [v for v in T.vertices if T.degree(v) == 2]
    if len(mid) != 1:
        raise GraphError("core is not a path on three vertices")
    b = mid[0]
    a, c = sorted(T.neighbors(b), key=G.vertices.index)
    partner = dict(M.pairs)
    return {
        "k": G.weight(a, b),
        "m": G.weight(b, c),
        "p": G.weight(a, partner[a]),
        "q": G.weight(b, partner[b]),
        "r": G.weight(c, partner[c]),
    }


def dif_nonCM_threshold(G: WeightedGraph) -> int:
    """Smallest integer ``n >= max(p, r)/m + 2``; powers from there on are not CM."""
    w = pqr_parts(G)
    if w["k"] != w["m"]:
        raise GraphError(f"hypothesis needs equal core weights, got {w['k']} and {w['m']}")
    return ceil_div(max(w["p"], w["r"]), w["m"]) + 2
