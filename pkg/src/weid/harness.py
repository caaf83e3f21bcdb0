"""Instance generators, oracle-vs-criteria sweeps and conjecture searches.

Every instance is checked against the theorems that apply to its family and
against a suite of metamorphic properties.  Reports are plain JSON-ready
dicts; with the same spec the serialized report is byte-identical.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, Optional

import networkx as nx

from .cm import DEFAULT_MONOMIAL_BUDGET, CmVerdict, depth_monomial, is_cm_reisner, spot_check_cap
from .complexes import BudgetExceeded
from .criteria import (
    complete_core_all_n,
    dif_nonCM_threshold,
    path3_all_n,
    pn_bound,
    power_ell_criterion,
    pqr_parts,
    star_all_n,
    tree_necessary,
)
from .decomposition import associated_primes, is_unmixed, primary_decomposition, symbolic_power
from .graphs import (
    GraphError,
    VwcLabeling,
    WeightedGraph,
    core,
    edge_ideal,
    find_vwc_labeling,
    is_complete,
    is_very_well_covered,
    minimal_vertex_covers,
    pendant_matching,
    star_center,
)
from .linalg import QQ, FieldConfig
from .monomial import MonomialIdeal, intersect, localize, power, radical

__all__ = [
    "FAMILIES",
    "SweepSpec",
    "SweepReport",
    "Oracles",
    "generate",
    "vwc_templates",
    "sweep",
    "search_conjecture",
]

FAMILIES = ("path3", "star-core", "complete-core", "tree", "vwc-enum")
METHODS = ("depth", "reisner", "both")


@dataclass(frozen=True)
class SweepSpec:
    family: str
    sizes: tuple[int, ...] = (3,)
    max_weight: int = 5
    max_power: int = 3
    method: str = "both"
    budget_monomials: int = DEFAULT_MONOMIAL_BUDGET
    budget_faces: int = 1 << 13
    seed: int = 0
    samples: int = 20
    field: FieldConfig = QQ
    select: str = "all"
    metamorphic: bool = True
    timings: bool = False
    spot_checks: int = 100  # exponent-cap samples per sweep, spread over the first instances

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.method not in METHODS:
            raise ValueError(f"unknown oracle method {self.method!r}")
        if self.select not in ("all", "hypothesis", "violated"):
            raise ValueError("select must be 'all', 'hypothesis' or 'violated'")
        if min(self.sizes, default=0) < 1 or self.max_weight < 1 or self.max_power < 1:
            raise ValueError("sizes and caps must be positive")
        if self.budget_monomials < 1 or self.budget_faces < 1 or self.samples < 1:
            raise ValueError("budgets must be positive")
        if self.spot_checks < 0:
            raise ValueError("spot_checks must be >= 0")

    def to_json(self) -> dict:
        d = asdict(self)
        d["sizes"] = list(self.sizes)
        d["field"] = str(self.field)
        return d


@dataclass
class SweepReport:
    spec: dict
    instances: list[dict] = field(default_factory=list)
    discrepancies: list[dict] = field(default_factory=list)
    budget_skips: list[dict] = field(default_factory=list)
    hits: list[dict] = field(default_factory=list)
    unconfirmed: list[dict] = field(default_factory=list)
    kind: str = "sweep"

    def check_counts(self) -> dict:
        counts: dict[str, dict[str, int]] = {}
        for rec in self.instances:
            for c in rec["checks"]:
                slot = counts.setdefault(c["check"], {"passed": 0, "failed": 0})
                slot["passed" if c["ok"] else "failed"] += 1
        return dict(sorted(counts.items()))

    def summary(self) -> dict:
        return {
            "instances": len(self.instances),
            "discrepancies": len(self.discrepancies),
            "budget_skips": len(self.budget_skips),
            "hits": len(self.hits),
            "unconfirmed": len(self.unconfirmed),
            "checks": self.check_counts(),
        }

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "spec": self.spec,
            "summary": self.summary(),
            "discrepancies": self.discrepancies,
            "hits": self.hits,
            "unconfirmed": self.unconfirmed,
            "budget_skips": self.budget_skips,
            "instances": self.instances,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


# -- generators ---------------------------------------------------------------


def _names(t: int) -> tuple[list[str], list[str]]:
    return [f"x{i}" for i in range(1, t + 1)], [f"y{i}" for i in range(1, t + 1)]


def _weightings(G: WeightedGraph, W: int) -> Iterator[WeightedGraph]:
    edges = [(u, v) for u, v, _ in G.edges()]
    for ws in itertools.product(range(1, W + 1), repeat=len(edges)):
        yield WeightedGraph(G.vertices, [(u, v, w) for (u, v), w in zip(edges, ws)])


def _path3(W: int) -> Iterator[WeightedGraph]:
    for k, p, q in itertools.product(range(1, W + 1), repeat=3):
        yield WeightedGraph("abxy", [("a", "b", k), ("a", "x", p), ("b", "y", q)])


def _star_core(t: int, W: int) -> Iterator[WeightedGraph]:
    xs, ys = _names(t)
    for d in itertools.product(range(1, W + 1), repeat=t - 1):
        for m in itertools.product(range(1, W + 1), repeat=t):
            edges = [(xs[i], xs[-1], d[i]) for i in range(t - 1)]
            edges += [(xs[i], ys[i], m[i]) for i in range(t)]
            yield WeightedGraph(xs + ys, edges)


def _complete_core(t: int, W: int) -> Iterator[WeightedGraph]:
    xs, ys = _names(t)
    core_edges = [(u, v, 1) for u, v in itertools.combinations(xs, 2)]
    for m in itertools.product(range(1, W + 1), repeat=t):
        yield WeightedGraph(xs + ys, core_edges + [(xs[i], ys[i], m[i]) for i in range(t)])


def _random_trees(t: int, W: int, count: int, rng: random.Random) -> Iterator[WeightedGraph]:
    xs, ys = _names(t)
    for _ in range(count):
        if t >= 3:
            T = nx.from_prufer_sequence([rng.randrange(t) for _ in range(t - 2)])
            core_edges = sorted(tuple(sorted(e)) for e in T.edges())
        else:
            core_edges = [(0, 1)] if t == 2 else []
        edges = [(xs[i], xs[j], rng.randint(1, W)) for i, j in core_edges]
        edges += [(xs[i], ys[i], rng.randint(1, W)) for i in range(t)]
        yield WeightedGraph(xs + ys, edges)


def vwc_templates(t: int) -> list[tuple[WeightedGraph, VwcLabeling]]:
    """Unweighted very well-covered graphs with a (*) labeling on ``2t`` vertices.

    One representative per isomorphism class.  Every such graph, relabeled
    along its labeling, has edges ``x_i y_i`` plus some ``x_i x_j`` and some
    ``x_i y_j`` with ``i < j``, so those candidate sets are enumerated.
    """
    xs, ys = _names(t)
    base = [(xs[i], ys[i]) for i in range(t)]
    optional = [(xs[i], xs[j]) for i, j in itertools.combinations(range(t), 2)]
    optional += [(xs[i], ys[j]) for i, j in itertools.combinations(range(t), 2)]
    L = VwcLabeling(tuple(zip(xs, ys)))
    reps: list[tuple[WeightedGraph, VwcLabeling]] = []
    graphs: list[nx.Graph] = []
    for bits in range(1 << len(optional)):
        edges = base + [optional[i] for i in range(len(optional)) if bits >> i & 1]
        G = WeightedGraph(xs + ys, edges)
        if not L.is_valid(G) or not is_very_well_covered(G):
            continue
        H = G.to_networkx()
        if any(H.number_of_edges() == K.number_of_edges() and nx.is_isomorphic(H, K) for K in graphs):
            continue
        graphs.append(H)
        reps.append((G, L))
    return reps


def generate(family: str, t: int, max_weight: int, seed: int = 0, samples: int = 20) -> Iterator[WeightedGraph]:
    """Deterministic stream of weighted graphs of ``family`` with size parameter ``t``.

    ``t`` is ignored for ``path3``.  ``samples`` is the number of random
    trees; the other families are enumerated exhaustively.
    """
    W = max_weight
    if family == "path3":
        yield from _path3(W)
    elif family == "star-core":
        yield from _star_core(t, W)
    elif family == "complete-core":
        yield from _complete_core(t, W)
    elif family == "tree":
        yield from _random_trees(t, W, samples, random.Random(f"{seed}:{t}"))
    elif family == "vwc-enum":
        for G, _ in vwc_templates(t):
            yield from _weightings(G, W)
    else:
        raise ValueError(f"unknown family {family!r}")


# -- oracles --------------------------------------------------------------------


class Oracles:
    """Memoized CM and unmixedness verdicts for one sweep."""

    def __init__(self, spec: SweepSpec):
        self.spec = spec
        self._depth: dict[MonomialIdeal, object] = {}
        self._reisner: dict[MonomialIdeal, object] = {}
        self._unmixed: dict[MonomialIdeal, bool] = {}

    def depth(self, I: MonomialIdeal) -> Optional[CmVerdict]:
        if I not in self._depth:
            try:
                self._depth[I] = depth_monomial(
                    I, self.spec.field, self.spec.budget_monomials, spot_checks=0
                )
            except BudgetExceeded as exc:
                self._depth[I] = exc
        v = self._depth[I]
        return None if isinstance(v, BudgetExceeded) else v

    def reisner(self, I: MonomialIdeal, budget: Optional[int] = None) -> Optional[CmVerdict]:
        budget = budget or self.spec.budget_faces
        key = (I, budget)
        if key not in self._reisner:
            try:
                self._reisner[key] = is_cm_reisner(I, self.spec.field, budget)
            except BudgetExceeded as exc:
                self._reisner[key] = exc
        v = self._reisner[key]
        return None if isinstance(v, BudgetExceeded) else v

    def cm(self, I: MonomialIdeal) -> Optional[bool]:
        """Verdict of the cheapest allowed oracle; ``None`` if over budget."""
        if self.spec.method != "reisner":
            v = self.depth(I)
            if v is not None:
                return v.is_cm
        if self.spec.method != "depth":
            v = self.reisner(I)
            if v is not None:
                return v.is_cm
        return None

    def unmixed(self, I: MonomialIdeal) -> bool:
        if I not in self._unmixed:
            self._unmixed[I] = is_unmixed(I)
        return self._unmixed[I]


def _verdict_json(v: Optional[CmVerdict]) -> Optional[dict]:
    if v is None:
        return None
    return {"is_cm": v.is_cm, "depth": v.depth, "dim": v.dim}


# -- per-instance evaluation ------------------------------------------------------


class _Instance:
    def __init__(self, index: int, G: WeightedGraph, spec: SweepSpec, oracles: Oracles):
        self.index = index
        self.G = G
        self.spec = spec
        self.o = oracles
        self.I = edge_ideal(G)
        self.labeling = find_vwc_labeling(G) if len(G.vertices) <= 16 else None
        self.matching = pendant_matching(G)
        self.powers = {n: power(self.I, n) for n in range(1, spec.max_power + 1)}
        self.checks: list[dict] = []
        self.budget: list[dict] = []
        self.criteria: dict[str, dict] = {}
        self.oracle_rows: list[dict] = []
        self._cm: dict[int, Optional[bool]] = {}

    # verdict helpers
    def cm(self, n: int) -> Optional[bool]:
        return self._cm.get(n)

    def check(self, name: str, ok: bool, **detail) -> None:
        self.checks.append({"check": name, "ok": bool(ok), **({"detail": detail} if detail else {})})

    def run_oracles(self) -> None:
        for n, J in self.powers.items():
            row: dict = {"n": n}
            d = r = None
            if self.spec.method in ("depth", "both"):
                d = self.o.depth(J)
                row["depth"] = _verdict_json(d)
                if d is None:
                    self.budget.append({"n": n, "oracle": "depth"})
            if self.spec.method in ("reisner", "both"):
                r = self.o.reisner(J)
                row["reisner"] = _verdict_json(r)
                if r is None and self.spec.method == "reisner":
                    self.budget.append({"n": n, "oracle": "reisner"})
            if d is not None and r is not None:
                row["agree"] = d.is_cm == r.is_cm
                self.check("oracle-agreement", row["agree"], n=n)
            verdict = d if d is not None else r
            self._cm[n] = None if verdict is None else verdict.is_cm
            row["unmixed"] = self.o.unmixed(J)
            self.oracle_rows.append(row)
            if d is not None:
                self.check("depth-le-dim", d.depth <= d.dim, n=n)
            if self._cm[n]:
                self.check("cm-unmixed", row["unmixed"], n=n)
                rad = self.o.cm(radical(J))
                if rad is not None:
                    self.check("cm-radical", rad, n=n)

    def spot_check(self, samples: int) -> None:
        """Compare sqrt(I^n : f) at f, its cap and its threshold representative."""
        n = max(self.powers)
        bad = spot_check_cap(self.powers[n], samples, seed=self.spec.seed * 7919 + self.index)
        self.check("exponent-cap", bad == 0, n=n, samples=samples, bad=bad)

    def known(self, ns) -> bool:
        return all(self.cm(n) is not None for n in ns)

    # theorem checks
    def theorems(self, family: str) -> None:
        N = self.spec.max_power
        ns = range(1, N + 1)
        G = self.G
        if family == "path3":
            rep = path3_all_n(G)
            self.criteria["path3"] = rep.to_json()
            if self.known(ns):
                if rep.holds:
                    self.check("path3", all(self.cm(n) for n in ns))
                elif N >= 2:
                    self.check("path3", any(not self.cm(n) for n in range(2, N + 1)))
        if self.labeling is not None:
            self.criteria["labeling"] = self.labeling.to_json()
            rep2 = power_ell_criterion(G, self.labeling, 2)
            self.criteria["square-cm"] = rep2.to_json()
            if N >= 2 and self.cm(2) is not None:
                self.check("square-cm", rep2.holds == self.cm(2))
            for ell in ns:
                rep_l = power_ell_criterion(G, self.labeling, ell)
                if ell == 1 and self.cm(1) is not None:
                    self.check("powers-up-to-ell", rep_l.holds == self.cm(1), ell=1)
                elif rep_l.holds and self.known(range(1, ell + 1)):
                    self.check("powers-up-to-ell", all(self.cm(n) for n in range(1, ell + 1)), ell=ell)
        M = self.matching
        if M is None:
            return
        self.criteria["matching"] = M.to_json()
        k = pn_bound(G, M)
        self.criteria["pn_bound"] = k
        upto = N if k is None else min(k, N)
        if upto >= 1 and self.known(range(1, upto + 1)):
            self.check("pendant-bound", all(self.cm(n) for n in range(1, upto + 1)), k=k)
        T = core(G, M)
        if M.t >= 2 and is_complete(T) and G.is_connected() and all(w == 1 for _, _, w in T.edges()):
            rep = complete_core_all_n(G, M)
            self.criteria["complete-core"] = rep.to_json()
            if rep.holds and self.known(ns):
                self.check("complete-core", all(self.cm(n) for n in ns))
            if not rep.holds and N >= 2 and self.cm(2) is not None:
                self.check("complete-core", not self.cm(2), n=2)
        if not G.is_tree():
            return
        rep = tree_necessary(G, M)
        self.criteria["tree-necessary"] = rep.to_json()
        if star_center(core(G, M)) is not None:
            rep = star_all_n(G, M)
            self.criteria["star-core"] = rep.to_json()
            if rep.holds:
                if self.known(ns):
                    self.check("star-core", all(self.cm(n) for n in ns))
                self.check("star-unmixed", all(self.o.unmixed(J) for J in self.powers.values()))
        try:
            w = pqr_parts(G)
        except GraphError:
            return
        if w["k"] == w["m"]:
            n0 = dif_nonCM_threshold(G)
            self.criteria["equal-core-weights"] = n0
            tested = [n for n in range(n0, N + 1) if self.cm(n) is not None]
            if tested:
                self.check("equal-core-weights", not any(self.cm(n) for n in tested), n0=n0)

    # structural checks
    def decomposition(self) -> None:
        for n, J in self.powers.items():
            try:
                D = primary_decomposition(J)
                ok = intersect(*(c.ideal for c in D.components)) == J
            except AssertionError as exc:
                self.check("decomposition", False, n=n, error=str(exc))
                continue
            self.check("decomposition", ok, n=n)
            if self.o.unmixed(J) and self.o.unmixed(self.I):
                self.check("symbolic", symbolic_power(self.I, n) == J, n=n)
        covers = set(minimal_vertex_covers(self.G))
        self.check("ass-covers", associated_primes(radical(self.I)) == covers)

    def metamorphic(self) -> None:
        G = self.G
        o = self.o
        leaves = G.leaves()
        pendants = sorted(
            {(next(iter(G.neighbors(y))), y) for y in leaves},
            key=lambda e: (G.vertices.index(e[0]), G.vertices.index(e[1])),
        )
        for n, J in self.powers.items():
            unmixed = o.unmixed(J)
            cm = self.cm(n)
            for x, y in pendants:
                if unmixed:
                    self.check("pendant-heaviest", all(G.weight(x, y) >= G.weight(x, z) for z in G.neighbors(x)), n=n, edge=[x, y])
                H = G.delete([x])
                if not H.num_edges():
                    continue
                K = power(edge_ideal(H), n)
                if unmixed:
                    self.check("unmixed-after-deletion", o.unmixed(K), n=n, deleted=x)
                if cm:
                    sub = o.cm(K)
                    if sub is not None:
                        self.check("cm-after-deletion", sub, n=n, deleted=x)
            if cm:
                for v in G.vertices:
                    K = localize(J, [v])
                    if K.is_unit():
                        continue
                    sub = o.cm(K)
                    if sub is not None:
                        self.check("localization", sub, n=n, at=v)
        L = self.labeling
        if L is not None and 2 in self.powers and self.o.unmixed(self.powers[2]):
            for x, y in L.pairs:
                H = G.delete([x, y])
                if H.num_edges():
                    self.check("unmixed-after-pair-deletion", o.unmixed(power(edge_ideal(H), 2)), removed=[x, y])

    def record(self) -> dict:
        return {
            "index": self.index,
            "graph": self.G.to_json(),
            "criteria": self.criteria,
            "oracle": self.oracle_rows,
            "checks": self.checks,
            **({"budget": self.budget} if self.budget else {}),
        }


def _hypothesis_holds(family: str, G: WeightedGraph) -> bool:
    if family == "path3":
        return path3_all_n(G).holds
    if family == "star-core":
        return star_all_n(G).holds
    if family == "complete-core":
        return complete_core_all_n(G).holds
    if family == "tree":
        return tree_necessary(G).holds
    L = find_vwc_labeling(G)
    return L is not None and power_ell_criterion(G, L, 2).holds


def _instances(spec: SweepSpec) -> Iterator[WeightedGraph]:
    sizes = (0,) if spec.family == "path3" else spec.sizes
    for t in sizes:
        for G in generate(spec.family, t, spec.max_weight, spec.seed, spec.samples):
            if spec.select != "all":
                wanted = spec.select == "hypothesis"
                if _hypothesis_holds(spec.family, G) != wanted:
                    continue
            yield G


def _discrepancy(inst: _Instance, check: dict) -> dict:
    transcripts = []
    for n, J in inst.powers.items():
        transcripts.append(
            {
                "n": n,
                "depth": _verdict_json(inst.o.depth(J)),
                "reisner": _verdict_json(inst.o.reisner(J)),
            }
        )
    return {"index": inst.index, "check": check, "graph": inst.G.to_json(), "transcripts": transcripts}


def sweep(
    spec: SweepSpec,
    progress: Optional[Callable[[int, dict], None]] = None,
    oracles: Optional[Oracles] = None,
) -> SweepReport:
    """Run every applicable criterion, both oracles and the metamorphic suite."""
    report = SweepReport(spec.to_json())
    o = oracles or Oracles(spec)
    spots = spec.spot_checks
    for index, G in enumerate(_instances(spec)):
        start = time.perf_counter()
        inst = _Instance(index, G, spec, o)
        inst.run_oracles()
        if spots:
            inst.spot_check(min(spots, 10))
            spots -= min(spots, 10)
        inst.theorems(spec.family)
        inst.decomposition()
        if spec.metamorphic:
            inst.metamorphic()
        rec = inst.record()
        if spec.timings:
            rec["seconds"] = round(time.perf_counter() - start, 4)
        report.instances.append(rec)
        for c in inst.checks:
            if not c["ok"]:
                report.discrepancies.append(_discrepancy(inst, c))
        for b in inst.budget:
            report.budget_skips.append({"index": index, **b})
        if progress is not None:
            progress(index, rec)
    return report


# -- conjecture searches ------------------------------------------------------------


def _double_check(o: Oracles, J: MonomialIdeal) -> Optional[dict]:
    """Both oracles' verdicts on ``J``, with a generous face budget; ``None`` unless they agree."""
    d = o.depth(J)
    r = o.reisner(J, budget=max(o.spec.budget_faces, 1 << 20))
    if d is None or r is None or d.is_cm != r.is_cm:
        return None
    return {"depth": _verdict_json(d), "reisner": _verdict_json(r)}


def search_conjecture(which: str, spec: SweepSpec) -> SweepReport:
    """Hunt counterexamples to one of the two open conjectures.

    ``vwc-square``: for very well-covered ``G``, ``I^2`` CM and ``I^n``
    unmixed should force ``I^n`` CM.  ``tree-converse``: trees meeting the
    necessary conditions should have all powers CM.  Candidate hits are
    reported only when both oracles confirm every verdict involved; the
    rest go to ``unconfirmed``.
    """
    if which not in ("vwc-square", "tree-converse"):
        raise ValueError(f"unknown conjecture {which!r}")
    report = SweepReport(spec.to_json(), kind=f"search:{which}")
    o = Oracles(spec)
    N = spec.max_power
    for index, G in enumerate(_instances(spec)):
        I = edge_ideal(G)
        rec: dict = {"index": index, "graph": G.to_json(), "checks": []}
        candidates: list[tuple[str, list[int]]] = []
        if which == "vwc-square":
            if G.isolated() or find_vwc_labeling(G) is None:
                report.instances.append(rec)
                continue
            J2 = power(I, 2)
            sq = o.cm(J2)
            for n in range(2, N + 1):
                Jn = power(I, n)
                cm_n = o.cm(Jn)
                if sq is None or cm_n is None:
                    report.budget_skips.append({"index": index, "n": n})
                    continue
                ok = (sq and o.unmixed(Jn)) == cm_n
                rec["checks"].append({"check": "vwc-square", "ok": ok, "detail": {"n": n}})
                if not ok:
                    candidates.append((f"n={n}", sorted({2, n})))
        else:
            if not G.is_tree() or not tree_necessary(G).holds:
                report.instances.append(rec)
                continue
            for n in range(1, N + 1):
                cm_n = o.cm(power(I, n))
                if cm_n is None:
                    report.budget_skips.append({"index": index, "n": n})
                    continue
                rec["checks"].append({"check": "tree-converse", "ok": cm_n, "detail": {"n": n}})
                if not cm_n:
                    candidates.append((f"n={n}", [n]))
        report.instances.append(rec)
        for label, ns in candidates:
            certs = {n: _double_check(o, power(I, n)) for n in ns}
            entry = {
                "index": index,
                "where": label,
                "graph": G.to_json(),
                "certificates": {str(n): c for n, c in certs.items()},
            }
            if all(c is not None for c in certs.values()):
                report.hits.append(entry)
            else:
                report.unconfirmed.append(entry)
    return report
