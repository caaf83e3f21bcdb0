"""Two independent Cohen-Macaulay oracles for monomial ideals.

``is_cm_reisner`` polarizes the ideal and applies Reisner's criterion to the
Stanley-Reisner complex of the polarization.  ``depth_monomial`` evaluates
Hochster's formula ``depth R/I = min depth R/sqrt(I : f)`` over monomials
``f`` outside ``I`` and computes each squarefree depth from local
cohomology of links.

Exponent cap for ``depth_monomial``.  ``I : f`` only sees ``min(f_x, e_x)``
where ``e_x`` is the largest exponent of ``x`` among the minimal generators,
so exponents above ``e_x`` add nothing.  Moreover ``sqrt(I : f)`` only
depends, for every generator ``g``, on which variables satisfy
``g_x > f_x``; two values of ``f_x`` lying between the same consecutive
distinct values of ``g_x`` give the same radical.  It is therefore enough to
let ``f_x`` range over ``{0} | {g_x : g in G(I)}``.  ``f`` lies in ``I``
exactly when some generator has no such variable, i.e. when the colon is
the unit ideal, so the membership filter is computed from the same data.
``spot_check_cap`` re-verifies both reductions on random monomials with the
plain ``colon``/``radical`` routines.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .complexes import (
    DEFAULT_FACE_BUDGET,
    BudgetExceeded,
    SimplicialComplex,
    homology_from_signature,
    link_signature,
    minimal_masks,
    popcount,
)
from .decomposition import DecompositionError, dim_quotient
from .linalg import QQ, FieldConfig
from .monomial import Monomial, MonomialIdeal, colon, radical

__all__ = [
    "CmVerdict",
    "DEFAULT_MONOMIAL_BUDGET",
    "polarize",
    "stanley_reisner",
    "is_cm_complex",
    "is_cm_reisner",
    "depth_squarefree",
    "depth_by_skeletons",
    "depth_monomial",
    "spot_check_cap",
]

DEFAULT_MONOMIAL_BUDGET = 1 << 22
_CHUNK_ROWS = 1 << 14


@dataclass
class CmVerdict:
    is_cm: bool
    depth: Optional[int]
    dim: int
    method: str
    witness: Optional[Monomial] = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "is_cm": self.is_cm,
            "depth": self.depth,
            "dim": self.dim,
            "witness": None if self.witness is None else self.witness.exponents,
            "method": self.method,
            **({"detail": self.detail} if self.detail else {}),
        }


def _require_proper(I: MonomialIdeal) -> None:
    if I.is_zero() or I.is_unit():
        raise DecompositionError("CM tests need a proper nonzero ideal")


# -- polarization and Stanley-Reisner ---------------------------------------


def polarize(I: MonomialIdeal) -> MonomialIdeal:
    """Standard polarization: ``x^a`` becomes ``x_1 x_2 ... x_a``."""
    if I.is_zero():
        raise ValueError("cannot polarize the zero ideal")
    caps = I.max_exponents()
    names: list[str] = []
    offset: list[int] = []
    for v, e in zip(I.variables, caps):
        offset.append(len(names))
        names.extend(f"{v}_{j}" for j in range(1, e + 1))
    if len(set(names)) != len(names):
        raise ValueError("polarized variable names collide; rename the ring variables")
    N = len(names)
    gens = []
    for g in I.gens:
        vec = [0] * N
        for i, e in enumerate(g):
            for j in range(e):
                vec[offset[i] + j] = 1
        gens.append(tuple(vec))
    return MonomialIdeal(names, gens, _minimal=True)


def _squarefree_masks(J: MonomialIdeal) -> list[int]:
    out = []
    for g in J.gens:
        m = 0
        for i, e in enumerate(g):
            if e > 1:
                raise ValueError(f"{J} is not squarefree")
            if e:
                m |= 1 << i
        out.append(m)
    return out


def stanley_reisner(J: MonomialIdeal) -> SimplicialComplex:
    """Complex whose minimal nonfaces are the supports of the generators of ``J``."""
    if J.is_unit():
        raise ValueError("the unit ideal has no Stanley-Reisner complex")
    if J.is_zero():
        return SimplicialComplex(J.variables, [])
    return SimplicialComplex(J.variables, _squarefree_masks(J))


# -- Reisner -------------------------------------------------------------------


def is_cm_complex(
    delta: SimplicialComplex, field: FieldConfig = QQ, budget: int = DEFAULT_FACE_BUDGET
) -> tuple[bool, dict]:
    """Reisner's criterion; returns the verdict and, on failure, the failing face."""
    faces = delta.faces(budget)
    facet_dims = {popcount(f) - 1 for f in delta.facets(budget)}
    if len(facet_dims) > 1:
        return False, {"reason": "not pure", "facet_dims": sorted(facet_dims)}
    top_dim = facet_dims.pop()
    for f in sorted(faces, key=lambda m: (popcount(m), m)):
        sig = link_signature(delta, f)
        if sig is None:
            continue
        h = homology_from_signature(sig, field, budget)
        top = top_dim - popcount(f)  # dim lk F in a pure complex
        bad = [i - 1 for i, r in enumerate(h) if r and i - 1 < top]
        if bad:
            return False, {
                "reason": "link homology",
                "face": sorted(delta.as_sets(f)),
                "degrees": bad,
            }
    return True, {}


def is_cm_reisner(
    I: MonomialIdeal, field: FieldConfig = QQ, budget_faces: int = DEFAULT_FACE_BUDGET
) -> CmVerdict:
    _require_proper(I)
    dim = dim_quotient(I)
    delta = stanley_reisner(polarize(I))
    ok, detail = is_cm_complex(delta, field, budget_faces)
    return CmVerdict(ok, dim if ok else None, dim, "reisner", None, detail)


# -- squarefree depth -------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _depth_masks(n: int, masks: frozenset[int], field: FieldConfig, budget: int) -> int:
    """depth of R/J, R on ``n`` variables, J generated by the squarefree ``masks``.

    Uses the local cohomology form of Hochster's formula:
    ``depth = min{|F| + 1 + j : F a face, H~_j(lk F) != 0}``.
    """
    delta = SimplicialComplex([str(i) for i in range(n)], masks)
    cone = delta.cone_vertices()
    if cone:
        keep = [v for v in range(n) if not cone >> v & 1]
        pos = {v: i for i, v in enumerate(keep)}
        inner = frozenset(sum(1 << pos[v] for v in range(n) if m >> v & 1) for m in masks)
        return popcount(cone) + _depth_masks(len(keep), inner, field, budget)
    best = None
    for f in sorted(delta.faces(budget), key=lambda m: (popcount(m), m)):
        sig = link_signature(delta, f)
        if sig is None:
            continue
        h = homology_from_signature(sig, field, budget)
        for i, r in enumerate(h):
            if r:
                d = popcount(f) + i  # |F| + 1 + j with j = i - 1
                if best is None or d < best:
                    best = d
                break
    assert best is not None, "a complex without cone points has nonzero local cohomology"
    return best


def depth_squarefree(J: MonomialIdeal, field: FieldConfig = QQ, budget: int = DEFAULT_FACE_BUDGET) -> int:
    """depth of ``R/J`` for a squarefree proper ideal ``J``."""
    if J.is_unit():
        raise ValueError("depth of the zero ring is undefined")
    if J.is_zero():
        return J.nvars
    return _depth_masks(J.nvars, frozenset(_squarefree_masks(J)), field, budget)


def depth_by_skeletons(J: MonomialIdeal, field: FieldConfig = QQ, budget: int = DEFAULT_FACE_BUDGET) -> int:
    """``1 + max{i : the i-skeleton is CM}``; slower, kept as a cross-check."""
    delta = stanley_reisner(J)
    d = delta.dim(budget)
    best = 0  # the (-1)-skeleton {empty face} is CM
    for i in range(0, d + 1):
        if is_cm_complex(delta.skeleton(i) if i < d else delta, field, budget)[0]:
            best = i + 1
    return best


# -- Hochster enumeration ---------------------------------------------------


def _candidate_values(I: MonomialIdeal) -> list[list[int]]:
    cols = list(zip(*I.gens))
    return [sorted({0, *col}) for col in cols]


def _radical_key(masks) -> frozenset[int]:
    return minimal_masks(int(m) for m in masks)


def _minimal_rows(rows: np.ndarray) -> np.ndarray:
    """Row-wise minimalization of sorted mask rows; dropped entries become 0.

    The result is re-sorted so that rows with the same minimal family coincide.
    """
    out = rows.copy()
    out[:, 1:][out[:, 1:] == out[:, :-1]] = 0
    g = rows.shape[1]
    step = max(1, (1 << 22) // max(1, g * g))
    for s in range(0, len(rows), step):
        blk = out[s : s + step]
        a = blk[:, :, None]  # candidate to drop
        b = blk[:, None, :]  # possible proper subset
        below = ((b & ~a) == 0) & (b != a) & (b != 0)
        blk[below.any(axis=2)] = 0
    out.sort(axis=1)
    return out


def _enumerate_python(I: MonomialIdeal, reps: list[list[int]]):
    gens = I.sorted_gens()
    seen: dict[frozenset[int], tuple[int, ...]] = {}
    for f in itertools.product(*reps):
        masks = []
        for g in gens:
            m = 0
            for i, (a, b) in enumerate(zip(g, f)):
                if a > b:
                    m |= 1 << i
            if m == 0:
                break
            masks.append(m)
        else:
            key = _radical_key(masks)
            seen.setdefault(key, f)
    return seen


def _enumerate_numpy(I: MonomialIdeal, reps: list[list[int]]):
    gens = I.sorted_gens()
    n = I.nvars
    G = np.array(gens, dtype=np.int64)
    contrib = []
    for x in range(n):
        r = np.array(reps[x], dtype=np.int64)
        contrib.append((G[None, :, x] > r[:, None]).astype(np.int64) << x)

    # inner block: trailing variables, broadcast together
    split = n
    rows = 1
    while split > 0 and rows * len(reps[split - 1]) <= _CHUNK_ROWS:
        split -= 1
        rows *= len(reps[split])
    if split == n:  # a single variable is already too wide; still use it alone
        split = n - 1
    inner = contrib[n - 1]
    for x in range(n - 2, split - 1, -1):
        inner = (contrib[x][:, None, :] | inner[None, :, :]).reshape(-1, len(gens))
    inner_shape = [len(reps[x]) for x in range(split, n)]

    seen: dict[frozenset[int], tuple[int, ...]] = {}
    for outer in itertools.product(*(range(len(reps[x])) for x in range(split))):
        om = np.zeros(len(gens), dtype=np.int64)
        for x, k in enumerate(outer):
            om |= contrib[x][k]
        block = inner | om
        valid = np.flatnonzero((block != 0).all(axis=1))
        if valid.size == 0:
            continue
        sub = np.sort(block[valid], axis=1)
        uniq, first = np.unique(sub, axis=0, return_index=True)
        keys, first_key = np.unique(_minimal_rows(uniq), axis=0, return_index=True)
        for row, idx in zip(keys, first[first_key]):
            key = frozenset(int(m) for m in row if m)
            if key in seen:
                continue
            inner_idx = np.unravel_index(int(valid[idx]), inner_shape) if inner_shape else ()
            f = tuple(reps[x][k] for x, k in enumerate(outer)) + tuple(
                reps[split + j][int(k)] for j, k in enumerate(inner_idx)
            )
            seen[key] = f
    return seen


def spot_check_cap(I: MonomialIdeal, samples: int = 100, seed: int = 0) -> int:
    """Count monomials where the capped/threshold representative changes ``sqrt(I : f)``."""
    rng = random.Random(seed)
    caps = I.max_exponents()
    reps = _candidate_values(I)
    bad = 0
    for _ in range(samples):
        f = tuple(rng.randint(0, c + 1) for c in caps)
        rep = tuple(max(v for v in r if v <= e) for r, e in zip(reps, f))
        capped = tuple(min(e, c) for e, c in zip(f, caps))
        mon = lambda v: Monomial.from_vector(I.variables, v)
        want = radical(colon(I, mon(f)))
        if radical(colon(I, mon(rep))) != want or radical(colon(I, mon(capped))) != want:
            bad += 1
    return bad


def depth_monomial(
    I: MonomialIdeal,
    field: FieldConfig = QQ,
    budget_monomials: int = DEFAULT_MONOMIAL_BUDGET,
    spot_checks: int = 100,
    seed: int = 0,
) -> CmVerdict:
    """Depth of ``R/I`` by Hochster's formula over colon radicals."""
    _require_proper(I)
    dim = dim_quotient(I)
    reps = _candidate_values(I)
    count = math.prod(len(r) for r in reps)
    volume = math.prod(c + 1 for c in I.max_exponents())
    if count > budget_monomials:
        raise BudgetExceeded(
            f"{count} candidate monomials (exponent-cap volume {volume}) exceed budget {budget_monomials}"
        )
    if spot_checks:
        bad = spot_check_cap(I, spot_checks, seed)
        if bad:
            raise AssertionError(f"exponent cap changed sqrt(I:f) on {bad} samples")
    fits = I.nvars <= 62 and all(c < (1 << 62) for c in I.max_exponents())
    seen = _enumerate_numpy(I, reps) if fits else _enumerate_python(I, reps)
    best = None
    witness = None
    for key, f in sorted(seen.items(), key=lambda kv: kv[1]):
        d = _depth_masks(I.nvars, key, field, DEFAULT_FACE_BUDGET)
        if best is None or d < best:
            best, witness = d, f
    assert best is not None  # f = 1 is never in a proper ideal
    is_cm = best == dim
    return CmVerdict(
        is_cm,
        best,
        dim,
        "depth",
        None if is_cm else Monomial.from_vector(I.variables, witness),
        {"candidates": count, "cap_volume": volume, "distinct_radicals": len(seen)},
    )
