"""Simplicial complexes given by minimal nonfaces, and their reduced homology.

Faces are bit masks over the vertex list.  A set is a face iff it contains
no minimal nonface.  Singleton nonfaces are allowed: such a vertex simply
never appears in a face (this is how a variable lying in a squarefree ideal
shows up in its Stanley-Reisner complex).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .linalg import QQ, FieldConfig, rank

__all__ = [
    "BudgetExceeded",
    "SimplicialComplex",
    "DEFAULT_FACE_BUDGET",
    "minimal_masks",
    "popcount",
    "reduced_homology_ranks",
    "link",
    "link_signature",
    "homology_from_signature",
]

DEFAULT_FACE_BUDGET = 1 << 24


class BudgetExceeded(RuntimeError):
    """A resource budget (faces, candidate monomials) was exceeded."""


def popcount(m: int) -> int:
    return bin(m).count("1")


def minimal_masks(masks: Iterable[int]) -> frozenset[int]:
    """Inclusion-minimal members of a family of bit masks."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda m: (popcount(m), m)):
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return frozenset(kept)


def _bits(m: int) -> list[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


class SimplicialComplex:
    """Complex on ``vertices`` described by its minimal nonfaces (as masks)."""

    __slots__ = ("vertices", "nonfaces", "_faces")

    def __init__(self, vertices: Sequence[str], nonfaces: Iterable[int | Iterable[str]]):
        self.vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(self.vertices)}
        masks = []
        for nf in nonfaces:
            if isinstance(nf, int):
                m = nf
            else:
                m = 0
                for v in nf:
                    m |= 1 << index[v]
            if m == 0:
                raise ValueError("the empty set cannot be a nonface")
            masks.append(m)
        self.nonfaces = minimal_masks(masks)
        self._faces: list[int] | None = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    def is_face(self, mask: int) -> bool:
        return not any(nf & ~mask == 0 for nf in self.nonfaces)

    def as_sets(self, mask: int) -> frozenset[str]:
        return frozenset(self.vertices[i] for i in _bits(mask))

    def faces(self, budget: int = DEFAULT_FACE_BUDGET) -> list[int]:
        """All faces (including the empty face), by backtracking over vertices."""
        if self._faces is None:
            self._faces = list(self._iter_faces(budget))
        elif len(self._faces) > budget:
            raise BudgetExceeded(f"complex has {len(self._faces)} faces, budget {budget}")
        return self._faces

    def _iter_faces(self, budget: int) -> Iterator[int]:
        by_top: dict[int, list[int]] = {}
        for nf in self.nonfaces:
            by_top.setdefault(nf.bit_length() - 1, []).append(nf)
        count = 0
        stack = [(0, 0)]
        while stack:
            mask, start = stack.pop()
            count += 1
            if count > budget:
                raise BudgetExceeded(f"complex has more than {budget} faces")
            yield mask
            for v in range(start, self.n):
                new = mask | (1 << v)
                if all(nf & ~new for nf in by_top.get(v, ())):
                    stack.append((new, v + 1))

    def facets(self, budget: int = DEFAULT_FACE_BUDGET) -> list[int]:
        faces = self.faces(budget)
        face_set = set(faces)
        out = []
        for f in faces:
            if not any((f | (1 << v)) in face_set for v in range(self.n) if not f >> v & 1):
                out.append(f)
        return out

    def dim(self, budget: int = DEFAULT_FACE_BUDGET) -> int:
        return max(popcount(f) for f in self.faces(budget)) - 1

    def cone_vertices(self) -> int:
        """Mask of vertices that lie in no minimal nonface."""
        used = 0
        for nf in self.nonfaces:
            used |= nf
        return ((1 << self.n) - 1) & ~used

    def skeleton(self, i: int) -> "SimplicialComplex":
        """The ``i``-skeleton: add every ``(i+2)``-subset that is still a face."""
        extra = [f for f in self.faces() if popcount(f) == i + 2]
        return SimplicialComplex(self.vertices, list(self.nonfaces) + extra)

    def __repr__(self) -> str:
        nf = sorted(sorted(self.as_sets(m)) for m in self.nonfaces)
        return f"SimplicialComplex(vertices={list(self.vertices)}, minimal_nonfaces={nf})"


def link(delta: SimplicialComplex, face: int) -> SimplicialComplex:
    """Link of ``face``, re-indexed on its own vertex set."""
    verts = [v for v in range(delta.n) if not face >> v & 1 and delta.is_face(face | (1 << v))]
    pos = {v: i for i, v in enumerate(verts)}
    allowed = 0
    for v in verts:
        allowed |= 1 << v
    nonfaces = []
    for nf in delta.nonfaces:
        rest = nf & ~face
        if rest & ~allowed == 0:
            nonfaces.append(sum(1 << pos[v] for v in _bits(rest)))
    return SimplicialComplex([delta.vertices[v] for v in verts], nonfaces)


def link_signature(delta: SimplicialComplex, face: int) -> tuple[int, frozenset[int]] | None:
    """Compressed ``(n, nonfaces)`` describing ``lk face`` up to relabeling.

    Returns ``None`` when the link is a cone (so all its reduced homology
    vanishes).  The link of ``F`` is the complex of ``J : x_F`` on the
    vertices outside ``F``; vertices in a singleton nonface of the colon are
    not in the link, and a link vertex in no other nonface is a cone point.
    """
    rest = minimal_masks(nf & ~face for nf in delta.nonfaces)
    ghosts = 0
    used = 0
    real = []
    for m in rest:
        if m & (m - 1):
            used |= m
            real.append(m)
        else:
            ghosts |= m
    verts = ((1 << delta.n) - 1) & ~face & ~ghosts
    if verts & ~used:
        return None
    keep = _bits(used)
    pos = {v: i for i, v in enumerate(keep)}
    return len(keep), frozenset(sum(1 << pos[v] for v in _bits(m)) for m in real)


def _boundary_rows(faces_hi: list[int], index_lo: dict[int, int]) -> Iterator[dict[int, int]]:
    for f in faces_hi:
        row = {}
        for k, v in enumerate(_bits(f)):
            row[index_lo[f & ~(1 << v)]] = -1 if k & 1 else 1
        yield row


def _compress(keep_mask: int, nonfaces: Iterable[int]) -> tuple[int, frozenset[int]]:
    keep = _bits(keep_mask)
    pos = {v: i for i, v in enumerate(keep)}
    return len(keep), frozenset(sum(1 << pos[v] for v in _bits(m)) for m in nonfaces)


def _reduce(n: int, nonfaces: frozenset[int]) -> tuple[int, frozenset[int]] | None:
    """Shrink to a homotopy-equivalent complex; ``None`` means contractible.

    Vertices in singleton nonfaces are dropped (they are not vertices), a
    cone point makes the complex contractible, and a vertex whose link is a
    cone can be deleted without changing the homotopy type.
    """
    while True:
        full = (1 << n) - 1
        ghosts = 0
        for m in nonfaces:
            if not m & (m - 1):
                ghosts |= m
        if ghosts:
            n, nonfaces = _compress(full & ~ghosts, (m for m in nonfaces if not m & ghosts))
            continue
        used = 0
        for m in nonfaces:
            used |= m
        if full & ~used:
            return None
        for v in range(n):
            bit = 1 << v
            rest = minimal_masks(m & ~bit for m in nonfaces)
            lk_ghosts = 0
            lk_used = 0
            for m in rest:
                if m & (m - 1):
                    lk_used |= m
                else:
                    lk_ghosts |= m
            if (full & ~bit & ~lk_ghosts) & ~lk_used:
                # lk v is a cone: delete v
                n, nonfaces = _compress(full & ~bit, (m for m in nonfaces if not m & bit))
                break
        else:
            return n, nonfaces


@lru_cache(maxsize=1 << 16)
def _homology_cached(n: int, nonfaces: frozenset[int], field: FieldConfig, budget: int) -> tuple[int, ...]:
    """Reduced homology ranks from degree -1 up to the last nonzero one."""
    reduced = _reduce(n, nonfaces)
    if reduced is None:
        return ()
    n, nonfaces = reduced
    delta = SimplicialComplex([str(i) for i in range(n)], nonfaces)
    by_dim: dict[int, list[int]] = {}
    for f in delta.faces(budget):
        by_dim.setdefault(popcount(f) - 1, []).append(f)
    top = max(by_dim)
    ranks = {}
    for d in range(0, top + 1):
        lo = by_dim[d - 1]
        index_lo = {f: i for i, f in enumerate(lo)}
        ranks[d] = rank(_boundary_rows(by_dim[d], index_lo), field)
    out = [len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(-1, top + 1)]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def homology_from_signature(
    sig: tuple[int, frozenset[int]], field: FieldConfig = QQ, budget: int = DEFAULT_FACE_BUDGET
) -> tuple[int, ...]:
    """Trimmed reduced homology ranks (degrees -1, 0, ...) of a compressed complex."""
    return _homology_cached(sig[0], sig[1], field, budget)


def reduced_homology_ranks(
    delta: SimplicialComplex, field: FieldConfig = QQ, budget: int = DEFAULT_FACE_BUDGET
) -> list[int]:
    """Ranks of reduced homology in degrees ``-1 .. dim``."""
    h = list(_homology_cached(delta.n, delta.nonfaces, field, budget))
    return h + [0] * (delta.dim(budget) + 2 - len(h))
