"""Monomials and monomial ideals.

A :class:`MonomialIdeal` lives in an ordered ambient list of variable names
and stores its minimal generators as dense exponent tuples aligned with that
list.  :class:`Monomial` is the sparse, ambient-free view used at the API
boundary (``Monomial({"a": 2, "x": 2})``).

The zero ideal has no generators; the unit ideal has the single generator
``(0, ..., 0)``.  Every operation below accepts both.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from functools import reduce
from typing import Union

__all__ = [
    "AmbientMismatchError",
    "Monomial",
    "MonomialIdeal",
    "minimalize",
    "membership",
    "ideal_sum",
    "product",
    "intersect",
    "power",
    "colon",
    "radical",
    "restrict",
    "localize",
    "contains",
]

Vector = tuple[int, ...]


class AmbientMismatchError(ValueError):
    """A monomial or ideal mentions a variable outside the ambient ring."""


class Monomial:
    """Sparse monomial: variable name -> positive exponent."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exponents: Mapping[str, int] | None = None, **kw: int):
        items = dict(exponents or {})
        items.update(kw)
        for name, e in items.items():
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponent of {name!r} must be a nonnegative int, got {e!r}")
        self._exps = tuple(sorted((n, e) for n, e in items.items() if e > 0))
        self._hash = hash(self._exps)

    @classmethod
    def from_vector(cls, variables: Iterable[str], vec: Iterable[int]) -> "Monomial":
        return cls(dict(zip(variables, vec)))

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self._exps)

    def support(self) -> frozenset[str]:
        return frozenset(n for n, _ in self._exps)

    def degree(self) -> int:
        return sum(e for _, e in self._exps)

    def deg(self, var: str) -> int:
        """Exponent of ``var`` (0 when absent)."""
        for n, e in self._exps:
            if n == var:
                return e
        return 0

    def vector(self, variables: Iterable[str]) -> Vector:
        variables = list(variables)
        unknown = self.support() - set(variables)
        if unknown:
            raise AmbientMismatchError(f"variables {sorted(unknown)} not in ambient {variables}")
        d = dict(self._exps)
        return tuple(d.get(v, 0) for v in variables)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = dict(self._exps)
        for n, e in other._exps:
            d[n] = d.get(n, 0) + e
        return Monomial(d)

    def __pow__(self, n: int) -> "Monomial":
        return Monomial({v: e * n for v, e in self._exps})

    def divides(self, other: "Monomial") -> bool:
        return all(other.deg(n) >= e for n, e in self._exps)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Monomial({dict(self._exps)!r})"

    def __str__(self) -> str:
        if not self._exps:
            return "1"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self._exps)


MonomialLike = Union[Monomial, Mapping[str, int]]


def _as_monomial(f: MonomialLike) -> Monomial:
    return f if isinstance(f, Monomial) else Monomial(f)


def _mask(vec: Vector) -> int:
    m = 0
    for i, e in enumerate(vec):
        if e:
            m |= 1 << i
    return m


def _divides(g: Vector, h: Vector) -> bool:
    return all(a <= b for a, b in zip(g, h))


def _minimal_vectors(vectors: Iterable[Vector]) -> frozenset[Vector]:
    # Sorting by degree guarantees a divisor is seen before its multiples.
    cand = sorted(set(vectors), key=lambda v: (sum(v), v))
    kept: list[tuple[int, Vector]] = []
    for v in cand:
        m = _mask(v)
        for km, k in kept:
            if km & ~m == 0 and _divides(k, v):
                break
        else:
            kept.append((m, v))
    return frozenset(v for _, v in kept)


class MonomialIdeal:
    """Monomial ideal with a minimal generating set in a fixed ambient."""

    __slots__ = ("variables", "gens", "_hash", "__weakref__")

    def __init__(self, variables: Iterable[str], gens: Iterable[Vector] = (), *, _minimal: bool = False):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        n = len(variables)
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != n:
                raise AmbientMismatchError(f"generator {g} has length {len(g)}, ambient has {n} variables")
            if any(e < 0 for e in g):
                raise ValueError(f"negative exponent in {g}")
        self.variables = variables
        self.gens = frozenset(gens) if _minimal else _minimal_vectors(gens)
        self._hash = hash((self.variables, self.gens))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_monomials(cls, variables: Iterable[str], monomials: Iterable[MonomialLike]) -> "MonomialIdeal":
        variables = tuple(variables)
        return cls(variables, (_as_monomial(f).vector(variables) for f in monomials))

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "MonomialIdeal":
        return cls(variables, (), _minimal=True)

    @classmethod
    def unit(cls, variables: Iterable[str]) -> "MonomialIdeal":
        variables = tuple(variables)
        return cls(variables, [(0,) * len(variables)], _minimal=True)

    @classmethod
    def from_json(cls, data: Union[str, Mapping]) -> "MonomialIdeal":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_monomials(data["variables"], data["generators"])

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "generators": [
                {v: e for v, e in zip(self.variables, g) if e} for g in self.sorted_gens()
            ],
        }

    def _new(self, gens: Iterable[Vector], minimal: bool = False) -> "MonomialIdeal":
        return MonomialIdeal(self.variables, gens, _minimal=minimal)

    # -- queries ----------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def is_proper(self) -> bool:
        return not self.is_unit()

    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def monomials(self) -> list[Monomial]:
        return [Monomial.from_vector(self.variables, g) for g in self.sorted_gens()]

    def sorted_gens(self) -> list[Vector]:
        return sorted(self.gens, key=lambda g: (sum(g), tuple(-e for e in g)))

    def max_exponents(self) -> Vector:
        """Per-variable maximum exponent over the minimal generators."""
        if not self.gens:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self.gens))

    def support(self) -> frozenset[str]:
        return frozenset(v for g in self.gens for v, e in zip(self.variables, g) if e)

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise AmbientMismatchError(f"{var!r} not in ambient {self.variables}") from None

    def vector(self, f: MonomialLike) -> Vector:
        return _as_monomial(f).vector(self.variables)

    def __contains__(self, f: MonomialLike) -> bool:
        return membership(f, self)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonomialIdeal)
            and self.variables == other.variables
            and self.gens == other.gens
        )

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.gens)

    def __le__(self, other: "MonomialIdeal") -> bool:
        return contains(other, self)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return intersect(self, other)

    def __pow__(self, n: int) -> "MonomialIdeal":
        return power(self, n)

    def __repr__(self) -> str:
        if self.is_zero():
            body = "0"
        else:
            body = ", ".join(str(m) for m in self.monomials())
        return f"MonomialIdeal({body}; ring={','.join(self.variables)})"


def _check_same(I: MonomialIdeal, J: MonomialIdeal) -> None:
    if I.variables != J.variables:
        raise AmbientMismatchError(f"ambients differ: {I.variables} vs {J.variables}")


def minimalize(gens: Iterable[MonomialLike], variables: Iterable[str]) -> MonomialIdeal:
    """Ideal generated by ``gens``, reduced to its minimal generating set."""
    return MonomialIdeal.from_monomials(variables, gens)


def membership(f: MonomialLike, I: MonomialIdeal) -> bool:
    v = I.vector(f)
    return any(_divides(g, v) for g in I.gens)


def contains(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True iff ``J`` is a subset of ``I``."""
    _check_same(I, J)
    return all(any(_divides(g, h) for g in I.gens) for h in J.gens)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    return I._new(I.gens | J.gens)


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    return I._new(tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens)


def intersect(*ideals: MonomialIdeal) -> MonomialIdeal:
    """Intersection via pairwise lcms of minimal generators."""
    if not ideals:
        raise ValueError("intersect() needs at least one ideal")

    def pair(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
        _check_same(I, J)
        return I._new(tuple(map(max, g, h)) for g in I.gens for h in J.gens)

    return reduce(pair, ideals)


def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """``I**n`` by iterated multiplication; ``n == 0`` gives the unit ideal."""
    if n < 0:
        raise ValueError("power must be nonnegative")
    if n == 0:
        return MonomialIdeal.unit(I.variables)
    result = I
    for _ in range(n - 1):
        result = product(result, I)
    return result


def colon(I: MonomialIdeal, f: MonomialLike) -> MonomialIdeal:
    """``I : f`` for a monomial ``f``."""
    v = I.vector(f)
    return I._new(tuple(max(a - b, 0) for a, b in zip(g, v)) for g in I.gens)


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return I._new(tuple(1 if e else 0 for e in g) for g in I.gens)


def _indices(I: MonomialIdeal, W: Iterable[str]) -> set[int]:
    return {I.index(w) for w in W}


def restrict(I: MonomialIdeal, W: Iterable[str]) -> MonomialIdeal:
    """Keep the minimal generators whose support lies in ``W``."""
    keep = _indices(I, W)
    return I._new(
        (g for g in I.gens if all(i in keep for i, e in enumerate(g) if e)), minimal=True
    )


def localize(I: MonomialIdeal, W: Iterable[str]) -> MonomialIdeal:
    """``I : (prod W)^infinity``: set the exponents of ``W`` to zero."""
    drop = _indices(I, W)
    return I._new(tuple(0 if i in drop else e for i, e in enumerate(g)) for g in I.gens)
