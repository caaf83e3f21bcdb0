"""Irreducible and primary decomposition of monomial ideals.

The irreducible decomposition is built one generator at a time: the
components of ``J + (g)`` are the components of ``J`` that already contain
``g`` together with ``C + (x^g_x)`` for every other component ``C`` and
every ``x`` in the support of ``g``.  Components that contain another
component are dropped after each step, which keeps the list irredundant
(an irreducible monomial ideal containing an intersection contains one of
the intersected irreducible ideals).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .monomial import MonomialIdeal, intersect, localize, power, radical

__all__ = [
    "DecompositionError",
    "IrreducibleComponent",
    "PrimaryComponent",
    "Decomposition",
    "irreducible_decomposition",
    "primary_decomposition",
    "associated_primes",
    "minimal_primes",
    "is_unmixed",
    "symbolic_power",
    "height",
    "dim_quotient",
]


class DecompositionError(ValueError):
    """Raised for the zero or unit ideal, which have no proper decomposition."""


@dataclass(frozen=True)
class IrreducibleComponent:
    """``(x^e(x) : e(x) > 0)``; a zero entry means the variable is absent."""

    variables: tuple[str, ...]
    exponents: tuple[int, ...]

    @property
    def prime(self) -> frozenset[str]:
        return frozenset(v for v, e in zip(self.variables, self.exponents) if e)

    def as_dict(self) -> dict[str, int]:
        return {v: e for v, e in zip(self.variables, self.exponents) if e}

    def ideal(self) -> MonomialIdeal:
        n = len(self.variables)
        gens = []
        for i, e in enumerate(self.exponents):
            if e:
                g = [0] * n
                g[i] = e
                gens.append(tuple(g))
        return MonomialIdeal(self.variables, gens, _minimal=True)


@dataclass(frozen=True)
class PrimaryComponent:
    ideal: MonomialIdeal
    prime: frozenset[str]

    @property
    def height(self) -> int:
        return len(self.prime)


@dataclass(frozen=True)
class Decomposition:
    source: MonomialIdeal
    components: tuple[PrimaryComponent, ...]
    irredundant: bool = True

    def __post_init__(self) -> None:
        rebuilt = intersect(*(c.ideal for c in self.components))
        if rebuilt != self.source:
            raise AssertionError(f"components do not intersect back to {self.source}")
        for c in self.components:
            if radical(c.ideal) != _prime_ideal(self.source.variables, c.prime):
                raise AssertionError(f"component {c.ideal} is not primary to {sorted(c.prime)}")
        if self.irredundant and len({c.prime for c in self.components}) != len(self.components):
            raise AssertionError("irredundant decomposition with repeated primes")

    @property
    def primes(self) -> list[frozenset[str]]:
        return [c.prime for c in self.components]


def _prime_ideal(variables: tuple[str, ...], prime: Iterable[str]) -> MonomialIdeal:
    prime = set(prime)
    n = len(variables)
    return MonomialIdeal(
        variables,
        [tuple(1 if j == i else 0 for j in range(n)) for i, v in enumerate(variables) if v in prime],
        _minimal=True,
    )


def _check_proper_nonzero(I: MonomialIdeal) -> None:
    if I.is_zero():
        raise DecompositionError("the zero ideal has no proper primary decomposition")
    if I.is_unit():
        raise DecompositionError("the unit ideal has an empty primary decomposition")


def _component_contains(big: tuple[int, ...], small: tuple[int, ...]) -> bool:
    # every generator x^small_x of `small` lies in `big`
    return all(b and b <= s for b, s in zip(big, small) if s)


def _drop_non_minimal(comps: set[tuple[int, ...]]) -> list[tuple[int, ...]]:
    ordered = sorted(comps, key=lambda c: (sum(1 for e in c if e), c))
    kept: list[tuple[int, ...]] = []
    for c in ordered:
        if not any(_component_contains(c, k) for k in kept):
            kept.append(c)
    return kept


@lru_cache(maxsize=4096)
def _irreducible_vectors(I: MonomialIdeal) -> tuple[tuple[int, ...], ...]:
    n = I.nvars
    comps: list[tuple[int, ...]] = [(0,) * n]
    for g in I.sorted_gens():
        nxt: set[tuple[int, ...]] = set()
        for c in comps:
            if any(ce and g[i] >= ce for i, ce in enumerate(c)):
                nxt.add(c)
                continue
            for i, e in enumerate(g):
                if e:
                    d = list(c)
                    d[i] = e
                    nxt.add(tuple(d))
        comps = _drop_non_minimal(nxt)
    return tuple(sorted(comps))


def irreducible_decomposition(I: MonomialIdeal) -> list[IrreducibleComponent]:
    """Irredundant list of irreducible components whose intersection is ``I``."""
    _check_proper_nonzero(I)
    return [IrreducibleComponent(I.variables, c) for c in _irreducible_vectors(I)]


def primary_decomposition(I: MonomialIdeal) -> Decomposition:
    """Group irreducible components by radical and intersect each group."""
    groups: dict[frozenset[str], list[IrreducibleComponent]] = {}
    for comp in irreducible_decomposition(I):
        groups.setdefault(comp.prime, []).append(comp)
    components = tuple(
        PrimaryComponent(intersect(*(c.ideal() for c in comps)), prime)
        for prime, comps in sorted(groups.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    )
    return Decomposition(I, components, irredundant=True)


def associated_primes(I: MonomialIdeal) -> set[frozenset[str]]:
    _check_proper_nonzero(I)
    return {c.prime for c in irreducible_decomposition(I)}


def minimal_primes(I: MonomialIdeal) -> set[frozenset[str]]:
    """Minimal primes, read off the decomposition of the squarefree radical."""
    return associated_primes(radical(I))


def is_unmixed(I: MonomialIdeal) -> bool:
    return len({len(p) for p in associated_primes(I)}) == 1


def height(I: MonomialIdeal) -> int:
    return min(len(p) for p in minimal_primes(I))


def dim_quotient(I: MonomialIdeal) -> int:
    """Krull dimension of ``R/I``."""
    return I.nvars - height(I)


def symbolic_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """``I^(n)``: intersect ``(I_W)^n`` over the minimal primes ``p``, ``W`` = ambient minus ``p``."""
    if n < 1:
        raise ValueError("symbolic power needs n >= 1")
    _check_proper_nonzero(I)
    parts = []
    for p in sorted(minimal_primes(I), key=sorted):
        outside = [v for v in I.variables if v not in p]
        parts.append(power(localize(I, outside), n))
    return intersect(*parts)
