"""Exact computations with weighted edge ideals and their powers."""

from .monomial import (
    AmbientMismatchError,
    Monomial,
    MonomialIdeal,
    colon,
    contains,
    ideal_sum,
    intersect,
    localize,
    membership,
    minimalize,
    power,
    product,
    radical,
    restrict,
)

__version__ = "0.1.0"
