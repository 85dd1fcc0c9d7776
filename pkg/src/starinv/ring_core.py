"""The *-ring contract shared by every backend, plus ideal and annihilator predicates.

An element of a backend is any immutable value with

* ``x.ring``: its ambient :class:`StarRing` (structural equality),
* ``x + y``, ``x - y``, ``x * y`` (the ring product), ``-x``, ``==``, ``hash``,
* ``x.star()``: the involution.

Rings provide ``one()``, ``zero()``, a :class:`RingCapability` and the two
ideal-containment deciders.  Everything else here is derived from those.
"""

from __future__ import annotations

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Optional

from .errors import RingContextError

Element = Any


class Tier(enum.Enum):
    ENUMERABLE = "enumerable"
    LINEAR_SOLVABLE = "linear_solvable"


@dataclass(frozen=True)
class RingCapability:
    tier: Tier
    order: Optional[int] = None

    def __post_init__(self):
        if self.tier is Tier.ENUMERABLE and (self.order is None or self.order < 1):
            raise ValueError("an enumerable ring needs a positive element count")
        if self.tier is Tier.LINEAR_SOLVABLE and self.order is not None:
            raise ValueError("linear-solvable rings are infinite")


class StarRing(ABC):
    @property
    @abstractmethod
    def capability(self) -> RingCapability: ...

    @abstractmethod
    def one(self) -> Element: ...

    @abstractmethod
    def zero(self) -> Element: ...

    @abstractmethod
    def right_ideal_contains(self, b: Element, a: Element) -> bool:
        """True iff ``a`` lies in ``bR``."""

    @abstractmethod
    def left_ideal_contains(self, b: Element, a: Element) -> bool:
        """True iff ``a`` lies in ``Rb``."""

    @abstractmethod
    def descriptor(self) -> dict: ...


def same_ring(*xs: Element) -> StarRing:
    ring = xs[0].ring
    for x in xs[1:]:
        if x.ring != ring:
            raise RingContextError(f"ring mismatch: {ring!r} vs {x.ring!r}")
    return ring


def star(x: Element) -> Element:
    return x.star()


def is_zero(x: Element) -> bool:
    return x == x.ring.zero()


def right_ideal_contains(b: Element, a: Element) -> bool:
    """``a ∈ bR``, i.e. ``a = b u`` for some ``u``."""
    return same_ring(b, a).right_ideal_contains(b, a)


def left_ideal_contains(b: Element, a: Element) -> bool:
    """``a ∈ Rb``, i.e. ``a = u b`` for some ``u``."""
    return same_ring(b, a).left_ideal_contains(b, a)


def right_annihilator_contains(a: Element, x: Element) -> bool:
    """``x ∈ a°``, i.e. ``a x = 0``."""
    same_ring(a, x)
    return is_zero(a * x)


def left_annihilator_contains(a: Element, x: Element) -> bool:
    """``x ∈ °a``, i.e. ``x a = 0``."""
    same_ring(a, x)
    return is_zero(x * a)


def same_right_ideal(a: Element, b: Element) -> bool:
    return right_ideal_contains(a, b) and right_ideal_contains(b, a)


def same_left_ideal(a: Element, b: Element) -> bool:
    return left_ideal_contains(a, b) and left_ideal_contains(b, a)


def h_preorder_leq(a: Element, b: Element) -> bool:
    """Green's H-preorder: ``Ra ⊆ Rb`` and ``aR ⊆ bR``."""
    return right_ideal_contains(b, a) and left_ideal_contains(b, a)


def is_idempotent(x: Element) -> bool:
    return x * x == x


def is_self_adjoint(x: Element) -> bool:
    return x.star() == x


def commutator(x: Element, y: Element) -> Element:
    return x * y - y * x


def power(x: Element, n: int) -> Element:
    if n < 0:
        raise ValueError("negative powers are not defined in a ring")
    result = x.ring.one()
    base = x
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result
