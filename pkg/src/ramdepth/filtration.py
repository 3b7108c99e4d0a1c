"""Lower-numbering ramification filtrations, stored as group orders.

A filtration ``G = G_{-1} ⊇ G_0 ⊇ G_1 ⊇ ... ⊇ {1}`` of a finite Galois group
is represented by the orders ``g_i = |G_i|`` for ``i = -1, 0, ..., N`` with
``g_N = 1``; every index beyond ``N`` is understood to carry the trivial group.
No group elements are stored, so the structural facts about the quotients
(cyclic tame quotient, elementary abelian higher quotients) are checked at
the level of orders only.
"""
from __future__ import annotations

import enum
import math
import operator
from dataclasses import InitVar, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    HigherQuotientNotPPower,
    IndexBelowMinusOne,
    InvalidOrders,
    InvalidPrime,
    NonterminatingSequence,
    NotDivisibilityChain,
    NotNonincreasing,
    TameQuotientNotCoprime,
    TrivialExtension,
    WildPartNotPPower,
)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases.

    Deterministic below 3.3e24; a strong probable-prime test above that.
    """
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_power_of(n: int, p: int) -> bool:
    """True iff ``n == p**k`` for some ``k >= 0``."""
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


class Ramification(enum.Enum):
    UNRAMIFIED = "unramified"
    TAME = "tame"
    WILD = "wild"


@dataclass(frozen=True)
class RamificationFiltration:
    """Validated order sequence ``(g_{-1}, g_0, ..., g_N)`` with residue characteristic ``p``.

    Trailing 1s after the first 1 are trimmed, so two filtrations compare
    equal exactly when they describe the same sequence.  With
    ``strict=False`` only the chain conditions (nonincreasing, divisibility,
    termination) are enforced, which admits order data that does not come
    from a Galois extension with residue characteristic ``p``.
    """

    residue_char: int
    orders: tuple[int, ...]
    strict: InitVar[bool] = True

    def __post_init__(self, strict: bool) -> None:
        try:
            p = operator.index(self.residue_char)
        except TypeError:
            raise InvalidPrime(f"residue characteristic must be an integer, got {self.residue_char!r}") from None
        if not is_prime(p):
            raise InvalidPrime(f"residue characteristic {p} is not prime")
        orders = _coerce_orders(self.orders)

        if orders[-1] != 1:
            raise NonterminatingSequence(f"last order is {orders[-1]}, expected 1")
        for i, (a, b) in enumerate(zip(orders, orders[1:]), start=-1):
            if b > a:
                raise NotNonincreasing(f"|G_{i + 1}| = {b} exceeds |G_{i}| = {a}")
        for i, (a, b) in enumerate(zip(orders, orders[1:]), start=-1):
            if a % b:
                raise NotDivisibilityChain(f"|G_{i + 1}| = {b} does not divide |G_{i}| = {a}")

        first_one = orders.index(1)
        orders = orders[: first_one + 1]

        if strict:
            g = lambda i: orders[i + 1] if i + 1 < len(orders) else 1  # noqa: E731
            if not is_power_of(g(1), p):
                raise WildPartNotPPower(f"|G_1| = {g(1)} is not a power of p = {p}")
            if (g(0) // g(1)) % p == 0:
                raise TameQuotientNotCoprime(f"(G_0 : G_1) = {g(0) // g(1)} is divisible by p = {p}")
            for i in range(1, len(orders) - 2):
                if not is_power_of(g(i) // g(i + 1), p):
                    raise HigherQuotientNotPPower(
                        f"(G_{i} : G_{i + 1}) = {g(i) // g(i + 1)} is not a power of p = {p}"
                    )

        object.__setattr__(self, "residue_char", p)
        object.__setattr__(self, "orders", orders)

    @classmethod
    def from_breaks(
        cls,
        residue_char: int,
        group_order: int,
        breaks: Iterable[tuple[int, int]],
        strict: bool = True,
    ) -> "RamificationFiltration":
        """Expand ``|G|`` plus ``(break index, order after the drop)`` pairs into orders.

        The order stays at ``group_order`` up to and including the first break
        index and drops to the stated value right after it.
        """
        orders: list[int] = []
        current, i = group_order, -1
        for index, after in breaks:
            if index < i:
                raise InvalidOrders(f"break indices must be strictly increasing and >= -1, got {index}")
            while i <= index:
                orders.append(current)
                i += 1
            current = after
        orders.append(current)
        return cls(residue_char, tuple(orders), strict=strict)

    # -- basic accessors ----------------------------------------------------

    @property
    def last_index(self) -> int:
        """Index ``N`` of the terminal 1 (``-1`` for the trivial group)."""
        return len(self.orders) - 2

    def order(self, i: int) -> int:
        """``|G_i|`` for an integer ``i >= -1``."""
        if i < -1:
            raise IndexBelowMinusOne(f"index {i} < -1")
        return self.orders[i + 1] if i + 1 < len(self.orders) else 1

    @property
    def group_order(self) -> int:
        return self.orders[0]

    @property
    def ramification_index(self) -> int:
        return self.order(0)

    @property
    def wild_order(self) -> int:
        return self.order(1)

    def group_order_at(self, t) -> int:
        """``|G_t|`` for rational ``t >= -1``, where ``G_t = G_{ceil(t)}``."""
        t = Fraction(t)
        if t < -1:
            raise IndexBelowMinusOne(f"t = {t} < -1")
        return self.order(math.ceil(t))

    # -- structure ----------------------------------------------------------

    def classify(self) -> Ramification:
        if self.order(0) == 1:
            return Ramification.UNRAMIFIED
        if self.order(1) == 1:
            return Ramification.TAME
        return Ramification.WILD

    @property
    def is_trivial(self) -> bool:
        return self.orders == (1,)

    def largest_break(self) -> int:
        """Largest ``i`` with ``|G_i| > 1``; -1 for unramified, 0 for tame."""
        if self.is_trivial:
            raise TrivialExtension("the trivial group has no ramification break")
        return self.last_index - 1

    def break_sequence(self) -> list[tuple[int, int]]:
        """Indices ``i >= 0`` with ``|G_i| > |G_{i+1}|``, paired with ``|G_{i+1}|``."""
        if self.is_trivial:
            raise TrivialExtension("the trivial group has no ramification break")
        return [
            (i, self.orders[i + 2])
            for i in range(0, self.last_index)
            if self.orders[i + 1] > self.orders[i + 2]
        ]

    def tower_degrees(self) -> tuple[int, int, int]:
        """Degrees of the unramified, tamely and wildly ramified steps ``K ⊂ K_0 ⊂ K_1 ⊂ L``."""
        g_m1, g0, g1 = self.order(-1), self.order(0), self.order(1)
        return g_m1 // g0, g0 // g1, g1

    def __str__(self) -> str:
        return f"p={self.residue_char} orders=({', '.join(map(str, self.orders))})"


def _coerce_orders(orders: Sequence[int]) -> tuple[int, ...]:
    try:
        items = tuple(orders)
    except TypeError:
        raise InvalidOrders(f"orders must be a sequence of integers, got {orders!r}") from None
    if not items:
        raise InvalidOrders("orders must be nonempty")
    out = []
    for g in items:
        if isinstance(g, bool):
            raise InvalidOrders(f"order {g!r} is not an integer")
        try:
            g = operator.index(g)
        except TypeError:
            raise InvalidOrders(f"order {g!r} is not an integer") from None
        if g < 1:
            raise InvalidOrders(f"order {g} is not positive")
        out.append(g)
    return tuple(out)
