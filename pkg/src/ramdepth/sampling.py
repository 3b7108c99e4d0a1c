"""Random valid filtrations for property sweeps and experiments."""
from __future__ import annotations

import random

from .filtration import RamificationFiltration

PRIMES = (2, 3, 5, 7, 11, 13)


def _split(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def _max_exponent(p: int, bound: int) -> int:
    k = 0
    while p ** (k + 1) <= bound:
        k += 1
    return k


def random_filtration(
    rng: random.Random,
    max_order: int = 2**20,
    max_breaks: int = 8,
    max_gap: int = 12,
    kind: str | None = None,
) -> RamificationFiltration:
    """Draw a filtration with ``|G| <= max_order`` and at most ``max_breaks`` breaks at indices ``>= 0``.

    ``kind`` forces ``"trivial"``, ``"unramified"``, ``"tame"`` or ``"wild"``;
    by default wild filtrations make up about 70% of the draws.
    """
    if kind is None:
        kind = rng.choices(("trivial", "unramified", "tame", "wild"), weights=(1, 1, 2, 7))[0]
    p = rng.choice(PRIMES)
    if kind == "trivial":
        return RamificationFiltration(p, (1,))

    f = rng.choice((1, 1, 1, 2, 3, 4)) if kind != "unramified" else rng.randint(2, 12)
    if kind == "unramified":
        return RamificationFiltration.from_breaks(p, f, [(-1, 1)])

    tame_choices = [t for t in range(1, 13) if t % p]
    if kind == "tame":
        t = rng.choice([t for t in tame_choices if t > 1])
        return RamificationFiltration.from_breaks(p, f * t, [(-1, t)] * (f > 1) + [(0, 1)])

    t = rng.choice(tame_choices)
    if f * t * p > max_order:
        f = t = 1
    max_k = _max_exponent(p, max_order // (f * t))
    k = rng.randint(1, max_k)
    wild_slots = max_breaks - (t > 1)
    w = rng.randint(1, min(k, wild_slots))
    drops = _split(rng, k, w) if w > 1 else [k]

    breaks = []
    if f > 1:
        breaks.append((-1, t * p**k))
    if t > 1:
        breaks.append((0, p**k))
    index, remaining = 0, k
    for d in drops:
        index += rng.randint(1, max_gap)
        remaining -= d
        breaks.append((index, p**remaining))
    return RamificationFiltration.from_breaks(p, f * t * p**k, breaks)
