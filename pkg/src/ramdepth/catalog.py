"""Parameterized families of wildly ramified extensions with tabulated invariants.

Each constructor returns a :class:`CatalogEntry` holding the lower filtration
and the expected values of ``e``, ``b``, ``phi(b)`` and ``invariant_a`` with a
provenance tag.  :func:`verify_entry` recomputes those four quantities from the
filtration and compares them exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .depth import invariant_a
from .errors import EvenBreak, InvalidPrime, MissingParam, MNotCoprimeToP, NonpositiveM, NTooSmall, UnknownFamily
from .filtration import RamificationFiltration, is_prime
from .herbrand import phi_from_filtration

QUANTITIES = ("e", "b", "phi_b", "a")

# provenance tags
PUBLISHED = "published"
DERIVED = "derived"
DERIVED_DISCREPANCY = "derived-differs-from-published"


@dataclass(frozen=True)
class Expected:
    value: Fraction
    provenance: str = PUBLISHED


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: dict[str, int]
    filtration: RamificationFiltration
    expected: dict[str, Expected]
    notes: str = ""
    # quantity -> value as printed in the source table, when it disagrees with the derivation
    published_discrepancies: dict[str, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if set(self.expected) != set(QUANTITIES):
            raise ValueError(f"expected keys must be {QUANTITIES}, got {sorted(self.expected)}")

    @property
    def label(self) -> str:
        if not self.parameters:
            return self.name
        return f"{self.name}({', '.join(f'{k}={v}' for k, v in self.parameters.items())})"

    def with_expected(self, **overrides) -> "CatalogEntry":
        exp = dict(self.expected)
        for k, v in overrides.items():
            if k not in QUANTITIES:
                raise KeyError(k)
            exp[k] = Expected(Fraction(v), "override")
        return CatalogEntry(self.name, self.parameters, self.filtration, exp, self.notes, self.published_discrepancies)


@dataclass(frozen=True)
class QuantityCheck:
    expected: Fraction
    computed: Fraction
    provenance: str

    @property
    def matches(self) -> bool:
        return self.expected == self.computed


@dataclass(frozen=True)
class VerificationReport:
    entry: str
    checks: dict[str, QuantityCheck]
    notices: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.matches for c in self.checks.values())

    @property
    def mismatches(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c.matches]


def _expected(e, b, phi_b, a, a_tag=PUBLISHED) -> dict[str, Expected]:
    return {
        "e": Expected(Fraction(e)),
        "b": Expected(Fraction(b)),
        "phi_b": Expected(Fraction(phi_b)),
        "a": Expected(Fraction(a), a_tag),
    }


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidPrime(f"{p} is not prime")


def _single_break(p: int, degree: int, m: int) -> RamificationFiltration:
    # G = G_0 = ... = G_m of order `degree`, trivial from m+1 on
    return RamificationFiltration(p, (degree,) * (m + 2) + (1,))


def _check_m(p: int, m: int) -> None:
    if m <= 0:
        raise NonpositiveM(f"m = {m} must be positive")
    if m % p == 0:
        raise MNotCoprimeToP(f"m = {m} is divisible by p = {p}")


def artin_schreier(p: int, m: int) -> CatalogEntry:
    """Degree-p Artin-Schreier extension ``X^p - X - a`` with ``v(a) = -m`` in characteristic p."""
    _check_prime(p)
    _check_m(p, m)
    return CatalogEntry(
        "artin_schreier",
        {"p": p, "m": m},
        _single_break(p, p, m),
        _expected(p, m, m, m * (1 - Fraction(1, p))),
        notes=(
            "L = K(alpha), alpha^p - alpha = a with a in p^-m generating an F_p-line of K/wp(K); "
            "cyclic of degree p, totally ramified, unique lower break at m."
        ),
    )


def abrashkin(p: int, n: int, m: int) -> CatalogEntry:
    """Degree-q extension ``X^q - X - alpha`` over a p-adic field, ``q = p^n``, ``m = -v(alpha)``."""
    _check_prime(p)
    if n < 1:
        raise NTooSmall(f"n = {n} must be at least 1")
    _check_m(p, m)
    q = p**n
    return CatalogEntry(
        "abrashkin",
        {"p": p, "n": n, "m": m},
        _single_break(p, q, m),
        _expected(q, m, m, m * (1 - Fraction(1, q))),
        notes=(
            "L = F(beta), beta^q - beta = alpha, q = p^n, m = -v(alpha) > 0 prime to p; "
            "requires v(alpha) > -q e(F)/(q-1) for the base field F (not modeled, documentation only)."
        ),
    )


def char2_quadratic(m: int) -> CatalogEntry:
    """Totally ramified quadratic extension in characteristic 2 with break ``m`` (odd)."""
    if m < 1:
        raise NonpositiveM(f"m = {m} must be positive")
    if m % 2 == 0:
        raise EvenBreak(f"m = {m}: breaks of ramified quadratic extensions in characteristic 2 are odd")
    return CatalogEntry(
        "char2_quadratic",
        {"m": m},
        _single_break(2, 2, m),
        _expected(2, m, m, Fraction(m, 2)),
        notes="Totally ramified quadratic extension of a local field of characteristic 2; the breaks are m = 1, 3, 5, ...",
    )


def quaternion_serre() -> CatalogEntry:
    """Quaternion extension of ``Q_2(sqrt 5)`` with breaks at 1 and 3, ``G_2 = {±1}``."""
    return CatalogEntry(
        "quaternion_serre",
        {},
        RamificationFiltration(2, (16, 16, 16, 2, 2, 1)),
        _expected(16, 3, Fraction(5, 4), Fraction(17, 16)),
        notes=(
            "K = Q_2(sqrt 5), Gal(L/K) listed as the quaternion units {±1, ±i, ±j, ±k} (order 8) "
            "with G = G_0 = G_1 ⊃ G_2 = G_3 = {±1} ⊃ {1}. The tabulated values |G_1| = e = 2^4, "
            "phi(b) = 5/4, a = 17/16 are consistent only with orders (16, 16, 16, 2, 2, 1), which are "
            "encoded here; with |G| = 8 one would get orders (8, 8, 8, 2, 2, 1), phi(3) = 3/2, a = 9/8. "
            "Both readings are recorded, neither is silently corrected."
        ),
    )


def cyclotomic_filtration(p: int, n: int) -> RamificationFiltration:
    """Lower filtration of ``Gal(Q_p(zeta_{p^n}) / Q_p(zeta_p))``.

    ``|G_u| = p^(n-k)`` for ``p^(k-1) <= u <= p^k - 1`` (``k >= 1``), and
    ``|G_{-1}| = |G_0| = p^(n-1)``; breaks at ``p^k - 1`` for ``k = 1..n-1``.
    """
    orders = [p ** (n - 1)] * 2
    for k in range(1, n + 1):
        orders += [p ** (n - k)] * (p**k - p ** (k - 1))
    return RamificationFiltration(p, tuple(orders[: orders.index(1) + 1]))


def cyclotomic_mp(p: int, n: int) -> CatalogEntry:
    """``L = Q_p(zeta_{p^n})`` over ``K = Q_p(zeta_p)``, ``n >= 2``."""
    _check_prime(p)
    if n < 2:
        raise NTooSmall(f"n = {n} must be at least 2")
    e = p ** (n - 1)
    b = e - 1
    phi_b = (n - 1) * (p - 1)
    derived_a = phi_b - Fraction(b, e)
    printed_a = phi_b + 1 - Fraction(1, e)
    return CatalogEntry(
        "cyclotomic_mp",
        {"p": p, "n": n},
        cyclotomic_filtration(p, n),
        _expected(e, b, phi_b, derived_a, a_tag=DERIVED_DISCREPANCY),
        notes=(
            f"L = Q_{p}(zeta_{p}^{n}), K = Q_{p}(zeta_{p}). The published table gives "
            f"a = (n-1)(p-1) + 1 - p^(1-n) = {printed_a}; the definition a = phi(b) - b/e with the "
            f"published e, b, phi(b) gives (n-1)(p-1) - 1 + p^(1-n) = {derived_a}, which is the value checked."
        ),
        published_discrepancies={"a": printed_a},
    )


FAMILIES: dict[str, Callable[..., CatalogEntry]] = {
    "artin_schreier": artin_schreier,
    "abrashkin": abrashkin,
    "char2_quadratic": char2_quadratic,
    "quaternion_serre": quaternion_serre,
    "cyclotomic_mp": cyclotomic_mp,
}

FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "artin_schreier": ("p", "m"),
    "abrashkin": ("p", "n", "m"),
    "char2_quadratic": ("m",),
    "quaternion_serre": (),
    "cyclotomic_mp": ("p", "n"),
}

GRID_PRIMES = (2, 3, 5, 7)


def default_grid(family: str) -> Iterator[dict[str, int]]:
    """Parameter choices swept by ``catalog verify --all``."""
    if family == "artin_schreier":
        for p in GRID_PRIMES:
            for m in range(1, 21):
                if m % p:
                    yield {"p": p, "m": m}
    elif family == "abrashkin":
        for p in GRID_PRIMES:
            for n in (1, 2, 3):
                for m in range(1, 21):
                    if m % p:
                        yield {"p": p, "n": n, "m": m}
    elif family == "char2_quadratic":
        for m in range(1, 100, 2):
            yield {"m": m}
    elif family == "quaternion_serre":
        yield {}
    elif family == "cyclotomic_mp":
        for p in GRID_PRIMES:
            for n in range(2, 6):
                yield {"p": p, "n": n}
    else:
        raise UnknownFamily(family)


def build(family: str, params: dict[str, int]) -> CatalogEntry:
    """Dispatch to a family constructor by name."""
    try:
        ctor = FAMILIES[family]
    except KeyError:
        raise UnknownFamily(f"unknown family {family!r}; known: {', '.join(FAMILIES)}") from None
    needed = FAMILY_PARAMS[family]
    missing = [k for k in needed if k not in params]
    if missing:
        raise MissingParam(f"{family} needs parameter(s) {', '.join(missing)}")
    extra = sorted(set(params) - set(needed))
    if extra:
        raise MissingParam(f"{family} does not take parameter(s) {', '.join(extra)}")
    return ctor(**{k: params[k] for k in needed})


def iter_default_entries() -> Iterator[CatalogEntry]:
    for family in FAMILIES:
        for params in default_grid(family):
            yield build(family, params)


def compute_quantities(F: RamificationFiltration) -> dict[str, Fraction]:
    b = F.largest_break()
    return {
        "e": Fraction(F.ramification_index),
        "b": Fraction(b),
        "phi_b": phi_from_filtration(F).evaluate(max(b, 0)),
        "a": invariant_a(F),
    }


def verify_entry(entry: CatalogEntry) -> VerificationReport:
    computed = compute_quantities(entry.filtration)
    checks = {
        k: QuantityCheck(entry.expected[k].value, computed[k], entry.expected[k].provenance) for k in QUANTITIES
    }
    notices = tuple(
        f"{entry.label}: published {k} = {v} differs from the derived value {computed[k]}"
        for k, v in entry.published_discrepancies.items()
    )
    return VerificationReport(entry.label, checks, notices)
