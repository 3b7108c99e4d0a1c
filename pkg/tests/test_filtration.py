import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramdepth import Ramification, RamificationFiltration
from ramdepth.errors import (
    FiltrationError,
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
from ramdepth.filtration import is_power_of, is_prime

from strategies import filtrations

QUAT = RamificationFiltration(2, (16, 16, 16, 2, 2, 1))


def test_quaternion_filtration_is_valid():
    assert QUAT.orders == (16, 16, 16, 2, 2, 1)
    assert QUAT.last_index == 4


def test_trivial_filtration():
    F = RamificationFiltration(3, (1,))
    assert F.is_trivial
    assert F.ramification_index == 1
    assert F.classify() is Ramification.UNRAMIFIED


def test_trailing_ones_are_trimmed():
    assert RamificationFiltration(3, (2, 2, 1, 1, 1)) == RamificationFiltration(3, (2, 2, 1))
    assert RamificationFiltration(5, (1, 1)).orders == (1,)


@pytest.mark.parametrize(
    "p, orders, error",
    [
        (2, (4, 4, 3, 1), (NotDivisibilityChain, WildPartNotPPower)),
        (2, (4, 8, 1), NotNonincreasing),
        (3, (9, 3, 2), NonterminatingSequence),
        (3, (12, 6, 4, 1), NotDivisibilityChain),
        (2, (12, 12, 3, 1), WildPartNotPPower),
        (3, (6, 6, 1), TameQuotientNotCoprime),
        (3, (9, 9, 9, 1), None),
        (5, (25, 25, 25, 5, 1), None),
        (4, (4, 4, 1), InvalidPrime),
        (1, (1,), InvalidPrime),
        (3, (), InvalidOrders),
        (3, (3, 0, 1), InvalidOrders),
        (3, (3, 1.5, 1), InvalidOrders),
    ],
)
def test_constructor_errors(p, orders, error):
    if error is None:
        RamificationFiltration(p, orders)
        return
    with pytest.raises(error):
        RamificationFiltration(p, orders)


def test_tame_quotient_error_ignores_unramified_step():
    # (G_-1 : G_0) may be divisible by p
    RamificationFiltration(3, (6, 2, 1))


def test_non_strict_mode_skips_p_structure():
    F = RamificationFiltration(2, (12, 12, 3, 1), strict=False)
    assert F.wild_order == 3
    with pytest.raises(NotDivisibilityChain):
        RamificationFiltration(2, (4, 4, 3, 1), strict=False)


def test_ramification_index():
    assert QUAT.ramification_index == 16
    assert RamificationFiltration(3, (1,)).ramification_index == 1
    assert RamificationFiltration(3, (6, 3, 3, 1)).ramification_index == 3


@pytest.mark.parametrize("t, expected", [(Fraction(3, 2), 2), (1, 16), (7, 1), (-1, 16), (Fraction(-1, 2), 16), (4, 1), (3, 2)])
def test_group_order_at(t, expected):
    assert QUAT.group_order_at(t) == expected


def test_group_order_below_minus_one():
    with pytest.raises(IndexBelowMinusOne):
        QUAT.group_order_at(Fraction(-3, 2))


@pytest.mark.parametrize(
    "p, orders, cls",
    [(3, (6, 3, 3, 1), Ramification.WILD), (3, (2, 2, 1), Ramification.TAME), (3, (5, 1), Ramification.UNRAMIFIED)],
)
def test_classify(p, orders, cls):
    assert RamificationFiltration(p, orders).classify() is cls


def test_largest_break():
    assert QUAT.largest_break() == 3
    assert RamificationFiltration(3, (2, 2, 1)).largest_break() == 0
    assert RamificationFiltration(5, (3, 1)).largest_break() == -1
    with pytest.raises(TrivialExtension):
        RamificationFiltration(5, (1,)).largest_break()


def test_break_sequence():
    assert QUAT.break_sequence() == [(1, 2), (3, 1)]
    assert RamificationFiltration(3, (3, 3, 3, 3, 1)).break_sequence() == [(2, 1)]
    assert RamificationFiltration(3, (2, 2, 1)).break_sequence() == [(0, 1)]
    with pytest.raises(TameQuotientNotCoprime):
        RamificationFiltration(2, (2, 2, 1))
    assert RamificationFiltration(2, (2, 2, 2, 1)).break_sequence() == [(1, 1)]
    assert RamificationFiltration(5, (3, 1)).break_sequence() == []
    with pytest.raises(TrivialExtension):
        RamificationFiltration(5, (1,)).break_sequence()


def test_wild_order():
    assert QUAT.wild_order == 16
    assert RamificationFiltration(3, (2, 2, 1)).wild_order == 1
    assert RamificationFiltration(3, (6, 3, 3, 1)).wild_order == 3


def test_tower_degrees():
    assert QUAT.tower_degrees() == (1, 1, 16)
    assert RamificationFiltration(3, (12, 6, 3, 1)).tower_degrees() == (2, 2, 3)
    assert RamificationFiltration(5, (7, 1)).tower_degrees() == (7, 1, 1)


def test_from_breaks_matches_orders():
    assert RamificationFiltration.from_breaks(2, 16, [(1, 2), (3, 1)]) == QUAT
    assert RamificationFiltration.from_breaks(5, 3, [(-1, 1)]) == RamificationFiltration(5, (3, 1))
    with pytest.raises(InvalidOrders):
        RamificationFiltration.from_breaks(2, 16, [(3, 2), (1, 1)])


def test_large_orders():
    F = RamificationFiltration(2, (2**200, 2**200, 2**200, 2**100, 1))
    assert F.wild_order == 2**200
    assert F.break_sequence() == [(1, 2**100), (2, 1)]


@pytest.mark.parametrize("n", [2, 3, 5, 7, 97, 7919, 2**61 - 1, 2**89 - 1])
def test_is_prime_true(n):
    assert is_prime(n)


@pytest.mark.parametrize("n", [-7, 0, 1, 4, 9, 561, 3215031751, 2**61 + 1, (2**31 - 1) * (2**61 - 1)])
def test_is_prime_false(n):
    assert not is_prime(n)


def test_is_prime_matches_trial_division():
    def slow(n):
        return n > 1 and all(n % d for d in range(2, math.isqrt(n) + 1))

    assert all(is_prime(n) == slow(n) for n in range(3000))


def test_is_power_of():
    assert is_power_of(1, 3) and is_power_of(81, 3)
    assert not is_power_of(18, 3) and not is_power_of(0, 3)


# -- properties -----------------------------------------------------------------

@given(filtrations(), st.fractions(min_value=-1, max_value=40, max_denominator=50))
def test_order_at_uses_ceiling(F, t):
    assert F.group_order_at(t) == F.group_order_at(math.ceil(t))
    assert F.group_order_at(t) >= F.group_order_at(t + Fraction(1, 3))


@given(filtrations())
def test_ramification_index_is_order_at_zero(F):
    assert F.ramification_index == F.group_order_at(0)


@given(filtrations())
def test_classification_matches_largest_break(F):
    if F.is_trivial:
        return
    cls = F.classify()
    assert (cls is Ramification.TAME) == (F.largest_break() == 0)
    assert (cls is Ramification.UNRAMIFIED) == (F.largest_break() == -1)


@given(filtrations())
def test_tower_degrees_multiply_to_group_order(F):
    u, t, w = F.tower_degrees()
    p = F.residue_char
    assert u * t * w == F.group_order
    assert t % p != 0
    assert is_power_of(w, p)


@given(filtrations())
def test_break_sequence_ends_at_largest_break(F):
    if F.is_trivial or F.largest_break() < 0:
        return
    seq = F.break_sequence()
    assert seq[-1] == (F.largest_break(), 1)
    assert [i for i, _ in seq] == sorted({i for i, _ in seq})


@given(filtrations())
def test_constructor_round_trip(F):
    assert RamificationFiltration(F.residue_char, F.orders) == F
    assert RamificationFiltration(F.residue_char, F.orders + (1, 1)) == F


@given(filtrations(wild=True), st.data())
def test_single_violation_names_its_error(F, data):
    """Perturb one invariant of a valid wild filtration and check the specific error."""
    p, orders = F.residue_char, list(F.orders)
    case = data.draw(st.sampled_from(["terminal", "increase", "prime"]))
    if case == "terminal":
        with pytest.raises(NonterminatingSequence):
            RamificationFiltration(p, orders[:-1] + [p])
    elif case == "increase":
        with pytest.raises(NotNonincreasing):
            RamificationFiltration(p, [orders[0]] + [orders[0] * p] + orders[1:])
    else:
        with pytest.raises(InvalidPrime):
            RamificationFiltration(p * p, orders)


def test_all_filtration_errors_share_a_base():
    for exc in (NotNonincreasing, NotDivisibilityChain, WildPartNotPPower, TameQuotientNotCoprime,
                HigherQuotientNotPPower, NonterminatingSequence, InvalidPrime):
        assert issubclass(exc, FiltrationError)
