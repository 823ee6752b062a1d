import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclemaps import (
    ParameterError,
    Permutation,
    cycle_decompose,
    fixed_points,
    format_permutation,
    from_cycles,
    identity,
    is_involution,
    is_single_cycle,
    min_max_cycle_length,
    parse_permutation,
    tau,
)


def test_identity_basics():
    e = identity(4)
    assert e.images == (1, 2, 3, 4)
    assert e.is_identity()
    assert all(e(i) == i for i in range(1, 5))


def test_permutation_call_is_one_based():
    s = Permutation((2, 1))
    assert s(1) == 2
    assert s(2) == 1
    with pytest.raises(ParameterError):
        s(0)
    with pytest.raises(ParameterError):
        s(3)


def test_permutation_rejects_non_bijections():
    with pytest.raises(ParameterError):
        Permutation((1, 1, 3))
    with pytest.raises(ParameterError):
        Permutation((0, 1))
    with pytest.raises(ParameterError):
        Permutation((2, 3))
    with pytest.raises(ParameterError):
        Permutation(())


def test_tau_formula_examples():
    # tau(n, k) sends i to ((i + k - 1) mod n) + 1.
    assert tau(3, 1).images == (2, 3, 1)
    assert tau(3, 2).images == (3, 1, 2)
    assert tau(6, 4).images == (5, 6, 1, 2, 3, 4)
    assert tau(5, 5).is_identity()


def test_tau_rejects_bad_shift():
    with pytest.raises(ParameterError):
        tau(4, 0)
    with pytest.raises(ParameterError):
        tau(4, 5)
    with pytest.raises(ParameterError):
        tau(0, 1)


def test_cycle_decompose_examples():
    dec = cycle_decompose(tau(3, 2))
    assert dec.cycles == ((1, 3, 2),)
    assert dec.l_min == 3
    assert dec.l_max == 3

    dec = cycle_decompose(identity(4))
    assert dec.cycles == ((1,), (2,), (3,), (4,))
    assert dec.lengths == (1, 1, 1, 1)

    # A shift by 3 on six points splits into three transpositions.
    dec = cycle_decompose(tau(6, 3))
    assert dec.cycles == ((1, 4), (2, 5), (3, 6))

    dec = cycle_decompose(Permutation((2, 1, 4, 5, 3)))
    assert dec.cycles == ((1, 2), (3, 4, 5))
    assert sorted(dec.lengths) == [2, 3]
    assert dec.l_min == 2
    assert dec.l_max == 3


@pytest.mark.parametrize("n", range(2, 13))
def test_tau_cycle_lengths_divide_evenly(n):
    import math

    for k in range(1, n + 1):
        lo, hi = min_max_cycle_length(tau(n, k))
        assert lo == hi == n // math.gcd(n, k)


def test_round_trip_exhaustive_small_n():
    for n in range(1, 7):
        for images in itertools.permutations(range(1, n + 1)):
            s = Permutation(images)
            dec = cycle_decompose(s)
            assert from_cycles(n, dec.cycles) == s


@given(st.permutations(list(range(1, 9))))
@settings(max_examples=200, deadline=None)
def test_round_trip_sampled(images):
    s = Permutation(tuple(images))
    assert from_cycles(8, cycle_decompose(s).cycles) == s


@given(st.permutations(list(range(1, 8))))
@settings(max_examples=200, deadline=None)
def test_inverse_and_compose(images):
    s = Permutation(tuple(images))
    assert s.compose(s.inverse()).is_identity()
    assert s.inverse().compose(s).is_identity()
    assert s.inverse().inverse() == s


def test_compose_order():
    # compose(s, t) applies t first, then s.
    s = Permutation((2, 3, 1))
    t = Permutation((1, 3, 2))
    st_map = s.compose(t)
    assert st_map.images == tuple(s(t(i)) for i in (1, 2, 3))


def test_involutions():
    assert is_involution(tau(4, 2))
    assert not is_involution(tau(3, 1))
    assert is_involution(identity(5))
    for n in range(1, 7):
        for images in itertools.permutations(range(1, n + 1)):
            s = Permutation(images)
            expected = all(len(c) <= 2 for c in cycle_decompose(s).cycles)
            assert is_involution(s) == expected


def test_fixed_points():
    assert fixed_points(Permutation((2, 1, 3))) == frozenset({3})
    assert fixed_points(tau(4, 2)) == frozenset()
    assert fixed_points(identity(3)) == frozenset({1, 2, 3})


def test_is_single_cycle():
    assert is_single_cycle(tau(5, 2))
    assert not is_single_cycle(tau(6, 2))
    assert not is_single_cycle(identity(3))
    assert is_single_cycle(identity(1))


def test_from_cycles_validates():
    with pytest.raises(ParameterError):
        from_cycles(3, ((1, 2), (2, 3),))
    with pytest.raises(ParameterError):
        from_cycles(3, ((1, 4),))
    with pytest.raises(ParameterError):
        from_cycles(3, ((1, 2),))  # 3 missing


def test_parse_and_format_round_trip():
    for text in ("tau:6:4", "id:3", "images:2,1,4,3"):
        s = parse_permutation(text)
        assert parse_permutation(format_permutation(s)) == s
    assert parse_permutation("tau:3:2") == tau(3, 2)
    assert parse_permutation("id:4") == identity(4)
    assert format_permutation(tau(3, 2)) == "images:3,1,2"


@pytest.mark.parametrize(
    "text",
    [
        "cycle:3",
        "tau:3",
        "tau:3:0",
        "tau:x:1",
        "id:0",
        "images:1,1",
        "images:",
        "images:1,a",
        "",
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(ParameterError):
        parse_permutation(text)
