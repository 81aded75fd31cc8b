import random

import pytest

from drg.perm import (
    Permutation,
    PermError,
    compose,
    cycle_string,
    cycle_type,
    fixed_points,
    inverse,
    is_derangement,
    parse_cycles,
)


def rand_perm(rng, n):
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(images)


def test_identity_compose():
    p = parse_cycles("(0,1,2)", 5)
    e = Permutation.identity(5)
    assert compose(e, p) == p
    assert compose(p, e) == p


def test_compose_convention():
    # apply (0 1 2) first, then (0 1): pointwise this is the transposition (1 2)
    p = parse_cycles("(0,1,2)", 3)
    q = parse_cycles("(0,1)", 3)
    assert compose(p, q) == parse_cycles("(1,2)", 3)
    assert compose(p, q).images == (0, 2, 1)


def test_compose_degree_mismatch():
    with pytest.raises(PermError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_inverse():
    assert inverse(Permutation.identity(4)) == Permutation.identity(4)
    assert inverse(parse_cycles("(0,1,2)", 3)) == parse_cycles("(0,2,1)", 3)
    rng = random.Random(7)
    for _ in range(50):
        p = rand_perm(rng, rng.randrange(1, 12))
        assert compose(p, inverse(p)).is_identity()
        assert inverse(inverse(p)) == p


def test_cycle_type():
    assert cycle_type(Permutation.identity(5)) == (1, 1, 1, 1, 1)
    assert cycle_type(parse_cycles("(0,1,2,3,4)", 5)) == (5,)
    # two fixed points and a 9-cycle on 11 points
    p = parse_cycles("(0,1,2,3,4,5,6,7,8)", 11)
    assert cycle_type(p) == (1, 1, 9)
    assert p.order() == 9
    assert len(fixed_points(p)) == 2


def test_cycle_type_partitions_degree():
    rng = random.Random(11)
    for _ in range(100):
        p = rand_perm(rng, rng.randrange(1, 15))
        assert sum(cycle_type(p)) == p.degree
        assert cycle_type(compose(p, inverse(p))) == tuple([1] * p.degree)


def test_is_derangement():
    assert not is_derangement(Permutation.identity(4))
    assert is_derangement(parse_cycles("(0,1)(2,3)", 4))
    assert not is_derangement(parse_cycles("(0,1,2)", 4))


def test_not_a_permutation():
    with pytest.raises(PermError):
        Permutation([0, 0, 1])
    with pytest.raises(PermError):
        Permutation([])


def test_pow_and_order():
    c = parse_cycles("(0,1,2,3,4,5)", 6)
    assert c ** 6 == Permutation.identity(6)
    assert c ** -1 == inverse(c)
    assert (c ** 2).order() == 3
    assert c.order() == 6


def test_parse_roundtrip():
    rng = random.Random(3)
    for _ in range(40):
        p = rand_perm(rng, rng.randrange(2, 10))
        assert parse_cycles(cycle_string(p), p.degree) == p


def test_parse_one_based():
    p = parse_cycles("(1,2,3)", 3, one_based=True)
    assert p == parse_cycles("(0,1,2)", 3)
