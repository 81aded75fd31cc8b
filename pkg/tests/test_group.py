import random

import pytest

from drg.group import (
    BlockSystem,
    BudgetError,
    PermGroup,
    block_image,
    blocks_and_primitivity,
    close_subgroup,
    coset_action,
    group_from_generators,
    trivial_group,
)
from drg.perm import Permutation, PermError, compose, parse_cycles


def cyclic(n):
    return PermGroup([parse_cycles(f"({','.join(map(str, range(n)))})", n)])


def sym(n):
    return PermGroup([parse_cycles("(0,1)", n), parse_cycles(f"({','.join(map(str, range(n)))})", n)])


def alt(n):
    gens = [parse_cycles("(0,1,2)", n)]
    if n % 2:
        gens.append(parse_cycles(f"({','.join(map(str, range(n)))})", n))
    else:
        gens.append(parse_cycles(f"({','.join(map(str, range(1, n)))})", n))
    return PermGroup(gens)


def brute_closure(gens, degree):
    elems = close_subgroup(gens, degree, 10 ** 6)
    assert elems is not None
    return elems


def test_trivial_group():
    G = trivial_group(4)
    assert G.order() == 1
    assert list(G.elements()) == [Permutation.identity(4)]


def test_symmetric_orders():
    import math

    for n in range(2, 7):
        assert sym(n).order() == math.factorial(n)
        assert alt(n if n > 2 else 3).order() >= 1


def test_alternating_orders():
    import math

    for n in range(3, 8):
        assert alt(n).order() == math.factorial(n) // 2


def test_order_matches_brute_force_closure():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randrange(2, 7)
        gens = []
        for _ in range(rng.randrange(1, 3)):
            images = list(range(n))
            rng.shuffle(images)
            gens.append(Permutation(images))
        G = PermGroup(gens)
        assert G.order() == len(brute_closure(gens, n))


def test_membership():
    G = alt(5)
    assert G.membership(Permutation.identity(5))
    assert not G.membership(parse_cycles("(0,1)", 5))  # odd
    assert G.membership(parse_cycles("(0,1,2)", 5))
    rng = random.Random(9)
    for _ in range(20):
        p = Permutation.identity(5)
        for _ in range(20):
            p = compose(p, G.generators[rng.randrange(len(G.generators))])
        assert G.membership(p)


def test_membership_consistent_with_enumeration():
    G = sym(4)
    elems = set(G.element_images())
    import itertools

    for images in itertools.permutations(range(4)):
        assert G.membership(Permutation(images)) == (images in elems)


def test_elements_count_and_uniqueness():
    for G, expect in ((sym(5), 120), (alt(5), 60), (sym(4), 24), (cyclic(6), 6)):
        elems = list(G.elements())
        assert len(elems) == expect
        assert len({e.images for e in elems}) == expect
        assert all(G.membership(e) for e in elems)


def test_elements_budget():
    G = sym(6)
    with pytest.raises(BudgetError):
        list(G.elements(budget=100))


def test_orbit():
    G = trivial_group(5)
    assert G.orbit(3) == {3}
    C = cyclic(5)
    assert C.orbit(0) == {0, 1, 2, 3, 4}
    with pytest.raises(PermError):
        C.orbit(9)


def test_orbit_sizes_partition_degree():
    g = parse_cycles("(0,1)(2,3,4)", 7)
    G = PermGroup([g])
    sizes = sorted(len(o) for o in G.orbits())
    assert sum(sizes) == 7
    assert sizes == [1, 1, 2, 3]


def test_orbit_stabilizer():
    for G in (cyclic(6), sym(5), alt(6)):
        assert G.is_transitive()
        assert G.stabilizer_order() * G.degree == G.order()


def test_blocks_cyclic4():
    C4 = cyclic(4)
    systems, primitive = blocks_and_primitivity(C4)
    assert not primitive
    wanted = BlockSystem([0, 1, 0, 1])  # {{0,2},{1,3}}
    assert wanted in systems
    for sys_ in systems:
        for g in C4.generators:
            assert sys_.is_invariant_under(g)


def test_blocks_brute_force_small():
    # compare against brute force over all equal-size partitions for degree <= 6
    import itertools

    def all_block_systems(G):
        n = G.degree
        found = []
        for size in range(2, n):
            if n % size:
                continue
            # partitions of 0..n-1 into blocks of given size, block containing 0 first
            def partitions(remaining):
                if not remaining:
                    yield []
                    return
                first = min(remaining)
                for rest in itertools.combinations(sorted(remaining - {first}), size - 1):
                    blk = {first, *rest}
                    for tail in partitions(remaining - blk):
                        yield [blk] + tail

            for part in partitions(set(range(n))):
                block_of = [0] * n
                for i, blk in enumerate(part):
                    for x in blk:
                        block_of[x] = i
                sys_ = BlockSystem(block_of)
                if all(sys_.is_invariant_under(g) for g in G.generators):
                    found.append(sys_)
        return found

    for G in (cyclic(4), cyclic(6), sym(4), alt(5), PermGroup([parse_cycles("(0,1,2,3)", 4), parse_cycles("(1,3)", 4)])):
        brute = all_block_systems(G)
        systems, primitive = blocks_and_primitivity(G)
        assert primitive == (not brute)
        for sys_ in systems:
            assert sys_ in brute


def test_alt5_primitive():
    _, primitive = blocks_and_primitivity(alt(5))
    assert primitive


def test_intransitive_blocks_error():
    G = PermGroup([parse_cycles("(0,1)", 4)])
    with pytest.raises(PermError):
        blocks_and_primitivity(G)


def test_coset_action_whole_group():
    G = sym(4)
    act = coset_action(G, list(G.generators))
    assert act.degree == 1


def test_coset_action_point_stabilizer():
    # stabilizer of 0 in S4 is S3 on {1,2,3}; coset action has degree 4
    G = sym(4)
    H = [parse_cycles("(1,2)", 4), parse_cycles("(1,2,3)", 4)]
    act = coset_action(G, H)
    assert act.degree == 4
    assert act.group.is_transitive()
    assert act.group.order() * act.subgroup_order % G.order() == 0
    assert act.degree * act.subgroup_order == G.order()


def test_coset_action_not_subgroup():
    G = alt(5)
    with pytest.raises(PermError):
        coset_action(G, [parse_cycles("(0,1)", 5)])


def test_coset_action_budget():
    G = sym(6)
    H = [Permutation.identity(6)]
    with pytest.raises(BudgetError):
        coset_action(G, H, degree_budget=100)


def test_coset_action_homomorphism():
    G = sym(4)
    H = [parse_cycles("(1,2)", 4), parse_cycles("(1,2,3)", 4)]
    act = coset_action(G, H)
    rng = random.Random(2)
    for _ in range(20):
        p = G.random_element(rng)
        q = G.random_element(rng)
        assert act.act(compose(p, q)) == compose(act.act(p), act.act(q))


def test_block_image():
    C4 = cyclic(4)
    sys_ = BlockSystem([0, 1, 0, 1])
    g = C4.generators[0]
    img = block_image(g, sys_)
    assert img == parse_cycles("(0,1)", 2)
    with pytest.raises(PermError):
        block_image(parse_cycles("(0,1)", 4), sys_)


def test_group_from_generators_errors():
    with pytest.raises(PermError):
        group_from_generators([])
    with pytest.raises(PermError):
        group_from_generators([Permutation.identity(3), Permutation.identity(4)])
