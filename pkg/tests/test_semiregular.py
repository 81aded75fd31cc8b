import itertools
import random

import pytest

from drg.group import BlockSystem, PermGroup, close_subgroup
from drg.perm import Permutation, compose, is_derangement, parse_cycles
from drg.semireg import (
    ElusivenessReport,
    SemiregularWitness,
    WitnessError,
    is_elusive,
    is_semiregular_element,
    is_semiregular_subgroup,
    lift_semiregular,
    max_semiregular_order,
    product_action_fpf,
    product_action_order,
    product_action_perm,
    semiregular_primes,
    validate_semiregular,
    wreath_elusive_check,
)


def cyclic(n):
    return PermGroup([parse_cycles(f"({','.join(map(str, range(n)))})", n)], name=f"C{n}")


def sym(n):
    return PermGroup(
        [parse_cycles("(0,1)", n), parse_cycles(f"({','.join(map(str, range(n)))})", n)],
        name=f"S{n}",
    )


def alt(n):
    gens = [parse_cycles("(0,1,2)", n)]
    if n % 2:
        gens.append(parse_cycles(f"({','.join(map(str, range(n)))})", n))
    else:
        gens.append(parse_cycles(f"({','.join(map(str, range(1, n)))})", n))
    return PermGroup(gens, name=f"A{n}")


def a5_on_6():
    INF = 5

    def moebius(f):
        return Permutation([f(z) for z in range(6)])

    def add1(z):
        return INF if z == INF else (z + 1) % 5

    def neginv(z):
        if z == INF:
            return 0
        if z == 0:
            return INF
        return (-pow(z, 3, 5)) % 5

    return PermGroup([moebius(add1), moebius(neginv)], name="A5:6")


def test_semiregular_element_basics():
    assert is_semiregular_element(Permutation.identity(4))
    assert is_semiregular_element(parse_cycles("(0,1)(2,3)", 4))
    assert not is_semiregular_element(parse_cycles("(0,1,2)", 4))


def test_semiregular_element_matches_subgroup_definition():
    rng = random.Random(17)
    for _ in range(300):
        n = rng.randrange(2, 9)
        images = list(range(n))
        rng.shuffle(images)
        p = Permutation(images)
        assert is_semiregular_element(p) == is_semiregular_subgroup([p], n)


def test_semiregular_subgroup_examples():
    assert is_semiregular_subgroup([Permutation.identity(5)], 5)
    C5 = cyclic(5)
    assert is_semiregular_subgroup(list(C5.generators), 5)
    # a point stabilizer of order > 1 fixes a point
    assert not is_semiregular_subgroup([parse_cycles("(1,2)", 4)], 4)


def test_semiregular_primes_c5():
    assert semiregular_primes(cyclic(5)) == {5}
    assert semiregular_primes(sym(3)) == {3}
    assert semiregular_primes(sym(4)) == set()


def test_semiregular_prime_elements_are_derangements():
    for G in (cyclic(5), sym(3), alt(4), alt(5), a5_on_6()):
        for p in semiregular_primes(G):
            for g in G.elements():
                if g.order() == p:
                    assert is_derangement(g)
                    assert is_semiregular_element(g)


def test_is_elusive_small_groups():
    rep = is_elusive(alt(5))
    assert rep.elusive is False and rep.witness.order() == 5
    rep = is_elusive(cyclic(4))
    assert rep.elusive is False and rep.witness_order == 2
    assert set(rep.primes_checked) == {2}


def test_max_semiregular_regular_groups():
    r = max_semiregular_order(cyclic(5))
    assert r.optimal and r.witness.order == 5
    validate_semiregular(r.witness, 5)
    r = max_semiregular_order(sym(3))
    assert r.optimal and r.witness.order == 3


def test_max_semiregular_alt4_finds_klein_four():
    r = max_semiregular_order(alt(4))
    assert r.optimal and r.witness.order == 4
    assert r.witness.method == "backtrack"
    validate_semiregular(r.witness, 4)


def test_max_semiregular_a5_deg6():
    r = max_semiregular_order(a5_on_6())
    assert r.optimal
    assert r.witness.order == 3
    validate_semiregular(r.witness, 6)


def test_max_semiregular_brute_force_small():
    # oracle: all subgroups of order dividing n via join closure, test each
    for G in (cyclic(6), sym(4), alt(4), alt(5), a5_on_6()):
        n = G.degree
        elements = [Permutation(t) for t in G.element_images()]
        subgroups = {frozenset({tuple(range(n))})}
        frontier = [frozenset({tuple(range(n))})]
        while frontier:
            new = []
            for H in frontier:
                gens = [Permutation(t) for t in H]
                for g in elements:
                    closed = close_subgroup(gens + [g], n, n)
                    if closed is None:
                        continue
                    key = frozenset(p.images for p in closed)
                    if key not in subgroups:
                        subgroups.add(key)
                        new.append(key)
            frontier = new
        best = 1
        for H in subgroups:
            ident = tuple(range(n))
            if all(t == ident or all(i != j for i, j in enumerate(t)) for t in H):
                best = max(best, len(H))
        r = max_semiregular_order(G)
        assert r.optimal, G.name
        assert r.witness.order == best, (G.name, r.witness.order, best)


def test_witness_seeds_checked_not_trusted():
    # a non-semiregular seed must be ignored
    G = sym(4)
    bad_seed = ([parse_cycles("(1,2)", 4)], "catalog")
    r = max_semiregular_order(G, seeds=(bad_seed,))
    assert r.witness.order == 4  # the true maximum (a regular C4 or V4)


def test_validate_semiregular_rejects_bad():
    w = SemiregularWitness("S4", [parse_cycles("(1,2)", 4)], 2, "catalog")
    with pytest.raises(WitnessError):
        validate_semiregular(w, 4)


def test_lift_semiregular_doubled_action():
    # G = <(g,g) on two sheets, sheet swap>; blocks = sheet pairs {x, x+n}
    base = alt(5)
    n = base.degree
    doubled = []
    for g in base.generators:
        doubled.append(Permutation(list(g.images) + [n + i for i in g.images]))
    swap = Permutation([n + i for i in range(n)] + list(range(n)))
    G = PermGroup(doubled + [swap], name="A5 x C2 doubled")
    assert G.order() == 120
    system = BlockSystem([i % n for i in range(2 * n)])
    for g in G.generators:
        assert system.is_invariant_under(g)

    # lift a semiregular C5 from the block action (natural A5 on 5 points)
    five_cycle = parse_cycles("(0,1,2,3,4)", 5)
    w = lift_semiregular(G, system, [five_cycle])
    assert w.order == 10  # C5 x <swap>
    assert w.method == "lifted"
    validate_semiregular(w, 10)


def test_lift_semiregular_kernel_case():
    base = alt(5)
    n = base.degree
    doubled = [Permutation(list(g.images) + [n + i for i in g.images]) for g in base.generators]
    swap = Permutation([n + i for i in range(n)] + list(range(n)))
    G = PermGroup(doubled + [swap])
    system = BlockSystem([i % n for i in range(2 * n)])
    w = lift_semiregular(G, system, [Permutation.identity(n)])
    assert w.order == 2  # the kernel <swap>
    validate_semiregular(w, 10)


def test_lift_semiregular_rejects_nonsemiregular_blocks():
    base = alt(5)
    n = base.degree
    doubled = [Permutation(list(g.images) + [n + i for i in g.images]) for g in base.generators]
    swap = Permutation([n + i for i in range(n)] + list(range(n)))
    G = PermGroup(doubled + [swap])
    system = BlockSystem([i % n for i in range(2 * n)])
    with pytest.raises(Exception):
        lift_semiregular(G, system, [parse_cycles("(0,1,2)", 5)])  # fixes 2 block pts


def test_lift_semiregular_singleton_blocks():
    G = cyclic(5)
    system = BlockSystem(list(range(5)))
    w = lift_semiregular(G, system, [G.generators[0]])
    assert w.order == 5


def test_product_action_fpf_trivial_cases():
    ident5 = Permutation.identity(5)
    a_id = Permutation.identity(2)
    assert not product_action_fpf([ident5, ident5], a_id)
    d = parse_cycles("(0,1,2,3,4)", 5)
    assert product_action_fpf([d, ident5], a_id)  # first coordinate never fixed
    swap = parse_cycles("(0,1)", 2)
    # cycle product d * d^-1 = id has fixed points
    assert not product_action_fpf([d, d ** -1], swap)


def test_product_action_fpf_brute_force():
    rng = random.Random(23)
    for _ in range(400):
        delta = rng.randrange(2, 6)
        kappa = rng.randrange(1, 4)
        hs = []
        for _ in range(kappa):
            images = list(range(delta))
            rng.shuffle(images)
            hs.append(Permutation(images))
        a_images = list(range(kappa))
        rng.shuffle(a_images)
        a = Permutation(a_images)
        fast = product_action_fpf(hs, a)
        big = product_action_perm(hs, a)
        assert fast == is_derangement(big)
        assert product_action_order(hs, a) == big.order()


def test_wreath_elusive_not_elusive_alt5():
    c2 = PermGroup([parse_cycles("(0,1)", 2)], name="C2")
    rep = wreath_elusive_check(alt(5), c2)
    assert rep.elusive is False
    assert rep.witness is not None and is_derangement(rep.witness)
    assert rep.witness.degree == 25
    assert rep.witness_order == 5
