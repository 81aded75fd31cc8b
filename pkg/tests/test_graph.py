import random
from fractions import Fraction

import pytest

from drg.graph import (
    CertificateError,
    CliqueCertificate,
    CocliqueCertificate,
    are_adjacent,
    clique_coclique_audit,
    density_bounds,
    derangement_set,
    find_k_clique,
    max_clique,
    max_intersecting_family,
    validate_clique,
    validate_coclique,
)
from drg.group import PermGroup
from drg.perm import Permutation, compose, inverse, is_derangement, parse_cycles


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


def test_derangement_set_s2_s3():
    d2 = derangement_set(sym(2))
    assert d2.count == 1 and d2.members[0] == parse_cycles("(0,1)", 2)
    d3 = derangement_set(sym(3))
    assert d3.count == 2  # exactly the two 3-cycles
    assert all(p.order() == 3 for p in d3.members)


def test_derangement_set_closed_under_inverse():
    for G in (sym(4), alt(5), cyclic(6)):
        d = derangement_set(G)
        members = {p.images for p in d.members}
        assert all(inverse(p).images in members for p in d.members)
        assert tuple(range(G.degree)) not in members


def test_derangement_set_nonempty_jordan():
    for G in (sym(2), sym(3), sym(4), alt(4), alt(5), cyclic(7)):
        assert derangement_set(G).count > 0


def test_are_adjacent_basics():
    g = parse_cycles("(0,1,2)", 3)
    assert not are_adjacent(g, g)
    ident = Permutation.identity(3)
    assert are_adjacent(ident, g) == is_derangement(g)
    rng = random.Random(1)
    for _ in range(50):
        images = list(range(5))
        rng.shuffle(images)
        a = Permutation(images)
        rng.shuffle(images)
        b = Permutation(images)
        assert are_adjacent(a, b) == are_adjacent(b, a)
        assert are_adjacent(a, b) == is_derangement(compose(a, inverse(b)))


def test_graph_is_regular_of_degree_d():
    # spot-check vertex-transitivity: every vertex has |D| neighbours
    G = sym(4)
    dset = derangement_set(G)
    elements = [Permutation(t) for t in G.element_images()]
    rng = random.Random(3)
    for _ in range(20):
        v = rng.choice(elements)
        deg = sum(1 for u in elements if u != v and are_adjacent(u, v))
        assert deg == dset.count


def test_find_k_clique_jordan_and_triangle():
    for G in (sym(2), sym(3), sym(4), alt(4), alt(5), cyclic(5), cyclic(6)):
        r = find_k_clique(G, 2)
        assert r.status == "found" and r.certificate.size == 2
        if G.degree >= 3:
            r3 = find_k_clique(G, 3)
            assert r3.status == "found" and r3.certificate.size == 3


def test_find_k_clique_no_large_clique_in_c2():
    r = find_k_clique(sym(2), 3)
    assert r.status == "none"


def test_find_k_clique_alt5_deg6_size4():
    # A5 acting on 6 points; the derangement graph contains a 4-clique
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

    G = PermGroup([moebius(add1), moebius(neginv)], name="A5:6")
    assert G.order() == 60 and G.is_transitive()
    r = find_k_clique(G, 4)
    assert r.status == "found"
    validate_clique(r.certificate, G)


def test_max_clique_regular_group_is_whole_group():
    G = cyclic(5)
    r = max_clique(G)
    assert r.optimal and r.certificate.size == 5


def test_max_clique_sym3():
    r = max_clique(sym(3))
    assert r.optimal and r.certificate.size == 3


def test_max_clique_brute_force_agreement():
    # exhaustive check on tiny groups: compare against naive maximum search
    import itertools

    for G in (sym(3), cyclic(4), cyclic(6), alt(4)):
        elements = [Permutation(t) for t in G.element_images()]
        best = 1
        for size in range(2, len(elements) + 1):
            found = False
            for combo in itertools.combinations(elements, size):
                if all(
                    are_adjacent(a, b) for a, b in itertools.combinations(combo, 2)
                ):
                    found = True
                    break
            if found:
                best = size
            else:
                break
        r = max_clique(G)
        assert r.optimal and r.certificate.size == best


def test_max_intersecting_family_sym3():
    r = max_intersecting_family(sym(3))
    assert r.optimal
    assert r.certificate.size == 2  # = |G_omega|, the Cameron-Ku bound at n = 3


def test_max_intersecting_family_trivial():
    G = PermGroup([Permutation.identity(3)])
    r = max_intersecting_family(G)
    assert r.certificate.size == 1


def test_max_intersecting_family_at_least_stabilizer():
    for G in (sym(4), alt(5), cyclic(6)):
        r = max_intersecting_family(G)
        assert r.certificate.size >= G.stabilizer_order()


def test_clique_coclique_audit():
    G = sym(3)
    cl = max_clique(G).certificate
    co = max_intersecting_family(G).certificate
    assert clique_coclique_audit(cl, co, G)
    assert cl.size * co.size <= G.order()


def test_audit_rejects_duplicate_vertex():
    G = sym(3)
    d = derangement_set(G).members[0]
    bad = CliqueCertificate([Permutation.identity(3), d, d])
    with pytest.raises(CertificateError):
        validate_clique(bad, G)


def test_audit_rejects_nonmember():
    G = alt(4)
    odd = parse_cycles("(0,1)", 4)
    bad = CliqueCertificate([Permutation.identity(4), odd])
    with pytest.raises(CertificateError):
        validate_clique(bad, G)


def test_validate_coclique_rejects_disjoint_pair():
    g = parse_cycles("(0,1)(2,3)", 4)
    bad = CocliqueCertificate([Permutation.identity(4), g])
    with pytest.raises(CertificateError):
        validate_coclique(bad)


def test_density_regular_group():
    rep = density_bounds(cyclic(5))
    assert rep.rho_lower == rep.rho_upper == Fraction(1)
    assert rep.best_clique == 5 and rep.best_coclique == 1


def test_density_sym3():
    rep = density_bounds(sym(3))
    assert rep.stabilizer_order == 2
    assert rep.rho_lower == Fraction(1)
    assert rep.rho_upper == Fraction(1)
    assert rep.status == "ok"


def test_density_rho_upper_triangle():
    for G in (sym(3), sym(4), alt(5), cyclic(6)):
        rep = density_bounds(G)
        if G.degree >= 3:
            assert rep.rho_upper <= Fraction(G.degree, 3)
