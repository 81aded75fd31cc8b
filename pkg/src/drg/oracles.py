"""Reference implementations used to cross-check the production searches.

These share no search logic with the production code: cliques and cocliques
go through Bron-Kerbosch with pivoting on explicit adjacency bitsets, group
order through a plain breadth-first closure, and the semiregular maximum
through a full walk of the subgroup lattice up to the degree. They are
meant for groups of order a few hundred.
"""

from __future__ import annotations

from .group import PermGroup, close_subgroup
from .perm import Permutation


def closure_order(G: PermGroup, cap: int = 10 ** 6) -> int:
    elems = close_subgroup(list(G.generators), G.degree, cap)
    if elems is None:
        raise ValueError("closure exceeded the cap")
    return len(elems)


def _adjacency_bitsets(images: list[tuple[int, ...]], complement: bool) -> list[int]:
    n = len(images)
    rows = [0] * n
    for i in range(n):
        gi = images[i]
        bits = 0
        for j in range(n):
            if j == i:
                continue
            differs_everywhere = all(a != b for a, b in zip(gi, images[j]))
            if differs_everywhere != complement:
                bits |= 1 << j
        rows[i] = bits
    return rows


def _bron_kerbosch(adj: list[int], n: int) -> list[int]:
    """Maximum clique via pivoted Bron-Kerbosch over int bitsets."""
    best: list[int] = []

    def extend(r: list[int], p: int, x: int) -> None:
        nonlocal best
        if not p and not x:
            if len(r) > len(best):
                best = r.copy()
            return
        if len(r) + p.bit_count() <= len(best):
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best_cover = p & ~adj[pivot]
        candidates = best_cover
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            r.append(v)
            extend(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    extend([], (1 << n) - 1, 0)
    return best


def exhaustive_max_clique(G: PermGroup) -> int:
    """omega of the derangement graph over all |G| vertices, no symmetry tricks."""
    images = G.element_images()
    adj = _adjacency_bitsets(images, complement=False)
    return len(_bron_kerbosch(adj, len(images)))


def exhaustive_max_coclique(G: PermGroup) -> int:
    """alpha of the derangement graph = maximum clique of the complement."""
    images = G.element_images()
    adj = _adjacency_bitsets(images, complement=True)
    return len(_bron_kerbosch(adj, len(images)))


def exhaustive_max_semiregular(G: PermGroup) -> int:
    """Largest semiregular subgroup by walking the whole subgroup lattice.

    Every subgroup of order dividing the degree is visited via join
    closure; semiregularity is then tested from the definition.
    """
    n = G.degree
    elements = [Permutation(t) for t in G.element_images()]
    identity = tuple(range(n))
    trivial = frozenset({identity})
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        new = []
        for H in frontier:
            gens = [Permutation(t) for t in H if t != identity]
            for g in elements:
                if g.images in H or g.is_identity():
                    continue
                closed = close_subgroup(gens + [g], n, n)
                if closed is None:
                    continue
                key = frozenset(p.images for p in closed)
                if key not in seen:
                    seen.add(key)
                    new.append(key)
        frontier = new
    best = 1
    for H in seen:
        if all(t == identity or all(i != j for i, j in enumerate(t)) for t in H):
            best = max(best, len(H))
    return best
