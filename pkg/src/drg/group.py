"""Permutation groups backed by a deterministic stabilizer chain.

The chain (base and strong generating set) is built once, on demand, by a
deterministic Schreier-Sims: base points are chosen greedily as the smallest
point moved by a remaining strong generator, and all bookkeeping iterates
points in increasing order, so two builds from the same generator list agree
element for element.
"""

from __future__ import annotations

from .perm import Permutation, PermError, compose, inverse

DEFAULT_ELEMENT_BUDGET = 200_000
DEFAULT_DEGREE_BUDGET = 10_000
DEFAULT_SUBGROUP_BUDGET = 10_000


class BudgetError(RuntimeError):
    """A configured enumeration or degree budget would be exceeded."""


class _ChainLevel:
    """One level of the stabilizer chain.

    ``added`` holds the strong generators filed at this level (those moving
    this base point while fixing all earlier ones); the generating set of the
    level-i stabilizer is the union of ``added`` over levels >= i.
    ``transversal[x]`` is a permutation u with base^u = x.
    """

    __slots__ = ("base", "added", "transversal")

    def __init__(self, base: int):
        self.base = base
        self.added: list[Permutation] = []
        self.transversal: dict[int, Permutation] = {}


class PermGroup:
    """A finite permutation group given by generators on {0, ..., n-1}."""

    def __init__(self, generators, degree: int | None = None, name: str = ""):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if not gens:
            if degree is None:
                raise PermError("empty generator list needs an explicit degree")
            gens = [Permutation.identity(degree)]
        if degree is None:
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise PermError(f"generator degree {g.degree} != group degree {degree}")
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self._chain: list[_ChainLevel] | None = None
        self._order: int | None = None

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} order={self.order()}>"

    # -- stabilizer chain ---------------------------------------------------

    def _strong_gens_at(self, i: int) -> list[Permutation]:
        return [g for level in self._chain[i:] for g in level.added]

    def _file_gen(self, g: Permutation) -> int:
        """File a strong generator at the first level whose base it moves."""
        for m, level in enumerate(self._chain):
            if g.images[level.base] != level.base:
                level.added.append(g)
                return m
        base = min(i for i, j in enumerate(g.images) if i != j)
        level = _ChainLevel(base)
        level.added.append(g)
        self._chain.append(level)
        return len(self._chain) - 1

    def _rebuild_orbit(self, i: int) -> None:
        level = self._chain[i]
        gens = self._strong_gens_at(i)
        level.transversal = {level.base: Permutation.identity(self.degree)}
        frontier = [level.base]
        while frontier:
            new_frontier = []
            for x in frontier:
                ux = level.transversal[x]
                for g in gens:
                    y = g.images[x]
                    if y not in level.transversal:
                        level.transversal[y] = compose(ux, g)
                        new_frontier.append(y)
            frontier = new_frontier

    def _sift_residue(self, p: Permutation, start: int = 0) -> Permutation:
        """Strip transversal factors from p; identity iff p is in the span."""
        for level in self._chain[start:]:
            x = p.images[level.base]
            if x == level.base:
                continue
            u = level.transversal.get(x)
            if u is None:
                return p
            p = compose(p, inverse(u))
        return p

    def _verify_level(self, i: int) -> int | None:
        """Sift all Schreier generators of level i.

        Returns the level at which a missing strong generator was filed, or
        None if the level is complete.
        """
        level = self._chain[i]
        gens = self._strong_gens_at(i)
        for x in sorted(level.transversal):
            ux = level.transversal[x]
            for g in gens:
                y = g.images[x]
                schreier = compose(compose(ux, g), inverse(level.transversal[y]))
                if schreier.is_identity():
                    continue
                residue = self._sift_residue(schreier, i + 1)
                if not residue.is_identity():
                    return self._file_gen(residue)
        return None

    def _build_chain(self) -> None:
        if self._chain is not None:
            return
        self._chain = []
        for g in self.generators:
            if not g.is_identity():
                self._file_gen(g)
        i = len(self._chain) - 1
        while i >= 0:
            self._rebuild_orbit(i)
            filed_at = self._verify_level(i)
            if filed_at is None:
                i -= 1
            else:
                i = filed_at
        order = 1
        for level in self._chain:
            order *= len(level.transversal)
        self._order = order

    def order(self) -> int:
        if self._order is None:
            self._build_chain()
        return self._order

    def membership(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise PermError("degree mismatch in membership test")
        self._build_chain()
        return self._sift_residue(p).is_identity()

    def __contains__(self, p: Permutation) -> bool:
        return self.membership(p)

    def elements(self, budget: int = DEFAULT_ELEMENT_BUDGET):
        """Yield each group element exactly once, streamed off the chain."""
        if self.order() > budget:
            raise BudgetError(
                f"order {self.order()} exceeds enumeration budget {budget}"
            )
        chain = self._chain
        identity = Permutation.identity(self.degree)

        def rec(idx: int, prefix: Permutation):
            if idx < 0:
                yield prefix
                return
            level = chain[idx]
            for x in sorted(level.transversal):
                # g factors as (deeper part) then u_idx, innermost level last
                yield from rec(idx - 1, compose(prefix, level.transversal[x]))

        if not chain:
            yield identity
            return
        yield from rec(len(chain) - 1, identity)

    def element_images(self, budget: int = DEFAULT_ELEMENT_BUDGET) -> list[tuple[int, ...]]:
        """All elements as image tuples, sorted lexicographically."""
        return sorted(p.images for p in self.elements(budget))

    # -- orbits and transitivity --------------------------------------------

    def orbit(self, x: int) -> set[int]:
        if not 0 <= x < self.degree:
            raise PermError(f"point {x} out of range for degree {self.degree}")
        seen = {x}
        frontier = [x]
        while frontier:
            new_frontier = []
            for y in frontier:
                for g in self.generators:
                    z = g.images[y]
                    if z not in seen:
                        seen.add(z)
                        new_frontier.append(z)
            frontier = new_frontier
        return seen

    def orbits(self) -> list[list[int]]:
        remaining = set(range(self.degree))
        out = []
        while remaining:
            x = min(remaining)
            orb = self.orbit(x)
            remaining -= orb
            out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def stabilizer_order(self) -> int:
        """|G_x| for transitive G (all point stabilizers are conjugate)."""
        if not self.is_transitive():
            raise PermError("stabilizer_order requires a transitive group")
        order = self.order()
        assert order % self.degree == 0
        return order // self.degree

    def random_element(self, rng) -> Permutation:
        """Uniform element via the chain (deterministic given the rng)."""
        self._build_chain()
        p = Permutation.identity(self.degree)
        for level in self._chain:
            x = rng.choice(sorted(level.transversal))
            p = compose(level.transversal[x], p)
        return p

    def point_stabilizer_gens(self, x: int) -> list[Permutation]:
        """Generators of the stabilizer of x, via Schreier's lemma."""
        if not 0 <= x < self.degree:
            raise PermError(f"point {x} out of range")
        transversal = {x: Permutation.identity(self.degree)}
        frontier = [x]
        while frontier:
            new_frontier = []
            for a in frontier:
                for g in self.generators:
                    b = g.images[a]
                    if b not in transversal:
                        transversal[b] = compose(transversal[a], g)
                        new_frontier.append(b)
            frontier = new_frontier
        target = self.order() // len(transversal)
        schreier = []
        seen = set()
        for a in sorted(transversal):
            ua = transversal[a]
            for g in self.generators:
                s = compose(compose(ua, g), inverse(transversal[g.images[a]]))
                if not s.is_identity() and s.images not in seen:
                    seen.add(s.images)
                    schreier.append(s)
        return reduce_generators(schreier, self.degree, target)


def group_from_generators(gens, degree: int | None = None, name: str = "") -> PermGroup:
    if not gens:
        raise PermError("need at least one generator (use the identity for the trivial group)")
    return PermGroup(gens, degree, name)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup([Permutation.identity(degree)], degree)


# -- subgroup closure ---------------------------------------------------------


def close_subgroup(gens, degree: int, cap: int) -> list[Permutation] | None:
    """Breadth-first closure of ``gens``; None if the size would exceed cap.

    Independent of the stabilizer chain; used as the enumeration oracle for
    small subgroups and by searches that must abort early.
    """
    identity = tuple(range(degree))
    gen_images = [g.images for g in gens]
    elems = {identity}
    frontier = [identity]
    while frontier:
        new_frontier = []
        for t in frontier:
            for g in gen_images:
                prod = tuple(g[i] for i in t)
                if prod not in elems:
                    if len(elems) >= cap:
                        return None
                    elems.add(prod)
                    new_frontier.append(prod)
        frontier = new_frontier
    return [Permutation(t) for t in sorted(elems)]


def reduce_generators(gens: list[Permutation], degree: int, target_order: int) -> list[Permutation]:
    """Greedy small generating set for the group the gens generate.

    Adds generators in order until the stabilizer-chain order reaches
    ``target_order``; raises if it cannot.
    """
    chosen: list[Permutation] = []
    for g in gens:
        if g.is_identity():
            continue
        if chosen and PermGroup(chosen, degree).membership(g):
            continue
        chosen.append(g)
        if PermGroup(chosen, degree).order() == target_order:
            return chosen
    if target_order == 1:
        return [Permutation.identity(degree)]
    raise PermError(f"generators span order {PermGroup(chosen, degree).order() if chosen else 1},"
                    f" expected {target_order}")


# -- block systems and primitivity --------------------------------------------


class BlockSystem:
    """A G-invariant partition of {0, ..., n-1} into equal-size blocks."""

    def __init__(self, block_of: list[int]):
        self.degree = len(block_of)
        relabel: dict[int, int] = {}
        canon = []
        for b in block_of:
            if b not in relabel:
                relabel[b] = len(relabel)
            canon.append(relabel[b])
        self.block_of = tuple(canon)
        self.num_blocks = len(relabel)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return out

    def block_size(self) -> int:
        return self.degree // self.num_blocks

    def is_invariant_under(self, g: Permutation) -> bool:
        """g maps blocks to blocks: block_of(x^g) depends only on block_of(x)."""
        image_of_block: dict[int, int] = {}
        for x in range(self.degree):
            b = self.block_of[x]
            ib = self.block_of[g.images[x]]
            if image_of_block.setdefault(b, ib) != ib:
                return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, BlockSystem) and self.block_of == other.block_of

    def __hash__(self) -> int:
        return hash(self.block_of)


def minimal_block_system(G: PermGroup, seed_pair: tuple[int, int]) -> BlockSystem:
    """Finest G-invariant partition merging the two seed points (union-find)."""
    n = G.degree
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    queue = [seed_pair]
    union(*seed_pair)
    while queue:
        x, y = queue.pop()
        for g in G.generators:
            gx, gy = g.images[x], g.images[y]
            if union(gx, gy):
                queue.append((gx, gy))
    return BlockSystem([find(x) for x in range(n)])


def blocks_and_primitivity(G: PermGroup) -> tuple[list[BlockSystem], bool]:
    """All minimal nontrivial block systems from seeds {0, a}, deduplicated."""
    if not G.is_transitive():
        raise PermError("blocks_and_primitivity requires a transitive group")
    systems = []
    seen = set()
    for a in range(1, G.degree):
        sys_a = minimal_block_system(G, (0, a))
        if 1 < sys_a.num_blocks < G.degree and sys_a not in seen:
            seen.add(sys_a)
            systems.append(sys_a)
    return systems, not systems


def is_primitive(G: PermGroup) -> bool:
    return blocks_and_primitivity(G)[1]


# -- coset actions -------------------------------------------------------------


class CosetAction:
    """The action of G on the right cosets of H = <H_gens>.

    ``image`` carries G's generators to the coset permutation group;
    ``act(p)`` maps any element of G (given in the original degree) to its
    permutation of the cosets. Coset 0 is H itself.
    """

    def __init__(self, G: PermGroup, H_gens, degree_budget: int = DEFAULT_DEGREE_BUDGET,
                 subgroup_budget: int = DEFAULT_SUBGROUP_BUDGET, name: str = ""):
        for h in H_gens:
            if not G.membership(h):
                raise PermError("coset action requires H to be a subgroup of G")
        H_elems = close_subgroup(H_gens, G.degree, subgroup_budget)
        if H_elems is None:
            raise BudgetError(f"subgroup closure exceeds budget {subgroup_budget}")
        self.group_order = G.order()
        self.subgroup_order = len(H_elems)
        if self.group_order % self.subgroup_order != 0:
            raise PermError("subgroup order does not divide group order")
        index = self.group_order // self.subgroup_order
        if index > degree_budget:
            raise BudgetError(f"coset index {index} exceeds degree budget {degree_budget}")

        self._H_images = [h.images for h in H_elems]
        identity = Permutation.identity(G.degree)
        key0 = self._coset_key(identity)
        self._key_to_index = {key0: 0}
        self._reps = [identity]
        frontier = [0]
        while frontier:
            new_frontier = []
            for i in frontier:
                rep = self._reps[i]
                for g in G.generators:
                    moved = compose(rep, g)
                    key = self._coset_key(moved)
                    if key not in self._key_to_index:
                        self._key_to_index[key] = len(self._reps)
                        self._reps.append(moved)
                        new_frontier.append(self._key_to_index[key])
            frontier = new_frontier
        if len(self._reps) != index:
            raise PermError("coset enumeration did not reach the full index")

        self.degree = index
        self.group = PermGroup([self.act(g) for g in G.generators], index, name=name)

    def _coset_key(self, rep: Permutation) -> tuple[int, ...]:
        rep_images = rep.images
        return min(tuple(rep_images[i] for i in h) for h in self._H_images)

    def act(self, p: Permutation) -> Permutation:
        """Permutation induced by p on the cosets."""
        images = []
        for rep in self._reps:
            key = self._coset_key(compose(rep, p))
            images.append(self._key_to_index[key])
        return Permutation(images)

    def point_to_coset_rep(self, i: int) -> Permutation:
        return self._reps[i]


def coset_action(G: PermGroup, H_gens, degree_budget: int = DEFAULT_DEGREE_BUDGET,
                 subgroup_budget: int = DEFAULT_SUBGROUP_BUDGET, name: str = "") -> CosetAction:
    return CosetAction(G, H_gens, degree_budget, subgroup_budget, name)


# -- block action (for lifting) ------------------------------------------------


def block_action(G: PermGroup, system: BlockSystem) -> tuple[PermGroup, list[Permutation]]:
    """Image of G acting on the blocks of ``system``, with generator images."""
    if system.degree != G.degree:
        raise PermError("block system degree mismatch")
    reps = [blk[0] for blk in system.blocks()]
    images = []
    for g in G.generators:
        img = [system.block_of[g.images[r]] for r in reps]
        images.append(Permutation(img))
    return PermGroup(images, system.num_blocks), images


def block_image(g: Permutation, system: BlockSystem) -> Permutation:
    """Permutation induced by g on the blocks (g must preserve the system)."""
    if not system.is_invariant_under(g):
        raise PermError("permutation does not preserve the block system")
    reps = [blk[0] for blk in system.blocks()]
    return Permutation(system.block_of[g.images[r]] for r in reps)
