"""The derangement graph of a transitive permutation group, kept implicit.

Vertices are group elements; g and h are adjacent when g h^-1 is a
derangement, which under the right-action convention happens exactly when
the image tuples of g and h disagree in every coordinate. Adjacency is
always computed from image tuples; no |G| x |G| matrix is ever stored.

Searches operate on integer bitsets over an indexed vertex universe and are
deterministic: vertices are indexed in lexicographic order of their image
tuples and branching follows index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .group import DEFAULT_ELEMENT_BUDGET, BudgetError, PermGroup
from .perm import Permutation, PermError

DEFAULT_NODE_BUDGET = 200_000


@dataclass
class DerangementSet:
    group: PermGroup
    members: list[Permutation]

    @property
    def count(self) -> int:
        return len(self.members)


def derangement_set(G: PermGroup, budget: int = DEFAULT_ELEMENT_BUDGET) -> DerangementSet:
    """All fixed-point-free elements of G (enumerated; needs order <= budget)."""
    if not G.is_transitive():
        raise PermError("derangement graphs are defined here for transitive groups")
    members = [p for p in G.elements(budget) if all(i != j for i, j in enumerate(p.images))]
    members.sort()
    return DerangementSet(G, members)


def are_adjacent(g: Permutation, h: Permutation) -> bool:
    """True iff g h^-1 is a derangement, i.e. g and h disagree everywhere."""
    if g.degree != h.degree:
        raise PermError("degree mismatch in adjacency test")
    return all(a != b for a, b in zip(g.images, h.images))


@dataclass
class CliqueCertificate:
    vertices: list[Permutation]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_json_dict(self) -> dict:
        return {
            "type": "clique",
            "degree": self.vertices[0].degree,
            "vertices": [list(v.images) for v in self.vertices],
        }


@dataclass
class CocliqueCertificate:
    vertices: list[Permutation]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_json_dict(self) -> dict:
        return {
            "type": "coclique",
            "degree": self.vertices[0].degree,
            "vertices": [list(v.images) for v in self.vertices],
        }


class CertificateError(ValueError):
    """A certificate failed independent re-validation."""


def validate_clique(cert: CliqueCertificate, G: PermGroup | None = None,
                    require_identity: bool = True) -> None:
    """Re-check a clique certificate from the definition.

    Shares no logic with the searches: ratios are checked by a direct scan
    for a common image coordinate.
    """
    verts = cert.vertices
    if not verts:
        raise CertificateError("empty certificate")
    seen = set()
    for v in verts:
        if v.images in seen:
            raise CertificateError(f"duplicate vertex {v!r}")
        seen.add(v.images)
        if G is not None and not G.membership(v):
            raise CertificateError(f"vertex {v!r} is not a group member")
    if require_identity and tuple(range(verts[0].degree)) not in seen:
        raise CertificateError("clique certificate must contain the identity")
    for i, g in enumerate(verts):
        for h in verts[i + 1 :]:
            for a, b in zip(g.images, h.images):
                if a == b:
                    raise CertificateError(
                        f"vertices agree at a point: {g!r} vs {h!r}"
                    )


def validate_coclique(cert: CocliqueCertificate, G: PermGroup | None = None) -> None:
    """Re-check an intersecting-family certificate from the definition."""
    verts = cert.vertices
    if not verts:
        raise CertificateError("empty certificate")
    seen = set()
    for v in verts:
        if v.images in seen:
            raise CertificateError(f"duplicate vertex {v!r}")
        seen.add(v.images)
        if G is not None and not G.membership(v):
            raise CertificateError(f"vertex {v!r} is not a group member")
    for i, g in enumerate(verts):
        for h in verts[i + 1 :]:
            if all(a != b for a, b in zip(g.images, h.images)):
                raise CertificateError(
                    f"non-intersecting pair in coclique: {g!r} vs {h!r}"
                )


# -- bitset search engine -------------------------------------------------------


class _BudgetExhausted(Exception):
    pass


class _LazyAdjacency:
    """Adjacency rows over an indexed vertex list, built on first use."""

    def __init__(self, images: list[tuple[int, ...]], complement: bool = False):
        self.images = images
        self.complement = complement
        self._rows: dict[int, int] = {}

    def row(self, i: int) -> int:
        cached = self._rows.get(i)
        if cached is not None:
            return cached
        gi = self.images[i]
        bits = 0
        if self.complement:
            for j, hj in enumerate(self.images):
                if j != i and any(a == b for a, b in zip(gi, hj)):
                    bits |= 1 << j
        else:
            for j, hj in enumerate(self.images):
                if j != i and all(a != b for a, b in zip(gi, hj)):
                    bits |= 1 << j
        self._rows[i] = bits
        return bits


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass
class SearchStats:
    nodes: int = 0
    budget: int = DEFAULT_NODE_BUDGET
    exhausted: bool = False

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = True
            raise _BudgetExhausted


def _find_clique_of_size(adj: _LazyAdjacency, universe: int, k: int,
                         stats: SearchStats) -> list[int] | None:
    """Depth-first search for a k-clique inside the universe bitset."""

    def rec(chosen: list[int], candidates: int) -> list[int] | None:
        if len(chosen) == k:
            return chosen
        if len(chosen) + candidates.bit_count() < k:
            return None
        rest = candidates
        for v in _iter_bits(candidates):
            stats.tick()
            rest ^= 1 << v
            got = rec(chosen + [v], rest & adj.row(v))
            if got is not None:
                return got
            if len(chosen) + 1 + rest.bit_count() < k:
                return None
        return None

    return rec([], universe)


def _max_clique_search(adj: _LazyAdjacency, universe: int, stats: SearchStats,
                       initial: list[int] | None = None,
                       stop_at: int | None = None) -> tuple[list[int], bool]:
    """Branch and bound with a greedy-coloring bound (Tomita style).

    Returns (best vertex list, closed) where closed means the search space
    was exhausted rather than the node budget.
    """
    best = list(initial or [])

    def color_sort(P: int) -> list[tuple[int, int]]:
        out = []
        remaining = P
        color = 0
        while remaining:
            color += 1
            avail = remaining
            while avail:
                v = (avail & -avail).bit_length() - 1
                out.append((v, color))
                avail &= ~adj.row(v)
                avail &= ~(1 << v)
                remaining &= ~(1 << v)
        return out

    def expand(chosen: list[int], P: int) -> None:
        nonlocal best
        stats.tick()
        ordered = color_sort(P)
        while ordered:
            v, c = ordered.pop()
            if len(chosen) + c <= len(best):
                return
            if stop_at is not None and len(best) >= stop_at:
                return
            chosen.append(v)
            newP = P & adj.row(v)
            if newP:
                expand(chosen, newP)
            elif len(chosen) > len(best):
                best = chosen.copy()
            chosen.pop()
            P &= ~(1 << v)

    closed = True
    try:
        expand([], universe)
    except _BudgetExhausted:
        closed = False
    return best, closed


# -- public searches ------------------------------------------------------------


@dataclass
class CliqueSearchResult:
    status: str  # "found" | "none" | "unknown"
    certificate: CliqueCertificate | None
    nodes: int


def find_k_clique(G: PermGroup, k: int,
                  node_budget: int = DEFAULT_NODE_BUDGET,
                  element_budget: int = DEFAULT_ELEMENT_BUDGET) -> CliqueSearchResult:
    """Search for a k-clique in the derangement graph, rooted at the identity.

    Vertex-transitivity makes the identity rooting lossless: some maximum
    clique contains any given vertex.
    """
    if k < 1:
        raise PermError("k must be positive")
    identity = Permutation.identity(G.degree)
    if k == 1:
        return CliqueSearchResult("found", CliqueCertificate([identity]), 0)
    dset = derangement_set(G, element_budget)
    images = [p.images for p in dset.members]
    adj = _LazyAdjacency(images)
    universe = (1 << len(images)) - 1
    stats = SearchStats(budget=node_budget)
    try:
        got = _find_clique_of_size(adj, universe, k - 1, stats)
    except _BudgetExhausted:
        return CliqueSearchResult("unknown", None, stats.nodes)
    if got is None:
        return CliqueSearchResult("none", None, stats.nodes)
    vertices = [identity] + [dset.members[i] for i in sorted(got)]
    cert = CliqueCertificate(vertices)
    validate_clique(cert)
    return CliqueSearchResult("found", cert, stats.nodes)


@dataclass
class MaxCliqueResult:
    certificate: CliqueCertificate
    optimal: bool
    nodes: int


def max_clique(G: PermGroup,
               node_budget: int = DEFAULT_NODE_BUDGET,
               element_budget: int = DEFAULT_ELEMENT_BUDGET) -> MaxCliqueResult:
    """Best clique found by branch and bound, identity-rooted.

    The optimality flag is True only when the search closed within budget.
    """
    identity = Permutation.identity(G.degree)
    dset = derangement_set(G, element_budget)
    images = [p.images for p in dset.members]
    adj = _LazyAdjacency(images)
    universe = (1 << len(images)) - 1
    stats = SearchStats(budget=node_budget)
    best, closed = _max_clique_search(adj, universe, stats)
    vertices = [identity] + [dset.members[i] for i in sorted(best)]
    cert = CliqueCertificate(vertices)
    validate_clique(cert)
    return MaxCliqueResult(cert, closed, stats.nodes)


@dataclass
class MaxCocliqueResult:
    certificate: CocliqueCertificate
    optimal: bool
    nodes: int


def max_intersecting_family(G: PermGroup,
                            node_budget: int = DEFAULT_NODE_BUDGET,
                            element_budget: int = DEFAULT_ELEMENT_BUDGET,
                            clique_size_hint: int | None = None) -> MaxCocliqueResult:
    """Best intersecting family found, as a max clique of the complement graph.

    Rooted at the identity (lossless: translates of intersecting families are
    intersecting), warm-started with the stabilizer of point 0. When a clique
    of size w is known, alpha * w <= |G| closes the search early once the
    family reaches |G| / w.
    """
    identity = Permutation.identity(G.degree)
    elements = [Permutation(t) for t in G.element_images(element_budget)]
    fixers = [p for p in elements if not p.is_identity()
              and any(i == j for i, j in enumerate(p.images))]
    images = [p.images for p in fixers]
    adj = _LazyAdjacency(images, complement=True)
    universe = (1 << len(images)) - 1

    stabilizer = [i for i, p in enumerate(fixers) if p.images[0] == 0]
    # the stabilizer of 0 is intersecting and pairwise-compatible, a valid seed
    initial = stabilizer

    stop_at = None
    if clique_size_hint:
        stop_at = G.order() // clique_size_hint - 1  # excluding the identity root

    stats = SearchStats(budget=node_budget)
    best, closed = _max_clique_search(adj, universe, stats, initial=initial,
                                      stop_at=stop_at)
    vertices = [identity] + [fixers[i] for i in sorted(best)]
    cert = CocliqueCertificate(vertices)
    validate_coclique(cert)
    optimal = closed
    if stop_at is not None and len(best) >= stop_at:
        optimal = True  # met the clique-coclique ceiling: provably maximum
    return MaxCocliqueResult(cert, optimal, stats.nodes)


def clique_coclique_audit(clique: CliqueCertificate, coclique: CocliqueCertificate,
                          G: PermGroup) -> bool:
    """Independently validate both certificates and the product bound.

    Raises CertificateError naming the violation; returns True on success.
    """
    validate_clique(clique, G)
    validate_coclique(coclique, G)
    if clique.size * coclique.size > G.order():
        raise CertificateError(
            f"clique-coclique bound violated: {clique.size} * {coclique.size} > {G.order()}"
        )
    return True


# -- density --------------------------------------------------------------------


@dataclass
class DensityReport:
    group_name: str
    degree: int
    group_order: int
    stabilizer_order: int
    best_coclique: int | None
    best_clique: int | None
    coclique_optimal: bool
    clique_optimal: bool
    rho_lower: Fraction | None
    rho_upper: Fraction | None
    status: str  # "ok" | "unknown"
    clique_certificate: CliqueCertificate | None = None
    coclique_certificate: CocliqueCertificate | None = None

    def to_json_dict(self) -> dict:
        return {
            "group": self.group_name,
            "degree": self.degree,
            "order": self.group_order,
            "stabilizer_order": self.stabilizer_order,
            "best_coclique": self.best_coclique,
            "best_clique": self.best_clique,
            "coclique_optimal": self.coclique_optimal,
            "clique_optimal": self.clique_optimal,
            "rho_lower": str(self.rho_lower) if self.rho_lower is not None else None,
            "rho_upper": str(self.rho_upper) if self.rho_upper is not None else None,
            "status": self.status,
        }


def density_bounds(G: PermGroup,
                   node_budget: int = DEFAULT_NODE_BUDGET,
                   element_budget: int = DEFAULT_ELEMENT_BUDGET) -> DensityReport:
    """Two-sided intersection density bounds with embedded certificates."""
    if not G.is_transitive():
        raise PermError("density bounds need a transitive group")
    stab = G.stabilizer_order()
    try:
        cl = max_clique(G, node_budget, element_budget)
        co = max_intersecting_family(G, node_budget, element_budget,
                                     clique_size_hint=cl.certificate.size)
    except BudgetError:
        return DensityReport(G.name, G.degree, G.order(), stab, None, None,
                             False, False, None, None, "unknown")
    rho_lower = Fraction(co.certificate.size, stab)
    rho_upper = Fraction(G.degree, cl.certificate.size)
    if rho_lower > rho_upper:
        raise CertificateError(
            f"internal error: rho lower bound {rho_lower} exceeds upper bound {rho_upper}"
        )
    clique_coclique_audit(cl.certificate, co.certificate, G)
    return DensityReport(G.name, G.degree, G.order(), stab,
                         co.certificate.size, cl.certificate.size,
                         co.optimal, cl.optimal, rho_lower, rho_upper, "ok",
                         cl.certificate, co.certificate)
