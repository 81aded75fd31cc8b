"""Permutations on {0, ..., n-1} stored as image tuples.

The composition convention is fixed globally as a right action: in
``compose(p, q)`` the permutation ``p`` is applied first, then ``q``,
so ``compose(p, q).images[i] == q.images[p.images[i]]``.
"""

from __future__ import annotations

import re
from math import lcm


class PermError(ValueError):
    """Bad permutation input (not a bijection, degree mismatch, ...)."""


class Permutation:
    """An immutable bijection of {0, ..., n-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if n < 1:
            raise PermError("degree must be at least 1")
        if sorted(images) != list(range(n)):
            raise PermError(f"not a permutation of 0..{n - 1}: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(range(n))

    @staticmethod
    def from_cycles(cycles, degree: int) -> "Permutation":
        """Build a permutation from disjoint cycles of 0-based points."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in seen or not 0 <= a < degree:
                    raise PermError(f"bad cycle point {a}")
                seen.add(a)
                images[a] = b
        return Permutation(images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        n = self.degree
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(n)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({cycle_string(self)!r}, degree={self.degree})"

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        return lcm(*cycle_type(self)) if self.degree else 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (including fixed points), each rooted at its minimum."""
        images = self.images
        seen = [False] * len(images)
        out = []
        for start in range(len(images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = images[j]
            out.append(tuple(cyc))
        return out


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q."""
    if p.degree != q.degree:
        raise PermError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation(qi[i] for i in p.images)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, j in enumerate(p.images):
        inv[j] = i
    return Permutation(inv)


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Sorted multiset of cycle lengths; sums to the degree."""
    return tuple(sorted(len(c) for c in p.cycles()))


def is_derangement(p: Permutation) -> bool:
    return all(i != j for i, j in enumerate(p.images))


def fixed_points(p: Permutation) -> list[int]:
    return [i for i, j in enumerate(p.images) if i == j]


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int, one_based: bool = False) -> Permutation:
    """Parse a cycle string like ``"(0,1,2)(3,4)"`` into a permutation.

    Accepts comma or whitespace separated points. An empty string or
    ``"()"`` is the identity.
    """
    rest = text.strip()
    if rest and not _CYCLE_RE.search(rest):
        raise PermError(f"cannot parse cycle string {text!r}")
    cycles = []
    for grp in _CYCLE_RE.findall(rest):
        pts = [int(tok) for tok in re.split(r"[,\s]+", grp.strip()) if tok]
        if one_based:
            pts = [x - 1 for x in pts]
        if pts:
            cycles.append(pts)
    return Permutation.from_cycles(cycles, degree)


def cycle_string(p: Permutation) -> str:
    parts = ["(" + ",".join(map(str, c)) + ")" for c in p.cycles() if len(c) > 1]
    return "".join(parts) if parts else "()"
