"""Core types for games with permutation or relation constraints on edges.

Conventions used throughout the workbench:

* vertices are 0-indexed integers, labels are 1-indexed integers;
* edges are oriented (u, v) pairs; parallel edges are allowed, self-loops are
  not;
* all numeric quantities are exact ``fractions.Fraction`` values -- no
  floating point exists anywhere in this package;
* every type is immutable once constructed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError

# A labeling is a plain tuple: entry i is the (1-indexed) label of vertex i.
Labeling = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    """A bijection on [k], stored as the image tuple: image[i-1] = pi(i)."""

    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        k = len(self.image)
        if k < 1:
            raise ValidationError("permutation must act on at least one label")
        if sorted(self.image) != list(range(1, k + 1)):
            raise ValidationError(f"not a bijection on [1..{k}]: {self.image}")

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @property
    def size(self) -> int:
        return len(self.image)

    def apply(self, i: int) -> int:
        if not 1 <= i <= len(self.image):
            raise ValidationError(f"label {i} out of range [1..{len(self.image)}]")
        return self.image[i - 1]

    def invert(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, img in enumerate(self.image, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """Composition: first apply self, then other."""
        if other.size != self.size:
            raise ValidationError("cannot compose permutations of different sizes")
        return Permutation(tuple(other.image[img - 1] for img in self.image))


@dataclass(frozen=True)
class Relation:
    """An arbitrary relation between label sets [k1] and [k2]."""

    k1: int
    k2: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        if self.k1 < 1 or self.k2 < 1:
            raise ValidationError("relation label counts must be positive")
        for a, b in self.pairs:
            if not (1 <= a <= self.k1 and 1 <= b <= self.k2):
                raise ValidationError(
                    f"relation pair ({a},{b}) out of range [1..{self.k1}]x[1..{self.k2}]"
                )

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.pairs

    @classmethod
    def graph_of(cls, pi: Permutation) -> "Relation":
        k = pi.size
        return cls(k, k, frozenset((i, pi.apply(i)) for i in range(1, k + 1)))

    @classmethod
    def complement_of(cls, pi: Permutation) -> "Relation":
        """All pairs (a, b) with b != pi(a); k^2 - k pairs."""
        k = pi.size
        pairs = frozenset(
            (a, b)
            for a in range(1, k + 1)
            for b in range(1, k + 1)
            if b != pi.apply(a)
        )
        return cls(k, k, pairs)


class RelationKind(enum.Enum):
    PERMUTATION = "permutation"
    TWO_TO_ONE_PROJECTION = "two-to-one-projection"
    TWO_TO_TWO = "two-to-two"
    COMPLEMENT_OF_PERMUTATION = "complement-of-permutation"
    GENERAL = "general"


def _rows(rel: Relation) -> dict[int, frozenset[int]]:
    rows: dict[int, set[int]] = {a: set() for a in range(1, rel.k1 + 1)}
    for a, b in rel.pairs:
        rows[a].add(b)
    return {a: frozenset(bs) for a, bs in rows.items()}


def _is_permutation_graph(rel: Relation) -> bool:
    if rel.k1 != rel.k2 or len(rel.pairs) != rel.k1:
        return False
    return (
        len({a for a, _ in rel.pairs}) == rel.k1
        and len({b for _, b in rel.pairs}) == rel.k1
    )


def _is_two_to_two(rel: Relation) -> bool:
    # (i, j) in R iff (pi_u(i), pi_v(j)) lands in a common consecutive pair
    # block {2l-1, 2l}, for some pi_u, pi_v.  Equivalently: every row has
    # exactly two entries, each distinct row value is shared by exactly two
    # left labels, and the distinct row values are pairwise disjoint.
    k = rel.k1
    if rel.k2 != k or k % 2 != 0 or k < 2:
        return False
    rows = _rows(rel)
    if any(len(r) != 2 for r in rows.values()):
        return False
    counts: dict[frozenset[int], int] = {}
    for r in rows.values():
        counts[r] = counts.get(r, 0) + 1
    if len(counts) != k // 2 or any(c != 2 for c in counts.values()):
        return False
    covered: set[int] = set()
    for r in counts:
        if covered & r:
            return False
        covered |= r
    return True


def classify_relation(rel: Relation) -> RelationKind:
    """Classify a relation by its combinatorial shape.

    The two-to-two test is an exact structural check (rows must pair up into
    disjoint two-element blocks), so it works at any size.  The
    complement-of-a-permutation reading is tried before the plain permutation
    reading: on two labels the two classes coincide, and the complement
    reading wins there.
    """
    if rel.k1 == rel.k2:
        k = rel.k1
        if len(rel.pairs) == k * k - k:
            complement = Relation(
                k,
                k,
                frozenset(
                    (a, b)
                    for a in range(1, k + 1)
                    for b in range(1, k + 1)
                    if (a, b) not in rel.pairs
                ),
            )
            if _is_permutation_graph(complement):
                return RelationKind.COMPLEMENT_OF_PERMUTATION
        if _is_permutation_graph(rel):
            return RelationKind.PERMUTATION
        if _is_two_to_two(rel):
            return RelationKind.TWO_TO_TWO
    elif rel.k1 == 2 * rel.k2:
        rows = _rows(rel)
        if all(len(r) == 1 for r in rows.values()):
            fibers: dict[int, int] = {}
            for _, b in rel.pairs:
                fibers[b] = fibers.get(b, 0) + 1
            if len(fibers) == rel.k2 and all(c == 2 for c in fibers.values()):
                return RelationKind.TWO_TO_ONE_PROJECTION
    return RelationKind.GENERAL


@dataclass(frozen=True)
class GugpEdge:
    """Oriented edge carrying a permutation constraint and a signed weight.

    The edge is satisfied by a labeling f iff pi(f(u)) = f(v).
    """

    u: int
    v: int
    weight: Fraction
    pi: Permutation

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.u < 0 or self.v < 0:
            raise ValidationError("vertex ids must be non-negative")
        if self.u == self.v:
            raise ValidationError(f"self-loop at vertex {self.u}")
        if self.weight == 0:
            raise ValidationError(f"zero-weight edge ({self.u},{self.v})")


@dataclass(frozen=True)
class GugpInstance:
    """A unique-game instance: multigraph with permutation-constrained edges."""

    n: int
    k: int
    edges: tuple[GugpEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.n < 1:
            raise ValidationError("instance needs at least one vertex")
        if self.k < 1:
            raise ValidationError("instance needs at least one label")
        for e in self.edges:
            if e.u >= self.n or e.v >= self.n:
                raise ValidationError(
                    f"edge ({e.u},{e.v}) references vertex >= n={self.n}"
                )
            if e.pi.size != self.k:
                raise ValidationError(
                    f"edge ({e.u},{e.v}) permutation size {e.pi.size} != k={self.k}"
                )


@dataclass(frozen=True)
class RelEdge:
    """Oriented edge carrying an arbitrary relation and a positive weight.

    The edge is satisfied by a labeling f iff (f(u), f(v)) is in the relation.
    """

    u: int
    v: int
    weight: Fraction
    rel: Relation

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.u < 0 or self.v < 0:
            raise ValidationError("vertex ids must be non-negative")
        if self.u == self.v:
            raise ValidationError(f"self-loop at vertex {self.u}")
        if self.weight <= 0:
            raise ValidationError(
                f"relational edge ({self.u},{self.v}) needs positive weight"
            )


@dataclass(frozen=True)
class RelationalInstance:
    """A two-prover game: every edge constrains its endpoints by a relation.

    Non-bipartite instances require k1 == k2 (one shared label set).
    Bipartite instances carry a side tag 'V' or 'W' per vertex; every edge
    must run from a V-vertex to a W-vertex, V-vertices take labels in [k1]
    and W-vertices labels in [k2].
    """

    n: int
    k1: int
    k2: int
    edges: tuple[RelEdge, ...]
    bipartite: bool = False
    sides: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.sides is not None:
            object.__setattr__(self, "sides", tuple(self.sides))
        if self.n < 1:
            raise ValidationError("instance needs at least one vertex")
        if self.k1 < 1 or self.k2 < 1:
            raise ValidationError("label counts must be positive")
        if self.bipartite:
            if self.sides is None or len(self.sides) != self.n:
                raise ValidationError("bipartite instance needs a side per vertex")
            if any(s not in ("V", "W") for s in self.sides):
                raise ValidationError("vertex sides must be 'V' or 'W'")
        else:
            if self.sides is not None:
                raise ValidationError("sides are only meaningful when bipartite")
            if self.k1 != self.k2:
                raise ValidationError("non-bipartite instance requires k1 == k2")
        for e in self.edges:
            if e.u >= self.n or e.v >= self.n:
                raise ValidationError(
                    f"edge ({e.u},{e.v}) references vertex >= n={self.n}"
                )
            if e.rel.k1 != self.k1 or e.rel.k2 != self.k2:
                raise ValidationError(
                    f"edge ({e.u},{e.v}) relation shape ({e.rel.k1},{e.rel.k2}) "
                    f"!= instance ({self.k1},{self.k2})"
                )
            if self.bipartite:
                assert self.sides is not None
                if self.sides[e.u] != "V" or self.sides[e.v] != "W":
                    raise ValidationError(
                        f"edge ({e.u},{e.v}) must run from side V to side W"
                    )

    def label_count(self, vertex: int) -> int:
        if self.bipartite:
            assert self.sides is not None
            return self.k1 if self.sides[vertex] == "V" else self.k2
        return self.k1


@dataclass(frozen=True)
class InstanceMetrics:
    """Weight aggregates: positive sum, negative sum, their total, and the
    negative/positive magnitude ratio (None when no positive weight exists)."""

    w_plus: Fraction
    w_minus: Fraction
    sigma: Fraction
    ratio: Fraction | None


def metrics(instance: GugpInstance) -> InstanceMetrics:
    w_plus = Fraction(0)
    w_minus = Fraction(0)
    for e in instance.edges:
        if e.weight > 0:
            w_plus += e.weight
        else:
            w_minus += e.weight
    ratio = None if w_plus == 0 else abs(w_minus) / w_plus
    return InstanceMetrics(w_plus, w_minus, w_plus + w_minus, ratio)
