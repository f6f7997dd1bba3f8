"""Exact solvers: exhaustive enumeration and a factor-2 local search.

Brute force is deterministic: labelings are scanned in lexicographic order
and only strictly better candidates replace the incumbent, so ties resolve to
the lexicographically smallest optimal labeling regardless of how the scan
might be partitioned.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import GugpInstance, Labeling, RelationalInstance, metrics
from .errors import (
    CapacityError,
    DegenerateInstanceError,
    InternalError,
    ObjectiveMismatchError,
)
from .evaluation import (
    Objective,
    labeling_value,
    relational_value,
    require_objective,
)
from .rng import SplitMix64

DEFAULT_BRUTE_CAP = 1_000_000


@dataclass(frozen=True)
class SolveResult:
    """A labeling, its objective value, and the work done to find it.

    ``visited`` counts enumerated labelings for brute force and executed
    improvement steps for local search.
    """

    labeling: Labeling
    value: Fraction
    visited: int


def _scaled_int_weights(weights: list[Fraction]) -> list[int]:
    # Common-denominator integers keep the inner enumeration loop exact but
    # fast; the scale factor cancels out of every comparison.
    scale = math.lcm(*(w.denominator for w in weights)) if weights else 1
    return [int(w * scale) for w in weights]


def brute_force(
    instance: GugpInstance,
    objective: Objective,
    cap: int = DEFAULT_BRUTE_CAP,
) -> SolveResult:
    """Enumerate all k^n labelings and return the optimum for the objective.

    All six objectives are optimized by the labeling that maximizes the
    signed satisfied weight (the families differ only in normalization and
    in whether the satisfied or unsatisfied share is reported), so a single
    scan direction serves every objective and ties break identically.
    """
    require_objective(instance, objective)
    space = instance.k**instance.n
    if space > cap:
        raise CapacityError(
            f"label space {instance.k}^{instance.n} = {space} exceeds cap {cap}"
        )
    edges = instance.edges
    iw = _scaled_int_weights([e.weight for e in edges])
    # image tuples padded so a 1-indexed label indexes directly
    compiled = [
        (e.u, e.v, (0,) + e.pi.image, iw[i]) for i, e in enumerate(edges)
    ]
    best: Labeling | None = None
    best_sat: int | None = None
    for labeling in itertools.product(range(1, instance.k + 1), repeat=instance.n):
        sat = 0
        for u, v, image, w in compiled:
            if image[labeling[u]] == labeling[v]:
                sat += w
        if best_sat is None or sat > best_sat:
            best_sat = sat
            best = labeling
    assert best is not None
    return SolveResult(best, labeling_value(instance, best, objective), space)


def brute_force_relational(
    instance: RelationalInstance,
    cap: int = DEFAULT_BRUTE_CAP,
) -> SolveResult:
    """Enumerate all labelings and return the maximum satisfied-weight fraction."""
    space = 1
    domains = []
    for v in range(instance.n):
        k = instance.label_count(v)
        domains.append(range(1, k + 1))
        space *= k
    if space > cap:
        raise CapacityError(f"label space {space} exceeds cap {cap}")
    if not instance.edges:
        raise DegenerateInstanceError("relational value undefined: no edges")
    iw = _scaled_int_weights([e.weight for e in instance.edges])
    compiled = [
        (e.u, e.v, e.rel.pairs, iw[i]) for i, e in enumerate(instance.edges)
    ]
    best: Labeling | None = None
    best_sat: int | None = None
    for labeling in itertools.product(*domains):
        sat = 0
        for u, v, pairs, w in compiled:
            if (labeling[u], labeling[v]) in pairs:
                sat += w
        if best_sat is None or sat > best_sat:
            best_sat = sat
            best = labeling
    assert best is not None
    return SolveResult(best, relational_value(instance, best), space)


def local_search_half(
    instance: GugpInstance,
    seed: int | None = None,
    iteration_cap: int | None = None,
) -> SolveResult:
    """Local search for all-negative instances with a guaranteed value >= 1/2.

    The instance is viewed in restated form: each edge demands
    pi(f(u)) != f(v) and counts with weight |w|.  While some vertex sees less
    than half of its incident restated weight satisfied, the smallest such
    vertex is reassigned to its locally best label different from the current
    one (smallest label on ties).  Every step strictly increases the global
    restated satisfied weight, which bounds the number of steps; at
    termination each vertex meets the half threshold locally, hence the
    labeling satisfies at least half of the total restated weight,
    i.e. its max-NWA value is at least 1/2.

    The returned ``visited`` is the number of reassignment steps.  The start
    is the all-1 labeling, or a seeded uniform labeling when ``seed`` is
    given.
    """
    if instance.k < 2:
        raise DegenerateInstanceError("local search needs at least two labels")
    m = metrics(instance)
    if m.w_plus != 0:
        raise ObjectiveMismatchError("local search requires all weights negative")
    if not instance.edges:
        raise DegenerateInstanceError("max-nwa value undefined: no edges")
    if iteration_cap is None:
        iteration_cap = instance.k**instance.n

    n, k = instance.n, instance.k
    if seed is None:
        labels = [1] * n
    else:
        stream = SplitMix64(seed)
        labels = [1 + stream.below(k) for _ in range(n)]

    abs_w = [abs(e.weight) for e in instance.edges]
    incident: list[list[int]] = [[] for _ in range(n)]
    for i, e in enumerate(instance.edges):
        incident[e.u].append(i)
        incident[e.v].append(i)
    edges = instance.edges

    def edge_happy(i: int) -> bool:
        e = edges[i]
        return e.pi.image[labels[e.u] - 1] != labels[e.v]

    def local_split(vertex: int) -> tuple[Fraction, Fraction]:
        sat = Fraction(0)
        total = Fraction(0)
        for i in incident[vertex]:
            total += abs_w[i]
            if edge_happy(i):
                sat += abs_w[i]
        return sat, total

    def global_sat() -> Fraction:
        return sum((abs_w[i] for i in range(len(edges)) if edge_happy(i)), Fraction(0))

    iterations = 0
    current_global = global_sat()
    while True:
        mover = None
        for v in range(n):
            sat, total = local_split(v)
            if 2 * sat < total:
                mover = v
                break
        if mover is None:
            break
        if iterations >= iteration_cap:
            raise InternalError(
                f"local search exceeded iteration cap {iteration_cap}; "
                "the strict-improvement argument guarantees this cannot happen"
            )
        old = labels[mover]
        best_label = None
        best_sat = None
        for candidate in range(1, k + 1):
            if candidate == old:
                continue
            labels[mover] = candidate
            sat, _ = local_split(mover)
            if best_sat is None or sat > best_sat:
                best_sat = sat
                best_label = candidate
        assert best_label is not None
        labels[mover] = best_label
        iterations += 1
        new_global = global_sat()
        if new_global <= current_global:
            raise InternalError("local search step failed to improve globally")
        current_global = new_global

    result = tuple(labels)
    value = labeling_value(instance, result, Objective.MAX_NWA)
    if value < Fraction(1, 2):
        raise InternalError(f"local search ended below the 1/2 guarantee: {value}")
    return SolveResult(result, value, iterations)
