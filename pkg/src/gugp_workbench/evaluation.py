"""Exact evaluation of labelings under the six normalized objectives.

Objective families and their preconditions:

* UGP  -- all weights positive; values are satisfied (max) or unsatisfied
  (min) weight over the total weight, always in [0, 1];
* PWT  -- mixed signs with positive total; values are satisfied (max) or
  unsatisfied (min) weight over the total, may be negative or exceed 1;
* NWA  -- all weights negative; values are |unsatisfied| (max) or
  |satisfied| (min) weight over |total|, always in [0, 1].

Within each family the max and min values of one labeling sum to exactly 1.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .core import GugpInstance, Labeling, RelationalInstance, metrics
from .errors import (
    DegenerateInstanceError,
    ObjectiveMismatchError,
    ValidationError,
)


class Objective(enum.Enum):
    MAX_UGP = "max-ugp"
    MIN_UGP = "min-ugp"
    MAX_PWT = "max-pwt"
    MIN_PWT = "min-pwt"
    MAX_NWA = "max-nwa"
    MIN_NWA = "min-nwa"


def check_labeling(instance: GugpInstance, labeling: Labeling) -> None:
    if len(labeling) != instance.n:
        raise ValidationError(
            f"labeling has {len(labeling)} entries, instance has {instance.n} vertices"
        )
    for v, label in enumerate(labeling):
        if not 1 <= label <= instance.k:
            raise ValidationError(
                f"label {label} at vertex {v} out of range [1..{instance.k}]"
            )


def satisfied_weight(instance: GugpInstance, labeling: Labeling) -> Fraction:
    check_labeling(instance, labeling)
    total = Fraction(0)
    for e in instance.edges:
        if e.pi.image[labeling[e.u] - 1] == labeling[e.v]:
            total += e.weight
    return total


def unsatisfied_weight(instance: GugpInstance, labeling: Labeling) -> Fraction:
    check_labeling(instance, labeling)
    total = Fraction(0)
    for e in instance.edges:
        if e.pi.image[labeling[e.u] - 1] != labeling[e.v]:
            total += e.weight
    return total


def require_objective(instance: GugpInstance, objective: Objective) -> None:
    """Raise unless the instance's weight signs fit the objective family."""
    m = metrics(instance)
    if objective in (Objective.MAX_UGP, Objective.MIN_UGP):
        if m.w_minus != 0:
            raise ObjectiveMismatchError(
                f"{objective.value} requires all weights positive"
            )
    elif objective in (Objective.MAX_PWT, Objective.MIN_PWT):
        if m.sigma <= 0:
            raise ObjectiveMismatchError(
                f"{objective.value} requires positive total weight"
            )
    else:
        if m.w_plus != 0:
            raise ObjectiveMismatchError(
                f"{objective.value} requires all weights negative"
            )


def labeling_value(
    instance: GugpInstance, labeling: Labeling, objective: Objective
) -> Fraction:
    require_objective(instance, objective)
    m = metrics(instance)
    if objective in (Objective.MAX_NWA, Objective.MIN_NWA):
        normalizer = abs(m.w_minus)
    else:
        normalizer = m.sigma
    if normalizer == 0:
        raise DegenerateInstanceError(
            f"{objective.value} value undefined: zero normalizer"
        )
    if objective is Objective.MAX_UGP or objective is Objective.MAX_PWT:
        numerator = satisfied_weight(instance, labeling)
    elif objective is Objective.MIN_UGP or objective is Objective.MIN_PWT:
        numerator = unsatisfied_weight(instance, labeling)
    elif objective is Objective.MAX_NWA:
        numerator = abs(unsatisfied_weight(instance, labeling))
    else:
        numerator = abs(satisfied_weight(instance, labeling))
    return numerator / normalizer


def check_relational_labeling(
    instance: RelationalInstance, labeling: Labeling
) -> None:
    if len(labeling) != instance.n:
        raise ValidationError(
            f"labeling has {len(labeling)} entries, instance has {instance.n} vertices"
        )
    for v, label in enumerate(labeling):
        k = instance.label_count(v)
        if not 1 <= label <= k:
            raise ValidationError(
                f"label {label} at vertex {v} out of range [1..{k}]"
            )


def relational_satisfied_weight(
    instance: RelationalInstance, labeling: Labeling
) -> Fraction:
    check_relational_labeling(instance, labeling)
    total = Fraction(0)
    for e in instance.edges:
        if (labeling[e.u], labeling[e.v]) in e.rel:
            total += e.weight
    return total


def relational_value(instance: RelationalInstance, labeling: Labeling) -> Fraction:
    """Satisfied-weight fraction of a labeling, in [0, 1]."""
    total = sum((e.weight for e in instance.edges), Fraction(0))
    if total == 0:
        raise DegenerateInstanceError("relational value undefined: no edges")
    return relational_satisfied_weight(instance, labeling) / total
