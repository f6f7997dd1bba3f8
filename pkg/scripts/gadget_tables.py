#!/usr/bin/env python3
"""Closed-form metric tables for both gadget families, cross-checked.

For every parameter in range this prints the per-bundle weights, the
negative/positive ratio, and the per-source-edge total weight -- first from
the closed forms, then re-derived by actually building a single-edge gadget
and summing its weights.  A mismatch raises, so a clean run doubles as a
verification sweep.

Usage:
    python3 scripts/gadget_tables.py --max-fold 4 --max-half 5
"""

import argparse
from fractions import Fraction

from gugp_workbench import (
    Permutation,
    T22Edge,
    TwoToTwoInstance,
    metrics,
    pwt1_gadget,
    repeat_max3cut,
    two2two_to_pwt_half,
)


def fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def shift_rows(max_fold: int):
    for fold in range(1, max_fold + 1):
        three, two = 3**fold, 2**fold
        w_x = Fraction(-(two - 1), three - 1)
        w_y = Fraction(three - two, three - 1)
        ratio = Fraction(two - 1, two)
        sigma = Fraction(three - two, three - 1)
        repeated = repeat_max3cut(2, ((0, 1),), fold)
        gadget, _ = pwt1_gadget(repeated)
        got = metrics(gadget)
        if got.ratio != ratio or got.sigma != sigma * len(repeated.edges):
            raise AssertionError(f"closed form mismatch at fold {fold}")
        yield fold, three, fmt(w_x), fmt(w_y), fmt(ratio), fmt(sigma)


def pair_rows(max_half: int):
    for k in range(2, max_half + 1):
        w_x = Fraction(2 * k - 2, 2 * k - 1)
        w_y = Fraction(-1, 2 * k - 1)
        sigma = Fraction(2 * k - 2, 2 * k - 1)
        identity = Permutation(tuple(range(1, 2 * k + 1)))
        source = TwoToTwoInstance(
            2, k, (T22Edge(0, 1, Fraction(1), identity, identity),)
        )
        gadget, _ = two2two_to_pwt_half(source)
        got = metrics(gadget)
        if got.ratio != Fraction(1, 2) or got.sigma != sigma:
            raise AssertionError(f"closed form mismatch at half-size {k}")
        yield k, 2 * k, fmt(w_x), fmt(w_y), "1/2", fmt(sigma)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-fold", type=int, default=4)
    parser.add_argument("--max-half", type=int, default=5)
    args = parser.parse_args(argv)

    print("shift gadgets (3-cut repetition; one row per fold)")
    print(
        f"{'fold':>4} {'bundle size':>11} {'w_shift-hit':>12} {'w_clean':>8}"
        f" {'ratio':>7} {'sigma/edge':>10}"
    )
    for row in shift_rows(args.max_fold):
        print(f"{row[0]:>4} {row[1]:>11} {row[2]:>12} {row[3]:>8} {row[4]:>7} {row[5]:>10}")

    print()
    print("pair-block gadgets (one row per half-size k)")
    print(
        f"{'k':>4} {'bundle size':>11} {'w_first-two':>12} {'w_rest':>8}"
        f" {'ratio':>7} {'sigma/edge':>10}"
    )
    for row in pair_rows(args.max_half):
        print(f"{row[0]:>4} {row[1]:>11} {row[2]:>12} {row[3]:>8} {row[4]:>7} {row[5]:>10}")

    print()
    print("all rows re-derived from concretely built gadgets: exact match")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
