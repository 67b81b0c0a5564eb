"""Seeded random constructions for property suites.

All generators draw from `random.Random` seeded explicitly, so every suite
run is reproducible.  Scale defaults follow the package's desk-scale
envelope: atom counts 2..8, measure denominators up to 64, placements by
leftmost-prefix splits.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebras import Algebra, AtomProfile, independent_with_profile
from .measure_space import MSet
from .transport import SwapPair, smaller_block_measure

GENERATOR = "python-mt19937/v1"


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed)


def _distinct_ints(rng: random.Random, lo: int, hi: int, count: int) -> list[int]:
    chosen: set[int] = set()
    while len(chosen) < count:
        chosen.add(rng.randint(lo, hi))
    return sorted(chosen)


def random_rat(rng: random.Random, max_den: int = 64) -> Fraction:
    """Random rational strictly between 0 and 1."""
    den = rng.randint(2, max_den)
    return Fraction(rng.randint(1, den - 1), den)


def random_profile(
    rng: random.Random, max_atoms: int = 8, max_den: int = 64, min_atoms: int = 2
) -> AtomProfile:
    """Random atom-measure profile with a common denominator <= max_den."""
    k = rng.randint(min_atoms, max_atoms)
    den = rng.randint(k, max_den)
    cuts = [0] + _distinct_ints(rng, 1, den - 1, k - 1) + [den]
    return AtomProfile(
        tuple(Fraction(b - a, den) for a, b in zip(cuts, cuts[1:]))
    )


def contiguous_partition(profile: AtomProfile) -> Algebra:
    """Partition of [0,1) into consecutive intervals with the given measures."""
    return independent_with_profile(Algebra.trivial(), profile)


def random_algebra(
    rng: random.Random, max_atoms: int = 8, max_den: int = 64
) -> Algebra:
    """Random partition algebra; half the time atoms are scattered unions."""
    profile = random_profile(rng, max_atoms=max_atoms, max_den=max_den)
    if rng.random() < 0.5:
        return contiguous_partition(profile)
    base = contiguous_partition(random_profile(rng, max_atoms=4, max_den=16))
    return independent_with_profile(base, profile)


def random_independent_pair(
    rng: random.Random, max_atoms: int = 8, max_den: int = 64
) -> tuple[Algebra, Algebra]:
    a = random_algebra(rng, max_atoms=max_atoms, max_den=max_den)
    b = independent_with_profile(
        a, random_profile(rng, max_atoms=max_atoms, max_den=max_den)
    )
    return a, b


def random_mset(rng: random.Random, max_den: int = 64) -> MSet:
    """Random canonical union of up to three intervals (possibly empty)."""
    pieces = rng.randint(1, 3)
    den = rng.randint(2 * pieces, max_den)
    points = _distinct_ints(rng, 0, den, 2 * pieces)
    return MSet.from_pairs(
        (Fraction(points[2 * i], den), Fraction(points[2 * i + 1], den))
        for i in range(pieces)
    )


def random_proper_mset(rng: random.Random, max_den: int = 64) -> MSet:
    """Random MSet with measure strictly between 0 and 1."""
    while True:
        s = random_mset(rng, max_den)
        if not s.is_empty() and not s.complement().is_empty():
            return s


def random_swap_pair(
    rng: random.Random,
    max_measure: Fraction = Fraction(1, 5),
    max_den: int = 64,
) -> SwapPair:
    """Disjoint equal-measure pair carved from a random set and its complement."""
    region = random_proper_mset(rng, max_den)
    other = region.complement()
    cap = min(max_measure, region.measure, other.measure)
    theta = cap * random_rat(rng, 16)
    return SwapPair(region.prefix(theta), other.prefix(theta))


def random_swap_triple(
    rng: random.Random, max_measure: Fraction = Fraction(1, 5)
) -> tuple[MSet, MSet, MSet]:
    """Three disjoint equal-measure sets placed in separate random regions."""
    base = random_algebra(rng, max_atoms=4, max_den=16)
    profile = random_profile(rng, max_atoms=3, min_atoms=3, max_den=16)
    regions = independent_with_profile(base, profile).atoms
    cap = min([max_measure] + [r.measure for r in regions])
    theta = cap * random_rat(rng, 16)
    return tuple(r.prefix(theta) for r in regions)


def random_enclosing_algebra(
    rng: random.Random, pair: SwapPair, ratio: Fraction
) -> Algebra:
    """Random algebra whose two distinguished atoms enclose the pair at `ratio`.

    The atoms holding v and w get total mass s drawn between the least
    feasible value and 1; with s < 1 the leftovers are split into one to
    three extra atoms, giving members with varying atom counts.
    """
    mv, mw = pair.v.measure, pair.w.measure
    m = max(mv, mw)
    s_min = m / smaller_block_measure(ratio)
    s = s_min + (1 - s_min) * random_rat(rng, 16)
    first_target = s / (1 + ratio)
    second_target = s - first_target
    free = pair.v.union(pair.w).complement()
    fill_first = free.prefix(first_target - mv)
    rest = free.difference(fill_first)
    fill_second = rest.prefix(second_target - mw)
    leftovers = rest.difference(fill_second)
    atoms = [pair.v.union(fill_first), pair.w.union(fill_second)]
    if not leftovers.is_empty():
        extra = rng.randint(1, 3)
        weights = random_profile(rng, max_atoms=extra, min_atoms=extra, max_den=16)
        remaining = leftovers
        for w in weights.weights[:-1]:
            piece = remaining.prefix(w * leftovers.measure)
            atoms.append(piece)
            remaining = remaining.difference(piece)
        atoms.append(remaining)
    return Algebra(tuple(atoms))


def random_grouping(rng: random.Random, count: int) -> list[list[int]]:
    """Random partition of range(count) into nonempty index groups."""
    indices = list(range(count))
    rng.shuffle(indices)
    groups: list[list[int]] = []
    i = 0
    while i < count:
        size = rng.randint(1, count - i)
        groups.append(sorted(indices[i : i + size]))
        i += size
    return groups
