"""Exact model of the probability space: [0,1) with Lebesgue measure.

Measurable sets are canonical finite unions of half-open rational intervals
(`MSet`).  All endpoints, measures and densities are `fractions.Fraction`
values, so every set operation, measure and split below is exact.  Floats
enter only when a caller converts a measure to a real number.

The space is nonatomic, which gives it the Darboux property: every set
contains subsets of every intermediate measure.  `MSet.prefix` realizes that
constructively with a deterministic leftmost-prefix rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    DensityError,
    InputFormatError,
    IntervalError,
    RationalFormatError,
    SimpleFunctionError,
    SplitError,
)

RatLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise RationalFormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise RationalFormatError(f"not a rational: {value!r}") from exc
    raise RationalFormatError(f"not a rational: {value!r}")


def rat_str(value: Fraction) -> str:
    """Render a Fraction as "p/q" in lowest terms with positive denominator."""
    return f"{value.numerator}/{value.denominator}"


def log2_rat(value: Fraction) -> float:
    """log2 of a positive rational, stable for huge numerators/denominators."""
    if value <= 0:
        raise ValueError(f"log2 of non-positive rational {value}")
    return math.log2(value.numerator) - math.log2(value.denominator)


def _check_endpoint(x: Fraction) -> None:
    if x < ZERO or x > ONE:
        raise IntervalError(f"endpoint {x} outside [0, 1]")


@dataclass(frozen=True)
class MSet:
    """Canonical finite union of disjoint half-open intervals [lo, hi) in [0,1).

    Canonical form: intervals sorted by left endpoint, pairwise disjoint and
    non-adjacent, all nonempty.  Two MSets are equal as sets of reals iff
    their canonical forms compare equal, so `==` is set equality.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        prev_hi = None
        for lo, hi in self.intervals:
            _check_endpoint(lo)
            _check_endpoint(hi)
            if lo >= hi:
                raise IntervalError(f"empty or inverted interval [{lo}, {hi})")
            if prev_hi is not None and lo <= prev_hi:
                raise IntervalError(
                    "intervals not canonical (overlapping, adjacent or unsorted)"
                )
            prev_hi = hi

    @classmethod
    def from_pairs(cls, raw: Iterable[tuple[RatLike, RatLike]]) -> "MSet":
        """Normalize an arbitrary list of [lo, hi) pairs into canonical form.

        Degenerate pairs (lo == hi) vanish; overlapping or adjacent pairs are
        merged.  The result is the unique canonical form of the union.
        """
        cleaned = []
        for lo, hi in raw:
            lo, hi = as_rat(lo), as_rat(hi)
            _check_endpoint(lo)
            _check_endpoint(hi)
            if lo > hi:
                raise IntervalError(f"interval with lo > hi: [{lo}, {hi})")
            if lo < hi:
                cleaned.append((lo, hi))
        cleaned.sort()
        merged: list[tuple[Fraction, Fraction]] = []
        for lo, hi in cleaned:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        return cls(tuple(merged))

    @classmethod
    def empty(cls) -> "MSet":
        return cls(())

    @classmethod
    def whole(cls) -> "MSet":
        return cls(((ZERO, ONE),))

    @classmethod
    def interval(cls, lo: RatLike, hi: RatLike) -> "MSet":
        return cls.from_pairs([(lo, hi)])

    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def union(self, other: "MSet") -> "MSet":
        return MSet.from_pairs(self.intervals + other.intervals)

    def intersect(self, other: "MSet") -> "MSet":
        out = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] <= b[j][1]:
                i += 1
            else:
                j += 1
        # canonical by construction: pieces inherit order and gaps
        return MSet(tuple(out))

    def complement(self) -> "MSet":
        out = []
        cursor = ZERO
        for lo, hi in self.intervals:
            if cursor < lo:
                out.append((cursor, lo))
            cursor = hi
        if cursor < ONE:
            out.append((cursor, ONE))
        return MSet(tuple(out))

    def difference(self, other: "MSet") -> "MSet":
        return self.intersect(other.complement())

    def symdiff(self, other: "MSet") -> "MSet":
        return self.difference(other).union(other.difference(self))

    def contains(self, other: "MSet") -> bool:
        """Set inclusion: other is a subset of self."""
        return self.intersect(other) == other

    def disjoint_from(self, other: "MSet") -> bool:
        return self.intersect(other).is_empty()

    def prefix(self, theta: RatLike) -> "MSet":
        """Leftmost subset of exact measure theta.

        Deterministic Darboux-style split: consume intervals left to right,
        cutting the last one as needed.  Always returns a subset; prefix of
        the full measure returns the set itself.
        """
        theta = as_rat(theta)
        if theta < ZERO:
            raise SplitError(f"negative prefix measure {theta}")
        out = []
        remaining = theta
        for lo, hi in self.intervals:
            if remaining == ZERO:
                break
            length = hi - lo
            if remaining >= length:
                out.append((lo, hi))
                remaining -= length
            else:
                out.append((lo, lo + remaining))
                remaining = ZERO
        if remaining > ZERO:
            raise SplitError(
                f"prefix measure {theta} exceeds set measure {self.measure}"
            )
        return MSet(tuple(out))

    def split_into(self, k: int) -> list["MSet"]:
        """Split into k consecutive pieces of equal measure (exact)."""
        if k < 1:
            raise SplitError(f"piece count must be positive, got {k}")
        piece_measure = self.measure / k
        pieces = []
        rest = self
        for _ in range(k - 1):
            piece = rest.prefix(piece_measure)
            pieces.append(piece)
            rest = rest.difference(piece)
        pieces.append(rest)
        return pieces

    def to_json(self) -> dict:
        return {
            "intervals": [[rat_str(lo), rat_str(hi)] for lo, hi in self.intervals]
        }

    @classmethod
    def from_json(cls, doc: dict) -> "MSet":
        try:
            pairs = [(lo, hi) for lo, hi in doc["intervals"]]
        except (TypeError, KeyError, ValueError) as exc:
            raise InputFormatError(
                "MSet document needs an 'intervals' list of [lo, hi] pairs"
            ) from exc
        return cls.from_pairs(pairs)

    def __repr__(self):
        body = ", ".join(f"[{lo}, {hi})" for lo, hi in self.intervals)
        return f"MSet({{{body}}})" if body else "MSet(empty)"


@dataclass(frozen=True)
class SignedMeasure:
    """Absolutely continuous signed measure given by a rational step density.

    `densities[k]` is the density on [breakpoints[k], breakpoints[k+1]).
    Evaluation integrates the density over a set exactly, so the measure is
    finitely additive by construction and vanishes on empty sets.
    """

    breakpoints: tuple[Fraction, ...]
    densities: tuple[Fraction, ...]

    def __post_init__(self):
        bp = self.breakpoints
        if len(bp) < 2 or bp[0] != ZERO or bp[-1] != ONE:
            raise DensityError("breakpoints must run from 0 to 1")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise DensityError("breakpoints must be strictly increasing")
        if len(self.densities) != len(bp) - 1:
            raise DensityError("need exactly one density per breakpoint gap")

    @classmethod
    def from_values(
        cls, breakpoints: Sequence[RatLike], densities: Sequence[RatLike]
    ) -> "SignedMeasure":
        return cls(
            tuple(as_rat(x) for x in breakpoints),
            tuple(as_rat(x) for x in densities),
        )

    @classmethod
    def constant(cls, value: RatLike) -> "SignedMeasure":
        return cls((ZERO, ONE), (as_rat(value),))

    @classmethod
    def lebesgue(cls) -> "SignedMeasure":
        return cls.constant(1)

    @classmethod
    def step_on_cells(cls, values: Sequence[RatLike]) -> "SignedMeasure":
        """Density constant on the n equal cells [i/n, (i+1)/n)."""
        n = len(values)
        if n == 0:
            raise DensityError("need at least one cell value")
        bp = tuple(Fraction(i, n) for i in range(n + 1))
        return cls(bp, tuple(as_rat(v) for v in values))

    def __call__(self, a: MSet) -> Fraction:
        """Exact value of the measure on a set: integral of the density."""
        total = ZERO
        for k, density in enumerate(self.densities):
            if density == ZERO:
                continue
            cell = MSet(((self.breakpoints[k], self.breakpoints[k + 1]),))
            total += density * a.intersect(cell).measure
        return total

    @property
    def total(self) -> Fraction:
        return self(MSet.whole())

    def to_json(self) -> dict:
        return {
            "breakpoints": [rat_str(x) for x in self.breakpoints],
            "densities": [rat_str(x) for x in self.densities],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SignedMeasure":
        try:
            bp = list(doc["breakpoints"])
            dens = list(doc["densities"])
        except (TypeError, KeyError) as exc:
            raise InputFormatError(
                "SignedMeasure document needs 'breakpoints' and 'densities'"
            ) from exc
        return cls.from_values(bp, dens)


@dataclass(frozen=True)
class SimpleFunction:
    """Simple function given by (set, value) pieces that partition [0,1).

    Values are floats, +inf allowed.  Integration against a SignedMeasure
    uses the convention 0 * (+inf) = 0: pieces carried with measure zero
    contribute nothing.
    """

    pieces: tuple[tuple[MSet, float], ...]

    def __post_init__(self):
        covered = MSet.empty()
        for s, _ in self.pieces:
            if not covered.disjoint_from(s):
                raise SimpleFunctionError("pieces overlap")
            covered = covered.union(s)
        if covered != MSet.whole():
            raise SimpleFunctionError("pieces do not cover the space")

    def integrate(self, m: SignedMeasure) -> float:
        total = 0.0
        for s, value in self.pieces:
            weight = m(s)
            if weight == ZERO:
                continue
            total += float(weight) * value
        return total

    def min_value(self) -> float:
        return min(value for _, value in self.pieces)

    def max_value(self) -> float:
        return max(value for _, value in self.pieces)
