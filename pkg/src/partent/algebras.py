"""Finite partition algebras over the interval model.

An `Algebra` is a partition of [0,1) into finitely many positive-measure
`MSet` atoms; it stands for the finite subalgebra those atoms generate.
Atoms are kept in a canonical order (ascending leftmost endpoint), so `==`
is algebra equality.

Independence, conditional independence and the agreement pseudometrics are
all decided by exact rational arithmetic; nothing here touches floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    EmptyAtomError,
    GapError,
    InputFormatError,
    OverlapError,
    ProfileError,
    ZeroMeasureError,
)
from .measure_space import ONE, ZERO, MSet, RatLike, as_rat, rat_str


@dataclass(frozen=True)
class Algebra:
    """Finite partition of [0,1) into positive-measure sets."""

    atoms: tuple[MSet, ...]

    def __post_init__(self):
        empties = [i for i, a in enumerate(self.atoms) if a.is_empty()]
        if empties:
            raise EmptyAtomError(f"empty atoms at indices {empties}", empties)
        union = MSet.from_pairs(
            pair for a in self.atoms for pair in a.intervals
        )
        total = sum((a.measure for a in self.atoms), ZERO)
        if total != union.measure:
            # measure double-counted somewhere; locate a pair for the report
            for i in range(len(self.atoms)):
                for j in range(i + 1, len(self.atoms)):
                    if not self.atoms[i].disjoint_from(self.atoms[j]):
                        raise OverlapError(f"atoms {i} and {j} overlap", (i, j))
        if union != MSet.whole():
            raise GapError(
                f"atoms do not cover the space; missing {union.complement()!r}"
            )
        ordered = tuple(sorted(self.atoms, key=lambda a: a.intervals[0][0]))
        object.__setattr__(self, "atoms", ordered)

    @classmethod
    def from_atoms(cls, atoms: Iterable[MSet]) -> "Algebra":
        return cls(tuple(atoms))

    @classmethod
    def trivial(cls) -> "Algebra":
        return cls((MSet.whole(),))

    @classmethod
    def equipartition(cls, n: int) -> "Algebra":
        return cls(
            tuple(MSet.interval(Fraction(i, n), Fraction(i + 1, n)) for i in range(n))
        )

    @property
    def atom_count(self) -> int:
        """Number of atoms (all have positive measure in this model)."""
        return len(self.atoms)

    @property
    def probabilities(self) -> tuple[Fraction, ...]:
        return tuple(a.measure for a in self.atoms)

    def join(self, other: "Algebra") -> "Algebra":
        """Smallest common refinement: nonempty pairwise atom intersections."""
        pieces = []
        for a in self.atoms:
            for b in other.atoms:
                x = a.intersect(b)
                if not x.is_empty():
                    pieces.append(x)
        return Algebra(tuple(pieces))

    def is_independent(self, other: "Algebra") -> bool:
        """Exact product rule on all atom pairs."""
        for a in self.atoms:
            pa = a.measure
            for b in other.atoms:
                if a.intersect(b).measure != pa * b.measure:
                    return False
        return True

    def restrict(self, carrier: MSet) -> tuple[MSet, ...]:
        """Nonempty traces of the atoms on a positive-measure carrier.

        The traces partition the carrier; they form an algebra on the
        truncated space rather than on [0,1), hence the plain tuple.
        """
        if carrier.measure == ZERO:
            raise ZeroMeasureError("cannot restrict to a null carrier")
        traces = tuple(
            t for a in self.atoms if not (t := a.intersect(carrier)).is_empty()
        )
        return traces

    def atom_containing(self, s: MSet) -> int | None:
        """Index of the atom containing a nonempty set, if any."""
        if s.is_empty():
            return None
        for i, a in enumerate(self.atoms):
            if a.contains(s):
                return i
        return None

    def to_json(self) -> dict:
        return {"atoms": [a.to_json() for a in self.atoms]}

    @classmethod
    def from_json(cls, doc: dict) -> "Algebra":
        try:
            atoms = list(doc["atoms"])
        except (TypeError, KeyError) as exc:
            raise InputFormatError("Algebra document needs an 'atoms' list") from exc
        return cls(tuple(MSet.from_json(a) for a in atoms))

    def __repr__(self):
        return f"Algebra({len(self.atoms)} atoms, P={[str(p) for p in self.probabilities]})"


@dataclass(frozen=True)
class AtomProfile:
    """Prescribed atom measures: positive rationals summing to exactly 1."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.weights:
            raise ProfileError("profile needs at least one weight")
        if any(w <= ZERO for w in self.weights):
            raise ProfileError("profile weights must be positive")
        if sum(self.weights) != ONE:
            raise ProfileError(
                f"profile weights sum to {sum(self.weights)}, expected 1"
            )

    @classmethod
    def from_values(cls, values: Sequence[RatLike]) -> "AtomProfile":
        return cls(tuple(as_rat(v) for v in values))

    def to_json(self) -> dict:
        return {"weights": [rat_str(w) for w in self.weights]}

    @classmethod
    def from_json(cls, doc: dict) -> "AtomProfile":
        try:
            weights = list(doc["weights"])
        except (TypeError, KeyError) as exc:
            raise InputFormatError("profile document needs a 'weights' list") from exc
        return cls.from_values(weights)


def independent_with_profile(a: Algebra, profile: AtomProfile) -> Algebra:
    """Build an algebra independent of `a` with the prescribed atom measures.

    Within each atom of `a`, consecutive prefix pieces of proportional
    measure are cut off; the j-th new atom is the union of the j-th pieces.
    The result carries exactly the profile's measures and satisfies the
    product rule against `a` by construction.
    """
    buckets: list[MSet] = [MSet.empty() for _ in profile.weights]
    for atom in a.atoms:
        rest = atom
        total = atom.measure
        for j, w in enumerate(profile.weights[:-1]):
            piece = rest.prefix(w * total)
            buckets[j] = buckets[j].union(piece)
            rest = rest.difference(piece)
        buckets[-1] = buckets[-1].union(rest)
    return Algebra(tuple(buckets))


def conditional_independent(a: Algebra, b: Algebra, given: Algebra) -> bool:
    """Independence of the traces of `a` and `b` on every atom of `given`.

    On each atom K the truncated measure is P(.)/P(K), so the product rule
    reads P(A∩B∩K) * P(K) == P(A∩K) * P(B∩K); checked exactly.
    """
    for k_atom in given.atoms:
        pk = k_atom.measure
        for a_atom in a.atoms:
            ak = a_atom.intersect(k_atom)
            pak = ak.measure
            for b_atom in b.atoms:
                bk = b_atom.intersect(k_atom)
                if ak.intersect(bk).measure * pk != pak * bk.measure:
                    return False
    return True


def same_atom_measures(a: Algebra, b: Algebra) -> bool:
    """Whether the multisets of atom measures coincide exactly."""
    return sorted(a.probabilities) == sorted(b.probabilities)


def coarsen(a: Algebra, groups: Sequence[Sequence[int]]) -> Algebra:
    """Merge atoms of `a` by index groups into a coarser algebra."""
    atoms = []
    for group in groups:
        merged = MSet.empty()
        for i in group:
            merged = merged.union(a.atoms[i])
        atoms.append(merged)
    return Algebra(tuple(atoms))


def _max_matching_weight(a: Algebra, b: Algebra) -> Fraction:
    """Maximum total overlap of a partial matching between atom lists.

    Bitmask DP over the smaller side.  Weights are scaled to a common
    denominator so the inner loop runs on plain integers.
    """
    rows, cols = a.atoms, b.atoms
    if len(cols) > len(rows):
        rows, cols = cols, rows
    weights = [[r.intersect(c).measure for c in cols] for r in rows]
    denom = math.lcm(*(w.denominator for row in weights for w in row))
    scaled = [[int(w * denom) for w in row] for row in weights]
    m = len(cols)
    full = 1 << m
    dp = [0] * full
    for row in scaled:
        nxt = dp[:]
        for mask in range(full):
            base = dp[mask]
            for j in range(m):
                bit = 1 << j
                if mask & bit:
                    continue
                w = row[j]
                if w == 0:
                    continue
                cand = base + w
                if cand > nxt[mask | bit]:
                    nxt[mask | bit] = cand
        dp = nxt
    return Fraction(max(dp), denom)


def distance_d(a: Algebra, b: Algebra) -> Fraction:
    """Agreement pseudometric: least measure removable so the algebras agree.

    Equals 1 minus the maximum-weight partial matching of atoms by overlap:
    off the union of matched overlaps the traces coincide, and any valid
    removed set must contain the complement of such a union.  The infimum
    is attained in this model.
    """
    return ONE - _max_matching_weight(a, b)


def distance_D(a: Algebra, b: Algebra) -> Fraction:
    """`distance_d` plus the difference of atom counts (finer topology)."""
    return distance_d(a, b) + abs(a.atom_count - b.atom_count)
