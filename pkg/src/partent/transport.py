"""Transporting mass between atoms and the induced entropy increments.

Given disjoint equal-measure sets v, w sitting inside two distinct atoms of
an algebra, `transport` swaps them: the atom holding v trades v for w and
vice versa.  Every atom measure is preserved, so entropies that depend only
on atom measures do not move; what does move is exactly the contribution of
the hidden signed-measure part of an additive entropy.

For an additive entropy I, the increment I(transport(a)) - I(a) does not
depend on which algebra a encloses the pair at a given measure ratio
lambda = P(atom of w)/P(atom of v); `transport_increment` evaluates it by
enclosing the pair in freshly built two-block algebras.  For continuous
additive entropies the increment is proportional to log2(lambda);
`transport_rate` reports the coefficient together with a proportionality
cross-check.

Large or overlapping pairs are handled by reduction: the common part of v
and w never contributes, and the increment is additive over splittings of
the pair into smaller equal-measure pieces, so the pair is cut into prefix
pieces small enough to fit in a two-block enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebras import Algebra
from .entropies import EntropySpec
from .errors import (
    NotInFamilyError,
    PairOverlapError,
    PairTooLargeError,
    RatioError,
    UnequalMeasuresError,
)
from .measure_space import ZERO, MSet, as_rat, rat_str


@dataclass(frozen=True)
class SwapPair:
    """A pair of sets to be exchanged between atoms.

    Operations state their own requirements: transport and the increment
    functionals need equal measures; enclosure builders need disjointness
    (the increment functionals reduce overlap away themselves).
    """

    v: MSet
    w: MSet

    def reversed(self) -> "SwapPair":
        return SwapPair(self.w, self.v)

    def reduced(self) -> "SwapPair":
        """Strip the common part: (v - w, w - v)."""
        return SwapPair(self.v.difference(self.w), self.w.difference(self.v))

    def is_disjoint(self) -> bool:
        return self.v.disjoint_from(self.w)


@dataclass(frozen=True)
class IncrementResult:
    """Value of an entropy increment plus evaluation metadata.

    `pieces` is the number of prefix pieces the pair was cut into;
    `crosscheck_residual` is 0 for a single-ratio evaluation and the
    proportionality defect |increment(4) - 2 * increment(2)| for
    `transport_rate`.
    """

    value: float
    ratio: Fraction
    pieces: int
    crosscheck_residual: float

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "lambda": rat_str(self.ratio),
            "pieces": self.pieces,
            "crosscheck_residual": self.crosscheck_residual,
        }


def smaller_block_measure(ratio: Fraction) -> Fraction:
    """Measure of the smaller block when [0,1) splits in ratio `ratio`.

    A two-block partition with P(second)/P(first) = ratio has blocks of
    measure 1/(1+ratio) and ratio/(1+ratio); this returns the smaller one.
    """
    ratio = as_rat(ratio)
    if ratio <= 0:
        raise RatioError(f"block ratio must be positive, got {ratio}")
    return min(Fraction(1, 1) / (1 + ratio), Fraction(1, 1) / (1 + 1 / ratio))


def family_ratio(a: Algebra, pair: SwapPair) -> Fraction | None:
    """Atom-measure ratio P(atom of w)/P(atom of v), if both sets are
    contained in single, distinct atoms; None otherwise (including empty
    sets, which single out no atom)."""
    if not pair.is_disjoint():
        raise PairOverlapError("swap pair must be disjoint")
    i_v = a.atom_containing(pair.v)
    i_w = a.atom_containing(pair.w)
    if i_v is None or i_w is None or i_v == i_w:
        return None
    return a.atoms[i_w].measure / a.atoms[i_v].measure


def transport(a: Algebra, pair: SwapPair) -> Algebra:
    """Swap the pair between its two enclosing atoms.

    The atom containing v becomes (atom - v) + w and the atom containing w
    becomes (atom - w) + v; all other atoms are untouched.  Atom measures
    are preserved exactly and the operation is an involution.  An empty
    pair leaves the algebra unchanged.
    """
    mv, mw = pair.v.measure, pair.w.measure
    if mv != mw:
        raise UnequalMeasuresError(
            f"swap sets have measures {mv} and {mw}; transport needs equality"
        )
    if mv == ZERO:
        return a
    if family_ratio(a, pair) is None:
        raise NotInFamilyError(
            "swap sets must lie in two distinct atoms of the algebra"
        )
    i_v = a.atom_containing(pair.v)
    i_w = a.atom_containing(pair.w)
    atoms = list(a.atoms)
    atoms[i_v] = a.atoms[i_v].difference(pair.v).union(pair.w)
    atoms[i_w] = a.atoms[i_w].difference(pair.w).union(pair.v)
    return Algebra(tuple(atoms))


def block_pair_algebra(pair: SwapPair, ratio: Fraction) -> Algebra:
    """Two-block algebra enclosing the pair at the given measure ratio.

    The first block contains v and has measure 1/(1+ratio); the second is
    its complement and contains w.  Filler is taken from outside the pair
    by leftmost prefix, so the construction is deterministic.  Requires
    both set measures to be at most `smaller_block_measure(ratio)`.
    """
    ratio = as_rat(ratio)
    eps = smaller_block_measure(ratio)
    if not pair.is_disjoint():
        raise PairOverlapError("swap pair must be disjoint")
    mv, mw = pair.v.measure, pair.w.measure
    if mv > eps or mw > eps:
        raise PairTooLargeError(
            f"set measures {mv}, {mw} exceed the smaller block {eps} at ratio {ratio}"
        )
    first_target = Fraction(1, 1) / (1 + ratio)
    free = pair.v.union(pair.w).complement()
    first = pair.v.union(free.prefix(first_target - mv))
    return Algebra((first, first.complement()))


def independent_block_pair_algebra(
    a: Algebra, pair: SwapPair, ratio: Fraction
) -> Algebra:
    """Two-block algebra at `ratio`, enclosing the pair, independent of `a`.

    Each atom of `a` is split into a first and second piece in the same
    ratio, with v forced into the first piece of its atom and w into the
    second piece of its atom; the blocks are the unions of the first and
    second pieces.  Proportional slicing gives exact independence.
    """
    ratio = as_rat(ratio)
    lam = family_ratio(a, pair)
    if lam is None:
        raise NotInFamilyError("pair must lie in two distinct atoms of the algebra")
    i_v = a.atom_containing(pair.v)
    i_w = a.atom_containing(pair.w)
    room = smaller_block_measure(ratio) * smaller_block_measure(lam) * (
        a.atoms[i_v].measure + a.atoms[i_w].measure
    )
    mv, mw = pair.v.measure, pair.w.measure
    if mv > room or mw > room:
        raise PairTooLargeError(
            f"set measures {mv}, {mw} exceed the available room {room}"
        )
    first_share = Fraction(1, 1) / (1 + ratio)
    first_blocks = MSet.empty()
    second_blocks = MSet.empty()
    for i, atom in enumerate(a.atoms):
        target = atom.measure * first_share
        if i == i_v:
            first = pair.v.union(atom.difference(pair.v).prefix(target - mv))
        elif i == i_w:
            second_target = atom.measure - target
            second = pair.w.union(
                atom.difference(pair.w).prefix(second_target - mw)
            )
            first = atom.difference(second)
            first_blocks = first_blocks.union(first)
            second_blocks = second_blocks.union(second)
            continue
        else:
            first = atom.prefix(target)
        first_blocks = first_blocks.union(first)
        second_blocks = second_blocks.union(atom.difference(first))
    return Algebra((first_blocks, second_blocks))


def transport_increment(
    spec: EntropySpec, pair: SwapPair, ratio: Fraction
) -> IncrementResult:
    """Entropy increment for swapping the pair across blocks at `ratio`.

    Algorithm: drop the common part of v and w; if nothing remains the
    increment is 0.  Otherwise cut both sets into equally many equal-measure
    prefix pieces small enough to fit a two-block enclosure at `ratio`
    (piece measure below min(smaller_block_measure(ratio), 1/4)), enclose
    each piece pair, and sum I(transport) - I(original) over the pieces.
    """
    ratio = as_rat(ratio)
    if ratio <= 0:
        raise RatioError(f"block ratio must be positive, got {ratio}")
    mv, mw = pair.v.measure, pair.w.measure
    if mv != mw:
        raise UnequalMeasuresError(
            f"swap sets have measures {mv} and {mw}; increment needs equality"
        )
    reduced = pair.reduced()
    mu = reduced.v.measure
    if mu == ZERO:
        return IncrementResult(0.0, ratio, 1, 0.0)
    bound = min(smaller_block_measure(ratio), Fraction(1, 4))
    k = int(mu // bound) + 1
    v_pieces = reduced.v.split_into(k)
    w_pieces = reduced.w.split_into(k)
    contributions = []
    for v_piece, w_piece in zip(v_pieces, w_pieces):
        piece = SwapPair(v_piece, w_piece)
        enclosure = block_pair_algebra(piece, ratio)
        contributions.append(
            spec.evaluate(transport(enclosure, piece)) - spec.evaluate(enclosure)
        )
    return IncrementResult(math.fsum(contributions), ratio, k, 0.0)


def transport_rate(spec: EntropySpec, pair: SwapPair) -> IncrementResult:
    """Per-log2 coefficient of the transport increment.

    Evaluates the increment at ratio 2 (log2 2 = 1, so the increment is the
    coefficient itself) and reports the proportionality defect against
    ratio 4, which doubles the logarithm.
    """
    base = transport_increment(spec, pair, Fraction(2))
    check = transport_increment(spec, pair, Fraction(4))
    residual = abs(check.value - 2.0 * base.value)
    return IncrementResult(base.value, base.ratio, base.pieces, residual)
