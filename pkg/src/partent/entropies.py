"""Additive partition entropies as evaluable specifications.

Every spec maps an `Algebra` to a real number and is additive on
independent algebras: I(join(a, b)) = I(a) + I(b) whenever a and b satisfy
the exact product rule.  Base-2 logarithms throughout.

Atom probabilities and signed-measure values stay exact rationals until the
final log/pow step, which runs in double precision; sums use `math.fsum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebras import Algebra
from .errors import AlphaOneError, NotIndependentError, SpecFormatError
from .measure_space import (
    SignedMeasure,
    SimpleFunction,
    as_rat,
    log2_rat,
    rat_str,
)


def information_function(a: Algebra) -> SimpleFunction:
    """The simple function taking value log2(1/P(atom)) on each atom."""
    return SimpleFunction(
        tuple((atom, -log2_rat(atom.measure)) for atom in a.atoms)
    )


class EntropySpec:
    """Base class; subclasses implement `evaluate(algebra) -> float`."""

    kind = "abstract"

    def evaluate(self, a: Algebra) -> float:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"kind": self.kind}

    @staticmethod
    def from_json(doc: dict) -> "EntropySpec":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise SpecFormatError("entropy spec document needs a 'kind'")
        kind = doc["kind"]
        try:
            if kind == "shannon":
                return Shannon()
            if kind == "renyi":
                return Renyi(as_rat(doc["alpha"]))
            if kind == "hartley":
                return Hartley()
            if kind == "min":
                return MinInfo()
            if kind == "max":
                return MaxInfo()
            if kind == "variance":
                return Variance()
            if kind == "lm":
                return InfoIntegral(SignedMeasure.from_json(doc["measure"]))
            if kind == "combo":
                terms = tuple(
                    (as_rat(t["weight"]), EntropySpec.from_json(t["spec"]))
                    for t in doc["terms"]
                )
                return Combo(terms)
        except (KeyError, TypeError) as exc:
            raise SpecFormatError(f"malformed '{kind}' spec") from exc
        raise SpecFormatError(f"unknown entropy kind {kind!r}")


@dataclass(frozen=True)
class Shannon(EntropySpec):
    """Expected information: sum of P(atom) * log2(1/P(atom))."""

    kind = "shannon"

    def evaluate(self, a: Algebra) -> float:
        return math.fsum(-float(p) * log2_rat(p) for p in a.probabilities)


@dataclass(frozen=True)
class Renyi(EntropySpec):
    """Order-alpha entropy (1/(1-alpha)) * log2 of the sum of P(atom)^alpha.

    Order 1 is rejected at construction; the Shannon spec is the limit.
    """

    alpha: Fraction
    kind = "renyi"

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rat(self.alpha))
        if self.alpha == 1:
            raise AlphaOneError("Renyi order 1 is Shannon; use the shannon spec")

    def evaluate(self, a: Algebra) -> float:
        alpha = float(self.alpha)
        s = math.fsum(float(p) ** alpha for p in a.probabilities)
        return math.log2(s) / (1.0 - alpha)

    def to_json(self) -> dict:
        return {"kind": self.kind, "alpha": rat_str(self.alpha)}


@dataclass(frozen=True)
class Hartley(EntropySpec):
    """log2 of the number of (positive-measure) atoms."""

    kind = "hartley"

    def evaluate(self, a: Algebra) -> float:
        return math.log2(a.atom_count)


@dataclass(frozen=True)
class MinInfo(EntropySpec):
    """Smallest value of the information function: log2(1/max P(atom))."""

    kind = "min"

    def evaluate(self, a: Algebra) -> float:
        return min(-log2_rat(p) for p in a.probabilities)


@dataclass(frozen=True)
class MaxInfo(EntropySpec):
    """Largest value of the information function: log2(1/min P(atom))."""

    kind = "max"

    def evaluate(self, a: Algebra) -> float:
        return max(-log2_rat(p) for p in a.probabilities)


@dataclass(frozen=True)
class Variance(EntropySpec):
    """Variance of the information function under P."""

    kind = "variance"

    def evaluate(self, a: Algebra) -> float:
        probs = a.probabilities
        values = [-log2_rat(p) for p in probs]
        mean = math.fsum(float(p) * v for p, v in zip(probs, values))
        return math.fsum(float(p) * (v - mean) ** 2 for p, v in zip(probs, values))


@dataclass(frozen=True)
class InfoIntegral(EntropySpec):
    """Integral of the information function against a signed measure.

    Evaluates to the sum of m(atom) * log2(1/P(atom)).  With m = P this is
    Shannon; unlike the other built-ins it depends on the atoms themselves,
    not only on their measures.
    """

    measure: SignedMeasure
    kind = "lm"

    def evaluate(self, a: Algebra) -> float:
        return math.fsum(
            -float(self.measure(atom)) * log2_rat(atom.measure) for atom in a.atoms
        )

    def to_json(self) -> dict:
        return {"kind": self.kind, "measure": self.measure.to_json()}


@dataclass(frozen=True)
class Combo(EntropySpec):
    """Rational-weighted sum of entropy specs."""

    terms: tuple[tuple[Fraction, EntropySpec], ...]
    kind = "combo"

    def evaluate(self, a: Algebra) -> float:
        return math.fsum(float(w) * spec.evaluate(a) for w, spec in self.terms)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "terms": [
                {"weight": rat_str(w), "spec": spec.to_json()}
                for w, spec in self.terms
            ],
        }


def shannon_plus_info(measure: SignedMeasure) -> Combo:
    """Convenience: Shannon plus the information integral of a measure."""
    return Combo(((Fraction(1), Shannon()), (Fraction(1), InfoIntegral(measure))))


def eval_entropy(spec: EntropySpec, a: Algebra) -> float:
    return spec.evaluate(a)


def cgf(a: Algebra, t: float) -> float:
    """Cumulant generating function of the information function at t.

    Equals log2 of the sum of P(atom)^(1-t); 0 at t = 0, Hartley at t = 1.
    """
    return math.log2(math.fsum(float(p) ** (1.0 - t) for p in a.probabilities))


def additivity_residual(spec: EntropySpec, a: Algebra, b: Algebra) -> float:
    """|I(join) - I(a) - I(b)| for an independent pair; raises otherwise."""
    if not a.is_independent(b):
        raise NotIndependentError("additivity residual needs independent algebras")
    return abs(spec.evaluate(a.join(b)) - spec.evaluate(a) - spec.evaluate(b))
