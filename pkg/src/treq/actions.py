"""Free simplicial actions modelled as weighted marked roses.

A rose action is a rank-k rose whose petals have positive rational lengths,
together with a marking automorphism.  The translation length of g is the
weighted count of petals crossed by the immersed loop representing g, i.e.
sum_i weight_i * n([marking(g)]; a_i).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .autos import Automorphism, identity, random_automorphism
from .config import WEIGHT_DENOMINATORS, WEIGHT_NUMERATORS
from .errors import PreconditionError, RankError, TrivialWordError
from .words import Word, cyclic_core, parse_word


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RoseAction:
    rank: int
    marking: Automorphism
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if self.marking.rank != self.rank:
            raise RankError("marking rank differs from the rose rank")
        if len(self.weights) != self.rank:
            raise RankError(f"need {self.rank} petal weights")
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if any(w <= 0 for w in self.weights):
            raise PreconditionError("petal weights must be strictly positive")

    def length(self, g: Word) -> Fraction:
        return translation_length(self, g)

    def to_json(self) -> dict:
        return {"marking": self.marking.image_strings(),
                "inverse": self.marking.inverse.image_strings(),
                "weights": [_frac_str(w) for w in self.weights]}

    @classmethod
    def from_json(cls, data: dict) -> "RoseAction":
        k = len(data["marking"])
        marking = Automorphism([parse_word(s, k) for s in data["marking"]],
                               [parse_word(s, k) for s in data["inverse"]], k)
        return cls(k, marking, tuple(Fraction(w) for w in data["weights"]))


def translation_length(act: RoseAction, g: Word) -> Fraction:
    if g.rank != act.rank:
        raise RankError(f"rank mismatch: {act.rank} vs {g.rank}")
    core = cyclic_core(act.marking.apply_letters(g.letters))
    counts = [0] * act.rank
    for x in core:
        counts[abs(x) - 1] += 1
    return sum((w * c for w, c in zip(act.weights, counts)), Fraction(0))


def random_weights(rng: random.Random, rank: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.choice(WEIGHT_NUMERATORS), rng.choice(WEIGHT_DENOMINATORS))
                 for _ in range(rank))


def sample_actions(rank: int, count: int, moves: int, seed: int) -> list[RoseAction]:
    """``count`` rose actions; each marking composes 0..moves random Whitehead moves."""
    if moves < 0:
        raise PreconditionError("moves must be nonnegative")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        depth = rng.randint(0, moves)
        marking = random_automorphism(rng, rank, depth) if depth else identity(rank)
        out.append(RoseAction(rank, marking, random_weights(rng, rank)))
    return out


@dataclass(frozen=True)
class Witness:
    """A rose action on which g and h have different translation lengths."""

    action: RoseAction
    len_g: Fraction
    len_h: Fraction

    def verify(self, g: Word, h: Word) -> bool:
        return (translation_length(self.action, g) == self.len_g
                and translation_length(self.action, h) == self.len_h
                and self.len_g != self.len_h)

    def to_json(self) -> dict:
        data = self.action.to_json()
        data.update(len_g=_frac_str(self.len_g), len_h=_frac_str(self.len_h))
        return data

    @classmethod
    def from_json(cls, data: dict) -> "Witness":
        return cls(RoseAction.from_json(data), Fraction(data["len_g"]),
                   Fraction(data["len_h"]))


def falsify(g: Word, h: Word, actions: Sequence[RoseAction]) -> Witness | None:
    """First action separating g from h, or None.  Never proves equivalence."""
    if g.is_trivial() or h.is_trivial():
        raise TrivialWordError("falsify expects nontrivial elements")
    for act in actions:
        lg, lh = translation_length(act, g), translation_length(act, h)
        if lg != lh:
            return Witness(act, lg, lh)
    return None
