"""Endomorphisms, Nielsen and Whitehead automorphisms, Whitehead graphs."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (DegenerateImageError, NotAutomorphismError,
                     PreconditionError, RankError)
from .words import (CyclicWord, Word, canonical_rotation, count_letter,
                    count_pair, cyclic_core, format_word, invert_letters,
                    letter_key, letter_str, parse_word)

TYPE2_ACTIONS = ("fix", "right", "left", "conjugate")


class Endomorphism:
    """A map F_k -> F_k given by the images of the basis generators."""

    __slots__ = ("rank", "images", "_pos", "_neg")

    def __init__(self, images: Sequence[Word], rank: int | None = None):
        images = tuple(images)
        rank = len(images) if rank is None else rank
        if len(images) != rank:
            raise RankError(f"expected {rank} images, got {len(images)}")
        for img in images:
            if img.rank != rank:
                raise RankError(f"image {img!r} not in rank {rank}")
        self.rank = rank
        self.images = images
        self._pos = tuple(img.letters for img in images)
        self._neg = tuple(invert_letters(t) for t in self._pos)

    @classmethod
    def from_strings(cls, texts: Sequence[str], rank: int | None = None):
        rank = len(texts) if rank is None else rank
        return cls([parse_word(t, rank) for t in texts], rank)

    def apply_letters(self, t: Sequence[int]) -> tuple[int, ...]:
        pos, neg = self._pos, self._neg
        out: list[int] = []
        for x in t:
            for y in (pos[x - 1] if x > 0 else neg[-x - 1]):
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
        return tuple(out)

    def apply_cyclic_letters(self, t: Sequence[int]) -> tuple[int, ...]:
        """Canonical cyclic form of the image; ``()`` if the image is trivial."""
        core = cyclic_core(self.apply_letters(t))
        return canonical_rotation(core) if core else ()

    def __call__(self, w):
        if isinstance(w, CyclicWord):
            return apply_cyclic(self, w)
        return apply(self, w)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.rank == other.rank and self._pos == other._pos

    def __hash__(self) -> int:
        return hash(self._pos)

    def is_identity(self) -> bool:
        return all(t == (i + 1,) for i, t in enumerate(self._pos))

    def image_strings(self) -> list[str]:
        return [format_word(img) for img in self.images]

    def __repr__(self) -> str:
        body = ", ".join(f"{letter_str(i + 1)}->{s or '1'}"
                         for i, s in enumerate(self.image_strings()))
        return f"{type(self).__name__}({body})"


class Automorphism(Endomorphism):
    """An endomorphism together with a recorded, verified inverse."""

    __slots__ = ("inverse", "label")

    def __init__(self, images: Sequence[Word], inverse_images: Sequence[Word],
                 rank: int | None = None, label: str = ""):
        super().__init__(images, rank)
        inv = Endomorphism(inverse_images, self.rank)
        for i in range(self.rank):
            gen = (i + 1,)
            if (self.apply_letters(inv._pos[i]) != gen
                    or inv.apply_letters(self._pos[i]) != gen):
                raise NotAutomorphismError(
                    f"recorded inverse does not invert generator {letter_str(i + 1)}")
        self.inverse = inv
        self.label = label

    @classmethod
    def _trusted(cls, images, inverse: Endomorphism, label: str = ""):
        a = cls.__new__(cls)
        Endomorphism.__init__(a, images)
        a.inverse = inverse
        a.label = label
        return a

    def inverted(self) -> "Automorphism":
        return Automorphism._trusted(self.inverse.images, Endomorphism(self.images),
                                     f"({self.label})^-1" if self.label else "")

    def to_json(self) -> dict:
        return {"rank": self.rank, "images": self.image_strings(),
                "inverse": self.inverse.image_strings(), "label": self.label}

    @classmethod
    def from_json(cls, data: dict) -> "Automorphism":
        k = data["rank"]
        return cls([parse_word(s, k) for s in data["images"]],
                   [parse_word(s, k) for s in data["inverse"]], k,
                   data.get("label", ""))


def identity(rank: int) -> Automorphism:
    gens = [Word((i,), rank) for i in range(1, rank + 1)]
    return Automorphism._trusted(gens, Endomorphism(gens), "id")


def _aut_from_letters(rank, pos, inv_pos, label) -> Automorphism:
    img = [Word(t, rank) for t in pos]
    inv = [Word(t, rank) for t in inv_pos]
    return Automorphism(img, inv, rank, label)


def nielsen(x: int, y: int, rank: int) -> Automorphism:
    """phi_{x,y}: x -> xy, every other generator fixed (x, y signed letters)."""
    if abs(x) == abs(y):
        raise PreconditionError("nielsen map needs x != y^{+-1}")
    for z in (x, y):
        if z == 0 or abs(z) > rank:
            raise RankError(f"letter {z} outside rank {rank}")
    pos = [(i,) for i in range(1, rank + 1)]
    inv = list(pos)
    g = abs(x)
    if x > 0:
        pos[g - 1] = (g, y)
        inv[g - 1] = (g, -y)
    else:
        # x^-1 -> x^-1 y  means  x -> y^-1 x
        pos[g - 1] = (-y, g)
        inv[g - 1] = (y, g)
    return _aut_from_letters(rank, pos, inv,
                             f"N({letter_str(x)},{letter_str(y)})")


def whitehead_type1(permutation: Sequence[int], signs: Sequence[int]) -> Automorphism:
    """a_i -> a_{permutation[i-1]}^{signs[i-1]}; permutation values are 1-based."""
    k = len(permutation)
    if sorted(permutation) != list(range(1, k + 1)):
        raise PreconditionError(f"invalid permutation {list(permutation)}")
    if len(signs) != k or any(s not in (1, -1) for s in signs):
        raise PreconditionError(f"invalid sign vector {list(signs)}")
    pos = [None] * k
    inv = [None] * k
    for i, (p, s) in enumerate(zip(permutation, signs), start=1):
        pos[i - 1] = (s * p,)
        inv[p - 1] = (s * i,)
    label = "T(" + "".join(letter_str(s * p) for p, s in zip(permutation, signs)) + ")"
    return _aut_from_letters(k, pos, inv, label)


def _normalize_assignment(assignment: Mapping, rank: int) -> dict[int, str]:
    out = {}
    for key, action in assignment.items():
        if isinstance(key, str):
            g = parse_word(key, rank).letters
            if len(g) != 1:
                raise PreconditionError(f"bad assignment key {key!r}")
            key = g[0]
        if key < 0:
            raise PreconditionError(
                "assignments are given on positive generators; inverses are derived")
        if key == 0 or key > rank:
            raise RankError(f"generator {key} outside rank {rank}")
        if action not in TYPE2_ACTIONS:
            raise PreconditionError(f"unknown type-2 action {action!r}")
        out[key] = action
    return out


def whitehead_type2(multiplier: int, assignment: Mapping, rank: int) -> Automorphism:
    """Whitehead automorphism with multiplier m.

    Each generator y other than m^{+-1} goes to y, ym, m^-1 y or m^-1 y m
    (``fix``, ``right``, ``left``, ``conjugate``); m is fixed.  Generators
    missing from ``assignment`` are fixed.
    """
    m = multiplier
    if m == 0 or abs(m) > rank:
        raise RankError(f"multiplier {m} outside rank {rank}")
    acts = _normalize_assignment(assignment, rank)
    if abs(m) in acts:
        raise PreconditionError("assignment touches the multiplier")

    def images(mult):
        out = []
        for y in range(1, rank + 1):
            act = acts.get(y, "fix")
            out.append({"fix": (y,), "right": (y, mult), "left": (-mult, y),
                        "conjugate": (-mult, y, mult)}[act])
        return out

    parts = [f"{letter_str(y)}:{acts[y]}" for y in sorted(acts) if acts[y] != "fix"]
    label = f"W({letter_str(m)};{','.join(parts)})"
    # the same assignment with multiplier m^-1 inverts the map
    return _aut_from_letters(rank, images(m), images(-m), label)


def apply(e: Endomorphism, w: Word) -> Word:
    if w.rank != e.rank:
        raise RankError(f"rank mismatch: {e.rank} vs {w.rank}")
    return Word._trusted(e.apply_letters(w.letters), e.rank)


def apply_cyclic(e: Endomorphism, w: CyclicWord) -> CyclicWord:
    if w.rank != e.rank:
        raise RankError(f"rank mismatch: {e.rank} vs {w.rank}")
    t = e.apply_cyclic_letters(w.letters)
    if not t:
        raise DegenerateImageError(f"{w} is sent to the identity")
    return CyclicWord._trusted(t, e.rank)


def compose(f: Endomorphism, g: Endomorphism) -> Endomorphism:
    """f o g, i.e. first g then f."""
    if f.rank != g.rank:
        raise RankError(f"rank mismatch: {f.rank} vs {g.rank}")
    images = [Word._trusted(f.apply_letters(t), f.rank) for t in g._pos]
    if isinstance(f, Automorphism) and isinstance(g, Automorphism):
        inv = [Word._trusted(g.inverse.apply_letters(t), f.rank)
               for t in f.inverse._pos]
        label = " o ".join(x for x in (f.label, g.label) if x and x != "id")
        return Automorphism._trusted(images, Endomorphism(inv), label or "id")
    return Endomorphism(images, f.rank)


# -- random automorphisms ---------------------------------------------------

def random_whitehead(rng: random.Random, rank: int) -> Automorphism:
    """A random Whitehead generator: type 1 with probability 1/4, else type 2."""
    if rank == 1 or rng.random() < 0.25:
        perm = list(range(1, rank + 1))
        rng.shuffle(perm)
        return whitehead_type1(perm, [rng.choice((1, -1)) for _ in range(rank)])
    m = rng.choice([s * i for i in range(1, rank + 1) for s in (1, -1)])
    acts = {y: rng.choice(TYPE2_ACTIONS) for y in range(1, rank + 1) if y != abs(m)}
    return whitehead_type2(m, acts, rank)


def random_automorphism(rng: random.Random, rank: int, moves: int) -> Automorphism:
    phi = identity(rank)
    for _ in range(moves):
        phi = compose(random_whitehead(rng, rank), phi)
    return phi


# -- Whitehead graphs -------------------------------------------------------

def _pair_index(i: int, j: int, n: int) -> int:
    # i < j < n, row-major upper triangle
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def _letter_of_key(key: int) -> int:
    g = key // 2 + 1
    return g if key % 2 == 0 else -g


class WhiteheadGraph:
    """Edge labels on unordered pairs of distinct letters of A^{+-1}.

    The edge {x, y} carries n(w; x, y^-1).  Stored as a flat upper-triangular
    table indexed by the letter order a < A < b < B < ...
    """

    __slots__ = ("rank", "labels")

    def __init__(self, rank: int, labels: Sequence[int]):
        n = 2 * rank
        if len(labels) != n * (n - 1) // 2:
            raise RankError("label table has the wrong size for this rank")
        self.rank = rank
        self.labels = tuple(labels)

    @classmethod
    def of_letters(cls, u: Sequence[int], rank: int) -> "WhiteheadGraph":
        n = 2 * rank
        labels = [0] * (n * (n - 1) // 2)
        m = len(u)
        for i in range(m):
            a, b = letter_key(u[i]), letter_key(-u[(i + 1) % m])
            if a > b:
                a, b = b, a
            labels[_pair_index(a, b, n)] += 1
        return cls(rank, labels)

    def label(self, x: int, y: int) -> int:
        a, b = letter_key(x), letter_key(y)
        if a == b:
            raise PreconditionError("Whitehead graph has no loops")
        if a > b:
            a, b = b, a
        return self.labels[_pair_index(a, b, 2 * self.rank)]

    def edges(self):
        """Yield ``(x, y, label)`` for every pair with a nonzero label."""
        n = 2 * self.rank
        for a, b in itertools.combinations(range(n), 2):
            lab = self.labels[_pair_index(a, b, n)]
            if lab:
                yield _letter_of_key(a), _letter_of_key(b), lab

    def total(self) -> int:
        return sum(self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WhiteheadGraph):
            return NotImplemented
        return self.rank == other.rank and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.rank, self.labels))

    def to_json(self) -> list[dict]:
        return [{"pair": [letter_str(x), letter_str(y)], "label": lab}
                for x, y, lab in self.edges()]

    @classmethod
    def from_json(cls, data: list[dict], rank: int) -> "WhiteheadGraph":
        n = 2 * rank
        labels = [0] * (n * (n - 1) // 2)
        for entry in data:
            x, y = (parse_word(s, rank).letters[0] for s in entry["pair"])
            a, b = sorted((letter_key(x), letter_key(y)))
            labels[_pair_index(a, b, n)] = entry["label"]
        return cls(rank, labels)

    def __repr__(self) -> str:
        body = ", ".join(f"{letter_str(x)}{letter_str(y)}:{lab}"
                         for x, y, lab in self.edges())
        return f"WhiteheadGraph({body})"


def whitehead_graph(w: CyclicWord) -> WhiteheadGraph:
    w = CyclicWord.of(w)
    return WhiteheadGraph.of_letters(w.letters, w.rank)


def graphs_equal(g1: WhiteheadGraph, g2: WhiteheadGraph) -> bool:
    if g1.rank != g2.rank:
        raise RankError(f"rank mismatch: {g1.rank} vs {g2.rank}")
    return g1.labels == g2.labels


# -- counting lemmas --------------------------------------------------------

def lemma1_check(w: CyclicWord, x: int, y: int) -> tuple[int, int]:
    """``(||phi_{x,y}(w)|| - ||w||, n(w;x) - 2 n(w;x,y^-1))``; always equal."""
    w = CyclicWord.of(w)
    phi = nielsen(x, y, w.rank)
    lhs = len(phi.apply_cyclic_letters(w.letters)) - len(w)
    rhs = count_letter(w, x) - 2 * count_pair(w, x, -y)
    return lhs, rhs


def lemma2_recover_count(w: CyclicWord, i: int) -> Fraction:
    """Recover n(w; a_i) from cyclic lengths of Nielsen images alone."""
    w = CyclicWord.of(w)
    k = w.rank
    if k < 2:
        raise RankError("needs rank at least 2")
    if not 1 <= i <= k:
        raise RankError(f"generator index {i} outside rank {k}")
    total = len(w)
    for j in range(1, k + 1):
        if j == i:
            continue
        total += (len(nielsen(i, j, k).apply_cyclic_letters(w.letters))
                  - len(nielsen(j, i, k).apply_cyclic_letters(w.letters)))
    value = Fraction(total, k)
    # integrality is part of the contract, not something to round away
    assert value.denominator == 1 and value >= 0, value
    return value
