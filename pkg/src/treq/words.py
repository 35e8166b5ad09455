"""Free-group words over a basis a_1, ..., a_k.

A letter is a nonzero int: ``i`` stands for the generator a_i and ``-i`` for
its inverse.  Words are always freely reduced; cyclic words are stored in
their least rotation under the letter order a < A < b < B < ...

Text format: lowercase letters are generators, uppercase their inverses
(``"abBA"``), optionally with integer exponents and ``*`` separators
(``"a^-3*b^2"``).  For rank <= 3 the letters x, y, z may be used instead of
a, b, c.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import ParseError, RankError, TrivialWordError

MAX_COMPACT_RANK = 26

_ABC = "abcdefghijklmnopqrstuvwxyz"
_XYZ = "xyz"


def letter_key(x: int) -> int:
    """Position of a letter in the total order a < A < b < B < ..."""
    return 2 * abs(x) - (2 if x > 0 else 1)


def letter_str(x: int, alphabet: str = _ABC) -> str:
    ch = alphabet[abs(x) - 1]
    return ch if x > 0 else ch.upper()


# -- tuple-level primitives (shared by the other modules' hot loops) --------

def reduce_letters(seq: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_core(t: tuple[int, ...]) -> tuple[int, ...]:
    """Strip the conjugating ends of a reduced tuple."""
    i, j = 0, len(t) - 1
    while i < j and t[i] == -t[j]:
        i += 1
        j -= 1
    return t[i:j + 1]


def least_rotation(keys: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    n = len(keys)
    if n == 0:
        return 0
    s = list(keys) * 2
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def canonical_rotation(t: tuple[int, ...]) -> tuple[int, ...]:
    k = least_rotation([letter_key(x) for x in t])
    return t[k:] + t[:k]


def canonical_cyclic(t: Iterable[int]) -> tuple[int, ...]:
    """Canonical conjugacy-class key of an arbitrary letter sequence."""
    return canonical_rotation(cyclic_core(reduce_letters(t)))


def invert_letters(t: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(t))


def sort_key(t: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(letter_key(x) for x in t)


# -- Word ------------------------------------------------------------------

def _check_rank(rank: int) -> None:
    if not isinstance(rank, int) or rank < 1:
        raise RankError(f"rank must be a positive integer, got {rank!r}")


class Word:
    """A freely reduced word.  Construction reduces the given letters."""

    __slots__ = ("rank", "letters")

    def __init__(self, letters: Iterable[int] = (), rank: int = 2):
        _check_rank(rank)
        t = reduce_letters(letters)
        for x in t:
            if not isinstance(x, int) or x == 0 or abs(x) > rank:
                raise RankError(f"letter {x!r} is outside rank {rank}")
        self.rank = rank
        self.letters = t

    @classmethod
    def _trusted(cls, letters: tuple[int, ...], rank: int) -> "Word":
        w = cls.__new__(cls)
        w.rank = rank
        w.letters = letters
        return w

    @classmethod
    def parse(cls, text: str, rank: int) -> "Word":
        return parse_word(text, rank)

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, i: int, rank: int) -> "Word":
        return cls((i,), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def is_trivial(self) -> bool:
        return not self.letters

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.rank, self.letters))

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else invert(self)
        return Word._trusted(reduce_letters(base.letters * abs(n)), self.rank)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r}, rank={self.rank})"

    def to_json(self) -> dict:
        return {"rank": self.rank, "word": format_word(self)}

    @classmethod
    def from_json(cls, data: dict) -> "Word":
        return parse_word(data["word"], data["rank"])


class CyclicWord:
    """A nontrivial conjugacy class, stored as its canonical rotation."""

    __slots__ = ("rank", "letters")

    def __init__(self, letters: Iterable[int], rank: int = 2):
        w = Word(letters, rank)
        core = cyclic_core(w.letters)
        if not core:
            raise TrivialWordError("the trivial element has no cyclic word")
        self.rank = rank
        self.letters = canonical_rotation(core)

    @classmethod
    def _trusted(cls, letters: tuple[int, ...], rank: int) -> "CyclicWord":
        c = cls.__new__(cls)
        c.rank = rank
        c.letters = letters
        return c

    @classmethod
    def of(cls, w: "Word | CyclicWord") -> "CyclicWord":
        if isinstance(w, CyclicWord):
            return w
        return cls(w.letters, w.rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(("cyclic", self.rank, self.letters))

    def __lt__(self, other: "CyclicWord") -> bool:
        return sort_key(self.letters) < sort_key(other.letters)

    def inverse(self) -> "CyclicWord":
        return CyclicWord._trusted(
            canonical_rotation(invert_letters(self.letters)), self.rank)

    def word(self) -> Word:
        return Word._trusted(self.letters, self.rank)

    def __str__(self) -> str:
        return format_word(self.word())

    def __repr__(self) -> str:
        return f"CyclicWord({str(self)!r}, rank={self.rank})"


# -- parsing and formatting -------------------------------------------------

def _pick_alphabet(text: str, rank: int) -> str:
    used = {ch.lower() for ch in text if ch.isalpha()}
    if rank <= 3 and used and used <= set(_XYZ):
        return _XYZ
    return _ABC


def infer_rank(*texts: str) -> int:
    """Smallest rank (at least 2) that every text can be parsed in."""
    chars = {ch.lower() for t in texts for ch in t if ch.isalpha()}
    if chars and chars <= set(_XYZ):
        return max(2, max(_XYZ.index(c) + 1 for c in chars))
    return max([2] + [_ABC.index(c) + 1 for c in chars if c in _ABC])


def parse_word(text: str, rank: int) -> Word:
    """Parse compact (``"abBA"``) or exponent (``"a^-3*b^2"``) notation."""
    _check_rank(rank)
    if rank > MAX_COMPACT_RANK:
        raise RankError(f"text format supports rank <= {MAX_COMPACT_RANK}")
    s = "".join(text.split())
    if s in ("", "1"):
        return Word((), rank)
    alphabet = _pick_alphabet(s, rank)
    letters: list[int] = []
    pos, n = 0, len(s)
    expect_atom = True
    while pos < n:
        ch = s[pos]
        if ch == "*":
            if expect_atom:
                raise ParseError(f"misplaced '*' at position {pos} in {text!r}")
            expect_atom = True
            pos += 1
            continue
        if not ch.isalpha() or not ch.isascii():
            raise ParseError(f"unexpected character {ch!r} in {text!r}")
        idx = alphabet.find(ch.lower())
        if idx < 0:
            raise ParseError(f"unknown letter {ch!r} in {text!r}")
        if idx + 1 > rank:
            raise ParseError(f"letter {ch!r} is beyond rank {rank}")
        x = idx + 1 if ch.islower() else -(idx + 1)
        pos += 1
        exp = 1
        if pos < n and s[pos] == "^":
            j = pos + 1
            if j < n and s[j] == "-":
                j += 1
            k = j
            while k < n and s[k].isdigit():
                k += 1
            if k == j:
                raise ParseError(f"malformed exponent at position {pos} in {text!r}")
            exp = int(s[pos + 1:k])
            pos = k
        letters.extend([x if exp > 0 else -x] * abs(exp))
        expect_atom = False
    if expect_atom:
        raise ParseError(f"trailing '*' in {text!r}")
    return Word(letters, rank)


def format_word(w: Word, alphabet: str = _ABC) -> str:
    if w.rank > len(alphabet):
        raise RankError(f"cannot format rank {w.rank} with alphabet {alphabet!r}")
    return "".join(letter_str(x, alphabet) for x in w.letters)


# -- operations -------------------------------------------------------------

def free_reduce(letters: Iterable[int], rank: int = 2) -> Word:
    return Word(letters, rank)


def _same_rank(u, v) -> None:
    if u.rank != v.rank:
        raise RankError(f"rank mismatch: {u.rank} vs {v.rank}")


def multiply(u: Word, v: Word) -> Word:
    _same_rank(u, v)
    return Word._trusted(reduce_letters(u.letters + v.letters), u.rank)


def invert(u: Word) -> Word:
    return Word._trusted(invert_letters(u.letters), u.rank)


def cyclic_reduce(w: Word) -> tuple[Word, CyclicWord]:
    """Return ``(c, u)`` with ``w = c u c^-1`` and ``u`` in canonical rotation.

    The conjugator absorbs the rotation taking the cyclically reduced core
    to its least rotation, so the identity holds with the stored ``u``.
    """
    t = w.letters
    core = cyclic_core(t)
    if not core:
        raise TrivialWordError("the trivial element has no cyclic word")
    i = (len(t) - len(core)) // 2
    k = least_rotation([letter_key(x) for x in core])
    conj = reduce_letters(t[:i] + core[:k])
    return (Word._trusted(conj, w.rank),
            CyclicWord._trusted(core[k:] + core[:k], w.rank))


def cyclic_length(w: Word | CyclicWord) -> int:
    """||w||, the cyclically reduced length (0 for the identity)."""
    if isinstance(w, CyclicWord):
        return len(w.letters)
    return len(cyclic_core(w.letters))


def palindromic_reverse(w: Word) -> Word:
    """The word read backwards, letters not inverted."""
    return Word._trusted(w.letters[::-1], w.rank)


def reverse_cyclic(w: CyclicWord) -> CyclicWord:
    return CyclicWord._trusted(canonical_rotation(w.letters[::-1]), w.rank)


def _as_cyclic(w) -> CyclicWord:
    return CyclicWord.of(w)


def count_letter(w: CyclicWord, x: int) -> int:
    """n(w; x): occurrences of x and x^-1."""
    w = _as_cyclic(w)
    g = abs(x)
    return sum(1 for y in w.letters if y == g or y == -g)


def count_pair(w: CyclicWord, x: int, y: int) -> int:
    """n(w; x, y): cyclic occurrences of ``xy`` plus those of ``y^-1 x^-1``."""
    u = _as_cyclic(w).letters
    n = len(u)
    total = 0
    for i in range(n):
        p, q = u[i], u[(i + 1) % n]
        if (p == x and q == y) or (p == -y and q == -x):
            total += 1
    return total


def _occurrences(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    n, m = len(u), len(v)
    return sum(1 for i in range(n)
               if all(u[(i + j) % n] == v[j] for j in range(m)))


def count_subword(w: CyclicWord, v: Word) -> int:
    """Cyclic occurrences of ``v`` plus those of ``v^-1``; may wrap around."""
    if not v.letters:
        raise TrivialWordError("subword must be nontrivial")
    u = _as_cyclic(w).letters
    return _occurrences(u, v.letters) + _occurrences(u, invert_letters(v.letters))


def abelianize(w: Word | CyclicWord) -> tuple[int, ...]:
    sums = [0] * w.rank
    for x in w.letters:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(sums)


def conjugate_equal(g: Word, h: Word) -> bool:
    _same_rank(g, h)
    return CyclicWord.of(g) == CyclicWord.of(h)


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """w(images[0], images[1], ...): the homomorphic image of w."""
    if len(images) < w.rank:
        raise RankError(f"need {w.rank} images, got {len(images)}")
    rank = images[0].rank
    pos = [img.letters for img in images]
    neg = [invert_letters(t) for t in pos]
    out: list[int] = []
    for x in w.letters:
        for y in (pos[x - 1] if x > 0 else neg[-x - 1]):
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return Word._trusted(tuple(out), rank)


# -- random generation ------------------------------------------------------

def random_letters(rng: random.Random, rank: int, length: int,
                   cyclic: bool = False) -> tuple[int, ...]:
    """Uniform reduced (optionally cyclically reduced) letter tuple."""
    if length == 0:
        return ()
    choices = [x for i in range(1, rank + 1) for x in (i, -i)]
    while True:
        out = [rng.choice(choices)]
        for _ in range(length - 1):
            x = rng.choice(choices)
            while x == -out[-1]:
                x = rng.choice(choices)
            out.append(x)
        if not cyclic or length == 1 or out[0] != -out[-1]:
            return tuple(out)


def random_word(rng: random.Random, rank: int, length: int) -> Word:
    return Word._trusted(random_letters(rng, rank, length), rank)


def random_cyclic_word(rng: random.Random, rank: int, length: int) -> CyclicWord:
    t = random_letters(rng, rank, max(1, length), cyclic=True)
    return CyclicWord._trusted(canonical_rotation(t), rank)


# -- exhaustive enumeration -------------------------------------------------

def cyclic_words(rank: int, length: int) -> list[tuple[int, ...]]:
    """Every cyclic word of the given length, as canonical letter tuples.

    Fredricksen-Kessler-Maiorana necklace generation over the letter order,
    pruning prefixes that contain a cancelling pair.  Output is sorted.
    """
    _check_rank(rank)
    if length < 1:
        return []
    alphabet = [x for i in range(1, rank + 1) for x in (i, -i)]
    n = length
    a = [0] * (n + 1)
    out = []

    def gen(t, p):
        if t > n:
            if n % p == 0 and (n == 1 or alphabet[a[n]] != -alphabet[a[1]]):
                out.append(tuple(alphabet[a[i]] for i in range(1, n + 1)))
            return
        start = a[t - p]
        for j in range(start, len(alphabet)):
            if alphabet[j] == -alphabet[a[t - 1]]:
                continue
            a[t] = j
            gen(t + 1, p if j == start else t)

    for j in range(len(alphabet)):
        a[1] = j
        gen(2, 1)
    return out
