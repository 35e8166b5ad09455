import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from treq.errors import ParseError, RankError, TrivialWordError
from treq.words import (CyclicWord, Word, abelianize, canonical_rotation, conjugate_equal,
                        count_letter, count_pair, count_subword, cyclic_core, cyclic_length,
                        cyclic_reduce, cyclic_words, format_word, free_reduce, infer_rank,
                        invert, invert_letters, letter_key, multiply, palindromic_reverse,
                        parse_word, random_word, reduce_letters, substitute)


def W(text, rank=2):
    return parse_word(text, rank)


def C(text, rank=2):
    return CyclicWord.of(parse_word(text, rank))


def letters(rank, max_len=12):
    gens = [x for i in range(1, rank + 1) for x in (i, -i)]
    return st.lists(st.sampled_from(gens), max_size=max_len)


@st.composite
def words(draw, rank=None, max_len=12):
    k = rank or draw(st.integers(2, 4))
    return Word(reduce_letters(draw(letters(k, max_len))), k)


@st.composite
def nontrivial_words(draw, rank=None, max_len=12):
    w = draw(words(rank, max_len))
    return w if not w.is_trivial() else Word((1,), w.rank)


def brute_min_rotation(t):
    return min((t[i:] + t[:i] for i in range(len(t))), key=lambda u: [letter_key(x) for x in u])


# -- parsing ----------------------------------------------------------------

def test_parse_examples():
    assert W("abBA").is_trivial()
    assert W("aba").letters == (1, 2, 1)
    assert W("a^2*B").letters == (1, 1, -2)


def test_parse_exponent_forms():
    assert W("a^-3*b^2").letters == (-1, -1, -1, 2, 2)
    assert W("1").is_trivial() and W("").is_trivial()
    assert W("A^-2").letters == (1, 1)


@pytest.mark.parametrize("text", ["a+b", "a^", "a^x", "^2", "a**2", "ab^-*2", "é"])
def test_parse_malformed(text):
    with pytest.raises(ParseError):
        parse_word(text, 2)


def test_parse_beyond_rank():
    with pytest.raises(ParseError):
        parse_word("abc", 2)


def test_xyz_alphabet():
    assert parse_word("xyy", 3).letters == (1, 2, 2)
    assert parse_word("XZ", 3).letters == (-1, -3)
    assert infer_rank("xyy", "xxy") == 2
    assert infer_rank("z") == 3
    assert infer_rank("abd") == 4
    assert infer_rank("") == 2


def test_format_roundtrip_examples():
    assert str(W("aabAB")) == "aabAB"
    assert str(W("")) == ""
    assert format_word(W("aB"), "xyz") == "xY"


@given(words())
def test_format_parse_roundtrip(w):
    assert parse_word(str(w), w.rank) == w


@given(words())
def test_json_roundtrip(w):
    data = w.to_json()
    assert data == {"rank": w.rank, "word": str(w)}
    assert Word.from_json(data) == w


def test_rank_validation():
    with pytest.raises(RankError):
        Word((3,), 2)
    with pytest.raises(RankError):
        Word((0,), 2)


# -- reduction and arithmetic -------------------------------------------------

def test_free_reduce_examples():
    assert free_reduce([1, 2, -2, 1]).letters == (1, 1)
    assert free_reduce([]).is_trivial()
    assert free_reduce([1, -1, 1, -1]).is_trivial()


@given(words(), st.lists(st.tuples(st.integers(0, 20), st.integers(-3, 3).filter(bool)), max_size=6))
def test_reduction_confluent(w, inserts):
    # inserting cancelling pairs anywhere and re-reducing gives back w
    t = list(w.letters)
    for pos, x in inserts:
        if abs(x) > w.rank:
            continue
        pos = min(pos, len(t))
        t[pos:pos] = [x, -x]
    assert reduce_letters(t) == w.letters
    assert free_reduce(t, w.rank) == w


def test_multiply_invert_examples():
    assert multiply(W("ab"), W("Ba")) == W("aa")
    assert invert(W("aB")) == W("bA")
    with pytest.raises(RankError):
        multiply(W("a"), W("a", 3))


@given(words(rank=3), words(rank=3), words(rank=3))
def test_group_laws(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert (u * ~u).is_trivial()
    assert ~(u * v) == ~v * ~u
    assert u ** 3 == u * u * u
    assert u ** -2 == ~u * ~u


def test_cyclic_reduce_examples():
    c, u = cyclic_reduce(W("baB"))
    assert c == W("b") and u.letters == (1,)
    c, u = cyclic_reduce(W("abaBA"))
    assert c == W("ab") and u.letters == (1,)
    c, u = cyclic_reduce(W("ab"))
    assert c.is_trivial() and u.letters == (1, 2)
    with pytest.raises(TrivialWordError):
        cyclic_reduce(W(""))


@given(nontrivial_words())
def test_cyclic_reduce_factorization(w):
    c, u = cyclic_reduce(w)
    assert c * u.word() * ~c == w
    assert len(u) == cyclic_length(w) <= len(w)
    assert (cyclic_length(w) == len(w)) == (cyclic_core(w.letters) == w.letters)
    t = u.letters
    assert len(t) == 1 or t[0] != -t[-1]


# -- canonical forms ------------------------------------------------------------

@given(nontrivial_words(max_len=14), st.integers(0, 30))
def test_canonical_rotation_matches_brute_force(w, m):
    t = cyclic_core(w.letters)
    assert canonical_rotation(t) == brute_min_rotation(t)
    m %= len(t)
    assert canonical_rotation(t[m:] + t[:m]) == canonical_rotation(t)


def test_canonical_rotation_periodic():
    assert canonical_rotation((2, 1, 2, 1)) == (1, 2, 1, 2)
    assert canonical_rotation((2, -1, 2, -1)) == (-1, 2, -1, 2)
    assert canonical_rotation((-2, 1, 1)) == (1, 1, -2)


def test_letter_order():
    assert [letter_key(x) for x in (1, -1, 2, -2, 3, -3)] == [0, 1, 2, 3, 4, 5]


def test_cyclic_word_trivial_rejected():
    with pytest.raises(TrivialWordError):
        CyclicWord((), 2)
    with pytest.raises(TrivialWordError):
        C("abBA")


@given(nontrivial_words(), nontrivial_words())
def test_conjugate_equal_brute(u, v):
    if u.rank != v.rank:
        return
    assert conjugate_equal(u, v * u * ~v)
    cu, cv = cyclic_core(u.letters), cyclic_core(v.letters)
    rotations = {cu[i:] + cu[:i] for i in range(len(cu))}
    assert conjugate_equal(u, v) == (cv in rotations)


def test_conjugate_equal_examples():
    assert conjugate_equal(W("baB"), W("a"))
    assert not conjugate_equal(W("ab"), W("bA"))


def test_cyclic_words_enumeration_matches_brute_force():
    for k, n_max in ((2, 6), (3, 4)):
        gens = [x for i in range(1, k + 1) for x in (i, -i)]
        for n in range(1, n_max + 1):
            brute = {canonical_rotation(t) for t in itertools.product(gens, repeat=n)
                     if reduce_letters(t) == t and cyclic_core(t) == t}
            got = cyclic_words(k, n)
            assert len(got) == len(set(got)) == len(brute)
            assert set(got) == brute


# -- palindromes ------------------------------------------------------------------

def test_palindromic_reverse_examples():
    assert palindromic_reverse(W("aab")) == W("baa")
    assert palindromic_reverse(W("aB")) == W("Ba")


def test_palindromic_reverse_involution_1000():
    rng = random.Random(11)
    for _ in range(1000):
        w = random_word(rng, rng.randint(2, 4), rng.randint(0, 20))
        assert palindromic_reverse(palindromic_reverse(w)) == w


@given(words())
def test_palindromic_reverse_by_substitution(w):
    inv_gens = [Word((-i,), w.rank) for i in range(1, w.rank + 1)]
    assert palindromic_reverse(w) == ~substitute(w, inv_gens)


# -- counting ---------------------------------------------------------------------

def test_count_letter_examples():
    assert count_letter(C("abaB"), 1) == 2
    assert count_letter(C("ab"), 2) == 1


def test_count_pair_examples():
    assert count_pair(C("ab"), 1, 2) == 1
    assert count_pair(C("ab"), 1, -2) == 0
    assert count_pair(C("abab"), 1, 2) == 2


def test_count_subword_examples():
    assert count_subword(C("abaaB"), W("Bab")) == 1
    assert count_subword(C("aabaB"), W("Bab")) == 0
    assert count_subword(C("ab"), W("a")) == 1
    with pytest.raises(TrivialWordError):
        count_subword(C("ab"), W(""))


def test_count_subword_wraps_around():
    # v longer than ||w|| is read off the infinite word uuu...
    assert count_subword(C("ab"), W("abab")) == 1
    assert count_subword(C("abab"), W("ababab")) == 2
    assert count_subword(C("a"), W("aaa")) == 1


def _brute_count(t, v):
    n = len(t)
    inf = t * (len(v) // n + 2)
    return sum(inf[i:i + len(v)] == v for i in range(n))


@given(nontrivial_words(rank=2, max_len=10), nontrivial_words(rank=2, max_len=4))
def test_count_subword_brute(w, v):
    cw = CyclicWord.of(w)
    expected = _brute_count(cw.letters, v.letters) + _brute_count(cw.letters, invert_letters(v.letters))
    assert count_subword(cw, v) == expected


@given(nontrivial_words())
def test_count_symmetries(w):
    cw = CyclicWord.of(w)
    inv = cw.inverse()
    k = w.rank
    assert sum(count_letter(cw, i) for i in range(1, k + 1)) == len(cw)
    gens = [x for i in range(1, k + 1) for x in (i, -i)]
    for x in gens:
        assert count_letter(cw, x) == count_letter(cw, -x) == count_letter(inv, x)
        for y in gens:
            n = count_pair(cw, x, y)
            assert n == count_pair(cw, -y, -x) == count_pair(inv, x, y)


def test_count_letter_inverse_1000():
    rng = random.Random(5)
    for _ in range(1000):
        w = random_word(rng, 3, rng.randint(1, 15))
        if w.is_trivial():
            continue
        cw = CyclicWord.of(w)
        for x in (1, 2, 3):
            assert count_letter(cw, x) == count_letter(cw.inverse(), x)


def test_abelianize():
    assert abelianize(W("abaaB")) == (3, 0)
    assert abelianize(W("ab")) == (1, 1)
    assert abelianize(W("bA")) == (-1, 1)


@given(nontrivial_words(), words())
def test_abelianize_conjugation_invariant(w, c):
    if c.rank != w.rank:
        return
    assert abelianize(c * w * ~c) == abelianize(w)
    assert abelianize(CyclicWord.of(w)) == abelianize(w)


@settings(max_examples=50)
@given(words(rank=2), words(rank=3), words(rank=3))
def test_substitute_is_homomorphism(w, g, h):
    u = Word((1, 2), 2)
    assert substitute(w * u, [g, h]) == substitute(w, [g, h]) * substitute(u, [g, h])
    assert substitute(~w, [g, h]) == ~substitute(w, [g, h])
