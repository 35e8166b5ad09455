import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from treq.autos import (Automorphism, Endomorphism, WhiteheadGraph, apply, apply_cyclic,
                        compose, graphs_equal, identity, lemma1_check, lemma2_recover_count,
                        nielsen, random_automorphism, whitehead_graph, whitehead_type1,
                        whitehead_type2)
from treq.errors import (DegenerateImageError, NotAutomorphismError, PreconditionError,
                         RankError)
from treq.words import (CyclicWord, Word, count_letter, count_pair, cyclic_length,
                        parse_word, random_cyclic_word, random_word, reverse_cyclic)


def W(text, rank=2):
    return parse_word(text, rank)


def C(text, rank=2):
    return CyclicWord.of(parse_word(text, rank))


def gens(rank):
    return [x for i in range(1, rank + 1) for x in (i, -i)]


seeds = st.integers(0, 2**32 - 1)


# -- constructors -------------------------------------------------------------

def test_nielsen_examples():
    phi = nielsen(1, 2, 2)
    assert phi(W("a")) == W("ab")
    assert phi(W("b")) == W("b")
    assert phi(W("A")) == W("BA")
    assert compose(phi, phi.inverted()).is_identity()
    assert list(phi.inverse.images) == [W("aB"), W("b")]


def test_nielsen_negative_letter():
    # x = a^-1: a^-1 -> a^-1 b, so a -> b^-1 a
    phi = nielsen(-1, 2, 2)
    assert phi(W("A")) == W("Ab")
    assert phi(W("a")) == W("Ba")


def test_nielsen_errors():
    for x, y in ((1, 1), (1, -1)):
        with pytest.raises(PreconditionError):
            nielsen(x, y, 2)
    with pytest.raises(RankError):
        nielsen(1, 3, 2)


def test_type1_examples():
    tau = whitehead_type1([1, 2], [-1, -1])
    assert tau(W("a")) == W("A") and tau(W("b")) == W("B")
    assert compose(tau, tau).is_identity()
    swap = whitehead_type1([2, 1], [1, 1])
    assert swap(W("aab")) == W("bba")
    rng = random.Random(1)
    for _ in range(100):
        w = random_word(rng, 2, rng.randint(1, 12))
        assert cyclic_length(swap(w)) == cyclic_length(w)
        assert len(tau(w)) == len(w)


def test_type1_signs_and_permutation_compose():
    f = whitehead_type1([3, 1, 2], [1, -1, 1])
    assert f.image_strings() == ["c", "A", "b"]
    assert compose(f, f.inverted()).is_identity()
    assert compose(f.inverted(), f).is_identity()


def test_type1_invalid():
    with pytest.raises(PreconditionError):
        whitehead_type1([1, 1], [1, 1])
    with pytest.raises(PreconditionError):
        whitehead_type1([1, 2], [1, 0])


def test_type2_examples():
    assert whitehead_type2(2, {1: "right"}, 2) == nielsen(1, 2, 2)
    conj = whitehead_type2(2, {"a": "conjugate"}, 2)
    assert conj.image_strings() == ["Bab", "b"]
    assert whitehead_type2(1, {2: "fix"}, 2).is_identity()
    assert whitehead_type2(1, {}, 3).is_identity()
    rng = random.Random(2)
    for _ in range(100):
        w = random_word(rng, 2, rng.randint(0, 12))
        assert conj.inverse.apply_letters(conj.apply_letters(w.letters)) == w.letters


def test_type2_left_and_negative_multiplier():
    f = whitehead_type2(-2, {1: "left", 3: "right"}, 3)
    assert f.image_strings() == ["ba", "b", "cB"]
    assert compose(f, f.inverted()).is_identity()


def test_type2_errors():
    with pytest.raises(PreconditionError):
        whitehead_type2(1, {1: "right"}, 2)
    with pytest.raises(PreconditionError):
        whitehead_type2(1, {-2: "right"}, 2)
    with pytest.raises(PreconditionError):
        whitehead_type2(1, {2: "sideways"}, 2)
    with pytest.raises(RankError):
        whitehead_type2(3, {}, 2)


@pytest.mark.parametrize("m", [1, -1, 2, -2, 3, -3])
def test_type2_inverse_all_assignments(m):
    others = [y for y in (1, 2, 3) if y != abs(m)]
    for acts in itertools.product(("fix", "right", "left", "conjugate"), repeat=2):
        f = whitehead_type2(m, dict(zip(others, acts)), 3)
        assert compose(f, f.inverted()).is_identity()
        assert compose(f.inverted(), f).is_identity()


def test_automorphism_rejects_wrong_inverse():
    with pytest.raises(NotAutomorphismError):
        Automorphism([W("ab"), W("b")], [W("ab"), W("b")])


def test_automorphism_json_roundtrip():
    f = compose(nielsen(1, 2, 3), whitehead_type2(-3, {1: "conjugate", 2: "left"}, 3))
    g = Automorphism.from_json(f.to_json())
    assert g == f and g.inverse == f.inverse


def test_endomorphism_rank_inference_and_validation():
    e = Endomorphism([W("ab"), W("b")])
    assert e.rank == 2
    with pytest.raises(RankError):
        Endomorphism([W("a")], 2)


# -- application ------------------------------------------------------------------

def test_apply_cyclic_examples():
    assert apply_cyclic(nielsen(1, 2, 2), C("ab")) == C("abb")
    w = C("abaaB")
    assert apply_cyclic(identity(2), w) == w
    tau = whitehead_type1([1, 2], [-1, -1])
    flipped = CyclicWord(tuple(-x for x in w.letters), 2)
    assert apply_cyclic(tau, w) == flipped


def test_apply_cyclic_degenerate():
    kill = Endomorphism([W("a"), W("")])
    with pytest.raises(DegenerateImageError):
        apply_cyclic(kill, C("b"))


def test_compose_examples():
    phi = nielsen(1, 2, 2)
    assert compose(phi, phi)(W("a")) == W("abb")
    f = whitehead_type2(1, {2: "conjugate"}, 2)
    assert compose(identity(2), f) == f
    assert compose(f, f.inverted()).is_identity()


@settings(max_examples=60)
@given(seeds)
def test_apply_is_homomorphism_and_associative(seed):
    rng = random.Random(seed)
    k = rng.randint(2, 4)
    f, g, h = (random_automorphism(rng, k, rng.randint(0, 4)) for _ in range(3))
    u, v = random_word(rng, k, 8), random_word(rng, k, 8)
    assert apply(f, u * v) == apply(f, u) * apply(f, v)
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    assert apply(compose(f, g), u) == apply(f, apply(g, u))
    fg = compose(f, g)
    assert compose(fg, fg.inverted()).is_identity()


def test_palindrome_commutes_with_automorphisms_rank2():
    # (phi(w))^R = phi(w^R) for cyclic words in rank 2
    rng = random.Random(31)
    for _ in range(1000):
        phi = random_automorphism(rng, 2, rng.randint(0, 6))
        w = random_cyclic_word(rng, 2, rng.randint(1, 12))
        assert reverse_cyclic(apply_cyclic(phi, w)) == apply_cyclic(phi, reverse_cyclic(w))


# -- Whitehead graphs ---------------------------------------------------------------

def test_whitehead_graph_commutator():
    g = whitehead_graph(C("abAB"))
    assert {(x, y): n for x, y, n in g.edges()} == {(1, 2): 1, (1, -2): 1, (-1, 2): 1, (-1, -2): 1}
    assert g.to_json() == [{"pair": ["a", "b"], "label": 1}, {"pair": ["a", "B"], "label": 1},
                           {"pair": ["A", "b"], "label": 1}, {"pair": ["A", "B"], "label": 1}]


def test_whitehead_graph_rank3_example():
    g1, g2 = whitehead_graph(C("xyy", 3)), whitehead_graph(C("xxy", 3))
    assert g1.label(2, -2) == 1 and g1.label(1, -1) == 0
    assert g2.label(1, -1) == 1 and g2.label(2, -2) == 0
    assert not graphs_equal(g1, g2)


def test_graphs_equal_examples():
    assert graphs_equal(whitehead_graph(C("abaaB")), whitehead_graph(C("aabaB")))
    w = whitehead_graph(C("abbAb"))
    assert graphs_equal(w, w)
    with pytest.raises(RankError):
        graphs_equal(whitehead_graph(C("ab")), whitehead_graph(C("ab", 3)))


def test_whitehead_graph_inverse_invariant_1000():
    rng = random.Random(4)
    for _ in range(1000):
        w = random_cyclic_word(rng, rng.randint(2, 4), rng.randint(1, 16))
        assert whitehead_graph(w) == whitehead_graph(w.inverse())


@given(seeds)
def test_whitehead_graph_against_counts(seed):
    rng = random.Random(seed)
    k = rng.randint(2, 4)
    w = random_cyclic_word(rng, k, rng.randint(1, 20))
    g = whitehead_graph(w)
    assert g.total() == len(w)
    for x in gens(k):
        for y in gens(k):
            if x != y:
                assert g.label(x, y) == g.label(y, x) == count_pair(w, x, -y)
        # the degree of vertex x is n(w; x)
        assert sum(g.label(x, y) for y in gens(k) if y != x) == count_letter(w, x)
    assert WhiteheadGraph.from_json(g.to_json(), k) == g


@given(seeds)
def test_equal_graphs_force_equal_counts(seed):
    rng = random.Random(seed)
    u = random_cyclic_word(rng, 2, rng.randint(1, 10))
    v = random_cyclic_word(rng, 2, len(u))
    if whitehead_graph(u) == whitehead_graph(v):
        assert len(u) == len(v)
        assert all(count_letter(u, x) == count_letter(v, x) for x in (1, 2))


# -- counting lemmas ------------------------------------------------------------------

def test_lemma1_examples():
    assert lemma1_check(C("ab"), 1, 2) == (1, 1)
    assert lemma1_check(C("aB"), 1, 2) == (-1, -1)
    assert lemma1_check(C("a"), 2, 1) == (0, 0)


def test_lemma2_examples():
    assert lemma2_recover_count(C("ab"), 1) == 1
    assert lemma2_recover_count(C("aaa"), 2) == 0
    assert lemma2_recover_count(C("abab"), 1) == 2
    assert isinstance(lemma2_recover_count(C("abab"), 1), Fraction)


def test_lemma2_errors():
    with pytest.raises(RankError):
        lemma2_recover_count(C("ab"), 3)


@given(seeds)
def test_lemmas_random(seed):
    rng = random.Random(seed)
    k = rng.randint(2, 5)
    w = random_cyclic_word(rng, k, rng.randint(1, 30))
    for x in gens(k):
        for y in gens(k):
            if abs(x) != abs(y):
                lhs, rhs = lemma1_check(w, x, y)
                assert lhs == rhs
    for i in range(1, k + 1):
        v = lemma2_recover_count(w, i)
        assert v.denominator == 1 and v == count_letter(w, i)
