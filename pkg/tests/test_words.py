import itertools
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chronoalg.core import LinComb, MalformedInput, UnsupportedInstance
from chronoalg.permutations import Permutation, half_shuffle_left, half_shuffle_right, mr_product
from chronoalg.words import (
    EMPTY_WORD,
    Word,
    free_shuffle_basis,
    harmonic_alphabet,
    half_shuffles,
    monomial_alphabet,
    parse_word,
    plain_alphabet,
    quasi_half_products,
    quasi_shuffle,
    shuffle,
    shuffle_grammar,
    shuffle_to_prelie,
)

from conftest import permutations, words

W = Word
MONO = monomial_alphabet("abc")
thetas = st.sampled_from([Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3)])


def lc(*pairs):
    out = {}
    for w, c in pairs:
        out[W(w)] = out.get(W(w), 0) + c
    return LinComb(out)


def _shuffle_oracle(u, v):
    # choose the positions of u's letters among |u| + |v| slots
    n = len(u) + len(v)
    out = {}
    for pos in itertools.combinations(range(n), len(u)):
        it_u, it_v = iter(u), iter(v)
        w = W(next(it_u) if i in pos else next(it_v) for i in range(n))
        out[w] = out.get(w, 0) + 1
    return LinComb(out)


# shuffle

def test_shuffle_examples():
    assert shuffle(W("ab"), W("cd")) == lc(*((w, 1) for w in
                                            ["abcd", "acbd", "acdb", "cabd", "cadb", "cdab"]))
    assert shuffle(W(("f", "g")), W(("f",))) == lc(("ffg", 2), ("fgf", 1))
    assert shuffle(W("ab"), EMPTY_WORD) == lc(("ab", 1))


@given(words(max_size=3), words(max_size=3))
def test_shuffle_matches_position_oracle(u, v):
    assert shuffle(u, v) == _shuffle_oracle(u, v)


@given(words(max_size=2), words(max_size=2), words(max_size=2))
def test_shuffle_associative_commutative(u, v, w):
    assert shuffle(u, v) == shuffle(v, u)
    assert shuffle(shuffle(u, v), w) == shuffle(u, shuffle(v, w))


def test_word_encoding():
    assert W(("x1", "x2")).encode() == "(x1,x2)"
    assert parse_word("(x1,x2)") == W(("x1", "x2"))
    with pytest.raises(MalformedInput):
        parse_word("x1,x2")


# quasi-shuffle

def test_quasi_shuffle_single_letters():
    th = Fraction(2)
    assert quasi_shuffle(W("x"), W("y"), th, monomial_alphabet("xy")) == LinComb({
        W("xy"): 1, W("yx"): 1, W(("x.y",)): -th,
    })


def test_quasi_shuffle_one_by_two():
    th = Fraction(1, 3)
    got = quasi_shuffle(W("x"), W("yz"), th, monomial_alphabet("xyz"))
    assert got == LinComb({
        W("xyz"): 1, W("yxz"): 1, W("yzx"): 1,
        W(("x.y", "z")): -th, W(("y", "x.z")): -th,
    })


def test_quasi_shuffle_needs_letter_product():
    with pytest.raises(UnsupportedInstance):
        quasi_shuffle(W("x"), W("y"), 1, plain_alphabet("xy"))


def test_quasi_shuffle_theta_zero_is_shuffle():
    rng = random.Random(200)
    for _ in range(200):
        u = W(rng.choices("abc", k=rng.randint(0, 3)))
        v = W(rng.choices("abc", k=rng.randint(0, 3)))
        assert quasi_shuffle(u, v, 0, MONO) == shuffle(u, v)


@given(words(max_size=2), words(max_size=2), words(max_size=1), thetas)
def test_quasi_shuffle_associative_commutative(u, v, w, th):
    q = lambda a, b: quasi_shuffle(a, b, th, MONO)
    assert q(u, v) == q(v, u)
    assert q(q(u, v), w) == q(u, q(v, w))


def _delannoy(m, n):
    return sum(comb(m, k) * comb(n, k) * 2 ** k for k in range(min(m, n) + 1))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)])
def test_quasi_shuffle_surjection_count(m, n):
    # with weight −1 every surjection counts +1, and distinct letters never collide
    u = W(f"u{i}" for i in range(m))
    v = W(f"v{i}" for i in range(n))
    alpha = monomial_alphabet(list(u) + list(v), theta=-1)
    q = quasi_shuffle(u, v, -1, alpha)
    assert sum(c for _, c in q.items()) == _delannoy(m, n)
    by_length = {}
    for w, c in q.items():
        by_length[len(w)] = by_length.get(len(w), 0) + c
    for r in range(max(m, n), m + n + 1):
        k = m + n - r
        assert by_length[r] == comb(r, k) * comb(r - k, m - k)


def test_harmonic_alphabet_letter_product():
    alpha = harmonic_alphabet(4)
    alpha.check(["z1", "z2"])
    q = quasi_shuffle(W(("z1",)), W(("z2",)), 1, alpha)
    assert q == LinComb({W(("z1", "z2")): 1, W(("z2", "z1")): 1, W(("z3",)): -1})


def test_noncommutative_letter_product_rejected():
    from chronoalg.words import Alphabet

    bad = Alphabet({"a": 1, "b": 1}, lambda a, b: a + b)
    with pytest.raises(MalformedInput):
        bad.check(["a", "b"])


# half-shuffles

def test_half_shuffle_single_step():
    prec, succ = half_shuffles(W("x"), W("y"))
    assert prec == lc(("xy", 1))
    assert succ == lc(("yx", 1))
    with pytest.raises(MalformedInput):
        half_shuffles(EMPTY_WORD, W("y"))


@pytest.mark.parametrize("convention", ["first", "last"])
@given(u=words(min_size=1), v=words(min_size=1), w=words(min_size=1, max_size=2))
def test_half_shuffle_axioms(convention, u, v, w):
    prec = lambda a, b: half_shuffles(a, b, convention)[0]
    succ = lambda a, b: half_shuffles(a, b, convention)[1]
    assert prec(u, v) + succ(u, v) == shuffle(u, v)
    assert prec(prec(u, v), w) == prec(u, shuffle(v, w))
    assert prec(succ(u, v), w) == succ(u, prec(v, w))
    assert succ(shuffle(u, v), w) == succ(u, succ(v, w))
    # commutative form of the first axiom
    assert prec(prec(u, v), w) == prec(u, prec(v, w) + prec(w, v))


@given(words(min_size=1), words(min_size=1), words(min_size=1, max_size=2), thetas)
def test_quasi_half_product_axiom(u, v, w, th):
    def parts(a, b):
        return quasi_half_products(a, b, th, MONO)

    prec = lambda a, b: parts(a, b)[0]
    dot = lambda a, b: parts(a, b)[2]
    p, s, d = parts(u, v)
    assert p + s - th * d == quasi_shuffle(u, v, th, MONO)
    assert prec(prec(u, v), w) == prec(u, prec(v, w) + prec(w, v) - th * dot(v, w))


# shuffle to pre-Lie

def _perm_prelie(x, y):
    return shuffle_to_prelie(x, y, half_shuffle_left, half_shuffle_right)


def test_word_prelie_vanishes_in_commutative_model():
    assert shuffle_to_prelie(W("a"), W("b")).is_zero()
    assert shuffle_to_prelie(W("ab"), W("c")).is_zero()


def test_single_letter_prelie_in_permutations():
    # (1)≻(1) − (1)≺(1) = (12) − (21)
    x = Permutation((1,))
    assert _perm_prelie(x, x) == LinComb({Permutation((1, 2)): 1, Permutation((2, 1)): -1})


def test_prelie_identity_random_triples():
    rng = random.Random(100)
    for _ in range(100):
        a, b, c = (Permutation(rng.sample(range(1, k + 1), k)) for k in
                   (rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 1)))
        g = _perm_prelie
        assoc = lambda x, y, z: g(g(x, y), z) - g(x, g(y, z))
        assert assoc(a, b, c) == assoc(b, a, c)


@given(permutations(1, 3), permutations(1, 3))
def test_prelie_antisymmetrization_is_commutator(a, b):
    assert _perm_prelie(a, b) - _perm_prelie(b, a) == mr_product(a, b) - mr_product(b, a)


# free shuffle algebra on one letter

def _catalan(k):
    return comb(2 * k, k) // (k + 1)


def test_free_shuffle_basis_small():
    exprs, cols, matrix, rank = free_shuffle_basis(1)
    assert [str(e) for e in exprs] == ["x"] and rank == 1
    exprs, cols, matrix, rank = free_shuffle_basis(2)
    assert sorted(str(e) for e in exprs) == ["x<x", "x>x"] and rank == 2


@pytest.mark.parametrize("k", range(1, 6))
def test_free_shuffle_basis_is_independent(k):
    exprs, _, _, rank = free_shuffle_basis(k)
    assert len(exprs) == len(shuffle_grammar(k)) == _catalan(k)
    assert rank == len(exprs)
