"""Shuffle and quasi-shuffle products on words.

Letters are short strings.  An :class:`Alphabet` records letter degrees and an
optional commutative letter product, which the quasi-shuffle needs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .core import LinComb, MalformedInput, UnsupportedInstance, as_fraction, bilinear
from .permutations import Permutation, half_shuffle_left, half_shuffle_right


class Word(tuple):
    """Finite sequence of letters; the empty word is the unit."""

    def __new__(cls, letters: Iterable[str] = ()):
        letters = tuple(str(a) for a in letters)
        for a in letters:
            if not a or any(ch in a for ch in "(), "):
                raise MalformedInput(f"bad letter {a!r}")
        return tuple.__new__(cls, letters)

    @classmethod
    def _raw(cls, letters) -> "Word":
        return tuple.__new__(cls, letters)

    @property
    def degree(self) -> int:
        return len(self)

    def encode(self) -> str:
        return "(" + ",".join(self) + ")"

    def latex(self) -> str:
        return self.encode()

    def __repr__(self):
        return f"Word{self.encode()}"


EMPTY_WORD = Word()


def parse_word(s: str) -> Word:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise MalformedInput(f"bad word string {s!r}")
    body = s[1:-1].strip()
    return Word(body.split(",")) if body else EMPTY_WORD


@dataclass(frozen=True)
class Alphabet:
    """Graded letters with an optional commutative, associative letter product."""

    degrees: dict = field(default_factory=dict)
    letter_product: Callable[[str, str], str] | None = None
    theta: Fraction = Fraction(1)

    def degree(self, w: Sequence[str]) -> int:
        return sum(self.degrees.get(a, 1) for a in w)

    def check(self, letters: Sequence[str]) -> None:
        """Assert commutativity and associativity of the letter product on the given letters."""
        mul = self.letter_product
        if mul is None:
            return
        for a, b in itertools.product(letters, repeat=2):
            if mul(a, b) != mul(b, a):
                raise MalformedInput(f"letter product not commutative on {a}, {b}")
        for a, b, c in itertools.product(letters, repeat=3):
            if mul(mul(a, b), c) != mul(a, mul(b, c)):
                raise MalformedInput(f"letter product not associative on {a}, {b}, {c}")

    def __hash__(self):
        return id(self)


def plain_alphabet(letters: Iterable[str]) -> Alphabet:
    return Alphabet({a: 1 for a in letters})


def harmonic_alphabet(max_index: int, theta=1) -> Alphabet:
    """Letters z1, z2, … with z_i • z_j = z_{i+j} and deg z_i = i."""

    def mul(a: str, b: str) -> str:
        return f"z{int(a[1:]) + int(b[1:])}"

    return Alphabet({f"z{i}": i for i in range(1, max_index + 1)}, mul, as_fraction(theta))


def monomial_alphabet(generators: Iterable[str], theta=1) -> Alphabet:
    """Letters are commutative monomials in the generators, written a.b.c (sorted)."""
    gens = list(generators)

    def mul(a: str, b: str) -> str:
        return ".".join(sorted(a.split(".") + b.split(".")))

    return Alphabet({g: 1 for g in gens}, mul, as_fraction(theta))


@lru_cache(maxsize=65536)
def _shuffle_basis(u: Word, v: Word) -> LinComb:
    if not u:
        return LinComb.basis(v)
    if not v:
        return LinComb.basis(u)
    acc: dict = {}
    for w, c in _shuffle_basis(Word._raw(u[1:]), v).items():
        key = Word._raw((u[0],) + w)
        acc[key] = acc.get(key, 0) + c
    for w, c in _shuffle_basis(u, Word._raw(v[1:])).items():
        key = Word._raw((v[0],) + w)
        acc[key] = acc.get(key, 0) + c
    return LinComb(acc)


def shuffle(a, b) -> LinComb:
    """Shuffle product with multiplicities."""
    return bilinear(_shuffle_basis, a, b)


def _prepend(letter: str, x: LinComb) -> dict:
    return {Word._raw((letter,) + w): c for w, c in x.items()}


def _accumulate(acc: dict, terms: dict, scale=1) -> None:
    for w, c in terms.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def quasi_shuffle(a, b, theta=1, alphabet: Alphabet | None = None) -> LinComb:
    """Weighted quasi-shuffle: slots take a letter of u, of v, or the product of both (weight −θ)."""
    theta = as_fraction(theta)
    mul = alphabet.letter_product if alphabet is not None else None
    if mul is None and theta != 0:
        raise UnsupportedInstance("quasi-shuffle needs an alphabet with a letter product")

    @lru_cache(maxsize=None)
    def qs(u: Word, v: Word) -> LinComb:
        if not u:
            return LinComb.basis(v)
        if not v:
            return LinComb.basis(u)
        acc: dict = {}
        _accumulate(acc, _prepend(u[0], qs(Word._raw(u[1:]), v)))
        _accumulate(acc, _prepend(v[0], qs(u, Word._raw(v[1:]))))
        if theta:
            merged = mul(u[0], v[0])
            _accumulate(acc, _prepend(merged, qs(Word._raw(u[1:]), Word._raw(v[1:]))), -theta)
        return LinComb._from_dict(acc)

    return bilinear(qs, a, b)


def _nonempty(*ws: Word) -> None:
    for w in ws:
        if not w:
            raise MalformedInput("half-shuffles are undefined with an empty argument")


def _half_first(u: Word, v: Word) -> LinComb:
    _nonempty(u, v)
    return LinComb._from_dict(_prepend(u[0], _shuffle_basis(Word._raw(u[1:]), v)))


def _half_last(u: Word, v: Word) -> LinComb:
    _nonempty(u, v)
    return LinComb._from_dict(
        {Word._raw(w + (u[-1],)): c for w, c in _shuffle_basis(Word._raw(u[:-1]), v).items()}
    )


def half_shuffles(a, b, convention: str = "first") -> tuple[LinComb, LinComb]:
    """(a≺b, a≻b) on words.

    ``first``: a≺b collects the interleavings starting with a letter of a
    (u≺v = u₁(u′≺v + v≺u′)).  ``last``: a≺b collects those ending with a
    letter of a.  In both conventions a≻b = b≺a and ≺ + ≻ is the shuffle.
    """
    if convention == "first":
        half = _half_first
    elif convention == "last":
        half = _half_last
    else:
        raise MalformedInput(f"unknown half-shuffle convention {convention!r}")
    return bilinear(half, a, b), bilinear(lambda u, v: half(v, u), a, b)


def quasi_half_products(a, b, theta=1, alphabet: Alphabet | None = None):
    """(a≺b, a≻b, a·b) splitting the quasi-shuffle by the origin of the first slot.

    a⋆b = a≺b + a≻b − θ a·b.
    """
    theta = as_fraction(theta)
    if alphabet is None or alphabet.letter_product is None:
        raise UnsupportedInstance("quasi half-products need an alphabet with a letter product")
    mul = alphabet.letter_product

    def qs(u, v):
        return quasi_shuffle(u, v, theta, alphabet)

    def prec(u, v):
        _nonempty(u, v)
        return LinComb._from_dict(_prepend(u[0], qs(Word._raw(u[1:]), v)))

    def dot(u, v):
        _nonempty(u, v)
        return LinComb._from_dict(
            _prepend(mul(u[0], v[0]), qs(Word._raw(u[1:]), Word._raw(v[1:])))
        )

    return (bilinear(prec, a, b), bilinear(lambda u, v: prec(v, u), a, b), bilinear(dot, a, b))


def shuffle_to_prelie(x, y, prec: Callable | None = None, succ: Callable | None = None) -> LinComb:
    """x ▷ y = x≻y − y≺x for any pair of half-shuffle products.

    Defaults to the first-letter word half-shuffles, where the result is
    identically zero because that model is commutative.
    """
    if prec is None or succ is None:
        prec = lambda u, v: half_shuffles(u, v)[0]
        succ = lambda u, v: half_shuffles(u, v)[1]
    return succ(x, y) - prec(y, x)


# ---------------------------------------------------------------- free shuffle basis on one letter


@dataclass(frozen=True)
class ShuffleExpr:
    """Grammar node y ≻ x ≺ z, either side possibly absent."""

    left: "ShuffleExpr | None" = None
    right: "ShuffleExpr | None" = None

    @property
    def size(self) -> int:
        return 1 + (self.left.size if self.left else 0) + (self.right.size if self.right else 0)

    def __str__(self):
        s = "x"
        if self.left is not None:
            s = f"{self.left.paren()}>{s}"
        if self.right is not None:
            s = f"{s}<{self.right.paren()}"
        return s

    def paren(self) -> str:
        return "x" if self.left is None and self.right is None else f"({self})"


@lru_cache(maxsize=None)
def shuffle_grammar(k: int) -> tuple[ShuffleExpr, ...]:
    if k < 1:
        return ()
    out = []
    for a in range(k):
        lefts = (None,) if a == 0 else shuffle_grammar(a)
        rights = (None,) if k - 1 - a == 0 else shuffle_grammar(k - 1 - a)
        out.extend(ShuffleExpr(y, z) for y in lefts for z in rights)
    return tuple(out)


def evaluate_in_permutations(e: ShuffleExpr) -> LinComb:
    """Substitute x = (1) with ≺, ≻ the permutation half-shuffles."""
    val = LinComb.basis(Permutation((1,)))
    if e.left is not None:
        val = half_shuffle_right(evaluate_in_permutations(e.left), val)
    if e.right is not None:
        val = half_shuffle_left(val, evaluate_in_permutations(e.right))
    return val


def free_shuffle_basis(k: int):
    """Grammar expressions with k letters, their evaluation matrix and its rank.

    Returns (expressions, columns, matrix, rank) where the matrix has one row per
    expression and one column per permutation of [k] (in ``columns`` order).
    """
    import sympy

    if not 1 <= k <= 6:
        raise MalformedInput("free_shuffle_basis supports 1 ≤ k ≤ 6")
    exprs = shuffle_grammar(k)
    values = [evaluate_in_permutations(e) for e in exprs]
    columns = sorted({p for v in values for p in v.keys()})
    matrix = sympy.Matrix([[sympy.Rational(v.coeff(p).numerator, v.coeff(p).denominator)
                            for p in columns] for v in values])
    return exprs, columns, matrix, matrix.rank()
