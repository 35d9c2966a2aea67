"""Permutation algebra with the simplex product and block-splitting coproduct.

Permutations are one-line tuples of 1..n; the empty permutation is the unit.
Products enumerate which value set the left factor occupies, so a product of
sizes n and m has exactly C(n+m, n) terms.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .core import (
    LinComb,
    MalformedInput,
    NotLieError,
    Tensor,
    TruncatedSeries,
    bilinear,
    lift,
    series_log,
)


class Permutation(tuple):
    """One-line notation (σ(1), …, σ(n))."""

    def __new__(cls, values: Iterable[int] = ()):
        vals = tuple(int(v) for v in values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise MalformedInput(f"{vals} is not a permutation of 1..{len(vals)}")
        return tuple.__new__(cls, vals)

    @classmethod
    def _raw(cls, vals) -> "Permutation":
        return tuple.__new__(cls, vals)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(range(1, n + 1))

    @property
    def degree(self) -> int:
        return len(self)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, v in enumerate(self, 1):
            inv[v - 1] = i
        return Permutation._raw(inv)

    def encode(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    def latex(self) -> str:
        return self.encode()

    def __repr__(self):
        return f"Permutation({self.encode()})"


def parse_permutation(s: str) -> Permutation:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise MalformedInput(f"bad permutation string {s!r}")
    body = s[1:-1].strip()
    return Permutation(int(t) for t in body.split(",")) if body else Permutation()


def parse_tensor(s: str, parse=parse_permutation) -> Tensor:
    return Tensor(parse(part) for part in s.split(" ⊗ "))


class DescentSet(frozenset):
    """Subset of {1, …, n−1}, carrying the ambient size n."""

    def __new__(cls, n: int, positions: Iterable[int] = ()):
        pos = frozenset(positions)
        if any(not (1 <= p <= n - 1) for p in pos):
            raise MalformedInput(f"{sorted(pos)} is not a subset of [1, {n - 1}]")
        out = frozenset.__new__(cls, pos)
        out.n = n
        return out

    def __reduce__(self):
        return (DescentSet, (self.n, tuple(self)))

    def __repr__(self):
        return f"DescentSet({self.n}, {sorted(self)})"


def descent_set(sigma: Sequence[int]) -> DescentSet:
    return DescentSet(len(sigma), (i for i in range(1, len(sigma)) if sigma[i - 1] > sigma[i]))


def standardize(seq: Sequence[int]) -> Permutation:
    if len(set(seq)) != len(seq):
        raise MalformedInput(f"standardization needs distinct entries, got {tuple(seq)}")
    rank = {v: i for i, v in enumerate(sorted(seq), 1)}
    return Permutation._raw(rank[v] for v in seq)


def _shuffle_terms(sigma, beta):
    """Yield (γ, max_in_left) over all value splits."""
    n, m = len(sigma), len(beta)
    values = range(1, n + m + 1)
    for left in itertools.combinations(values, n):
        lset = set(left)
        right = [v for v in values if v not in lset]
        gamma = tuple(left[s - 1] for s in sigma) + tuple(right[b - 1] for b in beta)
        yield Permutation._raw(gamma), (n + m) in lset


@lru_cache(maxsize=65536)
def _mr_basis(sigma: Permutation, beta: Permutation) -> LinComb:
    return LinComb._from_dict({g: Fraction(1) for g, _ in _shuffle_terms(sigma, beta)})


def mr_product(a, b) -> LinComb:
    """Simplex product, bilinear in permutations or LinCombs of them."""
    return bilinear(_mr_basis, a, b)


def _half(sigma, beta, left: bool) -> LinComb:
    if not sigma or not beta:
        raise MalformedInput("half-shuffles are undefined with an empty argument")
    return LinComb._from_dict(
        {g: Fraction(1) for g, in_left in _shuffle_terms(sigma, beta) if in_left == left}
    )


def half_shuffle_left(a, b) -> LinComb:
    """Terms whose largest value comes from the left factor."""
    return bilinear(lambda s, t: _half(s, t, True), a, b)


def half_shuffle_right(a, b) -> LinComb:
    """Terms whose largest value comes from the right factor."""
    return bilinear(lambda s, t: _half(s, t, False), a, b)


def _insertion_basis(alpha, beta) -> LinComb:
    n, m = len(alpha), len(beta)
    pivot = n + 1
    values = [v for v in range(1, n + m + 2) if v != pivot]
    out = {}
    for left in itertools.combinations(values, n):
        lset = set(left)
        right = [v for v in values if v not in lset]
        gamma = tuple(left[s - 1] for s in alpha) + (pivot,) + tuple(right[b - 1] for b in beta)
        out[Permutation._raw(gamma)] = Fraction(1)
    return LinComb._from_dict(out)


def insertion_product(a, b) -> LinComb:
    """Sum of γ in S_{n+m+1} fixing n+1, with prefix ~ α and suffix ~ β."""
    return bilinear(_insertion_basis, a, b)


def _mr_coproduct_basis(sigma: Permutation) -> LinComb:
    out = {}
    for i in range(len(sigma) + 1):
        low = Permutation._raw(v for v in sigma if v <= i)
        high = Permutation._raw(v - i for v in sigma if v > i)
        out[Tensor((low, high))] = Fraction(1)
    return LinComb._from_dict(out)


def mr_coproduct(a) -> LinComb:
    """Σ_i σ restricted to values ≤ i ⊗ standardized rest."""
    return lift(a).map(_mr_coproduct_basis)


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation._raw(p) for p in itertools.permutations(range(1, n + 1))]


def _subset_check(n: int, A) -> frozenset:
    A = frozenset(A)
    if any(not (1 <= a <= n - 1) for a in A):
        raise MalformedInput(f"{sorted(A)} is not a subset of [1, {n - 1}]")
    return A


def solomon_D(n: int, A=()) -> LinComb:
    """Sum of permutations of [n] whose descent set lies in A."""
    A = _subset_check(n, A)
    return LinComb._from_dict(
        {p: Fraction(1) for p in all_permutations(n) if descent_set(p) <= A}
    )


def solomon_Deq(n: int, A=()) -> LinComb:
    """Sum of permutations of [n] with descent set exactly A."""
    A = _subset_check(n, A)
    return LinComb._from_dict(
        {p: Fraction(1) for p in all_permutations(n) if descent_set(p) == A}
    )


def subsets(s: Iterable[int]):
    s = sorted(s)
    for k in range(len(s) + 1):
        yield from (frozenset(c) for c in itertools.combinations(s, k))


def deq_from_D(n: int, A) -> LinComb:
    """D_{=A} by Möbius inversion over the boolean lattice below A."""
    A = _subset_check(n, A)
    acc = LinComb()
    for B in subsets(A):
        acc = acc + solomon_D(n, B).scale((-1) ** (len(A) - len(B)))
    return acc


def descent_generator_product(*parts: int) -> LinComb:
    """1_{i₁} ∗ ⋯ ∗ 1_{i_k}, by iterated products of identity permutations."""
    if not parts:
        raise MalformedInput("at least one generator is required")
    if any(p < 1 for p in parts):
        raise MalformedInput("generator sizes must be positive")
    acc = LinComb.basis(Permutation.identity(parts[0]))
    for p in parts[1:]:
        acc = mr_product(acc, Permutation.identity(p))
    return acc


def descent_generator_closed_form(*parts: int) -> LinComb:
    return solomon_D(sum(parts), itertools.accumulate(parts[:-1]))


def bch_element(n: int, both: bool = False):
    """Degree-n part of the logarithm of Σ_k 1_k.

    With ``both=True`` returns the pair (D-form, D_=-form); the forms are
    asserted equal either way.
    """
    if n < 1:
        raise MalformedInput("bch_element needs n ≥ 1")
    full = range(1, n)
    d_form = LinComb()
    eq_form = LinComb()
    for S in subsets(full):
        k = len(S)
        d_form = d_form + solomon_D(n, S).scale(Fraction((-1) ** k, k + 1))
        eq_form = eq_form + solomon_Deq(n, S).scale(Fraction((-1) ** k, n * comb(n - 1, k)))
    if d_form != eq_form:
        raise AssertionError(f"the two closed forms disagree in degree {n}")
    return (d_form, eq_form) if both else d_form


def descent_log(cutoff: int) -> TruncatedSeries:
    """log(1 + Σ_{k ≤ cutoff} 1_k) under the simplex product."""
    s = TruncatedSeries(
        cutoff,
        {0: LinComb.basis(Permutation())} | {k: LinComb.basis(Permutation.identity(k))
                                              for k in range(1, cutoff + 1)},
        graded=True,
    )
    return series_log(s, mr_product, LinComb.basis(Permutation()))


# ---------------------------------------------------------------- Lie elements


def _expand_word(word: tuple) -> dict:
    if len(word) == 1:
        return {word: 1}
    inner = _expand_word(word[1:])
    a = word[0]
    out: dict = {}
    for w, c in inner.items():
        for key, sgn in (((a,) + w, c), (w + (a,), -c)):
            v = out.get(key, 0) + sgn
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def lie_expand(word: Sequence[int]) -> LinComb:
    """Expand the right-nested bracket [w₁,[w₂,[…,w_n]]] into permutations."""
    word = tuple(word)
    if not word:
        raise MalformedInput("empty bracket")
    if sorted(word) != list(range(1, len(word) + 1)):
        raise MalformedInput(f"{word} must list 1..n once each")
    return LinComb((Permutation._raw(w), c) for w, c in _expand_word(word).items())


def lie_basis_coeffs(x: LinComb, n: int) -> dict[Permutation, Fraction]:
    """Coordinates of a Lie element in the right-nested basis [σ(1),[…,[σ(n−1), n]]].

    The coefficient of the bracket for σ ∈ S_{n−1} is the coefficient of the
    word (σ, n) in x.  Raises NotLieError when re-expansion does not give x.
    """
    if any(b.degree != n for b in x.keys()):
        raise MalformedInput(f"element is not homogeneous of degree {n}")
    coeffs = {}
    rebuilt = LinComb()
    for sigma in all_permutations(n - 1):
        c = x.coeff(Permutation._raw(sigma + (n,)))
        if c:
            coeffs[sigma] = c
            rebuilt = rebuilt + lie_expand(sigma + (n,)).scale(c)
    residual = x - rebuilt
    if residual:
        raise NotLieError(f"not a Lie element; residual has {len(residual)} terms")
    return coeffs


def bch_lie_coefficient(sigma: Sequence[int]) -> Fraction:
    """(−1)^d / (n · C(n−1, d)) with d = |Desc σ| and n = |σ| + 1."""
    n = len(sigma) + 1
    d = len(descent_set(sigma))
    return Fraction((-1) ** d, n * comb(n - 1, d))
