"""Rota's free construction, its link to the descent algebra, and time-ordered products."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any, Mapping, Sequence

from ..core import CutoffError, LinComb, MalformedInput, UnsupportedInstance
from ..permutations import descent_generator_product, descent_set, mr_coproduct, Permutation
from ..trees import brace_generic
from ..words import Word, quasi_shuffle, Alphabet
from .carriers import Monomial, Seq, poly_var
from .instances import RBInstance, free_rb, sequence_of_variables
from .structures import Residuals, double_product, prelie_product


# ---------------------------------------------------------------- generators


def iterated_R(inst: RBInstance, x, n: int):
    """R^{(n)}(x) = R(R^{(n−1)}(x) x), R^{(0)}(x) = 1."""
    out = inst.one
    for _ in range(n):
        out = inst.R(inst.mul(out, x))
    return out


def free_rb_generators(M: int, N: int, n: int):
    """(R^{(n)}(x), R(xⁿ)) in the free instance, x = (x1, …, xM)."""
    if n < 1:
        raise MalformedInput("n must be positive")
    if n > M or n > N:
        raise CutoffError(f"n = {n} exceeds the truncation (M = {M}, N = {N})")
    inst = free_rb(M, N)
    x = sequence_of_variables(M)
    power = x
    for _ in range(n - 1):
        power = inst.mul(power, x)
    return iterated_R(inst, x, n), inst.R(power)


def elementary_sequence(M: int, n: int, prefix: str = "x") -> Seq:
    """Σ_{i₁<…<i_n<k} x_{i₁}⋯x_{i_n} at each position k (closed form)."""
    out = []
    for k in range(1, M + 1):
        acc = {}
        for idx in itertools.combinations(range(1, k), n):
            acc[Monomial(f"{prefix}{i}" for i in idx)] = Fraction(1)
        out.append(LinComb(acc))
    return Seq(out)


def symbolic_sequence(name: str, M: int) -> Seq:
    """(name1, name2, …) with one fresh noncommuting letter per position."""
    return Seq(poly_var(f"{name}{k}") for k in range(1, M + 1))


# ---------------------------------------------------------------- descent algebra


def descent_coordinates(x: LinComb) -> dict[frozenset, Fraction]:
    """Coefficients of x in the exact-descent basis; rejects elements outside the descent algebra."""
    coords: dict = {}
    sizes = {p.degree for p in x.keys()}
    if len(sizes) > 1:
        raise MalformedInput("element must be homogeneous")
    for p, c in x.items():
        S = frozenset(descent_set(p))
        if coords.setdefault(S, c) != c:
            raise MalformedInput("element is not in the descent algebra")
    if sizes:
        n = sizes.pop()
        expected = {
            S: sum(1 for q in itertools.permutations(range(1, n + 1))
                   if frozenset(descent_set(q)) == S)
            for S in coords
        }
        counted = {S: 0 for S in coords}
        for p in x.keys():
            counted[frozenset(descent_set(p))] += 1
        if counted != expected:
            raise MalformedInput("element is not in the descent algebra")
    return coords


def exact_descent_image(n: int, S: frozenset, M: int, prefix: str = "x") -> Seq:
    """Image of the exact-descent class of S in the free instance.

    At position k: sum of x_{c₁}⋯x_{c_n} over index sequences below k with
    c_i ≥ c_{i+1} for i ∈ S and c_i < c_{i+1} otherwise.
    """
    out = []
    for k in range(1, M + 1):
        acc = {}
        for c in itertools.product(range(1, k), repeat=n):
            if all((c[i - 1] >= c[i]) == (i in S) for i in range(1, n)):
                key = Monomial(f"{prefix}{i}" for i in c)
                acc[key] = acc.get(key, 0) + 1
        out.append(LinComb(acc))
    return Seq(out)


def descent_to_free(x: LinComb, M: int) -> Seq:
    """Linear map from the descent algebra sending 1_n to R^{(n)}(x)."""
    result = None
    for S, c in descent_coordinates(x).items():
        n = next(iter(x.keys())).degree
        term = c * exact_descent_image(n, S, M)
        result = term if result is None else result + term
    return result if result is not None else free_rb(M, 1).zero


def compositions(n: int):
    for cuts in itertools.chain.from_iterable(
        itertools.combinations(range(1, n), k) for k in range(n)
    ):
        bounds = (0,) + cuts + (n,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def spitzer_algebra_checks(max_degree: int = 5) -> Residuals:
    """Images of products of generators 1_{i₁}∗⋯∗1_{i_k} against products of R^{(i_j)}(x).

    Runs over all compositions of n ≤ max_degree, in the free instance with
    M = n + 1 and N = n so no truncation loss can occur.
    """
    out: Residuals = {}
    for n in range(1, max_degree + 1):
        M = n + 1
        inst = free_rb(M, n)
        x = sequence_of_variables(M)
        for comp in compositions(n):
            image = descent_to_free(descent_generator_product(*comp), M)
            direct = inst.prod(*(iterated_R(inst, x, i) for i in comp))
            out[f"product{comp}"] = image - direct
        out[f"generator[{n}]"] = iterated_R(inst, x, n) - elementary_sequence(M, n)
    return out


def generator_coproduct_check(n: int) -> LinComb:
    """Δ(1_n) − Σ_i 1_i ⊗ 1_{n−i}; transported to R^{(n)}(x) by the isomorphism."""
    from ..core import Tensor

    expected = LinComb({Tensor((Permutation.identity(i), Permutation.identity(n - i))): 1
                        for i in range(n + 1)})
    return mr_coproduct(Permutation.identity(n)) - expected


# ---------------------------------------------------------------- time-ordered products


def time_ordered(inst: RBInstance, vs: Sequence) -> Any:
    """T[v₁,…,v_n] = Σ_σ v_{σ1} ≺ (v_{σ2} ≺ (⋯ ≺ v_{σn})) with a ≺ b = aR(b)."""
    if not vs:
        raise MalformedInput("at least one element is required")
    total = inst.zero
    for order in itertools.permutations(range(len(vs))):
        acc = vs[order[-1]]
        for i in reversed(order[:-1]):
            acc = inst.mul(vs[i], inst.R(acc))
        total = total + acc
    return total


def iota(inst: RBInstance, vs: Sequence) -> Any:
    """Image of the symmetric monomial v₁⋯v_n under the enveloping-algebra map.

    Uses F·v = F∗v − Σ_{∅≠S⊆F} F_{S^c}·({F_S}v), where ∗ is the product
    of the enveloping algebra, so ι(F·v) = ι(F) ∗₀ v minus the corrections.
    """
    if inst.theta != 0:
        raise UnsupportedInstance(f"{inst.describe()}: the time-ordered map needs weight 0")
    vs = list(vs)
    if not vs:
        raise MalformedInput("at least one element is required")
    if len(vs) == 1:
        return vs[0]
    prelie = lambda a, b: prelie_product(inst, a, b)
    *head, v = vs
    result = double_product(inst, iota(inst, head), v)
    for k in range(1, len(head) + 1):
        for S in itertools.combinations(range(len(head)), k):
            braced = brace_generic([head[i] for i in S], v, prelie)
            rest = [head[i] for i in range(len(head)) if i not in S]
            result = result - iota(inst, rest + [braced])
    return result


def iota_time_ordered(inst: RBInstance, vs: Sequence) -> Any:
    """ι(v₁⋯v_n) − T[v₁,…,v_n]; zero by the time-ordering theorem."""
    return iota(inst, vs) - time_ordered(inst, vs)


# ---------------------------------------------------------------- quasi-shuffle lift


def word_lift(inst: RBInstance, word: Sequence[str], letters: Mapping[str, Any]):
    """w₁⋯w_k ↦ R(w₁R(w₂⋯R(w_k))); a letter "a.b" maps to the product of a and b."""
    acc = inst.one
    for letter in reversed(tuple(word)):
        value = inst.prod(*(letters[g] for g in letter.split(".")))
        acc = inst.R(inst.mul(value, acc))
    return acc


def quasi_shuffle_lift_check(inst: RBInstance, u: Word, v: Word, alphabet: Alphabet,
                             letters: Mapping[str, Any]) -> Any:
    """φ(u)φ(v) − φ(u ⋆_θ v); zero in commutative instances."""
    if not inst.commutative:
        raise UnsupportedInstance("the quasi-shuffle lift needs a commutative algebra")
    lhs = inst.mul(word_lift(inst, u, letters), word_lift(inst, v, letters))
    rhs = inst.zero
    for w, c in quasi_shuffle(u, v, inst.theta, alphabet).items():
        rhs = rhs + c * word_lift(inst, w, letters)
    return lhs - rhs
