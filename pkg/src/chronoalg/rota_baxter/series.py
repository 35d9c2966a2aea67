"""Spitzer-type identities: logarithm of the fixpoint series, pre-Lie Magnus, Bohnenblust–Spitzer."""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from math import factorial
from typing import Any, Callable, Sequence

from sympy.utilities.iterables import multiset_partitions

from ..core import (
    CutoffError,
    MalformedInput,
    TruncatedSeries,
    UnsupportedInstance,
    bernoulli,
    series_exp,
    series_log,
)
from ..permutations import Permutation
from .instances import RBInstance
from .structures import Residuals, atkinson_solve, double_product, prelie_product

BOHNENBLUST_CAP = 7
MAGNUS_CAP = 6


# ---------------------------------------------------------------- Spitzer


def spitzer_sides(inst: RBInstance, x, cutoff: int):
    """(log ℓ, R(Σ θ^{n−1}(λx)ⁿ/n)) as λ-series, ℓ the left fixpoint series."""
    if not inst.commutative:
        raise UnsupportedInstance(f"{inst.describe()}: Spitzer's identity needs a commutative algebra")
    left, _ = atkinson_solve(inst, x, cutoff)
    lhs = series_log(left, inst.mul, inst.one)
    power = x
    rhs = {}
    for n in range(1, cutoff + 1):
        rhs[n] = inst.R(Fraction(1, n) * inst.theta ** (n - 1) * power)
        power = inst.mul(power, x)
    return lhs, TruncatedSeries(cutoff, rhs, inst.zero)


def spitzer_check(inst: RBInstance, x, cutoff: int) -> Residuals:
    lhs, rhs = spitzer_sides(inst, x, cutoff)
    return {f"spitzer[λ^{d}]": lhs[d] - rhs[d] for d in range(1, cutoff + 1)}


def log_series_coefficients(theta, cutoff: int) -> list[Fraction]:
    """Coefficients c_n of −θ⁻¹log(1 − θF) = Σ c_n Fⁿ."""
    theta = Fraction(theta)
    return [Fraction(0)] + [theta ** (n - 1) / n for n in range(1, cutoff + 1)]


def bernoulli_form_coefficients(theta, cutoff: int) -> list[Fraction]:
    """Coefficients of Ω in Fⁿ from Ω = F + Σ_{n>0} (B_n/n!)(−θΩ)ⁿF, solved order by order.

    This treats multiplication as commutative scalar multiplication, so it
    is an independent route to the series −θ⁻¹log(1 − θF).
    """
    theta = Fraction(theta)
    omega = [Fraction(0), Fraction(1)]

    def poly_mul(a, b):
        out = [Fraction(0)] * (cutoff + 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                if i + j <= cutoff and u and v:
                    out[i + j] += u * v
        return out

    for d in range(2, cutoff + 1):
        current = omega + [Fraction(0)] * (cutoff + 1 - len(omega))
        total = [Fraction(0)] * (cutoff + 1)
        total[1] = Fraction(1)
        power = [Fraction(0), Fraction(1)] + [Fraction(0)] * (cutoff - 1)
        for n in range(1, d):
            power = poly_mul([-theta * c for c in current], power)
            coeff = bernoulli(n) / factorial(n)
            total = [t + coeff * p for t, p in zip(total, power)]
        omega = total[: d + 1]
    return omega + [Fraction(0)] * (cutoff + 1 - len(omega))


# ---------------------------------------------------------------- pre-Lie Magnus


def prelie_magnus_generic(prelie: Callable, x, cutoff: int, zero) -> TruncatedSeries:
    """Ω′ = λx + Σ_{n>0} (B_n/n!) L^n(λx) with L(y) = −Ω′ • y, for any pre-Lie product •."""
    if cutoff < 1:
        raise MalformedInput("cutoff must be at least 1")
    omega = {1: x}
    for d in range(2, cutoff + 1):
        # powers[k] is the λ^k part of L^n(λx) for the current n
        powers = {1: x}
        total = zero
        for n in range(1, d):
            nxt = {}
            for i, w in omega.items():
                for j, y in powers.items():
                    if i + j <= d:
                        term = -prelie(w, y)
                        nxt[i + j] = nxt[i + j] + term if i + j in nxt else term
            powers = nxt
            coeff = bernoulli(n) / factorial(n)
            if coeff and d in powers:
                total = total + coeff * powers[d]
        omega[d] = total
    return TruncatedSeries(cutoff, omega, zero)


def prelie_magnus(inst: RBInstance, x, cutoff: int) -> TruncatedSeries:
    if cutoff > MAGNUS_CAP:
        raise CutoffError(f"pre-Lie Magnus order {cutoff} exceeds the cap {MAGNUS_CAP}")
    return prelie_magnus_generic(lambda a, b: prelie_product(inst, a, b), x, cutoff, inst.zero)


def magnus_checks(inst: RBInstance, x, cutoff: int) -> Residuals:
    """exp(R(Ω′)) against the left fixpoint series, and the commutative collapse."""
    omega = prelie_magnus(inst, x, cutoff)
    left, _ = atkinson_solve(inst, x, cutoff)
    lhs = series_exp(omega.map(inst.R), inst.mul, inst.one)
    out = {f"exp-R-omega[λ^{d}]": lhs[d] - left[d] for d in range(cutoff + 1)}
    if inst.commutative:
        coeffs = log_series_coefficients(inst.theta, cutoff)
        power = x
        for d in range(1, cutoff + 1):
            out[f"commutative-collapse[λ^{d}]"] = omega[d] - coeffs[d] * power
            power = inst.mul(power, x)
    return out


# ---------------------------------------------------------------- canonical cycles


class CycleDecomposition(tuple):
    """Cycles of a permutation, each led by its maximum, sorted by leading entry."""

    def __new__(cls, cycles: Sequence[Sequence[int]]):
        cyc = tuple(tuple(int(a) for a in c) for c in cycles)
        entries = sorted(a for c in cyc for a in c)
        if entries != list(range(1, len(entries) + 1)):
            raise MalformedInput(f"cycles {cyc} do not partition 1..{len(entries)}")
        if any(not c or c[0] != max(c) for c in cyc):
            raise MalformedInput(f"cycles {cyc} must start with their maximal element")
        if any(a[0] >= b[0] for a, b in zip(cyc, cyc[1:])):
            raise MalformedInput(f"cycles {cyc} must be sorted by their first entries")
        return tuple.__new__(cls, cyc)

    @property
    def degree(self) -> int:
        return sum(len(c) for c in self)

    def permutation(self) -> Permutation:
        """σ with σ(c_i) = c_{i+1} cyclically inside each cycle."""
        image = [0] * self.degree
        for c in self:
            for a, b in zip(c, c[1:] + c[:1]):
                image[a - 1] = b
        return Permutation(image)

    def encode(self) -> str:
        if all(a < 10 for c in self for a in c):
            return "".join("(" + "".join(map(str, c)) + ")" for c in self)
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self)

    def __repr__(self):
        return f"CycleDecomposition{self.encode()}"


def parse_cycles(s: str) -> CycleDecomposition:
    """Parse "(32)(541)" (single digits) or "(3,2)(5,4,1)"."""
    s = s.replace(" ", "")
    if not re.fullmatch(r"(\([0-9,]+\))+", s):
        raise MalformedInput(f"bad cycle string {s!r}")
    cycles = []
    for body in re.findall(r"\(([0-9,]+)\)", s):
        cycles.append([int(t) for t in body.split(",")] if "," in body else [int(ch) for ch in body])
    return CycleDecomposition(cycles)


def canonical_cycles(sigma: Sequence[int]) -> CycleDecomposition:
    sigma = Permutation(sigma)
    seen = set()
    cycles = []
    for start in range(len(sigma), 0, -1):
        if start in seen:
            continue
        # the largest unseen value is the maximum of its cycle
        c = [start]
        seen.add(start)
        a = sigma[start - 1]
        while a != start:
            c.append(a)
            seen.add(a)
            a = sigma[a - 1]
        cycles.append(c)
    return CycleDecomposition(sorted(cycles))


# ---------------------------------------------------------------- Bohnenblust–Spitzer


def _check_n(n: int) -> None:
    if n < 1:
        raise MalformedInput("at least one element is required")
    if n > BOHNENBLUST_CAP:
        raise CutoffError(f"n = {n} exceeds the cap {BOHNENBLUST_CAP}")


def bohnenblust_lhs(inst: RBInstance, Fs: Sequence) -> Any:
    """Σ_σ R(⋯R(R(F_{σ1})F_{σ2})⋯)F_{σn}, summed over orderings by subset recursion."""
    n = len(Fs)
    _check_n(n)
    table = {frozenset([i]): Fs[i] for i in range(n)}
    for size in range(2, n + 1):
        for subset in itertools.combinations(range(n), size):
            s = frozenset(subset)
            acc = inst.zero
            for j in subset:
                acc = acc + inst.mul(inst.R(table[s - {j}]), Fs[j])
            table[s] = acc
    return table[frozenset(range(n))]


def bohnenblust_lhs_direct(inst: RBInstance, Fs: Sequence) -> Any:
    """Same sum, enumerating all n! orderings."""
    _check_n(len(Fs))
    total = inst.zero
    for order in itertools.permutations(range(len(Fs))):
        g = Fs[order[0]]
        for j in order[1:]:
            g = inst.mul(inst.R(g), Fs[j])
        total = total + g
    return total


def cycle_term(inst: RBInstance, Fs: Sequence, cycles: CycleDecomposition, right: Callable):
    """∗_θ-product over cycles of (((F_{a0} ⋄ F_{a1}) ⋄ F_{a2}) ⋯) with ⋄ = ``right``."""
    acc = None
    for c in cycles:
        inner = Fs[c[0] - 1]
        for a in c[1:]:
            inner = right(inner, Fs[a - 1])
        acc = inner if acc is None else double_product(inst, acc, inner)
    return acc


def bohnenblust_rhs(inst: RBInstance, Fs: Sequence) -> Any:
    """Σ over permutations of the cycle term built with the pre-Lie product •_θ."""
    n = len(Fs)
    _check_n(n)
    right = lambda y, f: prelie_product(inst, y, f)
    total = inst.zero
    for p in itertools.permutations(range(1, n + 1)):
        total = total + cycle_term(inst, Fs, canonical_cycles(p), right)
    return total


def bohnenblust_rhs_scaled(inst: RBInstance, Fs: Sequence) -> Any:
    """Commutative cycle form: right multiplication by θF instead of •_θ F."""
    n = len(Fs)
    _check_n(n)
    right = lambda y, f: inst.theta * inst.mul(y, f)
    total = inst.zero
    for p in itertools.permutations(range(1, n + 1)):
        total = total + cycle_term(inst, Fs, canonical_cycles(p), right)
    return total


def bohnenblust_partitions(inst: RBInstance, Fs: Sequence) -> Any:
    """Σ_π θ^{n−|π|} ∗_θ-product over blocks of (b−1)! ∏_{j∈block} F_j."""
    n = len(Fs)
    _check_n(n)
    if not inst.commutative:
        raise UnsupportedInstance("the set-partition form needs a commutative algebra")
    total = inst.zero
    for blocks in multiset_partitions(list(range(n))):
        acc = None
        for block in blocks:
            prod = inst.prod(*(Fs[j] for j in block))
            term = factorial(len(block) - 1) * prod
            acc = term if acc is None else double_product(inst, acc, term)
        total = total + inst.theta ** (n - len(blocks)) * acc
    return total


def bohnenblust_spitzer(inst: RBInstance, Fs: Sequence) -> Residuals:
    """lhs − rhs for the noncommutative cycle form, plus the commutative forms when they apply."""
    lhs = bohnenblust_lhs(inst, Fs)
    out = {"cycle-form": lhs - bohnenblust_rhs(inst, Fs)}
    if inst.commutative:
        out["scaled-cycle-form"] = lhs - bohnenblust_rhs_scaled(inst, Fs)
        out["set-partition-form"] = lhs - bohnenblust_partitions(inst, Fs)
    return out
