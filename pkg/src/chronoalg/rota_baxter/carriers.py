"""Concrete element types for Rota–Baxter instances.

All carriers support ``+``, ``-``, unary minus, multiplication by an int or
Fraction on the left, equality, and ``is_zero()``.  The algebra product lives
on the instance, because truncation caps are instance parameters.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ..core import LinComb, MalformedInput


def random_fraction(rng: random.Random, size: int = 3) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


# ---------------------------------------------------------------- polynomials


class Monomial(tuple):
    """Word in generator names; sorted when used in a commutative ring."""

    @property
    def degree(self) -> int:
        return len(self)

    def encode(self) -> str:
        return "*".join(self) if self else "1"


ONE_MONOMIAL = Monomial()


def poly_one() -> LinComb:
    return LinComb.basis(ONE_MONOMIAL)


def poly_var(name: str) -> LinComb:
    return LinComb.basis(Monomial((name,)))


def poly_const(c) -> LinComb:
    return LinComb.basis(ONE_MONOMIAL, c)


def poly_mul(a: LinComb, b: LinComb, commutative: bool, max_degree: int | None = None) -> LinComb:
    acc: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            if max_degree is not None and len(m1) + len(m2) > max_degree:
                continue
            m = m1 + m2
            key = Monomial(sorted(m) if commutative else m)
            v = acc.get(key, 0) + c1 * c2
            if v:
                acc[key] = v
            else:
                del acc[key]
    return LinComb._from_dict(acc)


def random_poly(rng: random.Random, generators: Sequence[str], max_degree: int,
                commutative: bool, terms: int = 3) -> LinComb:
    acc = LinComb()
    for _ in range(terms):
        d = rng.randint(0, max_degree)
        m = tuple(rng.choice(generators) for _ in range(d))
        acc = acc + LinComb.basis(Monomial(sorted(m) if commutative else m), random_fraction(rng))
    return acc


# ---------------------------------------------------------------- sequences


class Seq(tuple):
    """Finite sequence (f₁, …, f_M) with pointwise operations."""

    def __add__(self, other):
        if not isinstance(other, Seq):
            return NotImplemented
        return Seq(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        if not isinstance(other, Seq):
            return NotImplemented
        return Seq(a - b for a, b in zip(self, other, strict=True))

    def __neg__(self):
        return Seq(-a for a in self)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return Seq(c * a for a in self)
        return NotImplemented

    def __mul__(self, other):
        return NotImplemented

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    def encode(self) -> str:
        return "[" + "; ".join(str(a) for a in self) + "]"

    def __repr__(self):
        return f"Seq{self.encode()}"


def prefix_sums(f: Seq, zero) -> Seq:
    """R(f)_k = f₁ + … + f_{k−1}."""
    out = []
    acc = zero
    for a in f:
        out.append(acc)
        acc = acc + a
    return Seq(out)


# ---------------------------------------------------------------- matrices


class Matrix:
    """Square matrix over a ring whose elements support + and *."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise MalformedInput("matrix must be square")

    @classmethod
    def scalar(cls, n: int, c, zero=Fraction(0)) -> "Matrix":
        return cls([[c if i == j else zero for j in range(n)] for i in range(n)])

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return Matrix([[c * a for a in r] for r in self.rows])
        return NotImplemented

    def __matmul__(self, other: "Matrix") -> "Matrix":
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = r[0] * col[0]
                for k in range(1, n):
                    acc = acc + r[k] * col[k]
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def map(self, f: Callable) -> "Matrix":
        return Matrix([[f(a) for a in r] for r in self.rows])

    def map_indexed(self, f: Callable) -> "Matrix":
        return Matrix([[f(i, j, a) for j, a in enumerate(r)] for i, r in enumerate(self.rows)])

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    __hash__ = None

    def encode(self) -> str:
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"Matrix{self.encode()}"


def random_matrix(rng: random.Random, n: int, size: int = 3) -> Matrix:
    return Matrix([[random_fraction(rng, size) for _ in range(n)] for _ in range(n)])


# ---------------------------------------------------------------- polynomials in t


class TPow(int):
    """Exponent of t, used as the basis of scalar polynomials in t."""

    @property
    def degree(self) -> int:
        return int(self)

    def encode(self) -> str:
        return f"t^{int(self)}"


class TPoly(LinComb):
    """Polynomial in one variable t with rational coefficients."""

    __slots__ = ()

    @classmethod
    def from_coeffs(cls, coeffs: dict) -> "TPoly":
        return cls({TPow(k): c for k, c in coeffs.items()})

    @classmethod
    def const(cls, c) -> "TPoly":
        return cls.from_coeffs({0: c})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TPoly):
            return NotImplemented
        acc: dict = {}
        for i, a in self.items():
            for j, b in other.items():
                k = TPow(i + j)
                v = acc.get(k, 0) + a * b
                if v:
                    acc[k] = v
                else:
                    del acc[k]
        return TPoly._from_dict(acc)

    def integrate(self) -> "TPoly":
        """∫₀ᵗ."""
        return TPoly._from_dict({TPow(k + 1): c / (k + 1) for k, c in self.items()})


def random_tpoly(rng: random.Random, max_degree: int = 2) -> TPoly:
    return TPoly.from_coeffs({k: random_fraction(rng) for k in range(max_degree + 1)})


# ---------------------------------------------------------------- graded Laurent polynomials


class GE(tuple):
    """Monomial g^a ε^b: coupling degree a ≥ 0, Laurent exponent b ∈ ℤ."""

    @property
    def degree(self) -> int:
        return self[0]

    def encode(self) -> str:
        return f"g^{self[0]}*e^{self[1]}"


def laurent_mul(a: LinComb, b: LinComb, max_g: int) -> LinComb:
    acc: dict = {}
    for (g1, e1), c1 in a.items():
        for (g2, e2), c2 in b.items():
            if g1 + g2 > max_g:
                continue
            k = GE((g1 + g2, e1 + e2))
            v = acc.get(k, 0) + c1 * c2
            if v:
                acc[k] = v
            else:
                del acc[k]
    return LinComb._from_dict(acc)


def laurent(terms: dict) -> LinComb:
    """Build from {(g, e): coeff}."""
    return LinComb({GE(k): c for k, c in terms.items()})


def random_laurent(rng: random.Random, max_g: int, pole: int = 2, regular: int = 2,
                   min_g: int = 0, terms: int = 4) -> LinComb:
    acc = LinComb()
    for _ in range(terms):
        k = GE((rng.randint(min_g, max_g), rng.randint(-pole, regular)))
        acc = acc + LinComb.basis(k, random_fraction(rng))
    return acc
