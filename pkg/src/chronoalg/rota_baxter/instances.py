"""Rota–Baxter algebras as explicit (product, operator, weight) triples.

Every factory validates the weight-θ relation on 100 sampled pairs before
returning, so an :class:`RBInstance` in hand is known to be consistent.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable

from ..core import AlgebraError, CutoffError, LinComb, MalformedInput, as_fraction
from .carriers import (
    GE,
    Matrix,
    Seq,
    TPoly,
    laurent_mul,
    poly_mul,
    poly_one,
    poly_var,
    prefix_sums,
    random_fraction,
    random_laurent,
    random_matrix,
    random_poly,
    random_tpoly,
)

VALIDATION_SAMPLES = 100


@dataclass(frozen=True, eq=False)
class RBInstance:
    """Associative algebra with a weight-θ Rota–Baxter operator R.

    ``mul`` is the associative product, ``R`` the linear operator, ``one`` the
    unit (``None`` if the carrier has none), ``sample(rng)`` draws a random
    element.  ``idempotent`` records R∘R = R, which the counterterm recursion
    requires.
    """

    name: str
    theta: Fraction
    mul: Callable[[Any, Any], Any]
    R: Callable[[Any], Any]
    one: Any
    zero: Any
    sample: Callable[[random.Random], Any]
    commutative: bool = False
    idempotent: bool = False
    params: dict = field(default_factory=dict)

    def Rt(self, x):
        """Partner operator θ·id − R."""
        return self.theta * x - self.R(x)

    def bracket(self, x, y):
        return self.mul(x, y) - self.mul(y, x)

    def prod(self, *xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = self.mul(acc, x)
        return acc

    def describe(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args}) weight {self.theta}"

    def __repr__(self):
        return f"RBInstance<{self.describe()}>"


def is_zero(v) -> bool:
    if isinstance(v, (int, Fraction)):
        return v == 0
    return v.is_zero()


def rb_residual(inst: RBInstance, x, y):
    """R(x)R(y) − R(R(x)y + xR(y) − θxy)."""
    R, m = inst.R, inst.mul
    return m(R(x), R(y)) - R(m(R(x), y) + m(x, R(y)) - inst.theta * m(x, y))


def validate(inst: RBInstance, samples: int = VALIDATION_SAMPLES, seed: int = 0) -> RBInstance:
    rng = random.Random(seed)
    for _ in range(samples):
        x, y, z = inst.sample(rng), inst.sample(rng), inst.sample(rng)
        c = random_fraction(rng)
        if not is_zero(rb_residual(inst, x, y)):
            raise AlgebraError(f"{inst.describe()}: Rota–Baxter relation fails")
        if not is_zero(inst.R(x + c * y) - inst.R(x) - c * inst.R(y)):
            raise AlgebraError(f"{inst.describe()}: operator is not linear")
        if not is_zero(inst.mul(inst.mul(x, y), z) - inst.mul(x, inst.mul(y, z))):
            raise AlgebraError(f"{inst.describe()}: product is not associative")
        if inst.idempotent and not is_zero(inst.R(inst.R(x)) - inst.R(x)):
            raise AlgebraError(f"{inst.describe()}: operator flagged idempotent is not")
    return inst


# ---------------------------------------------------------------- summation


@lru_cache(maxsize=None)
def sequence_summation(M: int = 5, commutative: bool = True,
                       generators: tuple[str, ...] = ("a", "b"),
                       max_degree: int | None = None) -> RBInstance:
    """Length-M sequences of polynomials; R(f) = (0, f₁, f₁+f₂, …), weight −1.

    ``max_degree`` truncates polynomial degree.  Monomials of higher degree
    form an ideal stable under R, so the truncation is an exact quotient.
    """
    if M < 1:
        raise MalformedInput("sequence length must be positive")
    zero = LinComb()

    def mul(f: Seq, g: Seq) -> Seq:
        return Seq(poly_mul(a, b, commutative, max_degree) for a, b in zip(f, g, strict=True))

    def R(f: Seq) -> Seq:
        return prefix_sums(f, zero)

    def sample(rng: random.Random) -> Seq:
        cap = 2 if max_degree is None else min(2, max_degree)
        return Seq(random_poly(rng, generators, cap, commutative, terms=2) for _ in range(M))

    inst = RBInstance(
        name="summation" if commutative else "summation-nc",
        theta=Fraction(-1), mul=mul, R=R,
        one=Seq(poly_one() for _ in range(M)), zero=Seq(zero for _ in range(M)),
        sample=sample, commutative=commutative,
        params={"M": M, "generators": ",".join(generators)}
        | ({} if max_degree is None else {"N": max_degree}),
    )
    return validate(inst)


def sequence_of_variables(M: int, prefix: str = "x") -> Seq:
    """(x1, x2, …, xM)."""
    return Seq(poly_var(f"{prefix}{i}") for i in range(1, M + 1))


@lru_cache(maxsize=None)
def free_rb(M: int = 4, N: int = 4) -> RBInstance:
    """Rota's free construction over the tensor algebra on x1..xM.

    Sequences of length M of noncommutative polynomials truncated at word
    degree N, with the summation operator of weight −1.
    """
    if M < 1 or N < 1:
        raise MalformedInput("free_rb needs M ≥ 1 and N ≥ 1")
    base = sequence_summation(M, False, tuple(f"x{i}" for i in range(1, M + 1)), N)
    return RBInstance(
        name="free", theta=base.theta, mul=base.mul, R=base.R, one=base.one, zero=base.zero,
        sample=base.sample, commutative=False, params={"M": M, "N": N},
    )


# ---------------------------------------------------------------- matrices


@lru_cache(maxsize=None)
def triangular_projector(n: int = 3, theta=1) -> RBInstance:
    """n×n rational matrices, R = θ·(upper triangle including the diagonal).

    The upper and strictly lower triangular matrices are complementary
    subalgebras, so the projector has weight 1; scaling by θ gives weight θ.
    """
    if n < 1:
        raise MalformedInput("matrix size must be positive")
    theta = as_fraction(theta)
    z = Fraction(0)

    def R(x: Matrix) -> Matrix:
        return x.map_indexed(lambda i, j, a: theta * a if i <= j else z)

    inst = RBInstance(
        name="triangular", theta=theta, mul=lambda a, b: a @ b, R=R,
        one=Matrix.scalar(n, Fraction(1)), zero=Matrix.scalar(n, z),
        sample=lambda rng: random_matrix(rng, n), commutative=n == 1,
        idempotent=theta == 1, params={"size": n} | ({} if theta == 1 else {"theta": theta}),
    )
    return validate(inst)


# ---------------------------------------------------------------- integration


@lru_cache(maxsize=None)
def polynomial_integration(size: int | None = None) -> RBInstance:
    """Polynomials in t (scalar, or size×size matrices of them), R = ∫₀ᵗ, weight 0."""
    if size is None:
        return validate(RBInstance(
            name="integration", theta=Fraction(0), mul=lambda a, b: a * b,
            R=lambda f: f.integrate(), one=TPoly.const(1), zero=TPoly(),
            sample=lambda rng: random_tpoly(rng), commutative=True,
        ))
    if size < 1:
        raise MalformedInput("matrix size must be positive")
    zero = TPoly()

    def sample(rng):
        return Matrix([[random_tpoly(rng, 1) for _ in range(size)] for _ in range(size)])

    return validate(RBInstance(
        name="integration-matrix", theta=Fraction(0), mul=lambda a, b: a @ b,
        R=lambda f: f.map(lambda e: e.integrate()),
        one=Matrix.scalar(size, TPoly.const(1), zero), zero=Matrix.scalar(size, zero, zero),
        sample=sample, commutative=size == 1, params={"size": size},
    ), samples=30)


# ---------------------------------------------------------------- Laurent toy


@lru_cache(maxsize=None)
def laurent_minimal_subtraction(N: int = 5, project: str = "pole") -> RBInstance:
    """Polynomials in a coupling g (degree ≤ N) with Laurent-polynomial coefficients in ε.

    ``project="pole"`` keeps the ε^{<0} part (R(1) = 0, the counterterm
    extractor); ``project="regular"`` keeps ε^{≥0}.  Both are idempotent of
    weight 1 because pole and regular parts are complementary subalgebras.
    Terms with g-degree above N form an R-stable ideal, so the cap is exact.
    """
    if project not in ("pole", "regular"):
        raise MalformedInput(f"unknown projection {project!r}")
    if N < 1:
        raise MalformedInput("coupling cap must be positive")
    keep = (lambda e: e < 0) if project == "pole" else (lambda e: e >= 0)

    def R(f: LinComb) -> LinComb:
        return LinComb._from_dict({k: c for k, c in f.items() if keep(k[1])})

    return validate(RBInstance(
        name="laurent", theta=Fraction(1), mul=lambda a, b: laurent_mul(a, b, N), R=R,
        one=LinComb.basis(GE((0, 0))), zero=LinComb(),
        sample=lambda rng: random_laurent(rng, N), commutative=True, idempotent=True,
        params={"N": N, "project": project},
    ))


# ---------------------------------------------------------------- registry


INSTANCE_NAMES = ("summation", "summation-nc", "triangular", "laurent", "integration",
                  "integration-matrix", "free")


def get_instance(name: str, size: int = 3) -> RBInstance:
    """Look up a named instance; ``size`` is the matrix size or sequence length."""
    if name == "summation":
        return sequence_summation(size)
    if name == "summation-nc":
        return sequence_summation(size, commutative=False, max_degree=6)
    if name == "triangular":
        return triangular_projector(size)
    if name == "laurent":
        return laurent_minimal_subtraction(max(size, 1))
    if name == "integration":
        return polynomial_integration()
    if name == "integration-matrix":
        return polynomial_integration(size)
    if name == "free":
        return free_rb(size, size)
    raise MalformedInput(f"unknown instance {name!r}; choose from {', '.join(INSTANCE_NAMES)}")


def check_cap(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise CutoffError(f"{what} {value} exceeds the supported cap {cap}")
