"""Products derived from a Rota–Baxter operator and the identities they satisfy.

Check functions return a dict mapping a check name to its residual; every
residual is zero in a valid instance.  :func:`nonzero` filters the failures.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from ..core import MalformedInput, TruncatedSeries, UnsupportedInstance
from .instances import RBInstance, is_zero

Residuals = dict[str, Any]


def nonzero(residuals: Residuals) -> list[str]:
    return [k for k, v in residuals.items() if not is_zero(v)]


# ---------------------------------------------------------------- Rota–Baxter relation


def rb_check(inst: RBInstance, x, y) -> Residuals:
    """Weight-θ relation for R and for its partner, plus the two mixed relations."""
    R, Rt, m, th = inst.R, inst.Rt, inst.mul, inst.theta
    return {
        "rb": m(R(x), R(y)) - R(m(R(x), y) + m(x, R(y)) - th * m(x, y)),
        "partner": m(Rt(x), Rt(y)) - Rt(m(Rt(x), y) + m(x, Rt(y)) - th * m(x, y)),
        "mixed-left": m(R(x), Rt(y)) - R(m(x, Rt(y))) - Rt(m(R(x), y)),
        "mixed-right": m(Rt(x), R(y)) - Rt(m(x, R(y))) - R(m(Rt(x), y)),
    }


def double_product(inst: RBInstance, x, y):
    """x ∗_θ y = R(x)y + xR(y) − θxy."""
    m = inst.mul
    return m(inst.R(x), y) + m(x, inst.R(y)) - inst.theta * m(x, y)


def double_product_checks(inst: RBInstance, x, y, z) -> Residuals:
    d = lambda a, b: double_product(inst, a, b)
    m = inst.mul
    return {
        "associative": d(d(x, y), z) - d(x, d(y, z)),
        "R-morphism": inst.R(d(x, y)) - m(inst.R(x), inst.R(y)),
        "partner-antimorphism": inst.Rt(d(x, y)) + m(inst.Rt(x), inst.Rt(y)),
    }


# ---------------------------------------------------------------- half products


def half_products(inst: RBInstance, x, y, variant: str = "standard"):
    """(x≺y, x≻y, x·y) with x≺y = xR(y), x≻y = R(x)y.

    ``variant="link"`` uses x≺y = xR(y) − xy instead, which for weight 1 is
    −xR̃(y).
    """
    m = inst.mul
    xy = m(x, y)
    prec = m(x, inst.R(y))
    if variant == "link":
        prec = prec - xy
    elif variant != "standard":
        raise MalformedInput(f"unknown half-product variant {variant!r}")
    return prec, m(inst.R(x), y), xy


def shuffle_axioms(inst: RBInstance, a, b, c, variant: str = "standard") -> Residuals:
    """The three shuffle-algebra relations for ≺ and ≻."""
    prec = lambda u, v: half_products(inst, u, v, variant)[0]
    succ = lambda u, v: half_products(inst, u, v, variant)[1]
    return {
        "prec-prec": prec(prec(a, b), c) - prec(a, prec(b, c) + succ(b, c)),
        "succ-prec": succ(a, prec(b, c)) - prec(succ(a, b), c),
        "succ-succ": succ(a, succ(b, c)) - succ(prec(a, b) + succ(a, b), c),
    }


def quasi_shuffle_axioms(inst: RBInstance, a, b, c) -> Residuals:
    """The six quasi-shuffle relations, with ∗ the double product ∗_θ."""
    prec = lambda u, v: half_products(inst, u, v)[0]
    succ = lambda u, v: half_products(inst, u, v)[1]
    dot = inst.mul
    star = lambda u, v: double_product(inst, u, v)
    return {
        "prec-prec": prec(prec(a, b), c) - prec(a, star(b, c)),
        "succ-dot": dot(succ(a, b), c) - succ(a, dot(b, c)),
        "succ-succ": succ(a, succ(b, c)) - succ(star(a, b), c),
        "prec-dot": dot(prec(a, b), c) - dot(a, succ(b, c)),
        "succ-prec": prec(succ(a, b), c) - succ(a, prec(b, c)),
        "dot-prec": prec(dot(a, b), c) - dot(a, prec(b, c)),
    }


# ---------------------------------------------------------------- pre-Lie and post-Lie


def prelie_product(inst: RBInstance, x, y):
    """x •_θ y = R(x)y + yR̃(x)."""
    return inst.mul(inst.R(x), y) + inst.mul(y, inst.Rt(x))


def prelie_checks(inst: RBInstance, x, y, z) -> Residuals:
    p = lambda u, v: prelie_product(inst, u, v)
    assoc = lambda u, v, w: p(p(u, v), w) - p(u, p(v, w))
    out = {
        "left-prelie": assoc(x, y, z) - assoc(y, x, z),
        "bracket-form": p(x, y) - inst.bracket(inst.R(x), y) - inst.theta * inst.mul(y, x),
        "antisymmetrization": p(x, y) - p(y, x) - postlie_products(inst, x, y)[2],
    }
    if inst.commutative:
        out["commutative-collapse"] = p(x, y) - inst.theta * inst.mul(y, x)
    return out


def postlie_products(inst: RBInstance, x, y):
    """(x▷y, [x,y]^θ, ⟦x,y⟧_θ) with x▷y = [R(x),y] and [x,y]^θ = −θ[x,y]."""
    br, R, th = inst.bracket, inst.R, inst.theta
    return (
        br(R(x), y),
        -th * br(x, y),
        br(R(x), y) + br(x, R(y)) - th * br(x, y),
    )


def _jacobi(br, x, y, z):
    return br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))


def postlie_checks(inst: RBInstance, x, y, z) -> Residuals:
    tri = lambda u, v: postlie_products(inst, u, v)[0]
    lie = lambda u, v: postlie_products(inst, u, v)[1]
    double = lambda u, v: postlie_products(inst, u, v)[2]
    return {
        "postlie-derivation": tri(x, lie(y, z)) - lie(tri(x, y), z) - lie(y, tri(x, z)),
        "postlie-bracket": tri(lie(x, y), z)
        - (tri(x, tri(y, z)) - tri(tri(x, y), z) - tri(y, tri(x, z)) + tri(tri(y, x), z)),
        "double-bracket-jacobi": _jacobi(double, x, y, z),
        "derived-bracket": tri(x, y) - tri(y, x) + lie(x, y) - double(x, y),
        "R-lie-morphism": inst.R(double(x, y)) - inst.bracket(inst.R(x), inst.R(y)),
    }


def literal_derived_bracket_jacobi(inst: RBInstance, x, y, z):
    """Jacobi residual of x▷y − y▷x − [x,y]^θ, which is nonzero in general.

    The bracket that satisfies Jacobi is x▷y − y▷x + [x,y]^θ = ⟦x,y⟧_θ; this
    helper exists to exhibit the difference.
    """
    tri = lambda u, v: postlie_products(inst, u, v)[0]
    lie = lambda u, v: postlie_products(inst, u, v)[1]
    return _jacobi(lambda u, v: tri(u, v) - tri(v, u) - lie(u, v), x, y, z)


# ---------------------------------------------------------------- modified operator


def modified_map(inst: RBInstance, x):
    """B = R − R̃ = 2R − θ·id."""
    return 2 * inst.R(x) - inst.theta * x


def modified_map_checks(inst: RBInstance, x, y) -> Residuals:
    B, m, th = (lambda u: modified_map(inst, u)), inst.mul, inst.theta
    sq = th * th
    return {
        "modified-rb": m(B(x), B(y)) - B(m(B(x), y) + m(x, B(y))) + sq * m(x, y),
        "modified-bracket": inst.bracket(B(x), B(y))
        - B(inst.bracket(B(x), y) + inst.bracket(x, B(y))) + sq * inst.bracket(x, y),
        "double-product-half-sum": double_product(inst, x, y)
        - Fraction(1, 2) * (m(B(x), y) + m(x, B(y))),
    }


# ---------------------------------------------------------------- fixpoint series


def _series(inst: RBInstance, cutoff: int, comps: dict) -> TruncatedSeries:
    return TruncatedSeries(cutoff, comps, inst.zero)


def _unit(inst: RBInstance):
    if inst.one is None:
        raise UnsupportedInstance(f"{inst.name} has no unit")
    return inst.one


def atkinson_solve(inst: RBInstance, x, cutoff: int):
    """λ-series ℓ = 1 + λR(ℓx) and r = 1 + λR̃(xr), solved degree by degree."""
    one = _unit(inst)
    left, right = [one], [one]
    for n in range(1, cutoff + 1):
        left.append(inst.R(inst.mul(left[n - 1], x)))
        right.append(inst.Rt(inst.mul(x, right[n - 1])))
    return (_series(inst, cutoff, dict(enumerate(left))),
            _series(inst, cutoff, dict(enumerate(right))))


def atkinson_inverses(inst: RBInstance, x, cutoff: int):
    """ℓ⁻¹ = 1 − λR(xr) and r⁻¹ = 1 − λR̃(ℓx), from the solved ℓ and r."""
    one = _unit(inst)
    left, right = atkinson_solve(inst, x, cutoff)
    linv = {0: one} | {n: -inst.R(inst.mul(x, right[n - 1])) for n in range(1, cutoff + 1)}
    rinv = {0: one} | {n: -inst.Rt(inst.mul(left[n - 1], x)) for n in range(1, cutoff + 1)}
    return _series(inst, cutoff, linv), _series(inst, cutoff, rinv)


def atkinson_checks(inst: RBInstance, x, cutoff: int) -> Residuals:
    """Inverse and factorization identities, one residual per λ-degree."""
    one = _unit(inst)
    m = inst.mul
    left, right = atkinson_solve(inst, x, cutoff)
    linv, rinv = atkinson_inverses(inst, x, cutoff)
    unit = _series(inst, cutoff, {0: one})
    lam_x = _series(inst, cutoff, {1: x})
    th = inst.theta
    checks = {
        "left-inverse": left.mul(linv, m) - unit,
        "right-inverse": right.mul(rinv, m) - unit,
        "factorization": linv.mul(rinv, m) - (unit - lam_x.scale(th)),
        "product": left.mul(right, m) - unit - left.mul(lam_x, m).mul(right, m).scale(th),
    }
    return {f"{name}[λ^{d}]": s[d] for name, s in checks.items() for d in range(cutoff + 1)}


def bogoliubov(inst: RBInstance, xs: dict[int, Any], cutoff: int):
    """Counterterm recursion for an idempotent R with R(1) = 0.

    ``xs`` maps degree n ≥ 1 to x_n.  Returns (f, h⁻¹) as series with
    f_n = R(x_n) + Σ R(f_i x_{n−i}) and h⁻¹_n = −R̃(x_n) − Σ R̃(f_i x_{n−i}).
    """
    one = _unit(inst)
    if not inst.idempotent:
        raise UnsupportedInstance(f"{inst.describe()}: the recursion needs an idempotent operator")
    if not is_zero(inst.R(one)):
        raise UnsupportedInstance(f"{inst.describe()}: the recursion needs R(1) = 0")
    if 0 in xs:
        raise MalformedInput("x must have no degree-0 part")
    xn = lambda n: xs.get(n, inst.zero)
    f = {0: one}
    hinv = {0: one}
    for n in range(1, cutoff + 1):
        inner = xn(n)
        for i in range(1, n):
            inner = inner + inst.mul(f[i], xn(n - i))
        f[n] = inst.R(inner)
        hinv[n] = -inst.Rt(inner)
    return _series(inst, cutoff, f), _series(inst, cutoff, hinv)


def bogoliubov_checks(inst: RBInstance, xs: dict[int, Any], cutoff: int) -> Residuals:
    f, hinv = bogoliubov(inst, xs, cutoff)
    one = inst.one
    unit = _series(inst, cutoff, {0: one})
    x = _series(inst, cutoff, dict(xs))
    lhs = f.mul(unit - x, inst.mul) - hinv
    out = {f"f(1-x)-h^-1[{d}]": lhs[d] for d in range(cutoff + 1)}
    out |= {f"partner(f)-1[{d}]": inst.Rt(f[d]) - (one if d == 0 else inst.zero)
            for d in range(cutoff + 1)}
    if 1 in xs:
        out["f1"] = f[1] - inst.R(xs[1])
        out["h^-1_1"] = hinv[1] + inst.Rt(xs[1])
    if cutoff >= 2:
        x1, x2 = xs.get(1, inst.zero), xs.get(2, inst.zero)
        out["f2"] = f[2] - inst.R(inst.mul(f[1], x1) + x2)
    return out
