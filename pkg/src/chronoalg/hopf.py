"""Residuals of the bialgebra laws for the coproducts in this package.

Each function returns a LinComb that is zero exactly when the law holds on
the given input.
"""
from __future__ import annotations

from typing import Callable

from .core import LinComb, Tensor, lift, tensor_mul, tensor_product


def _identity(b) -> LinComb:
    return LinComb.basis(b)


def _flatten(x: LinComb) -> LinComb:
    """((a, b), c) and (a, (b, c)) both become (a, b, c)."""
    out: dict = {}
    for t, c in x.items():
        parts = []
        for piece in t:
            parts.extend(piece if isinstance(piece, Tensor) else (piece,))
        key = Tensor(parts)
        out[key] = out.get(key, 0) + c
    return LinComb(out)


def coassociativity(delta: Callable, x) -> LinComb:
    """(Δ ⊗ id)Δ(x) − (id ⊗ Δ)Δ(x), as 3-tensors."""
    d = delta(x)
    left = tensor_product(lambda b: delta(b).map_basis(Tensor), _identity, d)
    right = tensor_product(_identity, lambda b: delta(b).map_basis(Tensor), d)
    return _flatten(left) - _flatten(right)


def compatibility(delta: Callable, mul: Callable, x, y) -> LinComb:
    """Δ(xy) − Δ(x)Δ(y) with the componentwise product on tensors."""
    return delta(mul(x, y)) - tensor_mul(mul, delta(x), delta(y))


def counit_laws(delta: Callable, x, unit) -> tuple[LinComb, LinComb]:
    """(ε ⊗ id)Δ(x) − x and (id ⊗ ε)Δ(x) − x, with ε picking the unit basis element."""
    d = delta(x)
    left = LinComb({t[1]: c for t, c in d.items() if t[0] == unit})
    right = LinComb({t[0]: c for t, c in d.items() if t[1] == unit})
    return left - lift(x), right - lift(x)


def flip(x: LinComb) -> LinComb:
    return x.map_basis(lambda t: Tensor((t[1], t[0])))


def intertwining(f: Callable, delta_source: Callable, delta_target: Callable, x,
                 flipped: bool = False) -> LinComb:
    """(f ⊗ f)Δ_source(x) − Δ_target(f(x)), optionally flipping the target coproduct."""
    lhs = tensor_product(f, f, delta_source(x))
    rhs = delta_target(f(x))
    return lhs - (flip(rhs) if flipped else rhs)
