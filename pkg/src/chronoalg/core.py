"""Exact linear combinations, truncated formal series and canonical serialization.

Every algebra element in the package is a :class:`LinComb`: a finite map from
hashable basis objects to nonzero :class:`fractions.Fraction` coefficients.
Basis objects provide ``encode()`` (a canonical string) and may provide
``latex()`` and ``degree``.  Output order is always the sort order of the
canonical strings, which makes every report reproducible byte for byte.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Any, Callable, Iterable, Mapping


class AlgebraError(Exception):
    """Base class for the package's error kinds."""


class MalformedInput(AlgebraError, ValueError):
    pass


class NotLieError(AlgebraError):
    pass


class UnsupportedInstance(AlgebraError):
    pass


class CutoffError(AlgebraError):
    pass


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(c)


def encode(b) -> str:
    """Canonical string of a basis object."""
    enc = getattr(b, "encode", None)
    if enc is not None and not isinstance(b, str):
        return enc()
    return str(b)


def latex_of(b) -> str:
    tex = getattr(b, "latex", None)
    if tex is not None:
        return tex()
    return encode(b)


class Tensor(tuple):
    """Pure tensor of basis objects, used as the basis of coproducts."""

    def encode(self) -> str:
        return " ⊗ ".join(encode(x) for x in self)

    def latex(self) -> str:
        return r" \otimes ".join(latex_of(x) for x in self)

    @property
    def degree(self) -> int:
        return sum(x.degree for x in self)

    def __repr__(self):
        return f"Tensor{tuple.__repr__(self)}"


class LinComb:
    """Finite formal sum with exact rational coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            c = as_fraction(c)
            if c:
                v = acc.get(b, 0) + c
                if v:
                    acc[b] = v
                else:
                    del acc[b]
        self._terms = acc
        self._hash = None

    @classmethod
    def _from_dict(cls, d: dict) -> "LinComb":
        # trusted constructor: d already pruned and owned by the result
        out = cls.__new__(cls)
        out._terms = d
        out._hash = None
        return out

    @classmethod
    def basis(cls, b, coeff=1) -> "LinComb":
        return cls({b: coeff})

    @classmethod
    def zero(cls) -> "LinComb":
        return cls._from_dict({})

    def __iter__(self):
        return iter(self.terms())

    def terms(self) -> list[tuple[Any, Fraction]]:
        """Terms sorted by canonical basis string."""
        return sorted(self._terms.items(), key=lambda t: encode(t[0]))

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, b) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def __getitem__(self, b) -> Fraction:
        return self.coeff(b)

    def __contains__(self, b) -> bool:
        return b in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            if other == 0:
                return self
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        d = dict(self._terms)
        for b, c in other._terms.items():
            v = d.get(b, 0) + c
            if v:
                d[b] = v
            else:
                d.pop(b, None)
        return type(self)._from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> "LinComb":
        return type(self)._from_dict({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LinComb":
        c = as_fraction(c)
        if not c:
            return type(self)._from_dict({})
        return type(self)._from_dict({b: c * v for b, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __truediv__(self, c):
        return self.scale(1 / as_fraction(c))

    def map(self, f: Callable[[Any], "LinComb"]) -> "LinComb":
        """Linear extension of a basis map returning LinCombs."""
        acc: dict = {}
        for b, c in self._terms.items():
            for b2, c2 in f(b).items():
                v = acc.get(b2, 0) + c * c2
                if v:
                    acc[b2] = v
                else:
                    del acc[b2]
        return LinComb._from_dict(acc)

    def map_basis(self, f: Callable[[Any], Any]) -> "LinComb":
        """Linear extension of a basis-to-basis map."""
        return LinComb((f(b), c) for b, c in self._terms.items())

    def homogeneous(self, d: int) -> "LinComb":
        return LinComb._from_dict({b: c for b, c in self._terms.items() if b.degree == d})

    def degrees(self) -> set[int]:
        return {b.degree for b in self._terms}

    @property
    def degree(self) -> int | None:
        """Common degree of all terms, or None when empty or inhomogeneous."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def __repr__(self):
        return f"LinComb({to_text(self)})"

    def __str__(self):
        return to_text(self)


def lift(x) -> LinComb:
    """Accept a basis object or a LinComb and return a LinComb."""
    return x if isinstance(x, LinComb) else LinComb._from_dict({x: Fraction(1)})


def bilinear(f: Callable[[Any, Any], LinComb], a, b) -> LinComb:
    """Extend a product defined on basis pairs to linear combinations."""
    a, b = lift(a), lift(b)
    acc: dict = {}
    for x, cx in a.items():
        for y, cy in b.items():
            c = cx * cy
            for z, cz in f(x, y).items():
                v = acc.get(z, 0) + c * cz
                if v:
                    acc[z] = v
                else:
                    del acc[z]
    return LinComb._from_dict(acc)


def tensor_product(f: Callable, g: Callable, a: LinComb) -> LinComb:
    """(f ⊗ g) applied to a LinComb of 2-tensors, f and g returning LinCombs."""
    acc = LinComb()
    for t, c in a.items():
        left, right = f(t[0]), g(t[1])
        acc = acc + LinComb._from_dict(
            {Tensor((x, y)): c * cx * cy for x, cx in left.items() for y, cy in right.items()}
        )
    return acc


def tensor_mul(mul: Callable, a: LinComb, b: LinComb) -> LinComb:
    """Componentwise product (x⊗y)(u⊗v) = xu ⊗ yv, mul acting on basis pairs."""

    def on_basis(s, t):
        left, right = lift(mul(s[0], t[0])), lift(mul(s[1], t[1]))
        return LinComb._from_dict(
            {Tensor((x, y)): cx * cy for x, cx in left.items() for y, cy in right.items()}
        )

    return bilinear(on_basis, a, b)


# ---------------------------------------------------------------- series


class TruncatedSeries:
    """Formal series Σ_{d ≤ cutoff} s_d in a grading parameter.

    Components may be LinCombs (then ``graded=True`` asserts that the
    component of key d is homogeneous of degree d) or elements of any ring
    supporting + - and scalar multiplication.
    """

    __slots__ = ("cutoff", "_comp", "zero")

    def __init__(self, cutoff: int, components: Mapping[int, Any], zero=None, graded=False):
        if cutoff < 0:
            raise MalformedInput("cutoff must be nonnegative")
        self.cutoff = cutoff
        self.zero = LinComb() if zero is None else zero
        comp = {}
        for d, v in components.items():
            if d < 0:
                raise MalformedInput("negative degree in series")
            if d > cutoff or _is_zero(v):
                continue
            if graded and isinstance(v, LinComb) and v.degrees() != {d}:
                raise MalformedInput(f"component {d} is not homogeneous of degree {d}")
            comp[d] = v
        self._comp = comp

    def __getitem__(self, d: int):
        return self._comp.get(d, self.zero)

    def components(self) -> dict:
        return dict(sorted(self._comp.items()))

    def _binary(self, other, op):
        n = min(self.cutoff, other.cutoff)
        keys = set(self._comp) | set(other._comp)
        return TruncatedSeries(n, {d: op(self[d], other[d]) for d in keys if d <= n}, self.zero)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self):
        return TruncatedSeries(self.cutoff, {d: -v for d, v in self._comp.items()}, self.zero)

    def scale(self, c):
        c = as_fraction(c)
        return TruncatedSeries(self.cutoff, {d: c * v for d, v in self._comp.items()}, self.zero)

    def mul(self, other, mul: Callable):
        """Cauchy product with component product ``mul``."""
        n = min(self.cutoff, other.cutoff)
        out: dict = {}
        for i, a in self._comp.items():
            for j, b in other._comp.items():
                if i + j <= n:
                    p = mul(a, b)
                    out[i + j] = out[i + j] + p if i + j in out else p
        return TruncatedSeries(n, out, self.zero)

    def truncate(self, n: int):
        return TruncatedSeries(min(n, self.cutoff), self._comp, self.zero)

    def map(self, f: Callable):
        return TruncatedSeries(self.cutoff, {d: f(v) for d, v in self._comp.items()}, self.zero)

    def is_zero(self) -> bool:
        return not self._comp

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.cutoff, other.cutoff)
        keys = {d for d in set(self._comp) | set(other._comp) if d <= n}
        return all(_is_zero(self[d] - other[d]) for d in keys)

    __hash__ = None

    def __repr__(self):
        return f"TruncatedSeries(cutoff={self.cutoff}, {self.components()!r})"


def _is_zero(v) -> bool:
    if isinstance(v, (int, Fraction)):
        return v == 0
    z = getattr(v, "is_zero", None)
    if z is not None:
        return z()
    return not v


def series_exp(s: TruncatedSeries, mul: Callable, one) -> TruncatedSeries:
    """Σ sⁿ/n! truncated at the cutoff; s must have no degree-0 part."""
    if not _is_zero(s[0]):
        raise MalformedInput("exp requires a series without constant term")
    n = s.cutoff
    result = TruncatedSeries(n, {0: one}, s.zero)
    power = TruncatedSeries(n, {0: one}, s.zero)
    for k in range(1, n + 1):
        power = power.mul(s, mul)
        if power.is_zero():
            break
        result = result + power.scale(Fraction(1, factorial(k)))
    return result


def series_log(s: TruncatedSeries, mul: Callable, one) -> TruncatedSeries:
    """Σ (−1)^{n−1}(s−1)ⁿ/n truncated at the cutoff; s must start with the unit."""
    if not _is_zero(s[0] - one):
        raise MalformedInput("log requires a series with constant term equal to the unit")
    n = s.cutoff
    t = s - TruncatedSeries(n, {0: one}, s.zero)
    result = TruncatedSeries(n, {}, s.zero)
    power = TruncatedSeries(n, {0: one}, s.zero)
    for k in range(1, n + 1):
        power = power.mul(t, mul)
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (k - 1), k))
    return result


def bernoulli(n: int) -> Fraction:
    """B_n with B₁ = −½, from Σ_{k=0}^{n} C(n+1, k) B_k = 0."""
    return _bernoulli_table(n)[n]


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    if n < 0:
        raise MalformedInput("Bernoulli index must be nonnegative")
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / (m + 1))
    return tuple(b)


# ---------------------------------------------------------------- serialization


def format_fraction(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def to_records(x: LinComb) -> list[dict]:
    return [{"basis": encode(b), "coeff": format_fraction(c)} for b, c in x.terms()]


def to_json(x: LinComb) -> str:
    return json.dumps(to_records(x), ensure_ascii=False)


def from_json(data: str | list, parse: Callable[[str], Any]) -> LinComb:
    """Inverse of :func:`to_json`; ``parse`` maps canonical strings to basis objects."""
    records = json.loads(data) if isinstance(data, str) else data
    terms = []
    for r in records:
        try:
            terms.append((parse(r["basis"]), Fraction(r["coeff"])))
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedInput(f"bad record {r!r}") from exc
    return LinComb(terms)


def _signed_terms(x: LinComb, coef: Callable[[Fraction], str], basis: Callable) -> str:
    if not x:
        return "0"
    parts = []
    for i, (b, c) in enumerate(x.terms()):
        sign = "-" if c < 0 else "+"
        mag = coef(abs(c))
        body = f"{mag}{basis(b)}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def _text_coeff(c: Fraction) -> str:
    if c == 1:
        return ""
    if c.denominator == 1:
        return f"{c.numerator}*"
    return f"{format_fraction(c)}*"


def to_text(x: LinComb) -> str:
    return _signed_terms(x, _text_coeff, encode)


def _latex_coeff(c: Fraction) -> str:
    if c == 1:
        return ""
    if c.denominator == 1:
        return f"{c.numerator}\\,"
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def to_latex(x: LinComb) -> str:
    return _signed_terms(x, _latex_coeff, latex_of)
