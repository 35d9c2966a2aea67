"""Planar binary trees and non-planar labeled rooted trees.

Planar binary trees carry the integration-by-parts product and embed into the
permutation algebra by summing linear extensions.  Rooted trees span the free
pre-Lie algebra (grafting); forests of them carry the Grossman–Larson product.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Sequence

from .core import (
    LinComb,
    MalformedInput,
    Tensor,
    TruncatedSeries,
    bernoulli,
    bilinear,
    lift,
    series_exp,
    series_log,
)
from .permutations import Permutation


# ---------------------------------------------------------------- planar binary trees


class PlanarBinaryTree:
    """Either empty or a root with ordered left and right subtrees."""

    __slots__ = ("left", "right", "degree", "_key")

    def __init__(self, left: "PlanarBinaryTree | None" = None, right: "PlanarBinaryTree | None" = None,
                 *, empty: bool = False):
        if empty:
            self.left = self.right = None
            self.degree = 0
            self._key = "_"
            return
        left = EMPTY if left is None else left
        right = EMPTY if right is None else right
        self.left, self.right = left, right
        self.degree = left.degree + right.degree + 1
        self._key = f"({left._key}|{right._key})"

    @property
    def is_empty(self) -> bool:
        return self.degree == 0

    def encode(self) -> str:
        return self._key

    def latex(self) -> str:
        return self._key

    def __eq__(self, other):
        return isinstance(other, PlanarBinaryTree) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"PBT{self._key}"


EMPTY = PlanarBinaryTree(empty=True)
DOT = PlanarBinaryTree(EMPTY, EMPTY)


def pbt_graft(left: PlanarBinaryTree, right: PlanarBinaryTree) -> PlanarBinaryTree:
    return PlanarBinaryTree(left, right)


def parse_pbt(s: str) -> PlanarBinaryTree:
    pos = 0

    def walk():
        nonlocal pos
        if s[pos] == "_":
            pos += 1
            return EMPTY
        if s[pos] != "(":
            raise MalformedInput(f"bad tree string {s!r}")
        pos += 1
        left = walk()
        if s[pos] != "|":
            raise MalformedInput(f"bad tree string {s!r}")
        pos += 1
        right = walk()
        if s[pos] != ")":
            raise MalformedInput(f"bad tree string {s!r}")
        pos += 1
        return PlanarBinaryTree(left, right)

    try:
        t = walk()
    except IndexError as exc:
        raise MalformedInput(f"bad tree string {s!r}") from exc
    if pos != len(s):
        raise MalformedInput(f"trailing characters in {s!r}")
    return t


@lru_cache(maxsize=None)
def all_pbts(n: int) -> tuple[PlanarBinaryTree, ...]:
    if n == 0:
        return (EMPTY,)
    return tuple(
        PlanarBinaryTree(a, b) for k in range(n) for a in all_pbts(k) for b in all_pbts(n - 1 - k)
    )


@lru_cache(maxsize=None)
def _pbt_product_basis(t: PlanarBinaryTree, u: PlanarBinaryTree) -> LinComb:
    if u.is_empty:
        return LinComb.basis(t)
    if t.is_empty:
        return LinComb.basis(u)
    acc = {}
    for x, c in _pbt_product_basis(t, u.left).items():
        key = PlanarBinaryTree(x, u.right)
        acc[key] = acc.get(key, 0) + c
    for x, c in _pbt_product_basis(t.right, u).items():
        key = PlanarBinaryTree(t.left, x)
        acc[key] = acc.get(key, 0) + c
    return LinComb(acc)


def pbt_product(a, b) -> LinComb:
    """T ∗ U = (T ∗ U₁) ∨ U₂ + T₁ ∨ (T₂ ∗ U), extended bilinearly."""
    return bilinear(_pbt_product_basis, a, b)


def _parents(t: PlanarBinaryTree) -> list[int]:
    """In-order labels 1..n; entry i−1 is the label of vertex i's parent (0 for the root)."""
    parents: list[int] = []

    def walk(node):
        # returns the label of node's root
        if node.is_empty:
            return None
        left_root = walk(node.left)
        parents.append(0)
        me = len(parents)
        right_root = walk(node.right)
        for child in (left_root, right_root):
            if child is not None:
                parents[child - 1] = me
        return me

    walk(t)
    return parents


def linearizations(t: PlanarBinaryTree) -> set[Permutation]:
    """Permutations β with β(parent) > β(child) for the in-order labeling."""
    parents = _parents(t)
    n = len(parents)
    children = [[] for _ in range(n + 1)]
    for v, p in enumerate(parents, 1):
        children[p].append(v)
    out = set()
    value = [0] * n

    def extend(k, pending):
        # pending[v] = number of children of v not yet assigned
        if k > n:
            out.add(Permutation._raw(value))
            return
        for v in range(1, n + 1):
            if value[v - 1] == 0 and pending[v] == 0:
                value[v - 1] = k
                pending[parents[v - 1]] -= 1
                extend(k + 1, pending)
                pending[parents[v - 1]] += 1
                value[v - 1] = 0

    extend(1, [len(c) for c in children])
    return out


def arborify(a) -> LinComb:
    """Linear map T ↦ Σ_{σ ∈ S_T} σ."""
    return lift(a).map(lambda t: LinComb.basis(Permutation()) if t.is_empty
                       else LinComb({s: 1 for s in linearizations(t)}))


def _cut_options(t: PlanarBinaryTree, is_root: bool) -> list[tuple[PlanarBinaryTree, tuple]]:
    """All (pruned tree, cut subtrees in label order) for admissible cuts inside t."""
    if t.is_empty:
        return [(EMPTY, ())]
    opts = []
    for lp, lc in _cut_options(t.left, False):
        for rp, rc in _cut_options(t.right, False):
            opts.append((PlanarBinaryTree(lp, rp), lc + rc))
    if not is_root:
        opts.append((EMPTY, (t,)))
    return opts


def _pbt_coproduct_basis(t: PlanarBinaryTree) -> LinComb:
    if t.is_empty:
        return LinComb.basis(Tensor((EMPTY, EMPTY)))
    acc = LinComb.basis(Tensor((EMPTY, t)))
    for pruned, cut in _cut_options(t, True):
        prod = LinComb.basis(EMPTY)
        for piece in cut:
            prod = pbt_product(prod, piece)
        acc = acc + LinComb({Tensor((pruned, x)): c for x, c in prod.items()})
    return acc


def pbt_coproduct(a) -> LinComb:
    """1⊗T + Σ_V T_V ⊗ (product of pruned subtrees in label order)."""
    return lift(a).map(_pbt_coproduct_basis)


# ---------------------------------------------------------------- rooted trees


class RootedTree:
    """Non-planar rooted tree with labeled vertices, kept in canonical form."""

    __slots__ = ("label", "children", "degree", "_key")

    def __init__(self, label: str = "x", children: Iterable["RootedTree"] = ()):
        label = str(label)
        if not label or any(ch in label for ch in "[], "):
            raise MalformedInput(f"bad vertex label {label!r}")
        kids = tuple(sorted(children, key=lambda c: c._key))
        self.label = label
        self.children = kids
        self.degree = 1 + sum(c.degree for c in kids)
        self._key = label if not kids else f"{label}[{','.join(c._key for c in kids)}]"

    def encode(self) -> str:
        return self._key

    def latex(self) -> str:
        return self._key

    def __eq__(self, other):
        return isinstance(other, RootedTree) and self._key == other._key

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"RootedTree({self._key})"


def parse_rooted_tree(s: str) -> RootedTree:
    pos = 0

    def walk():
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos] not in "[],":
            pos += 1
        label = s[start:pos]
        kids = []
        if pos < len(s) and s[pos] == "[":
            pos += 1
            kids.append(walk())
            while s[pos] == ",":
                pos += 1
                kids.append(walk())
            if s[pos] != "]":
                raise MalformedInput(f"bad tree string {s!r}")
            pos += 1
        return RootedTree(label, kids)

    try:
        t = walk()
    except IndexError as exc:
        raise MalformedInput(f"bad tree string {s!r}") from exc
    if pos != len(s):
        raise MalformedInput(f"trailing characters in {s!r}")
    return t


def leaf(label: str = "x") -> RootedTree:
    return RootedTree(label)


def chain(n: int, label: str = "x") -> RootedTree:
    t = RootedTree(label)
    for _ in range(n - 1):
        t = RootedTree(label, (t,))
    return t


class Forest(tuple):
    """Multiset of rooted trees in canonical order; the empty forest is the unit."""

    def __new__(cls, trees: Iterable[RootedTree] = ()):
        return tuple.__new__(cls, sorted(trees, key=lambda t: t._key))

    @property
    def degree(self) -> int:
        return sum(t.degree for t in self)

    def encode(self) -> str:
        return " ".join(t._key for t in self) if self else "1"

    def latex(self) -> str:
        return r"\,".join(t._key for t in self) if self else "1"

    def __repr__(self):
        return f"Forest({self.encode()})"


def parse_forest(s: str) -> Forest:
    s = s.strip()
    if s == "1":
        return Forest()
    return Forest(parse_rooted_tree(p) for p in s.split())


def _graft_all(t: RootedTree, u: RootedTree) -> list[RootedTree]:
    out = [RootedTree(u.label, u.children + (t,))]
    for i, c in enumerate(u.children):
        rest = u.children[:i] + u.children[i + 1:]
        for g in _graft_all(t, c):
            out.append(RootedTree(u.label, rest + (g,)))
    return out


@lru_cache(maxsize=None)
def _graft_basis(t: RootedTree, u: RootedTree) -> LinComb:
    acc: dict = {}
    for g in _graft_all(t, u):
        acc[g] = acc.get(g, 0) + 1
    return LinComb(acc)


def prelie_graft(a, b) -> LinComb:
    """a ▷ b: graft the root of a onto every vertex of b."""
    return bilinear(_graft_basis, a, b)


def brace_generic(ws: Sequence, v, prelie: Callable):
    """Symmetric brace {w₁ … w_n} v defined by the inductive rule

    {w₁…w_n}v = {w_n}({w₁…w_{n−1}}v) − Σ_i {w₁, …, {w_n}w_i, …, w_{n−1}}v

    for any pre-Lie product on vector-like elements.
    """
    ws = list(ws)
    if not ws:
        return v
    if len(ws) == 1:
        return prelie(ws[0], v)
    *head, last = ws
    result = prelie(last, brace_generic(head, v, prelie))
    for i in range(len(head)):
        modified = head[:i] + [prelie(last, head[i])] + head[i + 1:]
        result = result - brace_generic(modified, v, prelie)
    return result


@lru_cache(maxsize=None)
def _brace_basis(forest: Forest, v: RootedTree) -> LinComb:
    if not forest:
        return LinComb.basis(v)
    if len(forest) == 1:
        return _graft_basis(forest[0], v)
    head, last = forest[:-1], forest[-1]
    result = LinComb()
    for t, c in _brace_basis(Forest(head), v).items():
        result = result + _graft_basis(last, t).scale(c)
    for i in range(len(head)):
        rest = head[:i] + head[i + 1:]
        for t, c in _graft_basis(last, head[i]).items():
            result = result - _brace_basis(Forest(rest + (t,)), v).scale(c)
    return result


def brace(forest, v) -> LinComb:
    """{F}v on rooted trees, multilinear in a LinComb of forests and of trees."""
    return bilinear(_brace_basis, forest, v)


def brace_direct(forest: Forest, v: RootedTree) -> LinComb:
    """Graft every tree of the forest onto some vertex of v, all at once."""
    result: dict = {}
    for assignment in itertools.product(range(v.degree), repeat=len(forest)):
        t = _attach(v, list(zip(assignment, forest)), [0])
        result[t] = result.get(t, 0) + 1
    return LinComb(result)


def _attach(t: RootedTree, pending, counter) -> RootedTree:
    me = counter[0]
    counter[0] += 1
    kids = [_attach(c, pending, counter) for c in t.children]
    kids += [w for idx, w in pending if idx == me]
    return RootedTree(t.label, kids)


@lru_cache(maxsize=None)
def _gl_basis(f: Forest, g: Forest) -> LinComb:
    n = len(g)
    acc: dict = {}
    for assign in itertools.product(range(n + 1), repeat=len(f)):
        groups = [[] for _ in range(n + 1)]
        for tree, slot in zip(f, assign):
            groups[slot].append(tree)
        partial = {tuple(groups[0]): Fraction(1)}
        for j in range(n):
            braced = _brace_basis(Forest(groups[j + 1]), g[j])
            nxt: dict = {}
            for trees, c in partial.items():
                for t, ct in braced.items():
                    key = trees + (t,)
                    nxt[key] = nxt.get(key, 0) + c * ct
            partial = nxt
        for trees, c in partial.items():
            key = Forest(trees)
            acc[key] = acc.get(key, 0) + c
    return LinComb(acc)


def gl_product(a, b) -> LinComb:
    """Grossman–Larson product of forests."""
    return bilinear(_gl_basis, a, b)


def forest_product(a, b) -> LinComb:
    """Commutative product of forests (multiset union)."""
    return bilinear(lambda f, g: LinComb.basis(Forest(f + g)), a, b)


def _gl_coproduct_basis(f: Forest) -> LinComb:
    acc: dict = {}
    for mask in itertools.product((0, 1), repeat=len(f)):
        left = Forest(t for t, m in zip(f, mask) if m == 0)
        right = Forest(t for t, m in zip(f, mask) if m == 1)
        key = Tensor((left, right))
        acc[key] = acc.get(key, 0) + 1
    return LinComb(acc)


def gl_coproduct(a) -> LinComb:
    """Unshuffle coproduct: trees are primitive."""
    return lift(a).map(_gl_coproduct_basis)


def trees_to_forests(x: LinComb) -> LinComb:
    return x.map_basis(lambda t: Forest((t,)))


def _forest_series(s: TruncatedSeries) -> TruncatedSeries:
    return s.map(lambda v: trees_to_forests(v) if v and isinstance(next(iter(v.keys())), RootedTree) else v)


_UNIT = LinComb.basis(Forest())


def exp_circ(s: TruncatedSeries) -> TruncatedSeries:
    return series_exp(_forest_series(s), forest_product, _UNIT)


def log_circ(s: TruncatedSeries) -> TruncatedSeries:
    return series_log(_forest_series(s), forest_product, _UNIT)


def exp_star(s: TruncatedSeries) -> TruncatedSeries:
    return series_exp(_forest_series(s), gl_product, _UNIT)


def log_star(s: TruncatedSeries) -> TruncatedSeries:
    return series_log(_forest_series(s), gl_product, _UNIT)


def magnus_element(cutoff: int, label: str = "x") -> TruncatedSeries:
    """Unique solution of Ω = Σ_n (B_n/n!) {Ω^{∗n}} x, degree by degree."""
    if cutoff < 1:
        raise MalformedInput("magnus_element needs cutoff ≥ 1")
    x = leaf(label)
    comps = {1: LinComb.basis(x)}
    for d in range(2, cutoff + 1):
        omega = TruncatedSeries(d - 1, {k: trees_to_forests(v) for k, v in comps.items()})
        power = TruncatedSeries(d - 1, {0: _UNIT})
        total = LinComb()
        for n in range(1, d):
            power = power.mul(omega, gl_product)
            coeff = bernoulli(n) / factorial(n)
            if coeff:
                total = total + brace(power[d - 1], x).scale(coeff)
        comps[d] = total
    return TruncatedSeries(cutoff, comps, graded=True)


def magnus_via_logarithm(cutoff: int, label: str = "x") -> TruncatedSeries:
    """log∗(exp∘(x)) restricted to single-tree terms."""
    x = TruncatedSeries(cutoff, {1: LinComb.basis(leaf(label))})
    res = log_star(exp_circ(x))
    return res


@lru_cache(maxsize=None)
def rooted_trees(n: int, label: str = "x") -> tuple[RootedTree, ...]:
    """All rooted trees with n vertices (one label), by adding leaves."""
    if n < 1:
        return ()
    if n == 1:
        return (leaf(label),)
    seen = {}
    for t in rooted_trees(n - 1, label):
        for g in _graft_all(leaf(label), t):
            seen[g._key] = g
    return tuple(seen[k] for k in sorted(seen))


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def all_forests(n: int, label: str = "x") -> tuple[Forest, ...]:
    """All forests with n vertices in total, sorted by encoding."""
    found = set()
    for sizes in _partitions(n, n):
        for combo in itertools.product(*(rooted_trees(k, label) for k in sizes)):
            found.add(Forest(combo))
    return tuple(sorted(found, key=lambda f: f.encode()))
