"""Command-line front end: compute expansions and run identity suites.

Exit status: 0 when every reported check has zero residual, 1 on the first
nonzero residual, 2 on usage errors, 3 when a request exceeds a cap.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Any, Callable

from . import hopf
from .core import (
    CutoffError,
    LinComb,
    MalformedInput,
    TruncatedSeries,
    UnsupportedInstance,
    format_fraction,
    to_latex,
    to_records,
    to_text,
)
from .permutations import (
    all_permutations,
    bch_element,
    bch_lie_coefficient,
    descent_log,
    lie_basis_coeffs,
    mr_coproduct,
    mr_product,
)
from .rota_baxter import (
    INSTANCE_NAMES,
    atkinson_checks,
    atkinson_solve,
    bogoliubov,
    bogoliubov_checks,
    bohnenblust_spitzer,
    canonical_cycles,
    double_product_checks,
    get_instance,
    iota_time_ordered,
    laurent_minimal_subtraction,
    magnus_checks,
    modified_map_checks,
    polynomial_integration,
    postlie_checks,
    prelie_checks,
    prelie_magnus,
    prelie_magnus_generic,
    quasi_shuffle_axioms,
    rb_check,
    sequence_summation,
    shuffle_axioms,
    spitzer_algebra_checks,
    spitzer_check,
    triangular_projector,
)
from .rota_baxter.carriers import Matrix, Seq, random_laurent
from .rota_baxter.instances import is_zero
from .rota_baxter.series import bernoulli_form_coefficients, log_series_coefficients
from .trees import (
    all_forests,
    all_pbts,
    arborify,
    gl_coproduct,
    gl_product,
    leaf,
    linearizations,
    magnus_element,
    magnus_via_logarithm,
    pbt_coproduct,
    pbt_product,
    prelie_graft,
)
from .words import (
    free_shuffle_basis,
    monomial_alphabet,
    parse_word,
    quasi_shuffle,
    shuffle,
)

OUTPUT_DIR_ENV = "CHRONOALG_OUTPUT_DIR"

CAPS = {
    "bch": 8,
    "magnus": 6,
    "magnus-element": 5,
    "spitzer": 8,
    "bohnenblust": 7,
    "atkinson": 8,
    "bogoliubov": 6,
    "basis": 6,
    "verify": 6,
}

RANDOMIZED = {"magnus", "spitzer", "bohnenblust", "atkinson", "bogoliubov", "verify"}

DEFAULT_INSTANCE = {
    "magnus": "triangular",
    "spitzer": "summation",
    "bohnenblust": "triangular",
    "atkinson": "triangular",
}

SUITES = ("bch", "hopf", "trees", "words", "rb", "series")


# ---------------------------------------------------------------- rendering


def _frac(c: Fraction, fmt: str) -> str:
    if fmt == "latex":
        return str(c.numerator) if c.denominator == 1 else f"\\frac{{{c.numerator}}}{{{c.denominator}}}"
    return str(c.numerator) if c.denominator == 1 else format_fraction(c)


def payload(v: Any) -> Any:
    """JSON-ready form: LinCombs become records, containers become lists."""
    if isinstance(v, LinComb):
        return to_records(v)
    if isinstance(v, Matrix):
        return [[payload(a) for a in row] for row in v.rows]
    if isinstance(v, (Seq, list, tuple)):
        return [payload(a) for a in v]
    if isinstance(v, (int, Fraction)):
        return format_fraction(Fraction(v))
    return str(v)


def render(v: Any, fmt: str) -> str:
    if isinstance(v, LinComb):
        return to_latex(v) if fmt == "latex" else to_text(v)
    if isinstance(v, Matrix):
        if fmt == "latex":
            body = r" \\ ".join(" & ".join(render(a, fmt) for a in row) for row in v.rows)
            return r"\begin{pmatrix} " + body + r" \end{pmatrix}"
        return "[" + "; ".join(", ".join(render(a, fmt) for a in row) for row in v.rows) + "]"
    if isinstance(v, Seq):
        inner = ", ".join(render(a, fmt) for a in v)
        return rf"\left({inner}\right)" if fmt == "latex" else f"({inner})"
    if isinstance(v, (int, Fraction)):
        return _frac(Fraction(v), fmt)
    return str(v)


class Report:
    def __init__(self, header: dict, fmt: str):
        self.header = header
        self.fmt = fmt
        self.objects: list[tuple[str, Any]] = []
        self.checks: list[tuple[str, bool, Any]] = []

    def emit(self, name: str, value: Any) -> None:
        if isinstance(value, TruncatedSeries):
            for d, comp in value.components().items():
                self.objects.append((f"{name}[{d}]", comp))
        else:
            self.objects.append((name, value))

    def check(self, name: str, residual: Any) -> None:
        ok = residual is True or (residual is not False and is_zero(residual))
        self.checks.append((name, ok, residual))

    def checks_from(self, prefix: str, residuals: dict) -> None:
        for k, v in residuals.items():
            self.check(f"{prefix}:{k}" if prefix else k, v)

    def first_failure(self):
        return next(((n, r) for n, ok, r in self.checks if not ok), None)

    def render(self) -> str:
        failure = self.first_failure()
        status = "ok" if failure is None else "failed"
        if self.fmt == "json":
            doc = {
                "command": self.header,
                "objects": [{"name": n, "value": payload(v)} for n, v in self.objects],
                "checks": [{"name": n, "ok": ok} for n, ok, _ in self.checks],
                "status": status,
            }
            if failure is not None:
                doc["first_failure"] = {"name": failure[0], "residual": payload(failure[1])}
            return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"
        head = " ".join(f"{k}={v}" for k, v in self.header.items())
        if self.fmt == "latex":
            lines = [f"% chronoalg {head}"]
            lines += [f"{n} &= {render(v, 'latex')} \\\\" for n, v in self.objects]
            lines += [f"% check {n}: {'ok' if ok else 'FAILED'}" for n, ok, _ in self.checks]
            lines.append(f"% status: {status} ({len(self.checks)} checks)")
        else:
            lines = [f"# chronoalg {head}"]
            lines += [f"{n} = {render(v, 'text')}" for n, v in self.objects]
            lines += [f"check {n}: {'ok' if ok else 'FAILED'}" for n, ok, _ in self.checks]
            lines.append(f"status: {status} ({len(self.checks)} checks)")
        if failure is not None:
            prefix = "% " if self.fmt == "latex" else ""
            lines.append(f"{prefix}first nonzero residual at {failure[0]}: {render(failure[1], 'text')}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- verbs


def _instance(args):
    name = args.instance or DEFAULT_INSTANCE.get(args.verb, "triangular")
    return get_instance(name, args.size)


def cmd_bch(args, rep: Report) -> None:
    n = args.order
    oracle = descent_log(n).components() if n <= 6 else {}
    for d in range(1, n + 1):
        d_form, eq_form = bch_element(d, both=True)
        rep.emit(f"bch[{d}]", d_form)
        rep.check(f"closed-forms[{d}]", d_form - eq_form)
        if d in oracle:
            rep.check(f"log-oracle[{d}]", d_form - oracle[d])


def _free_prelie_terms(order: int):
    x = LinComb.basis(leaf())
    return prelie_magnus_generic(prelie_graft, x, order, LinComb())


def cmd_magnus(args, rep: Report) -> None:
    rng = random.Random(args.seed)
    inst = _instance(args)
    x = inst.sample(rng)
    rep.emit("free-prelie-omega", _free_prelie_terms(args.order))
    rep.emit("x", x)
    rep.emit("omega", prelie_magnus(inst, x, args.order))
    rep.checks_from("magnus", magnus_checks(inst, x, args.order))


def cmd_magnus_element(args, rep: Report) -> None:
    computed = magnus_element(args.order)
    rep.emit("magnus-element", computed)
    oracle = magnus_via_logarithm(args.order)
    from .trees import trees_to_forests

    for d in range(1, args.order + 1):
        rep.check(f"log-exp-route[{d}]", trees_to_forests(computed[d]) - oracle[d])


def _pair(args):
    if len(args.words) != 2:
        raise MalformedInput("give exactly two words, e.g. \"(a,b)\" \"(c)\"")
    return parse_word(args.words[0]), parse_word(args.words[1])


def cmd_shuffle(args, rep: Report) -> None:
    u, v = _pair(args)
    prod = shuffle(u, v)
    rep.emit("shuffle", prod)
    rep.check("commutative", prod - shuffle(v, u))


def cmd_quasishuffle(args, rep: Report) -> None:
    u, v = _pair(args)
    gens = sorted({g for w in (u, v) for a in w for g in a.split(".")})
    alphabet = monomial_alphabet(gens, args.theta)
    prod = quasi_shuffle(u, v, args.theta, alphabet)
    rep.emit("quasishuffle", prod)
    rep.check("commutative", prod - quasi_shuffle(v, u, args.theta, alphabet))


def cmd_spitzer(args, rep: Report) -> None:
    rng = random.Random(args.seed)
    inst = _instance(args)
    x = inst.sample(rng)
    rep.emit("x", x)
    rep.checks_from("spitzer", spitzer_check(inst, x, args.order))
    coeffs = log_series_coefficients(inst.theta, args.order)
    rep.emit("log-series-coefficients", LinComb({f"F^{n}": c for n, c in enumerate(coeffs)}))
    rep.check("bernoulli-form", bernoulli_form_coefficients(inst.theta, args.order) == coeffs)


def cmd_bohnenblust(args, rep: Report) -> None:
    rng = random.Random(args.seed)
    inst = _instance(args)
    Fs = [inst.sample(rng) for _ in range(args.order)]
    res = bohnenblust_spitzer(inst, Fs)
    rep.checks_from("bohnenblust", res)


def cmd_atkinson(args, rep: Report) -> None:
    rng = random.Random(args.seed)
    inst = _instance(args)
    x = inst.sample(rng)
    left, right = atkinson_solve(inst, x, args.order)
    rep.emit("x", x)
    rep.emit("left", left)
    rep.emit("right", right)
    rep.checks_from("atkinson", atkinson_checks(inst, x, args.order))


def _graded_laurent_input(rng, order):
    return {n: random_laurent(rng, n, pole=n, regular=2, min_g=n) for n in range(1, order + 1)}


def cmd_bogoliubov(args, rep: Report) -> None:
    rng = random.Random(args.seed)
    inst = laurent_minimal_subtraction(args.order)
    xs = _graded_laurent_input(rng, args.order)
    f, hinv = bogoliubov(inst, xs, args.order)
    rep.emit("f", f)
    rep.emit("h-inverse", hinv)
    rep.checks_from("bogoliubov", bogoliubov_checks(inst, xs, args.order))


def cmd_basis(args, rep: Report) -> None:
    for k in range(1, args.order + 1):
        exprs, _, _, rank = free_shuffle_basis(k)
        rep.emit(f"expressions[{k}]", len(exprs))
        rep.emit(f"rank[{k}]", rank)
        rep.check(f"independent[{k}]", rank == len(exprs))


# ---------------------------------------------------------------- verify suites


def suite_bch(order: int, rng, rep: Report) -> None:
    top = min(order, 6)
    oracle = descent_log(top)
    for n in range(1, top + 1):
        d_form, eq_form = bch_element(n, both=True)
        rep.check(f"bch:closed-forms[{n}]", d_form - eq_form)
        rep.check(f"bch:log-oracle[{n}]", d_form - oracle[n])
        if 2 <= n <= 5:
            coeffs = lie_basis_coeffs(d_form, n)
            expected = {s: bch_lie_coefficient(s) for s in all_permutations(n - 1)}
            rep.check(f"bch:lie-coefficients[{n}]", coeffs == expected)


def suite_hopf(order: int, rng, rep: Report) -> None:
    for n in range(min(order, 4) + 1):
        perms = all_permutations(n)
        rep.check(f"hopf:mr-coassociative[{n}]",
                  all(not hopf.coassociativity(mr_coproduct, s) for s in perms))
        rep.check(f"hopf:mr-bialgebra[{n}]", all(
            not hopf.compatibility(mr_coproduct, mr_product, s, t)
            for a in range(n + 1) for s in all_permutations(a) for t in all_permutations(n - a)))
    for n in range(min(order, 5) + 1):
        rep.check(f"hopf:tree-coassociative[{n}]",
                  all(not hopf.coassociativity(pbt_coproduct, t) for t in all_pbts(n)))
        rep.check(f"hopf:tree-coproduct-flip[{n}]", all(
            not hopf.intertwining(arborify, pbt_coproduct, mr_coproduct, t, flipped=True)
            for t in all_pbts(n)))
    for n in range(min(order, 4) + 1):
        rep.check(f"hopf:gl-bialgebra[{n}]", all(
            not hopf.compatibility(gl_coproduct, gl_product, f, g)
            for a in range(n + 1) for f in all_forests(a) for g in all_forests(n - a)))


def suite_trees(order: int, rng, rep: Report) -> None:
    top = min(order, 6)
    for n in range(top + 1):
        rep.check(f"trees:linear-extensions[{n}]",
                  sum(len(linearizations(t)) for t in all_pbts(n)) == factorial(n))
        rep.check(f"trees:arborification-morphism[{n}]", all(
            not (arborify(pbt_product(t, u)) - mr_product(arborify(t), arborify(u)))
            for a in range(n + 1) for t in all_pbts(a) for u in all_pbts(n - a)))
    top = min(order, 5)
    from .trees import trees_to_forests

    computed, oracle = magnus_element(top), magnus_via_logarithm(top)
    for d in range(1, top + 1):
        rep.check(f"trees:magnus-element[{d}]", trees_to_forests(computed[d]) - oracle[d])


def suite_words(order: int, rng, rep: Report) -> None:
    for k in range(1, min(order, 5) + 1):
        exprs, _, _, rank = free_shuffle_basis(k)
        rep.check(f"words:free-shuffle-rank[{k}]", rank == len(exprs))
    letters = ["a", "b", "c"]
    alphabet = monomial_alphabet(letters, 1)
    for _ in range(5):
        u, v, w = (parse_word("(" + ",".join(rng.choice(letters) for _ in range(rng.randint(1, 2))) + ")")
                   for _ in range(3))
        rep.check(f"words:shuffle-associative{u.encode()}{v.encode()}{w.encode()}",
                  shuffle(shuffle(u, v), w) - shuffle(u, shuffle(v, w)))
        qs = lambda a, b: quasi_shuffle(a, b, 1, alphabet)
        rep.check(f"words:quasishuffle-associative{u.encode()}{v.encode()}{w.encode()}",
                  qs(qs(u, v), w) - qs(u, qs(v, w)))


def _verify_instances(size: int):
    return [
        sequence_summation(3),
        get_instance("summation-nc", 3),
        triangular_projector(size),
        triangular_projector(size, Fraction(-2, 3)),
        laurent_minimal_subtraction(3),
        polynomial_integration(),
        polynomial_integration(2),
        get_instance("free", 3),
    ]


def suite_rb(order: int, rng, rep: Report, samples: int = 20, size: int = 3) -> None:
    for inst in _verify_instances(size):
        bad: dict[str, Any] = {}
        for _ in range(samples):
            x, y, z = inst.sample(rng), inst.sample(rng), inst.sample(rng)
            groups = [rb_check(inst, x, y), double_product_checks(inst, x, y, z),
                      prelie_checks(inst, x, y, z), postlie_checks(inst, x, y, z),
                      modified_map_checks(inst, x, y), quasi_shuffle_axioms(inst, x, y, z)]
            if inst.theta == 0:
                groups.append({f"shuffle-{k}": v for k, v in shuffle_axioms(inst, x, y, z).items()})
            if inst.theta == 1:
                groups.append({f"link-{k}": v
                               for k, v in shuffle_axioms(inst, x, y, z, "link").items()})
            for g in groups:
                for k, v in g.items():
                    if k not in bad or is_zero(bad[k]):
                        bad[k] = v
        for k in sorted(bad):
            rep.check(f"rb:{inst.describe()}:{k}", bad[k])


def suite_series(order: int, rng, rep: Report) -> None:
    for inst in _verify_instances(3):
        x = inst.sample(rng)
        res = atkinson_checks(inst, x, order)
        rep.check(f"series:atkinson:{inst.describe()}", all(is_zero(v) for v in res.values()))
    for inst in (triangular_projector(3), sequence_summation(4), polynomial_integration()):
        x = inst.sample(rng)
        res = magnus_checks(inst, x, min(order, 5))
        rep.check(f"series:magnus:{inst.describe()}", all(is_zero(v) for v in res.values()))
    inst = sequence_summation(4)
    rep.checks_from("series:spitzer", spitzer_check(inst, inst.sample(rng), order))
    lam = laurent_minimal_subtraction(order)
    rep.checks_from("series:bogoliubov",
                    bogoliubov_checks(lam, _graded_laurent_input(rng, order), order))
    for inst in (triangular_projector(3), sequence_summation(3)):
        Fs = [inst.sample(rng) for _ in range(min(order, 5))]
        rep.checks_from(f"series:bohnenblust:{inst.describe()}", bohnenblust_spitzer(inst, Fs))
    for n in range(1, 6):
        rep.check(f"series:canonical-cycles[{n}]", all(
            canonical_cycles(p).permutation() == p for p in all_permutations(n)))
    rep.check("series:spitzer-algebra", all(
        is_zero(v) for v in spitzer_algebra_checks(min(order, 5)).values()))
    inst = polynomial_integration(2)
    vs = [inst.sample(rng) for _ in range(min(order, 4))]
    for n in range(1, len(vs) + 1):
        rep.check(f"series:time-ordered[{n}]", iota_time_ordered(inst, vs[:n]))


def cmd_verify(args, rep: Report) -> None:
    rng = random.Random(args.seed)
    chosen = SUITES if args.suite == "all" else (args.suite,)
    for name in chosen:
        fn = globals()[f"suite_{name}"]
        if name == "rb":
            fn(args.order, rng, rep, samples=args.samples, size=args.size)
        else:
            fn(args.order, rng, rep)


COMMANDS: dict[str, Callable] = {
    "bch": cmd_bch,
    "magnus": cmd_magnus,
    "magnus-element": cmd_magnus_element,
    "shuffle": cmd_shuffle,
    "quasishuffle": cmd_quasishuffle,
    "spitzer": cmd_spitzer,
    "bohnenblust": cmd_bohnenblust,
    "atkinson": cmd_atkinson,
    "bogoliubov": cmd_bogoliubov,
    "verify": cmd_verify,
    "basis": cmd_basis,
}


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    caps = ", ".join(f"{k} <= {v}" for k, v in CAPS.items())
    parser = argparse.ArgumentParser(
        prog="chronoalg",
        description="Exact expansions and identity checks for iterated integrals and Rota-Baxter algebras.",
        epilog=(f"Order caps: {caps}. Tree degree caps: magnus element 5, arborification 6. "
                f"Instances: {', '.join(INSTANCE_NAMES)}. Set {OUTPUT_DIR_ENV} to also write "
                "each report to that directory. Exit codes: 0 all checks pass, 1 identity "
                "failure, 2 usage error, 3 cap exceeded."),
    )
    parser.add_argument("verb", choices=sorted(COMMANDS))
    parser.add_argument("words", nargs="*",
                        help="two words for shuffle/quasishuffle; suite name for verify")
    parser.add_argument("--order", type=int, default=3, help="expansion order or cutoff")
    parser.add_argument("--instance", choices=INSTANCE_NAMES, default=None)
    parser.add_argument("--size", type=int, default=3, help="matrix size or sequence length")
    parser.add_argument("--seed", type=int, default=None,
                        help="RNG seed; required for randomized verbs")
    parser.add_argument("--theta", type=Fraction, default=Fraction(1),
                        help="weight for quasishuffle")
    parser.add_argument("--samples", type=int, default=20, help="random samples per instance (verify rb)")
    parser.add_argument("--format", choices=("text", "json", "latex"), default="text")
    parser.add_argument("--output-dir", default=None,
                        help=f"also write the report here (default: ${OUTPUT_DIR_ENV})")
    return parser


def _validate(args, parser) -> None:
    if args.order < 1:
        parser.error("--order must be at least 1")
    if args.size < 1:
        parser.error("--size must be at least 1")
    if args.verb in RANDOMIZED and args.seed is None:
        parser.error(f"{args.verb} is randomized; --seed is required")
    if args.verb == "verify":
        if len(args.words) > 1:
            parser.error("verify takes at most one suite name")
        args.suite = args.words[0] if args.words else "all"
        if args.suite != "all" and args.suite not in SUITES:
            parser.error(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    elif args.verb not in ("shuffle", "quasishuffle") and args.words:
        parser.error(f"{args.verb} takes no positional arguments")
    cap = CAPS.get(args.verb)
    if cap is not None and args.order > cap:
        raise CutoffError(f"{args.verb} order {args.order} exceeds the cap {cap}")


def _header(args) -> dict:
    h = {"verb": args.verb}
    if args.verb == "verify":
        h["suite"] = args.suite
    elif args.words:
        h["words"] = " ".join(args.words)
    if args.verb not in ("shuffle", "quasishuffle"):
        h["order"] = args.order
    if args.verb in DEFAULT_INSTANCE:
        h["instance"] = args.instance or DEFAULT_INSTANCE[args.verb]
        h["size"] = args.size
    if args.seed is not None:
        h["seed"] = args.seed
    if args.verb == "quasishuffle":
        h["theta"] = str(args.theta)
    return h


def _write_file(args, text: str) -> None:
    out_dir = args.output_dir or os.environ.get(OUTPUT_DIR_ENV)
    if not out_dir:
        return
    ext = {"text": "txt", "json": "json", "latex": "tex"}[args.format]
    stem = args.verb + (f"-{args.suite}" if args.verb == "verify" else "")
    path = Path(out_dir) / f"{stem}-order{args.order}.{ext}"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args, parser)
        rep = Report(_header(args), args.format)
        COMMANDS[args.verb](args, rep)
    except CutoffError as exc:
        print(f"chronoalg: cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (MalformedInput, UnsupportedInstance) as exc:
        print(f"chronoalg: {exc}", file=sys.stderr)
        return 2
    text = rep.render()
    sys.stdout.write(text)
    _write_file(args, text)
    return 0 if rep.first_failure() is None else 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
