"""Named verification suites driven by the CLI.

Each suite re-runs a family of identity checks at a moderate, deterministic
scale and reports one pass/fail line per property.  The pytest suite runs the
same identities at full acceptance scale; these are the operational smoke
checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import (
    divisors,
    enumerate_smooth,
    enumerate_smooth_squarefree,
    exact_sum,
    kernel,
    mobius,
    smooth_context,
    smooth_part,
    squarefree_smooth_part,
    totient,
    valuation,
)
from .decomp import (
    decompose_function,
    decompose_transform,
    irregular_series,
    null_expansion,
    null_expansion_product,
    wintner_average_decomposition,
)
from .expansions import local_expansion_flat, local_expansion_smooth
from .funclib import builtin, catalog_self_check, from_table
from .ramanujan import (
    csum_definition,
    csum_kluyver,
    csum_nonvanishing,
    orthogonality_divisor_indicator,
    ramanujan_sum,
    smooth_twisted_orthogonality,
)
from .transforms import (
    ippification_formula,
    mobius_switch_sum,
    restrict_smooth,
    restrict_smooth_squarefree,
    squarefree_multiply_transform,
)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def random_transform_table(rng: random.Random, *, support_bound: int = 50, points: int = 6, name: str = "random"):
    """A random finitely supported transform table with small rational values."""
    support = sorted(rng.sample(range(1, support_bound + 1), k=points))
    pairs = []
    for n in support:
        num = rng.choice([v for v in range(-9, 10) if v != 0])
        den = rng.randint(1, 9)
        pairs.append((n, Fraction(num, den)))
    return from_table(pairs, support_bound, as_transform=True, name=name)


def _suite_csum(seed: int) -> list[CheckResult]:
    out = []
    ok = all(
        csum_definition(q, a) == ramanujan_sum(q, a) == csum_kluyver(q, a)
        for q in range(1, 81)
        for a in range(-80, 81)
    )
    out.append(CheckResult("csum", "three formulas agree (q <= 80, |a| <= 80)", ok))
    ok = all(
        csum_nonvanishing(q, a) == (ramanujan_sum(q, a) != 0)
        for q in range(1, 151)
        for a in range(1, 151)
    )
    out.append(CheckResult("csum", "non-vanishing criterion (q, a <= 150)", ok))
    ok = all(
        sum(ramanujan_sum(p**K, a) for K in range(valuation(a, p) + 2)) == 0
        for a in range(1, 301)
        for p in (2, 3, 5, 7, 11, 13)
    )
    out.append(CheckResult("csum", "prime-power column telescopes to 0", ok))
    ok = all(
        abs(ramanujan_sum(q, a)) <= totient(q) for q in range(1, 121) for a in range(0, 121)
    )
    out.append(CheckResult("csum", "|c_q(a)| <= phi(q)", ok))
    return out


def _suite_orthogonality(seed: int) -> list[CheckResult]:
    out = []
    ok = all(
        orthogonality_divisor_indicator(q, a) == (1 if a % q == 0 else 0)
        for q in range(1, 101)
        for a in range(0, 201)
    )
    out.append(CheckResult("orthogonality", "divisor indicator (q <= 100, a <= 200)", ok))
    ok = True
    for P in (2, 3, 5):
        smooths = [n for n in enumerate_smooth(P, 40)]
        for q in smooths:
            for ell in smooths:
                expect = Fraction(1 if q == ell else 0)
                if smooth_twisted_orthogonality(q, ell, P) != expect:
                    ok = False
    out.append(CheckResult("orthogonality", "smooth-twisted inner product = [q = ell]", ok))
    return out


def _suite_local_expansion(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    ok = True
    for i in range(10):
        F = random_transform_table(rng, name=f"r{i}")
        for P in (2, 3, 5):
            for a in enumerate_smooth_squarefree(P):
                if local_expansion_flat(F, P, a) != F(a):
                    ok = False
    out.append(CheckResult("local-expansion", "square-free smooth arguments reproduce F", ok))
    omega_fn = builtin("omega")
    ok = all(
        local_expansion_smooth(omega_fn, P, a) == omega_fn(smooth_part(a, P))
        for P in (2, 3, 5)
        for a in range(1, 501)
    )
    out.append(CheckResult("local-expansion", "omega expansion exact (a <= 500)", ok))
    ok = not catalog_self_check(500)
    out.append(CheckResult("local-expansion", "catalog transforms invert correctly", ok))
    return out


def _suite_wod(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    ok_t = ok_f = True
    for i in range(6):
        F = random_transform_table(rng, name=f"wod{i}")
        for P in (2, 3, 5):
            for d in range(1, 21):
                if decompose_transform(F, P, d, 64).residual != 0:
                    ok_t = False
            for a in (n for n in enumerate_smooth(P, 64)):
                if decompose_function(F, P, a, 64).residual != 0:
                    ok_f = False
    return [
        CheckResult("wod", "transform decomposition residual 0 (finite support)", ok_t),
        CheckResult("wod", "function decomposition residual 0 (finite support)", ok_f),
    ]


def _suite_null_function(seed: int) -> list[CheckResult]:
    ok_signed = ok_abs = True
    for a in range(1, 101):
        for P in (2, 3, 5, 7, 11, 13):
            signed, absolute = null_expansion(a, P)
            if signed != 0:
                ok_signed = False
            if absolute != null_expansion_product(a, P):
                ok_abs = False
    return [
        CheckResult("null-function", "signed smooth sums vanish", ok_signed),
        CheckResult("null-function", "absolute sums match the prime-power product", ok_abs),
    ]


def _suite_inertia(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    ok = True
    for i in range(6):
        base = 3
        support_pool = [n for n in enumerate_smooth(base, 200)]
        support = sorted(rng.sample(support_pool, k=5))
        pairs = [(n, Fraction(rng.randint(1, 9), rng.randint(1, 9))) for n in support]
        F = from_table(pairs, 200, as_transform=True, name=f"inertia{i}")
        for d in range(1, 31):
            values = {
                P: irregular_series(F, P, d, 256).value for P in (3, 5, 7, 11)
            }
            if len(set(values.values())) != 1:
                ok = False
    return [CheckResult("inertia", "irregular series constant in P above the support bound", ok)]


def _suite_lemmas(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    fns = [builtin("id"), builtin("omega"), builtin("sigma_over_id")]
    fns += [random_transform_table(rng, name=f"lem{i}") for i in range(4)]
    out = []
    ok = all(ippification_formula(F, a) == F(kernel(a)) for F in fns for a in range(1, 301))
    out.append(CheckResult("lemmas", "kernel formula: divisor sum hits F(kernel(a))", ok))
    ok = all(
        mobius_switch_sum(F, P, a) == F(smooth_part(a, P))
        for F in fns
        for P in (2, 3, 5)
        for a in range(1, 301)
    )
    out.append(CheckResult("lemmas", "switched sum hits the smooth restriction", ok))
    ok = all(
        restrict_smooth_squarefree(F, P, a) == F(squarefree_smooth_part(a, P))
        for F in fns
        for P in (2, 3, 5)
        for a in range(1, 301)
    )
    out.append(CheckResult("lemmas", "square-free smooth restriction", ok))
    ok = True
    for F in fns:
        for d in range(1, 301):
            direct = exact_sum(
                mobius(d // e) * (mobius(e) ** 2) * F(e) for e in divisors(d)
            )
            if squarefree_multiply_transform(F, d) != direct:
                ok = False
    out.append(CheckResult("lemmas", "two-case transform formula matches inversion", ok))
    return out


def _suite_appendix(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    ok_exact = True
    for i in range(6):
        support = sorted(rng.sample(range(1, 13), k=4))
        values = {n: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for n in support}
        seq = lambda n, _v=values: _v.get(n, Fraction(0))
        for P in (2, 3, 5):
            for d in range(1, 13):
                row = wintner_average_decomposition(seq, P, d, 64, support=support)
                if row.residual != 0:
                    ok_exact = False
    harmonic = lambda n: Fraction(1, n)
    row = wintner_average_decomposition(harmonic, 3, 1, 20000)
    ok_trunc = abs(row.residual) <= Fraction(1, 1000)
    return [
        CheckResult("appendix", "average decomposition exact for finite sequences", ok_exact),
        CheckResult("appendix", "harmonic sequence residual small at truncation", ok_trunc),
    ]


SUITES = {
    "csum": _suite_csum,
    "orthogonality": _suite_orthogonality,
    "local-expansion": _suite_local_expansion,
    "wod": _suite_wod,
    "null-function": _suite_null_function,
    "inertia": _suite_inertia,
    "lemmas": _suite_lemmas,
    "appendix": _suite_appendix,
}


def run_suite(name: str, seed: int = 0) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}")
    return SUITES[name](seed)
