"""Arithmetic functions as first-class values and their divisor transforms.

An `ArithFn` bundles an exact evaluation oracle, an optional exact oracle for
its Eratosthenes transform F' (the Mobius inverse under divisor summation),
and declared trait flags.  On top of that live the coefficient functionals:
Wintner and Carmichael coefficients in global, P-smooth, and square-free
P-smooth flavors, plus the partial-sum difference diagnostics relating them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .arith import (
    Rational,
    _check_positive,
    divisors,
    enumerate_smooth,
    enumerate_smooth_squarefree,
    exact_sum,
    is_squarefree,
    kernel,
    mobius,
    omega,
    smooth_context,
    smooth_part,
    squarefree_smooth_part,
    totient,
)
from .ramanujan import csum_table, ramanujan_sum
from .series import Partial, exact_partial, traced_sum


@dataclass(frozen=True)
class TransformSupport:
    """Declared support class of F': 'unknown', 'squarefree', 'finite', or 'smooth'."""

    kind: str
    elements: tuple[int, ...] = ()
    prime: int = 0


UNKNOWN_SUPPORT = TransformSupport("unknown")
SQUAREFREE_SUPPORT = TransformSupport("squarefree")


def finite_support(elements: Iterable[int]) -> TransformSupport:
    return TransformSupport("finite", elements=tuple(sorted(set(elements))))


def smooth_support(P: int) -> TransformSupport:
    return TransformSupport("smooth", prime=P)


class ArithFn:
    """An arithmetic function with exact rational values.

    eval_fn must return an exact value (int or Fraction) for every n >= 1.
    transform_fn, when given, must be the exact Eratosthenes transform:
    F(n) == sum of transform_fn(d) over d | n.  Without it, F' is computed
    by Mobius inversion and memoized.

    smooth_transform_fn(P), when given, returns the finite list of P-smooth
    d with F'(d) != 0 (a superset is fine); it unlocks exact, untruncated
    P-smooth coefficient sums.

    Both memo tables are insert-only caches of pure values, so instances are
    safe to share across threads.
    """

    def __init__(
        self,
        name: str,
        eval_fn: Callable[[int], Rational],
        transform_fn: Optional[Callable[[int], Rational]] = None,
        *,
        is_ipp: bool = False,
        is_nsl: bool = False,
        transform_support: TransformSupport = UNKNOWN_SUPPORT,
        smooth_transform_fn: Optional[Callable[[int], Sequence[int]]] = None,
    ):
        self.name = name
        self._eval_fn = eval_fn
        self._transform_fn = transform_fn
        self.is_ipp = is_ipp
        self.is_nsl = is_nsl
        self.transform_support = transform_support
        self._smooth_transform_fn = smooth_transform_fn
        self._eval_memo: dict[int, Fraction] = {}
        self._transform_memo: dict[int, Fraction] = {}
        self._aux: dict = {}

    def __repr__(self) -> str:
        return f"ArithFn({self.name!r})"

    def __call__(self, n: int) -> Fraction:
        _check_positive(n)
        memo = self._eval_memo
        v = memo.get(n)
        if v is None:
            v = Fraction(self._eval_fn(n))
            memo[n] = v
        return v

    def transform(self, d: int) -> Fraction:
        """F'(d), from the stored oracle or by Mobius inversion."""
        _check_positive(d, "d")
        memo = self._transform_memo
        v = memo.get(d)
        if v is None:
            if self._transform_fn is not None:
                v = Fraction(self._transform_fn(d))
            else:
                v = exact_sum(mobius(d // e) * self(e) for e in divisors(d))
            memo[d] = v
        return v

    def finite_transform_support(self) -> Optional[tuple[int, ...]]:
        if self.transform_support.kind == "finite":
            return self.transform_support.elements
        return None

    def smooth_transform_support(self, P: int) -> Optional[tuple[int, ...]]:
        """Finite support of F' restricted to (P), when known."""
        if self._smooth_transform_fn is not None:
            return tuple(sorted(self._smooth_transform_fn(P)))
        supp = self.finite_transform_support()
        if supp is not None:
            ctx = smooth_context(P)
            return tuple(d for d in supp if ctx.is_smooth(d))
        return None


def eratosthenes_transform(F: ArithFn, d: int) -> Fraction:
    """F'(d): the unique G with F(n) = sum of G(e) over e | n."""
    return F.transform(d)


def ippify(F: ArithFn) -> ArithFn:
    """The function a -> F(kernel(a)); idempotent on functions already
    insensitive to prime powers."""
    if F.is_ipp:
        return F
    return ArithFn(
        f"ippified({F.name})",
        lambda a: F(kernel(a)),
        is_ipp=True,
        is_nsl=F.is_nsl,
        transform_support=SQUAREFREE_SUPPORT,
    )


def ippification_formula(F: ArithFn, a: int) -> Fraction:
    """Closed divisor-sum form of F(kernel(a)): sum of mu^2(t) F(t) over
    t | a with kernel(a/t) | t."""
    _check_positive(a, "a")
    total = Fraction(0)
    for t in divisors(a):
        if is_squarefree(t) and t % kernel(a // t) == 0:
            total += F(t)
    return total


def restrict_smooth(F: ArithFn, P: int, a: int) -> Fraction:
    """The (P)-restriction F_(P)(a) = sum of F'(d) over P-smooth d | a.

    The P-smooth divisors of a are exactly the divisors of its smooth part,
    so this equals F evaluated at the smooth part -- which is how it is
    computed.  The divisor-sum and switched-sum routes are kept as oracles
    in the test suite.
    """
    return F(smooth_part(a, P))


def restrict_smooth_squarefree(F: ArithFn, P: int, a: int) -> Fraction:
    """sum of F'(d) over square-free P-smooth d | a == F at the product of
    the distinct primes p <= P dividing a."""
    return F(squarefree_smooth_part(a, P))


def mobius_switch_sum(F: ArithFn, P: int, a: int) -> Fraction:
    """The switched route to F_(P)(a): sum F(t) over P-smooth t | a whose
    cofactor a/t is P-sifted.  Exactly one t contributes."""
    ctx = smooth_context(P)
    return exact_sum(F(t) for t in divisors(a) if ctx.is_smooth(t) and ctx.is_sifted(a // t))


def squarefree_multiply_transform(F: ArithFn, d: int) -> Fraction:
    """(mu^2 * F)'(d) via the two-case closed formula.

    Square-free d: mu(d) * sum of mu(t) F(t) over t | d.  Non-square-free
    but cube-free d: a coprimality-filtered Mobius sum over t | kernel(d).
    Vanishes whenever d is not cube-free.
    """
    _check_positive(d, "d")
    if is_squarefree(d):
        return mobius(d) * exact_sum(mobius(t) * F(t) for t in divisors(d))
    kd = kernel(d)
    body = d // kd
    mu_body = mobius(body)
    if mu_body == 0:
        return Fraction(0)  # not cube-free
    from math import gcd

    total = exact_sum(
        mobius(kd // t) * F(t) for t in divisors(kd) if gcd(kd // t, body) == 1
    )
    return mu_body * total


# ---------------------------------------------------------------------------
# Coefficient functionals
# ---------------------------------------------------------------------------


def wintner_coefficient(F: ArithFn, q: int, x: int) -> Partial:
    """sum over d ≡ 0 (mod q) of F'(d)/d, truncated at d <= x.

    Exact (no truncation) when the transform support is declared finite.
    """
    _check_positive(q, "q")
    _check_positive(x, "x")
    supp = F.finite_transform_support()
    if supp is not None:
        ds = [d for d in supp if d % q == 0]
        value = exact_sum(F.transform(d) / d for d in ds)
        return exact_partial(value, cutoff=max([x, *ds]))
    pairs = ((d, F.transform(d) / d) for d in range(q, x + 1, q))
    value, trace = traced_sum(pairs, x)
    return Partial(value=value, cutoff=x, trace=trace)


def smooth_wintner_coefficient(F: ArithFn, P: int, q: int, x: Optional[int] = None) -> Partial:
    """P-smooth Wintner coefficient: sum of F'(d)/d over P-smooth d ≡ 0 (mod q).

    Exact whenever the (P)-restricted transform support is finite (declared
    finite tables, prime-indicator transforms, ...); otherwise truncated at
    x, which is then required.  Identically zero for q outside (P).
    """
    _check_positive(q, "q")
    supp = F.smooth_transform_support(P)
    if supp is not None:
        ds = [d for d in supp if d % q == 0]
        value = exact_sum(F.transform(d) / d for d in ds)
        return exact_partial(value, cutoff=max([x or 1, *ds]))
    if x is None:
        raise ValueError(
            f"{F.name}: (P)-restricted transform support unknown, a cutoff x is required"
        )
    pairs = ((d, F.transform(d) / d) for d in enumerate_smooth(P, x) if d % q == 0)
    value, trace = traced_sum(pairs, x)
    return Partial(value=value, cutoff=x, trace=trace)


def squarefree_smooth_wintner_coefficient(F: ArithFn, P: int, q: int) -> Partial:
    """sum of F'(d)/d over square-free P-smooth d ≡ 0 (mod q): always a
    finite exact sum of at most 2^pi(P) terms."""
    _check_positive(q, "q")
    flat = enumerate_smooth_squarefree(P)
    value = exact_sum(F.transform(d) / d for d in flat if d % q == 0)
    return exact_partial(value, cutoff=flat[-1])


def _scaled_average_trace(
    pairs: Iterable[tuple[int, Fraction]], x: int, scale_den: int
) -> Partial:
    total, cum_trace = traced_sum(pairs, x)
    trace = tuple((cut, val / (scale_den * cut)) for cut, val in cum_trace)
    return Partial(value=total / (scale_den * x), cutoff=x, trace=trace)


def carmichael_coefficient(F: ArithFn, q: int, x: int) -> Partial:
    """The finite-x Carmichael average (1/(phi(q) x)) sum_{a<=x} F(a) c_q(a).

    No limit is claimed; the doubling trace is the diagnostic.
    """
    _check_positive(q, "q")
    _check_positive(x, "x")
    ctab = csum_table(q)
    pairs = ((a, F(a) * c) for a in range(1, x + 1) if (c := ctab[a % q]) != 0)
    return _scaled_average_trace(pairs, x, totient(q))


def smooth_carmichael_coefficient(F: ArithFn, P: int, q: int, x: int) -> Partial:
    """Carmichael average of the (P)-restriction: mean of F_(P)(a) c_q(a) / phi(q)."""
    _check_positive(q, "q")
    _check_positive(x, "x")
    ctab = csum_table(q)
    pairs = (
        (a, F(smooth_part(a, P)) * c)
        for a in range(1, x + 1)
        if (c := ctab[a % q]) != 0
    )
    return _scaled_average_trace(pairs, x, totient(q))


def smooth_euler_normalizer(P: int) -> Fraction:
    """prod_{p <= P} (1 - 1/p), the density of the P-sifted numbers."""
    norm = Fraction(1)
    for p in smooth_context(P).primes:
        norm *= Fraction(p - 1, p)
    return norm


def smooth_carmichael_series(
    F: ArithFn, P: int, q: int, x: int, ipp_weight: bool = False
) -> Partial:
    """The smooth-series route to the P-Carmichael coefficient.

    Computes (1/(phi(q) prod(1-1/p)^-1)) * sum over P-smooth t <= x of
    (F(t)/t) c_q(t), with the extra weight mu^2(t) t / phi(t) when
    ipp_weight is set (which then requires a square-free q).
    """
    ctx = smooth_context(P)
    if not ctx.is_smooth(q):
        raise ValueError(f"q = {q} must be {P}-smooth for the series formula")
    if ipp_weight and not is_squarefree(q):
        raise ValueError(f"the weighted series needs square-free q, got {q}")
    _check_positive(x, "x")
    scale = smooth_euler_normalizer(P) / totient(q)
    ctab = csum_table(q)

    def terms():
        for t in enumerate_smooth(P, x):
            c = ctab[t % q]
            if c == 0:
                continue
            term = F(t) * c
            if ipp_weight:
                if not is_squarefree(t):
                    continue
                term /= totient(t)
            else:
                term = term / t
            yield t, term

    total, cum_trace = traced_sum(terms(), x)
    trace = tuple((cut, val * scale) for cut, val in cum_trace)
    return Partial(value=total * scale, cutoff=x, trace=trace)


@dataclass(frozen=True)
class DifferenceDiagnostic:
    """Partial-sum difference of a Carmichael average and a Wintner sum."""

    q: int
    x: int
    prime: Optional[int]
    lhs: Fraction
    main: Fraction
    residual: Fraction
    budget: Fraction

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.budget == 0:
            return None
        return abs(self.residual) / self.budget


def coefficient_difference_diagnostic(
    F: ArithFn, q: int, x: int, P: Optional[int] = None
) -> DifferenceDiagnostic:
    """Measure lhs - main where lhs is the scaled Carmichael partial sum and
    main the matching truncated Wintner sum (both restricted to (P) when a
    prime bound is given), along with the error budget
    (1/x) * sum_{d<=x} |F'(d)| for ratio reporting.
    """
    _check_positive(q, "q")
    _check_positive(x, "x")
    ctab = csum_table(q)
    if P is None:
        lhs_terms = (F(a) * c for a in range(1, x + 1) if (c := ctab[a % q]) != 0)
        d_range = range(1, x + 1)
        main_ds = [d for d in range(q, x + 1, q)]
    else:
        lhs_terms = (
            F(smooth_part(a, P)) * c for a in range(1, x + 1) if (c := ctab[a % q]) != 0
        )
        d_range = enumerate_smooth(P, x)
        main_ds = [d for d in d_range if d % q == 0]
    lhs = exact_sum(lhs_terms) / (totient(q) * x)
    main = exact_sum(F.transform(d) / d for d in main_ds)
    budget = exact_sum(abs(F.transform(d)) for d in d_range) / x
    return DifferenceDiagnostic(
        q=q, x=x, prime=P, lhs=lhs, main=main, residual=lhs - main, budget=budget
    )


@dataclass(frozen=True)
class DecayTraces:
    """Summability traces for F': plain, divisor-weighted, and mean-decay."""

    wa: tuple[tuple[int, Fraction], ...]
    dh: tuple[tuple[int, Fraction], ...]
    etd: tuple[tuple[int, Fraction], ...]


def wa_check(F: ArithFn, x: int) -> DecayTraces:
    """Monotone traces of sum |F'(d)|/d, the same with 2^omega(d) weight, and
    the mean (1/x) sum |F'(d)|.  Reported, never asserted."""
    _check_positive(x, "x")
    abs_transform = [abs(F.transform(d)) for d in range(1, x + 1)]
    _v, wa = traced_sum(((d, abs_transform[d - 1] / d) for d in range(1, x + 1)), x)
    _v, dh = traced_sum(
        ((d, (1 << omega(d)) * abs_transform[d - 1] / d) for d in range(1, x + 1)), x
    )
    _v, raw = traced_sum(((d, abs_transform[d - 1]) for d in range(1, x + 1)), x)
    etd = tuple((cut, val / cut) for cut, val in raw)
    return DecayTraces(wa=wa, dh=dh, etd=etd)


@dataclass
class CoefficientTable:
    """A named family of coefficients q -> value with truncation metadata."""

    kind: str  # wintner | carmichael | p-wintner | p-carmichael | pflat-wintner
    prime: Optional[int]
    cutoff: Optional[int]
    entries: dict[int, Fraction]
    partials: dict[int, Partial]

    def support(self) -> list[int]:
        return sorted(q for q, v in self.entries.items() if v != 0)


_TABLE_BUILDERS = {
    "wintner": lambda F, P, q, x: wintner_coefficient(F, q, x),
    "carmichael": lambda F, P, q, x: carmichael_coefficient(F, q, x),
    "p-wintner": lambda F, P, q, x: smooth_wintner_coefficient(F, P, q, x),
    "p-carmichael": lambda F, P, q, x: smooth_carmichael_coefficient(F, P, q, x),
    "pflat-wintner": lambda F, P, q, x: squarefree_smooth_wintner_coefficient(F, P, q),
}


def coefficient_table(
    kind: str, F: ArithFn, qs: Sequence[int], x: int, P: Optional[int] = None
) -> CoefficientTable:
    """Build a coefficient table of the given kind over the listed moduli."""
    if kind not in _TABLE_BUILDERS:
        raise ValueError(f"unknown coefficient kind {kind!r}; choose from {sorted(_TABLE_BUILDERS)}")
    if kind.startswith("p") and P is None:
        raise ValueError(f"coefficient kind {kind!r} requires a prime bound")
    build = _TABLE_BUILDERS[kind]
    partials = {q: build(F, P, q, x) for q in qs}
    entries = {q: p.value for q, p in partials.items()}
    return CoefficientTable(kind=kind, prime=P, cutoff=x, entries=entries, partials=partials)
