"""Orthogonal decompositions of arithmetic functions over a prime bound.

The transform of F splits, for each prime bound P, into a regular part built
from Wintner coefficients and an irregular series summed over sifted numbers;
summing over divisors lifts the split to F itself on smooth arguments.  This
module computes those pieces exactly where the data allows (finitely
supported transforms) and as traced truncations elsewhere, plus the
smooth/analytic/irregular parts and the exact-formula predicates built on
top of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .arith import (
    Rational,
    _check_positive,
    divisors,
    enumerate_sifted,
    enumerate_smooth_squarefree,
    exact_sum,
    factorize,
    mobius,
    smooth_context,
    smooth_part,
    totient,
    valuation,
)
from .ramanujan import ramanujan_sum, rvl_moduli
from .series import Partial, exact_partial, traced_sum
from .transforms import ArithFn, wintner_coefficient


def irregular_series(F: ArithFn, P: int, d: int, x: int) -> Partial:
    """sum over P-sifted r > 1 of F'(d*r)/r, truncated at r <= x.

    Exact (with a one-point trace) for finitely supported transforms once x
    covers the support; otherwise the doubling trace carries the divergence
    diagnostic.
    """
    _check_positive(d, "d")
    _check_positive(x, "x")
    ctx = smooth_context(P)
    supp = F.finite_transform_support()
    if supp is not None and (not supp or x * d >= max(supp)):
        terms = []
        for m in supp:
            if m % d == 0:
                r = m // d
                if r > 1 and ctx.is_sifted(r):
                    terms.append(F.transform(m) / r)
        return exact_partial(exact_sum(terms), cutoff=x)
    pairs = ((r, F.transform(d * r) / r) for r in enumerate_sifted(P, x) if r > 1)
    value, trace = traced_sum(pairs, x)
    return Partial(value=value, cutoff=x, trace=trace)


def _memo_wintner(F: ArithFn, q: int, x: int) -> Partial:
    key = ("win", q, x)
    part = F._aux.get(key)
    if part is None:
        part = wintner_coefficient(F, q, x)
        F._aux[key] = part
    return part


@dataclass(frozen=True)
class TransformDecomposition:
    d: int
    prime: int
    lhs: Fraction  # F'(d)
    regular: Fraction
    irregular: Partial
    exact: bool

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.regular + self.irregular.value


def decompose_transform(F: ArithFn, P: int, d: int, x: int) -> TransformDecomposition:
    """Split F'(d) as d * sum over square-free P-smooth K of mu(K) Win_{dK} F,
    minus the irregular series at d.

    Non-square-free K are killed by mu, so the K-sum runs over the finite
    square-free P-smooth set, capped at x.  Residual is exactly zero for
    finitely supported transforms once x covers the support.
    """
    _check_positive(d, "d")
    regular = Fraction(0)
    for K in enumerate_smooth_squarefree(P):
        if K > x:
            continue
        win = _memo_wintner(F, d * K, x)
        regular += mobius(K) * win.value
    regular *= d
    irr = irregular_series(F, P, d, x)
    supp = F.finite_transform_support()
    exact = supp is not None and (not supp or x >= max(supp))
    return TransformDecomposition(
        d=d, prime=P, lhs=F.transform(d), regular=regular, irregular=irr, exact=exact
    )


@dataclass(frozen=True)
class FunctionDecomposition:
    a: int
    prime: int
    lhs: Fraction  # F(a)
    smooth_component: Fraction
    irregular_component: Fraction
    exact: bool

    @property
    def reconstruction(self) -> Fraction:
        return self.smooth_component - self.irregular_component

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.reconstruction


def decompose_function(F: ArithFn, P: int, a: int, x: int) -> FunctionDecomposition:
    """Split F(a), for P-smooth a, into the (finite, by the vertical limit)
    q-sum of Win_q F * c_q(a) minus the divisor sum of irregular series."""
    _check_positive(a, "a")
    if smooth_part(a, P) != a:
        raise ValueError(f"a = {a} is not {P}-smooth; the divisor-sum split needs a in (P)")
    smooth_component = exact_sum(
        _memo_wintner(F, q, x).value * c
        for q in rvl_moduli(P, a)
        if (c := ramanujan_sum(q, a)) != 0
    )
    irregular_component = exact_sum(
        irregular_series(F, P, d, x).value for d in divisors(a)
    )
    supp = F.finite_transform_support()
    exact = supp is not None and (not supp or x >= max(supp))
    return FunctionDecomposition(
        a=a,
        prime=P,
        lhs=F(a),
        smooth_component=smooth_component,
        irregular_component=irregular_component,
        exact=exact,
    )


@dataclass(frozen=True)
class CharacterizationCell:
    d: int
    prime: int
    value: Fraction


@dataclass(frozen=True)
class CharacterizationTable:
    cells: tuple[CharacterizationCell, ...]
    decay_verdicts: dict[int, bool]

    def value(self, d: int, P: int) -> Fraction:
        for cell in self.cells:
            if cell.d == d and cell.prime == P:
                return cell.value
        raise KeyError((d, P))


def characterization_table(
    F: ArithFn, ds: Sequence[int], Ps: Sequence[int], x: int
) -> CharacterizationTable:
    """Grid of truncated irregular-series values over d and P, with a
    per-d monotone-decay verdict (diagnostic only) along the P axis."""
    cells = []
    verdicts: dict[int, bool] = {}
    for d in ds:
        vals = []
        for P in Ps:
            v = irregular_series(F, P, d, x).value
            cells.append(CharacterizationCell(d=d, prime=P, value=v))
            vals.append(abs(v))
        verdicts[d] = all(b <= a for a, b in zip(vals, vals[1:]))
    return CharacterizationTable(cells=tuple(cells), decay_verdicts=verdicts)


@dataclass(frozen=True)
class ExpansionPoint:
    prime: int
    value: Fraction
    gap: Fraction


def smooth_expansion_trace(
    F: ArithFn, a: int, Ps: Sequence[int], x: int
) -> list[ExpansionPoint]:
    """Per-P values of the finite q-sum of Win_q F * c_q(a), with the gap to
    F(a).  The q-sum is finite because only the vertical-limit moduli
    contribute."""
    _check_positive(a, "a")
    out = []
    target = F(a)
    for P in Ps:
        value = exact_sum(
            _memo_wintner(F, q, x).value * c
            for q in rvl_moduli(P, a)
            if (c := ramanujan_sum(q, a)) != 0
        )
        out.append(ExpansionPoint(prime=P, value=value, gap=abs(value - target)))
    return out


def null_expansion(a: int, P: int) -> tuple[int, int]:
    """Signed and absolute P-smooth partial sums of c_q(a) over q in (P).

    The signed sum telescopes to 0 for every a and P; the absolute sum equals
    prod_{p <= P} 2 p^(v_p(a)) -- both are finite sums by the vertical limit.
    """
    _check_positive(a, "a")
    signed = 0
    absolute = 0
    for q in rvl_moduli(P, a):
        c = ramanujan_sum(q, a)
        signed += c
        absolute += abs(c)
    return signed, absolute


def null_expansion_product(a: int, P: int) -> int:
    """The closed form prod_{p <= P} 2 p^(v_p(a)) for the absolute sum."""
    out = 1
    for p in smooth_context(P).primes:
        out *= 2 * p ** valuation(a, p)
    return out


def _largest_prime_factor(n: int) -> int:
    pairs = factorize(n)
    return pairs[-1][0] if pairs else 1


@dataclass(frozen=True)
class SupportProbe:
    wintner_prime: Optional[int]  # min prime bound covering supp(Win F)
    wintner_range: Optional[int]  # max of supp(Win F); 0 when Win F == 0
    determined: bool
    observed_support: tuple[int, ...]
    note: str = ""


def wintner_support_probe(
    F: ArithFn, *, q_max: int = 512, x: int = 4096
) -> SupportProbe:
    """Locate the support of the Wintner transform.

    Exact for declared finite transform support (every nonzero Win sits on a
    divisor of a support element).  Otherwise a bounded search over q <= q_max
    with truncation x, flagged undetermined beyond the probe.
    """
    supp = F.finite_transform_support()
    if supp is not None:
        candidates = sorted({q for m in supp for q in divisors(m)})
        observed = tuple(q for q in candidates if _memo_wintner(F, q, x).value != 0)
        determined = True
        note = ""
    else:
        if F.transform_support.kind == "smooth":
            # the declaration confines the support to the declared smooth set
            from .arith import enumerate_smooth

            candidates = enumerate_smooth(F.transform_support.prime, q_max)
        else:
            candidates = range(1, q_max + 1)
        observed = tuple(q for q in candidates if _memo_wintner(F, q, x).value != 0)
        determined = False
        note = f"undetermined beyond probe (q <= {q_max}, cutoff {x})"
    if not observed or observed == (1,):
        return SupportProbe(2, max(observed, default=0), determined, observed, note)
    p_f = max(2, max(_largest_prime_factor(q) for q in observed))
    return SupportProbe(p_f, max(observed), determined, observed, note)


@dataclass(frozen=True)
class Parts:
    a: int
    smooth: Fraction
    analytic: Optional[Fraction]  # absent when Win F is not finitely supported
    irregular: Fraction
    wintner_prime: int
    wintner_range: Optional[int]
    exact: bool

    def analytic_residual(self, F: ArithFn) -> Optional[Fraction]:
        if self.analytic is None:
            return None
        return F(self.a) - self.analytic + self.irregular

    def smooth_residual(self, F: ArithFn) -> Fraction:
        return F(self.a) - self.smooth + self.irregular


def regular_irregular_parts(F: ArithFn, a: int, x: int) -> Parts:
    """Smooth, analytic, and irregular parts of F at a.

    Requires a declared smooth or finite transform support (the class gate);
    the analytic part exists only in the finitely supported case and comes
    back as None -- an explicit absence, not zero -- otherwise.
    """
    _check_positive(a, "a")
    kind = F.transform_support.kind
    if kind not in ("finite", "smooth"):
        raise ValueError(
            f"{F.name}: parts need a declared finite or smooth transform support, got {kind!r}"
        )
    probe = wintner_support_probe(F, x=x)
    p_f = probe.wintner_prime or 2
    smooth_val = exact_sum(
        _memo_wintner(F, q, x).value * c
        for q in rvl_moduli(p_f, a)
        if (c := ramanujan_sum(q, a)) != 0
    )
    irregular = exact_sum(irregular_series(F, p_f, d, x).value for d in divisors(a))
    analytic: Optional[Fraction] = None
    q_f: Optional[int] = None
    if kind == "finite":
        q_f = probe.wintner_range or 0
        analytic = exact_sum(
            _memo_wintner(F, q, x).value * ramanujan_sum(q, a) for q in range(1, q_f + 1)
        )
    supp = F.finite_transform_support()
    exact = supp is not None and (not supp or x >= max(supp))
    return Parts(
        a=a,
        smooth=smooth_val,
        analytic=analytic,
        irregular=irregular,
        wintner_prime=p_f,
        wintner_range=q_f,
        exact=exact,
    )


@dataclass(frozen=True)
class Verdict:
    status: str  # holds | fails | undetermined
    witness: Optional[int] = None
    detail: str = ""


def explicit_formula_verdicts(
    F: ArithFn, a_values: Sequence[int], x: int
) -> tuple[Verdict, Verdict]:
    """Check F == analytic part (finite-range formula) and F == smooth part.

    Decisive only in the exact regime (finitely supported transform); smooth
    class gives undetermined (truncation-limited); everything else is gated
    out with an explanation.  Either formula holds exactly when the irregular
    part vanishes on the range.
    """
    kind = F.transform_support.kind
    if kind not in ("finite", "smooth"):
        gate = Verdict("undetermined", detail=f"not in declared class (support {kind!r})")
        return gate, gate
    exact_regime = kind == "finite"
    finite_v = Verdict("holds")
    smooth_v = Verdict("holds")
    for a in a_values:
        parts = regular_irregular_parts(F, a, x)
        target = F(a)
        if parts.analytic is not None:
            if target != parts.analytic and finite_v.status == "holds":
                finite_v = Verdict("fails", witness=a, detail=f"F({a}) != analytic part")
        elif finite_v.status == "holds":
            finite_v = Verdict("undetermined", detail="analytic part absent (support not finite)")
        if exact_regime:
            if target != parts.smooth and smooth_v.status == "holds":
                smooth_v = Verdict("fails", witness=a, detail=f"F({a}) != smooth part")
        else:
            smooth_v = Verdict("undetermined", detail="truncation-limited (smooth class)")
    return finite_v, smooth_v


@dataclass(frozen=True)
class AverageDecomposition:
    d: int
    prime: int
    lhs: Fraction  # the sequence value at d
    regular: Fraction
    irregularity: Fraction
    exact: bool

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.regular + self.irregularity


def wintner_average_decomposition(
    seq: Callable[[int], Rational],
    P: int,
    d: int,
    x: int,
    *,
    support: Optional[Sequence[int]] = None,
) -> AverageDecomposition:
    """Decompose a sequence directly (no transform in sight): the d-th value
    equals d * sum over square-free P-smooth K of mu(K) A_{dK}, minus the
    sifted tail sum of a_{dr}/r, where A_q is the density-style average
    sum_{n ≡ 0 (q)} a_n / n.

    Exact for declared finite support; truncated at x otherwise.
    """
    _check_positive(d, "d")
    _check_positive(x, "x")
    ctx = smooth_context(P)
    supp = sorted(set(support)) if support is not None else None

    def average(q: int) -> Fraction:
        if supp is not None:
            return exact_sum(Fraction(seq(n)) / n for n in supp if n % q == 0)
        return exact_sum(Fraction(seq(n)) / n for n in range(q, x + 1, q))

    regular = Fraction(0)
    for K in enumerate_smooth_squarefree(P):
        if K > x:
            continue
        regular += mobius(K) * average(d * K)
    regular *= d

    if supp is not None:
        irregularity = exact_sum(
            Fraction(seq(m)) / (m // d)
            for m in supp
            if m % d == 0 and m // d > 1 and ctx.is_sifted(m // d)
        )
    else:
        irregularity = exact_sum(
            Fraction(seq(d * r)) / r for r in enumerate_sifted(P, x) if r > 1
        )
    return AverageDecomposition(
        d=d,
        prime=P,
        lhs=Fraction(seq(d)),
        regular=regular,
        irregularity=irregularity,
        exact=supp is not None,
    )
