"""Series evaluators for classic and smooth summation, local expansions over a
prime bound, and the uniqueness/identity suites built on them.

Classic summation truncates at q <= x and may oscillate forever; smooth
summation sums over P-smooth moduli and is always a finite exact computation,
because only moduli dividing prod p^(v_p(a)+1) can contribute.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .arith import (
    _check_positive,
    exact_sum,
    is_cubefree,
    is_squarefree,
    kernel,
    smooth_context,
    smooth_part,
    totient,
)
from .ramanujan import ramanujan_sum, rvl_moduli
from .series import Partial
from .transforms import (
    ArithFn,
    smooth_carmichael_coefficient,
    smooth_euler_normalizer,
    smooth_wintner_coefficient,
    squarefree_smooth_wintner_coefficient,
)

CoefficientMap = Mapping[int, Fraction] | Callable[[int], Fraction]


def _coeff_fn(G: CoefficientMap) -> Callable[[int], Fraction]:
    if callable(G):
        return lambda q: Fraction(G(q))
    return lambda q: Fraction(G.get(q, 0))


def evaluate_series(
    G: CoefficientMap,
    a: int,
    *,
    method: str,
    x: Optional[int] = None,
    P: Optional[int] = None,
) -> Fraction:
    """Evaluate sum of G(q) c_q(a) under 'classic' (q <= x) or 'smooth'
    (q P-smooth, a finite exact sum) summation."""
    _check_positive(a, "a")
    g = _coeff_fn(G)
    if method == "classic":
        if x is None:
            raise ValueError("classic summation needs a cutoff x")
        return exact_sum(g(q) * c for q in range(1, x + 1) if (c := ramanujan_sum(q, a)) != 0)
    if method == "smooth":
        if P is None:
            raise ValueError("smooth summation needs a prime bound P")
        return exact_sum(g(q) * c for q in rvl_moduli(P, a) if (c := ramanujan_sum(q, a)) != 0)
    raise ValueError(f"unknown summation method {method!r}")


def classic_partial_sums(G: CoefficientMap, a: int, x: int) -> list[Fraction]:
    """All classic partial sums sum_{q <= n} G(q) c_q(a) for n = 1..x."""
    _check_positive(a, "a")
    g = _coeff_fn(G)
    out = []
    running = Fraction(0)
    for q in range(1, x + 1):
        running += g(q) * ramanujan_sum(q, a)
        out.append(running)
    return out


def _flat_coefficients(F: ArithFn, P: int) -> dict[int, Fraction]:
    key = ("flatwin", P)
    table = F._aux.get(key)
    if table is None:
        from .arith import enumerate_smooth_squarefree

        table = {
            q: squarefree_smooth_wintner_coefficient(F, P, q).value
            for q in enumerate_smooth_squarefree(P)
        }
        F._aux[key] = table
    return table


def local_expansion_flat(F: ArithFn, P: int, a: int) -> Fraction:
    """The finite expansion over square-free P-smooth moduli.

    Exactly reproduces F(a) for square-free P-smooth a, and the square-free
    smooth restriction of F for every other a.  2^pi(P) exact terms.
    """
    _check_positive(a, "a")
    table = _flat_coefficients(F, P)
    return exact_sum(
        w * c
        for q, w in table.items()
        if w != 0 and (c := ramanujan_sum(q, a)) != 0
    )


def local_expansion_smooth(F: ArithFn, P: int, a: int, x: Optional[int] = None) -> Fraction:
    """Expansion over P-smooth moduli with P-smooth Wintner coefficients.

    Equals F at the smooth part of a exactly when those coefficients are
    exact (finite restricted support); within truncation otherwise.
    """
    _check_positive(a, "a")
    values = []
    for q in rvl_moduli(P, a):
        c = ramanujan_sum(q, a)
        if c == 0:
            continue
        key = ("swin", P, q, x)
        part = F._aux.get(key)
        if part is None:
            part = smooth_wintner_coefficient(F, P, q, x)
            F._aux[key] = part
        if part.value != 0:
            values.append(part.value * c)
    return exact_sum(values)


@dataclass(frozen=True)
class UniquenessReport:
    status: str  # holds | fails | undetermined
    witness: Optional[int] = None
    detail: str = ""


def uniqueness_check(
    F: ArithFn,
    P: int,
    G: Mapping[int, Fraction],
    mode: str,
    *,
    a_bound: Optional[int] = None,
    q_probe: Optional[Sequence[int]] = None,
    x: int = 1 << 16,
    tolerance: Fraction = Fraction(1, 1000),
) -> UniquenessReport:
    """Probe whether a coefficient family expanding the (P)-restriction of F
    must be the P-smooth Wintner transform.

    mode 'decay' admits any (P)-supported family (the decay hypothesis is
    vacuous for finite tables and is not guessed at); mode 'squarefree'
    requires square-free support.  Families supported outside the declared
    set are rejected.  The coefficient comparison goes through the
    smooth-twisted extraction integral, truncated at x; the verdict is
    three-valued and never over-claims past the truncation.
    """
    ctx = smooth_context(P)
    entries = {q: Fraction(v) for q, v in G.items() if v != 0}
    for q in entries:
        if mode == "decay":
            if not ctx.is_smooth(q):
                raise ValueError(f"coefficient support must lie in the {P}-smooth set; {q} is not")
        elif mode == "squarefree":
            if not (ctx.is_smooth(q) and is_squarefree(q)):
                raise ValueError(
                    f"coefficient support must be square-free {P}-smooth; {q} is not"
                )
        else:
            raise ValueError(f"unknown mode {mode!r}; use 'decay' or 'squarefree'")

    if a_bound is None:
        a_bound = max(64, min(2 * ctx.primorial, 2048))
    for a in range(1, a_bound + 1):
        lhs = exact_sum(v * ramanujan_sum(q, a) for q, v in entries.items())
        if lhs != F(smooth_part(a, P)):
            return UniquenessReport(
                "fails", witness=a, detail=f"expansion misses the (P)-restriction at a={a}"
            )

    probe = sorted(set(entries) | set(q_probe or ()) | {1})
    normalizer = smooth_euler_normalizer(P)
    undetermined: Optional[str] = None
    from .arith import enumerate_smooth
    from .ramanujan import csum_table

    smooth_ts = enumerate_smooth(P, x)
    for q in probe:
        win = smooth_wintner_coefficient(F, P, q, x)
        claimed = entries.get(q, Fraction(0))
        if win.exact:
            if claimed != win.value:
                return UniquenessReport(
                    "fails", witness=q, detail=f"coefficient at q={q} differs from the Wintner value"
                )
            continue
        # truncated extraction of the claimed expansion through the
        # smooth-twisted inner product
        ctab = csum_table(q)
        extracted = exact_sum(
            Fraction(c, t) * exact_sum(v * ramanujan_sum(ell, t) for ell, v in entries.items())
            for t in smooth_ts
            if (c := ctab[t % q]) != 0
        ) * normalizer / totient(q)
        if abs(extracted - win.value) > tolerance:
            undetermined = f"extraction and truncated Wintner differ at q={q} beyond tolerance"
    if undetermined:
        return UniquenessReport("undetermined", detail=undetermined)
    return UniquenessReport("holds")


@dataclass(frozen=True)
class IdentityCheck:
    lhs: Fraction
    rhs: Fraction

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.rhs


def totient_ratio_identity(F: ArithFn, P: int, a: int, x: int) -> IdentityCheck:
    """For square-free P-smooth a: (a/phi(a) - 1) F(a) equals the expansion
    of the mu^2 F Id/phi combination over the cube-free, non-square-free
    P-smooth moduli l with l/kernel(l) dividing a."""
    _check_positive(a, "a")
    ctx = smooth_context(P)
    if not (ctx.is_smooth(a) and is_squarefree(a)):
        raise ValueError(f"a = {a} must be square-free and {P}-smooth")
    from .funclib import mu2_id_over_phi

    H = mu2_id_over_phi(F)
    lhs = (Fraction(a, totient(a)) - 1) * F(a)
    rhs_terms = []
    for ell in rvl_moduli(P, a):
        if is_squarefree(ell) or not is_cubefree(ell):
            continue
        if a % (ell // kernel(ell)) != 0:
            continue
        c = ramanujan_sum(ell, a)
        if c == 0:
            continue
        rhs_terms.append(smooth_wintner_coefficient(H, P, ell, x).value * c)
    return IdentityCheck(lhs=lhs, rhs=exact_sum(rhs_terms))


@dataclass(frozen=True)
class AverageComparisonRow:
    q: int
    plain: Partial
    weighted: Partial

    @property
    def residual(self) -> Fraction:
        return self.plain.value - self.weighted.value


def ipp_weighted_average_suite(
    F: ArithFn, P: int, qs: Sequence[int], x: int
) -> list[AverageComparisonRow]:
    """Entrywise comparison, over square-free P-smooth q, of the P-Carmichael
    averages of F and of mu^2 F Id/phi (they share a limit for functions
    insensitive to prime powers)."""
    if not F.is_ipp:
        raise ValueError(f"{F.name} is not flagged as ignoring prime powers")
    from .funclib import mu2_id_over_phi

    H = mu2_id_over_phi(F)
    ctx = smooth_context(P)
    rows = []
    for q in qs:
        if not (ctx.is_smooth(q) and is_squarefree(q)):
            continue
        rows.append(
            AverageComparisonRow(
                q=q,
                plain=smooth_carmichael_coefficient(F, P, q, x),
                weighted=smooth_carmichael_coefficient(H, P, q, x),
            )
        )
    return rows
