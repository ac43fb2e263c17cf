"""Ramanujan sums c_q(a) by three independent exact routes, and their
orthogonality relations.

All routes return exact integers.  The trigonometric definition is evaluated
without transcendentals: grouping the unit-character sum over full residue
classes turns it into a divisor sum with Mobius weights (the classical
von Sterneck/Kluyver circle of identities).  A floating cosine evaluation is
kept in the test suite as a third, genuinely independent oracle.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import (
    divisors,
    enumerate_smooth_squarefree,
    is_squarefree,
    kernel,
    mobius,
    smooth_context,
    totient,
    valuation,
    _check_positive,
)


@lru_cache(maxsize=None)
def _csum_from_gcd(q: int, g: int) -> int:
    # Holder: c_q(a) = phi(q) * mu(q/g) / phi(q/g) with g = gcd(q, a).
    m = q // g
    mu_m = mobius(m)
    if mu_m == 0:
        return 0
    num = totient(q) * mu_m
    den = totient(m)
    quotient, rem = divmod(num, den)
    assert rem == 0, "Holder's formula must give an integer"
    return quotient


def ramanujan_sum(q: int, a: int) -> int:
    """c_q(a), evaluated by Holder's formula (the fast default route).

    c_q is even in a, and c_q(0) = phi(q) (gcd(q, 0) = q makes that a
    special case of the same formula).
    """
    _check_positive(q, "q")
    return _csum_from_gcd(q, gcd(q, abs(a)))


csum_holder = ramanujan_sum


def csum_definition(q: int, a: int) -> int:
    """c_q(a) from the character-sum definition, grouped exactly.

    The sum of e^(2*pi*i*j*a/q) over j coprime to q is expanded with the
    Mobius coprimality filter into full residue-class sums; each class sum
    is q/d when (q/d) | a and 0 otherwise, so the whole thing collapses to
    an integer combination of divisor indicators.
    """
    _check_positive(q, "q")
    a = abs(a)
    total = 0
    for d in divisors(q):
        mu_d = mobius(d)
        if mu_d == 0:
            continue
        cls = q // d
        if a % cls == 0:
            total += mu_d * cls
    return total


def csum_kluyver(q: int, a: int) -> int:
    """c_q(a) by Kluyver's divisor sum over d | gcd(a, q) of d * mu(q/d).

    For a = 0 the sum runs over all divisors of q.
    """
    _check_positive(q, "q")
    g = gcd(q, abs(a))
    return sum(d * mobius(q // d) for d in divisors(g))


def csum_nonvanishing(q: int, a: int) -> bool:
    """Exact non-vanishing test: c_q(a) != 0 iff v_p(q) <= v_p(a) + 1 for all p."""
    _check_positive(q, "q")
    _check_positive(a, "a")
    return all(e <= valuation(a, p) + 1 for p, e in _factor_pairs(q))


def _factor_pairs(q: int):
    from .arith import factorize

    return factorize(q)


@lru_cache(maxsize=None)
def csum_table(q: int) -> tuple[int, ...]:
    """c_q(r) for r = 0..q-1; c_q(a) == csum_table(q)[a % q]."""
    return tuple(_csum_from_gcd(q, gcd(q, r)) for r in range(q))


def orthogonality_divisor_indicator(q: int, a: int) -> Fraction:
    """(1/q) * sum over l | q of c_l(a); equals 1 if q | a, else 0."""
    _check_positive(q, "q")
    return Fraction(sum(ramanujan_sum(ell, a) for ell in divisors(q)), q)


def csum_prime_power(p: int, alpha: int, K: int) -> int:
    """c_{p^alpha}(p^K): phi(p^alpha) for K >= alpha, -p^(alpha-1) at
    K = alpha - 1, and 0 below that."""
    if alpha == 0:
        return 1
    if K >= alpha:
        return totient(p**alpha)
    if K == alpha - 1:
        return -(p ** (alpha - 1))
    return 0


def _per_prime_twisted_sum(p: int, alpha: int, beta: int) -> Fraction:
    # sum over K >= 0 of c_{p^alpha}(p^K) * c_{p^beta}(p^K) / p^K:
    # a finite head below max(alpha, beta) plus an exact geometric tail,
    # since both factors are constant (= the totients) from there on.
    M = max(alpha, beta)
    head = Fraction(0)
    for K in range(M):
        head += Fraction(csum_prime_power(p, alpha, K) * csum_prime_power(p, beta, K), p**K)
    tail = Fraction(totient(p**alpha) * totient(p**beta) * p, (p - 1) * p**M)
    return head + tail


def smooth_twisted_orthogonality(q: int, ell: int, P: int) -> Fraction:
    """Normalized smooth-twisted inner product of c_q and c_ell.

    Evaluates sum over P-smooth t of c_ell(t) * c_q(t) / t in closed form --
    the t-sum factors over primes p <= P because c is multiplicative in the
    modulus and c_{p^alpha}(t) only sees v_p(t) -- then divides by the
    normalizer phi(ell) * prod_{p <= P} (1 - 1/p)^(-1).  Equals 1 when
    q == ell and 0 otherwise.
    """
    ctx = smooth_context(P)
    if not ctx.is_smooth(q):
        raise ValueError(f"q = {q} is not {P}-smooth")
    if not ctx.is_smooth(ell):
        raise ValueError(f"ell = {ell} is not {P}-smooth")
    product = Fraction(1)
    for p in ctx.primes:
        product *= _per_prime_twisted_sum(p, valuation(q, p), valuation(ell, p))
        if product == 0:
            break
    normalizer = Fraction(totient(ell))
    for p in ctx.primes:
        normalizer *= Fraction(p, p - 1)
    return product / normalizer


def squarefree_modulus_ignores_powers(q: int, a: int) -> bool:
    """For square-free q, check c_q(a) == c_q(kernel(a)) (always true).

    Rejects non-square-free moduli, where the property genuinely fails.
    """
    _check_positive(q, "q")
    _check_positive(a, "a")
    if not is_squarefree(q):
        raise ValueError(f"modulus must be square-free, got {q}")
    return ramanujan_sum(q, a) == ramanujan_sum(q, kernel(a))


def rvl_moduli(P: int, a: int) -> list[int]:
    """The finite set of q in (P) with c_q(a) possibly nonzero, ascending.

    These are exactly the divisors of prod_{p <= P} p^(v_p(a) + 1): every
    P-smooth q outside this set has some v_p(q) > v_p(a) + 1 and hence
    c_q(a) == 0.  This is what makes smooth q-sums finite.
    """
    _check_positive(a, "a")
    ctx = smooth_context(P)
    out = [1]
    for p in ctx.primes:
        cap = valuation(a, p) + 1
        out = [m * p**k for m in out for k in range(cap + 1)]
    return sorted(out)


def effective_squarefree_moduli(P: int) -> tuple[int, ...]:
    """The 2^pi(P) square-free P-smooth moduli (all of (P)-flat)."""
    return enumerate_smooth_squarefree(P)
