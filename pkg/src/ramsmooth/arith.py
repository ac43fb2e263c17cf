"""Elementary number theory on exact integers and rationals.

Everything here is deterministic and exact: integers are Python ints,
rationals are ``fractions.Fraction``.  Trial division is fine at the scales
this library targets (inputs up to ~10^9).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod
from typing import Iterable, Iterator

Rational = int | Fraction


def _check_positive(n: int, name: str = "n") -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")
    return n


def primes_upto(n: int) -> list[int]:
    """All primes p <= n, ascending (simple byte sieve)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * len(range(start, n + 1, p))
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...) with p ascending.

    factorize(1) == () by the empty-product convention; n == 0 is rejected.
    """
    _check_positive(n)
    pairs = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                pairs.append((p, e))
        f += 6
    if n > 1:
        pairs.append((n, 1))
    return tuple(pairs)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    _check_positive(n)
    m = 1
    for _p, e in factorize(n):
        if e >= 2:
            return 0
        m = -m
    return m


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    _check_positive(n)
    t = n
    for p, _e in factorize(n):
        t -= t // p
    return t


def kernel(n: int) -> int:
    """Square-free kernel: product of the distinct primes dividing n; kernel(1) == 1."""
    _check_positive(n)
    return prod(p for p, _e in factorize(n))


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n))


def valuation(n: int, p: int) -> int:
    """p-adic valuation of n >= 1."""
    _check_positive(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_squarefree(n: int) -> bool:
    return mobius(n) != 0


def is_cubefree(n: int) -> bool:
    return all(e <= 2 for _p, e in factorize(n))


def _check_prime_bound(P: int) -> int:
    if not isinstance(P, int) or P < 2 or not is_prime(P):
        raise ValueError(f"prime bound must be a prime >= 2, got {P!r}")
    return P


class SmoothContext:
    """A prime bound P with its primes and primorial.

    Membership tests distinguish the smooth numbers (all prime factors <= P)
    from the sifted ones (all prime factors > P); 1 belongs to both.
    """

    __slots__ = ("bound", "primes", "primorial")

    def __init__(self, P: int):
        _check_prime_bound(P)
        self.bound = P
        self.primes = tuple(primes_upto(P))
        self.primorial = prod(self.primes)

    def __repr__(self) -> str:
        return f"SmoothContext(P={self.bound})"

    def is_smooth(self, n: int) -> bool:
        _check_positive(n)
        for p in self.primes:
            while n % p == 0:
                n //= p
        return n == 1

    def is_sifted(self, n: int) -> bool:
        _check_positive(n)
        return gcd(n, self.primorial) == 1


@lru_cache(maxsize=None)
def smooth_context(P: int) -> SmoothContext:
    return SmoothContext(P)


def smooth_rough_split(a: int, P: int) -> tuple[int, int]:
    """Split a = s*r with s the P-smooth part and r the P-rough (sifted) part.

    gcd(s, r) == 1 always; both parts are 1 when a == 1.
    """
    _check_positive(a, "a")
    ctx = smooth_context(P)
    s = 1
    for p in ctx.primes:
        while a % p == 0:
            a //= p
            s *= p
    return s, a


def smooth_part(a: int, P: int) -> int:
    return smooth_rough_split(a, P)[0]


def squarefree_smooth_part(a: int, P: int) -> int:
    """Product of the distinct primes p <= P dividing a."""
    _check_positive(a, "a")
    return prod(p for p in smooth_context(P).primes if a % p == 0)


def enumerate_smooth(P: int, x: Rational) -> list[int]:
    """All P-smooth n <= x, ascending.

    Generates by ascending k-way merge over prime multiples (Hamming-number
    style) rather than filtering 1..x, so sparse smooth sets are cheap even
    for large x.
    """
    ctx = smooth_context(P)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    ps = ctx.primes
    out: list[int] = []
    heap: list[tuple[int, int]] = [(1, 0)]
    while heap:
        value, i = heapq.heappop(heap)
        out.append(value)
        for j in range(i, len(ps)):
            nxt = value * ps[j]
            if nxt > x:
                break
            heapq.heappush(heap, (nxt, j))
    return out


def iter_smooth(P: int, x: Rational) -> Iterator[int]:
    return iter(enumerate_smooth(P, x))


@lru_cache(maxsize=None)
def enumerate_smooth_squarefree(P: int) -> tuple[int, ...]:
    """All 2^pi(P) square-free P-smooth numbers (subset products), ascending."""
    ctx = smooth_context(P)
    prods = [1]
    for p in ctx.primes:
        prods += [p * v for v in prods]
    return tuple(sorted(prods))


def enumerate_sifted(P: int, x: Rational) -> list[int]:
    """All P-sifted n <= x (every prime factor > P), ascending; includes 1."""
    ctx = smooth_context(P)
    limit = _floor(x)
    if limit < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    flags = bytearray([1]) * (limit + 1)
    flags[0] = 0
    for p in ctx.primes:
        flags[p::p] = b"\x00" * len(range(p, limit + 1, p))
    return [n for n in range(1, limit + 1) if flags[n]]


def _floor(x: Rational) -> int:
    if isinstance(x, int):
        return x
    return int(x // 1)


def count_sifted(P: int, x: Rational) -> tuple[int, Fraction, Fraction]:
    """Count the P-sifted n <= x by inclusion-exclusion over the primorial.

    Returns (count, main, error) with main the density term
    prod_{p <= P} (1 - 1/p) * x and error = count - main.  The error is
    bounded by 2^pi(P) in absolute value.
    """
    ctx = smooth_context(P)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    count = 0
    for d in divisors(ctx.primorial):
        count += mobius(d) * _floor(Fraction(x) / d if not isinstance(x, int) else x // d)
    main = Fraction(x) * prod(Fraction(p - 1, p) for p in ctx.primes)
    return count, main, count - main


def integer_nth_root(a: int, n: int) -> int:
    """floor(a**(1/n)) for a >= 0, n >= 1 (Newton on integers)."""
    if a < 0 or n < 1:
        raise ValueError("need a >= 0 and n >= 1")
    if a == 0:
        return 0
    x = 1 << -(-a.bit_length() // n)
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def smooth_power_series_interval(
    P: int, delta: Rational, precision_bits: int = 64
) -> tuple[Fraction, Fraction]:
    """Certified interval for prod_{p <= P} 1/(1 - p^(-delta)), delta > 0.

    Exact endpoints (equal) when delta is a positive integer; otherwise a
    rational enclosure whose width is <= 2^(1 - precision_bits)."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError(f"exponent must be > 0 (the product diverges), got {delta}")
    ctx = smooth_context(P)
    if delta.denominator == 1:
        e = delta.numerator
        value = prod(Fraction(p**e, p**e - 1) for p in ctx.primes)
        return value, value
    s, t = delta.numerator, delta.denominator
    bits = precision_bits + 8 + 4 * len(ctx.primes)
    while True:
        lo = Fraction(1)
        hi = Fraction(1)
        ok = True
        for p in ctx.primes:
            # m/2^bits <= p^(s/t) < (m+1)/2^bits
            m = integer_nth_root(p**s << (t * bits), t)
            if m <= (1 << bits):
                ok = False
                break
            r_lo = Fraction(m, 1 << bits)
            r_hi = Fraction(m + 1, 1 << bits)
            # f(r) = r/(r-1) is decreasing in r
            lo *= r_hi / (r_hi - 1)
            hi *= r_lo / (r_lo - 1)
        if ok and hi - lo <= Fraction(1, 1 << (precision_bits - 1)):
            return lo, hi
        bits *= 2


def smooth_power_series(P: int, delta: Rational, precision_bits: int = 64) -> Fraction:
    """prod_{p <= P} 1/(1 - p^(-delta)): exact for integer delta, else the
    midpoint of a certified interval of width <= 2^(1 - precision_bits)."""
    lo, hi = smooth_power_series_interval(P, delta, precision_bits)
    return (lo + hi) / 2


_LN2_BITS = 0
_LN2_VALUE = Fraction(0)


def _atanh_twice(z: Fraction, err: Fraction) -> Fraction:
    # 2*atanh(z) = ln((1+z)/(1-z)); truncation error < err for 0 <= z < 1.
    total = Fraction(0)
    term = z
    z2 = z * z
    k = 0
    while True:
        total += term / (2 * k + 1)
        k += 1
        term *= z2
        if 2 * term / ((2 * k + 1) * (1 - z2)) < err:
            break
    return 2 * total


@lru_cache(maxsize=None)
def certified_ln(n: int, frac_bits: int = 64) -> Fraction:
    """ln(n) for n >= 2 as a dyadic rational with |error| < 2^(-frac_bits).

    Splits n = 2^e * m with m in [1, 2) and evaluates via the atanh series,
    which converges geometrically for the resulting arguments.
    """
    global _LN2_BITS, _LN2_VALUE
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    target = Fraction(1, 1 << (frac_bits + 2))
    e = n.bit_length() - 1
    if _LN2_BITS < frac_bits + 16:
        _LN2_BITS = frac_bits + 16
        _LN2_VALUE = _atanh_twice(Fraction(1, 3), Fraction(1, 1 << (_LN2_BITS + 8)))
    z = Fraction(n - (1 << e), n + (1 << e))
    value = e * _LN2_VALUE + _atanh_twice(z, target / 2)
    # snap to the dyadic grid to keep later arithmetic cheap
    return Fraction(round(value * (1 << frac_bits)), 1 << frac_bits)


def exact_sum(terms: Iterable[Fraction]) -> Fraction:
    """Sum exact rationals with balanced (binary-counter) accumulation.

    Equivalent to sum() but keeps intermediate denominators near the lcm of
    balanced blocks instead of growing them term by term, which is the
    difference between seconds and hours on 10^5-term harmonic-like sums.
    """
    stack: list[tuple[int, Fraction]] = []
    for v in terms:
        level = 0
        while stack and stack[-1][0] == level:
            _lvl, u = stack.pop()
            v = u + v
            level += 1
        stack.append((level, v))
    total = Fraction(0)
    for _lvl, v in reversed(stack):
        total += v
    return total
