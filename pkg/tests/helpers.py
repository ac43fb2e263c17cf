"""Independent oracles and fixture builders shared across the test suite.

Everything here is deliberately naive (trial division, direct counting,
floating cosine sums) so that library results are checked against routes
that share no code with the implementation.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from ramsmooth.funclib import from_table


def oracle_factorize(n: int) -> list[tuple[int, int]]:
    """Plain ascending trial division."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def oracle_phi(n: int) -> int:
    """Count 1 <= j <= n coprime to n."""
    return sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)


def oracle_mobius(n: int) -> int:
    pairs = oracle_factorize(n)
    if any(e >= 2 for _p, e in pairs):
        return 0
    return (-1) ** len(pairs)


def largest_prime_factor(n: int) -> int:
    pairs = oracle_factorize(n)
    return pairs[-1][0] if pairs else 1


def oracle_divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def cosine_csum(q: int, a: int) -> int:
    """Floating evaluation of the defining cosine sum, rounded to the nearest
    integer; asserts the float landed well clear of the rounding boundary."""
    total = 0.0
    for j in range(1, q + 1):
        if math.gcd(j, q) == 1:
            total += math.cos(2 * math.pi * j * a / q)
    nearest = round(total)
    assert abs(total - nearest) < 0.1, f"cosine sum too close to a half-integer at (q={q}, a={a})"
    return nearest


def random_transform_table(rng: random.Random, *, support_bound: int = 50, points: int = 6, name: str = "t"):
    """A finitely supported transform with small random rational values."""
    support = sorted(rng.sample(range(1, support_bound + 1), k=points))
    pairs = []
    for n in support:
        num = rng.choice([v for v in range(-9, 10) if v != 0])
        den = rng.randint(1, 9)
        pairs.append((n, Fraction(num, den)))
    return from_table(pairs, support_bound, as_transform=True, name=name)


def random_value_table(rng: random.Random, *, bound: int = 2000, points: int = 40, name: str = "v"):
    """A random rational-valued function table on [1, bound], zero elsewhere."""
    support = sorted(rng.sample(range(1, bound + 1), k=points))
    pairs = [(n, Fraction(rng.randint(-9, 9), rng.randint(1, 9))) for n in support]
    return from_table(pairs, bound, name=name)


def smooth_pow2_transform_table(rng: random.Random, name: str = "pow2"):
    """Transform supported on powers of two (the exact-telescoping shape)."""
    support = [1, 2, 4, 8][: rng.randint(2, 4)]
    pairs = [(n, Fraction(rng.randint(1, 9), rng.randint(1, 9))) for n in support]
    return from_table(pairs, 8, as_transform=True, name=name)
