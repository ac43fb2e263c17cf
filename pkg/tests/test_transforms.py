"""Tests for the transform layer: inversion round trips, the universal
divisor-sum identities, and the Wintner/Carmichael coefficient machinery."""

import math
import random
from fractions import Fraction

import pytest

from ramsmooth.arith import (
    divisors,
    enumerate_smooth,
    is_cubefree,
    is_squarefree,
    kernel,
    mobius,
    smooth_context,
    smooth_part,
    squarefree_smooth_part,
    totient,
)
from ramsmooth.funclib import builtin
from ramsmooth.ramanujan import ramanujan_sum
from ramsmooth.transforms import (
    ArithFn,
    carmichael_coefficient,
    coefficient_difference_diagnostic,
    coefficient_table,
    eratosthenes_transform,
    ippification_formula,
    ippify,
    mobius_switch_sum,
    restrict_smooth,
    restrict_smooth_squarefree,
    smooth_carmichael_coefficient,
    smooth_carmichael_series,
    smooth_wintner_coefficient,
    squarefree_multiply_transform,
    squarefree_smooth_wintner_coefficient,
    wa_check,
    wintner_coefficient,
)
from helpers import random_transform_table, random_value_table


def oracle_inversion(F, d):
    """Independent Mobius inversion over a full divisor scan."""
    return sum((mobius(d // e) * F(e) for e in divisors(d)), Fraction(0))


def test_transform_examples():
    one = builtin("one")
    assert eratosthenes_transform(one, 1) == 1
    for d in range(2, 50):
        assert eratosthenes_transform(one, d) == 0
    identity = builtin("id")
    for d in range(1, 101):
        assert eratosthenes_transform(identity, d) == totient(d)
    soi = builtin("sigma_over_id")
    for n in range(1, 101):
        assert soi(n) == sum(Fraction(1, d) for d in divisors(n))
        assert eratosthenes_transform(soi, n) == Fraction(1, n)


def test_round_trip_inversion_builtins():
    for name in ("one", "id", "omega", "mu2", "phi", "sigma_over_id"):
        F = builtin(name)
        for n in range(1, 2001):
            assert sum(F.transform(d) for d in divisors(n)) == F(n), (name, n)


def test_round_trip_inversion_random_tables():
    rng = random.Random(12021)
    for i in range(100):
        F = random_value_table(rng, bound=2000, points=25, name=f"v{i}")
        sample = rng.sample(range(1, 2001), k=60)
        for n in sample:
            assert sum(F.transform(d) for d in divisors(n)) == F(n), (i, n)


def test_transform_oracle_agrees_with_inversion():
    rng = random.Random(5)
    for i in range(10):
        F = random_transform_table(rng, name=f"t{i}")
        for d in range(1, 80):
            assert F.transform(d) == oracle_inversion(F, d)


def test_ippify():
    omega = builtin("omega")
    assert ippify(omega) is omega  # already insensitive to prime powers
    identity = builtin("id")
    tilde = ippify(identity)
    assert tilde(8) == 2
    sigma = ArithFn("sigma", lambda n: sum(divisors(n)))
    assert ippify(sigma)(12) == 12  # sigma(6)
    for a in range(1, 200):
        assert tilde(a) == kernel(a)


def test_ippification_formula():
    identity = builtin("id")
    assert ippification_formula(identity, 1) == 1
    assert ippification_formula(identity, 8) == 2  # only t = 2 survives
    assert ippification_formula(identity, 12) == 6
    rng = random.Random(99)
    fns = [builtin("omega"), builtin("sigma_over_id")] + [
        random_value_table(rng, bound=600, name=f"v{i}") for i in range(3)
    ]
    for F in fns:
        for a in range(1, 601):
            assert ippification_formula(F, a) == F(kernel(a)), (F.name, a)


def test_restrict_smooth():
    omega = builtin("omega")
    identity = builtin("id")
    assert restrict_smooth(omega, 3, 60) == 2  # omega(12)
    assert restrict_smooth(identity, 2, 12) == 4
    for P in (2, 3, 5):
        for a in enumerate_smooth(P, 500):
            assert restrict_smooth(identity, P, a) == identity(a)
    # oracle route: divisor sum of the transform over smooth divisors
    rng = random.Random(3)
    F = random_value_table(rng, bound=400, name="r")
    for P in (2, 3):
        ctx = smooth_context(P)
        for a in range(1, 401):
            direct = sum(
                (F.transform(d) for d in divisors(a) if ctx.is_smooth(d)), Fraction(0)
            )
            assert restrict_smooth(F, P, a) == direct, (P, a)


def test_mobius_switch_sum():
    rng = random.Random(31)
    fns = [builtin("omega"), builtin("id")] + [
        random_value_table(rng, bound=500, name=f"m{i}") for i in range(3)
    ]
    for F in fns:
        for P in (2, 3, 5, 7):
            for a in range(1, 501):
                assert mobius_switch_sum(F, P, a) == F(smooth_part(a, P)), (F.name, P, a)


def _lemma35_sums(F, P, a):
    """The three displayed routes to F at the square-free smooth part."""
    ctx = smooth_context(P)
    ap = smooth_part(a, P)
    ka = kernel(a)
    first = sum(
        (F(t) for t in divisors(ap) if is_squarefree(t) and t % kernel(ap // t) == 0),
        Fraction(0),
    )
    second = sum(
        (F(t) for t in divisors(ka) if ctx.is_smooth(t) and ctx.is_sifted(ka // t)),
        Fraction(0),
    )
    third = sum(
        (
            F(t)
            for t in divisors(a)
            if is_squarefree(t) and ctx.is_smooth(t) and ka % t == 0 and ctx.is_sifted(ka // t)
        ),
        Fraction(0),
    )
    return first, second, third


def test_restrict_smooth_squarefree_and_triple_identity():
    identity = builtin("id")
    omega = builtin("omega")
    assert restrict_smooth_squarefree(identity, 3, 36) == 6
    assert restrict_smooth_squarefree(omega, 2, 8) == 1
    rng = random.Random(44)
    fns = [identity, omega] + [random_value_table(rng, bound=500, name=f"q{i}") for i in range(3)]
    for F in fns:
        for P in (2, 3, 5):
            for a in range(1, 501):
                target = F(squarefree_smooth_part(a, P))
                assert restrict_smooth_squarefree(F, P, a) == target
                s1, s2, s3 = _lemma35_sums(F, P, a)
                assert s1 == s2 == s3 == target, (F.name, P, a)


def test_squarefree_multiply_transform():
    identity = builtin("id")
    assert squarefree_multiply_transform(identity, 1) == 1
    assert squarefree_multiply_transform(identity, 4) == -2
    assert squarefree_multiply_transform(identity, 8) == 0  # not cube-free
    rng = random.Random(17)
    fns = [identity, builtin("omega")] + [
        random_value_table(rng, bound=400, name=f"s{i}") for i in range(3)
    ]
    for F in fns:
        for d in range(1, 401):
            direct = sum(
                (mobius(d // e) * mobius(e) ** 2 * F(e) for e in divisors(d)),
                Fraction(0),
            )
            assert squarefree_multiply_transform(F, d) == direct, (F.name, d)
            if not is_cubefree(d):
                assert squarefree_multiply_transform(F, d) == 0


def test_wintner_coefficient_finite_support():
    F = random_transform_table(random.Random(1), support_bound=10, points=3)
    supp = F.finite_transform_support()
    w1 = wintner_coefficient(F, 1, 100)
    assert w1.exact
    assert w1.value == sum(F.transform(d) / d for d in supp)
    two = [d for d in supp if d % 2 == 0]
    w2 = wintner_coefficient(F, 2, 100)
    assert w2.value == sum((F.transform(d) / d for d in two), Fraction(0))


def test_wintner_coefficient_zeta_values():
    soi = builtin("sigma_over_id")
    w = wintner_coefficient(soi, 1, 10**5)
    assert not w.exact
    assert abs(float(w.value) - math.pi**2 / 6) < 1e-4
    w2 = wintner_coefficient(soi, 2, 10**5)
    assert abs(float(w2.value) - math.pi**2 / 24) < 1e-4
    assert w.convergence_diagnostic() == "converging"
    # trace is a doubling schedule ending at the cutoff
    cuts = [c for c, _v in w.trace]
    assert cuts[-1] == 10**5 and all(b == 2 * a for a, b in zip(cuts, cuts[1:-1]))


def test_smooth_wintner_omega_exact():
    omega = builtin("omega")
    for P in (2, 3, 5, 7, 11):
        ctx = smooth_context(P)
        w1 = smooth_wintner_coefficient(omega, P, 1)
        assert w1.exact
        assert w1.value == sum(Fraction(1, p) for p in ctx.primes)
        for p in ctx.primes:
            assert smooth_wintner_coefficient(omega, P, p).value == Fraction(1, p)
        # vanishes off the smooth set and at non-prime moduli
        next_p = {2: 3, 3: 5, 5: 7, 7: 11, 11: 13}[P]
        assert smooth_wintner_coefficient(omega, P, next_p).value == 0
        assert smooth_wintner_coefficient(omega, P, 4).value == 0


def test_smooth_wintner_vanishes_off_smooth_set():
    # support claims, exact for the built-ins with known restricted support
    one = builtin("one")
    assert smooth_wintner_coefficient(one, 3, 1).value == 1
    for q in (5, 7, 35):
        assert smooth_wintner_coefficient(builtin("omega"), 3, q).value == 0
        assert smooth_wintner_coefficient(one, 3, q).value == 0


def test_squarefree_smooth_wintner():
    F = random_transform_table(random.Random(2), support_bound=6, points=3)
    # P = 2 has only two square-free smooth moduli
    w1 = squarefree_smooth_wintner_coefficient(F, 2, 1)
    assert w1.value == F.transform(1) + F.transform(2) / 2
    w2 = squarefree_smooth_wintner_coefficient(F, 2, 2)
    assert w2.value == F.transform(2) / 2
    identity = builtin("id")
    assert squarefree_smooth_wintner_coefficient(identity, 3, 6).value == Fraction(1, 3)
    for P in (2, 3, 5):
        assert squarefree_smooth_wintner_coefficient(identity, P, 4).value == 0


def test_carmichael_coefficient():
    one = builtin("one")
    c = carmichael_coefficient(one, 1, 777)
    assert c.value == 1
    assert all(v == 1 for _c, v in c.trace)
    c2 = carmichael_coefficient(one, 2, 1024)
    assert c2.value == 0  # alternating -1, +1 pairs cancel at even cutoffs
    soi = builtin("sigma_over_id")
    cz = carmichael_coefficient(soi, 1, 1 << 16)
    assert abs(float(cz.value) - math.pi**2 / 6) < 1e-2


def test_smooth_carmichael_matches_plain_for_constant():
    one = builtin("one")
    for P in (2, 5):
        for q in (1, 2, 3):
            a = smooth_carmichael_coefficient(one, P, q, 512)
            b = carmichael_coefficient(one, q, 512)
            assert a.value == b.value


def test_smooth_carmichael_omega():
    omega = builtin("omega")
    c = smooth_carmichael_coefficient(omega, 2, 2, 1 << 16)
    assert abs(c.value - Fraction(1, 2)) <= Fraction(1, 100)
    c3 = smooth_carmichael_coefficient(omega, 2, 3, 1 << 16)
    assert abs(c3.value) <= Fraction(1, 100)


def test_smooth_carmichael_series():
    omega = builtin("omega")
    s = smooth_carmichael_series(omega, 2, 2, 1 << 20)
    assert abs(s.value - Fraction(1, 2)) <= Fraction(1, 1000)
    one = builtin("one")
    t = smooth_carmichael_series(one, 3, 1, 1 << 20)
    assert abs(t.value - 1) <= Fraction(1, 1000)
    assert t.trace[-1][1] > t.trace[2][1]  # increasing toward 1
    # weighted variant at a modulus with no smooth multiples in the transform
    w = smooth_carmichael_series(omega, 3, 6, 1 << 20, ipp_weight=True)
    assert w.value == 0
    with pytest.raises(ValueError):
        smooth_carmichael_series(omega, 2, 3, 100)  # q outside the smooth set
    with pytest.raises(ValueError):
        smooth_carmichael_series(omega, 3, 4, 100, ipp_weight=True)  # q not square-free


def test_difference_diagnostic_constant_one():
    one = builtin("one")
    d = coefficient_difference_diagnostic(one, 1, 500)
    assert d.lhs == 1 and d.main == 1 and d.residual == 0


def test_difference_diagnostic_finite_support_decay():
    F = random_transform_table(random.Random(8), support_bound=2, points=2)
    values = [abs(coefficient_difference_diagnostic(F, 1, 1 << k).residual) for k in range(2, 12)]
    assert values[-1] == 0  # exact telescoping at power-of-two cutoffs
    assert max(values[-4:]) <= max(values[:4])


def test_difference_diagnostic_ratio_bounded():
    omega = builtin("omega")
    for k in range(10, 17):
        d = coefficient_difference_diagnostic(omega, 2, 1 << k, P=2)
        assert d.ratio is not None and d.ratio <= 10, (k, float(d.ratio))


def test_wa_check_traces():
    soi = builtin("sigma_over_id")
    traces = wa_check(soi, 4096)
    zeta2_bound = Fraction(1645, 1000)
    assert all(v < zeta2_bound for _c, v in traces.wa)
    one = builtin("one")
    t1 = wa_check(one, 256)
    assert all(v == 1 for _c, v in t1.wa)
    # mean decay without summability: the log-decay transform
    etd = builtin("etd_not_wa")
    t = wa_check(etd, 1 << 12)
    wa_vals = [v for _c, v in t.wa]
    etd_vals = [v for _c, v in t.etd]
    assert wa_vals[-1] > wa_vals[len(wa_vals) // 2]  # still growing
    assert etd_vals[-1] < etd_vals[len(etd_vals) // 2]  # mean decays


def test_coefficient_table_builder():
    omega = builtin("omega")
    table = coefficient_table("p-wintner", omega, range(1, 31), 100, P=5)
    assert table.support() == [1, 2, 3, 5]
    with pytest.raises(ValueError):
        coefficient_table("p-wintner", omega, [1], 100)
    with pytest.raises(ValueError):
        coefficient_table("nope", omega, [1], 100)
    one_table = coefficient_table("wintner", builtin("one"), range(1, 6), 100)
    assert one_table.entries == {1: 1, 2: 0, 3: 0, 4: 0, 5: 0}
