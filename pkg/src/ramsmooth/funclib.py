"""Built-in arithmetic functions with exact known transforms, plus loading of
user-supplied function tables.

Table file format (UTF-8 text):
  - `#` starts a comment, blank lines are skipped
  - header `@as_transform` makes the table define F' instead of F
  - header `@bound N` sets the domain bound (defaults to the largest n)
  - data lines are `n value`, whitespace-separated, with value either an
    integer `k` or a rational `p/q`
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .arith import (
    Rational,
    _check_positive,
    certified_ln,
    divisors,
    factorize,
    is_prime,
    is_squarefree,
    mobius,
    smooth_context,
    totient,
)
from .transforms import (
    ArithFn,
    SQUAREFREE_SUPPORT,
    TransformSupport,
    UNKNOWN_SUPPORT,
    finite_support,
    squarefree_multiply_transform,
)


def _cubefree_smooth(P: int) -> list[int]:
    out = [1]
    for p in smooth_context(P).primes:
        out = [m * p**e for m in out for e in (0, 1, 2)]
    return sorted(out)


def _primes_in(P: int) -> list[int]:
    return list(smooth_context(P).primes)


def _omega_eval(n: int) -> int:
    return len(factorize(n))


def _sigma_over_id(n: int) -> Fraction:
    return Fraction(sum(divisors(n)), n)


def _make_catalog() -> dict[str, ArithFn]:
    zero = ArithFn(
        "zero",
        lambda n: 0,
        lambda d: 0,
        is_ipp=True,
        is_nsl=True,
        transform_support=finite_support(()),
    )
    one = ArithFn(
        "one",
        lambda n: 1,
        lambda d: 1 if d == 1 else 0,
        is_ipp=True,
        is_nsl=True,
        transform_support=finite_support((1,)),
    )
    identity = ArithFn("id", lambda n: n, totient)
    omega = ArithFn(
        "omega",
        _omega_eval,
        lambda d: 1 if is_prime(d) else 0,
        is_ipp=True,
        is_nsl=True,
        transform_support=SQUAREFREE_SUPPORT,
        smooth_transform_fn=_primes_in,
    )
    # mu^2 is *not* insensitive to prime powers (mu^2(4)=0 != mu^2(2)=1);
    # its transform is cube-free supported, which the smooth hook encodes.
    one_fn = one
    mu_squared = ArithFn(
        "mu2",
        lambda n: mobius(n) ** 2,
        lambda d: squarefree_multiply_transform(one_fn, d),
        is_nsl=True,
        smooth_transform_fn=_cubefree_smooth,
    )
    phi = ArithFn("phi", totient)
    sigma_over_id = ArithFn(
        "sigma_over_id",
        _sigma_over_id,
        lambda d: Fraction(1, d),
        is_nsl=True,
    )
    # mean-decay-without-summability example: F'(1) = 1, F'(d) = 1/ln d.
    # The only non-rational built-in; its logarithm is a certified dyadic
    # approximation (64 fractional bits), fine for the decay traces it feeds.
    etd_not_wa = ArithFn(
        "etd_not_wa",
        None,  # patched below: eval is the divisor sum of the transform
        lambda d: 1 if d == 1 else 1 / certified_ln(d),
    )
    etd_not_wa._eval_fn = lambda n: sum(etd_not_wa.transform(d) for d in divisors(n))
    return {
        F.name: F
        for F in (zero, one, identity, omega, mu_squared, phi, sigma_over_id, etd_not_wa)
    }


_CATALOG = _make_catalog()


def builtin_names() -> list[str]:
    return sorted(_CATALOG)


def builtin(name: str) -> ArithFn:
    """Look up a built-in arithmetic function by name.

    The catalog is immutable; instances are shared so their memo tables
    accumulate across uses.
    """
    try:
        return _CATALOG[name]
    except KeyError:
        raise ValueError(
            f"unknown function {name!r}; available: {', '.join(builtin_names())}"
        ) from None


def mu2_id_over_phi(F: ArithFn) -> ArithFn:
    """The combination mu^2(n) * F(n) * n / phi(n).

    Being square-free supported, its transform is cube-free supported, so its
    P-smooth coefficient sums are finite and exact; the transform itself is
    computed by the closed two-case formula.
    """
    key = "mu2_id_over_phi"
    cached = F._aux.get(key)
    if cached is not None:
        return cached

    def ratio_eval(n: int) -> Fraction:
        if not is_squarefree(n):
            return Fraction(0)
        return F(n) * Fraction(n, totient(n))

    inner = ArithFn(f"{F.name}*id/phi", lambda n: F(n) * Fraction(n, totient(n)))
    out = ArithFn(
        f"mu2*{F.name}*id/phi",
        ratio_eval,
        lambda d: squarefree_multiply_transform(inner, d),
        is_nsl=F.is_nsl,
        smooth_transform_fn=_cubefree_smooth,
    )
    F._aux[key] = out
    return out


def from_table(
    pairs: Iterable[tuple[int, Rational]],
    bound: int | None = None,
    *,
    as_transform: bool = False,
    name: str = "table",
) -> ArithFn:
    """Build an ArithFn from (n, value) pairs, zero off the listed n.

    With as_transform the table defines F' directly (finite support, exact
    coefficient sums); otherwise it defines F on [1, bound] and the transform
    comes from Mobius inversion.
    """
    table: dict[int, Fraction] = {}
    for n, v in pairs:
        _check_positive(n)
        if n in table:
            raise ValueError(f"duplicate table entry for n = {n}")
        table[n] = Fraction(v)
    if bound is None:
        bound = max(table, default=1)
    for n in table:
        if n > bound:
            raise ValueError(f"table entry n = {n} exceeds the bound {bound}")

    if as_transform:
        support = tuple(sorted(n for n, v in table.items() if v != 0))

        def eval_fn(n: int) -> Fraction:
            return sum((v for m, v in table.items() if n % m == 0), Fraction(0))

        return ArithFn(
            name,
            eval_fn,
            lambda d: table.get(d, Fraction(0)),
            transform_support=finite_support(support),
        )

    return ArithFn(name, lambda n: table.get(n, Fraction(0)))


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_table(text: str, *, name: str = "table") -> ArithFn:
    """Parse the text table format described in the module docstring."""
    as_transform = False
    bound: int | None = None
    pairs: list[tuple[int, Fraction]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            if line == "@as_transform":
                as_transform = True
            elif line.startswith("@bound"):
                parts = line.split()
                if len(parts) != 2:
                    raise ValueError(f"line {lineno}: expected '@bound N'")
                bound = int(parts[1])
            else:
                raise ValueError(f"line {lineno}: unknown directive {line!r}")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'n value', got {line!r}")
        pairs.append((int(parts[0]), parse_rational(parts[1])))
    return from_table(pairs, bound, as_transform=as_transform, name=name)


def load_table(path: str | Path) -> ArithFn:
    path = Path(path)
    return parse_table(path.read_text(encoding="utf-8"), name=path.stem)


def catalog_self_check(bound: int = 2000) -> list[str]:
    """Verify every built-in's declared transform against Mobius inversion
    on n <= bound.  Returns the list of failures (empty when healthy)."""
    failures = []
    for name, F in _CATALOG.items():
        if F._transform_fn is None:
            continue
        for n in range(1, bound + 1):
            direct = sum((Fraction(F._transform_fn(d)) for d in divisors(n)), Fraction(0))
            if direct != F(n):
                failures.append(f"{name}: divisor sum of transform misses F({n})")
                break
    return failures
