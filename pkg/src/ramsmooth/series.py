"""Partial sums with doubling-cutoff traces.

Truncated series never come back as a bare number: every evaluator returns a
`Partial` carrying the value, the cutoff, and the trace of partial values at
doubling cutoffs.  Convergence is reported as a diagnostic, never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .arith import exact_sum

TracePoint = tuple[int, Fraction]


def doubling_cutoffs(x: int) -> list[int]:
    """1, 2, 4, ... capped at x (x always included as the last point)."""
    if x < 1:
        raise ValueError(f"cutoff must be >= 1, got {x}")
    cuts = []
    c = 1
    while c < x:
        cuts.append(c)
        c *= 2
    cuts.append(x)
    return cuts


@dataclass(frozen=True)
class Partial:
    """A (possibly truncated) series value with its doubling trace."""

    value: Fraction
    cutoff: int
    trace: tuple[TracePoint, ...] = field(default_factory=tuple)
    exact: bool = False

    def convergence_diagnostic(self) -> str:
        """'exact', 'converging', 'not-converging', or 'short-trace'.

        'converging' means the last three trace deltas each shrank by a
        factor >= 1.5 -- a heuristic report, not a proof of convergence.
        """
        if self.exact:
            return "exact"
        values = [v for _c, v in self.trace]
        deltas = [abs(b - a) for a, b in zip(values, values[1:])]
        deltas = [d for d in deltas[-4:]]
        if len(deltas) < 3:
            return "short-trace"
        shrinking = all(
            prev >= nxt * Fraction(3, 2) or nxt == 0
            for prev, nxt in zip(deltas, deltas[1:])
        )
        return "converging" if shrinking else "not-converging"


def exact_partial(value: Fraction, cutoff: int = 1) -> Partial:
    return Partial(value=value, cutoff=cutoff, trace=((cutoff, value),), exact=True)


def traced_sum(pairs: Iterable[tuple[int, Fraction]], x: int) -> tuple[Fraction, tuple[TracePoint, ...]]:
    """Accumulate (index, term) pairs with ascending index <= x.

    Returns the total and the cumulative value at each doubling cutoff.
    Terms inside a block are combined with balanced exact summation.
    """
    cuts = doubling_cutoffs(x)
    trace: list[TracePoint] = []
    running = Fraction(0)
    block: list[Fraction] = []
    ci = 0
    for n, term in pairs:
        if n > x:
            break
        while n > cuts[ci]:
            running += exact_sum(block)
            block = []
            trace.append((cuts[ci], running))
            ci += 1
        block.append(term)
    running += exact_sum(block)
    for cut in cuts[ci:]:
        trace.append((cut, running))
    return running, tuple(trace)
