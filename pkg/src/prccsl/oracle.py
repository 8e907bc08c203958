"""Brute-force reference semantics used only by the test suite.

Everything here works on date lists (the sorted step indices at which
a clock ticks) and recomputes histories from scratch at every step.
It deliberately shares no algorithmic code with the streaming engines
in exprs.py and relations.py: slow, obvious, and independent is the
point.  Not exported through the CLI.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Mapping, Sequence

from .exprs import ClockExpr, DelayFor, Inf, PeriodicOn, Ref, Sup

__all__ = ["date_history", "oracle_relation", "oracle_expr"]

DateList = list[int]


def date_history(dates: Sequence[int], step: int) -> int:
    """h(step) for a clock given as a sorted date list: dates < step."""
    return bisect_left(dates, step)


def oracle_relation(
    kind: object, c1: Sequence[int], c2: Sequence[int], n: int
) -> tuple[int, int]:
    """Count (k, m) for one relation by literal per-step summation.

    ``kind`` may be a RelationKind member or its string value.  ``c1``
    and ``c2`` are sorted date lists with entries in [0, n).
    """
    name = getattr(kind, "value", kind)
    d1 = sorted(c1)
    d2 = sorted(c2)
    s1 = set(d1)
    s2 = set(d2)
    k = m = 0
    for i in range(n):
        t1 = i in s1
        t2 = i in s2
        h1 = date_history(d1, i)
        h2 = date_history(d2, i)
        if name == "subclock":
            if t1:
                k += 1
                m += t1 and t2
        elif name == "coincidence":
            if t1 or t2:
                k += 1
                m += t1 and t2
        elif name == "exclusion":
            if t1 or t2:
                k += 1
                m += t1 != t2
        elif name == "causality":
            if t1:
                k += 1
                m += h1 >= h2
        elif name == "precedence":
            if t1:
                k += 1
                m += h1 >= h2 and not (h1 == h2 and t2)
        else:
            raise ValueError(f"unknown relation kind {kind!r}")
    return k, m


def oracle_expr(expr: ClockExpr, dates: Mapping[str, Sequence[int]], n: int) -> DateList:
    """Evaluate an expression to the date list of its derived clock.

    Uses the date-based definitions: PeriodicOn keeps every p-th base
    date starting at the first; DelayFor maps each base date to the
    d-th ref date strictly after it (simultaneous expiries collapse to
    one date); Inf takes elementwise minima plus the surplus of the
    clock with more ticks; Sup takes elementwise maxima truncated to
    the shorter clock.
    """
    if isinstance(expr, Ref):
        out = sorted(dates[expr.clock])
        if out and not 0 <= out[0] <= out[-1] < n:
            raise ValueError(f"dates of {expr.clock!r} outside [0, {n})")
        return out
    if isinstance(expr, PeriodicOn):
        base = oracle_expr(expr.base, dates, n)
        return base[:: expr.period]
    if isinstance(expr, DelayFor):
        base = oracle_expr(expr.base, dates, n)
        ref = oracle_expr(expr.ref, dates, n)
        hits = set()
        for b in base:
            target = bisect_right(ref, b) + expr.delay - 1
            if target < len(ref):
                hits.add(ref[target])
        return sorted(hits)
    if isinstance(expr, Inf):
        a = oracle_expr(expr.left, dates, n)
        b = oracle_expr(expr.right, dates, n)
        shared = [min(x, y) for x, y in zip(a, b)]
        longer = a if len(a) > len(b) else b
        return shared + list(longer[len(shared):])
    if isinstance(expr, Sup):
        a = oracle_expr(expr.left, dates, n)
        b = oracle_expr(expr.right, dates, n)
        return [max(x, y) for x, y in zip(a, b)]
    raise ValueError(f"not a clock expression: {expr!r}")
