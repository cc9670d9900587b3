"""Exact rational scalars, Bernoulli numbers and binomial-type coefficients.

Scalars are :class:`fractions.Fraction`, which is always stored reduced with
a positive denominator, so equality of values is structural.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

__all__ = [
    "Rational",
    "bernoulli",
    "binomial",
    "multinomial",
    "format_rational",
    "parse_rational",
]

Rational = Fraction


class BernoulliCache:
    """Growable table of B_0, B_1, ... with B_1 = -1/2.

    Values come from inverting the power series (e^x - 1)/x, i.e. solving
    sum_{j<=m} B_j / (j! (m-j+1)!) = [m == 0] for B_m term by term.
    Growth happens under a lock; a reader never sees a partially filled table
    because the list is only ever appended to.
    """

    def __init__(self) -> None:
        self._values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values)

    def get(self, m: int) -> Fraction:
        if m < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {m}")
        values = self._values
        if m < len(values):
            return values[m]
        with self._lock:
            self._grow(m)
        return self._values[m]

    def _grow(self, m: int) -> None:
        values = self._values
        # divisor series (e^x - 1)/x has coefficients 1/(i+1)!
        div = [Fraction(1, factorial(i + 1)) for i in range(m + 1)]
        inv_fact = [Fraction(1, factorial(i)) for i in range(m + 1)]
        # q_i = B_i / i! are the quotient coefficients
        q = [values[i] * inv_fact[i] for i in range(len(values))]
        for n in range(len(values), m + 1):
            s = sum((q[j] * div[n - j] for j in range(n)), Fraction(0))
            q.append(-s)
            values.append(-s * factorial(n))


_CACHE = BernoulliCache()


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m from x/(e^x - 1) = sum B_m x^m / m!  (B_1 = -1/2)."""
    return _CACHE.get(m)


def binomial(n: int, k: int) -> int:
    """n choose k, zero when k > n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / (prod(parts_i!) * (n - sum(parts))!)."""
    rest = n - sum(parts)
    if rest < 0 or any(p < 0 for p in parts):
        raise ValueError(f"parts {list(parts)} do not fit in {n}")
    out = 1
    left = n
    for p in parts:
        out *= comb(left, p)
        left -= p
    return out


def format_rational(q: Fraction | int) -> str:
    """'p/q' with q > 0, or 'p' for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())
