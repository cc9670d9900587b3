"""Truncated Laurent series in z over the rationals.

A series carries its own correctness window: every coefficient of an
exponent below ``precision`` is exact, nothing is known at or above it.
``precision`` may be ``math.inf`` for series that are known exactly
(polynomials in 1/z and z, e.g. pole parts).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .exact_arith import bernoulli, format_rational

__all__ = [
    "LaurentSeries",
    "PrecisionError",
    "RenormalizationError",
    "ls_add",
    "ls_mul",
    "ls_derivative",
    "ls_pole_part",
    "ls_regular_part",
    "ls_constant_term",
    "ls_x",
]

Precision = Union[int, float]
INF = math.inf


class PrecisionError(ArithmeticError):
    """A computation needs coefficients beyond a series' correctness window."""


class RenormalizationError(ArithmeticError):
    """A series that must be regular at z = 0 still carries a pole."""


@dataclass(frozen=True)
class LaurentSeries:
    valuation: int
    coeffs: tuple[Fraction, ...]
    precision: Precision

    def __post_init__(self) -> None:
        if self.coeffs and self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero; use LaurentSeries.make")
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing coefficient must be nonzero; use LaurentSeries.make")
        if self.coeffs and self.valuation + len(self.coeffs) > self.precision:
            raise ValueError("coefficients reach beyond the precision bound")

    @classmethod
    def make(
        cls, valuation: int, coeffs: Iterable[Fraction | int], precision: Precision
    ) -> "LaurentSeries":
        """Normalize: drop terms at/above ``precision`` and strip zeros at both ends."""
        cs = [Fraction(c) for c in coeffs]
        if precision != INF:
            keep = max(0, int(precision) - valuation)
            cs = cs[:keep]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            return cls.zero(precision)
        return cls(valuation + lo, tuple(cs[lo:hi]), precision)

    @classmethod
    def zero(cls, precision: Precision = INF) -> "LaurentSeries":
        val = 0 if precision == INF else int(precision)
        return cls(val, (), precision)

    @classmethod
    def constant(cls, c: Fraction | int, precision: Precision = INF) -> "LaurentSeries":
        return cls.make(0, [c], precision)

    @classmethod
    def monomial(cls, c: Fraction | int, exponent: int, precision: Precision = INF) -> "LaurentSeries":
        return cls.make(exponent, [c], precision)

    @classmethod
    def from_dict(cls, terms: dict[int, Fraction | int], precision: Precision = INF) -> "LaurentSeries":
        if not terms:
            return cls.zero(precision)
        lo, hi = min(terms), max(terms)
        return cls.make(lo, [terms.get(e, 0) for e in range(lo, hi + 1)], precision)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, exponent: int) -> Fraction:
        if exponent >= self.precision:
            raise PrecisionError(
                f"coefficient of z^{exponent} requested, series known only below z^{self.precision}"
            )
        i = exponent - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def terms(self) -> dict[int, Fraction]:
        return {self.valuation + i: c for i, c in enumerate(self.coeffs) if c}

    def pole_order(self) -> int:
        """Largest m with a nonzero z^-m term, 0 if none."""
        if not self.coeffs:
            return 0
        return max(0, -self.valuation)

    def truncate(self, precision: Precision) -> "LaurentSeries":
        if precision > self.precision:
            raise PrecisionError(f"cannot raise precision {self.precision} to {precision}")
        return LaurentSeries.make(self.valuation, self.coeffs, precision)

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equal on every exponent both series know."""
        p = min(self.precision, other.precision)
        return self.truncate(p) == other.truncate(p)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        return ls_add(self, other)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return ls_add(self, -other)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.valuation, tuple(-c for c in self.coeffs), self.precision)

    def __mul__(self, other: "LaurentSeries | Fraction | int") -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return ls_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c: Fraction | int) -> "LaurentSeries":
        c = Fraction(c)
        if c == 0:
            return LaurentSeries.zero(self.precision)
        return LaurentSeries(self.valuation, tuple(c * a for a in self.coeffs), self.precision)

    def __str__(self) -> str:
        parts = []
        for e, c in sorted(self.terms().items()):
            parts.append(f"{format_rational(c)}*z^{e}")
        body = " + ".join(parts) if parts else "0"
        if self.precision == INF:
            return body
        return f"{body} + O(z^{self.precision})"


def ls_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    prec = min(a.precision, b.precision)
    if a.is_zero():
        return b.truncate(prec)
    if b.is_zero():
        return a.truncate(prec)
    lo = min(a.valuation, b.valuation)
    hi = max(a.valuation + len(a.coeffs), b.valuation + len(b.coeffs))
    if prec != INF:
        hi = min(hi, int(prec))
    if hi <= lo:
        return LaurentSeries.zero(prec)
    out = [Fraction(0)] * (hi - lo)
    for s in (a, b):
        off = s.valuation - lo
        for i, c in enumerate(s.coeffs):
            if off + i < len(out):
                out[off + i] += c
    return LaurentSeries.make(lo, out, prec)


def ls_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Cauchy product; known below min(val(a) + prec(b), val(b) + prec(a))."""
    if (a.is_zero() and a.precision == INF) or (b.is_zero() and b.precision == INF):
        return LaurentSeries.zero()
    prec = min(a.valuation + b.precision, b.valuation + a.precision)
    if a.is_zero() or b.is_zero():
        return LaurentSeries.zero(prec)
    val = a.valuation + b.valuation
    n = len(a.coeffs) + len(b.coeffs) - 1
    if prec != INF:
        n = min(n, int(prec) - val)
    if n <= 0:
        return LaurentSeries.zero(prec)
    out = [Fraction(0)] * n
    bc = b.coeffs
    for i, x in enumerate(a.coeffs):
        if i >= n:
            break
        for j in range(min(len(bc), n - i)):
            out[i + j] += x * bc[j]
    return LaurentSeries.make(val, out, prec)


def ls_derivative(a: LaurentSeries) -> LaurentSeries:
    """d/dz, losing one order of precision."""
    prec = a.precision - 1
    if a.is_zero():
        return LaurentSeries.zero(prec)
    out = [(a.valuation + i) * c for i, c in enumerate(a.coeffs)]
    return LaurentSeries.make(a.valuation - 1, out, prec)


def ls_pole_part(a: LaurentSeries) -> LaurentSeries:
    """Minimal subtraction projection: keep the z^n terms with n < 0 (exact result)."""
    if a.precision < 0:
        raise PrecisionError(f"pole part needs precision >= 0, series has {a.precision}")
    return LaurentSeries.from_dict({e: c for e, c in a.terms().items() if e < 0})


def ls_regular_part(a: LaurentSeries) -> LaurentSeries:
    """(id - pole part): the z^n terms with n >= 0, same precision."""
    if a.precision < 0:
        raise PrecisionError(f"regular part needs precision >= 0, series has {a.precision}")
    return LaurentSeries.from_dict({e: c for e, c in a.terms().items() if e >= 0}, a.precision)


def ls_constant_term(a: LaurentSeries) -> Fraction:
    if any(e < 0 for e in a.terms()):
        raise RenormalizationError(f"series has a pole at z = 0: {a}")
    if a.precision < 1:
        raise PrecisionError(f"constant term unknown, series known only below z^{a.precision}")
    return a.coefficient(0)


@lru_cache(maxsize=64)
def ls_x(prec: int) -> LaurentSeries:
    """e^z/(1 - e^z) = -sum_m (-1)^m B_m z^(m-1)/m!, correct below z^prec."""
    if prec < 0:
        raise ValueError(f"prec must be >= 0, got {prec}")
    coeffs = []
    fact = 1
    for m in range(prec + 1):
        if m:
            fact *= m
        coeffs.append(-((-1) ** m) * bernoulli(m) / fact)
    return LaurentSeries.make(-1, coeffs, prec)
