"""Truncated power series with rational coefficients.

:class:`UniSeries` is a univariate series known through degree ``degree_cap``;
:class:`MultiSeries` is a series in t1..tn known through total degree
``degree_cap``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .exact_arith import format_rational, multinomial

__all__ = ["UniSeries", "MultiSeries", "exp_series", "weak_compositions", "all_exponents"]


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class UniSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("UniSeries needs at least the constant coefficient")

    @classmethod
    def make(cls, coeffs: Iterable[Fraction | int], degree_cap: int | None = None) -> "UniSeries":
        cs = [Fraction(c) for c in coeffs]
        if degree_cap is not None:
            cs = (cs + [Fraction(0)] * (degree_cap + 1))[: degree_cap + 1]
        return cls(tuple(cs))

    @classmethod
    def from_function(cls, fn: Callable[[int], Fraction | int], degree_cap: int) -> "UniSeries":
        return cls(tuple(Fraction(fn(m)) for m in range(degree_cap + 1)))

    @property
    def degree_cap(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int) -> Fraction:
        if m > self.degree_cap:
            raise IndexError(f"degree {m} beyond cap {self.degree_cap}")
        return self.coeffs[m]

    def truncate(self, degree_cap: int) -> "UniSeries":
        if degree_cap > self.degree_cap:
            raise ValueError(f"cannot extend cap {self.degree_cap} to {degree_cap}")
        return UniSeries(self.coeffs[: degree_cap + 1])

    def __add__(self, other: "UniSeries") -> "UniSeries":
        cap = min(self.degree_cap, other.degree_cap)
        return UniSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(cap + 1)))

    def __neg__(self) -> "UniSeries":
        return UniSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniSeries") -> "UniSeries":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "UniSeries":
        return UniSeries(tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "UniSeries") -> "UniSeries":
        cap = min(self.degree_cap, other.degree_cap)
        out = [Fraction(0)] * (cap + 1)
        a, b = self.coeffs, other.coeffs
        for i in range(cap + 1):
            if a[i]:
                for j in range(cap + 1 - i):
                    out[i + j] += a[i] * b[j]
        return UniSeries(tuple(out))

    def derivative(self) -> "UniSeries":
        if self.degree_cap == 0:
            raise ValueError("derivative of a degree-0 truncation carries no information")
        return UniSeries(tuple(m * self.coeffs[m] for m in range(1, self.degree_cap + 1)))

    def negate_var(self) -> "UniSeries":
        return UniSeries(tuple(c if m % 2 == 0 else -c for m, c in enumerate(self.coeffs)))

    def valuation(self) -> int | None:
        for m, c in enumerate(self.coeffs):
            if c:
                return m
        return None

    def divide(self, other: "UniSeries") -> "UniSeries":
        """Exact quotient; a common factor s^v is cancelled first, so the cap drops by v."""
        v = other.valuation()
        if v is None:
            raise ZeroDivisionError("division by the zero series")
        if any(self.coeffs[m] for m in range(min(v, len(self.coeffs)))):
            raise ValueError("quotient is not a power series: numerator vanishes to lower order")
        num = self.coeffs[v:]
        den = other.coeffs[v:]
        cap = min(len(num), len(den)) - 1
        q: list[Fraction] = []
        lead = den[0]
        for m in range(cap + 1):
            s = num[m] - sum((q[j] * den[m - j] for j in range(m)), Fraction(0))
            q.append(s / lead)
        return UniSeries(tuple(q))

    def __str__(self) -> str:
        parts = [f"{format_rational(c)}*x^{m}" for m, c in enumerate(self.coeffs) if c]
        return (" + ".join(parts) or "0") + f" + O(x^{self.degree_cap + 1})"


def exp_series(degree_cap: int, sign: int = 1) -> UniSeries:
    """e^(sign * s) through degree_cap."""
    return UniSeries.from_function(lambda m: Fraction(sign**m, factorial(m)), degree_cap)


Exps = tuple[int, ...]


class MultiSeries:
    """Series in t1..tn truncated at total degree ``degree_cap``; zero terms are not stored."""

    __slots__ = ("nvars", "degree_cap", "_terms")

    def __init__(self, nvars: int, degree_cap: int, terms: Mapping[Exps, Fraction | int] = ()):
        if nvars < 1 or degree_cap < 0:
            raise ValueError("nvars must be >= 1 and degree_cap >= 0")
        self.nvars = nvars
        self.degree_cap = degree_cap
        clean: dict[Exps, Fraction] = {}
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent tuple {e} for {nvars} variables")
            if sum(e) > degree_cap:
                continue
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, nvars: int, degree_cap: int, c: Fraction | int = 1) -> "MultiSeries":
        return cls(nvars, degree_cap, {(0,) * nvars: c})

    @classmethod
    def from_linear_form(
        cls, uni: UniSeries, nvars: int, first: int, degree_cap: int
    ) -> "MultiSeries":
        """Substitute s = t_first + ... + t_n (first is 1-based) into ``uni``."""
        if uni.degree_cap < degree_cap:
            raise ValueError(f"univariate cap {uni.degree_cap} < requested {degree_cap}")
        width = nvars - first + 1
        terms: dict[Exps, Fraction] = {}
        for m in range(degree_cap + 1):
            a = uni.coeffs[m]
            if not a:
                continue
            for split in weak_compositions(m, width):
                e = (0,) * (first - 1) + split
                terms[e] = terms.get(e, Fraction(0)) + a * multinomial(m, split[:-1])
        return cls(nvars, degree_cap, terms)

    @property
    def terms(self) -> dict[Exps, Fraction]:
        return dict(self._terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        if sum(exps) > self.degree_cap:
            raise ValueError(f"total degree {sum(exps)} exceeds cap {self.degree_cap}")
        return self._terms.get(exps, Fraction(0))

    def _check_compatible(self, other: "MultiSeries") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.degree_cap == other.degree_cap
            and self._terms == other._terms
        )

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._check_compatible(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiSeries(self.nvars, min(self.degree_cap, other.degree_cap), out)

    def __neg__(self) -> "MultiSeries":
        return MultiSeries(self.nvars, self.degree_cap, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        self._check_compatible(other)
        cap = min(self.degree_cap, other.degree_cap)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            for e2, c2 in other._terms.items():
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiSeries(self.nvars, cap, out)

    def negate_vars(self) -> "MultiSeries":
        return MultiSeries(
            self.nvars,
            self.degree_cap,
            {e: (c if sum(e) % 2 == 0 else -c) for e, c in self._terms.items()},
        )

    def embed(self, nvars: int, offset: int) -> "MultiSeries":
        """View as a series in ``nvars`` variables, shifting variable i to i + offset."""
        if offset + self.nvars > nvars:
            raise ValueError("embedding does not fit")
        pad_l, pad_r = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return MultiSeries(nvars, self.degree_cap, {pad_l + e + pad_r: c for e, c in self._terms.items()})

    def to_records(self) -> list[dict[str, object]]:
        return [
            {"exps": list(e), "coef": format_rational(c)}
            for e, c in sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        ]

    @classmethod
    def from_records(cls, nvars: int, degree_cap: int, records: Iterable[Mapping]) -> "MultiSeries":
        return cls(nvars, degree_cap, {tuple(r["exps"]): Fraction(r["coef"]) for r in records})

    def __repr__(self) -> str:
        return f"MultiSeries(nvars={self.nvars}, degree_cap={self.degree_cap}, terms={len(self._terms)})"


def all_exponents(nvars: int, degree_cap: int) -> Iterator[Exps]:
    for total in range(degree_cap + 1):
        yield from weak_compositions(total, nvars)
