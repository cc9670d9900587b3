"""Bernoulli-sum values of ζ_FKMT and ζ_EMS at non-positive integers, their
generating functions, and the identities tying them together.

Generating-function convention (both kinds):

    Z(t1, ..., tn) = Σ (-t1)^k1 ... (-tn)^kn / (k1! ... kn!) * ζ(-k1, ..., -kn)

and each Z is a product over i of a univariate factor evaluated at
s_i = t_i + ... + t_n.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Callable, Iterator, Sequence

from .exact_arith import bernoulli, binomial, multinomial
from .series import MultiSeries, UniSeries, exp_series, weak_compositions

__all__ = [
    "compositions",
    "zeta_fkmt",
    "zeta_ems_closed",
    "zeta_fkmt_recurrence",
    "zeta_ems_recurrence",
    "fkmt_factor",
    "ems_factor",
    "conversion_factor_uni",
    "gen_fkmt",
    "gen_ems",
    "conversion_factor",
    "negate_vars",
    "coefficient_to_zeta",
    "fkmt_recurrence_check",
    "ems_recurrence_check",
    "prefix_split_check",
    "split_merge_check",
    "averaged_split_check",
    "frak_h_identity_check",
    "ems_from_fkmt",
    "fkmt_from_ems",
    "conversion_identity_check",
    "factorized_check",
]

Comp = tuple[int, ...]


def compositions(max_depth: int, max_weight: int, min_depth: int = 1) -> Iterator[Comp]:
    """All (k1..kn) with min_depth <= n <= max_depth and Σk <= max_weight,
    ordered by depth, then lexicographically."""
    for n in range(min_depth, max_depth + 1):
        yield from sorted(
            c for total in range(max_weight + 1) for c in weak_compositions(total, n)
        )


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


# -- closed forms ------------------------------------------------------------


def _triangular_sum(ks: Comp, row_weight: Callable[[int], Fraction], layout: str) -> Fraction:
    """Σ over triangular arrays ν[i][j] (i <= j) of Π multinomials * Π_i row_weight(row_i)."""
    n = len(ks)
    total = Fraction(0)
    if layout == "column":
        # column j splits k_j among rows 0..j; row i collects ν[i][i..n-1]
        columns = [list(weak_compositions(k, j + 1)) for j, k in enumerate(ks)]
        for choice in product(*columns):
            coef = 1
            rows = [0] * n
            for j, col in enumerate(choice):
                coef *= multinomial(ks[j], col[:-1])
                for i, v in enumerate(col):
                    rows[i] += v
            total += coef * prod((row_weight(r) for r in rows), start=Fraction(1))
    elif layout == "row":
        # the other reading of the index condition: row i splits k_i among columns i..n-1
        rows_choices = [list(weak_compositions(k, n - i)) for i, k in enumerate(ks)]
        for choice in product(*rows_choices):
            coef = 1
            for i, row in enumerate(choice):
                coef *= multinomial(ks[i], row[:-1])
            total += coef * prod((row_weight(sum(r)) for r in choice), start=Fraction(1))
    else:
        raise ValueError(f"unknown index layout {layout!r}")
    return _sign(sum(ks)) * total


@lru_cache(maxsize=None)
def _zeta_fkmt(ks: Comp, layout: str) -> Fraction:
    return _triangular_sum(ks, lambda r: bernoulli(r + 1), layout)


@lru_cache(maxsize=None)
def _zeta_ems(ks: Comp, layout: str) -> Fraction:
    return _triangular_sum(ks, lambda r: bernoulli(r + 1) / (r + 1), layout)


def _comp(ks: Sequence[int]) -> Comp:
    ks = tuple(int(k) for k in ks)
    if not ks or any(k < 0 for k in ks):
        raise ValueError(f"not a composition: {ks}")
    return ks


def zeta_fkmt(ks: Sequence[int], layout: str = "column") -> Fraction:
    """ζ_FKMT(-k1, ..., -kn) as a Bernoulli sum."""
    return _zeta_fkmt(_comp(ks), layout)


def zeta_ems_closed(ks: Sequence[int], layout: str = "column") -> Fraction:
    """ζ_EMS(-k1, ..., -kn) as a Bernoulli sum."""
    return _zeta_ems(_comp(ks), layout)


# -- recurrences from depth-one values -----------------------------------------


@lru_cache(maxsize=None)
def _fkmt_rec(ks: Comp) -> Fraction:
    if len(ks) == 1:
        return _sign(ks[0]) * bernoulli(ks[0] + 1)
    total = Fraction(0)
    for split in product(*(range(k + 1) for k in ks[1:])):
        coef = prod(binomial(k, i) for k, i in zip(ks[1:], split))
        rest = sum(k - i for k, i in zip(ks[1:], split))
        total += coef * _fkmt_rec(split) * _fkmt_rec((ks[0] + rest,))
    return total


@lru_cache(maxsize=None)
def _ems_rec(ks: Comp) -> Fraction:
    if len(ks) == 1:
        k = ks[0]
        return _sign(k) * bernoulli(k + 1) / (k + 1)
    kn = ks[-1]
    total = Fraction(0)
    for i in range(kn + 1):
        total += binomial(kn, i) * _ems_rec((i,)) * _ems_rec(ks[:-2] + (ks[-2] + kn - i,))
    return total


def zeta_fkmt_recurrence(ks: Sequence[int]) -> Fraction:
    """ζ_FKMT by peeling the first argument off (depth n -> n-1 times depth 1)."""
    return _fkmt_rec(_comp(ks))


def zeta_ems_recurrence(ks: Sequence[int]) -> Fraction:
    """ζ_EMS by peeling the last argument off (depth n -> depth 1 times depth n-1)."""
    return _ems_rec(_comp(ks))


# -- generating functions ----------------------------------------------------


def _s(cap: int) -> UniSeries:
    return UniSeries.make([0, 1], cap)


@lru_cache(maxsize=None)
def fkmt_factor(degree_cap: int) -> UniSeries:
    """((1 - s)e^s - 1)/(e^s - 1)^2 through s^degree_cap."""
    cap = degree_cap + 2
    e = exp_series(cap)
    one = UniSeries.make([1], cap)
    num = (one - _s(cap)) * e - one
    den = (e - one) * (e - one)
    return num.divide(den).truncate(degree_cap)


@lru_cache(maxsize=None)
def ems_factor(degree_cap: int) -> UniSeries:
    """(s - (e^s - 1))/(s (e^s - 1)) through s^degree_cap."""
    cap = degree_cap + 2
    e = exp_series(cap)
    one = UniSeries.make([1], cap)
    num = _s(cap) - (e - one)
    den = _s(cap) * (e - one)
    return num.divide(den).truncate(degree_cap)


@lru_cache(maxsize=None)
def conversion_factor_uni(degree_cap: int) -> UniSeries:
    """(1 - e^-s)/s through s^degree_cap."""
    cap = degree_cap + 1
    num = UniSeries.make([1], cap) - exp_series(cap, sign=-1)
    return num.divide(_s(cap)).truncate(degree_cap)


def _product_over_tails(factor: UniSeries, n: int, degree_cap: int) -> MultiSeries:
    out = MultiSeries.constant(n, degree_cap)
    for i in range(1, n + 1):
        out = out * MultiSeries.from_linear_form(factor, n, i, degree_cap)
    return out


@lru_cache(maxsize=None)
def gen_fkmt(n: int, degree_cap: int) -> MultiSeries:
    """Z_FKMT(t1..tn) through total degree degree_cap."""
    return _product_over_tails(fkmt_factor(degree_cap), n, degree_cap)


@lru_cache(maxsize=None)
def gen_ems(n: int, degree_cap: int) -> MultiSeries:
    """Z_EMS(t1..tn) through total degree degree_cap."""
    return _product_over_tails(ems_factor(degree_cap), n, degree_cap)


@lru_cache(maxsize=None)
def conversion_factor(n: int, degree_cap: int) -> MultiSeries:
    """Π_i (1 - e^-(t_i+...+t_n))/(t_i+...+t_n)."""
    return _product_over_tails(conversion_factor_uni(degree_cap), n, degree_cap)


def negate_vars(ms: MultiSeries) -> MultiSeries:
    return ms.negate_vars()


def coefficient_to_zeta(ms: MultiSeries, ks: Sequence[int]) -> Fraction:
    """Read ζ(-k1..-kn) off a generating function: (-1)^Σk Π k! [t^k] Z."""
    ks = _comp(ks)
    if len(ks) != ms.nvars:
        raise ValueError(f"composition of depth {len(ks)} for a series in {ms.nvars} variables")
    if sum(ks) > ms.degree_cap:
        raise ValueError(f"weight {sum(ks)} beyond the series cap {ms.degree_cap}")
    return _sign(sum(ks)) * prod(factorial(k) for k in ks) * ms.coefficient(ks)


def conversion_identity_check(n: int, degree_cap: int) -> bool:
    """Z_EMS(t) == Π (1 - e^-s_i)/s_i * Z_FKMT(-t) through the cap."""
    return gen_ems(n, degree_cap) == conversion_factor(n, degree_cap) * negate_vars(
        gen_fkmt(n, degree_cap)
    )


def factorized_check(kind: str, n: int, degree_cap: int) -> bool:
    """Z(t1..tn) == Z(t2..tn) * Z(t1 + ... + tn) as truncated series (n >= 2)."""
    if n < 2:
        raise ValueError("factorization needs n >= 2")
    gen, factor = {"fkmt": (gen_fkmt, fkmt_factor), "ems": (gen_ems, ems_factor)}[kind]
    lhs = gen(n, degree_cap)
    tail = gen(n - 1, degree_cap).embed(n, 1)
    whole = MultiSeries.from_linear_form(factor(degree_cap), n, 1, degree_cap)
    return lhs == tail * whole


# -- recurrence identities ---------------------------------------------------


def fkmt_recurrence_check(ks: Sequence[int]) -> bool:
    """ζ_FKMT(k) = Σ Π C(k_a, i_a) ζ_FKMT(i_2..i_n) ζ_FKMT(k_1 + j_2 + ... + j_n)."""
    ks = _comp(ks)
    if len(ks) < 2:
        raise ValueError("recurrence needs depth >= 2")
    rhs = Fraction(0)
    for split in product(*(range(k + 1) for k in ks[1:])):
        coef = prod(binomial(k, i) for k, i in zip(ks[1:], split))
        rest = sum(k - i for k, i in zip(ks[1:], split))
        rhs += coef * zeta_fkmt(split) * zeta_fkmt((ks[0] + rest,))
    return zeta_fkmt(ks) == rhs


def _ems_last_split(ks: Comp, zeta: Callable[[Comp], Fraction]) -> Fraction:
    kn = ks[-1]
    return sum(
        (binomial(kn, i) * zeta((i,)) * zeta(ks[:-2] + (ks[-2] + kn - i,)) for i in range(kn + 1)),
        Fraction(0),
    )


def ems_recurrence_check(ks: Sequence[int]) -> bool:
    """ζ_EMS(k) = Σ_{i+j=k_n} C(k_n, i) ζ_EMS(i) ζ_EMS(k_1, ..., k_{n-1} + j)."""
    ks = _comp(ks)
    if len(ks) < 2:
        raise ValueError("recurrence needs depth >= 2")
    return zeta_ems_closed(ks) == _ems_last_split(ks, zeta_ems_closed)


def prefix_split_check(ks: Sequence[int]) -> bool:
    """ζ_EMS(k) = Σ Π C(k_a, i_a) ζ_EMS(i_2..i_n) ζ_EMS(k_1 + j_2 + ... + j_n)."""
    ks = _comp(ks)
    if len(ks) < 2:
        raise ValueError("needs depth >= 2")
    rhs = Fraction(0)
    for split in product(*(range(k + 1) for k in ks[1:])):
        coef = prod(binomial(k, i) for k, i in zip(ks[1:], split))
        rest = sum(k - i for k, i in zip(ks[1:], split))
        rhs += coef * zeta_ems_closed(split) * zeta_ems_closed((ks[0] + rest,))
    return zeta_ems_closed(ks) == rhs


def _join(start: list[int], values: Sequence[int], ops: Sequence[str]) -> Comp:
    """Fold values into start: '+' adds to the last entry, ',' opens a new one."""
    out = list(start)
    for v, op in zip(values, ops):
        if op == "+":
            out[-1] += v
        elif op == ",":
            out.append(v)
        else:
            raise ValueError(f"operator must be '+' or ',', got {op!r}")
    return tuple(out)


def _flip(op: str) -> str:
    return "," if op == "+" else "+"


def _split_merge_sum(ks: Comp, p: int, ops: Sequence[str], zeta) -> Fraction:
    # p is 1-based; ops[q - p] is the operator between positions q and q+1
    n = len(ks)
    tail = ks[p - 1 :]
    total = Fraction(0)
    for split in product(*(range(k + 1) for k in tail)):
        js = [k - i for k, i in zip(tail, split)]
        coef = prod(binomial(k, i) for k, i in zip(tail, split))
        left = _join([split[0]], split[1:], ops)
        right = _join(list(ks[: p - 1]), js, ["+"] + [_flip(o) for o in ops])
        total += coef * zeta(left) * zeta(right)
    return total


def split_merge_check(ks: Sequence[int], p: int, ops: Sequence[str], zeta=None) -> bool:
    """One instance of the split-and-merge identity: for 2 <= p <= n-1 and a choice of
    '+'/',' between consecutive i's (complementary choice between the j's), the
    binomially weighted sum equals the last-argument recurrence sum."""
    ks = _comp(ks)
    n = len(ks)
    zeta = zeta or zeta_ems_closed
    if not 2 <= p <= n - 1 or len(ops) != n - p:
        raise ValueError(f"need 2 <= p <= n-1 and n-p operators (n={n}, p={p}, ops={ops})")
    return _split_merge_sum(ks, p, ops, zeta) == _ems_last_split(ks, zeta)


def averaged_split_check(ks: Sequence[int], zeta=None) -> bool:
    """ζ_EMS(k) = (2^(n-1) - 1)^-1 { last-argument split + Σ_p Σ_ops split-and-merge sums }."""
    ks = _comp(ks)
    n = len(ks)
    zeta = zeta or zeta_ems_closed
    if n < 2:
        raise ValueError("needs depth >= 2")
    total = _ems_last_split(ks, zeta)
    for p in range(2, n):
        for ops in product("+,", repeat=n - p):
            total += _split_merge_sum(ks, p, ops, zeta)
    return zeta(ks) == total / (2 ** (n - 1) - 1)


def frak_h_identity_check(prefix: Sequence[int], degree_cap: int) -> bool:
    """h_{k1..k(n-1)}(x) == (-1)^Σk (h ∂^k(n-1)) ... (h ∂^k1)(h), coefficientwise to degree_cap.

    h(x) is the depth-one generating function; the left side is the series
    Σ_m (-x)^m/m! ζ_EMS(k1, ..., k(n-1), m).
    """
    prefix = _comp(prefix)
    if degree_cap < 3:
        raise ValueError("degree_cap must be >= 3 for a meaningful comparison")
    n = len(prefix) + 1
    cap = degree_cap + sum(prefix) + n
    depth_one = gen_ems(1, cap)
    h = UniSeries.from_function(lambda m: depth_one.coefficient((m,)), cap)
    s = h
    for k in prefix:
        for _ in range(k):
            s = s.derivative()
        s = h * s
    s = s.scale(_sign(sum(prefix)))
    if s.degree_cap < degree_cap:
        raise ValueError("internal cap too small")
    for m in range(degree_cap + 1):
        direct = Fraction(_sign(m), factorial(m)) * zeta_ems_closed(prefix + (m,))
        if s[m] != direct:
            return False
    return True


# -- conversions at depth <= 3 ------------------------------------------------


def ems_from_fkmt(ks: Sequence[int], zeta=None) -> Fraction:
    """ζ_EMS as a linear combination of ζ_FKMT values (depth <= 3)."""
    ks = _comp(ks)
    zeta = zeta or zeta_fkmt
    n = len(ks)
    total = Fraction(0)
    if n == 1:
        (k1,) = ks
        for v01 in range(k1 + 1):
            v11 = k1 - v01
            total += binomial(k1, v01) * Fraction(_sign(v11), v01 + 1) * zeta((v11,))
    elif n == 2:
        k1, k2 = ks
        for v01 in range(k1 + 1):
            v11 = k1 - v01
            for v02, v12, v22 in weak_compositions(k2, 3):
                total += (
                    binomial(k1, v01)
                    * multinomial(k2, (v02, v12))
                    * Fraction(1, v02 + 1)
                    * Fraction(_sign(v11 + v22), v01 + v12 + 1)
                    * zeta((v11, v22))
                )
    elif n == 3:
        k1, k2, k3 = ks
        for v01 in range(k1 + 1):
            v11 = k1 - v01
            for v02, v12, v22 in weak_compositions(k2, 3):
                for v03, v13, v23, v33 in weak_compositions(k3, 4):
                    total += (
                        binomial(k1, v01)
                        * multinomial(k2, (v02, v12))
                        * multinomial(k3, (v03, v13, v23))
                        * Fraction(1, v03 + 1)
                        * Fraction(1, v02 + v13 + 1)
                        * Fraction(_sign(v11 + v22 + v33), v01 + v12 + v23 + 1)
                        * zeta((v11, v22, v33))
                    )
    else:
        raise ValueError("conversion formulas are available for depth <= 3 only")
    return total


def fkmt_from_ems(ks: Sequence[int], zeta=None) -> Fraction:
    """ζ_FKMT as a Bernoulli-weighted combination of ζ_EMS values (depth <= 3)."""
    ks = _comp(ks)
    zeta = zeta or zeta_ems_closed
    B = bernoulli
    n = len(ks)
    total = Fraction(0)
    if n == 1:
        (k1,) = ks
        for v01 in range(k1 + 1):
            total += binomial(k1, v01) * B(v01) * zeta((k1 - v01,))
    elif n == 2:
        k1, k2 = ks
        for v01 in range(k1 + 1):
            for v02, v12, v22 in weak_compositions(k2, 3):
                total += (
                    binomial(k1, v01)
                    * multinomial(k2, (v02, v12))
                    * B(v02)
                    * B(v01 + v12)
                    * zeta((k1 - v01, v22))
                )
    elif n == 3:
        k1, k2, k3 = ks
        for v01 in range(k1 + 1):
            for v02, v12, v22 in weak_compositions(k2, 3):
                for v03, v13, v23, v33 in weak_compositions(k3, 4):
                    total += (
                        binomial(k1, v01)
                        * multinomial(k2, (v02, v12))
                        * multinomial(k3, (v03, v13, v23))
                        * B(v03)
                        * B(v02 + v13)
                        * B(v01 + v12 + v23)
                        * zeta((k1 - v01, v22, v33))
                    )
    else:
        raise ValueError("conversion formulas are available for depth <= 3 only")
    return _sign(sum(ks)) * total
