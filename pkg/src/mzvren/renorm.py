"""The character φ and its algebraic Birkhoff decomposition φ = φ₋⁻¹ * φ₊.

φ sends a word to a Laurent series: reading the word right to left, each
``y`` multiplies by x(z) = e^z/(1 - e^z) and each ``d`` differentiates in z,
starting from the constant 1.  The decomposition is realized by the
Bogoliubov recursion over the reduced coproduct; a second route computes φ₊
in depth > 1 by averaging over the reduced coproduct instead.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .hopf_words import (
    D,
    UNIT,
    Y,
    WordSum,
    check_word,
    depth,
    is_admissible,
    reduce_T,
    reduce_T_tensor,
    reduced_coproduct,
    shuffle0,
    word_for_zeta,
)
from .laurent import (
    LaurentSeries,
    PrecisionError,
    RenormalizationError,
    ls_constant_term,
    ls_derivative,
    ls_mul,
    ls_pole_part,
    ls_regular_part,
    ls_x,
)

__all__ = [
    "CharacterState",
    "DEFAULT_MARGIN",
    "phi",
    "phi_sum",
    "birkhoff",
    "zeta_ems_birkhoff",
    "zeta_ems_lemma311",
    "shuffle_relation_check",
    "validate_composition",
]

log = logging.getLogger(__name__)

DEFAULT_MARGIN = 4
_ONE = LaurentSeries.constant(1)


def validate_composition(ks: Sequence[int]) -> tuple[int, ...]:
    ks = tuple(int(k) for k in ks)
    if not ks:
        raise ValueError("composition must have at least one entry")
    if any(k < 0 for k in ks):
        raise ValueError(f"composition entries must be non-negative: {ks}")
    return ks


def phi(w: str, prec: int) -> LaurentSeries:
    """φ(w) known below z^prec.  Words ending in d map to 0."""
    check_word(w)
    if w == UNIT:
        return _ONE
    # every letter costs one order of precision and deepens the pole by at most one
    x = ls_x(prec + 2 * len(w) + 1)
    s = _ONE
    for letter in reversed(w):
        s = ls_mul(x, s) if letter == Y else ls_derivative(s)
    if s.precision < prec:
        raise PrecisionError(f"φ({w}) reached only precision {s.precision} < {prec}")
    return s.truncate(prec)


@dataclass
class CharacterState:
    """Memo tables for φ, φ₋, φ₊ at one working precision.

    ``prec`` is the precision to which φ is expanded for every word.  A word
    of weight W then gets φ₊ known below z^(prec - W + 1), so prec >= W is the
    minimum for its renormalized value.  Single owner; not thread-safe.
    """

    prec: int
    phi_cache: dict[str, LaurentSeries] = field(default_factory=dict)
    phi_minus_cache: dict[str, LaurentSeries] = field(default_factory=dict)
    phi_plus_cache: dict[str, LaurentSeries] = field(default_factory=dict)
    lemma_cache: dict[str, LaurentSeries] = field(default_factory=dict)

    @classmethod
    def for_weight(cls, max_weight: int, margin: int = DEFAULT_MARGIN) -> "CharacterState":
        return cls(prec=max_weight + margin)

    def phi(self, w: str) -> LaurentSeries:
        s = self.phi_cache.get(w)
        if s is None:
            s = phi(w, self.prec)
            self.phi_cache[w] = s
        return s


def phi_sum(ws: WordSum, state: CharacterState) -> LaurentSeries:
    out = LaurentSeries.zero()
    for w, c in ws.items():
        out = out + state.phi(w).scale(c)
    return out


def birkhoff(w: str, state: CharacterState) -> tuple[LaurentSeries, LaurentSeries]:
    """(φ₋(w), φ₊(w)) by the Bogoliubov recursion.

    φ̄(w) = φ(w) + Σ φ₋(w')φ(w'') over the reduced coproduct,
    φ₋(w) = -π(φ̄(w)),  φ₊(w) = (id - π)(φ̄(w)).
    """
    check_word(w)
    if not is_admissible(w):
        raise ValueError(f"birkhoff needs an admissible word, got {w!r}")
    if w == UNIT:
        return _ONE, _ONE
    if w in state.phi_plus_cache:
        return state.phi_minus_cache[w], state.phi_plus_cache[w]

    bar = state.phi(w)
    for (left, right), c in reduce_T_tensor(reduced_coproduct(w)).items():
        minus_left, _ = birkhoff(left, state)
        bar = bar + ls_mul(minus_left, state.phi(right)).scale(c)
    if bar.precision < 1:
        raise PrecisionError(
            f"φ̄({w}) known only below z^{bar.precision}; raise the working precision"
        )
    minus = -ls_pole_part(bar)
    plus = ls_regular_part(bar)
    if plus.valuation < 0 and not plus.is_zero():
        raise RenormalizationError(f"φ₊({w}) has a pole: {plus}")
    state.phi_minus_cache[w] = minus
    state.phi_plus_cache[w] = plus
    return minus, plus


def phi_plus_lemma(w: str, state: CharacterState) -> LaurentSeries:
    """φ₊(w) from depth-1 values only: for depth n > 1,
    φ₊(w) = (2^n - 2)^-1 Σ φ₊(w')φ₊(w'') over the reduced coproduct."""
    check_word(w)
    if not is_admissible(w):
        raise ValueError(f"needs an admissible word, got {w!r}")
    n = depth(w)
    if n <= 1:
        return birkhoff(w, state)[1]
    cached = state.lemma_cache.get(w)
    if cached is not None:
        return cached
    acc = LaurentSeries.zero()
    for (left, right), c in reduce_T_tensor(reduced_coproduct(w)).items():
        acc = acc + ls_mul(phi_plus_lemma(left, state), phi_plus_lemma(right, state)).scale(c)
    out = acc.scale(Fraction(1, 2**n - 2))
    state.lemma_cache[w] = out
    return out


def _with_retry(ks: Sequence[int], state: CharacterState | None, margin: int, fn) -> Fraction:
    ks = validate_composition(ks)
    w = word_for_zeta(ks)
    if state is None:
        state = CharacterState.for_weight(len(w), margin)
    try:
        return ls_constant_term(fn(w, state))
    except PrecisionError as exc:
        retry = CharacterState.for_weight(len(w), 2 * max(margin, 1) + max(0, len(w) - state.prec))
        log.warning("precision underflow for %s (%s); retrying at prec %d", ks, exc, retry.prec)
        return ls_constant_term(fn(w, retry))


def zeta_ems_birkhoff(
    ks: Sequence[int], state: CharacterState | None = None, margin: int = DEFAULT_MARGIN
) -> Fraction:
    """ζ_EMS(-k1, ..., -kn) as the constant term of φ₊(d^kn y ... d^k1 y)."""
    return _with_retry(ks, state, margin, lambda w, st: birkhoff(w, st)[1])


def zeta_ems_lemma311(
    ks: Sequence[int], state: CharacterState | None = None, margin: int = DEFAULT_MARGIN
) -> Fraction:
    """ζ_EMS(-k1, ..., -kn) through the depth-averaging recursion for φ₊."""
    return _with_retry(ks, state, margin, phi_plus_lemma)


def phi_plus_sum(ws: WordSum, state: CharacterState) -> LaurentSeries:
    out = LaurentSeries.zero()
    for w, c in ws.items():
        out = out + birkhoff(w, state)[1].scale(c)
    return out


def shuffle_relation_check(u: str, v: str, state: CharacterState) -> bool:
    """φ₊(u ⧢₀ v) == φ₊(u) φ₊(v) on the common known window (which must reach z^0)."""
    lhs = phi_plus_sum(reduce_T(shuffle0(u, v)), state)
    rhs = ls_mul(birkhoff(u, state)[1], birkhoff(v, state)[1])
    if min(lhs.precision, rhs.precision) < 1:
        raise PrecisionError(f"shuffle check for ({u}, {v}) cannot resolve the constant term")
    return lhs.agrees_with(rhs)
