"""Words over {d, y}, the product ⧢₀, and the coproduct by admissible subsets.

Words are plain strings over the letters ``"d"`` and ``"y"``; the empty
string is the unit word.  Elements of the quotient H₀ are represented by
:class:`WordSum` values over words; words ending in ``d`` are dropped by
:func:`reduce_T`.  No normal form modulo the Leibniz-type relations is
attempted: maps that must respect them (the character φ) are checked on
representatives instead.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Generic, Iterable, Iterator, Mapping, Sequence, TypeVar

from .exact_arith import binomial, format_rational

__all__ = [
    "D",
    "Y",
    "UNIT",
    "WordSum",
    "TensorSum",
    "check_word",
    "weight",
    "depth",
    "is_admissible",
    "block_word",
    "word_for_zeta",
    "word_blocks",
    "reduce_T",
    "reduce_T_tensor",
    "shuffle0",
    "shuffle0_sums",
    "coproduct",
    "reduced_coproduct",
    "tensor_sym",
    "bullet",
    "reduced_coproduct_explicit",
    "word_key",
    "admissible_words",
    "prepend",
    "leibniz_generator",
]

D = "d"
Y = "y"
UNIT = ""

K = TypeVar("K")


def check_word(w: str) -> str:
    if any(c not in "dy" for c in w):
        raise ValueError(f"word {w!r} has letters outside {{d, y}}")
    return w


def weight(w: str) -> int:
    return len(w)


def depth(w: str) -> int:
    return w.count(Y)


def is_admissible(w: str) -> bool:
    """True for the unit word and for words ending in y."""
    return w == UNIT or w.endswith(Y)


def word_key(w: str) -> tuple[int, str]:
    """Canonical order: by length, then lexicographic with d < y."""
    return (len(w), w)


def block_word(ks: Sequence[int]) -> str:
    """d^k1 y d^k2 y ... d^kn y, in the given order."""
    return "".join(D * k + Y for k in ks)


def word_for_zeta(ks: Sequence[int]) -> str:
    """The word d^kn y ... d^k1 y whose φ₊ constant term is ζ_EMS(-k1, ..., -kn).

    This is the single place where the argument order is reversed.
    """
    if not ks:
        raise ValueError("empty composition")
    if any(k < 0 for k in ks):
        raise ValueError(f"composition entries must be non-negative: {tuple(ks)}")
    return block_word(tuple(reversed(ks)))


def word_blocks(w: str) -> tuple[int, ...]:
    """Inverse of :func:`block_word` for admissible words."""
    if not is_admissible(w):
        raise ValueError(f"word {w!r} is not admissible")
    return tuple(len(b) for b in w.split(Y)[:-1])


def admissible_words(max_weight: int, min_weight: int = 0) -> Iterator[str]:
    """All admissible words with min_weight <= weight <= max_weight, canonical order."""
    for n in range(min_weight, max_weight + 1):
        if n == 0:
            yield UNIT
            continue
        for letters in product("dy", repeat=n - 1):
            yield "".join(letters) + Y


class _LinComb(Generic[K]):
    """Finite rational linear combination with canonical (zero-free) storage."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, Fraction | int] | Iterable[tuple[K, Fraction | int]] = ()):
        acc: dict[K, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
        self._terms = {k: c for k, c in acc.items() if c != 0}

    @property
    def terms(self) -> dict[K, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __getitem__(self, key: K) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = dict(self._terms)
        for k, c in other.items():
            out[k] = out.get(k, Fraction(0)) + c
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Fraction | int):
        return type(self)({k: c * v for k, v in self._terms.items()})

    def __rmul__(self, c: Fraction | int):
        return self.scale(c)

    def map_keys(self, fn: Callable[[K], K | None]):
        """Apply fn to every key; keys mapped to None are dropped."""
        out: list[tuple[K, Fraction]] = []
        for k, c in self._terms.items():
            k2 = fn(k)
            if k2 is not None:
                out.append((k2, c))
        return type(self)(out)


class WordSum(_LinComb[str]):
    @classmethod
    def of(cls, w: str, c: Fraction | int = 1) -> "WordSum":
        return cls({check_word(w): c})

    def sorted_items(self) -> list[tuple[str, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def __repr__(self) -> str:
        return f"WordSum({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{format_rational(c)}*{w or '1'}" for w, c in self.sorted_items())


class TensorSum(_LinComb[tuple[str, str]]):
    @classmethod
    def of(cls, left: str, right: str, c: Fraction | int = 1) -> "TensorSum":
        return cls({(check_word(left), check_word(right)): c})

    def swap(self) -> "TensorSum":
        return TensorSum({(b, a): c for (a, b), c in self._terms.items()})

    def sorted_items(self) -> list[tuple[tuple[str, str], Fraction]]:
        return sorted(
            self._terms.items(), key=lambda kv: (word_key(kv[0][0]), word_key(kv[0][1]))
        )

    def __repr__(self) -> str:
        return f"TensorSum({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(
            f"{format_rational(c)}*({a or '1'} ⊗ {b or '1'})" for (a, b), c in self.sorted_items()
        )


def reduce_T(ws: WordSum) -> WordSum:
    """Drop every word ending in d (those classes vanish in H₀)."""
    return ws.map_keys(lambda w: w if is_admissible(w) else None)


def reduce_T_tensor(ts: TensorSum) -> TensorSum:
    """Drop every tensor with a factor ending in d."""
    return ts.map_keys(lambda t: t if is_admissible(t[0]) and is_admissible(t[1]) else None)


@lru_cache(maxsize=None)
def _shuffle0(u: str, v: str) -> tuple[tuple[str, Fraction], ...]:
    if u == UNIT:
        return ((v, Fraction(1)),)
    if v == UNIT:
        return ((u, Fraction(1)),)
    acc: dict[str, Fraction] = {}
    if u[0] == Y:
        # yu' ⧢ v = y(u' ⧢ v)
        for w, c in _shuffle0(u[1:], v):
            acc[Y + w] = acc.get(Y + w, Fraction(0)) + c
    elif v[0] == Y:
        # u ⧢ yv' = y(u ⧢ v')
        for w, c in _shuffle0(u, v[1:]):
            acc[Y + w] = acc.get(Y + w, Fraction(0)) + c
    else:
        # du' ⧢ dv' = d(u' ⧢ dv') - u' ⧢ ddv'
        for w, c in _shuffle0(u[1:], v):
            acc[D + w] = acc.get(D + w, Fraction(0)) + c
        for w, c in _shuffle0(u[1:], D + v):
            acc[w] = acc.get(w, Fraction(0)) - c
    return tuple((w, c) for w, c in acc.items() if c != 0)


def shuffle0(u: str, v: str) -> WordSum:
    """The product ⧢₀ of two words, unreduced."""
    return WordSum(_shuffle0(check_word(u), check_word(v)))


def shuffle0_sums(a: WordSum, b: WordSum) -> WordSum:
    """Bilinear extension of :func:`shuffle0`."""
    out: list[tuple[str, Fraction]] = []
    for u, cu in a.items():
        for v, cv in b.items():
            out.extend((w, cu * cv * c) for w, c in _shuffle0(u, v))
    return WordSum(out)


@lru_cache(maxsize=None)
def _coproduct(w: str) -> TensorSum:
    # Same count as enumerating position subsets, but letters are placed right to
    # left and equal (left, right) suffix pairs are merged as they appear.  A part's
    # first placed letter is its last one, so an empty part may only receive y.
    acc: dict[tuple[str, str], int] = {(UNIT, UNIT): 1}
    for letter in reversed(w):
        nxt: dict[tuple[str, str], int] = {}
        for (a, b), c in acc.items():
            if a or letter == Y:
                key = (letter + a, b)
                nxt[key] = nxt.get(key, 0) + c
            if b or letter == Y:
                key = (a, letter + b)
                nxt[key] = nxt.get(key, 0) + c
        acc = nxt
    return TensorSum(acc)


def coproduct(w: str) -> TensorSum:
    """Δ₀(w): sum of w_S ⊗ w_S̄ over letter-position subsets S with both parts admissible."""
    check_word(w)
    if not is_admissible(w):
        raise ValueError(f"coproduct needs an admissible word, got {w!r}")
    return _coproduct(w)


@lru_cache(maxsize=None)
def _reduced_coproduct(w: str) -> TensorSum:
    return _coproduct(w) - TensorSum({(UNIT, w): 1, (w, UNIT): 1})


def reduced_coproduct(w: str) -> TensorSum:
    """Δ₀(w) - 1⊗w - w⊗1."""
    if w == UNIT:
        raise ValueError("reduced coproduct is not defined on the unit word")
    coproduct(w)
    return _reduced_coproduct(w)


def tensor_sym(u: str, v: str, c: Fraction | int = 1) -> TensorSum:
    """c * (u⊗v + v⊗u)."""
    return TensorSum([((u, v), c), ((v, u), c)])


def _bullet_raw(x: str, ts: TensorSum) -> TensorSum:
    # f(x x0, T) = f(x, f(x0, T)): the last letter acts first
    cur: dict[tuple[str, str], Fraction] = dict(ts.items())
    for letter in reversed(x):
        nxt: dict[tuple[str, str], Fraction] = {}
        for (a, b), c in cur.items():
            for key in ((letter + a, b), (a, letter + b)):
                nxt[key] = nxt.get(key, Fraction(0)) + c
        cur = nxt
    return TensorSum(cur)


def bullet(x: str, ts: TensorSum) -> TensorSum:
    """x • T: each letter of x (last first) is prepended to one tensor factor, summed
    over both choices; factors ending in d are then dropped."""
    return reduce_T_tensor(_bullet_raw(check_word(x), ts))


def reduced_coproduct_explicit(ks: Sequence[int]) -> TensorSum:
    """Closed formula for Δ̃₀(d^k1 y ... d^kn y), n >= 2, factors T₋-reduced."""
    ks = tuple(ks)
    n = len(ks)
    if n < 2:
        raise ValueError("explicit reduced coproduct needs at least two blocks")
    acc: list[tuple[tuple[str, str], Fraction]] = []

    def add_sym(u: str, v: str, c: int) -> None:
        acc.append(((u, v), Fraction(c)))
        acc.append(((v, u), Fraction(c)))

    tail1 = block_word(ks[1:])
    for i1 in range(ks[0] + 1):
        j1 = ks[0] - i1
        add_sym(D * i1 + Y, D * j1 + tail1, binomial(ks[0], i1))

    for p in range(2, n):
        tail = block_word(ks[p:])
        for split in product(*(range(k + 1) for k in ks[:p])):
            coef = 1
            for k, i in zip(ks[:p], split):
                coef *= binomial(k, i)
            js = [k - i for k, i in zip(ks[:p], split)]
            ip, jp = split[p - 1], js[p - 1]
            for flips in product((False, True), repeat=p - 1):
                left, right = [], []
                for q, flip in enumerate(flips):
                    a, b = D * split[q], D * js[q] + Y
                    if flip:
                        a, b = b, a
                    left.append(a)
                    right.append(b)
                u = "".join(left) + D * ip + Y
                v = "".join(right) + D * jp + tail
                add_sym(u, v, coef)
    return reduce_T_tensor(TensorSum(acc))


def prepend(letter: str, ws: WordSum) -> WordSum:
    return ws.map_keys(lambda w: letter + w)


def leibniz_generator(u: str, v: str) -> WordSum:
    """d(u ⧢₀ v) - du ⧢₀ v - u ⧢₀ dv, a generator of the relations quotiented out of H₀."""
    return prepend(D, shuffle0(u, v)) - shuffle0(D + u, v) - shuffle0(u, D + v)
