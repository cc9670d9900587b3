"""Verification suites: each runs a family of exact identities at a given scale
and reports every failure with the offending word or composition and both sides."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from . import closedform as cf
from .exact_arith import binomial, format_rational
from .hopf_words import (
    admissible_words,
    block_word,
    bullet,
    coproduct,
    reduce_T_tensor,
    reduced_coproduct,
    reduced_coproduct_explicit,
    leibniz_generator,
    tensor_sym,
    TensorSum,
)
from .renorm import (
    DEFAULT_MARGIN,
    CharacterState,
    phi_sum,
    shuffle_relation_check,
    zeta_ems_birkhoff,
    zeta_ems_lemma311,
)

__all__ = ["Failure", "SuiteReport", "SUITES", "DEFAULT_SCALES", "run_suite", "ems_pipelines", "map_items"]


@dataclass(frozen=True)
class Failure:
    check: str
    item: str
    lhs: str
    rhs: str

    def __str__(self) -> str:
        return f"{self.check} {self.item}: {self.lhs} != {self.rhs}"


@dataclass
class SuiteReport:
    suite: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, item: object, lhs: object, rhs: object) -> None:
        self.checked += 1
        if lhs != rhs:
            self.failures.append(Failure(check, _show(item), _show(lhs), _show(rhs)))

    def record_flag(self, check: str, item: object, ok: bool, detail: str = "") -> None:
        self.checked += 1
        if not ok:
            self.failures.append(Failure(check, _show(item), "false", detail or "true"))


def _show(x: object) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, tuple) and all(isinstance(k, int) for k in x):
        return "(" + ",".join(map(str, x)) + ")"
    if isinstance(x, str):
        return x or "1"
    return str(x)


# -- per-composition work, picklable for process pools ------------------------


def ems_pipelines(ks: tuple[int, ...], margin: int = DEFAULT_MARGIN) -> tuple[Fraction, Fraction, Fraction]:
    """(birkhoff, lemma, closed) values of ζ_EMS(-ks), with a fresh CharacterState."""
    state = CharacterState.for_weight(sum(ks) + len(ks), margin)
    return (
        zeta_ems_birkhoff(ks, state),
        zeta_ems_lemma311(ks, state),
        cf.zeta_ems_closed(ks),
    )


def map_items(fn: Callable, items: Sequence, parallel: bool) -> list:
    if parallel and len(items) > 1:
        with ProcessPoolExecutor() as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# -- suites -------------------------------------------------------------------


def suite_coproduct(depth: int, weight: int, **_) -> SuiteReport:
    rep = SuiteReport("coproduct")
    for ks in cf.compositions(depth, max(0, weight - 2), min_depth=2):
        if sum(ks) + len(ks) > weight:
            continue
        w = block_word(ks)
        rep.record("explicit-vs-enumeration", w, reduced_coproduct_explicit(ks),
                   reduce_T_tensor(reduced_coproduct(w)))
    for a in range(weight):
        w = "d" * a + "y"
        rep.record("primitive", w, reduced_coproduct(w), TensorSum())
    for w in admissible_words(weight):
        full = coproduct(w)
        rep.record("cocommutative", w, full, full.swap())
        if w:
            rep.record("counit", w, (full[("", w)], full[(w, "")]), (1, 1))
        if w and len(w) < weight:
            r = reduce_T_tensor(reduced_coproduct(w))
            rep.record("d-law", "d" + w, reduce_T_tensor(reduced_coproduct("d" + w)), bullet("d", r))
            rep.record("y-law", "y" + w, reduce_T_tensor(reduced_coproduct("y" + w)),
                       bullet("y", r) + reduce_T_tensor(tensor_sym("y", w)))
    return rep


def suite_shuffle(depth: int, weight: int, margin: int = DEFAULT_MARGIN, **_) -> SuiteReport:
    """φ₊ is a ⧢₀-character on admissible words of weight <= weight (each factor, depth
    <= depth), the depth-2 product identity, and φ kills the Leibniz-type generators."""
    rep = SuiteReport("shuffle")
    words = [w for w in admissible_words(weight) if w.count("y") <= depth]
    state = CharacterState.for_weight(2 * weight, margin)
    for u, v in product(words, repeat=2):
        rep.record_flag("character", (u, v), shuffle_relation_check(u, v, state))
    top = max(0, min(weight - 1, 3))
    for a in range(top + 1):
        for b in range(1, top + 1):
            lhs = cf.zeta_ems_closed((a,)) * cf.zeta_ems_closed((b,))
            rhs = sum((Fraction((-1) ** k * binomial(a, k)) * cf.zeta_ems_closed((b + k, a - k))
                       for k in range(a + 1)), Fraction(0))
            rep.record("depth-2 product", (a, b), lhs, rhs)
    small = [w for w in words if len(w) <= min(weight, 3)]
    lstate = CharacterState(prec=2 * min(weight, 3) + margin)
    for u, v in product(small, repeat=2):
        s = phi_sum(leibniz_generator(u, v), lstate)
        rep.record_flag("leibniz", (u, v), s.is_zero(), str(s))
    return rep


def suite_birkhoff_vs_closed(
    depth: int, weight: int, margin: int = DEFAULT_MARGIN, parallel: bool = False, **_
) -> SuiteReport:
    rep = SuiteReport("birkhoff-vs-closed")
    comps = list(cf.compositions(depth, weight))
    values = map_items(_EmsJob(margin), comps, parallel)
    for ks, (b, lem, c) in zip(comps, values):
        rep.record("birkhoff=closed", ks, b, c)
        rep.record("lemma=closed", ks, lem, c)
    return rep


@dataclass(frozen=True)
class _EmsJob:
    margin: int

    def __call__(self, ks: tuple[int, ...]):
        return ems_pipelines(ks, self.margin)


def suite_thm321(depth: int, weight: int, **_) -> SuiteReport:
    rep = SuiteReport("thm321")
    for n in range(1, depth + 1):
        rep.record_flag("Z_EMS = conversion * Z_FKMT(-t)", f"n={n} cap={weight}",
                        cf.conversion_identity_check(n, weight))
        if n >= 2:
            for kind in ("fkmt", "ems"):
                rep.record_flag(f"{kind} factorization", f"n={n} cap={weight}",
                                cf.factorized_check(kind, n, weight))
    for ks in cf.compositions(depth, weight):
        n = len(ks)
        rep.record("ems coefficient", ks, cf.coefficient_to_zeta(cf.gen_ems(n, weight), ks),
                   cf.zeta_ems_closed(ks))
        rep.record("fkmt coefficient", ks, cf.coefficient_to_zeta(cf.gen_fkmt(n, weight), ks),
                   cf.zeta_fkmt(ks))
    return rep


def suite_recurrence(depth: int, weight: int, **_) -> SuiteReport:
    rep = SuiteReport("recurrence")
    for ks in cf.compositions(depth, weight):
        rep.record("ems recurrence pipeline", ks, cf.zeta_ems_recurrence(ks), cf.zeta_ems_closed(ks))
        rep.record("fkmt recurrence pipeline", ks, cf.zeta_fkmt_recurrence(ks), cf.zeta_fkmt(ks))
        n = len(ks)
        if n < 2:
            continue
        rep.record_flag("fkmt first-argument split", ks, cf.fkmt_recurrence_check(ks))
        rep.record_flag("ems last-argument split", ks, cf.ems_recurrence_check(ks))
        rep.record_flag("ems first-argument split", ks, cf.prefix_split_check(ks))
        rep.record_flag("ems averaged split", ks, cf.averaged_split_check(ks))
        for p in range(2, n):
            for ops in product("+,", repeat=n - p):
                rep.record_flag("split-and-merge", (ks, p, "".join(ops)),
                                cf.split_merge_check(ks, p, ops))
    return rep


def suite_frak_h(depth: int, weight: int, **_) -> SuiteReport:
    rep = SuiteReport("frak-h")
    cap = max(3, weight)
    for length in range(1, depth):
        for prefix in product(range(3), repeat=length):
            rep.record_flag("operator identity", (prefix, cap), cf.frak_h_identity_check(prefix, cap))
    return rep


def suite_conversions(depth: int, weight: int, **_) -> SuiteReport:
    rep = SuiteReport("conversions")
    for ks in cf.compositions(min(depth, 3), weight):
        rep.record("ems from fkmt", ks, cf.ems_from_fkmt(ks), cf.zeta_ems_closed(ks))
        rep.record("fkmt from ems", ks, cf.fkmt_from_ems(ks), cf.zeta_fkmt(ks))
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "coproduct": suite_coproduct,
    "shuffle": suite_shuffle,
    "birkhoff-vs-closed": suite_birkhoff_vs_closed,
    "thm321": suite_thm321,
    "recurrence": suite_recurrence,
    "frak-h": suite_frak_h,
    "conversions": suite_conversions,
}


# (depth, weight) used when the caller does not choose a scale
DEFAULT_SCALES: dict[str, tuple[int, int]] = {
    "coproduct": (4, 6),
    "shuffle": (2, 4),
    "birkhoff-vs-closed": (3, 6),
    "thm321": (3, 8),
    "recurrence": (3, 6),
    "frak-h": (3, 4),
    "conversions": (3, 6),
}


def run_suite(name: str, depth: int | None = None, weight: int | None = None,
              margin: int = DEFAULT_MARGIN, parallel: bool = False) -> list[SuiteReport]:
    names: Iterable[str] = SUITES if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError(f"unknown suite {n!r}")
        d0, w0 = DEFAULT_SCALES[n]
        out.append(SUITES[n](depth=d0 if depth is None else depth,
                             weight=w0 if weight is None else weight,
                             margin=margin, parallel=parallel))
    return out
