"""Online dynamic weight over good enumerations of prefix-free sets.

Words arrive one per stage. The weight of the tree rooted at shift ``k`` is
updated from the summed weights ``v`` of its child subtrees as

    ww_t = ww_{t-1} + (v_t - v_{t-1}) / (1 + f(k) v_t)

with ``ww = 1/|f_k|`` as soon as the empty word arrives. Each stage's
increase is spread uniformly over the arriving word's cylinder; the sum of
those pieces is the staged measure.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

from .rational import Q
from .capacity import capacity
from .kernel import Kernel, KernelError
from .measure import TrieMeasure, leaf_potentials, potential
from .words import EventuallyPeriodic, PrefixFreeSet, Word, antichains, format_word, is_prefix


class EnumerationError(ValueError):
    def __init__(self, stage: int, message: str):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage


@dataclass(frozen=True)
class GoodEnumeration:
    """A prefix-free set listed one word per stage (stage ``t`` adds ``order[t-1]``)."""

    order: tuple
    alphabet: int = 2

    def __post_init__(self):
        order = tuple(tuple(w) for w in self.order)
        object.__setattr__(self, "order", order)
        stage_of: dict[Word, int] = {}
        for t, w in enumerate(order, start=1):
            if any(not 0 <= s < self.alphabet for s in w):
                raise EnumerationError(t, f"{format_word(w)} uses symbols outside the alphabet")
            if w in stage_of:
                raise EnumerationError(t, f"{format_word(w)} was already enumerated")
            stage_of[w] = t
        ordered = sorted(stage_of)
        for u, v in zip(ordered, ordered[1:]):
            if is_prefix(u, v):
                t = max(stage_of[u], stage_of[v])
                raise EnumerationError(
                    t, f"{format_word(u)} and {format_word(v)} are prefix-comparable"
                )

    @classmethod
    def of(cls, *words: str, alphabet: int = 2) -> "GoodEnumeration":
        from .words import parse_word

        return cls(tuple(parse_word(w, alphabet) for w in words), alphabet)

    def __len__(self) -> int:
        return len(self.order)

    def stage_set(self, t: int) -> PrefixFreeSet:
        return PrefixFreeSet(frozenset(self.order[:t]), self.alphabet)

    @property
    def set(self) -> PrefixFreeSet:
        return self.stage_set(len(self.order))


@lru_cache(maxsize=1 << 18)
def _weights(kernel: Kernel, k: int, order: tuple) -> tuple:
    """Dynamic weight after each word of ``order`` arrives, at shift ``k``."""
    if not order:
        return ()
    if order == ((),):
        return (1 / kernel.tail_weight(k),)
    by_child: dict[int, list[Word]] = {}
    position: list[tuple[int, int]] = []
    for w in order:
        if not w:
            raise ValueError("the empty word cannot share an enumeration with other words")
        lst = by_child.setdefault(w[0], [])
        position.append((w[0], len(lst)))
        lst.append(w[1:])
    child_ww = {s: _weights(kernel, k + 1, tuple(ws)) for s, ws in by_child.items()}
    fk = kernel.eval(k)
    v = ww = Q(0)
    out = []
    for s, idx in position:
        # child s moves from its previous value to the next one in its own trace
        step = child_ww[s][idx] - (child_ww[s][idx - 1] if idx else 0)
        v += step
        ww += step / (1 + fk * v)
        out.append(ww)
    return tuple(out)


def _check_kernel(kernel: Kernel, enum: GoodEnumeration) -> None:
    if kernel.finite_support or not kernel.is_amicable():
        raise KernelError("the dynamic weight needs an amicable kernel with infinite support")
    if kernel.alphabet != enum.alphabet:
        raise ValueError(
            f"kernel alphabet {kernel.alphabet} differs from enumeration alphabet {enum.alphabet}"
        )


def weights(kernel: Kernel, enum: GoodEnumeration, shift: int = 0) -> tuple:
    """``(ww_1, ..., ww_T)``; ``ww_0 = 0`` is implicit."""
    _check_kernel(kernel, enum)
    return _weights(kernel, shift, enum.order)


def bound_constant(kernel: Kernel) -> Q:
    """Certified approximation factor ``b·‖f‖ + 2`` (``2‖f‖ + 2`` for binary)."""
    return kernel.alphabet * kernel.norm_bound() + 2


@dataclass(frozen=True)
class Stage:
    stage: int
    word: Word
    increment: Q
    ww: Q
    capacity: Q


@dataclass(frozen=True)
class DynamicWeightTrace:
    stages: tuple
    staged_measure: TrieMeasure
    bound_constant: Q
    capacity_value: Q

    @property
    def ww(self) -> Q:
        return self.stages[-1].ww if self.stages else Q(0)

    @property
    def ratio(self) -> Q | None:
        return self.ww / self.capacity_value if self.capacity_value else None

    @property
    def sandwich_holds(self) -> bool:
        return self.capacity_value <= self.ww <= self.bound_constant * self.capacity_value

    def to_csv(self, verdict: str | None = None) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["stage", "word", "increment", "ww", "capacity", "bound_A", "ratio"])
        for st in self.stages:
            ratio = st.ww / st.capacity if st.capacity else ""
            out.writerow(
                [st.stage, format_word(st.word), st.increment, st.ww, st.capacity,
                 self.bound_constant, ratio]
            )
        if verdict is None:
            verdict = "PASS" if self.sandwich_holds else "FAIL"
        out.writerow(
            ["summary", verdict, "", self.ww, self.capacity_value, self.bound_constant,
             "" if self.ratio is None else self.ratio]
        )
        return buf.getvalue()


def dynamic_weight(kernel: Kernel, enum: GoodEnumeration, shift: int = 0) -> DynamicWeightTrace:
    ww = weights(kernel, enum, shift)
    stages = []
    prev = Q(0)
    for t, (w, value) in enumerate(zip(enum.order, ww), start=1):
        stages.append(Stage(t, w, value - prev, value, capacity(kernel, enum.stage_set(t), shift)))
        prev = value
    mu = _staged(stages, enum.alphabet)
    cap = stages[-1].capacity if stages else Q(0)
    return DynamicWeightTrace(tuple(stages), mu, bound_constant(kernel), cap)


def _staged(stages: Iterable[Stage], b: int) -> TrieMeasure:
    return TrieMeasure.from_cylinders({st.word: st.increment for st in stages if st.increment}, b)


def staged_measure(kernel: Kernel, enum: GoodEnumeration, shift: int = 0) -> TrieMeasure:
    """Sum over stages of the increment spread uniformly on the arriving word."""
    ww = weights(kernel, enum, shift)
    increments = {}
    prev = Q(0)
    for w, value in zip(enum.order, ww):
        if value != prev:
            increments[w] = value - prev
        prev = value
    return TrieMeasure.from_cylinders(increments, enum.alphabet)


def staged_potentials(kernel: Kernel, enum: GoodEnumeration, mu: TrieMeasure, shift: int = 0) -> dict:
    """Potential of ``mu`` on each enumerated cylinder.

    ``mu`` is uniform inside every enumerated cylinder that received mass,
    so the potential there is one number per cylinder. A cylinder whose
    increment was zero gets the potential of the first point inside it.
    """
    leaves = leaf_potentials(kernel, mu, shift)
    out = {}
    for w in enum.order:
        if w in leaves:
            out[w] = leaves[w]
        else:
            out[w] = potential(kernel, mu, EventuallyPeriodic(w, (0,)), shift)
    return out


@lru_cache(maxsize=1 << 14)
def _cylinder_kernel(kernel: Kernel, words: tuple, k: int) -> tuple:
    """``K[i][j]``: potential on ``[words[i]]`` of unit uniform mass on ``[words[j]]``.

    For distinct words of a prefix-free set the unit piece on ``[u]`` is seen at
    levels ``0..lcp(u, w)`` only; on its own cylinder it contributes every
    level below ``|w|`` plus the tail weight ``|f_{k+|w|}|``.
    """
    longest = max(len(w) for w in words)
    prefix = [Q(0)]
    for n in range(longest + 1):
        prefix.append(prefix[-1] + kernel.eval(n + k))
    rows = []
    for w in words:
        row = []
        for u in words:
            if u == w:
                row.append(prefix[len(w)] + kernel.tail_weight(k + len(w)))
            else:
                lcp = 0
                while u[lcp] == w[lcp]:
                    lcp += 1
                row.append(prefix[lcp + 1])
        rows.append(tuple(row))
    return tuple(rows)


def staged_cylinder_potentials(kernel: Kernel, enum: GoodEnumeration, shift: int = 0) -> dict:
    """Potential of the staged measure on each enumerated cylinder, by linearity.

    The staged measure is a sum of uniform pieces, one per enumerated word,
    so its potential is a fixed matrix applied to the stage increments. This
    skips building the trie and agrees exactly with :func:`staged_potentials`.
    """
    ww = weights(kernel, enum, shift)
    words = tuple(sorted(enum.order))
    inc = dict.fromkeys(words, Q(0))
    prev = Q(0)
    for w, value in zip(enum.order, ww):
        inc[w] = value - prev
        prev = value
    vec = [inc[u] for u in words]
    K = _cylinder_kernel(kernel, words, shift)
    return {w: sum((a * x for a, x in zip(row, vec) if x), Q(0)) for w, row in zip(words, K)}


@dataclass(frozen=True)
class SandwichReport:
    capacity: Q
    ww: Q
    bound_constant: Q
    min_potential: Q | float | None

    @property
    def lower_ok(self) -> bool:
        return self.capacity <= self.ww

    @property
    def upper_ok(self) -> bool:
        return self.ww <= self.bound_constant * self.capacity

    @property
    def potential_ok(self) -> bool:
        return self.min_potential is None or self.min_potential >= 1

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok and self.potential_ok

    @property
    def ratio(self) -> Q | None:
        return self.ww / self.capacity if self.capacity else None

    def lines(self) -> list[str]:
        return [
            f"capacity <= ww: {'PASS' if self.lower_ok else 'FAIL'} ({self.capacity} <= {self.ww})",
            f"ww <= A*capacity: {'PASS' if self.upper_ok else 'FAIL'} "
            f"({self.ww} <= {self.bound_constant}*{self.capacity})",
            f"staged potential >= 1 on set: {'PASS' if self.potential_ok else 'FAIL'}"
            f" (min {self.min_potential})",
        ]


def check_sandwich(kernel: Kernel, enum: GoodEnumeration, shift: int = 0) -> SandwichReport:
    """Verify ``C ≤ ww ≤ A·C`` and the staged potential lower bound, exactly."""
    ww = weights(kernel, enum, shift)
    final = ww[-1] if ww else Q(0)
    mu = staged_measure(kernel, enum, shift)
    pots = staged_potentials(kernel, enum, mu, shift)
    return SandwichReport(
        capacity(kernel, enum.set, shift),
        final,
        bound_constant(kernel),
        min(pots.values()) if pots else None,
    )


@dataclass(frozen=True)
class OrderWitness:
    set: PrefixFreeSet
    order1: tuple
    order2: tuple
    ww1: Q
    ww2: Q


def order_dependence_witness(
    kernel: Kernel, max_depth: int = 3, max_words: int = 4
) -> OrderWitness | None:
    """Smallest set (by size, then words) whose dynamic weight depends on the order.

    Returns None when every antichain of depth ``<= max_depth`` with at most
    ``max_words`` words is order independent.
    """
    b = kernel.alphabet
    candidates = sorted(
        (S for S in antichains(b, max_depth) if 2 <= len(S) <= max_words),
        key=lambda S: (len(S), sorted(S.words)),
    )
    for S in candidates:
        base = tuple(sorted(S.words))
        ww1 = _weights(kernel, 0, base)[-1]
        for perm in itertools.permutations(base):
            ww2 = _weights(kernel, 0, perm)[-1]
            if ww2 != ww1:
                return OrderWitness(S, base, perm, ww1, ww2)
    return None


def calc_inequality_check(a, samples: int, margin: float = 1e-12, dps: int = 50) -> bool:
    """Check ``ln(1 + a y) <= a y / (1 + y)`` at evenly spaced ``y`` in ``[0, a-2]``."""
    if samples < 1:
        raise ValueError("samples must be positive")
    a = Q(a)
    with mpmath.workdps(dps):
        am = mpmath.mpf(a.numerator) / a.denominator
        top = max(am - 2, mpmath.mpf(0))
        for i in range(samples):
            y = top * i / (samples - 1) if samples > 1 else mpmath.mpf(0)
            lhs = mpmath.log1p(am * y)
            rhs = am * y / (1 + y)
            if lhs > rhs + margin:
                return False
    return True


def all_orders(S: PrefixFreeSet) -> Iterable[GoodEnumeration]:
    for perm in itertools.permutations(sorted(S.words)):
        yield GoodEnumeration(perm, S.alphabet)


def count_orders(sets: Sequence[PrefixFreeSet]) -> int:
    return sum(math.factorial(len(S)) for S in sets)
