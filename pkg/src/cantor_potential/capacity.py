"""f-capacity of clopen sets, realising measures and an LP cross-check."""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .rational import Q
from .kernel import Kernel, KernelError
from .lp import solve_covering
from .measure import Node, TrieMeasure, ZERO, potential
from .words import EventuallyPeriodic, PrefixFreeSet, Word, all_words

DEFAULT_MAX_DEPTH = 6
MAX_LP_CYLINDERS = 64


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class CapacityResult:
    value: Q
    realizer: TrieMeasure


def _check(kernel: Kernel, S: PrefixFreeSet) -> None:
    if kernel.finite_support:
        raise KernelError("capacity is only defined for kernels with infinite support")
    if kernel.alphabet != S.alphabet:
        raise CapacityError(
            f"kernel alphabet {kernel.alphabet} differs from set alphabet {S.alphabet}"
        )


def capacity(kernel: Kernel, S: PrefixFreeSet, shift: int = 0) -> Q:
    """Exact ``C_{f_k}[S]`` by recursion on the first symbol."""
    _check(kernel, S)
    return _capacity(kernel, S, shift)


@lru_cache(maxsize=1 << 16)
def _capacity(kernel: Kernel, S: PrefixFreeSet, k: int) -> Q:
    if S.is_empty:
        return Q(0)
    if S.is_full:
        return 1 / kernel.tail_weight(k)
    t = sum((_capacity(kernel, S.child(i), k + 1) for i in range(S.alphabet)), Q(0))
    return t / (1 + kernel.eval(k) * t)


def realizing_measure(kernel: Kernel, S: PrefixFreeSet, shift: int = 0) -> CapacityResult:
    """The measure of total mass ``C_{f_k}[S]`` whose potential is 1 on ``[S]``."""
    _check(kernel, S)
    root = _realizer(kernel, S, shift)
    return CapacityResult(root.mass, TrieMeasure(root, S.alphabet))


def _realizer(kernel: Kernel, S: PrefixFreeSet, k: int) -> Node:
    if S.is_empty:
        return ZERO
    if S.is_full:
        return Node(1 / kernel.tail_weight(k))
    parts = {i: _realizer(kernel, S.child(i), k + 1) for i in range(S.alphabet)}
    t = sum((p.mass for p in parts.values()), Q(0))
    c = 1 / (1 + kernel.eval(k) * t)
    children = {i: _scaled(p, c) for i, p in parts.items() if p.mass}
    return Node(t * c, children)


def _scaled(node: Node, c: Q) -> Node:
    if node.children is None:
        return Node(node.mass * c, None, node.tail)
    return Node(node.mass * c, {s: _scaled(ch, c) for s, ch in node.children.items()})


def capacity_s(S: PrefixFreeSet, r) -> Q:
    """Binary s-capacity for ``f(n) = r^n``: ``C = (C₀+C₁)/(r + C₀ + C₁)``."""
    if S.alphabet != 2:
        raise CapacityError("the s-capacity shortcut is stated for the binary alphabet")
    r = Q(r)
    if not 0 < r < 2:
        raise CapacityError(f"ratio must lie in (0, 2), got {r}")
    return _capacity_s(S, r)


def _capacity_s(S: PrefixFreeSet, r: Q) -> Q:
    if S.is_empty:
        return Q(0)
    if S.is_full:
        return 1 - r / 2
    t = _capacity_s(S.child(0), r) + _capacity_s(S.child(1), r)
    return t / (r + t)


# -- LP oracle ---------------------------------------------------------------------------


def max_oracle_depth() -> int:
    return int(os.environ.get("CANTOR_POTENTIAL_MAX_DEPTH", DEFAULT_MAX_DEPTH))


def potential_matrix(kernel: Kernel, depth: int, shift: int = 0) -> dict[Word, dict[Word, Q]]:
    """Potential at each depth-``depth`` cylinder as a linear form in the
    cylinder masses of a measure that is uniform below that depth."""
    cells = list(all_words(kernel.alphabet, depth))
    tail = kernel.tail_weight(shift + depth)
    prefix_sums = [Q(0)]
    for n in range(depth):
        prefix_sums.append(prefix_sums[-1] + kernel.eval(n + shift))
    rows = {}
    for c in cells:
        row = {}
        for c2 in cells:
            lcp = 0
            while lcp < depth and c[lcp] == c2[lcp]:
                lcp += 1
            # f(n) μ[c↾n] picks up x_{c2} for every n <= lcp with n < depth
            coef = prefix_sums[min(lcp + 1, depth)]
            if c == c2:
                coef += tail
            row[c2] = coef
        rows[c] = row
    return rows


def capacity_lp_oracle(kernel: Kernel, S: PrefixFreeSet, shift: int = 0) -> Q:
    """Capacity as the optimum of the covering LP over depth-d cylinder masses.

    Independent of the recursion: the potential constraints are assembled
    directly from the definition and solved by exact simplex.
    """
    _check(kernel, S)
    if S.is_empty:
        return Q(0)
    d = S.max_length
    cells = kernel.alphabet**d
    if d > max_oracle_depth() or cells > MAX_LP_CYLINDERS:
        raise CapacityError(
            f"oracle instance too large: depth {d}, {cells} cylinders "
            f"(limits {max_oracle_depth()} and {MAX_LP_CYLINDERS})"
        )
    rows = potential_matrix(kernel, d, shift)
    columns = list(all_words(kernel.alphabet, d))
    A = [[rows[c][c2] for c2 in columns] for c in S.cylinders(d)]
    return solve_covering(A).value


# -- realiser certificates -------------------------------------------------------------


@dataclass(frozen=True)
class RealizerCertificate:
    value: Q
    mass_on_set: Q
    potentials_on_set: tuple
    max_potential_off_set: Q

    @property
    def mass_ok(self) -> bool:
        return self.mass_on_set == self.value

    @property
    def equal_one_ok(self) -> bool:
        return all(p == 1 for p in self.potentials_on_set)

    @property
    def at_most_one_ok(self) -> bool:
        return self.max_potential_off_set <= 1 and all(p <= 1 for p in self.potentials_on_set)

    @property
    def ok(self) -> bool:
        return self.mass_ok and self.equal_one_ok and self.at_most_one_ok

    def lines(self) -> list[str]:
        return [
            f"mass on set = capacity: {_verdict(self.mass_ok)} ({self.mass_on_set})",
            f"potential = 1 on set: {_verdict(self.equal_one_ok)}",
            f"potential <= 1 everywhere: {_verdict(self.at_most_one_ok)}"
            f" (max off set {self.max_potential_off_set})",
        ]


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def certify_realizer(
    kernel: Kernel, S: PrefixFreeSet, mu: TrieMeasure, value: Q, shift: int = 0
) -> RealizerCertificate:
    """Check the three realiser properties cylinder by cylinder.

    The realiser is uniform below every word of ``S`` and vanishes on
    depth-d cylinders missing ``[S]``, so its potential is constant on each
    depth-d cylinder and one representative point per cylinder decides it.
    """
    b = S.alphabet
    mass = sum((mu.cylinder_mass(w) for w in S.words), Q(0))
    on_set = []
    for w in S:
        for sym in range(b):
            on_set.append(potential(kernel, mu, EventuallyPeriodic(w, (sym,)), shift))
    d = S.max_length
    worst = Q(0)
    for c in all_words(b, d):
        if not S.covers(c):
            worst = max(worst, potential(kernel, mu, EventuallyPeriodic(c, (0,)), shift))
    return RealizerCertificate(value, mass, tuple(on_set), worst)


# -- C_f tests ------------------------------------------------------------------------------


@dataclass(frozen=True)
class CfLevel:
    index: int
    capacity: Q
    bound: Q

    @property
    def passed(self) -> bool:
        return self.capacity <= self.bound


@dataclass(frozen=True)
class CfTestReport:
    levels: tuple

    @property
    def passed(self) -> bool:
        return all(level.passed for level in self.levels)

    def lines(self) -> list[str]:
        return [
            f"level {lv.index}: C = {lv.capacity} <= {lv.bound}: {_verdict(lv.passed)}"
            for lv in self.levels
        ]


def cf_test_check(kernel: Kernel, levels: Sequence[PrefixFreeSet]) -> CfTestReport:
    """Check ``C_f(U_n) <= 2^{-n}`` for each clopen level."""
    rows = []
    for n, S in enumerate(levels):
        rows.append(CfLevel(n, capacity(kernel, S), Q(1, 2**n)))
    return CfTestReport(tuple(rows))
