"""Invariant suites over kernels, measures, capacities and enumerations.

Each property is a zero-argument callable returning ``(ok, detail)``. Suites
run in declaration order and are deterministic (fixed seeds).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from . import sampling
from .capacity import capacity, capacity_lp_oracle, capacity_s, certify_realizer, realizing_measure
from .enumeration import (
    GoodEnumeration,
    _weights,
    bound_constant,
    calc_inequality_check,
    check_sandwich,
    weights,
)
from .kernel import Geometric, Kernel, Polynomial, Shift
from .measure import (
    TrieMeasure,
    energy,
    mutual_energy,
    potential,
    riesz_energy,
)
from .rational import INF, Q
from .words import PrefixFreeSet, all_words, antichains

SEED = 20240601

CORE_KERNELS = (Geometric(Q(3, 2)), Geometric(1), Polynomial(1))


def kernel_name(kernel: Kernel) -> str:
    if isinstance(kernel, Geometric):
        return f"Geometric({kernel.ratio})" + ("" if kernel.alphabet == 2 else f", b={kernel.alphabet}")
    if isinstance(kernel, Polynomial):
        return f"Polynomial({kernel.degree})" + ("" if kernel.alphabet == 2 else f", b={kernel.alphabet}")
    if isinstance(kernel, Shift):
        return f"Shift({kernel_name(kernel.base)}, {kernel.offset})"
    return type(kernel).__name__


def prefix_law_riesz_energy(mu: TrieMeasure, r) -> Q | float:
    """Riesz energy from the law of the common-prefix length ``N`` of ``X, Y ~ μ``.

    ``Q_n = Σ_{|σ|=n} μ[σ]²`` is the ``μ⊗μ`` mass of ``{N >= n}``, so the energy
    is ``Σ_n r^n (Q_n - Q_{n+1})``; below the trie depth ``D`` every leaf is
    uniform and ``Q_{n+1} = Q_n / b``, which sums the tail in closed form.
    """
    r = Q(r)
    if mu.total == 0:
        return Q(0)
    if mu.has_atoms:
        return INF
    b = mu.alphabet
    D = mu.depth
    sq = [sum((m * m for m in mu.level_masses(n).values()), Q(0)) for n in range(D + 1)]
    head = sum((r**n * (sq[n] - sq[n + 1]) for n in range(D)), Q(0))
    return head + r**D * sq[D] * (1 - Q(1, b)) / (1 - r / b)


# -- property registry ------------------------------------------------------------------------


@dataclass(frozen=True)
class Property:
    suite: str
    name: str
    check: Callable[[], tuple]


@dataclass(frozen=True)
class Outcome:
    suite: str
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.suite}: {self.name} ({self.detail})"


_REGISTRY: list[Property] = []
SUITES = ("kernel", "measure", "capacity", "enumeration")


def _prop(suite: str, name: str):
    def register(fn):
        _REGISTRY.append(Property(suite, name, fn))
        return fn

    return register


def properties(suite: str = "all") -> list[Property]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    return [p for p in _REGISTRY if suite == "all" or p.suite == suite]


def run_suite(suite: str = "all", on_result: Callable[[Outcome], None] | None = None) -> list[Outcome]:
    out = []
    for prop in properties(suite):
        try:
            ok, detail = prop.check()
        except Exception as exc:  # a crash is a failed property, not a crashed suite
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        result = Outcome(prop.suite, prop.name, bool(ok), detail)
        if on_result is not None:
            on_result(result)
        out.append(result)
    return out


def _rng(offset: int = 0) -> random.Random:
    return random.Random(SEED + offset)


# -- kernel -----------------------------------------------------------------------------------


@_prop("kernel", "shifted tail weight equals tail weight at the shift")
def _shift_tail():
    bad = [
        (kernel_name(f), k)
        for f in CORE_KERNELS + (Polynomial(3), Geometric(2, 3))
        for k in range(21)
        if f.tail_weight(k) != Shift(f, k).tail_weight(0)
    ]
    return not bad, f"k <= 20, failures {bad[:3]}"


@_prop("kernel", "geometric tail weight scales by the ratio")
def _geometric_ratio():
    ok = all(
        f.tail_weight(k + 1) == f.ratio * f.tail_weight(k)
        for f in (Geometric(Q(3, 2)), Geometric(1), Geometric(Q(5, 2), 3))
        for k in range(21)
    )
    return ok, "k <= 20"


@_prop("kernel", "norm bound dominates f(k)/|f_{k+1}|")
def _norm_bound():
    ok = all(
        f.norm_bound() >= f.eval(k) / f.tail_weight(k + 1)
        for f in CORE_KERNELS + (Polynomial(0), Polynomial(2), Polynomial(4, 3))
        for k in range(51)
    )
    return ok, "k <= 50"


@_prop("kernel", "partial sum plus shifted remainder reproduces the tail weight")
def _partial_tail():
    N = 10
    ok = all(
        f.tail_weight(k) == f.partial_tail(k, N) + Q(1, f.alphabet**N) * f.tail_weight(k + N)
        for f in CORE_KERNELS + (Polynomial(3), Geometric(2, 3))
        for k in range(6)
    )
    return ok, f"N = {N}"


# -- measure ----------------------------------------------------------------------------------


def _random_measures(count: int, offset: int, atoms: bool = False):
    rng = _rng(offset)
    return [sampling.random_measure(rng, 2, 4, atoms=atoms) for _ in range(count)]


@_prop("measure", "every internal node's mass is the sum of its children")
def _additivity():
    rng = _rng(1)
    for _ in range(100):
        mu = sampling.random_measure(rng, 2, 4, atoms=True)
        nu = sampling.random_measure(rng, 2, 4)
        for m in (mu, mu.scale(Q(3, 5)), mu.add(mu), nu.add(nu.scale(2))):
            m.validate()
    return True, "100 random measures under scale and add"


@_prop("measure", "node-sum energy equals self mutual energy")
def _energy_mutual():
    ms = _random_measures(100, 2, atoms=True)
    ok = all(energy(f, m) == mutual_energy(f, m, m) for f in CORE_KERNELS for m in ms)
    return ok, "100 random measures, depth <= 4"


@_prop("measure", "mutual energy is symmetric")
def _mutual_symmetry():
    ms = _random_measures(60, 3, atoms=True)
    pairs = list(zip(ms[::2], ms[1::2]))
    ok = all(
        mutual_energy(f, m, n) == mutual_energy(f, n, m) for f in CORE_KERNELS for m, n in pairs
    )
    return ok, f"{len(pairs)} random pairs"


@_prop("measure", "energy is at least total mass squared times |f|")
def _jensen():
    ms = _random_measures(100, 4)
    ok = all(energy(f, m) >= m.total**2 * f.tail_weight(0) for f in CORE_KERNELS for m in ms)
    return ok, "100 random atomless measures"


@_prop("measure", "energy scales quadratically and potential linearly")
def _scaling():
    rng = _rng(5)
    ok = True
    for _ in range(100):
        m = sampling.random_measure(rng, 2, 4)
        c = sampling.random_rational(rng)
        x = sampling.random_point(rng)
        for f in CORE_KERNELS:
            ok &= energy(f, m.scale(c)) == c * c * energy(f, m)
            ok &= potential(f, m.scale(c), x) == c * potential(f, m, x)
    return ok, "100 random measures"


@_prop("measure", "Riesz energy matches the common-prefix-length law")
def _riesz_oracle():
    r = Q(3, 2)
    ok = riesz_energy(TrieMeasure.uniform(), r) == 2 == prefix_law_riesz_energy(TrieMeasure.uniform(), r)
    for m in _random_measures(100, 6):
        ok &= riesz_energy(m, r) == prefix_law_riesz_energy(m, r)
    return ok, "uniform probability gives 2; 100 random atomless measures"


@_prop("measure", "Riesz energy relation with the s-energy")
def _riesz_relation():
    ok = True
    for r in (Q(3, 2), Q(5, 4)):
        f = Geometric(r)
        for m in _random_measures(100, 7):
            ok &= riesz_energy(m, r) == m.total**2 / r + (1 - 1 / r) * energy(f, m)
    return ok, "r in {3/2, 5/4}, 100 random atomless measures"


# -- capacity ---------------------------------------------------------------------------------


@_prop("capacity", "base cases C(empty) = 0 and C(full) = 1/|f|")
def _base_cases():
    ok = all(
        capacity(f, PrefixFreeSet(frozenset())) == 0
        and capacity(f, PrefixFreeSet.of("λ")) == 1 / f.tail_weight(0)
        for f in CORE_KERNELS
    )
    return ok, ", ".join(f"{kernel_name(f)}: {1 / f.tail_weight(0)}" for f in CORE_KERNELS)


@_prop("capacity", "recursion equals the LP oracle on all binary antichains of depth <= 3")
def _oracle_binary():
    n = 0
    for f in CORE_KERNELS:
        for S in antichains(2, 3):
            n += 1
            if capacity(f, S) != capacity_lp_oracle(f, S):
                return False, f"mismatch for {kernel_name(f)} on {S}"
    return True, f"{n} instances"


@_prop("capacity", "recursion equals the LP oracle on all ternary antichains of depth <= 2")
def _oracle_ternary():
    f = Geometric(2, 3)
    n = 0
    for S in antichains(3, 2):
        n += 1
        if capacity(f, S) != capacity_lp_oracle(f, S):
            return False, f"mismatch on {S}"
    return True, f"{n} instances, Geometric(2, b=3)"


@_prop("capacity", "realizing measure certificates")
def _realizer():
    rng = _rng(8)
    for _ in range(200):
        S = sampling.random_antichain(rng, 2, 4, nonempty=False)
        for f in CORE_KERNELS:
            res = realizing_measure(f, S)
            if res.realizer.total != res.value or not certify_realizer(f, S, res.realizer, res.value).ok:
                return False, f"{kernel_name(f)} on {S}"
    return True, "200 random antichains, depth <= 4"


@_prop("capacity", "monotone under inclusion")
def _monotone():
    rng = _rng(9)
    for _ in range(200):
        V = sampling.random_antichain(rng, 2, 4)
        U = sampling.random_subset(rng, V)
        for f in CORE_KERNELS:
            if capacity(f, U) > capacity(f, V):
                return False, f"{U} inside {V}"
    return True, "200 random nested pairs"


@_prop("capacity", "bounded by 1/|f|")
def _upper():
    ok = all(capacity(f, S) <= 1 / f.tail_weight(0) for f in CORE_KERNELS for S in antichains(2, 3))
    return ok, "all binary antichains of depth <= 3"


@_prop("capacity", "geometric shift divides capacity by the ratio")
def _shift_scaling():
    ok = all(
        capacity(f, S, 1) == capacity(f, S) / f.ratio
        for f in (Geometric(Q(3, 2)), Geometric(1), Geometric(Q(1, 3)))
        for S in antichains(2, 3)
    )
    return ok, "all binary antichains of depth <= 3"


@_prop("capacity", "decomposing at depth 1 or depth 2 gives the same value")
def _decomposition():
    def via_depth2(f, S):
        if S.is_full:
            return 1 / f.tail_weight(0)
        T = Q(0)
        for i in range(2):
            Si = S.child(i)
            if Si.is_full:
                T += 1 / f.tail_weight(1)
                continue
            Ti = sum((capacity(f, Si.child(j), 2) for j in range(2)), Q(0))
            T += Ti / (1 + f.eval(1) * Ti)
        return T / (1 + f.eval(0) * T)

    ok = all(via_depth2(f, S) == capacity(f, S) for f in CORE_KERNELS for S in antichains(2, 3))
    return ok, "all binary antichains of depth <= 3"


@_prop("capacity", "s-capacity shortcut agrees with the general recursion")
def _capacity_s():
    rng = _rng(10)
    ok = True
    for _ in range(200):
        S = sampling.random_antichain(rng, 2, 5, nonempty=False)
        for r in (Q(3, 2), Q(5, 4)):
            ok &= capacity_s(S, r) == capacity(Geometric(r), S)
    return ok, "200 random antichains, r in {3/2, 5/4}"


# -- enumeration ------------------------------------------------------------------------------


@_prop("enumeration", "dynamic weight is nondecreasing and stage local")
def _monotone_ww():
    rng = _rng(11)
    for _ in range(300):
        S = sampling.random_antichain(rng, 2, 5)
        order = sampling.random_order(rng, S)
        for f in CORE_KERNELS:
            ww = weights(f, GoodEnumeration(order))
            if any(b < a for a, b in zip((Q(0),) + ww, ww)):
                return False, f"decrease under {kernel_name(f)}"
            t = rng.randint(1, len(order))
            if _weights(f, 0, order[:t]) != ww[:t]:
                return False, "prefix replay differs"
    return True, "300 random orders"


@_prop("enumeration", "single-word enumerations give the capacity exactly")
def _single_word():
    ok = all(
        weights(f, GoodEnumeration((w,)))[-1] == capacity(f, PrefixFreeSet(frozenset({w})))
        for f in CORE_KERNELS
        for n in range(5)
        for w in all_words(2, n)
    )
    return ok, "all single words of length <= 4"


@_prop("enumeration", "sandwich over every order of every binary antichain of depth <= 3")
def _sandwich_exhaustive():
    n = 0
    for f in CORE_KERNELS:
        A = bound_constant(f)
        for S in antichains(2, 3):
            if S.is_empty:
                continue
            C = capacity(f, S)
            for perm in _permutations(S):
                n += 1
                ww = _weights(f, 0, perm)[-1]
                if not C <= ww <= A * C:
                    return False, f"{kernel_name(f)} order {perm}"
    return True, f"{n} (kernel, order) pairs"


@_prop("enumeration", "sandwich, staged mass and staged potential on random deeper orders")
def _sandwich_random():
    rng = _rng(12)
    for _ in range(1000):
        S = sampling.random_antichain(rng, 2, 5)
        enum = GoodEnumeration(sampling.random_order(rng, S))
        for f in CORE_KERNELS:
            rep = check_sandwich(f, enum)
            if not rep.ok:
                return False, f"{kernel_name(f)} order {enum.order}"
    return True, "1000 random antichains of depth <= 5 with random orders"


@_prop("enumeration", "logarithm inequality on [0, a-2]")
def _calc():
    values = (2, Q(7, 3), 4, 10)
    return all(calc_inequality_check(a, 1000) for a in values), "a in {2, 7/3, 4, 10}, 1000 samples"


def _permutations(S: PrefixFreeSet):
    return itertools.permutations(sorted(S.words))

