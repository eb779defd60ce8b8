"""Random antichains, orders and trie measures for property sweeps.

All generators take a ``random.Random`` so sweeps are reproducible.
"""
from __future__ import annotations

import random

from .measure import Node, PointTail, TrieMeasure
from .rational import Q
from .words import EventuallyPeriodic, PrefixFreeSet, Word


def random_antichain(
    rng: random.Random, alphabet: int = 2, max_depth: int = 3, nonempty: bool = True
) -> PrefixFreeSet:
    while True:
        words = _random_words(rng, (), alphabet, max_depth)
        if words or not nonempty:
            return PrefixFreeSet(frozenset(words), alphabet)


def _random_words(rng, prefix: Word, b: int, max_depth: int) -> list[Word]:
    roll = rng.random()
    if len(prefix) == max_depth:
        return [prefix] if roll < 0.5 else []
    if roll < 0.15:
        return [prefix]
    if roll < 0.3:
        return []
    out = []
    for s in range(b):
        out.extend(_random_words(rng, prefix + (s,), b, max_depth))
    return out


def random_order(rng: random.Random, S: PrefixFreeSet) -> tuple:
    order = sorted(S.words)
    rng.shuffle(order)
    return tuple(order)


def random_subset(rng: random.Random, V: PrefixFreeSet, extra_depth: int = 2) -> PrefixFreeSet:
    """A random clopen ``U`` with ``[U] ⊆ [V]``: words are dropped, kept or refined."""
    words = []
    for w in sorted(V.words):
        roll = rng.random()
        if roll < 0.25:
            continue
        if roll < 0.6:
            words.append(w)
        else:
            words.extend(w + t for t in _random_words(rng, (), V.alphabet, extra_depth))
    return PrefixFreeSet(frozenset(words), V.alphabet)


def random_rational(rng: random.Random, top: int = 12) -> Q:
    return Q(rng.randint(1, top), rng.randint(1, top))


def random_measure(
    rng: random.Random,
    alphabet: int = 2,
    max_depth: int = 4,
    atoms: bool = False,
    total: Q | None = None,
) -> TrieMeasure:
    """Random finite trie measure with rational masses.

    With ``atoms=False`` every leaf has a uniform tail, so the measure is atomless.
    """
    mass = random_rational(rng) if total is None else Q(total)
    return TrieMeasure(_random_node(rng, mass, 0, alphabet, max_depth, atoms), alphabet)


def _random_node(rng, mass: Q, depth: int, b: int, max_depth: int, atoms: bool) -> Node:
    if mass == 0:
        return Node(Q(0))
    if depth == max_depth or rng.random() < 0.3:
        if atoms and rng.random() < 0.3:
            return Node(mass, None, PointTail(random_point(rng, b)))
        return Node(mass)
    weights = [rng.randint(0, 4) for _ in range(b)]
    if not any(weights):
        weights[rng.randrange(b)] = 1
    total = sum(weights)
    children = {}
    for s, w in enumerate(weights):
        if w:
            children[s] = _random_node(rng, mass * Q(w, total), depth + 1, b, max_depth, atoms)
    return Node(mass, children)


def random_point(rng: random.Random, alphabet: int = 2, max_len: int = 3) -> EventuallyPeriodic:
    head = tuple(rng.randrange(alphabet) for _ in range(rng.randint(0, max_len)))
    period = tuple(rng.randrange(alphabet) for _ in range(rng.randint(1, max_len)))
    return EventuallyPeriodic(head, period)
