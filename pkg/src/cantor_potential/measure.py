"""Finite measures on Cantor space stored as finite tries of cylinder masses.

A :class:`Node` carries ``μ[σ]`` for its word σ. Internal nodes list their
nonzero children; a leaf says how its mass continues below it:

* :data:`UNIFORM` -- ``μ[στ] = μ[σ] b^{-|τ|}``
* :class:`PointTail` -- the whole mass is an atom at ``σ·x``

Potentials and energies are exact rationals or ``math.inf``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple, Optional, Union

from .kernel import Geometric, Kernel
from .rational import ExtValue, Q, ext, parse_rational, times
from .words import EventuallyPeriodic, Word, all_words


class MeasureError(ValueError):
    pass


class _Uniform:
    __slots__ = ()

    def __repr__(self):
        return "UNIFORM"

    def __reduce__(self):
        return "UNIFORM"


UNIFORM = _Uniform()


@dataclass(frozen=True)
class PointTail:
    point: EventuallyPeriodic


Tail = Union[_Uniform, PointTail]


class Node(NamedTuple):
    mass: Q
    children: Optional[Mapping[int, "Node"]] = None
    tail: Tail = UNIFORM

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def is_atom(self) -> bool:
        return self.is_leaf and isinstance(self.tail, PointTail) and self.mass > 0


ZERO = Node(Q(0))


def _leaf(mass, tail: Tail = UNIFORM) -> Node:
    return Node(parse_rational(mass), None, tail)


def _expand(node: Node, b: int) -> Mapping[int, Node]:
    """Children of ``node``, materialising one level below a leaf."""
    if node.children is not None:
        return node.children
    if node.mass == 0:
        return {}
    if isinstance(node.tail, PointTail):
        x = node.tail.point
        return {x[0]: _leaf(node.mass, PointTail(x.drop(1)))}
    return {i: _leaf(node.mass / b) for i in range(b)}


@dataclass(frozen=True)
class TrieMeasure:
    root: Node = field(default=ZERO)
    alphabet: int = 2

    def __post_init__(self):
        if self.alphabet < 2:
            raise MeasureError("alphabet size must be at least 2")
        self.validate()

    # -- constructors -------------------------------------------------------

    @classmethod
    def _trusted(cls, root: Node, alphabet: int) -> "TrieMeasure":
        """Wrap a trie that is consistent by construction, skipping validation."""
        mu = object.__new__(cls)
        object.__setattr__(mu, "root", root)
        object.__setattr__(mu, "alphabet", alphabet)
        return mu

    @classmethod
    def zero(cls, alphabet: int = 2) -> "TrieMeasure":
        return cls(ZERO, alphabet)

    @classmethod
    def uniform(cls, total=1, alphabet: int = 2) -> "TrieMeasure":
        return cls(_leaf(total), alphabet)

    @classmethod
    def uniform_on(cls, word: Word, mass, alphabet: int = 2) -> "TrieMeasure":
        """Mass ``mass`` spread uniformly over the cylinder ``[word]``."""
        node = _leaf(mass)
        for s in reversed(word):
            node = Node(node.mass, {s: node} if node.mass else {})
        return cls(node, alphabet)

    @classmethod
    def point_mass(cls, x: EventuallyPeriodic, mass=1, alphabet: int = 2) -> "TrieMeasure":
        return cls(_leaf(mass, PointTail(x)), alphabet)

    @classmethod
    def from_cylinders(cls, masses: Mapping[Word, Q], alphabet: int = 2) -> "TrieMeasure":
        """Sum of uniform masses on the given cylinders."""
        masses = {tuple(w): parse_rational(m) for w, m in masses.items() if m}
        words = sorted(masses)
        if any(w == v[: len(w)] for w, v in zip(words, words[1:])):
            mu = cls.zero(alphabet)
            for word, mass in masses.items():
                mu = mu + cls.uniform_on(word, mass, alphabet)
            return mu
        return cls._trusted(_build(masses, ()), alphabet)

    # -- structure ------------------------------------------------------------

    @property
    def total(self) -> Q:
        return self.root.mass

    def validate(self) -> None:
        b = self.alphabet
        stack = [((), self.root)]
        while stack:
            word, node = stack.pop()
            if node.mass < 0:
                raise MeasureError(f"negative mass at {word}")
            if node.children is None:
                if isinstance(node.tail, PointTail) and node.tail.point.max_symbol() >= b:
                    raise MeasureError(f"atom below {word} leaves the alphabet")
                continue
            if any(not 0 <= s < b for s in node.children):
                raise MeasureError(f"child symbol out of range at {word}")
            total = sum((c.mass for c in node.children.values()), Q(0))
            if total != node.mass:
                raise MeasureError(
                    f"mass {node.mass} at {word} differs from its children's sum {total}"
                )
            stack.extend((word + (s,), c) for s, c in node.children.items())

    def nodes(self) -> Iterator[tuple[Word, Node]]:
        """Materialised nodes in depth-first order."""
        stack = [((), self.root)]
        while stack:
            word, node = stack.pop()
            yield word, node
            if node.children is not None:
                stack.extend(
                    (word + (s,), node.children[s]) for s in sorted(node.children, reverse=True)
                )

    @property
    def depth(self) -> int:
        return max(len(w) for w, _ in self.nodes())

    @property
    def has_atoms(self) -> bool:
        return any(node.is_atom for _, node in self.nodes())

    def cylinder_mass(self, sigma: Word) -> Q:
        """``μ[σ]``."""
        node = self.root
        for i, s in enumerate(sigma):
            if node.children is None:
                rest = sigma[i:]
                if isinstance(node.tail, PointTail):
                    return node.mass if node.tail.point.prefix(len(rest)) == tuple(rest) else Q(0)
                return node.mass / self.alphabet ** len(rest)
            node = node.children.get(s)
            if node is None:
                return Q(0)
        return node.mass

    def __getitem__(self, sigma: Word) -> Q:
        return self.cylinder_mass(tuple(sigma))

    def level_masses(self, depth: int) -> dict[Word, Q]:
        return {w: self.cylinder_mass(w) for w in all_words(self.alphabet, depth)}

    # -- algebra ----------------------------------------------------------------

    def scale(self, c) -> "TrieMeasure":
        c = parse_rational(c)
        if c < 0:
            raise MeasureError("scale factor must be nonnegative")
        return TrieMeasure(_scale(self.root, c), self.alphabet)

    def __mul__(self, c) -> "TrieMeasure":
        return self.scale(c)

    __rmul__ = __mul__

    def add(self, other: "TrieMeasure", max_depth: int = 64) -> "TrieMeasure":
        if other.alphabet != self.alphabet:
            raise MeasureError(
                f"cannot add measures over alphabets {self.alphabet} and {other.alphabet}"
            )
        return TrieMeasure(_add(self.root, other.root, self.alphabet, 0, max_depth), self.alphabet)

    def __add__(self, other: "TrieMeasure") -> "TrieMeasure":
        return self.add(other)

    def same_measure(self, other: "TrieMeasure") -> bool:
        """Equality as measures, independent of how the tries are materialised."""
        if self.alphabet != other.alphabet:
            return False
        return _same(self.root, other.root, self.alphabet)


def _build(masses: Mapping[Word, Q], prefix: Word) -> Node:
    """Trie over a prefix-free family of uniform cylinder masses."""
    if prefix in masses:
        return Node(masses[prefix])
    groups: dict[int, dict[Word, Q]] = {}
    depth = len(prefix)
    for w, m in masses.items():
        groups.setdefault(w[depth], {})[w] = m
    children = {s: _build(g, prefix + (s,)) for s, g in sorted(groups.items())}
    return Node(sum((c.mass for c in children.values()), Q(0)), children)


def _scale(node: Node, c: Q) -> Node:
    if node.children is None:
        return Node(node.mass * c, None, node.tail)
    if c == 0:
        return ZERO
    return Node(node.mass * c, {s: _scale(ch, c) for s, ch in node.children.items()})


def _add(u: Node, v: Node, b: int, depth: int, max_depth: int) -> Node:
    if u.mass == 0:
        return v
    if v.mass == 0:
        return u
    if u.is_leaf and v.is_leaf:
        u_point = isinstance(u.tail, PointTail)
        v_point = isinstance(v.tail, PointTail)
        if not u_point and not v_point:
            return _leaf(u.mass + v.mass)
        if u_point and v_point:
            if u.tail.point.first_difference(v.tail.point) is None:
                return _leaf(u.mass + v.mass, u.tail)
        else:
            raise MeasureError(
                "an atom overlapping a uniform tail has no finite trie representation"
            )
    if depth >= max_depth:
        raise MeasureError(f"tries still overlap at the cutoff depth {max_depth}")
    uc, vc = _expand(u, b), _expand(v, b)
    children = {}
    for s in sorted(set(uc) | set(vc)):
        child = _add(uc.get(s, ZERO), vc.get(s, ZERO), b, depth + 1, max_depth)
        if child.mass:
            children[s] = child
    return Node(u.mass + v.mass, children)


def _same(u: Node, v: Node, b: int) -> bool:
    if u.mass != v.mass:
        return False
    if u.mass == 0:
        return True
    if u.is_leaf and v.is_leaf:
        if isinstance(u.tail, PointTail) != isinstance(v.tail, PointTail):
            return False
        if isinstance(u.tail, PointTail):
            return u.tail.point.first_difference(v.tail.point) is None
        return True
    uc, vc = _expand(u, b), _expand(v, b)
    return all(_same(uc.get(s, ZERO), vc.get(s, ZERO), b) for s in range(b))


def uniform(total=1, alphabet: int = 2) -> TrieMeasure:
    return TrieMeasure.uniform(total, alphabet)


def scale(mu: TrieMeasure, c) -> TrieMeasure:
    return mu.scale(c)


def add(mu: TrieMeasure, nu: TrieMeasure) -> TrieMeasure:
    return mu.add(nu)


def cylinder_mass(mu: TrieMeasure, sigma: Word) -> Q:
    return mu.cylinder_mass(tuple(sigma))


# -- potentials and energies ------------------------------------------------------


def potential(kernel: Kernel, mu: TrieMeasure, x: EventuallyPeriodic, shift: int = 0) -> ExtValue:
    """``Σ_n f(n+shift) μ[x↾n]``."""
    _check_alphabets(kernel, mu)
    total: ExtValue = Q(0)
    node, n = mu.root, 0
    while node.children is not None:
        total += kernel.eval(n + shift) * node.mass
        node = node.children.get(x[n])
        if node is None:
            return total
        n += 1
    if node.mass == 0:
        return total
    if isinstance(node.tail, PointTail):
        j = x.drop(n).first_difference(node.tail.point)
        if j is None:
            return ext(total + times(node.mass, kernel.tail_sum(n + shift)))
        return total + node.mass * sum(
            (kernel.eval(m + shift) for m in range(n, n + j + 1)), Q(0)
        )
    return total + node.mass * kernel.tail_weight(n + shift)


def leaf_potentials(kernel: Kernel, mu: TrieMeasure, shift: int = 0) -> dict[Word, Q]:
    """Potential on each uniform leaf cylinder of ``mu``.

    Below a uniform leaf every point sees the same masses, so the potential
    is a single number per leaf. Atom leaves are skipped.
    """
    _check_alphabets(kernel, mu)
    out = {}
    tails: dict[int, Q] = {}
    stack = [((), mu.root, Q(0))]
    while stack:
        word, node, acc = stack.pop()
        d = len(word)
        if node.children is None:
            if not isinstance(node.tail, PointTail):
                if d not in tails:
                    tails[d] = kernel.tail_weight(d + shift)
                out[word] = acc + node.mass * tails[d]
            continue
        acc = acc + kernel.eval(d + shift) * node.mass
        stack.extend((word + (s,), c, acc) for s, c in node.children.items())
    return out


def energy(kernel: Kernel, mu: TrieMeasure) -> ExtValue:
    """``Σ_σ f(|σ|) μ[σ]²`` summed node by node with closed-form tails."""
    _check_alphabets(kernel, mu)
    total: ExtValue = Q(0)
    for word, node in mu.nodes():
        d, m = len(word), node.mass
        if node.children is not None:
            total += kernel.eval(d) * m * m
        elif isinstance(node.tail, PointTail):
            total += times(m * m, kernel.tail_sum(d))
        else:
            total += m * m * kernel.tail_weight(d)
    return ext(total)


def mutual_energy(kernel: Kernel, mu: TrieMeasure, nu: TrieMeasure) -> ExtValue:
    """``Σ_σ f(|σ|) μ[σ] ν[σ] = ∫ P_f ν dμ``."""
    _check_alphabets(kernel, mu)
    if mu.alphabet != nu.alphabet:
        raise MeasureError("measures live over different alphabets")
    return ext(_mutual(kernel, mu.root, nu.root, 0, mu.alphabet))


def _mutual(kernel: Kernel, u: Node, v: Node, d: int, b: int) -> ExtValue:
    mm = u.mass * v.mass
    if mm == 0:
        return Q(0)
    if u.is_leaf and v.is_leaf:
        u_point = isinstance(u.tail, PointTail)
        v_point = isinstance(v.tail, PointTail)
        if not (u_point and v_point):
            # uniform×uniform and uniform×point both reduce to m₁m₂|f_d|
            return mm * kernel.tail_weight(d)
        j = u.tail.point.first_difference(v.tail.point)
        if j is None:
            return times(mm, kernel.tail_sum(d))
        return mm * sum((kernel.eval(n) for n in range(d, d + j + 1)), Q(0))
    total: ExtValue = kernel.eval(d) * mm
    uc, vc = _expand(u, b), _expand(v, b)
    for s in set(uc) & set(vc):
        total += _mutual(kernel, uc[s], vc[s], d + 1, b)
    return total


def riesz_energy(mu: TrieMeasure, r) -> ExtValue:
    """Riesz energy ``∬ ρ(X,Y)^{-s} dμ dμ`` for ``2^s = r``."""
    r = parse_rational(r)
    _check_riesz_ratio(r, mu.alphabet)
    e = energy(Geometric(r, mu.alphabet), mu)
    return ext(mu.total**2 / r + times(1 - 1 / r, e))


def riesz_potential(mu: TrieMeasure, r, x: EventuallyPeriodic) -> ExtValue:
    """Riesz potential ``∫ ρ(x,Y)^{-s} dμ(Y)`` for ``2^s = r``."""
    r = parse_rational(r)
    _check_riesz_ratio(r, mu.alphabet)
    p = potential(Geometric(r, mu.alphabet), mu, x)
    return ext(mu.total / r + times(1 - 1 / r, p))


def _check_riesz_ratio(r: Q, b: int) -> None:
    if not 1 < r < b:
        raise MeasureError(f"Riesz ratio must lie strictly between 1 and {b}, got {r}")


def _check_alphabets(kernel: Kernel, mu: TrieMeasure) -> None:
    if kernel.alphabet != mu.alphabet:
        raise MeasureError(
            f"kernel alphabet {kernel.alphabet} differs from measure alphabet {mu.alphabet}"
        )


# -- sampling -------------------------------------------------------------------------


def common_prefix_lengths(mu: TrieMeasure, size: int, rng, cap: int = 10_000):
    """Draw ``size`` independent pairs ``X, Y ~ μ/μ[λ]`` and return their
    common-prefix lengths as an integer numpy array.

    ``rng`` is a ``numpy.random.Generator``. Requires an atomless measure.
    """
    import numpy as np

    if mu.total == 0:
        raise MeasureError("cannot sample from the zero measure")
    if mu.has_atoms:
        raise MeasureError("pairs drawn from an atom agree forever")
    b = mu.alphabet
    out = np.empty(size, dtype=np.int64)
    # inside a uniform leaf both points pick symbols independently;
    # the agreement run is geometric with success probability 1 - 1/b
    extra = rng.geometric(1 - 1 / b, size=size) - 1
    for i in range(size):
        node = mu.root
        d = 0
        while node.children is not None:
            s, t = _draw_symbol(node, rng), _draw_symbol(node, rng)
            if s != t:
                break
            node = node.children[s]
            d += 1
        else:
            d += int(extra[i])
        out[i] = min(d, cap)
    return out


def _draw_symbol(node: Node, rng) -> int:
    symbols = list(node.children)
    weights = [float(node.children[s].mass / node.mass) for s in symbols]
    return symbols[rng.choice(len(symbols), p=weights)]


def monte_carlo_riesz_energy(mu: TrieMeasure, r, size: int, rng) -> tuple[float, float]:
    """Sample mean of ``r^N μ[λ]²`` over ``size`` pairs and its standard error.

    ``N`` is the common-prefix length of two independent draws from
    ``μ/μ[λ]``. For ``r² >= b`` the summand has infinite variance, so the
    reported standard error is itself a noisy, typically low, estimate.
    """
    import numpy as np

    r = parse_rational(r)
    _check_riesz_ratio(r, mu.alphabet)
    n = common_prefix_lengths(mu, size, rng)
    values = (float(r) ** n.astype(np.float64)) * float(mu.total) ** 2
    return float(values.mean()), float(values.std(ddof=1) / np.sqrt(size))
