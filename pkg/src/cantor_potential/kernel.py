"""Gauge functions ``f: ω → [0, ∞)`` with exact tail weights.

Every kernel lives over an alphabet of size ``b`` and exposes

* ``kernel(n)``              -- the value ``f(n)``
* ``kernel.tail_weight(k)``  -- ``|f_k| = Σ_n f(n+k) b^{-n}``
* ``kernel.norm_bound()``    -- a certified upper bound on ``sup_k f(k) / |f_{k+1}|``

All values are exact rationals (:data:`cantor_potential.rational.Q`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .rational import INF, Q, parse_rational


class KernelError(ValueError):
    pass


class Kernel:
    """Base class; subclasses are frozen dataclasses and therefore hashable."""

    alphabet: int

    def __call__(self, n: int) -> Q:
        return self.eval(n)

    def eval(self, n: int) -> Q:
        raise NotImplementedError

    def tail_weight(self, k: int = 0) -> Q:
        raise NotImplementedError

    def tail_sum(self, k: int = 0) -> Q | float:
        """Unweighted ``Σ_{n≥k} f(n)``; infinite unless the support is finite."""
        return INF

    @property
    def finite_support(self) -> bool:
        return False

    def is_amicable(self) -> bool:
        return True

    def norm_bound(self) -> Q:
        raise NotImplementedError

    def shift(self, k: int) -> "Kernel":
        return self if k == 0 else Shift(self, k)

    def partial_tail(self, k: int, terms: int) -> Q:
        """``Σ_{n<terms} f(n+k) b^{-n}``, the truncated tail weight."""
        b = Q(1, self.alphabet)
        return sum((self.eval(n + k) * b**n for n in range(terms)), Q(0))


def _check_alphabet(b: int) -> None:
    if not isinstance(b, int) or b < 2:
        raise KernelError(f"alphabet size must be an integer >= 2, got {b!r}")


@dataclass(frozen=True)
class Geometric(Kernel):
    """``f(n) = r^n`` for a rational ratio ``0 < r < b``."""

    ratio: Q
    alphabet: int = 2

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        object.__setattr__(self, "ratio", parse_rational(self.ratio))
        if not 0 < self.ratio < self.alphabet:
            raise KernelError(
                f"geometric ratio must lie in (0, {self.alphabet}), got {self.ratio}"
            )

    def eval(self, n: int) -> Q:
        return self.ratio**n

    def tail_weight(self, k: int = 0) -> Q:
        return self.ratio**k / (1 - self.ratio / self.alphabet)

    def norm_bound(self) -> Q:
        # f(k)/|f_{k+1}| = 1/(r |f|) for every k
        return 1 / (self.ratio * self.tail_weight(0))


@lru_cache(maxsize=None)
def _power_series_numerator(i: int) -> tuple[tuple[Q, ...], int]:
    """``Σ_n n^i x^n = N(x) / (1-x)^m``; returns (coefficients of N, m).

    Built by applying ``x d/dx`` ``i`` times to ``1/(1-x)``.
    """
    num: list[Q] = [Q(1)]
    m = 1
    for _ in range(i):
        # x d/dx [N (1-x)^{-m}] = [x N' (1-x) + m x N] (1-x)^{-(m+1)}
        deriv = [c * j for j, c in enumerate(num)][1:] or [Q(0)]
        x_deriv = [Q(0)] + deriv
        new = [Q(0)] * (len(x_deriv) + 1)
        for j, c in enumerate(x_deriv):
            new[j] += c
            new[j + 1] -= c
        for j, c in enumerate(num):
            new[j + 1] += m * c
        while len(new) > 1 and new[-1] == 0:
            new.pop()
        num, m = new, m + 1
    return tuple(num), m


@lru_cache(maxsize=None)
def power_moment(i: int, b: int) -> Q:
    """``Σ_{n≥0} n^i b^{-n}`` exactly (with ``0^0 = 1``)."""
    num, m = _power_series_numerator(i)
    x = Q(1, b)
    value = sum((c * x**j for j, c in enumerate(num)), Q(0))
    return value / (1 - x) ** m


@dataclass(frozen=True)
class Polynomial(Kernel):
    """``f(n) = n^degree`` with ``0^0 = 1``."""

    degree: int
    alphabet: int = 2

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        if not isinstance(self.degree, int) or self.degree < 0:
            raise KernelError(f"polynomial degree must be a nonnegative integer, got {self.degree!r}")

    def eval(self, n: int) -> Q:
        return Q(n**self.degree)

    def tail_weight(self, k: int = 0) -> Q:
        j, b = self.degree, self.alphabet
        return sum(
            (math.comb(j, i) * Q(k ** (j - i)) * power_moment(i, b) for i in range(j + 1)),
            Q(0),
        )

    def norm_bound(self) -> Q:
        # |f_{k+1}| >= (k+1)^j b/(b-1) >= f(k) b/(b-1)
        return Q(self.alphabet - 1, self.alphabet)


@dataclass(frozen=True)
class Table(Kernel):
    """Finitely supported kernel: ``f(n) = values[n]``, zero beyond the list."""

    values: tuple
    alphabet: int = 2

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        values = tuple(parse_rational(v) for v in self.values)
        if any(v < 0 for v in values):
            raise KernelError("table values must be nonnegative")
        object.__setattr__(self, "values", values)

    def eval(self, n: int) -> Q:
        return self.values[n] if n < len(self.values) else Q(0)

    def tail_weight(self, k: int = 0) -> Q:
        return self.partial_tail(k, max(len(self.values) - k, 0))

    def tail_sum(self, k: int = 0) -> Q:
        return sum(self.values[k:], Q(0))

    @property
    def finite_support(self) -> bool:
        return True

    def is_amicable(self) -> bool:
        return False

    def norm_bound(self) -> Q:
        raise KernelError("finitely supported kernels are outside the capacity theory")


@dataclass(frozen=True)
class Shift(Kernel):
    """``f_k(n) = base(n + offset)``."""

    base: Kernel
    offset: int

    def __post_init__(self):
        if not isinstance(self.offset, int) or self.offset < 0:
            raise KernelError(f"shift offset must be a nonnegative integer, got {self.offset!r}")

    @property
    def alphabet(self) -> int:  # type: ignore[override]
        return self.base.alphabet

    def eval(self, n: int) -> Q:
        return self.base.eval(n + self.offset)

    def tail_weight(self, k: int = 0) -> Q:
        return self.base.tail_weight(k + self.offset)

    def tail_sum(self, k: int = 0):
        return self.base.tail_sum(k + self.offset)

    @property
    def finite_support(self) -> bool:
        return self.base.finite_support

    def is_amicable(self) -> bool:
        return self.base.is_amicable()

    def norm_bound(self) -> Q:
        # the supremum over k >= offset is at most the supremum over all k
        return self.base.norm_bound()

    def shift(self, k: int) -> Kernel:
        return self if k == 0 else Shift(self.base, self.offset + k)


def from_s_energy(r, alphabet: int = 2) -> Geometric:
    """Kernel ``f(n) = 2^{sn}`` for ``2^s = r``; requires ``1 < r < b``."""
    r = parse_rational(r)
    if not 1 < r < alphabet:
        raise KernelError(f"s-energy ratio must lie strictly between 1 and {alphabet}, got {r}")
    return Geometric(r, alphabet)


def from_log_energy(k: int, alphabet: int = 2) -> Polynomial:
    """Kernel ``f(n) = n^{k-1}`` of the log^k energy (``f ≡ 1`` when ``k = 1``)."""
    if not isinstance(k, int) or k < 1:
        raise KernelError(f"log-energy exponent must be an integer >= 1, got {k!r}")
    return Polynomial(k - 1, alphabet)


def table(values: Sequence, alphabet: int = 2) -> Table:
    return Table(tuple(values), alphabet)
