"""Exact simplex over the rationals for small covering LPs.

Solves ``min Σx  s.t.  A x >= 1, x >= 0`` for a nonnegative matrix ``A`` by
running Bland's-rule simplex on the packing dual ``max Σy  s.t.  Aᵀy <= 1``,
whose slack basis is feasible from the start. The primal optimum is read off
the final reduced costs and both solutions are checked exactly before
returning.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rational import Q


class LPError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CoveringSolution:
    value: Q
    primal: tuple  # x, one entry per column of A
    dual: tuple  # y, one entry per row of A
    pivots: int


def solve_covering(A: Sequence[Sequence[Q]], max_pivots: int = 100_000) -> CoveringSolution:
    m = len(A)  # constraints (rows of A) = dual variables
    if m == 0:
        raise LPError("covering LP needs at least one constraint")
    n = len(A[0])  # primal variables = dual constraints
    if any(len(row) != n for row in A):
        raise LPError("ragged constraint matrix")
    if any(A[i][j] < 0 for i in range(m) for j in range(n)):
        raise LPError("covering matrix must be nonnegative")
    if any(all(a == 0 for a in row) for row in A):
        raise LPError("a constraint row is identically zero; the covering LP is infeasible")

    # dual tableau: n rows "Σ_i A[i][j] y_i + s_j = 1"; columns y_0..y_{m-1}, s_0..s_{n-1}
    width = m + n
    rows = []
    for j in range(n):
        row = [Q(A[i][j]) for i in range(m)] + [Q(0)] * n
        row[m + j] = Q(1)
        rows.append(row)
    rhs = [Q(1)] * n
    basis = [m + j for j in range(n)]
    cost = [Q(1)] * m + [Q(0)] * n  # maximise

    pivots = 0
    while True:
        reduced = _reduced_costs(rows, basis, cost, width)
        entering = next((c for c in range(width) if reduced[c] > 0), None)
        if entering is None:
            break
        ratios = [
            (rhs[r] / rows[r][entering], basis[r], r)
            for r in range(n)
            if rows[r][entering] > 0
        ]
        if not ratios:
            raise LPError("dual unbounded; the covering LP is infeasible")
        _, _, leave = min(ratios)
        _pivot(rows, rhs, leave, entering)
        basis[leave] = entering
        pivots += 1
        if pivots > max_pivots:
            raise LPError("pivot limit exceeded")

    y = [Q(0)] * m
    for r, var in enumerate(basis):
        if var < m:
            y[var] = rhs[r]
    reduced = _reduced_costs(rows, basis, cost, width)
    # shadow prices of the dual constraints are the primal variables
    x = [-reduced[m + j] for j in range(n)]
    value = sum(y, Q(0))

    if any(v < 0 for v in x) or any(v < 0 for v in y):
        raise LPError("sign violation in the final tableau")
    for i in range(m):
        if sum((A[i][j] * x[j] for j in range(n)), Q(0)) < 1:
            raise LPError(f"recovered primal violates constraint {i}")
    for j in range(n):
        if sum((A[i][j] * y[i] for i in range(m)), Q(0)) > 1:
            raise LPError(f"recovered dual violates constraint {j}")
    if sum(x, Q(0)) != value:
        raise LPError("primal and dual objectives differ")
    return CoveringSolution(value, tuple(x), tuple(y), pivots)


def _reduced_costs(rows, basis, cost, width):
    reduced = list(cost)
    for r, var in enumerate(basis):
        cb = cost[var]
        if cb:
            row = rows[r]
            for c in range(width):
                if row[c]:
                    reduced[c] -= cb * row[c]
    return reduced


def _pivot(rows, rhs, leave, entering):
    prow = rows[leave]
    p = prow[entering]
    for c in range(len(prow)):
        if prow[c]:
            prow[c] /= p
    rhs[leave] /= p
    for r, row in enumerate(rows):
        if r == leave:
            continue
        factor = row[entering]
        if factor:
            for c in range(len(row)):
                if prow[c]:
                    row[c] -= factor * prow[c]
            rhs[r] -= factor * rhs[leave]
