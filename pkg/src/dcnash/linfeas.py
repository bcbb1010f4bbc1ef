"""Exact rational linear feasibility with machine-checkable outcomes.

``solve_feasibility`` decides systems of the form

    a . y == b   (equality rows)
    a . y <= b   (inequality rows)
    y_i >= 0     (for flagged unknowns; others free)

by a phase-1 simplex over Fractions with Bland's anti-cycling rule, so it
always terminates and never approximates.  A feasible system yields a
point satisfying every row exactly; an infeasible one yields a Farkas
certificate: row multipliers (sign-free on equalities, nonnegative on
inequalities) whose combination is the exact contradiction
``0 <= r . y <= c`` with ``r`` vanishing on free unknowns, ``r >= 0`` on
nonnegative ones, and ``c < 0``.  ``verify_outcome`` re-checks either
witness independently of the solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .rationals import RationalLike, Vec, dot, rat, vec

Row = Tuple[Vec, Fraction]


@dataclass(frozen=True)
class LinearSystem:
    eq_rows: Tuple[Row, ...]
    ineq_rows: Tuple[Row, ...]
    nonneg: Tuple[bool, ...]

    @property
    def n_unknowns(self) -> int:
        return len(self.nonneg)


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers combining the rows into an exact contradiction."""

    eq_mults: Vec
    ineq_mults: Vec


@dataclass(frozen=True)
class Feasible:
    point: Vec


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate


FeasibilityOutcome = Union[Feasible, Infeasible]


def linear_system(
    eq: Iterable[Tuple[Iterable[RationalLike], RationalLike]] = (),
    ineq: Iterable[Tuple[Iterable[RationalLike], RationalLike]] = (),
    nonneg: Iterable[bool] = (),
) -> LinearSystem:
    nn = tuple(bool(f) for f in nonneg)
    width = len(nn)
    eq_rows = tuple((vec(a), rat(b)) for a, b in eq)
    ineq_rows = tuple((vec(a), rat(b)) for a, b in ineq)
    for coeffs, _ in itertools.chain(eq_rows, ineq_rows):
        if len(coeffs) != width:
            raise ValueError(f"row width {len(coeffs)} != unknown count {width}")
    return LinearSystem(eq_rows, ineq_rows, nn)


def combined_row(system: LinearSystem, cert: FarkasCertificate) -> Tuple[Vec, Fraction]:
    """The certificate's combination: (sum of multiplied rows, combined rhs)."""
    m = system.n_unknowns
    r = [Fraction(0)] * m
    c = Fraction(0)
    for mult, (coeffs, rhs) in zip(cert.eq_mults, system.eq_rows):
        if mult == 0:
            continue
        for i in range(m):
            r[i] += mult * coeffs[i]
        c += mult * rhs
    for mult, (coeffs, rhs) in zip(cert.ineq_mults, system.ineq_rows):
        if mult == 0:
            continue
        for i in range(m):
            r[i] += mult * coeffs[i]
        c += mult * rhs
    return tuple(r), c


def verify_outcome(system: LinearSystem, outcome: FeasibilityOutcome) -> bool:
    """Exact audit of a witness, independent of how it was produced."""
    if isinstance(outcome, Feasible):
        y = outcome.point
        if len(y) != system.n_unknowns:
            return False
        if any(flag and v < 0 for flag, v in zip(system.nonneg, y)):
            return False
        if any(dot(a, y) != b for a, b in system.eq_rows):
            return False
        return all(dot(a, y) <= b for a, b in system.ineq_rows)
    cert = outcome.certificate
    if len(cert.eq_mults) != len(system.eq_rows):
        return False
    if len(cert.ineq_mults) != len(system.ineq_rows):
        return False
    if any(v < 0 for v in cert.ineq_mults):
        return False
    r, c = combined_row(system, cert)
    for flag, ri in zip(system.nonneg, r):
        if flag:
            if ri < 0:
                return False
        elif ri != 0:
            return False
    return c < 0


def solve_feasibility(system: LinearSystem) -> FeasibilityOutcome:
    """Decide the system; deterministic in the input bytes.

    Phase-1 construction: free unknowns are split into differences of
    nonnegative parts, inequalities get slack columns, rows are sign-
    normalized to a nonnegative right-hand side, and one artificial
    column per row forms the starting basis.  Minimizing the artificial
    sum to zero produces a feasible point; a positive optimum turns the
    final simplex multipliers into a Farkas certificate.
    """
    m = system.n_unknowns
    rows: List[Tuple[Vec, Fraction]] = list(system.eq_rows) + list(system.ineq_rows)
    n_eq = len(system.eq_rows)
    n_rows = len(rows)
    if n_rows == 0:
        return Feasible(point=(Fraction(0),) * m)

    # column layout: structural (pos part, then neg part for free unknowns),
    # then one slack per inequality row, then one artificial per row
    col_unknown: List[Tuple[int, int]] = []  # (unknown index, sign)
    for i in range(m):
        col_unknown.append((i, +1))
        if not system.nonneg[i]:
            col_unknown.append((i, -1))
    n_struct = len(col_unknown)
    n_slack = n_rows - n_eq
    n_cols = n_struct + n_slack + n_rows

    sigma: List[int] = []
    tab: List[List[Fraction]] = []
    for r_idx, (coeffs, rhs) in enumerate(rows):
        s = -1 if rhs < 0 else 1
        sigma.append(s)
        row = [Fraction(0)] * (n_cols + 1)
        for c_idx, (i, sign) in enumerate(col_unknown):
            row[c_idx] = s * sign * coeffs[i]
        if r_idx >= n_eq:
            row[n_struct + (r_idx - n_eq)] = Fraction(s)
        row[n_struct + n_slack + r_idx] = Fraction(1)
        row[n_cols] = s * rhs
        tab.append(row)

    # reduced-cost row for min(sum of artificials): cost 1 on artificials
    cost = [Fraction(0)] * (n_cols + 1)
    for j in range(n_cols + 1):
        col_sum = sum(tab[i][j] for i in range(n_rows))
        base = Fraction(1) if n_struct + n_slack <= j < n_cols else Fraction(0)
        cost[j] = base - col_sum

    basis = [n_struct + n_slack + i for i in range(n_rows)]

    while True:
        entering = next((j for j in range(n_cols) if cost[j] < 0), None)
        if entering is None:
            break
        leaving: Optional[int] = None
        best: Optional[Fraction] = None
        for i in range(n_rows):
            a = tab[i][entering]
            if a <= 0:
                continue
            ratio = tab[i][n_cols] / a
            if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                best = ratio
                leaving = i
        if leaving is None:  # phase-1 objective is bounded below by zero
            raise AssertionError("phase-1 simplex reported unbounded")
        _pivot(tab, cost, leaving, entering, n_cols)
        basis[leaving] = entering

    value = sum(
        tab[i][n_cols] for i in range(n_rows) if basis[i] >= n_struct + n_slack
    )
    if value == 0:
        z = [Fraction(0)] * n_cols
        for i, b in enumerate(basis):
            z[b] = tab[i][n_cols]
        point = [Fraction(0)] * m
        for c_idx, (i, sign) in enumerate(col_unknown):
            point[i] += sign * z[c_idx]
        return Feasible(point=tuple(point))

    # simplex multipliers from the reduced costs under the artificial columns
    pi = [Fraction(1) - cost[n_struct + n_slack + i] for i in range(n_rows)]
    eq_mults = tuple(-sigma[i] * pi[i] for i in range(n_eq))
    ineq_mults = tuple(-sigma[i] * pi[i] for i in range(n_eq, n_rows))
    return Infeasible(certificate=FarkasCertificate(eq_mults, ineq_mults))


def _pivot(
    tab: List[List[Fraction]],
    cost: List[Fraction],
    row: int,
    col: int,
    n_cols: int,
) -> None:
    inv = 1 / tab[row][col]
    tab[row] = [x * inv for x in tab[row]]
    piv_row = tab[row]
    for i, r in enumerate(tab):
        if i == row or r[col] == 0:
            continue
        f = r[col]
        tab[i] = [x - f * y for x, y in zip(r, piv_row)]
    if cost[col] != 0:
        f = cost[col]
        for j in range(n_cols + 1):
            cost[j] -= f * piv_row[j]
