"""Exact affine solves over the rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _q(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _f(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass
class AffineSolution:
    particular: list[Fraction] | None
    nullspace: list[list[Fraction]]
    consistent: bool
    rank: int


def solve_affine(rows: Sequence[Sequence], rhs: Sequence) -> AffineSolution:
    """Solve A x = b exactly; report consistency and the nullspace of A."""
    n = len(rows[0]) if rows else 0
    m = len(rows)
    aug = DomainMatrix([[_q(v) for v in row] + [_q(b)] for row, b in zip(rows, rhs)], (m, n + 1), QQ)
    red, pivots = aug.rref()
    if n in pivots:
        return AffineSolution(None, [], False, len(pivots) - 1)
    red_rows = red.to_list()
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = _f(red_rows[r][n])
    A = DomainMatrix([[_q(v) for v in row] for row in rows], (m, n), QQ)
    ns = A.nullspace().to_list() if len(pivots) < n else []
    return AffineSolution(x, [[_f(v) for v in vec] for vec in ns], True, len(pivots))
