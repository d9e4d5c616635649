"""Exact linear solving over the rationals.

Gaussian elimination on Fraction matrices with no pivot tolerance: a pivot
is zero iff it is exactly zero. The solver reports one of three outcomes
so callers can distinguish a contradictory system from one with a free
variable, which matters when deciding whether a game is degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class SolveStatus(Enum):
    UNIQUE = "unique"
    INCONSISTENT = "inconsistent"
    UNDERDETERMINED = "underdetermined"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    solution: tuple[Fraction, ...] | None

    @property
    def is_unique(self) -> bool:
        return self.status is SolveStatus.UNIQUE


def solve_linear_system(
    matrix: list[list[Fraction]], rhs: list[Fraction]
) -> SolveResult:
    """Solve A x = b exactly.

    Args:
        matrix: m x n coefficient rows, all Fractions.
        rhs: length-m right-hand side.

    Returns:
        SolveResult with UNIQUE and the solution tuple, INCONSISTENT
        (no solution), or UNDERDETERMINED (solutions form a positive-
        dimensional set; no representative is returned).
    """
    m = len(matrix)
    if len(rhs) != m:
        raise ValueError("matrix and rhs row counts differ")
    n = len(matrix[0]) if m else 0
    for row in matrix:
        if len(row) != n:
            raise ValueError("ragged coefficient matrix")

    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]

    pivot_cols: list[int] = []
    row_at = 0
    for col in range(n):
        pivot_row = next(
            (r for r in range(row_at, m) if aug[r][col] != 0),
            None,
        )
        if pivot_row is None:
            continue
        aug[row_at], aug[pivot_row] = aug[pivot_row], aug[row_at]
        pivot = aug[row_at][col]
        aug[row_at] = [entry / pivot for entry in aug[row_at]]
        for r in range(m):
            if r != row_at and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row_at])]
        pivot_cols.append(col)
        row_at += 1
        if row_at == m:
            break

    # Zero coefficient row with nonzero rhs: contradiction.
    for r in range(row_at, m):
        if aug[r][n] != 0:
            return SolveResult(SolveStatus.INCONSISTENT, None)

    if len(pivot_cols) < n:
        return SolveResult(SolveStatus.UNDERDETERMINED, None)

    solution = [Fraction(0)] * n
    for r, col in enumerate(pivot_cols):
        solution[col] = aug[r][n]
    return SolveResult(SolveStatus.UNIQUE, tuple(solution))
