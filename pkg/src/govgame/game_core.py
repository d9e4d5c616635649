"""Two-player normal-form games with exact equilibrium computation.

Payoffs are rationals and every computation is exact, so the set of
equilibria reported for a game is reproduced bit for bit across runs.
Mixed equilibria are found by support enumeration, which is complete
for the small games this package targets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .errors import ValidationError
from .linsolve import SolveStatus, solve_linear_system
from .rationals import format_rational, parse_rational

PayoffMatrix = tuple[tuple[Fraction, ...], ...]


def _coerce_matrix(matrix: object, field: str) -> PayoffMatrix:
    if not isinstance(matrix, (list, tuple)) or not matrix:
        raise ValidationError(f"{field} must be a non-empty matrix")
    rows: list[tuple[Fraction, ...]] = []
    width: int | None = None
    for i, row in enumerate(matrix):
        if not isinstance(row, (list, tuple)) or not row:
            raise ValidationError(f"{field} row {i} must be a non-empty list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValidationError(
                f"{field} row {i} has {len(row)} entries, expected {width}"
            )
        rows.append(
            tuple(parse_rational(v, f"{field}[{i}][{j}]") for j, v in enumerate(row))
        )
    return tuple(rows)


def _coerce_labels(labels: object, count: int, field: str) -> tuple[str, ...]:
    if labels is None:
        prefix = "R" if field == "row_labels" else "C"
        return tuple(f"{prefix}{i + 1}" for i in range(count))
    if not isinstance(labels, (list, tuple)):
        raise ValidationError(f"{field} must be a list of strings")
    out = tuple(labels)
    if any(not isinstance(v, str) for v in out):
        raise ValidationError(f"{field} entries must be strings")
    if len(out) != count:
        raise ValidationError(f"{field} has {len(out)} entries, expected {count}")
    return out


@dataclass(frozen=True)
class BimatrixGame:
    """A two-player game given by one payoff matrix per player.

    Rows index player 1's pure strategies and columns player 2's. The
    two matrices must share the same shape. Entries may be given as
    ints, Fractions, or "p/q" strings and are stored as Fractions.
    """

    payoff1: PayoffMatrix
    payoff2: PayoffMatrix
    row_labels: tuple[str, ...] | None = None
    col_labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        p1 = _coerce_matrix(self.payoff1, "payoff1")
        p2 = _coerce_matrix(self.payoff2, "payoff2")
        if len(p2) != len(p1) or len(p2[0]) != len(p1[0]):
            raise ValidationError("payoff1 and payoff2 must have the same shape")
        object.__setattr__(self, "payoff1", p1)
        object.__setattr__(self, "payoff2", p2)
        object.__setattr__(
            self, "row_labels", _coerce_labels(self.row_labels, len(p1), "row_labels")
        )
        object.__setattr__(
            self, "col_labels", _coerce_labels(self.col_labels, len(p1[0]), "col_labels")
        )

    @property
    def rows(self) -> int:
        return len(self.payoff1)

    @property
    def cols(self) -> int:
        return len(self.payoff1[0])


@dataclass(frozen=True)
class MixedStrategy:
    """A probability vector over one player's pure strategies.

    Entries must be non-negative and sum to exactly 1. A pure strategy
    is the degenerate case with probability 1 on a single entry.
    """

    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.probs, (list, tuple)) or not self.probs:
            raise ValidationError("probs must be a non-empty sequence")
        probs = tuple(
            parse_rational(p, f"probs[{i}]") for i, p in enumerate(self.probs)
        )
        if any(p < 0 for p in probs):
            raise ValidationError("probabilities must be non-negative")
        if sum(probs) != 1:
            raise ValidationError("probabilities must sum to exactly 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def pure(cls, index: int, size: int) -> MixedStrategy:
        """The degenerate mix placing probability 1 on one strategy."""
        if not 0 <= index < size:
            raise ValidationError(f"pure strategy index {index} out of range for size {size}")
        return cls(tuple(Fraction(1 if i == index else 0) for i in range(size)))

    @classmethod
    def uniform(cls, size: int) -> MixedStrategy:
        """The mix placing equal probability on every strategy."""
        if size < 1:
            raise ValidationError("size must be positive")
        return cls(tuple(Fraction(1, size) for _ in range(size)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probs) if p > 0)

    @property
    def is_pure(self) -> bool:
        return len(self.support) == 1


@dataclass(frozen=True)
class StrategyProfile:
    """One mixed strategy per player."""

    sigma1: MixedStrategy
    sigma2: MixedStrategy


class EquilibriumKind(Enum):
    PURE = "pure"
    MIXED = "mixed"


@dataclass(frozen=True)
class EquilibriumResult:
    """An equilibrium profile with its exact payoffs.

    kind is PURE exactly when both strategies place probability 1 on a
    single pure strategy. degenerate_game is set on every result when
    support enumeration found a continuum of equilibria; the continuum
    itself is not described, only its vertex equilibria are returned.
    """

    profile: StrategyProfile
    payoffs: tuple[Fraction, Fraction]
    kind: EquilibriumKind
    degenerate_game: bool = False


def pure_profile(game: BimatrixGame, row: int, col: int) -> StrategyProfile:
    """The profile placing probability 1 on (row, col)."""
    return StrategyProfile(
        MixedStrategy.pure(row, game.rows), MixedStrategy.pure(col, game.cols)
    )


def _check_profile(game: BimatrixGame, profile: StrategyProfile) -> None:
    if len(profile.sigma1.probs) != game.rows:
        raise ValidationError(
            f"player 1 strategy has {len(profile.sigma1.probs)} entries, "
            f"game has {game.rows} rows"
        )
    if len(profile.sigma2.probs) != game.cols:
        raise ValidationError(
            f"player 2 strategy has {len(profile.sigma2.probs)} entries, "
            f"game has {game.cols} columns"
        )


def expected_payoff(
    game: BimatrixGame, profile: StrategyProfile
) -> tuple[Fraction, Fraction]:
    """Exact expected payoffs for both players under a mixed profile.

    Args:
        game: the game to evaluate against.
        profile: mixed strategies whose lengths match the game.

    Returns:
        (player 1 payoff, player 2 payoff) as exact rationals.
    """
    _check_profile(game, profile)
    x = profile.sigma1.probs
    y = profile.sigma2.probs
    u1 = sum(
        (
            x[i] * y[j] * game.payoff1[i][j]
            for i in range(game.rows)
            for j in range(game.cols)
        ),
        Fraction(0),
    )
    u2 = sum(
        (
            x[i] * y[j] * game.payoff2[i][j]
            for i in range(game.rows)
            for j in range(game.cols)
        ),
        Fraction(0),
    )
    return (u1, u2)


def best_response_payoff(
    game: BimatrixGame, player: int, opponent: MixedStrategy
) -> Fraction:
    """Best payoff the player can earn against a fixed opponent mix.

    By linearity a best response is always achieved at a pure strategy,
    so this is a maximum over the player's rows (or columns).
    """
    if player not in (1, 2):
        raise ValidationError("player must be 1 or 2")
    if player == 1:
        if len(opponent.probs) != game.cols:
            raise ValidationError(
                f"player 2 strategy has {len(opponent.probs)} entries, "
                f"game has {game.cols} columns"
            )
        return max(
            sum(
                (game.payoff1[i][j] * opponent.probs[j] for j in range(game.cols)),
                Fraction(0),
            )
            for i in range(game.rows)
        )
    if len(opponent.probs) != game.rows:
        raise ValidationError(
            f"player 1 strategy has {len(opponent.probs)} entries, "
            f"game has {game.rows} rows"
        )
    return max(
        sum(
            (game.payoff2[i][j] * opponent.probs[i] for i in range(game.rows)),
            Fraction(0),
        )
        for j in range(game.cols)
    )


def is_equilibrium(
    game: BimatrixGame,
    profile: StrategyProfile,
    tolerance: Fraction = Fraction(0),
) -> bool:
    """Whether no player can gain more than tolerance by deviating.

    With the default tolerance of 0 the check is exact. A positive
    tolerance is only useful for profiles derived from inexact input.
    """
    tol = parse_rational(tolerance, "tolerance")
    if tol < 0:
        raise ValidationError("tolerance must be non-negative")
    u1, u2 = expected_payoff(game, profile)
    if u1 < best_response_payoff(game, 1, profile.sigma2) - tol:
        return False
    return u2 >= best_response_payoff(game, 2, profile.sigma1) - tol


def _is_pure_equilibrium(game: BimatrixGame, row: int, col: int) -> bool:
    if any(game.payoff1[r][col] > game.payoff1[row][col] for r in range(game.rows)):
        return False
    return not any(
        game.payoff2[row][c] > game.payoff2[row][col] for c in range(game.cols)
    )


def _make_result(
    game: BimatrixGame,
    x: tuple[Fraction, ...],
    y: tuple[Fraction, ...],
    degenerate: bool,
) -> EquilibriumResult:
    profile = StrategyProfile(MixedStrategy(x), MixedStrategy(y))
    kind = (
        EquilibriumKind.PURE
        if profile.sigma1.is_pure and profile.sigma2.is_pure
        else EquilibriumKind.MIXED
    )
    return EquilibriumResult(
        profile=profile,
        payoffs=expected_payoff(game, profile),
        kind=kind,
        degenerate_game=degenerate,
    )


def enumerate_pure_equilibria(game: BimatrixGame) -> list[EquilibriumResult]:
    """All pure Nash equilibria, in row-major cell order.

    A cell (i, j) qualifies when payoff1[i][j] is maximal in its column
    and payoff2[i][j] is maximal in its row. The degenerate_game flag is
    not computed here; use enumerate_mixed_equilibria for it.
    """
    results = []
    for i in range(game.rows):
        for j in range(game.cols):
            if _is_pure_equilibrium(game, i, j):
                x = tuple(Fraction(1 if r == i else 0) for r in range(game.rows))
                y = tuple(Fraction(1 if c == j else 0) for c in range(game.cols))
                results.append(_make_result(game, x, y, False))
    return results


def _supports(size: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for length in range(1, size + 1):
        out.extend(combinations(range(size), length))
    return out


_UNDERDETERMINED = object()


def _support_candidate(
    game: BimatrixGame,
    support_r: tuple[int, ...],
    support_c: tuple[int, ...],
) -> object:
    """Solve the indifference systems for one support pair.

    Returns (x, y) full-length probability tuples when both systems
    have unique solutions, None when either is inconsistent (the pair
    hosts no equilibrium), or the _UNDERDETERMINED sentinel when both
    are consistent but at least one has a free variable (the pair hosts
    a continuum, which marks the game degenerate).
    """
    # Player 1's weights on support_r must equalize player 2's payoff
    # across support_c; the extra unknown is that common payoff value.
    matrix = [
        [game.payoff2[i][j] for i in support_r] + [Fraction(-1)] for j in support_c
    ]
    matrix.append([Fraction(1)] * len(support_r) + [Fraction(0)])
    rhs = [Fraction(0)] * len(support_c) + [Fraction(1)]
    row_side = solve_linear_system(matrix, rhs)
    if row_side.status is SolveStatus.INCONSISTENT:
        return None

    # Player 2's weights on support_c must equalize player 1's payoff
    # across support_r.
    matrix = [
        [game.payoff1[i][j] for j in support_c] + [Fraction(-1)] for i in support_r
    ]
    matrix.append([Fraction(1)] * len(support_c) + [Fraction(0)])
    rhs = [Fraction(0)] * len(support_r) + [Fraction(1)]
    col_side = solve_linear_system(matrix, rhs)
    if col_side.status is SolveStatus.INCONSISTENT:
        return None

    if not (row_side.is_unique and col_side.is_unique):
        return _UNDERDETERMINED

    x = [Fraction(0)] * game.rows
    for idx, i in enumerate(support_r):
        x[i] = row_side.solution[idx]
    y = [Fraction(0)] * game.cols
    for idx, j in enumerate(support_c):
        y[j] = col_side.solution[idx]
    return (tuple(x), tuple(y))


def enumerate_mixed_equilibria(game: BimatrixGame) -> list[EquilibriumResult]:
    """All Nash equilibria found by exact support enumeration.

    Every pair of non-empty supports is tried in a canonical order
    (by support size, then lexicographic indices), so pure equilibria
    come first in row-major order followed by proper mixed ones. A
    support pair contributes a candidate only when both indifference
    systems solve uniquely; candidates with negative entries are
    dropped and the rest must pass is_equilibrium with tolerance 0.
    Duplicate profiles reached through different supports are reported
    once.

    When some support system is consistent but underdetermined the
    game has a continuum of equilibria: the continuum is not listed,
    and instead every returned vertex result carries
    degenerate_game = True.
    """
    degenerate = False
    found: list[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]] = []
    seen: set[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]] = set()
    for support_r in _supports(game.rows):
        for support_c in _supports(game.cols):
            candidate = _support_candidate(game, support_r, support_c)
            if candidate is None:
                continue
            if candidate is _UNDERDETERMINED:
                degenerate = True
                continue
            x, y = candidate
            if any(p < 0 for p in x) or any(q < 0 for q in y):
                continue
            if (x, y) in seen:
                continue
            profile = StrategyProfile(MixedStrategy(x), MixedStrategy(y))
            if is_equilibrium(game, profile):
                seen.add((x, y))
                found.append((x, y))
    return [_make_result(game, x, y, degenerate) for x, y in found]


def _dominates(
    p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction]
) -> bool:
    """Whether p weakly improves both payoffs and strictly improves one."""
    return p[0] >= q[0] and p[1] >= q[1] and (p[0] > q[0] or p[1] > q[1])


def pareto_optimal_pure_profiles(game: BimatrixGame) -> list[tuple[int, int]]:
    """Pure profiles not Pareto-dominated by any other pure profile.

    Returns (row, col) index pairs in row-major order. A dominator must
    weakly improve both players' payoffs and strictly improve at least
    one.
    """
    cells = [(i, j) for i in range(game.rows) for j in range(game.cols)]
    out = []
    for i, j in cells:
        mine = (game.payoff1[i][j], game.payoff2[i][j])
        if not any(
            _dominates((game.payoff1[r][c], game.payoff2[r][c]), mine)
            for r, c in cells
            if (r, c) != (i, j)
        ):
            out.append((i, j))
    return out


def is_strong_nash(game: BimatrixGame, row: int, col: int) -> bool:
    """Whether the pure profile (row, col) is a strong Nash equilibrium.

    Requires Nash stability against unilateral deviations plus
    stability of the two-player coalition: no other pure profile may
    Pareto-dominate this one.
    """
    if not 0 <= row < game.rows:
        raise ValidationError(f"row {row} out of range for {game.rows} rows")
    if not 0 <= col < game.cols:
        raise ValidationError(f"col {col} out of range for {game.cols} columns")
    if not _is_pure_equilibrium(game, row, col):
        return False
    mine = (game.payoff1[row][col], game.payoff2[row][col])
    return not any(
        _dominates((game.payoff1[r][c], game.payoff2[r][c]), mine)
        for r in range(game.rows)
        for c in range(game.cols)
        if (r, c) != (row, col)
    )


def load_game(text: str) -> BimatrixGame:
    """Parse the game interchange JSON format into a BimatrixGame.

    The format is an object with "payoff1" and "payoff2" (arrays of row
    arrays, entries either numbers or "p/q" strings) plus optional
    "rows", "cols", "row_labels", and "col_labels", which are validated
    against the matrices when present. Decimal literals are read as the
    exact rationals they denote.
    """
    try:
        data = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"not valid JSON: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(data, dict):
        raise ValidationError("game file must contain a JSON object")
    for field in ("payoff1", "payoff2"):
        if field not in data:
            raise ValidationError(f"game file is missing {field!r}")
    game = BimatrixGame(
        payoff1=data["payoff1"],
        payoff2=data["payoff2"],
        row_labels=data.get("row_labels"),
        col_labels=data.get("col_labels"),
    )
    for field, actual in (("rows", game.rows), ("cols", game.cols)):
        declared = data.get(field)
        if declared is not None and declared != actual:
            raise ValidationError(
                f"{field} is declared as {declared} but the payoff matrices have {actual}"
            )
    return game


def game_to_dict(game: BimatrixGame) -> dict:
    """JSON-ready mapping with exact "p/q" payoff strings."""
    return {
        "rows": game.rows,
        "cols": game.cols,
        "row_labels": list(game.row_labels),
        "col_labels": list(game.col_labels),
        "payoff1": [[format_rational(v) for v in row] for row in game.payoff1],
        "payoff2": [[format_rational(v) for v in row] for row in game.payoff2],
    }


def dump_game(game: BimatrixGame) -> str:
    """Serialize a game to the interchange format."""
    return json.dumps(game_to_dict(game), indent=2)
