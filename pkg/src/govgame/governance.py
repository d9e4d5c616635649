"""Protocol-upgrade governance: parameters, the voting game, and prediction.

A proposal is put to k voters, a share beta of whom vote yes; the
surrounding community of n members then splits, a share gamma moving to
the upgraded chain. The voting game over these shares is built here,
together with the surplus quantities whose signs predict where the
community majority ends up and how likely a lasting chain split is
under each governance mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ValidationError
from .game_core import BimatrixGame
from .rationals import format_rational, parse_rational


class Mode(Enum):
    """How upgrade decisions are governed."""

    NO_GOVERNANCE = "none"
    OFF_CHAIN = "off_chain"
    ON_CHAIN = "on_chain"


class Regime(Enum):
    """Vote outcome classes derived from beta (gamma enters only for unanimity)."""

    UNANIMOUS_ACCEPT = "unanimous_accept"
    MAJORITY_ACCEPT = "majority_accept"
    MAJORITY_REJECT = "majority_reject"
    TIE = "tie"


class Chain(Enum):
    """Destination of the community majority after the decision."""

    UPGRADED = "upgraded"
    ORIGINAL = "original"
    SPLIT_50_50 = "split_50_50"


_RISK_ORDER = ("none", "reduced", "present", "high")


class ForkRisk(Enum):
    """Ordinal chain-split risk level: NONE < REDUCED < PRESENT < HIGH.

    The levels are qualitative; no numeric probabilities are attached.
    """

    NONE = "none"
    REDUCED = "reduced"
    PRESENT = "present"
    HIGH = "high"

    @property
    def rank(self) -> int:
        """Position on the ordinal scale, NONE = 0 up to HIGH = 3."""
        return _RISK_ORDER.index(self.value)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ForkRisk):
            return NotImplemented
        return self.rank < other.rank

    def __le__(self, other: object) -> bool:
        if not isinstance(other, ForkRisk):
            return NotImplemented
        return self.rank <= other.rank

    def __gt__(self, other: object) -> bool:
        if not isinstance(other, ForkRisk):
            return NotImplemented
        return self.rank > other.rank

    def __ge__(self, other: object) -> bool:
        if not isinstance(other, ForkRisk):
            return NotImplemented
        return self.rank >= other.rank


@dataclass(frozen=True)
class GovernanceParams:
    """Full parameter set for one governance scenario.

    Attributes:
        beta: proportion of voters voting yes, in [0, 1].
        gamma: proportion of the community moving to the upgraded
            chain, in [0, 1].
        gamma_prime: shifted community proportion after the extra
            consultation round; meaningful only in on_chain mode.
        k: voter count; voters belong to the community, so k <= n.
        n: community size.
        s_v: per-voter payoff unit, positive.
        s_c: per-community-member payoff unit, positive.
        mode: governance mode deciding which evaluation rules apply.
        warnings: non-fatal oddities recorded at construction.
    """

    beta: Fraction
    gamma: Fraction
    gamma_prime: Fraction | None = None
    k: int = 1
    n: int = 1
    s_v: Fraction = Fraction(1)
    s_c: Fraction = Fraction(1)
    mode: Mode = Mode.OFF_CHAIN
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        beta = parse_rational(self.beta, "beta")
        gamma = parse_rational(self.gamma, "gamma")
        if not 0 <= beta <= 1:
            raise ValidationError("beta out of [0,1]")
        if not 0 <= gamma <= 1:
            raise ValidationError("gamma out of [0,1]")
        gamma_prime = self.gamma_prime
        if gamma_prime is not None:
            gamma_prime = parse_rational(gamma_prime, "gamma_prime")
            if not 0 <= gamma_prime <= 1:
                raise ValidationError("gamma_prime out of [0,1]")
        for field, value in (("k", self.k), ("n", self.n)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValidationError(f"{field} must be a positive integer")
        if self.k > self.n:
            raise ValidationError("k must not exceed n")
        s_v = parse_rational(self.s_v, "s_v")
        s_c = parse_rational(self.s_c, "s_c")
        if s_v <= 0:
            raise ValidationError("s_v must be positive")
        if s_c <= 0:
            raise ValidationError("s_c must be positive")
        if not isinstance(self.mode, Mode):
            raise ValidationError("mode must be a Mode value")
        warnings = list(self.warnings)
        if gamma_prime is not None:
            if self.mode is not Mode.ON_CHAIN:
                warnings.append("gamma_prime is only used in on_chain mode")
            elif gamma_prime <= gamma:
                warnings.append(
                    "gamma_prime does not exceed gamma; the consultation round "
                    "is expected to increase the upgraded-chain share"
                )
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "gamma_prime", gamma_prime)
        object.__setattr__(self, "s_v", s_v)
        object.__setattr__(self, "s_c", s_c)
        object.__setattr__(self, "warnings", tuple(warnings))


@dataclass(frozen=True)
class SurplusReport:
    """Payoff masses and oriented surpluses for one scenario.

    s_yes and s_no split the voter mass k*s_v by the vote; s_u and s_o
    split the community mass n*s_c across the two chains (after the
    consultation round where that applies). surplus_v and surplus_c are
    the oriented differences used for prediction and total is their
    sum.
    """

    s_yes: Fraction
    s_no: Fraction
    s_u: Fraction
    s_o: Fraction
    surplus_v: Fraction
    surplus_c: Fraction
    total: Fraction


@dataclass(frozen=True)
class PredictionResult:
    """Predicted outcome of one governance scenario."""

    regime: Regime
    majority_chain: Chain
    fork_risk: ForkRisk
    surplus: SurplusReport
    notes: tuple[str, ...] = ()


def build_governance_game(
    beta: Fraction, gamma: Fraction, payoff_v: Fraction, payoff_c: Fraction
) -> BimatrixGame:
    """Build the 2x2 voting game between voters and community.

    Rows are the voter strategies (Yes, No), columns the community
    strategies (Upgraded, Original). The voter side earns beta*payoff_v
    on Yes and (1-beta)*payoff_v on No regardless of the column; the
    community side earns gamma*payoff_c on Upgraded and
    (1-gamma)*payoff_c on Original regardless of the row.
    """
    beta = parse_rational(beta, "beta")
    gamma = parse_rational(gamma, "gamma")
    payoff_v = parse_rational(payoff_v, "payoff_v")
    payoff_c = parse_rational(payoff_c, "payoff_c")
    if not 0 <= beta <= 1:
        raise ValidationError("beta out of [0,1]")
    if not 0 <= gamma <= 1:
        raise ValidationError("gamma out of [0,1]")
    if payoff_v <= 0:
        raise ValidationError("payoff_v must be positive")
    if payoff_c <= 0:
        raise ValidationError("payoff_c must be positive")
    yes = beta * payoff_v
    no = (1 - beta) * payoff_v
    up = gamma * payoff_c
    orig = (1 - gamma) * payoff_c
    return BimatrixGame(
        payoff1=((yes, yes), (no, no)),
        payoff2=((up, orig), (up, orig)),
        row_labels=("Yes", "No"),
        col_labels=("Upgraded", "Original"),
    )


def cumulative_payoffs(
    k: int, n: int, s_v: Fraction, s_c: Fraction
) -> tuple[Fraction, Fraction]:
    """Total payoff mass for voters and community: (k*s_v, n*s_c).

    Entities within each group are assumed homogeneous, so the group
    payoff is the member count times the per-member unit.
    """
    for field, value in (("k", k), ("n", n)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ValidationError(f"{field} must be a positive integer")
    s_v = parse_rational(s_v, "s_v")
    s_c = parse_rational(s_c, "s_c")
    if s_v <= 0:
        raise ValidationError("s_v must be positive")
    if s_c <= 0:
        raise ValidationError("s_c must be positive")
    return (k * s_v, n * s_c)


def no_governance_split(
    gamma: Fraction, n: int, s_c: Fraction
) -> tuple[Fraction, Fraction]:
    """Community payoff masses (upgraded, original) when nothing governs.

    Each member picks a chain independently, so the masses are
    gamma*n*s_c and (1-gamma)*n*s_c; both are bounded by n*s_c and sum
    to it exactly.
    """
    gamma = parse_rational(gamma, "gamma")
    if not 0 <= gamma <= 1:
        raise ValidationError("gamma out of [0,1]")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError("n must be a positive integer")
    s_c = parse_rational(s_c, "s_c")
    if s_c <= 0:
        raise ValidationError("s_c must be positive")
    mass = n * s_c
    return (gamma * mass, (1 - gamma) * mass)


def classify_regime(params: GovernanceParams) -> Regime:
    """Classify the vote outcome by beta.

    Unanimity additionally requires gamma = 1: a vote is only fully
    consensual when the whole community follows it. A unanimous yes
    vote with gamma < 1 classifies as MAJORITY_ACCEPT and is flagged in
    prediction notes.
    """
    half = Fraction(1, 2)
    if params.beta == 1 and params.gamma == 1:
        return Regime.UNANIMOUS_ACCEPT
    if params.beta == half:
        return Regime.TIE
    if params.beta < half:
        return Regime.MAJORITY_REJECT
    return Regime.MAJORITY_ACCEPT


def _voter_surplus(params: GovernanceParams, regime: Regime) -> Fraction:
    mass = params.k * params.s_v
    if regime is Regime.UNANIMOUS_ACCEPT:
        return mass
    if regime is Regime.TIE:
        return Fraction(0)
    if regime is Regime.MAJORITY_REJECT and params.mode is not Mode.ON_CHAIN:
        # Rejections outside on-chain mode are reported oriented toward
        # the winning No side, so the value stays positive.
        return (1 - 2 * params.beta) * mass
    return (2 * params.beta - 1) * mass


def _community_surplus(params: GovernanceParams, regime: Regime) -> Fraction:
    mass = params.n * params.s_c
    if regime is Regime.UNANIMOUS_ACCEPT:
        return mass
    if regime is Regime.MAJORITY_REJECT:
        if params.mode is Mode.ON_CHAIN:
            if params.gamma_prime is None:
                raise ValidationError(
                    "gamma_prime is required in on_chain mode when the vote rejects"
                )
            return (2 * params.gamma_prime - 1) * mass
        return (1 - 2 * params.gamma) * mass
    # Accept orientation; also used for ties, where the community can
    # still lean one way even though the vote is level.
    return (2 * params.gamma - 1) * mass


def voter_surplus(params: GovernanceParams) -> Fraction:
    """Oriented voter surplus for the scenario's regime.

    Accept regimes give (2*beta - 1)*k*s_v; a tie gives 0; rejections
    give (1 - 2*beta)*k*s_v except in on_chain mode, where the signed
    (negative) accept-oriented value is kept so it can offset the
    post-consultation community surplus.
    """
    return _voter_surplus(params, classify_regime(params))


def community_surplus(params: GovernanceParams) -> Fraction:
    """Oriented community surplus for the scenario's regime.

    Unanimity gives the full mass n*s_c; accept regimes and ties give
    (2*gamma - 1)*n*s_c; rejections give (1 - 2*gamma)*n*s_c except in
    on_chain mode, where the consultation round's gamma_prime replaces
    gamma: (2*gamma_prime - 1)*n*s_c.
    """
    return _community_surplus(params, classify_regime(params))


def total_surplus(params: GovernanceParams) -> Fraction:
    """Sum of voter and community surpluses under the regime's pairing."""
    regime = classify_regime(params)
    return _voter_surplus(params, regime) + _community_surplus(params, regime)


def _report(params: GovernanceParams, regime: Regime) -> SurplusReport:
    voter_mass = params.k * params.s_v
    community_mass = params.n * params.s_c
    share = params.gamma
    if (
        regime is Regime.MAJORITY_REJECT
        and params.mode is Mode.ON_CHAIN
        and params.gamma_prime is not None
    ):
        share = params.gamma_prime
    surplus_v = _voter_surplus(params, regime)
    surplus_c = _community_surplus(params, regime)
    return SurplusReport(
        s_yes=params.beta * voter_mass,
        s_no=(1 - params.beta) * voter_mass,
        s_u=share * community_mass,
        s_o=(1 - share) * community_mass,
        surplus_v=surplus_v,
        surplus_c=surplus_c,
        total=surplus_v + surplus_c,
    )


def predict_outcome(
    params: GovernanceParams, tie_break: str | None = None
) -> PredictionResult:
    """Predict regime, majority destination chain, and chain-split risk.

    Args:
        params: scenario parameters.
        tie_break: "accept" or "reject" to force a side when beta is
            exactly 1/2; without it a tie is reported as a 50/50 split
            rather than silently picking a side.

    Returns:
        PredictionResult carrying the surplus report and notes.

    The rules per regime and mode:
      - unanimity (beta = gamma = 1): Upgraded, risk NONE, in any mode.
      - no governance: the vote does not bind, so the destination
        follows the larger community share and risk is HIGH.
      - majority accept: Upgraded; risk PRESENT off-chain and REDUCED
        on-chain (the consultation round lowers it).
      - majority reject, off-chain: Original, risk PRESENT.
      - majority reject, on-chain: the sign of the total surplus
        decides the destination because the consultation round can
        flip the community against the vote; risk REDUCED.
      - tie: 50/50 split with risk per mode, unless tie_break forces
        the accept or reject rules.
    """
    if tie_break not in (None, "accept", "reject"):
        raise ValidationError("tie_break must be 'accept' or 'reject'")
    regime = classify_regime(params)
    half = Fraction(1, 2)
    notes: list[str] = []
    if params.beta != half and params.gamma != half:
        if (params.beta > half) != (params.gamma > half):
            notes.append(
                "community majority decided independently of the voter majority"
            )

    if regime is Regime.UNANIMOUS_ACCEPT:
        return PredictionResult(
            regime, Chain.UPGRADED, ForkRisk.NONE, _report(params, regime), tuple(notes)
        )

    if params.mode is Mode.NO_GOVERNANCE:
        if tie_break is not None:
            notes.append("tie_break has no effect without governance")
        if params.gamma > half:
            chain = Chain.UPGRADED
        elif params.gamma < half:
            chain = Chain.ORIGINAL
        else:
            chain = Chain.SPLIT_50_50
        return PredictionResult(
            regime, chain, ForkRisk.HIGH, _report(params, regime), tuple(notes)
        )

    effective = regime
    if regime is Regime.TIE:
        if tie_break is None:
            notes.append(
                "tie vote: no majority side; pass tie_break to force accept or reject"
            )
            risk = ForkRisk.PRESENT if params.mode is Mode.OFF_CHAIN else ForkRisk.REDUCED
            return PredictionResult(
                regime, Chain.SPLIT_50_50, risk, _report(params, regime), tuple(notes)
            )
        effective = (
            Regime.MAJORITY_ACCEPT if tie_break == "accept" else Regime.MAJORITY_REJECT
        )
        notes.append(f"tie broken toward {tie_break} by caller flag")
    elif tie_break is not None:
        notes.append("tie_break ignored: the vote is not tied")

    if params.beta == 1 and params.gamma != 1:
        notes.append(
            "unanimous yes vote, but part of the community stays behind (gamma < 1)"
        )

    surplus = _report(params, effective)
    if effective is Regime.MAJORITY_ACCEPT:
        chain = Chain.UPGRADED
        risk = ForkRisk.PRESENT if params.mode is Mode.OFF_CHAIN else ForkRisk.REDUCED
    elif params.mode is Mode.OFF_CHAIN:
        chain = Chain.ORIGINAL
        risk = ForkRisk.PRESENT
    else:
        # On-chain rejection: the consultation round can flip the
        # community, so the sign of the total surplus decides.
        if surplus.total > 0:
            chain = Chain.UPGRADED
        elif surplus.total < 0:
            chain = Chain.ORIGINAL
        else:
            chain = Chain.SPLIT_50_50
            notes.append("total surplus is exactly zero: the community splits evenly")
        risk = ForkRisk.REDUCED
    return PredictionResult(regime, chain, risk, surplus, tuple(notes))


def prediction_to_dict(prediction: PredictionResult) -> dict:
    """JSON-ready mapping with exact "p/q" strings for all rationals."""
    surplus = prediction.surplus
    return {
        "regime": prediction.regime.value,
        "majority_chain": prediction.majority_chain.value,
        "fork_risk": prediction.fork_risk.value,
        "surplus": {
            "s_yes": format_rational(surplus.s_yes),
            "s_no": format_rational(surplus.s_no),
            "s_u": format_rational(surplus.s_u),
            "s_o": format_rational(surplus.s_o),
            "surplus_v": format_rational(surplus.surplus_v),
            "surplus_c": format_rational(surplus.surplus_c),
            "total": format_rational(surplus.total),
        },
        "notes": list(prediction.notes),
    }
