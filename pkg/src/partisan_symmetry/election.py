"""Exact districted-election data and the statewide quantities derived from it.

Shares are party A's two-party vote share per district, stored as
:class:`fractions.Fraction`.  A district at exactly one half must carry an
explicit winner flag (written ``1/2+`` when won and ``1/2-`` when lost).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

HALF = Fraction(1, 2)

RationalLike = Union[Fraction, int, str, float]


class ElectionError(ValueError):
    """Invalid election data (bad share, bad weights, malformed file)."""


class StructuralError(ElectionError):
    """A tie district is missing the flag needed to decide its winner."""


class DomainError(ValueError):
    """A (V, S) pair or parameter outside the domain an operation accepts."""


class UnsupportedInputError(ValueError):
    """The operation is undefined for this kind of election (e.g. unequal turnout)."""


def as_fraction(x: RationalLike) -> Fraction:
    """Parse ``x`` exactly.  Strings may be ``"p/q"`` or decimals like ``"0.37"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ElectionError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # floats go through their shortest repr so 0.1 means 1/10
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ElectionError(f"cannot parse rational {x!r}") from exc
    raise ElectionError(f"not a rational: {x!r}")


@dataclass(frozen=True, order=False)
class DistrictResult:
    share: Fraction
    winner_at_half: Optional[bool] = None

    def __post_init__(self) -> None:
        share = as_fraction(self.share)
        object.__setattr__(self, "share", share)
        if not 0 <= share <= 1:
            raise ElectionError(f"share {share} outside [0, 1]")
        if share != HALF and self.winner_at_half is not None:
            raise ElectionError(f"winner flag given for non-tie share {share}")

    @property
    def won(self) -> bool:
        if self.share > HALF:
            return True
        if self.share < HALF:
            return False
        if self.winner_at_half is None:
            raise StructuralError("district at exactly 1/2 has no winner flag")
        return self.winner_at_half

    def swapped(self) -> "DistrictResult":
        flag = None if self.winner_at_half is None else not self.winner_at_half
        return DistrictResult(1 - self.share, flag)

    def _sort_key(self):
        # losers before winners at equal share; unflagged ties sort with losers
        return (self.share, bool(self.winner_at_half))

    def __str__(self) -> str:
        if self.share == HALF and self.winner_at_half is not None:
            return "1/2+" if self.winner_at_half else "1/2-"
        return str(self.share)


def _district(x) -> DistrictResult:
    if isinstance(x, DistrictResult):
        return x
    if isinstance(x, str) and x.strip() in ("1/2+", "1/2-"):
        return DistrictResult(HALF, x.strip().endswith("+"))
    return DistrictResult(as_fraction(x))


@dataclass(frozen=True)
class Election:
    """District results in canonical ascending order, with optional turnout weights.

    ``Election.from_shares`` is the usual constructor; it accepts plain
    rationals, ``"1/2+"``/``"1/2-"`` strings, or :class:`DistrictResult`.
    Weights, when given, are permuted along with their districts.
    """

    districts: tuple
    turnout_weights: Optional[tuple] = None

    def __post_init__(self) -> None:
        districts = [_district(d) for d in self.districts]
        if not districts:
            raise ElectionError("an election needs at least one district")
        weights = self.turnout_weights
        if weights is not None:
            weights = [as_fraction(w) for w in weights]
            if len(weights) != len(districts):
                raise ElectionError("weights and districts differ in length")
            if any(w <= 0 for w in weights):
                raise ElectionError("turnout weights must be strictly positive")
            if sum(weights) != 1:
                raise ElectionError(f"turnout weights sum to {sum(weights)}, not 1")
            order = sorted(range(len(districts)), key=lambda i: districts[i]._sort_key())
            districts = [districts[i] for i in order]
            weights = tuple(weights[i] for i in order)
        else:
            districts.sort(key=DistrictResult._sort_key)
        object.__setattr__(self, "districts", tuple(districts))
        object.__setattr__(self, "turnout_weights", weights)

    @classmethod
    def from_shares(cls, shares: Iterable, weights: Optional[Sequence[RationalLike]] = None) -> "Election":
        return cls(tuple(_district(s) for s in shares), None if weights is None else tuple(weights))

    @property
    def n(self) -> int:
        return len(self.districts)

    @property
    def shares(self) -> tuple:
        return tuple(d.share for d in self.districts)

    @property
    def equal_turnout(self) -> bool:
        if self.turnout_weights is None:
            return True
        return len(set(self.turnout_weights)) == 1

    @property
    def weights(self) -> tuple:
        if self.turnout_weights is None:
            return (Fraction(1, self.n),) * self.n
        return self.turnout_weights

    def swapped(self) -> "Election":
        """The same election seen from party B."""
        return Election(tuple(d.swapped() for d in self.districts), self.turnout_weights)

    def __str__(self) -> str:
        return "(" + ", ".join(str(d) for d in self.districts) + ")"

    # -- serialization -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "shares": [str(d.share) for d in self.districts],
            "winners_at_half": [i for i, d in enumerate(self.districts) if d.winner_at_half],
            "weights": None if self.turnout_weights is None else [str(w) for w in self.turnout_weights],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Election":
        if not isinstance(data, dict):
            raise ElectionError("election JSON must be an object")
        if "shares" not in data:
            raise ElectionError("election JSON: missing field 'shares'")
        raw = data["shares"]
        if not isinstance(raw, list):
            raise ElectionError("election JSON: 'shares' must be a list")
        shares = []
        for i, s in enumerate(raw):
            try:
                shares.append(as_fraction(s))
            except ElectionError as exc:
                raise ElectionError(f"election JSON: shares[{i}]: {exc}") from None
        winners = data.get("winners_at_half") or []
        for i in winners:
            if not isinstance(i, int) or not 0 <= i < len(shares):
                raise ElectionError(f"election JSON: winners_at_half index {i!r} out of range")
            if shares[i] != HALF:
                raise ElectionError(f"election JSON: winners_at_half[{i}] is not a 1/2 share")
        won = set(winners)
        districts = [
            DistrictResult(s, (i in won) if s == HALF else None) for i, s in enumerate(shares)
        ]
        weights = data.get("weights")
        if weights is not None:
            try:
                weights = tuple(as_fraction(w) for w in weights)
            except ElectionError as exc:
                raise ElectionError(f"election JSON: weights: {exc}") from None
        return cls(tuple(districts), weights)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "Election":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ElectionError(f"election JSON: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_json_dict(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Election":
        return cls.loads(Path(path).read_text())

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps() + "\n")


@dataclass(frozen=True)
class SVPair:
    """Vote share V, seat share S = (n - lost)/n, for an n-district plan."""

    V: Fraction
    S: Fraction
    n: int
    lost: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "V", as_fraction(self.V))
        object.__setattr__(self, "S", as_fraction(self.S))
        if self.n < 1:
            raise DomainError("n must be positive")
        if not 0 <= self.lost <= self.n:
            raise DomainError(f"lost={self.lost} outside [0, {self.n}]")
        if self.S != Fraction(self.n - self.lost, self.n):
            raise DomainError(f"S={self.S} inconsistent with n={self.n}, lost={self.lost}")

    @classmethod
    def of(cls, V: RationalLike, S: RationalLike, n: Optional[int] = None) -> "SVPair":
        """Build a pair, using the smallest district count that expresses S when n is omitted."""
        V, S = as_fraction(V), as_fraction(S)
        if n is None:
            n = S.denominator
        lost = (1 - S) * n
        if lost.denominator != 1:
            raise DomainError(f"S={S} is not expressible with {n} districts")
        return cls(V, S, n, int(lost))

    @property
    def won(self) -> int:
        return self.n - self.lost

    def swapped(self) -> "SVPair":
        return SVPair(1 - self.V, 1 - self.S, self.n, self.won)


def statewide_vote_share(e: Election) -> Fraction:
    """Turnout-weighted mean of district shares (plain mean under equal turnout)."""
    if e.turnout_weights is None:
        return sum(e.shares, Fraction(0)) / e.n
    return sum((w * s for w, s in zip(e.turnout_weights, e.shares)), Fraction(0))


def seat_share(e: Election) -> SVPair:
    won = sum(1 for d in e.districts if d.won)
    return SVPair(statewide_vote_share(e), Fraction(won, e.n), e.n, e.n - won)


def feasibility_check(p, equal_turnout: bool = True) -> bool:
    """Whether some election realizes (V, S).

    With equal turnout the region is ``2V - 1 <= S <= 2V``.  With turnout
    unconstrained every pair in the unit square is reachable except the
    corners that force a unanimous result.
    """
    V, S = as_fraction(p.V), as_fraction(p.S)
    if not (0 <= V <= 1 and 0 <= S <= 1):
        return False
    if equal_turnout:
        return 2 * V - 1 <= S <= 2 * V
    if V == 0:
        return S == 0
    if V == 1:
        return S == 1
    return True


def infeasibility_reason(V: Fraction, S: Fraction) -> Optional[str]:
    """Name the equal-turnout constraint (V, S) violates, or None if feasible."""
    if not 0 <= V <= 1:
        return "0 <= V <= 1"
    if not 0 <= S <= 1:
        return "0 <= S <= 1"
    if S > 2 * V:
        return "S <= 2V"
    if S < 2 * V - 1:
        return "S >= 2V-1"
    return None
