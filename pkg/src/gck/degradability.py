"""Weak-degradability and anti-degradability of canonical channels.

For a channel ``Phi`` with weak complement ``Phi~`` the connecting map is

* ``Psi`` with ``Psi o Phi = Phi~`` (weakly degradable), or
* ``Psi_bar`` with ``Psi_bar o Phi~ = Phi`` (anti-degradable).

Every verdict comes with an explicit connecting channel, checked by
composing it and comparing ``(K, alpha, m)`` entrywise.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum

from .canonical import CanonicalForm, ChannelClass, det_k_can, to_channel
from .core import EPS, I2, SIGMA3, GaussianChannel, compose, max_deviation
from .dilation import weak_complement

__all__ = [
    "Direction",
    "DegradabilityReport",
    "MissingComplement",
    "analyze",
    "connecting_channel",
    "verify_connection",
]

HALF = 0.5


class Direction(str, Enum):
    WEAK = "weak"
    ANTI = "anti"
    BOTH = "both"
    NEITHER = "neither"

    def __str__(self):
        return self.value


class MissingComplement(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DegradabilityReport:
    input_class: CanonicalForm
    anti_degradable: bool
    weakly_degradable: bool
    degradable: bool
    connecting_channel: GaussianChannel | None
    direction: Direction
    verification_residual: float
    null_capacity_by_antidegradability: bool
    near_boundary: bool
    degenerate: bool = False

    def to_dict(self) -> dict:
        d = {
            "input": self.input_class.to_dict(),
            "anti_degradable": self.anti_degradable,
            "weakly_degradable": self.weakly_degradable,
            "degradable": self.degradable,
            "direction": self.direction.value,
            "verification_residual": self.verification_residual,
            "null_capacity_by_antidegradability": self.null_capacity_by_antidegradability,
            "near_boundary": self.near_boundary,
            "degenerate": self.degenerate,
            "connecting_channel": None,
        }
        if self.connecting_channel is not None:
            ch = self.connecting_channel
            d["connecting_channel"] = {
                "K": ch.K.tolist(),
                "alpha": ch.alpha.tolist(),
                "m": ch.m.tolist(),
            }
        return d


def _attenuator(kp: float, n0: float) -> GaussianChannel:
    # |kp^2 - 1| written out so kp = 1 (the 50:50 boundary) gives the identity
    return GaussianChannel(kp * I2, max(0.0, 1 - kp * kp) * (n0 + 0.5) * I2)


def _conjugator(kp: float, n0: float) -> GaussianChannel:
    return GaussianChannel(kp * SIGMA3, (kp * kp + 1) * (n0 + 0.5) * I2)


def connecting_channel(cf: CanonicalForm, direction: Direction) -> GaussianChannel | None:
    """The explicit ``Psi`` (weak) or ``Psi_bar`` (anti) for ``cf``."""
    c, k, n0 = cf.cls, cf.kappa, cf.N0
    anti = direction in (Direction.ANTI, Direction.BOTH)
    if c in (ChannelClass.A1, ChannelClass.A2):
        return to_channel(cf)
    if c is ChannelClass.B1:
        return weak_complement(cf)
    if c is ChannelClass.B2:
        if n0 > EPS:
            return None
        # identity: environment ends in vacuum, any input may be discarded
        return to_channel(CanonicalForm(ChannelClass.A1, N0=0.0))
    if c is ChannelClass.D:
        return _conjugator(k / math.sqrt(k * k + 1), n0)
    if k > 1:
        return _conjugator(math.sqrt(k * k - 1) / k, n0)
    if anti:
        return _attenuator(k / math.sqrt(1 - k * k), n0)
    return _attenuator(math.sqrt(1 - k * k) / k, n0)


def _residual(cf: CanonicalForm, psi: GaussianChannel, direction: Direction) -> float:
    phi = to_channel(cf)
    try:
        phi_t = weak_complement(cf)
    except ValueError as exc:
        raise MissingComplement(str(exc)) from exc
    if direction in (Direction.ANTI, Direction.BOTH):
        return max_deviation(compose(phi_t, psi), phi)
    return max_deviation(compose(phi, psi), phi_t)


def analyze(cf: CanonicalForm) -> DegradabilityReport:
    c = cf.cls
    det = det_k_can(cf)
    near = cf.near_boundary or abs(det - HALF) <= 2 * EPS

    if c is ChannelClass.B2 and cf.N0 > EPS:
        return DegradabilityReport(
            cf, False, False, False, None, Direction.NEITHER, 0.0, False, near
        )
    degenerate = c is ChannelClass.B2

    anti = not degenerate and det <= HALF + EPS
    weak = degenerate or det >= HALF - EPS
    if anti and weak:
        direction = Direction.BOTH
    elif anti:
        direction = Direction.ANTI
    else:
        direction = Direction.WEAK

    # Stinespring case: weak complement is a true complement
    env_pure = c is ChannelClass.B1 or cf.N0 <= EPS
    degradable = weak and env_pure

    psi = connecting_channel(cf, direction)
    report = DegradabilityReport(
        input_class=cf,
        anti_degradable=anti,
        weakly_degradable=weak,
        degradable=degradable,
        connecting_channel=psi,
        direction=direction,
        verification_residual=0.0,
        null_capacity_by_antidegradability=anti,
        near_boundary=near,
        degenerate=degenerate,
    )
    return dataclasses.replace(report, verification_residual=verify_connection(report))


def verify_connection(report: DegradabilityReport) -> float:
    """Max entrywise deviation between the two sides of the defining identity."""
    if report.connecting_channel is None:
        raise ValueError("report has no connecting channel")
    return _residual(report.input_class, report.connecting_channel, report.direction)
