"""Region of class C channels with provably null quantum capacity.

A channel has null capacity if it is anti-degradable (``kappa^2 <= 1/2``)
or if it factors as a composition with an anti-degradable map.  Two such
factorisations give thresholds on ``N0``:

* D o D:  ``N0 >= ((kappa^2 + 1) / |kappa^2 - 1| - 1) / 2``
* C o C:  ``N0 >= (kappa^2 / |kappa^2 - 1| - 1) / 2``

The C o C threshold is always the lower one.  Nothing here ever claims a
positive capacity: points outside both regions are ``unknown``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .canonical import CanonicalForm, ChannelClass
from .core import EPS

__all__ = [
    "SingularAtUnity",
    "NotInRegion",
    "Verdict",
    "CapacityVerdict",
    "dd_bound",
    "cc_bound",
    "verdict",
    "factorize_cc",
    "compose_c_params",
    "compose_d_params",
    "region_scan",
    "CSV_COLUMNS",
    "write_csv",
]

SQRT_HALF = math.sqrt(0.5)
CSV_COLUMNS = ("kappa", "kappa_sq", "N0", "verdict", "bound_DD", "bound_CC")


class SingularAtUnity(ValueError):
    pass


class NotInRegion(ValueError):
    pass


class Verdict(str, Enum):
    ANTIDEGRADABLE = "null_by_antidegradability"
    DD_BOUND = "null_by_DD_bound"
    CC_BOUND = "null_by_CC_bound"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value

    @property
    def is_null(self) -> bool:
        return self is not Verdict.UNKNOWN


@dataclass(frozen=True)
class CapacityVerdict:
    kappa: float
    N0: float
    verdict: Verdict
    bound_DD: float
    bound_CC: float


def _gap(kappa: float) -> float:
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    g = abs(kappa * kappa - 1)
    if g <= EPS:
        raise SingularAtUnity("bound diverges at kappa = 1")
    return g


def dd_bound(kappa: float) -> float:
    return 0.5 * ((kappa * kappa + 1) / _gap(kappa) - 1)


def cc_bound(kappa: float) -> float:
    return 0.5 * (kappa * kappa / _gap(kappa) - 1)


def verdict(kappa: float, N0: float) -> CapacityVerdict:
    bdd, bcc = dd_bound(kappa), cc_bound(kappa)
    if kappa * kappa <= 0.5 + EPS:
        v = Verdict.ANTIDEGRADABLE
    elif N0 >= bcc - EPS:
        v = Verdict.CC_BOUND
    elif N0 >= bdd - EPS:
        # cannot happen since bcc < bdd; kept to cross-check the two derivations
        v = Verdict.DD_BOUND
    else:
        v = Verdict.UNKNOWN
    return CapacityVerdict(float(kappa), float(N0), v, bdd, bcc)


def compose_d_params(k1: float, k2: float, n1: float, n2: float) -> tuple[float, float]:
    """(kappa, N0) of the class C channel ``D(k2, n2) o D(k1, n1)``."""
    kk = k1 * k1 * k2 * k2
    g = abs(kk - 1)
    n0 = ((k2 * k2 + 1) * n2 + k2 * k2 * (k1 * k1 + 1) * n1) / g + 0.5 * (
        (kk + 2 * k2 * k2 + 1) / g - 1
    )
    return k1 * k2, n0


def compose_c_params(k1: float, k2: float, n1: float, n2: float) -> tuple[float, float]:
    """(kappa, N0) of the class C channel ``C(k2, n2) o C(k1, n1)``."""
    kk = k1 * k1 * k2 * k2
    g = abs(kk - 1)
    a1, a2 = abs(k1 * k1 - 1), abs(k2 * k2 - 1)
    n0 = (a2 * n2 + k2 * k2 * a1 * n1) / g + 0.5 * ((k2 * k2 * a1 + a2) / g - 1)
    return k1 * k2, n0


def factorize_cc(kappa: float, N0: float) -> tuple[CanonicalForm, CanonicalForm]:
    """Witness ``(Phi1, Phi2)`` with ``Phi2 o Phi1 = C(kappa, N0)``, ``Phi2`` anti-degradable.

    Uses ``kappa2 = sqrt(1/2)`` and ``kappa1 = kappa / kappa2``, puts all the
    noise on ``Phi1`` (``N2 = 0``) and moves it to ``Phi2`` only if ``N1``
    would come out negative.  On the 50:50 line ``kappa1 = 1``, where the
    witness is the identity followed by the channel itself.
    """
    if N0 < cc_bound(kappa) - EPS:
        raise NotInRegion(
            f"N0 = {N0:.12g} is below the C o C threshold {cc_bound(kappa):.12g}"
        )
    k2 = SQRT_HALF
    k1 = kappa / k2
    a1 = abs(k1 * k1 - 1)
    if a1 <= EPS:
        return (
            CanonicalForm(ChannelClass.B2, N0=0.0),
            CanonicalForm(ChannelClass.C, kappa, N0),
        )
    a2 = 1 - k2 * k2
    g = abs(kappa * kappa - 1)
    # g (N0 + 1/2) = k2^2 a1 (N1 + 1/2) + a2 (N2 + 1/2)
    total = g * (N0 + 0.5)
    n1 = (total - a2 * 0.5) / (k2 * k2 * a1) - 0.5
    n2 = 0.0
    if n1 < 0:
        n1 = 0.0
        n2 = (total - k2 * k2 * a1 * 0.5) / a2 - 0.5
        if n2 < -EPS:
            raise NotInRegion(f"no non-negative noise split for kappa = {kappa}, N0 = {N0}")
        n2 = max(n2, 0.0)
    return CanonicalForm(ChannelClass.C, k1, n1), CanonicalForm(ChannelClass.C, k2, n2)


def region_scan(
    kappa_range: tuple[float, float],
    N0_range: tuple[float, float],
    steps: int | tuple[int, int],
    skip: float = 1e-6,
) -> list[CapacityVerdict]:
    """Verdicts on a rectangular (kappa, N0) grid, kappa-major.

    Grid points with ``kappa <= 0`` or ``|kappa - 1| < skip`` are dropped.
    """
    nk, nn = (steps, steps) if isinstance(steps, int) else steps
    out = []
    for k in np.linspace(kappa_range[0], kappa_range[1], nk):
        k = float(k)
        if k <= 0 or abs(k - 1) < skip:
            continue
        for n in np.linspace(N0_range[0], N0_range[1], nn):
            out.append(verdict(k, float(n)))
    return out


def write_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(
            [
                f"{r.kappa:.12g}",
                f"{r.kappa * r.kappa:.12g}",
                f"{r.N0:.12g}",
                r.verdict.value,
                f"{r.bound_DD:.12g}",
                f"{r.bound_CC:.12g}",
            ]
        )
