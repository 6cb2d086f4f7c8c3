"""Reduction of one-mode Gaussian channels to canonical classes.

Only ``det K``, ``rank K``, ``det alpha`` and ``rank alpha`` survive unitary
equivalence, so the class and its parameters are read off those four
numbers.  Tolerance bands around ``det K = 0`` and ``det K = 1`` make
``classify`` total; channels just outside a band are flagged
``near_boundary``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import EPS, I2, SIGMA3, GaussianChannel, det2

__all__ = [
    "ChannelClass",
    "CanonicalForm",
    "ChannelInvariants",
    "InconsistentInvariants",
    "InvalidParameters",
    "invariants",
    "classify",
    "to_channel",
    "class_compose",
    "det_k_can",
    "matrix_rank",
]


class ChannelClass(str, Enum):
    A1 = "A1"
    A2 = "A2"
    B1 = "B1"
    B2 = "B2"
    C = "C"
    D = "D"

    def __str__(self):
        return self.value


class InconsistentInvariants(ValueError):
    pass


class InvalidParameters(ValueError):
    pass


_HAS_KAPPA = {ChannelClass.C, ChannelClass.D}


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical class with its parameters.

    ``kappa`` is set only for C and D, ``N0`` for every class except B1
    (whose free weight is fixed to 1/2).  ``near_boundary`` and ``n_c`` are
    diagnostics filled in by :func:`classify` and ignored by equality.
    """

    cls: ChannelClass
    kappa: float | None = None
    N0: float | None = None
    near_boundary: bool = field(default=False, compare=False)
    n_c: float | None = field(default=None, compare=False)

    def __post_init__(self):
        cls = ChannelClass(self.cls)
        object.__setattr__(self, "cls", cls)
        if cls in _HAS_KAPPA:
            if self.kappa is None or not self.kappa > 0:
                raise InvalidParameters(f"class {cls} needs kappa > 0, got {self.kappa}")
            if cls is ChannelClass.C and abs(self.kappa**2 - 1) <= EPS:
                raise InvalidParameters("class C needs kappa != 1")
            object.__setattr__(self, "kappa", float(self.kappa))
        elif self.kappa is not None:
            raise InvalidParameters(f"class {cls} takes no kappa")
        if cls is ChannelClass.B1:
            if self.N0 is not None:
                raise InvalidParameters("class B1 takes no N0")
        else:
            if self.N0 is None or not self.N0 >= 0 or not math.isfinite(self.N0):
                raise InvalidParameters(f"class {cls} needs finite N0 >= 0, got {self.N0}")
            object.__setattr__(self, "N0", float(self.N0))

    def close_to(self, other: "CanonicalForm", tol: float = 1e-9) -> bool:
        if self.cls is not other.cls:
            return False
        for a, b in ((self.kappa, other.kappa), (self.N0, other.N0)):
            if (a is None) != (b is None):
                return False
            if a is not None and abs(a - b) >= tol:
                return False
        return True

    def to_dict(self) -> dict:
        d = {"class": self.cls.value}
        if self.kappa is not None:
            d["kappa"] = self.kappa
        if self.N0 is not None:
            d["N0"] = self.N0
        return d

    def __str__(self):
        parts = [f"class {self.cls}"]
        if self.kappa is not None:
            parts.append(f"kappa = {self.kappa:.12g}")
        if self.N0 is not None:
            parts.append(f"N0 = {self.N0:.12g}")
        return ", ".join(parts)


@dataclass(frozen=True)
class ChannelInvariants:
    detK: float
    rankK: int
    detAlpha: float
    rankAlpha: int


def matrix_rank(a: np.ndarray, tol: float = EPS) -> int:
    sv = np.linalg.svd(np.asarray(a, dtype=float), compute_uv=False)
    return int(np.sum(sv > tol * max(1.0, float(sv[0]))))


def invariants(ch: GaussianChannel) -> ChannelInvariants:
    inv = ChannelInvariants(
        detK=det2(ch.K),
        rankK=matrix_rank(ch.K),
        detAlpha=max(0.0, det2(ch.alpha)),
        rankAlpha=matrix_rank(ch.alpha),
    )
    if inv.rankAlpha == 1 and abs(inv.detK - 1) > EPS:
        raise InconsistentInvariants(
            f"rank(alpha) = 1 needs det(K) = 1, got det(K) = {inv.detK:.12g}"
        )
    return inv


def _near_boundary(detK: float) -> bool:
    return any(EPS < abs(detK - b) <= 2 * EPS for b in (0.0, 1.0))


def _recover_n0(value: float, cls: ChannelClass) -> float:
    if value < -EPS:
        raise InvalidParameters(f"recovered N0 = {value:.6g} < 0 for class {cls}")
    return max(value, 0.0)


def classify(ch: GaussianChannel) -> CanonicalForm:
    inv = invariants(ch)
    near = _near_boundary(inv.detK)
    root = math.sqrt(inv.detAlpha)

    if abs(inv.detK) <= EPS:
        cls = ChannelClass.A2 if inv.rankK == 1 else ChannelClass.A1
        return CanonicalForm(cls, N0=_recover_n0(root - 0.5, cls), near_boundary=near)

    if abs(inv.detK - 1) <= EPS:
        if inv.rankAlpha == 1:
            # the free weight of a rank-one alpha is kept as metadata only
            n_c = float(np.trace(ch.alpha))
            return CanonicalForm(ChannelClass.B1, near_boundary=near, n_c=n_c)
        return CanonicalForm(ChannelClass.B2, N0=root, near_boundary=near)

    kappa = math.sqrt(abs(inv.detK))
    if inv.detK > 0:
        n0 = root / abs(kappa**2 - 1) - 0.5
        return CanonicalForm(
            ChannelClass.C, kappa, _recover_n0(n0, ChannelClass.C), near_boundary=near
        )
    n0 = root / (kappa**2 + 1) - 0.5
    return CanonicalForm(ChannelClass.D, kappa, _recover_n0(n0, ChannelClass.D), near_boundary=near)


def to_channel(cf: CanonicalForm) -> GaussianChannel:
    c, k, n = cf.cls, cf.kappa, cf.N0
    if c is ChannelClass.A1:
        return GaussianChannel(np.zeros((2, 2)), (n + 0.5) * I2)
    if c is ChannelClass.A2:
        return GaussianChannel((I2 + SIGMA3) / 2, (n + 0.5) * I2)
    if c is ChannelClass.B1:
        return GaussianChannel(I2, (I2 - SIGMA3) / 4)
    if c is ChannelClass.B2:
        return GaussianChannel(I2, n * I2)
    if c is ChannelClass.C:
        return GaussianChannel(k * I2, abs(k**2 - 1) * (n + 0.5) * I2)
    return GaussianChannel(k * SIGMA3, (k**2 + 1) * (n + 0.5) * I2)


def det_k_can(cf: CanonicalForm) -> float:
    c = cf.cls
    if c in (ChannelClass.A1, ChannelClass.A2):
        return 0.0
    if c in (ChannelClass.B1, ChannelClass.B2):
        return 1.0
    if c is ChannelClass.C:
        return cf.kappa**2
    return -cf.kappa**2


# _COMPOSE[second][first] -> classes of second o first
_A1, _A2, _B1, _B2, _C, _D = ChannelClass
_ORDER = (_A1, _A2, _B1, _B2, _C, _D)
_ROWS = {
    _A1: ({_A1}, {_A1}, {_A1}, {_A1}, {_A1}, {_A1}),
    _A2: ({_A1}, {_A2}, {_A2}, {_A2}, {_A2}, {_A2}),
    _B1: ({_A1}, {_A2}, {_B1}, {_B1, _B2}, {_C}, {_D}),
    _B2: ({_A1}, {_A2}, {_B1, _B2}, {_B2}, {_C}, {_D}),
    _C: ({_A1}, {_A2}, {_C}, {_C}, {_B2, _C}, {_D}),
    _D: ({_A1}, {_A2}, {_D}, {_D}, {_D}, {_C}),
}
_COMPOSE = {
    second: dict(zip(_ORDER, map(frozenset, row))) for second, row in _ROWS.items()
}


def class_compose(c1, c2) -> frozenset:
    """Possible classes of ``c2 o c1`` for canonical representatives."""
    return _COMPOSE[ChannelClass(c2)][ChannelClass(c1)]
