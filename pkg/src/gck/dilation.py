"""Single-mode physical representations of the canonical channels.

A channel is realised by coupling the input mode A to one environment mode
B, prepared thermal with mean photon number ``N``, through a 4x4 symplectic
``M`` acting on quadratures ``(Q_a, P_a, Q_b, P_b)``.  Block layout::

        +-------+-------+
        |  m11  |  m21  |      channel:     K = m11, alpha = (N+1/2) m12^T m12
    M = +-------+-------+
        |  m12  |  m22  |      complement:  K = m21, alpha = (N+1/2) m22^T m22
        +-------+-------+

Note that ``m12`` is the LOWER-LEFT block and ``m21`` the upper-right one.
Class B2 with ``N0 > 0`` has no such representation; it is reachable only as
a limit of class C channels (:func:`approximate_b2`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .canonical import CanonicalForm, ChannelClass
from .core import EPS, I2, J4, GaussianChannel, GaussianState, det2

__all__ = [
    "NoSingleModeDilation",
    "DegenerateTarget",
    "SymplecticDilation",
    "build_dilation",
    "weak_complement",
    "joint_evolve",
    "approximate_b2",
    "simulate_additive_noise",
]


class NoSingleModeDilation(ValueError):
    pass


class DegenerateTarget(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SymplecticDilation:
    M: np.ndarray
    N: float
    env_pure: bool

    def __post_init__(self):
        M = np.array(self.M, dtype=float)
        if M.shape != (4, 4):
            raise ValueError(f"M must be 4x4, got {M.shape}")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)
        if self.N < 0:
            raise ValueError("environment photon number must be >= 0")
        if self.symplectic_residual() > EPS * max(1.0, float(np.max(np.abs(M)))) ** 2:
            raise ValueError("M is not symplectic")

    @property
    def m11(self):
        return self.M[:2, :2]

    @property
    def m21(self):
        return self.M[:2, 2:]

    @property
    def m12(self):
        return self.M[2:, :2]

    @property
    def m22(self):
        return self.M[2:, 2:]

    def symplectic_residual(self) -> float:
        return float(np.max(np.abs(self.M.T @ J4 @ self.M - J4)))

    def det_condition_residual(self) -> float:
        """``|det m11 + det m12 - 1|``."""
        return abs(det2(self.m11) + det2(self.m12) - 1)

    def channel(self) -> GaussianChannel:
        return GaussianChannel(self.m11, (self.N + 0.5) * self.m12.T @ self.m12)

    def complement(self) -> GaussianChannel:
        return GaussianChannel(self.m21, (self.N + 0.5) * self.m22.T @ self.m22)


def _blocks(m11, m21, m12, m22) -> np.ndarray:
    return np.block([[m11, m21], [m12, m22]])


def build_dilation(cf: CanonicalForm) -> SymplecticDilation:
    c, k = cf.cls, cf.kappa
    Z = np.zeros((2, 2))
    if c is ChannelClass.B2:
        if cf.N0 > EPS:
            raise NoSingleModeDilation(
                "class B2 (additive classical noise) has no physical representation "
                "with a single environment mode"
            )
        # identity: no coupling at all
        return SymplecticDilation(np.eye(4), 0.0, True)
    if c is ChannelClass.B1:
        M = _blocks(I2, np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), -I2)
        return SymplecticDilation(M, 0.0, True)

    N = cf.N0
    if c is ChannelClass.A1:
        M = _blocks(Z, I2, I2, Z)
    elif c is ChannelClass.A2:
        M = _blocks(np.diag([1.0, 0.0]), I2, I2, np.diag([0.0, -1.0]))
    elif c is ChannelClass.C and k < 1:
        s = math.sqrt(1 - k * k)
        M = _blocks(k * I2, s * I2, s * I2, -k * I2)
    elif c is ChannelClass.C:
        s = math.sqrt(k * k - 1)
        M = _blocks(k * I2, np.diag([s, -s]), np.diag([s, -s]), k * I2)
    else:
        s = math.sqrt(k * k + 1)
        M = _blocks(np.diag([k, -k]), s * I2, s * I2, np.diag([k, -k]))
    return SymplecticDilation(M, N, N == 0)


def weak_complement(cf: CanonicalForm) -> GaussianChannel:
    """Channel taking the input to the environment's output state.

    The A<->B exchange is implicit: the result is returned as a channel on
    mode A.
    """
    return build_dilation(cf).complement()


def joint_evolve(dil: SymplecticDilation, s: GaussianState) -> tuple[GaussianState, GaussianState]:
    """Evolve ``s`` together with the thermal environment through ``M``.

    Returns the reduced (system, environment) output states, computed from
    the full 4x4 covariance rather than from the channel formulas.
    """
    gamma = np.zeros((4, 4))
    gamma[:2, :2] = s.gamma
    gamma[2:, 2:] = (dil.N + 0.5) * I2
    mean = np.concatenate([s.mean, np.zeros(2)])
    M = dil.M
    out = M.T @ gamma @ M
    out = (out + out.T) / 2
    mu = M.T @ mean
    return GaussianState(mu[:2], out[:2, :2]), GaussianState(mu[2:], out[2:, 2:])


def approximate_b2(N0: float, delta: float) -> GaussianChannel:
    """Class C channel ``K = kappa I, alpha = N0 I`` with ``kappa`` slightly above 1.

    ``alpha`` equals the B2 noise exactly, so the distance to B2 is
    ``|kappa - 1|`` in ``K`` only.
    """
    if N0 <= 0:
        raise DegenerateTarget("N0 = 0 is the identity channel; use it directly")
    if delta <= 0:
        raise ValueError("delta must be positive")
    step = min(delta, math.sqrt(1 + 2 * N0) - 1)
    return GaussianChannel((1 + step) * I2, N0 * I2)


def simulate_additive_noise(
    N0: float, s: GaussianState, samples: int, seed: int
) -> GaussianState:
    """Monte-Carlo estimate of the additive classical noise channel.

    Each sample displaces the state by ``z ~ N(0, N0 I)``, drawn by
    Box-Muller from two uniforms of ``numpy.random.default_rng(seed)``.
    Returns the exact first and second moments of the resulting mixture.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    if N0 < EPS:
        return s
    rng = np.random.default_rng(seed)
    u1 = rng.random(samples)
    u2 = rng.random(samples)
    r = np.sqrt(-2.0 * np.log1p(-u1))
    theta = 2.0 * np.pi * u2
    z = math.sqrt(N0) * np.column_stack([r * np.cos(theta), r * np.sin(theta)])
    zbar = z.mean(axis=0)
    dz = z - zbar
    cov = dz.T @ dz / samples
    return GaussianState(s.mean + zbar, s.gamma + (cov + cov.T) / 2)
