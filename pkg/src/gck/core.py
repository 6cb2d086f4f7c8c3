"""Channel representation, validity and composition for one bosonic mode.

A Gaussian channel is the triple ``(K, alpha, m)`` acting on characteristic
functions as

    phi(Phi(rho); z) = phi(rho; K z) * exp(-z^T alpha z / 2 + i m^T z).

Covariance convention: the N-photon thermal state has ``gamma = (N + 1/2) I``,
so the vacuum is ``I / 2`` and the uncertainty relation reads
``det(gamma) >= 1/4``.  Other references use ``2 gamma`` or ``gamma / 2``;
keep this in mind when comparing numbers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EPS",
    "I2",
    "SIGMA3",
    "SIGMA2",
    "J2",
    "J4",
    "ChannelError",
    "NotSymmetric",
    "NotPositiveSemidefinite",
    "CPViolated",
    "InvalidState",
    "GaussianChannel",
    "GaussianState",
    "validate_channel",
    "apply",
    "compose",
    "identity_channel",
    "unit_channel",
    "cp_matrix",
    "thermal_state",
    "max_deviation",
    "det2",
    "random_symplectic",
    "random_state",
]

EPS = float(os.environ.get("GCK_TOLERANCE", "1e-9"))

I2 = np.eye(2)
SIGMA3 = np.diag([1.0, -1.0])
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]])

# Per-mode block of the symplectic form. The overall sign is a convention;
# M^T J M = J is insensitive to it.
J2 = np.array([[0.0, -1.0], [1.0, 0.0]])
J4 = np.kron(np.eye(2), J2)


class ChannelError(ValueError):
    """Base class for invalid channel or state data."""


class NotSymmetric(ChannelError):
    pass


class NotPositiveSemidefinite(ChannelError):
    pass


class CPViolated(ChannelError):
    """``det(alpha) < ((det(K) - 1) / 2)**2`` beyond tolerance."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(
            f"complete positivity violated: det(alpha) - ((det(K) - 1)/2)^2 = {residual:.6g}"
        )


class InvalidState(ChannelError):
    pass


def _as_mat2(a, name: str) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if arr.shape != (2, 2):
        raise ChannelError(f"{name} must be 2x2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ChannelError(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


def _as_vec2(v, name: str) -> np.ndarray:
    arr = np.zeros(2) if v is None else np.array(v, dtype=float).reshape(-1)
    if arr.shape != (2,):
        raise ChannelError(f"{name} must be a 2-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ChannelError(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


def _scale(*mats) -> float:
    return max(1.0, *(float(np.max(np.abs(a))) for a in mats))


def det2(a: np.ndarray) -> float:
    return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


def _check_symmetric_psd(a: np.ndarray, name: str, tol: float) -> None:
    s = _scale(a)
    asym = float(np.max(np.abs(a - a.T)))
    if asym > tol * s:
        raise NotSymmetric(f"{name} is not symmetric (max |a - a^T| = {asym:.3g})")
    lo = float(np.linalg.eigvalsh((a + a.T) / 2)[0])
    if lo < -tol * s:
        raise NotPositiveSemidefinite(f"{name} has negative eigenvalue {lo:.6g}")


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    """One-mode Gaussian channel ``(K, alpha, m)``.

    Construction validates symmetry, positivity and complete positivity of
    ``alpha`` relative to ``K``; an instance is always a physical channel.
    """

    K: np.ndarray
    alpha: np.ndarray
    m: np.ndarray = None

    def __post_init__(self):
        K = _as_mat2(self.K, "K")
        alpha = _as_mat2(self.alpha, "alpha")
        m = _as_vec2(self.m, "m")
        _check_symmetric_psd(alpha, "alpha", EPS)
        residual = det2(alpha) - ((det2(K) - 1) / 2) ** 2
        if residual < -EPS * _scale(K, alpha) ** 2:
            raise CPViolated(residual)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "m", m)

    def as_tuple(self):
        return self.K, self.alpha, self.m

    def __repr__(self):
        return (
            f"GaussianChannel(K={self.K.tolist()}, alpha={self.alpha.tolist()}, "
            f"m={self.m.tolist()})"
        )


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Mean vector and covariance matrix of one mode (vacuum: ``gamma = I/2``)."""

    mean: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        mean = _as_vec2(self.mean, "mean")
        gamma = _as_mat2(self.gamma, "gamma")
        s = _scale(gamma)
        if float(np.max(np.abs(gamma - gamma.T))) > EPS * s:
            raise InvalidState("gamma is not symmetric")
        if float(np.linalg.eigvalsh((gamma + gamma.T) / 2)[0]) <= 0:
            raise InvalidState("gamma is not positive definite")
        if det2(gamma) < 0.25 - EPS * s**2:
            raise InvalidState(f"det(gamma) = {det2(gamma):.6g} violates det(gamma) >= 1/4")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "gamma", gamma)

    def __repr__(self):
        return f"GaussianState(mean={self.mean.tolist()}, gamma={self.gamma.tolist()})"


def validate_channel(K, alpha, m=None) -> GaussianChannel:
    """Build a channel, raising ``NotSymmetric``, ``NotPositiveSemidefinite``
    or ``CPViolated`` when the data is not a physical channel."""
    return GaussianChannel(K, alpha, m)


def apply(ch: GaussianChannel, s: GaussianState) -> GaussianState:
    mean = ch.K.T @ s.mean + ch.m
    gamma = ch.K.T @ s.gamma @ ch.K + ch.alpha
    return GaussianState(mean, (gamma + gamma.T) / 2)


def compose(first: GaussianChannel, second: GaussianChannel) -> GaussianChannel:
    """Return ``second o first`` (``first`` acts on the state first)."""
    K1, a1, m1 = first.as_tuple()
    K2, a2, m2 = second.as_tuple()
    alpha = K2.T @ a1 @ K2 + a2
    try:
        return GaussianChannel(K1 @ K2, (alpha + alpha.T) / 2, K2.T @ m1 + m2)
    except ChannelError as exc:
        # CP is closed under composition, so this is a bug, never bad input.
        raise RuntimeError(f"composition produced an invalid channel: {exc}") from exc


def identity_channel() -> GaussianChannel:
    return GaussianChannel(I2, np.zeros((2, 2)))


def unit_channel(S) -> GaussianChannel:
    """Noiseless channel ``K = S`` for a 2x2 symplectic ``S`` (``det S = 1``)."""
    return GaussianChannel(S, np.zeros((2, 2)))


def cp_matrix(K, alpha) -> np.ndarray:
    """Hermitian matrix ``2 alpha - sigma2 + K^T sigma2 K``; PSD iff the map is CP."""
    K = np.asarray(K, dtype=float)
    return 2 * np.asarray(alpha, dtype=float) - SIGMA2 + K.T @ SIGMA2 @ K


def thermal_state(N: float = 0.0, mean=None) -> GaussianState:
    return GaussianState(mean, (N + 0.5) * I2)


def max_deviation(a: GaussianChannel, b: GaussianChannel) -> float:
    """Largest entrywise difference between the (K, alpha, m) triples."""
    return max(float(np.max(np.abs(x - y))) for x, y in zip(a.as_tuple(), b.as_tuple()))


def random_symplectic(rng: np.random.Generator, max_squeeze: float = 1.0) -> np.ndarray:
    """Random element of SL(2, R): rotation, squeeze, rotation."""
    a, b = rng.uniform(0, 2 * np.pi, size=2)
    r = np.exp(rng.uniform(-max_squeeze, max_squeeze))

    def rot(t):
        return np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])

    return rot(a) @ np.diag([r, 1 / r]) @ rot(b)


def random_state(rng: np.random.Generator, max_photons: float = 3.0) -> GaussianState:
    """Random valid state: squeezed, rotated thermal state with a random mean."""
    S = random_symplectic(rng)
    N = rng.uniform(0, max_photons)
    return GaussianState(rng.normal(size=2), (N + 0.5) * S.T @ S)
