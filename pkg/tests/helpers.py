from fractions import Fraction

import numpy as np
from gck.canonical import CanonicalForm, ChannelClass
from gck.core import GaussianChannel, compose, random_symplectic, unit_channel

CLASSES = list(ChannelClass)


def fmat(rows):
    return [[Fraction(x) for x in row] for row in rows]


def fmul(a, b):
    """Exact 2x2 product; test oracle independent of numpy."""
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def fadd(a, b):
    return [[a[i][j] + b[i][j] for j in range(2)] for i in range(2)]


def ftrans(a):
    return [[a[j][i] for j in range(2)] for i in range(2)]


def random_kappa(rng, lo=0.05, hi=3.0):
    while True:
        k = rng.uniform(lo, hi)
        if abs(k - 1) > 0.02:
            return k


def random_canonical(rng, cls=None, max_n0=5.0):
    cls = ChannelClass(cls) if cls is not None else CLASSES[rng.integers(len(CLASSES))]
    n0 = rng.uniform(0, max_n0)
    if cls is ChannelClass.B1:
        return CanonicalForm(cls)
    if cls in (ChannelClass.C, ChannelClass.D):
        return CanonicalForm(cls, random_kappa(rng), n0)
    return CanonicalForm(cls, N0=n0)


def random_channel(rng):
    """Random valid channel with general K, alpha and m."""
    K = rng.normal(size=(2, 2)) * rng.uniform(0.1, 2)
    d = np.linalg.det(K)
    S = random_symplectic(rng)
    t = abs(d - 1) / 2 * (1 + rng.exponential(0.5))
    alpha = t * S.T @ S
    if rng.random() < 0.5:
        v = rng.normal(size=2)
        alpha = alpha + np.outer(v, v)
    return GaussianChannel(K, alpha, rng.normal(size=2))


def dress(ch, rng):
    """Unitarily equivalent channel: unit channel, ch, then another unit channel."""
    u1 = unit_channel(random_symplectic(rng))
    u2 = unit_channel(random_symplectic(rng))
    return compose(compose(u1, ch), u2)
