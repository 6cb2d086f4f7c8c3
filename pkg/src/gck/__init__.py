"""Algebra of one-mode bosonic Gaussian channels."""

from .canonical import CanonicalForm, ChannelClass, class_compose, classify, invariants, to_channel
from .capacity import cc_bound, dd_bound, factorize_cc, region_scan, verdict
from .core import (
    GaussianChannel,
    GaussianState,
    apply,
    compose,
    identity_channel,
    thermal_state,
    validate_channel,
)
from .degradability import analyze, verify_connection
from .dilation import (
    approximate_b2,
    build_dilation,
    joint_evolve,
    simulate_additive_noise,
    weak_complement,
)

__version__ = "0.1.0"
