import dataclasses
import math

import numpy as np
import pytest

from helpers import CLASSES, dress, random_canonical
from gck.canonical import CanonicalForm, classify, det_k_can, to_channel
from gck.core import I2, SIGMA3, GaussianChannel
from gck.degradability import Direction, analyze, verify_connection

A1, A2, B1, B2, C, D = CLASSES
KAPPAS = [0.1, 0.25, 0.5, math.sqrt(0.5), 0.9, 1.5, 2.0, 3.0]
N0S = [0.0, 0.5, 1.0, 2.0, 5.0]


def grid():
    out = [CanonicalForm(B1)]
    for n0 in N0S:
        out += [CanonicalForm(A1, N0=n0), CanonicalForm(A2, N0=n0), CanonicalForm(B2, N0=n0)]
        for k in KAPPAS:
            out += [CanonicalForm(C, k, n0), CanonicalForm(D, k, n0)]
    return out


def test_attenuator_below_half():
    rep = analyze(CanonicalForm(C, 0.5, 1.3))
    assert rep.anti_degradable and not rep.weakly_degradable
    assert rep.direction is Direction.ANTI
    assert rep.connecting_channel.K[0, 0] == pytest.approx(0.5 / math.sqrt(0.75))
    assert rep.connecting_channel.K[0, 0] == pytest.approx(0.57735, abs=1e-5)


def test_attenuator_above_half_pure():
    rep = analyze(CanonicalForm(C, 0.9, 0.0))
    assert rep.weakly_degradable and rep.degradable and not rep.anti_degradable
    assert rep.connecting_channel.K[0, 0] == pytest.approx(math.sqrt(0.19) / 0.9)
    assert rep.connecting_channel.K[0, 0] == pytest.approx(0.48432, abs=1e-5)


def test_conjugator():
    rep = analyze(CanonicalForm(D, 1.0, 0.2))
    assert rep.anti_degradable and not rep.weakly_degradable
    np.testing.assert_allclose(rep.connecting_channel.K, SIGMA3 / math.sqrt(2))


def test_additive_noise_is_neither():
    rep = analyze(CanonicalForm(B2, N0=1.0))
    assert not (rep.anti_degradable or rep.weakly_degradable or rep.degradable)
    assert rep.direction is Direction.NEITHER
    assert rep.connecting_channel is None
    with pytest.raises(ValueError):
        verify_connection(rep)


def test_identity_is_degenerate():
    rep = analyze(CanonicalForm(B2, N0=0.0))
    assert rep.degenerate and rep.weakly_degradable and rep.degradable
    assert not rep.anti_degradable
    assert rep.verification_residual < 1e-12


def test_amplifier_connects_through_conjugator():
    rep = analyze(CanonicalForm(C, 2.0, 0.7))
    assert rep.direction is Direction.WEAK and not rep.degradable
    assert classify(rep.connecting_channel).cls is D


def test_boundary_reports_both():
    rep = analyze(CanonicalForm(C, math.sqrt(0.5), 0.0))
    assert rep.direction is Direction.BOTH
    assert rep.anti_degradable and rep.weakly_degradable and rep.degradable
    assert rep.near_boundary
    np.testing.assert_allclose(rep.connecting_channel.K, I2, atol=1e-15)


def test_a_classes_connect_through_themselves():
    for cls in (A1, A2):
        cf = CanonicalForm(cls, N0=0.8)
        rep = analyze(cf)
        assert rep.direction is Direction.ANTI
        np.testing.assert_array_equal(rep.connecting_channel.K, to_channel(cf).K)
        assert rep.verification_residual < 1e-12


def test_b1_degradable():
    rep = analyze(CanonicalForm(B1))
    assert rep.weakly_degradable and rep.degradable and not rep.anti_degradable
    assert classify(rep.connecting_channel).cls is A2


@pytest.mark.parametrize("cf", grid(), ids=str)
def test_region_law_and_residual(cf):
    rep = analyze(cf)
    d = det_k_can(cf)
    if cf.cls is B2:
        assert not rep.anti_degradable
        assert rep.weakly_degradable is (cf.N0 == 0)
    else:
        assert rep.anti_degradable is (d <= 0.5 + 1e-9)
        assert rep.weakly_degradable is (d >= 0.5 - 1e-9)
    assert rep.null_capacity_by_antidegradability is rep.anti_degradable
    assert not rep.degradable or rep.weakly_degradable
    if rep.connecting_channel is not None:
        assert rep.verification_residual < 1e-9
        assert verify_connection(rep) == rep.verification_residual


def test_degradable_flags():
    for cf in grid():
        rep = analyze(cf)
        expect = cf.cls is B1 or (
            cf.cls is C and cf.N0 == 0 and cf.kappa**2 >= 0.5 - 1e-9
        ) or (cf.cls is B2 and cf.N0 == 0)
        assert rep.degradable is expect, cf


def _perturbed(rep, eps=1e-3):
    ch = rep.connecting_channel
    k = ch.K[0, 0]
    n0 = rep.input_class.N0
    if ch.K[1, 1] < 0:
        kp = k + eps
        new = GaussianChannel(kp * SIGMA3, (kp * kp + 1) * (n0 + 0.5) * I2)
    else:
        kp = k + eps
        new = GaussianChannel(kp * I2, abs(1 - kp * kp) * (n0 + 0.5) * I2)
    return dataclasses.replace(rep, connecting_channel=new)


@pytest.mark.parametrize(
    "cf",
    [CanonicalForm(C, 0.5, 0.0), CanonicalForm(C, 0.9, 1.0), CanonicalForm(C, 2.0, 0.3),
     CanonicalForm(D, 1.2, 0.5)],
    ids=str,
)
def test_wrong_connecting_channel_is_detected(cf):
    rep = analyze(cf)
    assert rep.verification_residual < 1e-12
    assert verify_connection(_perturbed(rep)) > 1e-4


def test_connecting_channels_are_valid():
    for cf in grid():
        ch = analyze(cf).connecting_channel
        if ch is not None:
            GaussianChannel(ch.K, ch.alpha, ch.m)


def test_unit_equivalence_keeps_verdicts(rng):
    for _ in range(2000):
        cf = random_canonical(rng)
        ref = analyze(cf)
        rep = analyze(classify(dress(to_channel(cf), rng)))
        assert (rep.anti_degradable, rep.weakly_degradable, rep.degradable) == (
            ref.anti_degradable,
            ref.weakly_degradable,
            ref.degradable,
        )
