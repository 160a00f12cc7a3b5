import numpy as np
import pytest

from app.core.channel import (
    ChannelError,
    MultibeamSatelliteChannel,
    apply_csit_error,
    awgn,
    beam_centres,
    beam_gain,
    csit_error_variance,
    gen_rayleigh,
    gen_satellite_channel,
    get_channel_model,
)
from app.core.channel.estimates import draw_estimate, draw_true_channel
from app.core.channel.satellite import beam_pattern, link_gain
from app.core.models.campaign import CampaignConfig
from app.core.models.channel import ChannelConfig, SatelliteParams
from app.core.models.enums import ChannelModelKind
from app.core.models.system import PowerConstraintSet, SystemConfig


def test_rayleigh_is_deterministic_and_unit_variance():
    np.testing.assert_array_equal(gen_rayleigh(4, 6, 5), gen_rayleigh(4, 6, 5))
    samples = gen_rayleigh(100, 1000, 1)
    assert np.var(samples) == pytest.approx(1.0, abs=0.02)
    assert abs(samples.real.mean()) < 0.02
    assert abs(samples.imag.mean()) < 0.02


def test_csit_error_variance_law():
    assert csit_error_variance(0.0, 1234.0) == 1.0
    assert csit_error_variance(0.5, 100.0) == pytest.approx(0.1)
    with pytest.raises(ValueError):
        csit_error_variance(0.5, 0.0)


def test_csit_error_shrinks_with_power():
    h = gen_rayleigh(8, 64, 2)
    small = apply_csit_error(h, 1.0, 10.0, 3)
    large = apply_csit_error(h, 1.0, 1000.0, 3)
    ratio = np.mean(np.abs(small.error) ** 2) / np.mean(np.abs(large.error) ** 2)
    assert ratio == pytest.approx(100.0, rel=1e-9)
    np.testing.assert_array_equal(large.true_channel, large.estimate + large.error)
    np.testing.assert_allclose(large.true_channel, h, atol=1e-12)


def test_awgn():
    signal = np.ones(10, dtype=np.complex128)
    np.testing.assert_array_equal(awgn(signal, 0.0, 1), signal)
    noisy = awgn(np.zeros(100_000), 2.0, 4)
    assert np.var(noisy) == pytest.approx(2.0, rel=0.02)
    np.testing.assert_array_equal(noisy, awgn(np.zeros(100_000), 2.0, 4))


def test_beam_pattern_boresight_and_half_power():
    params = SatelliteParams()
    boresight = beam_gain(np.array([0.0]), params)[0]
    assert boresight == pytest.approx(10 ** 5.2)
    half = beam_pattern(np.array([params.half_power_angle_deg]), params.half_power_angle_deg)[0]
    assert half == pytest.approx(0.5, rel=0.01)


def test_beam_centres_form_a_hexagon():
    centres = beam_centres(7, 1.0)
    np.testing.assert_allclose(centres[0], [0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(np.hypot(centres[1:, 0], centres[1:, 1]), np.ones(6))


def test_satellite_channel_at_boresight():
    params = SatelliteParams(num_beams=7, users_per_beam=1, rain_log_std=0.0, rain_log_mean=-50.0)
    centres = beam_centres(7, np.sqrt(3) * params.footprint_radius)
    channel = gen_satellite_channel(params, 9, positions=centres)
    assert channel.shape == (7, 7)
    # each user sits on its own beam's boresight; rain is negligible here
    expected = np.sqrt(link_gain(params) * 10 ** (params.max_gain_dbi / 10))
    np.testing.assert_allclose(np.abs(np.diag(channel)), expected, rtol=1e-9)
    assert np.all(np.abs(channel) <= expected * (1 + 1e-12))


def test_satellite_channel_rejects_users_outside_footprints():
    params = SatelliteParams(num_beams=7, users_per_beam=1)
    positions = np.tile([[5.0, 5.0]], (7, 1))
    with pytest.raises(ChannelError):
        gen_satellite_channel(params, 1, positions=positions)


def test_channel_factory():
    rayleigh = get_channel_model(ChannelConfig(csit_alpha=0.8), 4, 6)
    assert rayleigh.generate(1).shape == (4, 6)

    satellite = get_channel_model(
        ChannelConfig(model=ChannelModelKind.MULTIBEAM_GEO, csit_alpha=0.8), 7, 14
    )
    assert isinstance(satellite, MultibeamSatelliteChannel)
    realization = satellite.realization(1, 2)
    assert realization.true_channel.shape == (7, 14)
    np.testing.assert_array_equal(satellite.generate(5), satellite.generate(5))

    with pytest.raises(ChannelError):
        get_channel_model(ChannelConfig(model=ChannelModelKind.MULTIBEAM_GEO, csit_alpha=0.8), 4, 6)


def campaign_with_channel_seed(channel_seed):
    system = SystemConfig(
        num_tx_antennas=2,
        num_users=2,
        num_groups=2,
        group_map=[0, 1],
        power_constraints=PowerConstraintSet.sum_power(2, 1.0),
        csit_alpha=0.8,
    )
    return CampaignConfig(
        scenario_id="seeds",
        system=system,
        channel=ChannelConfig(csit_alpha=0.8, seed=channel_seed),
        operating_points=[10.0],
        master_seed=5,
    )


def test_channel_seed_selects_the_channel_draws():
    first = draw_estimate(campaign_with_channel_seed(1), 10.0, 0)
    again = draw_estimate(campaign_with_channel_seed(1), 10.0, 0)
    other = draw_estimate(campaign_with_channel_seed(2), 10.0, 0)
    np.testing.assert_array_equal(first.estimate, again.estimate)
    assert not np.allclose(first.true_channel, other.true_channel)

    truth = draw_true_channel(campaign_with_channel_seed(1), 10.0, first.estimate, 3)
    moved = draw_true_channel(campaign_with_channel_seed(2), 10.0, first.estimate, 3)
    assert not np.allclose(truth.true_channel, moved.true_channel)
