import numpy as np
import pytest

from app.cli import get_preset
from app.core.models.campaign import CampaignConfig
from app.core.models.channel import ChannelConfig
from app.core.models.enums import Strategy
from app.core.models.precoder import OptimizerConfig, PrecoderSet
from app.core.models.system import PowerConstraintSet, SystemConfig
from app.core.precoder import (
    PrecoderFileError,
    SCAPrecoderDesigner,
    StoredPrecoderDesigner,
    average_rates,
    continue_along_grid,
    design_strategies,
    load_precoders,
    sample_channels,
    shannon_curve,
    store_precoders,
)
from app.core.precoder.sca import leakage_precoders
from app.core.sysmodel import check_power

OPTIONS = OptimizerConfig(num_sample_channels=20, evaluation_samples=20, max_iterations=30)


def system(n_t, group_map, power, strategy=Strategy.RSMA, constraints=None):
    return SystemConfig(
        num_tx_antennas=n_t,
        num_users=len(group_map),
        num_groups=max(group_map) + 1,
        group_map=group_map,
        power_constraints=constraints or PowerConstraintSet.sum_power(n_t, power),
        csit_alpha=0.6,
        strategy=strategy,
    )


def channel(n_t, k, seed):
    rng = np.random.default_rng(seed)
    return (rng.standard_normal((n_t, k)) + 1j * rng.standard_normal((n_t, k))) / np.sqrt(2)


@pytest.mark.parametrize("strategy", [Strategy.SDMA, Strategy.RSMA])
def test_single_user_reaches_capacity(strategy):
    h = channel(2, 1, 4)
    config = system(2, [0], 10.0, strategy)
    result = SCAPrecoderDesigner(OPTIONS).design(h, config, seed=1, error_variance=0.0)
    capacity = np.log2(1 + 10.0 * np.linalg.norm(h) ** 2)
    assert result.rates.mmf_value == pytest.approx(capacity, rel=1e-3)


def test_sdma_design_has_no_common_stream():
    config = system(2, [0, 0, 1, 1], 100.0, Strategy.SDMA)
    result = SCAPrecoderDesigner(OPTIONS).design(channel(2, 4, 5), config, seed=2)
    np.testing.assert_array_equal(result.precoders.common, np.zeros(2))
    np.testing.assert_array_equal(result.precoders.common_rate_split, np.zeros(2))
    assert check_power(result.precoders, config.power_constraints).feasible


@pytest.mark.parametrize("instance", range(20))
def test_rsma_is_never_below_sdma(instance):
    h = channel(2, 4, 100 + instance)
    rsma_config = system(2, [0, 0, 1, 1], 100.0)
    designer = SCAPrecoderDesigner(OPTIONS)
    sdma = designer.design(h, rsma_config.with_strategy(Strategy.SDMA), seed=instance, error_variance=0.0)
    rsma = designer.design(h, rsma_config, seed=instance, warm_start=sdma.precoders, error_variance=0.0)
    assert rsma.rates.mmf_value >= sdma.rates.mmf_value - 1e-6
    assert rsma.precoders.common_rate_split.sum() <= rsma.rates.common_rate + 1e-9


def test_objective_trace_never_decreases_and_constraints_hold():
    constraints = PowerConstraintSet.per_antenna([5.0, 5.0, 5.0])
    config = system(3, [0, 1, 1, 2], 15.0, constraints=constraints)
    result = SCAPrecoderDesigner(OPTIONS).design(channel(3, 4, 7), config, seed=4)
    trace = np.asarray(result.objective_trace)
    assert len(trace) >= 2
    # Per-iterate values, not a running maximum.
    assert np.all(np.diff(trace) >= -1e-4)
    assert result.solver_status != "rescaled"
    assert check_power(result.precoders, constraints).feasible


def test_design_is_deterministic():
    h = channel(2, 2, 8)
    config = system(2, [0, 1], 10.0)
    first = SCAPrecoderDesigner(OPTIONS).design(h, config, seed=9)
    second = SCAPrecoderDesigner(OPTIONS).design(h, config, seed=9)
    np.testing.assert_array_equal(first.precoders.matrix, second.precoders.matrix)


def test_average_rates_of_zero_precoders():
    config = system(2, [0, 0, 1], 10.0)
    report = average_rates(PrecoderSet.zeros(2, 2), channel(2, 3, 1), config, 50, seed=2)
    assert report.common_rate == 0.0
    np.testing.assert_array_equal(report.private_rates, [0.0, 0.0])
    assert report.mmf_value == 0.0


def test_average_rates_rescales_an_oversized_split():
    h = np.array([[1.0, 1.0]], dtype=np.complex128)
    config = system(1, [0, 1], 1.0)
    precoders = PrecoderSet(common=[1.0], private=[[0.0, 0.0]], common_rate_split=[2.0, 2.0])
    report = average_rates(precoders, h, config, 1, seed=0, error_variance=0.0)
    assert report.split_rescaled
    assert report.common_rate == pytest.approx(1.0)
    np.testing.assert_allclose(report.common_rate_split, [0.5, 0.5])


def test_sample_channels_without_error_repeat_the_estimate():
    h = channel(2, 3, 2)
    samples = sample_channels(h, 0.0, 4, seed=1)
    assert samples.shape == (4, 2, 3)
    np.testing.assert_array_equal(samples[3], h)


def test_precoder_file_round_trip(tmp_path):
    precoders = PrecoderSet(
        common=[0.1 + 0.2j, -1 / 3],
        private=[[1j / 7, 0.0], [np.pi, -np.e]],
        common_rate_split=[0.125, 1 / 3],
    )
    path = store_precoders(precoders, tmp_path / "p.json")
    loaded = load_precoders(path)
    np.testing.assert_array_equal(loaded.matrix, precoders.matrix)
    np.testing.assert_array_equal(loaded.common_rate_split, precoders.common_rate_split)


def test_precoder_file_must_fit_the_system(tmp_path):
    path = store_precoders(PrecoderSet.zeros(2, 2), tmp_path / "p.json")
    with pytest.raises(PrecoderFileError):
        load_precoders(path, system(2, [0, 1, 2], 10.0))

    broken = tmp_path / "broken.json"
    broken.write_text('{"format": "rslink-precoders/1"}')
    with pytest.raises(PrecoderFileError):
        load_precoders(broken)


def test_stored_designer_evaluates_file_unchanged(tmp_path):
    precoders = PrecoderSet(
        common=[1.0, 0.0], private=[[1.0, 0.0], [0.0, 1.0]], common_rate_split=[0.0, 0.0]
    )
    path = store_precoders(precoders, tmp_path / "p.json")
    config = system(2, [0, 1], 10.0)
    result = StoredPrecoderDesigner(path, OPTIONS).design(channel(2, 2, 3), config, seed=1)
    np.testing.assert_array_equal(result.precoders.matrix, precoders.matrix)
    assert result.converged


def test_leakage_start_meets_the_constraints():
    constraints = PowerConstraintSet.per_antenna([2.0, 2.0, 2.0])
    config = system(3, [0, 0, 1, 1], 6.0, constraints=constraints)
    matrix = leakage_precoders(channel(3, 4, 11), config)
    precoders = PrecoderSet(common=matrix[:, 0], private=matrix[:, 1:], common_rate_split=[0.0, 0.0])
    report = check_power(precoders, constraints)
    assert report.feasible
    assert np.all(np.linalg.norm(matrix, axis=0) > 0)

    sdma = leakage_precoders(channel(3, 4, 11), config.with_strategy(Strategy.SDMA))
    np.testing.assert_array_equal(sdma[:, 0], np.zeros(3))


def test_rescaled_precoders_fill_the_new_power():
    h = channel(2, 4, 12)
    low = system(2, [0, 0, 1, 1], 10.0)
    high = system(2, [0, 0, 1, 1], 100.0)
    designer = SCAPrecoderDesigner(OPTIONS)
    design = designer.design(h, low, seed=5)
    moved = designer.rescaled(design.precoders, h, high, seed=5)
    assert moved.solver_status == "rescaled"
    assert np.sum(np.abs(moved.precoders.matrix) ** 2) == pytest.approx(100.0)
    assert moved.precoders.common_rate_split.sum() <= moved.rates.common_rate + 1e-9

    fixed = SCAPrecoderDesigner(OPTIONS.model_copy(update={"grid_continuation": False}))
    assert fixed.rescaled(design.precoders, h, high, seed=5) is None


def bounds_campaign(**update):
    config = system(2, [0, 0, 1, 1], 1.0)
    campaign = CampaignConfig(
        scenario_id="bounds",
        system=config,
        channel=ChannelConfig(csit_alpha=0.6),
        operating_points=[0.0, 10.0, 20.0],
        optimizer=OPTIONS,
        master_seed=4,
    )
    return campaign.model_copy(update=update)


def test_design_strategies_returns_both_with_rsma_on_top():
    campaign = bounds_campaign()
    designer = SCAPrecoderDesigner(OPTIONS)
    results = design_strategies(
        campaign, designer, 20.0, channel(2, 4, 13), 0, [Strategy.RSMA, Strategy.SDMA]
    )
    assert set(results) == {"rsma", "sdma"}
    np.testing.assert_array_equal(results["sdma"].precoders.common, np.zeros(2))
    assert results["rsma"].rates.mmf_value >= results["sdma"].rates.mmf_value - 1e-3


def test_shannon_bounds_grow_with_snr_and_favour_rsma():
    curve = shannon_curve(bounds_campaign())
    assert [entry.point for entry in curve] == [0.0, 10.0, 20.0]
    for entry in curve:
        assert entry.rsma >= entry.sdma - 1e-9
    for strategy in ("rsma", "sdma"):
        values = [getattr(entry, strategy) for entry in curve]
        assert np.all(np.diff(values) >= -0.05)


@pytest.mark.parametrize("grid", [[], [10.0, 0.0], [0.0, 10.0, 10.0]])
def test_shannon_curve_rejects_a_grid_out_of_order(grid):
    with pytest.raises(ValueError):
        shannon_curve(bounds_campaign(), grid=grid)


def test_continuation_never_lowers_a_design():
    campaign = bounds_campaign(operating_points=[10.0, 20.0])
    designer = SCAPrecoderDesigner(OPTIONS)
    estimates = [channel(2, 4, 14), channel(2, 4, 14)]
    designs = [
        design_strategies(campaign, designer, point, h, 0, [Strategy.RSMA, Strategy.SDMA])
        for point, h in zip(campaign.operating_points, estimates)
    ]
    refined = continue_along_grid(
        campaign, designer, campaign.operating_points, estimates, designs, 0
    )
    for before, after in zip(designs, refined):
        for key in ("rsma", "sdma"):
            assert after[key].rates.mmf_value >= before[key].rates.mmf_value
        assert after["rsma"].rates.mmf_value >= after["sdma"].rates.mmf_value - 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("name", ["fig4", "fig5"])
def test_overloaded_sdma_bound_saturates(name):
    campaign = get_preset(name).config.model_copy(update={"estimate_draws": 4})
    low, high = shannon_curve(campaign, grid=[25.0, 35.0])
    rsma_gain = high.rsma - low.rsma
    sdma_gain = high.sdma - low.sdma
    assert rsma_gain > 0
    assert sdma_gain < 0.2 * rsma_gain
