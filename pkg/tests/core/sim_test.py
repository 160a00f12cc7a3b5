from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np
import pytest

from app.cli import get_preset
from app.core.channel import noise
from app.core.models.amc import McsAssignment, StreamMcs
from app.core.models.campaign import (
    CampaignConfig,
    CampaignResult,
    OperatingPointResult,
    RealizationRecord,
)
from app.core.models.channel import ChannelConfig
from app.core.models.coding import PolarSettings
from app.core.models.enums import OperatingAxis, PointStatus, Strategy
from app.core.models.phy import ModulationScheme
from app.core.models.precoder import OptimizationResult, PrecoderSet
from app.core.models.system import PowerConstraintSet, SystemConfig
from app.core.precoder import BasePrecoderDesigner, PrecoderError, average_rates
from app.core.seeding import SeedPurpose, derive_seed
from app.core.sim import (
    CampaignError,
    LinkPlan,
    bler_per_user,
    mmf_throughput,
    read_results_csv,
    recovered_totals,
    run_campaign,
    run_realization,
    write_results_csv,
)
from app.core.sim import link
from app.core.sysmodel import split_common_rate


def record(index, bits, ok=None, uses=256):
    ok = [True] * len(bits) if ok is None else ok
    return RealizationRecord(
        index=index,
        recovered_bits=bits,
        common_crc=ok,
        private_crc=ok,
        block_ok=ok,
        channel_uses=uses,
    )


def test_mmf_throughput_examples():
    assert mmf_throughput([record(l, [512, 512]) for l in range(100)]) == 2.0
    assert mmf_throughput([record(l, [0, 512]) for l in range(10)]) == 0.0
    assert mmf_throughput([record(0, [256, 512])]) == 1.0
    with pytest.raises(ValueError):
        mmf_throughput([])


def test_mmf_throughput_matches_a_recount():
    rng = np.random.default_rng(1)
    records = [record(l, rng.integers(0, 600, 3).tolist(), uses=128 + l) for l in range(20)]
    totals = [sum(r.recovered_bits[k] for r in records) for k in range(3)]
    uses = sum(r.channel_uses for r in records)
    assert mmf_throughput(records) == min(totals) / uses
    np.testing.assert_array_equal(recovered_totals(records), totals)


def test_bler_per_user_examples():
    assert bler_per_user([record(l, [1, 1]) for l in range(5)]) == [0.0, 0.0]
    assert bler_per_user([record(l, [0], ok=[False]) for l in range(5)]) == [1.0]
    records = [record(l, [0, 1], ok=[l >= 10, True]) for l in range(100)]
    assert bler_per_user(records) == [0.1, 0.0]


QPSK = ModulationScheme(bits_per_symbol=2)


def stream(kind, payload, group=None):
    return StreamMcs(
        stream=kind,
        group=group,
        scheme=QPSK,
        block_length=128,
        coded_info_bits=payload + 16,
        payload_bits=payload,
        average_rate=0.75,
    )


def two_group_plan(noise_variance):
    mcs = McsAssignment(
        common=stream("common", 64),
        private=[stream("private", 32, group=0), stream("private", 32, group=1)],
        common_payload_split=[40, 24],
        stream_length=64,
    )
    precoders = PrecoderSet(
        common=[2.0, 2.0],
        private=[[1.0, 0.0], [0.0, 1.0]],
        common_rate_split=[0.0, 0.0],
    )
    return LinkPlan(precoders, mcs, PolarSettings(), [0, 1], noise_variance)


def test_noiseless_realization_recovers_every_payload():
    plan = two_group_plan(0.0)
    result = run_realization(3, np.eye(2), plan, master=5)
    assert result.recovered_bits == [72, 56]
    assert result.block_ok == [True, True]
    assert result.common_crc == [True, True]
    assert result.channel_uses == 64


def test_realizations_are_reproducible():
    plan = two_group_plan(0.5)
    channel = np.array([[1.0, 0.2j], [0.1, 0.9]])
    first = run_realization(7, channel, plan, master=11)
    assert first == run_realization(7, channel, plan, master=11)
    other = run_realization(8, channel, plan, master=11)
    assert other.index == 8


def test_receiver_noise_comes_from_awgn_with_the_realization_seed(monkeypatch):
    calls = []

    def recording_awgn(signal, noise_variance, seed):
        calls.append((signal.shape, noise_variance, seed))
        return noise.awgn(signal, noise_variance, seed)

    monkeypatch.setattr(link, "awgn", recording_awgn)
    plan = two_group_plan(0.5)
    run_realization(7, np.eye(2), plan, master=11)
    assert calls == [((2, 64), 0.5, derive_seed(11, SeedPurpose.NOISE, 7))]


class FixedDesigner(BasePrecoderDesigner):
    """Group-matched filter precoders with an even power split; no optimization."""

    def __init__(self, fail_above: Optional[float] = None):
        super().__init__("fixed")
        self.fail_above = fail_above

    def design(self, estimate, config, seed, warm_start=None, error_variance=None):
        power = config.power_constraints.total_power
        if self.fail_above is not None and power > self.fail_above:
            raise PrecoderError("power out of range")
        streams = config.num_groups + 1
        matrix = np.zeros((config.num_tx_antennas, streams), dtype=np.complex128)
        if config.is_rsma:
            matrix[:, 0] = estimate.sum(axis=1)
        for group, users in enumerate(config.groups):
            matrix[:, 1 + group] = estimate[:, users].sum(axis=1)
        norms = np.linalg.norm(matrix, axis=0)
        matrix[:, norms > 0] /= norms[norms > 0]
        matrix *= np.sqrt(power / (streams if config.is_rsma else streams - 1))
        precoders = PrecoderSet(
            common=matrix[:, 0],
            private=matrix[:, 1:],
            common_rate_split=np.zeros(config.num_groups),
            strategy=config.strategy,
        )
        rates = average_rates(precoders, estimate, config, 50, seed, error_variance)
        if config.is_rsma:
            split = split_common_rate(rates.common_rate, rates.private_rates) * (1 - 1e-9)
            precoders = precoders.with_split(split)
            rates = average_rates(precoders, estimate, config, 50, seed, error_variance)
        return OptimizationResult(precoders=precoders, rates=rates)


def small_campaign(**update):
    system = SystemConfig(
        num_tx_antennas=2,
        num_users=2,
        num_groups=2,
        group_map=[0, 1],
        power_constraints=PowerConstraintSet.sum_power(2, 1.0),
        csit_alpha=0.8,
    )
    campaign = CampaignConfig(
        scenario_id="small",
        system=system,
        channel=ChannelConfig(csit_alpha=0.8),
        operating_points=[10.0, 30.0],
        num_realizations=4,
        master_seed=3,
        amc={"stream_length": 32},
    )
    return campaign.model_copy(update=update)


def test_campaign_rows_are_consistent_and_reproducible():
    campaign = small_campaign()
    result = run_campaign(campaign, designer=FixedDesigner(), workers=1)
    assert [(p.strategy, p.operating_point) for p in result.points] == [
        ("rsma", 10.0),
        ("rsma", 30.0),
        ("sdma", 10.0),
        ("sdma", 30.0),
    ]
    for point in result.points:
        assert point.status == PointStatus.OK.value
        assert point.total_channel_uses == 4 * 32
        assert all(0.0 <= b <= 1.0 for b in point.bler)
        assert 0.0 <= point.mmf_throughput <= point.assigned_rate + 1e-12
        if point.max_bler == 0.0:
            assert point.mmf_throughput == point.assigned_rate
        assert point.seed == 3

    again = run_campaign(campaign, designer=FixedDesigner(), workers=1)
    assert again == result


def test_parallel_workers_match_the_sequential_run():
    campaign = small_campaign(operating_points=[20.0])
    sequential = run_campaign(campaign, designer=FixedDesigner(), workers=1)
    parallel = run_campaign(campaign, designer=FixedDesigner(), workers=2)
    assert parallel == sequential


def test_failed_designs_become_invalid_rows():
    campaign = small_campaign(strategies=[Strategy.SDMA])
    result = run_campaign(campaign, designer=FixedDesigner(fail_above=100.0), workers=1)
    ok, invalid = result.points
    assert ok.status == PointStatus.OK.value
    assert invalid.status == PointStatus.INVALID.value
    assert invalid.bler == [1.0, 1.0]
    assert invalid.message == "power out of range"


def test_more_draws_than_realizations_is_rejected():
    campaign = small_campaign(estimate_draws=5)
    with pytest.raises(CampaignError):
        run_campaign(campaign, designer=FixedDesigner(), workers=1)


def test_several_estimate_draws_share_out_the_realizations():
    campaign = small_campaign(estimate_draws=2, operating_points=[20.0], strategies=[Strategy.RSMA])
    result = run_campaign(campaign, designer=FixedDesigner(), workers=1)
    (point,) = result.points
    assert point.total_channel_uses == 4 * 32
    assert "(+1 draws)" in point.mcs_summary


def test_calibration_records_the_chosen_backoff():
    campaign = small_campaign(
        operating_points=[30.0],
        strategies=[Strategy.SDMA],
        calibrate_backoff=True,
        backoff_grid=[0.0, 3.0],
        target_bler=1.0,
        calibration_realizations=2,
    )
    (point,) = run_campaign(campaign, designer=FixedDesigner(), workers=1).points
    assert point.backoff_common_db == point.backoff_private_db
    assert point.backoff_common_db in (0.0, 3.0)
    assert not point.calibration_violated


def test_calibration_over_every_realization_is_the_reported_run():
    campaign = small_campaign(
        operating_points=[30.0],
        strategies=[Strategy.RSMA],
        calibrate_backoff=True,
        backoff_grid=[0.0, 2.0, 4.0],
        target_bler=0.25,
        calibration_realizations=4,
    )
    (point,) = run_campaign(campaign, designer=FixedDesigner(), workers=1).points
    assert point.total_channel_uses == 4 * 32
    if not point.calibration_violated:
        assert point.max_bler <= 0.25

    fixed = campaign.model_copy(
        update={
            "calibrate_backoff": False,
            "amc": campaign.amc.with_backoff(point.backoff_common_db, point.backoff_private_db),
        }
    )
    (rerun,) = run_campaign(fixed, designer=FixedDesigner(), workers=1).points
    assert rerun.bler == point.bler
    assert rerun.mmf_throughput == point.mmf_throughput


def campaign_result():
    return CampaignResult(
        scenario_id="csv",
        operating_axis=OperatingAxis.SNR_DB,
        num_users=2,
        points=[
            OperatingPointResult(
                strategy=Strategy.RSMA,
                operating_point=10.0,
                recovered_bits=[1234, 987],
                total_channel_uses=2560,
                bler=[0.1, 0.0],
                mmf_throughput=987 / 2560,
                shannon_bound=1 / 3,
                assigned_rate=0.4,
                mcs_summary="c:4-QAM/100/512 p0:16-QAM/700/1024",
                backoff_common_db=1.5,
                backoff_private_db=0.5,
                optimizer_converged=False,
                seed=7,
            ),
            OperatingPointResult(
                strategy=Strategy.SDMA,
                operating_point=10.0,
                status=PointStatus.INVALID,
                bler=[1.0, 1.0],
                recovered_bits=[0, 0],
                seed=7,
                message="no feasible precoder",
            ),
        ],
    )


def test_results_csv_round_trip(tmp_path):
    result = campaign_result()
    path = write_results_csv(result, tmp_path / "out.csv")
    header = path.read_text().splitlines()[0].split(",")
    assert header[:4] == ["scenario_id", "strategy", "snr_db", "status"]
    assert "bler_user_2" in header
    assert read_results_csv(path).model_dump() == result.model_dump()


def test_results_csv_bytes_are_stable(tmp_path):
    first = write_results_csv(campaign_result(), tmp_path / "a.csv")
    second = write_results_csv(campaign_result(), tmp_path / "b.csv")
    assert first.read_bytes() == second.read_bytes()


@lru_cache(maxsize=None)
def preset_result(name: str, points: Tuple[float, ...], **update) -> CampaignResult:
    campaign = get_preset(name).config.model_copy(
        update={"operating_points": list(points), "num_realizations": 20, **update}
    )
    return run_campaign(campaign, workers=1)


def throughputs(result: CampaignResult, strategy: str) -> Dict[float, float]:
    return {
        p.operating_point: p.mmf_throughput
        for p in result.points
        if p.strategy == strategy and p.status == PointStatus.OK.value
    }


CELLULAR_POINTS = (10.0, 20.0, 30.0)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["fig2", "fig3", "fig4", "fig5"])
def test_rsma_throughput_is_at_least_sdma(name):
    result = preset_result(name, CELLULAR_POINTS)
    rsma, sdma = throughputs(result, "rsma"), throughputs(result, "sdma")
    assert set(rsma) == set(sdma) == set(CELLULAR_POINTS)
    for point in CELLULAR_POINTS:
        assert rsma[point] >= sdma[point] - 0.1
    if name in ("fig4", "fig5"):
        assert rsma[30.0] > sdma[30.0]


@pytest.mark.slow
@pytest.mark.parametrize("weaker, stronger", [("fig3", "fig2"), ("fig5", "fig4")])
def test_coarser_csit_does_not_raise_throughput(weaker, stronger):
    low = preset_result(weaker, CELLULAR_POINTS)
    high = preset_result(stronger, CELLULAR_POINTS)
    for strategy in ("rsma", "sdma"):
        coarse, fine = throughputs(low, strategy), throughputs(high, strategy)
        for point in CELLULAR_POINTS:
            assert coarse[point] <= fine[point] + 0.1


@pytest.mark.slow
@pytest.mark.parametrize("name", ["fig2", "fig3", "fig4", "fig5"])
def test_throughput_stays_under_the_bound_and_grows_with_snr(name):
    result = preset_result(name, CELLULAR_POINTS)
    for point in result.points:
        assert point.mmf_throughput <= point.shannon_bound + 0.05
    for strategy in ("rsma", "sdma"):
        values = [throughputs(result, strategy)[p] for p in CELLULAR_POINTS]
        assert np.all(np.diff(values) >= -0.1)


@pytest.mark.slow
@pytest.mark.parametrize("name, point", [("fig4", 30.0), ("fig6", 22.0)])
def test_calibrated_backoff_keeps_bler_under_target(name, point):
    result = preset_result(
        name,
        (point,),
        num_realizations=100,
        calibrate_backoff=True,
        calibration_realizations=100,
    )
    accepted = [p for p in result.points if not p.calibration_violated]
    assert accepted
    for row in accepted:
        assert row.max_bler <= 0.1


@pytest.mark.slow
def test_satellite_rsma_leads_and_grows_with_power():
    points = (10.0, 18.0, 26.0)
    result = preset_result("fig6", points)
    rsma, sdma = throughputs(result, "rsma"), throughputs(result, "sdma")
    for point in points:
        assert rsma[point] >= sdma[point] - 0.1
    assert rsma[points[-1]] > sdma[points[-1]]
    for values in (rsma, sdma):
        assert np.all(np.diff([values[p] for p in points]) >= -0.1)
