import numpy as np
import pytest
from pydantic import ValidationError

from app.core.models.amc import AmcConfig, McsAssignment, StreamMcs
from app.core.models.campaign import CampaignConfig, CampaignResult, OperatingPointResult
from app.core.models.channel import ChannelConfig, ChannelRealization, SatelliteParams
from app.core.models.coding import PolarCodeConfig, PolarSettings
from app.core.models.enums import ChannelModelKind, OperatingAxis, PowerConstraintKind, Strategy
from app.core.models.phy import ModulationScheme
from app.core.models.precoder import PrecoderSet
from app.core.models.system import PowerConstraintSet, SystemConfig


def make_system(num_tx_antennas=4, strategy=Strategy.RSMA, total_power=100.0):
    return SystemConfig(
        num_tx_antennas=num_tx_antennas,
        num_users=6,
        num_groups=3,
        group_map=[0, 0, 1, 1, 2, 2],
        power_constraints=PowerConstraintSet.sum_power(num_tx_antennas, total_power),
        csit_alpha=0.8,
        strategy=strategy,
    )


def test_system_config_groups_partition_users():
    system = make_system()
    groups = system.groups
    assert [g.tolist() for g in groups] == [[0, 1], [2, 3], [4, 5]]
    assert system.is_rsma
    assert not system.with_strategy(Strategy.SDMA).is_rsma


def test_system_config_rejects_empty_group():
    with pytest.raises(ValidationError):
        SystemConfig(
            num_tx_antennas=4,
            num_users=4,
            num_groups=3,
            group_map=[0, 0, 1, 1],
            power_constraints=PowerConstraintSet.sum_power(4, 10.0),
            csit_alpha=0.8,
        )


def test_system_config_rejects_mismatched_constraints():
    with pytest.raises(ValidationError):
        SystemConfig(
            num_tx_antennas=4,
            num_users=2,
            num_groups=1,
            group_map=[0, 0],
            power_constraints=PowerConstraintSet.sum_power(3, 10.0),
            csit_alpha=0.8,
        )


def test_power_constraint_shapes():
    total = PowerConstraintSet.sum_power(3, 9.0)
    assert total.shaping_diagonals.shape == (1, 3)
    assert total.total_power == 9.0

    per_antenna = PowerConstraintSet.per_antenna([1.0, 2.0, 3.0])
    assert per_antenna.kind == PowerConstraintKind.PER_ANTENNA
    np.testing.assert_array_equal(per_antenna.shaping_diagonals, np.eye(3))
    assert per_antenna.scaled(2.0).limits == [2.0, 4.0, 6.0]

    with pytest.raises(ValidationError):
        PowerConstraintSet(kind=PowerConstraintKind.PER_ANTENNA, num_tx_antennas=3, limits=[1.0])


def test_precoder_set_matrix_and_sdma_rule():
    precoders = PrecoderSet(
        common=[1, 0],
        private=[[0, 1j], [1, 0]],
        common_rate_split=[0.5, 0.25],
    )
    assert precoders.matrix.shape == (2, 3)
    np.testing.assert_array_equal(precoders.matrix[:, 0], [1, 0])
    assert not precoders.common.flags.writeable

    with pytest.raises(ValidationError):
        PrecoderSet(
            common=[1, 0],
            private=[[0, 1], [1, 0]],
            common_rate_split=[0.0, 0.0],
            strategy=Strategy.SDMA,
        )


def test_channel_realization_requires_exact_decomposition():
    estimate = np.array([[1 + 1j, 0.5], [0.25j, -1]])
    error = np.array([[0.1, 0.2j], [0.3, 0.4]])
    realization = ChannelRealization.from_parts(estimate, error)
    np.testing.assert_array_equal(realization.true_channel, estimate + error)

    with pytest.raises(ValidationError):
        ChannelRealization(true_channel=estimate, estimate=estimate, error=error)


def test_channel_config_error_variance_and_satellite_defaults():
    config = ChannelConfig(csit_alpha=0.5, power_for_error_scaling=100.0)
    assert config.error_variance == pytest.approx(0.1)

    satellite = ChannelConfig(model=ChannelModelKind.MULTIBEAM_GEO, csit_alpha=0.8)
    assert satellite.satellite_params == SatelliteParams()
    assert satellite.satellite_params.num_users == 14


def test_polar_code_config_validation():
    config = PolarCodeConfig(
        mother_block_length=8,
        code_block_length=8,
        num_info_bits=4,
        crc_length=0,
        info_set=(3, 5, 6, 7),
    )
    assert config.frozen_set == (0, 1, 2, 4)
    assert config.rate == 0.5

    with pytest.raises(ValidationError):
        PolarCodeConfig(mother_block_length=6, code_block_length=6, num_info_bits=1, crc_length=0, info_set=(5,))
    with pytest.raises(ValidationError):
        # position 7 is shortened away when N_target = 6
        PolarCodeConfig(mother_block_length=8, code_block_length=6, num_info_bits=1, crc_length=0, info_set=(7,))


def test_polar_settings_polynomial_must_fit():
    with pytest.raises(ValidationError):
        PolarSettings(crc_length=8, crc_polynomial=0x1021)


def test_modulation_scheme_names():
    scheme = ModulationScheme.from_order(64)
    assert scheme.bits_per_symbol == 6
    assert scheme.name == "64-QAM"
    with pytest.raises(ValidationError):
        ModulationScheme(bits_per_symbol=3)


def test_amc_config_rejects_unsorted_alphabets():
    with pytest.raises(ValidationError):
        AmcConfig(alphabet_set=[4, 2])
    with pytest.raises(ValidationError):
        AmcConfig(max_code_rate=0.0)


def test_mcs_assignment_payload_accounting():
    def stream(group, payload):
        return StreamMcs(
            stream="private",
            group=group,
            scheme=ModulationScheme(bits_per_symbol=2),
            block_length=512,
            coded_info_bits=payload + 16,
            payload_bits=payload,
            average_rate=1.0,
        )

    common = StreamMcs(
        stream="common",
        scheme=ModulationScheme(bits_per_symbol=2),
        block_length=512,
        coded_info_bits=116,
        payload_bits=100,
        average_rate=0.5,
    )
    mcs = McsAssignment(
        common=common,
        private=[stream(0, 200), stream(1, 150)],
        common_payload_split=[40, 60],
        stream_length=256,
    )
    assert mcs.group_payload(0) == 240
    assert mcs.group_payload(1) == 210
    assert mcs.assigned_mmf_rate == pytest.approx(210 / 256)
    assert str(common) == "c:4-QAM/116/512"

    with pytest.raises(ValidationError):
        McsAssignment(
            common=common,
            private=[stream(0, 200), stream(1, 150)],
            common_payload_split=[40, 50],
            stream_length=256,
        )


def test_campaign_operating_points_map_to_power():
    campaign = CampaignConfig(
        scenario_id="test",
        system=make_system(),
        channel=ChannelConfig(csit_alpha=0.8),
        operating_points=[10.0, 20.0],
    )
    assert campaign.total_power_at(20.0) == pytest.approx(100.0)
    assert campaign.constraints_at(10.0).limits == [pytest.approx(10.0)]
    assert campaign.channel_uses_per_realization == 256
    assert campaign.estimates_per_point == 1

    per_antenna = campaign.model_copy(
        update={
            "operating_axis": OperatingAxis.POWER_DBW,
            "system": campaign.system.with_power(PowerConstraintSet.per_antenna([1.0] * 4)),
        }
    )
    assert per_antenna.total_power_at(10.0) == pytest.approx(40.0)
    assert per_antenna.constraints_at(10.0).limits == [pytest.approx(10.0)] * 4


def test_campaign_rejects_disagreeing_alpha():
    with pytest.raises(ValidationError):
        CampaignConfig(
            scenario_id="test",
            system=make_system(),
            channel=ChannelConfig(csit_alpha=0.6),
            operating_points=[10.0],
        )


def test_campaign_result_curve():
    result = CampaignResult(
        scenario_id="s",
        operating_axis=OperatingAxis.SNR_DB,
        num_users=2,
        points=[
            OperatingPointResult(strategy=Strategy.RSMA, operating_point=10.0, mmf_throughput=1.0, shannon_bound=1.5),
            OperatingPointResult(strategy=Strategy.SDMA, operating_point=10.0, mmf_throughput=0.5, shannon_bound=0.8),
            OperatingPointResult(strategy=Strategy.RSMA, operating_point=20.0, mmf_throughput=2.0, shannon_bound=2.5),
        ],
    )
    np.testing.assert_array_equal(result.throughput_curve(Strategy.RSMA), [[10.0, 1.0, 1.5], [20.0, 2.0, 2.5]])
    assert len(result.for_strategy(Strategy.SDMA)) == 1
