from fractions import Fraction

import numpy as np
import pytest

from app.core.amc import (
    apply_backoff,
    assign_mcs,
    backoff_candidates,
    calibrate_backoff,
    code_params,
    select_modulation,
    split_common_payload,
    stream_mcs,
)
from app.core.models.amc import AmcConfig
from app.core.models.enums import StreamClass
from app.core.models.phy import ModulationScheme
from app.core.models.precoder import AverageRateReport

AMC = AmcConfig()


@pytest.mark.parametrize(
    "rate, bits",
    [(3.0, 4), (8.0, 8), (0.5, 2), (1.8, 2), (5.5, 8), (0.0, 2), (-1.0, 2)],
)
def test_select_modulation(rate, bits):
    assert select_modulation(rate, AMC).bits_per_symbol == bits


@pytest.mark.parametrize(
    "rate, bits, block_length, info_bits",
    [(3.0, 4, 1024, 768), (8.0, 8, 2048, 1844), (0.5, 2, 512, 128), (0.0, 2, 512, 0)],
)
def test_code_params(rate, bits, block_length, info_bits):
    params = code_params(rate, ModulationScheme(bits_per_symbol=bits), 256, 0.9)
    assert params == (block_length, info_bits)
    assert params.rate == info_bits / block_length


@pytest.mark.parametrize("instance", range(100))
def test_mcs_matches_an_exact_count(instance):
    rng = np.random.default_rng(500 + instance)
    rate = Fraction(float(rng.uniform(0.05, 9.0)))
    stream_length = int(rng.integers(16, 300))
    beta = Fraction(9, 10)
    amc = AmcConfig(stream_length=stream_length)

    # Smallest square QAM whose capped efficiency m·β carries the rate, else 256-QAM.
    bits = next((m for m in (2, 4, 6, 8) if m * beta >= rate), 8)
    block_length = stream_length * bits
    target = block_length * min(rate / bits, beta)
    info_bits = target.numerator // target.denominator + (target.denominator != 1)

    scheme = select_modulation(float(rate), amc)
    assert scheme.bits_per_symbol == bits
    assert code_params(float(rate), scheme, stream_length, 0.9) == (block_length, info_bits)


def test_max_order_caps_the_alphabet():
    amc = AmcConfig(max_order_log=4)
    assert select_modulation(7.0, amc).bits_per_symbol == 4


def test_apply_backoff():
    assert apply_backoff(2.0, 0.0) == 2.0
    assert apply_backoff(2.0, 10.0) == pytest.approx(0.2)


def test_stream_mcs_reserves_the_crc():
    mcs = stream_mcs(3.0, AMC, StreamClass.PRIVATE, 16, group=1)
    assert mcs.coded_info_bits == 768
    assert mcs.payload_bits == 752
    assert mcs.enabled
    assert str(mcs) == "p1:16-QAM/768/1024"

    disabled = stream_mcs(0.01, AMC, StreamClass.COMMON, 16)
    assert disabled.coded_info_bits == 3
    assert not disabled.enabled


def test_split_common_payload():
    assert split_common_payload(1000, np.array([0.5, 0.3, 0.2])) == [500, 300, 200]
    split = split_common_payload(101, np.array([0.5, 0.3, 0.2]))
    assert sum(split) == 101
    for bits, share in zip(split, [0.5, 0.3, 0.2]):
        assert abs(bits - 101 * share) <= 1
    assert split_common_payload(10, np.zeros(2)) == [5, 5]
    assert split_common_payload(0, np.array([1.0, 1.0])) == [0, 0]


def report(common_rate, private_rates, split):
    private_rates = np.asarray(private_rates, dtype=float)
    split = np.asarray(split, dtype=float)
    return AverageRateReport(
        common_rate=common_rate,
        private_rates=private_rates,
        common_rate_split=split,
        mmf_value=float((split + private_rates).min()),
        num_samples=1,
    )


def test_assign_mcs_without_backoff():
    mcs = assign_mcs(report(3.0, [0.5, 8.0], [2.0, 1.0]), AMC)
    assert mcs.common.scheme.bits_per_symbol == 4
    assert [p.scheme.bits_per_symbol for p in mcs.private] == [2, 8]
    assert mcs.common.payload_bits == 752
    assert mcs.common_payload_split == [502, 250]
    assert mcs.group_payload(0) == 502 + 112
    assert mcs.stream_length == 256


def test_large_backoff_drops_every_stream_to_qpsk():
    amc = AMC.with_backoff(30.0, 30.0)
    mcs = assign_mcs(report(6.0, [7.0, 7.5, 5.0], [2.0, 2.0, 2.0]), amc)
    assert all(s.scheme.bits_per_symbol == 2 for s in [mcs.common, *mcs.private])


def test_backoff_candidates():
    assert backoff_candidates([1.0, 0.0]) == [(0.0, 0.0), (1.0, 1.0)]
    pairs = backoff_candidates([0.0, 1.0], per_class=True)
    assert pairs == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
    with pytest.raises(ValueError):
        backoff_candidates([])


def fake_evaluator(table):
    def evaluate(common_db, private_db):
        return table[common_db]

    return evaluate


def test_calibration_with_vacuous_target_keeps_zero_backoff():
    table = {0.0: (2.0, [0.9, 0.8]), 1.0: (1.5, [0.2, 0.1]), 2.0: (1.0, [0.0, 0.0])}
    result = calibrate_backoff(fake_evaluator(table), [0.0, 1.0, 2.0], 1.0)
    assert (result.backoff_common_db, result.backoff_private_db) == (0.0, 0.0)
    assert not result.violated
    assert len(result.points) == 3


def test_calibration_meets_the_target():
    table = {0.0: (2.0, [0.9, 0.8]), 1.0: (1.5, [0.2, 0.05]), 2.0: (1.2, [0.05, 0.0]), 3.0: (1.2, [0.0, 0.0])}
    result = calibrate_backoff(fake_evaluator(table), [0.0, 1.0, 2.0, 3.0], 0.1)
    assert result.backoff_common_db == 2.0
    assert not result.violated


def test_calibration_flags_an_unreachable_target():
    table = {0.0: (2.0, [0.9]), 1.0: (1.5, [0.5])}
    result = calibrate_backoff(fake_evaluator(table), [0.0, 1.0], 0.1)
    assert result.violated
    assert result.backoff_common_db == 1.0
    assert result.points[-1].max_bler == 0.5
