import pytest
from pydantic import ValidationError

from app.cli import apply_overrides, dump_config, get_preset, load_config, parse_backoff, parse_grid, resolve_config
from app.cli.config import strategies_for
from app.core.models.enums import Strategy


def test_parse_grid():
    assert parse_grid("10,20,30") == [10.0, 20.0, 30.0]
    assert parse_grid("0:10:5") == [0.0, 5.0, 10.0]
    assert parse_grid("0:1:0.1")[-1] == 1.0
    for text in ("5:0:1", "0:10:0", "0:10", ""):
        with pytest.raises(ValueError):
            parse_grid(text)


def test_parse_backoff():
    assert parse_backoff("1.5") == (1.5, 1.5)
    assert parse_backoff("1,2") == (1.0, 2.0)
    with pytest.raises(ValueError):
        parse_backoff("1,2,3")


def test_strategies_for():
    assert strategies_for("both") == [Strategy.RSMA, Strategy.SDMA]
    assert strategies_for("sdma") == [Strategy.SDMA]


def test_resolve_config_prefers_a_file(tmp_path):
    path = dump_config(get_preset("fig5").config, tmp_path / "campaign.json")
    assert resolve_config("fig2", str(path)).scenario_id == "fig5"
    assert resolve_config("fig2", None).scenario_id == "fig2"
    with pytest.raises(ValueError):
        resolve_config(None, None)


def test_config_file_round_trip(tmp_path):
    config = get_preset("fig6").config
    path = dump_config(config, tmp_path / "fig6.json")
    assert load_config(path).model_dump() == config.model_dump()


def test_overrides():
    config = apply_overrides(
        get_preset("fig2").config,
        strategy="sdma",
        grid=[10.0, 20.0],
        num_realizations=20,
        frame_length=128,
        seed=7,
        backoff=(1.0, 2.0),
        calibrate=True,
        optimizer_samples=50,
    )
    assert config.strategies == ["sdma"]
    assert config.operating_points == [10.0, 20.0]
    assert config.num_realizations == 20
    assert config.amc.stream_length == 128
    assert config.master_seed == 7
    assert (config.amc.backoff_common_db, config.amc.backoff_private_db) == (1.0, 2.0)
    assert config.calibrate_backoff
    assert config.optimizer.num_sample_channels == 50
    assert get_preset("fig2").config.num_realizations == 100


def test_overrides_are_validated():
    with pytest.raises(ValidationError):
        apply_overrides(get_preset("fig4").config, num_realizations=0)
    with pytest.raises(ValidationError):
        apply_overrides(get_preset("fig4").config, backoff=(-1.0, 0.0))
