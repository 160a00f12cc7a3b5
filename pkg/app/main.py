"""
Command-line front end.

    python -m app.main run fig4 --mc 20 --seed 7
    python -m app.main run --config my_campaign.json --strategy sdma --out results/
    python -m app.main bounds fig5 --snr-grid 25,35

Exit codes: 0 ok, 2 configuration error, 3 runtime failure, 4 unknown
scenario, 5 unwritable output.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd
from pydantic import ValidationError

from app.cli.config import apply_overrides, parse_backoff, parse_grid, resolve_config
from app.cli.plotting import plot_bounds, plot_campaign
from app.cli.presets import UnknownScenarioError, preset_names
from app.core.models.campaign import CampaignConfig
from app.core.precoder import PrecoderFileError, shannon_curve
from app.core.settings import get_settings
from app.core.sim import CampaignError, run_campaign, write_results_csv

logger = logging.getLogger("app.main")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_UNKNOWN_SCENARIO = 4
EXIT_OUTPUT = 5


class OutputError(Exception):
    """Raised when the output directory cannot be written."""

    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rslink",
        description="Link-level simulation of RSMA and SDMA multigroup multicast.",
    )
    parser.add_argument("--log-level", default=None, help="Overrides RSLINK_LOG_LEVEL.")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("scenario_name", nargs="?", metavar="SCENARIO", help=f"One of {', '.join(preset_names())}.")
        sub.add_argument("--scenario", default=None, help="Preset name (same as the positional).")
        sub.add_argument("--config", default=None, help="JSON campaign file; wins over a preset.")
        sub.add_argument("--snr-grid", default=None, help="'10,20,30' or 'start:stop:step'.")
        sub.add_argument("--seed", type=int, default=None, help="Master seed.")
        sub.add_argument("--opt-samples", type=int, default=None, help="Channel samples of the optimizer.")
        sub.add_argument("--out", default=None, help="Output directory (default RSLINK_OUTPUT_DIR).")
        sub.add_argument("--precoders", default=None, help="Load precoders from this file.")

    run = commands.add_parser("run", help="Monte-Carlo campaign: CSV and SVG per scenario.")
    common(run)
    run.add_argument("--strategy", choices=["rsma", "sdma", "both"], default=None)
    run.add_argument("--mc", type=int, default=None, help="Realizations per operating point.")
    run.add_argument("--frame-len", type=int, default=None, help="Channel uses S per frame.")
    run.add_argument("--backoff", default=None, help="Back-off in dB: 'x' or 'common,private'.")
    run.add_argument("--calibrate-backoff", action="store_true", help="Search the back-off grid per point.")
    run.add_argument("--workers", type=int, default=None, help="Overrides RSLINK_WORKERS.")

    bounds = commands.add_parser("bounds", help="Average-rate MMF values of RSMA and SDMA only.")
    common(bounds)
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(levelname)s - %(name)s - %(message)s",
    )


def campaign_from_args(args: argparse.Namespace) -> CampaignConfig:
    config = resolve_config(args.scenario or args.scenario_name, args.config)
    return apply_overrides(
        config,
        strategy=getattr(args, "strategy", None),
        grid=parse_grid(args.snr_grid) if args.snr_grid else None,
        num_realizations=getattr(args, "mc", None),
        frame_length=getattr(args, "frame_len", None),
        seed=args.seed,
        backoff=parse_backoff(args.backoff) if getattr(args, "backoff", None) else None,
        calibrate=getattr(args, "calibrate_backoff", False),
        precoder_path=args.precoders,
        optimizer_samples=args.opt_samples,
    )


def output_dir(args: argparse.Namespace) -> Path:
    path = Path(args.out or get_settings().output_dir)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as error:
        raise OutputError(f"cannot create {path}: {error}") from error
    return path


def command_run(args: argparse.Namespace, campaign: CampaignConfig, out: Path) -> int:
    result = run_campaign(campaign, workers=args.workers)

    try:
        write_results_csv(result, out / f"{campaign.scenario_id}.csv")
        plot_campaign(result, out / f"{campaign.scenario_id}.svg")
    except OSError as error:
        raise OutputError(str(error)) from error
    return EXIT_OK


def command_bounds(args: argparse.Namespace, campaign: CampaignConfig, out: Path) -> int:
    curve = shannon_curve(campaign)

    frame = pd.DataFrame(
        [
            {
                "scenario_id": campaign.scenario_id,
                campaign.operating_axis: c.point,
                "rsma_bound": c.rsma,
                "sdma_bound": c.sdma,
            }
            for c in curve
        ]
    )
    try:
        frame.to_csv(out / f"{campaign.scenario_id}_bounds.csv", index=False, lineterminator="\n")
        plot_bounds(curve, campaign.operating_axis, campaign.scenario_id, out / f"{campaign.scenario_id}_bounds.svg")
    except OSError as error:
        raise OutputError(str(error)) from error
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level or get_settings().log_level)
    handler = command_run if args.command == "run" else command_bounds

    try:
        campaign = campaign_from_args(args)
    except UnknownScenarioError as error:
        logger.error(error.args[0])
        return EXIT_UNKNOWN_SCENARIO
    except (ValidationError, ValueError, OSError) as error:
        logger.error("configuration error: %s", error)
        return EXIT_CONFIG

    try:
        return handler(args, campaign, output_dir(args))
    except OutputError as error:
        logger.error("cannot write output: %s", error)
        return EXIT_OUTPUT
    except (CampaignError, PrecoderFileError) as error:
        logger.error("configuration error: %s", error)
        return EXIT_CONFIG
    except Exception as error:
        logger.exception("run failed: %s", error)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
