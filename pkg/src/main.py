"""Command-line entry point: ``wmsn gen-frames | track | predict | simulate``."""

import argparse
import sys
from typing import Any, Sequence

from pydantic import ValidationError

from src.config import settings
from src.core.exceptions import EXIT_INTERNAL, EXIT_OK, ValidationFailed, WmsnError
from src.core.repository import parse_window
from src.core.schemas import SyntheticSection, TrackerSection, load_config
from src.deps import experiment_repo, frames_client, prediction_repo, tracking_repo
from src.utils import get_logger

logger = get_logger(__name__, settings.LOG_LEVEL, settings.LOG_FILE)


class ArgumentParser(argparse.ArgumentParser):
    """Reports bad arguments as validation failures instead of exiting."""

    def error(self, message: str) -> None:
        raise ValidationFailed(f"{self.prog}: {message}")


def _override(section: Any, **changes: Any) -> Any:
    data = section.model_dump()
    data.update({key: value for key, value in changes.items() if value is not None})
    try:
        return type(section).model_validate(data)
    except ValidationError as error:
        problems = [f"{'.'.join(str(part) for part in item['loc'])}: {item['msg']}" for item in error.errors()]
        raise ValidationFailed("invalid arguments", problems)


def cmd_gen_frames(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    synthetic: SyntheticSection = _override(
        config.synthetic,
        frames=args.frames,
        width=args.size,
        height=args.size,
        sigma=args.sigma,
        speed=args.speed,
        seed=args.seed,
    )
    outcome = tracking_repo(args.out).generate_frames(synthetic.spec(), frames_client(args.out))
    x, y, w, h = outcome.initial_window
    print(f"wrote {outcome.frames} frame(s) to {outcome.directory}")
    print(f"initial window: {x},{y},{w},{h}")
    return EXIT_OK


def cmd_track(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    tracker: TrackerSection = _override(config.tracker, metadata_only=True if args.metadata_only else None)
    outcome = tracking_repo(args.out).track(frames_client(args.frames), parse_window(args.window), tracker.params())
    print(f"compression ratio: {outcome.ratio:.6f} ({outcome.compressed_bytes} of {outcome.raw_bytes} bytes)")
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    outcome, text = prediction_repo().predict(args.trace, config.predictor.params(), args.out)
    if outcome.output is None:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    config = load_config(args.config).with_overrides(base_seed=args.seed, output_dir=args.out)
    out_dir = config.experiment.output_dir or settings.DEFAULT_OUTPUT_DIR
    outcome = experiment_repo(out_dir).simulate(config, jobs=args.jobs, snapshots=args.snapshot)
    for path in outcome.files:
        print(path)
    return EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="wmsn", description="WMSN routing simulator with CamShift video traffic")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    gen = commands.add_parser("gen-frames", help="write a synthetic moving-blob PGM sequence")
    gen.add_argument("--out", required=True, help="frame directory")
    gen.add_argument("--config", help="experiment config (synthetic.* keys)")
    gen.add_argument("--frames", type=int)
    gen.add_argument("--size", type=int, help="frame width and height")
    gen.add_argument("--sigma", type=float)
    gen.add_argument("--speed", type=float)
    gen.add_argument("--seed", type=int)
    gen.set_defaults(handler=cmd_gen_frames)

    track = commands.add_parser("track", help="track a target and write the compressed stream")
    track.add_argument("--frames", required=True, help="directory of .pgm frames")
    track.add_argument("--window", required=True, help="initial window x,y,w,h")
    track.add_argument("--out", required=True, help="output directory")
    track.add_argument("--config", help="experiment config (tracker.* keys)")
    track.add_argument("--metadata-only", action="store_true", help="send window headers without ROI pixels")
    track.set_defaults(handler=cmd_track)

    predict = commands.add_parser("predict", help="replay an RBA trace through the predictor")
    predict.add_argument("--trace", required=True, help="one RBA value per line")
    predict.add_argument("--config", help="experiment config (predictor.* keys)")
    predict.add_argument("--out", help="CSV file; standard output when omitted")
    predict.set_defaults(handler=cmd_predict)

    simulate = commands.add_parser("simulate", help="run the configured trial matrix")
    simulate.add_argument("--config", required=True)
    simulate.add_argument("--out", help="output directory, overrides experiment.output_dir")
    simulate.add_argument("--seed", type=int, help="overrides experiment.base_seed")
    simulate.add_argument("--jobs", type=_positive_int, default=settings.DEFAULT_JOBS)
    simulate.add_argument("--snapshot", action="store_true", help="write the final world state of every trial")
    simulate.set_defaults(handler=cmd_simulate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logger.info(f"wmsn {args.command} started")
        code = args.handler(args)

    except WmsnError as error:
        logger.error(f"exit {error.exit_code}: {error.detail}")
        print(error.detail, file=sys.stderr)
        return error.exit_code

    except Exception as error:
        logger.exception(f"internal error: {error!r}")
        print(f"internal error: {error!r}", file=sys.stderr)
        return EXIT_INTERNAL

    else:
        logger.info(f"wmsn {args.command} finished")
        return code


if __name__ == "__main__":
    sys.exit(main())
