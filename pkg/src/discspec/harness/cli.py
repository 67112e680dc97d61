"""Command line for the discspec experiments.

Exit codes: 0 all assertions pass, 1 an assertion failed, 2 configuration
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ..errors import ConfigError
from . import config as config_mod
from .pipelines import run

log = logging.getLogger("discspec")

SUBCOMMANDS = {
    "verify": ("verify_lemmas", "verify"),
    "spectrum": ("spectrum", "spectrum"),
    "sweep": ("sweep", "sweep"),
    "bgk": ("bgk", "bgk"),
    "symbol": ("symbol", "symbol"),
}

EXIT_OK, EXIT_ASSERT, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (kind, _) in SUBCOMMANDS.items():
        p = sub.add_parser(name, help=f"run a '{kind}' experiment")
        p.add_argument("--config", type=Path, help="JSON config (default: the bundled one)")
        p.add_argument("--seed", type=_u64, help="override the config seed")
        p.add_argument("--out", type=Path, default=None, help="output directory")
        p.add_argument("--format", choices=("csv", "json", "both"), default="both")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which matches the config-error code
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    kind, bundled_name = SUBCOMMANDS[args.command]
    try:
        path = args.config or config_mod.bundled(bundled_name)
        cfg = config_mod.load(path, args.seed)
        if cfg["experiment"] != kind:
            raise ConfigError(f"'{args.command}' needs experiment '{kind}', "
                              f"config has '{cfg['experiment']}'")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = args.out or Path(cfg.get("output", "out"))
    rep = run(cfg)
    for path in rep.write(out, args.format):
        log.info("wrote %s", path)
    failed = [r for r in rep.rows if not r.passed]
    for r in failed:
        print(f"FAIL {r.name}: {r.error or 'assertion failed'}", file=sys.stderr)
    print(f"{len(rep.rows)} rows, {len(failed)} failed -> {out}")
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
