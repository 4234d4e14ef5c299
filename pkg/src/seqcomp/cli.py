"""Command-line entry points: serve the API, print dataset statistics.

Flags fall back to environment variables named SEQCOMP_<FLAG> (upper-cased,
dashes to underscores), e.g. SEQCOMP_DATA_DIR and SEQCOMP_PORT.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import dataset as ds
from . import kernels


def _env(name: str, default=None):
    return os.environ.get(f"SEQCOMP_{name.upper().replace('-', '_')}", default)


def _add_data_dir(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--data-dir",
        default=_env("data-dir"),
        help="directory of dataset manifests (*.json) [env: SEQCOMP_DATA_DIR]",
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="seqcomp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the analysis HTTP service")
    _add_data_dir(serve)
    serve.add_argument("--host", default=_env("host", "127.0.0.1"))
    serve.add_argument("--port", type=int, default=int(_env("port", "8000")))
    serve.add_argument(
        "--snapshot-dir",
        default=_env("snapshot-dir"),
        help="persist sessions as JSON files here [env: SEQCOMP_SNAPSHOT_DIR]",
    )
    serve.add_argument(
        "--ui-dir",
        default=_env("ui-dir"),
        help="serve a built frontend bundle at /ui [env: SEQCOMP_UI_DIR]",
    )

    stats = sub.add_parser("stats", help="print sequence count and average length")
    _add_data_dir(stats)
    stats.add_argument("--dataset", required=True, help="dataset name from the manifest dir")
    stats.add_argument("--min-len", type=int, default=1)
    stats.add_argument("--max-len", type=int, default=None)

    info = sub.add_parser("info", help="show kernel backend and dataset names")
    _add_data_dir(info)

    args = parser.parse_args(argv)
    if args.command in ("serve", "stats", "info") and not args.data_dir:
        parser.error("--data-dir (or SEQCOMP_DATA_DIR) is required")

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        app = create_app(args.data_dir, args.snapshot_dir, args.ui_dir)
        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    if args.command == "stats":
        manifests = ds.load_manifest_dir(args.data_dir)
        if args.dataset not in manifests:
            print(f"unknown dataset {args.dataset!r}; have: {sorted(manifests)}", file=sys.stderr)
            return 2
        data = ds.load_dataset(manifests[args.dataset])
        data = ds.filter_by_length(data, args.min_len, args.max_len)
        count, avg = ds.stats(data)
        print(f"dataset: {args.dataset}")
        print(f"sequences: {count}")
        print(f"avg length: {avg:.4f}")
        print(f"alphabet: {len(data.alphabet)} event types")
        return 0

    manifests = ds.load_manifest_dir(args.data_dir)
    print(f"kernel backend: {kernels.backend_name()} (available: {kernels.available_backends()})")
    print(f"datasets: {sorted(manifests)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
