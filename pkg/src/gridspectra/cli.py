"""Command-line front end: a thin client over the verification service.

By default requests are dispatched in process to the same handlers the HTTP
service exposes; --server (or GRIDSPECTRA_SERVER) routes them to a running
instance instead.  Exit codes: 0 success/affirmative, 1 check-negative,
2 usage, 3 I/O-or-parse.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import httpx
from pydantic import BaseModel

from .errors import GridspectraError, error_kind
from .reconstruct import STAGES, VERDICT_GRID_EXTENSION
from .service.app import (
    handle_check,
    handle_construct,
    handle_lines,
    handle_pipeline,
    handle_spectrum,
)
from .service.models import (
    CheckRequest,
    CheckResponse,
    ConstructRequest,
    ConstructResponse,
    LinesRequest,
    LinesResponse,
    PipelineRequest,
    PipelineResponse,
    SpectrumRequest,
    SpectrumResponse,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_IO = 3

_EXIT_BY_ERROR_KIND = {
    "parse": EXIT_IO,
    "invalid-parameter": EXIT_USAGE,
    "resource-limit": EXIT_IO,
    "precondition": EXIT_NEGATIVE,
    "unsupported-claim": EXIT_USAGE,
    "error": EXIT_IO,
}

_LOCAL_HANDLERS = {
    "/construct": handle_construct,
    "/spectrum": handle_spectrum,
    "/check": handle_check,
    "/lines": handle_lines,
    "/pipeline": handle_pipeline,
}


class ServiceError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind

    @property
    def exit_code(self) -> int:
        return _EXIT_BY_ERROR_KIND.get(self.kind, EXIT_IO)


class Client:
    """Dispatches requests locally or to a remote server."""

    def __init__(self, server: str | None):
        self.server = server.rstrip("/") if server else None

    def call(self, path: str, request: BaseModel, response_type: type[BaseModel]) -> BaseModel:
        if self.server is None:
            try:
                return _LOCAL_HANDLERS[path](request)
            except GridspectraError as exc:
                raise ServiceError(error_kind(exc), str(exc)) from exc
        try:
            resp = httpx.post(self.server + path, json=request.model_dump(), timeout=300.0)
        except httpx.HTTPError as exc:
            raise ServiceError("error", f"cannot reach server: {exc}") from exc
        if resp.status_code == 200:
            return response_type.model_validate(resp.json())
        if resp.status_code == 400:
            data = resp.json()
            raise ServiceError(data.get("error", "error"), data.get("message", resp.text))
        if resp.status_code == 422:
            raise ServiceError("invalid-parameter", resp.text)
        raise ServiceError("error", f"server returned status {resp.status_code}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridspectra",
        description="construct, certify and classify clique extensions of grid graphs",
    )
    parser.add_argument(
        "--server",
        default=os.environ.get("GRIDSPECTRA_SERVER"),
        help="base URL of a running service; default is in-process dispatch",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named graph and write it as an edge list")
    p.add_argument("kind", choices=["grid", "extension", "shrikhande", "complete"])
    p.add_argument("--m", type=int, help="order for grid/complete")
    p.add_argument("--s", type=int, help="clique size for extension")
    p.add_argument("--t", type=int, help="grid parameter for extension")
    p.add_argument("-o", "--output", required=True, help="output path")

    p = sub.add_parser("spectrum", help="print the certified integral spectrum")
    p.add_argument("input")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)

    p = sub.add_parser("check", help="run one named pipeline stage")
    p.add_argument("input")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--stage", required=True)

    p = sub.add_parser("lines", help="print the detected line structure")
    p.add_argument("input")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("pipeline", help="run the full decision pipeline")
    p.add_argument("input")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--full-report", action="store_true", help="run stages past the first failure")

    return parser


def _require_params(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.s is None or args.s < 2:
        parser.error("--s must be an integer >= 2")
    if args.t is None or args.t < 1:
        parser.error("--t must be an integer >= 1")


def _read_input(path: str) -> tuple[str, str]:
    """(text, format) of an input file; .g6 selects graph6."""
    fmt = "graph6" if Path(path).suffix == ".g6" else "edge-list"
    try:
        return Path(path).read_text(encoding="utf-8"), fmt
    except OSError as exc:
        raise ServiceError("error", f"cannot read {path}: {exc}") from exc


def _cmd_construct(client: Client, parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    if args.kind in ("grid", "complete"):
        minimum = 2 if args.kind == "grid" else 1
        if args.m is None or args.m < minimum:
            parser.error(f"--m must be an integer >= {minimum} for {args.kind}")
    elif args.kind == "extension":
        _require_params(parser, args)
    req = ConstructRequest(kind=args.kind, m=args.m, s=args.s, t=args.t)
    resp = client.call("/construct", req, ConstructResponse)
    try:
        Path(args.output).write_text(resp.edge_list, encoding="utf-8")
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.output}: {resp.n} vertices, {resp.edge_count} edges")
    return EXIT_OK


def _cmd_spectrum(client: Client, parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    if (args.s is None) != (args.t is None):
        parser.error("--s and --t must be given together")
    if args.s is not None:
        _require_params(parser, args)
    text, fmt = _read_input(args.input)
    req = SpectrumRequest(graph_text=text, format=fmt, s=args.s, t=args.t)
    resp = client.call("/spectrum", req, SpectrumResponse)
    if not resp.integral:
        print("spectrum is not integral")
        return EXIT_NEGATIVE
    for theta, m in resp.spectrum:
        print(f"{theta} {m}")
    if resp.matches_expected is None:
        return EXIT_OK
    if resp.matches_expected:
        print(f"matches expected spectrum for s={args.s}, t={args.t}")
        return EXIT_OK
    print(f"does NOT match expected spectrum for s={args.s}, t={args.t}")
    return EXIT_NEGATIVE


def _cmd_check(client: Client, parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _require_params(parser, args)
    if args.stage not in STAGES:
        parser.error(f"unknown stage {args.stage!r}; valid: {', '.join(STAGES)}")
    text, fmt = _read_input(args.input)
    req = CheckRequest(graph_text=text, format=fmt, s=args.s, t=args.t, stage=args.stage)
    resp = client.call("/check", req, CheckResponse)
    status = "SKIP" if resp.skipped else ("PASS" if resp.passed else "FAIL")
    line = f"{status} {resp.stage}"
    if resp.witness:
        line += f": {resp.witness}"
    print(line)
    return EXIT_OK if resp.passed else EXIT_NEGATIVE


def _cmd_lines(client: Client, parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _require_params(parser, args)
    text, fmt = _read_input(args.input)
    req = LinesRequest(graph_text=text, format=fmt, s=args.s, t=args.t)
    resp = client.call("/lines", req, LinesResponse)
    print(f"delta={resp.delta} alpha={resp.alpha}")
    print(f"q[1..{len(resp.q)}]={list(resp.q)}")
    for idx, vertices in enumerate(resp.lines):
        flag = " (order out of range)" if idx in resp.out_of_range else ""
        print(f"line {idx} (order {len(vertices)}{flag}): {' '.join(map(str, vertices))}")
    return EXIT_OK


def _cmd_pipeline(client: Client, parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _require_params(parser, args)
    text, fmt = _read_input(args.input)
    req = PipelineRequest(
        graph_text=text, format=fmt, s=args.s, t=args.t, full_report=args.full_report
    )
    resp = client.call("/pipeline", req, PipelineResponse)
    if args.json:
        print(json.dumps(resp.model_dump(by_alias=True), indent=2))
    else:
        below = "yes" if resp.stages and resp.stages[0].below_bound_flag else "no"
        print(f"s={resp.s} t={resp.t} below-guaranteed-regime={below}")
        for entry in resp.stages:
            status = "SKIP" if entry.skipped else ("PASS" if entry.passed else "FAIL")
            line = f"{status} {entry.stage}"
            if entry.witness:
                line += f": {entry.witness}"
            print(line)
        print(f"verdict: {resp.verdict}")
    return EXIT_OK if resp.verdict == VERDICT_GRID_EXTENSION else EXIT_NEGATIVE


_COMMANDS = {
    "construct": _cmd_construct,
    "spectrum": _cmd_spectrum,
    "check": _cmd_check,
    "lines": _cmd_lines,
    "pipeline": _cmd_pipeline,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    client = Client(args.server)
    try:
        return _COMMANDS[args.command](client, parser, args)
    except ServiceError as exc:
        print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
