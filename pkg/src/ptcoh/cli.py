"""Command line client for the ptcoh service.

The CLI is a thin client: every command (except ``serve``) builds a JSON
request and posts it to the service. By default the service runs
in-process through an ASGI transport, so no daemon is needed; set the
``PTCOH_SERVER`` environment variable to a base URL to target a running
instance instead. ``ptcoh serve`` starts one.

Exit codes: 0 success, 2 invalid arguments, 3 numerical invariant
violation reported by the service, 1 anything else. Data goes to the
output stream (stdout or ``--output``); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import asyncio
import functools
import json
import math
import os
import sys
from pathlib import Path

from . import __version__
from .sweeps import format_csv

UNITS_NOTE = (
    "Angles are in radians. Time is dimensionless, measured in units where "
    "the transverse (sigma-x) coupling of the generator is 1."
)
QUARTER_TURN = math.pi / 4.0
CONTOUR_KEYS = ("angles", "times", "C_T", "C_G", "C_L")


class CliError(Exception):
    """Carries the process exit code alongside the message."""

    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


@functools.lru_cache(maxsize=1)
def _local_app():
    from .service.app import create_app

    return create_app()


def _response_json(resp) -> dict:
    try:
        return resp.json()
    except ValueError:
        return {"detail": resp.text}


async def _post_inprocess(path: str, payload: dict):
    import httpx

    transport = httpx.ASGITransport(app=_local_app())
    async with httpx.AsyncClient(transport=transport, base_url="http://ptcoh.local") as client:
        resp = await client.post(path, json=payload, timeout=None)
        return resp.status_code, _response_json(resp)


def _post(path: str, payload: dict):
    base_url = os.environ.get("PTCOH_SERVER")
    if base_url:
        import httpx

        try:
            resp = httpx.post(base_url.rstrip("/") + path, json=payload, timeout=600.0)
        except httpx.HTTPError as exc:
            raise CliError(1, f"cannot reach service at {base_url}: {exc}")
        return resp.status_code, _response_json(resp)
    return asyncio.run(_post_inprocess(path, payload))


def _detail(data) -> "tuple[str, str]":
    detail = data.get("detail") if isinstance(data, dict) else None
    if isinstance(detail, dict):
        return str(detail.get("type", "error")), str(detail.get("message", detail))
    if isinstance(detail, list):
        parts = []
        for item in detail:
            loc = ".".join(str(x) for x in item.get("loc", []) if x != "body")
            parts.append(f"{loc}: {item.get('msg', '')}" if loc else str(item.get("msg", "")))
        return "validation", "; ".join(parts)
    return "error", str(detail if detail is not None else data)


def _request(path: str, payload: dict) -> dict:
    status, data = _post(path, payload)
    if status == 200:
        return data
    kind, message = _detail(data)
    if status in (400, 422):
        raise CliError(2, f"invalid request: {message}")
    if status == 500 and kind == "numerics":
        raise CliError(3, f"numerical invariant violation: {message}")
    raise CliError(1, f"service error {status}: {message}")


def _write_output(text: str, path: "str | None") -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    Path(path).write_text(text)
    print(f"wrote {path} ({len(text)} bytes)", file=sys.stderr)


def _resolve_threads(flag_value: "int | None") -> "int | None":
    env = os.environ.get("PTCOH_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise CliError(2, f"PTCOH_THREADS must be an integer, got {env!r}")
    else:
        value = flag_value
    if value is not None and value < 1:
        raise CliError(2, f"thread count must be >= 1, got {value}")
    return value


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CliError(2, message)


def _check_common(args) -> None:
    _require(args.r >= 0.0, f"--r must be >= 0, got {args.r}")
    _require(0.0 <= args.angle <= 2.0 * math.pi, f"--angle must lie in [0, 2*pi], got {args.angle}")


def _check_grid(args) -> None:
    _require(args.dt > 0.0, f"--dt must be positive, got {args.dt}")
    if args.t_max is not None:
        _require(args.t_max > 0.0, f"--t-max must be positive, got {args.t_max}")
        _require(args.dt <= args.t_max * (1.0 + 1e-9), f"--dt={args.dt} exceeds --t-max={args.t_max}")
    n = 2 if args.state == "bell" else 3
    _require(1 <= args.qubit <= n, f"--qubit must lie in 1..{n} for --state {args.state}")


def _kv_lines(pairs) -> str:
    lines = []
    for key, value in pairs:
        text = value if isinstance(value, str) else repr(value)
        lines.append(f"{key} = {text}\n")
    return "".join(lines)


def cmd_evolve(args) -> int:
    _check_common(args)
    _check_grid(args)
    _require(args.pair is None or args.state == "ghz", "--pair requires --state ghz")
    payload = {
        "state": args.state,
        "angle": args.angle,
        "r": args.r,
        "qubit": args.qubit,
        "t_max": args.t_max,
        "dt": args.dt,
        "method": args.method,
        "pair": args.pair,
        "threads": _resolve_threads(args.threads),
    }
    data = _request("/api/evolve", payload)
    text = format_csv(
        data["times"],
        data["c_total"],
        data["c_global"],
        data["c_local"],
        data["purity"],
        data.get("success_probability"),
    )
    _write_output(text, args.output)
    return 0


def cmd_contour(args) -> int:
    _check_common(args)
    _check_grid(args)
    _require(args.angle_steps >= 2, f"--angle-steps must be >= 2, got {args.angle_steps}")
    payload = {
        "state": args.state,
        "r": args.r,
        "angle_steps": args.angle_steps,
        "t_max": args.t_max,
        "dt": args.dt,
        "qubit": args.qubit,
        "threads": _resolve_threads(args.threads),
    }
    data = _request("/api/contour", payload)
    text = json.dumps({key: data[key] for key in CONTOUR_KEYS}) + "\n"
    _write_output(text, args.output)
    return 0


def cmd_dilate(args) -> int:
    _check_common(args)
    _require(args.t >= 0.0, f"--t must be >= 0, got {args.t}")
    payload = {
        "r": args.r,
        "t": args.t,
        "check": args.check,
        "state": args.state,
        "angle": args.angle,
        "qubit": args.qubit,
    }
    data = _request("/api/dilate", payload)
    pairs = [
        ("r", args.r),
        ("t", args.t),
        ("theta", data["theta"]),
        ("phi", data["phi"]),
        ("success_scale", data["success_scale"]),
        ("success_probability", data["success_probability"]),
    ]
    if data.get("max_deviation") is not None:
        pairs.append(("max_deviation", data["max_deviation"]))
    _write_output(_kv_lines(pairs), args.output)
    return 0


def cmd_tomo(args) -> int:
    _require(0.0 <= args.angle <= 2.0 * math.pi, f"--angle must lie in [0, 2*pi], got {args.angle}")
    _require(args.noise >= 0.0, f"--noise must be >= 0, got {args.noise}")
    payload = {
        "state": args.state,
        "angle": args.angle,
        "noise": args.noise,
        "seed": args.seed,
    }
    data = _request("/api/tomo", payload)
    pairs = [
        ("state", args.state),
        ("angle", args.angle),
        ("noise_sigma", data["noise_sigma"]),
        ("seed", data["seed"]),
        ("n_labels", data["n_labels"]),
        ("iterations", data["iterations"]),
        ("residual", data["residual"]),
        ("fidelity", data["fidelity"]),
    ]
    _write_output(_kv_lines(pairs), args.output)
    return 0


def cmd_state(args) -> int:
    _require(
        (args.export_path is None) != (args.import_path is None),
        "exactly one of --export or --import is required",
    )
    if args.export_path is not None:
        _require(0.0 <= args.angle <= 2.0 * math.pi, f"--angle must lie in [0, 2*pi], got {args.angle}")
        _require(0.0 <= args.epsilon <= 1.0, f"--epsilon must lie in [0, 1], got {args.epsilon}")
        _require(args.qubits >= 1, f"--qubits must be >= 1, got {args.qubits}")
        kind = {"bell": "bell", "ghz": "ghz", "pps": "pseudopure"}[args.state]
        payload = {
            "kind": kind,
            "angle": args.angle,
            "epsilon": args.epsilon,
            "n_qubits": args.qubits,
        }
        data = _request("/api/state/make", payload)
        _write_output(json.dumps(data["state"]) + "\n", args.export_path)
        return 0
    try:
        raw = Path(args.import_path).read_text()
    except OSError as exc:
        raise CliError(2, f"cannot read {args.import_path}: {exc}")
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliError(2, f"{args.import_path} is not valid JSON: {exc}")
    data = _request("/api/state/validate", payload)
    print(f"valid state: {data['state']['n_qubits']} qubit(s), purity {data['purity']!r}", file=sys.stderr)
    _write_output(json.dumps(data["state"]) + "\n", args.output)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default="-", metavar="PATH",
                        help="write data here instead of stdout ('-' for stdout)")


def _add_family(parser: argparse.ArgumentParser, choices=("bell", "ghz"), required=True) -> None:
    parser.add_argument("--state", choices=list(choices), required=required,
                        default=None if required else "bell",
                        help="initial state family")
    parser.add_argument("--angle", type=float, default=QUARTER_TURN, metavar="RAD",
                        help="family mixing angle in radians (default pi/4)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptcoh",
        description="Coherence dynamics under local PT-symmetric evolution.",
        epilog=UNITS_NOTE,
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("evolve", help="time sweep of coherence measures, CSV output",
                       description="Sweep t from 0 to t-max and emit t,C_T,C_G,C_L,purity CSV.",
                       epilog=UNITS_NOTE)
    _add_family(p)
    p.add_argument("--r", type=float, required=True, help="gain/loss strength (>= 0)")
    p.add_argument("--qubit", type=int, default=1, help="which qubit evolves (default 1)")
    p.add_argument("--t-max", dest="t_max", type=float, default=None,
                   help="sweep horizon (default 10 for r<1, else 25)")
    p.add_argument("--dt", type=float, default=0.05, help="time step (default 0.05)")
    p.add_argument("--method", choices=["direct", "dilation"], default="direct",
                   help="direct renormalized evolution or the ancilla circuit")
    p.add_argument("--pair", choices=["12", "13", "23"], default=None,
                   help="report the reduced two-qubit state of this pair (ghz only)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default all cores; PTCOH_THREADS overrides)")
    _add_output(p)
    p.set_defaults(handler=cmd_evolve)

    p = sub.add_parser("contour", help="angle-time coherence grid, JSON output",
                       description="Evaluate C_T, C_G, C_L over a [0,2*pi] x [0,t-max] grid.",
                       epilog=UNITS_NOTE)
    _add_family(p)
    p.add_argument("--r", type=float, required=True, help="gain/loss strength (>= 0)")
    p.add_argument("--angle-steps", dest="angle_steps", type=int, default=128,
                   help="number of angle grid points (default 128)")
    p.add_argument("--qubit", type=int, default=1, help="which qubit evolves (default 1)")
    p.add_argument("--t-max", dest="t_max", type=float, default=None,
                   help="grid horizon (default 10 for r<1, else 25)")
    p.add_argument("--dt", type=float, default=0.05, help="time step (default 0.05)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default all cores; PTCOH_THREADS overrides)")
    _add_output(p)
    p.set_defaults(handler=cmd_contour)

    p = sub.add_parser("dilate", help="dilation circuit angles and success probability",
                       description="Report circuit angles theta/phi, the success scale and "
                                   "probability, and optionally the deviation from direct evolution.",
                       epilog=UNITS_NOTE)
    p.add_argument("--r", type=float, required=True, help="gain/loss strength (>= 0)")
    p.add_argument("--t", type=float, required=True, help="evolution time (>= 0)")
    p.add_argument("--check", action="store_true",
                   help="also run the circuit and compare against direct evolution")
    _add_family(p, required=False)
    p.add_argument("--qubit", type=int, default=1, help="target qubit (default 1)")
    _add_output(p)
    p.set_defaults(handler=cmd_dilate)

    p = sub.add_parser("tomo", help="tomography round trip fidelity report",
                       description="Measure all Pauli expectations of a family state, optionally "
                                   "add Gaussian noise, reconstruct, and report the fidelity.",
                       epilog=UNITS_NOTE)
    _add_family(p)
    p.add_argument("--noise", type=float, default=0.0, help="Gaussian noise sigma (default 0)")
    p.add_argument("--seed", type=int, default=0, help="noise seed (default 0)")
    _add_output(p)
    p.set_defaults(handler=cmd_tomo)

    p = sub.add_parser("state", help="export or validate state JSON files",
                       description="Write a family or pseudopure state as JSON, or import a "
                                   "state file, validate it, and emit its canonical form.",
                       epilog=UNITS_NOTE)
    p.add_argument("--export", dest="export_path", metavar="PATH", default=None,
                   help="write the constructed state to this file")
    p.add_argument("--import", dest="import_path", metavar="PATH", default=None,
                   help="read and validate a state file")
    p.add_argument("--state", choices=["bell", "ghz", "pps"], default="bell",
                   help="state to construct for --export (default bell)")
    p.add_argument("--angle", type=float, default=QUARTER_TURN, metavar="RAD",
                   help="family mixing angle in radians (default pi/4)")
    p.add_argument("--epsilon", type=float, default=1.0,
                   help="pseudopure purity parameter in [0, 1] (pps only)")
    p.add_argument("--qubits", type=int, default=3,
                   help="register size for pps states (default 3)")
    _add_output(p)
    p.set_defaults(handler=cmd_state)

    p = sub.add_parser("serve", help="run the HTTP service",
                       description="Start the FastAPI service with uvicorn.",
                       epilog=UNITS_NOTE)
    p.add_argument("--host", default="127.0.0.1", help="bind address (default 127.0.0.1)")
    p.add_argument("--port", type=int, default=8000, help="port (default 8000)")
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "handler", None) is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"ptcoh: {exc}", file=sys.stderr)
        return exc.code
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
