"""Command-line front end.

The CLI is a thin client of the HTTP service: it parses files and
literals, builds a request, and sends it either to an in-process copy of
the app (the default, no server needed) or to a remote instance given
with --server. Output is deterministic JSON on stdout: keys sorted,
floats rendered at 12 significant digits. Exit codes: 0 success, 1
domain violations (the message carries the convergence radius when one
exists), 2 parse errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Any

import httpx

#: Warn when the requested time eats this fraction of the certified disc;
#: the truncation order grows like log(tol)/log(|t|/radius) there.
BOUNDARY_WARN = 0.95


def parse_complex(text: str) -> complex:
    """Whitespace-free complex literal: 0.5, -2e-3, 0.3+0.2i, 1-2i, 2i."""
    if text != text.strip() or " " in text:
        raise argparse.ArgumentTypeError(f"complex literal may not contain spaces: {text!r}")
    normalized = text.replace("i", "j").replace("I", "j")
    try:
        return complex(normalized)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid complex literal: {text!r}")


def parse_complex_list(text: str) -> list[complex]:
    return [parse_complex(part) for part in text.split(",")]


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list: {text!r}")


def _round_floats(obj: Any) -> Any:
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_floats(v) for v in obj]
    return obj


def print_json(payload: Any) -> None:
    print(json.dumps(_round_floats(payload), sort_keys=True))


def _complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def load_field_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read field file {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def post(server: str | None, path: str, payload: dict) -> httpx.Response:
    """POST to the remote server, or to the in-process app when none given."""

    async def go() -> httpx.Response:
        if server:
            transport = None
            base_url = server.rstrip("/")
        else:
            from .service.app import create_app

            transport = httpx.ASGITransport(app=create_app())
            base_url = "http://lieflow.internal"
        async with httpx.AsyncClient(transport=transport, base_url=base_url,
                                     timeout=None) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _handle_error(resp: httpx.Response) -> int:
    if resp.status_code == 400:
        detail = resp.json().get("detail", {})
        message = detail.get("error", "domain violation")
        radius = detail.get("radius")
        suffix = ""
        if isinstance(radius, (int, float)) and "radius" not in message:
            suffix = f" (radius {radius:.12g})"
        print(f"error: {message}{suffix}", file=sys.stderr)
        return 1
    if resp.status_code == 422:
        print(f"error: invalid request: {resp.text}", file=sys.stderr)
        return 2
    print(f"error: service returned {resp.status_code}: {resp.text}", file=sys.stderr)
    return 1


def cmd_flow(args: argparse.Namespace) -> int:
    payload = {
        "field": load_field_file(args.field),
        "x0": [_complex_json(z) for z in args.x0],
        "t": _complex_json(args.t),
        "tol": args.tol,
        "order_cap": args.order_cap,
    }
    resp = post(args.server, "/flow", payload)
    if resp.status_code != 200:
        return _handle_error(resp)
    body = resp.json()
    radius = body.get("radius")
    if isinstance(radius, (int, float)) and radius > 0:
        if abs(args.t) / radius > BOUNDARY_WARN:
            print("warning: flow time is close to the certified radius; "
                  "the truncation order may be very large", file=sys.stderr)
    print_json(body)
    return 0


def cmd_radius(args: argparse.Namespace) -> int:
    payload = {
        "field": load_field_file(args.field),
        "x0": [_complex_json(z) for z in args.x0],
    }
    resp = post(args.server, "/radius", payload)
    if resp.status_code != 200:
        return _handle_error(resp)
    print_json(resp.json())
    return 0


def cmd_pathsum(args: argparse.Namespace) -> int:
    payload = {
        "fields": [load_field_file(path) for path in args.fields],
        "alpha": args.alpha,
        "beta": args.beta,
        "cap": args.cap,
    }
    resp = post(args.server, "/pathsum", payload)
    if resp.status_code != 200:
        return _handle_error(resp)
    print_json(resp.json())
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    if args.what == "duality":
        path = "/check/duality"
        payload = {"trials": args.trials, "seed": args.seed}
    elif args.what == "relations":
        path = "/check/relations"
        payload = {"p": args.p, "maxdeg": args.maxdeg}
    else:
        path = "/check/properties"
        payload = {"seed": args.seed}
    resp = post(args.server, path, payload)
    if resp.status_code != 200:
        return _handle_error(resp)
    print_json(resp.json())
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("lieflow.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieflow",
        description="Certified Lie-series flows of analytic vector fields, "
                    "path-sum checks, and algebra verification suites.")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default runs in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p_flow = sub.add_parser("flow", help="integrate dy/dt = A(y) from x0 for time t")
    p_flow.add_argument("--field", required=True, help="field file (JSON)")
    p_flow.add_argument("--x0", required=True, type=parse_complex_list,
                        help="start point, comma-separated complex literals")
    p_flow.add_argument("--t", required=True, type=parse_complex,
                        help="flow time, complex literal a+bi")
    p_flow.add_argument("--tol", type=float, default=1e-9)
    p_flow.add_argument("--order-cap", type=int, default=10000, dest="order_cap")
    p_flow.set_defaults(func=cmd_flow)

    p_rad = sub.add_parser("radius", help="report m(A_x) and the certified radius")
    p_rad.add_argument("--field", required=True)
    p_rad.add_argument("--x0", required=True, type=parse_complex_list)
    p_rad.set_defaults(func=cmd_radius)

    p_ps = sub.add_parser("pathsum",
                          help="compare direct and path-sum chain evaluation")
    p_ps.add_argument("--fields", required=True, nargs="+",
                      help="field files, outermost first")
    p_ps.add_argument("--alpha", required=True, type=parse_int_list)
    p_ps.add_argument("--beta", required=True, type=parse_int_list)
    p_ps.add_argument("--cap", type=int, default=None)
    p_ps.set_defaults(func=cmd_pathsum)

    p_check = sub.add_parser("check", help="run a verification suite")
    check_sub = p_check.add_subparsers(dest="what", required=True)
    c_dual = check_sub.add_parser("duality", help="finite-dimensional duality sweep")
    c_dual.add_argument("--trials", type=int, default=500)
    c_dual.add_argument("--seed", type=int, default=42)
    c_dual.set_defaults(func=cmd_check)
    c_rel = check_sub.add_parser("relations", help="induced-relation certification")
    c_rel.add_argument("--p", type=int, default=2)
    c_rel.add_argument("--maxdeg", type=int, default=4)
    c_rel.set_defaults(func=cmd_check)
    c_prop = check_sub.add_parser("properties", help="full invariant suite")
    c_prop.add_argument("--seed", type=int, default=42)
    c_prop.set_defaults(func=cmd_check)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
