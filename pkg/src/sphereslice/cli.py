"""Command-line client for the transform service.

The CLI builds a request, sends it to the service (in-process by default,
over the network with --server), and renders the response as CSV and JSON
files.  Exit codes: 0 success, 1 invariant failure, 2 config error,
3 numerical failure.
"""

import argparse
import json
import sys

import httpx

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class InProcessClient:
    """Synchronous facade over the ASGI app for serverless CLI runs."""

    def __init__(self, app):
        self._app = app

    def post(self, path, json=None):
        import asyncio

        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://sphereslice", timeout=3600.0
            ) as client:
                return await client.post(path, json=json)

        return asyncio.run(go())

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def make_client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=3600.0)
    from .service.app import app

    return InProcessClient(app)


def write_csv(path, columns, rows):
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(repr(float(v)) for v in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def write_json(path, payload):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _classify_error(resp: httpx.Response) -> int:
    if resp.status_code in (400, 404, 422):
        return EXIT_CONFIG
    return EXIT_NUMERICAL


def _post(client, path, payload):
    try:
        resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        print(f"error: request failed: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_NUMERICAL)
    if resp.status_code != 200:
        detail = ""
        try:
            detail = json.dumps(resp.json().get("detail", ""))
        except Exception:
            detail = resp.text[:500]
        print(f"error: service returned {resp.status_code}: {detail}", file=sys.stderr)
        raise SystemExit(_classify_error(resp))
    return resp.json()


def parse_grid(text):
    try:
        i, j = text.lower().split("x")
        return int(i), int(j)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 16x32, got {text!r}")


def cmd_forward(args) -> int:
    payload = {
        "transform": args.transform,
        "n": args.n,
        "a": args.a,
        "field": args.field,
        "seed": args.seed,
        "resolution": args.resolution,
        "margin": args.margin,
    }
    if args.grid is not None:
        payload["grid"] = list(args.grid)
    else:
        payload["random_points"] = args.random
    with make_client(args.server) as client:
        body = _post(client, "/forward", payload)
    write_csv(args.out, body["columns"], body["rows"])
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    payload = {
        "transform": args.transform,
        "n": args.n,
        "a": args.a,
        "field": args.field,
        "grid": list(args.grid),
        "seed": args.seed,
        "resolution": args.resolution,
        "margin": args.margin,
    }
    if args.tolerance is not None:
        payload["tolerance"] = args.tolerance
    with make_client(args.server) as client:
        body = _post(client, "/reconstruct", payload)
    write_csv(args.out, body["columns"], body["rows"])
    write_json(args.summary, body["summary"])
    if not body["summary"]["pass"]:
        rel = body["summary"]["metrics"]["rel_l2"]
        print(f"error: reconstruction error rel_l2={rel:.4g} exceeds tolerance", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_selftest(args) -> int:
    payload = {"seed": args.seed, "perturb": args.perturb}
    if args.suite:
        payload["suites"] = args.suite
    with make_client(args.server) as client:
        body = _post(client, "/selftest", payload)
    write_json(args.out, body["report"])
    if not body["pass"]:
        failing = ", ".join(body["report"].get("failing", []))
        print(f"error: failing invariants: {failing}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sphereslice",
                                description="slice transforms on the sphere")
    p.add_argument("--server", default=None,
                   help="service URL; defaults to running the service in-process")
    sub = p.add_subparsers(dest="command", required=True)

    fw = sub.add_parser("forward", help="evaluate a forward transform on a direction set")
    fw.add_argument("--transform", choices=("F", "S"), default="F")
    fw.add_argument("--n", type=int, default=2)
    fw.add_argument("--a", type=float, default=0.0)
    fw.add_argument("--field", default="const1",
                    help="catalog name or grid-file path (forward mode only)")
    fw.add_argument("--grid", type=parse_grid, default=None, help="direction grid, e.g. 16x32")
    fw.add_argument("--random", type=int, default=100, help="random direction count")
    fw.add_argument("--seed", type=int, default=0)
    fw.add_argument("--resolution", type=int, default=64)
    fw.add_argument("--margin", type=float, default=0.1)
    fw.add_argument("--out", default="-", help="CSV output path (default stdout)")
    fw.set_defaults(fn=cmd_forward)

    rc = sub.add_parser("reconstruct", help="round-trip reconstruction on a catalog field")
    rc.add_argument("--transform", choices=("F", "S"), default="F")
    rc.add_argument("--n", type=int, default=2)
    rc.add_argument("--a", type=float, default=0.5)
    rc.add_argument("--field", default="z2")
    rc.add_argument("--grid", type=parse_grid, default=(16, 32))
    rc.add_argument("--seed", type=int, default=0)
    rc.add_argument("--resolution", type=int, default=48)
    rc.add_argument("--margin", type=float, default=0.3)
    rc.add_argument("--tolerance", type=float, default=None)
    rc.add_argument("--out", default="reconstruction.csv")
    rc.add_argument("--summary", default="summary.json")
    rc.set_defaults(fn=cmd_reconstruct)

    st = sub.add_parser("selftest", help="run invariant suites")
    st.add_argument("--suite", action="append", default=None,
                    help="restrict to a named suite (repeatable)")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--perturb", action="store_true",
                    help="inject a failing check (harness hook)")
    st.add_argument("--out", default="-", help="JSON report path (default stdout)")
    st.set_defaults(fn=cmd_selftest)

    sv = sub.add_parser("serve", help="run the HTTP service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8000)
    sv.set_defaults(fn=cmd_serve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
