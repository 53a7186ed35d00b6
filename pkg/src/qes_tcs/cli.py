"""Command-line front end.

Every subcommand goes through the same request/response models as the
HTTP service; by default the handlers run in process, with ``--url`` the
same payloads travel over the wire to a running server.  Exit codes:
0 success, 1 usage, 2 constraint violation or divergence, 3 I/O
failure, 4 self-test failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import httpx
from pydantic import ValidationError

from .errors import QesError
from .service import ops, schemas

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONSTRAINT = 2
EXIT_IO = 3
EXIT_SELFTEST = 4

_KIND_EXIT = {
    "RepresentationError": EXIT_USAGE,
    "ValidationError": EXIT_USAGE,
    "CalibrationError": EXIT_SELFTEST,
}


def _exit_for_kind(kind: str) -> int:
    # everything not singled out is a domain/constraint failure
    return _KIND_EXIT.get(kind, EXIT_CONSTRAINT)


class ServiceError(Exception):
    """A request failed; carries the exception kind reported by the service."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"[{kind}] {message}")
        self.kind = kind
        self.message = message


class LocalClient:
    """Runs the service handlers in process."""

    _POST = {
        "/validate": (schemas.ParamsIn, ops.validate),
        "/table": (schemas.TableRequest, ops.table),
        "/normalize": (schemas.NormalizeRequest, ops.normalize),
        "/verify": (schemas.VerifyRequest, ops.verify),
        "/tcs": (schemas.TcsRequest, ops.tcs),
    }
    _GET = {
        "/health": ops.health,
        "/presets": ops.presets,
    }

    def request(self, method: str, path: str, payload: Optional[dict] = None) -> dict:
        if method == "GET":
            handler = self._GET[path]
            return handler().model_dump(mode="json", by_alias=True)
        model_cls, handler = self._POST[path]
        try:
            req = model_cls.model_validate(payload or {})
        except ValidationError as exc:
            raise ServiceError("ValidationError", str(exc)) from None
        return handler(req).model_dump(mode="json", by_alias=True)


class HttpClient:
    """Sends the same payloads to a remote server."""

    def __init__(self, url: str, client: Optional[httpx.Client] = None):
        self._client = client or httpx.Client(base_url=url, timeout=60.0)

    def request(self, method: str, path: str, payload: Optional[dict] = None) -> dict:
        if method == "GET":
            r = self._client.get(path)
        else:
            r = self._client.post(path, json=payload or {})
        if r.status_code == 200:
            return r.json()
        body = r.json()
        if isinstance(body, dict) and "kind" in body:
            raise ServiceError(body["kind"], body.get("message", ""))
        raise ServiceError("ValidationError", json.dumps(body))


def _make_client(url: Optional[str]):
    return HttpClient(url) if url else LocalClient()


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1, not argparse's default 2
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _add_params_flags(p: argparse.ArgumentParser, with_m: bool = False) -> None:
    p.add_argument("--class", dest="cls", required=True,
                   choices=["I", "II", "II+", "II-", "III"],
                   help="potential class")
    p.add_argument("--k", type=float, required=True, help="representation label, k > 1/2")
    p.add_argument("--b", type=float, required=True, help="coupling strength")
    p.add_argument("--tau", type=float, required=True, help="first-derivative coefficient")
    if with_m:
        p.add_argument("--m", type=float, default=None,
                       help="tower label (default: m = k, the zero mode)")


def _params_payload(args: argparse.Namespace) -> dict:
    payload = {"class": args.cls, "k": args.k, "b": args.b, "tau": args.tau}
    if getattr(args, "m", None) is not None:
        payload["m"] = args.m
    return payload


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_validate(args: argparse.Namespace, client) -> int:
    resp = client.request("POST", "/validate", _params_payload(args))
    if args.json:
        print(json.dumps(resp))
    else:
        violated = ", ".join(resp["violated_constraints"]) or "none"
        print(f"class {resp['class']} (k={resp['k']:g}, b={resp['b']:g}, tau={resp['tau']:g})")
        print(f"  paper_regular:    {_yn(resp['paper_regular'])}")
        print(f"  l2_normalizable:  {_yn(resp['l2_normalizable'])}")
        print(f"  exponent_at_zero: {resp['exponent_at_zero']:g}")
        print(f"  behavior_at_inf:  {resp['behavior_at_inf']}")
        print(f"  violated:         {violated}")
    return EXIT_OK if resp["paper_regular"] else EXIT_CONSTRAINT


def cmd_table(args: argparse.Namespace, client) -> int:
    payload = {
        "params": _params_payload(args),
        "spec": {
            "quantity": args.quantity,
            "rho_min": args.rho_min,
            "rho_max": args.rho_max,
            "points": args.points,
            "spacing": args.spacing,
            "format": args.format,
        },
    }
    if args.convention:
        payload["convention"] = args.convention
    resp = client.request("POST", "/table", payload)
    if args.out:
        Path(args.out).write_text(resp["content"])
    else:
        sys.stdout.write(resp["content"])
    return EXIT_OK


def _norm_line(v: dict) -> str:
    if not v["converges"]:
        return f"diverges ({v['reason']})"
    line = (f"norm = {v['value']!r} (alpha = {v['alpha']:g}, "
            f"{v['subdivisions']} panels, est. error {v['abs_error_estimate']:.3e})")
    if v["tolerance_downgraded"]:
        line += " [tolerance downgraded near alpha = 1]"
    return line


def cmd_normalize(args: argparse.Namespace, client) -> int:
    payload = {"params": _params_payload(args), "rel_tol": args.tol,
               "weighted": args.measure == "weighted"}
    resp = client.request("POST", "/normalize", payload)
    print(_norm_line(resp["flat"]))
    if resp.get("weighted"):
        print("weighted: " + _norm_line(resp["weighted"]))
    return EXIT_OK if resp["flat"]["converges"] else EXIT_CONSTRAINT


def cmd_verify(args: argparse.Namespace, client) -> int:
    if args.all == (args.cls is not None):
        sys.stderr.write("verify: provide either --all or a full parameter set\n")
        return EXIT_USAGE
    payload: dict = {"perturbation": args.perturb_potential}
    if args.all:
        payload["all"] = True
    else:
        payload["params"] = _params_payload(args)
    if args.convention:
        payload["convention"] = args.convention
    resp = client.request("POST", "/verify", payload)
    print(json.dumps(resp, indent=2))
    if args.perturb_potential and resp["all_passed"]:
        sys.stderr.write(
            "verify: self-test failure: the perturbed potential still passed\n"
        )
        return EXIT_SELFTEST
    return EXIT_OK if resp["all_passed"] else EXIT_SELFTEST


def cmd_tcs(args: argparse.Namespace, client) -> int:
    if args.r < 1 or args.r > args.N - 1:
        sys.stderr.write(
            f"tcs: error: r must lie in [1, N-1] = [1, {args.N - 1}], got {args.r}\n"
        )
        return EXIT_USAGE
    payload = {"N": args.N, "lambda": args.lam, "r": args.r, "s": args.s,
               "k": args.k, "b": args.b}
    resp = client.request("POST", "/tcs", payload)
    if args.json:
        print(json.dumps(resp))
        return EXIT_OK
    print(f"tau = {resp['tau']:g}")
    print(f"coupling_regime = {resp['coupling_regime']}")
    for label in ("I", "II", "III"):
        rep = resp["classes"][label]
        violated = ", ".join(rep["violated_constraints"]) or "none"
        print(f"  class {label}: paper_regular={_yn(rep['paper_regular'])} "
              f"l2_normalizable={_yn(rep['l2_normalizable'])} violated={violated}")
    return EXIT_OK


def cmd_presets(args: argparse.Namespace, client) -> int:
    resp = client.request("GET", "/presets")
    for p in resp["presets"]:
        print(f"{p['name']}  class={p['class']} k={p['k']:g} b={p['b']:g} "
              f"tau={p['tau']:g}  rho=[{p['rho_min']:g}, {p['rho_max']:g}] "
              f"points={p['points']}")
    return EXIT_OK


def cmd_figures(args: argparse.Namespace, client) -> int:
    resp = client.request("GET", "/presets")
    chosen = resp["presets"]
    if args.preset:
        chosen = [p for p in chosen if p["name"] == args.preset]
        if not chosen:
            names = ", ".join(p["name"] for p in resp["presets"])
            sys.stderr.write(f"figures: unknown preset {args.preset!r}; "
                             f"available: {names}\n")
            return EXIT_USAGE
    quantities = ["density", "potential"] if args.quantity == "both" else [args.quantity]
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for p in chosen:
        for quantity in quantities:
            payload = {
                "params": {"class": p["class"], "k": p["k"], "b": p["b"], "tau": p["tau"]},
                "spec": {
                    "quantity": quantity,
                    "rho_min": p["rho_min"],
                    "rho_max": p["rho_max"],
                    "points": p["points"],
                    "spacing": "log",
                    "format": "csv",
                },
            }
            table = client.request("POST", "/table", payload)
            target = outdir / f"{p['name']}-{quantity}.csv"
            target.write_text(table["content"])
            print(target.as_posix())
    return EXIT_OK


def cmd_serve(args: argparse.Namespace, client) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qes-tcs", description=__doc__)
    parser.add_argument("--url", default=None,
                        help="base URL of a running server (default: run in process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check coupling-parameter admissibility")
    _add_params_flags(p)
    p.add_argument("--json", action="store_true", help="print the raw JSON report")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("table", help="emit a data table for plotting")
    _add_params_flags(p, with_m=True)
    p.add_argument("--quantity", required=True,
                   choices=["potential", "wavefunction", "density"])
    p.add_argument("--rho-min", type=float, required=True)
    p.add_argument("--rho-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--spacing", choices=["linear", "log"], default="log")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--convention", choices=["C_paper", "C_chain"], default=None)
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("normalize", help="compute the normalization integral")
    _add_params_flags(p)
    p.add_argument("--tol", type=float, default=1e-8, help="relative tolerance")
    p.add_argument("--measure", choices=["flat", "weighted"], default="flat",
                   help="'weighted' adds the rho^tau-weighted diagnostic")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("verify", help="run the residual verification suite")
    p.add_argument("--all", action="store_true", help="use the standard parameter grid")
    p.add_argument("--class", dest="cls", default=None,
                   choices=["I", "II", "II+", "II-", "III"])
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--convention", choices=["C_paper", "C_chain"], default=None,
                   help="force a convention instead of calibrating")
    p.add_argument("--perturb-potential", type=float, default=0.0,
                   help="sensitivity self-test: adds eps/rho^2 to the potential")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tcs", help="map many-body parameters to tau and classify")
    p.add_argument("--N", type=int, required=True, help="number of particles")
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="interaction strength")
    p.add_argument("--r", type=int, required=True, help="truncation range")
    p.add_argument("--s", type=int, default=0, help="angular quantum number")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--json", action="store_true", help="print the raw JSON report")
    p.set_defaults(func=cmd_tcs)

    p = sub.add_parser("presets", help="list the bundled figure presets")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("figures", help="write data tables for the figure presets")
    p.add_argument("--out", default="figures-data", help="output directory")
    p.add_argument("--preset", default=None, help="emit a single preset by name")
    p.add_argument("--quantity", choices=["density", "potential", "both"],
                   default="both")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    client = _make_client(args.url)
    try:
        return args.func(args, client)
    except ServiceError as exc:
        sys.stderr.write(f"error [{exc.kind}]: {exc.message}\n")
        return _exit_for_kind(exc.kind)
    except QesError as exc:
        sys.stderr.write(f"error [{type(exc).__name__}]: {exc}\n")
        return _exit_for_kind(type(exc).__name__)
    except OSError as exc:
        sys.stderr.write(f"error [io]: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
