"""Command-line client for the service.

Every subcommand posts a request to the corresponding service endpoint.
By default the app is mounted in-process (no socket); ``--server URL``
targets a remote instance instead.

Exit codes: 0 success/affirmative, 2 negative verdict, 1 error.
"""

import argparse
import json
import os
import sys

import httpx

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2


def _client(server):
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient
    from .service import app
    # sync httpx client driving the ASGI app in-process, no socket
    return TestClient(app, raise_server_exceptions=False)


def _read_payload(args) -> dict:
    if args.infile == "-":
        text = sys.stdin.read()
    else:
        with open(args.infile) as fh:
            text = fh.read()
    payload = json.loads(text)
    if not isinstance(payload, dict):
        raise ValueError("request payload must be a JSON object")
    return payload


def _emit_json(doc):
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _fmt9(v) -> str:
    return format(float(v), ".9g")


def _emit_csv(header, rows):
    sys.stdout.write(",".join(header) + "\n")
    for row in rows:
        sys.stdout.write(",".join(_fmt9(v) if isinstance(v, float) else str(v)
                                  for v in row) + "\n")


def _post(args, path, payload):
    with _client(args.server) as client:
        resp = client.post(path, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        print(f"error: {detail}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)
    return resp.json()


def _apply_common(args, payload):
    if args.tol is not None and "tol" not in payload:
        payload["tol"] = args.tol
    if args.seed is not None and "seed" not in payload:
        payload["seed"] = args.seed
    if args.jobs is not None:
        payload.setdefault("scan", {})
        if isinstance(payload["scan"], dict):
            payload["scan"].setdefault("jobs", args.jobs)
    return payload


# ---------------------------------------------------------- subcommands

def cmd_pick_check(args):
    payload = _read_payload(args)
    for key in ("p", "sizes"):
        if key not in payload:
            print(f"error: missing field '{key}'", file=sys.stderr)
            return EXIT_ERROR
    if args.tol is not None:
        payload.setdefault("tol", args.tol)
    doc = _post(args, "/pick-check", payload)
    if args.out == "csv":
        _emit_csv(["size", "status", "min_eig"],
                  [[v["size"], v["status"], float(v["min_eig"])]
                   for v in doc["verdicts"]])
    else:
        _emit_json(doc)
    return EXIT_OK if doc["all_psd"] else EXIT_NEGATIVE


def cmd_np_interp(args):
    payload = _read_payload(args)
    for key in ("nodes", "targets"):
        if key not in payload:
            print(f"error: missing field '{key}'", file=sys.stderr)
            return EXIT_ERROR
    if args.tol is not None:
        payload.setdefault("tol", args.tol)
    if args.seed is not None:
        payload.setdefault("seed", args.seed)
    doc = _post(args, "/np-interp", payload)
    _emit_json(doc)
    return EXIT_OK if doc["status"] == "ok" else EXIT_NEGATIVE


def cmd_apply(args):
    payload = _read_payload(args)
    for key in ("spec", "f"):
        if key not in payload:
            print(f"error: missing field '{key}'", file=sys.stderr)
            return EXIT_ERROR
    doc = _post(args, "/apply", payload)
    if args.out == "csv":
        _emit_csv(["coeff_re", "coeff_im", "exp_re", "exp_im"],
                  [[float(t["coeff"][0]), float(t["coeff"][1]),
                    float(t["exp"][0]), float(t["exp"][1])]
                   for t in doc["terms"]])
    else:
        _emit_json(doc)
    return EXIT_OK


def cmd_norm(args):
    payload = _read_payload(args)
    for key in ("spec", "Ns"):
        if key not in payload:
            print(f"error: missing field '{key}'", file=sys.stderr)
            return EXIT_ERROR
    doc = _post(args, "/norm", payload)
    if args.out == "json":
        _emit_json(doc)
    else:
        _emit_csv(["N", "estimate"],
                  [[r["N"], float(r["estimate"])] for r in doc["rows"]])
    return EXIT_OK


def cmd_flat_check(args):
    payload = _read_payload(args)
    for key in ("g", "tau"):
        if key not in payload:
            print(f"error: missing field '{key}'", file=sys.stderr)
            return EXIT_ERROR
    _apply_common(args, payload)
    if args.out == "csv":
        payload["include_samples"] = True
    doc = _post(args, "/flat-check", payload)
    if args.out == "csv":
        print(f"# status={doc['status']} sup={_fmt9(doc['sup'])}")
        _emit_csv(["height", "t", "value"],
                  [[float(a), float(b), float(c)]
                   for a, b, c in doc.get("samples") or []])
    else:
        _emit_json(doc)
    return EXIT_OK if doc["status"] == "bounded" else EXIT_NEGATIVE


def cmd_unitary(args):
    # flags are the primary interface here; '--in FILE' overrides them
    # (stdin is not read so that flag-only invocations do not block)
    if args.infile != "-":
        payload = _read_payload(args)
    else:
        payload = {"theta": args.theta, "a": [args.a_re, args.a_im]}
    payload.setdefault("action", args.action)
    if args.seed is not None:
        payload.setdefault("seed", args.seed)
    doc = _post(args, "/unitary", payload)
    _emit_json(doc)
    return EXIT_OK


def cmd_poisson_sweep(args):
    payload = _read_payload(args)
    if "g" not in payload:
        print("error: missing field 'g'", file=sys.stderr)
        return EXIT_ERROR
    _apply_common(args, payload)
    doc = _post(args, "/poisson-sweep", payload)
    if args.out == "json":
        _emit_json(doc)
    else:
        _emit_csv(["sigma", "t", "value"],
                  [[float(a), float(b), float(c)] for a, b, c in doc["rows"]])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monop",
        description="Monomial operators on L2[0,1]: feasibility, "
                    "interpolation, application, norms, boundedness, "
                    "unitaries.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", default="-", metavar="FILE",
                        help="request JSON file ('-' for stdin)")
    common.add_argument("--out", choices=("json", "csv"), default="json",
                        help="output format")
    env_tol = os.environ.get("MONOP_TOL")
    common.add_argument("--tol", type=float,
                        default=float(env_tol) if env_tol else None,
                        help="tolerance override (default from MONOP_TOL)")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed for sampled diagnostics")
    common.add_argument("--jobs", type=int, default=None,
                        help="parallel workers for grid sweeps")
    common.add_argument("--server", default=None, metavar="URL",
                        help="remote service URL (default: in-process)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("pick-check", parents=[common],
                   help="PSD feasibility of exponent data").set_defaults(
        fn=cmd_pick_check)
    sub.add_parser("np-interp", parents=[common],
                   help="Nevanlinna-Pick interpolant for nodes/targets"
                   ).set_defaults(fn=cmd_np_interp)
    sub.add_parser("apply", parents=[common],
                   help="apply an operator spec to a monomial sum"
                   ).set_defaults(fn=cmd_apply)
    sub.add_parser("norm", parents=[common],
                   help="Galerkin norm curve over degrees").set_defaults(
        fn=cmd_norm)
    sub.add_parser("flat-check", parents=[common],
                   help="boundedness verdict for a flat shift"
                   ).set_defaults(fn=cmd_flat_check)
    up = sub.add_parser("unitary", parents=[common],
                        help="build or check a unitary spec")
    up.add_argument("--theta", type=float, default=0.0)
    up.add_argument("--a-re", type=float, default=0.0)
    up.add_argument("--a-im", type=float, default=0.0)
    up.add_argument("--action", choices=("build", "check"), default="build")
    up.set_defaults(fn=cmd_unitary)
    sub.add_parser("poisson-sweep", parents=[common],
                   help="Poisson integral of |g|^2 over a grid"
                   ).set_defaults(fn=cmd_poisson_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
