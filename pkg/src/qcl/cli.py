"""Command-line front end: ``qcl <subcommand> [options]``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 a size cap
was hit.  Rationals are printed as ``p/q`` strings; ``--json`` switches every
subcommand to a JSON document on stdout.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from collections import Counter
from pathlib import Path

import numpy as np

from . import acceptance as acc
from .errors import QCLError, ResourceError
from .genfunc import gen_function, gen_function_at, stability_check
from .gtgraph import ROOT, Signature, count_paths, enumerate_paths, signatures
from .measures import (
    CoherentSystem,
    LevelMeasure,
    boundary_theta,
    check_coherence,
    ergodic_ratios,
    pullback_measure,
    sample_paths,
)
from .opalg import QuantizedCharacterLevel, kms_check, random_block_operator, verify_density_branching
from .scalar import format_rational, parse_rational
from .symfunc import macdonald_psi, schur_eval
from .weights import WeightScheme, load_cache, save_cache, weighted_dim

CACHE_ENV = "QCL_CACHE_DIR"
CACHE_FILE = "wdim.jsonl"

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _sig(text: str) -> Signature:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"malformed signature {text!r}; expected a JSON array such as [2,0]") from None
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise UsageError(f"signature must be an integer array, got {text!r}")
    return Signature(data)


def _json_arg(text: str):
    """Inline JSON, or ``@path`` / an existing file path holding JSON."""
    path = text[1:] if text.startswith("@") else text
    try:
        if text.startswith("@") or Path(path).is_file():
            return json.loads(Path(path).read_text())
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {text!r}: {exc}") from None


def _measure(text: str) -> LevelMeasure:
    return LevelMeasure.from_json(_json_arg(text))


def _point(text: str, mode: str) -> list:
    parts = [p for p in text.split(",") if p.strip()]
    return [float(parse_rational(p)) if mode == "float" else parse_rational(p) for p in parts]


def _param(text, mode):
    if text is None:
        return None
    value = parse_rational(text)
    return float(value) if mode == "float" else value


def _scheme(args) -> WeightScheme:
    q, t = _param(args.q, args.mode), _param(args.t, args.mode)
    if args.scheme == "macdonald":
        if t is None:
            raise UsageError("--scheme macdonald requires --t")
        return WeightScheme.macdonald(q, t)
    return WeightScheme.schur(q)


def _q(args):
    return _param(args.q, args.mode)


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, text: str, payload):
        if self.as_json:
            print(json.dumps(payload, sort_keys=True))
        else:
            print(text)


# -- subcommands -------------------------------------------------------------------

def cmd_wdim(args, out):
    scheme = _scheme(args)
    value = weighted_dim(scheme, _sig(args.sig))
    out.emit(format_rational(value), {"sig": list(_sig(args.sig)), "wdim": format_rational(value)})
    return EXIT_OK


def cmd_paths(args, out):
    nu = _sig(args.sig)
    mu = _sig(args.source) if args.source else ROOT
    n = count_paths(mu, nu)
    payload = {"from": list(mu), "to": list(nu), "count": n}
    text = str(n)
    if args.list:
        paths = enumerate_paths(mu, nu)
        payload["paths"] = [p.to_json() for p in paths]
        text = "\n".join(json.dumps(p.to_json()) for p in paths)
    out.emit(text, payload)
    return EXIT_OK


def cmd_schur(args, out):
    nu = _sig(args.sig)
    value = schur_eval(nu, _point(args.point, args.mode))
    out.emit(format_rational(value), {"sig": list(nu), "value": format_rational(value)})
    return EXIT_OK


def cmd_psi(args, out):
    if args.t is None:
        raise UsageError("psi requires --t")
    value = macdonald_psi(_sig(args.mu), _sig(args.nu), _q(args), _param(args.t, args.mode))
    out.emit(format_rational(value), {"psi": format_rational(value)})
    return EXIT_OK


def cmd_coherence(args, out):
    report = check_coherence(_measure(args.mN), _measure(args.mN1), _scheme(args))
    payload = {
        "ok": report.ok,
        "worst_residual": format_rational(report.worst_residual),
        "violations": [
            {"sig": list(v), "P_N": format_rational(a), "induced": format_rational(b)} for v, a, b in report.violations
        ],
    }
    lines = ["OK" if report.ok else "FAIL"] + [
        f"  {v!r}: P_N={format_rational(a)} induced={format_rational(b)}" for v, a, b in report.violations
    ]
    out.emit("\n".join(lines), payload)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_pullback(args, out):
    m = pullback_measure(_scheme(args), _sig(args.sig), args.K)
    out.emit(json.dumps(m.to_json()), m.to_json())
    return EXIT_OK


def cmd_sample(args, out):
    scheme = _scheme(args)
    paths = sample_paths(scheme, _measure(args.measure), args.n, args.seed)
    counts = Counter(paths)
    rows = sorted(counts.items())
    payload = {"n": args.n, "seed": args.seed, "paths": [{"path": p.to_json(), "count": c} for p, c in rows]}
    out.emit("\n".join(f"{c}\t{json.dumps(p.to_json())}" for p, c in rows), payload)
    return EXIT_OK


def cmd_ergodic(args, out):
    chain = [Signature(s) for s in _json_arg(args.chain)]
    zs = ergodic_ratios(_scheme(args), _sig(args.v), chain)
    payload = {"v": list(_sig(args.v)), "ratios": [{"level": s.level, "Z": format_rational(z)} for s, z in zip(chain, zs)]}
    out.emit("\n".join(f"{s.level}\t{format_rational(z)}" for s, z in zip(chain, zs)), payload)
    return EXIT_OK


def cmd_theta(args, out):
    chain = [Signature(s) for s in _json_arg(args.chain)]
    b = boundary_theta(chain, args.window)
    out.emit(json.dumps({"theta": list(b.theta), "stable_upto": b.stable_upto}), {"theta": list(b.theta), "stable_upto": b.stable_upto})
    return EXIT_OK


def cmd_kms(args, out):
    scheme = _scheme(args)
    system = CoherentSystem.from_top(scheme, _measure(args.measure))
    rng = np.random.default_rng(args.seed)
    failures = []
    for i in range(args.trials):
        n = 1 + i % system.n_max
        chi = QuantizedCharacterLevel(scheme, system.at(n))
        x = random_block_operator(chi.coeffs.support, rng)
        y = random_block_operator(chi.coeffs.support, rng)
        report = kms_check(chi, x, y, scheme)
        if not report:
            failures.append({"trial": i, "level": n, "lhs": format_rational(report.lhs), "rhs": format_rational(report.rhs)})
    ok = not failures
    out.emit(("OK" if ok else "FAIL") + f" {args.trials - len(failures)}/{args.trials} trials", {"ok": ok, "trials": args.trials, "failures": failures})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify_branching(args, out):
    scheme = _scheme(args)
    bad = []
    checked = 0
    for n in range(2, args.maxlevel + 1):
        for nu in signatures(n, -args.range, args.range):
            checked += 1
            if not verify_density_branching(scheme, nu):
                bad.append(list(nu))
    ok = not bad
    out.emit(("OK" if ok else "FAIL") + f" {checked - len(bad)}/{checked} blocks", {"ok": ok, "checked": checked, "failures": bad})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_genfunc(args, out):
    m = _measure(args.measure)
    q = _q(args)
    if args.eval:
        value = gen_function_at(m, q, _point(args.eval, args.mode))
        out.emit(format_rational(value), {"value": format_rational(value)})
    else:
        poly = gen_function(m, q)
        out.emit(json.dumps(poly.to_json()), {"nvars": poly.nvars, "terms": poly.to_json()})
    return EXIT_OK


def cmd_genfunc_stability(args, out):
    ok = stability_check(_measure(args.mN), _measure(args.mN1), _q(args))
    out.emit("OK" if ok else "FAIL", {"ok": ok})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_acceptance(args, out):
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = []
    for c in acc.CRITERIA:
        if only is None or c[0] in only:
            r = acc.run_criterion(c[0])
            results.append(r)
            if not out.as_json:
                print(r.line(), flush=True)
    ok = all(r.ok for r in results)
    if out.as_json:
        print(json.dumps({"ok": ok, "criteria": [
            {"number": r.number, "name": r.name, "ok": r.ok, "detail": r.detail, "seconds": round(r.seconds, 3), "budget": r.budget}
            for r in results
        ]}, sort_keys=True))
    else:
        print(f"{sum(r.ok for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--q", default="1/2", help="deformation parameter q (rational p/q)")
    common.add_argument("--t", default=None, help="Macdonald parameter t")
    common.add_argument("--scheme", choices=("schur", "macdonald"), default="schur")
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="emit JSON")

    parser = _Parser(prog="qcl", description="Quantized characters and central measures on the Gelfand-Tsetlin graph.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("wdim", cmd_wdim, "weighted dimension of a signature")
    p.add_argument("--sig", required=True)
    p = add("paths", cmd_paths, "count (or list) Gelfand-Tsetlin paths")
    p.add_argument("--sig", required=True)
    p.add_argument("--from", dest="source", default=None)
    p.add_argument("--list", action="store_true")
    p = add("schur", cmd_schur, "evaluate a rational Schur function")
    p.add_argument("--sig", required=True)
    p.add_argument("--point", required=True)
    p = add("psi", cmd_psi, "Macdonald branching coefficient psi_{nu/mu}(q,t)")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p = add("coherence-check", cmd_coherence, "check the coherence relation between two level measures")
    p.add_argument("--mN", required=True)
    p.add_argument("--mN1", required=True)
    p = add("pullback", cmd_pullback, "level-K marginal of the character of a vertex")
    p.add_argument("--sig", required=True)
    p.add_argument("--K", type=int, required=True)
    p = add("sample", cmd_sample, "sample paths of a central measure")
    p.add_argument("--measure", required=True)
    p.add_argument("--n", type=int, default=1)
    p = add("ergodic", cmd_ergodic, "ratios wdim(v, nu)/wdim(nu) along a chain")
    p.add_argument("--v", required=True)
    p.add_argument("--chain", required=True)
    p = add("theta", cmd_theta, "detect the boundary parameter of a chain")
    p.add_argument("--chain", required=True)
    p.add_argument("--window", type=int, default=5)
    p = add("kms-check", cmd_kms, "randomized KMS check for the tower generated by a measure")
    p.add_argument("--measure", required=True)
    p.add_argument("--trials", type=int, default=100)
    p = add("verify-branching", cmd_verify_branching, "rebuild density matrices from the level below")
    p.add_argument("--maxlevel", type=int, default=4)
    p.add_argument("--range", type=int, default=2)
    p = add("genfunc", cmd_genfunc, "generating function of a level measure")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--expand", action="store_true")
    g.add_argument("--eval", default=None)
    p.add_argument("--measure", required=True)
    p = add("genfunc-stability", cmd_genfunc_stability, "check Phi^(N+1)(z, 1) == Phi^(N)(z)")
    p.add_argument("--mN", required=True)
    p.add_argument("--mN1", required=True)
    p = add("acceptance", cmd_acceptance, "run the exact acceptance suite")
    p.add_argument("--only", default=None, help="comma separated criterion numbers")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    cache_dir = os.environ.get(CACHE_ENV)
    try:
        args = parser.parse_args(argv)
        if cache_dir:
            load_cache(Path(cache_dir) / CACHE_FILE)
        with warnings.catch_warnings():
            if args.json:
                # keep stdout/stderr machine-readable
                warnings.simplefilter("ignore")
            code = args.func(args, _Out(args.json))
    except UsageError as exc:
        print(f"qcl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"qcl: resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except QCLError as exc:
        print(f"qcl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cache_dir:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        save_cache(Path(cache_dir) / CACHE_FILE)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
