"""Command-line verification runs that emit JSON reports.

Exit codes: 0 success or expected verdicts, 1 verdict mismatch, 2 bad usage
or input.
"""
from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .amplitude import Representation, born_frequencies
from .axioms import (
    AxiomConfig,
    additivity_contract_check,
    device_independence_residual,
    involution_residual,
    scaling_residual,
)
from .basis import BasisChange, classify_triviality, random_unitary
from .clicks import (
    DISCLAIMER,
    SimulationConfig,
    convergence_curve,
    estimate_frequencies,
    simulate_clicks,
    write_ensemble,
)
from .functionals import SymmetricFunctional
from .uniqueness import (
    SearchConfig,
    admissible_exponents,
    brute_force_cross_term,
    cross_term_coefficient,
    exponent_sweep,
)

FROZEN_TIME = "1970-01-01T00:00:00Z"
PROFILE_KEYS = ("scalability", "involution", "additivity", "device_independence")
AXIOM_EXTRAS = {"expected": dict, "unitaries": int, "dims": list, "additivity_dim": int}


class UsageError(Exception):
    pass


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _build(cls, raw: dict, **overrides):
    names = {f.name for f in dataclasses.fields(cls)}
    kwargs = {k: v for k, v in raw.items() if k in names}
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid {cls.__name__}: {exc}") from None


def _load_config(path, *classes, extras=None) -> dict:
    raw = _load_json(path) if path else {}
    if not isinstance(raw, dict):
        raise UsageError("config must be a JSON object")
    known = set(extras or {})
    for cls in classes:
        known |= {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise UsageError(f"unknown config keys: {unknown}")
    return raw


def _manifest(command: str, params: dict, seed: int, frozen: bool) -> dict:
    canonical = json.dumps(params, sort_keys=True, separators=(",", ":"), default=str)
    stamp = FROZEN_TIME if frozen else datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return {
        "command": command,
        "config_digest": hashlib.sha256(canonical.encode()).hexdigest(),
        "seed": seed,
        "tool_version": __version__,
        "timestamp": stamp,
    }


def _emit(report: dict, args, name: str) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)
    if args.json:
        sys.stdout.write(text)


def _exact_json(value):
    return value if isinstance(value, int) else str(Fraction(value))


SCALING_FACTORS = [2.0, 0.5j, 1.5 * np.exp(0.7j)] + [np.exp(2j * np.pi * k / 16) for k in range(1, 16)]


def cmd_verify_axioms(args) -> int:
    raw = _load_config(args.config, AxiomConfig, extras=AXIOM_EXTRAS)
    try:
        functional = SymmetricFunctional.from_dict(_load_json(args.functional))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if functional.is_zero:
        raise UsageError("the zero functional has no meaningful length")
    cfg = _build(AxiomConfig, raw, rng_seed=args.seed)
    expected = dict.fromkeys(PROFILE_KEYS, "pass")
    expected.update(raw.get("expected", {}))
    if set(expected) != set(PROFILE_KEYS) or any(v not in ("pass", "fail") for v in expected.values()):
        raise UsageError(f"expected profile must map {PROFILE_KEYS} to 'pass' or 'fail'")
    unitaries = int(raw.get("unitaries", 100))
    dims = [int(d) for d in raw.get("dims", range(2, 9))]
    if unitaries < 1 or not dims or min(dims) < 1:
        raise UsageError("need at least one unitary and positive dimensions")

    scaling = max((scaling_residual(functional, c, cfg) for c in SCALING_FACTORS), key=lambda r: r.max_residual)
    involution = involution_residual(functional, cfg)
    additivity = additivity_contract_check(functional, cfg, dim=int(raw.get("additivity_dim", 3)))
    device = max(
        (
            device_independence_residual(functional, random_unitary(dims[k % len(dims)], [cfg.rng_seed, k]), cfg)
            for k in range(unitaries)
        ),
        key=lambda r: r.max_residual,
    )
    reports = {"scalability": scaling, "involution": involution, "additivity": additivity, "device_independence": device}
    tags = {
        "scalability": "scalability/const(c)",
        "involution": "involution-invariance",
        "additivity": "additivity/partial-lengths",
        "device_independence": "device-independence/unitary-change",
    }
    checks = []
    ok = True
    for name, rep in reports.items():
        entry = rep.to_dict()
        entry["check"] = tags[name]
        entry["expected"] = expected[name]
        entry["matches"] = rep.verdict == expected[name]
        ok &= entry["matches"]
        checks.append(entry)
    params = {"functional": functional.to_dict(), "config": dataclasses.asdict(cfg), "expected": expected,
              "unitaries": unitaries, "dims": dims}
    report = {"manifest": _manifest("verify-axioms", params, cfg.rng_seed, args.frozen_time), "checks": checks, "ok": ok}
    _emit(report, args, "verify_axioms.json")
    if not args.json:
        for c in checks:
            print(f"{c['axiom']:<20} {c['verdict']:<4} residual={c['max_residual']:.3e} expected={c['expected']}")
    return 0 if ok else 1


def cmd_sweep(args) -> int:
    if not 1 <= args.p_min <= args.p_max <= 6:
        raise UsageError("need 1 <= p-min <= p-max <= 6 (p = 0 is the constant functional)")
    if not 2 <= args.dim <= 8:
        raise UsageError("need 2 <= dim <= 8")
    raw = _load_config(args.config, SearchConfig)
    cfg = _build(SearchConfig, raw, rng_seed=args.seed)
    results = exponent_sweep(range(args.p_min, args.p_max + 1), args.dim, cfg)
    admissible = sorted(admissible_exponents(results))
    expected = [1] if args.p_min == 1 else []
    params = {"p_min": args.p_min, "p_max": args.p_max, "dim": args.dim, "config": dataclasses.asdict(cfg)}
    report = {
        "manifest": _manifest("sweep", params, cfg.rng_seed, args.frozen_time),
        "check": "uniqueness/nontrivial-preservers",
        "results": [r.to_dict() for r in results],
        "admissible": admissible,
        "expected_admissible": expected,
        "ok": admissible == expected,
    }
    _emit(report, args, "sweep.json")
    if not args.json:
        for r in results:
            print(f"p={r.p} dim={r.dim} best_residual={r.best_residual:.3e} {r.verdict.value}")
        print(f"admissible exponents: {admissible}")
    return 0 if report["ok"] else 1


def _matrix_entries(rows):
    def entry(z):
        if isinstance(z, dict):
            return complex(z["re"], z.get("im", 0))
        if isinstance(z, list):
            return complex(z[0], z[1])
        if isinstance(z, (int, float)):
            return z
        raise TypeError(f"bad matrix entry {z!r}")

    try:
        return [[entry(z) for z in row] for row in rows]
    except (KeyError, TypeError, IndexError) as exc:
        raise UsageError(f"malformed matrix: {exc}") from None


def cmd_cross_terms(args) -> int:
    if args.p < 2:
        raise UsageError("cross term arises only for p >= 2")
    rows = _load_json(args.matrix)
    if isinstance(rows, dict):
        rows = rows.get("matrix")
    if not isinstance(rows, list):
        raise UsageError("matrix file must hold a list of rows")
    entries = _matrix_entries(rows)
    if len(entries) != 2 or any(len(r) != 2 for r in entries):
        raise UsageError("cross-term certificate needs a 2x2 matrix")
    try:
        triviality = classify_triviality(BasisChange(entries)).value
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    closed = cross_term_coefficient(args.p, entries)
    brute = brute_force_cross_term(args.p, entries)
    params = {"p": args.p, "matrix": [[str(z) for z in row] for row in entries]}
    report = {
        "manifest": _manifest("cross-terms", params, 0, args.frozen_time),
        "check": "nontriviality/cross-term",
        "p": args.p,
        "closed_form": _exact_json(closed),
        "brute_force": _exact_json(brute),
        "agree": closed == brute,
        "vanishes": closed == 0,
        "triviality": triviality,
    }
    _emit(report, args, "cross_terms.json")
    if not args.json:
        print(f"closed form {report['closed_form']}  brute force {report['brute_force']}  agree={report['agree']}")
    return 0 if report["agree"] else 1


def _decades(n: int) -> list[int]:
    sizes = [10**k for k in range(2, 19) if 10**k < n]
    return sizes + [n]


def cmd_simulate(args) -> int:
    try:
        rep = Representation.from_dict(_load_json(args.rep))
        born = born_frequencies(rep)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        cfg = SimulationConfig(n_events=args.n, trials=args.trials, rng_seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not args.out:
        raise UsageError("simulate needs --out")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    ensemble = simulate_clicks(rep, cfg.n_events, cfg.rng_seed)
    write_ensemble(ensemble, out)
    estimated = estimate_frequencies(ensemble)
    curve = convergence_curve(rep, _decades(cfg.n_events), cfg.trials, cfg.rng_seed)
    (out / "convergence.csv").write_text(
        "n,mean_abs_error\n" + "".join(f"{n},{err!r}\n" for n, err in curve)
    )
    freqs = {"labels": rep.labels, "estimated": estimated, "born": born, "disclaimer": DISCLAIMER}
    (out / "frequencies.json").write_text(json.dumps(freqs, sort_keys=True, indent=2) + "\n")
    params = {"rep": rep.to_dict(), "config": dataclasses.asdict(cfg)}
    report = {
        "manifest": _manifest("simulate", params, cfg.rng_seed, args.frozen_time),
        "check": "born-rule/frequencies",
        "counts": ensemble.counts,
        "estimated": estimated,
        "born": born,
        "max_abs_error": max(abs(a - b) for a, b in zip(estimated, born)),
        "convergence": [{"n": n, "mean_abs_error": e} for n, e in curve],
        "disclaimer": DISCLAIMER,
    }
    _emit(report, args, "simulate.json")
    if not args.json:
        for lab, e, b in zip(rep.labels, estimated, born):
            print(f"{lab}: estimated {e:.6f}  rule {b:.6f}")
    return 0


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=None, help="RNG seed (default: config value or 0)")
    common.add_argument("--config", help="JSON file with config fields")
    common.add_argument("--out", help="directory for report artifacts")
    common.add_argument("--frozen-time", action="store_true", help="fixed timestamp for byte-identical reports")
    common.add_argument("--json", action="store_true", help="write the JSON report to stdout")

    parser = argparse.ArgumentParser(prog="statlength", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-axioms", parents=[common], help="residual checks for one functional")
    p.add_argument("functional", help='functional JSON, e.g. {"K": 2, "gamma": {"1": 1.0}}')
    p.set_defaults(func=cmd_verify_axioms)

    p = sub.add_parser("sweep", parents=[common], help="search for nontrivial preservers per exponent")
    p.add_argument("--p-min", type=int, default=1)
    p.add_argument("--p-max", type=int, default=3)
    p.add_argument("--dim", type=int, default=2)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cross-terms", parents=[common], help="exact cross-term certificate for a 2x2 change")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("matrix", help="JSON 2x2 matrix")
    p.set_defaults(func=cmd_cross_terms)

    p = sub.add_parser("simulate", parents=[common], help="click ensembles and convergence data")
    p.add_argument("rep", help="representation JSON")
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None and args.command == "simulate":
        args.seed = 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"statlength {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
