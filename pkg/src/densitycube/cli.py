"""Command-line front end.

Subcommands::

    interfere   full multi-slit probability table and interference orders
    lg          two-time correlation protocol and its bound combination
    tomo        triple-element reconstruction, exact or sampled
    check       run the invariant suite (optionally against a transform file)

Every output JSON embeds a manifest (command, parameters, seed, version,
timestamp); replaying the same manifest reproduces the bytes exactly.  Set
SOURCE_DATE_EPOCH to pin the timestamp.  DENSITYCUBE_OUTDIR sets the default
output directory.  Exit codes: 0 success, 1 invariant failure, 2 invalid
input.
"""

from __future__ import annotations

import argparse
import csv
import os
import re
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .cube import ValidationError
from .checks import run_all_checks
from .dynamics import transform_from_dict
from .experiments import (
    ExperimentRecord,
    interference_orders,
    interference_table,
    leggett_garg_run,
    leggett_garg_sweep,
    sorkin_sweep,
    tomography_estimate,
    tomography_reconstruct,
    transformed_detector_probs,
)
from .jsonio import canonical_dumps, complex_pair, read_json
from .quantum import check_density_matrix, check_unitary, dft_unitary, matrix_from_dict, pure_density
from .states import resolve_state

OUTDIR_ENV = "DENSITYCUBE_OUTDIR"


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = (
        datetime.fromtimestamp(int(epoch), tz=timezone.utc)
        if epoch
        else datetime.now(tz=timezone.utc)
    )
    return moment.replace(microsecond=0).isoformat()


def _manifest(command: str, parameters: dict, seed: int | None) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "version": __version__,
        "timestamp": _timestamp(),
    }


def _out_path(args, default_name: str) -> Path:
    if args.out:
        return Path(args.out)
    base = Path(os.environ.get(OUTDIR_ENV, "."))
    base.mkdir(parents=True, exist_ok=True)
    return base / default_name


def _write_record(record: ExperimentRecord, manifest: dict, path: Path, want_csv: bool) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_dumps(record.to_dict(manifest)), encoding="utf-8")
    print(f"wrote {path}")
    if want_csv:
        csv_path = path.with_suffix(".csv")
        with csv_path.open("w", newline="", encoding="utf-8") as handle:
            csv.writer(handle).writerows(record.csv_rows())
        print(f"wrote {csv_path}")


def _resolve_transform(spec: str | None, theory: str, k: int):
    """Resolve a transform spec: registry name, file path, or default."""
    if spec is None or spec == "T":
        if theory == "cube":
            return None  # built-in transform / path convention
        return dft_unitary(k) if theory == "quantum" else None
    if spec == "dft":
        return dft_unitary(k)
    if spec == "uniform":
        return np.full((k, k), 1.0 / k)
    path = Path(spec)
    if not path.exists():
        raise ValidationError(f"transform spec {spec!r} is neither a name nor a file")
    data = read_json(path)
    if theory == "cube":
        return transform_from_dict(data)
    mat = matrix_from_dict(data)
    if theory == "quantum":
        return check_unitary(mat)
    return mat.real


def _resolve_initial_state(spec: str | None, theory: str, k: int):
    """Resolve --state per theory: cube registry/file, basis names, or a
    theory-appropriate JSON file (density matrix / probability vector)."""
    if spec is None:
        return None
    if theory == "cube":
        return resolve_state(spec, levels=k)
    basis = re.fullmatch(r"e([1-9]\d*)", spec)
    if basis:
        n = int(basis.group(1))
        if n > k:
            raise ValidationError(f"state e{n} needs at least {n} paths, have {k}")
        vec = np.zeros(k)
        vec[n - 1] = 1.0
        return vec if theory == "classical" else pure_density(vec)
    path = Path(spec)
    if not path.exists():
        raise ValidationError(f"state spec {spec!r} is neither a basis name nor a file")
    data = read_json(path)
    if theory == "quantum":
        return check_density_matrix(matrix_from_dict(data))
    try:
        probs = np.asarray(data, dtype=np.float64).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"classical state file must hold a probability list: {exc}") from exc
    if probs.size != k or np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-9:
        raise ValidationError(f"classical state file must hold {k} probabilities summing to 1")
    return probs


def _sanitize(token: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in token).strip("_") or "state"


# -- subcommands -----------------------------------------------------------------


def cmd_interfere(args) -> int:
    theory = args.theory
    k = args.k
    transform = _resolve_transform(args.transform, theory, k)
    state = _resolve_initial_state(args.state, theory, k)
    inputs = {
        "theory": theory,
        "k": k,
        "state": args.state or "e1",
        "transform": args.transform or ("T" if theory == "cube" else "default"),
        "trials": args.trials,
    }
    metadata = {}
    if theory == "cube" and k == 4:
        metadata["composition"] = "transform acts on paths (1,2,3); path 4 is a spectator"
    if args.trials:
        sweep = sorkin_sweep(theory, k, args.trials, seed=args.seed)
        derived = {
            "sweep": {
                "trials": sweep.trials,
                "max_abs_full_order": sweep.max_abs_full,
                "max_abs_pairwise": sweep.max_abs_pairwise,
            }
        }
        table = interference_table(theory, k, state=state, transform=transform)
        derived.update(interference_orders(table, k))
        record = ExperimentRecord(
            "interference_sweep", theory, inputs, table, derived, metadata
        )
        headline = sweep.max_abs_full
        print(f"{theory} k={k}: max |{derived['full_order']['name']}| over "
              f"{args.trials} trials = {headline:.3e}")
    else:
        table = interference_table(theory, k, state=state, transform=transform)
        derived = interference_orders(table, k)
        record = ExperimentRecord("interference", theory, inputs, table, derived, metadata)
        name = derived["full_order"]["name"]
        value = derived["full_order"]["per_detector"][0]
        print(f"{theory} k={k}: {name} at detector 1 = {value!r}")
    manifest = _manifest("interfere", inputs, args.seed)
    _write_record(record, manifest, _out_path(args, f"interference_{theory}_k{k}.json"), args.csv)
    return 0


def cmd_leggett_garg(args) -> int:
    theory = args.theory
    inputs = {"theory": theory, "trials": args.trials}
    derived: dict = {}
    if args.trials:
        sweep = leggett_garg_sweep(theory, args.trials, seed=args.seed)
        derived["sweep"] = {"trials": sweep.trials, "max_K": sweep.max_K}
        print(f"{theory}: max K over {args.trials} trials = {sweep.max_K!r}")
    result = leggett_garg_run(theory)
    derived["correlations"] = {
        "C12": result.C12,
        "C23": result.C23,
        "C34": result.C34,
        "C14": result.C14,
    }
    derived["K"] = result.K
    if not args.trials:
        print(
            f"{theory}: C12={result.C12!r} C23={result.C23!r} "
            f"C34={result.C34!r} C14={result.C14!r} K={result.K!r}"
        )
    record = ExperimentRecord("leggett_garg", theory, inputs, None, derived)
    manifest = _manifest("lg", inputs, args.seed)
    _write_record(record, manifest, _out_path(args, f"leggett_garg_{theory}.json"), False)
    return 0


def cmd_tomography(args) -> int:
    state = resolve_state(args.state, levels=3)
    true_z = complex(state.triple[0])
    inputs = {"state": args.state, "exact": bool(args.exact), "shots": args.shots}
    if args.exact:
        mu = transformed_detector_probs(state)
        fit = tomography_reconstruct(mu, state.probabilities())
        derived = {
            "z_true": complex_pair(true_z),
            "z_hat": complex_pair(fit.z),
            "residual": fit.residual,
            "mu": mu.tolist(),
            "p": state.probabilities().tolist(),
        }
    else:
        if not args.shots:
            raise ValidationError("sampled tomography needs --shots (or pass --exact)")
        estimate = tomography_estimate(state, args.shots, seed=args.seed)
        z_hat = estimate.pop("z_hat")
        derived = {
            "z_true": complex_pair(true_z),
            "z_hat": complex_pair(z_hat),
            "error": abs(z_hat - true_z),
            **estimate,
        }
    record = ExperimentRecord("tomography", "cube", inputs, None, derived)
    manifest = _manifest("tomo", inputs, args.seed)
    z_hat = complex(derived["z_hat"][0], derived["z_hat"][1])
    print(f"z_hat = {z_hat!r} (true {true_z!r})")
    _write_record(record, manifest, _out_path(args, f"tomography_{_sanitize(args.state)}.json"), False)
    return 0


def cmd_check(args) -> int:
    transform = None
    if args.transform:
        data = read_json(Path(args.transform))
        try:
            rows = [[complex(p[0], p[1]) for p in row] for row in data["rows"]]
        except (KeyError, TypeError, IndexError) as exc:
            raise ValidationError(f"malformed transform file: {exc}") from exc
        transform = np.array(rows, dtype=np.complex128)
        if transform.shape != (5, 5):
            raise ValidationError(f"transform must be 5x5, got {transform.shape}")
    results = run_all_checks(transform)
    all_passed = all(r.passed for r in results)
    doc = {
        "manifest": _manifest("check", {"transform": args.transform}, None),
        "passed": all_passed,
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
    }
    if args.json:
        print(canonical_dumps(doc), end="")
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(canonical_dumps(doc), encoding="utf-8")
        print(f"wrote {out}", file=sys.stderr)
    return 0 if all_passed else 1


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densitycube",
        description="Interference-order hierarchy simulator: classical, quantum "
        "and density-cube theories.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("interfere", help="multi-slit interference table")
    p_int.add_argument("--theory", required=True, choices=("classical", "quantum", "cube"))
    p_int.add_argument("--k", type=int, required=True, choices=(2, 3, 4))
    p_int.add_argument("--state", help="registry name or cube JSON path")
    p_int.add_argument("--transform", help="T | dft | uniform | JSON path")
    p_int.add_argument("--trials", type=int, help="sweep over random instances")
    p_int.add_argument("--seed", type=int)
    p_int.add_argument("--out")
    p_int.add_argument("--csv", action="store_true", help="also write the table as CSV")
    p_int.set_defaults(func=cmd_interfere)

    p_lg = sub.add_parser("lg", help="two-time correlation protocol")
    p_lg.add_argument("--theory", required=True, choices=("classical", "quantum", "cube"))
    p_lg.add_argument("--trials", type=int, help="sweep over random instances")
    p_lg.add_argument("--seed", type=int)
    p_lg.add_argument("--out")
    p_lg.set_defaults(func=cmd_leggett_garg)

    p_tomo = sub.add_parser("tomo", help="triple-element tomography")
    p_tomo.add_argument("--state", required=True)
    p_tomo.add_argument("--exact", action="store_true", help="use exact probabilities")
    p_tomo.add_argument("--shots", type=int)
    p_tomo.add_argument("--seed", type=int)
    p_tomo.add_argument("--out")
    p_tomo.set_defaults(func=cmd_tomography)

    p_check = sub.add_parser("check", help="run the invariant suite")
    p_check.add_argument("--json", action="store_true", help="print a JSON report")
    p_check.add_argument("--transform", help="check a transform JSON file instead of the built-in")
    p_check.add_argument("--out", help="also write the report to a file")
    p_check.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
