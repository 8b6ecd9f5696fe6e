"""``varjump`` command line.

Exit codes: 0 success / all checks passed, 1 a check or validation failed,
2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import formats, seqvar, verify
from .config import RunConfig, default_config, parse_config
from .errors import ConfigError, VarJumpError
from .fields import (band_limited_field, convolution_family, jump_field, maximal_field,
                     square_field, variation_field)
from .hardy import AtomicCombination, synthesize, validate_atom


def _load_config(args) -> RunConfig:
    cfg = parse_config(args.config) if args.config else default_config()
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    return cfg


def _read_sequence(path: str):
    text = sys.stdin.read() if path in (None, "-") else Path(path).read_text(encoding="utf-8")
    return formats.parse_sequence(text)


def cmd_suite(args) -> int:
    cfg = _load_config(args)
    out = Path(args.out or cfg.report_path)
    reports = verify.run_suite(cfg, only=args.check)
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    doc = verify.suite_document(cfg, reports, timestamp=stamp)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    details = args.details or cfg.details_dir
    if details:
        verify.write_details(reports, details)
    for rep in reports:
        print(f"{'PASS' if rep.passed else 'FAIL'}  {rep.check_id}")
    print(f"report written to {out}")
    return 0 if doc["passed"] else 1


def cmd_var(args) -> int:
    seq = _read_sequence(args.infile)
    if args.witness:
        value, path = seqvar.rho_variation(seq, args.rho, return_witness=True)
        print(f"{value:.6f}")
        print("witness: " + " ".join(str(i) for i in path))
    else:
        print(f"{seqvar.rho_variation(seq, args.rho):.6f}")
    return 0


def cmd_jump(args) -> int:
    print(seqvar.lambda_jump_count(_read_sequence(args.infile), args.lam))
    return 0


def cmd_kernel_check(args) -> int:
    cfg = _load_config(args)
    grid = cfg.grid()
    c1, arg = verify.grid_hypothesis_constant(cfg.kernel_spec(), cfg.scales(), grid)
    print(f"C1 = {c1:.12g}")
    print(f"argmax |xi| = {arg:.12g}")
    print(f"scales = {len(cfg.scales())}")
    return 0


def _atom_specs(cfg: RunConfig, count: int | None):
    rng = np.random.default_rng([cfg.seed, 99])
    return verify.draw_atom_specs(cfg, count or cfg.atom_count, rng)


def cmd_atoms(args) -> int:
    cfg = _load_config(args)
    out = Path(args.out or "atoms")
    out.mkdir(parents=True, exist_ok=True)
    grid = cfg.grid()
    manifest = []
    ok = True
    for i, spec in enumerate(_atom_specs(cfg, args.count)):
        atom = spec.build(grid)
        report = validate_atom(atom)
        ok = ok and report.passed
        stem = out / f"atom_{i:03d}"
        if args.format == "blob":
            formats.write_blob(stem, atom.samples.values, grid)
        else:
            formats.write_field_csv(stem.with_suffix(".csv"), atom.samples)
        manifest.append({"id": i, **atom.manifest(), "lambda": 1.0, "valid": report.passed,
                         "file": stem.name + (".bin" if args.format == "blob" else ".csv")})
    (out / "manifest.json").write_text(json.dumps(
        {"grid": grid.describe(), "atoms": manifest}, indent=2, sort_keys=True) + "\n")
    print(f"{len(manifest)} atoms written to {out} ({'all valid' if ok else 'INVALID ATOMS'})")
    return 0 if ok else 1


def cmd_export(args) -> int:
    cfg = _load_config(args)
    out = Path(args.out or "fields")
    out.mkdir(parents=True, exist_ok=True)
    grid, spec, scales = cfg.grid(), cfg.kernel_spec(), cfg.scales()
    if args.source == "atoms":
        atoms = [s.build(grid) for s in _atom_specs(cfg, args.count)
                 if s.p == cfg.p_values[0]]
        f, _ = synthesize(AtomicCombination(tuple(atoms), (1.0,) * len(atoms), cfg.p_values[0]))
    else:
        f = band_limited_field(grid, np.random.default_rng([cfg.seed, 98]), cfg.band_fraction)
    fam = convolution_family(f, spec, scales)
    outputs = {"f": f, "maximal": maximal_field(fam), "variation2": variation_field(fam, 2),
               "square": square_field(fam), "jumps": jump_field(fam, args.lam)}
    for name, field in outputs.items():
        if args.format == "blob":
            formats.write_blob(out / name, field.values, grid)
        else:
            formats.write_field_csv(out / f"{name}.csv", field)
    formats.write_blob(out / "family", fam.values, grid, scales)
    print(f"exported {len(outputs)} fields and the scale family to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value run configuration file")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--out", help="output file or directory")

    parser = argparse.ArgumentParser(prog="varjump", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("suite", parents=[common], help="run every verification check")
    p.add_argument("--details", help="directory for per-ensemble CSV rows")
    p.add_argument("--check", action="append", choices=verify.CHECK_ORDER,
                   help="run only this check (repeatable)")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("var", parents=[common], help="rho-variation of a sequence")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--in", dest="infile", default="-", help="sequence CSV (default stdin)")
    p.add_argument("--witness", action="store_true", help="also print a maximizing subsequence")
    p.set_defaults(func=cmd_var)

    p = sub.add_parser("jump", parents=[common], help="lambda-jump count of a sequence")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--in", dest="infile", default="-", help="sequence CSV (default stdin)")
    p.set_defaults(func=cmd_jump)

    p = sub.add_parser("kernel-check", parents=[common], help="print C1 and its argmax")
    p.set_defaults(func=cmd_kernel_check)

    p = sub.add_parser("atoms", parents=[common], help="build, validate and write an atom ensemble")
    p.add_argument("--count", type=int)
    p.add_argument("--format", choices=("csv", "blob"), default="csv")
    p.set_defaults(func=cmd_atoms)

    p = sub.add_parser("export", parents=[common], help="dump f, Mf, V_2, S and N_lambda fields")
    p.add_argument("--source", choices=("random", "atoms"), default="random")
    p.add_argument("--count", type=int)
    p.add_argument("--lambda", dest="lam", type=float, default=0.1)
    p.add_argument("--format", choices=("csv", "blob"), default="csv")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"varjump: config error: {exc}", file=sys.stderr)
        return 2
    except (VarJumpError, OSError) as exc:
        print(f"varjump: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
