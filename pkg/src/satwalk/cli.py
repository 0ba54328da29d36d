"""Command-line driver.

Subcommands mirror the library surface: ``space`` enumerates a constrained
basis and checks its graph, ``spectrum`` runs the driven chain and reports
level statistics, ``entropy-sweep`` tabulates per-eigenstate entanglement,
and ``construct`` runs the bounded-entanglement design pipeline.

Exit codes: 0 success, 2 validation or rejection, 3 capacity, 4 numerical
quality. Outputs land in --out (default from $SATWALK_OUTDIR), never
overwriting existing files unless --force is given.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import DEFAULTS, Settings, load_settings
from .constraints import (
    clock_constraints,
    enumerate_solutions,
    pxp_constraints,
    read_constraints,
    write_constraints,
)
from .construction import (
    band_cross_pattern,
    cross_pattern,
    design_pipeline,
    ln3_chain_constraints,
    read_pattern,
)
from .drive import DriveProtocol, drive_by_name
from .entanglement import eigenstate_sweep
from .errors import CapacityError, NumericalQualityError, SatwalkError, ValidationError
from .floquet import floquet_operator, quasi_spectrum, write_eigenvectors_bin, write_spectrum_csv
from .graphs import build_hamming_graph, is_median_graph, write_edge_list, write_labels
from .levelstats import circle_spacings, ks_distance_coe, mean_r_statistic, write_histogram_csv
from .manifest import OutputWriter, RunManifest, default_out_dir
from .plots import save_spacing_histogram, save_sweep_scatter


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    parser.add_argument("--force", action="store_true", help="overwrite existing outputs")
    parser.add_argument("--threads", type=int, default=None, help="BLAS thread cap (default: all cores)")
    parser.add_argument("--config", type=Path, default=None, help="key=value settings file")


def _add_drive_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--omega", type=float, default=0.9071, help="driving frequency")
    parser.add_argument("--drive", default="paper", help="drive protocol name (paper/winding or constant)")
    parser.add_argument("--constant-drive", action="store_true", help="shorthand for --drive constant")
    parser.add_argument("--j", type=float, default=1.0, help="hopping J for the constant drive")
    parser.add_argument("--a", type=float, default=0.0, help="tilt A for the constant drive")
    parser.add_argument("--phi", type=float, default=0.0, help="hopping phase for the constant drive")
    parser.add_argument("--drive-config", type=Path, default=None, help="key=value drive parameter file")


def _settings(args) -> Settings:
    return load_settings(args.config) if args.config else DEFAULTS


def _drive_from_args(args) -> DriveProtocol:
    params = {"omega": args.omega, "J": args.j, "A": args.a, "phi": args.phi}
    name = "constant" if args.constant_drive else args.drive
    if args.drive_config:
        for lineno, raw in enumerate(args.drive_config.read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{args.drive_config}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip()
            if key in ("drive", "name", "protocol"):
                name = value.strip()
            else:
                params[key] = float(value)
    return drive_by_name(name, **params)


def _apply_threads(threads: int | None) -> None:
    if threads is None:
        return
    if threads < 1:
        raise ValidationError("--threads must be >= 1")
    from threadpoolctl import threadpool_limits

    threadpool_limits(limits=threads)


def cmd_space(args) -> int:
    settings = _settings(args)
    if args.constraints:
        constraints = read_constraints(args.constraints)
    elif args.preset:
        if args.n is None:
            raise ValidationError("--preset requires --n")
        maker = {"clock": clock_constraints, "pxp": pxp_constraints, "ln3": ln3_chain_constraints}[args.preset]
        constraints = maker(args.n)
    else:
        raise ValidationError("provide a constraints file or --preset")
    manifest = RunManifest("space", {"num_vars": constraints.num_vars, "clauses": len(constraints.clauses)})
    writer = OutputWriter(args.out or default_out_dir() / "space", args.force)

    space = enumerate_solutions(constraints, cap=settings.enum_cap)
    graph = build_hamming_graph(space)
    verdict = is_median_graph(graph, cap=settings.median_cap)

    solutions_path = writer.path("solutions.txt")
    solutions_path.write_text("".join(s + "\n" for s in space.states))
    edges_path = writer.path("edges.txt")
    write_edge_list(graph, edges_path)
    labels_path = writer.path("labels.txt")
    write_labels(graph, labels_path)
    clause_path = writer.path("clauses.txt")
    write_constraints(constraints, clause_path)
    report = {
        "num_vars": space.num_vars,
        "dimension": space.dimension,
        "edge_count": len(graph.edges),
        "is_median": verdict.is_median,
        "witness": list(verdict.witness) if verdict.witness else None,
    }
    report_path = writer.path("report.json")
    report_path.write_text(json.dumps(report, indent=2) + "\n")
    for p in (solutions_path, edges_path, labels_path, clause_path, report_path):
        manifest.record(p)
    manifest.write(writer)
    print(f"{space.dimension} states, {len(graph.edges)} edges, median={verdict.is_median}")
    return 0 if verdict.is_median else 2


def cmd_spectrum(args) -> int:
    settings = _settings(args)
    drive = _drive_from_args(args)
    manifest = RunManifest(
        "spectrum",
        {"n": args.n, "omega": drive.omega, "steps": args.steps or settings.floquet_steps, "drive": drive.name},
    )
    writer = OutputWriter(args.out or default_out_dir() / "spectrum", args.force)
    fop = floquet_operator(args.n, drive, steps=args.steps or settings.floquet_steps)
    spectrum = quasi_spectrum(
        fop,
        cluster_tol=settings.cluster_tol,
        residual_tol=settings.residual_tol,
        unitarity_tol=settings.unitarity_tol,
    )
    sample = circle_spacings(spectrum.phases)

    csv_path = writer.path("spectrum.csv")
    write_spectrum_csv(spectrum, csv_path)
    hist_path = writer.path("spacing_hist.csv")
    write_histogram_csv(sample, hist_path, bin_width=settings.hist_bin_width, s_max=settings.hist_s_max)
    svg_path = writer.path("spacing_hist.svg")
    save_spacing_histogram(sample, svg_path, bin_width=settings.hist_bin_width, s_max=settings.hist_s_max)
    stats = {
        "ks": ks_distance_coe(sample),
        "mean_r": mean_r_statistic(spectrum.phases),
        "count": sample.count,
        "unitarity_residual": fop.unitarity_residual,
        "max_eigen_residual": float(spectrum.residuals.max()),
    }
    stats_path = writer.path("stats.json")
    stats_path.write_text(json.dumps(stats, indent=2) + "\n")
    paths = [csv_path, hist_path, svg_path, stats_path]
    if args.eigenvectors:
        vec_path = writer.path("eigenvectors.bin")
        write_eigenvectors_bin(spectrum, vec_path)
        paths.append(vec_path)
    for p in paths:
        manifest.record(p)
    manifest.write(writer)
    print(f"{len(spectrum.phases)} phases, KS={stats['ks']:.4f}, mean_r={stats['mean_r']:.4f}")
    return 0


def cmd_entropy_sweep(args) -> int:
    settings = _settings(args)
    if args.n % 2:
        raise ValidationError("--n must be even for the half cut")
    drive = _drive_from_args(args)
    site = args.site if args.site is not None else max(1, args.n // 4)
    manifest = RunManifest(
        "entropy-sweep",
        {"n": args.n, "omega": drive.omega, "site": site, "steps": args.steps or settings.floquet_steps,
         "drive": drive.name},
    )
    writer = OutputWriter(args.out or default_out_dir() / "entropy_sweep", args.force)
    fop = floquet_operator(args.n, drive, steps=args.steps or settings.floquet_steps)
    spectrum = quasi_spectrum(
        fop,
        cluster_tol=settings.cluster_tol,
        residual_tol=settings.residual_tol,
        unitarity_tol=settings.unitarity_tol,
    )
    sweep = eigenstate_sweep(spectrum.phases, spectrum.eigenvectors, site=site)
    bound = math.log(2) + settings.entropy_slack
    worst = float(sweep.entropies.max())
    if worst > bound:
        raise NumericalQualityError(
            f"max eigenstate entropy {worst!r} exceeds ln 2 + {settings.entropy_slack}"
        )
    csv_path = writer.path("sweep.csv")
    sweep.write_csv(csv_path)
    svg_path = writer.path("sweep.svg")
    save_sweep_scatter(sweep, svg_path)
    summary = {
        "max_entropy": worst,
        "median_entropy": float(np.median(sweep.entropies)),
        "mean_abs_x": float(np.abs(sweep.x_expectations).mean()),
        "site": site,
    }
    summary_path = writer.path("summary.json")
    summary_path.write_text(json.dumps(summary, indent=2) + "\n")
    for p in (csv_path, svg_path, summary_path):
        manifest.record(p)
    manifest.write(writer)
    print(f"max S = {worst:.9f} <= ln2, median S = {summary['median_entropy']:.6f}")
    return 0


def cmd_construct(args) -> int:
    if args.pattern:
        pattern = read_pattern(args.pattern)
    elif args.preset:
        half = args.n // 2 + 1
        pattern = {"cross": cross_pattern, "ln3": band_cross_pattern}[args.preset](half)
    else:
        raise ValidationError("provide a pattern file or --preset")
    manifest = RunManifest("construct", {"n": args.n, "cells": len(pattern.cells)})
    writer = OutputWriter(args.out or default_out_dir() / "construct", args.force)
    outcome = design_pipeline(pattern, args.n, draws=args.draws, seed=args.seed)
    cert_path = writer.path("certificate.json")
    if outcome.accepted:
        clause_path = writer.path("clauses.txt")
        write_constraints(outcome.constraints, clause_path)
        manifest.record(clause_path)
        cert_path.write_text(json.dumps(outcome.certificate, indent=2) + "\n")
        manifest.record(cert_path)
        manifest.write(writer)
        print(
            f"accepted: rank bound {outcome.certificate['rank_bound']}, "
            f"max eigenstate entropy {outcome.certificate['max_eigenstate_entropy']:.6f}"
        )
        return 0
    rejection = {
        "accepted": False,
        "reason": outcome.reason,
        "witness": list(outcome.witness) if outcome.witness else None,
        "spurious": outcome.spurious,
    }
    cert_path.write_text(json.dumps(rejection, indent=2) + "\n")
    manifest.record(cert_path)
    manifest.write(writer)
    print(f"rejected: {outcome.reason}")
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satwalk", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("space", help="enumerate a constrained basis and test its graph")
    p.add_argument("constraints", nargs="?", type=Path, help="constraint file (vars header + clauses)")
    p.add_argument("--preset", choices=("clock", "pxp", "ln3"), help="generate a standard clause family")
    p.add_argument("--n", type=int, help="variable count for --preset")
    _add_common(p)
    p.set_defaults(func=cmd_space)

    p = sub.add_parser("spectrum", help="one-period propagator, eigenphases, spacing statistics")
    p.add_argument("--n", type=int, required=True, help="chain length")
    p.add_argument("--steps", type=int, default=None, help="time steps per period")
    p.add_argument("--eigenvectors", action="store_true", help="also write the binary eigenvector sidecar")
    _add_drive_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("entropy-sweep", help="per-eigenstate entanglement and local observables")
    p.add_argument("--n", type=int, required=True, help="chain length (even)")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--site", type=int, default=None, help="site for <X_site> (default n/4)")
    _add_drive_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_entropy_sweep)

    p = sub.add_parser("construct", help="design a bounded-entanglement model from a pattern")
    p.add_argument("pattern", nargs="?", type=Path, help="pattern file (dims header + cells)")
    p.add_argument("--preset", choices=("cross", "ln3"), help="built-in pattern family")
    p.add_argument("--n", type=int, required=True, help="chain length (even)")
    p.add_argument("--draws", type=int, default=10, help="random control draws for the certificate")
    p.add_argument("--seed", type=int, default=7)
    _add_common(p)
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_threads(args.threads)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except NumericalQualityError as exc:
        print(f"numerical quality error: {exc}", file=sys.stderr)
        return 4
    except SatwalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
