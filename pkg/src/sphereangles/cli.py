"""Command line front end.

Exit codes: 0 on success (including a rejected null hypothesis), 1 on domain
or runtime errors, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .angles import extremes, pairwise_angles
from .inference import concentration_bound, packing_test, spurious_correlation_threshold
from .laws import LAW_KINDS, limit_law
from .montecarlo import ExperimentSpec, figure_data, load_spec, run, write_report
from .sphere import DataMatrix, SeedSpec, normalize_rows, sample_dgp, sample_uniform_sphere

__all__ = ["main", "read_csv_matrix", "write_csv_matrix"]


class CsvFormatError(ValueError):
    pass


def read_csv_matrix(path) -> np.ndarray:
    """Read a comma separated numeric matrix; a non-numeric first line is a header."""
    rows, width = [], None
    with open(path, newline="") as fh:
        for lineno, fields in enumerate(csv.reader(fh), start=1):
            if not fields or all(not f.strip() for f in fields):
                continue
            try:
                values = [float(f) for f in fields]
            except ValueError:
                if lineno == 1:
                    continue
                raise CsvFormatError(f"{path}: line {lineno}: non-numeric field") from None
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise CsvFormatError(f"{path}: line {lineno}: expected {width} fields, got {len(values)}")
            rows.append(values)
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    return np.array(rows, dtype=np.float64)


def write_csv_matrix(fh, matrix, header=None):
    writer = csv.writer(fh, lineterminator="\n")
    if header:
        writer.writerow(header)
    for row in np.asarray(matrix):
        writer.writerow([repr(float(v)) for v in row])


def _sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _now():
    return datetime.now(timezone.utc).isoformat()


def write_manifest(path, argv, config, seed, started, outputs):
    manifest = {
        "command": ["sphereangles"] + list(argv),
        "config": config,
        "master_seed": seed,
        "version": __version__,
        "started": started,
        "finished": _now(),
        "outputs": {os.path.basename(p): _sha256(p) for p in outputs},
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _probability(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def _grid(text):
    try:
        a, b, m = text.split(":")
        a, b, m = float(a), float(b), int(m)
    except ValueError:
        raise argparse.ArgumentTypeError("grid must look like start:stop:count") from None
    if m < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 points")
    return np.linspace(a, b, m)


def _emit(value):
    print(f"{value:.15g}")


def cmd_sample(args, argv):
    started = _now()
    seed = SeedSpec(args.seed, args.stream)
    if args.dist is None:
        matrix = sample_uniform_sphere(args.n, args.p, seed).coords
    else:
        matrix = sample_dgp(args.dist, args.n, args.p, seed).values
    header = [f"x{j + 1}" for j in range(matrix.shape[1])] if args.header else None
    if args.output in (None, "-"):
        write_csv_matrix(sys.stdout, matrix, header)
        return 0
    with open(args.output, "w", newline="") as fh:
        write_csv_matrix(fh, matrix, header)
    config = {"n": args.n, "p": args.p, "dist": args.dist, "stream": args.stream}
    write_manifest(args.output + ".manifest.json", argv, config, args.seed, started, [args.output])
    return 0


def cmd_angles(args, argv):
    points = normalize_rows(DataMatrix(read_csv_matrix(args.input)))
    angles = pairwise_angles(points)
    ext = extremes(angles)
    if args.output:
        i, j = np.triu_indices(points.n, k=1)
        with open(args.output, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["i", "j", "cosine", "angle"])
            for a, b, c, t in zip(i, j, angles.cosines, angles.angles):
                writer.writerow([int(a), int(b), repr(float(c)), repr(float(t))])
    print(json.dumps({
        "n": points.n, "p": points.p, "theta_min": ext.theta_min, "theta_max": ext.theta_max,
        "m_n": ext.m_n, "l_np": ext.l_np,
    }, indent=2))
    return 0


def _law_params(args):
    params = {}
    for name in ("p", "beta", "alpha"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    return params


def cmd_dist(args, argv):
    try:
        law = limit_law(args.law, **_law_params(args))
    except TypeError as exc:
        raise ValueError(f"wrong parameters for law {args.law}: {exc}") from None
    what = args.what
    if what == "auto":
        what = "pdf" if args.law.endswith("-density") else "cdf"
    if args.quantile is not None:
        _emit(float(law.quantile(args.quantile)))
        return 0
    if args.at is not None:
        _emit(float(getattr(law, what)(args.at)))
        return 0
    values = np.asarray(getattr(law, what)(args.grid), dtype=np.float64)
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", newline="")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["x", what])
        for x, v in zip(args.grid, values):
            writer.writerow([repr(float(x)), repr(float(v))])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_test(args, argv):
    data = DataMatrix(read_csv_matrix(args.input))
    result = packing_test(data, args.alpha)
    print(json.dumps(result.to_dict(), indent=2))
    return 0


def cmd_threshold(args, argv):
    value, degenerate = spurious_correlation_threshold(args.n, args.p, return_flag=True)
    if args.json:
        print(json.dumps({"n": args.n, "p": args.p, "threshold": value, "degenerate": degenerate}))
    else:
        _emit(value)
    return 0


def cmd_bound(args, argv):
    _emit(concentration_bound(args.epsilon, args.p))
    return 0


def _finish_run(report, out_dir, argv, config, seed, started):
    paths = write_report(report, out_dir)
    write_manifest(os.path.join(out_dir, "manifest.json"), argv, config, seed, started, paths)
    for path in paths:
        print(path)
    return 0


def cmd_experiment(args, argv):
    started = _now()
    spec = load_spec(args.config)
    report = run(spec, threads=args.threads)
    return _finish_run(report, args.out, argv, spec.to_dict(), spec.master_seed, started)


def cmd_figure(args, argv):
    started = _now()
    raw = {"kind": "figure-data", "fig_id": args.fig, "replicates": args.replicates, "master_seed": args.seed}
    spec = ExperimentSpec(**raw)
    report = figure_data(args.fig, spec, threads=args.threads)
    return _finish_run(report, args.out, argv, spec.to_dict(), spec.master_seed, started)


def build_parser():
    parser = argparse.ArgumentParser(prog="sphereangles", description="Angles between random points on spheres.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample uniform points or one of the six test distributions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--dist", type=int, choices=range(6))
    p.add_argument("--output", "-o")
    p.add_argument("--header", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("angles", help="pairwise angles and extremes of a CSV point set")
    p.add_argument("--input", required=True)
    p.add_argument("--output", "-o", help="CSV of all pairs (i, j, cosine, angle)")
    p.set_defaults(func=cmd_angles)

    p = sub.add_parser("dist", help="density, CDF or quantile of a limit law")
    p.add_argument("--law", required=True, choices=LAW_KINDS)
    p.add_argument("--p", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--what", choices=("auto", "pdf", "cdf"), default="auto",
                   help="auto: pdf for *-density laws, cdf otherwise")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--at", type=float)
    where.add_argument("--quantile", type=_probability)
    where.add_argument("--grid", type=_grid)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("test-sphericity", help="minimum-angle packing test on a CSV sample")
    p.add_argument("--input", required=True)
    p.add_argument("--alpha", type=_probability, default=0.05)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("threshold", help="spurious correlation threshold")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("bound", help="concentration bound for one pairwise angle")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("experiment", help="run a Monte Carlo study from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", default="results")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("figure", help="datasets behind figures 1-4")
    p.add_argument("--fig", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--replicates", type=int, default=200)
    p.add_argument("--seed", type=int, default=ExperimentSpec.__dataclass_fields__["master_seed"].default)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", default="results")
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
