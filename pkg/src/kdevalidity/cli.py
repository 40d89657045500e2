"""Command-line interface.

Subcommands: ``distances``, ``cluster``, ``validate``, ``estimate-k`` and
``simulate``.  Results go to ``--out`` (or standard output); diagnostics go
to standard error.  Exit status is 0 on success, 2 for usage errors and a
per-class nonzero code for domain errors (see :mod:`kdevalidity.errors`).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .clustering import CLUSTERERS, kmeans, make_clusterer
from .distances import METRICS, pairwise_matrix, write_matrix_csv
from .errors import ValidityError
from .io import ingest_csv, read_labels, write_labels
from .kde import KdeConfig
from .simulation import SCENARIOS, run_study, scenario, table_csv, write_table_csv
from .validity import INDICES, evaluate, estimate_k

log = logging.getLogger("kdevalidity")

DEFAULT_SEED = 20240101


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _config(args) -> KdeConfig:
    return KdeConfig(alpha=args.alpha, sigma_scope=args.sigma_scope.replace("-", "_"))


def _load(args):
    if args.data is None:
        raise SystemExit("error: --data is required")
    data = ingest_csv(args.data, args.spec)
    dist = pairwise_matrix(data, args.metric)
    return data, dist


def _k_range(args) -> range:
    return range(args.k_min, args.k_max + 1)


def _table_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["K", "M_clus", "ASW", "Dunn"])
    for k, m, a, d in report.table():
        writer.writerow([k] + ["" if v is None else repr(v) for v in (m, a, d)])
    writer.writerow(["khat"] + ["" if report.khat.get(i) is None else report.khat[i] for i in INDICES])
    return buf.getvalue()


def cmd_distances(args) -> None:
    _, dist = _load(args)
    if args.format == "json":
        _emit(json.dumps(dist.tolist()) + "\n", args.out)
    elif args.out in (None, "-"):
        buf = io.StringIO()
        np.savetxt(buf, dist, delimiter=",", fmt="%r")
        sys.stdout.write(buf.getvalue())
    else:
        write_matrix_csv(dist, args.out)


def cmd_cluster(args) -> None:
    data, dist = _load(args)
    k = args.k if args.k is not None else args.k_min
    if args.clusterer == "kmeans":
        clustering = kmeans(data.values, k, seed=args.seed, nstart=args.nstart).clustering
    else:
        clustering = make_clusterer(args.clusterer, dist=dist, seed=args.seed,
                                    ward=args.linkage)(k)
    if args.out in (None, "-"):
        buf = io.StringIO()
        buf.write("member_id,label\n")
        for m, lab in zip(data.ids, clustering.labels.tolist()):
            buf.write(f"{m},{lab}\n")
        sys.stdout.write(buf.getvalue())
    else:
        write_labels(clustering, data.ids, args.out)


def cmd_validate(args) -> None:
    data, dist = _load(args)
    if args.labels is None:
        raise SystemExit("error: --labels is required for validate")
    clustering = read_labels(args.labels, data)
    res = evaluate(clustering, dist, INDICES, _config(args), args.seed)
    report = {"results": [res.to_dict()], "khat": {}}
    _emit(json.dumps(report, indent=2) + "\n", args.out)


def _alpha_values(spec: str) -> list[float]:
    start, stop, step = (float(x) for x in spec.split(":"))
    count = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 10) for i in range(count)]


def cmd_estimate_k(args) -> None:
    data, dist = _load(args)
    clusterer = make_clusterer(args.clusterer, dist=dist, data=data.values,
                               seed=args.seed, nstart=args.nstart, ward=args.linkage)
    if args.alpha_sweep:
        # cluster once per K, then rescore under every alpha
        cache = {k: clusterer(k) for k in _k_range(args)}
        sweep = []
        for alpha in _alpha_values(args.alpha_sweep):
            cfg = KdeConfig(alpha=alpha, sigma_scope=args.sigma_scope.replace("-", "_"))
            khat, report = estimate_k(dist, cache.__getitem__, ("mclus",), _k_range(args),
                                      cfg, args.seed)
            sweep.append({"alpha": alpha, "khat": khat["mclus"],
                          "mclus": {r.k: r.mclus for r in report.results}})
        best = np.array([s["mclus"][s["khat"]] for s in sweep if s["khat"] is not None])
        summary = {
            "n_alpha": len(sweep),
            "khat_counts": {str(k): sum(s["khat"] == k for s in sweep) for k in _k_range(args)},
            "mclus_mean": float(best.mean()) if best.size else None,
            "mclus_se": float(best.std(ddof=1) / np.sqrt(best.size)) if best.size > 1 else None,
        }
        _emit(json.dumps({"sweep": sweep, "summary": summary}, indent=2) + "\n", args.out)
        return
    khat, report = estimate_k(dist, clusterer, INDICES, _k_range(args), _config(args), args.seed)
    if args.format == "csv":
        _emit(_table_csv(report), args.out)
    else:
        _emit(report.to_json(indent=2) + "\n", args.out)


def cmd_simulate(args) -> None:
    spec = scenario(args.scenario, rep=args.rep)

    def progress(done, total):
        log.info("%s: replication %d/%d", spec.name, done, total)

    result = run_study(spec, args.seed, _config(args), nstart=args.nstart, progress=progress)
    if args.format == "csv":
        _emit(table_csv([result]), args.out)
        return
    _emit(result.to_json(indent=2) + "\n", args.out)
    if args.out not in (None, "-") and Path(args.out).suffix != ".csv":
        write_table_csv([result], Path(args.out).with_suffix(".csv"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", help="CSV data file (header row; optional leading 'id' column)")
    common.add_argument("--labels", help="member_id,label CSV")
    common.add_argument("--spec", help="variable kinds, e.g. 'c,c,b' or 'b,c*' (default: all continuous)")
    common.add_argument("--metric", choices=METRICS, default="euclidean")
    common.add_argument("--clusterer", choices=CLUSTERERS, default="hier-average")
    common.add_argument("--linkage", choices=("ward", "ward.D"), default="ward",
                        help="Ward variant for hier-ward (ward = Ward.D2)")
    common.add_argument("--k", type=int, help="number of clusters for 'cluster'")
    common.add_argument("--k-min", type=int, default=2)
    common.add_argument("--k-max", type=int, default=6)
    common.add_argument("--alpha", type=float, default=5.0, help="bandwidth exponent (h ~ n^(-1/alpha))")
    common.add_argument("--alpha-sweep", help="START:STOP:STEP alpha grid for estimate-k")
    common.add_argument("--sigma-scope", choices=("per-sample", "global"), default="per-sample")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--nstart", type=int, default=10, help="k-means restarts")
    common.add_argument("--rep", type=int, default=100)
    common.add_argument("--scenario", choices=SCENARIOS, default="s1")
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--format", choices=("json", "csv"),
                        help="output format (default: csv for distances, json otherwise)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="kdevalidity", description="KDE-mode cluster validity toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, help_text in (
        ("distances", cmd_distances, "write the pairwise distance matrix"),
        ("cluster", cmd_cluster, "cluster the data into --k groups"),
        ("validate", cmd_validate, "score a given labelling"),
        ("estimate-k", cmd_estimate_k, "sweep K and pick the argmax per index"),
        ("simulate", cmd_simulate, "run a simulation study"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        args.func(args)
    except ValidityError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
