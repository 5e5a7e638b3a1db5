"""Command-line interface: embed datasets, selfcheck the build, inspect layouts.

Exit codes: 0 full success, 1 fatal error (bad flags, unreadable input,
failed selfcheck), 2 partial success (some graphs failed to embed but a CSV
with the rest was written). The ``ADOGE_SEED`` environment variable supplies
the default probe seed when ``--seed`` is not given.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from .embedder import EmbeddingConfig, embed_dataset, feature_layout
from .errors import AdogeError
from .estimators import EstimatorConfig, estimate_cldos_hist, estimate_dos_hist, estimate_ldos_hist, l1_distance
from .graph import CONTINUOUS, AttributeColumn, AttributeSchema, normalize_adjacency
from .ingest import load_edgelist_dataset, load_tudataset
from .oracle import exact_cldos_hist, exact_dos_hist, exact_ldos_hist, exact_spectrum
from .synth import random_er_graph

_SOURCES = ("dos", "ldos", "cldos")
_KINDS = ("hist", "cheb", "pow")
SELFCHECK_TOL = 1e-6


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, which collides with the
    # "partial success" exit code; remap to the fatal code.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("ADOGE_SEED")
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw.strip())
    except ValueError:
        raise AdogeError(f"ADOGE_SEED must be an integer, got {raw!r}") from None


def _parse_features(spec: str) -> tuple[set[str], set[str]]:
    tokens = [t for chunk in spec.split(";") for t in chunk.split(",")]
    tokens = [t.strip() for t in tokens if t.strip()]
    sources = {t for t in tokens if t in _SOURCES}
    kinds = {t for t in tokens if t in _KINDS}
    unknown = [t for t in tokens if t not in _SOURCES and t not in _KINDS]
    if unknown:
        raise AdogeError(
            f"unknown feature token(s) {unknown}; expected "
            f"{','.join(_SOURCES)};{','.join(_KINDS)}"
        )
    return sources or set(_SOURCES), kinds or set(_KINDS)


def _parse_pairs(spec: str):
    if spec == "all":
        return "all"
    path = Path(spec)
    if not path.is_file():
        raise AdogeError(f"--pairs expects 'all' or a file, {spec!r} not found")
    pairs = []
    for i, line in enumerate(path.read_text().splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        fields = s.split()
        if len(fields) != 2:
            raise AdogeError(f"{path}:{i}: expected 'i j'")
        try:
            pairs.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise AdogeError(f"{path}:{i}: expected integer indices") from None
    return tuple(pairs)


def _build_config(args) -> EmbeddingConfig:
    sources, kinds = _parse_features(args.features)
    degree = {"auto": None, "on": True, "off": False}[args.degree]
    est = EstimatorConfig(
        bins=args.bins,
        eta_l=args.eta_l,
        n_probes=args.probes,
        seed=args.seed if args.seed is not None else _default_seed(),
    )
    return EmbeddingConfig(
        estimator=est,
        k=args.frf,
        include_dos="dos" in sources,
        include_ldos="ldos" in sources,
        include_cldos="cldos" in sources,
        include_hist="hist" in kinds,
        include_cheb="cheb" in kinds,
        include_pow="pow" in kinds,
        include_degree=degree,
        pair_selection=_parse_pairs(args.pairs),
        eps_guard=args.eps_guard,
    )


def _load_dataset(args):
    if args.format == "tudataset":
        return load_tudataset(args.input)
    return load_edgelist_dataset(args.input)


def _config_echo(cfg: EmbeddingConfig) -> dict:
    return {
        "bins": cfg.estimator.bins,
        "eta_l": cfg.estimator.eta_l,
        "probes": cfg.estimator.n_probes,
        "seed": cfg.estimator.seed,
        "reorthogonalize": cfg.estimator.reorthogonalize,
        "frf": cfg.k,
        "sources": [s for s in _SOURCES if getattr(cfg, f"include_{s}")],
        "kinds": [k for k in _KINDS if getattr(cfg, f"include_{k}")],
        "degree": cfg.include_degree,
        "pairs": "all" if cfg.pair_selection == "all" else list(map(list, cfg.pair_selection)),
        "eps_guard": cfg.eps_guard,
    }


def cmd_embed(args) -> int:
    cfg = _build_config(args)
    ds = _load_dataset(args)
    t0 = time.perf_counter()
    result = embed_dataset(ds, cfg, workers=args.jobs)
    elapsed = time.perf_counter() - t0

    out = Path(args.out)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["graph_id", *result.manifest.names])
        for emb in result.embeddings:
            writer.writerow([emb.graph_id, *(f"{x:.17g}" for x in emb.values)])

    manifest_path = Path(str(out) + ".manifest.json")
    manifest_doc = {
        "dataset": ds.name,
        "n_graphs": len(ds),
        "feature_count": len(result.manifest),
        "config": _config_echo(cfg),
        "columns": result.manifest.to_json(),
    }
    manifest_path.write_text(json.dumps(manifest_doc, indent=2, sort_keys=True) + "\n")

    if args.report:
        report = {
            "dataset": ds.name,
            "n_graphs": len(ds),
            "n_embedded": len(result.embeddings),
            "feature_count": len(result.manifest),
            "workers": args.jobs,
            "config": _config_echo(cfg),
            "total_seconds": elapsed,
            "per_graph_seconds": result.timings,
            "warnings": [
                {"graph_id": emb.graph_id, "warnings": list(emb.warnings)}
                for emb in result.embeddings
                if emb.warnings
            ],
            "errors": [
                {"index": i, "error": f"{type(exc).__name__}: {exc}"}
                for i, exc in result.errors
            ],
        }
        Path(args.report).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")

    print(
        f"embedded {len(result.embeddings)}/{len(ds)} graphs, "
        f"{len(result.manifest)} features each, in {elapsed:.2f}s -> {out}"
    )
    for i, exc in result.errors:
        print(f"  graph index {i} failed: {type(exc).__name__}: {exc}", file=sys.stderr)
    return 2 if result.errors else 0


def cmd_selfcheck(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    bins = 64
    dev = {"dos": 0.0, "ldos": 0.0, "cldos": 0.0}
    perturb = float(os.environ.get("ADOGE_SELFCHECK_PERTURB", "0") or 0.0)
    for trial in range(args.trials):
        n = int(rng.integers(4, max(args.n_max, 4) + 1))
        g = random_er_graph(n, 0.3, rng, min_degree_one=True)
        op = normalize_adjacency(g)
        spectrum = exact_spectrum(op)
        cfg = EstimatorConfig(bins=bins, eta_l=n, n_probes=1, seed=seed)

        dos_est = estimate_dos_hist(op, cfg, probes=np.eye(n))
        if trial == 0 and perturb:
            # test hook: corrupt one bin so the deviation check must trip
            bad = dos_est.bins.copy()
            bad[0] += perturb
            dos_est = type(dos_est)(bad, dos_est.kind, dos_est.n)
        dev["dos"] = max(dev["dos"], l1_distance(dos_est, exact_dos_hist(spectrum, bins)))

        v = rng.standard_normal(n)
        v2 = rng.standard_normal(n)
        dev["ldos"] = max(
            dev["ldos"],
            l1_distance(
                estimate_ldos_hist(op, v, cfg), exact_ldos_hist(spectrum, v, bins)
            ),
        )
        dev["cldos"] = max(
            dev["cldos"],
            l1_distance(
                estimate_cldos_hist(op, v, v2, cfg),
                exact_cldos_hist(spectrum, v, v2, bins),
            ),
        )
    ok = True
    for kind in ("dos", "ldos", "cldos"):
        status = "ok" if dev[kind] <= SELFCHECK_TOL else "FAIL"
        ok = ok and dev[kind] <= SELFCHECK_TOL
        print(f"{kind:<6} max L1 deviation {dev[kind]:.3e}  (tol {SELFCHECK_TOL:.0e})  {status}")
    print(f"selfcheck {'passed' if ok else 'failed'} over {args.trials} graphs (seed {seed})")
    return 0 if ok else 1


def cmd_info(args) -> int:
    cfg = _build_config(args)
    if args.input is not None:
        ds = _load_dataset(args)
        schema = ds.schema
        origin = f"dataset {ds.name!r}"
    else:
        cols = tuple(
            AttributeColumn(f"x{j}", CONTINUOUS) for j in range(args.attrs or 0)
        )
        schema = AttributeSchema(cols)
        origin = f"synthetic schema with {len(cols)} continuous column(s)"
    manifest = feature_layout(cfg, schema)
    labels = schema.vector_labels(cfg.degree_enabled(schema))
    print(f"schema: {origin}")
    print(f"attribute vectors (D): {len(labels)}")
    for lab in labels:
        print(f"  {lab}")
    print(f"total feature count: {len(manifest)}")
    counts: dict[str, int] = {}
    for c in manifest.columns:
        counts[c.source] = counts.get(c.source, 0) + 1
    for source in _SOURCES:
        if source in counts:
            print(f"  {source}: {counts[source]}")
    if args.columns:
        for name in manifest.names:
            print(name)
    return 0


def _add_common_feature_flags(p: _Parser) -> None:
    p.add_argument("--bins", type=int, default=200, help="histogram bins B (even)")
    p.add_argument("--eta-l", type=int, default=100, dest="eta_l", help="Lanczos steps")
    p.add_argument("--frf", type=int, default=100, help="filterbank size K")
    p.add_argument("--probes", type=int, default=16, help="random probes for the DOS block")
    p.add_argument("--seed", type=int, default=None,
                   help="probe seed (default: $ADOGE_SEED, else 0)")
    p.add_argument("--features", default="dos,ldos,cldos;hist,cheb,pow",
                   help="sources;kinds list, e.g. 'dos,ldos;hist,cheb'")
    p.add_argument("--pairs", default="all",
                   help="'all' or a file of attribute-index pairs ('i j' per line)")
    p.add_argument("--eps-guard", type=float, default=0.05, dest="eps_guard",
                   help="zero negative-power responses where |center| < this")
    p.add_argument("--degree", choices=("auto", "on", "off"), default="auto",
                   help="append the degree attribute (auto: only for plain graphs)")


def build_parser() -> _Parser:
    parser = _Parser(prog="adoge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser("embed", help="embed a dataset into a CSV of features")
    p_embed.add_argument("--input", required=True, help="dataset directory")
    p_embed.add_argument("--format", choices=("tudataset", "edgelist"), required=True)
    p_embed.add_argument("--out", required=True, help="output CSV path")
    _add_common_feature_flags(p_embed)
    p_embed.add_argument("--jobs", type=int, default=1, help="worker threads")
    p_embed.add_argument("--report", default=None, help="write a JSON run report here")
    p_embed.set_defaults(func=cmd_embed)

    p_check = sub.add_parser("selfcheck", help="compare estimators against the dense oracle")
    p_check.add_argument("--n-max", type=int, default=64, dest="n_max")
    p_check.add_argument("--trials", type=int, default=50)
    p_check.add_argument("--seed", type=int, default=None)
    p_check.set_defaults(func=cmd_selfcheck)

    p_info = sub.add_parser("info", help="print the feature layout without embedding")
    group = p_info.add_mutually_exclusive_group()
    group.add_argument("--input", default=None, help="dataset directory")
    group.add_argument("--attrs", type=int, default=None,
                       help="pretend schema with this many continuous columns")
    p_info.add_argument("--format", choices=("tudataset", "edgelist"), default="tudataset")
    _add_common_feature_flags(p_info)
    p_info.add_argument("--columns", action="store_true", help="also list every column name")
    p_info.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AdogeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
