"""Command-line entry point.

Subcommands: ``run`` (single or grid experiment), ``ablate`` (alias of run),
``validate`` (load + integrity-check inputs, no dynamics), ``synth``
(generate a Gaussian-cluster fixture), ``baselines`` (FS/MFS/unsupervised
only). Exit codes: 0 success, 1 input error, 2 numerical failure.

Options may come from a ``key = value`` config file (``--config``); explicit
flags win over the file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fileio
from .dynamics import DynamicsConfig
from .errors import InputError, NumericalFailureError, SensepropError
from .evaluate import (
    accuracy,
    baseline_fs,
    baseline_mfs,
    baseline_unsupervised,
    run_experiment,
)
from .graph import fuse_concat
from .model import SamplingPlan, sample_labeled_set
from .synth import make_clusters

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2


def _parse_int_list(text: str) -> list[int]:
    """Accepts '1,2,20' and ranges '0..14' (inclusive)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise InputError(f"empty integer list {text!r}")
    return out


def _read_config_file(path) -> dict[str, str]:
    path = Path(path)
    if not path.exists():
        raise InputError(f"config file not found: {path}")
    cfg: dict[str, str] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputError(f"bad config line (expected key = value): {line!r}")
        key, value = line.split("=", 1)
        cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


def _merged(args, key: str, default=None):
    val = getattr(args, key, None)
    if val is not None:
        return val
    file_cfg = getattr(args, "_file_cfg", {})
    if key in file_cfg:
        return file_cfg[key]
    return default


def _require(args, key: str):
    val = _merged(args, key)
    if val is None:
        raise InputError(f"missing required option --{key.replace('_', '-')}")
    return val


def _load_embeddings(args):
    """Parse TAG=PATH specs and apply the fusion recipe in --modality."""
    specs = _merged(args, "embeddings")
    if not specs:
        raise InputError("missing required option --embeddings TAG=PATH")
    if isinstance(specs, str):
        specs = [s for s in specs.split(",") if s]
    by_tag = {}
    for spec in specs:
        if "=" not in spec:
            raise InputError(f"bad embeddings spec {spec!r}, expected TAG=PATH")
        tag, path = spec.split("=", 1)
        path = Path(path)
        if not path.exists():
            raise InputError(f"embeddings file not found: {path}")
        emb = fileio.read_embeddings(path)
        emb.modality_tag = tag
        by_tag[tag] = emb
    recipe = _merged(args, "modality")
    if recipe is None:
        if len(by_tag) != 1:
            raise InputError("multiple embedding files given; choose with --modality (e.g. CNN+O)")
        return next(iter(by_tag.values()))
    tags = recipe.split("+")
    missing = [t for t in tags if t not in by_tag]
    if missing:
        raise InputError(f"modality {recipe!r} needs embeddings for tag {missing[0]!r}")
    emb = by_tag[tags[0]]
    for t in tags[1:]:
        emb = fuse_concat(emb, by_tag[t])
    return emb


def _load_core_inputs(args):
    inv_path = Path(_require(args, "inventory"))
    lab_path = Path(_require(args, "labels"))
    for p in (inv_path, lab_path):
        if not p.exists():
            raise InputError(f"input file not found: {p}")
    inventory = fileio.read_inventory(inv_path)
    truth = fileio.read_labels(lab_path, inventory)
    return inventory, truth


def _class_filters(args, inventory) -> list[str]:
    choice = _merged(args, "class_filter", "all")
    if choice == "each":
        if not inventory.motion_class:
            raise InputError("--class-filter each needs motion classes in the inventory")
        return ["motion", "non-motion"]
    return [choice]


def _print_results_table(results, verbose=False):
    print(f"{'modality':<12} {'class':<12} {'lpc':>4}  accuracy (mean ± std over seeds)")
    for r in results:
        print(
            f"{r.modality_tag:<12} {r.class_filter:<12} {r.labels_per_class:>4}  "
            f"{r.mean:.4f} ± {r.std:.4f}  (n={len(r.seeds)})"
        )


def cmd_run(args) -> int:
    emb = _load_embeddings(args)
    inventory, truth = _load_core_inputs(args)
    out_dir = Path(_require(args, "out"))
    lpc_grid = _parse_int_list(str(_merged(args, "lpc", "1,2,20")))
    seeds = _parse_int_list(str(_merged(args, "seeds", "0..14")))
    protocol = _merged(args, "protocol", "per_sense")
    cfg = DynamicsConfig(
        max_iterations=int(_merged(args, "max_iterations", 100)),
        tolerance=float(_merged(args, "tolerance", 1e-6)),
    )
    traces: list | None = [] if args.verbose else None
    results = []
    for class_filter in _class_filters(args, inventory):
        results.extend(
            run_experiment(
                emb, inventory, truth, lpc_grid, seeds, protocol, cfg,
                class_filter=class_filter, collect_traces=traces,
            )
        )
    out_dir.mkdir(parents=True, exist_ok=True)
    fileio.write_results_csv(results, out_dir / "results.csv")
    fileio.write_ablation_csv(results, out_dir / "ablation.csv")
    if not args.quiet:
        _print_results_table(results)
        print(f"wrote {out_dir / 'results.csv'} and {out_dir / 'ablation.csv'}")
    if args.verbose and traces:
        for t in traces:
            print(
                f"trace: iters={t.iterations_run} residual={t.final_residual:.3g} "
                f"converged={t.converged} potential={t.potential_history[-1]:.6g}"
            )
    return EXIT_OK


def cmd_validate(args) -> int:
    worst = EXIT_OK
    findings: list[tuple[str, str]] = []

    def check(name, fn):
        nonlocal worst
        try:
            fn()
            findings.append((name, "ok"))
        except SensepropError as exc:
            findings.append((name, f"FAIL: {exc}"))
            worst = EXIT_INPUT
        except FileNotFoundError as exc:
            findings.append((name, f"FAIL: {exc}"))
            worst = EXIT_INPUT

    inventory = None
    truth = None

    def load_inventory():
        nonlocal inventory
        inventory = fileio.read_inventory(_require(args, "inventory"))

    def load_labels():
        nonlocal truth
        if inventory is None:
            raise InputError("inventory failed to load")
        truth = fileio.read_labels(_require(args, "labels"), inventory)

    check("inventory", load_inventory)
    check("labels", load_labels)

    specs = _merged(args, "embeddings") or []
    if isinstance(specs, str):
        specs = [s for s in specs.split(",") if s]
    for spec in specs:
        tag, _, path = spec.partition("=")

        def load_emb(path=path, tag=tag):
            emb = fileio.read_embeddings(path)
            emb.validate_norms()
            if truth is not None and set(emb.node_ids) != set(truth.node_ids):
                raise InputError(f"embedding ids for {tag!r} do not match label file")

        check(f"embeddings[{tag}]", load_emb)

    sense_path = _merged(args, "sense_embeddings")
    if sense_path:

        def load_sense():
            if inventory is None:
                raise InputError("inventory failed to load")
            se = fileio.read_sense_embeddings(sense_path, inventory)
            se.validate_norms()

        check("sense-embeddings", load_sense)

    for name, status in findings:
        print(f"{name:<24} {status}")
    return worst


def cmd_synth(args) -> int:
    out_dir = Path(_require(args, "out"))
    emb, inventory, labeling = make_clusters(
        clusters=int(_merged(args, "clusters", 3)),
        points=int(_merged(args, "points", 300)),
        dim=int(_merged(args, "dim", 16)),
        noise=float(_merged(args, "noise", 0.1)),
        seed=int(_merged(args, "seed", 0)),
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    fileio.write_embeddings(emb, out_dir / "embeddings.emb")
    fileio.write_inventory(inventory, out_dir / "inventory.tsv")
    fileio.write_labels(labeling, out_dir / "labels.tsv")
    if not args.quiet:
        print(f"wrote synthetic dataset ({emb.n} nodes, dim {emb.dim}) to {out_dir}")
    return EXIT_OK


def cmd_baselines(args) -> int:
    inventory, truth = _load_core_inputs(args)
    protocol = _merged(args, "protocol", "per_sense")
    lpc_grid = _parse_int_list(str(_merged(args, "lpc", "1")))
    seeds = _parse_int_list(str(_merged(args, "seeds", "0..14")))

    emb = None
    sense_emb = None
    if _merged(args, "embeddings"):
        emb = _load_embeddings(args)
    sense_path = _merged(args, "sense_embeddings")
    if sense_path:
        sense_emb = fileio.read_sense_embeddings(sense_path, inventory)

    import numpy as np

    for lpc in lpc_grid:
        rows = {}
        for seed in seeds:
            plan = SamplingPlan(protocol, lpc, seed)
            _, unlabeled = sample_labeled_set(truth, inventory, plan)
            rows.setdefault("FS", []).append(
                accuracy(baseline_fs(inventory, truth, unlabeled), truth, unlabeled)
            )
            rows.setdefault("MFS", []).append(
                accuracy(baseline_mfs(inventory, truth, unlabeled), truth, unlabeled)
            )
            if emb is not None and sense_emb is not None:
                preds = baseline_unsupervised(emb, sense_emb, truth, unlabeled, inventory)
                rows.setdefault("unsupervised", []).append(
                    accuracy(preds, truth, unlabeled)
                )
        for name, accs in rows.items():
            a = np.asarray(accs)
            std = a.std(ddof=1) if len(a) > 1 else 0.0
            print(f"lpc={lpc:<4} {name:<14} {a.mean():.4f} ± {std:.4f} (n={len(a)})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="senseprop",
        description="Transductive sense labeling over similarity graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value config file; flags override")
        p.add_argument("--quiet", action="store_true")
        p.add_argument("--verbose", action="store_true")

    def experiment_opts(p):
        p.add_argument("--embeddings", action="append", metavar="TAG=PATH")
        p.add_argument("--modality", help="fusion recipe, e.g. CNN+O")
        p.add_argument("--inventory")
        p.add_argument("--labels")
        p.add_argument("--protocol", choices=["per_sense", "per_verb"])
        p.add_argument("--lpc", help="labels per class, e.g. 1,2,20")
        p.add_argument("--seeds", help="e.g. 0..14 or 0,3,7")

    for name, helptext in (("run", "run an experiment grid"),
                           ("ablate", "alias of run (labeled-set-size sweep)")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        experiment_opts(p)
        p.add_argument("--out", help="output directory")
        p.add_argument("--class-filter", dest="class_filter",
                       choices=["all", "motion", "non-motion", "each"])
        p.add_argument("--tolerance", type=float)
        p.add_argument("--max-iterations", dest="max_iterations", type=int)
        p.set_defaults(func=cmd_run)

    p = sub.add_parser("validate", help="check inputs without running dynamics")
    common(p)
    p.add_argument("--embeddings", action="append", metavar="TAG=PATH")
    p.add_argument("--inventory")
    p.add_argument("--labels")
    p.add_argument("--sense-embeddings", dest="sense_embeddings")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("synth", help="generate a synthetic cluster dataset")
    common(p)
    p.add_argument("--clusters", type=int)
    p.add_argument("--points", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--noise", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("baselines", help="FS/MFS/unsupervised baselines only")
    common(p)
    experiment_opts(p)
    p.add_argument("--sense-embeddings", dest="sense_embeddings")
    p.set_defaults(func=cmd_baselines)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args._file_cfg = _read_config_file(args.config) if args.config else {}
        return args.func(args)
    except NumericalFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (SensepropError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
