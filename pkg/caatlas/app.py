import argparse
import sys
from pathlib import Path
from typing import List, Optional
from tqdm import tqdm
from .errors import (
    AtlasError,
    OutputWriteError,
    StoreNotFoundError,
    ValidationError,
)
from .metricspace import (
    BaseProjection,
    boolean_distance,
    boolean_nearest,
    centroid,
    cluster,
    export_csv,
    hybrid,
    idiosyncrasy,
    nearest,
    opposite,
    project2d,
    rank_curve,
    real_distance,
    store_merge,
    store_read,
    store_write,
)
from .report import OUTPUT_FORMATS, neighbour_report, render, vector_report
from .rules import decode, encode, format_rule, parse_rule
from .sampling import SeedRecipe, estimate_rule
from .settings import AtlasSettings, load_settings
from .sweep import (
    DEFAULT_BATCH_SIZE,
    SweepSpec,
    parse_range,
    parse_shard,
    run_sweep,
    select_rule_ids,
)
from .template import CONFIG_TEMPLATE_YAML


def _settings(args) -> AtlasSettings:
    """Config file, then environment, then flags."""
    settings = load_settings(args.config)
    density = None
    if args.density_lo is not None or args.density_hi is not None:
        lo, hi = settings.params.density_range
        density = (
            lo if args.density_lo is None else args.density_lo,
            hi if args.density_hi is None else args.density_hi,
        )
    return settings.with_overrides(
        params={
            "density_range": density,
            "initial_size": args.size,
            "num_steps": args.num_steps,
            "num_samples": args.num_samples,
            "num_trials": args.num_trials,
        },
        seed=args.seed,
        store=args.store,
        jobs=args.jobs,
    )


def _load_store(args):
    settings = _settings(args)
    if settings.store is None:
        raise StoreNotFoundError(
            "No vector store given. Use --store, set CA_ATLAS_STORE or "
            "add 'store' to the config file."
        )
    return store_read(settings.store)


def _write_output(text: str, output: Optional[Path]):
    if output is None:
        print(text)
        return
    try:
        output.write_text(text + "\n")
    except OSError as e:
        raise OutputWriteError(f"Cannot write {output}: {e}") from e
    print(f"Wrote {output}")


def handle_vector(args):
    settings = _settings(args)
    recipe = SeedRecipe(settings.seed)
    for text in args.rules:
        rule = parse_rule(text)
        vector = estimate_rule(rule, settings.params, recipe)
        print(vector_report(rule, vector, args.format))


def handle_sweep(args):
    settings = _settings(args)
    if settings.store is None:
        raise ValidationError(
            "A sweep needs an output store. Use --store or CA_ATLAS_STORE."
        )
    rule_ids = select_rule_ids(
        id_range=parse_range(args.range) if args.range else None,
        rules=[parse_rule(r) for r in args.rules] if args.rules else None,
        around=parse_rule(args.around) if args.around else None,
        radius=args.radius,
        shard=parse_shard(args.shard) if args.shard else None,
    )
    spec = SweepSpec(
        rule_ids=tuple(rule_ids),
        output=settings.store,
        params=settings.params,
        global_seed=settings.seed,
        jobs=settings.jobs,
        checkpoint=args.checkpoint,
        batch_size=args.batch_size,
    )
    run_sweep(spec, quiet=args.quiet, keep_checkpoint=args.keep_checkpoint)


def handle_near(args):
    target = parse_rule(args.target)
    if args.space == "boolean":
        neighbours = boolean_nearest(target, args.k)
        print(neighbour_report(neighbours, args.format, target=target))
        return
    store = _load_store(args)
    query = store.vector(encode(target))
    neighbours = nearest(store, query, args.k, reference=target)
    print(
        neighbour_report(
            neighbours, args.format, target=target, store=store, query=query
        )
    )


def handle_dist(args):
    r1, r2 = parse_rule(args.rule_a), parse_rule(args.rule_b)
    if args.boolean:
        print(f"{boolean_distance(r1, r2):.4f}")
        return
    store = _load_store(args)
    distance = real_distance(
        store.vector(encode(r1)), store.vector(encode(r2))
    )
    print(f"{distance:.4f}")


def handle_curve(args):
    store = _load_store(args)
    targets = [parse_rule(t) for t in args.target]
    curves = [rank_curve(store, encode(t), args.max_rank) for t in targets]
    rows = []
    for i in range(max(len(c) for c in curves)):
        row = [str(i + 1)]
        for curve in curves:
            row.append(f"{curve[i][1]:.4f}" if i < len(curve) else "")
        rows.append(row)
    headers = ["rank"] + [format_rule(t) for t in targets]
    _write_output(render(headers, rows, args.format), args.output)


def handle_hybrid(args):
    store = _load_store(args)
    r1, r2 = parse_rule(args.rule_a), parse_rule(args.rule_b)
    neighbours = hybrid(store, encode(r1), encode(r2), args.k)
    print(neighbour_report(neighbours, args.format))


def handle_opposite(args):
    store = _load_store(args)
    target = parse_rule(args.rule)
    result = opposite(store, encode(target))
    print(neighbour_report([result], args.format))


def handle_centroid(args):
    store = _load_store(args)
    members = {encode(parse_rule(r)) for r in args.rules}
    mean, member = centroid(store, members)
    distance = real_distance(mean, store.vector(member))
    rows = [["members", str(len(members))]]
    rows.append(["paradigm", format_rule(decode(member))])
    rows.append(["distance", f"{distance:.4f}"])
    print(render(["", "value"], rows, args.format))


def handle_unique(args):
    store = _load_store(args)
    with tqdm(
        total=len(store), unit="rule", file=sys.stderr, disable=args.quiet
    ) as bar:
        result = idiosyncrasy(store, args.k, progress=bar.update)
    rows = [
        [str(rank), format_rule(decode(rule_id)), f"{d:.4f}"]
        for rank, (rule_id, d) in enumerate(result, start=1)
    ]
    print(render(["rank", "rule", "nn_distance"], rows, args.format))


def handle_cluster(args):
    store = _load_store(args)
    seed = args.cluster_seed
    if seed is None:
        seed = _settings(args).seed
    result = cluster(store, args.k, max_iters=args.max_iters, seed=seed)
    if args.format == "table":
        status = "converged" if result.converged else "not converged"
        print(
            f"k-means finished after {result.iterations} iteration(s) "
            f"({status}), objective {result.objective:.4f}."
        )
    if args.output is not None:
        rows = [
            [format_rule(decode(rule_id)), str(label)]
            for rule_id, label in result.assignment.items()
        ]
        _write_output(render(["rule", "cluster"], rows, "csv"), args.output)
    rows = []
    for label in range(args.k):
        members = result.members(label)
        if not members:
            rows.append([str(label), "0", ""])
            continue
        _, paradigm = centroid(store, members)
        rows.append(
            [
                str(label),
                str(len(members)),
                format_rule(decode(paradigm)),
            ]
        )
    print(render(["cluster", "size", "paradigm"], rows, args.format))


def handle_project(args):
    store = _load_store(args)
    projection = BaseProjection.create(
        args.mode, dims=args.dims, seed=_settings(args).seed
    )
    points = project2d(store, projection)
    x_label, y_label = projection.axis_labels()
    rows = [
        [format_rule(decode(rule_id)), f"{x:.6f}", f"{y:.6f}"]
        for rule_id, x, y in points
    ]
    _write_output(render(["rule", x_label, y_label], rows, "csv"), args.output)


def handle_export(args):
    store = _load_store(args)
    if args.output is None:
        export_csv(store, sys.stdout)
        return
    try:
        with open(args.output, "w", newline="") as f:
            export_csv(store, f)
    except OSError as e:
        raise OutputWriteError(f"Cannot write {args.output}: {e}") from e
    print(f"Exported {len(store)} vector(s) to {args.output}")


def handle_merge(args):
    stores = [store_read(path) for path in args.inputs]
    merged = stores[0]
    for other in stores[1:]:
        merged = store_merge(merged, other)
    store_write(merged, args.output)
    print(
        f"Merged {len(stores)} store(s) into {args.output} "
        f"({len(merged)} vectors)."
    )


def handle_init(args):
    config_path = Path(args.config_file)
    if config_path.exists():
        raise ValidationError(f"File already exists at {config_path}")
    try:
        config_path.parent.mkdir(parents=True, exist_ok=True)
        config_path.write_text(CONFIG_TEMPLATE_YAML.lstrip())
    except OSError as e:
        raise OutputWriteError(f"Cannot write {config_path}: {e}") from e
    print(f"Created a new example config file at: {config_path}")


def _common_parser() -> argparse.ArgumentParser:
    """Flags shared by every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("global options")
    group.add_argument("--store", type=Path, help="Path to the vector store.")
    group.add_argument("--seed", type=int, help="Global 64-bit seed.")
    group.add_argument("--jobs", type=int, help="Worker processes.")
    group.add_argument("--density-lo", type=float, help="Lowest density.")
    group.add_argument("--density-hi", type=float, help="Highest density.")
    group.add_argument("--size", type=int, help="Soup side length.")
    group.add_argument(
        "--num-steps", type=int, help="Generations before sampling."
    )
    group.add_argument(
        "--num-samples", type=int, help="Transitions sampled per run."
    )
    group.add_argument("--num-trials", type=int, help="Runs per rule.")
    group.add_argument(
        "--shard", help="Only process shard i of n, written 'i/n'."
    )
    group.add_argument(
        "--checkpoint",
        type=Path,
        help="Checkpoint directory (default: next to the output store).",
    )
    group.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default="table",
        help="Output format for printed results.",
    )
    group.add_argument(
        "--config", type=Path, help="Path to a YAML config file."
    )
    group.add_argument(
        "--quiet", action="store_true", help="Hide progress bars."
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        description="Behaviour vectors and similarity queries for "
        "life-like cellular automata."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, help=help_text, parents=[common])

    parser_vector = add("vector", "Estimate and print behaviour vectors.")
    parser_vector.add_argument("rules", nargs="+", help="Rules, e.g. B3/S23.")
    parser_vector.set_defaults(func=handle_vector)

    parser_sweep = add("sweep", "Compute vectors for many rules.")
    parser_sweep.add_argument("--range", help="Rule id range 'A:B'.")
    parser_sweep.add_argument("--rules", nargs="+", help="Explicit rules.")
    parser_sweep.add_argument(
        "--around", help="Sweep the digit-distance neighbourhood of a rule."
    )
    parser_sweep.add_argument(
        "--radius", type=int, default=2, help="Neighbourhood radius."
    )
    parser_sweep.add_argument(
        "--batch-size",
        type=int,
        default=DEFAULT_BATCH_SIZE,
        help="Rules per checkpoint batch.",
    )
    parser_sweep.add_argument(
        "--keep-checkpoint",
        action="store_true",
        help="Keep the checkpoint directory after a successful sweep.",
    )
    parser_sweep.set_defaults(func=handle_sweep)

    parser_near = add("near", "List the nearest neighbours of a rule.")
    parser_near.add_argument("--target", required=True, help="Target rule.")
    parser_near.add_argument("-k", type=int, default=20, help="Rows.")
    parser_near.add_argument(
        "--space",
        choices=("real", "boolean"),
        default="real",
        help="Rank by real distance (store) or Boolean distance.",
    )
    parser_near.set_defaults(func=handle_near)

    parser_dist = add("dist", "Distance between two rules.")
    parser_dist.add_argument("rule_a")
    parser_dist.add_argument("rule_b")
    parser_dist.add_argument(
        "--boolean", action="store_true", help="Boolean distance instead."
    )
    parser_dist.set_defaults(func=handle_dist)

    parser_curve = add("curve", "Rank/distance data around targets.")
    parser_curve.add_argument(
        "--target", nargs="+", required=True, help="Target rule(s)."
    )
    parser_curve.add_argument("--max-rank", type=int, default=200)
    parser_curve.add_argument("--output", type=Path, help="Output file.")
    parser_curve.set_defaults(func=handle_curve)

    parser_hybrid = add("hybrid", "Rules half way between two rules.")
    parser_hybrid.add_argument("rule_a")
    parser_hybrid.add_argument("rule_b")
    parser_hybrid.add_argument("-k", type=int, default=10, help="Rows.")
    parser_hybrid.set_defaults(func=handle_hybrid)

    parser_opposite = add("opposite", "The rule farthest from a rule.")
    parser_opposite.add_argument("rule")
    parser_opposite.set_defaults(func=handle_opposite)

    parser_centroid = add(
        "centroid", "Most typical member of a group of rules."
    )
    parser_centroid.add_argument("rules", nargs="+")
    parser_centroid.set_defaults(func=handle_centroid)

    parser_unique = add("unique", "Rules least like their nearest rule.")
    parser_unique.add_argument("-k", type=int, default=20, help="Rows.")
    parser_unique.set_defaults(func=handle_unique)

    parser_cluster = add("cluster", "k-means clustering of the store.")
    parser_cluster.add_argument("-k", type=int, required=True)
    parser_cluster.add_argument("--max-iters", type=int, default=100)
    parser_cluster.add_argument(
        "--cluster-seed",
        type=int,
        help="Seed for centre selection (default: the global seed).",
    )
    parser_cluster.add_argument(
        "--output", type=Path, help="Write the rule/cluster assignment CSV."
    )
    parser_cluster.set_defaults(func=handle_cluster)

    parser_project = add("project", "2-D projection of the store as CSV.")
    parser_project.add_argument(
        "--mode",
        choices=BaseProjection.get_available_modes(),
        default="pca",
    )
    parser_project.add_argument(
        "--dims",
        nargs=2,
        metavar=("A", "B"),
        help="Dimensions for coords mode: indices or labels like even_B3.",
    )
    parser_project.add_argument("--output", type=Path, help="Output file.")
    parser_project.set_defaults(func=handle_project)

    parser_export = add("export", "Export the store as CSV.")
    parser_export.add_argument("--output", type=Path, help="Output file.")
    parser_export.set_defaults(func=handle_export)

    parser_merge = add("merge", "Merge shard stores into one.")
    parser_merge.add_argument("output", type=Path)
    parser_merge.add_argument("inputs", type=Path, nargs="+")
    parser_merge.set_defaults(func=handle_merge)

    parser_init = add("init", "Create an example config file.")
    parser_init.add_argument("config_file", type=str)
    parser_init.set_defaults(func=handle_init)
    return parser


def main(argv: Optional[List[str]] = None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except AtlasError as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(e.exit_code)
    except KeyboardInterrupt:
        print("\nInterrupted. Finished batches are kept.", file=sys.stderr)
        sys.exit(130)
