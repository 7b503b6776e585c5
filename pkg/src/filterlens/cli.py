"""Command line interface.

``filterlens analyze`` loads a CSV, applies filters in order, and prints
an audit report: one strength line per pushed filter plus the final
snapshot.  ``--json`` prints the report as canonical JSON whose
"snapshot" member is byte-identical to the HTTP API's snapshot for the
same inputs.  Exit status: 0 on success, 1 for file, parse, or validation
errors, 2 for domain errors such as a filter matching nothing.

``filterlens serve`` runs the HTTP API.
"""
from __future__ import annotations

import sys
from pathlib import Path

import click

from .dataset import load_csv
from .errors import (
    AllMissing,
    EmptyDataset,
    ExplorerError,
    InvalidConfig,
    InvalidConstraint,
    InvalidOverride,
    InvalidSubset,
    MalformedCsv,
    UnknownColumn,
)
from .filters import format_constraint, parse_constraint, validate_constraint
from .jsonutil import canonical_dumps
from .partition import SimilarityConfig
from .session import Mode, Session

_VALIDATION_ERRORS = (
    MalformedCsv,
    EmptyDataset,
    AllMissing,
    InvalidOverride,
    InvalidConstraint,
    InvalidSubset,
    InvalidConfig,
    UnknownColumn,
)


def _fail(exc: Exception, status: int) -> None:
    code = exc.code if isinstance(exc, ExplorerError) else type(exc).__name__
    click.echo(f"error: {code}: {exc}", err=True)
    sys.exit(status)


@click.group()
def main() -> None:
    """Counterfactual subset analysis for filtered datasets."""


@main.command()
@click.argument("data", type=click.Path(dir_okay=False))
@click.option("--outcome", required=True, help="outcome column name")
@click.option("--filter", "filter_texts", multiple=True, metavar="EXPR",
              help="constraint, 'col:lo..hi' or 'col=a|b'; repeatable, applied in order")
@click.option("--mode", type=click.Choice([m.value for m in Mode]),
              default=Mode.COUNTERFACTUAL.value, show_default=True)
@click.option("--cf-fraction", type=float, default=0.5, show_default=True,
              help="fraction of the complement ranked counterfactual")
@click.option("--in-sample-cap", type=int, default=1000, show_default=True,
              help="max included rows distances are averaged against; 0 disables the cap")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--feature", default=None, help="column to include feature detail for")
@click.option("--numeric", multiple=True, metavar="COL",
              help="force a column to be treated as numerical; repeatable")
@click.option("--categorical", multiple=True, metavar="COL",
              help="force a column to be treated as categorical; repeatable")
@click.option("--name", default=None, help="dataset name (defaults to the file name)")
@click.option("--json", "as_json", is_flag=True, help="print the report as canonical JSON")
def analyze(data, outcome, filter_texts, mode, cf_fraction, in_sample_cap, seed,
            feature, numeric, categorical, name, as_json) -> None:
    """Analyze DATA (a CSV file) against an outcome column."""
    try:
        csv_bytes = Path(data).read_bytes()
    except OSError as exc:
        _fail(exc, 1)
    try:
        ds = load_csv(csv_bytes, name=name or Path(data).name,
                      numeric=numeric, categorical=categorical)
        constraints = [parse_constraint(text) for text in filter_texts]
        for constraint in constraints:
            if constraint.column != outcome:
                validate_constraint(ds, constraint)
        config = SimilarityConfig(
            cf_fraction=cf_fraction,
            in_sample_cap=in_sample_cap if in_sample_cap > 0 else None,
            seed=seed,
        )
        session = Session(ds, outcome, mode=mode, config=config)
        if feature is not None:
            ds.column(feature)
    except _VALIDATION_ERRORS as exc:
        _fail(exc, 1)

    try:
        filter_reports = []
        for constraint in constraints:
            snap = session.push_filter(constraint)
            filter_reports.append({
                "constraint": constraint.to_jsonable(),
                "strength": None if snap.strength is None else snap.strength.to_jsonable(),
                "sizes": {label: info.count for label, info in snap.subsets.items()},
            })
        final = session.snapshot(selected_feature=feature)
    except ExplorerError as exc:
        _fail(exc, 2)

    report = {"filters": filter_reports, "snapshot": final.to_jsonable()}
    if as_json:
        click.echo(canonical_dumps(report))
    else:
        click.echo(render_report(report))


def render_report(report: dict) -> str:
    """Human-readable rendering of an audit report.  Every number shown
    here is read from the same dict the JSON output serializes; floats
    are formatted to four decimals."""
    snap = report["snapshot"]
    lines = []
    lines.append(f"outcome: {snap['outcome']}  mode: {snap['mode']}  rows: {snap['n_rows']}")

    if report["filters"]:
        lines.append("")
        lines.append(f"{'filter':<36} {'d':>8} {'strength':<10} sizes")
        for entry in report["filters"]:
            from .filters import constraint_from_jsonable

            label = format_constraint(constraint_from_jsonable(entry["constraint"]))
            sizes = "  ".join(f"{k}={v}" for k, v in sorted(entry["sizes"].items()))
            if entry["strength"] is None:
                lines.append(f"{label:<36} {'-':>8} {'-':<10} {sizes}")
            else:
                d = entry["strength"]["d"]
                cls = entry["strength"]["strength"]
                lines.append(f"{label:<36} {d:>8.4f} {cls:<10} {sizes}")

    lines.append("")
    lines.append("subsets:")
    for label, info in sorted(snap["subsets"].items()):
        lines.append(f"  {label:<12} count={info['count']}  fraction={info['fraction']:.4f}")

    if snap["strength"] is not None:
        s = snap["strength"]
        lines.append("")
        lines.append(f"strength: d={s['d']:.4f} ({s['measure']}) -> {s['strength']}")

    lines.append("")
    lines.append(f"outcome distribution ({snap['outcome']}):")
    labels = sorted(snap["outcome_distributions"])
    first = snap["outcome_distributions"][labels[0]]
    if first["kind"] == "categorical":
        header = "  ".join(f"{label:>12}" for label in labels)
        lines.append(f"  {'category':<16}{header}")
        for i, cat in enumerate(first["categories"]):
            row = "  ".join(
                f"{snap['outcome_distributions'][label]['fractions'][i]:>12.4f}"
                for label in labels
            )
            lines.append(f"  {cat:<16}{row}")
    else:
        lines.append(f"  {'subset':<12} {'n':>6} {'mean':>10} {'min':>10} {'max':>10}")
        for label in labels:
            dist = snap["outcome_distributions"][label]
            def fmt(v):
                return f"{v:>10.4f}" if v is not None else f"{'-':>10}"
            lines.append(
                f"  {label:<12} {dist['n']:>6} {fmt(dist['mean'])} {fmt(dist['min'])} {fmt(dist['max'])}"
            )

    if snap["associations"]:
        lines.append("")
        lines.append("associations with outcome:")
        subset_labels = sorted(snap["subsets"])
        header = "  ".join(f"{label:>10}" for label in subset_labels)
        lines.append(f"  {'feature':<24} {'method':<14}{header}")
        for entry in snap["associations"]:
            cells = []
            for label in subset_labels:
                value = entry["values"].get(label)
                cells.append(f"{value:>10.4f}" if value is not None else f"{'-':>10}")
            lines.append(f"  {entry['feature']:<24} {entry['method']:<14}{'  '.join(cells)}")

    return "\n".join(lines)


@main.command()
@click.option("--port", type=int, default=8765, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-root", type=click.Path(file_okay=False), default=None,
              help="storage root (defaults to $FILTERLENS_DATA_DIR or ./filterlens_data)")
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False), default=None,
              help="directory of built UI assets to serve at / (defaults to ./frontend/dist if present)")
def serve(port, host, data_root, ui_dir) -> None:
    """Run the HTTP API."""
    import uvicorn

    from .server import create_app

    if ui_dir is None and Path("frontend/dist").is_dir():
        ui_dir = "frontend/dist"
    uvicorn.run(create_app(data_root, ui_dir), host=host, port=port)


if __name__ == "__main__":
    main()
