import functools
import sys
from pathlib import Path
from typing import List, Optional

import click
import numpy as np
import orjson

from cli.formatting import document_json, dumps, multitree_header, multitree_rows, write_csv, write_table, yes_no
from core.config import settings
from core.errors import MultitreeError
from core.logging import get_logger
from core.utils import format_sig, parse_number_list
from fermat.models import solution_document
from fermat.service import fermat_service, solve_fermat
from inverse_fermat.bessel import bessel_path, bessel_plasticity
from inverse_fermat.models import MutationResponse, plasticity_document
from inverse_fermat.plasticity import mutation_weights, plasticity_service
from inverse_fermat.service import fermat_point_invariant, inverse_fermat_service
from multitree.models import report_document
from multitree.service import build_multitree
from multitree.types import TreeMode
from realizability.service import realizability_service
from realizability.types import EdgeTuple
from steiner.models import tree_document
from steiner.service import EXAMPLE_BST, EXAMPLE_VERTICES, EXAMPLE_WEIGHTS, steiner_service

logger = get_logger(__name__)


def _numbers(ctx, param, value) -> Optional[List[float]]:
    if value is None:
        return None
    try:
        numbers = parse_number_list(value)
    except ValueError as e:
        raise click.BadParameter(str(e))
    if not numbers:
        raise click.BadParameter("expected at least one number")
    return numbers


def _read_points(path: str) -> np.ndarray:
    """Coordinates from a JSON array of rows or a comma-separated text file."""
    source = Path(path)
    try:
        if source.suffix == ".json":
            return np.asarray(orjson.loads(source.read_bytes()), dtype=float)
        return np.loadtxt(source, delimiter=",", ndmin=2)
    except (OSError, ValueError) as e:
        raise click.BadParameter(f"cannot read points from {path}: {e}")


def _edge_tuple(n: Optional[int], lengths: Optional[List[float]], consecutive: Optional[float]) -> EdgeTuple:
    if (lengths is None) == (consecutive is None):
        raise click.UsageError("give exactly one of --tuple and --consecutive")
    if consecutive is not None:
        return EdgeTuple.consecutive(consecutive, 3 if n is None else n)
    return EdgeTuple.from_lengths(lengths, n)


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text, encoding="utf-8")
        logger.info("wrote %s", output)


def exits_with_code(command):
    """Map library errors to the process exit status they carry."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except MultitreeError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(e.exit_code)

    return wrapper


tuple_options = [
    click.option("--n", "n", type=int, default=None, help="Simplex dimension N; inferred from --tuple"),
    click.option("--tuple", "lengths", callback=_numbers, help="Edge lengths, e.g. 7,8,9,10,11,12 or 7..12"),
    click.option("--consecutive", type=float, default=None, help="First of N(N+1)/2 consecutive integers"),
]


def with_tuple_options(command):
    for option in reversed(tuple_options):
        command = option(command)
    return command


@click.group(name="multitree")
def cli():
    """Weighted Fermat and Steiner trees over every simplex of an edge tuple."""


@cli.command()
@with_tuple_options
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
@exits_with_code
def check(n, lengths, consecutive, fmt):
    """Count incongruent and realizable simplexes and print threshold verdicts."""
    report = realizability_service.check(_edge_tuple(n, lengths, consecutive))
    if fmt == "json":
        click.echo(dumps(report), nl=False)
        return
    click.echo(f"{report['incongruent']} incongruent, {report['realizable']} realizable")
    click.echo(f"orbit count: {report['orbit_count']}")
    click.echo(
        f"Dekster-Wilker domain: {yes_no(report['dekster_wilker_domain'])} "
        f"(min edge {format_sig(report['dekster_wilker_min_edge'])})"
    )
    if "dekster_wilker_verdict" in report:
        click.echo(
            f"Dekster-Wilker verdict: {yes_no(report['dekster_wilker_verdict'])} "
            f"(start {format_sig(report['consecutive_start'])}, needs {report['dekster_wilker_start']})"
        )
    if "hertog_verdict" in report:
        click.echo(
            f"Hertog verdict: {yes_no(report['hertog_verdict'])} "
            f"(start {format_sig(report['consecutive_start'])}, needs {report['hertog_start']})"
        )
    if "blumenthal_verdict" in report:
        click.echo(
            f"Blumenthal verdict: {yes_no(report['blumenthal_verdict'])} "
            f"(ratio {format_sig(report['blumenthal_ratio'])}, needs {format_sig(report['blumenthal_threshold'])})"
        )


@cli.command(name="multitree")
@with_tuple_options
@click.option("--weights", callback=_numbers, help="Terminal weights; unit weights by default")
@click.option("--bst", type=float, default=None, help="Steiner-edge weight (steiner mode)")
@click.option("--mode", type=click.Choice([TreeMode.FERMAT.value, TreeMode.STEINER.value]), default="fermat")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table")
@click.option("--permute-weights", is_flag=True, help="Evaluate every distinct weight permutation")
@click.option("--paper-order", is_flag=True, help="Tetrahedra: relabel and sort in table order")
@click.option("--threads", type=int, default=None, help=f"Worker threads (default {settings.multitree_threads})")
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="Write to a file instead of stdout")
@exits_with_code
def multitree_command(n, lengths, consecutive, weights, bst, mode, fmt, permute_weights, paper_order, threads,
                      output):
    """Solve every incongruent realizable simplex and report the multitree."""
    report = build_multitree(
        _edge_tuple(n, lengths, consecutive), weights, bst, TreeMode(mode),
        permute_weights=permute_weights, threads=threads, progress=True, paper_order=paper_order,
    )
    if fmt == "json":
        _emit(document_json(report_document(report, permute_weights, paper_order)), output)
        return
    header = multitree_header(report, permute_weights)
    rows = multitree_rows(report, permute_weights)
    if fmt == "csv":
        _emit(write_csv(header, rows), output)
        return
    summary = (
        f"global minimum: row {report.global_min_index}, "
        f"max volume: row {report.max_volume_index}\n"
    )
    _emit(write_table(header, rows) + summary, output)


@cli.command()
@click.option("--example-ex1", is_flag=True, help="Use the built-in weighted tetrahedron example")
@click.option("--vertices", type=click.Path(exists=True, dir_okay=False), help="Four vertices in R^3")
@click.option("--weights", callback=_numbers, help="Terminal weights b1..b4")
@click.option("--bst", type=float, default=None, help="Steiner-edge weight")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json")
@exits_with_code
def steiner(example_ex1, vertices, weights, bst, fmt):
    """Weighted Steiner tree of a tetrahedron."""
    if example_ex1:
        points, weights, bst = np.array(EXAMPLE_VERTICES), list(EXAMPLE_WEIGHTS), EXAMPLE_BST
    elif vertices is None or weights is None or bst is None:
        raise click.UsageError("give --example-ex1 or all of --vertices, --weights and --bst")
    else:
        points = _read_points(vertices)
    document = tree_document(steiner_service.tetrahedron(points, weights, bst))
    if fmt == "json":
        click.echo(dumps(document), nl=False)
        return
    click.echo(f"method: {document.method}")
    click.echo(f"weighted length: {format_sig(document.weighted_length)}")
    if document.flags:
        click.echo(f"flags: {', '.join(document.flags)}")
    d = document.dihedral
    if d is not None:
        click.echo(f"phi = {d.phi_deg:.4f} deg, H = {format_sig(d.H)}")
        click.echo(f"delta12 = {d.plane_angle12_deg:.2f} deg, delta34 = {d.plane_angle34_deg:.2f} deg")
        click.echo(f"alpha = {d.alpha_deg:.4f} deg")
        if d.concircularity is not None:
            click.echo(f"concircularity deviation: {d.concircularity:.2e}")


@cli.command()
@click.option("--points", type=click.Path(exists=True, dir_okay=False), required=True, help="Terminal coordinates")
@click.option("--weights", callback=_numbers, required=True, help="One weight per terminal")
@exits_with_code
def fermat(points, weights):
    """Weighted Fermat point of a point set."""
    pts = _read_points(points)
    sol = solve_fermat(pts, weights)
    click.echo(dumps(solution_document(sol, fermat_service.vertex_objectives(pts, weights))), nl=False)


@cli.command()
@click.option("--vertices", type=click.Path(exists=True, dir_okay=False), required=True, help="N+1 vertices in R^N")
@click.option("--point", callback=_numbers, required=True, help="Interior target point")
@click.option("--C", "C", type=float, default=1.0, show_default=True, help="Sum of the weights")
@click.option("--method", type=click.Choice(["volume", "sine"]), default="volume")
@exits_with_code
def invert(vertices, point, C, method):
    """Weights that make a prescribed interior point the weighted Fermat point."""
    sol = inverse_fermat_service.invert(_read_points(vertices), point, C, method)
    click.echo(dumps({
        "weights": sol.weights,
        "C": sol.C,
        "residual": sol.residual,
        "round_trip_error": sol.round_trip_error,
        "method": method,
    }), nl=False)


@cli.command()
@click.option("--rays", type=click.Path(exists=True, dir_okay=False), required=True, help="Rays from the Fermat point")
@click.option("--C", "C", type=float, default=1.0, show_default=True, help="Weight sum of the base system")
@click.option("--drivers", callback=_numbers, help="Driver weights to evaluate")
@click.option("--k", type=int, default=None, help="Inflow count for the mutation system")
@click.option("--c", "total", type=float, default=None, help="Total weight for the mutation system")
@click.option("--storage", type=float, default=0.0, show_default=True, help="Net inflow stored at the hub")
@exits_with_code
def plasticity(rays, C, drivers, k, total, storage):
    """Affine plasticity system of a ray set, optionally with mutation weights."""
    model = plasticity_service.model(_read_points(rays), C)
    payload = plasticity_document(model, drivers).model_dump(mode="json")
    if k is not None:
        if total is None:
            raise click.UsageError("--k needs --c")
        weights = mutation_weights(model, k, total, storage)
        payload["mutation"] = MutationResponse(
            weights=weights.tolist(),
            invariant=fermat_point_invariant(model.rays, weights, np.zeros(model.N))
        ).model_dump(mode="json")
    click.echo(dumps(payload), nl=False)


@cli.command()
@click.option("--r0", type=float, required=True, help="Starting radius")
@click.option("--m", type=int, required=True, help="Dimension parameter")
@click.option("--t", "t_end", type=float, required=True, help="Final time")
@click.option("--dt", type=float, required=True, help="Euler step")
@click.option("--seed", type=int, required=True, help="Random generator seed")
@click.option("--rays", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Drive the plasticity system of these rays with the path")
@click.option("--C", "C", type=float, default=1.0, show_default=True, help="Weight sum of the base system")
@click.option("--c", "total", type=float, default=1.0, show_default=True, help="Weight total after rescaling")
@click.option("--no-noise", is_flag=True, help="Follow the drift only")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@exits_with_code
def bessel(r0, m, t_end, dt, seed, rays, C, total, no_noise, fmt):
    """Seeded Bessel-process path, optionally mapped to plasticity weights."""
    path = bessel_path(r0, m, t_end, dt, seed, noise=not no_noise)
    trajectory = None
    if rays is not None:
        trajectory = bessel_plasticity(plasticity_service.model(_read_points(rays), C), path, total)
    if fmt == "csv":
        header = ["t", "r"]
        columns = [path.times, path.values]
        if trajectory is not None:
            header += [f"B{i + 1}" for i in range(trajectory.weights.shape[1])] + ["admissible"]
            columns += list(trajectory.weights.T)
        rows = []
        for k in range(len(path.times)):
            row = [format_sig(c[k]) for c in columns]
            if trajectory is not None:
                row.append(yes_no(bool(trajectory.admissible[k])))
            rows.append(row)
        click.echo(write_csv(header, rows), nl=False)
        return
    payload = {
        "schema": 1,
        "seed": seed,
        "m": m,
        "r0": r0,
        "t_end": t_end,
        "dt": dt,
        "noise": not no_noise,
        "times": path.times,
        "values": path.values,
    }
    if trajectory is not None:
        payload["weights"] = trajectory.weights
        payload["admissible"] = trajectory.admissible.tolist()
        payload["violations"] = trajectory.violations
    click.echo(dumps(payload), nl=False)


@cli.command()
@click.option("--host", default="0.0.0.0", show_default=True)
@click.option("--port", type=int, default=settings.app_port, show_default=True)
def serve(host, port):
    """Run the HTTP API with uvicorn."""
    import uvicorn
    uvicorn.run("main:app", host=host, port=port, reload=settings.app_env == "dev")


def main():
    cli()


if __name__ == "__main__":
    main()
