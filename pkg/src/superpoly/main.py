from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import click

from superpoly import __version__
from superpoly.errors import (
    DeckNotIndependent,
    DisconnectedCluster,
    DuplicatePieceName,
    EmptyCluster,
    EmptyInstance,
    FormatError,
    GraphTooSmall,
    InvalidSolverConfig,
    LayoutMismatch,
    MisalignedElement,
    NoValidLayout,
    PreconditionViolated,
    SearchSpaceTooLarge,
    TooLarge,
    UnknownColorChar,
    UnknownColorName,
    WrongSet,
)

EXIT_NO_EMBEDDING = 1
EXIT_PARSE = 2
EXIT_GRAPH_TOO_SMALL = 3
EXIT_TIMEOUT = 4
EXIT_MODE_MISMATCH = 5
EXIT_EXTRACTION = 6

PARSE_ERRORS = (
    FormatError,
    UnknownColorChar,
    UnknownColorName,
    EmptyCluster,
    DisconnectedCluster,
    EmptyInstance,
    DuplicatePieceName,
    LayoutMismatch,
)
MODE_ERRORS = (PreconditionViolated, InvalidSolverConfig, SearchSpaceTooLarge, TooLarge)
EXTRACTION_ERRORS = (DeckNotIndependent, MisalignedElement, WrongSet)

SOLVE_MODES = ("exact", "steiner", "greedy", "brute", "deck", "aligned")

_file = click.Path(exists=True, readable=True, dir_okay=False, path_type=Path)
_out = click.Path(dir_okay=False, writable=True, path_type=Path)


@contextmanager
def _exit_on(errors: tuple[type[Exception], ...], code: int) -> Iterator[None]:
    """Report ``errors`` on stderr and leave with ``code``."""
    try:
        yield
    except errors as e:
        click.echo(f"error: {e}", err=True)
        raise SystemExit(code) from e


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _read_text(path: Path) -> str:
    with _exit_on((OSError, UnicodeDecodeError), EXIT_PARSE):
        return path.read_text(encoding="utf-8")


def _load_instance(path: Path):
    from superpoly.solver.instance import parse_instance

    with _exit_on(PARSE_ERRORS + (ValueError,), EXIT_PARSE):
        return parse_instance(_read_text(path))


@click.group()
@click.version_option(__version__, prog_name="superpoly")
def main() -> None:
    """Colored polyominoes and the smallest-superpolyomino problem.

    Generate reduction instances from graphs and set systems, solve them,
    check containment and extract colorings or covers from solutions.

    \b
    Examples:
      superpoly gen-coloring --graph k3.txt --out k3.inst
      superpoly solve --instance k3.inst --mode deck --layout-out k3.lay
      superpoly extract --instance k3.inst --layout k3.lay --kind coloring
      superpoly render --in k3.inst --format svg --out k3.svg

    \b
    Set SUPERPOLY_LOG=info or SUPERPOLY_LOG=debug for progress on stderr.
    """
    from superpoly.utils.logs import configure_logging

    configure_logging()


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


@main.command("gen-coloring")
@click.option("--graph", "graph_path", type=_file, required=True, help="Graph file.")
@click.option("--out", "out_path", type=_out, required=True, help="Instance file to write.")
@click.option("--two-color", is_flag=True, help="Encode every cell as a black/gray macrocell.")
def gen_coloring(graph_path: Path, out_path: Path, two_color: bool) -> None:
    """Build the vertex-polyomino instance of a graph."""
    from superpoly.reductions.coloring import build_instance
    from superpoly.reductions.formats import parse_graph
    from superpoly.solver.instance import save_instance

    with _exit_on(PARSE_ERRORS + (ValueError,), EXIT_PARSE):
        g = parse_graph(_read_text(graph_path))
    with _exit_on((GraphTooSmall,), EXIT_GRAPH_TOO_SMALL):
        ci = build_instance(g, two_color=two_color)
    save_instance(ci.instance, out_path)
    sizes = ",".join(str(p.size) for p in ci.instance)
    click.echo(f"pieces={len(ci.instance)} sizes={sizes} total={ci.instance.total_cells}")


@main.command("gen-setcover")
@click.option("--cover", "cover_path", type=_file, required=True, help="Set-cover file.")
@click.option("--out", "out_path", type=_out, required=True, help="Instance file to write.")
def gen_setcover(cover_path: Path, out_path: Path) -> None:
    """Build the one-color flag instance of a set system."""
    from superpoly.reductions.formats import parse_setcover
    from superpoly.reductions.setcover import build_instance
    from superpoly.solver.instance import save_instance

    with _exit_on(PARSE_ERRORS + (ValueError,), EXIT_PARSE):
        sc = parse_setcover(_read_text(cover_path))
    inst = build_instance(sc)
    save_instance(inst, out_path)
    click.echo(f"pieces={len(inst)} pbar={inst[0].size} total={inst.total_cells}")


# ---------------------------------------------------------------------------
# Solving
# ---------------------------------------------------------------------------


def _coloring_for(inst):
    from superpoly.reductions.coloring import coloring_instance, decode_graph

    if inst.reduction != "coloring":
        click.echo("error: instance has no coloring reduction header", err=True)
        raise SystemExit(EXIT_MODE_MISMATCH)
    with _exit_on(MODE_ERRORS + (ValueError,), EXIT_MODE_MISMATCH):
        ci = coloring_instance(inst)
        if decode_graph(inst) != ci.graph:
            raise PreconditionViolated("Pieces do not encode the graph in the header.")
    return ci


def _setcover_for(inst):
    from superpoly.reductions.setcover import build_instance, setcover_from_provenance

    if inst.reduction != "setcover":
        click.echo("error: instance has no setcover reduction header", err=True)
        raise SystemExit(EXIT_MODE_MISMATCH)
    with _exit_on(MODE_ERRORS + (ValueError,), EXIT_MODE_MISMATCH):
        sc = setcover_from_provenance(inst.provenance)
        if build_instance(sc).pieces != inst.pieces:
            raise PreconditionViolated("Pieces do not match the set system in the header.")
    return sc


@main.command()
@click.option("--instance", "instance_path", type=_file, required=True, help="Instance file.")
@click.option("--mode", type=click.Choice(SOLVE_MODES), default=None, help="Solver (default from config).")
@click.option("--timeout", type=click.FloatRange(min=0), default=None, help="Time limit in seconds.")
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads.")
@click.option("--window", type=click.IntRange(min=1), default=None, help="Offset window bound.")
@click.option("--no-filter", is_flag=True, help="Keep pieces that are subshapes of others.")
@click.option("--layout-out", type=_out, default=None, help="Where to write the layout.")
def solve(
    instance_path: Path,
    mode: str | None,
    timeout: float | None,
    threads: int | None,
    window: int | None,
    no_filter: bool,
    layout_out: Path | None,
) -> None:
    """Find a small (or smallest) superpolyomino of an instance."""
    from dataclasses import replace

    from superpoly.reductions.coloring import deck_solve
    from superpoly.reductions.setcover import aligned_solve
    from superpoly.solver.exact import solve_brute, solve_exact
    from superpoly.solver.heuristics import solve_greedy
    from superpoly.solver.instance import emit_layout
    from superpoly.solver.models import SolverMode
    from superpoly.utils.config import load_config

    inst = _load_instance(instance_path)
    config = load_config()
    solver_modes = {"exact": SolverMode.EXACT_CONTACT, "steiner": SolverMode.EXACT_STEINER}
    cfg = config.solver_config(solver_modes.get(mode or ""), timeout, threads)
    if window is not None:
        cfg = replace(cfg, window=window)
    if no_filter:
        cfg = replace(cfg, filter_subshapes=False)
    if mode is None:
        mode = {v: k for k, v in solver_modes.items()}.get(cfg.mode, str(cfg.mode))

    extra = ""
    with _exit_on(MODE_ERRORS, EXIT_MODE_MISMATCH), _exit_on((NoValidLayout,), EXIT_NO_EMBEDDING):
        if mode == "deck":
            result = deck_solve(_coloring_for(inst))
        elif mode == "aligned":
            result, cover = aligned_solve(_setcover_for(inst))
            extra = " cover=" + ",".join(str(j) for j in sorted(cover))
        elif mode == "greedy":
            result = solve_greedy(inst)
        elif mode == "brute":
            result = solve_brute(inst, cfg.window_for(inst))
        else:
            result = solve_exact(inst, cfg)

    if result.stats.helper_cells:
        extra += f" helpers={result.stats.helper_cells}"
    click.echo(
        f"size={result.size} optimal={_flag(result.optimal)} nodes={result.stats.nodes}{extra}"
    )
    if layout_out is not None:
        layout_out.write_text(emit_layout(inst, result.layout), encoding="utf-8")
    if result.stats.timed_out:
        click.echo("error: time limit reached; the best layout found was reported", err=True)
        raise SystemExit(EXIT_TIMEOUT)


# ---------------------------------------------------------------------------
# Checks and extraction
# ---------------------------------------------------------------------------


@main.command("verify-super")
@click.option("--container", "container_path", type=_file, required=True, help="Grid file of the container.")
@click.option("--piece", "piece_path", type=_file, required=True, help="Grid file of the piece.")
def verify_super(container_path: Path, piece_path: Path) -> None:
    """List every offset at which PIECE lies inside CONTAINER."""
    from superpoly.geometry.gridtext import parse_polyomino
    from superpoly.geometry.relations import is_superpolyomino

    with _exit_on(PARSE_ERRORS + (ValueError,), EXIT_PARSE):
        container = parse_polyomino(_read_text(container_path))
        piece = parse_polyomino(_read_text(piece_path))
    offsets = is_superpolyomino(container, piece)
    for o in offsets:
        click.echo(f"offset={o.dx},{o.dy}")
    click.echo(f"embeddings={len(offsets)}")
    if not offsets:
        raise SystemExit(EXIT_NO_EMBEDDING)


@main.command()
@click.option("--instance", "instance_path", type=_file, required=True, help="Instance file.")
@click.option("--layout", "layout_path", type=_file, required=True, help="Layout file.")
@click.option("--kind", type=click.Choice(["coloring", "cover"]), required=True)
def extract(instance_path: Path, layout_path: Path, kind: str) -> None:
    """Read a vertex coloring or a set cover off a solved layout."""
    from superpoly.reductions.coloring import extract_coloring
    from superpoly.reductions.setcover import extract_cover
    from superpoly.solver.instance import parse_layout

    inst = _load_instance(instance_path)
    with _exit_on(PARSE_ERRORS, EXIT_PARSE):
        layout = parse_layout(_read_text(layout_path), inst)
    if kind == "coloring":
        ci = _coloring_for(inst)
        with _exit_on(EXTRACTION_ERRORS, EXIT_EXTRACTION):
            classes = extract_coloring(ci, layout)
        click.echo(f"k={len(classes)}")
        for index, members in enumerate(classes):
            click.echo(f"class{index}={','.join(str(v) for v in sorted(members))}")
    else:
        sc = _setcover_for(inst)
        with _exit_on(EXTRACTION_ERRORS + (PreconditionViolated,), EXIT_EXTRACTION):
            cover = extract_cover(sc, layout)
        click.echo(f"k={len(cover)} cover={','.join(str(j) for j in sorted(cover))}")


@main.command()
@click.option("--instance", "instance_path", type=_file, required=True, help="Set-cover instance file.")
@click.option("--element", type=click.IntRange(min=1), default=None, help="Audit one element only.")
def audit(instance_path: Path, element: int | None) -> None:
    """Sweep single-element placements that break the alignment rules."""
    from superpoly.reductions.setcover import misalignment_audit

    sc = _setcover_for(_load_instance(instance_path))
    if element is not None and element > sc.n:
        click.echo(f"error: element {element} is outside 1..{sc.n}", err=True)
        raise SystemExit(EXIT_MODE_MISMATCH)
    report = misalignment_audit(sc, element)
    o = report.worst_offset
    click.echo(
        f"bound={report.bound} min={report.min_cheat_size} holds={_flag(report.holds)} "
        f"element={report.worst_element} offset={o.dx},{o.dy} placements={report.placements}"
    )


# ---------------------------------------------------------------------------
# Rendering and configuration
# ---------------------------------------------------------------------------


@main.command()
@click.option("--in", "in_path", type=_file, required=True, help="Grid or instance file.")
@click.option("--format", "fmt", type=click.Choice(["ascii", "svg"]), default="ascii")
@click.option("--out", "out_path", type=_out, default=None, help="Output file (stdout if omitted).")
@click.option("--layout", "layout_path", type=_file, default=None, help="Draw pieces at a solved layout.")
def render(in_path: Path, fmt: str, out_path: Path | None, layout_path: Path | None) -> None:
    """Draw a polyomino, an instance or a solved layout."""
    from superpoly.geometry.gridtext import parse_polyomino
    from superpoly.render import render_ascii, render_svg
    from superpoly.solver.evaluate import layout_union
    from superpoly.solver.instance import parse_instance, parse_layout
    from superpoly.utils.config import load_config

    text = _read_text(in_path)
    is_instance = any(line.startswith("poly ") for line in text.splitlines())
    with _exit_on(PARSE_ERRORS + (ValueError,), EXIT_PARSE):
        item = parse_instance(text) if is_instance else parse_polyomino(text)
        layout = None
        if layout_path is not None:
            if not is_instance:
                raise FormatError("--layout needs an instance file")
            layout = parse_layout(_read_text(layout_path), item)

    if fmt == "ascii":
        with _exit_on(PARSE_ERRORS + (ValueError,), EXIT_PARSE):
            output = render_ascii(layout_union(item, layout) if layout is not None else item)
    else:
        config = load_config()
        output = render_svg(item, layout, config.cell_size, config.stroke_width)
    if out_path is None:
        click.echo(output, nl=False)
    else:
        out_path.write_text(output, encoding="utf-8")


@main.command("config")
@click.option("--init", is_flag=True, help="Write the default config file if none exists.")
def config_cmd(init: bool) -> None:
    """Show the effective configuration."""
    from superpoly.utils import config as config_module

    if init and config_module.is_first_run():
        config_module.save_config(config_module.Config())
    click.echo(f"path={config_module.CONFIG_PATH}")
    for key, value in config_module.load_config().as_items():
        if isinstance(value, bool):
            value = _flag(value)
        click.echo(f"{key}={value}")


if __name__ == "__main__":
    main()
