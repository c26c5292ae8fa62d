"""Command-line interface.

Exit status contract: 0 on success, 2 on any validation error (a JSON error
object is written to stderr), 64 on an unknown subcommand (usage text on
stderr).  Output on stdout is deterministic: identical inputs and
configuration produce byte-identical bytes.

Configuration is resolved as flags > optional TOML config file > built-in
defaults.
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import tomli

from . import braid, braidvar, cluster, coxeter, quiver, render, weave
from .braidvar import DEFAULT_POINT_BUDGET
from .cluster import EXCHANGE_GRAPH_CAP, VERIFY_DEPTH
from .errors import BadParameters, Error, ParseError
from .polynomials import format_polynomial
from .quiver import MUTATION_CLASS_CAP


@dataclass(frozen=True)
class Config:
    """Defaults shared by all subcommands; every cap must stay positive."""

    mutation_cap: int = MUTATION_CLASS_CAP
    graph_cap: int = EXCHANGE_GRAPH_CAP
    depth: int = VERIFY_DEPTH
    budget: int = DEFAULT_POINT_BUDGET
    primes: tuple[int, ...] = (2, 3, 5)
    format: str = "json"


def load_config(path: str | None, format_override: str | None = None) -> Config:
    """Merge a TOML file (if given) over the built-in defaults."""
    values: dict[str, object] = {}
    if path is not None:
        try:
            raw = Path(path).read_bytes()
        except OSError as exc:
            raise ParseError(f"cannot read config {path}: {exc}") from exc
        try:
            data = tomli.loads(raw.decode("utf-8"))
        except (tomli.TOMLDecodeError, UnicodeDecodeError) as exc:
            raise ParseError(f"bad config {path}: {exc}") from exc
        known = {f.name for f in dataclasses.fields(Config)}
        for key, value in data.items():
            name = key.replace("-", "_")
            if name not in known:
                raise BadParameters(f"unknown config key {key!r}")
            values[name] = value
    if format_override is not None:
        values["format"] = format_override
    cfg = _build_config(values)
    for name in ("mutation_cap", "graph_cap", "depth", "budget"):
        if getattr(cfg, name) <= 0:
            raise BadParameters(f"config {name} must be positive")
    if cfg.format not in ("json", "dot", "text"):
        raise BadParameters(f"unknown format {cfg.format!r}")
    if not cfg.primes or any(p < 2 for p in cfg.primes):
        raise BadParameters("config primes must be integers >= 2")
    return cfg


def _build_config(values: dict[str, object]) -> Config:
    try:
        if "primes" in values:
            values["primes"] = tuple(int(p) for p in values["primes"])  # type: ignore[arg-type]
        for key in ("mutation_cap", "graph_cap", "depth", "budget"):
            if key in values:
                values[key] = int(values[key])  # type: ignore[arg-type]
        return Config(**values)  # type: ignore[arg-type]
    except (TypeError, ValueError) as exc:
        raise BadParameters(f"bad config value: {exc}") from exc


class UnknownSubcommand(Exception):
    def __init__(self, name: str, usage: str):
        super().__init__(name)
        self.name = name
        self.usage = usage


class _Group(click.Group):
    """Group that distinguishes unknown subcommands from other usage errors."""

    def resolve_command(self, ctx, args):
        name = click.utils.make_str(args[0])
        if self.get_command(ctx, name) is None:
            listing = ", ".join(sorted(self.commands))
            raise UnknownSubcommand(
                name, f"{ctx.get_usage()}\n\nCommands: {listing}"
            )
        return super().resolve_command(ctx, args)


def _json_text(data: object) -> str:
    return json.dumps(data, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _cell(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def _text_lines(data: object) -> str:
    # Tab-delimited rows: dicts one key per row, lists one item per row.
    if isinstance(data, dict):
        rows = [f"{key}\t{_cell(data[key])}" for key in sorted(data)]
    elif isinstance(data, list):
        rows = [_cell(item) for item in data]
    else:
        rows = [_cell(data)]
    return "\n".join(rows) + "\n"


def _emit(cfg: Config, data: object, out: str | None = None) -> None:
    if cfg.format == "dot":
        raise BadParameters("dot format applies only to 'quiver export-dot'")
    text = _json_text(data) if cfg.format == "json" else _text_lines(data)
    click.echo(text, nl=False)
    if out is not None:
        Path(out).write_text(text)


def _emit_raw(text: str, out: str | None = None) -> None:
    click.echo(text, nl=False)
    if out is not None:
        Path(out).write_text(text)


def _read_json(path: str) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


def _read_quiver(path: str) -> quiver.IceQuiver:
    return quiver.from_json_dict(_read_json(path))


def _read_seed(path: str) -> cluster.Seed:
    return cluster.from_json_dict(_read_json(path))


def _read_braid(value: str, n: int | None) -> braid.BraidWord:
    """A braid argument is a JSON file path or a compact word like 's1 s2 s1'."""
    if value.endswith(".json") or os.path.exists(value):
        word = braid.from_json_dict(_read_json(value))
        if n is not None and n != word.n:
            raise BadParameters(f"--n {n} conflicts with file strand count {word.n}")
        return word
    return braid.parse_compact(value, n)


def _read_weave(path: str) -> weave.Weave:
    return weave.from_json_dict(_read_json(path))


def _parse_perm(text: str) -> coxeter.Permutation:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    parts = [p for chunk in body.split(",") for p in chunk.split()]
    try:
        values = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ParseError(f"bad permutation {text!r}") from exc
    return coxeter.check_permutation(values)


def _counts(counter, word, q: int | None, budget: int, cfg: Config) -> object:
    # A single --q yields a bare number; otherwise one count per config prime.
    if q is not None:
        return counter(word, q, budget)
    return {str(p): counter(word, p, budget) for p in cfg.primes}


_CONFIG_HELP = "TOML config file (keys: mutation_cap, graph_cap, depth, budget, primes, format)."


@click.group(cls=_Group, name="clusterweave")
@click.option("--config", "config_path", default=None, metavar="PATH", help=_CONFIG_HELP)
@click.option(
    "--format",
    "format_override",
    type=click.Choice(["json", "dot", "text"]),
    default=None,
    help="Output format (default json).",
)
@click.pass_context
def cli(ctx: click.Context, config_path: str | None, format_override: str | None) -> None:
    """Cluster mutation, braid combinatorics, and weave calculus."""
    ctx.obj = load_config(config_path, format_override)


# ----------------------------------------------------------------- quiver


@cli.group(cls=_Group, name="quiver")
def quiver_group() -> None:
    """Ice quiver operations."""


@quiver_group.command("mutate")
@click.option("--quiver", "quiver_path", required=True, metavar="PATH")
@click.option("--at", "at", required=True, type=int)
@click.option("--out", default=None, metavar="PATH")
@click.pass_obj
def quiver_mutate(cfg: Config, quiver_path: str, at: int, out: str | None) -> None:
    """Mutate at a mutable vertex."""
    q = quiver.mutate_quiver(_read_quiver(quiver_path), at)
    _emit(cfg, quiver.to_json_dict(q), out)


@quiver_group.command("class")
@click.option("--quiver", "quiver_path", required=True, metavar="PATH")
@click.option("--cap", default=None, type=int)
@click.pass_obj
def quiver_class(cfg: Config, quiver_path: str, cap: int | None) -> None:
    """Size of the mutation class up to the cap."""
    result = quiver.mutation_class(
        _read_quiver(quiver_path), cap if cap is not None else cfg.mutation_cap
    )
    _emit(cfg, {"size": result.size, "exhausted": result.exhausted})


@quiver_group.command("finite-type")
@click.option("--quiver", "quiver_path", required=True, metavar="PATH")
@click.option("--cap", default=None, type=int)
@click.pass_obj
def quiver_finite_type(cfg: Config, quiver_path: str, cap: int | None) -> None:
    """Classify the principal part: finite type label or unknown."""
    result = quiver.finite_type(
        _read_quiver(quiver_path), cap if cap is not None else cfg.mutation_cap
    )
    _emit(
        cfg,
        {
            "finite": result.finite,
            "label": result.label,
            "searched": result.searched,
            "exhausted": result.exhausted,
        },
    )


@quiver_group.command("export-dot")
@click.option("--quiver", "quiver_path", required=True, metavar="PATH")
@click.option("--out", default=None, metavar="PATH")
@click.option("--fig", default=None, metavar="PATH", help="Also render a figure.")
@click.pass_obj
def quiver_export_dot(
    cfg: Config, quiver_path: str, out: str | None, fig: str | None
) -> None:
    """Emit GraphViz DOT (circles mutable, squares frozen)."""
    q = _read_quiver(quiver_path)
    _emit_raw(quiver.to_dot(q), out)
    if fig is not None:
        render.save_figure(render.quiver_figure(q), fig)


# ---------------------------------------------------------------- cluster


@cli.group(cls=_Group, name="cluster")
def cluster_group() -> None:
    """Seed mutation and exchange graph exploration."""


@cluster_group.command("mutate")
@click.option("--seed", "seed_path", required=True, metavar="PATH")
@click.option("--at", required=True, type=int)
@click.option("--out", default=None, metavar="PATH")
@click.pass_obj
def cluster_mutate(cfg: Config, seed_path: str, at: int, out: str | None) -> None:
    """Mutate a seed at a mutable vertex."""
    s = cluster.mutate_seed(_read_seed(seed_path), at)
    _emit(cfg, cluster.to_json_dict(s), out)


@cluster_group.command("explore")
@click.option("--seed", "seed_path", required=True, metavar="PATH")
@click.option("--cap", default=None, type=int)
@click.option("--out", default=None, metavar="PATH")
@click.option("--fig", default=None, metavar="PATH", help="Also render the graph.")
@click.pass_obj
def cluster_explore(
    cfg: Config, seed_path: str, cap: int | None, out: str | None, fig: str | None
) -> None:
    """Exchange graph from a seed, up to the cap."""
    report = cluster.exchange_graph(
        _read_seed(seed_path), cap if cap is not None else cfg.graph_cap
    )
    _emit(cfg, cluster.report_to_json_dict(report), out)
    if fig is not None:
        render.save_figure(render.exchange_graph_figure(report), fig)


@cluster_group.command("verify")
@click.option("--seed", "seed_path", required=True, metavar="PATH")
@click.option("--depth", default=None, type=int)
@click.pass_obj
def cluster_verify(cfg: Config, seed_path: str, depth: int | None) -> None:
    """Check Laurent positivity over all mutation sequences to a depth."""
    report = cluster.verify_laurent_positive(
        _read_seed(seed_path), depth if depth is not None else cfg.depth
    )
    counterexample = None
    if report.counterexample is not None:
        counterexample = dict(report.counterexample)
    _emit(
        cfg,
        {
            "ok": report.ok,
            "seeds_checked": report.seeds_checked,
            "variables_checked": report.variables_checked,
            "counterexample": counterexample,
        },
    )


@cluster_group.command("starfish")
@click.option("--seed", "seed_path", required=True, metavar="PATH")
@click.pass_obj
def cluster_starfish(cfg: Config, seed_path: str) -> None:
    """Pairwise and exchange coprimality of the cluster entries."""
    report = cluster.starfish_coprimality(_read_seed(seed_path))
    _emit(
        cfg,
        {
            "ok": report.ok,
            "pair_failures": [list(p) for p in report.pair_failures],
            "exchange_failures": list(report.exchange_failures),
        },
    )


# ---------------------------------------------------------------- coxeter


@cli.group(cls=_Group, name="coxeter")
def coxeter_group() -> None:
    """Symmetric group combinatorics (one-line notation, 1-indexed)."""


@coxeter_group.command("length")
@click.option("--perm", required=True, metavar="PERM")
@click.pass_obj
def coxeter_length(cfg: Config, perm: str) -> None:
    """Coxeter length (inversion count)."""
    _emit(cfg, {"length": coxeter.length(_parse_perm(perm))})


@coxeter_group.command("word")
@click.option("--perm", required=True, metavar="PERM")
@click.pass_obj
def coxeter_word(cfg: Config, perm: str) -> None:
    """A reduced word in the adjacent transpositions."""
    _emit(cfg, {"word": list(coxeter.reduced_word(_parse_perm(perm)))})


@coxeter_group.command("bruhat")
@click.option("--v", "v_text", required=True, metavar="PERM")
@click.option("--w", "w_text", required=True, metavar="PERM")
@click.pass_obj
def coxeter_bruhat(cfg: Config, v_text: str, w_text: str) -> None:
    """Whether v <= w in Bruhat order."""
    _emit(cfg, {"leq": coxeter.bruhat_leq(_parse_perm(v_text), _parse_perm(w_text))})


@coxeter_group.command("grassmannian")
@click.option("--perm", required=True, metavar="PERM")
@click.option("--k", required=True, type=int)
@click.pass_obj
def coxeter_grassmannian(cfg: Config, perm: str, k: int) -> None:
    """Whether the permutation has at most one descent, at position k."""
    _emit(cfg, {"grassmannian": coxeter.is_k_grassmannian(_parse_perm(perm), k)})


@coxeter_group.command("richardson-braid")
@click.option("--w", "w_text", required=True, metavar="PERM")
@click.option("--v", "v_text", required=True, metavar="PERM")
@click.option("--out", default=None, metavar="PATH")
@click.pass_obj
def coxeter_richardson(cfg: Config, w_text: str, v_text: str, out: str | None) -> None:
    """Braid word R(w) R(v^-1 w0) attached to a Richardson pair."""
    word = braid.richardson_braid(_parse_perm(w_text), _parse_perm(v_text))
    _emit(cfg, braid.to_json_dict(word), out)


# ------------------------------------------------------------------ braid


@cli.group(cls=_Group, name="braid")
def braid_group() -> None:
    """Positive braid words (compact strings like 's1 s2 s1' or JSON files)."""


@braid_group.command("equal")
@click.option("--a", "a_text", required=True, metavar="BRAID")
@click.option("--b", "b_text", required=True, metavar="BRAID")
@click.option("--n", default=None, type=int, help="Strand count for compact words.")
@click.pass_obj
def braid_equal_cmd(cfg: Config, a_text: str, b_text: str, n: int | None) -> None:
    """Equality in the positive braid monoid."""
    a = _read_braid(a_text, n)
    b = _read_braid(b_text, n if n is not None else a.n)
    _emit(cfg, {"equal": braid.braid_equal(a, b)})


@braid_group.command("delta")
@click.option("--n", required=True, type=int)
@click.option("--out", default=None, metavar="PATH")
@click.pass_obj
def braid_delta(cfg: Config, n: int, out: str | None) -> None:
    """The half twist on n strands."""
    _emit(cfg, braid.to_json_dict(braid.delta(n)), out)


@braid_group.command("reduced")
@click.option("--braid", "braid_text", required=True, metavar="BRAID")
@click.option("--n", default=None, type=int)
@click.pass_obj
def braid_reduced(cfg: Config, braid_text: str, n: int | None) -> None:
    """Whether the word's length equals its permutation's length."""
    _emit(cfg, {"reduced": braid.is_reduced_braid(_read_braid(braid_text, n))})


@braid_group.command("technical")
@click.option("--braid", "braid_text", required=True, metavar="BRAID")
@click.option("--n", default=None, type=int)
@click.pass_obj
def braid_technical(cfg: Config, braid_text: str, n: int | None) -> None:
    """Whether the Demazure product of the word is the longest element."""
    _emit(cfg, {"technical": braid.technical_condition(_read_braid(braid_text, n))})


@braid_group.command("torus-link")
@click.option("--n", required=True, type=int, help="Strand count (2 <= n <= m).")
@click.option("--m", required=True, type=int)
@click.option("--out", default=None, metavar="PATH")
@click.pass_obj
def braid_torus_link(cfg: Config, n: int, m: int, out: str | None) -> None:
    """Braid word whose variety realizes the (n,m) torus link."""
    _emit(cfg, braid.to_json_dict(braid.torus_link_braid(n, m)), out)


# --------------------------------------------------------------- braidvar


@cli.group(cls=_Group, name="braidvar")
def braidvar_group() -> None:
    """Braid variety equations and finite-field point counts."""


@braidvar_group.command("equations")
@click.option("--braid", "braid_text", required=True, metavar="BRAID")
@click.option("--n", default=None, type=int)
@click.option("--out", default=None, metavar="PATH")
@click.pass_obj
def braidvar_equations(
    cfg: Config, braid_text: str, n: int | None, out: str | None
) -> None:
    """Defining equations in the matrix entry variables."""
    pres = braidvar.presentation(_read_braid(braid_text, n))
    _emit(
        cfg,
        {
            "n": pres.braid.n,
            "variables": list(pres.variables),
            "equations": [format_polynomial(e) for e in pres.equations],
            "dimension": pres.dimension,
            "technical": pres.technical,
        },
        out,
    )


@braidvar_group.command("count")
@click.option("--braid", "braid_text", required=True, metavar="BRAID")
@click.option("--n", default=None, type=int)
@click.option("--q", default=None, type=int)
@click.option("--budget", default=None, type=int)
@click.pass_obj
def braidvar_count(
    cfg: Config, braid_text: str, n: int | None, q: int | None, budget: int | None
) -> None:
    """Point count over F_q (all config primes when --q is omitted)."""
    word = _read_braid(braid_text, n)
    limit = budget if budget is not None else cfg.budget
    _emit(cfg, _counts(braidvar.count_points, word, q, limit, cfg))


@braidvar_group.command("double-count")
@click.option("--braid", "braid_text", required=True, metavar="BRAID")
@click.option("--n", default=None, type=int)
@click.option("--q", default=None, type=int)
@click.option("--budget", default=None, type=int)
@click.pass_obj
def braidvar_double_count(
    cfg: Config, braid_text: str, n: int | None, q: int | None, budget: int | None
) -> None:
    """Point count of the double variety (identity start) over F_q."""
    word = _read_braid(braid_text, n)
    limit = budget if budget is not None else cfg.budget
    _emit(cfg, _counts(braidvar.double_variety_count, word, q, limit, cfg))


# ------------------------------------------------------------------ weave


@cli.group(cls=_Group, name="weave")
def weave_group() -> None:
    """Demazure weaves as move sequences."""


@weave_group.command("build")
@click.option("--braid", "braid_text", required=True, metavar="BRAID")
@click.option("--n", default=None, type=int)
@click.option(
    "--policy", type=click.Choice(["leftmost", "rightmost"]), default="leftmost"
)
@click.option("--out", default=None, metavar="PATH")
@click.option("--fig", default=None, metavar="PATH", help="Also render the diagram.")
@click.pass_obj
def weave_build(
    cfg: Config,
    braid_text: str,
    n: int | None,
    policy: str,
    out: str | None,
    fig: str | None,
) -> None:
    """Greedy weave from a braid word down to a reduced bottom."""
    w = weave.build_weave(_read_braid(braid_text, n), policy)
    _emit(cfg, weave.to_json_dict(w), out)
    if fig is not None:
        render.save_figure(render.weave_figure(w), fig)


@weave_group.command("validate")
@click.option("--weave", "weave_path", required=True, metavar="PATH")
@click.pass_obj
def weave_validate(cfg: Config, weave_path: str) -> None:
    """Replay the moves and check the bottom word is reduced."""
    result = weave.validate(_read_weave(weave_path))
    _emit(
        cfg,
        {
            "ok": result.ok,
            "bottom": list(result.bottom.letters) if result.bottom else None,
            "failed_move": result.failed_move,
            "error": result.error,
        },
    )


@weave_group.command("mutate")
@click.option("--weave", "weave_path", required=True, metavar="PATH")
@click.option("--at", required=True, type=int, help="Move index of the pair to swap.")
@click.option("--out", default=None, metavar="PATH")
@click.pass_obj
def weave_mutate_cmd(cfg: Config, weave_path: str, at: int, out: str | None) -> None:
    """Swap the association order of a double trivalent pair."""
    w = weave.weave_mutate(_read_weave(weave_path), at)
    _emit(cfg, weave.to_json_dict(w), out)


@weave_group.command("count")
@click.option("--weave", "weave_path", required=True, metavar="PATH")
@click.option("--q", default=None, type=int)
@click.option("--budget", default=None, type=int)
@click.pass_obj
def weave_count(cfg: Config, weave_path: str, q: int | None, budget: int | None) -> None:
    """Points of the weave torus over F_q (all config primes when --q omitted)."""
    w = _read_weave(weave_path)
    limit = budget if budget is not None else cfg.budget
    _emit(cfg, _counts(weave.count_torus_points, w, q, limit, cfg))


@weave_group.command("svg")
@click.option("--weave", "weave_path", required=True, metavar="PATH")
@click.option("--out", required=True, metavar="PATH")
@click.pass_obj
def weave_svg(cfg: Config, weave_path: str, out: str) -> None:
    """Render the strand diagram (colors follow generator indices)."""
    w = _read_weave(weave_path)
    result = weave.validate(w)
    if not result.ok:
        raise BadParameters(f"weave does not validate: {result.error}")
    render.save_figure(render.weave_figure(w), out)
    _emit(cfg, {"out": out})


# ------------------------------------------------------------------ entry


def _emit_error(kind: str, message: str) -> None:
    click.echo(_json_text({"error": {"type": kind, "message": message}}), nl=False, err=True)


def run(argv: list[str] | None = None) -> int:
    """Dispatch; returns the exit status instead of raising SystemExit."""
    try:
        cli.main(args=argv, prog_name="clusterweave", standalone_mode=False)
    except UnknownSubcommand as exc:
        click.echo(exc.usage, err=True)
        click.echo(f"no such command: {exc.name}", err=True)
        return 64
    except click.UsageError as exc:
        _emit_error("UsageError", exc.format_message())
        return 2
    except click.ClickException as exc:
        _emit_error(type(exc).__name__, exc.format_message())
        return 2
    except click.exceptions.Abort:
        return 130
    except Error as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 2
    except (OSError, ZeroDivisionError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
