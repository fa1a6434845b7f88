"""Command line interface: ``barrierbot <command> ...``."""

from __future__ import annotations

import csv
import json
import os
import sys

import click

from . import adversary as adv
from .core import InstanceError, Trajectory, TrajectoryError, compute_gaps, dump_instance, load_instance
from .harness import (
    CEILINGS,
    CorpusSpec,
    audit_trajectory,
    bench_competitive,
    ceiling_violations,
    full_corpus,
    measure_scaling,
    render_svg,
    write_results,
)
from .offline import solve_offline, solve_offline_detailed
from .online import ALGORITHMS, StaticEnvironment
from .oracle import TooLarge, brute_force_optimal
from .sim import execute_trajectory

PROPERTY_VIOLATION = 2


class Ctx:
    def __init__(self, eps: float, seed: int, fmt: str):
        self.eps = eps
        self.seed = seed
        self.fmt = fmt

    def emit(self, rows: list[tuple[str, object]]) -> None:
        if self.fmt == "csv":
            w = csv.writer(sys.stdout, lineterminator="\n")
            w.writerow([k for k, _ in rows])
            w.writerow([_fmt(v, sep=" ") for _, v in rows])
        else:
            for k, v in rows:
                click.echo(f"{k}: {_fmt(v)}")


def _fmt(v, sep=", ") -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, (list, tuple)):
        return "[" + sep.join(_fmt(x, sep) for x in v) + "]"
    return str(v)


def _load(ctx: Ctx, path: str):
    try:
        return load_instance(path, ctx.eps)
    except (InstanceError, json.JSONDecodeError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc


def _parse_points(text: str) -> Trajectory:
    """Comma-separated points, or a file of points as written by ``--emit-trajectory``."""
    if os.path.isfile(text):
        with open(text) as fh:
            text = ",".join(line.strip() for line in fh if line.strip() and not line.startswith("length"))
    try:
        return Trajectory(tuple(float(p) for p in text.replace(" ", "").split(",") if p))
    except (TrajectoryError, ValueError) as exc:
        raise click.ClickException(f"bad trajectory {text!r}: {exc}") from exc


instance_opt = click.option("--instance", "path", required=True, type=click.Path(exists=True, dir_okay=False),
                            help="Instance JSON with keys length, range, positions.")


@click.group()
@click.option("--epsilon", default=1e-9, show_default=True, help="Comparison tolerance.")
@click.option("--seed", default=0, show_default=True, help="Seed for random generation.")
@click.option("--format", "fmt", type=click.Choice(["plain", "csv"]), default="plain", show_default=True)
@click.pass_context
def main(click_ctx, epsilon, seed, fmt):
    """Mobile-robot sensor relocation for barrier coverage."""
    click_ctx.obj = Ctx(epsilon, seed, fmt)


@main.command()
@instance_opt
@click.pass_obj
def gaps(ctx: Ctx, path):
    """List the uncovered intervals of an instance."""
    inst = _load(ctx, path)
    found = compute_gaps(inst, ctx.eps)
    if ctx.fmt == "csv":
        click.echo("lo,hi")
    for g in found:
        click.echo(f"{g.lo:.10g},{g.hi:.10g}" if ctx.fmt == "csv" else f"[{g.lo:.10g}, {g.hi:.10g}]")
    if not found and ctx.fmt == "plain":
        click.echo("covered")


@main.command("solve-offline")
@instance_opt
@click.option("--emit-trajectory", type=click.Path(dir_okay=False), default=None,
              help="Also write the trajectory points, one per line, followed by the length.")
@click.option("--emit-svg", type=click.Path(dir_okay=False), default=None, help="Also draw the solution.")
@click.pass_obj
def solve_offline_cmd(ctx: Ctx, path, emit_trajectory, emit_svg):
    """Optimal trajectory for a fully known instance."""
    inst = _load(ctx, path)
    sol = solve_offline_detailed(inst, ctx.eps)
    t = Trajectory() if sol is None else sol.trajectory
    if emit_trajectory:
        with open(emit_trajectory, "w") as fh:
            fh.write("".join(f"{p!r}\n" for p in t.points))
            fh.write(f"length {t.length!r}\n")
    if emit_svg:
        with open(emit_svg, "w") as fh:
            fh.write(render_svg(inst, t))
    if sol is None:
        ctx.emit([("trajectory", [0.0]), ("length", 0.0), ("triples", 0)])
        return
    ctx.emit([
        ("trajectory", list(sol.trajectory.points)),
        ("length", sol.trajectory.length),
        ("triples", sol.triples),
        ("overheads", [float(o) for o in sol.overheads]),
    ])


@main.command("solve-online")
@instance_opt
@click.option("--algo", type=click.Choice(sorted(ALGORITHMS)), required=True)
@click.option("--switch-point", type=float, default=None, help="Switching point for fixed-switch (default 2L/3).")
@click.option("--hide-length", is_flag=True, help="Do not disclose the barrier length to the robot.")
@click.pass_obj
def solve_online_cmd(ctx: Ctx, path, algo, switch_point, hide_length):
    """Run an online algorithm that discovers sensors as it walks."""
    inst = _load(ctx, path)
    env = StaticEnvironment(inst, hide_length=hide_length, eps=ctx.eps)
    kwargs = {"z": switch_point} if algo == "fixed-switch" and switch_point is not None else {}
    try:
        run = ALGORITHMS[algo](env, **kwargs)
    except RuntimeError as exc:
        raise click.ClickException(f"{algo}: {exc}") from exc
    rows = [("trajectory", list(run.trajectory.points)), ("length", run.length), ("triples", run.triples)]
    opt = solve_offline(inst, ctx.eps).length
    if opt > 0:
        rows.append(("ratio", run.length / opt))
    ctx.emit(rows)


@main.command()
@instance_opt
@click.option("--max-n", default=12, show_default=True)
@click.pass_obj
def oracle(ctx: Ctx, path, max_n):
    """Brute-force optimum for small instances."""
    inst = _load(ctx, path)
    try:
        t, length = brute_force_optimal(inst, max_n=max_n, eps=ctx.eps)
    except TooLarge as exc:
        raise click.ClickException(str(exc)) from exc
    ctx.emit([("trajectory", list(t.points)), ("length", length)])


@main.command()
@instance_opt
@click.option("--trajectory", "points", default=None, help="Comma-separated points or a trajectory file; default is the offline optimum.")
@click.pass_obj
def verify(ctx: Ctx, path, points):
    """Simulate a trajectory and check coverage and structure."""
    inst = _load(ctx, path)
    t = solve_offline(inst, ctx.eps) if points is None else _parse_points(points)
    rep = execute_trajectory(inst, t, ctx.eps)
    problems = audit_trajectory(inst, t, ctx.eps)
    ctx.emit([
        ("final", list(rep.final_positions)),
        ("length", rep.length),
        ("covered", rep.covered),
        ("max_visits", rep.max_visits),
        ("terminal_visits", rep.terminal_visits),
    ])
    for p in problems:
        click.echo(f"violation: {p}", err=True)
    if problems:
        sys.exit(PROPERTY_VIOLATION)


@main.command()
@click.option("--kind", type=click.Choice(["random", "known-l-adv", "unknown-l-adv", "fixed-switch-adv"]), required=True)
@click.option("--n", "n", type=int, default=10, show_default=True, help="Sensor count (random).")
@click.option("--length", type=float, default=None, help="Barrier length.")
@click.option("--range", "radius", type=float, default=None, help="Sensor range.")
@click.option("--stack", type=int, default=None, help="Stack size (known-l-adv: k, unknown-l-adv: i).")
@click.option("--delta", type=float, default=None, help="End slack for unknown-l-adv (default range/10).")
@click.option("--switch-point", type=float, default=None, help="z for fixed-switch-adv (default 2L/3).")
@click.option("--algo", type=click.Choice(sorted(ALGORITHMS)), default="adaptive",
              help="Robot the adaptive adversaries play against.")
@click.option("--no-end-gap", is_flag=True, help="Random instances may cover the barrier end.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def generate(ctx: Ctx, kind, n, length, radius, stack, delta, switch_point, algo, no_end_gap, out):
    """Write a random or adversarial instance to a JSON file."""
    try:
        if kind == "random":
            r = 1.0 if radius is None else radius
            L = 2 * r * n * 0.8 if length is None else length
            inst = adv.gen_random_instance(n, L, r, ctx.seed, require_end_gap=not no_end_gap, eps=ctx.eps)
        elif kind == "known-l-adv":
            env = adv.KnownLengthAdversary(1e6 if length is None else length, radius, stack, ctx.eps)
            env.hide_length = algo == "triple-always"
            ALGORITHMS[algo](env)
            inst = env.instance()
        elif kind == "unknown-l-adv":
            env = adv.UnknownLengthAdversary(100 if stack is None else stack, 1.0 if radius is None else radius,
                                             delta, ctx.eps)
            ALGORITHMS["triple-always"](env)
            inst = env.instance()
        else:
            L = 1000.0 if length is None else length
            z = 2 * L / 3 if switch_point is None else switch_point
            inst = adv.adversary_fixed_switch(z, L, 1.0 if radius is None else radius, ctx.eps)
    except InstanceError as exc:
        raise click.ClickException(str(exc)) from exc
    dump_instance(inst, out)
    ctx.emit([("kind", kind), ("n", inst.n), ("length", inst.length), ("range", inst.radius), ("out", out)])


@main.command()
@click.option("--count", default=10_000, show_default=True, help="Random end-gap instances.")
@click.option("--n-min", default=5, show_default=True)
@click.option("--n-max", default=50, show_default=True)
@click.option("--no-adversaries", is_flag=True, help="Skip the lower-bound families.")
@click.option("--algo", "algos", multiple=True, type=click.Choice(sorted(CEILINGS)))
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV file for per-run results.")
@click.option("--assert", "check", is_flag=True, help="Exit 2 if a ratio ceiling or structural check fails.")
@click.pass_obj
def bench(ctx: Ctx, count, n_min, n_max, no_adversaries, algos, out, check):
    """Competitive ratios of the online algorithms against the offline optimum."""
    spec = CorpusSpec(count=count, seed=ctx.seed, n_min=n_min, n_max=n_max, adversaries=not no_adversaries)
    problems: list[str] = []
    results = bench_competitive(full_corpus(spec), algos or tuple(CEILINGS), ctx.eps, problems)
    if out:
        with open(out, "w", newline="") as fh:
            write_results(results, fh)
    if ctx.fmt == "csv" and not out:
        write_results(results, sys.stdout)
    else:
        for algo in algos or CEILINGS:
            rs = [res for res in results if res.algo == algo]
            worst = max(rs, key=lambda res: res.ratio)
            click.echo(f"{algo}: runs {len(rs)}, max ratio {worst.ratio:.6f} ({worst.instance_id}), "
                       f"ceiling {CEILINGS[algo]:.6f}")
    over = ceiling_violations(results, ctx.eps)
    for res in over:
        click.echo(f"ceiling exceeded: {res.algo} on {res.instance_id} ratio {res.ratio:.6f}", err=True)
    for p in problems:
        click.echo(f"violation: {p}", err=True)
    if check and (over or problems):
        sys.exit(PROPERTY_VIOLATION)


@main.command()
@click.option("--sizes", default="1000,10000,100000,1000000", show_default=True)
@click.option("--trials", default=5, show_default=True)
@click.pass_obj
def scale(ctx: Ctx, sizes, trials):
    """Median offline solve time per instance size."""
    table = measure_scaling([int(s) for s in sizes.split(",")], trials, ctx.seed)
    click.echo("n,seconds" if ctx.fmt == "csv" else f"{'n':>10}  seconds")
    for n, sec in table:
        click.echo(f"{n},{sec:.6g}" if ctx.fmt == "csv" else f"{n:>10}  {sec:.6f}")


@main.command()
@instance_opt
@click.option("--trajectory", "points", default=None, help="Comma-separated points.")
@click.option("--algo", type=click.Choice(["offline", *sorted(ALGORITHMS)]), default="offline", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def render(ctx: Ctx, path, points, algo, out):
    """Draw initial coverage, the robot's passes and the final coverage as SVG."""
    inst = _load(ctx, path)
    if points is not None:
        t = _parse_points(points)
    elif algo == "offline":
        t = solve_offline(inst, ctx.eps)
    else:
        t = ALGORITHMS[algo](StaticEnvironment(inst, eps=ctx.eps)).trajectory
    with open(out, "w") as fh:
        fh.write(render_svg(inst, t, execute_trajectory(inst, t, ctx.eps)))
    click.echo(out)


if __name__ == "__main__":
    main()
