"""Competitive-ratio benchmarks, scaling measurements, CSV output and SVG figures."""

from __future__ import annotations

import csv
import statistics
import time
import xml.etree.ElementTree as ET
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Callable, Iterable, Iterator, TextIO

import numpy as np

from .adversary import (
    KnownLengthAdversary,
    UnknownLengthAdversary,
    adversary_fixed_switch,
    gen_random_instance,
)
from .core import DEFAULT_EPS, Instance, Trajectory, compute_gaps
from .offline import solve_offline
from .online import ALGORITHMS, HIDES_LENGTH, OnlineEnvironment, OnlineRun, StaticEnvironment
from .sim import SimulationReport, execute_trajectory, fully_stretched, verify_shape

CEILINGS = {"adaptive": 5 / 4, "triple-always": 3 / 2, "fixed-switch": 4 / 3}


@dataclass(frozen=True)
class BenchResult:
    instance_id: str
    algo: str
    n: int
    L: float
    r: float
    online_len: float
    offline_len: float
    ratio: float
    triples: int
    epochs: int
    ms: float


COLUMNS = [f.name for f in fields(BenchResult)]


def write_results(results: Iterable[BenchResult], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(COLUMNS)
    for res in results:
        w.writerow([repr(v) if isinstance(v, float) else v for v in astuple(res)])


def read_results(src: TextIO) -> list[BenchResult]:
    casts = {f.name: f.type for f in fields(BenchResult)}
    conv = {"str": str, "int": int, "float": float}
    rows = []
    for rec in csv.DictReader(src):
        rows.append(BenchResult(**{k: conv[casts[k]](v) for k, v in rec.items()}))
    return rows


def has_end_gap(inst: Instance, eps: float = DEFAULT_EPS) -> bool:
    gaps = compute_gaps(inst, eps)
    return bool(gaps) and gaps[-1].hi >= inst.length - eps


def audit_trajectory(inst: Instance, t: Trajectory, eps: float = DEFAULT_EPS) -> list[str]:
    """Structural problems of ``t`` on ``inst``; empty when all checks pass."""
    rep = execute_trajectory(inst, t, eps)
    problems = []
    if not rep.covered:
        problems.append("coverage incomplete")
    if rep.max_visits > 3:
        problems.append(f"interior point visited {rep.max_visits} times")
    if rep.terminal_visits > 2:
        problems.append(f"terminal visited {rep.terminal_visits} times")
    if not rep.order_preserved:
        problems.append("sensor order changed")
    if not fully_stretched(inst, t, rep, eps):
        problems.append("final positions not fully stretched")
    if not verify_shape(t, eps):
        problems.append("not a run of triples closed by a double")
    return problems


@dataclass(frozen=True)
class CorpusSpec:
    count: int = 10_000
    seed: int = 0
    n_min: int = 5
    n_max: int = 50
    radius: float = 1.0
    adversaries: bool = True


@dataclass(frozen=True)
class CorpusItem:
    """A static instance, or a factory for an environment that adapts to the robot."""

    instance_id: str
    instance: Instance | None = None
    adversary: Callable[[bool], OnlineEnvironment] | None = None


def random_corpus(spec: CorpusSpec) -> Iterator[CorpusItem]:
    master = np.random.default_rng(spec.seed)
    for i in range(spec.count):
        n = int(master.integers(spec.n_min, spec.n_max + 1))
        fill = float(master.uniform(0.25, 1.0))
        seed = int(master.integers(2**31))
        inst = gen_random_instance(n, 2 * spec.radius * n * fill, spec.radius, seed)
        yield CorpusItem(f"rand-{spec.seed}-{i}", inst)


def _known(length, radius, stack):
    def make(hide: bool) -> OnlineEnvironment:
        env = KnownLengthAdversary(length, radius, stack)
        env.hide_length = hide
        return env

    return make


def _unknown(count, radius, delta):
    return lambda hide: UnknownLengthAdversary(count, radius, delta)


def adversary_corpus() -> Iterator[CorpusItem]:
    for L, r, k in [(1e3, 10.0, 10), (1e5, None, None), (1e6, 100.0, 100)]:
        yield CorpusItem(f"known-l-adv-{L:g}", adversary=_known(L, r, k))
    for i in (1, 2, 5, 20, 100):
        yield CorpusItem(f"unknown-l-adv-{i}", adversary=_unknown(i, 1.0, 0.1))
    L = 1000.0
    for frac in (0.0, 1 / 3, 2 / 3, 0.75, 5 / 6, 1.0):
        yield CorpusItem(f"fixed-switch-adv-{frac:.3f}", adversary_fixed_switch(frac * L, L, 1.0))


def full_corpus(spec: CorpusSpec) -> Iterator[CorpusItem]:
    yield from random_corpus(spec)
    if spec.adversaries:
        yield from adversary_corpus()


def _play(item: CorpusItem, algo: str, eps: float) -> tuple[Instance, OnlineRun, float]:
    hide = HIDES_LENGTH[algo]
    if item.adversary is not None:
        env = item.adversary(hide)
        if env._barrier_length() is None and not hide:
            # an unknown-length adversary settles L only against a robot that hides it;
            # known-length robots face the instance it builds against triple-always
            probe = item.adversary(True)
            ALGORITHMS["triple-always"](probe)
            env = StaticEnvironment(probe.instance(), hide_length=False, eps=eps)
    else:
        env = StaticEnvironment(item.instance, hide_length=hide, eps=eps)
    t0 = time.perf_counter()
    run = ALGORITHMS[algo](env)
    ms = (time.perf_counter() - t0) * 1e3
    return env.instance(), run, ms


def bench_competitive(
    corpus: Iterable[CorpusItem],
    algorithms: Iterable[str] = tuple(CEILINGS),
    eps: float = DEFAULT_EPS,
    problems: list[str] | None = None,
) -> list[BenchResult]:
    """Run every algorithm on every corpus item with an uncovered end.

    When ``problems`` is a list, every trajectory (offline and online) is also
    audited and violations are appended to it.
    """
    algorithms = list(algorithms)
    results = []
    for item in corpus:
        offline_cache: dict[Instance, float] = {}
        for algo in algorithms:
            inst, run, ms = _play(item, algo, eps)
            if not has_end_gap(inst, eps):
                continue
            if inst not in offline_cache:
                opt = solve_offline(inst, eps)
                offline_cache[inst] = opt.length
                if problems is not None:
                    problems.extend(f"{item.instance_id} offline: {p}" for p in audit_trajectory(inst, opt, eps))
            if problems is not None:
                problems.extend(f"{item.instance_id} {algo}: {p}" for p in audit_trajectory(inst, run.trajectory, eps))
            off = offline_cache[inst]
            epochs = len(run.epochs) + (1 if run.iterations else 0)
            results.append(
                BenchResult(
                    item.instance_id, algo, inst.n, inst.length, inst.radius,
                    run.length, off, run.length / off, run.triples, epochs, ms,
                )
            )
    return results


def ceiling_violations(results: Iterable[BenchResult], eps: float = DEFAULT_EPS) -> list[BenchResult]:
    return [res for res in results if res.algo in CEILINGS and res.ratio > CEILINGS[res.algo] + eps]


def measure_scaling(
    sizes: Iterable[int],
    trials: int = 5,
    seed: int = 0,
    radius: float = 1.0,
) -> list[tuple[int, float]]:
    """Median wall time of the offline solver, in seconds, for each size."""
    table = []
    for n in sizes:
        inst = gen_random_instance(n, 1.8 * radius * n, radius, seed, mode="uniform")
        times = []
        for _ in range(trials):
            t0 = time.perf_counter()
            solve_offline(inst)
            times.append(time.perf_counter() - t0)
        table.append((n, statistics.median(times)))
    return table


_WIDTH = 800.0
_ROW = 28.0
_PAD = 20.0


def render_svg(inst: Instance, t: Trajectory, report: SimulationReport | None = None) -> str:
    """Boxes for the initial and final coverage with the robot's passes in between."""
    if report is None:
        report = execute_trajectory(inst, t)
    scale = (_WIDTH - 2 * _PAD) / inst.length
    passes = t.segments
    rows = 3 + len(passes) if passes else 3
    height = 2 * _PAD + rows * _ROW
    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=f"{_WIDTH:g}",
        height=f"{height:g}",
        viewBox=f"0 0 {_WIDTH:g} {height:g}",
    )

    def X(v: float) -> str:
        return f"{_PAD + v * scale:.3f}"

    def boxes(name: str, row: int, centres: Iterable[float]) -> None:
        g = ET.SubElement(svg, "g", {"class": name})
        y = _PAD + row * _ROW
        for c in centres:
            lo, hi = max(c - inst.radius, 0.0), min(c + inst.radius, inst.length)
            ET.SubElement(g, "rect", {
                "x": X(lo), "y": f"{y + 4:.3f}", "width": f"{(hi - lo) * scale:.3f}",
                "height": f"{_ROW - 8:.3f}", "fill": "#9ecae1", "fill-opacity": "0.5", "stroke": "#3182bd",
            })

    axis = ET.SubElement(svg, "g", {"class": "barrier"})
    ET.SubElement(axis, "line", {
        "x1": X(0), "x2": X(inst.length), "y1": f"{_PAD + _ROW / 2:.3f}", "y2": f"{_PAD + _ROW / 2:.3f}",
        "stroke": "black",
    })
    boxes("initial", 1, inst.positions)
    if not passes:
        cap = ET.SubElement(svg, "text", {"class": "caption", "x": X(0), "y": f"{_PAD + 2.7 * _ROW:.3f}"})
        cap.text = "no action"
    else:
        g = ET.SubElement(svg, "g", {"class": "trajectory"})
        for i, (a, b) in enumerate(passes):
            y = f"{_PAD + (2 + i) * _ROW + _ROW / 2:.3f}"
            ET.SubElement(g, "line", {"class": "pass", "x1": X(a), "x2": X(b), "y1": y, "y2": y,
                                      "stroke": "#d62728", "stroke-width": "2"})
            ET.SubElement(g, "circle", {"class": "turn", "cx": X(b), "cy": y, "r": "3", "fill": "#d62728"})
        boxes("final", rows - 1, report.final_positions)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def save_svg(text: str, path: str | Path) -> None:
    Path(path).write_text(text)
