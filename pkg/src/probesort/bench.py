"""Experiment records, the alternating combiner, and bound reports."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import astuple, dataclass
from typing import Iterable, Iterator, TextIO

from .deterministic import DeterministicSolver
from .model import Instance, mispredicted_count
from .oracle import ProbeOracle
from .randomized import RandomizedSolver
from .seeding import RNG_ALGORITHM, SEED_RULE, solver_seed
from .stepping import Done, ProtocolError, StepSolver, drive
from .verifier import BruteForceSolver, check_path, ledger_consistent

__all__ = [
    "ALGOS",
    "BenchRecord",
    "BoundReport",
    "CSV_COLUMNS",
    "CSV_SCHEMA",
    "IncorrectRun",
    "alternate_combine",
    "bound_report",
    "make_solver",
    "read_records",
    "run_algorithm",
    "write_records",
]

ALGOS = ("rand", "det", "brute", "combined")
CSV_SCHEMA = f"# probesort-bench v1 rng={RNG_ALGORITHM} seeds={SEED_RULE}"
CSV_COLUMNS = ("algo", "n", "m", "w", "seed", "probes", "correct", "iterations", "wall_ms")

RAND_RATIO_LIMIT = 40.0
DET_RATIO_LIMIT = 3.0


class IncorrectRun(RuntimeError):
    pass


@dataclass
class BenchRecord:
    algo: str
    n: int
    m: int
    w: int
    seed: int
    probes: int
    correct: bool
    iterations: int
    wall_ms: float

    def row(self) -> list[str]:
        vals = astuple(self)
        return [
            str(v).lower() if isinstance(v, bool) else (f"{v:.3f}" if isinstance(v, float) else str(v))
            for v in vals
        ]


def make_solver(algo: str, inst: Instance, seed: int) -> StepSolver:
    graph = inst.observable()
    if algo == "rand":
        return RandomizedSolver(graph, solver_seed(seed))
    if algo == "det":
        return DeterministicSolver(graph)
    if algo == "brute":
        return BruteForceSolver(graph)
    raise ValueError(f"unknown algorithm {algo!r}")


def alternate_combine(a: StepSolver, b: StepSolver, oracle: ProbeOracle) -> tuple[list[int], int]:
    """Give ``a`` and ``b`` one probe request each in turn until one finishes.

    Both share ``oracle``; a request the oracle already answered still uses
    up that solver's turn.  When one solver finishes, the other is stepped
    once more without answering its request, to catch a simultaneous finish.
    """
    turn = [a, b]
    i = 0
    while True:
        s = turn[i]
        req = s.step()
        if isinstance(req, Done):
            other = turn[1 - i]
            try:
                peer = other.step()
            except ProtocolError:
                peer = None
            if isinstance(peer, Done) and peer.path != req.path:
                raise AssertionError(f"combined solvers disagree: {req.path} vs {peer.path}")
            return req.path, oracle.probes_used()
        s.feed(oracle.probe(req.edge))
        i = 1 - i


def run_algorithm(algo: str, inst: Instance, seed: int) -> BenchRecord:
    """One timed run; raises IncorrectRun if the output or ledger is wrong."""
    oracle = ProbeOracle(inst)
    t0 = time.perf_counter()
    if algo == "combined":
        ra, de = make_solver("rand", inst, seed), make_solver("det", inst, seed)
        path, _ = alternate_combine(ra, de, oracle)
        iterations = ra.stats.iterations + de.stats.iterations
    else:
        solver = make_solver(algo, inst, seed)
        path = drive(solver, oracle)
        iterations = solver.stats.iterations
    wall = (time.perf_counter() - t0) * 1000.0
    correct = check_path(path, inst) and ledger_consistent(oracle, inst)
    rec = BenchRecord(algo, inst.n, inst.m, mispredicted_count(inst), seed, oracle.probes_used(),
                      correct, iterations, wall)
    if not correct:
        raise IncorrectRun(f"{algo} returned a wrong path (seed={seed})")
    return rec


def write_records(out: TextIO, records: Iterable[BenchRecord], header: bool = True) -> None:
    w = csv.writer(out, lineterminator="\n")
    if header:
        out.write(CSV_SCHEMA + "\n")
        w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row())


def read_records(src: TextIO | str) -> list[BenchRecord]:
    if isinstance(src, str):
        src = io.StringIO(src)
    lines = (ln for ln in src if ln.strip() and not ln.startswith("#"))
    reader = csv.DictReader(lines)
    if reader.fieldnames is None:
        return []
    if tuple(reader.fieldnames) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV columns {reader.fieldnames}")
    out = []
    for lineno, row in enumerate(reader, start=2):
        try:
            out.append(
                BenchRecord(
                    algo=row["algo"],
                    n=int(row["n"]),
                    m=int(row["m"]),
                    w=int(row["w"]),
                    seed=int(row["seed"]),
                    probes=int(row["probes"]),
                    correct={"true": True, "false": False}[row["correct"]],
                    iterations=int(row["iterations"]),
                    wall_ms=float(row["wall_ms"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed CSV row {lineno}: {exc}") from None
    return out


def rand_ratio(r: BenchRecord) -> float:
    return r.probes / (r.n * math.log(r.n) + r.w + 1)


def det_ratio(r: BenchRecord) -> float:
    return r.probes / (r.n * (r.w + 2))


@dataclass
class BoundReport:
    rand_rows: int
    rand_max: float | None
    det_rows: int
    det_max: float | None
    flags: list[str]

    def lines(self) -> Iterator[str]:
        def fmt(x: float | None) -> str:
            return "-" if x is None else f"{x:.4f}"

        yield f"rand rows={self.rand_rows} max probes/(n ln n + w + 1)={fmt(self.rand_max)} limit={RAND_RATIO_LIMIT}"
        yield f"det  rows={self.det_rows} max probes/(n (w + 2))={fmt(self.det_max)} limit={DET_RATIO_LIMIT}"
        for f in self.flags:
            yield f"REGRESSION {f}"
        if not self.flags:
            yield "ok"


def bound_report(records: Iterable[BenchRecord]) -> BoundReport:
    records = list(records)
    rand = [r for r in records if r.algo == "rand"]
    det = [r for r in records if r.algo == "det"]
    rmax = max(map(rand_ratio, rand), default=None)
    dmax = max(map(det_ratio, det), default=None)
    flags = []
    if rmax is not None and rmax > RAND_RATIO_LIMIT:
        flags.append(f"rand ratio {rmax:.3f} > {RAND_RATIO_LIMIT}")
    if dmax is not None and dmax > DET_RATIO_LIMIT:
        flags.append(f"det ratio {dmax:.3f} > {DET_RATIO_LIMIT}")
    bad = [r for r in records if not r.correct]
    if bad:
        flags.append(f"{len(bad)} row(s) with correct=false")
    return BoundReport(len(rand), rmax, len(det), dmax, flags)
