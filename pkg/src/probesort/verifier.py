"""Ground truth checks, the probe-everything baseline, and prefix-maxima statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import Instance, PredictedGraph, unique_topological_order
from .oracle import ProbeOracle
from .stepping import SolverGen, SolverInvariantError, StepSolver, drive

__all__ = [
    "BruteForceSolver",
    "LemmaRandReport",
    "brute_force_solve",
    "check_path",
    "harmonic",
    "lemma_rand_check",
    "ledger_consistent",
    "prefix_maxima_count",
]


class BruteForceSolver(StepSolver):
    """Probe every edge in index order, then read off the forced order."""

    algo = "brute"

    def _run(self) -> SolverGen:
        self.stats.iterations = 1
        for lo, hi in self.graph.edges:
            yield from self._probe(lo, hi)
        arcs = [e if f else (e[1], e[0]) for e, f in self.known.items()]
        path = unique_topological_order(self.graph.n, arcs)
        if path is None:
            raise SolverInvariantError("fully probed orientation has no Hamiltonian path")
        return path


def brute_force_solve(oracle: ProbeOracle) -> tuple[list[int], int]:
    # the baseline ignores predictions; any orientation will do
    graph = PredictedGraph(oracle.n, oracle.edges, (True,) * len(oracle.edges))
    path = drive(BruteForceSolver(graph), oracle)
    return path, oracle.probes_used()


def check_path(path: Sequence[int], inst: Instance) -> bool:
    if sorted(path) != list(range(inst.n)):
        return False
    arcs = set(inst.truth_arcs())
    return all((path[i], path[i + 1]) in arcs for i in range(len(path) - 1))


def ledger_consistent(oracle: ProbeOracle, inst: Instance) -> bool:
    """Every probed arc is a true arc of ``inst``."""
    return oracle.probed_ledger() <= set(inst.truth_arcs())


def prefix_maxima_count(perm: Sequence[int]) -> int:
    """Number of left-to-right maxima of a permutation of ``1..n``."""
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError("input is not a permutation of 1..n")
    count = 0
    best = 0
    for y in perm:
        if y > best:
            best = y
            count += 1
    return count


def harmonic(n: int) -> float:
    return math.fsum(1.0 / i for i in range(1, n + 1))


@dataclass
class LemmaRandReport:
    n: int
    trials: int
    seed: int
    mean: float
    expected: float
    max_observed: int
    threshold: float
    exceed_fraction: float

    @property
    def bound(self) -> float:
        return 1.0 / (2 * self.n**2)

    def lines(self) -> list[str]:
        return [
            "n,trials,seed,mean,harmonic,max_observed,threshold,exceed_fraction,bound",
            f"{self.n},{self.trials},{self.seed},{self.mean:.6f},{self.expected:.6f},"
            f"{self.max_observed},{self.threshold:.6f},{self.exceed_fraction:.3g},{self.bound:.3g}",
        ]


def lemma_rand_check(n: int, trials: int, seed: int = 0, chunk_cells: int = 4_000_000) -> LemmaRandReport:
    """Sample uniform permutations (numpy PCG64, Fisher-Yates per row) and
    tally their left-to-right maxima."""
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    rng = np.random.default_rng(seed)
    rows = max(1, chunk_cells // n)
    base = np.arange(n, dtype=np.int32)
    total = 0
    biggest = 0
    over = 0
    threshold = 6 * math.log(n) + 6
    done = 0
    while done < trials:
        k = min(rows, trials - done)
        perms = rng.permuted(np.broadcast_to(base, (k, n)), axis=1)
        counts = (perms == np.maximum.accumulate(perms, axis=1)).sum(axis=1)
        total += int(counts.sum())
        biggest = max(biggest, int(counts.max()))
        over += int((counts > threshold).sum())
        done += k
    return LemmaRandReport(n, trials, seed, total / trials, harmonic(n), biggest, threshold, over / trials)
