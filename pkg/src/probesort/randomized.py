"""Certificate-driven randomized solver, O(n log n + w) probes w.h.p.

Each round picks the smallest-index vertex outside A without a valid
certificate and does one of three things:

* some candidate in-neighbor is outside A: probe one uniformly at random;
  a correct arc becomes a type-1 certificate;
* two candidates are incomparable in A: probe a uniformly random such pair;
  two correct arcs become a type-2 certificate;
* otherwise probe the arc from the largest candidate; if it is correct every
  other candidate arc follows by transitivity and the vertex joins A.

Certificates are only re-checked when their owner comes up for selection.
Their validity depends on A alone, so between two insertions a vertex that
was found certified stays certified and the scan can resume where it stopped.
"""

from __future__ import annotations

import random
from typing import Callable, NamedTuple

from .model import PredictedGraph
from .oracle import ProbeOracle, ProbeResult
from .order import OrderState, iter_bits
from .stepping import RunStats, SolverGen, SolverInvariantError, StepSolver, drive

__all__ = ["Certificate", "RandomizedSolver", "solve"]


class Certificate(NamedTuple):
    owner: int
    vertices: tuple[int, ...]  # (v,) for type 1, (v1, v2) for type 2

    @property
    def kind(self) -> int:
        return len(self.vertices)

    def valid(self, st: OrderState) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return not (st.a_mask >> vs[0]) & 1
        v1, v2 = vs
        return (st.a_mask >> v1) & (st.a_mask >> v2) & 1 == 1 and not st.comparable(v1, v2)


class RandomizedSolver(StepSolver):
    algo = "rand"

    def __init__(
        self,
        graph: PredictedGraph,
        seed: int = 0,
        *,
        track_comparability: bool = False,
        on_insert: Callable[[OrderState, int], None] | None = None,
    ):
        self.rng = random.Random(seed)
        self.state = OrderState(graph, track_comparability=track_comparability)
        self.certificates: list[Certificate | None] = [None] * graph.n
        self.on_insert = on_insert
        super().__init__(graph)
        self.stats.type1 = [0] * graph.n
        self.stats.type2 = [0] * graph.n

    def _on_result(self, result: ProbeResult) -> None:
        self.state.on_probe(result)

    def _insert(self, u: int, deduced: list[int]) -> None:
        self.state.add_to_a(u, deduced)
        if self.on_insert is not None:
            self.on_insert(self.state, u)

    def _run(self) -> SolverGen:
        st = self.state
        n = self.graph.n
        certs = self.certificates
        stats = self.stats
        rng = self.rng
        outside = list(range(n))
        cursor = 0
        while outside:
            while cursor < len(outside):
                u = outside[cursor]
                c = certs[u]
                if c is None:
                    break
                if not c.valid(st):
                    certs[u] = None
                    break
                cursor += 1
            else:
                raise SolverInvariantError(
                    f"every vertex outside A holds a valid certificate (|A|={len(st.order)})"
                )
            stats.iterations += 1
            t = st.t_sets[u]
            pending = t & ~st.a_mask
            if pending:
                candidates = list(iter_bits(pending))
                v = candidates[rng.randrange(len(candidates))]
                if (yield from self._probe(v, u)):
                    certs[u] = Certificate(u, (v,))
                    stats.type1[u] += 1
                    cursor += 1
                continue
            pairs = st.incomparable_pairs(u)
            if pairs:
                v1, v2 = pairs[rng.randrange(len(pairs))]
                ok1 = yield from self._probe(v1, u)
                ok2 = yield from self._probe(v2, u)
                if ok1 and ok2:
                    certs[u] = Certificate(u, (v1, v2))
                    stats.type2[u] += 1
                    cursor += 1
                continue
            top = st.max_in_t(u)
            if top is not None and not (yield from self._probe(top, u)):
                continue
            self._insert(u, list(iter_bits(st.t_sets[u])))
            outside.remove(u)
            cursor = 0
        stats.insertion_order = list(st.order)
        stats.comparability = dict(st.comparability)
        return st.path()


def solve(
    oracle: ProbeOracle, graph: PredictedGraph, seed: int = 0, **kwargs
) -> tuple[list[int], RunStats]:
    solver = RandomizedSolver(graph, seed, **kwargs)
    path = drive(solver, oracle)
    return path, solver.stats
