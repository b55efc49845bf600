"""Deterministic solver using O(n w) probes.

Works on the corrected graph: the prediction with every probed edge
overwritten by its true direction.  Each round either probes a directed cycle
of that graph, or topologically sorts it and probes the consecutive pairs of
the (possibly partial) order plus every edge around the first pair of
simultaneous sources.  Every round that does not finish uncovers at least one
mispredicted edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .model import Arc, EdgeKey, PredictedGraph, edge_key, unique_topological_order
from .oracle import ProbeOracle
from .stepping import RunStats, SolverGen, SolverInvariantError, StepSolver, drive

__all__ = [
    "CorrectedGraph",
    "DeterministicSolver",
    "corrected_graph",
    "find_cycle",
    "solve",
    "topo_until_tie",
]


@dataclass(frozen=True)
class CorrectedGraph:
    n: int
    arcs: tuple[Arc, ...]

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.arcs:
            out[a].append(b)
        for lst in out:
            lst.sort()
        return out


def corrected_graph(graph: PredictedGraph, ledger: Mapping[EdgeKey, bool]) -> CorrectedGraph:
    """Prediction with every ledger entry (edge -> lo->hi flag) applied."""
    arcs = []
    for e, fwd in zip(graph.edges, graph.prediction):
        fwd = ledger.get(e, fwd)
        arcs.append(e if fwd else (e[1], e[0]))
    return CorrectedGraph(graph.n, tuple(arcs))


def find_cycle(g: CorrectedGraph) -> list[Arc] | None:
    """Some simple directed cycle as a list of arcs, or None if ``g`` is acyclic.

    Iterative DFS from vertices in index order, successors in index order;
    the first back edge closes the returned cycle.
    """
    succ = g.successors()
    color = [0] * g.n  # 0 new, 1 on stack, 2 finished
    for root in range(g.n):
        if color[root]:
            continue
        path = [root]
        its = [iter(succ[root])]
        color[root] = 1
        while path:
            v = path[-1]
            for w in its[-1]:
                if color[w] == 0:
                    color[w] = 1
                    path.append(w)
                    its.append(iter(succ[w]))
                    break
                if color[w] == 1:
                    cyc = path[path.index(w):]
                    return [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
            else:
                color[v] = 2
                path.pop()
                its.pop()
    return None


def topo_until_tie(g: CorrectedGraph) -> tuple[list[int], tuple[int, int] | None]:
    """Peel unique sources until two coexist.

    Returns the peeled prefix and the two smallest-index simultaneous sources,
    or ``(full order, None)`` if the sort never branched.
    """
    succ = g.successors()
    indeg = [0] * g.n
    for _, b in g.arcs:
        indeg[b] += 1
    sources = [v for v in range(g.n) if indeg[v] == 0]
    prefix: list[int] = []
    while sources:
        if len(sources) > 1:
            sources.sort()
            return prefix, (sources[0], sources[1])
        v = sources.pop()
        prefix.append(v)
        for b in succ[v]:
            indeg[b] -= 1
            if indeg[b] == 0:
                sources.append(b)
    if len(prefix) != g.n:
        raise ValueError("topo_until_tie called on a graph with a cycle")
    return prefix, None


class DeterministicSolver(StepSolver):
    algo = "det"

    def _ledger_path(self) -> list[int] | None:
        arcs = [e if f else (e[1], e[0]) for e, f in self.known.items()]
        return unique_topological_order(self.graph.n, arcs)

    def _run(self) -> SolverGen:
        graph = self.graph
        stats = self.stats
        while (path := self._ledger_path()) is None:
            stats.iterations += 1
            found_before = stats.mispredicted_found
            g = corrected_graph(graph, self.known)
            cycle = find_cycle(g)
            if cycle is not None:
                for a, b in cycle:
                    yield from self._probe(a, b)
            else:
                prefix, tie = topo_until_tie(g)
                for a, b in zip(prefix, prefix[1:]):
                    if edge_key(a, b) not in graph.index:
                        raise SolverInvariantError(f"consecutive sources {a}, {b} share no edge")
                    yield from self._probe(a, b)
                if tie is not None:
                    for v in tie:
                        for x in graph.neighbors[v]:
                            yield from self._probe(v, x)
            if stats.mispredicted_found == found_before and self._ledger_path() is None:
                raise SolverInvariantError(
                    f"round {stats.iterations} found no mispredicted edge and did not finish"
                )
        return path


def solve(oracle: ProbeOracle, graph: PredictedGraph) -> tuple[list[int], RunStats]:
    solver = DeterministicSolver(graph)
    path = drive(solver, oracle)
    return path, solver.stats
