"""Resumable solver protocol shared by every algorithm.

Solvers are written as generators that ``yield`` the edge they want probed
and receive the :class:`ProbeResult` back.  :class:`StepSolver` wraps such a
generator in an explicit ``step()``/``feed()`` interface, so two solvers can
be interleaved probe by probe against one oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Generator, NamedTuple

from .model import EdgeKey, PredictedGraph, edge_key
from .oracle import ProbeOracle, ProbeResult

__all__ = [
    "Done",
    "NeedProbe",
    "ProtocolError",
    "RunStats",
    "SolverInvariantError",
    "StepSolver",
    "drive",
]


class ProtocolError(RuntimeError):
    pass


class SolverInvariantError(AssertionError):
    """A property the algorithm is proven to maintain did not hold."""


class NeedProbe(NamedTuple):
    edge: EdgeKey


class Done(NamedTuple):
    path: list[int]


@dataclass
class RunStats:
    algo: str
    probes: int = 0  # distinct edges this solver asked about
    iterations: int = 0
    mispredicted_found: int = 0
    insertion_order: list[int] = field(default_factory=list)
    type1: list[int] = field(default_factory=list)
    type2: list[int] = field(default_factory=list)
    comparability: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def type1_total(self) -> int:
        return sum(self.type1)

    @property
    def type2_total(self) -> int:
        return sum(self.type2)


SolverGen = Generator[EdgeKey, ProbeResult, list[int]]


class StepSolver:
    """Base class; subclasses implement ``_run`` as a generator."""

    algo = "?"

    def __init__(self, graph: PredictedGraph):
        self.graph = graph
        self.stats = RunStats(self.algo)
        self.known: dict[EdgeKey, bool] = {}
        self._gen = self._run()
        self._pending: EdgeKey | None = None
        self._reply: ProbeResult | None = None
        self._done = False

    def _run(self) -> SolverGen:
        raise NotImplementedError

    def _probe(self, a: int, b: int) -> Generator[EdgeKey, ProbeResult, bool]:
        """Learn the direction of ``{a, b}``; returns True iff it points ``a -> b``.

        Edges this solver already knows are answered locally without a request.
        """
        e = edge_key(a, b)
        forward = self.known.get(e)
        if forward is None:
            result = yield e
            forward = result.forward
            self.known[e] = forward
            self.stats.probes += 1
            if forward != self.graph.predicted_forward[e]:
                self.stats.mispredicted_found += 1
            self._on_result(result)
        return forward == (e[0] == a)

    def _on_result(self, result: ProbeResult) -> None:
        pass

    def step(self) -> NeedProbe | Done:
        if self._done:
            raise ProtocolError("solver already returned its path")
        if self._pending is not None and self._reply is None:
            raise ProtocolError("step() called before the last request was fed")
        reply, self._pending, self._reply = self._reply, None, None
        try:
            edge = self._gen.send(reply)
        except StopIteration as stop:
            self._done = True
            return Done(stop.value)
        self._pending = edge
        return NeedProbe(edge)

    def feed(self, result: ProbeResult) -> None:
        if self._pending is None:
            raise ProtocolError("feed() without an outstanding request")
        if result.edge != self._pending:
            raise ProtocolError(f"fed {result.edge}, expected {self._pending}")
        self._reply = result


def drive(solver: StepSolver, oracle: ProbeOracle) -> list[int]:
    """Run ``solver`` to completion against ``oracle``.

    Talks to the generator directly; the result is the same as alternating
    ``step``/``feed`` but skips the per-request bookkeeping.
    """
    if solver._done or solver._pending is not None:
        raise ProtocolError("drive() needs a solver that has not been stepped")
    gen = solver._gen
    probe = oracle.probe
    reply = None
    try:
        while True:
            reply = probe(gen.send(reply))
    except StopIteration as stop:
        solver._done = True
        return stop.value
