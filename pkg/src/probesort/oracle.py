"""Probe oracle: the only way a solver learns true edge directions."""

from __future__ import annotations

from typing import NamedTuple

from .model import Arc, EdgeKey, Instance, edge_key

__all__ = ["NonEdgeProbe", "ProbeOracle", "ProbeResult"]


class NonEdgeProbe(Exception):
    """A solver asked about a pair that is not an allowed comparison."""


class ProbeResult(NamedTuple):
    edge: EdgeKey
    forward: bool  # True: lo -> hi
    fresh: bool

    @property
    def arc(self) -> Arc:
        lo, hi = self.edge
        return (lo, hi) if self.forward else (hi, lo)


class ProbeOracle:
    """Answers probes from a hidden instance, charging each distinct edge once."""

    def __init__(self, instance: Instance):
        self._instance = instance
        self._ledger: dict[EdgeKey, bool] = {}
        self.calls = 0

    @property
    def n(self) -> int:
        return self._instance.n

    @property
    def edges(self) -> tuple[EdgeKey, ...]:
        return self._instance.edges

    def probe(self, a: int, b: int | None = None) -> ProbeResult:
        """Probe the edge ``{a, b}``; also accepts a single ``(a, b)`` pair."""
        if b is None:
            a, b = a
        e = edge_key(a, b)
        self.calls += 1
        cached = self._ledger.get(e)
        if cached is not None:
            return ProbeResult(e, cached, False)
        idx = self._instance.index.get(e)
        if idx is None:
            raise NonEdgeProbe(f"({a}, {b}) is not an edge of the instance")
        forward = self._instance.truth[idx]
        self._ledger[e] = forward
        return ProbeResult(e, forward, True)

    def probes_used(self) -> int:
        return len(self._ledger)

    def probed_ledger(self) -> frozenset[Arc]:
        return frozenset((lo, hi) if f else (hi, lo) for (lo, hi), f in self._ledger.items())

    def probe_sequence(self) -> list[EdgeKey]:
        """Distinct edges in the order they were first probed."""
        return list(self._ledger)
