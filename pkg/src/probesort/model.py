"""Instances of generalized sorting with predictions.

An instance is an undirected edge set over vertices ``0..n-1`` together with
two orientations of it: the hidden truth (acyclic, with a directed
Hamiltonian path) and the prediction handed to solvers.  Orientations are
stored as one boolean per edge, ``True`` meaning ``lo -> hi``.

Text format::

    n <n> m <m>
    <u> <v> <t> <p>        # m lines, u < v

``t``/``p`` are 0 when truth/prediction point ``u -> v`` and 1 otherwise.
Lines starting with ``#`` (and trailing ``#`` comments) are ignored.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

EdgeKey = tuple[int, int]
Arc = tuple[int, int]

__all__ = [
    "Arc",
    "EdgeKey",
    "InvalidInstance",
    "Instance",
    "ParseError",
    "PredictedGraph",
    "ValidationReport",
    "edge_key",
    "mispredicted_count",
    "parse",
    "serialize",
    "true_ham_path",
    "unique_topological_order",
    "validate_instance",
]


class InvalidInstance(ValueError):
    """Raised when an operation needs a valid instance and did not get one."""


class ParseError(ValueError):
    def __init__(self, line: int, cause: str):
        super().__init__(f"line {line}: {cause}")
        self.line = line
        self.cause = cause


def edge_key(a: int, b: int) -> EdgeKey:
    return (a, b) if a < b else (b, a)


def _arc(edge: EdgeKey, forward: bool) -> Arc:
    return edge if forward else (edge[1], edge[0])


def _check_edges(n: int, edges: Sequence[EdgeKey]) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    seen = set()
    for lo, hi in edges:
        if not 0 <= lo < hi < n:
            raise ValueError(f"bad edge ({lo}, {hi}) for n={n}")
        if (lo, hi) in seen:
            raise ValueError(f"duplicate edge ({lo}, {hi})")
        seen.add((lo, hi))


@dataclass(frozen=True)
class PredictedGraph:
    """What a solver is allowed to see: vertices, edges and predicted directions."""

    n: int
    edges: tuple[EdgeKey, ...]
    prediction: tuple[bool, ...]

    def __post_init__(self) -> None:
        _check_edges(self.n, self.edges)
        if len(self.prediction) != len(self.edges):
            raise ValueError("prediction must orient every edge exactly once")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[EdgeKey, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def predicted_forward(self) -> dict[EdgeKey, bool]:
        return dict(zip(self.edges, self.prediction))

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for lo, hi in self.edges:
            adj[lo].append(hi)
            adj[hi].append(lo)
        return tuple(tuple(sorted(a)) for a in adj)

    def predicted_arcs(self) -> list[Arc]:
        return [_arc(e, f) for e, f in zip(self.edges, self.prediction)]

    def predicts(self, src: int, dst: int) -> bool:
        """True iff the prediction orients the edge ``{src, dst}`` as ``src -> dst``."""
        e = edge_key(src, dst)
        return self.predicted_forward[e] == (e[0] == src)


@dataclass(frozen=True)
class Instance:
    n: int
    edges: tuple[EdgeKey, ...]
    truth: tuple[bool, ...]
    prediction: tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "truth", tuple(bool(t) for t in self.truth))
        object.__setattr__(self, "prediction", tuple(bool(p) for p in self.prediction))
        _check_edges(self.n, self.edges)
        if len(self.truth) != len(self.edges) or len(self.prediction) != len(self.edges):
            raise ValueError("truth and prediction must orient every edge exactly once")

    @classmethod
    def from_arcs(cls, n: int, truth_arcs: Iterable[Arc], predicted_arcs: Iterable[Arc] | None = None) -> Instance:
        """Build from directed arcs; prediction defaults to the truth."""
        truth_of = {edge_key(a, b): a < b for a, b in truth_arcs}
        pred_of = dict(truth_of)
        if predicted_arcs is not None:
            pred_of = {edge_key(a, b): a < b for a, b in predicted_arcs}
            if pred_of.keys() != truth_of.keys():
                raise ValueError("truth and prediction must orient the same edges")
        edges = tuple(sorted(truth_of))
        return cls(n, edges, tuple(truth_of[e] for e in edges), tuple(pred_of[e] for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[EdgeKey, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def with_prediction(self, prediction: Sequence[bool]) -> Instance:
        return Instance(self.n, self.edges, self.truth, tuple(prediction))

    def truth_arcs(self) -> list[Arc]:
        return [_arc(e, t) for e, t in zip(self.edges, self.truth)]

    def predicted_arcs(self) -> list[Arc]:
        return [_arc(e, p) for e, p in zip(self.edges, self.prediction)]

    def truth_forward(self, edge: EdgeKey) -> bool:
        return self.truth[self.index[edge]]

    def observable(self) -> PredictedGraph:
        return PredictedGraph(self.n, self.edges, self.prediction)


def unique_topological_order(n: int, arcs: Iterable[Arc]) -> list[int] | None:
    """Kahn's algorithm that insists on a single source at every step.

    Returns the order when it is forced and every consecutive pair is an arc
    (i.e. the arcs contain a Hamiltonian path), otherwise ``None``.
    """
    out: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    arcset = set()
    for a, b in arcs:
        out[a].append(b)
        indeg[b] += 1
        arcset.add((a, b))
    sources = [v for v in range(n) if indeg[v] == 0]
    order: list[int] = []
    while sources:
        if len(sources) > 1:
            return None
        v = sources.pop()
        order.append(v)
        for b in out[v]:
            indeg[b] -= 1
            if indeg[b] == 0:
                sources.append(b)
    if len(order) != n:
        return None
    if any((order[i], order[i + 1]) not in arcset for i in range(n - 1)):
        return None
    return order


def _topological_order(n: int, arcs: Iterable[Arc]) -> list[int] | None:
    out: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in arcs:
        out[a].append(b)
        indeg[b] += 1
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for b in out[v]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, b)
    return order if len(order) == n else None


@dataclass
class ValidationReport:
    acyclic: bool = True
    hamiltonian: bool = True
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def validate_instance(inst: Instance) -> ValidationReport:
    report = ValidationReport()
    arcs = inst.truth_arcs()
    order = _topological_order(inst.n, arcs)
    if order is None:
        report.acyclic = False
        report.hamiltonian = False
        report.violations.append("truth orientation contains a directed cycle")
        return report
    arcset = set(arcs)
    missing = [(order[i], order[i + 1]) for i in range(inst.n - 1) if (order[i], order[i + 1]) not in arcset]
    if missing:
        report.hamiltonian = False
        a, b = missing[0]
        report.violations.append(
            f"no directed Hamiltonian path: topological order is not forced ({a}->{b} missing"
            f", {len(missing)} gap(s))"
        )
    return report


def true_ham_path(inst: Instance) -> list[int]:
    order = unique_topological_order(inst.n, inst.truth_arcs())
    if order is None:
        raise InvalidInstance("; ".join(validate_instance(inst).violations) or "invalid instance")
    return order


def mispredicted_count(inst: Instance) -> int:
    return sum(t != p for t, p in zip(inst.truth, inst.prediction))


def serialize(inst: Instance) -> str:
    lines = [f"n {inst.n} m {inst.m}"]
    for (u, v), t, p in zip(inst.edges, inst.truth, inst.prediction):
        lines.append(f"{u} {v} {0 if t else 1} {0 if p else 1}")
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} is not an integer: {tok!r}") from None


def parse(text: str) -> Instance:
    header = None
    n = m = 0
    edges: list[EdgeKey] = []
    truth: list[bool] = []
    pred: list[bool] = []
    seen: set[EdgeKey] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if header is None:
            if len(toks) != 4 or toks[0] != "n" or toks[2] != "m":
                raise ParseError(lineno, f"expected header 'n <n> m <m>', got {line!r}")
            n = _int(toks[1], lineno, "n")
            m = _int(toks[3], lineno, "m")
            if n < 1 or m < 0:
                raise ParseError(lineno, f"need n >= 1 and m >= 0, got n={n} m={m}")
            header = lineno
            continue
        if len(toks) != 4:
            raise ParseError(lineno, f"expected '<u> <v> <t> <p>', got {line!r}")
        u, v, t, p = (_int(tok, lineno, name) for tok, name in zip(toks, "uvtp"))
        if not 0 <= u < v < n:
            raise ParseError(lineno, f"edge ({u}, {v}) must satisfy 0 <= u < v < {n}")
        if t not in (0, 1) or p not in (0, 1):
            raise ParseError(lineno, "direction flags must be 0 or 1")
        if (u, v) in seen:
            raise ParseError(lineno, f"duplicate edge ({u}, {v})")
        if len(edges) == m:
            raise ParseError(lineno, f"more than m={m} edge lines")
        seen.add((u, v))
        edges.append((u, v))
        truth.append(t == 0)
        pred.append(p == 0)
    if header is None:
        raise ParseError(1, "missing header")
    if len(edges) != m:
        raise ParseError(lineno if text else 1, f"expected {m} edge lines, found {len(edges)}")
    return Instance(n, tuple(edges), tuple(truth), tuple(pred))
