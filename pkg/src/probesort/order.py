"""The settled set A, its induced order, and the candidate in-neighbor sets T_u.

Vertex sets are Python ints used as bitmasks.  ``desc[v]``/``anc[v]`` hold the
strict descendants/ancestors of ``v`` through known edges whose endpoints are
both in A; they are maintained incrementally on every insertion, which keeps
them equal to the full transitive closure of the known edges inside A.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .model import EdgeKey, PredictedGraph, edge_key
from .oracle import ProbeResult

__all__ = ["KnownEdge", "OrderState", "iter_bits", "mask_of"]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class KnownEdge(NamedTuple):
    forward: bool
    deduced: bool


class OrderState:
    def __init__(self, graph: PredictedGraph, track_comparability: bool = False):
        n = graph.n
        self.graph = graph
        self.n = n
        pred_in = [0] * n
        for (lo, hi), fwd in zip(graph.edges, graph.prediction):
            if fwd:
                pred_in[hi] |= 1 << lo
            else:
                pred_in[lo] |= 1 << hi
        self.pred_in: list[int] = pred_in
        self.t_sets: list[int] = list(pred_in)
        self.order: list[int] = []
        self.a_mask = 0
        # every edge whose direction is settled, inside A or not
        self.resolved: dict[EdgeKey, KnownEdge] = {}
        # resolved edges with both endpoints in A
        self.known: dict[EdgeKey, KnownEdge] = {}
        self.desc = [0] * n
        self.anc = [0] * n
        self.track_comparability = track_comparability
        self.comparability: dict[tuple[int, int], int] = {}

    def in_a(self, v: int) -> bool:
        return (self.a_mask >> v) & 1 == 1

    def on_probe(self, r: ProbeResult) -> None:
        e, forward = r.edge, r.forward
        lo, hi = e
        k = self.resolved[e] = KnownEdge(forward, False)
        if forward != self.graph.predicted_forward[e]:
            # prediction claimed the opposite arc; drop the wrong in-neighbor
            src, dst = (hi, lo) if forward else (lo, hi)
            self.t_sets[dst] &= ~(1 << src)
        if (self.a_mask >> lo) & (self.a_mask >> hi) & 1:
            self.known[e] = k

    def add_to_a(self, u: int, deduced_in: Iterable[int] = ()) -> None:
        """Settle ``u``.  ``deduced_in`` lists in-neighbors whose arc into ``u``
        was inferred rather than probed."""
        if self.in_a(u):
            raise AssertionError(f"vertex {u} is already in A")
        resolved = self.resolved
        for x in deduced_in:
            e = (x, u) if x < u else (u, x)
            if e not in resolved:
                resolved[e] = KnownEdge(x < u, True)
        for x in iter_bits(self.pred_in[u]):
            if ((x, u) if x < u else (u, x)) not in resolved:
                raise AssertionError(f"edge ({x}, {u}) unresolved when adding {u} to A")

        in_mask = 0
        out_mask = 0
        desc, anc, a_mask, known = self.desc, self.anc, self.a_mask, self.known
        for x in self.graph.neighbors[u]:
            if not (a_mask >> x) & 1:
                continue
            e = (x, u) if x < u else (u, x)
            k = resolved.get(e)
            if k is None:
                raise AssertionError(f"edge ({x}, {u}) inside A has no known direction")
            known[e] = k
            if k.forward == (x < u):
                in_mask |= (1 << x) | anc[x]
            else:
                out_mask |= (1 << x) | desc[x]

        bit = 1 << u
        self.a_mask |= bit
        self.order.append(u)
        if self.track_comparability:
            size = len(self.order)
            for a in iter_bits(in_mask | bit):
                for b in iter_bits((out_mask | bit) & ~desc[a] & ~(1 << a)):
                    self.comparability.setdefault(edge_key(a, b), size)
        desc[u] = out_mask
        anc[u] = in_mask
        down = out_mask | bit
        for a in iter_bits(in_mask):
            desc[a] |= down
        up = in_mask | bit
        for b in iter_bits(out_mask):
            anc[b] |= up

    def less_a(self, a: int, b: int) -> bool:
        return (self.desc[a] >> b) & 1 == 1

    def comparable(self, a: int, b: int) -> bool:
        return ((self.desc[a] | self.anc[a]) >> b) & 1 == 1

    def incomparable_pairs(self, u: int) -> list[tuple[int, int]]:
        members = list(iter_bits(self.t_sets[u]))
        pairs = []
        for i, v1 in enumerate(members):
            rel = self.desc[v1] | self.anc[v1]
            for v2 in members[i + 1:]:
                if not (rel >> v2) & 1:
                    pairs.append((v1, v2))
        return pairs

    def max_in_t(self, u: int) -> int | None:
        t = self.t_sets[u]
        if not t:
            return None
        for v in iter_bits(t):
            if not self.desc[v] & t:
                if (self.anc[v] & t) != t & ~(1 << v):
                    raise AssertionError(f"T_{u} is not totally ordered by <_A")
                return v
        raise AssertionError(f"T_{u} has no maximum under <_A")

    def path(self) -> list[int]:
        """The total order once A covers every vertex."""
        if len(self.order) != self.n:
            raise AssertionError("A does not cover V yet")
        return sorted(range(self.n), key=lambda v: self.desc[v].bit_count(), reverse=True)
