"""Random instances with a planted total order and an exact error count."""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass
from itertools import accumulate
from math import comb

from .model import Instance, edge_key

__all__ = ["FAMILIES", "GenSpec", "flipped_backbone", "generate", "max_extra"]

FAMILIES = ("random", "complete", "path_chords", "flipped_backbone")

# path_chords only joins positions at most this far apart in the planted order
LOCAL_SPAN = 4


def max_extra(n: int, family: str = "random") -> int:
    """Largest number of non-backbone chords the family can hold."""
    if family == "path_chords":
        return sum(max(0, n - d) for d in range(2, LOCAL_SPAN + 1))
    return comb(n, 2) - (n - 1) if n >= 2 else 0


@dataclass(frozen=True)
class GenSpec:
    n: int
    extra_edges: int = 0
    w: int = 0
    seed: int = 0
    family: str = "random"

    @property
    def m(self) -> int:
        if self.family == "complete":
            return comb(self.n, 2)
        return self.n - 1 + self.extra_edges

    def check(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family != "complete" and not 0 <= self.extra_edges <= max_extra(self.n, self.family):
            raise ValueError(
                f"extra_edges={self.extra_edges} outside [0, {max_extra(self.n, self.family)}] for n={self.n}"
            )
        if not 0 <= self.w <= self.m:
            raise ValueError(f"w={self.w} outside [0, m={self.m}]")
        if self.family == "flipped_backbone" and self.w != self.n - 1:
            raise ValueError(f"flipped_backbone fixes w = n-1 = {self.n - 1}, got {self.w}")

    @classmethod
    def from_density(cls, n: int, density: float, **kw) -> GenSpec:
        if not 0 < density <= 1:
            raise ValueError("density must be in (0, 1]")
        return cls(n, round(density * max_extra(n)), **kw)


def _sample_chords(rng: random.Random, n: int, k: int) -> list[tuple[int, int]]:
    """k distinct position pairs (i, j), j >= i + 2, uniformly without replacement."""
    # row i holds pairs (i, i+2..n-1)
    rows = [n - 2 - i for i in range(n - 2)]
    starts = [0, *accumulate(rows)]
    picks = rng.sample(range(starts[-1]), k)
    out = []
    for idx in picks:
        i = bisect.bisect_right(starts, idx) - 1
        out.append((i, i + 2 + idx - starts[i]))
    return out


def _local_chords(rng: random.Random, n: int, k: int) -> list[tuple[int, int]]:
    pool = [(i, i + d) for d in range(2, LOCAL_SPAN + 1) for i in range(n - d)]
    return rng.sample(pool, k)


def _build(n: int, order: list[int], pos_pairs: list[tuple[int, int]], rng: random.Random,
           w: int, backbone_flips: bool) -> Instance:
    truth_of: dict[tuple[int, int], bool] = {}
    for i, j in pos_pairs:
        a, b = order[i], order[j]
        e = edge_key(a, b)
        truth_of[e] = e[0] == a
    edges = sorted(truth_of)
    truth = [truth_of[e] for e in edges]
    pred = list(truth)
    if backbone_flips:
        backbone = {edge_key(order[i], order[i + 1]) for i in range(n - 1)}
        flip_idx = [k for k, e in enumerate(edges) if e in backbone]
    else:
        flip_idx = rng.sample(range(len(edges)), w)
    for k in flip_idx:
        pred[k] = not pred[k]
    return Instance(n, tuple(edges), tuple(truth), tuple(pred))


def generate(spec: GenSpec) -> Instance:
    spec.check()
    rng = random.Random(spec.seed)
    n = spec.n
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(i, i + 1) for i in range(n - 1)]
    if spec.family == "complete":
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif spec.family == "path_chords":
        pairs += _local_chords(rng, n, spec.extra_edges)
    else:
        pairs += _sample_chords(rng, n, spec.extra_edges)
    return _build(n, order, pairs, rng, spec.w, backbone_flips=spec.family == "flipped_backbone")


def flipped_backbone(n: int, seed: int = 0, extra_edges: int = 0) -> Instance:
    """Every Hamiltonian edge predicted backwards, every chord predicted correctly."""
    if n < 2:
        raise ValueError("flipped_backbone needs n >= 2")
    return generate(GenSpec(n, extra_edges, n - 1, seed, "flipped_backbone"))
