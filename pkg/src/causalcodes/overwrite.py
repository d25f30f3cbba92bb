"""Pairwise-authenticated code and its consistency-graph decoder.

Against a jammer that overwrites packets with a delay of ``w = ceil(dn)``
packets, every packet signs every other packet's data under its own keys.
Two packets closer than ``w`` cannot be forged consistently with each other,
and an untouched later packet always exposes a changed earlier one.  The
decoder

1. builds the graph of mutually consistent pairs at distance ``< w`` and
   splits it into connected components,
2. enumerates unions of at most ``floor(budget / w) + 1`` components that
   hold at least ``n - budget`` packets and are pairwise consistent
   throughout, in lexicographic order of the component indices,
3. erasure-decodes each union from its lowest ``k`` packets and accepts the
   first whose claim reproduces every packet in the union.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .auth import PairwiseLayout, consistency_matrix, signature_matrix
from .capacity import capacity_exact
from .erasure import DecodeFailure, ErasureCode
from .params import Params


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller root wins so labels are stable
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class ConsistencyGraph:
    n: int
    window: int
    edges: frozenset
    components: tuple  # tuple of sorted index tuples, ordered by smallest vertex
    consistent: np.ndarray  # (n, n) mutual consistency over all pairs


@dataclass(frozen=True)
class CandidateSubset:
    components: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.components)


@dataclass
class SearchStats:
    examined: int = 0
    accepted: int = 0
    verified: int = 0


def build_graph(consistent: np.ndarray, window: int) -> ConsistencyGraph:
    """Consistency graph from an all-pairs mutual consistency matrix."""
    consistent = np.asarray(consistent, dtype=bool)
    n = consistent.shape[0]
    uf = _UnionFind(n)
    edges = set()
    for i in range(n):
        for j in range(i + 1, min(n, i + window)):
            if consistent[i, j]:
                edges.add((i, j))
                uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(uf.find(v), []).append(v)
    components = tuple(sorted(tuple(g) for g in groups.values()))
    return ConsistencyGraph(n, window, frozenset(edges), components, consistent)


def enumerate_candidates(
    graph: ConsistencyGraph, min_vertices: int, max_components: int, stats: SearchStats | None = None
) -> Iterator[CandidateSubset]:
    """Yield every admissible union of components in lexicographic order."""
    comps = graph.components
    ok = graph.consistent
    if stats is None:
        stats = SearchStats()

    def closed(group: tuple[int, ...]) -> bool:
        return bool(ok[np.ix_(group, group)].all())

    def extend(start: int, chosen: tuple[int, ...], vertices: tuple[int, ...]):
        for c in range(start, len(comps)):
            stats.examined += 1
            new = comps[c]
            union = vertices + new
            # a failed pairwise check can only get worse with more components
            if not closed(new) or (vertices and not ok[np.ix_(vertices, new)].all()):
                continue
            picked = chosen + (c,)
            if len(union) >= min_vertices:
                stats.accepted += 1
                yield CandidateSubset(picked, tuple(sorted(union)))
            if len(picked) < max_components:
                yield from extend(c + 1, picked, union)

    yield from extend(0, (), ())


class OverwriteCodec:
    def __init__(self, params: Params):
        C = capacity_exact("overwrite", params.p, params.d)
        if params.d == 0 or params.window == 0:
            raise ValueError("the pairwise scheme needs a positive delay; use the plain RS baseline at d = 0")
        if C <= 0:
            raise ValueError(f"capacity is zero at p={params.p}")
        self.params = params
        self.field = params.field
        self.n = params.n
        self.capacity = C
        self.k = int(C * params.n)
        if self.k < 1:
            raise ValueError(f"block length n={params.n} too short for rate {float(C)}")
        self.window = params.window
        self.budget = params.budget
        self.max_components = self.budget // self.window + 1
        self.layout = PairwiseLayout(params.s, params.n)
        self.erasure = ErasureCode(self.field, self.n, self.k, lanes=self.layout.data_len)

    def __repr__(self):
        return f"OverwriteCodec({self.params}, k={self.k})"

    @property
    def packet_len(self) -> int:
        return self.layout.packet_len

    @property
    def rate(self) -> float:
        return self.k * self.layout.data_len / (self.n * self.layout.packet_len)

    def _packets(self, data: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        keys = self.field.random(rng, (self.n, self.n, self.params.s))
        sigs = signature_matrix(self.field, self.layout, data, keys)
        return self.layout.assemble(data, keys, sigs)

    def encode(self, message: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """``(k, s*s)`` message to an ``(n, s*s + 2ns)`` codeword with fresh keys."""
        return self._packets(self.erasure.encode(message), rng)

    def graph(self, received: np.ndarray) -> ConsistencyGraph:
        received = np.asarray(received)
        if received.shape != (self.n, self.packet_len):
            raise ValueError(f"received word must have shape {(self.n, self.packet_len)}, got {received.shape}")
        return build_graph(consistency_matrix(self.field, self.layout, received), self.window)

    def candidates(self, graph: ConsistencyGraph, stats: SearchStats | None = None) -> Iterator[CandidateSubset]:
        return enumerate_candidates(graph, self.n - self.budget, self.max_components, stats)

    def verify_candidate(self, received: np.ndarray, candidate: CandidateSubset):
        """Erasure-decode a candidate; returns the message or ``None``."""
        data = np.asarray(received)[:, : self.layout.data_len]
        span = list(candidate.vertices)
        base = span[: self.k]
        claim = self.erasure.decode_from_subset(base, data[base])
        if self.erasure.check_consistency(claim, span, data[span]):
            return claim
        return None

    def passing(self, received: np.ndarray, stats: SearchStats | None = None):
        """Every candidate that survives verification, with its message."""
        for cand in self.candidates(self.graph(received), stats):
            claim = self.verify_candidate(received, cand)
            if claim is not None:
                if stats is not None:
                    stats.verified += 1
                yield cand, claim

    def decode_verbose(self, received: np.ndarray) -> tuple[np.ndarray, SearchStats]:
        stats = SearchStats()
        for _, claim in self.passing(received, stats):
            return claim, stats
        raise DecodeFailure("no candidate subset passed verification", candidates=stats.examined)

    def decode(self, received: np.ndarray) -> np.ndarray:
        return self.decode_verbose(received)[0]

    # public code description, used by adversaries

    def sample_codeword(self, rng: np.random.Generator) -> np.ndarray:
        message = self.field.random(rng, (self.k, self.layout.data_len))
        return self.encode(message, rng)

    def sample_consistent(self, known: Mapping[int, np.ndarray], rng: np.random.Generator) -> np.ndarray:
        """A codeword that repeats the ``known`` packets verbatim.

        Only the data of the known packets constrains the message; the
        other packets get fresh keys and signatures of the new data.
        """
        data_known = {i: np.asarray(row)[: self.layout.data_len] for i, row in known.items()}
        message = self.erasure.consistent_message(data_known, rng)
        word = self.encode(message, rng)
        for i, row in known.items():
            word[i] = row
        return word


def graph_decode(codec: OverwriteCodec, received: np.ndarray) -> np.ndarray:
    return codec.decode(received)


def hash_failures(
    layout: PairwiseLayout, transmitted: np.ndarray, received: np.ndarray, consistent: np.ndarray, window: int
) -> list[tuple[int, int]]:
    """Pairs that should have been caught as inconsistent but were not.

    Uses ground truth, so only the harness may call it.  A pair ``(i, j)``
    must be inconsistent when packet ``i`` is intact, ``j < i`` and ``j``'s
    data changed, or when the two are closer than ``window`` and exactly one
    of them had its data changed.
    """
    transmitted = np.asarray(transmitted)
    received = np.asarray(received)
    dl = layout.data_len
    intact = np.all(transmitted == received, axis=1)
    data_changed = np.any(transmitted[:, :dl] != received[:, :dl], axis=1)
    n = len(received)
    bad = []
    for i in range(n):
        for j in range(n):
            if i == j or not consistent[i, j]:
                continue
            causal = i > j and intact[i] and data_changed[j]
            near = abs(i - j) < window and intact[i] != intact[j] and (data_changed[i] or data_changed[j])
            if causal or near:
                bad.append((i, j))
    return bad
