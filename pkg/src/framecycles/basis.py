"""The five cycle-basis algorithms, the greedy selector, and basis matrices.

Each algorithm grows one candidate cycle per graph member (SRT for the
sparsity-oriented variants, SRTM for the conditioning-oriented ones), sorts
the candidates, and greedily keeps independent cycles until the basis holds
b1 of them.  Algorithm 5 additionally processes inadmissible (NA) members
first on masked graph views so low-weight members stay out of cycle
overlaps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from framecycles.cycles import (
    SRT,
    SRTM,
    CycleSpace,
    CycleVector,
    NoCycleThroughMember,
    admissible_expansion,
    build_srt,
    min_cycle_on_member,
)
from framecycles.model import AdmissibilityPartition, Edge, WeightedGraph, cycle_rank

WEIGHT_DESCENDING = "weight-descending"
LENGTH_ASCENDING = "length-ascending"


@dataclass(frozen=True)
class AlgorithmSpec:
    """One of the five generation strategies (tree kind, ordering, NA handling)."""

    id: int
    tree_kind: str
    ordering: str
    na_avoidance: bool = False

    @staticmethod
    def for_id(algorithm_id: int, ordering_override: str | None = None) -> "AlgorithmSpec":
        table = {
            1: (SRT, WEIGHT_DESCENDING, False),
            2: (SRTM, WEIGHT_DESCENDING, False),
            3: (SRT, LENGTH_ASCENDING, False),
            4: (SRTM, LENGTH_ASCENDING, False),
            5: (SRTM, WEIGHT_DESCENDING, True),
        }
        if algorithm_id not in table:
            raise ValueError(f"unknown algorithm id {algorithm_id}")
        kind, ordering, na = table[algorithm_id]
        if ordering_override is not None:
            if algorithm_id != 5:
                raise ValueError("ordering is configurable for algorithm 5 only")
            if ordering_override not in (WEIGHT_DESCENDING, LENGTH_ASCENDING):
                raise ValueError(f"unknown ordering '{ordering_override}'")
            ordering = ordering_override
        return AlgorithmSpec(algorithm_id, kind, ordering, na)


@dataclass
class CycleBasis:
    """b1 independent cycles of a graph, in greedy selection order."""

    cycles: list[CycleVector]
    graph: WeightedGraph
    algorithm: AlgorithmSpec | None = None
    #: (generator, elimination verdict, Betti-growth verdict) per candidate.
    control_log: list[tuple[int, bool, bool]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cycles)

    def total_length(self) -> int:
        return sum(c.length for c in self.cycles)

    def total_weight(self) -> float:
        return sum(c.weight for c in self.cycles)

    def overlap_members(self) -> set[int]:
        """Members shared by at least two basis cycles."""
        seen: set[int] = set()
        shared: set[int] = set()
        for c in self.cycles:
            shared.update(c.members & seen)
            seen.update(c.members)
        return shared

    def overlap_length(self) -> int:
        return len(self.overlap_members())

    def overlap_weight(self) -> float:
        return sum(self.graph.weight(m) for m in self.overlap_members())


def _sort_key(ordering: str):
    if ordering == WEIGHT_DESCENDING:
        return lambda c: (-c.weight, c.generator)
    if ordering == LENGTH_ASCENDING:
        return lambda c: (c.length, c.generator)
    raise ValueError(f"unknown ordering '{ordering}'")


def _greedy_select(
    graph: WeightedGraph, candidates: list[CycleVector]
) -> tuple[list[CycleVector], list[tuple[int, bool, bool]]]:
    """Greedy independent selection.

    Gaussian elimination over GF(2) decides acceptance.  The Betti-growth
    check on the union subgraph runs alongside as a cross-check and its
    verdicts are logged; it is strictly more restrictive than elimination
    when a candidate's fresh members close more than one cycle of the
    union at once, so agreement is observed, not assumed.
    """
    target = cycle_rank(graph)
    space = CycleSpace.over(graph)
    union: set[int] = set()
    selected: list[CycleVector] = []
    log: list[tuple[int, bool, bool]] = []
    for cand in candidates:
        independent = space.is_independent(cand)
        admissible = admissible_expansion(graph, union, cand)
        log.append((cand.generator, independent, admissible))
        if not independent:
            continue
        space.add(cand)
        union |= cand.members
        selected.append(cand)
        if len(selected) == target:
            break
    if len(selected) != target:
        # One minimal cycle per member need not span the cycle space (a
        # member can share its minimal cycle with another member).  Top up
        # deterministically from spanning-tree fundamental cycles.
        for cand in _fundamental_cycles(graph):
            if len(selected) == target:
                break
            if space.add(cand):
                selected.append(cand)
    assert len(selected) == target, "cycle space not spanned"
    return selected, log


def _fundamental_cycles(graph: WeightedGraph) -> list[CycleVector]:
    """Fundamental cycles of an SRT spanning tree, one per chord."""
    root = graph.ground if graph.ground is not None else min(graph.nodes)
    tree = build_srt(graph, root)
    tree_members = {via for _, via in tree.parent.values()}
    out = []
    for e in graph.members:
        if e.id in tree_members:
            continue
        members: set[int] = {e.id}
        members ^= set(tree.path_members(e.a))
        members ^= set(tree.path_members(e.b))
        out.append(CycleVector.from_members(graph, frozenset(members), e.id))
    return out


def _masked_graph(graph: WeightedGraph, masked: set[int], keep: int) -> WeightedGraph:
    members = tuple(e for e in graph.members if e.id == keep or e.id not in masked)
    weights = {e.id: graph.weights[e.id] for e in members}
    return WeightedGraph(graph.nodes, members, weights, ground=graph.ground)


def generate_basis(
    graph: WeightedGraph,
    spec: AlgorithmSpec,
    partition: AdmissibilityPartition | None = None,
) -> CycleBasis:
    """Run one of the five algorithms on a connected weighted graph."""
    if graph.b0 != 1:
        raise ValueError("basis generation requires a connected graph")
    if spec.na_avoidance and partition is None:
        raise ValueError(f"algorithm {spec.id} requires an admissibility partition")

    candidates: list[CycleVector] = []
    if spec.na_avoidance:
        assert partition is not None
        na_order = sorted(partition.inadmissible, key=lambda m: (graph.weight(m), m))
        processed: set[int] = set()
        for mid in na_order:
            # Keep earlier NA generators out of this cycle where a cycle
            # still exists without them; otherwise drop the mask.
            view = _masked_graph(graph, processed, keep=mid) if processed else graph
            cycle = None
            try:
                cycle = min_cycle_on_member(view, mid, spec.tree_kind)
            except NoCycleThroughMember:
                if processed:
                    try:
                        cycle = min_cycle_on_member(graph, mid, spec.tree_kind)
                    except NoCycleThroughMember:
                        cycle = None
            if cycle is not None:
                candidates.append(cycle)
            processed.add(mid)
        remaining = [m for m in graph.member_ids() if m not in partition.inadmissible]
    else:
        remaining = graph.member_ids()

    for mid in remaining:
        try:
            candidates.append(min_cycle_on_member(graph, mid, spec.tree_kind))
        except NoCycleThroughMember:
            continue  # bridge member; no cycle exists

    candidates.sort(key=_sort_key(spec.ordering))
    selected, log = _greedy_select(graph, candidates)
    return CycleBasis(selected, graph, spec, log)


def baseline_tree_basis(graph: WeightedGraph) -> CycleBasis:
    """Fundamental cycles of an SRT spanning tree, one per chord.

    The classic spanning-tree construction; cycles tend to be long, which is
    exactly what the generation algorithms are measured against.
    """
    if graph.b0 != 1:
        raise ValueError("baseline basis requires a connected graph")
    cycles = _fundamental_cycles(graph)
    assert len(cycles) == cycle_rank(graph)
    return CycleBasis(cycles, graph, None)


@dataclass
class IncidenceMatrix:
    """Cycle-member incidence over GF(2); row order follows the basis."""

    matrix: np.ndarray  # (b1, M) uint8
    member_ids: tuple[int, ...]


@dataclass
class AdjacencyMatrix:
    """Integer D = C C^t with per-row intersection coefficients sigma."""

    D: np.ndarray  # (b1, b1) int64
    sigma: tuple[int, ...]
    chi: int


def incidence_matrix(basis: CycleBasis) -> IncidenceMatrix:
    member_ids = tuple(basis.graph.member_ids())
    index = {mid: j for j, mid in enumerate(member_ids)}
    C = np.zeros((len(basis.cycles), len(member_ids)), dtype=np.uint8)
    for i, cycle in enumerate(basis.cycles):
        for mid in cycle.members:
            C[i, index[mid]] = 1
    return IncidenceMatrix(C, member_ids)


def adjacency_matrix(incidence: IncidenceMatrix) -> AdjacencyMatrix:
    """D = C C^t over the integers, with chi(D) = b1 + 2 sum(sigma) asserted."""
    C = incidence.matrix.astype(np.int64)
    D = C @ C.T
    b1 = D.shape[0]
    sigma = tuple(
        int(np.count_nonzero(D[i, i + 1 :])) for i in range(b1)
    )
    chi = int(np.count_nonzero(D))
    assert chi == b1 + 2 * sum(sigma), "cycle adjacency identity violated"
    return AdjacencyMatrix(D, sigma, chi)
