"""Shortest route trees, minimal cycles on members, and GF(2) independence.

Two tree kinds drive cycle generation: the plain breadth-first SRT, which
yields minimum-length cycles, and the weight-pruned SRTM, which drops
below-average-weight members from tree candidacy to steer cycles through
heavy members.  All tie-breaking is by ascending member id then ascending
node id, so every result is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from framecycles.model import WeightedGraph

SRT = "SRT"
SRTM = "SRTM"


class NoCycleThroughMember(ValueError):
    """The member is a bridge: no cycle passes through it."""


@dataclass
class RouteTree:
    """Spanning tree of the reachable component with breadth-first tier labels."""

    root: int
    kind: str
    parent: dict[int, tuple[int, int]]  # node -> (parent node, via member id)
    label: dict[int, int]
    forbidden: int | None = None

    def path_members(self, node: int) -> list[int]:
        """Member ids on the tree path from *node* up to the root."""
        path = []
        while node != self.root:
            node, via = self.parent[node]
            path.append(via)
        return path

    def path_nodes(self, node: int) -> list[int]:
        """Nodes from *node* up to and including the root."""
        nodes = [node]
        while node != self.root:
            node = self.parent[node][0]
            nodes.append(node)
        return nodes


@dataclass(frozen=True)
class CycleVector:
    """A cycle as a member set, i.e. a vector over GF(2) indexed by members."""

    members: frozenset[int]
    length: int
    weight: float
    generator: int

    @staticmethod
    def from_members(graph: WeightedGraph, members: frozenset[int], generator: int) -> "CycleVector":
        weight = sum(graph.weight(m) for m in members)
        return CycleVector(members, len(members), weight, generator)

    def symmetric_difference(self, other: "CycleVector", graph: WeightedGraph) -> "CycleVector":
        members = frozenset(self.members ^ other.members)
        return CycleVector.from_members(graph, members, self.generator)


def build_srt(graph: WeightedGraph, root: int, forbidden: int | None = None) -> RouteTree:
    """Breadth-first shortest route tree rooted at *root*.

    The forbidden member, if any, never enters the tree; nodes unreachable
    without it are simply absent.
    """
    label = {root: 0}
    parent: dict[int, tuple[int, int]] = {}
    frontier = [root]
    while frontier:
        next_frontier = []
        for u in sorted(frontier):
            for edge, v in graph.incident(u):
                if edge.id == forbidden or v in label:
                    continue
                label[v] = label[u] + 1
                parent[v] = (u, edge.id)
                next_frontier.append(v)
        frontier = next_frontier
    return RouteTree(root, SRT, parent, label, forbidden)


def build_srtm(graph: WeightedGraph, root: int, forbidden: int | None = None) -> RouteTree:
    """Weight-pruned route tree: SRTM.

    Tier expansion as in the SRT, except that at each expanded node the
    incident members weighing strictly less than the average weight of that
    node's incident members are pruned from tree candidacy, and surviving
    candidates are taken in descending weight order.  A final pass attaches
    any node stranded by pruning through its maximum-weight available member
    so the tree still spans the reachable component.
    """
    label = {root: 0}
    parent: dict[int, tuple[int, int]] = {}
    frontier = [root]
    while frontier:
        next_frontier = []
        for u in sorted(frontier):
            incident = [(e, v) for e, v in graph.incident(u) if e.id != forbidden]
            if not incident:
                continue
            avg = sum(graph.weight(e.id) for e, _ in incident) / len(incident)
            survivors = [
                (e, v) for e, v in incident if graph.weight(e.id) >= avg and v not in label
            ]
            survivors.sort(key=lambda item: (-graph.weight(item[0].id), item[0].id))
            for e, v in survivors:
                if v in label:
                    continue
                label[v] = label[u] + 1
                parent[v] = (u, e.id)
                next_frontier.append(v)
        frontier = next_frontier

    # Fallback: pruning can strand nodes that are reachable in the graph.
    while True:
        attachable: dict[int, tuple[float, int, int]] = {}
        for u in label:
            for e, v in graph.incident(u):
                if e.id == forbidden or v in label:
                    continue
                key = (-graph.weight(e.id), e.id, u)
                if v not in attachable or key < attachable[v]:
                    attachable[v] = key
        if not attachable:
            break
        for v in sorted(attachable):
            _, eid, u = attachable[v]
            if v in label:
                continue
            label[v] = label[u] + 1
            parent[v] = (u, eid)
    return RouteTree(root, SRTM, parent, label, forbidden)


_BUILDERS = {SRT: build_srt, SRTM: build_srtm}


def min_cycle_on_member(graph: WeightedGraph, member_id: int, tree_kind: str = SRT) -> CycleVector:
    """Minimal cycle on a generator member.

    Two route trees of the given kind grow from the member's two ends with
    the member itself forbidden, expanding in lock-step tiers; the first
    common node closes the cycle.  With SRT trees the result has minimum
    length among cycles through the member; SRTM trades length for weight.
    """
    if tree_kind not in _BUILDERS:
        raise ValueError(f"unknown tree kind '{tree_kind}'")
    m = graph.member(member_id)
    build = _BUILDERS[tree_kind]
    tree_a = build(graph, m.a, forbidden=member_id)
    tree_b = build(graph, m.b, forbidden=member_id)
    meet = _first_common_node(tree_a, tree_b)
    if meet is None:
        raise NoCycleThroughMember(f"no cycle through member {member_id}")
    members: set[int] = {member_id}
    members ^= set(tree_a.path_members(meet))
    members ^= set(tree_b.path_members(meet))
    return CycleVector.from_members(graph, frozenset(members), member_id)


def _first_common_node(tree_a: RouteTree, tree_b: RouteTree) -> int | None:
    """Lock-step tier intersection: alternate expanding each tree one tier.

    If several common nodes appear at the same step, the lowest node id wins.
    """
    max_a = max(tree_a.label.values(), default=0)
    max_b = max(tree_b.label.values(), default=0)
    tier_a = tier_b = 0
    seen_a = {tree_a.root}
    seen_b = {tree_b.root}
    while True:
        common = seen_a & seen_b
        if common:
            return min(common)
        can_a = tier_a < max_a
        can_b = tier_b < max_b
        if not can_a and not can_b:
            return None
        if can_a and (tier_a <= tier_b or not can_b):
            tier_a += 1
            seen_a.update(n for n, lbl in tree_a.label.items() if lbl == tier_a)
        else:
            tier_b += 1
            seen_b.update(n for n, lbl in tree_b.label.items() if lbl == tier_b)


def min_cycle_through_node(graph: WeightedGraph, node: int, member_id: int) -> CycleVector:
    """Minimal cycle on a member passing through a given node.

    A single SRT rooted at the node reaches both ends of the member; the two
    backtracked routes plus the member form the cycle.  Utility only; no
    basis algorithm consumes it.
    """
    m = graph.member(member_id)
    tree = build_srt(graph, node, forbidden=member_id)
    if m.a not in tree.label or m.b not in tree.label:
        raise NoCycleThroughMember(
            f"no cycle through member {member_id} and node {node}"
        )
    members: set[int] = {member_id}
    members ^= set(tree.path_members(m.a))
    members ^= set(tree.path_members(m.b))
    return CycleVector.from_members(graph, frozenset(members), member_id)


@dataclass
class CycleSpace:
    """Incremental GF(2) span of cycle vectors via a reduced pivot table.

    Vectors are bitmasks over a fixed member-id universe; repeated
    independence queries amortize to one elimination pass each.
    """

    member_index: dict[int, int]
    pivots: dict[int, int] = field(default_factory=dict)  # pivot bit -> row

    @staticmethod
    def over(graph: WeightedGraph) -> "CycleSpace":
        index = {mid: i for i, mid in enumerate(graph.member_ids())}
        return CycleSpace(index)

    def _to_bits(self, cycle: CycleVector) -> int:
        bits = 0
        for mid in cycle.members:
            bits |= 1 << self.member_index[mid]
        return bits

    def _reduce(self, bits: int) -> int:
        while bits:
            top = bits.bit_length() - 1
            row = self.pivots.get(top)
            if row is None:
                return bits
            bits ^= row
        return 0

    def is_independent(self, cycle: CycleVector) -> bool:
        return self._reduce(self._to_bits(cycle)) != 0

    def add(self, cycle: CycleVector) -> bool:
        """Add the cycle if independent; returns whether it was added."""
        reduced = self._reduce(self._to_bits(cycle))
        if reduced == 0:
            return False
        self.pivots[reduced.bit_length() - 1] = reduced
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def is_independent(basis: list[CycleVector], candidate: CycleVector) -> bool:
    """True iff *candidate* lies outside the GF(2) span of *basis*."""
    universe: set[int] = set(candidate.members)
    for c in basis:
        universe.update(c.members)
    space = CycleSpace({mid: i for i, mid in enumerate(sorted(universe))})
    for c in basis:
        space.add(c)
    return space.is_independent(candidate)


def admissible_expansion(
    graph: WeightedGraph, union_members: set[int], candidate: CycleVector
) -> bool:
    """Independence control via Betti growth of the expanding union subgraph.

    True iff adding the candidate's members raises the union's first Betti
    number by exactly one.
    """
    before = _subgraph_b1(graph, union_members)
    after = _subgraph_b1(graph, union_members | candidate.members)
    return after == before + 1


def _subgraph_b1(graph: WeightedGraph, member_ids: set[int]) -> int:
    if not member_ids:
        return 0
    nodes: set[int] = set()
    edges = []
    for mid in member_ids:
        e = graph.member(mid)
        nodes.add(e.a)
        nodes.add(e.b)
        edges.append(e)
    parent = {n: n for n in nodes}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    b0 = len(nodes)
    for e in edges:
        ra, rb = find(e.a), find(e.b)
        if ra != rb:
            parent[ra] = rb
            b0 -= 1
    return len(edges) - len(nodes) + b0
