"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written with different algorithms than the
code under test: path enumeration instead of route trees, dense bitmask
elimination instead of the incremental pivot table, characteristic-polynomial
root finding instead of eigvalsh, and a displacement (stiffness) solver
instead of the force method.
"""

from __future__ import annotations

import random
from collections import defaultdict, deque

import numpy as np

from framecycles.model import Edge, WeightedGraph


# --- graphs ----------------------------------------------------------------


def random_connected_graph(rng: random.Random, max_members: int) -> WeightedGraph:
    """Random connected simple graph with at most max_members members."""
    n = rng.randint(3, max(3, max_members // 2))
    nodes = list(range(1, n + 1))
    edges = []
    pairs = set()
    order = nodes[:]
    rng.shuffle(order)
    for i in range(1, n):  # random spanning tree first
        a = order[i]
        b = order[rng.randrange(i)]
        edges.append((a, b))
        pairs.add(frozenset((a, b)))
    extra = rng.randint(0, max(0, max_members - len(edges)))
    attempts = 0
    while extra > 0 and attempts < 200:
        attempts += 1
        a, b = rng.sample(nodes, 2)
        if frozenset((a, b)) in pairs:
            continue
        edges.append((a, b))
        pairs.add(frozenset((a, b)))
        extra -= 1
    members = tuple(Edge(i + 1, a, b) for i, (a, b) in enumerate(edges))
    weights = {e.id: rng.uniform(0.5, 100.0) for e in members}
    return WeightedGraph(tuple(nodes), members, weights)


def shortest_cycle_length_through(graph: WeightedGraph, member_id: int) -> int | None:
    """Length of the shortest cycle through a member, by BFS in graph - member.

    Returns None when the member is a bridge.
    """
    m = graph.member(member_id)
    dist = {m.a: 0}
    queue = deque([m.a])
    while queue:
        u = queue.popleft()
        for edge, v in graph.incident(u):
            if edge.id == member_id or v in dist:
                continue
            dist[v] = dist[u] + 1
            queue.append(v)
    if m.b not in dist:
        return None
    return dist[m.b] + 1


def gf2_rank(member_sets, universe) -> int:
    """Rank of cycle vectors over GF(2), by plain dense elimination."""
    index = {mid: i for i, mid in enumerate(sorted(universe))}
    rows = []
    for members in member_sets:
        bits = 0
        for mid in members:
            bits |= 1 << index[mid]
        rows.append(bits)
    rank = 0
    for col in range(len(index) - 1, -1, -1):
        pivot = None
        for i, row in enumerate(rows):
            if row >> col & 1:
                pivot = i
                break
        if pivot is None:
            continue
        pivot_row = rows.pop(pivot)
        rows = [row ^ pivot_row if row >> col & 1 else row for row in rows]
        rank += 1
    return rank


def is_simple_cycle(graph: WeightedGraph, members) -> bool:
    """True iff the member set forms one connected cycle with all degrees 2."""
    if not members:
        return False
    degree: dict[int, int] = defaultdict(int)
    adj: dict[int, list[int]] = defaultdict(list)
    for mid in members:
        e = graph.member(mid)
        degree[e.a] += 1
        degree[e.b] += 1
        adj[e.a].append(e.b)
        adj[e.b].append(e.a)
    if any(d != 2 for d in degree.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(degree)


# --- eigenvalues -----------------------------------------------------------


def charpoly_extreme_eigs(M: np.ndarray) -> tuple[float, float]:
    """Extreme eigenvalues from the characteristic polynomial.

    Coefficients come from the Faddeev-LeVerrier recursion; roots from the
    companion matrix, polished with Newton steps on the polynomial itself.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    coeffs = [1.0]
    Mk = np.eye(n)
    for k in range(1, n + 1):
        Mk = M @ Mk
        c = -np.trace(Mk) / k
        Mk += c * np.eye(n)
        coeffs.append(c)
    poly = np.array(coeffs)
    deriv = np.polyder(poly)
    roots = np.sort(np.roots(poly).real)
    polished = []
    for r in roots:
        x = r
        for _ in range(50):
            p = np.polyval(poly, x)
            dp = np.polyval(deriv, x)
            if dp == 0:
                break
            step = p / dp
            x -= step
            if abs(step) <= 1e-15 * max(abs(x), 1.0):
                break
        polished.append(x)
    return min(polished), max(polished)


def random_spd(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random SPD matrix with well-separated eigenvalues in [0.1, 10]."""
    eigs = np.sort(rng.uniform(0.1, 10.0, size=n))
    while np.min(np.diff(eigs)) < 1e-3:
        eigs = np.sort(rng.uniform(0.1, 10.0, size=n))
    A = rng.normal(size=(n, n))
    Q, _ = np.linalg.qr(A)
    return (Q * eigs) @ Q.T


# --- planar frame stiffness method ----------------------------------------


def _local_stiffness(EA: float, EI: float, L: float) -> np.ndarray:
    return np.array(
        [
            [EA / L, 0, 0, -EA / L, 0, 0],
            [0, 12 * EI / L**3, 6 * EI / L**2, 0, -12 * EI / L**3, 6 * EI / L**2],
            [0, 6 * EI / L**2, 4 * EI / L, 0, -6 * EI / L**2, 2 * EI / L],
            [-EA / L, 0, 0, EA / L, 0, 0],
            [0, -12 * EI / L**3, -6 * EI / L**2, 0, 12 * EI / L**3, -6 * EI / L**2],
            [0, 6 * EI / L**2, 2 * EI / L, 0, -6 * EI / L**2, 4 * EI / L],
        ]
    )


def _transform(model, member) -> tuple[np.ndarray, float]:
    ra = np.asarray(model.node(member.a).coords, dtype=float)
    rb = np.asarray(model.node(member.b).coords, dtype=float)
    L = float(np.linalg.norm(rb - ra))
    c, s = (rb - ra) / L
    R = np.array([[c, s, 0], [-s, c, 0], [0, 0, 1]])
    T = np.zeros((6, 6))
    T[:3, :3] = R
    T[3:, 3:] = R
    return T, L


def stiffness_member_forces(model, load_case) -> dict[int, np.ndarray]:
    """Member force triples from a displacement-method solve.

    Returns, per member id, the local a-end actions mapped to the force
    method's stored convention: axial, shear, and the section moment at the
    "a" end (the negative of the moment action there).
    """
    idx = {n.id: 3 * i for i, n in enumerate(model.nodes)}
    ndof = 3 * len(model.nodes)
    K = np.zeros((ndof, ndof))
    P = np.zeros(ndof)
    for m in model.members:
        s = model.member_section(m)
        T, L = _transform(model, m)
        k_global = T.T @ _local_stiffness(s.E * s.A, s.E * s.I, L) @ T
        dofs = list(range(idx[m.a], idx[m.a] + 3)) + list(range(idx[m.b], idx[m.b] + 3))
        K[np.ix_(dofs, dofs)] += k_global
    for node, fx, fy, mz in load_case:
        P[idx[node] : idx[node] + 3] += (fx, fy, mz)
    fixed = [d for sup in model.supports for d in range(idx[sup], idx[sup] + 3)]
    free = [d for d in range(ndof) if d not in fixed]
    u = np.zeros(ndof)
    u[free] = np.linalg.solve(K[np.ix_(free, free)], P[free])
    forces = {}
    for m in model.members:
        s = model.member_section(m)
        T, L = _transform(model, m)
        ue = np.concatenate([u[idx[m.a] : idx[m.a] + 3], u[idx[m.b] : idx[m.b] + 3]])
        f_local = _local_stiffness(s.E * s.A, s.E * s.I, L) @ (T @ ue)
        forces[m.id] = np.array([f_local[0], f_local[1], -f_local[2]])
    return forces
