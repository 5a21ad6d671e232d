"""Planar force-method matrices: B0, B1, the unassembled flexibility Fm,
and the structure flexibility G = B1' Fm B1.

Member forces are stored as three components per member, referenced at the
member's "a" end in local axes (x from a to b): axial N, shear V, and the
bending moment transmitted through the section at a.  With that reference
the member flexibility is the standard cantilever block, and the forces at
the "b" end are implied by member equilibrium.

Self-equilibrating stress systems come from cycles: cut the cycle's
generator member at its "a" end, apply the three unit bi-actions there
(axial pair, shear pair, moment pair), and carry the resulting wrench
around the closed cycle path by rigid-body transfer.  Cycles may close
through the ground node: the wrench then enters and leaves via support
reactions, which keeps every free node in equilibrium.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from framecycles.basis import CycleBasis
from framecycles.cycles import CycleVector, build_srt
from framecycles.model import (
    GROUND,
    ModelError,
    Section,
    StructuralModel,
    WeightedGraph,
)


class RankDeficientBasis(ValueError):
    """G failed the positive-definiteness check: the statical basis is dependent."""


class UnsupportedModel(ValueError):
    """Numerical force method is implemented for planar frames only."""


def member_flexibility(section: Section, length: float) -> np.ndarray:
    """Cantilever flexibility block for forces referenced at the free "a" end."""
    if length <= 0:
        raise ModelError(f"member length must be positive, got {length}")
    EA = section.E * section.A
    EI = section.E * section.I
    return np.array(
        [
            [length / EA, 0.0, 0.0],
            [0.0, length**3 / (3.0 * EI), length**2 / (2.0 * EI)],
            [0.0, length**2 / (2.0 * EI), length / EI],
        ]
    )


@dataclass
class _MemberGeometry:
    id: int
    ra: np.ndarray  # global coords of the "a" node
    rb: np.ndarray
    ex: np.ndarray  # local x axis, a -> b
    ey: np.ndarray
    length: float


def _geometry(model: StructuralModel) -> dict[int, _MemberGeometry]:
    geo = {}
    for m in model.members:
        ra = np.asarray(model.node(m.a).coords, dtype=float)
        rb = np.asarray(model.node(m.b).coords, dtype=float)
        d = rb - ra
        length = float(np.linalg.norm(d))
        ex = d / length
        ey = np.array([-ex[1], ex[0]])
        geo[m.id] = _MemberGeometry(m.id, ra, rb, ex, ey, length)
    return geo


def _cross2(a: np.ndarray, b: np.ndarray) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


@dataclass(frozen=True)
class _Wrench:
    """Planar force through a point plus a couple."""

    f: np.ndarray
    couple: float
    point: np.ndarray

    def moment_about(self, r: np.ndarray) -> float:
        return self.couple + _cross2(self.point - r, self.f)


def _member_rows(member_order: list[int]) -> dict[int, int]:
    return {mid: 3 * i for i, mid in enumerate(member_order)}


def _stored_components(geo: _MemberGeometry, wrench: _Wrench, sign: float) -> np.ndarray:
    """Member force triple for a member transmitting sign*wrench.

    Sign +1 means the traversal direction matches the member's a -> b
    orientation.  The stored moment is the section moment at a, which is the
    negative of the external moment action there.
    """
    n = sign * float(wrench.f @ geo.ex)
    v = sign * float(wrench.f @ geo.ey)
    m_action = sign * wrench.moment_about(geo.ra)
    return np.array([n, v, -m_action])


def _order_cycle_walk(graph: WeightedGraph, cycle: CycleVector) -> list[tuple[int, int, int]]:
    """Orient a simple cycle as (member id, from-node, to-node) steps.

    The walk starts through the generator from its "a" side.  Only simple
    cycles (every touched node of degree 2) are supported.
    """
    degree: dict[int, list[int]] = {}
    for mid in cycle.members:
        e = graph.member(mid)
        degree.setdefault(e.a, []).append(mid)
        degree.setdefault(e.b, []).append(mid)
    for node, mids in degree.items():
        if len(mids) != 2:
            raise UnsupportedModel(
                f"cycle on generator {cycle.generator} is not a simple cycle "
                f"(node {node} has degree {len(mids)})"
            )
    gen = graph.member(cycle.generator)
    walk = [(gen.id, gen.a, gen.b)]
    used = {gen.id}
    current = gen.b
    while current != gen.a:
        nxt = next(mid for mid in degree[current] if mid not in used)
        e = graph.member(nxt)
        other = e.b if e.a == current else e.a
        walk.append((nxt, current, other))
        used.add(nxt)
        current = other
    return walk


def build_b1(model: StructuralModel, basis: CycleBasis) -> np.ndarray:
    """Self-stress matrix: three unit bi-action columns per basis cycle."""
    if model.ndim != 2:
        raise UnsupportedModel("numerical force method unsupported for 3D")
    geo = _geometry(model)
    member_order = sorted(geo)
    rows = _member_rows(member_order)
    B1 = np.zeros((3 * len(member_order), 3 * len(basis.cycles)))
    for j, cycle in enumerate(basis.cycles):
        walk = _order_cycle_walk(basis.graph, cycle)
        gen_geo = geo[cycle.generator]
        cut = gen_geo.ra
        wrenches = (
            _Wrench(gen_geo.ex.copy(), 0.0, cut),
            _Wrench(gen_geo.ey.copy(), 0.0, cut),
            _Wrench(np.zeros(2), 1.0, cut),
        )
        for k, wrench in enumerate(wrenches):
            col = 3 * j + k
            for mid, u, _v in walk:
                e = basis.graph.member(mid)
                sign = 1.0 if u == e.a else -1.0
                B1[rows[mid] : rows[mid] + 3, col] = _stored_components(
                    geo[mid], wrench, sign
                )
    return B1


def build_b0(
    model: StructuralModel, graph: WeightedGraph, load_dofs: list[tuple[int, int]]
) -> np.ndarray:
    """Particular matrix: unit nodal loads carried to ground along an SRT.

    *load_dofs* lists (node id, dof) pairs with dof 0 = fx, 1 = fy,
    2 = moment; one column per pair.  Off-tree member rows stay zero.
    """
    if model.ndim != 2:
        raise UnsupportedModel("numerical force method unsupported for 3D")
    if graph.ground is None:
        raise ModelError("particular solution requires a grounded graph")
    geo = _geometry(model)
    member_order = sorted(geo)
    rows = _member_rows(member_order)
    tree = build_srt(graph, graph.ground)
    B0 = np.zeros((3 * len(member_order), len(load_dofs)))
    for col, (node, dof) in enumerate(load_dofs):
        if node == graph.ground or node in set(model.supports):
            raise ModelError(f"load on supported node {node} is rejected")
        if dof not in (0, 1, 2):
            raise ModelError(f"load dof must be 0, 1 or 2, got {dof}")
        r_node = np.asarray(model.node(node).coords, dtype=float)
        if dof == 2:
            wrench = _Wrench(np.zeros(2), 1.0, r_node)
        else:
            f = np.zeros(2)
            f[dof] = 1.0
            wrench = _Wrench(f, 0.0, r_node)
        current = node
        while current != graph.ground:
            parent, mid = tree.parent[current]
            e = graph.member(mid)
            sign = 1.0 if current == e.a else -1.0
            B0[rows[mid] : rows[mid] + 3, col] = _stored_components(geo[mid], wrench, sign)
            current = parent
    return B0


def unassembled_flexibility(model: StructuralModel) -> np.ndarray:
    """Block-diagonal Fm with one cantilever block per member, by member id."""
    if model.ndim != 2:
        raise UnsupportedModel("numerical force method unsupported for 3D")
    member_order = sorted(m.id for m in model.members)
    Fm = np.zeros((3 * len(member_order), 3 * len(member_order)))
    for i, mid in enumerate(member_order):
        m = model.member(mid)
        block = member_flexibility(model.member_section(m), model.member_length(m))
        Fm[3 * i : 3 * i + 3, 3 * i : 3 * i + 3] = block
    return Fm


def assemble_g(B1: np.ndarray, Fm: np.ndarray) -> np.ndarray:
    """G = B1' Fm B1, symmetrized; positive definiteness is verified."""
    G = B1.T @ Fm @ B1
    G = 0.5 * (G + G.T)
    try:
        np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise RankDeficientBasis("rank-deficient statical basis") from exc
    return G


@dataclass
class ForceSolution:
    """Force-method solution for one load case."""

    member_order: list[int]
    q: np.ndarray  # redundants, 3 per cycle
    r: np.ndarray  # member forces, 3 per member
    v0: np.ndarray  # displacements conjugate to the load components
    compatibility_residual: float


def nodal_equilibrium_residual(
    model: StructuralModel, column: np.ndarray, loads: dict[tuple[int, int], float] | None = None
) -> float:
    """Max equilibrium violation over free nodes, relative to the column norm.

    *column* holds stored member-force triples; *loads* maps (node, dof) to
    applied magnitudes that must be balanced by the members.
    """
    geo = _geometry(model)
    member_order = sorted(geo)
    rows = _member_rows(member_order)
    supported = set(model.supports)
    residual: dict[int, np.ndarray] = {
        n.id: np.zeros(3) for n in model.nodes if n.id not in supported
    }
    for m in model.members:
        g = geo[m.id]
        stored = column[rows[m.id] : rows[m.id] + 3]
        f_a = stored[0] * g.ex + stored[1] * g.ey  # action on member at a, global
        m_a = -stored[2]
        f_b = -f_a
        m_b = -m_a + _cross2(g.rb - g.ra, f_a)
        if m.a in residual:
            residual[m.a] += np.array([-f_a[0], -f_a[1], -m_a])
        if m.b in residual:
            residual[m.b] += np.array([-f_b[0], -f_b[1], -m_b])
    if loads:
        for (node, dof), value in loads.items():
            residual[node][dof] += value
    worst = max((float(np.max(np.abs(v))) for v in residual.values()), default=0.0)
    scale = float(np.max(np.abs(column))) or 1.0
    return worst / scale


def solve_force_method(
    model: StructuralModel,
    basis: CycleBasis,
    load_case: list[tuple[int, float, float, float]],
) -> ForceSolution:
    """Solve redundants and member forces for nodal loads (node, fx, fy, mz)."""
    graph = basis.graph
    load_dofs: list[tuple[int, int]] = []
    p_values: list[float] = []
    for node, fx, fy, mz in load_case:
        for dof, value in enumerate((fx, fy, mz)):
            load_dofs.append((node, dof))
            p_values.append(value)
    member_order = sorted(m.id for m in model.members)
    Fm = unassembled_flexibility(model)
    B1 = build_b1(model, basis)
    G = assemble_g(B1, Fm)
    if not load_dofs:
        zero_r = np.zeros(3 * len(member_order))
        return ForceSolution(member_order, np.zeros(B1.shape[1]), zero_r, np.zeros(0), 0.0)
    B0 = build_b0(model, graph, load_dofs)
    p = np.asarray(p_values)
    rhs = B1.T @ Fm @ (B0 @ p)
    q = -np.linalg.solve(G, rhs)
    r = B0 @ p + B1 @ q
    incompat = B1.T @ Fm @ r
    scale = float(np.linalg.norm(rhs)) or 1.0
    v0 = B0.T @ Fm @ r
    return ForceSolution(member_order, q, r, v0, float(np.linalg.norm(incompat)) / scale)
