"""
Periodic lattice models
Vertices, edges and faces of a 2D lattice on a torus, plus colorings and
non-contractible loop paths. Every edge and face keeps the unwrapped cell
offsets of its members so geometry on the covering plane can be recovered.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from topoising.constants import COLORS

Shift = Tuple[int, int]


def add_shift(a: Shift, b: Shift) -> Shift:
    return (a[0] + b[0], a[1] + b[1])


def sub_shift(a: Shift, b: Shift) -> Shift:
    return (a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class Vertex:
    id: int
    cell: Shift
    role: int

    def to_dict(self):
        return {'id': self.id, 'cell': list(self.cell), 'role': self.role}


@dataclass(frozen=True)
class Edge:
    """Edge u -> v; `shift` is v's unwrapped cell minus u's cell."""
    id: int
    u: int
    v: int
    shift: Shift
    type: int
    cell: Shift

    def other(self, vertex: int) -> int:
        return self.v if vertex == self.u else self.u

    def to_dict(self):
        return {'id': self.id, 'u': self.u, 'v': self.v}


@dataclass(frozen=True)
class Face:
    """
    Face with its boundary in cyclic order.

    `vertex_shifts[k]` and `edge_shifts[k]` are the unwrapped cells of the
    k-th vertex and of the k-th edge's cell, relative to the face cell.
    Edge k joins vertex k and vertex k+1.
    """
    id: int
    cell: Shift
    role: int
    vertex_ids: Tuple[int, ...]
    vertex_shifts: Tuple[Shift, ...]
    edge_ids: Tuple[int, ...]
    edge_shifts: Tuple[Shift, ...]

    @property
    def size(self) -> int:
        return len(self.vertex_ids)

    def to_dict(self, color: Optional[str] = None):
        data = {'id': self.id, 'edge_ids': list(self.edge_ids), 'vertex_ids': list(self.vertex_ids)}
        if color is not None:
            data['color'] = color
        return data


@dataclass(frozen=True)
class TorusLattice:
    kind: str
    L1: int
    L2: int
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    faces: Tuple[Face, ...]

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    @cached_property
    def vertex_edges(self) -> Tuple[Tuple[int, ...], ...]:
        incident: List[List[int]] = [[] for _ in self.vertices]
        for e in self.edges:
            incident[e.u].append(e.id)
            if e.v != e.u:
                incident[e.v].append(e.id)
        return tuple(tuple(sorted(ids)) for ids in incident)

    @cached_property
    def faces_of_vertex(self) -> Tuple[Tuple[Tuple[int, Shift], ...], ...]:
        """Per vertex: (face id, vertex shift inside that face)."""
        found: List[List[Tuple[int, Shift]]] = [[] for _ in self.vertices]
        for f in self.faces:
            for vid, s in zip(f.vertex_ids, f.vertex_shifts):
                found[vid].append((f.id, s))
        return tuple(tuple(items) for items in found)

    @cached_property
    def faces_of_edge(self) -> Tuple[Tuple[Tuple[int, Shift], ...], ...]:
        """Per edge: (face id, edge cell shift inside that face)."""
        found: List[List[Tuple[int, Shift]]] = [[] for _ in self.edges]
        for f in self.faces:
            for eid, s in zip(f.edge_ids, f.edge_shifts):
                found[eid].append((f.id, s))
        return tuple(tuple(items) for items in found)

    def edge_offset_from(self, edge_id: int, vertex_id: int) -> Shift:
        """Unwrapped cell of the edge relative to one of its endpoints."""
        e = self.edges[edge_id]
        if vertex_id == e.u:
            return (0, 0)
        return (-e.shift[0], -e.shift[1])

    def to_dict(self, coloring: Optional['FaceColoring'] = None,
                edge_coloring: Optional['EdgeColoring'] = None) -> dict:
        edges = []
        for e in self.edges:
            item = e.to_dict()
            if edge_coloring is not None:
                item['color'] = edge_coloring.colors[e.id]
            edges.append(item)
        return {
            'kind': self.kind,
            'L1': self.L1,
            'L2': self.L2,
            'vertices': [v.to_dict() for v in self.vertices],
            'edges': edges,
            'faces': [f.to_dict(coloring.colors[f.id] if coloring else None) for f in self.faces],
        }

    def __repr__(self):
        return (f'<TorusLattice {self.kind} {self.L1}x{self.L2} '
                f'V={len(self.vertices)} E={len(self.edges)} F={len(self.faces)}>')


@dataclass(frozen=True)
class FaceColoring:
    colors: Tuple[str, ...]

    def faces_with(self, color: str) -> List[int]:
        return [i for i, c in enumerate(self.colors) if c == color]

    def counts(self) -> Dict[str, int]:
        return {c: self.colors.count(c) for c in COLORS}

    def to_dict(self):
        return {'faces': list(self.colors), 'counts': self.counts()}


@dataclass(frozen=True)
class EdgeColoring:
    colors: Tuple[str, ...]

    def edges_with(self, color: str) -> List[int]:
        return [i for i, c in enumerate(self.colors) if c == color]

    def to_dict(self):
        return {'edges': list(self.colors)}


@dataclass(frozen=True)
class LoopPath:
    """
    Closed non-contractible path.

    kind is 'primal' (edges of the lattice), 'dual' (faces joined across
    edges) or 'colored' (faces of one color joined by edges of that color).
    `carrier` holds the qubit sites the loop operator acts on: edge ids for
    primal and dual loops, vertex ids for colored loops.
    """
    direction: int
    kind: str
    nodes: Tuple[int, ...]
    steps: Tuple[int, ...]
    carrier: Tuple[int, ...]
    winding: Tuple[int, int]
    color: Optional[str] = None

    @property
    def closed(self) -> bool:
        return len(self.nodes) > 1 and self.nodes[0] == self.nodes[-1]

    def to_dict(self):
        return {
            'direction': self.direction,
            'kind': self.kind,
            'color': self.color,
            'carrier': list(self.carrier),
            'winding': list(self.winding),
        }

    def __repr__(self):
        color = f' {self.color}' if self.color else ''
        return f'<LoopPath {self.kind}{color} dir={self.direction} len={len(self.steps)}>'


@dataclass(frozen=True)
class UnitCell:
    """
    Unit-cell template: vertex roles, edge templates (role_u, role_v, shift)
    and face templates as cyclic corner lists of (role, shift).
    """
    vertex_roles: int
    edge_templates: Tuple[Tuple[int, int, Shift], ...]
    face_templates: Tuple[Tuple[Tuple[int, Shift], ...], ...] = field(default_factory=tuple)
