"""
Lattice Service
Builds periodic lattices from unit-cell templates, three-colors their faces,
colors edges, and constructs non-contractible loop representatives.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from topoising.constants import COLORS, GREEN, LATTICE_KINDS, PATTERN_MEDIAL, PATTERN_VERTEX, RED
from topoising.data.unit_cells import UNIT_CELLS
from topoising.exceptions import ColoringRequired, InvalidArgument, InvalidColoring, NotThreeColorable
from topoising.models.lattice import (
    Edge, EdgeColoring, Face, FaceColoring, LoopPath, Shift, TorusLattice, Vertex,
    add_shift, sub_shift,
)

logger = logging.getLogger(__name__)

MIN_SIZE = 2
MAX_WINDING = 2


@dataclass(frozen=True)
class EdgePair:
    first: int
    second: int
    vertex: int

    def to_dict(self):
        return {'edges': [self.first, self.second], 'vertex': self.vertex}


class LatticeService:
    """Builders and audits for TorusLattice objects."""

    @staticmethod
    def build_lattice(kind: str, L1: int, L2: int) -> TorusLattice:
        """
        Build a periodic lattice of L1 x L2 unit cells.

        Args:
            kind: honeycomb, square, triangular or square_octagonal
            L1, L2: unit-cell counts along the two periodic directions

        Returns:
            TorusLattice with ids derived from (cell, role)

        Raises:
            InvalidArgument: unknown kind or size below the minimum
        """
        if kind not in LATTICE_KINDS:
            raise InvalidArgument(f"unknown lattice kind: {kind}")
        if L1 < MIN_SIZE or L2 < MIN_SIZE:
            raise InvalidArgument(f"lattice size must be at least {MIN_SIZE}x{MIN_SIZE}, got {L1}x{L2}")

        cell = UNIT_CELLS[kind]
        n_v = cell.vertex_roles
        n_e = len(cell.edge_templates)
        n_f = len(cell.face_templates)

        def cidx(c: Shift) -> int:
            return (c[0] % L1) * L2 + (c[1] % L2)

        def vid(c: Shift, role: int) -> int:
            return cidx(c) * n_v + role

        cells = [(i, j) for i in range(L1) for j in range(L2)]

        vertices = [Vertex(vid(c, r), c, r) for c in cells for r in range(n_v)]

        edges = []
        for c in cells:
            for t, (ru, rv, s) in enumerate(cell.edge_templates):
                edges.append(Edge(cidx(c) * n_e + t, vid(c, ru), vid(add_shift(c, s), rv), s, t, c))

        faces = []
        for c in cells:
            for role, corners in enumerate(cell.face_templates):
                vertex_ids, vertex_shifts, edge_ids, edge_shifts = [], [], [], []
                for k, (ra, da) in enumerate(corners):
                    rb, db = corners[(k + 1) % len(corners)]
                    t, at = LatticeService._match_edge(cell.edge_templates, ra, da, rb, db)
                    vertex_ids.append(vid(add_shift(c, da), ra))
                    vertex_shifts.append(da)
                    edge_ids.append(cidx(add_shift(c, at)) * n_e + t)
                    edge_shifts.append(at)
                faces.append(Face(
                    cidx(c) * n_f + role, c, role,
                    tuple(vertex_ids), tuple(vertex_shifts), tuple(edge_ids), tuple(edge_shifts),
                ))

        lat = TorusLattice(kind, L1, L2, tuple(vertices), tuple(edges), tuple(faces))
        logger.debug(f"Built {lat!r}")
        return lat

    @staticmethod
    def _match_edge(templates, ra: int, da: Shift, rb: int, db: Shift) -> Tuple[int, Shift]:
        """Edge template joining two face corners, with the cell it hangs from."""
        for t, (ru, rv, s) in enumerate(templates):
            if ru == ra and rv == rb and s == sub_shift(db, da):
                return t, da
            if ru == rb and rv == ra and s == sub_shift(da, db):
                return t, db
        raise ValueError(f"no edge template joins corners {(ra, da)} and {(rb, db)}")

    @staticmethod
    def face_neighbors(lat: TorusLattice) -> List[List[int]]:
        """Faces sharing at least one vertex with each face."""
        neighbors = [set() for _ in lat.faces]
        for at_vertex in lat.faces_of_vertex:
            ids = [f for f, _ in at_vertex]
            for a in ids:
                for b in ids:
                    if a != b:
                        neighbors[a].add(b)
        return [sorted(n) for n in neighbors]

    @staticmethod
    def three_color_faces(lat: TorusLattice) -> FaceColoring:
        """
        Three-color the faces so the faces around every vertex differ.

        Backtracking runs in face index order trying red, green, blue, with
        forced colors propagated to neighbours; the first coloring found is
        returned, so face 0 is red.

        Raises:
            NotThreeColorable: no valid coloring exists for this wrapping
        """
        def fail(reason: str):
            logger.info(f"{lat!r} is not three-colorable: {reason}")
            return NotThreeColorable(
                f"{lat.kind} {lat.L1}x{lat.L2} admits no face 3-coloring ({reason})",
                kind=lat.kind, L1=lat.L1, L2=lat.L2,
            )

        for v, at_vertex in enumerate(lat.faces_of_vertex):
            ids = [f for f, _ in at_vertex]
            if len(ids) > 3 or len(set(ids)) != len(ids):
                raise fail(f"vertex {v} touches {len(ids)} face corners")

        neighbors = LatticeService.face_neighbors(lat)
        full = (1 << len(COLORS)) - 1

        def assign(domains: List[int], face: int, bit: int) -> Optional[List[int]]:
            domains = list(domains)
            domains[face] = bit
            queue = deque([face])
            while queue:
                f = queue.popleft()
                fbit = domains[f]
                for nb in neighbors[f]:
                    if domains[nb] & fbit:
                        domains[nb] &= ~fbit
                        if domains[nb] == 0:
                            return None
                        if domains[nb].bit_count() == 1:
                            queue.append(nb)
            return domains

        def search(domains: List[int], face: int) -> Optional[List[int]]:
            while face < len(domains) and domains[face].bit_count() == 1:
                face += 1
            if face == len(domains):
                return domains
            for k in range(len(COLORS)):
                bit = 1 << k
                if domains[face] & bit:
                    nxt = assign(domains, face, bit)
                    if nxt is not None:
                        found = search(nxt, face + 1)
                        if found is not None:
                            return found
            return None

        result = search([full] * len(lat.faces), 0)
        if result is None:
            raise fail("backtracking exhausted")
        coloring = FaceColoring(tuple(COLORS[bit.bit_length() - 1] for bit in result))
        LatticeService.validate_coloring(lat, coloring)
        logger.debug(f"Colored {lat!r}: {coloring.counts()}")
        return coloring

    @staticmethod
    def validate_coloring(lat: TorusLattice, fc: FaceColoring) -> None:
        if fc is None:
            raise ColoringRequired("a face coloring is required")
        if len(fc.colors) != len(lat.faces):
            raise InvalidColoring(f"coloring covers {len(fc.colors)} faces, lattice has {len(lat.faces)}")
        for v, at_vertex in enumerate(lat.faces_of_vertex):
            colors = [fc.colors[f] for f, _ in at_vertex]
            if len(set(colors)) != len(colors):
                raise InvalidColoring(f"faces around vertex {v} repeat a color: {colors}")

    @staticmethod
    def color_edges(lat: TorusLattice, fc: FaceColoring) -> EdgeColoring:
        """Color each edge by the one color missing from its two bounding faces."""
        LatticeService.validate_coloring(lat, fc)
        colors = []
        for e in lat.edges:
            bounding = {fc.colors[f] for f, _ in lat.faces_of_edge[e.id]}
            missing = [c for c in COLORS if c not in bounding]
            if len(bounding) != 2 or len(missing) != 1:
                raise InvalidColoring(f"edge {e.id} is bounded by faces colored {sorted(bounding)}")
            colors.append(missing[0])
        return EdgeColoring(tuple(colors))

    @staticmethod
    def _lifted_cycle(lat: TorusLattice, start: int, node_cells: Sequence[Shift],
                      adjacency: Dict[int, List[Tuple[int, Shift, int]]],
                      direction: int) -> Tuple[List[int], List[int], Tuple[int, int]]:
        """
        Shortest closed walk from `start` winding once along `direction`.

        Breadth-first search over (node, winding) states on the covering
        plane; the winding changes whenever a step leaves the home torus.
        """
        target = (start, 1, 0) if direction == 0 else (start, 0, 1)
        origin = (start, 0, 0)
        parents: Dict[Tuple[int, int, int], Optional[Tuple[Tuple[int, int, int], int]]] = {origin: None}
        queue = deque([origin])
        while queue:
            state = queue.popleft()
            node, w1, w2 = state
            ca = node_cells[node]
            for nb, d, step in adjacency.get(node, ()):
                cb = node_cells[nb]
                dw1 = (ca[0] + d[0] - cb[0]) // lat.L1
                dw2 = (ca[1] + d[1] - cb[1]) // lat.L2
                nxt = (nb, w1 + dw1, w2 + dw2)
                if abs(nxt[1]) > MAX_WINDING or abs(nxt[2]) > MAX_WINDING or nxt in parents:
                    continue
                parents[nxt] = (state, step)
                if nxt == target:
                    queue.clear()
                    break
                queue.append(nxt)
        if target not in parents:
            raise InvalidArgument(f"no loop winds along direction {direction} on {lat!r}")

        nodes, steps = [target[0]], []
        state = target
        while parents[state] is not None:
            prev, step = parents[state]
            steps.append(step)
            nodes.append(prev[0])
            state = prev
        nodes.reverse()
        steps.reverse()
        return nodes, steps, (target[1], target[2])

    @staticmethod
    def _primal_adjacency(lat: TorusLattice):
        adjacency: Dict[int, List[Tuple[int, Shift, int]]] = {v.id: [] for v in lat.vertices}
        for e in lat.edges:
            adjacency[e.u].append((e.v, e.shift, e.id))
            adjacency[e.v].append((e.u, (-e.shift[0], -e.shift[1]), e.id))
        return {k: sorted(v) for k, v in adjacency.items()}

    @staticmethod
    def _dual_adjacency(lat: TorusLattice):
        adjacency: Dict[int, List[Tuple[int, Shift, int]]] = {f.id: [] for f in lat.faces}
        for e in lat.edges:
            (f, tf), (g, tg) = lat.faces_of_edge[e.id]
            adjacency[f].append((g, sub_shift(tf, tg), e.id))
            adjacency[g].append((f, sub_shift(tg, tf), e.id))
        return {k: sorted(v) for k, v in adjacency.items()}

    @staticmethod
    def _colored_adjacency(lat: TorusLattice, fc: FaceColoring, ec: EdgeColoring, color: str):
        def colored_face(vertex: int) -> Tuple[int, Shift]:
            for f, s in lat.faces_of_vertex[vertex]:
                if fc.colors[f] == color:
                    return f, s
            raise InvalidColoring(f"vertex {vertex} touches no {color} face")

        adjacency: Dict[int, List[Tuple[int, Shift, int]]] = {f: [] for f in fc.faces_with(color)}
        for eid in ec.edges_with(color):
            e = lat.edges[eid]
            fu, su = colored_face(e.u)
            fv, sv = colored_face(e.v)
            d = sub_shift(add_shift(su, e.shift), sv)
            adjacency[fu].append((fv, d, eid))
            adjacency[fv].append((fu, (-d[0], -d[1]), eid))
        return {k: sorted(v) for k, v in adjacency.items()}

    @staticmethod
    def _xor_carrier(items) -> Tuple[int, ...]:
        odd = set()
        for item in items:
            odd ^= {item}
        return tuple(sorted(odd))

    @staticmethod
    def nontrivial_loops(lat: TorusLattice, fc: Optional[FaceColoring] = None,
                         colored: Optional[bool] = None,
                         colors: Sequence[str] = (RED, GREEN)) -> List[LoopPath]:
        """
        Non-contractible loop representatives, one per direction.

        Without coloring: two primal loops (edge cycles) and two dual loops
        (face cycles crossing edges). With coloring: a colored loop per
        requested color and direction; two colors are independent.

        Raises:
            ColoringRequired: colored loops requested without a coloring
        """
        if colored is None:
            colored = fc is not None
        loops: List[LoopPath] = []

        if not colored:
            node_cells = [v.cell for v in lat.vertices]
            primal = LatticeService._primal_adjacency(lat)
            for direction in (0, 1):
                nodes, steps, winding = LatticeService._lifted_cycle(lat, 0, node_cells, primal, direction)
                loops.append(LoopPath(direction, 'primal', tuple(nodes), tuple(steps),
                                      LatticeService._xor_carrier(steps), winding))
            face_cells = [f.cell for f in lat.faces]
            dual = LatticeService._dual_adjacency(lat)
            for direction in (0, 1):
                nodes, steps, winding = LatticeService._lifted_cycle(lat, 0, face_cells, dual, direction)
                loops.append(LoopPath(direction, 'dual', tuple(nodes), tuple(steps),
                                      LatticeService._xor_carrier(steps), winding))
            return loops

        if fc is None:
            raise ColoringRequired("colored loops need a face coloring")
        ec = LatticeService.color_edges(lat, fc)
        face_cells = [f.cell for f in lat.faces]
        for color in colors:
            start_faces = fc.faces_with(color)
            if not start_faces:
                raise InvalidColoring(f"no {color} faces")
            adjacency = LatticeService._colored_adjacency(lat, fc, ec, color)
            for direction in (0, 1):
                nodes, steps, winding = LatticeService._lifted_cycle(
                    lat, start_faces[0], face_cells, adjacency, direction)
                endpoints = []
                for eid in steps:
                    endpoints.extend((lat.edges[eid].u, lat.edges[eid].v))
                loops.append(LoopPath(direction, 'colored', tuple(nodes), tuple(steps),
                                      LatticeService._xor_carrier(endpoints), winding, color))
        return loops

    @staticmethod
    def loop_overlap_audit(lat: TorusLattice, loop: LoopPath) -> bool:
        """
        Every vertex star (primal), face boundary (dual) or face vertex set
        (colored) shares an even number of sites with the loop carrier.
        """
        carrier = set(loop.carrier)
        if loop.kind == 'primal':
            groups = lat.vertex_edges
        elif loop.kind == 'dual':
            groups = [f.edge_ids for f in lat.faces]
        else:
            groups = [f.vertex_ids for f in lat.faces]
        return all(sum(1 for s in group if s in carrier) % 2 == 0 for group in groups)

    @staticmethod
    def winding_audit(loop: LoopPath) -> bool:
        expected = (1, 0) if loop.direction == 0 else (0, 1)
        return loop.closed and loop.winding == expected

    @staticmethod
    def adjacent_edge_pairs(lat: TorusLattice, pattern: str = PATTERN_VERTEX) -> List[EdgePair]:
        """
        Pairs of distinct edges sharing a vertex, tagged with that vertex.

        pattern 'vertex' gives every pair at each vertex; 'medial' keeps the
        pairs that are consecutive around a vertex (meeting at a face corner).
        """
        pairs = set()
        if pattern == PATTERN_VERTEX:
            for v, incident in enumerate(lat.vertex_edges):
                for a_idx, a in enumerate(incident):
                    for b in incident[a_idx + 1:]:
                        pairs.add((v, a, b))
        elif pattern == PATTERN_MEDIAL:
            for f in lat.faces:
                k = len(f.edge_ids)
                for pos in range(k):
                    a, b = f.edge_ids[pos - 1], f.edge_ids[pos]
                    if a != b:
                        pairs.add((f.vertex_ids[pos], min(a, b), max(a, b)))
        else:
            raise InvalidArgument(f"unknown bond pattern: {pattern}")
        return [EdgePair(a, b, v) for v, a, b in sorted(pairs)]
