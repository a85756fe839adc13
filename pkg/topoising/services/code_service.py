"""
Code Service
Constructs toric and color codes on periodic lattices, computes their
degeneracy and constraint relations, and turns loop paths into logical
operators.
"""
import logging
from typing import List, Optional, Sequence

from topoising.constants import COLOR, ON_EDGES, ON_VERTICES, TORIC, X_TYPE, Z_TYPE
from topoising.exceptions import InvalidArgument, LogicalOperatorError
from topoising.models.code import LogicalOperator, LogicalOperatorSet, StabilizerCode
from topoising.models.lattice import FaceColoring, LoopPath, TorusLattice
from topoising.models.pauli import PauliString, commutes, pauli_from_supports
from topoising.services.lattice_service import LatticeService
from topoising.utils.gf2 import Gf2Matrix, int_to_bits

logger = logging.getLogger(__name__)


class CodeService:
    """Stabilizer code construction and algebra."""

    @staticmethod
    def build_toric_code(lat: TorusLattice) -> StabilizerCode:
        """Qubits on edges; A_v = X on the star of v, B_p = Z on the boundary of p."""
        n = len(lat.edges)
        x_generators, x_origins, x_cells, x_shifts = [], [], [], []
        for v in lat.vertices:
            star = lat.vertex_edges[v.id]
            x_generators.append(pauli_from_supports(n, x_sites=star))
            x_origins.append(('vertex', v.id))
            x_cells.append(v.cell)
            x_shifts.append(tuple((e, lat.edge_offset_from(e, v.id)) for e in star))
        z_generators = [pauli_from_supports(n, z_sites=CodeService._odd(f.edge_ids)) for f in lat.faces]
        z_origins = [('face', f.id) for f in lat.faces]
        code = StabilizerCode(
            TORIC, n, ON_EDGES,
            tuple(x_generators), tuple(z_generators), tuple(x_origins), tuple(z_origins),
            tuple(x_cells), tuple(x_shifts), lat,
        )
        logger.debug(f"Built {code!r} with {len(x_generators)} vertex and {len(z_generators)} face generators")
        return code

    @staticmethod
    def build_color_code(lat: TorusLattice, fc: Optional[FaceColoring]) -> StabilizerCode:
        """
        Qubits on vertices; each face carries P_x and P_z on its vertex set.

        Raises:
            ColoringRequired / InvalidColoring: coloring missing or invalid
        """
        LatticeService.validate_coloring(lat, fc)
        n = len(lat.vertices)
        x_generators, z_generators, origins, cells, shifts = [], [], [], [], []
        for f in lat.faces:
            sites = CodeService._odd(f.vertex_ids)
            x_generators.append(pauli_from_supports(n, x_sites=sites))
            z_generators.append(pauli_from_supports(n, z_sites=sites))
            origins.append(('face', f.id))
            cells.append(f.cell)
            shifts.append(tuple(zip(f.vertex_ids, f.vertex_shifts)))
        code = StabilizerCode(
            COLOR, n, ON_VERTICES,
            tuple(x_generators), tuple(z_generators), tuple(origins), tuple(origins),
            tuple(cells), tuple(shifts), lat, fc,
        )
        logger.debug(f"Built {code!r} with {len(lat.faces)} faces")
        return code

    @staticmethod
    def _odd(sites: Sequence[int]) -> List[int]:
        # a site listed twice (small wrappings) cancels out of the operator
        odd = set()
        for s in sites:
            odd ^= {s}
        return sorted(odd)

    @staticmethod
    def all_commute(code: StabilizerCode) -> bool:
        ops = [g for _, _, g in code.generators]
        return all(commutes(a, b) for i, a in enumerate(ops) for b in ops[i + 1:])

    @staticmethod
    def degeneracy(code: StabilizerCode) -> int:
        """Ground-space dimension 2^(n - rank) from the symplectic generator matrix."""
        return 2 ** (code.n - code.symplectic_matrix.rank())

    @staticmethod
    def constraint_relations(code: StabilizerCode) -> List[List[int]]:
        """
        Independent sets of generators whose product is the identity.

        X-type relations come first, then Z-type; indices refer to
        `code.generators`.
        """
        relations = []
        for gtype in (X_TYPE, Z_TYPE):
            indices = [i for i, (t, _, _) in enumerate(code.generators) if t == gtype]
            rows = [code.generators[i][2].symplectic() for i in indices]
            kernel = Gf2Matrix.from_rows(rows, 2 * code.n).transpose().nullspace()
            for vec in kernel:
                relations.append([indices[k] for k in int_to_bits(vec)])
        return relations

    @staticmethod
    def in_stabilizer_group(code: StabilizerCode, op: PauliString) -> bool:
        return code.symplectic_matrix.row_space_contains(op.symplectic())

    @staticmethod
    def logical_operators(code: StabilizerCode, loops: Sequence[LoopPath]) -> LogicalOperatorSet:
        """
        Loop operators as X-type or Z-type strings on loop carriers.

        Toric code: primal loops give Z-type logicals, dual loops X-type.
        Color code: every colored loop gives one of each type.

        Raises:
            LogicalOperatorError: a loop operator fails to commute with a
                generator or lies in the stabilizer group
        """
        operators: List[LogicalOperator] = []
        for loop in loops:
            if loop.kind == 'primal':
                kinds = (Z_TYPE,)
            elif loop.kind == 'dual':
                kinds = (X_TYPE,)
            else:
                kinds = (X_TYPE, Z_TYPE)
            for op_type in kinds:
                if op_type == X_TYPE:
                    op = pauli_from_supports(code.n, x_sites=loop.carrier)
                else:
                    op = pauli_from_supports(code.n, z_sites=loop.carrier)
                operators.append(LogicalOperator(op, op_type, loop.direction, loop.color))

        for logical in operators:
            for gtype, origin, g in code.generators:
                if not commutes(logical.operator, g):
                    raise LogicalOperatorError(
                        f"{logical.name()} anticommutes with {gtype} generator on {origin[0]} {origin[1]}")
            if CodeService.in_stabilizer_group(code, logical.operator):
                raise LogicalOperatorError(f"{logical.name()} is a product of stabilizer generators")

        pairing = []
        for i, a in enumerate(operators):
            if a.type != X_TYPE:
                continue
            for j, b in enumerate(operators):
                if b.type == Z_TYPE and not commutes(a.operator, b.operator):
                    pairing.append((i, j))
        logger.debug(f"{code!r}: {len(operators)} logical operators, {len(pairing)} anticommuting pairs")
        return LogicalOperatorSet(tuple(operators), tuple(pairing))

    @staticmethod
    def default_logicals(code: StabilizerCode) -> LogicalOperatorSet:
        loops = LatticeService.nontrivial_loops(code.lattice, code.coloring,
                                                colored=code.kind == COLOR)
        return CodeService.logical_operators(code, loops)

    @staticmethod
    def build_code(code_kind: str, lattice_kind: str, L1: int, L2: int) -> StabilizerCode:
        """Build a lattice and the requested code on it, coloring faces for color codes."""
        lat = LatticeService.build_lattice(lattice_kind, L1, L2)
        if code_kind == TORIC:
            return CodeService.build_toric_code(lat)
        if code_kind == COLOR:
            return CodeService.build_color_code(lat, LatticeService.three_color_faces(lat))
        raise InvalidArgument(f"unknown code kind: {code_kind}")
