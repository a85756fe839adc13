"""
Mapping Service
Derives the virtual-spin transverse-field Ising model of a perturbed code by
commutation analysis: a bond Z_i Z_j flips exactly the X generators that
contain one of its two sites, and must flip exactly two of them.
"""
import logging
from typing import Dict, List, Optional, Tuple

import networkx as nx

from topoising.constants import (
    LABEL_OTHER, LABEL_SQUARE, LABEL_TRIANGULAR, SMALL_COMPONENT_SPINS, SQUARE, TRIANGULAR,
)
from topoising.data.critical_registry import get_direct_transition
from topoising.exceptions import InvalidArgument, MappingObstruction, UnsupportedCombination
from topoising.models.code import StabilizerCode
from topoising.models.hamiltonian import Bond, BondSet, CouplingParams
from topoising.models.lattice import Shift, sub_shift
from topoising.models.virtual_model import (
    ComponentLabel, DictionaryEntry, VirtualBond, VirtualIsingModel, VirtualSpin,
)
from topoising.services.hamiltonian_service import HamiltonianService
from topoising.services.lattice_service import LatticeService
from topoising.utils.gf2 import Gf2Matrix, int_to_bits

logger = logging.getLogger(__name__)

REFERENCE_KIND = {LABEL_TRIANGULAR: TRIANGULAR, LABEL_SQUARE: SQUARE}


def _ordered(p: int, q: int, shift: Shift) -> Tuple[int, int, Shift]:
    if p < q:
        return p, q, shift
    return q, p, (-shift[0], -shift[1])


def _components(num_spins: int, pairs) -> Tuple[Tuple[int, ...], ...]:
    g = nx.Graph()
    g.add_nodes_from(range(num_spins))
    g.add_edges_from(pairs)
    comps = [tuple(sorted(c)) for c in nx.connected_components(g)]
    return tuple(sorted(comps))


class MappingService:

    @staticmethod
    def check_supported(code: StabilizerCode) -> None:
        """The toric code on the square lattice has no derived mapping; its row is a registry entry."""
        direct = get_direct_transition(code.kind, code.lattice.kind)
        if direct is not None:
            raise UnsupportedCombination(
                f"no virtual-model derivation for {code.kind} code on {code.lattice.kind} lattice; "
                f"see the registry entry (K/J = {direct['ratio']:.6f})",
                pointer=direct,
            )

    @staticmethod
    def anticommuting_generators(code: StabilizerCode, bond: Bond) -> List[int]:
        """X generators anticommuting with Z_i Z_j: those containing exactly one of i, j."""
        index = code.x_site_index
        return sorted(set(index[bond.i]) ^ set(index[bond.j]))

    @staticmethod
    def derive_virtual_model(code: StabilizerCode, bonds: BondSet, strict: bool = False) -> VirtualIsingModel:
        """
        Virtual-spin model for a code and an Ising bond set.

        Each bond contributes to the virtual bond between the two X
        generators it anticommutes with, at the displacement those
        generators have on the covering plane.

        Raises:
            MappingObstruction: a bond anticommutes with a number of X
                generators other than two
        """
        MappingService.check_supported(code)
        if bonds.n != code.n:
            raise InvalidArgument(f"bond set covers {bonds.n} sites, code has {code.n}")

        counts: Dict[Tuple[int, int, Shift], int] = {}
        for bond in bonds:
            flipped = MappingService.anticommuting_generators(code, bond)
            if len(flipped) != 2:
                raise MappingObstruction(
                    f"bond ({bond.i}, {bond.j}) from {bond.origin[0]} {bond.origin[1]} anticommutes "
                    f"with {len(flipped)} X generators",
                    bond=bond, anticommuting=flipped,
                )
            # cells on the covering plane, with site i at the origin
            cells = []
            for g in flipped:
                if g in code.x_site_index[bond.i]:
                    cells.append(sub_shift((0, 0), code.x_site_shift(g, bond.i)))
                else:
                    cells.append(sub_shift(bond.shift, code.x_site_shift(g, bond.j)))
            key = _ordered(flipped[0], flipped[1], sub_shift(cells[1], cells[0]))
            counts[key] = counts.get(key, 0) + 1

        spins = []
        for g, origin in enumerate(code.x_origins):
            color = code.coloring.colors[origin[1]] if code.coloring is not None and origin[0] == 'face' else None
            spins.append(VirtualSpin(g, origin, code.x_cells[g], color))

        virtual_bonds = tuple(VirtualBond(p, q, m, s) for (p, q, s), m in sorted(counts.items()))
        vm = VirtualIsingModel(
            code_id=code.identifier(),
            spins=tuple(spins),
            bonds=virtual_bonds,
            parity_constraints=tuple(MappingService.virtual_parity_constraints(code)),
            components=_components(len(spins), ((b.p, b.q) for b in virtual_bonds)),
            num_z_generators=len(code.z_generators),
        )
        vm = MappingService.with_labels(vm, strict=strict)
        logger.info(f"Derived {vm!r} from {len(bonds)} bonds")
        return vm

    @staticmethod
    def with_labels(vm: VirtualIsingModel, strict: bool = False) -> VirtualIsingModel:
        labels = tuple(MappingService.classify_component(vm, idx, strict=strict)
                       for idx in range(len(vm.components)))
        return VirtualIsingModel(vm.code_id, vm.spins, vm.bonds, vm.parity_constraints,
                                 vm.components, labels, vm.num_z_generators)

    @staticmethod
    def lifted_neighbors(vm: VirtualIsingModel, component: int) -> Dict[int, set]:
        """Neighbours of each spin on the covering plane: sets of (spin, shift)."""
        members = vm.components[component]
        neighbors: Dict[int, set] = {p: set() for p in members}
        for b in vm.bonds_in(component):
            neighbors[b.p].add((b.q, b.shift))
            neighbors[b.q].add((b.p, (-b.shift[0], -b.shift[1])))
        return neighbors

    @staticmethod
    def classify_component(vm: VirtualIsingModel, component: int, strict: bool = False) -> ComponentLabel:
        """
        Label a component triangular, square or other.

        Degree and triangle counts are taken on the covering plane, so
        bonds that only meet through a wrap-around do not count.
        """
        if not 0 <= component < len(vm.components):
            raise InvalidArgument(f"component {component} does not exist")
        neighbors = MappingService.lifted_neighbors(vm, component)
        members = vm.components[component]
        degrees, triangles = [], []
        for p in members:
            nbrs = sorted(neighbors[p])
            degrees.append(len(nbrs))
            count = 0
            for a in range(len(nbrs)):
                q, d1 = nbrs[a]
                for b in range(a + 1, len(nbrs)):
                    r, d2 = nbrs[b]
                    if (r, sub_shift(d2, d1)) in neighbors[q]:
                        count += 1
            triangles.append(count)

        if all(d == 6 for d in degrees) and all(t == 6 for t in triangles):
            label = LABEL_TRIANGULAR
        elif all(d == 4 for d in degrees) and all(t == 0 for t in triangles):
            label = LABEL_SQUARE
        else:
            label = LABEL_OTHER

        caveat = len(members) < SMALL_COMPONENT_SPINS
        if caveat:
            logger.warning(f"{vm.code_id}: component {component} has {len(members)} spins; "
                           f"label '{label}' rests on the covering-plane neighbourhood")

        isomorphic = None
        if strict and label in REFERENCE_KIND:
            isomorphic = MappingService._matches_straight_torus(vm, component, label)
        return ComponentLabel(label, tuple(degrees), tuple(triangles), caveat, isomorphic)

    @staticmethod
    def _matches_straight_torus(vm: VirtualIsingModel, component: int, label: str) -> bool:
        sub = vm.graph().subgraph(vm.components[component])
        size = sub.number_of_nodes()
        for a in range(2, size + 1):
            if size % a or size // a < 2:
                continue
            ref_lat = LatticeService.build_lattice(REFERENCE_KIND[label], a, size // a)
            ref = nx.Graph()
            ref.add_nodes_from(v.id for v in ref_lat.vertices)
            ref.add_edges_from((e.u, e.v) for e in ref_lat.edges if e.u != e.v)
            if nx.faster_could_be_isomorphic(sub, ref) and nx.is_isomorphic(sub, ref):
                return True
        return False

    @staticmethod
    def virtual_parity_constraints(code: StabilizerCode) -> List[Tuple[int, ...]]:
        """Supports of independent products of X generators equal to the identity."""
        rows = [g.x for g in code.x_generators]
        kernel = Gf2Matrix.from_rows(rows, code.n).transpose().nullspace()
        return [tuple(int_to_bits(vec)) for vec in kernel]

    @staticmethod
    def spectral_dictionary(code: StabilizerCode, bonds: Optional[BondSet] = None,
                            cp: Optional[CouplingParams] = None) -> List[DictionaryEntry]:
        """
        Each real-spin term of the perturbed Hamiltonian beside its image on
        the virtual spins: X generators become Z_p, Z generators the constant
        offset, and bonds X_p X_p' with the aggregated multiplicity.
        """
        bonds = bonds if bonds is not None else HamiltonianService.ising_bonds(code)
        vm = MappingService.derive_virtual_model(code, bonds)
        pair_m = vm.pair_multiplicities()
        J = cp.J if cp else None
        K = cp.K if cp else None

        entries = []
        for g, (origin, op) in enumerate(zip(code.x_origins, code.x_generators)):
            entries.append(DictionaryEntry(
                'x_generator', origin, tuple(op.x_sites), (), (), (g,), '-J', '-J',
                -J if J is not None else None))
        for origin, op in zip(code.z_origins, code.z_generators):
            entries.append(DictionaryEntry(
                'z_generator', origin, (), tuple(op.z_sites), (), (), '-J', '-J (offset)',
                -J if J is not None else None))
        for bond in bonds:
            p, q = MappingService.anticommuting_generators(code, bond)
            m = pair_m[(p, q)]
            entries.append(DictionaryEntry(
                'bond', bond.origin, (), (bond.i, bond.j), (p, q), (), '-K',
                f'-{m}K' if m != 1 else '-K',
                -m * K if K is not None else None))
        return entries

    @staticmethod
    def tfim_on_lattice(kind: str, L1: int, L2: int) -> VirtualIsingModel:
        """Uniform TFIM on the vertex graph of a lattice, without constraints."""
        lat = LatticeService.build_lattice(kind, L1, L2)
        counts: Dict[Tuple[int, int, Shift], int] = {}
        for e in lat.edges:
            key = _ordered(e.u, e.v, e.shift)
            counts[key] = counts.get(key, 0) + 1
        spins = tuple(VirtualSpin(v.id, ('vertex', v.id), v.cell) for v in lat.vertices)
        bonds = tuple(VirtualBond(p, q, m, s) for (p, q, s), m in sorted(counts.items()))
        vm = VirtualIsingModel(
            code_id=f'tfim/{kind}/{L1}x{L2}',
            spins=spins,
            bonds=bonds,
            parity_constraints=(),
            components=_components(len(spins), ((b.p, b.q) for b in bonds)),
        )
        return MappingService.with_labels(vm)
