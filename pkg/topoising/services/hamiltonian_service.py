"""
Hamiltonian Service
Assembles the perturbed code Hamiltonian on the real spins and the
transverse-field Ising Hamiltonian on the virtual spins.
"""
import logging
from typing import Iterable, Optional

from topoising.constants import COLOR, PATTERN_MEDIAL
from topoising.models.code import StabilizerCode
from topoising.models.hamiltonian import Bond, BondSet, CouplingParams, HamiltonianTerms
from topoising.models.lattice import sub_shift
from topoising.models.pauli import identity, pauli_from_supports
from topoising.models.virtual_model import VirtualIsingModel
from topoising.services.lattice_service import LatticeService

logger = logging.getLogger(__name__)


class HamiltonianService:

    @staticmethod
    def ising_bonds(code: StabilizerCode, pattern: Optional[str] = None) -> BondSet:
        """
        Nearest-neighbour Ising bonds for the code's qubits.

        Color code: one bond per lattice edge. Toric code: pairs of edges
        sharing a vertex, 'medial' pattern unless another is requested.
        """
        lat = code.lattice
        if code.kind == COLOR:
            bonds = [Bond(e.u, e.v, ('edge', e.id), e.shift) for e in lat.edges]
            return BondSet(code.n, tuple(bonds), 'edge')

        pattern = pattern or PATTERN_MEDIAL
        bonds = []
        for pair in LatticeService.adjacent_edge_pairs(lat, pattern):
            shift = sub_shift(lat.edge_offset_from(pair.second, pair.vertex),
                              lat.edge_offset_from(pair.first, pair.vertex))
            bonds.append(Bond(pair.first, pair.second, ('vertex', pair.vertex), shift))
        return BondSet(code.n, tuple(bonds), pattern)

    @staticmethod
    def bond_operator(n: int, bond: Bond):
        return pauli_from_supports(n, z_sites=(bond.i, bond.j))

    @staticmethod
    def build_code_hamiltonian(code: StabilizerCode, J: float = 1.0) -> HamiltonianTerms:
        return HamiltonianTerms.from_terms(code.n, ((-J, g) for _, _, g in code.generators))

    @staticmethod
    def build_perturbed_hamiltonian(code: StabilizerCode, bonds: BondSet, cp: CouplingParams) -> HamiltonianTerms:
        """H = -J (sum of generators) - K (sum over bonds of Z_i Z_j)."""
        def terms() -> Iterable:
            for _, _, g in code.generators:
                yield -cp.J, g
            for bond in bonds:
                yield -cp.K, HamiltonianService.bond_operator(code.n, bond)

        h = HamiltonianTerms.from_terms(code.n, terms())
        logger.debug(f"Perturbed Hamiltonian for {code!r}: {len(h)} terms at J={cp.J}, K={cp.K}")
        return h

    @staticmethod
    def build_tfim_hamiltonian(vm: VirtualIsingModel, cp: CouplingParams) -> HamiltonianTerms:
        """
        H = -J sum Z_p - K sum m X_p X_p' - J * (number of Z generators).

        Bonds joining the same pair through different windings add up.
        """
        n = vm.num_spins

        def terms() -> Iterable:
            for spin in vm.spins:
                yield -cp.J, pauli_from_supports(n, z_sites=(spin.id,))
            for bond in vm.bonds:
                yield -bond.multiplicity * cp.K, pauli_from_supports(n, x_sites=(bond.p, bond.q))
            yield -cp.J * vm.num_z_generators, identity(n)

        return HamiltonianTerms.from_terms(n, terms())
