"""
Tests for the virtual-spin mapping
"""
import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from topoising.constants import (
    COLOR, HONEYCOMB, LABEL_SQUARE, LABEL_TRIANGULAR, SQUARE, SQUARE_OCTAGONAL, TORIC, TRIANGULAR,
)
from topoising.exceptions import InvalidArgument, MappingObstruction, UnsupportedCombination
from topoising.models.hamiltonian import Bond, BondSet, CouplingParams
from topoising.services.code_service import CodeService
from topoising.services.hamiltonian_service import HamiltonianService
from topoising.services.mapping_service import MappingService


def derive(kind, lattice, L1, L2, strict=False):
    code = CodeService.build_code(kind, lattice, L1, L2)
    return code, MappingService.derive_virtual_model(code, HamiltonianService.ising_bonds(code), strict=strict)


def multiplicities(vm):
    return sorted(m for idx in range(len(vm.components)) for m in vm.multiplicities_in(idx))


@pytest.mark.parametrize('kind,lattice,size,components,label,mults', [
    (COLOR, HONEYCOMB, (3, 3), 3, LABEL_TRIANGULAR, [1, 1, 1]),
    (COLOR, HONEYCOMB, (6, 6), 3, LABEL_TRIANGULAR, [1, 1, 1]),
    (COLOR, SQUARE_OCTAGONAL, (4, 4), 3, LABEL_SQUARE, [1, 2, 2]),
    (TORIC, HONEYCOMB, (4, 4), 2, LABEL_TRIANGULAR, [1, 1]),
    (TORIC, TRIANGULAR, (4, 4), 1, LABEL_TRIANGULAR, [2]),
])
def test_mapping_structure(kind, lattice, size, components, label, mults):
    code, vm = derive(kind, lattice, *size)
    assert vm.num_spins == len(code.x_generators)
    assert len(vm.components) == components
    assert [l.label for l in vm.labels] == [label] * components
    assert multiplicities(vm) == mults
    assert vm.total_multiplicity == len(HamiltonianService.ising_bonds(code))


def test_small_components_carry_caveat():
    _, small = derive(COLOR, HONEYCOMB, 3, 3)
    assert all(l.caveat for l in small.labels)
    assert all(len(c) == 3 for c in small.components)
    _, large = derive(COLOR, HONEYCOMB, 6, 6)
    assert not any(l.caveat for l in large.labels)


def test_color_components_follow_face_colors():
    code, vm = derive(COLOR, HONEYCOMB, 6, 6)
    for comp in vm.components:
        assert len({vm.spins[p].color for p in comp}) == 1


def test_square_octagonal_squares_have_single_bonds():
    code, vm = derive(COLOR, SQUARE_OCTAGONAL, 4, 4)
    for idx, comp in enumerate(vm.components):
        sizes = {code.lattice.faces[vm.spins[p].origin[1]].size for p in comp}
        assert len(sizes) == 1
        expected = [1] if sizes == {4} else [2]
        assert vm.multiplicities_in(idx) == expected


def test_parity_constraints():
    _, color = derive(COLOR, HONEYCOMB, 3, 3)
    assert len(color.parity_constraints) == 2
    _, toric = derive(TORIC, HONEYCOMB, 4, 4)
    assert len(toric.parity_constraints) == 1
    assert toric.parity_constraints[0] == tuple(range(toric.num_spins))


def test_toric_square_is_refused_with_registry_pointer():
    code = CodeService.build_code(TORIC, SQUARE, 3, 3)
    with pytest.raises(UnsupportedCombination) as excinfo:
        MappingService.derive_virtual_model(code, HamiltonianService.ising_bonds(code))
    assert excinfo.value.pointer['ratio'] == pytest.approx(1 / 6)


def test_obstruction_for_disjoint_edges():
    code = CodeService.build_code(TORIC, HONEYCOMB, 3, 3)
    lat = code.lattice
    first = lat.edges[0]
    far = next(e for e in lat.edges if {e.u, e.v}.isdisjoint({first.u, first.v}))
    bonds = BondSet(code.n, (Bond(first.id, far.id, ('test', 0)),))
    with pytest.raises(MappingObstruction) as excinfo:
        MappingService.derive_virtual_model(code, bonds)
    assert len(excinfo.value.anticommuting) == 4


def test_strict_mode_matches_straight_torus():
    _, vm = derive(TORIC, HONEYCOMB, 4, 4, strict=True)
    assert all(l.isomorphic for l in vm.labels)


def test_classify_rejects_missing_component():
    _, vm = derive(TORIC, TRIANGULAR, 3, 3)
    with pytest.raises(InvalidArgument):
        MappingService.classify_component(vm, 5)


def test_spectral_dictionary():
    code = CodeService.build_code(TORIC, TRIANGULAR, 3, 3)
    bonds = HamiltonianService.ising_bonds(code)
    entries = MappingService.spectral_dictionary(code, bonds, CouplingParams(J=1.0, K=0.25))
    assert len(entries) == len(code.x_generators) + len(code.z_generators) + len(bonds)
    bond_entries = [e for e in entries if e.term == 'bond']
    assert all(len(e.virtual_x) == 2 for e in bond_entries)
    assert all(e.value == pytest.approx(-0.5) for e in bond_entries)
    offsets = [e for e in entries if e.term == 'z_generator']
    assert all(e.virtual_x == () and e.virtual_z == () for e in offsets)


def test_tfim_on_lattice():
    vm = MappingService.tfim_on_lattice(TRIANGULAR, 3, 3)
    assert vm.num_spins == 9
    assert len(vm.bonds) == 27
    assert vm.parity_constraints == ()
    assert [l.label for l in vm.labels] == [LABEL_TRIANGULAR]
    square = MappingService.tfim_on_lattice(SQUARE, 4, 4)
    assert [l.label for l in square.labels] == [LABEL_SQUARE]
