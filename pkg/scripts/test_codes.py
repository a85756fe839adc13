"""
Tests for toric and color code construction
"""
import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from topoising.constants import (
    BLUE, COLOR, GREEN, HONEYCOMB, METHOD_DENSE, RED, SQUARE, SQUARE_OCTAGONAL, TORIC, TRIANGULAR, X_TYPE,
    Z_TYPE,
)
from topoising.exceptions import ColoringRequired, InvalidArgument, LogicalOperatorError
from topoising.models.hamiltonian import CouplingParams
from topoising.models.lattice import LoopPath
from topoising.models.pauli import multiply, pauli_from_supports, product
from topoising.models.spectrum import SpectrumRequest
from topoising.services.code_service import CodeService
from topoising.services.hamiltonian_service import HamiltonianService
from topoising.services.lattice_service import LatticeService
from topoising.services.spectrum_service import SpectrumService
from topoising.utils.gf2 import Gf2Matrix


@pytest.mark.parametrize('lattice,size', [
    (HONEYCOMB, (2, 3)), (HONEYCOMB, (3, 3)), (SQUARE, (3, 3)), (SQUARE, (4, 4)), (TRIANGULAR, (3, 3)),
])
def test_toric_degeneracy_is_four(lattice, size):
    code = CodeService.build_code(TORIC, lattice, *size)
    assert CodeService.all_commute(code)
    assert CodeService.degeneracy(code) == 4


@pytest.mark.parametrize('lattice,size', [
    (HONEYCOMB, (3, 3)), (HONEYCOMB, (6, 3)), (HONEYCOMB, (6, 6)), (SQUARE_OCTAGONAL, (2, 2)),
    (SQUARE_OCTAGONAL, (4, 4)),
])
def test_color_degeneracy_is_sixteen(lattice, size):
    code = CodeService.build_code(COLOR, lattice, *size)
    assert CodeService.all_commute(code)
    assert CodeService.degeneracy(code) == 16


def test_toric_code_layout():
    code = CodeService.build_code(TORIC, HONEYCOMB, 2, 3)
    assert code.n == 18
    assert all(g.weight == 3 for g in code.x_generators)
    assert all(g.weight == 6 for g in code.z_generators)
    assert [t for t, _, _ in code.generators[:6]] == [Z_TYPE] * 6
    assert code.identifier() == 'toric/honeycomb/2x3'


def test_color_code_needs_coloring():
    lat = LatticeService.build_lattice(HONEYCOMB, 3, 3)
    with pytest.raises(ColoringRequired):
        CodeService.build_color_code(lat, None)


def test_build_code_rejects_unknown_kind():
    with pytest.raises(InvalidArgument):
        CodeService.build_code('surface', HONEYCOMB, 3, 3)


@pytest.mark.parametrize('kind,lattice,size,expected', [
    (TORIC, HONEYCOMB, (2, 3), 2),
    (TORIC, TRIANGULAR, (3, 3), 2),
    (COLOR, HONEYCOMB, (3, 3), 4),
    (COLOR, SQUARE_OCTAGONAL, (2, 2), 4),
])
def test_constraint_relations(kind, lattice, size, expected):
    code = CodeService.build_code(kind, lattice, *size)
    relations = CodeService.constraint_relations(code)
    assert len(relations) == expected
    for relation in relations:
        ops = [code.generators[i][2] for i in relation]
        assert len({code.generators[i][0] for i in relation}) == 1
        total = product(ops, code.n)
        assert total.is_identity
        assert total.sign == 1


def test_toric_logical_pairing():
    code = CodeService.build_code(TORIC, HONEYCOMB, 2, 3)
    logicals = CodeService.default_logicals(code)
    assert len(logicals.of_type(X_TYPE)) == 2 and len(logicals.of_type(Z_TYPE)) == 2
    pairs = {(logicals.operators[a].direction, logicals.operators[b].direction) for a, b in logicals.pairing}
    assert pairs == {(0, 1), (1, 0)}
    assert logicals.named_pairs() == [('L[0]_x', 'L[1]_z'), ('L[1]_x', 'L[0]_z')]


def test_color_logical_pairing():
    code = CodeService.build_code(COLOR, HONEYCOMB, 3, 3)
    logicals = CodeService.default_logicals(code)
    assert len(logicals.operators) == 8
    pairs = set()
    for a, b in logicals.pairing:
        x, z = logicals.operators[a], logicals.operators[b]
        pairs.add((x.color, x.direction, z.color, z.direction))
    assert pairs == {(RED, 0, GREEN, 1), (RED, 1, GREEN, 0), (GREEN, 0, RED, 1), (GREEN, 1, RED, 0)}


def test_stabilizer_loop_is_rejected():
    code = CodeService.build_code(TORIC, SQUARE, 3, 3)
    face = code.lattice.faces[0]
    contractible = LoopPath(0, 'primal', (0, 0), tuple(face.edge_ids), tuple(sorted(face.edge_ids)), (1, 0))
    with pytest.raises(LogicalOperatorError):
        CodeService.logical_operators(code, [contractible])


def test_logicals_are_not_stabilizers():
    code = CodeService.build_code(COLOR, SQUARE_OCTAGONAL, 2, 2)
    for logical in CodeService.default_logicals(code).operators:
        assert not CodeService.in_stabilizer_group(code, logical.operator)


def test_dense_spectrum_confirms_toric_degeneracy():
    code = CodeService.build_code(TORIC, SQUARE, 2, 2)
    h = HamiltonianService.build_perturbed_hamiltonian(code, HamiltonianService.ising_bonds(code),
                                                       CouplingParams(J=1.0, K=0.0))
    levels = SpectrumService.eigenvalues(SpectrumRequest(h, 5, method=METHOD_DENSE)).eigenvalues
    assert np.allclose(levels[:4], -8.0)
    assert levels[4] == pytest.approx(-4.0)


@pytest.mark.parametrize('op_type', [X_TYPE, Z_TYPE])
def test_red_and_green_loops_multiply_to_blue(op_type):
    code = CodeService.build_code(COLOR, HONEYCOMB, 3, 3)
    loops = LatticeService.nontrivial_loops(code.lattice, code.coloring, colors=(RED, GREEN, BLUE))
    carriers = {(loop.color, loop.direction): loop.carrier for loop in loops}
    stabilizers = [g.symplectic() for _, _, g in code.generators]

    def loop_operator(color, direction):
        sites = carriers[(color, direction)]
        if op_type == X_TYPE:
            return pauli_from_supports(code.n, x_sites=sites)
        return pauli_from_supports(code.n, z_sites=sites)

    for direction in (0, 1):
        red_green = multiply(loop_operator(RED, direction), loop_operator(GREEN, direction))
        blue = loop_operator(BLUE, direction)
        with_blue = Gf2Matrix.from_rows(stabilizers + [blue.symplectic()], 2 * code.n)
        assert with_blue.row_space_contains(red_green.symplectic())
        assert not CodeService.in_stabilizer_group(code, red_green)
