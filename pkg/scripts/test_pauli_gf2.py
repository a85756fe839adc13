"""
Tests for Pauli strings and GF(2) linear algebra
"""
import sys
import os
import random

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from topoising.constants import HONEYCOMB, RED, GREEN, BLUE
from topoising.exceptions import InvalidArgument, PauliMismatch
from topoising.models.pauli import PauliString, commutes, identity, multiply, pauli_from_supports, product
from topoising.services.code_service import CodeService
from topoising.utils.gf2 import Gf2Matrix, gf2_nullspace, gf2_rank, span_elements


def random_pauli(rng, n):
    return PauliString(n, rng.getrandbits(n), rng.getrandbits(n), rng.choice((1, -1)))


def random_matrix(rng, rows, cols):
    return Gf2Matrix.from_rows([rng.getrandbits(cols) for _ in range(rows)], cols)


def test_pauli_from_supports_examples():
    xxx = pauli_from_supports(3, x_sites={0, 1, 2})
    assert xxx.x_sites == [0, 1, 2] and xxx.z_sites == [] and xxx.sign == 1
    assert xxx.label() == '+XXX'

    assert pauli_from_supports(2).is_identity
    assert pauli_from_supports(2) == identity(2)

    plaquette = pauli_from_supports(6, x_sites=range(6))
    assert plaquette.weight == 6


def test_pauli_from_supports_rejects_out_of_range_site():
    with pytest.raises(InvalidArgument):
        pauli_from_supports(3, z_sites=[3])


def test_commutes_single_site_and_even_overlap():
    x0 = pauli_from_supports(2, x_sites=[0])
    z0 = pauli_from_supports(2, z_sites=[0])
    assert not commutes(x0, z0)
    assert commutes(pauli_from_supports(2, x_sites=[0, 1]), pauli_from_supports(2, z_sites=[0, 1]))


def test_size_mismatch_raises():
    with pytest.raises(PauliMismatch):
        commutes(identity(2), identity(3))
    with pytest.raises(PauliMismatch):
        multiply(identity(2), identity(3))


def test_multiply_sign_follows_normal_ordering():
    x0 = pauli_from_supports(2, x_sites=[0])
    z0 = pauli_from_supports(2, z_sites=[0])
    xz = multiply(x0, z0)
    assert (xz.x, xz.z, xz.sign) == (1, 1, 1)
    zx = multiply(z0, x0)
    assert (zx.x, zx.z, zx.sign) == (1, 1, -1)


def test_x_type_operator_squares_to_identity():
    rng = random.Random(7)
    for _ in range(20):
        p = PauliString(10, rng.getrandbits(10), 0, 1)
        square = p * p
        assert square.is_identity and square.sign == 1


def test_color_code_generators_commute_on_honeycomb():
    code = CodeService.build_code('color', HONEYCOMB, 3, 3)
    for px in code.x_generators:
        for pz in code.z_generators:
            assert commutes(px, pz)


def test_color_products_agree_across_colors():
    code = CodeService.build_code('color', HONEYCOMB, 3, 3)
    by_color = {c: product([code.x_generators[f] for f in code.coloring.faces_with(c)], code.n)
                for c in (RED, GREEN, BLUE)}
    everywhere = pauli_from_supports(code.n, x_sites=range(code.n))
    for op in by_color.values():
        assert (op.x, op.z, op.sign) == (everywhere.x, everywhere.z, 1)
    assert multiply(by_color[RED], by_color[GREEN]).is_identity


def test_commutation_properties_on_random_operators():
    rng = random.Random(11)
    for _ in range(200):
        a, b, c = (random_pauli(rng, 12) for _ in range(3))
        assert commutes(a, b) == commutes(b, a)
        # anticommutation parities add
        assert commutes(a, multiply(b, c)) == (commutes(a, b) == commutes(a, c))
        left = multiply(multiply(a, b), c)
        right = multiply(a, multiply(b, c))
        assert (left.x, left.z, left.sign) == (right.x, right.z, right.sign)


def test_rank_examples():
    assert gf2_rank(Gf2Matrix.identity(4)) == 4
    color = CodeService.build_code('color', HONEYCOMB, 3, 3)
    assert len(color.generators) == 18
    assert gf2_rank(color.symplectic_matrix) == 14
    toric = CodeService.build_code('toric', HONEYCOMB, 2, 3)
    assert (toric.n, len(toric.x_generators), len(toric.z_generators)) == (18, 12, 6)
    assert gf2_rank(toric.symplectic_matrix) == 16


def test_rank_equals_transpose_rank():
    rng = random.Random(3)
    for _ in range(50):
        m = random_matrix(rng, rng.randint(1, 12), rng.randint(1, 12))
        assert m.rank() == m.transpose().rank()


def test_nullspace_examples():
    assert gf2_nullspace(Gf2Matrix.identity(3)) == []
    assert gf2_nullspace(Gf2Matrix.from_dense([[1, 1]])) == [0b11]


def test_nullspace_vectors_are_annihilated():
    rng = random.Random(5)
    for _ in range(50):
        m = random_matrix(rng, rng.randint(1, 10), rng.randint(1, 14))
        kernel = m.nullspace()
        assert len(kernel) == m.cols - m.rank()
        for v in kernel:
            assert m.multiply_vector(v) == 0


def test_toric_code_has_four_logical_classes():
    code = CodeService.build_code('toric', HONEYCOMB, 2, 3)
    n = code.n
    # swapping the halves turns M v into the symplectic product with each generator
    swapped = [(g.z) | (g.x << n) for _, _, g in code.generators]
    centralizer = Gf2Matrix.from_rows(swapped, 2 * n).nullspace()
    assert len(centralizer) == 2 * n - 16
    stabilizer_rank = code.symplectic_matrix.rank()
    combined = Gf2Matrix.from_rows([g.symplectic() for _, _, g in code.generators] + centralizer, 2 * n)
    assert combined.rank() - stabilizer_rank == 4


def test_solve_and_row_space():
    m = Gf2Matrix.from_dense([[1, 1, 0], [0, 1, 1]])
    x = m.solve(0b11)
    assert x is not None and m.multiply_vector(x) == 0b11
    assert m.row_space_contains(0b101)
    assert not m.row_space_contains(0b001)
    inconsistent = Gf2Matrix.from_dense([[1, 0], [1, 0]])
    assert inconsistent.solve(0b01) is None


def test_span_elements_doubles():
    elements = span_elements([0b01, 0b10], offset=0b100)
    assert sorted(elements) == [0b100, 0b101, 0b110, 0b111]


def test_matrix_rejects_wide_rows():
    with pytest.raises(InvalidArgument):
        Gf2Matrix.from_rows([0b100], 2)
