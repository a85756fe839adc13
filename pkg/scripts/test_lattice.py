"""
Tests for lattice construction, colorings and loops
"""
import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from topoising.constants import (
    BLUE, GREEN, HONEYCOMB, LATTICE_KINDS, PATTERN_MEDIAL, PATTERN_VERTEX, RED, SQUARE,
    SQUARE_OCTAGONAL, TRIANGULAR,
)
from topoising.exceptions import ColoringRequired, InvalidArgument, InvalidColoring, NotThreeColorable
from topoising.models.lattice import FaceColoring
from topoising.services.lattice_service import LatticeService

PER_CELL = {
    HONEYCOMB: (2, 3, 1),
    SQUARE: (1, 2, 1),
    TRIANGULAR: (1, 3, 2),
    SQUARE_OCTAGONAL: (4, 6, 2),
}


@pytest.mark.parametrize('kind', LATTICE_KINDS)
def test_counts_per_unit_cell_and_euler(kind):
    lat = LatticeService.build_lattice(kind, 3, 4)
    v, e, f = PER_CELL[kind]
    assert (len(lat.vertices), len(lat.edges), len(lat.faces)) == (12 * v, 12 * e, 12 * f)
    assert lat.euler_characteristic() == 0


@pytest.mark.parametrize('kind', LATTICE_KINDS)
def test_every_edge_bounds_two_faces(kind):
    lat = LatticeService.build_lattice(kind, 3, 3)
    assert all(len(faces) == 2 for faces in lat.faces_of_edge)


def test_square_three_by_three():
    lat = LatticeService.build_lattice(SQUARE, 3, 3)
    assert (len(lat.vertices), len(lat.edges), len(lat.faces)) == (9, 18, 9)


def test_build_rejects_bad_input():
    with pytest.raises(InvalidArgument):
        LatticeService.build_lattice('kagome', 3, 3)
    with pytest.raises(InvalidArgument):
        LatticeService.build_lattice(HONEYCOMB, 1, 3)


def test_face_corners_close_up():
    lat = LatticeService.build_lattice(HONEYCOMB, 3, 3)
    for face in lat.faces:
        assert face.size == 6
        for k, eid in enumerate(face.edge_ids):
            edge = lat.edges[eid]
            ends = {face.vertex_ids[k], face.vertex_ids[(k + 1) % face.size]}
            assert ends == {edge.u, edge.v}


def test_honeycomb_three_by_three_coloring():
    lat = LatticeService.build_lattice(HONEYCOMB, 3, 3)
    fc = LatticeService.three_color_faces(lat)
    assert fc.counts() == {RED: 3, GREEN: 3, BLUE: 3}
    assert fc.colors[0] == RED
    for faces in lat.faces_of_vertex:
        assert len({fc.colors[f] for f, _ in faces}) == 3


def test_honeycomb_two_by_two_is_not_colorable():
    lat = LatticeService.build_lattice(HONEYCOMB, 2, 2)
    with pytest.raises(NotThreeColorable) as excinfo:
        LatticeService.three_color_faces(lat)
    assert (excinfo.value.kind, excinfo.value.L1, excinfo.value.L2) == (HONEYCOMB, 2, 2)


def test_square_octagonal_coloring_puts_squares_in_one_color():
    lat = LatticeService.build_lattice(SQUARE_OCTAGONAL, 4, 4)
    fc = LatticeService.three_color_faces(lat)
    square_colors = {fc.colors[f.id] for f in lat.faces if f.size == 4}
    octagon_colors = {fc.colors[f.id] for f in lat.faces if f.size == 8}
    assert len(square_colors) == 1
    assert len(octagon_colors) == 2 and not square_colors & octagon_colors
    assert sorted(fc.counts().values()) == [8, 8, 16]


def test_square_octagonal_odd_size_is_not_colorable():
    with pytest.raises(NotThreeColorable):
        LatticeService.three_color_faces(LatticeService.build_lattice(SQUARE_OCTAGONAL, 3, 3))


def test_edge_colors_match_the_faces_they_connect():
    lat = LatticeService.build_lattice(HONEYCOMB, 3, 3)
    fc = LatticeService.three_color_faces(lat)
    ec = LatticeService.color_edges(lat, fc)
    for edge in lat.edges:
        touching = {f for f, _ in lat.faces_of_vertex[edge.u]} ^ {f for f, _ in lat.faces_of_vertex[edge.v]}
        assert len(touching) == 2
        assert {fc.colors[f] for f in touching} == {ec.colors[edge.id]}


def test_validate_coloring_errors():
    lat = LatticeService.build_lattice(HONEYCOMB, 3, 3)
    with pytest.raises(ColoringRequired):
        LatticeService.validate_coloring(lat, None)
    with pytest.raises(InvalidColoring):
        LatticeService.validate_coloring(lat, FaceColoring((RED,) * len(lat.faces)))


@pytest.mark.parametrize('kind,size', [(HONEYCOMB, (2, 3)), (SQUARE, (3, 3)), (TRIANGULAR, (3, 4))])
def test_uncolored_loops_wind_once(kind, size):
    lat = LatticeService.build_lattice(kind, *size)
    loops = LatticeService.nontrivial_loops(lat)
    assert [(l.kind, l.direction) for l in loops] == [('primal', 0), ('primal', 1), ('dual', 0), ('dual', 1)]
    for loop in loops:
        assert LatticeService.winding_audit(loop)
        assert LatticeService.loop_overlap_audit(lat, loop)
        assert loop.carrier


def test_colored_loops_on_color_code_lattice():
    lat = LatticeService.build_lattice(HONEYCOMB, 3, 3)
    fc = LatticeService.three_color_faces(lat)
    loops = LatticeService.nontrivial_loops(lat, fc)
    assert [(l.color, l.direction) for l in loops] == [(RED, 0), (RED, 1), (GREEN, 0), (GREEN, 1)]
    for loop in loops:
        assert loop.kind == 'colored'
        assert LatticeService.winding_audit(loop)
        assert LatticeService.loop_overlap_audit(lat, loop)


def test_colored_loops_need_coloring():
    lat = LatticeService.build_lattice(HONEYCOMB, 3, 3)
    with pytest.raises(ColoringRequired):
        LatticeService.nontrivial_loops(lat, colored=True)


def test_adjacent_edge_pair_patterns():
    tri = LatticeService.build_lattice(TRIANGULAR, 3, 3)
    assert len(LatticeService.adjacent_edge_pairs(tri, PATTERN_VERTEX)) == 135
    assert len(LatticeService.adjacent_edge_pairs(tri, PATTERN_MEDIAL)) == 54
    hexagonal = LatticeService.build_lattice(HONEYCOMB, 2, 3)
    vertex_pairs = LatticeService.adjacent_edge_pairs(hexagonal, PATTERN_VERTEX)
    medial_pairs = LatticeService.adjacent_edge_pairs(hexagonal, PATTERN_MEDIAL)
    assert len(vertex_pairs) == 36
    assert vertex_pairs == medial_pairs
    with pytest.raises(InvalidArgument):
        LatticeService.adjacent_edge_pairs(hexagonal, 'diagonal')


def test_to_dict_includes_colors():
    lat = LatticeService.build_lattice(HONEYCOMB, 3, 3)
    fc = LatticeService.three_color_faces(lat)
    data = lat.to_dict(fc, LatticeService.color_edges(lat, fc))
    assert data['kind'] == HONEYCOMB and len(data['faces']) == 9
    assert all('color' in e for e in data['edges'])
