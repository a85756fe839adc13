"""
Unit-cell templates for the periodic lattices.

Edge templates are (role_u, role_v, shift of v's cell); face templates list
their corners in cyclic order as (role, shift of the corner's cell).
"""
from topoising.constants import HONEYCOMB, SQUARE, SQUARE_OCTAGONAL, TRIANGULAR
from topoising.models.lattice import UnitCell

# Honeycomb: A = 0, B = 1. B(i,j) bonds to A(i,j), A(i+1,j), A(i,j+1).
HONEYCOMB_CELL = UnitCell(
    vertex_roles=2,
    edge_templates=(
        (0, 1, (0, 0)),
        (1, 0, (1, 0)),
        (1, 0, (0, 1)),
    ),
    face_templates=(
        ((1, (0, 0)), (0, (1, 0)), (1, (1, 0)), (0, (1, 1)), (1, (0, 1)), (0, (0, 1))),
    ),
)

SQUARE_CELL = UnitCell(
    vertex_roles=1,
    edge_templates=(
        (0, 0, (1, 0)),
        (0, 0, (0, 1)),
    ),
    face_templates=(
        ((0, (0, 0)), (0, (1, 0)), (0, (1, 1)), (0, (0, 1))),
    ),
)

TRIANGULAR_CELL = UnitCell(
    vertex_roles=1,
    edge_templates=(
        (0, 0, (1, 0)),
        (0, 0, (0, 1)),
        (0, 0, (-1, 1)),
    ),
    face_templates=(
        ((0, (0, 0)), (0, (1, 0)), (0, (0, 1))),   # up
        ((0, (1, 0)), (0, (1, 1)), (0, (0, 1))),   # down
    ),
)

# Square-octagonal: E = 0, N = 1, W = 2, S = 3 around a small square per cell.
# Octagon (role 0) sits between four cells, the square (role 1) inside one.
SQUARE_OCTAGONAL_CELL = UnitCell(
    vertex_roles=4,
    edge_templates=(
        (0, 1, (0, 0)),
        (1, 2, (0, 0)),
        (2, 3, (0, 0)),
        (3, 0, (0, 0)),
        (0, 2, (1, 0)),
        (1, 3, (0, 1)),
    ),
    face_templates=(
        ((0, (0, 0)), (1, (0, 0)), (3, (0, 1)), (0, (0, 1)),
         (2, (1, 1)), (3, (1, 1)), (1, (1, 0)), (2, (1, 0))),
        ((0, (0, 0)), (1, (0, 0)), (2, (0, 0)), (3, (0, 0))),
    ),
)

UNIT_CELLS = {
    HONEYCOMB: HONEYCOMB_CELL,
    SQUARE: SQUARE_CELL,
    TRIANGULAR: TRIANGULAR_CELL,
    SQUARE_OCTAGONAL: SQUARE_OCTAGONAL_CELL,
}

# Faces of this role are squares; the rest are octagons.
SQUARE_OCTAGONAL_SQUARE_ROLE = 1
