"""
Shared constants
Lattice kinds, colors and export schema identifiers.
"""

SCHEMA_VERSION = 'topoising/v1'

HONEYCOMB = 'honeycomb'
SQUARE = 'square'
TRIANGULAR = 'triangular'
SQUARE_OCTAGONAL = 'square_octagonal'

LATTICE_KINDS = (HONEYCOMB, SQUARE, TRIANGULAR, SQUARE_OCTAGONAL)

RED = 'red'
GREEN = 'green'
BLUE = 'blue'

# Order matters: backtracking tries colors in this order.
COLORS = (RED, GREEN, BLUE)

TORIC = 'toric'
COLOR = 'color'
CODE_KINDS = (TORIC, COLOR)

ON_EDGES = 'on_edges'
ON_VERTICES = 'on_vertices'

X_TYPE = 'x_type'
Z_TYPE = 'z_type'

# Ising bond patterns for edge-dwelling spins
PATTERN_VERTEX = 'vertex'
PATTERN_MEDIAL = 'medial'

LABEL_TRIANGULAR = 'triangular'
LABEL_SQUARE = 'square'
LABEL_OTHER = 'other'

# Components below this size get a wrap-around caveat
SMALL_COMPONENT_SPINS = 9

SECTOR_FULL = 'full'
SECTOR_CONSTRAINED = 'constrained'
SECTOR_EVEN = 'even'

METHOD_AUTO = 'auto'
METHOD_DENSE = 'dense'
METHOD_ITERATIVE = 'iterative'
