"""
Critical points of the uniform transverse-field Ising model, H = -J sum Z - K sum XX.
x_c is the critical J/K. Values are the rounded literature figures used for
the transition table; the precise set is opt-in.
"""
from topoising.constants import COLOR, HONEYCOMB, SQUARE, SQUARE_OCTAGONAL, TORIC, TRIANGULAR

CRITICAL_POINTS = [
    {"lattice": "triangular", "x_c": 4.77, "source": "known TFIM result, rounded"},
    {"lattice": "square", "x_c": 3.0, "source": "known TFIM result, rounded"},
]

PRECISE_CRITICAL_POINTS = [
    {"lattice": "triangular", "x_c": 4.768, "source": "quantum Monte Carlo literature value"},
    {"lattice": "square", "x_c": 3.044, "source": "quantum Monte Carlo literature value"},
]

# Rows taken as a whole from the literature instead of a derived mapping.
# ratio is the critical K/J of the perturbed code.
DIRECT_TRANSITIONS = [
    {"code": TORIC, "lattice": SQUARE, "mapped": "square", "ratio": 1 / 6,
     "source": "toric code with Ising perturbation on the square lattice, J/K = 6"},
]

# Transition table rows in display order
TABLE_ROWS = [
    (COLOR, HONEYCOMB),
    (COLOR, SQUARE_OCTAGONAL),
    (TORIC, SQUARE),
    (TORIC, HONEYCOMB),
    (TORIC, TRIANGULAR),
]

# Face 3-colorings exist only for honeycomb sizes divisible by 3 and even
# square-octagonal sizes
TABLE_SIZE_STEPS = {
    (COLOR, HONEYCOMB): 3,
    (COLOR, SQUARE_OCTAGONAL): 2,
}


def get_direct_transition(code, lattice):
    for entry in DIRECT_TRANSITIONS:
        if entry["code"] == code and entry["lattice"] == lattice:
            return entry
    return None


def get_table_size(code, lattice, size):
    """Smallest size at or above `size` that the row's lattice can be colored at."""
    step = TABLE_SIZE_STEPS.get((code, lattice), 1)
    return -(-size // step) * step
