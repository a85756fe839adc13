"""Stabilizer code models."""
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Tuple

from topoising.constants import X_TYPE, Z_TYPE
from topoising.models.lattice import FaceColoring, Shift, TorusLattice
from topoising.models.pauli import PauliString
from topoising.utils.gf2 import Gf2Matrix

Origin = Tuple[str, int]


@dataclass(frozen=True)
class StabilizerCode:
    """
    CSS stabilizer code on a periodic lattice.

    Generators are ordered faces first, then vertices. `x_site_shifts[g]`
    maps each site of X generator g to its unwrapped cell relative to the
    generator's cell (`x_cells[g]`).
    """
    kind: str
    n: int
    placement: str
    x_generators: Tuple[PauliString, ...]
    z_generators: Tuple[PauliString, ...]
    x_origins: Tuple[Origin, ...]
    z_origins: Tuple[Origin, ...]
    x_cells: Tuple[Shift, ...]
    x_site_shifts: Tuple[Tuple[Tuple[int, Shift], ...], ...]
    lattice: TorusLattice
    coloring: Optional[FaceColoring] = None

    @cached_property
    def generators(self) -> List[Tuple[str, Origin, PauliString]]:
        """All generators as (type, origin, operator), face-based first."""
        xs = [(X_TYPE, o, g) for o, g in zip(self.x_origins, self.x_generators)]
        zs = [(Z_TYPE, o, g) for o, g in zip(self.z_origins, self.z_generators)]
        faces = [item for item in xs + zs if item[1][0] == 'face']
        vertices = [item for item in xs + zs if item[1][0] == 'vertex']
        return faces + vertices

    @cached_property
    def symplectic_matrix(self) -> Gf2Matrix:
        return Gf2Matrix.from_rows([g.symplectic() for _, _, g in self.generators], 2 * self.n)

    @cached_property
    def x_site_index(self) -> Tuple[Tuple[int, ...], ...]:
        """X generators containing each site."""
        found: List[List[int]] = [[] for _ in range(self.n)]
        for g, op in enumerate(self.x_generators):
            for site in op.x_sites:
                found[site].append(g)
        return tuple(tuple(items) for items in found)

    def x_site_shift(self, generator: int, site: int) -> Shift:
        for s, shift in self.x_site_shifts[generator]:
            if s == site:
                return shift
        raise KeyError(f"site {site} not in X generator {generator}")

    def identifier(self) -> str:
        return f'{self.kind}/{self.lattice.kind}/{self.lattice.L1}x{self.lattice.L2}'

    def to_dict(self) -> dict:
        return {
            'id': self.identifier(),
            'n': self.n,
            'placement': self.placement,
            'generators': [
                {
                    'type': gtype,
                    'origin': {'kind': origin[0], 'id': origin[1]},
                    'x_support': op.x_sites,
                    'z_support': op.z_sites,
                }
                for gtype, origin, op in self.generators
            ],
        }

    def __repr__(self):
        return f'<StabilizerCode {self.identifier()} n={self.n}>'


@dataclass(frozen=True)
class LogicalOperator:
    operator: PauliString
    type: str
    direction: int
    color: Optional[str] = None

    def name(self) -> str:
        color = f'{self.color}:' if self.color else ''
        return f'L[{color}{self.direction}]_{"x" if self.type == X_TYPE else "z"}'

    def to_dict(self):
        return {
            'name': self.name(),
            'type': self.type,
            'direction': self.direction,
            'color': self.color,
            'support': self.operator.x_sites if self.type == X_TYPE else self.operator.z_sites,
        }


@dataclass(frozen=True)
class LogicalOperatorSet:
    operators: Tuple[LogicalOperator, ...]
    pairing: Tuple[Tuple[int, int], ...]

    def of_type(self, op_type: str) -> List[LogicalOperator]:
        return [op for op in self.operators if op.type == op_type]

    def find(self, op_type: str, direction: int, color: Optional[str] = None) -> int:
        for i, op in enumerate(self.operators):
            if op.type == op_type and op.direction == direction and op.color == color:
                return i
        raise KeyError(f"no {op_type} logical for direction {direction} color {color}")

    def named_pairs(self) -> List[Tuple[str, str]]:
        return [(self.operators[a].name(), self.operators[b].name()) for a, b in self.pairing]

    def to_dict(self):
        return {
            'operators': [op.to_dict() for op in self.operators],
            'pairing': [list(p) for p in self.pairing],
        }
