"""
Hamiltonian models
Coupling parameters, Ising bond sets and coefficient-weighted Pauli term lists.
"""
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from topoising.exceptions import InvalidArgument
from topoising.models.lattice import Shift
from topoising.models.pauli import PauliString


@dataclass(frozen=True)
class CouplingParams:
    J: float
    K: float

    def __post_init__(self):
        for name, value in (('J', self.J), ('K', self.K)):
            if not math.isfinite(value) or value < 0:
                raise InvalidArgument(f"{name} must be finite and non-negative, got {value}")
        if self.J == 0 and self.K == 0:
            raise InvalidArgument("J and K cannot both be zero")

    def to_dict(self):
        return {'J': self.J, 'K': self.K}


@dataclass(frozen=True)
class Bond:
    """Ising bond Z_i Z_j; `shift` is j's unwrapped cell relative to i's."""
    i: int
    j: int
    origin: Tuple[str, int]
    shift: Shift = (0, 0)

    def to_dict(self):
        return {'sites': [self.i, self.j], 'origin': {'kind': self.origin[0], 'id': self.origin[1]}}


@dataclass(frozen=True)
class BondSet:
    n: int
    bonds: Tuple[Bond, ...]
    pattern: Optional[str] = None

    def __post_init__(self):
        for b in self.bonds:
            if b.i == b.j:
                raise InvalidArgument(f"bond on a single site {b.i}")
            if not (0 <= b.i < self.n and 0 <= b.j < self.n):
                raise InvalidArgument(f"bond ({b.i}, {b.j}) outside {self.n} sites")

    def __len__(self):
        return len(self.bonds)

    def __iter__(self):
        return iter(self.bonds)

    def to_dict(self):
        return {'n': self.n, 'pattern': self.pattern, 'bonds': [b.to_dict() for b in self.bonds]}


@dataclass(frozen=True)
class HamiltonianTerms:
    """
    H = sum of coefficient * operator.

    Built through `from_terms`, which folds operator signs into the
    coefficients, merges repeated operators and drops zero coefficients.
    """
    n: int
    terms: Tuple[Tuple[float, PauliString], ...]

    def __post_init__(self):
        seen = set()
        for coeff, op in self.terms:
            if op.n != self.n:
                raise InvalidArgument(f"term acts on {op.n} qubits, expected {self.n}")
            if not op.is_hermitian:
                raise InvalidArgument(f"term {op!r} is not Hermitian")
            key = (op.x, op.z)
            if key in seen:
                raise InvalidArgument(f"duplicate operator {op!r}; aggregate with from_terms")
            seen.add(key)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Tuple[float, PauliString]]) -> 'HamiltonianTerms':
        order: List[Tuple[int, int]] = []
        coeffs: Dict[Tuple[int, int], float] = {}
        for coeff, op in terms:
            key = (op.x, op.z)
            if key not in coeffs:
                order.append(key)
                coeffs[key] = 0.0
            coeffs[key] += float(coeff) * op.sign
        return cls(n, tuple(
            (coeffs[key], PauliString(n, key[0], key[1], 1))
            for key in order if coeffs[key] != 0.0
        ))

    def __len__(self):
        return len(self.terms)

    @property
    def offset(self) -> float:
        """Coefficient of the identity term."""
        for coeff, op in self.terms:
            if op.is_identity:
                return coeff
        return 0.0

    def coefficient_of(self, op: PauliString) -> float:
        for coeff, term in self.terms:
            if term.x == op.x and term.z == op.z:
                return coeff * op.sign
        return 0.0

    def norm_bound(self) -> float:
        """Upper bound on the spectral radius."""
        return sum(abs(c) for c, _ in self.terms)

    def diagonal_energy(self, bits: int) -> float:
        """<b|H|b> for a computational basis state."""
        energy = 0.0
        for coeff, op in self.terms:
            if op.x == 0:
                energy += coeff * (-1 if (bits & op.z).bit_count() & 1 else 1)
        return energy

    def to_dict(self):
        return {
            'n': self.n,
            'terms': [{'coeff': c, 'x_support': op.x_sites, 'z_support': op.z_sites} for c, op in self.terms],
        }

    def __repr__(self):
        return f'<HamiltonianTerms n={self.n} terms={len(self.terms)}>'
