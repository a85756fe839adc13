"""Spectrum requests, results and equivalence reports."""
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from topoising.constants import METHOD_AUTO
from topoising.exceptions import InvalidArgument
from topoising.models.hamiltonian import CouplingParams, HamiltonianTerms
from topoising.models.pauli import PauliString


@dataclass(frozen=True)
class SectorProjector:
    """Projector (1 + eigenvalue * operator) / 2."""
    operator: PauliString
    eigenvalue: int = 1

    def __post_init__(self):
        if self.eigenvalue not in (1, -1):
            raise InvalidArgument(f"sector eigenvalue must be +1 or -1, got {self.eigenvalue}")
        if not self.operator.is_hermitian:
            raise InvalidArgument("sector operator must be Hermitian")

    @property
    def is_diagonal(self) -> bool:
        return self.operator.x == 0

    def to_dict(self):
        return {**self.operator.to_dict(), 'eigenvalue': self.eigenvalue}


@dataclass(frozen=True)
class SpectrumRequest:
    hamiltonian: HamiltonianTerms
    num_eigenvalues: int
    sector: Tuple[SectorProjector, ...] = ()
    method: str = METHOD_AUTO
    return_vectors: bool = False
    # diagonal operators whose joint eigenvalues split the space into blocks
    symmetries: Tuple[PauliString, ...] = ()

    def __post_init__(self):
        if self.num_eigenvalues < 1:
            raise InvalidArgument("num_eigenvalues must be at least 1")


@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray
    method: str
    dimension: int
    vectors: Optional[np.ndarray] = None
    basis: Optional[np.ndarray] = None
    residuals: Optional[np.ndarray] = None
    sector: Tuple[SectorProjector, ...] = ()

    def to_dict(self, model: str = '', couplings: Optional[CouplingParams] = None) -> dict:
        data = {
            'model': model,
            'couplings': couplings.to_dict() if couplings else None,
            'sector': [p.to_dict() for p in self.sector],
            'method': self.method,
            'dimension': self.dimension,
            'eigenvalues': [float(e) for e in self.eigenvalues],
        }
        if self.residuals is not None:
            data['residuals'] = [float(r) for r in self.residuals]
        return data


@dataclass(frozen=True)
class LevelMatch:
    virtual: float
    real: Optional[float]
    delta: float

    def to_dict(self):
        return {'virtual': self.virtual, 'real': self.real, 'delta': self.delta}


@dataclass(frozen=True)
class EquivalenceReport:
    code_id: str
    couplings: CouplingParams
    E0_real: float
    E0_virtual_plus_offset: float
    low_spectrum_match: Tuple[LevelMatch, ...]
    verdict: bool
    tolerance: float
    unmatched_real: Tuple[float, ...] = field(default_factory=tuple)

    def to_dict(self):
        return {
            'code': self.code_id,
            'couplings': self.couplings.to_dict(),
            'E0_real': self.E0_real,
            'E0_virtual_plus_offset': self.E0_virtual_plus_offset,
            'low_spectrum_match': [m.to_dict() for m in self.low_spectrum_match],
            'unmatched_real': list(self.unmatched_real),
            'verdict': self.verdict,
            'tolerance': self.tolerance,
        }


@dataclass(frozen=True)
class SplittingReport:
    spread: float
    gap: float
    levels: Tuple[float, ...]

    def to_dict(self):
        return {'spread': self.spread, 'gap': self.gap, 'levels': list(self.levels)}
