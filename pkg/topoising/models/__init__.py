"""
Domain models
Immutable value types shared by the services.
"""

from .pauli import PauliString, pauli_from_supports, commutes, multiply, identity
from .lattice import TorusLattice, FaceColoring, EdgeColoring, LoopPath
from .code import StabilizerCode, LogicalOperator, LogicalOperatorSet
from .hamiltonian import CouplingParams, Bond, BondSet, HamiltonianTerms
from .virtual_model import VirtualIsingModel, VirtualSpin, VirtualBond, ComponentLabel
from .spectrum import SectorProjector, SpectrumRequest, SpectrumResult, EquivalenceReport
from .critical import TransitionReport, TableRow, ScanResult

__all__ = [
    'PauliString', 'pauli_from_supports', 'commutes', 'multiply', 'identity',
    'TorusLattice', 'FaceColoring', 'EdgeColoring', 'LoopPath',
    'StabilizerCode', 'LogicalOperator', 'LogicalOperatorSet',
    'CouplingParams', 'Bond', 'BondSet', 'HamiltonianTerms',
    'VirtualIsingModel', 'VirtualSpin', 'VirtualBond', 'ComponentLabel',
    'SectorProjector', 'SpectrumRequest', 'SpectrumResult', 'EquivalenceReport',
    'TransitionReport', 'TableRow', 'ScanResult',
]
