from topoising.services.lattice_service import LatticeService
from topoising.services.code_service import CodeService
from topoising.services.hamiltonian_service import HamiltonianService
from topoising.services.mapping_service import MappingService
from topoising.services.spectrum_service import SpectrumService
from topoising.services.critical_service import CriticalService

__all__ = [
    'LatticeService', 'CodeService', 'HamiltonianService',
    'MappingService', 'SpectrumService', 'CriticalService',
]
