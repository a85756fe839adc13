"""
Critical Service
Transition ratios of perturbed codes from their virtual models and the
critical-point registry, the transition table, and finite-size fidelity
susceptibility and gap scans on the virtual side.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from topoising.constants import (
    LABEL_SQUARE, LABEL_TRIANGULAR, SECTOR_CONSTRAINED, SECTOR_EVEN, SECTOR_FULL,
)
from topoising.data.critical_registry import (
    CRITICAL_POINTS, PRECISE_CRITICAL_POINTS, TABLE_ROWS, get_direct_transition, get_table_size,
)
from topoising.exceptions import (
    GridTooCoarse, InvalidArgument, NonUniformMultiplicity, UnclassifiableComponent,
)
from topoising.models.critical import (
    ComponentTransition, CriticalRegistryEntry, ScanPoint, ScanResult, TableRow, TransitionReport,
)
from topoising.models.hamiltonian import CouplingParams
from topoising.models.pauli import pauli_from_supports
from topoising.models.spectrum import SectorProjector, SpectrumRequest
from topoising.models.virtual_model import VirtualIsingModel
from topoising.services.code_service import CodeService
from topoising.services.hamiltonian_service import HamiltonianService
from topoising.services.mapping_service import MappingService
from topoising.services.spectrum_service import SpectrumService
from topoising.utils.settings import get_setting, with_app_context, worker_count

logger = logging.getLogger(__name__)

VARIABLE_J_OVER_K = 'J/K'
VARIABLE_K_OVER_J = 'K/J'
DEGENERACY_TOL = 1e-8
ZERO_SUSCEPTIBILITY = 1e-12


class CriticalService:

    @staticmethod
    def _precise(precise: Optional[bool]) -> bool:
        return bool(get_setting('TOPOISING_PRECISE_CRITICAL', False)) if precise is None else precise

    @staticmethod
    def registry(precise: Optional[bool] = None) -> List[CriticalRegistryEntry]:
        source = PRECISE_CRITICAL_POINTS if CriticalService._precise(precise) else CRITICAL_POINTS
        return [CriticalRegistryEntry(e['lattice'], e['x_c'], e['source']) for e in source]

    @staticmethod
    def lookup(label: str, precise: Optional[bool] = None) -> CriticalRegistryEntry:
        for entry in CriticalService.registry(precise):
            if entry.lattice == label:
                return entry
        raise UnclassifiableComponent(f"no critical value registered for {label} lattice")

    @staticmethod
    def transition_ratio(vm: VirtualIsingModel, precise: Optional[bool] = None) -> TransitionReport:
        """
        Critical K/J per component, 1 / (m * x_c), with the first and full transitions.

        Raises:
            UnclassifiableComponent: a component is neither triangular nor square
            NonUniformMultiplicity: bond multiplicities differ inside a component
        """
        labels = vm.labels or MappingService.with_labels(vm).labels
        components = []
        for idx, label in enumerate(labels):
            if label.label not in (LABEL_TRIANGULAR, LABEL_SQUARE):
                raise UnclassifiableComponent(
                    f"component {idx} of {vm.code_id} is classified '{label.label}'", component=idx)
            multiplicities = vm.multiplicities_in(idx)
            if len(multiplicities) != 1:
                raise NonUniformMultiplicity(
                    f"component {idx} of {vm.code_id} mixes multiplicities {multiplicities}", component=idx)
            m = multiplicities[0]
            x_c = CriticalService.lookup(label.label, precise).x_c
            components.append(ComponentTransition(idx, label.label, m, 1.0 / (m * x_c)))
        if not components:
            raise UnclassifiableComponent(f"{vm.code_id} has no components")
        ratios = [c.ratio for c in components]
        return TransitionReport(tuple(components), min(ratios), max(ratios))

    @staticmethod
    def emit_table(precise: Optional[bool] = None, size: Optional[int] = None) -> List[TableRow]:
        """
        Transition table: derived rows through the mapping, direct rows from the registry.

        Each derived row is built at `size`, rounded up to a size its lattice
        admits a face 3-coloring at.
        """
        size = size or get_setting('TABLE_SIZE', 6)
        rows = []
        for code_kind, lattice_kind in TABLE_ROWS:
            direct = get_direct_transition(code_kind, lattice_kind)
            if direct is not None:
                rows.append(TableRow(code_kind, lattice_kind, direct['mapped'], direct['ratio'],
                                     direct['ratio'], direct['source']))
                continue
            row_size = get_table_size(code_kind, lattice_kind, size)
            code = CodeService.build_code(code_kind, lattice_kind, row_size, row_size)
            vm = MappingService.derive_virtual_model(code, HamiltonianService.ising_bonds(code))
            report = CriticalService.transition_ratio(vm, precise)
            mapped = ', '.join(sorted({c.label for c in report.components}))
            rows.append(TableRow(code_kind, lattice_kind, mapped, report.full_transition,
                                 report.first_transition, f'derived at {row_size}x{row_size}'))
        return rows

    @staticmethod
    def _couplings(variable: str, value: float) -> CouplingParams:
        if variable == VARIABLE_J_OVER_K:
            return CouplingParams(J=value, K=1.0)
        if variable == VARIABLE_K_OVER_J:
            return CouplingParams(J=1.0, K=value)
        raise InvalidArgument(f"scan variable must be '{VARIABLE_J_OVER_K}' or '{VARIABLE_K_OVER_J}'")

    @staticmethod
    def scan_sector(vm: VirtualIsingModel, sector: str) -> Tuple[SectorProjector, ...]:
        if sector == SECTOR_FULL:
            return ()
        projectors = list(SpectrumService.virtual_sector(vm))
        if sector == SECTOR_EVEN:
            projectors.append(SectorProjector(pauli_from_supports(vm.num_spins, z_sites=range(vm.num_spins))))
        elif sector != SECTOR_CONSTRAINED:
            raise InvalidArgument(f"unknown scan sector: {sector}")
        return tuple(projectors)

    @staticmethod
    def _check_grid(grid: Sequence[float]) -> np.ndarray:
        values = np.asarray(grid, dtype=np.float64)
        if values.ndim != 1 or len(values) < 3:
            raise InvalidArgument("a scan grid needs at least three points")
        steps = np.diff(values)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise InvalidArgument("scan grid must be strictly monotone")
        return values

    @staticmethod
    def _low_states(vm: VirtualIsingModel, grid: np.ndarray, variable: str, sector: str,
                    want_vectors: bool, threads: Optional[int]):
        projectors = CriticalService.scan_sector(vm, sector)

        def solve(value: float):
            h = HamiltonianService.build_tfim_hamiltonian(vm, CriticalService._couplings(variable, float(value)))
            return SpectrumService.eigenvalues(
                SpectrumRequest(h, 2, projectors, return_vectors=want_vectors), threads=1)

        with ThreadPoolExecutor(max_workers=worker_count(threads)) as pool:
            return list(pool.map(with_app_context(solve), grid))

    @staticmethod
    def _parabolic_vertex(xs: Sequence[float], ys: Sequence[float]) -> float:
        """Vertex of the parabola through three points."""
        (x0, x1, x2), (y0, y1, y2) = xs, ys
        denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
        a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
        b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom
        if a == 0:
            return x1
        return -b / (2 * a)

    @staticmethod
    def _locate(ratios: Sequence[float], values: Sequence[float], maximum: bool,
                require_interior: bool, what: str) -> Tuple[Optional[float], bool]:
        valid = [i for i, v in enumerate(values) if not math.isnan(v)]
        if not valid:
            return None, False
        signed = [values[i] if maximum else -values[i] for i in valid]
        best = max(signed)
        # ties go to the smaller ratio
        best_idx = min((i for i, s in zip(valid, signed) if s == best), key=lambda i: ratios[i])
        pos = valid.index(best_idx)
        at_boundary = pos == 0 or pos == len(valid) - 1 or \
            valid[pos - 1] != best_idx - 1 or valid[pos + 1] != best_idx + 1
        if at_boundary:
            if require_interior:
                raise GridTooCoarse(f"{what} extremum at ratio {ratios[best_idx]} lies on the grid boundary",
                                    location=ratios[best_idx])
            return float(ratios[best_idx]), True
        idx = (best_idx - 1, best_idx, best_idx + 1)
        refined = CriticalService._parabolic_vertex([ratios[i] for i in idx], [values[i] for i in idx])
        lo, hi = sorted((ratios[best_idx - 1], ratios[best_idx + 1]))
        return float(min(max(refined, lo), hi)), False

    @staticmethod
    def fidelity_susceptibility_scan(vm: VirtualIsingModel, grid: Sequence[float],
                                     variable: str = VARIABLE_J_OVER_K, sector: str = SECTOR_EVEN,
                                     require_interior: bool = True,
                                     threads: Optional[int] = None) -> ScanResult:
        """
        chi_F = 2 (1 - |<psi0(l)|psi0(l + d)>|) / d^2 between neighbouring grid points.

        Each value is placed at the midpoint of its grid step. Steps touching
        a point with a degenerate ground state are NaN and flagged.

        Raises:
            GridTooCoarse: the peak is on the grid boundary
        """
        values = CriticalService._check_grid(grid)
        results = CriticalService._low_states(vm, values, variable, sector, True, threads)

        degenerate = []
        for value, res in zip(values, results):
            flag = len(res.eigenvalues) > 1 and res.eigenvalues[1] - res.eigenvalues[0] < DEGENERACY_TOL
            if flag:
                logger.warning(f"{vm.code_id}: degenerate ground state at {variable} = {value}")
            degenerate.append(flag)

        points = []
        for i in range(len(values) - 1):
            midpoint = float((values[i] + values[i + 1]) / 2)
            if degenerate[i] or degenerate[i + 1]:
                points.append(ScanPoint(midpoint, float('nan'), True))
                continue
            delta = float(values[i + 1] - values[i])
            overlap = abs(float(results[i].vectors[:, 0] @ results[i + 1].vectors[:, 0]))
            chi = max(0.0, 2.0 * (1.0 - min(overlap, 1.0)) / (delta * delta))
            points.append(ScanPoint(midpoint, chi))
            logger.debug(f"{vm.code_id}: chi_F({midpoint:.4f}) = {chi:.6g}")

        chis = [p.value for p in points]
        ratios = [p.ratio for p in points]
        finite = [c for c in chis if not math.isnan(c)]
        if finite and max(finite) <= ZERO_SUSCEPTIBILITY:
            return ScanResult('chi_F', variable, sector, tuple(points), None, False)
        extremum, at_boundary = CriticalService._locate(ratios, chis, True, require_interior, 'chi_F')
        logger.info(f"{vm.code_id}: fidelity susceptibility peak at {variable} = {extremum}")
        return ScanResult('chi_F', variable, sector, tuple(points), extremum, at_boundary)

    @staticmethod
    def gap_scan(vm: VirtualIsingModel, grid: Sequence[float], variable: str = VARIABLE_J_OVER_K,
                 sector: str = SECTOR_FULL, require_interior: bool = True,
                 threads: Optional[int] = None) -> ScanResult:
        """Spectral gap E1 - E0 on each grid point and the location of its minimum."""
        values = CriticalService._check_grid(grid)
        results = CriticalService._low_states(vm, values, variable, sector, False, threads)
        points = []
        for value, res in zip(values, results):
            gap = float(res.eigenvalues[1] - res.eigenvalues[0]) if len(res.eigenvalues) > 1 else float('nan')
            points.append(ScanPoint(float(value), gap, math.isnan(gap)))
        extremum, at_boundary = CriticalService._locate(
            [p.ratio for p in points], [p.value for p in points], False, require_interior, 'gap')
        logger.info(f"{vm.code_id}: gap minimum at {variable} = {extremum}")
        return ScanResult('gap', variable, sector, tuple(points), extremum, at_boundary)
