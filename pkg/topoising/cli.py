"""
Command line
Commands for lattice, mapping, spectrum, equivalence, table and scan runs,
registered on the app's click group. Every failure is reported as one JSON
line on stderr and the process exits with the exception's exit code.
"""
import functools
import json
import time
from dataclasses import dataclass, field
from typing import Optional

import click
import numpy as np
from flask import current_app
from flask.cli import AppGroup

from topoising.constants import (
    COLOR, METHOD_AUTO, SECTOR_EVEN, SECTOR_FULL, TORIC,
)
from topoising.exceptions import DimensionGuardError, InvalidArgument, TopoIsingException
from topoising.models.hamiltonian import CouplingParams
from topoising.services.code_service import CodeService
from topoising.services.critical_service import CriticalService, VARIABLE_J_OVER_K
from topoising.services.hamiltonian_service import HamiltonianService
from topoising.services.lattice_service import LatticeService
from topoising.services.mapping_service import MappingService
from topoising.services.spectrum_service import SpectrumService
from topoising.models.spectrum import SpectrumRequest
from topoising.utils.export import FORMATS, FORMAT_JSON, render

cli = AppGroup('topoising', help='Perturbed topological code workbench.')

SPECTRUM_SECTOR_CODE = 'code'
MODEL_TFIM = 'tfim'


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    fmt: str = FORMAT_JSON
    output: Optional[str] = None
    threads: Optional[int] = None
    force: bool = False
    # reserved; every computation is deterministic
    seed: Optional[int] = None

    def validate(self):
        if self.fmt not in FORMATS:
            raise InvalidArgument(f"unknown output format: {self.fmt}")
        if self.threads is not None and self.threads < 1:
            raise InvalidArgument("--threads must be at least 1")

    def guard(self, n: int):
        """Refuse real-spin spaces above REAL_DIM_GUARD unless forced."""
        limit = current_app.config['REAL_DIM_GUARD']
        if not self.force and 2 ** n > limit:
            raise DimensionGuardError(
                f"real-spin dimension 2^{n} exceeds {limit}; pass --force to run anyway",
                dimension=2 ** n, limit=limit)

    def emit(self, payload: dict, rows=None):
        text = render({'command': self.command, **payload}, self.fmt, rows)
        if self.output:
            with open(self.output, 'w', encoding='utf-8') as fh:
                fh.write(text)
            current_app.logger.info(f"Wrote {self.command} output to {self.output}")
        else:
            click.echo(text, nl=False)


def run_options(func):
    """Output and resource options shared by every command."""
    func = click.option('--format', 'fmt', default=FORMAT_JSON, show_default=True,
                        help='json, csv, text or jsonl')(func)
    func = click.option('--output', default=None, help='Write to this path instead of stdout')(func)
    func = click.option('--threads', type=int, default=None, help='Worker cap (default TOPOISING_THREADS)')(func)
    func = click.option('--force', is_flag=True, help='Skip the real-spin dimension guard')(func)
    return func


def code_options(func):
    func = click.option('--code', 'code_kind', required=True, help='toric or color')(func)
    func = click.option('--lattice', 'lattice_kind', required=True,
                        help='honeycomb, square, triangular or square_octagonal')(func)
    func = click.option('--L1', 'L1', type=int, required=True)(func)
    func = click.option('--L2', 'L2', type=int, required=True)(func)
    func = click.option('--pattern', default=None, help='Ising bond pattern for toric codes: vertex or medial')(func)
    return func


def handles_errors(name):
    """Build the RunConfig, time the command and turn workbench errors into exit codes."""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(fmt, output, threads, force, **params):
            run = RunConfig(name, params, fmt, output, threads, force)
            started = time.perf_counter()
            try:
                run.validate()
                func(run, **params)
            except TopoIsingException as exc:
                diagnostic = {'error': type(exc).__name__, 'message': str(exc), 'exit_code': exc.exit_code}
                click.echo(json.dumps(diagnostic, sort_keys=True), err=True)
                current_app.logger.debug(f"{name} failed: {exc!r}")
                raise SystemExit(exc.exit_code)
            current_app.logger.info(f"{name} finished in {time.perf_counter() - started:.2f}s")
        return wrapper
    return decorator


@cli.command('lattice')
@click.argument('kind')
@click.argument('L1', type=int)
@click.argument('L2', type=int)
@click.option('--color', is_flag=True, help='Include face and edge 3-colorings')
@run_options
@handles_errors('lattice')
def lattice_command(run, kind, l1, l2, color):
    """Build a periodic lattice, optionally 3-colored."""
    lat = LatticeService.build_lattice(kind, l1, l2)
    fc = ec = None
    if color:
        fc = LatticeService.three_color_faces(lat)
        ec = LatticeService.color_edges(lat, fc)
    payload = lat.to_dict(fc, ec)
    payload['counts'] = {'V': len(lat.vertices), 'E': len(lat.edges), 'F': len(lat.faces)}
    if fc is not None:
        payload['color_counts'] = fc.counts()
    rows = [{'face': f.id, 'size': f.size, 'color': fc.colors[f.id] if fc else None} for f in lat.faces]
    run.emit(payload, rows)


@cli.command('map')
@code_options
@click.option('--strict', is_flag=True, help='Also test isomorphism with a straight torus')
@click.option('--precise', is_flag=True, help='Use the precise critical registry')
@run_options
@handles_errors('map')
def map_command(run, code_kind, lattice_kind, L1, L2, pattern, strict, precise):
    """Derive the virtual Ising model and its transition ratios."""
    code = CodeService.build_code(code_kind, lattice_kind, L1, L2)
    vm = MappingService.derive_virtual_model(code, HamiltonianService.ising_bonds(code, pattern), strict=strict)
    report = CriticalService.transition_ratio(vm, precise or None)
    rows = [{**c.to_dict(), 'spins': len(vm.components[c.component])} for c in report.components]
    run.emit({'virtual_model': vm.to_dict(), 'transition': report.to_dict()}, rows)


@cli.command('hamiltonian')
@code_options
@click.option('--J', 'J', type=float, default=1.0, show_default=True)
@click.option('--K', 'K', type=float, default=0.0, show_default=True)
@run_options
@handles_errors('hamiltonian')
def hamiltonian_command(run, code_kind, lattice_kind, L1, L2, pattern, J, K):
    """Term list of the perturbed code Hamiltonian."""
    code = CodeService.build_code(code_kind, lattice_kind, L1, L2)
    h = HamiltonianService.build_perturbed_hamiltonian(
        code, HamiltonianService.ising_bonds(code, pattern), CouplingParams(J, K))
    data = h.to_dict()
    run.emit({'code': code.identifier(), 'couplings': {'J': J, 'K': K}, **data}, data['terms'])


@cli.command('dictionary')
@code_options
@run_options
@handles_errors('dictionary')
def dictionary_command(run, code_kind, lattice_kind, L1, L2, pattern):
    """Each real-spin term beside its virtual-spin image."""
    code = CodeService.build_code(code_kind, lattice_kind, L1, L2)
    entries = MappingService.spectral_dictionary(code, HamiltonianService.ising_bonds(code, pattern))
    run.emit({'code': code.identifier(), 'entries': [e.to_dict() for e in entries]},
             [e.to_row() for e in entries])


@cli.command('spectrum')
@code_options
@click.option('--J', 'J', type=float, default=1.0, show_default=True)
@click.option('--K', 'K', type=float, default=0.0, show_default=True)
@click.option('--num-eigs', type=int, default=6, show_default=True)
@click.option('--method', default=METHOD_AUTO, show_default=True, help='auto, dense or iterative')
@click.option('--sector', default=SECTOR_FULL, show_default=True,
              help="full, or 'code' for Z generators and Z logicals at +1")
@click.option('--virtual', is_flag=True, help='Diagonalize the constrained virtual model instead')
@run_options
@handles_errors('spectrum')
def spectrum_command(run, code_kind, lattice_kind, L1, L2, pattern, J, K, num_eigs, method, sector, virtual):
    """Lowest levels of the perturbed code or of its virtual model."""
    code = CodeService.build_code(code_kind, lattice_kind, L1, L2)
    bonds = HamiltonianService.ising_bonds(code, pattern)
    cp = CouplingParams(J, K)
    if virtual:
        vm = MappingService.derive_virtual_model(code, bonds)
        h = HamiltonianService.build_tfim_hamiltonian(vm, cp)
        projectors = SpectrumService.virtual_sector(vm)
        model = f'{vm.code_id} (virtual)'
    else:
        run.guard(code.n)
        h = HamiltonianService.build_perturbed_hamiltonian(code, bonds, cp)
        if sector == SECTOR_FULL:
            projectors = ()
        elif sector == SPECTRUM_SECTOR_CODE:
            projectors = SpectrumService.real_sector(code)
        else:
            raise InvalidArgument(f"unknown spectrum sector: {sector}")
        model = code.identifier()
    result = SpectrumService.eigenvalues(SpectrumRequest(h, num_eigs, projectors, method), run.threads)
    rows = [{'level': i, 'energy': float(e)} for i, e in enumerate(result.eigenvalues)]
    run.emit(result.to_dict(model, cp), rows)


@cli.command('equiv')
@code_options
@click.option('--J', 'J', type=float, default=1.0, show_default=True)
@click.option('--K', 'K', type=float, default=0.1, show_default=True)
@click.option('--num-levels', type=int, default=6, show_default=True)
@click.option('--tol', type=float, default=None, help='Absolute tolerance (default EQUIVALENCE_TOL)')
@run_options
@handles_errors('equiv')
def equiv_command(run, code_kind, lattice_kind, L1, L2, pattern, J, K, num_levels, tol):
    """Compare real and virtual spectra by exact diagonalization."""
    code = CodeService.build_code(code_kind, lattice_kind, L1, L2)
    run.guard(code.n)
    report = SpectrumService.verify_equivalence(
        code, HamiltonianService.ising_bonds(code, pattern), CouplingParams(J, K), num_levels, tol, run.threads)
    rows = [m.to_dict() for m in report.low_spectrum_match]
    run.emit(report.to_dict(), rows)


@cli.command('degeneracy')
@code_options
@click.option('--J', 'J', type=float, default=1.0, show_default=True)
@click.option('--K', 'K', type=float, default=0.0, show_default=True)
@run_options
@handles_errors('degeneracy')
def degeneracy_command(run, code_kind, lattice_kind, L1, L2, pattern, J, K):
    """Ground-space degeneracy, its splitting, and energies per logical sector."""
    code = CodeService.build_code(code_kind, lattice_kind, L1, L2)
    run.guard(code.n)
    bonds = HamiltonianService.ising_bonds(code, pattern)
    cp = CouplingParams(J, K)
    degeneracy = CodeService.degeneracy(code)
    splitting = SpectrumService.degeneracy_splitting(code, bonds, cp, degeneracy, run.threads)
    sectors = SpectrumService.logical_sector_energies(code, bonds, cp, run.threads)
    rows = [{'sector': ''.join(map(str, sig)), 'energy': energy} for sig, energy in sectors]
    run.emit({'code': code.identifier(), 'couplings': cp.to_dict(), 'degeneracy': degeneracy,
              'splitting': splitting.to_dict(),
              'logical_sectors': [{'sector': list(sig), 'energy': e} for sig, e in sectors]}, rows)


@cli.command('table')
@click.option('--precise', is_flag=True, help='Use the precise critical registry')
@click.option('--size', type=int, default=None,
              help='Lattice size for derived rows (default TABLE_SIZE); color rows round up to a colorable size')
@run_options
@handles_errors('table')
def table_command(run, precise, size):
    """Transition ratios K/J of the perturbed codes."""
    rows = [row.to_dict() for row in CriticalService.emit_table(precise or None, size)]
    run.emit({'rows': rows}, rows)


def scan_grid(start: float, stop: float, step: float) -> np.ndarray:
    if step <= 0 or stop <= start:
        raise InvalidArgument("scan needs start < stop and a positive step")
    count = int(round((stop - start) / step)) + 1
    return np.linspace(start, start + (count - 1) * step, count)


@cli.command('scan')
@click.option('--observable', default='fidelity', show_default=True, help='fidelity or gap')
@click.option('--model', default=MODEL_TFIM, show_default=True, help='tfim, toric or color')
@click.option('--lattice', 'lattice_kind', required=True)
@click.option('--L1', 'L1', type=int, required=True)
@click.option('--L2', 'L2', type=int, required=True)
@click.option('--variable', default=VARIABLE_J_OVER_K, show_default=True, help='J/K or K/J')
@click.option('--start', type=float, required=True)
@click.option('--stop', type=float, required=True)
@click.option('--step', type=float, required=True)
@click.option('--sector', default=None, help='full, constrained or even')
@click.option('--allow-boundary', is_flag=True, help='Report an extremum on the grid edge instead of failing')
@run_options
@handles_errors('scan')
def scan_command(run, observable, model, lattice_kind, L1, L2, variable, start, stop, step, sector, allow_boundary):
    """Finite-size fidelity susceptibility or gap scan on the virtual side."""
    if model == MODEL_TFIM:
        vm = MappingService.tfim_on_lattice(lattice_kind, L1, L2)
    elif model in (TORIC, COLOR):
        code = CodeService.build_code(model, lattice_kind, L1, L2)
        vm = MappingService.derive_virtual_model(code, HamiltonianService.ising_bonds(code))
    else:
        raise InvalidArgument(f"unknown scan model: {model}")
    run.guard(vm.num_spins)
    grid = scan_grid(start, stop, step)
    if observable == 'fidelity':
        result = CriticalService.fidelity_susceptibility_scan(
            vm, grid, variable, sector or SECTOR_EVEN, not allow_boundary, run.threads)
    elif observable == 'gap':
        result = CriticalService.gap_scan(vm, grid, variable, sector or SECTOR_FULL, not allow_boundary, run.threads)
    else:
        raise InvalidArgument(f"unknown scan observable: {observable}")
    run.emit({'model': vm.code_id, **result.to_dict()}, result.to_rows())
