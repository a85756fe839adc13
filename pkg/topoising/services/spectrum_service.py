"""
Spectrum Service
Exact diagonalization of term-list Hamiltonians: dense for small spaces,
ARPACK implicitly restarted Lanczos above the dense threshold, with sector
restriction, symmetry blocks and the real/virtual equivalence check.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import product as cartesian
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from topoising.constants import METHOD_AUTO, METHOD_DENSE, METHOD_ITERATIVE, Z_TYPE
from topoising.exceptions import EigensolverNonConvergence, InvalidArgument, InvalidSector
from topoising.models.code import StabilizerCode
from topoising.models.hamiltonian import BondSet, CouplingParams, HamiltonianTerms
from topoising.models.pauli import PauliString, commutes, identity, pauli_from_supports
from topoising.models.spectrum import (
    EquivalenceReport, LevelMatch, SectorProjector, SpectrumRequest, SpectrumResult, SplittingReport,
)
from topoising.services.code_service import CodeService
from topoising.services.hamiltonian_service import HamiltonianService
from topoising.services.mapping_service import MappingService
from topoising.utils.gf2 import Gf2Matrix
from topoising.utils.operator import HamiltonianOperator, full_basis
from topoising.utils.settings import get_setting, with_app_context, worker_count

logger = logging.getLogger(__name__)

START_VECTOR_SEED = 20240521


def _constraint_rows(projectors: Sequence[SectorProjector]) -> List[Tuple[int, int]]:
    """Diagonal projectors as parity conditions: |b & z| = bit (mod 2)."""
    rows = []
    for p in projectors:
        bit = 0 if p.operator.sign * p.eigenvalue == 1 else 1
        rows.append((p.operator.z, bit))
    return rows


def _affine_basis(n: int, rows: Sequence[Tuple[int, int]]) -> Optional[np.ndarray]:
    """Sorted basis states satisfying all parity rows, or None if inconsistent."""
    if not rows:
        return full_basis(n)
    matrix = Gf2Matrix.from_rows([z for z, _ in rows], n)
    rhs = 0
    for r, (_, bit) in enumerate(rows):
        rhs |= bit << r
    particular = matrix.solve(rhs)
    if particular is None:
        return None
    states = np.array([particular], dtype=np.uint64)
    for vec in matrix.nullspace():
        states = np.concatenate([states, states ^ np.uint64(vec)])
    states.sort()
    return states


class SpectrumService:

    @staticmethod
    def check_sector(h: HamiltonianTerms, sector: Sequence[SectorProjector]) -> None:
        for i, p in enumerate(sector):
            if p.operator.n != h.n:
                raise InvalidSector(f"projector {i} acts on {p.operator.n} qubits, Hamiltonian on {h.n}")
            for other in sector[i + 1:]:
                if not commutes(p.operator, other.operator):
                    raise InvalidSector("sector projectors do not commute")
            for _, term in h.terms:
                if not commutes(p.operator, term):
                    raise InvalidSector(f"projector {i} does not commute with term {term!r}")

    @staticmethod
    def sector_basis(n: int, sector: Sequence[SectorProjector]) -> np.ndarray:
        """Computational basis states inside all diagonal projectors."""
        states = _affine_basis(n, _constraint_rows([p for p in sector if p.is_diagonal]))
        if states is None:
            raise InvalidSector("diagonal sector projectors are inconsistent")
        return states

    @staticmethod
    def project(projector: SectorProjector, vector: np.ndarray) -> np.ndarray:
        """Apply (1 + e P)/2 to a full state vector."""
        term = HamiltonianTerms.from_terms(projector.operator.n, [(1.0, projector.operator)])
        applied = HamiltonianOperator(term).matvec(vector)
        return 0.5 * (np.asarray(vector) + projector.eigenvalue * applied)

    @staticmethod
    def _with_penalty(h: HamiltonianTerms, projectors: Sequence[SectorProjector]) -> Tuple[HamiltonianTerms, float]:
        """Lift states outside non-diagonal projectors above the whole in-sector spectrum."""
        bound = h.norm_bound()
        penalty = 2.0 * bound + 1.0
        extra = []
        for p in projectors:
            extra.append((penalty / 2.0, identity(h.n)))
            extra.append((-p.eigenvalue * penalty / 2.0, p.operator))
        return HamiltonianTerms.from_terms(h.n, list(h.terms) + extra), bound + 0.5

    @staticmethod
    def _start_vector(dim: int) -> np.ndarray:
        return np.random.default_rng(START_VECTOR_SEED).standard_normal(dim)

    @staticmethod
    def _solve(op: HamiltonianOperator, k: int, method: str, want_vectors: bool):
        """Lowest k eigenpairs of one operator; returns (values, vectors, residuals, method)."""
        k = min(k, op.dim)
        if method == METHOD_AUTO:
            method = METHOD_DENSE if op.dim <= get_setting('DENSE_MAX_DIM', 4096) else METHOD_ITERATIVE
        if method == METHOD_ITERATIVE and k >= op.dim - 1:
            logger.warning(f"{k} eigenvalues requested from dimension {op.dim}; using dense solver")
            method = METHOD_DENSE

        if method == METHOD_DENSE:
            values, vectors = np.linalg.eigh(op.to_dense())
            return values[:k], vectors[:, :k] if want_vectors else None, None, METHOD_DENSE

        if method != METHOD_ITERATIVE:
            raise InvalidArgument(f"unknown eigensolver method: {method}")
        ncv = min(op.dim, max(2 * k + 1, 20))
        try:
            values, vectors = eigsh(
                op.as_linear_operator(), k=k, which='SA', ncv=ncv,
                v0=SpectrumService._start_vector(op.dim),
                tol=get_setting('ARPACK_TOL', 0.0), maxiter=get_setting('ARPACK_MAXITER'),
            )
        except ArpackNoConvergence as exc:
            residuals = []
            if exc.eigenvectors is not None and len(exc.eigenvalues):
                hv = op.matvec(exc.eigenvectors)
                residuals = np.linalg.norm(hv - exc.eigenvectors * exc.eigenvalues, axis=0).tolist()
            raise EigensolverNonConvergence(
                f"ARPACK did not converge for {k} eigenvalues at dimension {op.dim}", residuals=residuals)
        order = np.argsort(values)
        values, vectors = values[order], vectors[:, order]
        residuals = np.linalg.norm(op.matvec(vectors) - vectors * values, axis=0)
        return values, vectors if want_vectors else None, residuals, METHOD_ITERATIVE

    @staticmethod
    def eigenvalues(req: SpectrumRequest, threads: Optional[int] = None) -> SpectrumResult:
        """
        Lowest eigenvalues of a Hamiltonian, ascending, within an optional sector.

        Diagonal projectors restrict the basis; other projectors are applied
        as an energy penalty and the lifted levels are dropped.

        Raises:
            InvalidSector: projectors clash with each other or with the Hamiltonian
            EigensolverNonConvergence: ARPACK failed; carries residual norms
        """
        h = req.hamiltonian
        SpectrumService.check_sector(h, req.sector)
        off_diagonal = [p for p in req.sector if not p.is_diagonal]
        threshold = None
        if off_diagonal:
            h, threshold = SpectrumService._with_penalty(h, off_diagonal)

        if req.symmetries:
            if off_diagonal:
                raise InvalidSector("symmetry blocks only combine with diagonal sector projectors")
            return SpectrumService._block_spectrum(h, req, threads)

        basis = SpectrumService.sector_basis(h.n, req.sector) if len(off_diagonal) < len(req.sector) else None
        op = HamiltonianOperator(h, basis, workers=worker_count(threads),
                                 chunk_min_dim=get_setting('MATVEC_CHUNK_MIN_DIM', 1 << 16))
        started = time.perf_counter()
        values, vectors, residuals, method = SpectrumService._solve(
            op, req.num_eigenvalues, req.method, req.return_vectors)
        logger.info(f"Diagonalized dimension {op.dim} ({method}) for {len(values)} levels "
                    f"in {time.perf_counter() - started:.2f}s")

        if threshold is not None:
            keep = values < threshold
            values = values[keep]
            if vectors is not None:
                vectors = vectors[:, keep]
            if residuals is not None:
                residuals = residuals[keep]
        return SpectrumResult(np.asarray(values), method, op.dim, vectors,
                              op.basis if req.return_vectors else None, residuals, req.sector)

    @staticmethod
    def symmetry_blocks(n: int, sector: Sequence[SectorProjector],
                        symmetries: Sequence[PauliString]) -> List[Tuple[Tuple[int, ...], np.ndarray]]:
        """
        Split the sector basis by the joint eigenvalues of diagonal symmetries.

        Returns:
            (signature, basis) pairs; the signature holds one parity bit per
            independent symmetry, in the order the symmetries were given.
        """
        for s in symmetries:
            if s.x != 0:
                raise InvalidSector("symmetry blocks need diagonal (Z-type) symmetries")
        fixed = _constraint_rows([p for p in sector if p.is_diagonal])
        rows = [z for z, _ in fixed] + [s.z for s in symmetries]
        chosen = Gf2Matrix.from_rows(rows, n).independent_rows()
        free = [r - len(fixed) for r in chosen if r >= len(fixed)]
        blocks = []
        for bits in cartesian((0, 1), repeat=len(free)):
            constraint = list(fixed) + [(symmetries[f].z, b) for f, b in zip(free, bits)]
            states = _affine_basis(n, constraint)
            if states is not None and len(states):
                blocks.append((tuple(bits), states))
        return blocks

    @staticmethod
    def _block_spectrum(h: HamiltonianTerms, req: SpectrumRequest, threads: Optional[int]) -> SpectrumResult:
        blocks = SpectrumService.symmetry_blocks(h.n, req.sector, req.symmetries)
        k = req.num_eigenvalues
        block_dense = get_setting('BLOCK_DENSE_MAX_DIM', 512)

        def solve(block):
            _, states = block
            op = HamiltonianOperator(h, states)
            method = METHOD_DENSE if op.dim <= block_dense else METHOD_ITERATIVE
            values, _, _, _ = SpectrumService._solve(op, k, method, False)
            return values

        started = time.perf_counter()
        with ThreadPoolExecutor(max_workers=worker_count(threads)) as pool:
            parts = list(pool.map(with_app_context(solve), blocks))
        values = np.sort(np.concatenate(parts))[:k] if parts else np.array([])
        dim = sum(len(states) for _, states in blocks)
        logger.info(f"Diagonalized {len(blocks)} symmetry blocks (total dimension {dim}) "
                    f"in {time.perf_counter() - started:.2f}s")
        return SpectrumResult(values, 'blocks', dim, sector=req.sector)

    @staticmethod
    def real_sector(code: StabilizerCode) -> Tuple[SectorProjector, ...]:
        """Z generators and Z-type logicals at +1: the image of the constrained virtual space."""
        logicals = CodeService.default_logicals(code).of_type(Z_TYPE)
        return tuple(SectorProjector(g) for g in code.z_generators) + \
            tuple(SectorProjector(l.operator) for l in logicals)

    @staticmethod
    def virtual_sector(vm) -> Tuple[SectorProjector, ...]:
        return tuple(SectorProjector(pauli_from_supports(vm.num_spins, z_sites=c))
                     for c in vm.parity_constraints)

    @staticmethod
    def match_levels(virtual: Sequence[float], real: Sequence[float]) -> Tuple[List[LevelMatch], List[float]]:
        """Greedy nearest match; each real level is used at most once."""
        available = list(real)
        matches = []
        for v in virtual:
            if not available:
                matches.append(LevelMatch(float(v), None, float('inf')))
                continue
            idx = min(range(len(available)), key=lambda i: (abs(available[i] - v), i))
            r = available.pop(idx)
            matches.append(LevelMatch(float(v), float(r), abs(float(r) - float(v))))
        return matches, [float(r) for r in available]

    @staticmethod
    def verify_equivalence(code: StabilizerCode, bonds: BondSet, cp: CouplingParams,
                           num_levels: int = 6, tol: Optional[float] = None,
                           threads: Optional[int] = None) -> EquivalenceReport:
        """
        Compare the perturbed code spectrum with the constrained virtual TFIM.

        The real ground energy comes from the full space; the low levels are
        matched inside the sector where Z generators and Z logicals are +1.
        """
        tol = tol if tol is not None else get_setting('EQUIVALENCE_TOL', 1e-7)
        vm = MappingService.derive_virtual_model(code, bonds)
        h_real = HamiltonianService.build_perturbed_hamiltonian(code, bonds, cp)
        h_virtual = HamiltonianService.build_tfim_hamiltonian(vm, cp)

        e0_real = float(SpectrumService.eigenvalues(SpectrumRequest(h_real, 1), threads).eigenvalues[0])
        real_levels = SpectrumService.eigenvalues(
            SpectrumRequest(h_real, num_levels, SpectrumService.real_sector(code)), threads).eigenvalues
        virtual_levels = SpectrumService.eigenvalues(
            SpectrumRequest(h_virtual, num_levels, SpectrumService.virtual_sector(vm)), threads).eigenvalues

        matches, unmatched = SpectrumService.match_levels(virtual_levels, real_levels)
        e0_virtual = float(virtual_levels[0])
        verdict = abs(e0_real - e0_virtual) <= tol and all(m.delta <= tol for m in matches)
        logger.info(f"Equivalence {code.identifier()} J={cp.J} K={cp.K}: E0 real {e0_real:.10f}, "
                    f"virtual {e0_virtual:.10f}, verdict {verdict}")
        return EquivalenceReport(code.identifier(), cp, e0_real, e0_virtual, tuple(matches),
                                 verdict, tol, tuple(unmatched))

    @staticmethod
    def code_symmetries(code: StabilizerCode) -> Tuple[PauliString, ...]:
        logicals = CodeService.default_logicals(code).of_type(Z_TYPE)
        return tuple(code.z_generators) + tuple(l.operator for l in logicals)

    @staticmethod
    def degeneracy_splitting(code: StabilizerCode, bonds: BondSet, cp: CouplingParams, k: int,
                             threads: Optional[int] = None) -> SplittingReport:
        """Spread of the lowest k levels and the gap to level k+1."""
        if k < 1:
            raise InvalidArgument("k must be at least 1")
        h = HamiltonianService.build_perturbed_hamiltonian(code, bonds, cp)
        req = SpectrumRequest(h, k + 1, symmetries=SpectrumService.code_symmetries(code))
        levels = SpectrumService.eigenvalues(req, threads).eigenvalues
        return SplittingReport(float(levels[k - 1] - levels[0]), float(levels[k] - levels[k - 1]),
                               tuple(float(e) for e in levels))

    @staticmethod
    def logical_sector_energies(code: StabilizerCode, bonds: BondSet, cp: CouplingParams,
                                threads: Optional[int] = None) -> List[Tuple[Tuple[int, ...], float]]:
        """Ground energy in each Z-logical sector with all Z generators at +1."""
        h = HamiltonianService.build_perturbed_hamiltonian(code, bonds, cp)
        logicals = [l.operator for l in CodeService.default_logicals(code).of_type(Z_TYPE)]
        sector = [SectorProjector(g) for g in code.z_generators]
        blocks = SpectrumService.symmetry_blocks(code.n, sector, logicals)

        def solve(block):
            signature, states = block
            values, _, _, _ = SpectrumService._solve(HamiltonianOperator(h, states), 1, METHOD_AUTO, False)
            return signature, float(values[0])

        with ThreadPoolExecutor(max_workers=worker_count(threads)) as pool:
            return list(pool.map(with_app_context(solve), blocks))
