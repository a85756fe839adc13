"""
Matrix-free Hamiltonian operator
Applies a Pauli term list in the computational basis (site 0 is the least
significant bit). Terms sharing an X mask form one group: the group maps
basis state b to b ^ x with a weight summed over the group's Z masks.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator

from topoising.exceptions import InvalidArgument, InvalidSector
from topoising.models.hamiltonian import HamiltonianTerms

logger = logging.getLogger(__name__)


def full_basis(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.uint64)


def parity_signs(basis: np.ndarray, z_mask: int) -> np.ndarray:
    """(-1)^{|b & z|} for every basis state b."""
    odd = np.bitwise_count(basis & np.uint64(z_mask)) & 1
    return 1.0 - 2.0 * odd.astype(np.float64)


class HamiltonianOperator:
    """
    Sparse action of a HamiltonianTerms object on a basis subset.

    Args:
        terms: the Hamiltonian
        basis: sorted uint64 array of basis states spanning an invariant
            subspace (default: all 2^n states)
        workers: threads used to split matvec over output ranges
        chunk_min_dim: dimension below which matvec stays single-threaded
    """

    def __init__(self, terms: HamiltonianTerms, basis: Optional[np.ndarray] = None,
                 workers: int = 1, chunk_min_dim: int = 1 << 16):
        if terms.n > 62:
            raise InvalidArgument(f"{terms.n} qubits exceed the 62-bit basis encoding")
        self.terms = terms
        self.n = terms.n
        self.basis = full_basis(terms.n) if basis is None else np.asarray(basis, dtype=np.uint64)
        self.dim = int(self.basis.shape[0])
        self.workers = max(1, int(workers))
        self.chunk_min_dim = chunk_min_dim
        self._full = basis is None

        groups: Dict[int, List[Tuple[float, int]]] = {}
        for coeff, op in terms.terms:
            groups.setdefault(op.x, []).append((coeff, op.z))

        self.diagonal = np.zeros(self.dim, dtype=np.float64)
        self.hops: List[Tuple[np.ndarray, np.ndarray]] = []
        for x_mask, members in groups.items():
            if x_mask == 0:
                for coeff, z_mask in members:
                    self.diagonal += coeff * parity_signs(self.basis, z_mask)
                continue
            source = self.basis ^ np.uint64(x_mask)
            perm = self._locate(source, x_mask)
            weight = np.zeros(self.dim, dtype=np.float64)
            for coeff, z_mask in members:
                weight += coeff * parity_signs(source, z_mask)
            self.hops.append((perm, weight))

    def _locate(self, states: np.ndarray, x_mask: int) -> np.ndarray:
        if self._full:
            return states.astype(np.int64)
        idx = np.searchsorted(self.basis, states)
        idx_clipped = np.minimum(idx, self.dim - 1)
        if not np.array_equal(self.basis[idx_clipped], states):
            raise InvalidSector(f"term with X mask {x_mask:#x} leaves the chosen basis")
        return idx_clipped.astype(np.int64)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.dim, self.dim)

    def _apply_range(self, v: np.ndarray, out: np.ndarray, lo: int, hi: int) -> None:
        d = self.diagonal[lo:hi]
        out[lo:hi] = d * v[lo:hi] if v.ndim == 1 else d[:, None] * v[lo:hi]
        for perm, weight in self.hops:
            w = weight[lo:hi]
            gathered = v[perm[lo:hi]]
            out[lo:hi] += w * gathered if v.ndim == 1 else w[:, None] * gathered

    def matvec(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[0] != self.dim:
            raise InvalidArgument(f"vector of length {v.shape[0]} for operator of dimension {self.dim}")
        dtype = np.result_type(v.dtype, np.float64)
        v = v.astype(dtype, copy=False)
        out = np.empty(v.shape, dtype=dtype)
        if self.workers == 1 or self.dim < self.chunk_min_dim:
            self._apply_range(v, out, 0, self.dim)
            return out
        bounds = np.linspace(0, self.dim, self.workers + 1, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            list(pool.map(lambda k: self._apply_range(v, out, int(bounds[k]), int(bounds[k + 1])),
                          range(self.workers)))
        return out

    def to_sparse(self) -> sp.csr_matrix:
        rows = [np.arange(self.dim)]
        cols = [np.arange(self.dim)]
        data = [self.diagonal]
        for perm, weight in self.hops:
            rows.append(np.arange(self.dim))
            cols.append(perm)
            data.append(weight)
        matrix = sp.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=self.shape,
        )
        return matrix.tocsr()

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def as_linear_operator(self) -> LinearOperator:
        return LinearOperator(self.shape, matvec=self.matvec, rmatvec=self.matvec,
                              matmat=self.matvec, dtype=np.float64)

    def expectation(self, v: np.ndarray) -> float:
        v = np.asarray(v, dtype=np.float64)
        return float(v @ self.matvec(v) / (v @ v))

    def __repr__(self):
        return f'<HamiltonianOperator n={self.n} dim={self.dim} groups={len(self.hops) + 1}>'


def matvec(h: HamiltonianTerms, state: np.ndarray) -> np.ndarray:
    """Apply h to a full 2^n state vector."""
    state = np.asarray(state)
    if state.shape[0] != 1 << h.n:
        raise InvalidArgument(f"state of length {state.shape[0]} for {h.n} qubits")
    return HamiltonianOperator(h).matvec(state)
