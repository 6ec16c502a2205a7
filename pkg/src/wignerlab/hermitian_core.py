"""Dense Hermitian matrices and their spectra.

The substrate for everything downstream: validated construction, descending
eigenvalues, trace powers, Frobenius norm, numeric rank and principal minors.
Instances are immutable and all operations are pure functions of their
arguments, so they are safe to share across threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "HermitianMatrix",
    "EigenDecomposition",
    "eigenvalues_desc",
    "eigen_decomposition",
    "trace_power",
    "frobenius_norm",
    "numeric_rank",
    "principal_minor",
]

# max-norm asymmetry beyond which input is rejected instead of symmetrized
SYMMETRY_TOL = 1e-12
# reconstruction tolerance for eigendecompositions, scaled by n * ||A||_F
EIGEN_TOL = 1e-10


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class HermitianMatrix:
    """Square matrix with entries[i, j] == conj(entries[j, i]) exactly.

    Construction accepts any square array whose asymmetry max|A - A*| is at
    most ``SYMMETRY_TOL`` and symmetrizes it by averaging with its conjugate
    transpose; anything more asymmetric is an error, not a silent repair.
    Real input stays real (float64), complex input with vanishing imaginary
    part is demoted to real storage so the eigensolver can take the
    symmetric path.
    """

    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        a = np.asarray(self.entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("entries must be a square matrix")
        if a.shape[0] == 0:
            raise ValueError("matrix must be nonempty")
        if not np.issubdtype(a.dtype, np.number):
            raise ValueError("entries must be numeric")
        a = a.astype(np.complex128 if np.iscomplexobj(a) else np.float64, copy=True)
        asym = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
        if asym > SYMMETRY_TOL:
            raise ValueError(f"matrix is not Hermitian: asymmetry {asym:.3e} exceeds {SYMMETRY_TOL:.0e}")
        h = (a + a.conj().T) / 2.0
        if np.iscomplexobj(h):
            if not h.imag.any():
                h = h.real.copy()
            else:
                # exact realness on the diagonal after averaging
                h[np.diag_indices_from(h)] = h.diagonal().real
        object.__setattr__(self, "entries", _readonly(h))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.entries)

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        return HermitianMatrix(self.entries + other.entries)

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        return HermitianMatrix(self.entries - other.entries)


@dataclass(frozen=True)
class EigenDecomposition:
    """Descending eigenvalues and, optionally, a matching orthonormal basis."""

    eigenvalues: np.ndarray = field(repr=False)
    basis: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        ev = np.asarray(self.eigenvalues, dtype=np.float64)
        if np.any(np.diff(ev) > 0):
            raise ValueError("eigenvalues must be in descending order")
        object.__setattr__(self, "eigenvalues", _readonly(ev.copy()))
        if self.basis is not None:
            b = np.asarray(self.basis).copy()
            object.__setattr__(self, "basis", _readonly(b))


def eigenvalues_desc(a: HermitianMatrix) -> np.ndarray:
    """All eigenvalues of ``a``, repeated by multiplicity, descending."""
    return _readonly(np.linalg.eigvalsh(a.entries)[::-1].copy())


def eigen_decomposition(a: HermitianMatrix) -> EigenDecomposition:
    """Descending spectrum plus orthonormal eigenbasis, reconstruction-checked."""
    vals, vecs = np.linalg.eigh(a.entries)
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    resid = np.max(np.abs((vecs * vals) @ vecs.conj().T - a.entries))
    budget = EIGEN_TOL * a.n * max(frobenius_norm(a), 1.0)
    if resid > budget:
        raise ArithmeticError(f"eigendecomposition residual {resid:.3e} exceeds {budget:.3e}")
    return EigenDecomposition(vals, vecs)


def trace_power(a: HermitianMatrix, k: int) -> float:
    """tr(A^k) = sum_i lambda_i^k for integer k >= 1."""
    if k < 1:
        raise ValueError("trace power requires k >= 1")
    return float(np.sum(eigenvalues_desc(a) ** k))


def frobenius_norm(a: HermitianMatrix) -> float:
    """sqrt(sum_ij |a_ij|^2)."""
    return float(np.linalg.norm(a.entries))


def numeric_rank(a: HermitianMatrix, tol: float | None = None) -> int:
    """Number of eigenvalues exceeding ``tol`` in modulus.

    Default tolerance is 1e-9 * n * max|entry|, zero for the zero matrix.
    """
    if tol is None:
        tol = 1e-9 * a.n * float(np.max(np.abs(a.entries)))
    ev = np.linalg.eigvalsh(a.entries)
    return int(np.count_nonzero(np.abs(ev) > tol))


def principal_minor(a: HermitianMatrix, keep: Iterable[int] | Sequence[int]) -> HermitianMatrix:
    """Submatrix on the 0-based index subset ``keep`` (rows and columns alike)."""
    idx = np.unique(np.asarray(sorted(set(int(i) for i in keep)), dtype=np.intp))
    if idx.size == 0:
        raise ValueError("empty minor")
    if idx[0] < 0 or idx[-1] >= a.n:
        raise ValueError("minor indices out of range")
    return HermitianMatrix(a.entries[np.ix_(idx, idx)])
