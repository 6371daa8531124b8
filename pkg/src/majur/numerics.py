"""Complex Hermitian linear algebra for small operators.

Eigenvalues come from a cyclic Jacobi solver run on the real symmetric
embedding ``[[Re H, -Im H], [Im H, Re H]]`` of a ``d x d`` Hermitian matrix.
Every eigenvalue of ``H`` shows up twice in the embedding, so the doubled
spectrum is sorted and every second entry kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotConverged, NotHermitian, ZeroVector

HERMITIAN_TOL = 1e-9
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Immutable ``dim x dim`` complex matrix equal to its conjugate transpose.

    Hermiticity is checked once, here; asymmetric input is rejected rather
    than symmetrized.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DimensionMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NotHermitian("matrix has non-finite entries")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise NotHermitian("matrix differs from its conjugate transpose by more than 1e-9")
        if np.max(np.abs(np.diag(m).imag)) > HERMITIAN_TOL:
            raise NotHermitian("diagonal has non-negligible imaginary parts")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @classmethod
    def identity(cls, dim: int) -> "HermitianOperator":
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def zeros(cls, dim: int) -> "HermitianOperator":
        return cls(np.zeros((dim, dim), dtype=complex))

    def scaled(self, c: float) -> "HermitianOperator":
        return HermitianOperator(c * self.matrix)

    def allclose(self, other: "HermitianOperator", atol: float = 1e-10) -> bool:
        return self.dim == other.dim and bool(np.allclose(self.matrix, other.matrix, atol=atol, rtol=0))

    def __repr__(self) -> str:
        return f"HermitianOperator(dim={self.dim})"


def projector_from_vector(v: Sequence[complex]) -> HermitianOperator:
    """Return the rank-1 projector onto the normalized ``v``."""
    v = np.asarray(v, dtype=complex).ravel()
    if not np.all(np.isfinite(v)):
        raise ZeroVector("vector has non-finite entries")
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        raise ZeroVector(f"cannot normalize a vector of norm {norm:.3g}")
    v = v / norm
    return HermitianOperator(np.outer(v, v.conj()))


def weighted_sum(terms: Iterable[tuple[float, HermitianOperator]]) -> HermitianOperator:
    """Entrywise ``sum(w * op)`` over ``(weight, operator)`` pairs."""
    terms = list(terms)
    if not terms:
        raise DimensionMismatch("weighted_sum needs at least one term")
    dim = terms[0][1].dim
    acc = np.zeros((dim, dim), dtype=complex)
    for w, op in terms:
        if op.dim != dim:
            raise DimensionMismatch(f"operator of dim {op.dim} in a sum of dim {dim}")
        acc += float(w) * op.matrix
    # round-off can leave ~1e-17 asymmetry; the exact sum is Hermitian
    return HermitianOperator(0.5 * (acc + acc.conj().T))


def real_embedding(h: np.ndarray) -> np.ndarray:
    """Real symmetric ``2d x 2d`` matrix with the spectrum of ``h`` doubled."""
    re, im = h.real, h.imag
    return np.block([[re, -im], [im, re]])


def jacobi_eigenvalues(a: np.ndarray, tol: float = JACOBI_TOL,
                       max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.

    Iterates until the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||a||_F)``.
    """
    a = [list(map(float, row)) for row in np.asarray(a, dtype=float)]
    n = len(a)
    scale = max(1.0, math.sqrt(sum(x * x for row in a for x in row)))
    threshold = tol * scale
    # rotations on entries this small cannot move the eigenvalues measurably
    skip = threshold / (4 * n * n)
    for _ in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            row = a[p]
            for q in range(p + 1, n):
                off += row[q] * row[q]
        if math.sqrt(2.0 * off) < threshold:
            return np.array(sorted(a[i][i] for i in range(n)))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p][p] -= t * apq
                a[q][q] += t * apq
                a[p][q] = a[q][p] = 0.0
                for r in range(n):
                    if r == p or r == q:
                        continue
                    arp = a[r][p]
                    arq = a[r][q]
                    nrp = arp - s * (arq + tau * arp)
                    nrq = arq + s * (arp - tau * arq)
                    a[r][p] = a[p][r] = nrp
                    a[r][q] = a[q][r] = nrq
    raise NotConverged(f"Jacobi did not converge within {max_sweeps} sweeps")


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Full spectrum of a Hermitian matrix (ascending), without validation."""
    doubled = jacobi_eigenvalues(real_embedding(np.asarray(h, dtype=complex)))
    return doubled[::2]


def eigenvalues(op: HermitianOperator) -> np.ndarray:
    return hermitian_eigenvalues(op.matrix)


def max_eigenvalue(op: HermitianOperator) -> float:
    """Largest eigenvalue of ``op``."""
    return float(hermitian_eigenvalues(op.matrix)[-1])


def min_eigenvalue(op: HermitianOperator) -> float:
    return float(hermitian_eigenvalues(op.matrix)[0])
