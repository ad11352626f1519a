"""Signature-aware linear algebra: scalar products, splits, and the rank-4 pairing.

Bilinear forms are plain (n, n) float arrays and rank-4 tensors are plain
(n, n, n, n) float arrays throughout the package; this module owns the one
stateful value type, :class:`ScalarProduct`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateMetric,
    DimensionMismatch,
    DimensionTooSmall,
    NotSymmetric,
)

SYMMETRY_TOL = 1e-12
DEGENERACY_RATIO = 1e-10


@dataclass(frozen=True)
class ScalarProduct:
    """A nondegenerate symmetric bilinear form with cached inverse.

    Attributes
    ----------
    matrix : (n, n) ndarray
        The form g_ij.
    inverse : (n, n) ndarray
        g^ij, symmetrized.
    signature : (int, int)
        Counts (p, q) of positive and negative eigenvalues.
    """

    matrix: np.ndarray
    inverse: np.ndarray
    signature: tuple[int, int]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def rescaled(self, c: float) -> "ScalarProduct":
        """The scalar product c*g (c > 0); signature is unchanged."""
        if c <= 0:
            raise ValueError("rescale factor must be positive")
        return ScalarProduct(self.matrix * c, self.inverse / c, self.signature)


def build_scalar_product(matrix) -> ScalarProduct:
    """Validate a symmetric matrix and package it with inverse and signature.

    Raises
    ------
    DimensionTooSmall
        If n < 3.
    NotSymmetric
        If max |g - g^T| exceeds 1e-12.
    DegenerateMetric
        If some eigenvalue has magnitude below 1e-10 times the spectral norm.
    """
    g = np.asarray(matrix, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {g.shape}")
    n = g.shape[0]
    if n < 3:
        raise DimensionTooSmall(f"need dimension >= 3, got {n}")
    asym = np.max(np.abs(g - g.T)) if n else 0.0
    if asym > SYMMETRY_TOL:
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds {SYMMETRY_TOL:.0e}")
    g = 0.5 * (g + g.T)
    eigs = np.linalg.eigvalsh(g)
    spectral = np.max(np.abs(eigs))
    if spectral == 0.0 or np.min(np.abs(eigs)) < DEGENERACY_RATIO * spectral:
        raise DegenerateMetric(
            f"eigenvalue magnitude below {DEGENERACY_RATIO:.0e} of spectral norm"
        )
    p = int(np.sum(eigs > 0))
    q = int(np.sum(eigs < 0))
    inv = np.linalg.inv(g)
    inv = 0.5 * (inv + inv.T)
    return ScalarProduct(g, inv, (p, q))


def standard_scalar_product(p: int, q: int) -> ScalarProduct:
    """diag(+1 x p, -1 x q), the flat form of signature (p, q)."""
    n = p + q
    if n < 3:
        raise DimensionTooSmall(f"need dimension >= 3, got {n}")
    d = np.concatenate([np.ones(p), -np.ones(q)])
    m = np.diag(d)
    return ScalarProduct(m, m.copy(), (p, q))


def sym_antisym_split(b) -> tuple[np.ndarray, np.ndarray]:
    """Split a bilinear form into symmetric and antisymmetric parts.

    Returns (S, L) with S = (b + b^T)/2 exactly symmetric and L = b - S, so
    that reapplying the split to S gives (S, 0) bit-for-bit.
    """
    b = np.asarray(b, dtype=float)
    s = 0.5 * (b + b.T)
    return s, b - s


def sym(b) -> np.ndarray:
    """Symmetric part (b + b^T)/2."""
    b = np.asarray(b, dtype=float)
    return 0.5 * (b + b.T)


def antisym(b) -> np.ndarray:
    """Antisymmetric part (b - b^T)/2."""
    b = np.asarray(b, dtype=float)
    return 0.5 * (b - b.T)


def check_same_dim(*arrays) -> int:
    """All operands must share one dimension n; returns it."""
    dims = {a.shape[0] for a in arrays}
    if len(dims) != 1:
        raise DimensionMismatch(f"inconsistent dimensions {sorted(dims)}")
    return dims.pop()


def tensor_pairing(t1, t2, g: ScalarProduct) -> float:
    """Full contraction g^ia g^jb g^kc g^ld T1_ijkl T2_abcd.

    This is the O(V,g)-invariant pairing on rank-4 tensors; the orthogonality
    statements of the decompositions are with respect to it.  Symmetric in
    (t1, t2); positive definite only for definite g.
    """
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    check_same_dim(t1, t2, g.matrix)
    gi = g.inverse
    raised = np.einsum("ia,jb,kc,ld,ijkl->abcd", gi, gi, gi, gi, t1, optimize=True)
    return float(np.sum(raised * t2))
