"""The two eight-part orthogonal decompositions of r(V) and derived maps.

Both families are built from the trace data (Ric, Ric*, tau) and the wedge /
dot products of bilinear forms with g.  The W-family isolates the projective
part (components 4..8 span the Ricci-flat tensors); the A-family isolates the
decomposition of a(V) and s(V).  Components 1, 6, 7, 8 coincide between the
families; the (2,5) vs (2,3) and (3,4) vs (4,5) blocks differ because those
module types occur with multiplicity two.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormSymmetryViolation, NotAlgebraic, NotGeneralizedCurvature
from .linalg import ScalarProduct, antisym, check_same_dim, sym, tensor_pairing
from .spaces import (
    MEMBERSHIP_TOL,
    dot_product,
    membership_residual,
    mu,
    psi,
    ricci,
    ricci_star,
    scalar_curvature,
    wedge,
    wedge_r,
)

FORM_TOL = 1e-10


def _maxnorm(t) -> float:
    return float(np.max(np.abs(t))) if t.size else 0.0


def _require_space(t, g, space, tol):
    res = membership_residual(t, g, space)
    if res > tol:
        err = NotGeneralizedCurvature if space == "r" else NotAlgebraic
        raise err(f"membership residual {res:.3e} in {space!r} exceeds {tol:.0e}")


def w_projections(t, g: ScalarProduct) -> list[np.ndarray]:
    """The eight W-components of t, in order, from the closed-form projectors."""
    t = np.asarray(t, dtype=float)
    n = check_same_dim(t, g.matrix)
    gm = g.matrix
    ric = ricci(t, g)
    star = ricci_star(t, g)
    tau = scalar_curvature(t, g)
    lric, lstar = antisym(ric), antisym(star)
    gg = wedge(gm, gm)
    ps, m = psi(t), mu(t)

    p1 = (-tau / (n * (n - 1))) * gg
    p2 = wedge((tau / n) * gm - sym(ric), gm) / (n - 1)
    p3 = (-1.0 / (n + 1)) * (2.0 * dot_product(lric, gm) + wedge(lric, gm))
    p4 = (-1.0 / (n * n - 4)) * (
        2.0 * dot_product(lstar, gm) + wedge_r(lstar, gm, n + 1)
    ) - (3.0 / ((n * n - 4) * (n + 1))) * (
        2.0 * dot_product(lric, gm) + wedge_r(lric, gm, n + 1)
    )
    p5 = (
        tau * gg - wedge_r(sym(ric + (n - 1) * star), gm, n - 1) / n
    ) / ((n - 1) * (n - 2))
    p6 = (
        ps
        + wedge_r(sym(ric + star), gm, 1) / (2 * (n - 2))
        - (tau / ((n - 1) * (n - 2))) * gg
    )
    b7 = antisym(3.0 * ric - star)
    p7 = (
        m
        + wedge_r(sym(ric - star), gm, -1) / (2 * n)
        + dot_product(b7, gm) / (2 * (n + 2))
        + wedge_r(b7, gm, -1) / (4 * (n + 2))
    )
    b8 = lric + lstar
    p8 = (
        t
        - ps
        - m
        + dot_product(b8, gm) / (2 * (n - 2))
        + wedge_r(b8, gm, 3) / (4 * (n - 2))
    )
    return [p1, p2, p3, p4, p5, p6, p7, p8]


def a_projections(t, g: ScalarProduct) -> list[np.ndarray]:
    """The eight A-components of t, in order."""
    t = np.asarray(t, dtype=float)
    n = check_same_dim(t, g.matrix)
    gm = g.matrix
    ric = ricci(t, g)
    star = ricci_star(t, g)
    tau = scalar_curvature(t, g)
    gg = wedge(gm, gm)
    ps, m = psi(t), mu(t)

    a1 = (-tau / (n * (n - 1))) * gg
    a2 = (
        -wedge_r(sym(ric + star), gm, 1) / (2 * (n - 2))
        + (2 * tau / (n * (n - 2))) * gg
    )
    a3 = -wedge_r(sym(ric - star), gm, -1) / (2 * n)
    b4 = antisym(3.0 * ric - star)
    a4 = (-1.0 / (4 * (n + 2))) * (2.0 * dot_product(b4, gm) + wedge_r(b4, gm, -1))
    b5 = antisym(ric + star)
    a5 = (-1.0 / (4 * (n - 2))) * (2.0 * dot_product(b5, gm) + wedge_r(b5, gm, 3))
    a6 = ps - a1 - a2
    a7 = m - a3 - a4
    a8 = t - m - ps - a5
    return [a1, a2, a3, a4, a5, a6, a7, a8]


@dataclass(frozen=True)
class DecompositionResult:
    """Components of one decomposition plus reconstruction diagnostics.

    components holds 8 tensors for modes 'W' and 'A', or 3 for mode 'ST'
    (constant-curvature, traceless-Ricci, Ricci-flat parts, in that order).
    completeness_residual is ||sum - input|| / ||input|| in max norm;
    orthogonality_matrix holds all pairwise tensor pairings.
    """

    mode: str
    components: list[np.ndarray]
    completeness_residual: float
    orthogonality_matrix: np.ndarray


def _result(mode, t, comps, g) -> DecompositionResult:
    total = np.sum(comps, axis=0)
    scale = _maxnorm(t)
    residual = _maxnorm(total - t) / scale if scale > 0 else _maxnorm(total)
    k = len(comps)
    gram = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            gram[i, j] = gram[j, i] = tensor_pairing(comps[i], comps[j], g)
    return DecompositionResult(mode, list(comps), residual, gram)


def w_decompose(t, g: ScalarProduct, tol: float = MEMBERSHIP_TOL) -> DecompositionResult:
    """Split a generalized curvature tensor into its eight W-components."""
    t = np.asarray(t, dtype=float)
    _require_space(t, g, "r", tol)
    return _result("W", t, w_projections(t, g), g)


def a_decompose(t, g: ScalarProduct, tol: float = MEMBERSHIP_TOL) -> DecompositionResult:
    """Split a generalized curvature tensor into its eight A-components."""
    t = np.asarray(t, dtype=float)
    _require_space(t, g, "r", tol)
    return _result("A", t, a_projections(t, g), g)


def singer_thorpe(t, g: ScalarProduct, tol: float = MEMBERSHIP_TOL) -> DecompositionResult:
    """Three-way split of an algebraic curvature tensor.

    Delegates to the A-components: the constant-curvature part is component 1,
    the traceless-Ricci part component 2, and the Ricci-flat (Weyl-type) part
    component 6; on a(V) these three sum back to the input.
    """
    t = np.asarray(t, dtype=float)
    _require_space(t, g, "a", tol)
    comps = a_projections(t, g)
    return _result("ST", t, [comps[0], comps[1], comps[5]], g)


def projective_part(t, g: ScalarProduct, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """The Ricci-free part of t: the input minus its first three W-components.

    On tensors with symmetric Ricci this equals t + wedge(Ric, g)/(n-1).
    """
    t = np.asarray(t, dtype=float)
    _require_space(t, g, "r", tol)
    comps = w_projections(t, g)
    return t - comps[0] - comps[1] - comps[2]


def traceless_core(t, g: ScalarProduct, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """Projection onto the totally trace-free subspace (Ric = Ric* = 0).

    Computed by the closed five-term correction formula; agrees with
    subtracting the first five W-components.
    """
    t = np.asarray(t, dtype=float)
    _require_space(t, g, "r", tol)
    n = g.dim
    gm = g.matrix
    ric = ricci(t, g)
    star = ricci_star(t, g)
    tau = scalar_curvature(t, g)
    return (
        t
        + (2.0 / (n * n - 4)) * dot_product(antisym((n - 1) * ric + star), gm)
        + wedge((n - 1) * antisym(ric) + (n + 1) * sym(ric), gm) / (n * n - 1)
        + wedge_r(antisym(3.0 * ric + (n + 1) * star), gm, n + 1)
        / ((n * n - 4) * (n + 1))
        + wedge_r(sym(ric + (n - 1) * star), gm, n - 1) / (n * (n - 1) * (n - 2))
        - (tau / ((n - 1) * (n - 2))) * wedge(gm, gm)
    )


def b_forms(t, g: ScalarProduct, tol: float = MEMBERSHIP_TOL) -> tuple[np.ndarray, np.ndarray]:
    """The two projective-flatness indicator forms built from the trace data.

    Returns (b_star, b) with b_star = sym(Ric* + (n-1) Ric) - tau g and
    b = sym((n-1) Ric* + Ric) - tau g; b_star vanishes exactly when the
    conjugate tensor is of projectively flat type.
    """
    t = np.asarray(t, dtype=float)
    _require_space(t, g, "r", tol)
    n = g.dim
    ric = ricci(t, g)
    star = ricci_star(t, g)
    tau = scalar_curvature(t, g)
    b_star = sym(star + (n - 1) * ric) - tau * g.matrix
    b = sym((n - 1) * star + ric) - tau * g.matrix
    return b_star, b


def sigma_split(omega, theta, g: ScalarProduct) -> np.ndarray:
    """Right inverse of the Ricci trace on the antisymmetric + symmetric data.

    Builds the canonical (1,3) operator with Ricci tensor omega + theta and
    lowers its last index with g.  omega must be antisymmetric and theta
    symmetric within 1e-10.
    """
    omega = np.asarray(omega, dtype=float)
    theta = np.asarray(theta, dtype=float)
    n = check_same_dim(omega, theta, g.matrix)
    if _maxnorm(omega + omega.T) > FORM_TOL * max(1.0, _maxnorm(omega)):
        raise FormSymmetryViolation("omega is not antisymmetric")
    if _maxnorm(theta - theta.T) > FORM_TOL * max(1.0, _maxnorm(theta)):
        raise FormSymmetryViolation("theta is not symmetric")
    gm = g.matrix
    part1 = (-1.0 / (1 + n)) * (2.0 * dot_product(omega, gm) + wedge(omega, gm))
    part2 = wedge(theta, gm) / (1 - n)
    return part1 + part2


def equiaffine_einstein_check(t, g: ScalarProduct, tol: float = MEMBERSHIP_TOL) -> bool:
    """True when the trace-adjusting W-components 2 and 3 both vanish.

    Equivalent to Ric = (tau/n) g, the Einstein condition for a Ricci
    symmetric torsion-free connection.
    """
    t = np.asarray(t, dtype=float)
    _require_space(t, g, "r", tol)
    comps = w_projections(t, g)
    scale = _maxnorm(t)
    if scale == 0.0:
        return True
    return max(_maxnorm(comps[1]), _maxnorm(comps[2])) / scale <= tol


class ProjectionFamily:
    """One projector family (mode 'W' or 'A') over a fixed scalar product.

    apply(j, t) evaluates the j-th projector (0-based); matrix(j)
    materializes it as an (n^4, n^4) array over the coefficient space, for
    rank analysis.  The maps are projectors only on r(V): idempotence and
    vanishing cross-compositions hold there, not on all of tensor space.
    """

    def __init__(self, mode: str, g: ScalarProduct):
        if mode not in ("W", "A"):
            raise ValueError(f"mode must be 'W' or 'A', got {mode!r}")
        self.mode = mode
        self.g = g
        self._matrices: dict[int, np.ndarray] = {}

    def _all(self, t):
        return w_projections(t, self.g) if self.mode == "W" else a_projections(t, self.g)

    def apply(self, j: int, t) -> np.ndarray:
        return self._all(t)[j]

    def matrix(self, j: int) -> np.ndarray:
        if j not in self._matrices:
            n = self.g.dim
            cols = [np.empty((n**4, n**4)) for _ in range(8)]
            basis = np.zeros(n**4)
            for e in range(n**4):
                basis[e] = 1.0
                comps = self._all(basis.reshape(n, n, n, n))
                basis[e] = 0.0
                for i in range(8):
                    cols[i][:, e] = comps[i].ravel()
            self._matrices = dict(enumerate(cols))
        return self._matrices[j]
