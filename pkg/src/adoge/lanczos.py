"""Lanczos tridiagonalization and Gauss quadrature rules for spectral sums.

Running ``s`` steps of the Lanczos recurrence on the shift operator with a
unit start vector ``q`` produces a symmetric tridiagonal matrix T whose
eigenvalues (Ritz values) and squared first eigenvector components form an
``s``-node Gauss quadrature rule for the spectral measure

    mu(lambda) = sum_i (q . u_i)^2 delta(lambda - lambda_i),

exact for polynomials up to degree 2s - 1. The tridiagonal eigensolution
below is an implicit-shift QL iteration that accumulates only the first row
of the eigenvector matrix, which is all the quadrature weights need and keeps
the cost at O(s^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EigensolverFailure, ZeroStartVector
from .graph import ShiftOperator

# Relative breakdown threshold: beta <= BREAKDOWN_RTOL * ||start|| ends the
# recurrence (the Krylov space became invariant).
BREAKDOWN_RTOL = 1e-12

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class LanczosFactorization:
    """Tridiagonal coefficients of a Lanczos run.

    ``alpha`` holds the s diagonal entries, ``beta`` the s-1 positive
    off-diagonal entries (the breakdown beta, if any, is not included), and
    ``start_norm`` the Euclidean norm of the unnormalized start vector.
    """

    alpha: np.ndarray
    beta: np.ndarray
    steps: int
    start_norm: float


@dataclass(frozen=True)
class QuadratureRule:
    """Discrete measure with nodes ascending in [-1, 1] and weights >= 0.

    ``n_clamped`` counts Ritz values that were clipped back into [-1, 1];
    ``max_overshoot`` records how far the worst one strayed before clipping.
    """

    nodes: np.ndarray
    weights: np.ndarray
    n_clamped: int = 0
    max_overshoot: float = 0.0


def _tql_first_row_py(d, e, z, max_sweeps):
    # Implicit-shift QL iteration on a symmetric tridiagonal matrix,
    # accumulating only the first row of the eigenvector product.
    # d: (n,) diagonal, modified in place to eigenvalues (unsorted);
    # e: (n,) off-diagonal in e[:n-1], workspace; z: (n,) starts as e_1^T.
    # Returns 0 on success, 1 when a value needs more than max_sweeps sweeps.
    n = d.shape[0]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps >= max_sweeps:
                return 1
            sweeps += 1
            # Wilkinson-style shift from the leading 2x2.
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            sgn = 1.0 if g >= 0.0 else -1.0
            g = d[m] - d[l] + e[l] / (g + sgn * r)
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


try:  # pragma: no cover - exercised implicitly everywhere
    from numba import njit

    _tql_first_row = njit(cache=True)(_tql_first_row_py)
except ImportError:  # pragma: no cover
    _tql_first_row = _tql_first_row_py


def tridiag_eigh_first_components(
    alpha, beta, max_sweeps: int = 60
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and first eigenvector components of a tridiagonal matrix.

    Parameters
    ----------
    alpha : array-like, shape (s,)
        Diagonal entries.
    beta : array-like, shape (s-1,)
        Off-diagonal entries.

    Returns
    -------
    (values, first) : eigenvalues in ascending order and the matching first
        components ``e_1^T y_k`` of the orthonormal eigenvectors, so that
        ``sum(first**2) == 1`` up to round-off.
    """
    d = np.array(alpha, dtype=np.float64, copy=True)
    s = d.shape[0]
    if s == 0:
        raise DimensionMismatch("empty tridiagonal matrix")
    e = np.zeros(s, dtype=np.float64)
    b = np.asarray(beta, dtype=np.float64)
    if b.shape[0] != s - 1:
        raise DimensionMismatch(
            f"off-diagonal length {b.shape[0]} does not match diagonal length {s}"
        )
    e[: s - 1] = b
    z = np.zeros(s, dtype=np.float64)
    z[0] = 1.0
    if s > 1 and _tql_first_row(d, e, z, max_sweeps) != 0:
        raise EigensolverFailure(
            f"tridiagonal QL iteration exceeded {max_sweeps} sweeps"
        )
    order = np.argsort(d, kind="stable")
    return d[order], z[order]


def lanczos_tridiagonalize(
    op: ShiftOperator,
    start: np.ndarray,
    max_steps: int,
    reorthogonalize: bool = True,
) -> LanczosFactorization:
    """Run the three-term Lanczos recurrence on a shift operator.

    Parameters
    ----------
    op : ShiftOperator
        Symmetric operator whose spectral measure is being probed.
    start : ndarray, shape (n,)
        Start vector; normalized internally. Must be nonzero.
    max_steps : int
        Iteration budget; the run also stops at ``op.n`` steps or on
        breakdown (``beta <= 1e-12 * ||start||``), whichever comes first.
    reorthogonalize : bool
        Re-project the residual against the full basis each step (classical
        Gram-Schmidt, repeated once when the first pass removed significant
        mass). Keeps Ritz values clean at the cost of O(n s^2) work.

    Raises
    ------
    ZeroStartVector, DimensionMismatch
    """
    v = np.ascontiguousarray(start, dtype=np.float64)
    if v.shape != (op.n,):
        raise DimensionMismatch(f"start vector shape {v.shape} != ({op.n},)")
    start_norm = float(np.linalg.norm(v))
    if start_norm == 0.0:
        raise ZeroStartVector("Lanczos start vector has zero norm")
    if max_steps < 1:
        raise DimensionMismatch(f"max_steps must be >= 1, got {max_steps}")
    tol = BREAKDOWN_RTOL * start_norm
    m = min(int(max_steps), op.n)

    basis = np.empty((m, op.n), dtype=np.float64)
    basis[0] = v / start_norm
    alpha = np.empty(m, dtype=np.float64)
    beta = np.empty(m - 1 if m > 1 else 0, dtype=np.float64)
    steps = m
    for j in range(m):
        q = basis[j]
        w = op.matvec(q)
        if j > 0:
            w -= beta[j - 1] * basis[j - 1]
        a = float(q @ w)
        w -= a * q
        alpha[j] = a
        if j + 1 == m:
            break
        if reorthogonalize:
            prev = basis[: j + 1]
            pre_norm = float(np.linalg.norm(w))
            w -= (prev @ w) @ prev
            # second pass when cancellation ate most of the residual
            if float(np.linalg.norm(w)) < 0.5 * pre_norm:
                w -= (prev @ w) @ prev
        b = float(np.linalg.norm(w))
        if b <= tol:
            steps = j + 1
            break
        beta[j] = b
        basis[j + 1] = w / b
    return LanczosFactorization(
        alpha=alpha[:steps].copy(),
        beta=beta[: steps - 1].copy(),
        steps=steps,
        start_norm=start_norm,
    )


def tridiagonal_quadrature(fac: LanczosFactorization) -> QuadratureRule:
    """Turn a Lanczos factorization into a Gauss quadrature rule.

    Nodes are the Ritz values clipped into [-1, 1]; weights are the squared
    first components of the tridiagonal eigenvectors and sum to 1 up to
    round-off. The rule represents the spectral measure of the *normalized*
    start vector; callers rescale by ``start_norm**2`` as needed.
    """
    nodes, first = tridiag_eigh_first_components(fac.alpha, fac.beta)
    weights = first * first
    overshoot = float(max(np.max(np.abs(nodes)) - 1.0, 0.0))
    clamped = int(np.count_nonzero(np.abs(nodes) > 1.0))
    if clamped:
        nodes = np.clip(nodes, -1.0, 1.0)
    return QuadratureRule(nodes, weights, n_clamped=clamped, max_overshoot=overshoot)


def gauss_quadrature(
    op: ShiftOperator,
    v: np.ndarray,
    eta_l: int,
    reorthogonalize: bool = True,
) -> QuadratureRule:
    """Gauss quadrature rule for the spectral measure of ``v`` (normalized)."""
    fac = lanczos_tridiagonalize(op, v, eta_l, reorthogonalize=reorthogonalize)
    return tridiagonal_quadrature(fac)
