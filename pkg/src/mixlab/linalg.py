"""Dense linear algebra for small symmetric and integer matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class LinalgError(ArithmeticError):
    pass


class NotSymmetricError(LinalgError):
    pass


class NoConvergenceError(LinalgError):
    pass


class NumericallySingularError(LinalgError):
    pass


MAX_JACOBI_SWEEPS = 64
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in ascending order and the worst eigenpair residual."""

    values: np.ndarray
    residual: float

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _check_symmetric(m: np.ndarray) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise LinalgError("matrix has non-finite entries")
    if a.size and np.max(np.abs(a - a.T)) > SYMMETRY_TOL:
        raise NotSymmetricError("matrix is not symmetric within 1e-12")
    return (a + a.T) / 2


def jacobi_eigh(m, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigen-decomposition of a symmetric matrix.

    Sweeps over all (p, q) pairs until the largest off-diagonal entry is at
    most ``tol * ||m||_F``.  Returns unsorted eigenvalues and the matrix of
    eigenvectors (columns).
    """
    a = _check_symmetric(m).copy()
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return np.diag(a).copy(), v
    target = tol * max(np.linalg.norm(a), np.finfo(float).tiny)
    for _ in range(MAX_JACOBI_SWEEPS):
        off = np.abs(a - np.diag(np.diag(a)))
        if off.max() <= target:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= target * 1e-3:
                    continue
                # Rutishauser's stable rotation parameters.
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    off = np.abs(a - np.diag(np.diag(a)))
    if off.max() <= target:
        return np.diag(a).copy(), v
    raise NoConvergenceError(f"Jacobi did not converge in {MAX_JACOBI_SWEEPS} sweeps")


def symmetric_eigenvalues(m, tol: float = 1e-12, method: str = "lapack") -> Spectrum:
    """All eigenvalues of a symmetric matrix, ascending, with residual.

    ``method="jacobi"`` runs the cyclic Jacobi solver above; the default
    ``"lapack"`` calls :func:`numpy.linalg.eigh`, which is much faster on the
    many small matrices of a corpus sweep.
    """
    a = _check_symmetric(m)
    if method == "jacobi":
        w, vec = jacobi_eigh(a, tol)
    elif method == "lapack":
        w, vec = np.linalg.eigh(a)
    else:
        raise ValueError(f"unknown eigen method {method!r}")
    order = np.argsort(w, kind="stable")
    w, vec = w[order], vec[:, order]
    residual = float(np.max(np.linalg.norm(a @ vec - vec * w, axis=0))) if len(w) else 0.0
    return Spectrum(values=w, residual=residual)


def exact_determinant(m) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    rows = [[int(x) for x in row] for row in np.asarray(m, dtype=object)]
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise LinalgError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            rik = ri[k]
            for j in range(k + 1, n):
                # Exact: Sylvester's identity guarantees divisibility.
                ri[j] = (ri[j] * pivot - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


def principal_minor(m, k: int = 0) -> np.ndarray:
    """Delete row ``k`` and column ``k``."""
    a = np.asarray(m)
    keep = [i for i in range(a.shape[0]) if i != k]
    return a[np.ix_(keep, keep)]


def real_inverse(m, pivot_tol: float = 1e-10) -> np.ndarray:
    """Gauss-Jordan inverse with partial pivoting."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise LinalgError("inverse needs a square matrix")
    aug = np.hstack([a, np.eye(n)])
    for col in range(n):
        piv = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[piv, col]) < pivot_tol:
            raise NumericallySingularError(f"pivot {aug[piv, col]:.3g} below {pivot_tol:g} in column {col}")
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] /= aug[col, col]
        factors = aug[:, col].copy()
        factors[col] = 0.0
        aug -= np.outer(factors, aug[col])
    return aug[:, n:]


def generalized_eigenvalues_diag(a, b_diag) -> np.ndarray:
    """Roots of det(A - lam B) for symmetric A and positive diagonal B, ascending.

    Reduced to the standard symmetric problem B^-1/2 A B^-1/2.
    """
    d = np.asarray(b_diag, dtype=float)
    s = 1.0 / np.sqrt(d)
    return symmetric_eigenvalues(s[:, None] * np.asarray(a, dtype=float) * s[None, :]).values


def generalized_eigenvalues(a, b) -> np.ndarray:
    """Roots of det(A - lam B) for symmetric A and symmetric positive definite B."""
    b = _check_symmetric(b)
    bw, bv = np.linalg.eigh(b)
    if bw.min() <= 0:
        raise LinalgError("B is not positive definite")
    inv_sqrt = (bv / np.sqrt(bw)) @ bv.T
    c = inv_sqrt @ _check_symmetric(a) @ inv_sqrt
    return symmetric_eigenvalues((c + c.T) / 2).values
