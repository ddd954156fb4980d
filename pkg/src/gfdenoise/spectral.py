"""Normalized graph Laplacian, its eigenbasis, and spectral filtering.

Eigenvalues of the normalized Laplacian play the role of frequencies:
a signal on the vertices is transformed into the eigenbasis, reweighted
per frequency by a gain vector, and transformed back.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, InvalidRange, IsolatedVertex

# Eigenvalues of a normalized Laplacian are >= 0 up to round-off from the
# D^{-1/2} scaling; anything above this floor is clamped to 0.
PSD_FLOOR = -1e-9


@dataclass(frozen=True)
class SpectralBasis:
    """Orthonormal eigenvectors (columns) and ascending eigenvalues of a
    symmetric matrix."""

    eigenvectors: np.ndarray  # (n, n)
    eigenvalues: np.ndarray   # (n,), ascending

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def _check_adjacency(W: np.ndarray) -> np.ndarray:
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise DimensionMismatch(f"adjacency must be square, got shape {W.shape}")
    if not np.allclose(W, W.T, atol=1e-12, rtol=0.0):
        raise ValueError("adjacency must be symmetric")
    if np.any(np.diagonal(W) != 0.0):
        raise ValueError("adjacency must have a zero diagonal")
    if W.size and W.min() < 0.0:
        raise ValueError("adjacency weights must be nonnegative")
    return W


def degree_vector(W: np.ndarray) -> np.ndarray:
    """Row sums of the adjacency matrix."""
    return _check_adjacency(W).sum(axis=1)


def normalized_laplacian(W: np.ndarray) -> np.ndarray:
    """Degree-normalized Laplacian I - D^{-1/2} W D^{-1/2}.

    Raises IsolatedVertex if any vertex has zero degree; such a vertex
    must be dropped or reconnected by the caller first.
    """
    W = _check_adjacency(W)
    deg = W.sum(axis=1)
    zero = np.flatnonzero(deg == 0.0)
    if zero.size:
        raise IsolatedVertex(int(zero[0]))
    dinv = 1.0 / np.sqrt(deg)
    L = -(W * np.outer(dinv, dinv))
    np.fill_diagonal(L, 1.0)
    return L


def eigendecompose(L: np.ndarray) -> SpectralBasis:
    """Full symmetric eigendecomposition with deterministic conventions.

    Eigenvalues come back ascending; tiny negatives above the PSD floor
    are clamped to 0. Each eigenvector's entry of largest magnitude is
    made nonnegative (ties broken by lowest index) so repeated runs and
    serialized bases agree; filtering itself is sign-invariant.
    """
    L = np.asarray(L, dtype=np.float64)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got shape {L.shape}")
    try:
        lam, U = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    lam = lam.copy()
    lam[(lam < 0.0) & (lam > PSD_FLOOR)] = 0.0
    anchor = np.argmax(np.abs(U), axis=0)
    flip = U[anchor, np.arange(U.shape[1])] < 0.0
    U[:, flip] = -U[:, flip]
    return SpectralBasis(eigenvectors=U, eigenvalues=lam)


def gft(basis: SpectralBasis, x: np.ndarray) -> np.ndarray:
    """Project a vertex signal onto the eigenbasis (U^T x)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != basis.n:
        raise DimensionMismatch(f"signal length {x.shape[0]} != basis size {basis.n}")
    return basis.eigenvectors.T @ x


def igft(basis: SpectralBasis, xhat: np.ndarray) -> np.ndarray:
    """Reconstruct a vertex signal from its spectrum (U xhat)."""
    xhat = np.asarray(xhat, dtype=np.float64)
    if xhat.shape[0] != basis.n:
        raise DimensionMismatch(f"spectrum length {xhat.shape[0]} != basis size {basis.n}")
    return basis.eigenvectors @ xhat


def apply_filter(basis: SpectralBasis, gains: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Apply the diagonal spectral filter U diag(gains) U^T to F.

    F may be a length-n signal or an n x d matrix; columns are filtered
    independently.
    """
    gains = np.asarray(gains, dtype=np.float64)
    F = np.asarray(F, dtype=np.float64)
    if gains.shape[0] != basis.n:
        raise DimensionMismatch(f"gain length {gains.shape[0]} != basis size {basis.n}")
    if F.shape[0] != basis.n:
        raise DimensionMismatch(f"signal rows {F.shape[0]} != basis size {basis.n}")
    spectrum = basis.eigenvectors.T @ F
    spectrum = spectrum * gains if F.ndim == 1 else spectrum * gains[:, None]
    return basis.eigenvectors @ spectrum


def step_response(k1: int, k2: int, mid_gain: float, n: int) -> np.ndarray:
    """Three-level low-pass gains over ascending frequency index.

    Gain 1 on the k1 lowest frequencies, mid_gain up to index k2, 0 above
    (1-based indices; the boundary index k1 itself keeps gain 1).
    """
    if not 1 <= k1 <= k2 <= n:
        raise InvalidRange(f"need 1 <= k1 <= k2 <= n, got k1={k1} k2={k2} n={n}")
    if not 0.0 <= mid_gain <= 1.0:
        raise InvalidRange(f"mid_gain must be in [0, 1], got {mid_gain}")
    idx = np.arange(1, n + 1)
    return np.where(idx <= k1, 1.0, np.where(idx <= k2, float(mid_gain), 0.0))


def ideal_lowpass_response(k: int, n: int) -> np.ndarray:
    """Gain 1 on the k lowest frequencies, 0 elsewhere."""
    if not 1 <= k <= n:
        raise InvalidRange(f"need 1 <= k <= n, got k={k} n={n}")
    return (np.arange(n) < k).astype(np.float64)
