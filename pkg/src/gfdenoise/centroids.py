"""Statistical verification of centroid behavior under low-pass filtering.

For i.i.d. isotropic Gaussian class features, the ideal rank-k low-pass
filter has closed-form effects on the class centroid that can be checked
against Monte Carlo simulation. `analytic_centroid_factors` returns the
closed-form scaling factors derived with the complete graph's constant
eigenvector taken as 1/sqrt(m-1) per entry; the simulation uses the
unit-norm eigenvector (entries 1/sqrt(m)), under which the k=1 filter
preserves the centroid exactly, so the two are reported side by side
rather than asserted equal.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidRange, InvalidSize
from .graphs import class_graph
from .spectral import (
    SpectralBasis,
    apply_filter,
    eigendecompose,
    ideal_lowpass_response,
    normalized_laplacian,
)


@dataclass(frozen=True)
class GaussianClassSpec:
    """One class of m samples drawn i.i.d. from N(mu, sigma^2 I_d)."""

    mu: np.ndarray
    sigma: float
    m: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=np.float64))
        if self.mu.shape != (self.d,):
            raise InvalidSize(f"mu must have shape ({self.d},), got {self.mu.shape}")
        if self.sigma <= 0.0:
            raise InvalidSize(f"sigma must be positive, got {self.sigma}")
        if self.m < 2:
            raise InvalidSize(f"need m >= 2 samples, got {self.m}")


@dataclass(frozen=True)
class CentroidStats:
    """Empirical moments aggregated over Monte Carlo trials.

    mean_est is the per-coordinate average of the class centroid across
    trials. cov_trace_est is the trace of the empirical covariance of the
    individual feature rows pooled over all trials; for the filtered arm
    this tracks how tightly the filter concentrates samples around the
    class mean (for a complete graph with k=1 the filtered rows collapse
    onto the centroid, so it equals the centroid covariance trace).
    """

    mean_est: np.ndarray
    cov_trace_est: float
    trials: int


def sample_gaussian_class(spec: GaussianClassSpec, seed) -> np.ndarray:
    """Draw the m x d feature block; deterministic given the seed."""
    rng = np.random.default_rng(seed)
    return spec.mu + spec.sigma * rng.standard_normal((spec.m, spec.d))


def centroid(F: np.ndarray) -> np.ndarray:
    """Arithmetic mean of the feature rows."""
    return np.asarray(F, dtype=np.float64).mean(axis=0)


def filtered_centroid(F: np.ndarray, basis: SpectralBasis, k: int) -> np.ndarray:
    """Centroid of the features after the ideal rank-k low-pass filter."""
    F = np.asarray(F, dtype=np.float64)
    return centroid(apply_filter(basis, ideal_lowpass_response(k, F.shape[0]), F))


def lowpass_mean_weight(basis: SpectralBasis, k: int, m: int) -> float:
    """Scalar relating the filtered centroid's expectation to the raw one:
    (1/m) * sum_{j<=k} (1^T u_j)^2.

    Equals 1 for k = m on any graph (the squared entry sums of a full
    orthonormal basis add up to m).
    """
    if not 1 <= k <= m:
        raise InvalidRange(f"need 1 <= k <= m, got k={k} m={m}")
    col_sums = basis.eigenvectors[:, :k].sum(axis=0)
    return float(np.sum(col_sums**2) / m)


def lowpass_cov_weights(basis: SpectralBasis, k: int, m: int) -> np.ndarray:
    """Squared column sums of the rank-k projector U_{:,:k} U_{:,:k}^T.

    These weight the per-coordinate covariance of the filtered centroid;
    for k = m the projector is the identity and every weight is 1.
    """
    if not 1 <= k <= m:
        raise InvalidRange(f"need 1 <= k <= m, got k={k} m={m}")
    Uk = basis.eigenvectors[:, :k]
    projector = Uk @ Uk.T
    return projector.sum(axis=0) ** 2


def analytic_centroid_factors(m: int) -> tuple[float, float]:
    """Closed-form (mean_factor, cov_factor) for the k=1 low-pass on a
    complete graph of m vertices, derived with the constant eigenvector
    normalized to entries 1/sqrt(m-1): mean factor 1/(1 - 1/m), covariance
    factor 1/(m (1 - 1/m)^2).

    With the unit-norm eigenvector (entries 1/sqrt(m)) the measured mean
    factor is exactly 1; verify-theory reports both without reconciling
    them. As m grows the factors tend to (1, 0).
    """
    if m < 2:
        raise InvalidSize(f"need m >= 2, got {m}")
    shrink = 1.0 - 1.0 / m
    return 1.0 / shrink, 1.0 / (m * shrink**2)


def monte_carlo_centroid_stats(
    spec: GaussianClassSpec,
    graph_kind: str = "complete",
    k: int = 1,
    trials: int = 10_000,
    seed: int = 0,
    knn_k: int | None = None,
) -> tuple[CentroidStats, CentroidStats]:
    """Simulate the class many times and aggregate raw vs filtered moments.

    Per trial: draw the features, build the class graph, apply the ideal
    rank-k low-pass, and accumulate both the raw and the filtered rows.
    Trials use seed streams spawned from one master seed, so each trial is
    reproducible independent of execution order. Returns (raw, filtered)
    stats; callers should use >= 100 trials for meaningful estimates.
    """
    if not 1 <= k <= spec.m:
        raise InvalidRange(f"need 1 <= k <= m, got k={k} m={spec.m}")
    if trials < 2:
        raise InvalidSize(f"need at least 2 trials, got {trials}")
    if knn_k is None:
        knn_k = spec.m - 1
    gains = ideal_lowpass_response(k, spec.m)
    fixed_basis = None
    if graph_kind == "complete":
        # The complete graph does not depend on the sampled features, so
        # its eigenbasis can be reused across trials.
        fixed_basis = eigendecompose(normalized_laplacian(class_graph(
            np.zeros((spec.m, 1)), "complete", knn_k)))

    d = spec.d
    sums = np.zeros((2, d))
    sumsq = np.zeros((2, d))
    for child in np.random.SeedSequence(seed).spawn(trials):
        F = sample_gaussian_class(spec, child)
        basis = fixed_basis
        if basis is None:
            basis = eigendecompose(normalized_laplacian(class_graph(F, graph_kind, knn_k)))
        F_f = apply_filter(basis, gains, F)
        sums[0] += F.sum(axis=0)
        sumsq[0] += (F**2).sum(axis=0)
        sums[1] += F_f.sum(axis=0)
        sumsq[1] += (F_f**2).sum(axis=0)

    count = trials * spec.m
    means = sums / count
    traces = (sumsq - count * means**2).sum(axis=1) / (count - 1)
    raw = CentroidStats(mean_est=means[0], cov_trace_est=float(traces[0]), trials=trials)
    filtered = CentroidStats(mean_est=means[1], cov_trace_est=float(traces[1]), trials=trials)
    return raw, filtered
