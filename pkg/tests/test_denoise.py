"""Per-class denoising pipeline tests."""

import numpy as np
import pytest

from gfdenoise.data import LabeledFeatures
from gfdenoise.denoise import DenoiseConfig, SmallClassWarning, denoise_class, denoise_dataset
from gfdenoise.errors import ClassTooSmall, InvalidK, InvalidRange


def gaussian_class(rng, m, d, mu=0.0):
    return mu + rng.standard_normal((m, d))


class TestDenoiseConfig:
    def test_validation(self):
        with pytest.raises(InvalidRange):
            DenoiseConfig(k1=3, k2=2)
        with pytest.raises(InvalidRange):
            DenoiseConfig(k1=0)
        with pytest.raises(InvalidRange):
            DenoiseConfig(mid_gain=1.2)
        with pytest.raises(InvalidK):
            DenoiseConfig(knn_k=0)
        with pytest.raises(InvalidRange):
            DenoiseConfig(graph_kind="ring")

    def test_clipping_to_class_size(self):
        cfg = DenoiseConfig(knn_k=10, k1=1, k2=4)
        eff = cfg.for_class_size(3)
        assert eff.knn_k == 2 and eff.k1 == 1 and eff.k2 == 3

    def test_clipping_noop_for_large_class(self):
        cfg = DenoiseConfig(knn_k=10, k1=20, k2=55)
        assert cfg.for_class_size(500) == cfg


class TestDenoiseClass:
    def test_identity_filter_is_exact(self):
        rng = np.random.default_rng(0)
        F = gaussian_class(rng, 8, 5)
        out = denoise_class(F, DenoiseConfig(k1=8, k2=8, graph_kind="knn", knn_k=3))
        np.testing.assert_allclose(out, F, atol=1e-10)

    def test_complete_graph_rank1_projects_to_mean(self):
        rng = np.random.default_rng(1)
        F = gaussian_class(rng, 9, 4, mu=2.0)
        out = denoise_class(F, DenoiseConfig(k1=1, k2=1, graph_kind="complete"))
        np.testing.assert_allclose(out, np.tile(F.mean(axis=0), (9, 1)), atol=1e-8)

    def test_knn_filter_reduces_variance(self):
        # Low-pass with a kNN graph shrinks the total sample variance of
        # every Gaussian cloud; per-dimension reduction holds for nearly
        # all (trial, dimension) pairs but is not pointwise guaranteed
        # because the weighted graph's lowest mode is not the constant
        # vector.
        rng = np.random.default_rng(2)
        cfg = DenoiseConfig(knn_k=4, k1=1, k2=4, mid_gain=0.6)
        dim_wins = 0
        for _ in range(100):
            F = gaussian_class(rng, 5, 6)
            out = denoise_class(F, cfg)
            assert out.var(axis=0).sum() < F.var(axis=0).sum()
            dim_wins += np.sum(out.var(axis=0) < F.var(axis=0))
        assert dim_wins >= 0.97 * 100 * 6

    def test_complete_graph_filter_reduces_every_dimension(self):
        # With unit weights the centering projector commutes with the
        # filter, so each dimension's sample variance can only shrink.
        rng = np.random.default_rng(21)
        cfg = DenoiseConfig(k1=1, k2=4, mid_gain=0.6, graph_kind="complete")
        for _ in range(100):
            F = gaussian_class(rng, 5, 6)
            out = denoise_class(F, cfg)
            assert np.all(out.var(axis=0) < F.var(axis=0))

    def test_too_small_class(self):
        with pytest.raises(ClassTooSmall):
            denoise_class(np.ones((1, 3)), DenoiseConfig())

    def test_row_order_preserved(self):
        rng = np.random.default_rng(3)
        F = gaussian_class(rng, 6, 4)
        cfg = DenoiseConfig(knn_k=2, k1=1, k2=3, mid_gain=0.6)
        out = np.empty_like(F)
        perm = rng.permutation(6)
        out[perm] = denoise_class(F[perm], cfg)
        np.testing.assert_allclose(out, denoise_class(F, cfg), atol=1e-9)


class TestDenoiseDataset:
    def test_single_class_matches_denoise_class(self):
        rng = np.random.default_rng(4)
        F = gaussian_class(rng, 7, 3)
        data = LabeledFeatures(F, ["a"] * 7)
        cfg = DenoiseConfig(knn_k=3, k1=1, k2=2)
        out = denoise_dataset(data, cfg)
        np.testing.assert_allclose(out.features, denoise_class(F, cfg))
        assert list(out.labels) == ["a"] * 7

    def test_classes_are_isolated_bit_exactly(self):
        rng = np.random.default_rng(5)
        Fa = gaussian_class(rng, 6, 4)
        Fb = gaussian_class(rng, 6, 4, mu=10.0)
        labels = ["a"] * 6 + ["b"] * 6
        cfg = DenoiseConfig(knn_k=3, k1=1, k2=4)
        baseline = denoise_dataset(LabeledFeatures(np.vstack([Fa, Fb]), labels), cfg)
        perturbed = denoise_dataset(
            LabeledFeatures(np.vstack([Fa, Fb[::-1]]), labels), cfg
        )
        assert np.array_equal(
            baseline.features[:6], perturbed.features[:6]
        ), "class a output must not depend on class b rows"

    def test_identity_config_leaves_dataset_unchanged(self):
        rng = np.random.default_rng(6)
        F = gaussian_class(rng, 10, 3)
        labels = ["a"] * 5 + ["b"] * 5
        out = denoise_dataset(LabeledFeatures(F, labels), DenoiseConfig(k1=5, k2=5))
        np.testing.assert_allclose(out.features, F, atol=1e-10)

    def test_small_class_passes_through_with_warning(self):
        rng = np.random.default_rng(7)
        F = gaussian_class(rng, 4, 3)
        labels = ["solo", "pair", "pair", "pair"]
        with pytest.warns(SmallClassWarning):
            out = denoise_dataset(LabeledFeatures(F, labels), DenoiseConfig(k1=1, k2=2))
        np.testing.assert_allclose(out.features[0], F[0])
        assert not np.allclose(out.features[1:], F[1:])

    def test_labels_and_row_order_unchanged(self):
        rng = np.random.default_rng(8)
        F = gaussian_class(rng, 9, 3)
        labels = ["b", "a", "b", "a", "b", "a", "b", "a", "b"]
        out = denoise_dataset(LabeledFeatures(F, labels), DenoiseConfig(knn_k=2, k1=1, k2=2))
        assert list(out.labels) == labels

    def test_variance_contraction_toward_rank1(self):
        # Complete graph + rank-1 filter: pooled variance of filtered rows
        # across trials approaches sigma^2 * d / m.
        rng = np.random.default_rng(9)
        m, d, trials = 20, 8, 1000
        cfg = DenoiseConfig(k1=1, k2=1, graph_kind="complete")
        raw_rows, filt_rows = [], []
        for _ in range(trials):
            F = gaussian_class(rng, m, d)
            raw_rows.append(F)
            filt_rows.append(denoise_class(F, cfg))
        raw_trace = np.vstack(raw_rows).var(axis=0, ddof=1).sum()
        filt_trace = np.vstack(filt_rows).var(axis=0, ddof=1).sum()
        assert raw_trace == pytest.approx(d, rel=0.10)
        assert filt_trace == pytest.approx(d / m, rel=0.10)
