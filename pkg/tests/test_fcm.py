"""
Tests for fuzzy c-means in decision/fcm.py
"""

import numpy as np
import pytest

from decision.fcm import _memberships, fcm_cluster
from models.errors import DegenerateInputError, ParameterError

BLOBS = np.array([[0.0, 0.0], [0.0, 0.1], [0.1, 0.0], [1.0, 1.0], [0.9, 1.0], [1.0, 0.9]])


class TestFcmCluster:
    """Tests for fcm_cluster"""

    def test_two_blobs(self):
        """Separated groups get separate hard labels"""
        result = fcm_cluster(BLOBS, 2, seed=1)
        labels = result.labels
        assert len(set(labels[:3])) == 1
        assert len(set(labels[3:])) == 1
        assert labels[0] != labels[3]
        centers = result.centers[np.argsort(result.centers[:, 0])]
        np.testing.assert_allclose(centers[0], [1 / 30, 1 / 30], atol=0.05)
        np.testing.assert_allclose(centers[1], [29 / 30, 29 / 30], atol=0.05)

    def test_memberships_are_distributions(self):
        """Every membership row sums to one"""
        result = fcm_cluster(BLOBS, 3, seed=2)
        np.testing.assert_allclose(result.membership.sum(axis=1), 1.0)
        assert np.all(result.membership >= 0)

    def test_loss_decreases(self):
        """The objective does not grow over the iterations"""
        result = fcm_cluster(BLOBS, 2, seed=3)
        assert result.history[-1] <= result.history[0] + 1e-12
        assert result.loss == result.history[-1]
        assert result.iterations == len(result.history)

    def test_seeded(self):
        """Same seed, same result; a Generator is accepted too"""
        a = fcm_cluster(BLOBS, 2, seed=5)
        b = fcm_cluster(BLOBS, 2, seed=np.random.default_rng(5))
        np.testing.assert_array_equal(a.membership, b.membership)

    def test_degenerate_raises(self):
        """Fewer distinct points than clusters"""
        with pytest.raises(DegenerateInputError):
            fcm_cluster(np.array([[1.0, 1.0], [1.0, 1.0]]), 2)

    def test_degenerate_allowed(self):
        """Opt-in degenerate mode returns coincident centers"""
        result = fcm_cluster(np.array([[1.0, 1.0], [1.0, 1.0]]), 2, allow_degenerate=True)
        np.testing.assert_array_equal(result.centers, [[1.0, 1.0], [1.0, 1.0]])
        np.testing.assert_allclose(result.membership, 0.5)
        assert result.loss == 0.0

    @pytest.mark.parametrize('kwargs', [{'m': 1.0}, {'n_clusters': 0}, {'max_iter': 0}])
    def test_bad_parameters(self, kwargs):
        """m must exceed one, counts must be positive"""
        with pytest.raises(ParameterError):
            fcm_cluster(BLOBS, **{'n_clusters': 2, **kwargs})


class TestMemberships:
    """Tests for the membership update"""

    def test_point_on_centers_splits(self):
        """A point on two coincident centers splits its membership between them"""
        u = _memberships(np.array([[0.0, 0.0, 1.0]]), 2.0)
        np.testing.assert_allclose(u, [[0.5, 0.5, 0.0]])

    def test_inverse_distance_weighting(self):
        """With m = 2 memberships follow inverse squared distance"""
        u = _memberships(np.array([[1.0, 2.0]]), 2.0)
        np.testing.assert_allclose(u, [[0.8, 0.2]])
