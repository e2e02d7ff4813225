"""Test the host model: types, objective, initialization and checkpoints."""

import json

import numpy as np
import pytest
from helpers import random_dataset, random_state

from src.core.errors import ConfigError, InvariantViolationError, ShapeError
from src.data.transforms import normalize_features
from src.model import (
    HyperParams,
    ModelState,
    ObjectiveBreakdown,
    PaceState,
    TrainingProblem,
    initialize,
    load_checkpoint,
    objective,
    predict_labels,
    predict_scores,
    residual_loss,
    save_checkpoint,
)
from src.partition.types import GroupPartition


def reference_objective(state, pace, ds, part, params) -> float:
    """Objective written term by term with explicit traces."""
    X, Y, J = ds.features, ds.labels, ds.mask
    U, V, W = state.U, state.V, state.W
    F = U @ W.T @ X
    value = np.sum((J * (Y - U @ V)) ** 2)
    value += params.alpha * np.sum(pace.P * (V - W.T @ X) ** 2)
    for b, z in enumerate(state.Z):
        cols = np.flatnonzero(part.assignment == b)
        laplacian = z @ z.T
        value += params.beta1 * cols.size / ds.n_instances * np.trace(F.T @ laplacian @ F)
        value += params.beta2 * np.trace(F[:, cols].T @ laplacian @ F[:, cols])
    value += -pace.lam * pace.P.sum() + pace.gamma * np.linalg.norm(pace.P, axis=1).sum()
    value += params.tau * (np.sum(U**2) + np.sum(V**2) + np.sum(W**2))
    return float(value)


class TestHyperParams:
    """Test hyperparameter validation and defaults."""

    def test_defaults_cap_latent_sizes(self):
        assert HyperParams.with_defaults(5, g=2).k == 5
        params = HyperParams.with_defaults(30)
        assert (params.k, params.m) == (20, 20)

    def test_explicit_values_kept(self):
        params = HyperParams.with_defaults(30, k=4, m=None, g=3)
        assert (params.k, params.m, params.g) == (4, 20, 3)

    @pytest.mark.parametrize("field", ["k", "m", "g"])
    def test_positive_sizes(self, field):
        kwargs = {"k": 2, "m": 2, "g": 1, field: 0}
        with pytest.raises(ConfigError, match=field):
            HyperParams(**kwargs)

    def test_negative_weight(self):
        with pytest.raises(ConfigError, match="tau"):
            HyperParams(k=2, m=2, tau=-1.0)

    def test_dict_round_trip(self):
        params = HyperParams(k=3, m=2, g=2, alpha=2.0)
        assert HyperParams.from_dict({**params.to_dict(), "extra": 1}) == params


class TestPaceState:
    """Test pace-state construction."""

    def test_initial_all_ones(self):
        pace = PaceState.initial(2, 3, lam=0.1, gamma=1.0, mu1=1.2, mu2=0.9)
        np.testing.assert_array_equal(pace.P, np.ones((2, 3)))
        assert not pace.fixed
        assert pace.mean_weight == 1.0

    def test_frozen(self):
        pace = PaceState.frozen(2, 3)
        assert pace.fixed
        assert (pace.lam, pace.gamma, pace.mu1, pace.mu2) == (0.0, 0.0, 1.0, 1.0)

    def test_lambda_positive_unless_fixed(self):
        with pytest.raises(ConfigError, match="lambda"):
            PaceState(P=np.ones((1, 2)), lam=0.0, gamma=0.0)

    def test_weights_in_unit_interval(self):
        with pytest.raises(ConfigError, match="pace weights"):
            PaceState(P=np.array([[0.5, 1.5]]), lam=1.0, gamma=0.0)

    @pytest.mark.parametrize("mu1, mu2", [(0.9, 0.9), (1.2, 0.0), (1.2, 1.1)])
    def test_annealing_ratios(self, mu1, mu2):
        with pytest.raises(ConfigError):
            PaceState(P=np.ones((1, 2)), lam=1.0, gamma=1.0, mu1=mu1, mu2=mu2)


class TestModelState:
    def test_unit_rows(self):
        state = ModelState(
            U=np.ones((2, 1)), V=np.ones((1, 2)), W=np.ones((2, 1)), Z=[np.ones((2, 2))]
        )
        with pytest.raises(InvariantViolationError):
            state.check_unit_rows()
        assert state.max_row_norm_error() == pytest.approx(np.sqrt(2) - 1)

    def test_copy_is_independent(self):
        state = ModelState(U=np.ones((2, 1)), V=np.ones((1, 2)), W=np.ones((2, 1)), Z=[])
        clone = state.copy()
        clone.U[0, 0] = 5.0
        assert state.U[0, 0] == 1.0
        assert not clone.equals(state)


class TestObjectiveBreakdown:
    def test_total_and_smooth(self):
        breakdown = ObjectiveBreakdown(1.0, 2.0, 3.0, 4.0, -5.0, 6.0, 7.0)
        assert breakdown.total == 18.0
        assert breakdown.smooth == 17.0
        assert breakdown.to_dict()["total"] == 18.0


class TestObjective:
    """Test the unified objective."""

    def test_matches_trace_formulation(self, small_problem):
        ds, part, params, state, pace = small_problem
        value = objective(state, pace, ds, part, params).total
        assert value == pytest.approx(reference_objective(state, pace, ds, part, params), rel=1e-10)

    def test_frozen_pace_total_equals_smooth(self, small_problem):
        ds, part, params, state, _ = small_problem
        breakdown = objective(state, PaceState.frozen(3, 10), ds, part, params)
        assert breakdown.pace_l1 == 0.0 and breakdown.pace_l2 == 0.0
        assert breakdown.total == breakdown.smooth

    def test_rejects_off_manifold_factor(self, small_problem):
        ds, part, params, state, pace = small_problem
        state = state.copy()
        state.Z[0] = state.Z[0] * 2.0
        with pytest.raises(InvariantViolationError):
            objective(state, pace, ds, part, params)
        objective(state, pace, ds, part, params, check_constraints=False)

    def test_group_count_mismatch(self, small_problem):
        ds, _, params, state, pace = small_problem
        with pytest.raises(ShapeError, match="groups"):
            objective(state, pace, ds, GroupPartition.single(10), params)

    def test_block_shape_mismatch(self, small_problem):
        ds, part, params, state, pace = small_problem
        state = state.copy()
        state.V = state.V[:, :-1]
        with pytest.raises(ShapeError, match="V has shape"):
            objective(state, pace, ds, part, params)

    def test_group_weights(self, small_problem):
        ds, part, params, _, _ = small_problem
        problem = TrainingProblem(ds, part, params)
        X = ds.features
        cols = np.flatnonzero(part.assignment == 1)
        expected = params.beta1 * cols.size / 10 * X @ X.T
        expected += params.beta2 * X[:, cols] @ X[:, cols].T
        np.testing.assert_allclose(problem.group_weights[1], expected)


class TestPrediction:
    """Test score and label prediction."""

    def test_scores(self, small_problem):
        _, _, _, state, _ = small_problem
        features = np.random.default_rng(0).normal(size=(6, 4))
        scores = predict_scores(state, features)
        np.testing.assert_allclose(scores, state.U @ state.W.T @ features)

    def test_feature_dimension_checked(self, small_problem):
        _, _, _, state, _ = small_problem
        with pytest.raises(ShapeError):
            predict_scores(state, np.zeros((5, 2)))

    def test_zero_score_is_positive(self):
        np.testing.assert_array_equal(predict_labels(np.array([[0.0, -1e-9, 2.0]])), [[1, -1, 1]])

    def test_residual_loss(self, small_problem):
        ds, _, params, state, _ = small_problem
        expected = params.alpha * (state.V - state.W.T @ ds.features) ** 2
        np.testing.assert_allclose(residual_loss(state, ds, params), expected)


class TestInitialize:
    """Test the spectral warm start."""

    def test_shapes_and_unit_rows(self):
        ds = random_dataset(6, 12, 5, seed=3)
        params = HyperParams(k=3, m=2, g=2)
        state = initialize(ds, params, seed=0)
        assert state.dims == {"d": 6, "n": 12, "l": 5, "k": 3, "m": 2, "g": 2}
        state.check_unit_rows()

    def test_low_rank_reconstruction(self):
        """UV is the best rank-k approximation of the observed labels."""
        ds = random_dataset(6, 12, 5, seed=3)
        state = initialize(ds, HyperParams(k=2, m=2), seed=0)
        left, s, right = np.linalg.svd(ds.mask * ds.labels, full_matrices=False)
        expected = left[:, :2] @ np.diag(s[:2]) @ right[:2]
        np.testing.assert_allclose(state.U @ state.V, expected, atol=1e-10)

    def test_seeded(self):
        ds = random_dataset(6, 12, 5, seed=3)
        params = HyperParams(k=3, m=2, g=2)
        assert initialize(ds, params, seed=4).equals(initialize(ds, params, seed=4))
        assert not initialize(ds, params, seed=4).equals(initialize(ds, params, seed=5))

    def test_rank_larger_than_labels(self):
        ds = random_dataset(6, 12, 3, seed=3)
        with pytest.raises(ConfigError, match="k=4"):
            initialize(ds, HyperParams(k=4, m=2), seed=0)


class TestCheckpoint:
    """Test checkpoint persistence."""

    def test_save_load_exact(self, tmp_path):
        ds = random_dataset(6, 12, 5, seed=0)
        _, stats = normalize_features(ds)
        state = random_state(6, 12, 5, 3, 2, 2, seed=0)
        params = HyperParams(k=3, m=2, g=2)
        path = save_checkpoint(tmp_path / "model.json", state, params, stats)
        loaded = load_checkpoint(path)
        assert loaded.state.equals(state)
        assert loaded.params == params
        np.testing.assert_array_equal(loaded.normalizer.mean, stats.mean)
        assert loaded.dims["g"] == 2

    def test_identical_bytes(self, tmp_path):
        state = random_state(4, 5, 3, 2, 2, 1, seed=0)
        params = HyperParams(k=2, m=2)
        first = save_checkpoint(tmp_path / "a.json", state, params).read_bytes()
        second = save_checkpoint(tmp_path / "b.json", state.copy(), params).read_bytes()
        assert first == second

    def test_missing(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_checkpoint(tmp_path / "none.json")

    def test_wrong_format(self, tmp_path):
        path = tmp_path / "other.json"
        path.write_text(json.dumps({"format": "other", "version": 1}))
        with pytest.raises(ConfigError, match="spmld-checkpoint"):
            load_checkpoint(path)

    def test_dims_mismatch(self, tmp_path):
        state = random_state(4, 5, 3, 2, 2, 1, seed=0)
        path = save_checkpoint(tmp_path / "m.json", state, HyperParams(k=2, m=2))
        payload = json.loads(path.read_text())
        payload["dims"]["d"] = 7
        path.write_text(json.dumps(payload))
        with pytest.raises(ShapeError):
            load_checkpoint(path)
