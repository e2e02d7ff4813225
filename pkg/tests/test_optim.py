"""Test gradients, line search and block coordinate descent."""

import numpy as np
import pandas as pd
import pytest
from helpers import alternating_partition, random_dataset, random_state

from src.core.errors import ConfigError, NumericalError, RangeError
from src.data.synthetic import synthesize
from src.data.transforms import mask_labels, normalize_features
from src.model.glocal import evaluate_objective, initialize
from src.model.problem import TrainingProblem
from src.model.types import HyperParams, ModelState, PaceState
from src.optim import (
    TRACE_COLUMNS,
    OptimConfig,
    block_ids,
    finite_difference_gradient,
    fit,
    grad_U,
    grad_V,
    grad_W,
    grad_Z,
    line_search_step,
    project_unit_rows,
    tangent_project,
)
from src.partition.kmeans import kmeans


def with_block(state: ModelState, block: str, value: np.ndarray) -> ModelState:
    Z = list(state.Z)
    blocks = {"U": state.U, "V": state.V, "W": state.W}
    if block.startswith("Z"):
        Z[int(block[1:])] = value
    else:
        blocks[block] = value
    return ModelState(U=blocks["U"], V=blocks["V"], W=blocks["W"], Z=Z)


def block_value(state: ModelState, block: str) -> np.ndarray:
    return state.Z[int(block[1:])] if block.startswith("Z") else getattr(state, block)


def synthetic_problem(seed: int, rho: float = 0.7, g: int = 2):
    ds, _ = synthesize(10, 60, 6, 3, g, noise_rate=0.3, hard_fraction=0.2, seed=seed)
    ds, _ = normalize_features(mask_labels(ds, rho, seed))
    part = kmeans(ds.features, g, seed=seed)
    params = HyperParams(k=3, m=3, g=g)
    return ds, part, params


class TestManifold:
    """Test the unit-row helpers."""

    def test_project_unit_rows(self):
        Z = np.array([[3.0, 4.0], [0.0, 0.0], [0.0, -2.0]])
        projected = project_unit_rows(Z)
        np.testing.assert_allclose(projected, [[0.6, 0.8], [1.0, 0.0], [0.0, -1.0]])
        np.testing.assert_array_equal(Z[1], [0.0, 0.0])

    def test_tangent_is_orthogonal(self):
        rng = np.random.default_rng(0)
        Z = project_unit_rows(rng.normal(size=(5, 3)))
        tangent = tangent_project(Z, rng.normal(size=(5, 3)))
        np.testing.assert_allclose(np.sum(tangent * Z, axis=1), 0.0, atol=1e-12)


class TestGradients:
    """Test analytic gradients against central differences."""

    @pytest.mark.parametrize("seed", range(20))
    def test_match_finite_differences(self, seed):
        ds = random_dataset(6, 10, 5, seed=seed)
        part = alternating_partition(10, 2)
        params = HyperParams(k=3, m=2, g=2, alpha=1.0, beta1=0.5, beta2=0.5, tau=1e-3)
        state = random_state(6, 10, 5, 3, 2, 2, seed=seed + 100)
        rng = np.random.default_rng(seed + 200)
        pace = PaceState(P=rng.random((3, 10)), lam=0.5, gamma=0.3)
        problem = TrainingProblem(ds, part, params)

        analytic = {
            "Z0": grad_Z(problem, state, 0),
            "Z1": grad_Z(problem, state, 1),
            "V": grad_V(problem, state, pace),
            "U": grad_U(problem, state),
            "W": grad_W(problem, state, pace),
        }
        for block, gradient in analytic.items():

            def f(x, block=block):
                candidate = with_block(state, block, x)
                return evaluate_objective(problem, candidate, pace, check_constraints=False).total

            numeric = finite_difference_gradient(f, block_value(state, block))
            error = np.max(np.abs(gradient - numeric)) / max(np.max(np.abs(numeric)), 1.0)
            assert error <= 1e-5, f"{block}: relative error {error:.2e}"

    def test_bad_group(self, small_problem):
        ds, part, params, state, _ = small_problem
        with pytest.raises(RangeError):
            grad_Z(TrainingProblem(ds, part, params), state, 2)


class TestLineSearch:
    """Test one Armijo step."""

    def test_block_order(self):
        assert block_ids(2) == ["Z0", "Z1", "V", "U", "W"]

    @pytest.mark.parametrize("block", ["Z0", "Z1", "V", "U", "W"])
    def test_step_decreases_objective(self, small_problem, block):
        ds, part, params, state, pace = small_problem
        problem = TrainingProblem(ds, part, params)
        before = evaluate_objective(problem, state, pace).smooth
        moved, step = line_search_step(block, problem, state, pace, OptimConfig())
        after = evaluate_objective(problem, moved, pace).smooth
        assert step > 0.0
        assert after < before
        moved.check_unit_rows()

    def test_input_state_not_modified(self, small_problem):
        ds, part, params, state, pace = small_problem
        original = state.copy()
        line_search_step("W", TrainingProblem(ds, part, params), state, pace, OptimConfig())
        assert state.equals(original)

    def test_unknown_block(self, small_problem):
        ds, part, params, state, pace = small_problem
        with pytest.raises(RangeError, match="Q"):
            line_search_step("Q", TrainingProblem(ds, part, params), state, pace, OptimConfig())

    def test_non_finite_objective(self, small_problem):
        ds, part, params, state, pace = small_problem
        state = state.copy()
        state.V[0, 0] = np.nan
        with pytest.raises(NumericalError) as excinfo:
            line_search_step("V", TrainingProblem(ds, part, params), state, pace, OptimConfig())
        assert excinfo.value.block == "V"
        assert excinfo.value.exit_code == 2


class TestOptimConfig:
    """Test optimizer settings validation."""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"max_outer_iters": -1},
            {"inner_steps_per_block": 0},
            {"armijo_c": 1.0},
            {"backtrack_ratio": 0.0},
            {"rel_tol": 0.0},
            {"seed": -1},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            OptimConfig(**kwargs)

    def test_from_dict_ignores_unknown(self):
        cfg = OptimConfig.from_dict({"max_outer_iters": 3, "other": 1})
        assert cfg.max_outer_iters == 3
        assert OptimConfig.from_dict(cfg.to_dict()) == cfg


class TestFit:
    """Test block coordinate descent end to end."""

    @pytest.mark.parametrize("seed", range(10))
    def test_monotone_descent_with_frozen_pace(self, seed):
        """Every block update keeps the objective from increasing."""
        ds, part, params = synthetic_problem(seed)
        state0 = initialize(ds, params, seed)
        pace = PaceState.frozen(params.k, ds.n_instances)
        cfg = OptimConfig(max_outer_iters=30, rel_tol=1e-12, seed=seed)
        _, _, trace = fit(ds, part, params, pace, cfg, init_state=state0)

        problem = TrainingProblem(ds, part, params)
        values = [evaluate_objective(problem, state0, pace).smooth]
        for record in trace.records:
            values.extend(record.block_objectives[b] for b in block_ids(params.g))
        for previous, current in zip(values, values[1:]):
            assert current <= previous + 1e-12 * abs(previous)
        objectives = trace.objectives
        assert all(b <= a for a, b in zip(objectives, objectives[1:]))

    def test_host_reduction(self):
        """A pace that admits every sample reproduces the host model exactly."""
        ds, part, params = synthetic_problem(seed=0)
        state0 = initialize(ds, params, seed=0)
        cfg = OptimConfig(max_outer_iters=15, seed=0)
        frozen = PaceState.frozen(params.k, ds.n_instances)
        permissive = PaceState.initial(params.k, ds.n_instances, lam=1e6, gamma=0.0)

        host, _, host_trace = fit(ds, part, params, frozen, cfg, init_state=state0)
        spl, spl_pace, spl_trace = fit(ds, part, params, permissive, cfg, init_state=state0)

        assert np.max(np.abs(host.U - spl.U)) <= 1e-12
        assert np.max(np.abs(host.W - spl.W)) <= 1e-12
        np.testing.assert_array_equal(spl_pace.P, np.ones_like(spl_pace.P))
        assert len(host_trace) == len(spl_trace)

    def test_deterministic(self):
        ds, part, params = synthetic_problem(seed=1)
        pace = PaceState.initial(params.k, ds.n_instances, lam=1.0, gamma=1.0, mu1=1.2, mu2=0.9)
        cfg = OptimConfig(max_outer_iters=5, seed=3)
        first = fit(ds, part, params, pace, cfg)
        second = fit(ds, part, params, pace, cfg)
        assert first[0].equals(second[0])
        np.testing.assert_array_equal(first[1].P, second[1].P)
        assert first[2].equals(second[2])

    def test_schedule_recorded(self):
        """λ and γ in the trace follow the annealing schedule."""
        ds, part, params = synthetic_problem(seed=2)
        pace = PaceState.initial(params.k, ds.n_instances, lam=0.5, gamma=2.0, mu1=1.5, mu2=0.5)
        cfg = OptimConfig(max_outer_iters=4, rel_tol=1e-15, seed=2)
        _, _, trace = fit(ds, part, params, pace, cfg, pace_dump=True)
        for i, record in enumerate(trace.records):
            assert record.lam == pytest.approx(0.5 * 1.5**i)
            assert record.gamma == pytest.approx(2.0 * 0.5**i)
            assert 0.0 <= record.mean_p <= 1.0
        assert len(trace.pace_rows) == params.k * len(trace)

    def test_zero_iterations(self):
        ds, part, params = synthetic_problem(seed=0)
        state0 = initialize(ds, params, seed=0)
        pace = PaceState.frozen(params.k, ds.n_instances)
        state, _, trace = fit(
            ds, part, params, pace, OptimConfig(max_outer_iters=0), init_state=state0
        )
        assert state.equals(state0)
        assert len(trace) == 0

    def test_non_finite_state_reports_iteration(self):
        ds, part, params = synthetic_problem(seed=0)
        state0 = initialize(ds, params, seed=0)
        state0.V[0, 0] = np.inf
        pace = PaceState.frozen(params.k, ds.n_instances)
        with pytest.raises(NumericalError, match="iteration 1") as excinfo:
            fit(ds, part, params, pace, OptimConfig(max_outer_iters=3), init_state=state0)
        assert excinfo.value.iteration == 1
        assert excinfo.value.block == "Z0"

    def test_trace_csv(self, tmp_path):
        ds, part, params = synthetic_problem(seed=0)
        pace = PaceState.frozen(params.k, ds.n_instances)
        _, _, trace = fit(ds, part, params, pace, OptimConfig(max_outer_iters=3))
        frame = pd.read_csv(trace.write_trace_csv(tmp_path / "trace.csv"))
        assert list(frame.columns) == TRACE_COLUMNS
        assert frame["iter"].tolist() == list(range(1, len(trace) + 1))
