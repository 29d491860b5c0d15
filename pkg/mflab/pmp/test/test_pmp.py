import unittest
from unittest import mock

import numpy as np

from mflab.errors import SweepDivergedError
from mflab.pmp import (
    adjoint_gradient,
    direct_optimize,
    discrete_costate,
    forward_backward_sweep,
    hamiltonian_n,
    integrate_costate_backward,
    maximize_hamiltonian_pointwise,
)
from mflab.problems import ConstantActivation, build_problem, list_entries, sample_initial
from mflab.simulate import ControlGrid, TimeGrid, cost_discrete, integrate_forward

FD_STEP = 1e-6


def _central_difference(p, x0, grid, u):
    gradient = np.empty_like(u)
    for index in np.ndindex(*u.shape):
        plus, minus = u.copy(), u.copy()
        plus[index] += FD_STEP
        minus[index] -= FD_STEP
        j_plus = cost_discrete(p, integrate_forward(p, plus, x0, grid), plus)
        j_minus = cost_discrete(p, integrate_forward(p, minus, x0, grid), minus)
        gradient[index] = (j_plus - j_minus) / (2 * FD_STEP)
    return gradient


class TestHamiltonian(unittest.TestCase):
    def test_model_case_value(self):
        model = build_problem("model_case")
        self.assertAlmostEqual(hamiltonian_n(model, [-1.0, 1.0], [-2.0, 2.0], [-1.0, 1.0]), 1.75, delta=1e-15)
        self.assertEqual(hamiltonian_n(model, [0.3, 0.1], [0.0, 0.0], [0.0, 0.0]), 0.0)
        with self.assertRaises(ValueError):
            hamiltonian_n(model, [0.0, 1.0], [0.0], [0.0, 1.0])

    def test_pointwise_maximum(self):
        model = build_problem("model_case")
        np.testing.assert_array_equal(maximize_hamiltonian_pointwise(model, [-1.0, 1.0], [-2.0, 2.0]), [[-1.0], [1.0]])
        np.testing.assert_allclose(maximize_hamiltonian_pointwise(model, [0.0, 0.0], [0.1, -0.2]), [[0.2], [-0.4]])
        # 최댓값은 격자 위의 어떤 제어보다도 크거나 같다.
        x, r = np.array([-0.3, 0.4]), np.array([0.2, -0.35])
        best = hamiltonian_n(model, x, r, maximize_hamiltonian_pointwise(model, x, r))
        for a in np.linspace(-1.0, 1.0, 21):
            for b in np.linspace(-1.0, 1.0, 21):
                self.assertLessEqual(hamiltonian_n(model, x, r, [a, b]), best + 1e-15)

    def test_inactive_particles(self):
        silent = build_problem("alignment")._replace(activation=ConstantActivation(0.0))
        u = maximize_hamiltonian_pointwise(silent, [[0.1], [0.5]], [[3.0], [-3.0]])
        np.testing.assert_array_equal(u, np.zeros((2, 1)))


class TestCostate(unittest.TestCase):
    def test_model_case_is_constant(self):
        model = build_problem("model_case")
        rng = np.random.default_rng(0)
        grid = TimeGrid(1.0, 50)
        x0 = sample_initial(model, 6, 0)
        u = rng.uniform(-1.0, 1.0, size=(50, 6, 1))
        trajectory = integrate_forward(model, u, x0, grid)
        costate = integrate_costate_backward(model, trajectory, u)
        terminal = trajectory.states[-1] - trajectory.states[-1].mean(axis=0)
        self.assertLessEqual(np.max(np.abs(costate.costates - costate.costates[-1])), 1e-9)
        self.assertLessEqual(np.max(np.abs(costate.costates - terminal)), 1e-8)

    def test_fourth_order_in_time(self):
        alignment = build_problem("alignment")
        x0 = sample_initial(alignment, 4, 1)
        per_particle = np.array([[0.5], [-0.2], [0.8], [-0.6]])

        def initial_costate(steps):
            grid = TimeGrid(1.0, steps)
            u = ControlGrid.constant(per_particle, steps)
            trajectory = integrate_forward(alignment, u, x0, grid)
            return integrate_costate_backward(alignment, trajectory, u).costates[0]

        reference = initial_costate(320)
        errors = [np.max(np.abs(initial_costate(steps) - reference)) for steps in (10, 20, 40)]
        orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
        self.assertTrue(np.all(orders >= 3.0), msg=f"observed orders {orders}")

    def test_discrete_costate(self):
        model = build_problem("model_case")
        grid = TimeGrid(1.0, 20)
        x0 = sample_initial(model, 4, 0)
        u = np.random.default_rng(2).uniform(-1.0, 1.0, size=(20, 4, 1))
        trajectory = integrate_forward(model, u, x0, grid)
        np.testing.assert_allclose(
            discrete_costate(model, trajectory, u).costates,
            integrate_costate_backward(model, trajectory, u).costates,
            rtol=0,
            atol=1e-12,
        )

        # 실행 비용의 왼쪽 끝점 구적법 때문에 일반적으로는 1차로 가까워진다.
        alignment = build_problem("alignment")
        x0 = sample_initial(alignment, 4, 3)
        gaps = []
        for steps in (40, 80, 160):
            grid = TimeGrid(1.0, steps)
            u = ControlGrid.zeros(steps, 4, 1)
            trajectory = integrate_forward(alignment, u, x0, grid)
            difference = discrete_costate(alignment, trajectory, u).costates - integrate_costate_backward(
                alignment, trajectory, u
            ).costates
            gaps.append(np.max(np.abs(difference)))
        self.assertLess(gaps[1], gaps[0])
        self.assertLess(gaps[2], gaps[1])
        self.assertGreater(gaps[0] / gaps[1], 1.5)


class TestAdjointGradient(unittest.TestCase):
    def test_matches_finite_differences(self):
        rng = np.random.default_rng(4)
        entries = list_entries()
        for instance in range(20):
            entry = entries[instance % len(entries)]
            problem = build_problem(entry.problem_id)
            n = int(rng.integers(2, 9))
            steps = int(rng.integers(5, 21))
            grid = TimeGrid(problem.horizon, steps)
            x0 = sample_initial(problem, n, instance)
            u = problem.control_set.project(rng.uniform(-1.2, 1.2, size=(steps, n, problem.dim)))
            trajectory = integrate_forward(problem, u, x0, grid)
            analytic = adjoint_gradient(problem, trajectory, u)
            numeric = _central_difference(problem, x0, grid, u)
            error = np.linalg.norm(analytic - numeric) / np.linalg.norm(numeric)
            self.assertLessEqual(error, 1e-5, msg=f"{entry.problem_id} N={n} S={steps}")

    def test_without_activation(self):
        silent = build_problem("alignment")._replace(activation=ConstantActivation(0.0))
        grid = TimeGrid(1.0, 10)
        u = np.random.default_rng(5).uniform(-1.0, 1.0, size=(10, 3, 1))
        trajectory = integrate_forward(silent, u, sample_initial(silent, 3, 0), grid)
        gradient = adjoint_gradient(silent, trajectory, u)
        np.testing.assert_allclose(gradient, grid.dt / 3 * silent.control_cost.gradient(u), rtol=1e-12, atol=1e-15)

    def test_vanishes_at_unsaturated_fixed_point(self):
        model = build_problem("model_case", {"control_weight": 4.0})
        grid = TimeGrid(1.0, 20)
        x0 = sample_initial(model, 2, 0)
        result = forward_backward_sweep(model, x0, grid, tol=1e-13)
        self.assertTrue(result.report.converged)
        np.testing.assert_allclose(result.controls.values[0], [[-1.0 / 6.0], [1.0 / 6.0]], atol=1e-10)
        for costate in (None, result.costate):
            gradient = adjoint_gradient(model, result.trajectory, result.controls, costate)
            self.assertLessEqual(np.max(np.abs(gradient)), 1e-12)


class TestSweep(unittest.TestCase):
    def setUp(self):
        self.model = build_problem("model_case")
        self.grid = TimeGrid(1.0, 100)
        self.x0 = sample_initial(self.model, 2, 0)

    def test_model_case_saturates(self):
        result = forward_backward_sweep(self.model, self.x0, self.grid, tol=1e-8)
        self.assertTrue(result.report.converged)
        np.testing.assert_allclose(np.abs(result.controls.values), 1.0, atol=1e-7)
        np.testing.assert_array_equal(np.sign(result.controls.values[0]), np.sign(self.x0))
        self.assertAlmostEqual(result.cost, -0.875, delta=1e-6)
        self.assertLessEqual(result.report.residuals[-1], 10 * 1e-8)
        terminal = result.trajectory.states[-1] - result.trajectory.states[-1].mean(axis=0)
        self.assertLessEqual(np.max(np.abs(result.costate.costates - terminal)), 1e-8)
        self.assertEqual(result.report.iterations, len(result.report.costs))

    def test_relaxation_reaches_same_point(self):
        halves = forward_backward_sweep(self.model, self.x0, self.grid, theta=0.5, tol=1e-10)
        full = forward_backward_sweep(self.model, self.x0, self.grid, theta=1.0, tol=1e-10)
        self.assertTrue(full.report.converged)
        self.assertLess(full.report.iterations, halves.report.iterations)
        np.testing.assert_allclose(full.controls.values, halves.controls.values, atol=1e-9)

    def test_start_at_optimum(self):
        u = ControlGrid.constant(np.sign(self.x0), self.grid.steps)
        result = forward_backward_sweep(self.model, self.x0, self.grid, u_init=u)
        self.assertTrue(result.report.converged)
        self.assertEqual(result.report.iterations, 1)
        self.assertEqual(result.report.update_norms, [0.0])

    def test_not_converged(self):
        with self.assertLogs("mflab.pmp.sweep", level="WARNING"):
            result = forward_backward_sweep(self.model, self.x0, self.grid, max_iter=3)
        self.assertFalse(result.report.converged)
        self.assertEqual(result.report.iterations, 3)

    def test_divergence(self):
        with mock.patch("mflab.pmp.sweep.cost_discrete", side_effect=[0.0, 0.5, 20.0]):
            with self.assertRaises(SweepDivergedError) as context:
                forward_backward_sweep(self.model, self.x0, self.grid)
        report = context.exception.report
        self.assertEqual(report.costs, [0.0, 0.5, 20.0])
        self.assertFalse(report.converged)

    def test_invalid_arguments(self):
        for kwargs in ({"theta": 0.0}, {"theta": 1.5}, {"tol": 0.0}, {"max_iter": 0}):
            with self.assertRaises(ValueError):
                forward_backward_sweep(self.model, self.x0, self.grid, **kwargs)


class TestDirect(unittest.TestCase):
    def setUp(self):
        self.model = build_problem("model_case")
        self.grid = TimeGrid(1.0, 100)
        self.x0 = sample_initial(self.model, 2, 0)

    def test_model_case(self):
        result = direct_optimize(self.model, self.x0, self.grid)
        self.assertTrue(result.converged)
        self.assertEqual(result.status, "converged")
        np.testing.assert_allclose(result.controls.values, np.broadcast_to(np.sign(self.x0), (100, 2, 1)))
        self.assertAlmostEqual(result.cost_history[-1], -0.875, delta=1e-3)
        self.assertTrue(np.all(np.diff(result.cost_history) <= 0.0))

    def test_no_move_at_optimum(self):
        u = ControlGrid.constant(np.sign(self.x0), self.grid.steps)
        result = direct_optimize(self.model, self.x0, self.grid, u_init=u)
        self.assertTrue(result.converged)
        self.assertEqual(result.iterations, 1)
        np.testing.assert_array_equal(result.controls.values, u.values)
        self.assertEqual(result.cost_history[0], result.cost_history[-1])

    def test_sweep_point_is_stationary(self):
        alignment = build_problem("alignment")
        grid = TimeGrid(1.0, 20)
        x0 = sample_initial(alignment, 4, 6)
        sweep = forward_backward_sweep(alignment, x0, grid, tol=1e-12)
        self.assertTrue(sweep.report.converged)
        result = direct_optimize(alignment, x0, grid, u_init=sweep.controls, max_iter=50)
        self.assertTrue(np.all(np.diff(result.cost_history) <= 0.0))
        self.assertLess(abs(result.cost_history[-1] - sweep.cost), 1e-6)

    def test_history_is_monotone(self):
        rng = np.random.default_rng(7)
        for problem_id in ("alignment", "control_only"):
            problem = build_problem(problem_id)
            grid = TimeGrid(1.0, 10)
            x0 = sample_initial(problem, 5, 8)
            u = problem.control_set.project(rng.uniform(-1.0, 1.0, size=(10, 5, problem.dim)))
            result = direct_optimize(problem, x0, grid, u_init=u, max_iter=30)
            self.assertTrue(np.all(np.diff(result.cost_history) <= 0.0), msg=problem_id)

    def test_rejects_infeasible_start(self):
        with self.assertRaises(ValueError):
            direct_optimize(self.model, self.x0, self.grid, u_init=np.full((100, 2, 1), 2.0))


if __name__ == "__main__":
    unittest.main()
