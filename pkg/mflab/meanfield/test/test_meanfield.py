import unittest
from unittest import mock

import numpy as np

from mflab.errors import IntegrationError, SweepDivergedError
from mflab.meanfield import (
    DiagnosticOptions,
    GeneratedPair,
    SolverOptions,
    build_generated,
    control_lipschitz_estimate,
    convergence_study,
    extract_control_field,
    group_by_cube,
    group_coincident,
    limit_hamiltonian,
    lipschitz_estimate,
    lipschitz_trials,
    maximality_check,
    phi_chain,
    phi_functional,
    r_independence_score,
    solve_all,
    zero_trial,
)
from mflab.measures import EmpiricalMeasure, PhaseMeasure, VectorMeasure, push_x
from mflab.pmp import SweepReport, forward_backward_sweep, hamiltonian_n, integrate_costate_backward
from mflab.problems import QuadraticControlCost, build_problem, list_entries, sample_initial
from mflab.simulate import ControlGrid, TimeGrid, integrate_forward

N_VALUES = (8, 16, 32, 64, 128, 256)


def _solved_model_case(n: int, steps: int = 20) -> GeneratedPair:
    model = build_problem("model_case")
    result = forward_backward_sweep(model, sample_initial(model, n, 0), TimeGrid(1.0, steps), tol=1e-10)
    return build_generated(result.trajectory, result.costate, result.controls)


def _static_pair(states, costates, controls) -> GeneratedPair:
    """한 구간짜리 격자 위에서 두 노드가 같은 생성 측도"""
    states, costates = np.asarray(states, dtype=float), np.asarray(costates, dtype=float)
    return GeneratedPair(
        TimeGrid(1.0, 1),
        np.stack([states, states]),
        np.stack([costates, costates]),
        np.asarray([controls], dtype=float),
    )


class TestGrouping(unittest.TestCase):
    def test_coincident(self):
        self.assertEqual([g.tolist() for g in group_coincident([[0.0], [1.0], [0.0]])], [[0, 2], [1]])
        self.assertEqual(len(group_coincident([[0.0, 1.0], [1e-13, 1.0]])), 1)
        self.assertEqual(len(group_coincident([[0.0, 1.0], [1e-9, 1.0]])), 2)
        self.assertEqual([g.tolist() for g in group_coincident([[0.5]])], [[0]])

    def test_cube(self):
        bins = group_by_cube([0.01, -0.3, 0.04, 0.26], 0.05)
        self.assertEqual(list(bins), [(-6,), (0,), (5,)])
        self.assertEqual(bins[(0,)].tolist(), [0, 2])
        bins = group_by_cube([[0.1, 0.1], [0.1, -0.1]], 1.0)
        self.assertEqual(set(bins), {(0, 0), (0, -1)})
        with self.assertRaises(ValueError):
            group_by_cube([0.0], 0.0)


class TestGenerated(unittest.TestCase):
    def test_single_particle(self):
        model = build_problem("model_case")
        grid = TimeGrid(1.0, 4)
        u = ControlGrid.zeros(4, 1, 1)
        trajectory = integrate_forward(model, u, [[0.5]], grid)
        pair = build_generated(trajectory, integrate_costate_backward(model, trajectory, u), u)
        for k in range(grid.nodes):
            self.assertEqual(pair.nu(k).size, 1)

    def test_projection_and_terminal_structure(self):
        pair = _solved_model_case(8)
        for k in range(pair.grid.nodes):
            np.testing.assert_array_equal(push_x(pair.nu(k)).atoms, pair.psi(k).atoms)
        terminal = pair.nu(pair.grid.steps)
        np.testing.assert_allclose(terminal.r, terminal.x - terminal.x.mean(axis=0), rtol=0, atol=1e-12)
        self.assertTrue(np.all(np.abs(pair.rho(0).payload) <= 1.0))
        with self.assertRaises(IndexError):
            pair.rho(pair.grid.steps)

    def test_rejects_mismatched_shapes(self):
        with self.assertRaises(ValueError):
            GeneratedPair(TimeGrid(1.0, 2), np.zeros((3, 2, 1)), np.zeros((3, 2, 1)), np.zeros((3, 2, 1)))


class TestPhi(unittest.TestCase):
    def setUp(self):
        self.cost = QuadraticControlCost(1.0)

    def test_distinct_atoms(self):
        nu = PhaseMeasure([0.0, 1.0, 2.0], [0.0, 0.0, 0.0])
        u = np.array([0.5, -1.0, 2.0])
        self.assertAlmostEqual(phi_functional(VectorMeasure(nu, u), nu, self.cost), np.mean(0.5 * u**2), delta=1e-15)

    def test_coincident_atoms(self):
        nu = EmpiricalMeasure([0.0, 0.0])
        self.assertAlmostEqual(phi_functional(VectorMeasure(nu, [0.0, 2.0]), nu, self.cost), 0.5, delta=1e-15)
        self.assertEqual(phi_functional(VectorMeasure(nu, [0.0, 0.0]), nu, self.cost), 0.0)

    def test_base_mismatch(self):
        nu = EmpiricalMeasure([0.0, 1.0])
        with self.assertRaises(ValueError):
            phi_functional(VectorMeasure(EmpiricalMeasure([0.0, 2.0]), [1.0, 1.0]), nu, self.cost)

    def test_chain_order(self):
        # x가 겹치고 r이 다르면 (x, r)로 묶을 때가 더 크다.
        pair = _static_pair([[0.0], [0.0]], [[1.0], [-1.0]], [[0.0], [2.0]])
        chain = phi_chain(pair, 0, self.cost)
        self.assertAlmostEqual(chain.mean_cost, 1.0)
        self.assertAlmostEqual(chain.phase, 1.0)
        self.assertAlmostEqual(chain.position, 0.5)
        self.assertTrue(chain.holds())
        # (x, r)까지 겹치면 두 측도 모두 평균을 쓴다.
        pair = _static_pair([[0.0], [0.0]], [[1.0], [1.0]], [[0.0], [2.0]])
        chain = phi_chain(pair, 0, self.cost)
        self.assertAlmostEqual(chain.phase, 0.5)
        self.assertAlmostEqual(chain.position, 0.5)


class TestDiagnostics(unittest.TestCase):
    def test_lipschitz_estimate(self):
        model = build_problem("model_case")
        grid = TimeGrid(1.0, 10)
        u = ControlGrid.zeros(10, 4, 1)
        trajectory = integrate_forward(model, u, sample_initial(model, 4, 0), grid)
        static = build_generated(trajectory, integrate_costate_backward(model, trajectory, u), u)
        self.assertEqual(lipschitz_estimate(static), 0.0)
        self.assertLessEqual(lipschitz_estimate(_solved_model_case(8)), np.sqrt(2.0) + 1e-9)

    def test_r_independence(self):
        equal = VectorMeasure(PhaseMeasure([0.0, 0.01, 0.3], [1.0, -1.0, 0.0]), [0.7, 0.7, 0.7])
        self.assertEqual(r_independence_score(equal, 0.05), 0.0)
        adversarial = VectorMeasure(PhaseMeasure([0.0, 0.0], [1.0, -1.0]), [0.0, 2.0])
        self.assertEqual(r_independence_score(adversarial, 0.05), 2.0)
        with_singletons = VectorMeasure(
            PhaseMeasure([0.0, 0.0, 0.5, 0.9], [1.0, -1.0, 0.0, 0.0]), [0.0, 2.0, 5.0, -5.0]
        )
        self.assertEqual(r_independence_score(with_singletons, 0.05), 2.0)
        scattered = VectorMeasure(PhaseMeasure([0.0, 0.5, 0.9], [1.0, -1.0, 0.0]), [0.0, 2.0, 4.0])
        self.assertEqual(r_independence_score(scattered, 0.05), 0.0)
        x = np.linspace(-1.0, 1.0, 201)
        smooth = VectorMeasure(PhaseMeasure(x, np.cos(7.0 * x)), x)
        self.assertLessEqual(r_independence_score(smooth, 0.05), 0.05)
        with self.assertRaises(ValueError):
            r_independence_score(equal, 0.0)

    def test_extract_control_field(self):
        pair = _static_pair([[0.01], [0.02], [0.5]], [[0.0], [1.0], [0.0]], [[0.3], [0.3], [0.3]])
        field = extract_control_field(pair, 0.1)
        np.testing.assert_array_equal(field(0, [[0.01], [0.02], [0.5]]), [[0.3], [0.3], [0.3]])
        self.assertTrue(np.isnan(field(0, [[0.25]])[0, 0]))
        with self.assertRaises(ValueError):
            extract_control_field(pair, -1.0)

    def test_model_case_field_is_sign(self):
        pair = _solved_model_case(32)
        field = extract_control_field(pair)
        for k in range(pair.grid.steps):
            x = pair.states[k]
            np.testing.assert_allclose(field(k, x), np.sign(x), atol=1e-8)

    def test_control_lipschitz(self):
        self.assertEqual(control_lipschitz_estimate([-0.25, 0.25], [-1.0, 1.0]), 4.0)
        self.assertEqual(control_lipschitz_estimate([0.3], [1.0]), 0.0)
        self.assertAlmostEqual(control_lipschitz_estimate([0.1, 0.1, 0.9], [0.0, 1.0, 0.0]), 1.25, delta=1e-12)


class TestLimitHamiltonian(unittest.TestCase):
    def test_examples(self):
        model = build_problem("model_case", {"control_weight": 1.0})
        nu = PhaseMeasure([0.3, -0.2], [1.0, 2.0])
        self.assertEqual(limit_hamiltonian(model, nu, lambda x: np.zeros_like(x)), 0.0)
        self.assertEqual(limit_hamiltonian(model, PhaseMeasure([0.0], [2.0]), [[1.0]]), 1.5)
        with self.assertRaises(ValueError):
            limit_hamiltonian(model, nu, [[0.0], [1.5]])

    def test_matches_finite_hamiltonian(self):
        rng = np.random.default_rng(10)
        for entry in list_entries():
            problem = build_problem(entry.problem_id)
            for _ in range(5):
                n = int(rng.integers(1, 10))
                x = rng.uniform(-1.0, 1.0, size=(n, problem.dim))
                r = rng.normal(size=(n, problem.dim))
                u = problem.control_set.project(rng.uniform(-1.0, 1.0, size=(n, problem.dim)))
                self.assertAlmostEqual(
                    limit_hamiltonian(problem, PhaseMeasure(x, r), u), hamiltonian_n(problem, x, r, u), delta=1e-12
                )


class TestMaximality(unittest.TestCase):
    def test_model_case(self):
        model = build_problem("model_case")
        pair = _solved_model_case(16)
        field = extract_control_field(pair)
        self.assertEqual(maximality_check(model, pair, field, [field]), 0.0)
        self.assertLess(maximality_check(model, pair, field, [zero_trial(1)]), 0.0)
        trials = lipschitz_trials(model.control_set, 10, seed=0)
        self.assertLessEqual(maximality_check(model, pair, field, trials), 1e-9)

    def test_trials_stay_in_control_set(self):
        problem = build_problem("control_only")
        x = np.random.default_rng(11).uniform(-3.0, 3.0, size=(50, 2))
        for trial in lipschitz_trials(problem.control_set, 10, seed=1):
            values = trial(0, x)
            self.assertEqual(values.shape, (50, 2))
            self.assertTrue(np.all(problem.control_set.contains(values, atol=1e-12)))
            # 기울기 상한 2
            quotients = np.linalg.norm(values[1:] - values[:-1], axis=1) / np.linalg.norm(x[1:] - x[:-1], axis=1)
            self.assertLessEqual(np.max(quotients), 2.0 + 1e-12)


class TestConvergenceStudy(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.model = build_problem("model_case")
        cls.report = convergence_study(
            cls.model,
            N_VALUES,
            TimeGrid(1.0, 20),
            seed=0,
            solver=SolverOptions(tol=1e-10),
            diagnostics=DiagnosticOptions(bin_width=0.05, maximality_trials=20),
            threads=2,
        )
        cls.rows = {row.n: row for row in cls.report.rows}

    def test_all_runs_succeed(self):
        self.assertEqual(self.report.failures, [])
        self.assertEqual([row.n for row in self.report.rows], list(N_VALUES))
        for row in self.report.rows:
            self.assertTrue(row.converged)
            values = [row.support_radius, row.lipschitz, row.distance_to_finest, row.r_independence]
            values += [row.maximality_residual, row.phi_gap, row.control_lipschitz]
            self.assertTrue(all(np.isfinite(v) and v >= 0 for v in values))

    def test_uniform_bounds(self):
        radii = [row.support_radius for row in self.report.rows]
        self.assertTrue(all(radius <= 2.0 * np.sqrt(2.0) + 1e-9 for radius in radii))
        self.assertLessEqual(max(radii) - min(radii), np.sqrt(2.0) * 2.0 / min(N_VALUES))
        lipschitz = [row.lipschitz for row in self.report.rows]
        self.assertLessEqual(max(lipschitz), 2.0 * min(lipschitz))
        self.assertLessEqual(max(lipschitz), np.sqrt(2.0) + 1e-9)

    def test_distance_to_finest(self):
        distances = [row.distance_to_finest for row in self.report.rows]
        for coarse, fine in zip(distances, distances[1:]):
            self.assertLessEqual(fine, 1.1 * coarse)
        self.assertEqual(distances[-1], 0.0)
        self.assertEqual(self.rows[256].distance_method, "exact")
        self.assertEqual(self.rows[8].distance_method, "replicated")

    def test_r_independence(self):
        self.assertLessEqual(self.rows[256].r_independence, 0.5 * self.rows[8].r_independence + 1e-8)

    def test_phi_chain_on_every_node(self):
        for run in self.report.runs.values():
            for k in range(run.pair.grid.steps):
                chain = phi_chain(run.pair, k, self.model.control_cost)
                self.assertTrue(chain.holds())
                self.assertAlmostEqual(chain.mean_cost, chain.phase, delta=1e-12)
                self.assertAlmostEqual(chain.phase, chain.position, delta=1e-12)

    def test_maximality(self):
        self.assertLessEqual(self.rows[128].maximality_residual, 5e-3)
        pair = self.report.runs[128].pair
        for k in range(pair.grid.steps):
            nu = pair.nu(k)
            self.assertAlmostEqual(
                limit_hamiltonian(self.model, nu, pair.controls[k]),
                hamiltonian_n(self.model, nu.x, nu.r, pair.controls[k]),
                delta=1e-12,
            )

    def test_control_lipschitz_blows_up(self):
        self.assertGreaterEqual(self.rows[256].control_lipschitz, 2.0 * self.rows[16].control_lipschitz)
        self.assertAlmostEqual(self.rows[16].control_lipschitz, 16.0, delta=1e-6)

    def test_thread_count_does_not_matter(self):
        grid = TimeGrid(1.0, 10)
        single = convergence_study(self.model, (4, 8), grid, seed=0, threads=1)
        double = convergence_study(self.model, (4, 8), grid, seed=0, threads=2)
        self.assertEqual(single.rows, double.rows)

    def test_single_n(self):
        report = convergence_study(self.model, (4,), TimeGrid(1.0, 5), seed=0)
        self.assertEqual(report.rows[0].distance_to_finest, 0.0)

    def test_failure_is_recorded(self):
        real = forward_backward_sweep
        stopped = SweepReport(3, [0.5, 0.4], [0.2, 0.1], [0.0, 1.0, 40.0], False)

        def flaky(p, x0, grid, **kwargs):
            if len(x0) == 8:
                raise SweepDivergedError("cost exploded", stopped)
            return real(p, x0, grid, **kwargs)

        with mock.patch("mflab.meanfield.study.forward_backward_sweep", side_effect=flaky):
            with self.assertLogs("mflab.meanfield.study", level="WARNING") as logs:
                report = convergence_study(self.model, (4, 8, 16), TimeGrid(1.0, 5), seed=0)
        self.assertEqual([failure.n for failure in report.failures], [8])
        self.assertEqual([row.n for row in report.rows], [4, 16])
        self.assertEqual(report.partial, {8: stopped})
        self.assertTrue(any("N=8 failed after 3 iterations" in line for line in logs.output))

    def test_integration_failure_leaves_no_history(self):
        broken = IntegrationError("state left the finite range", step=2)
        with mock.patch("mflab.meanfield.study.solve_instance", side_effect=broken):
            with self.assertLogs("mflab.meanfield.study", level="WARNING"):
                runs, failures, partial = solve_all(self.model, (4, 8), TimeGrid(1.0, 5), 0, threads=2)
        self.assertEqual(runs, {})
        self.assertEqual([failure.n for failure in failures], [4, 8])
        self.assertTrue(all(failure.reason.startswith("IntegrationError") for failure in failures))
        self.assertEqual(partial, {})

    def test_rejects_unsorted_sizes(self):
        with self.assertRaises(ValueError):
            convergence_study(self.model, (8, 8), TimeGrid(1.0, 5), seed=0)


if __name__ == "__main__":
    unittest.main()
