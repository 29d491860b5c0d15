import unittest

import numpy as np

from mflab.measures import EmpiricalMeasure
from mflab.problems import (
    BallControlSet,
    BoxControlSet,
    BumpActivation,
    ConstantActivation,
    EntropicLabelField,
    GaussianAttraction,
    KernelVelocity,
    MarkovLabelField,
    NegativeVariance,
    QuadraticControlCost,
    QuadraticSpread,
    ReplicatorState,
    ZeroCost,
    ZeroVelocity,
    build_problem,
    eval_grad_psi_h,
    eval_g,
    eval_grad_psi_g,
    eval_grad_psi_L,
    eval_grad_psi_v,
    eval_grad_x_h,
    eval_grad_x_v,
    eval_h,
    eval_L,
    eval_phi,
    eval_phi_conjugate_argmax,
    eval_v,
    list_entries,
    replicator_rhs,
    sample_initial,
    sample_labels,
)

STEP = 1e-5


def _atom_derivative(func, atoms: np.ndarray, i: int) -> np.ndarray:
    """``func(atoms)``\\를 원자 ``i``\\에 대해 중앙 차분으로 미분한다. 결과의 마지막 축이 미분 방향이다."""
    columns = []
    for b in range(atoms.shape[1]):
        plus, minus = atoms.copy(), atoms.copy()
        plus[i, b] += STEP
        minus[i, b] -= STEP
        columns.append((np.asarray(func(plus)) - np.asarray(func(minus))) / (2 * STEP))
    return np.stack(columns, axis=-1)


class TestControl(unittest.TestCase):
    def test_box_and_ball(self):
        box = BoxControlSet(1.0, 2)
        np.testing.assert_array_equal(box.project([[2.0, -0.5]]), [[1.0, -0.5]])
        self.assertTrue(box.contains([0.0, 0.0]))
        self.assertEqual(box.mesh(3).shape, (9, 2))
        ball = BallControlSet(5.0, 2)
        np.testing.assert_allclose(ball.project([6.0, 8.0]), [3.0, 4.0])
        self.assertTrue(np.all(ball.contains(ball.mesh(5))))
        with self.assertRaises(ValueError):
            BoxControlSet(0.0)

    def test_argmax_examples(self):
        model = build_problem("model_case", {"control_weight": 1.0})
        np.testing.assert_array_equal(eval_phi_conjugate_argmax(model, [0.0]), [0.0])
        np.testing.assert_array_equal(eval_phi_conjugate_argmax(model, [2.0]), [1.0])
        cost = QuadraticControlCost(2.0)
        np.testing.assert_allclose(cost.argmax([2.0, 0.0], BallControlSet(5.0, 2)), [1.0, 0.0])
        self.assertEqual(eval_phi(model, [0.0]), 0.0)

    def test_argmax_matches_grid_search(self):
        rng = np.random.default_rng(0)
        box = BoxControlSet(1.0, 1)
        grid = np.linspace(-1.0, 1.0, 2001)
        for _ in range(20):
            weight = rng.uniform(0.2, 3.0)
            s = rng.uniform(-4.0, 4.0)
            cost = QuadraticControlCost(weight)
            best = grid[np.argmax(s * grid - 0.5 * weight * grid**2)]
            self.assertAlmostEqual(float(cost.argmax([s], box)[0]), best, delta=1e-3)


class TestFieldExamples(unittest.TestCase):
    def test_velocity_examples(self):
        alignment = build_problem("alignment", {"kappa": 1.0, "beta": 0.0})
        zero = build_problem("model_case")
        psi = EmpiricalMeasure([0.0, 4.0])
        np.testing.assert_array_equal(eval_v(zero, [3.0], psi), [0.0])
        np.testing.assert_allclose(eval_v(alignment, [1.0], EmpiricalMeasure([0.0, 2.0])), [0.0])
        np.testing.assert_allclose(eval_v(alignment, [1.0], psi), [1.0])
        np.testing.assert_array_equal(eval_grad_x_v(zero, [1.0], psi), [[0.0]])
        np.testing.assert_allclose(eval_grad_psi_v(alignment, [0.3], psi, [-2.0]), [[1.0]])

    def test_activation_examples(self):
        constant = build_problem("model_case")
        psi = EmpiricalMeasure([0.0, 1.0])
        self.assertEqual(eval_h(constant, [0.7], psi), 1.0)
        np.testing.assert_array_equal(eval_grad_x_h(constant, [0.7], psi), [0.0])
        np.testing.assert_array_equal(eval_grad_psi_h(constant, [0.7], psi, [0.1]), [0.0])
        bump = build_problem("alignment", {"centered": False, "activation_width": 1.0})
        self.assertEqual(eval_h(bump, [0.0], psi), 1.0)
        np.testing.assert_allclose(eval_grad_x_h(bump, [1.0], psi), [-0.5])

    def test_cost_examples(self):
        model = build_problem("model_case")
        psi = EmpiricalMeasure([-1.0, 1.0])
        self.assertAlmostEqual(eval_L(model, psi), 0.0)
        np.testing.assert_array_equal(eval_grad_psi_L(model, psi, [0.5]), [0.0])
        terminal = NegativeVariance(1.0)
        self.assertAlmostEqual(terminal.value(psi.atoms), -0.5)
        np.testing.assert_allclose(terminal.grad_psi(psi.atoms, np.array([[1.0]])), [[-1.0]])
        self.assertAlmostEqual(eval_g(model, psi), -0.5)
        np.testing.assert_allclose(eval_grad_psi_g(model, psi, [1.0]), [-1.0])
        alignment = build_problem("alignment", {"dim": 2})
        plane = EmpiricalMeasure([[0.0, 0.0], [1.0, 1.0]])
        self.assertEqual(eval_g(alignment, plane), 0.0)
        np.testing.assert_array_equal(eval_grad_psi_g(alignment, plane, [0.5, 0.5]), [0.0, 0.0])


class TestWassersteinGradients(unittest.TestCase):
    """경험측도에서 ``nabla_psi F(x, psi)(x_i) = N * d F / d x_i``\\인지 확인한다."""

    def setUp(self):
        self.rng = np.random.default_rng(1)

    def _check(self, analytic, numeric):
        np.testing.assert_allclose(numeric, analytic, rtol=1e-6, atol=1e-8)

    def test_velocity(self):
        for velocity in (KernelVelocity(1.3, 0.7, 0.2), KernelVelocity(0.8, 0.0, 0.0)):
            for n in (2, 4, 8, 16):
                atoms = self.rng.normal(size=(n, 2))
                x = self.rng.normal(size=(1, 2))
                analytic = velocity.grad_psi(x, atoms, atoms)[0]
                for i in range(n):
                    numeric = n * _atom_derivative(lambda a: velocity.value(x, a)[0], atoms, i)
                    self._check(analytic[i], numeric)

    def test_activation(self):
        for activation in (BumpActivation(0.8, centered=True), BumpActivation(1.5), ConstantActivation(2.0)):
            for n in (2, 4, 8, 16):
                atoms = self.rng.normal(size=(n, 2))
                x = self.rng.normal(size=(1, 2))
                analytic = activation.grad_psi(x, atoms, atoms)[0]
                for i in range(n):
                    numeric = n * _atom_derivative(lambda a: activation.value(x, a)[0], atoms, i)
                    self._check(analytic[i], numeric)

    def test_running_costs(self):
        costs = (QuadraticSpread(0.7), GaussianAttraction(1.2, 0.9), NegativeVariance(1.0), ZeroCost())
        for cost in costs:
            for n in (2, 4, 8, 16):
                atoms = self.rng.normal(size=(n, 2))
                analytic = cost.grad_psi(atoms, atoms)
                for i in range(n):
                    numeric = n * _atom_derivative(cost.value, atoms, i)
                    self._check(analytic[i], numeric)

    def test_spatial_gradients(self):
        velocity = KernelVelocity(1.3, 0.7, 0.2)
        activation = BumpActivation(0.8, centered=True)
        atoms = self.rng.normal(size=(6, 2))
        x = self.rng.normal(size=(1, 2))
        numeric_v = _atom_derivative(lambda p: velocity.value(p, atoms)[0], x, 0)
        np.testing.assert_allclose(numeric_v, velocity.grad_x(x, atoms)[0], rtol=1e-6, atol=1e-8)
        numeric_h = _atom_derivative(lambda p: activation.value(p, atoms)[0], x, 0)
        np.testing.assert_allclose(numeric_h, activation.grad_x(x, atoms)[0], rtol=1e-6, atol=1e-8)


class TestCatalog(unittest.TestCase):
    def test_listing(self):
        ids = [entry.problem_id for entry in list_entries()]
        self.assertIn("model_case", ids)
        self.assertEqual(ids, sorted(ids))
        self.assertEqual(ids, [entry.problem_id for entry in list_entries()])
        for entry in list_entries():
            self.assertTrue(entry.summary)
            self.assertTrue(entry.section)
            self.assertTrue(all(p.description for p in entry.parameters))

    def test_build(self):
        for entry in list_entries():
            problem = build_problem(entry.problem_id)
            self.assertTrue(np.all(problem.control_set.contains(np.zeros(problem.dim))))
            self.assertEqual(float(problem.control_cost.value(np.zeros(problem.dim))), 0.0)
        with self.assertRaises(KeyError):
            build_problem("missing")
        with self.assertRaises(ValueError):
            build_problem("model_case", {"unknown": 1})

    def test_growth_bounds(self):
        rng = np.random.default_rng(2)
        for entry in list_entries():
            problem = build_problem(entry.problem_id)
            for _ in range(5):
                atoms = rng.uniform(-3.0, 3.0, size=(10, problem.dim))
                x = rng.uniform(-3.0, 3.0, size=(20, problem.dim))
                first_moment = EmpiricalMeasure(atoms).first_moment()
                v = np.linalg.norm(problem.velocity.value(x, atoms), axis=1)
                bound = problem.velocity.growth_constant * (1.0 + np.linalg.norm(x, axis=1) + first_moment)
                self.assertTrue(np.all(v <= bound + 1e-12))
                h = np.abs(problem.activation.value(x, atoms))
                self.assertTrue(np.all(h <= problem.activation.bound + 1e-12))


class TestSampling(unittest.TestCase):
    def test_model_case_grid(self):
        model = build_problem("model_case")
        np.testing.assert_allclose(sample_initial(model, 2, seed=0), [[-0.5], [0.5]])
        x0 = sample_initial(model, 64, seed=0)
        self.assertTrue(np.all(np.abs(x0) <= 1.0))
        np.testing.assert_allclose(np.sort(x0[:, 0]), -np.sort(x0[:, 0])[::-1])

    def test_determinism(self):
        for entry in list_entries():
            problem = build_problem(entry.problem_id)
            a = sample_initial(problem, 7, seed=3)
            np.testing.assert_array_equal(a, sample_initial(problem, 7, seed=3))
            self.assertTrue(np.all(np.abs(a) <= problem.initial.radius + 1.0))

    def test_labels(self):
        markov = build_problem("replicator_markov")
        np.testing.assert_array_equal(sample_labels(markov, 3, seed=0), [[1.0, 0.0]] * 3)
        entropic = build_problem("replicator_entropic")
        labels = sample_labels(entropic, 5, seed=1)
        np.testing.assert_array_equal(labels, sample_labels(entropic, 5, seed=1))
        self.assertLess(entropic.label_field.invariant_violation(labels), 1e-12)
        with self.assertRaises(ValueError):
            sample_labels(build_problem("model_case"), 2, seed=0)


class TestReplicator(unittest.TestCase):
    def setUp(self):
        self.psi = EmpiricalMeasure([[0.0, 0.5, 0.5], [1.0, 0.5, 0.5]])

    def test_markov_examples(self):
        zero = MarkovLabelField(np.zeros((2, 2)))
        state = ReplicatorState(np.array([0.0]), np.array([0.3, 0.7]))
        np.testing.assert_array_equal(replicator_rhs(state, self.psi, zero), [0.0, 0.0])
        field = MarkovLabelField([[-1.0, 1.0], [1.0, -1.0]])
        velocity = replicator_rhs(ReplicatorState(np.array([0.0]), np.array([1.0, 0.0])), self.psi, field)
        np.testing.assert_allclose(velocity, [-1.0, 1.0])

    def test_markov_rejects_bad_generators_and_labels(self):
        with self.assertRaises(ValueError):
            MarkovLabelField([[-1.0, 2.0], [1.0, -1.0]])
        with self.assertRaises(ValueError):
            MarkovLabelField([[1.0, -1.0], [-1.0, 1.0]])
        field = MarkovLabelField([[-1.0, 1.0], [1.0, -1.0]])
        with self.assertRaises(ValueError):
            replicator_rhs(ReplicatorState(np.array([0.0]), np.array([0.8, 0.8])), self.psi, field)

    def test_markov_reversibility(self):
        field = MarkovLabelField([[-1.0, 2.0], [1.0, -2.0]])
        np.testing.assert_allclose(field.stationary_distribution(), [2.0 / 3.0, 1.0 / 3.0])
        self.assertTrue(field.is_reversible())
        cyclic = MarkovLabelField([[-1.0, 0.0, 2.0], [1.0, -1.0, 0.0], [0.0, 1.0, -2.0]])
        self.assertFalse(cyclic.is_reversible())

    def test_entropic_uniform_is_rest_point(self):
        field = EntropicLabelField([1.0, 1.0, 1.0])
        label = field.uniform_label()
        state = ReplicatorState(np.array([0.0]), label)
        np.testing.assert_allclose(field.selection(np.zeros((1, 1)), label[np.newaxis], self.psi.atoms[:, :1]), 0.0)
        np.testing.assert_allclose(field.regularization(label[np.newaxis]), 0.0, atol=1e-15)
        np.testing.assert_allclose(replicator_rhs(state, self.psi, field), 0.0, atol=1e-15)

    def test_conservation_at_rhs_level(self):
        rng = np.random.default_rng(3)
        markov = MarkovLabelField([[-2.0, 1.0, 0.5], [1.5, -1.0, 0.5], [0.5, 0.0, -1.0]], coupling=0.7)
        entropic = EntropicLabelField([1.0, -0.5, 2.0], reference=[0.2, 0.3, 0.5], epsilon=0.3, width=0.8)
        for _ in range(20):
            position = rng.normal(size=1)
            simplex_label = rng.dirichlet(np.ones(3))
            velocity = replicator_rhs(ReplicatorState(position, simplex_label), self.psi, markov)
            self.assertLess(abs(velocity.sum()), 1e-12)
            label = entropic.normalize(rng.uniform(0.5, 2.0, size=3))
            velocity = replicator_rhs(ReplicatorState(position, label), self.psi, entropic)
            self.assertLess(abs(np.sum(velocity * entropic.reference)), 1e-12)


if __name__ == "__main__":
    unittest.main()
