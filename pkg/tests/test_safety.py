import numpy as np
import pytest

from daereach import (
    AutonomousDae,
    DimensionMismatchError,
    ReachSettings,
    StarSet,
    UnsafeSpec,
    compute_reach,
    feasibility_check,
    scipy_feasibility_kernel,
    verify,
)


@pytest.fixture(scope="module")
def benchmark_reach(rotating_masses_auto, rotating_masses_star):
    settings = ReachSettings(time_step=0.01, num_steps=1000)
    return compute_reach(rotating_masses_auto, rotating_masses_star, settings)


class TestUnsafeSpec:
    def test_shape_validation(self):
        with pytest.raises(DimensionMismatchError):
            UnsafeSpec([[1.0, 0.0]], [1.0, 2.0])

    def test_zero_extension_over_inputs(self):
        spec = UnsafeSpec([[1.0, 2.0]], [0.0])
        extended = spec.extended(4)
        assert np.array_equal(extended, [[1.0, 2.0, 0.0, 0.0]])

    def test_full_width_not_extended(self):
        spec = UnsafeSpec([[1.0, 2.0]], [0.0], on_original_state=False)
        with pytest.raises(DimensionMismatchError):
            spec.extended(4)


class TestFeasibilityCheck:
    def test_interval(self):
        alpha = feasibility_check(np.array([[1.0], [-1.0]]), np.array([1.0, 0.0]))
        assert alpha is not None
        assert -1e-9 <= alpha[0] <= 1.0 + 1e-9

    def test_empty(self):
        assert (
            feasibility_check(np.array([[1.0], [-1.0]]), np.array([-1.0, 0.0])) is None
        )

    @pytest.mark.parametrize("seed", range(10))
    def test_agrees_with_scipy_kernel(self, seed):
        rng = np.random.default_rng(seed)
        G = rng.normal(size=(6, 3))
        f = rng.normal(size=6)
        ours = feasibility_check(G, f)
        ref = scipy_feasibility_kernel(G, f)
        assert (ours is None) == (ref is None)


class TestVerify:
    def test_torque_threshold_is_falsified(self, benchmark_reach):
        outcome = verify(benchmark_reach, UnsafeSpec([[0, 0, 1, 0]], [-0.9]))
        assert outcome.status == "unsafe"
        assert outcome.first_unsafe_step is not None
        assert outcome.unsafe_trace.shape == (1001, 6)

    def test_second_torque_threshold_is_safe(self, benchmark_reach):
        outcome = verify(benchmark_reach, UnsafeSpec([[0, 0, 0, 1]], [-1.0]))
        assert outcome.status == "safe"
        assert outcome.first_unsafe_step is None
        assert outcome.unsafe_trace is None

    def test_unsatisfiable_unsafe_set_is_safe(self, benchmark_reach):
        outcome = verify(benchmark_reach, UnsafeSpec(np.zeros((1, 4)), [-1.0]))
        assert outcome.status == "safe"

    def test_witness_satisfies_both_constraint_systems(self, benchmark_reach):
        unsafe = UnsafeSpec([[0, 0, 1, 0]], [-0.9])
        outcome = verify(benchmark_reach, unsafe)
        alpha = outcome.alpha_feasible
        star = benchmark_reach.stars[outcome.first_unsafe_step]
        assert np.all(star.C @ alpha <= star.d + 1e-9)
        hit = star.V @ alpha
        assert hit[2] <= -0.9 + 1e-9

    def test_trace_is_a_genuine_simulation(
        self, rotating_masses_auto, benchmark_reach
    ):
        # replaying the witness point through the pipeline reproduces the
        # emitted trace
        unsafe = UnsafeSpec([[0, 0, 1, 0]], [-0.9])
        outcome = verify(benchmark_reach, unsafe)
        x0 = benchmark_reach.stars[0].V @ outcome.alpha_feasible
        point_star = StarSet(
            x0[:, None], np.array([[1.0], [-1.0]]), np.array([1.0, -1.0])
        )
        replay = compute_reach(
            rotating_masses_auto, point_star, benchmark_reach.settings
        )
        replayed = np.stack([s.V[:, 0] for s in replay.stars])
        assert np.abs(replayed - outcome.unsafe_trace).max() <= 1e-9

    def test_first_hit_matches_exact_corner_scan(self, benchmark_reach):
        # the predicate is a box, so the per-step minimum of the monitored
        # row is attained at a corner; first crossing must match verify()
        lo = np.array([0.1, 1.0])
        hi = np.array([0.2, 1.2])
        mins = np.array(
            [
                np.minimum(s.V[2] * lo, s.V[2] * hi).sum()
                for s in benchmark_reach.stars
            ]
        )
        expected_first = int(np.nonzero(mins <= -0.9)[0][0])
        outcome = verify(benchmark_reach, UnsafeSpec([[0, 0, 1, 0]], [-0.9]))
        assert outcome.first_unsafe_step == expected_first

    def test_find_all_collects_every_unsafe_step(self, benchmark_reach):
        unsafe = UnsafeSpec([[0, 0, 1, 0]], [-0.9])
        outcome = verify(benchmark_reach, unsafe, find_all=True)
        lo = np.array([0.1, 1.0])
        hi = np.array([0.2, 1.2])
        mins = np.array(
            [
                np.minimum(s.V[2] * lo, s.V[2] * hi).sum()
                for s in benchmark_reach.stars
            ]
        )
        expected = set(np.nonzero(mins <= -0.9 + 1e-12)[0])
        got = set(outcome.unsafe_steps)
        # LP boundary cases may differ by the feasibility slack only
        assert got.symmetric_difference(expected) <= set(
            np.nonzero(np.abs(mins + 0.9) <= 1e-8)[0]
        )

    def test_monotonicity_under_predicate_shrinking(
        self, rotating_masses_auto, rotating_masses_star
    ):
        # adding predicate rows shrinks the set; a safe verdict must survive
        settings = ReachSettings(time_step=0.01, num_steps=1000)
        reach = compute_reach(rotating_masses_auto, rotating_masses_star, settings)
        unsafe = UnsafeSpec([[0, 0, 0, 1]], [-1.0])
        assert verify(reach, unsafe).status == "safe"
        shrunk = StarSet(
            rotating_masses_star.V,
            np.vstack([rotating_masses_star.C, [[1.0, 1.0]]]),
            np.concatenate([rotating_masses_star.d, [1.25]]),
        )
        reach_small = compute_reach(rotating_masses_auto, shrunk, settings)
        assert verify(reach_small, unsafe).status == "safe"

    def test_pluggable_kernel(self, benchmark_reach):
        unsafe = UnsafeSpec([[0, 0, 1, 0]], [-0.9])
        default = verify(benchmark_reach, unsafe)
        scipy_backed = verify(benchmark_reach, unsafe, kernel=scipy_feasibility_kernel)
        assert default.status == scipy_backed.status == "unsafe"
        assert default.first_unsafe_step == scipy_backed.first_unsafe_step


class TestUnboundedPredicates:
    def test_verification_accepts_what_sampling_rejects(self):
        # unbounded coefficient polytopes are fine for LP-based checking
        # but cannot be sampled by vertex mixing
        from daereach import UnboundedPredicateError

        E = np.diag([1.0, 0.0])
        A = np.eye(2)
        auto = AutonomousDae(E, A)
        star = StarSet(
            np.array([[1.0], [0.0]]), np.array([[-1.0]]), np.array([-1.0])
        )  # alpha >= 1, unbounded above; basis lies in the consistent space
        with pytest.raises(UnboundedPredicateError):
            star.sample_points(3, seed=0)
        reach = compute_reach(auto, star, ReachSettings(0.1, 5))
        grows = verify(reach, UnsafeSpec([[-1.0, 0.0]], [-5.0]))
        assert grows.status == "unsafe"  # alpha = 5 already violates at t = 0
        assert grows.first_unsafe_step == 0
        never = verify(reach, UnsafeSpec([[1.0, 0.0]], [0.5]))
        assert never.status == "safe"  # x1 = alpha e^t >= 1 for all steps


class TestIndexThreeFalsification:
    @pytest.mark.parametrize("seed", range(3))
    def test_trace_matches_exact_solution(self, seed):
        # full loop on an index-3 system: falsify against a threshold known
        # to be reachable, then check the emitted trace against the exact
        # canonical-form solution of the witness start point
        from oracles import CanonicalDae, box_star
        from daereach import (
            build_consistent_matrix,
            compute_index_and_chain,
            decouple,
            make_admissible,
        )

        rng = np.random.default_rng(900 + seed)
        ws = CanonicalDae(rng, 3, [3])
        auto = AutonomousDae(ws.E, ws.A)
        dec = decouple(make_admissible(compute_index_and_chain(auto)))
        star = box_star(rng, build_consistent_matrix(dec), auto.n, 2)
        settings = ReachSettings(time_step=0.05, num_steps=20)
        reach = compute_reach(auto, star, settings)

        direction = rng.normal(size=auto.n)
        samples = star.sample_coefficients(2000, seed=seed)
        basis = np.stack([s.V for s in reach.stars])
        sampled_min = ((basis @ samples.T) * direction[None, :, None]).sum(axis=1).min()
        threshold = sampled_min + 0.1 * max(1.0, abs(sampled_min))
        outcome = verify(
            reach, UnsafeSpec(direction[None, :], [threshold], on_original_state=False)
        )
        assert outcome.status == "unsafe"
        exact = ws.exact_states(star.V @ outcome.alpha_feasible, settings.times)
        assert np.abs(outcome.unsafe_trace - exact).max() <= 1e-8


class TestSamplingOracleAgreement:
    def test_small_index_1_system(self):
        # dense sampling of the initial polytope plus exact simulation is
        # the reference verdict on an interior-threshold unsafe set
        E = np.diag([1.0, 0.0])
        A = np.array([[-1.0, 1.0], [1.0, -2.0]])
        auto = AutonomousDae(E, A)
        star = StarSet(
            np.array([[1.0], [0.5]]),
            np.array([[1.0], [-1.0]]),
            np.array([2.0, -0.5]),
        )
        settings = ReachSettings(time_step=0.05, num_steps=40)
        reach = compute_reach(auto, star, settings)
        times = settings.times
        alphas = star.sample_coefficients(10_000, seed=0)
        # x1(t) = exp(-t/2) a: sampled minimum over trajectories
        trajectory_min = (np.exp(-times / 2.0)[:, None] * alphas[:, 0]).min()
        span = abs(trajectory_min)
        for threshold, expected in [
            (trajectory_min + 0.2 * span, "unsafe"),
            (trajectory_min - 0.2 * span, "safe"),
        ]:
            outcome = verify(reach, UnsafeSpec([[1.0, 0.0]], [threshold]))
            assert outcome.status == expected
