"""Operator catalog: pointwise behavior, sampled monotonicity, normal-cone
selections, and the monotone <-> J-pseudocontractive passage."""

import numpy as np
import pytest

from lpmono import (
    GridFunction,
    InfeasiblePointError,
    LpContext,
    ProductPoint,
    duality_map,
    feasibility_violation,
    hammerstein_example,
    hammerstein_kernel_op,
    j_pseudo_from_monotone,
    lp_norm,
    mult_op,
    norm_subgradient,
    norm_subgradient_op,
    pairing,
    product_op,
    product_pairing,
    random_smooth,
    sample_monotonicity,
    trapezoid_integral,
    vi_normal_cone_selection,
    zero_op,
)


class TestMultOp:
    def test_zero_to_zero(self):
        A = mult_op()
        assert np.all(A(GridFunction.zeros(100)).values == 0.0)

    def test_one_maps_to_one_plus_t(self):
        A = mult_op()
        out = A(GridFunction.full(100, 1.0))
        assert np.allclose(out.values, 1.0 + out.nodes, rtol=0, atol=0)

    def test_sampled_monotonicity(self):
        # integrand (1+t)(f-g)^2 is pointwise nonnegative
        assert sample_monotonicity(mult_op(), M=100) >= -1e-10


class TestNormSubgradient:
    def test_zero_selection_at_zero(self, ctx):
        for variant in ("literal", "duality"):
            g = norm_subgradient(GridFunction.zeros(ctx.M), ctx, variant)
            assert np.all(g.values == 0.0)

    def test_positive_constant_gives_one(self, ctx):
        x = GridFunction.full(ctx.M, 2.5)
        for variant in ("literal", "duality"):
            g = norm_subgradient(x, ctx, variant)
            assert np.allclose(g.values, 1.0, rtol=1e-13)

    def test_literal_variant_is_normalized_point(self, rng, ctx):
        x = random_smooth(rng, ctx.M, scale=3.0)
        g = norm_subgradient(x, ctx, "literal")
        assert np.allclose(g.values, x.values / lp_norm(x, ctx.p), rtol=1e-14)

    def test_duality_selection_identities(self, rng, ctx):
        for _ in range(20):
            x = random_smooth(rng, ctx.M, scale=3.0)
            g = norm_subgradient(x, ctx, "duality")
            assert pairing(x, g) == pytest.approx(lp_norm(x, ctx.p), rel=1e-8)
            assert lp_norm(g, ctx.q) == pytest.approx(1.0, rel=1e-10)

    def test_unknown_variant(self, ctx):
        with pytest.raises(ValueError, match="variant"):
            norm_subgradient(GridFunction.zeros(ctx.M), ctx, "other")
        with pytest.raises(ValueError, match="variant"):
            norm_subgradient_op(ctx, "other")

    def test_op_wrapper_monotone(self, ctx):
        assert sample_monotonicity(norm_subgradient_op(ctx, "duality"), M=100) >= -1e-10


class TestHammersteinExample:
    def test_components(self):
        pair = hammerstein_example()
        one = GridFunction.full(100, 1.0)
        assert np.allclose(pair.F(one).values, 1.0 + one.nodes)
        u = GridFunction.from_callable(lambda t: np.cos(t), 100)
        assert np.all(pair.K(u).values == u.values)

    def test_composite_equation_is_two_plus_t_times_u(self, rng):
        pair = hammerstein_example()
        u = random_smooth(rng, 100, scale=2.0)
        lhs = u + pair.K(pair.F(u))
        assert np.allclose(lhs.values, (2.0 + u.nodes) * u.values, rtol=1e-14)

    def test_only_solution_is_zero(self):
        pair = hammerstein_example()
        z = GridFunction.zeros(100)
        assert np.all((z + pair.K(pair.F(z))).values == 0.0)


class TestKernelOp:
    def test_zero_kernel(self):
        K = hammerstein_kernel_op(np.zeros((11, 11)))
        v = GridFunction.from_callable(lambda t: np.sin(t), 10)
        assert np.all(K(v).values == 0.0)

    def test_constant_kernel_integrates(self, rng):
        K = hammerstein_kernel_op(np.ones((101, 101)))
        v = random_smooth(rng, 100, scale=2.0)
        out = K(v)
        assert np.allclose(out.values, trapezoid_integral(v), rtol=1e-13)

    def test_separable_kernel_analytic(self):
        # k(t,s) = t*s applied to v(s) = s gives t * integral(s^2) = t/3
        t = np.linspace(0.0, 1.0, 101)
        K = hammerstein_kernel_op(np.outer(t, t))
        v = GridFunction(t)
        assert np.max(np.abs(K(v).values - t / 3.0)) <= 1e-4

    def test_monotone_kernel_has_no_warning(self):
        t = np.linspace(0.0, 1.0, 101)
        K = hammerstein_kernel_op(np.outer(t, t))
        assert K.monotonicity_warning is None

    def test_non_monotone_kernel_warns(self):
        t = np.linspace(0.0, 1.0, 101)
        with pytest.warns(UserWarning, match="monotonicity"):
            K = hammerstein_kernel_op(-np.outer(t, t))
        assert K.monotonicity_warning is not None

    def test_shape_validation(self):
        with pytest.raises(ValueError, match="square"):
            hammerstein_kernel_op(np.zeros((5, 6)))
        with pytest.raises(ValueError):
            hammerstein_kernel_op(np.zeros((2, 2)))
        with pytest.raises(ValueError, match="NaN"):
            hammerstein_kernel_op(np.full((5, 5), np.nan))

    def test_grid_mismatch_on_apply(self):
        K = hammerstein_kernel_op(np.ones((11, 11)))
        with pytest.raises(ValueError, match="M = 10"):
            K(GridFunction.zeros(20))


class TestProductOp:
    def test_zero_point(self):
        A = product_op(hammerstein_example())
        z = ProductPoint(GridFunction.zeros(100), GridFunction.zeros(100))
        out = A(z)
        assert np.all(out.u.values == 0.0) and np.all(out.v.values == 0.0)

    def test_structured_point(self):
        # [u, v] = [1, 1+t]: Fu - v = 0 and Kv + u = 2 + t
        A = product_op(hammerstein_example())
        one = GridFunction.full(100, 1.0)
        v = GridFunction.from_callable(lambda t: 1.0 + t, 100)
        out = A(ProductPoint(one, v))
        assert np.allclose(out.u.values, 0.0, atol=1e-15)
        assert np.allclose(out.v.values, 2.0 + one.nodes, rtol=1e-15)

    def test_monotone_in_product_pairing(self, rng):
        # the +u / -v cross terms cancel, leaving the F and K terms
        A = product_op(hammerstein_example())
        for _ in range(100):
            z1 = ProductPoint(random_smooth(rng, 50, 5.0), random_smooth(rng, 50, 5.0))
            z2 = ProductPoint(random_smooth(rng, 50, 5.0), random_smooth(rng, 50, 5.0))
            gap = product_pairing(z1 - z2, A(z1) - A(z2))
            assert gap >= -1e-10


class TestNormalConeSelection:
    def test_interior_gives_zero(self):
        x = GridFunction.from_callable(lambda t: 1.0 / (1.0 + t * t), 100)
        beta = vi_normal_cone_selection(x, (-1.0, 1.5))
        assert np.all(beta.values == 0.0)

    def test_active_upper_bound(self):
        x = GridFunction.full(100, 1.0)
        beta = vi_normal_cone_selection(x, (-1.0, 1.0), magnitude=0.25)
        assert np.all(beta.values == 0.25)

    def test_active_lower_bound(self):
        x = GridFunction.full(100, -1.0)
        beta = vi_normal_cone_selection(x, (-1.0, 1.0), magnitude=2.0)
        assert np.all(beta.values == -2.0)

    def test_mixed_activity(self):
        x = GridFunction([1.0, 0.0, -1.0])
        beta = vi_normal_cone_selection(x, (-1.0, 1.0))
        assert list(beta.values) == [1.0, 0.0, -1.0]

    def test_infeasible_point_rejected(self):
        x = GridFunction.full(10, 2.0)
        with pytest.raises(InfeasiblePointError):
            vi_normal_cone_selection(x, (-1.0, 1.0))

    def test_tiny_violation_tolerated(self):
        x = GridFunction.full(10, 1.0 + 5e-13)
        beta = vi_normal_cone_selection(x, (-1.0, 1.0))
        assert np.all(beta.values == 1.0)

    def test_box_and_magnitude_validation(self):
        x = GridFunction.zeros(10)
        with pytest.raises(ValueError, match="lo < hi"):
            vi_normal_cone_selection(x, (1.0, -1.0))
        with pytest.raises(ValueError, match="magnitude"):
            vi_normal_cone_selection(x, (-1.0, 1.0), magnitude=-1.0)

    def test_feasibility_violation_values(self):
        assert feasibility_violation(GridFunction.full(10, 0.5), (-1.0, 1.0)) == 0.0
        assert feasibility_violation(GridFunction.full(10, 1.25), (-1.0, 1.0)) == pytest.approx(0.25)
        assert feasibility_violation(GridFunction.full(10, -3.0), (-1.0, 1.0)) == pytest.approx(2.0)


class TestJPseudoFromMonotone:
    def test_zero_is_j_fixed_point(self, ctx):
        T = j_pseudo_from_monotone(mult_op(), ctx)
        z = GridFunction.zeros(ctx.M)
        assert np.all(T(z).values == 0.0)
        assert np.all(duality_map(z, ctx).values == 0.0)

    def test_j_minus_t_recovers_operator(self, rng, ctx):
        A = mult_op()
        T = j_pseudo_from_monotone(A, ctx)
        for _ in range(10):
            x = random_smooth(rng, ctx.M, scale=3.0)
            recovered = duality_map(x, ctx) - T(x)
            assert np.allclose(recovered.values, A(x).values, rtol=1e-12, atol=1e-14)

    def test_j_pseudocontractivity_sampled(self, rng, ctx):
        T = j_pseudo_from_monotone(mult_op(), ctx)
        for _ in range(100):
            x = random_smooth(rng, ctx.M, scale=5.0)
            y = random_smooth(rng, ctx.M, scale=5.0)
            lhs = pairing(T(x) - T(y), x - y)
            rhs = pairing(duality_map(x, ctx) - duality_map(y, ctx), x - y)
            assert lhs <= rhs + 1e-10

    def test_zero_operator_gives_pure_j(self, rng, ctx):
        T = j_pseudo_from_monotone(zero_op(), ctx)
        x = random_smooth(rng, ctx.M, scale=2.0)
        assert np.allclose(T(x).values, duality_map(x, ctx).values, rtol=0, atol=0)
