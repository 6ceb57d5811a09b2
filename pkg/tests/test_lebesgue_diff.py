import random

import pytest

from liftlab.filter_calculus import Filter, trivial_filter
from liftlab.lebesgue_diff import (FilterKernel, basis_from_lifting,
                                   differentiates, kernel_from_lifting,
                                   lebesgue_transform, limiting_operator,
                                   lower_density_from_kernel, random_total_fn,
                                   recovers, separating_function,
                                   verify_theorem1)
from liftlab.measure_algebra import SetTransform, enumerate_liftings
from liftlab.measure_space import (averageable_sets, build_space,
                                   conditional_prob, indicator, partial_fn,
                                   total_fn)

A, B, N = 1, 2, 4
LAMBDA_A = (0, 5, 2, 7, 0, 5, 2, 7)


def lambda_a_kernel(s1):
    return kernel_from_lifting(s1, SetTransform(s1, LAMBDA_A))


def trivial_kernel(space):
    ground = averageable_sets(space)
    return FilterKernel(space, tuple(trivial_filter(ground)
                                     for _ in range(space.n)))


class TestLebesgueTransform:
    def test_worked_fixture(self, s1):
        lam = lebesgue_transform(s1, total_fn(s1, [2, 4, 100]))
        assert lam.values == {1: 2, 2: 4, 3: 3, 5: 2, 6: 4, 7: 3}

    def test_constant_function_has_constant_means(self, s1):
        lam = lebesgue_transform(s1, total_fn(s1, [5, 5, 5]))
        assert set(lam.values.values()) == {5}

    def test_matches_conditional_probability(self, s1):
        # mean of an indicator over a set = conditional probability
        for q in range(8):
            lam = lebesgue_transform(s1, indicator(s1, q))
            for ref in averageable_sets(s1):
                assert lam(ref) == conditional_prob(s1, q, ref)

    def test_representative_independence(self, s1):
        full = total_fn(s1, [2, 4, 100])
        other = total_fn(s1, [2, 4, -9])
        partial = partial_fn(s1, {0: 2, 1: 4})
        assert (lebesgue_transform(s1, full).values
                == lebesgue_transform(s1, other).values
                == lebesgue_transform(s1, partial).values)

    def test_rejects_functions_undefined_on_positive_atoms(self, s1):
        with pytest.raises(ValueError, match="almost everywhere"):
            lebesgue_transform(s1, partial_fn(s1, {0: 1}))

    def test_injective_on_indicator_classes(self, s1):
        seen = {}
        for q in range(8):
            key = tuple(sorted(lebesgue_transform(s1, indicator(s1, q)).values.items()))
            cls = q & s1.pos_mask
            assert seen.setdefault(key, cls) == cls

    def test_injective_on_random_functions(self, s1):
        rng = random.Random(11)
        for _ in range(40):
            f = random_total_fn(s1, rng)
            g = random_total_fn(s1, rng)
            same_class = all(f(i) == g(i) for i in (0, 1))
            same_transform = (lebesgue_transform(s1, f).values
                              == lebesgue_transform(s1, g).values)
            assert same_class == same_transform


class TestLimitingOperator:
    def test_trivial_kernel_nonconstant_defined_nowhere(self, s1):
        lam = lebesgue_transform(s1, total_fn(s1, [2, 4, 0]))
        out = limiting_operator(s1, trivial_kernel(s1), lam)
        assert out.domain == 0

    def test_trivial_kernel_constant_defined_everywhere(self, s1):
        lam = lebesgue_transform(s1, total_fn(s1, [3, 3, 3]))
        out = limiting_operator(s1, trivial_kernel(s1), lam)
        assert out.domain == s1.full_mask
        assert set(out.values) == {3}

    def test_lifting_kernel_recovers_fixture(self, s1):
        lam = lebesgue_transform(s1, total_fn(s1, [2, 4, 100]))
        out = limiting_operator(s1, lambda_a_kernel(s1), lam)
        assert out.values == (2, 4, 2)


class TestDifferentiates:
    def test_lifting_kernel_differentiates(self, s1):
        assert differentiates(s1, lambda_a_kernel(s1))

    def test_trivial_kernel_fails_on_an_indicator(self, s1):
        v = differentiates(s1, trivial_kernel(s1))
        assert not v and v.witness[0] == (A, None)[0]

    def test_single_positive_atom_space_always_differentiates(self):
        sp = build_space([1, 0])
        ground = averageable_sets(sp)
        kernels = [trivial_kernel(sp)]
        for q in ground:
            kernels.append(FilterKernel(
                sp, tuple(Filter(ground, frozenset({q})) for _ in range(2))))
        for kernel in kernels:
            assert differentiates(sp, kernel)

    def test_family_reduction_against_random_functions(self):
        # if the indicator + separating family is recovered, random
        # rational functions must be recovered too
        rng = random.Random(23)
        for weights in ([1, 1, 0], [1, 2, 0], [1, 1, 1, 0]):
            sp = build_space(weights)
            ground = averageable_sets(sp)
            for trial in range(30):
                filters = tuple(
                    Filter(ground, frozenset(rng.sample(ground, rng.randint(1, 3))))
                    for _ in range(sp.n))
                kernel = FilterKernel(sp, filters)
                if differentiates(sp, kernel):
                    for _ in range(60):
                        assert recovers(sp, kernel, random_total_fn(sp, rng))

    def test_separating_function_values_distinct(self, s1):
        f = separating_function(s1)
        values = [f(i) for i in range(s1.n)]
        assert len(set(values)) == s1.n


class TestLowerDensityFromKernel:
    def test_fixture_table(self, s1):
        kernel = lambda_a_kernel(s1)
        density = lower_density_from_kernel(s1, kernel)
        assert density.table == LAMBDA_A
        assert density.table[A] == (A | N)
        assert density.table[0] == 0
        assert density.table[s1.full_mask] == s1.full_mask
        assert density.table[A] == density.table[A | N]

    def test_rejects_non_differentiating_kernel(self, s1):
        with pytest.raises(ValueError, match="differentiate"):
            lower_density_from_kernel(s1, trivial_kernel(s1))


class TestBasisFromLifting:
    def test_fixed_points_of_lambda_a(self, s1):
        basis = basis_from_lifting(s1, SetTransform(s1, LAMBDA_A))
        assert basis.collection == (2, 5, 7)
        assert basis.support == s1.full_mask
        assert basis.families[0] == (5, 7)   # directed, least element {a,n}
        assert basis.families[1] == (2, 7)
        assert basis.families[2] == (5, 7)

    def test_identity_on_null_free_space_fixes_everything(self, no_null):
        [identity] = enumerate_liftings(no_null)
        basis = basis_from_lifting(no_null, identity)
        assert basis.collection == averageable_sets(no_null)

    def test_rejects_non_lifting(self, s1):
        with pytest.raises(ValueError, match="not a lifting"):
            basis_from_lifting(s1, SetTransform(s1, (0, 1, 2, 7, 0, 1, 2, 7)))


class TestKernelFromLifting:
    def test_fixture_kernels(self, s1):
        kernel = lambda_a_kernel(s1)
        assert [sorted(f.kernel) for f in kernel.filters] == [[5], [2], [5]]

    def test_all_entries_are_ultrafilters_on_support(self, s1, s2):
        from liftlab.filter_calculus import is_ultrafilter
        for sp in (s1, s2):
            for lift in enumerate_liftings(sp):
                kernel = kernel_from_lifting(sp, lift)
                for f in kernel.filters:
                    assert is_ultrafilter(f)

    def test_single_positive_atom_space(self):
        sp = build_space([1, 0, 0])
        [lift] = enumerate_liftings(sp)
        kernel = kernel_from_lifting(sp, lift)
        # the lifting fixes only the whole space, so every point sees the
        # principal filter at that unique basis minimum
        assert lift.table[sp.full_mask] == sp.full_mask
        assert all(f.kernel == {sp.full_mask} for f in kernel.filters)


class TestRoundTrips:
    def test_limit_equals_function_of_retraction(self):
        rng = random.Random(7)
        for weights in ([1, 1, 0], [1, 1, 0, 0], [1, 2, 3, 0], [2, 1, 0, 0],
                        [1, 1, 1, 1, 0, 0]):
            sp = build_space(weights)
            for lift in enumerate_liftings(sp):
                from liftlab.measure_algebra import lifting_retraction
                g = lifting_retraction(lift)
                kernel = kernel_from_lifting(sp, lift)
                for _ in range(10):
                    f = random_total_fn(sp, rng)
                    out = limiting_operator(sp, kernel,
                                            lebesgue_transform(sp, f))
                    for x in range(sp.n):
                        assert out(x) == f(g[x])

    def test_density_of_kernel_is_the_lifting(self):
        for weights in ([1, 1, 0], [1, 1, 0, 0], [1, 2, 3, 0], [1, 0, 0],
                        [1, 1, 1, 1, 0, 0]):
            sp = build_space(weights)
            for lift in enumerate_liftings(sp):
                kernel = kernel_from_lifting(sp, lift)
                assert lower_density_from_kernel(sp, kernel).table == lift.table


class TestTheoremOne:
    def test_s1_both_directions_and_round_trip(self, s1):
        report = verify_theorem1(s1)
        assert len(report.entries) == 2
        assert report.all_pass and report.round_trips_identical

    def test_two_null_atoms(self, s2):
        report = verify_theorem1(s2)
        assert len(report.entries) == 4
        assert report.all_pass and report.round_trips_identical

    def test_null_free_space_trivial(self, no_null):
        report = verify_theorem1(no_null)
        assert len(report.entries) == 1
        assert report.all_pass
