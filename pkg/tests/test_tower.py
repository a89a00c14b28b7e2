import json
import random

import pytest

from expoly import (EPoly, IdealHandle, PreconditionError, TowerIdeal,
                    dagger_check, real_kernel_check, rewrite, rewrite_expand,
                    saturate_level_one, split_tilde)
from expoly.tower import TrackedDecomposition

from helpers import random_epoly, random_zero_const

X = EPoly.var(1, 0)
ONE = EPoly.const(1, 1)


class TestDagger:
    def test_layer_zero_holds(self):
        report = dagger_check(IdealHandle([X]), 0)
        assert report.holds

    def test_incompatible_constant_fails_with_witness(self):
        report = dagger_check(IdealHandle([X, X.exp() - 2]), 1)
        assert not report.holds and report.witness == X

    def test_compatible_pair_holds(self):
        report = dagger_check(IdealHandle([X, X.exp() - 1]), 1)
        assert report.holds and report.checked == [X]

    def test_nonzero_constant_generators_are_skipped(self):
        # X1 - 1 is outside the exponential domain; the check must not
        # attempt E on it.
        report = dagger_check(IdealHandle([X - 1]), 1)
        assert report.holds and report.skipped == [X - 1]


class TestSplitTilde:
    def test_single_seed(self):
        dec, rejected = split_tilde(IdealHandle([X]), 0, [X])
        assert [s.element for s in dec.seeds] == [X]
        assert [s.lower for s in dec.seeds] == [EPoly.zero(1)]
        assert rejected == []

    def test_dependent_seed_rejected(self):
        dec, rejected = split_tilde(IdealHandle([X]), 0, [X, 2 * X])
        assert [s.element for s in dec.seeds] == [X]
        assert len(rejected) == 1 and rejected[0].element == 2 * X

    def test_span_membership(self):
        x1, x2 = EPoly.var(2, 0), EPoly.var(2, 1)
        ideal = IdealHandle([x1, x2 * x2])
        dec, rejected = split_tilde(ideal, 0, [x1, x2 * x2, x1 + x2 * x2])
        assert [s.element for s in dec.seeds] == [x1, x2 * x2]
        assert len(rejected) == 1

    def test_non_member_rejected(self):
        _, rejected = split_tilde(IdealHandle([X]), 0, [X + 1])
        assert rejected and "membership" in rejected[0].reason


class TestRewrite:
    def test_tracked_direction(self):
        dec, _ = split_tilde(IdealHandle([X]), 0, [X])
        terms = rewrite(X.exp(), dec)
        assert [(t.coefficient, t.argument) for t in terms] == [(ONE, X)]

    def test_pure_complement(self):
        x1, x2 = EPoly.var(2, 0), EPoly.var(2, 1)
        dec = TrackedDecomposition(0, 2)
        terms = rewrite(x1 * x2.exp(), dec)
        assert [(t.coefficient, t.argument) for t in terms] == [(x1, x2)]

    def test_mixed_argument(self):
        x1, x2 = EPoly.var(2, 0), EPoly.var(2, 1)
        dec, _ = split_tilde(IdealHandle([x1]), 0, [x1])
        terms = rewrite((x1 + x2).exp(), dec)
        assert len(terms) == 1
        assert terms[0].coefficient == EPoly.const(2, 1)
        assert terms[0].argument == x1 + x2
        assert terms[0].complement_part == x2

    def test_lower_part_absorbed_into_coefficient(self):
        # Track f = X1 + E(X1) - E(2*X1) at layer 1 (zero constant, nonzero
        # lower part): rewriting the group element of its projection must
        # absorb E(-X1) into the coefficient.
        f = X + X.exp() - (2 * X).exp()
        dec, rejected = split_tilde(IdealHandle([f]), 1, [f])
        assert not rejected
        proj = f.layer_component(1)           # E(X1) - E(2*X1)
        group_elem = proj.exp()
        terms = rewrite(group_elem, dec)
        assert len(terms) == 1
        t = terms[0]
        assert t.argument == f
        assert t.coefficient == (-X).exp()
        assert rewrite_expand(terms, 1) == group_elem

    def test_round_trip_sampled(self):
        rng = random.Random(3141)
        x1, x2 = EPoly.var(2, 0), EPoly.var(2, 1)
        ideal = IdealHandle([x1, x2 * x2])
        dec, _ = split_tilde(ideal, 0, [x1, x2 * x2])
        empty = TrackedDecomposition(0, 2)
        for _ in range(250):
            u = random_epoly(rng, 2, height=1)
            for d in (dec, empty):
                terms = rewrite(u, d)
                assert rewrite_expand(terms, 2) == u
                args = [t.argument for t in terms]
                assert len(set(args)) == len(args)

    def test_phi_is_ring_homomorphism(self):
        rng = random.Random(59)
        x1, x2 = EPoly.var(2, 0), EPoly.var(2, 1)
        dec, _ = split_tilde(IdealHandle([x1]), 0, [x1])

        def phi(u):
            total = EPoly.zero(2)
            for t in rewrite(u, dec):
                total = total + t.coefficient
            return total

        for _ in range(100):
            u = random_epoly(rng, 2, height=1)
            v = random_epoly(rng, 2, height=1)
            assert phi(u + v) == phi(u) + phi(v)
            assert phi(u * v) == phi(u) * phi(v)


class TestTower:
    def test_extension_requires_compatibility(self):
        with pytest.raises(PreconditionError) as err:
            TowerIdeal(IdealHandle([X, X.exp() - 2])).extend_one_step()
        assert "X1" in str(err.value)

    def test_level_one_memberships(self):
        tower = TowerIdeal(IdealHandle([X])).extend_one_step()
        assert tower.membership(X.exp() - 1, 1)
        assert not tower.membership(X.exp(), 1)
        assert tower.membership(X * (X * X).exp(), 1)

    def test_seed_refresh(self):
        tower = TowerIdeal(IdealHandle([X])).extend_one_step()
        assert tower.membership((X * X).exp() - 1, 1)
        assert X * X in tower.tracked_seeds(0)

    def test_exponentials_of_tracked_members(self):
        tower = TowerIdeal(IdealHandle([X])).extend(2)
        f = X.exp() - (2 * X).exp()
        assert tower.membership(f, 1)
        assert tower.membership(f.exp() - 1, 2)

    def test_properness_all_levels(self):
        tower = TowerIdeal(IdealHandle([X])).extend(3)
        for level in range(4):
            assert not tower.membership(ONE, level)

    def test_level_consistency_sampled(self):
        rng = random.Random(2024)
        tower = TowerIdeal(IdealHandle([X])).extend(2)
        samples = [random_epoly(rng, 1, height=1) for _ in range(50)]
        assert tower.check_level_consistency(samples, level=2) == []

    def test_derived_generators_recorded(self):
        x1, x2 = EPoly.var(2, 0), EPoly.var(2, 1)
        tower = TowerIdeal(IdealHandle([x1, x2 * x2])).extend_one_step()
        assert tower.derived_generators(0) == [x1.exp() - 1,
                                               (x2 * x2).exp() - 1]

    def test_serialization_round_trip(self):
        tower = TowerIdeal(IdealHandle([X])).extend(2)
        tower.membership((X * X).exp() - 1, 1)  # forces a refresh
        doc = json.loads(json.dumps(tower.to_dict()))
        assert doc["format"] == "tower/1"
        clone = TowerIdeal.from_dict(doc)
        assert clone.top_level == tower.top_level
        assert clone.tracked_seeds(0) == tower.tracked_seeds(0)
        assert clone.membership(X.exp() - 1, 1)

    def test_query_height_guard(self):
        tower = TowerIdeal(IdealHandle([X])).extend_one_step()
        with pytest.raises(PreconditionError):
            tower.membership(X.exp().exp(), 1)

    def test_level_ideal_contains_generated_ideal(self):
        # The kernel-based level ideal must contain the finitely generated
        # ideal spanned by the base generators and the recorded E(f)-1.
        rng = random.Random(90210)
        tower = TowerIdeal(IdealHandle([X])).extend_one_step()
        gens = list(tower.base.gens) + tower.derived_generators(0)
        for _ in range(50):
            combo = EPoly.zero(1)
            for g in gens:
                combo = combo + random_epoly(rng, 1, height=1,
                                             max_terms=2) * g
            assert tower.membership(combo, 1)


class TestSaturation:
    def test_stabilizes_trivially(self):
        outcome = saturate_level_one(IdealHandle([X.exp() - 1 - X]))
        assert outcome.succeeded and outcome.rounds == 1
        assert outcome.dagger.holds
        assert outcome.added == ()

    def test_failure_certificate(self):
        outcome = saturate_level_one(IdealHandle([X, X.exp() - 2]))
        assert outcome.status == "unit"
        total = EPoly.zero(1)
        for c, g in zip(outcome.certificate, outcome.generators):
            total = total + c * g
        assert total == ONE

    def test_compatible_ideal_stabilizes(self):
        outcome = saturate_level_one(IdealHandle([X, X.exp() - 1]))
        assert outcome.succeeded and outcome.dagger.holds

    def test_slice_is_enlarged_to_see_the_cut(self):
        outcome = saturate_level_one(IdealHandle([X]))
        assert outcome.succeeded
        assert X.exp() - 1 in outcome.added
        assert outcome.dagger.holds

    def test_requires_proper_input(self):
        with pytest.raises(PreconditionError):
            saturate_level_one(IdealHandle([ONE]))


class TestRealKernel:
    def test_real_ideal_passes(self):
        report = real_kernel_check(IdealHandle([X]),
                                   [(X,), (X.exp() - 1,)], 1)
        assert not report.falsified
        assert all(e.sum_in_kernel for e in report.entries)

    def test_non_real_ideal_falsified(self):
        report = real_kernel_check(IdealHandle([X * X]), [(X,)], 1)
        assert report.falsified
        assert report.falsifications()[0].offenders == (X,)

    def test_kernel_witnesses_from_construction(self):
        rng = random.Random(8)
        ideal = IdealHandle([X])
        tuples = []
        for _ in range(20):
            u1 = random_epoly(rng, 1, height=0) * X
            u2 = (random_zero_const(rng, 1, height=0)).exp() - 1
            tuples.append((u1, u2))
        report = real_kernel_check(ideal, tuples, 1)
        assert not report.falsified
        assert all(e.sum_in_kernel for e in report.entries)
