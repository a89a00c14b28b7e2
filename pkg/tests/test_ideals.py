import random
from fractions import Fraction

import pytest

from expoly import (BudgetExceededError, EPoly, IdealHandle, IMAG_UNIT,
                    PreconditionError, augmentation, augmentation_mod,
                    parse_epoly, present)
from expoly.polyring import spolynomial

from helpers import random_epoly
from oracle import oracle_member


def P(text, nvars=1):
    return parse_epoly(text, nvars)


X = EPoly.var(1, 0)
ONE = EPoly.const(1, 1)


class TestPresent:
    def test_no_exponents(self):
        assert present([X]).directions == ()

    def test_span_collapses(self):
        pres = present([X.exp() - 1, (2 * X).exp()])
        assert [d.epoly for d in pres.directions] == [X]
        assert [d.level for d in pres.directions] == [1]

    def test_primitive_generator(self):
        half = X * Fraction(1, 2)
        pres = present([half.exp()])
        assert [d.epoly for d in pres.directions] == [half]

    def test_refines_to_common_primitive(self):
        third = X * Fraction(1, 3)
        half = X * Fraction(1, 2)
        pres = present([half.exp(), third.exp()])
        assert [d.epoly for d in pres.directions] == [X * Fraction(1, 6)]

    def test_layer_adapted_levels(self):
        pres = present([X.exp().exp(), X.exp() - 1])
        assert sorted(d.level for d in pres.directions) == [1, 2]

    def test_gaussian_directions_are_q_independent(self):
        pres = present([X.exp(), (IMAG_UNIT * X).exp()])
        assert len(pres.directions) == 2

    def test_encode_decode_round_trip(self):
        rng = random.Random(21)
        for _ in range(100):
            p = random_epoly(rng, 2, height=rng.randint(0, 2),
                             gaussian_ok=True)
            pres = present([p])
            assert pres.decode(pres.encode(p)) == p

    def test_mixed_layer_exponent(self):
        x1, x2 = EPoly.var(2, 0), EPoly.var(2, 1)
        p = (x2 + x1.exp()).exp()
        pres = present([p])
        assert sorted(d.level for d in pres.directions) == [1, 2]
        assert pres.decode(pres.encode(p)) == p


class TestGroebner:
    def test_single_variable(self):
        gb = IdealHandle([X]).groebner()
        assert [str(e) for e in gb.elements] == ["1*X1"]

    def test_two_variable_fixture(self):
        x1, x2 = EPoly.var(2, 0), EPoly.var(2, 1)
        gb = IdealHandle([x1, x1 * x1 + x2]).groebner()
        leads = sorted(str(e) for e in gb.elements)
        assert leads == ["1*X1", "1*X2"]

    def test_group_unit_fixture(self):
        gb = IdealHandle([X.exp() - 1]).groebner()
        assert "1*u1 + -1*1" in [str(e) for e in gb.elements]

    def test_spoly_consistency_and_cofactors(self):
        corpus = [
            IdealHandle([X, X * X + 1]),
            IdealHandle([X.exp() - 1, X]),
            IdealHandle([(X * Fraction(1, 2)).exp() - 1]),
            IdealHandle([parse_epoly("X1*X2 + X2", 2),
                         parse_epoly("X2^2 - X1", 2)]),
        ]
        for handle in corpus:
            gb = handle.groebner()
            for i in range(len(gb.elements)):
                for j in range(i):
                    s = spolynomial(gb.elements[i], gb.elements[j])
                    _, rem = gb.normal_form(s)
                    assert rem.is_zero()
            ring = gb.ring
            for element, rep in zip(gb.elements, gb.reps):
                acc = ring.zero()
                for r, g in zip(rep, gb.input_gens):
                    acc = acc + r * g
                assert acc == element

    def test_budget_exceeded_is_explicit(self):
        handle = IdealHandle([parse_epoly("X1^3*X2 - X1", 2),
                              parse_epoly("X1*X2^3 - X2", 2)],
                             budget_limit=3)
        with pytest.raises(BudgetExceededError):
            handle.groebner()


class TestMembership:
    def test_fixture_cofactor(self):
        result = IdealHandle([X]).membership(X * X + X)
        assert result.member and list(result.cofactors) == [X + 1]

    def test_one_not_member(self):
        assert not IdealHandle([X]).membership(ONE).member

    def test_lattice_refinement(self):
        handle = IdealHandle([(X * Fraction(1, 2)).exp() - 1])
        result = handle.membership(X.exp() - 1)
        assert result.member
        assert result.cofactors[0] == (X * Fraction(1, 2)).exp() + 1

    def test_refinement_on_query(self):
        handle = IdealHandle([X.exp() - 1])
        assert not handle.membership((X * Fraction(1, 2)).exp() - 1).member
        # the slice refined to the primitive direction X1/2
        dirs = [d.epoly for d in handle.presentation().directions]
        assert dirs == [X * Fraction(1, 2)]

    def test_cofactors_reexpand(self):
        rng = random.Random(69)
        handle = IdealHandle([X, X.exp() - 1])
        for _ in range(50):
            mult = random_epoly(rng, 1, height=rng.randint(0, 1))
            p = mult * X + random_epoly(rng, 1, height=1) * (X.exp() - 1)
            result = handle.membership(p)
            assert result.member
            acc = EPoly.zero(1)
            for c, g in zip(result.cofactors, handle.gens):
                acc = acc + c * g
            assert acc == p


class TestOracleAgreement:
    CAP = 5

    def tiny_instances(self):
        x1, x2 = EPoly.var(2, 0), EPoly.var(2, 1)
        one = EPoly.const(2, 1)
        e1 = x1.exp()
        yield [x1], [x1 * x1, x1 * x2 + x1, x2, one, x2 * x2]
        yield [x1, x2 * x2], [x1 * x2, x2 ** 3, x2, x1 + x2 * x2, one]
        yield [x1 * x2 - 1], [x1 * x2 * x2 - x2, x1, x1 * x2 + 1]
        yield [e1 - 1], [e1 * e1 - 1, e1, e1 * e1 - e1, (2 * x1).exp() - 1,
                         x1]
        yield [e1 - 1, x1], [x1 * e1 - x1, e1 - 1 + x1, one, e1 + 1]
        yield [x1 + x2, x2 * x2 - 1], [x1 * x1 - 1, x1 + x2 * x2 * x1,
                                       x2 - 1, (x1 + x2) * (x2 - 3)]

    def test_agreement_with_exhaustive_cofactor_search(self):
        for gens, queries in self.tiny_instances():
            nvars = gens[0].nvars
            handle = IdealHandle(gens, nvars=nvars)
            for q in queries:
                engine = handle.membership(q).member
                pres = handle.presentation(also_cover=(q,))
                encoded_gens = ([pres.encode(g) for g in handle.gens]
                                + pres.relations())
                brute = oracle_member(encoded_gens, pres.encode(q), self.CAP)
                assert engine == brute, (gens, str(q))


class TestIntersect:
    def test_eliminates_group_directions(self):
        handle = IdealHandle([X, X.exp() - 2])
        cut = handle.intersect_subring(0)
        assert [str(g) for g in cut.gens] == ["X1"]

    def test_localization_kernel_is_zero(self):
        handle = IdealHandle([X.exp() - 1 - X])
        assert IdealHandle([X.exp() - 1 - X]).intersect_subring(0).gens == ()
        assert handle.intersect_subring(0).gens == ()

    def test_untouched_polynomial_ideal(self):
        x2 = EPoly.var(2, 1)
        cut = IdealHandle([x2]).intersect_subring(0)
        assert [str(g) for g in cut.gens] == ["X2"]

    def test_outputs_live_in_the_subring_and_ideal(self):
        handle = IdealHandle([X.exp().exp() - 1, X.exp() - 1, X * X])
        for level in (0, 1):
            cut = handle.intersect_subring(level)
            for g in cut.gens:
                assert g.height() <= level
                assert handle.membership(g).member

    def test_base_field_cut(self):
        assert IdealHandle([X]).intersect_subring(-1).gens == ()


class TestAugmentation:
    def test_fixtures(self):
        assert augmentation(3 * X.exp() - 2 * (X * X).exp(), 1) == ONE
        assert augmentation(X.exp() - 1, 1).is_zero()
        assert augmentation(X, 1) == X
        with pytest.raises(PreconditionError):
            augmentation(X.exp().exp(), 1)

    def test_augmentation_mod_fixtures(self):
        ideal = IdealHandle([X])
        assert augmentation_mod(X.exp() - 1, ideal, 1) == (EPoly.zero(1), True)
        image, member = augmentation_mod(X.exp(), ideal, 1)
        assert image == ONE and not member
        image, member = augmentation_mod(X * (X * X).exp(), ideal, 1)
        assert image == X and member

    def test_ring_homomorphism_sampled(self):
        rng = random.Random(515)
        for _ in range(500):
            u = random_epoly(rng, 2, height=1)
            v = random_epoly(rng, 2, height=1)
            assert (augmentation(u + v, 1)
                    == augmentation(u, 1) + augmentation(v, 1))
            assert (augmentation(u * v, 1)
                    == augmentation(u, 1) * augmentation(v, 1))

    def test_kernel_cut_agreement_sampled(self):
        # Elements of the coefficient ring are fixed by the augmentation, so
        # kernel membership must agree with plain ideal membership.
        rng = random.Random(25)
        ideal = IdealHandle([X])
        for _ in range(200):
            u = random_epoly(rng, 1, height=0)
            _, in_kernel = augmentation_mod(u, ideal, 1)
            assert in_kernel == ideal.membership(u).member
