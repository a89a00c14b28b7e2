from expoly import OrdinalCNF


def w(level, coeff=1):
    return OrdinalCNF.omega_term(level, coeff)


def test_zero_and_int():
    assert OrdinalCNF.from_int(0).is_zero()
    assert OrdinalCNF.from_int(3) == OrdinalCNF(((0, 3),))
    assert str(OrdinalCNF.from_int(0)) == "0"


def test_addition_merges_levels():
    assert w(1) + w(1) == w(1, 2)
    assert w(2) + w(0, 3) + w(1) == OrdinalCNF(((2, 1), (1, 1), (0, 3)))


def test_comparison_is_lexicographic_from_the_top():
    assert w(2) > w(1, 99) + w(0, 99)
    assert w(1, 2) > w(1) + w(0, 5)
    assert w(1) + w(0) > w(1)
    assert OrdinalCNF.from_int(5) > OrdinalCNF.from_int(4)
    assert not (w(1) < w(1))


def test_strings():
    assert str(w(1) + OrdinalCNF.from_int(2)) == "w + 2"
    assert str(w(1, 2)) == "w*2"
    assert str(w(2, 3) + w(1) + OrdinalCNF.from_int(1)) == "w^2*3 + w + 1"


def test_total_order_consistency():
    values = [w(2), w(1, 2), w(1) + OrdinalCNF.from_int(1), w(1),
              OrdinalCNF.from_int(7), OrdinalCNF()]
    ordered = sorted(values)
    assert ordered == list(reversed(values))
