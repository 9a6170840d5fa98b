from fractions import Fraction

import pytest

from qhall.cartan import A2, A3, dims_upto, load_datum, quiver_from_shorthand
from qhall.hall import (
    BudgetExceeded,
    HallElement,
    QuiverRep,
    bgp_reflect,
    canonical_point,
    e_v_dimension,
    field,
    gl_order,
    group_order,
    hall_number,
    hall_product,
    hall_word,
    iso_classes,
    specialize_compare,
    stratum_counts,
    stratum_index,
)

Q = A2.quiver
QA3 = A3.quiver


def rep(dims, mats, q=2, quiver=Q):
    return QuiverRep(quiver, q, dims, mats)


P2 = rep((1, 1), (((1,),),))
Z2 = rep((1, 1), (((0,),),))
S1 = rep((1, 0), ((),))
S2 = rep((0, 1), (((),),))


def test_field_construction():
    for q in (2, 3, 4, 5, 8, 9, 16, 25):
        F = field(q)
        assert F.q == q
        # Fermat: the multiplicative group has order q-1
        for a in range(1, q):
            acc, n = a, 1
            while acc != 1:
                acc = F.mul(acc, a)
                n += 1
            assert (q - 1) % n == 0


def test_field_rejects_non_prime_powers():
    with pytest.raises(ValueError):
        field(6)
    with pytest.raises(ValueError):
        field(12)


def test_iso_classes_small():
    classes = iso_classes(Q, 2, (1, 1))
    assert len(classes) == 2
    assert sorted(size for _r, size in classes) == [1, 1]
    assert len(iso_classes(Q, 3, (1, 0))) == 1
    assert len(iso_classes(Q, 2, (0, 0))) == 1
    # dim (2,1) at q=2: zero map and rank-one map
    assert len(iso_classes(Q, 2, (2, 1))) == 2


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        iso_classes(Q, 4, (2, 2), budget=10)


def test_orbit_stabilizer():
    for q in (2, 3, 4):
        for dims in dims_upto((2, 2)):
            classes = iso_classes(Q, q, dims)
            assert sum(s for _r, s in classes) == q ** e_v_dimension(Q, dims)
            order = group_order(q, dims)
            for _r, s in classes:
                assert order % s == 0
    assert gl_order(2, 2) == 6
    assert gl_order(4, 2) == 180


def test_hall_numbers():
    assert hall_number(P2, S1, S2) == 1
    assert hall_number(Z2, S1, S2) == 1
    assert hall_number(P2, S2, S1) == 0
    with pytest.raises(ValueError):
        hall_number(P2, S1, S1)


def test_hall_product_examples():
    q = 4
    u1 = HallElement.simple(Q, q, 1)
    u2 = HallElement.simple(Q, q, 2)
    p = hall_product(u1, u2, 2)
    zero_class = ((1, 1), (((0,),),))
    nonzero_class = ((1, 1), (((1,),),))
    assert p.terms == {
        zero_class: Fraction(1, 2),
        nonzero_class: Fraction(1, 2),
    }
    p = hall_product(u2, u1, 2)
    assert p.terms == {zero_class: Fraction(1)}
    unit = HallElement.unit(Q, q)
    assert hall_product(unit, u1, 2) == u1
    with pytest.raises(ValueError):
        hall_product(u1, u2, 3)


def test_composition_algebra_serre():
    q, vn = 4, 2
    u1 = HallElement.simple(Q, q, 1)
    u2 = HallElement.simple(Q, q, 2)
    two = hall_product(u1, u1, vn)
    lhs = (
        hall_product(two, u2, vn)
        + hall_product(u2, two, vn)
        + hall_product(hall_product(u1, u2, vn), u1, vn).scale(Fraction(-5, 2))
    )
    assert lhs.is_zero()


def test_stratum_index():
    assert stratum_index(P2, 2) == 0
    assert stratum_index(Z2, 2) == 1
    assert stratum_index(S1, 2) == 0
    assert stratum_index(Z2, 1) == 1
    with pytest.raises(ValueError):
        stratum_index(rep((1, 1, 1), (((1,),), ((1,),)), 2, QA3), 2)


def test_stratum_counts():
    assert stratum_counts(Q, (1, 1), 2, 2) == [1, 1]
    assert stratum_counts(Q, (1, 1), 3, 2) == [2, 1]
    assert stratum_counts(Q, (0, 0), 2, 2) == [1]
    for q in (2, 3, 4):
        for dims in dims_upto((2, 2)):
            for vertex in (1, 2):
                counts = stratum_counts(Q, dims, q, vertex)
                assert sum(counts) == q ** e_v_dimension(Q, dims)


def test_bgp_reflect_examples():
    y = bgp_reflect(2, P2)
    assert y.dims == (1, 0)
    assert y.quiver.arrows == ((2, 1),)
    y2 = bgp_reflect(2, S1)
    assert y2.dims == (1, 1)
    assert y2.mats == (((1,),),)
    with pytest.raises(ValueError):
        bgp_reflect(2, Z2)
    zero = rep((0, 0), ((),))
    # a zero-dimensional representation reflects to itself
    z = bgp_reflect(2, rep((0, 0), (tuple(),)))
    assert z.dims == (0, 0)


def test_bgp_bijection_on_stratum_zero():
    from qhall.cartan import sigma_i

    for q in (2, 3):
        for dims in dims_upto((2, 2)):
            zero_classes = [
                r
                for r, _s in iso_classes(Q, q, dims)
                if stratum_index(QuiverRep(Q, q, dims, r), 2) == 0
            ]
            target = A2.reflect_dim(2, dims)
            if any(x < 0 for x in target):
                assert not zero_classes
                continue
            images = set()
            rev = sigma_i(2, Q)
            for r in zero_classes:
                y = bgp_reflect(2, QuiverRep(Q, q, dims, r))
                assert y.dims == target
                assert stratum_index(y, 2) == 0
                images.add(canonical_point(rev, q, target, y.mats))
            assert len(images) == len(zero_classes)
            other = [
                r
                for r, _s in iso_classes(rev, q, target)
                if stratum_index(QuiverRep(rev, q, target, r), 2) == 0
            ]
            assert len(other) == len(images)


def test_specialize_compare():
    for nu_a, nu_b in [((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (1, 1)), ((2, 0), (0, 1))]:
        report = specialize_compare(A2, nu_a, nu_b, 4)
        assert report and all(r["match"] for r in report)


def test_specialize_compare_needs_square_q():
    with pytest.raises(ValueError):
        specialize_compare(A2, (1, 0), (0, 1), 3)


def test_hall_word_unit():
    u = hall_word(Q, 4, 2, ())
    assert u == HallElement.unit(Q, 4)


def test_orientation_independence_of_composition_constants():
    rev = load_datum(quiver_from_shorthand("2->1"))
    for nu_a, nu_b in [((1, 0), (0, 1)), ((1, 1), (1, 0)), ((1, 1), (1, 1))]:
        for datum in (A2, rev):
            report = specialize_compare(datum, nu_a, nu_b, 4)
            assert all(r["match"] for r in report)
