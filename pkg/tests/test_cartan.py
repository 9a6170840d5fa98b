import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from qhall.cartan import (
    A2,
    A3,
    Quiver,
    dims_upto,
    is_sink,
    is_source,
    load_datum,
    load_quiver,
    quiver_from_shorthand,
    sigma_E,
    sigma_i,
)


def test_cartan_matrix_single_arrow():
    assert A2.cartan == ((2, -1), (-1, 2))


def test_cartan_matrix_no_arrows():
    d = load_datum(Quiver((1, 2), ()))
    assert d.cartan == ((2, 0), (0, 2))


def test_cartan_matrix_kronecker():
    d = load_datum(quiver_from_shorthand("1->2,1->2"))
    assert d.cartan == ((2, -2), (-2, 2))


def test_loops_rejected():
    with pytest.raises(ValueError):
        Quiver((1,), ((1, 1),))


def test_sym_form():
    assert A2.sym_form((1, 0), (1, 0)) == 2
    assert A2.sym_form((1, 0), (0, 1)) == -1
    assert A2.sym_form((1, 1), (1, 1)) == 2


def test_alpha_eval():
    assert A2.alpha_eval(1, (1, 0)) == 2
    assert A2.alpha_eval(2, (1, 0)) == -1
    assert A2.alpha_eval(1, (1, 1)) == 1


def test_reflect_dim():
    assert A2.reflect_dim(2, (1, 1)) == (1, 0)
    assert A2.reflect_dim(1, (0, 1)) == (1, 1)
    assert A2.reflect_dim(1, (0, 0)) == (0, 0)


def test_reflect_coweight():
    assert A2.reflect_coweight(1, (1, 0)) == (-1, 0)
    assert A2.reflect_coweight(1, (0, 1)) == (1, 1)
    assert A2.reflect_coweight(1, (0, 0)) == (0, 0)


def test_sigma():
    q = A2.quiver
    assert sigma_i(2, q).arrows == ((2, 1),)
    assert sigma_E((), q) == q
    assert sigma_i(1, sigma_i(1, q)) == q


def test_sink_source_euler():
    q = A2.quiver
    assert is_sink(2, q) and not is_sink(1, q)
    assert is_source(1, q) and not is_source(2, q)
    assert A2.euler_form((1, 0), (0, 1)) == -1
    assert A2.euler_form((0, 1), (1, 0)) == 0


def test_quiver_loading():
    assert load_quiver("1->2,2->3") == A3.quiver
    assert load_quiver('{"vertices": [1, 2], "arrows": [[1, 2]]}') == A2.quiver


small_quivers = st.builds(
    lambda n, pairs: Quiver(
        tuple(range(1, n + 1)),
        tuple((a % n + 1, b % n + 1) for a, b in pairs if a % n != b % n),
    ),
    st.integers(2, 4),
    st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=5),
)


@settings(max_examples=60, deadline=None)
@given(small_quivers, st.integers(0, 30))
def test_orientation_independence_of_cartan(q, bits):
    subset = frozenset(k for k in range(len(q.arrows)) if bits >> k & 1)
    assert load_datum(sigma_E(subset, q)).cartan == load_datum(q).cartan


@settings(max_examples=60, deadline=None)
@given(small_quivers, st.integers(1, 4), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_reflection_involution(q, vertex_idx, nu_raw):
    d = load_datum(q)
    i = q.vertices[vertex_idx % len(q.vertices)]
    nu = tuple(nu_raw[: d.rank])
    assert d.reflect_dim(i, d.reflect_dim(i, nu)) == nu


@settings(max_examples=60, deadline=None)
@given(small_quivers)
def test_sym_form_is_euler_symmetrization(q):
    d = load_datum(q)
    for a in dims_upto((2,) * d.rank):
        for b in dims_upto((1,) * d.rank):
            assert d.sym_form(a, b) == d.euler_form(a, b) + d.euler_form(b, a)


def test_alpha_on_coroots_is_cartan():
    for d in (A2, A3):
        for i in d.vertices:
            for j in d.vertices:
                assert d.alpha_eval(i, d.unit_vec(j)) == d.a(j, i) == d.a(i, j)
