import random

import pytest

from chern import (
    INFINITE,
    QQ,
    Fp,
    RingPresentation,
    colength,
    contained_in_m_power,
    index_of_reducibility,
    is_m_primary,
    is_parameter_ideal,
    krull_dimension,
    reduction_check,
)
from chern.corpus import build_goto_sakurai, standard_entries
from chern.errors import ArgumentError
from chern.ideal import colon_by_ideal, ideal_power, ideal_sum
from chern.quotient import redundant_generators, standard_monomial_basis

from oracles import graded_colength, random_homogeneous, socle_dim


@pytest.fixture
def A():
    return RingPresentation(QQ, ["x", "y"])


def test_colength_examples(A):
    assert colength(A.ideal("x^2", "y^2")) == 4
    assert colength(A.ideal("x")) == INFINITE
    basis = standard_monomial_basis(A.ideal("x^2", "y^2"))
    assert basis.finite and sorted(basis.monomials) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_colength_rejects_inhomogeneous(A):
    with pytest.raises(ArgumentError):
        colength(A.ideal("x^2 - y", "y^2"))


def test_goto_sakurai_q_colength():
    e = build_goto_sakurai(2, 2)
    assert colength(e.parameter_ideal()) == 5
    assert is_m_primary(e.parameter_ideal())


def test_m_primary(A):
    assert is_m_primary(A.ideal("x^2", "y^2"))
    assert not is_m_primary(A.ideal("x"))


def test_dimension_examples(A):
    assert krull_dimension(A).dimension == 2
    assert krull_dimension(RingPresentation(QQ, ["x", "y"], ["x*y"])).dimension == 1
    assert krull_dimension(RingPresentation(QQ, ["x", "y"], ["x^2", "x*y"])).dimension == 1
    assert krull_dimension(RingPresentation(QQ, ["x", "y"], ["x^2", "y^3"])).dimension == 0
    assert krull_dimension(A).method == "hilbert-polynomial-degree"


@pytest.mark.parametrize("m,d", [(2, 2), (3, 2), (3, 3)])
def test_goto_sakurai_dimension(m, d):
    assert krull_dimension(build_goto_sakurai(m, d).ring()).dimension == d


def test_dimension_unit_ring():
    with pytest.raises(ArgumentError):
        krull_dimension(RingPresentation(QQ, ["x"], ["x^0"]))


def test_dimension_weighted():
    R = RingPresentation(QQ, ["x", "y", "z"], ["y^2 - x*z", "z^2 - x^2*y", "y*z - x^3"], weights=[3, 4, 5])
    assert krull_dimension(R).dimension == 1


def test_parameter_ideals(A):
    assert is_parameter_ideal(A.ideal("x", "y"))
    assert not is_parameter_ideal(A.ideal("x^2", "x*y", "y^2"))
    E = RingPresentation(QQ, ["x", "y"], ["x^2", "x*y"])
    assert is_parameter_ideal(E.ideal("y"))
    assert colength(E.ideal("y")) == 2
    assert not is_parameter_ideal(A.ideal("x", "x^2"))


def test_redundant_generators(A):
    J = A.ideal("x", "y", "x + y")
    assert [str(g) for g in redundant_generators(J)] == ["x", "y", "x + y"]
    assert redundant_generators(A.ideal("x", "y")) == []


def test_m_power(A):
    assert contained_in_m_power(A.ideal("x^2", "y^3"), 2)
    assert not contained_in_m_power(A.ideal("x", "y^2"), 2)
    assert not contained_in_m_power(build_goto_sakurai(2, 2).parameter_ideal(), 2)
    with pytest.raises(ArgumentError):
        contained_in_m_power(A.ideal("x"), 0)


def test_m_power_uses_membership_modulo_b():
    # membership is decided modulo b, not by the degree of the written generator
    R = RingPresentation(QQ, ["x", "y"], ["x*y - y^2"])
    assert contained_in_m_power(R.ideal("x*y"), 2)
    assert not contained_in_m_power(R.ideal("x"), 2)


def test_index_examples(A):
    assert index_of_reducibility(A.ideal("x^2", "y^2")).index_of_reducibility == 1
    assert index_of_reducibility(A.ideal("x^2", "x*y", "y^2")).index_of_reducibility == 2
    assert index_of_reducibility(A.maximal_ideal()).index_of_reducibility == 1
    with pytest.raises(ArgumentError):
        index_of_reducibility(A.ideal("x"))


def test_index_regular_three():
    R = RingPresentation(QQ, ["x", "y", "z"])
    assert index_of_reducibility(R.maximal_ideal()).index_of_reducibility == 1
    rep = index_of_reducibility(R.ideal("x^2", "y^2", "z^2"))
    assert (rep.colength, rep.colon_colength, rep.index_of_reducibility) == (8, 7, 1)


@pytest.mark.parametrize("m,d", [(2, 2), (3, 2)])
def test_goto_sakurai_index_matches_brute_force(m, d):
    # The socle of R/q contains v and x_i*x_m (i < m): m elements in all.
    e = build_goto_sakurai(m, d)
    R, q = e.ring(), e.parameter_ideal()
    n = index_of_reducibility(q).index_of_reducibility
    assert n == socle_dim(R, q.gens) == m


def test_reduction_examples(A):
    q = A.ideal("x^2", "y^2")
    I = colon_by_ideal(q, A.maximal_ideal())
    assert reduction_check(q, I)
    assert reduction_check(I, I)
    with pytest.raises(ArgumentError):
        reduction_check(A.ideal("x"), A.ideal("y"))


def test_goto_sakurai_reduction_fails():
    e = build_goto_sakurai(2, 2)
    assert not reduction_check(e.parameter_ideal(), e.socle_ideal())


def _corpus_ideals():
    for e in standard_entries() + [build_goto_sakurai(2, 2), build_goto_sakurai(3, 2)]:
        R = e.ring()
        q, I = e.parameter_ideal(), e.socle_ideal()
        yield e.id + ":q", R, q
        yield e.id + ":I", R, I
        yield e.id + ":q2", R, ideal_power(q, 2)


@pytest.mark.parametrize("label,R,J", list(_corpus_ideals()), ids=lambda x: x if isinstance(x, str) else "")
def test_colength_matches_linear_algebra(label, R, J):
    c = colength(J)
    assert c != INFINITE
    if c <= 200:
        assert c == graded_colength(R, J.gens)


def test_monotone_on_nested_pairs():
    rng = random.Random(2)
    R = RingPresentation(Fp(32003), ["x", "y", "z"], ["y^2 - x*z"])
    m3 = ideal_power(R.maximal_ideal(), 3)
    for _ in range(10):
        J = ideal_sum(m3, R.ideal(random_homogeneous(R, 2, rng)))
        K = ideal_sum(J, R.ideal(random_homogeneous(R, rng.choice([1, 2]), rng)))
        assert colength(J) >= colength(K)


def test_socle_containment():
    rng = random.Random(9)
    R = RingPresentation(QQ, ["x", "y", "z"], ["x*y"])
    m = R.maximal_ideal()
    for _ in range(6):
        J = ideal_sum(ideal_power(m, 3), R.ideal(*[random_homogeneous(R, 2, rng) for _ in range(2)]))
        rep = index_of_reducibility(J)
        C = rep.colon
        assert C.contains_ideal(J)
        for g in C.gens:
            for v in m.gens:
                assert J.contains(g * v)
        assert rep.index_of_reducibility >= 1
        assert rep.index_of_reducibility == socle_dim(R, J.gens)
