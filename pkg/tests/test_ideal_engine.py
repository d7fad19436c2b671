import random
import threading

import pytest

from chern import (
    QQ,
    Fp,
    RingPresentation,
    colon_by_element,
    colon_by_ideal,
    groebner,
    ideal_equals,
    ideal_intersection,
    ideal_membership,
    ideal_power,
    ideal_product,
    ideal_sum,
)
from chern.corpus import build_goto_sakurai, standard_entries
from chern.errors import ArgumentError, StructuralError
from chern.groebner import is_groebner, is_reduced
from chern.poly import PolyRing

from oracles import random_homogeneous, s_polynomials_vanish


@pytest.fixture
def A():
    return RingPresentation(QQ, ["x", "y"])


@pytest.fixture
def node():
    return RingPresentation(QQ, ["x", "y"], ["x*y"])


def gens_of(gb):
    return [str(g) for g in gb.elements]


# -- groebner ------------------------------------------------------------------------

def test_principal():
    S = PolyRing(QQ, ["x", "y"])
    assert gens_of(groebner([S.parse("x")])) == ["x"]


def test_unit():
    S = PolyRing(QQ, ["x", "y"])
    gb = groebner([S.parse("x"), S.parse("x + 1")])
    assert gb.is_unit() and gens_of(gb) == ["1"]


def test_lex_eliminant():
    S = PolyRing(QQ, ["x", "y"], order="lex")
    F = [S.parse("x^2 - y"), S.parse("x^3 - x")]
    gb = groebner(F)
    assert s_polynomials_vanish(gb.elements, S.order)
    assert all(gb.contains(f) for f in F)
    # frozen from an independent CAS run: x^2 - y, x*y - x, y^2 - y
    assert sorted(gens_of(gb)) == sorted(["x^2 - y", "x*y - x", "y^2 - y"])
    elim = [g for g in gb.elements if g.leading_monomial()[0] == 0]
    assert [str(g) for g in elim] == ["y^2 - y"]


def test_gb_elements_monic_and_reduced():
    S = PolyRing(QQ, ["x", "y", "z"])
    gb = groebner([S.parse("2*x^2 - y*z"), S.parse("3*x*y - z^2"), S.parse("y^3 - 5*x*z^2")])
    assert is_reduced(gb)
    assert all(g.leading_coefficient() == 1 for g in gb.elements)


def _corpus_bases():
    for e in standard_entries() + [build_goto_sakurai(2, 2), build_goto_sakurai(3, 2)]:
        R = e.ring()
        yield e.id, R.order, R.base_gb()
        yield e.id + ":q", R.order, e.parameter_ideal().gb()
        yield e.id + ":I", R.order, e.socle_ideal().gb()


@pytest.mark.parametrize("label,order,gb", list(_corpus_bases()), ids=lambda x: x if isinstance(x, str) else "")
def test_corpus_bases_pass_buchberger(label, order, gb):
    assert s_polynomials_vanish(gb.elements, order)
    assert is_groebner(gb.elements, order)
    assert is_reduced(gb)


def test_reduced_basis_is_unique_under_rewriting():
    rng = random.Random(11)
    S = PolyRing(Fp(32003), ["x", "y", "z"])
    base = [S.parse("x^2 - y*z"), S.parse("y^2 - x*z"), S.parse("x*y*z")]
    ref = groebner(base).elements
    for _ in range(10):
        # random invertible recombination with homogeneous polynomial multipliers
        a, b = rng.randrange(1, 100), rng.randrange(1, 100)
        g0 = base[0] * a + base[1] * b
        g1 = base[1]
        g2 = base[2] + base[0] * S.parse(f"{rng.randrange(1, 50)}*x + y")
        gens = [g2, g0, g1]
        rng.shuffle(gens)
        assert groebner(gens).elements == ref


def test_order_switch_keeps_ideal():
    R = RingPresentation(QQ, ["x", "y", "z"], ["y^2 - x*z"])
    L = R.with_order("lex")
    J, K = R.ideal("x^2", "y*z"), L.ideal("x^2", "y*z")
    for f in ["x^2*y", "y^3 - x*y*z", "x*z^2"]:
        assert J.contains(f) == K.contains(f)


# -- membership, sum, product, power ----------------------------------------------------

def test_membership_examples(A, node):
    assert ideal_membership("x^2", A.ideal("x"))
    assert not ideal_membership("x", A.ideal("x^2", "x*y", "y^2"))
    assert ideal_membership("x*y", node.zero_ideal())


def test_membership_inhomogeneous(A):
    assert ideal_membership("x^2 - 1", A.ideal("x - 1"))
    assert not ideal_membership("x", A.ideal("x - 1"))


def test_sum_product_power(A):
    assert ideal_equals(ideal_product(A.ideal("x"), A.ideal("y")), A.ideal("x*y"))
    m = A.maximal_ideal()
    assert ideal_equals(ideal_power(m, 2), A.ideal("x^2", "x*y", "y^2"))
    assert ideal_power(m, 0).is_unit()
    assert ideal_equals(ideal_sum(A.ideal("x"), A.ideal("y")), m)


def test_power_cache_consistent(A):
    J = A.ideal("x^2", "x*y + y^2")
    p3 = ideal_power(J, 3)
    direct = ideal_product(ideal_product(J, J), J)
    assert ideal_equals(p3, direct)
    with pytest.raises(ArgumentError):
        ideal_power(J, -1)


def test_mixed_rings_rejected(A, node):
    with pytest.raises(StructuralError):
        ideal_sum(A.ideal("x"), node.ideal("x"))


# -- colon ----------------------------------------------------------------------------

@pytest.mark.parametrize("method", ["elimination", "artinian", "auto"])
def test_colon_element_example(A, method):
    J = A.ideal("x^2", "x*y", "y^3")
    C = colon_by_element(J, "x", method=method)
    assert ideal_equals(C, A.ideal("x", "y"))


def test_colon_element_more(A, node):
    assert ideal_equals(colon_by_element(A.ideal("x^2", "x*y"), "x"), A.ideal("x", "y"))
    assert ideal_equals(colon_by_element(A.ideal("x"), "y"), A.ideal("x"))
    assert ideal_equals(colon_by_element(node.zero_ideal(), "x"), node.ideal("y"))
    with pytest.raises(ArgumentError):
        colon_by_element(A.ideal("x"), "0")


@pytest.mark.parametrize("method", ["elimination", "artinian"])
def test_colon_ideal_examples(A, method):
    m = A.maximal_ideal()
    assert ideal_equals(colon_by_ideal(A.ideal("x^2", "y"), m, method=method), m)
    assert ideal_equals(colon_by_ideal(A.ideal("x^2", "x*y", "y^2"), m, method=method), m)


def test_colon_ideal_self_is_unit(A):
    m = A.maximal_ideal()
    assert colon_by_ideal(m, m).is_unit()
    with pytest.raises(ArgumentError):
        colon_by_ideal(m, A.zero_ideal())


def _check_colon(J, f, C, degree_bound):
    R = J.ring
    # every generator multiplies f into J
    for g in C.gens:
        assert J.contains(g * f)
    # no missed element among all monomials and random forms up to degree_bound
    from oracles import monomials_of_degree

    for k in range(degree_bound + 1):
        for e in monomials_of_degree(R.weights, k):
            u = R.ambient.monomial(e)
            assert C.contains(u) == J.contains(u * f)


def test_colon_random_pairs_both_routes():
    rng = random.Random(5)
    R = RingPresentation(Fp(32003), ["x", "y", "z"], ["x*z - y^2"])
    for _ in range(6):
        gens = [random_homogeneous(R, rng.choice([2, 3]), rng) for _ in range(3)]
        J = R.ideal(*gens)
        f = random_homogeneous(R, 1, rng)
        if not J.contains_ideal(R.ideal(*[v ** 4 for v in R.ambient.gens()])):
            J = ideal_sum(J, ideal_power(R.maximal_ideal(), 4))
        a = colon_by_element(J, f, method="elimination")
        b = colon_by_element(J, f, method="artinian")
        assert ideal_equals(a, b)
        _check_colon(J, f, a, 4)


def test_colon_inhomogeneous_uses_elimination(A):
    J = A.ideal("x^2 - 1", "y")
    C = colon_by_element(J, "x - 1")
    assert ideal_equals(C, A.ideal("x + 1", "y"))


# -- intersection and equality -----------------------------------------------------------

def test_intersection_examples(A):
    assert ideal_equals(ideal_intersection(A.ideal("x"), A.ideal("y")), A.ideal("x*y"))
    assert ideal_equals(ideal_intersection(A.ideal("x^2", "y"), A.ideal("x")), A.ideal("x^2", "x*y"))
    J = A.ideal("x^2 + y^2", "x*y^3")
    assert ideal_equals(ideal_intersection(J, J), J)


def test_intersection_membership_property():
    rng = random.Random(3)
    R = RingPresentation(QQ, ["x", "y", "z"])
    J = R.ideal("x^2", "y*z")
    K = R.ideal("x*y", "z^3")
    JK = ideal_intersection(J, K)
    for _ in range(40):
        f = random_homogeneous(R, rng.choice([2, 3, 4]), rng, terms=2)
        assert JK.contains(f) == (J.contains(f) and K.contains(f))


def test_equality_examples(A):
    assert ideal_equals(A.ideal("x", "y"), A.ideal("y", "x"))
    assert not ideal_equals(A.ideal("x"), A.ideal("x^2"))


def test_goto_sakurai_reduction_number_two():
    # I^2 != qI, with l(I^2/qI) = 1, and I^3 = qI^2
    from chern.quotient import colength

    e = build_goto_sakurai(2, 2)
    q, I = e.parameter_ideal(), e.socle_ideal()
    assert not ideal_equals(ideal_power(I, 2), ideal_product(q, I))
    assert colength(ideal_product(q, I)) - colength(ideal_power(I, 2)) == 1
    assert ideal_equals(ideal_power(I, 3), ideal_product(q, ideal_power(I, 2)))


# -- presentation checks --------------------------------------------------------------

def test_reserved_and_inhomogeneous_rejected():
    with pytest.raises(ArgumentError):
        RingPresentation(QQ, ["x", "@t"])
    with pytest.raises(ArgumentError):
        RingPresentation(QQ, ["x", "y"], ["x^2 - y"])
    with pytest.raises(ArgumentError):
        RingPresentation(QQ, ["x"], weights=[0])


def test_weighted_homogeneity():
    R = RingPresentation(QQ, ["x", "y"], ["x^3 - y^2"], weights=[2, 3])
    assert R.ideal("x^3 + y^2", homogeneous=True).is_homogeneous
    with pytest.raises(ArgumentError):
        R.ideal("x + y", homogeneous=True)


def test_concurrent_gb_fill_identical():
    R = RingPresentation(QQ, ["x", "y", "z"], ["x*y - z^2"])
    J = R.ideal("x^3", "y^3", "x*z + y*z")
    out = []

    def work():
        out.append(tuple(J.gb().elements))

    ts = [threading.Thread(target=work) for _ in range(4)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert len(set(out)) == 1
