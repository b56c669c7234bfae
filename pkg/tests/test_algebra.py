"""Core MV operation tests over every algebra kind, plus property-based
equation checks driven by hypothesis."""

import pytest
from hypothesis import given, settings, strategies as st

from mvsheaf import algebra as alg
from mvsheaf.errors import ClosureBudgetExceeded, ForeignElement, NotEnumerable


def chain_elems(n):
    return st.integers(0, n)


K3 = alg.GammaLex(2, (1,))
K3_POOL = K3.sample(5)
CHANG = alg.GammaLex(1, (1,))
G12 = alg.GammaLex(1, (2,))


def _equations(a, x, y, z):
    assert a.oplus(x, a.oplus(y, z)) == a.oplus(a.oplus(x, y), z)
    assert a.oplus(x, y) == a.oplus(y, x)
    assert a.oplus(x, a.zero()) == x
    assert a.star(a.star(x)) == x
    assert a.oplus(x, a.star(a.zero())) == a.star(a.zero())
    lhs = a.oplus(a.star(a.oplus(a.star(x), y)), y)
    rhs = a.oplus(a.star(a.oplus(a.star(y), x)), x)
    assert lhs == rhs


@settings(deadline=None, max_examples=120)
@given(chain_elems(6), chain_elems(6), chain_elems(6))
def test_chain_satisfies_mv_equations(x, y, z):
    _equations(alg.FiniteChain(6), x, y, z)


@settings(deadline=None, max_examples=120)
@given(st.sampled_from(K3_POOL), st.sampled_from(K3_POOL), st.sampled_from(K3_POOL))
def test_k3_satisfies_mv_equations(x, y, z):
    _equations(K3, x, y, z)


def g12_elems():
    # valid payloads: tails >= 0 at height 0, mirrored through star at the top
    small = st.tuples(st.integers(0, 8), st.integers(0, 8))
    low = small.map(lambda t: (0, *t))
    high = low.map(G12.star)
    return st.one_of(low, high)


@settings(deadline=None, max_examples=120)
@given(g12_elems(), g12_elems(), g12_elems())
def test_g12_satisfies_mv_equations(x, y, z):
    assert G12.contains(x)
    _equations(G12, x, y, z)


def test_derived_operations_agree_with_definitions():
    a = alg.FiniteChain(4)
    for x in a.elements():
        for y in a.elements():
            assert a.odot(x, y) == a.star(a.oplus(a.star(x), a.star(y)))
            assert a.ominus(x, y) == a.odot(x, a.star(y))
            assert a.dist(x, y) == a.oplus(a.ominus(x, y), a.ominus(y, x))
            assert a.join(x, y) == max(x, y)
            assert a.meet(x, y) == min(x, y)
            assert a.leq(x, y) == (x <= y)


def test_rank_one_tail_is_a_chain_rank_two_is_not():
    # Z lex Z is totally ordered even with infinitesimals present
    for x in K3_POOL:
        for y in K3_POOL:
            assert K3.leq(x, y) or K3.leq(y, x)
    a, b = (0, 1, 0), (0, 0, 1)
    assert not (G12.leq(a, b) or G12.leq(b, a))
    assert G12.join(a, b) == (0, 1, 1)
    assert G12.meet(a, b) == (0, 0, 0)


def test_infinitesimals():
    # convention: zero counts, so the radical is exactly the infinitesimals
    assert K3.is_infinitesimal((0, 3))
    assert K3.is_infinitesimal(K3.zero())
    assert not K3.is_infinitesimal((1, 0))
    assert alg.FiniteChain(3).is_infinitesimal(1) is False


def test_nat_scale_matches_repeated_oplus():
    x = (0, 2)
    acc = K3.zero()
    for k in range(5):
        assert K3.nat_scale(k, x) == acc
        acc = K3.oplus(acc, x)


def test_product_algebra_is_componentwise():
    p = alg.ProductAlgebra([alg.FiniteChain(2), alg.FiniteChain(3)])
    assert p.oplus((1, 2), (1, 2)) == (2, 3)
    assert p.star((0, 3)) == (2, 0)
    assert len(p.elements()) == 12
    assert p.one() == (2, 3)
    assert not p.contains((9, 0))
    # raw methods skip validation; the checked dispatch path raises
    with pytest.raises(ForeignElement):
        alg.apply(p, "oplus", [(1, 2), (9, 0)])


def test_gamma_lex_not_enumerable_but_sampleable():
    with pytest.raises(NotEnumerable):
        K3.elements()
    s = K3.sample(3)
    assert K3.zero() in s and K3.one() in s
    assert len(s) == len(set(s))
    assert all(K3.contains(x) for x in s)


def test_gamma_interval_bounds():
    # carrier is the lex interval [0, unit]: height strictly inside is free,
    # the extremes pin the tail at zero via the lattice-order constraint
    assert K3.contains((1, -100))
    assert not K3.contains((0, -1))
    assert not K3.contains((2, 1))
    assert not K3.contains((3, 0))


def test_quotient_by_congruence_of_ideal():
    from mvsheaf import spectra
    q, pi = spectra.quotient(CHANG, spectra.radical(CHANG))
    assert len(q.elements()) == 2
    assert pi((0, 5)) == pi(CHANG.zero())
    assert pi((1, -2)) == pi(CHANG.one())


def test_generate_subalgebra_closure():
    c6 = alg.FiniteChain(6)
    sub = alg.generate_subalgebra(c6, [2])
    assert sorted(sub.elements()) == [0, 2, 4, 6]
    assert sub.oplus(2, 2) == 4
    with pytest.raises(ClosureBudgetExceeded):
        alg.generate_subalgebra(CHANG, [(0, 1)], budget=50)


def test_subalgebra_rejects_non_members():
    c6 = alg.FiniteChain(6)
    sub = alg.generate_subalgebra(c6, [2])
    assert not sub.contains(1)
    with pytest.raises(ForeignElement):
        alg.apply(sub, "oplus", [1, 2])


def test_cofinite_membership_and_operations():
    cof = alg.CofiniteAlgebra(K3, "all")
    x = cof.make((1, 0), {})
    y = cof.make((0, 1), {"x1": (1, 2)})
    z = cof.oplus(x, y)
    assert cof.contains(z)
    assert cof.value_at(z, "x1") == K3.oplus((1, 0), (1, 2))
    assert cof.value_at(z, "x7") == K3.oplus((1, 0), (0, 1))
    assert cof.star(cof.star(z)) == z


def test_cofinite_komori_requires_height_one_germ_codomain():
    with pytest.raises(ValueError):
        alg.CofiniteAlgebra(alg.FiniteChain(2), "komori")
    with pytest.raises(ValueError):
        alg.CofiniteAlgebra(alg.GammaLex(1, (2,)), "komori")
    assert alg.CofiniteAlgebra(K3, "komori").predicate_tag == "komori"


def test_komori_default_parity():
    cof = alg.CofiniteAlgebra(K3, "komori")
    assert cof.admissible_default((0, 0))
    assert cof.admissible_default((2, 0))
    assert cof.admissible_default((1, 1))
    assert not cof.admissible_default((1, 0))


def test_describe_round_trips_the_shape():
    assert alg.FiniteChain(3).describe() == "chain(3)"
    assert K3.describe() == "gamma(unit=(2,0), ranks=[1])"
    p = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(2)])
    assert "product" in p.describe()


def test_homomorphism_checker():
    c2, c4 = alg.FiniteChain(2), alg.FiniteChain(4)
    double = alg.Hom(c2, c4, lambda x: 2 * x, "double")
    rep = alg.check_homomorphism(double)
    assert rep["passed"]
    skew = alg.Hom(c2, c4, lambda x: min(3 * x, 4), "skew")
    rep2 = alg.check_homomorphism(skew)
    assert not rep2["passed"] and rep2["violations"]
    assert rep2["pairs_checked"] == 9


def test_element_wrapper_validates_membership():
    x = alg.MvElement(K3, (1, 3))
    assert alg.apply(K3, "oplus", [x, alg.MvElement(K3, (1, 0))]) == (2, 0)
    with pytest.raises(ForeignElement):
        alg.MvElement(K3, (0, -1))
