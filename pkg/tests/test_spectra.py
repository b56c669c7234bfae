"""Ideal lattice, local structure and retraction machinery."""

import pytest

from mvsheaf import algebra as alg
from mvsheaf import spectra
from mvsheaf.errors import TrivialQuotient


K3 = alg.GammaLex(2, (1,))
CHANG = alg.GammaLex(1, (1,))


def test_ideal_closure_properties():
    c4 = alg.FiniteChain(4)
    for i in spectra.enumerate_ideals(c4):
        carrier = i.data
        assert c4.zero() in carrier
        for x in carrier:
            for y in carrier:
                assert c4.oplus(x, y) in carrier
            for y in c4.elements():
                if c4.leq(y, x):
                    assert y in carrier


def test_chain_ideals_are_trivial_only():
    # a finite chain is simple: no proper ideal beyond {0}
    ideals = spectra.enumerate_ideals(alg.FiniteChain(5))
    proper = [i for i in ideals if i.is_proper]
    assert len(proper) == 1 and proper[0].is_zero


def test_product_ideals_factor():
    p = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(2)])
    ideals = spectra.enumerate_ideals(p)
    assert len(ideals) == 4
    maxes = spectra.maximal_ideals(p)
    assert len(maxes) == 2
    assert spectra.minimal_primes(p) == spectra.maximal_ideals(p) or \
        {m.data for m in spectra.minimal_primes(p)} == {m.data for m in maxes}


def test_radical_is_infinitesimal_kernel():
    rad = spectra.radical(K3)
    assert rad.contains((0, 7))
    assert not rad.contains((1, 0))
    for x in K3.sample(4):
        assert rad.contains(x) == K3.is_infinitesimal(x)


def test_radical_of_chain_is_zero():
    rad = spectra.radical(alg.FiniteChain(4))
    assert rad.is_zero


def test_annihilator():
    p = alg.ProductAlgebra([alg.FiniteChain(2), alg.FiniteChain(2)])
    ann = spectra.annihilator(p, (2, 0))
    assert (0, 2) in ann
    assert (1, 0) not in ann


def test_o_p_on_simple_chain_is_zero():
    c3 = alg.FiniteChain(3)
    m = spectra.maximal_ideals(c3)[0]
    assert spectra.o_p(m).is_zero


def test_quotient_of_k3_by_radical_is_3_chain():
    q, pi = spectra.quotient(K3, spectra.radical(K3))
    assert len(q.elements()) == 3
    assert pi((0, 5)) == pi(K3.zero())
    assert pi((1, -3)) == pi((1, 9))
    assert pi(K3.one()) != pi((1, 0))
    # pi is a homomorphism
    for x in K3.sample(3):
        for y in K3.sample(3):
            assert pi(K3.oplus(x, y)) == q.oplus(pi(x), pi(y))


def test_quotient_by_full_ideal_rejected():
    with pytest.raises(TrivialQuotient):
        spectra.quotient(K3, spectra.full_ideal(K3))


def test_retraction_search_finds_chain_section():
    q, pi = spectra.quotient(CHANG, spectra.radical(CHANG))
    sec, route = spectra.retraction_search(CHANG, spectra.radical(CHANG))
    assert sec is not None
    # section followed by projection is the identity on the quotient
    for c in q.elements():
        assert pi(sec(c)) == c
    # and the section is a homomorphism into the original algebra
    for c in q.elements():
        for d in q.elements():
            assert sec(q.oplus(c, d)) == CHANG.oplus(sec(c), sec(d))


def test_is_local_and_is_perfect():
    assert spectra.is_local(K3)
    assert not spectra.is_perfect(K3)
    assert spectra.is_local(CHANG)
    assert spectra.is_perfect(CHANG)
    p = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(2)])
    assert not spectra.is_local(p)
    assert spectra.is_local(alg.FiniteChain(6))


def test_classify_flags_on_boolean_square():
    sq = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(1)])
    for i in spectra.enumerate_ideals(sq):
        flags = spectra.classify(i)
        if i.is_proper and not i.is_zero:
            assert flags["maximal"] == flags["prime"]
        if flags["maximal"]:
            assert flags["prime"] and flags["primary"]


def test_primes_of_chain_products_are_maximal():
    p = alg.ProductAlgebra([alg.FiniteChain(2), alg.FiniteChain(3)])
    for i in spectra.enumerate_ideals(p):
        if not i.is_proper:
            continue
        if spectra.classify_prime_only(p, i):
            assert any(i.data == m.data for m in spectra.maximal_ideals(p))


def test_lex_isomorphism_structure():
    interval, f, report = spectra.lex_isomorphism(K3, spectra.radical(K3))
    assert report["injective_on_sample"]
    assert all(report["axioms"].values())
    assert interval.denominator == 2
    qp, vec = f((1, -7))
    assert interval.value_of(qp) == spectra.chain_value(interval.quotient, qp)
    assert vec == (-7,)


def test_lex_isomorphism_group_is_radical_completion():
    interval, _, report = spectra.lex_isomorphism(K3, spectra.radical(K3), sample_bound=6)
    assert report["group"] == (1,)
    assert interval.group.dim == 1


def test_is_locally_retractive_shapes():
    out = spectra.is_locally_retractive(K3)
    assert out["verdict"] is True
    assert len(out["per_maximal"]) == 1
    rec = next(iter(out["per_maximal"].values()))
    assert rec["retraction"] is not None


def test_locally_retractive_all_finite_products():
    for a in (alg.FiniteChain(3),
              alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(3)])):
        out = spectra.is_locally_retractive(a)
        assert out["verdict"] is True


def test_radical_retraction_criterion_positive():
    out = spectra.radical_retraction_criterion(CHANG)
    assert out["criterion_holds"] and out["radical_retractive"] and out["agreement"]


def test_radical_retraction_criterion_negative():
    cof = alg.CofiniteAlgebra(K3, "komori")
    out = spectra.radical_retraction_criterion(cof)
    assert not out["radical_retractive"]
    assert out["agreement"]
    cert = out["retraction_certificate"]
    assert cert["forced_default_admissible"] is False
    assert cert["halving_solutions"] == [cert["forced_default"]]


def test_subdirect_embedding_injective():
    p = alg.ProductAlgebra([alg.FiniteChain(2), alg.FiniteChain(4)])
    hom, target, report = spectra.subdirect_embedding(p)
    assert report["injective_on_universe"] and report["kernel_trivial"]
    assert report["maximal_count"] == 2
    seen = {}
    for x in p.elements():
        img = hom(x)
        assert img not in seen
        seen[img] = x
        assert target.contains(img)


def test_spectrum_report_keys():
    rep = spectra.spectrum_report(alg.FiniteChain(2))
    assert len(rep["max_labels"]) == 1
    assert rep["radical_is_max_intersection"] is True
    assert rep["spec_complete"] is True
    # symbolic algebras report labels instead of carriers
    rep2 = spectra.spectrum_report(K3)
    assert rep2["max_labels"] == ["radical"]
    assert rep2["local_kernels"]["radical"]["o_p"] == "zero"


def test_ideal_monoid_and_completion():
    rad = spectra.radical(K3)
    monoid = spectra.ideal_monoid(rad)
    group, embed, section = spectra.ideal_completion(rad)
    assert group.dim == 1
    x = (0, 3)
    assert section(embed(x)) == x
