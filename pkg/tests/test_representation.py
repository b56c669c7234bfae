"""Local quotient pipelines, the section-pair encoding psi, and the derived
sheaf of integer-vector germs."""

from fractions import Fraction

import pytest

from mvsheaf import algebra as alg
from mvsheaf import representation as rep
from mvsheaf import spectra


K3 = alg.GammaLex(2, (1,))
CHANG = alg.GammaLex(1, (1,))


def test_local_pipelines_one_per_maximal():
    p = alg.ProductAlgebra([alg.FiniteChain(2), alg.FiniteChain(3)])
    pipes = rep.local_pipelines(p)
    assert len(pipes) == len(spectra.maximal_ideals(p))
    for pl in pipes:
        # residue of a local quotient of a finite chain product is a chain
        assert pl.residue.is_finite
        assert pl.denominator >= 1


def test_pipeline_section_splits_residue():
    (pl,) = rep.local_pipelines(K3)
    for r in pl.residue.elements():
        assert pl.to_residue(pl.section(r)) == r


def test_germ_separates_residue_classmates():
    # the germ alone is blind to the residue value; it refines it
    m = spectra.maximal_ideals(K3)[0]
    assert rep.germ_at(K3, (1, 0), m) != rep.germ_at(K3, (1, 3), m)
    assert rep.germ_at(K3, (1, 0), m) == rep.germ_at(K3, (2, 0), m) == (0,)
    om = spectra.o_p(m)
    for x in K3.sample(5):
        if om.contains(x):
            assert rep.germ_at(K3, x, m) == (0,)


def test_represent_k3_is_bijective_on_sample():
    rpd, psi = rep.represent(K3, 8)
    r = rpd.report
    assert r["passed"]
    assert r["injective"] and r["pair_homomorphism"]
    seen = set()
    for x in K3.sample(8):
        s = psi(x)
        assert s not in seen
        seen.add(s)
        assert rpd.pull(s) == x


def test_psi_respects_oplus_and_star():
    rpd, psi = rep.represent(K3, 6)
    pool = K3.sample(6)
    for x in pool[::7]:
        for y in pool[::7]:
            assert psi(K3.oplus(x, y)) == rpd.pair_oplus(psi(x), psi(y))
        assert psi(K3.star(x)) == rpd.pair_star(psi(x))


def test_represent_finite_product_exhaustive():
    p = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(3)])
    rpd, psi = rep.represent(p)
    assert rpd.report["passed"]
    assert rpd.report["universe_size"] == 8
    imgs = {psi(x) for x in p.elements()}
    assert len(imgs) == 8


def test_representation_dump_shape():
    rpd, _ = rep.represent(alg.FiniteChain(2))
    dump = rep.representation_dump(rpd)
    assert len(dump) == 3
    for record in dump:
        assert set(record) == {"element", "sections"}
        for sec in record["sections"]:
            assert set(sec) == {"max", "value", "germ"}
            num, den = sec["value"].split("/") if "/" in sec["value"] else (sec["value"], "1")
            assert 0 <= Fraction(int(num), int(den)) <= 1


def test_build_sheaf_k3():
    sh = rep.build_sheaf(K3)
    assert sh.report["passed"], sh.report
    assert sh.report["stalks_match"]
    assert sh.report["radical_germ_coherence"]
    assert sh.report["bottom_rank"] == 0
    (label, rec), = sh.stalks.items()
    assert rec["rank"] == 1


def test_build_sheaf_two_maximals_splits_blocks():
    p = alg.ProductAlgebra([K3, K3])
    sh = rep.build_sheaf(p)
    assert sh.report["passed"]
    assert sh.report["block_split"]
    top_rank = sh.presheaf.rank(sh.presheaf.topology.one)
    assert top_rank == sum(rec["rank"] for rec in sh.stalks.values())


def test_build_sheaf_finite_algebras_have_trivial_stalks():
    sh = rep.build_sheaf(alg.ProductAlgebra([alg.FiniteChain(2), alg.FiniteChain(2)]))
    assert sh.report["passed"]
    assert all(rec["rank"] == 0 for rec in sh.stalks.values())


def test_build_sheaf_space_k3():
    elems = [(0, 0), (0, 1), (1, 0), (1, 3), (2, 0)]
    ss, report = rep.build_sheaf_space(K3, elems)
    assert report["passed"], report
    assert report["alpha_all_exhibited"]
    assert report["distinct_germs"]["radical"] == 3
    assert report["points"] == 3
    assert report["sample_size"] == len(elems)
    assert report["alpha_pairs_checked"] == len(elems) ** 2


def test_embed_into_retractive_identity_like_when_already_retractive():
    rpd, hom, report = rep.embed_into_retractive(K3)
    assert report["passed"]
    assert report["injective"] and report["homomorphism"]
    assert report["surjective_on_universe"]
    assert report["locally_retractive"]


def test_embed_into_retractive_cofinite_is_proper():
    cof = alg.CofiniteAlgebra(K3, "komori")
    rpd, hom, report = rep.embed_into_retractive(cof)
    assert report["passed"]
    assert report["injective"] and report["homomorphism"]
    assert report["surjective_on_universe"] is False
    assert report["witness_section"] is not None


def test_radical_completion_ranks():
    group, _, _ = rep.radical_completion(CHANG)
    assert group.dim == 1
    group2, _, _ = rep.radical_completion(alg.FiniteChain(4))
    assert group2.is_trivial
