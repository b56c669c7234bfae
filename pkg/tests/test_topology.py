"""Finite spaces with many-valued open sets: closure checks, maps,
coverings, compactness and the two spectral topologies."""

from fractions import Fraction

import pytest

from mvsheaf import algebra as alg
from mvsheaf import topology as top


PTS = ("a", "b", "c")


def fs(*vals, d=2):
    return top.FuzzySet(PTS[: len(vals)], d, tuple(vals))


def test_fuzzy_set_lattice_ops():
    x = fs(2, 1, 0)
    y = fs(0, 1, 2)
    assert x.join(y).values == (2, 1, 2)
    assert x.meet(y).values == (0, 1, 0)
    assert x.oplus(y).values == (2, 2, 2)
    assert x.odot(y).values == (0, 0, 0)
    assert x.star().values == (0, 1, 2)
    assert x.supp == frozenset({"a", "b"})
    assert not x.is_crisp and fs(2, 0, 2).is_crisp


def test_crisp_and_constants():
    c = top.crisp(PTS, 2, {"a", "c"})
    assert c.values == (2, 0, 2)
    assert top.bottom(PTS, 2).values == (0, 0, 0)
    assert top.top(PTS, 2).values == (2, 2, 2)


def test_verify_topology_accepts_closed_families():
    t = top.generate_topology(PTS, 2, [fs(2, 1, 0), fs(0, 1, 2)])
    rep = top.verify_topology(t)
    assert rep["passed"], rep


def test_verify_topology_flags_missing_join():
    x, y = fs(2, 0, 0), fs(0, 0, 2)
    t = top.MvTopology(PTS, 2, frozenset(
        {top.bottom(PTS, 2), top.top(PTS, 2), x, y}))
    rep = top.verify_topology(t)
    assert not rep["passed"]
    assert rep["violations"]


def test_generate_topology_closes_under_ops():
    t = top.generate_topology(PTS, 2, [fs(1, 0, 0)])
    opens = t.opens
    for a in opens:
        for b in opens:
            assert a.join(b) in opens
            assert a.meet(b) in opens
            assert a.oplus(b) in opens


def test_preimage_and_continuity():
    src = top.generate_topology(("x", "y"), 2, [top.FuzzySet(("x", "y"), 2, (2, 0))])
    tgt = top.generate_topology(("p",), 2, [])
    f = top.MvSpaceMap(src, tgt, (("x", "p"), ("y", "p")))
    rep = top.check_map(f)
    assert rep["continuous"]
    pre = top.preimage(f, top.top(("p",), 2))
    assert pre.values == (2, 2)


def test_discontinuous_map_detected():
    # the target open (2, 0) pulls back to a set missing from the source
    src = top.MvTopology(("x", "y"), 2, frozenset(
        {top.bottom(("x", "y"), 2), top.top(("x", "y"), 2)}))
    tgt = top.generate_topology(("p", "q"), 2, [top.FuzzySet(("p", "q"), 2, (2, 0))])
    f = top.MvSpaceMap(src, tgt, (("x", "p"), ("y", "q")))
    rep = top.check_map(f)
    assert not rep["continuous"]


def test_image_is_sup_over_fibers():
    src = top.MvTopology(PTS, 2, frozenset({top.bottom(PTS, 2), top.top(PTS, 2)}))
    tgt = top.MvTopology(("p", "q"), 2, frozenset(
        {top.bottom(("p", "q"), 2), top.top(("p", "q"), 2)}))
    f = top.MvSpaceMap(src, tgt, (("a", "p"), ("b", "p"), ("c", "q")))
    img = top.image(f, fs(1, 2, 1))
    assert img.value("p") == Fraction(1)
    assert img.value("q") == Fraction(1, 2)


def test_restrict_keeps_traces():
    t = top.generate_topology(PTS, 2, [fs(2, 1, 0)])
    r = top.restrict(t, ("a", "b"))
    assert r.points == ("a", "b")
    assert top.FuzzySet(("a", "b"), 2, (2, 1)) in r.opens
    assert top.verify_topology(r)["passed"]


def test_covering_flavors():
    al = fs(2, 2, 1)
    be = fs(1, 1, 2)
    t = top.generate_topology(PTS, 2, [al, be])
    assert top.is_covering(t, [al, be])
    assert top.is_additive_covering(t, [al, be])
    # join reaches the top but no finite oplus sum of this single set does
    ga = fs(1, 1, 1)
    t2 = top.generate_topology(PTS, 2, [ga])
    assert not top.is_covering(t2, [ga])
    assert top.is_additive_covering(t2, [ga], multiplicity=2)


def test_minimal_subcover_size():
    al, be = fs(2, 2, 0), fs(0, 2, 2)
    t = top.generate_topology(PTS, 2, [al, be])
    assert top.minimal_subcover_size(t, [al, be, t.one]) == 1
    assert top.minimal_subcover_size(t, [al, be]) == 2
    assert top.minimal_subcover_size(t, [al]) is None


def test_finite_spaces_are_compact():
    t = top.generate_topology(PTS, 2, [fs(2, 1, 0), fs(0, 1, 2)])
    rep = top.is_compact(t)
    assert rep["compact"]
    rep2 = top.is_strongly_compact(t)
    assert rep2["strongly_compact"]
    assert rep2["mode"] == "exhaustive"


def test_hausdorff_detection():
    # crisp discrete topology separates points
    sets = [top.crisp(PTS, 2, {p}) for p in PTS]
    t = top.generate_topology(PTS, 2, sets)
    rep = top.is_hausdorff(t)
    assert rep["hausdorff"] and not rep["failing_pairs"]
    # indiscrete space cannot separate anything
    t2 = top.MvTopology(PTS, 2, frozenset({top.bottom(PTS, 2), top.top(PTS, 2)}))
    rep2 = top.is_hausdorff(t2)
    assert not rep2["hausdorff"] and rep2["failing_pairs"]


def test_coverings_bundle_dispatches():
    t = top.generate_topology(PTS, 2, [fs(2, 1, 0), fs(0, 1, 2)])
    bundle = top.coverings(t)
    assert bundle["is_covering"]([t.one])
    assert bundle["is_compact"]()["compact"]
    assert bundle["is_hausdorff"]()["hausdorff"] in (True, False)


def test_zariski_support_membership():
    p = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(2)])
    maxes = __import__("mvsheaf.spectra", fromlist=["maximal_ideals"]).maximal_ideals(p)
    supp = top.zariski_support(p, p.one(), maxes)
    assert supp == frozenset(m.label for m in maxes)
    assert top.zariski_support(p, p.zero(), maxes) == frozenset()


def test_zariski_max_on_boolean_square_is_discrete():
    sq = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(1)])
    rep = top.zariski_max(sq)
    assert rep["identities_pass"]
    assert rep["compact"]
    assert rep["hausdorff"]
    assert rep["discrete"]
    assert len(rep["points"]) == 2


def test_mv_spectrum_coherence_chain():
    rep = top.mv_spectrum(alg.FiniteChain(3))
    assert rep["supp_matches_zariski"]
    assert rep["zariski_coarser"]
    assert rep["locally_zero_open"]
    assert rep["kernel_is_radical"]
    assert rep["zariski"]["identities_pass"]


def test_mv_spectrum_hat_is_homomorphism_like():
    c2 = alg.FiniteChain(2)
    rep = top.mv_spectrum(c2)
    hat = rep["hat"]
    for x in c2.elements():
        for y in c2.elements():
            assert hat(c2.oplus(x, y)).values == hat(x).oplus(hat(y)).values
