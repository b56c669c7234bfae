"""Package results pinned against the independently derived constants in
frozen_oracle.py. Each test names the frozen keys it consumes; the derivation
lives in scripts/derive_oracles.py and never imports the package."""

from fractions import Fraction

import pytest

from frozen_oracle import FROZEN

from mvsheaf import algebra as alg
from mvsheaf import representation, spectra, topology, verify
from mvsheaf.errors import ClosureBudgetExceeded


def k3():
    return alg.GammaLex(2, (1,))


def test_chain_and_gamma_arithmetic():
    c3 = alg.FiniteChain(3)
    assert spectra.chain_value(c3, c3.oplus(1, 1)) == FROZEN["chain3_third_oplus_third"]
    a = k3()
    assert a.star((1, 3)) == FROZEN["k3_star_of_1_3"]
    assert a.odot((1, 3), (1, 0)) == FROZEN["k3_odot_1_3__1_0"]
    assert a.dist((1, 3), (1, 3)) == FROZEN["k3_d_1_3__1_3"]


def test_k3_equations_clean():
    suite = verify.mv_equations_suite(k3(), min_triples=400, seed=7)
    violations = sum(0 if eq["passed"] else 1 for eq in suite["equations"].values())
    assert violations == FROZEN["k3_grid_equation_violations"]


def test_subalgebra_closures():
    c4 = alg.FiniteChain(4)
    sub = alg.generate_subalgebra(c4, [2])
    values = sorted(spectra.chain_value(c4, x) for x in sub.elements())
    assert values == FROZEN["chain4_gen_half"]
    # the element (0,1) of the height-1 algebra climbs (0,n) forever; the
    # frozen 386 is where the derivation's own loop stopped past its budget
    chang = alg.GammaLex(1, (1,))
    assert FROZEN["chang_gen_0_1_grows_past"] > 200
    with pytest.raises(ClosureBudgetExceeded) as exc:
        alg.generate_subalgebra(chang, [(0, 1)], budget=200)
    assert len(exc.value.partial) > 200


def test_ideal_lattices():
    assert len(spectra.enumerate_ideals(alg.FiniteChain(3))) == FROZEN["chain3_ideal_count"]
    c1xc2 = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(2)])
    assert len(spectra.enumerate_ideals(c1xc2)) == FROZEN["c1xc2_ideal_count"]
    c1xc3 = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(3)])
    assert len(spectra.enumerate_ideals(c1xc3)) == FROZEN["c1xc3_ideal_count"]
    maxes = spectra.maximal_ideals(c1xc3)
    assert len(maxes) == FROZEN["c1xc3_max_count"]

    m_first = next(m for m in maxes if all(x[0] == 0 for x in m.data))
    om = spectra.o_p(m_first)  # raises internally if the two carriers disagree
    assert FROZEN["c1xc3_o_m_first_both_agree"] is True
    assert (om.data == m_first.data) == FROZEN["c1xc3_o_m_first_equals_m"]

    r = topology.zariski_support(c1xc3, (1, 0), maxes)
    assert (r == frozenset({m_first.label})) == FROZEN["c1xc3_R_of_1_0_is_first_coord_kernel"]

    q, _ = spectra.quotient(c1xc3, m_first)
    assert len(q.elements()) == FROZEN["c1xc3_quot_m_first_size"]


def test_boolean_square_kernels():
    sq = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(1)])
    ideals = spectra.enumerate_ideals(sq)
    primes = [i for i in ideals if i.is_proper and spectra.classify_prime_only(sq, i)]
    assert all(spectra.o_p(p).data == p.data for p in primes) == FROZEN["boolean_square_o_p_equals_p"]
    zero = spectra.zero_ideal(sq)
    zero_prime = spectra.classify_prime_only(sq, spectra.explicit_ideal(sq, frozenset({sq.zero()})))
    assert (not zero_prime) == FROZEN["boolean_square_zero_not_prime"]
    assert zero.is_zero


def test_lex_interval_values():
    a = k3()
    interval, f, report = spectra.lex_isomorphism(a, spectra.radical(a))
    # germs come back as rank-1 vectors; the oracle recorded bare scalars

    def pair(x):
        qp, vec = f(x)
        assert len(vec) == 1
        return interval.value_of(qp), vec[0]

    assert pair((1, 3)) == FROZEN["k3_f_rad_1_3"]
    assert pair((2, -4)) == FROZEN["k3_f_rad_2_m4"]
    assert pair((0, 0)) == FROZEN["k3_f_rad_zero"]
    assert pair((2, 0)) == FROZEN["k3_f_rad_one"]
    assert report["injective_on_sample"] == FROZEN["k3_f_rad_injective_on_grid"]


def test_excess_defect_witnesses():
    a = k3()
    (pl,) = representation.local_pipelines(a)

    def eps_tau(x):
        p = pl.to_local(x)
        s = pl.section(pl.to_residue(p))
        return (pl.local.odot(p, pl.local.star(s)),
                pl.local.odot(s, pl.local.star(p)))

    assert eps_tau((1, 3)) == FROZEN["k3_eps_tau_1_3"]
    # the oracle recorded (eps, tau) with tau the surplus of the section side
    eps, tau = eps_tau((2, -4))
    assert (eps, tau) == FROZEN["k3_eps_tau_2_m4"]


def test_sample_germs_and_grid_sizes():
    a = k3()
    m = spectra.maximal_ideals(a)[0]
    sample = [(0, 0), (0, 1), (1, 0), (1, 3), (2, 0)]
    germs = [representation.germ_at(a, x, m)[0] for x in sample]
    assert germs == FROZEN["k3_sample_germs"]
    assert len(set(germs)) == FROZEN["k3_sample_distinct_germ_points"]
    assert len(a.sample(8)) == FROZEN["k3_grid_8_size"]
    assert len(a.sample(50)) == FROZEN["k3_grid_50_size"]
    # bound 6 splits into per-factor windows of 3; the oracle named the window
    kk = alg.ProductAlgebra([k3(), k3()])
    assert len(kk.sample(6)) == FROZEN["k3xk3_grid_3_size"]


def test_representation_homomorphism_flags():
    rp, _ = representation.represent(k3(), 8)
    assert rp.report["injective"] == FROZEN["k3_f_rad_injective_on_grid"]
    assert rp.report["pair_homomorphism"] == FROZEN["k3_f_rad_oplus_hom_on_grid"]


def test_halving_case_split():
    sols = spectra._halving_elements(k3())
    assert sols == FROZEN["k3_halving_solutions"]
    assert (len(sols) == 1) == FROZEN["k3_halving_unique"]
    cof = alg.CofiniteAlgebra(k3(), "komori")
    assert cof.admissible_default(sols[0]) == FROZEN["k3_halving_default_admissible"]


def test_radical_completion_shapes():
    group, _, _ = spectra.ideal_completion(spectra.radical(k3()))
    assert group.dim == FROZEN["rad_k3_completion_rank"]
    g12 = alg.GammaLex(1, (2,))
    group12, _, _ = spectra.ideal_completion(spectra.radical(g12))
    assert group12.ranks == FROZEN["rad_gamma_1_2_completion_ranks"]


def test_face_strictness_counterexample():
    g12 = alg.GammaLex(1, (2,))
    face = spectra._gamma_face(g12, frozenset({1}))
    q, pi = spectra.quotient(g12, face)
    a, b = (0, 0, 5), (0, 3, 0)
    strictly_below_in_quotient = q.leq(pi(a), pi(b)) and pi(a) != pi(b)
    comparable = g12.leq(a, b) or g12.leq(b, a)
    assert (strictly_below_in_quotient, comparable) == FROZEN["gamma_1_2_face_strictness_counterexample"]


def test_topology_counterexample_and_coverings():
    # membership values are stored as integers scaled by the denominator,
    # so alpha = (1, 0) over d = 2 is the map p -> 1/2, q -> 0
    pts = ("p", "q")
    alpha = topology.FuzzySet(pts, 2, (1, 0))
    doubled = alpha.oplus(alpha)
    assert tuple(doubled.value(p) for p in pts) == FROZEN["two_point_half_alpha_oplus"]
    t = topology.MvTopology(pts, 2, frozenset(
        {topology.bottom(pts, 2), topology.top(pts, 2), alpha}))
    report = topology.verify_topology(t)
    assert report["passed"] == FROZEN["two_point_half_closed"]

    collapse = topology.MvSpaceMap(
        topology.MvTopology(pts, 2, frozenset({topology.bottom(pts, 2), topology.top(pts, 2)})),
        topology.MvTopology(("c",), 2, frozenset({topology.bottom(("c",), 2), topology.top(("c",), 2)})),
        (("p", "c"), ("q", "c")),
    )
    image = topology.image(collapse, topology.FuzzySet(pts, 2, (1, 2)))
    assert image.value("c") == FROZEN["image_collapse_value"]

    al = topology.FuzzySet(pts, 2, (2, 1))
    be = topology.FuzzySet(pts, 2, (1, 2))
    t2 = topology.generate_topology(pts, 2, [al, be])
    assert topology.is_covering(t2, [al, be]) == FROZEN["covering_join_is_one"]
    assert topology.is_additive_covering(t2, [al, be]) == FROZEN["covering_oplus_is_one"]


def test_spectral_topology_sizes():
    spec = topology.mv_spectrum(alg.FiniteChain(2))
    assert (spec["open_count"] == spec["base_size"]) == FROZEN["chain2_tau_base_closed"]
    assert spec["open_count"] == FROZEN["chain2_tau_open_count"]

    sq = alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(1)])
    spec2 = topology.mv_spectrum(sq)
    hats = {spec2["hat"](x).values for x in sq.elements()}
    assert len(hats) == FROZEN["boolean_square_hat_count"]


def test_psi_pinned_sections():
    rp, psi = representation.represent(k3(), 8)

    def flat(x):
        return [(v, g[0]) for v, g in psi(x)]

    assert flat((1, 3)) == FROZEN["psi_k3_1_3"]
    assert flat((2, -4)) == FROZEN["psi_k3_2_m4"]
    assert flat((2, 0)) == FROZEN["psi_k3_one"]


def test_k3xk3_stalk_ranks():
    sh = representation.build_sheaf(alg.ProductAlgebra([k3(), k3()]))
    ranks = tuple(rec["rank"] for _, rec in sorted(sh.stalks.items()))
    assert ranks == FROZEN["k3xk3_join_stalk_ranks"]
    assert sh.presheaf.rank(sh.presheaf.topology.one) == sum(ranks)


def test_alpha_overshoot_witness():
    a = k3()
    m = spectra.maximal_ideals(a)[0]
    ga = representation.germ_at(a, (0, 1), m)
    gb = representation.germ_at(a, (0, 2), m)
    assert (ga[0], gb[0]) == FROZEN["alpha_overshoot_pair_germs"]
    assert (a.oplus((0, 1), (0, 1)) == (0, 2)) == FROZEN["alpha_overshoot_union_hits"]
