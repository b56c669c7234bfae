"""Frozen expected values, derived by scripts/derive_oracles.py before the
package was implemented. Do not edit by hand: rerun the script and diff."""

from fractions import Fraction

FROZEN = {
    "chain3_third_oplus_third": Fraction(2, 3),
    "k3_star_of_1_3": (1, -3),
    "k3_odot_1_3__1_0": (0, 3),
    "k3_d_1_3__1_3": (0, 0),
    "k3_grid_equation_violations": 0,
    "chain4_gen_half": [Fraction(0, 1), Fraction(1, 2), Fraction(1, 1)],
    "chang_gen_0_1_grows_past": 386,
    "chain3_ideal_count": 2,
    "c1xc2_ideal_count": 4,
    "c1xc3_ideal_count": 4,
    "c1xc3_max_count": 2,
    "c1xc3_o_m_first_both_agree": True,
    "c1xc3_o_m_first_equals_m": True,
    "c1xc3_R_of_1_0_is_first_coord_kernel": True,
    "c1xc3_quot_m_first_size": 2,
    "boolean_square_o_p_equals_p": True,
    "boolean_square_zero_not_prime": True,
    "k3_f_rad_1_3": (Fraction(1, 2), 3),
    "k3_eps_tau_1_3": ((0, 3), (0, 0)),
    "k3_f_rad_2_m4": (Fraction(1, 1), -4),
    "k3_eps_tau_2_m4": ((0, 0), (0, 4)),
    "k3_f_rad_zero": (Fraction(0, 1), 0),
    "k3_f_rad_one": (Fraction(1, 1), 0),
    "k3_sample_germs": [0, 1, 0, 3, 0],
    "k3_sample_distinct_germ_points": 3,
    "k3_f_rad_injective_on_grid": True,
    "k3_f_rad_oplus_hom_on_grid": True,
    "k3_grid_8_size": 35,
    "k3_grid_50_size": 203,
    "k3xk3_grid_3_size": 225,
    "k3_halving_solutions": [(1, 0)],
    "k3_halving_unique": True,
    "k3_halving_default_admissible": False,
    "rad_k3_completion_rank": 1,
    "rad_gamma_1_2_completion_ranks": (2,),
    "gamma_1_2_face_strictness_counterexample": (True, False),
    "two_point_half_alpha_oplus": (Fraction(1, 1), Fraction(0, 1)),
    "two_point_half_closed": False,
    "image_collapse_value": Fraction(1, 1),
    "covering_join_is_one": True,
    "covering_oplus_is_one": True,
    "chain2_tau_base_closed": True,
    "chain2_tau_open_count": 3,
    "boolean_square_hat_count": 4,
    "psi_k3_1_3": [(Fraction(1, 2), 3)],
    "psi_k3_2_m4": [(Fraction(1, 1), -4)],
    "psi_k3_one": [(Fraction(1, 1), 0)],
    "k3xk3_join_stalk_ranks": (1, 1),
    "alpha_overshoot_pair_germs": (1, 2),
    "alpha_overshoot_union_hits": True,
}
