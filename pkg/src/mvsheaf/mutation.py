"""Built-in mutation checks: corrupt one operation table entry, one restriction
arrow, or one germ value, and confirm the corresponding suite fails with a
concrete witness. These exist to prove the suites have teeth."""

from __future__ import annotations

import dataclasses

from . import algebra as alg
from . import corpus
from . import representation
from . import verify


class CorruptedOplus(alg.MvAlgebra):
    """Delegating wrapper with exactly one directed ⊕ entry overridden."""

    def __init__(self, base: alg.MvAlgebra, pair, value):
        self.base = base
        self.pair = pair
        self.value = value
        self.is_finite = base.is_finite

    def zero(self):
        return self.base.zero()

    def one(self):
        return self.base.one()

    def oplus(self, x, y):
        if (x, y) == self.pair:
            return self.value
        return self.base.oplus(x, y)

    def star(self, x):
        return self.base.star(x)

    def contains(self, x):
        return self.base.contains(x)

    def elements(self):
        return self.base.elements()

    def sample(self, bound: int = 8):
        return self.base.sample(bound)

    def describe(self):
        return f"corrupted({self.base.describe()}, {self.pair}->{self.value})"


def corrupted_operation_report() -> dict:
    """One ⊕ entry of the rank-3 chain rerouted; the equation suite must fail."""
    base = alg.FiniteChain(3)
    mutant = CorruptedOplus(base, (1, 2), 0)
    suite = verify.mv_equations_suite(mutant)
    witnesses = {name: eq["witness"] for name, eq in suite["equations"].items()
                 if eq["witness"] is not None}
    return {
        "mutation": "oplus(1,2) -> 0 in chain(3)",
        "suite": suite,
        "detected": not suite["passed"] and bool(witnesses),
        "witnesses": witnesses,
    }


def corrupted_restriction_report() -> dict:
    """One restriction matrix entry doubled in the two-maximal sheaf; the
    composition law must produce a violating triangle."""
    sh = representation.build_sheaf(corpus.by_name("k3xk3"))
    p = sh.presheaf
    key = None
    for (upper, lower), rho in p.restrictions.items():
        if upper == p.topology.one and p.rank(lower) == 1 and rho:
            key = (upper, lower)
            break
    assert key is not None
    rho = p.restrictions[key]
    corrupted = tuple(tuple(2 * v for v in row) for row in rho)
    news = dict(p.restrictions)
    news[key] = corrupted
    mutant = dataclasses.replace(p, restrictions=news)
    suite = verify.sheaf_condition_report(mutant)
    return {
        "mutation": f"restriction {rho} -> {corrupted} on an arrow out of the top open",
        "suite": suite,
        "detected": not suite["passed"],
        "witnesses": {
            "presheaf": suite["presheaf"]["violations"][:2],
            "separation": suite["sheaf"]["separation_violations"][:2],
            "gluing": suite["sheaf"]["gluing_violations"][:2],
        },
    }


def corrupted_germ_report() -> dict:
    """One stored germ bumped in a section table; the recomputation and the
    pair-additivity checks must both expose it."""
    a = corpus.k3()
    rp, psi = representation.represent(a, 8)
    table = {x: psi(x) for x in a.sample(8)}
    target = (1, 3)
    assert target in table
    value, germ = table[target][0]
    table[target] = ((value, (germ[0] + 1,)),)
    suite = verify.section_map_agreement(a, table, rp.pipelines)
    return {
        "mutation": f"germ of {target} bumped from {germ} in the section table",
        "suite": suite,
        "detected": not suite["passed"],
        "witnesses": {
            "stalk": suite["stalk_failures"][:2],
            "pairs": suite["pair_failures"][:2],
        },
    }


def all_mutations() -> dict:
    reports = {
        "operation": corrupted_operation_report(),
        "restriction": corrupted_restriction_report(),
        "germ": corrupted_germ_report(),
    }
    return {"reports": reports,
            "passed": all(r["detected"] for r in reports.values())}
