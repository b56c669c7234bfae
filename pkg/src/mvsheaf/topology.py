"""Finite MV-topological spaces: fuzzy sets over a fixed rational value chain,
topology axioms, continuity, coverings/compactness, the classical Zariski
topology on the maximal spectrum, and the fuzzy spectral topology."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import algebra as alg
from . import spectra as sp
from .errors import ClosureBudgetExceeded


@dataclass(frozen=True)
class FuzzySet:
    """Membership function X -> {0, 1/d, ..., 1}, values stored as integers
    scaled by the denominator."""

    points: tuple
    denominator: int
    values: tuple

    def __post_init__(self):
        assert len(self.points) == len(self.values)
        assert all(0 <= v <= self.denominator for v in self.values)

    def value(self, x) -> Fraction:
        return Fraction(self.values[self.points.index(x)], self.denominator)

    @property
    def supp(self) -> frozenset:
        return frozenset(p for p, v in zip(self.points, self.values) if v > 0)

    @property
    def is_crisp(self) -> bool:
        return all(v in (0, self.denominator) for v in self.values)

    def _zip(self, other):
        assert self.points == other.points and self.denominator == other.denominator
        return zip(self.values, other.values)

    def join(self, other):
        return FuzzySet(self.points, self.denominator,
                        tuple(max(v, w) for v, w in self._zip(other)))

    def meet(self, other):
        return FuzzySet(self.points, self.denominator,
                        tuple(min(v, w) for v, w in self._zip(other)))

    def oplus(self, other):
        d = self.denominator
        return FuzzySet(self.points, d,
                        tuple(min(v + w, d) for v, w in self._zip(other)))

    def odot(self, other):
        return FuzzySet(self.points, self.denominator,
                        tuple(max(v + w - self.denominator, 0) for v, w in self._zip(other)))

    def star(self):
        return FuzzySet(self.points, self.denominator,
                        tuple(self.denominator - v for v in self.values))

    def leq(self, other) -> bool:
        return all(v <= w for v, w in self._zip(other))

    def as_fractions(self):
        return tuple(Fraction(v, self.denominator) for v in self.values)


def bottom(points, d) -> FuzzySet:
    return FuzzySet(tuple(points), d, (0,) * len(points))


def top(points, d) -> FuzzySet:
    return FuzzySet(tuple(points), d, (d,) * len(points))


def crisp(points, d, subset) -> FuzzySet:
    return FuzzySet(tuple(points), d, tuple(d if p in subset else 0 for p in points))


@dataclass(frozen=True)
class MvTopology:
    points: tuple
    denominator: int
    opens: frozenset

    @property
    def zero(self):
        return bottom(self.points, self.denominator)

    @property
    def one(self):
        return top(self.points, self.denominator)

    def sorted_opens(self):
        return sorted(self.opens, key=lambda o: o.values)


def verify_topology(t: MvTopology, subset_join_cap: int = 12) -> dict:
    """Items (i)-(v): constants, joins, oplus, odot, meet. Pairwise closure
    implies closure under every finite join; the full subset sweep runs too
    when the open count permits."""
    violations = []
    opens = t.sorted_opens()
    if t.zero not in t.opens:
        violations.append(("constant", "bottom missing"))
    if t.one not in t.opens:
        violations.append(("constant", "top missing"))
    for a in opens:
        for b in opens:
            for name, res in (("join", a.join(b)), ("oplus", a.oplus(b)),
                              ("odot", a.odot(b)), ("meet", a.meet(b))):
                if res not in t.opens:
                    violations.append((name, a.values, b.values))
    mode = "pairwise"
    if len(opens) <= subset_join_cap:
        mode = "exhaustive-subsets"
        n = len(opens)
        for mask in range(1, 1 << n):
            acc = t.zero
            for i in range(n):
                if mask >> i & 1:
                    acc = acc.join(opens[i])
            if acc not in t.opens:
                violations.append(("subset-join", mask))
    closed_family = {o.star() for o in t.opens}
    dual_ok = (t.zero in closed_family and t.one in closed_family)
    return {
        "passed": not violations,
        "violations": violations[:8],
        "join_mode": mode,
        "closed_family_has_constants": dual_ok,
        "open_count": len(opens),
    }


def generate_topology(points, d, base, open_cap: int = 256) -> MvTopology:
    """Least MV-topology containing the base: fixpoint closure under the four
    binary operations, seeded with the constants."""
    points = tuple(points)
    seen = {bottom(points, d), top(points, d)}
    for b in base:
        assert b.points == points and b.denominator == d
        seen.add(b)
    frontier = list(seen)
    while frontier:
        fresh = []
        current = list(seen)
        for a in frontier:
            for b in current:
                for res in (a.join(b), a.meet(b), a.oplus(b), a.odot(b)):
                    if res not in seen:
                        seen.add(res)
                        fresh.append(res)
                        if len(seen) > open_cap:
                            raise ClosureBudgetExceeded(
                                "closure budget exceeded", frozenset(seen)
                            )
        frontier = fresh
    return MvTopology(points, d, frozenset(seen))


@dataclass(frozen=True)
class MvSpaceMap:
    source: MvTopology
    target: MvTopology
    mapping: tuple  # pairs (x, f(x))

    def apply(self, x):
        return dict(self.mapping)[x]


def preimage(f: MvSpaceMap, a: FuzzySet) -> FuzzySet:
    assert a.points == f.target.points
    fm = dict(f.mapping)
    return FuzzySet(f.source.points, a.denominator,
                    tuple(a.values[a.points.index(fm[x])] for x in f.source.points))


def image(f: MvSpaceMap, a: FuzzySet) -> FuzzySet:
    assert a.points == f.source.points
    fm = dict(f.mapping)
    vals = []
    for y in f.target.points:
        fiber = [a.values[i] for i, x in enumerate(a.points) if fm[x] == y]
        vals.append(max(fiber) if fiber else 0)
    return FuzzySet(f.target.points, a.denominator, tuple(vals))


def check_map(f: MvSpaceMap) -> dict:
    assert f.source.denominator == f.target.denominator
    continuous = all(preimage(f, a) in f.source.opens for a in f.target.opens)
    open_flag = all(image(f, a) in f.target.opens for a in f.source.opens)
    closed_src = {o.star() for o in f.source.opens}
    closed_tgt = {o.star() for o in f.target.opens}
    closed_flag = all(image(f, c) in closed_tgt for c in closed_src)
    fm = dict(f.mapping)
    bijective = (len(set(fm.values())) == len(fm) == len(f.target.points))
    homeo = False
    if bijective and continuous:
        inv = MvSpaceMap(f.target, f.source, tuple((v, k) for k, v in fm.items()))
        homeo = all(preimage(inv, a) in f.target.opens for a in f.source.opens)
    return {"continuous": continuous, "open": open_flag,
            "closed": closed_flag, "homeomorphism": homeo}


def restrict(t: MvTopology, subset) -> MvTopology:
    """Subspace MV-topology: opens restricted pointwise to the subset."""
    pts = tuple(p for p in t.points if p in subset)
    idx = [t.points.index(p) for p in pts]
    opens = frozenset(
        FuzzySet(pts, t.denominator, tuple(o.values[i] for i in idx)) for o in t.opens
    )
    return MvTopology(pts, t.denominator, opens)


# ---------------------------------------------------------------------------
# coverings and compactness


def is_covering(t: MvTopology, family) -> bool:
    acc = t.zero
    for a in family:
        acc = acc.join(a)
    return acc == t.one


def is_additive_covering(t: MvTopology, family, multiplicity: int | None = None) -> bool:
    """Does some oplus-combination of the family (multiplicities up to d)
    reach the top? Saturating each member d times attains the best possible."""
    d = multiplicity if multiplicity is not None else t.denominator
    acc = t.zero
    for a in family:
        for _ in range(d):
            acc = acc.oplus(a)
    return acc == t.one


def minimal_subcover_size(t: MvTopology, family) -> int | None:
    fam = list(family)
    for size in range(1, len(fam) + 1):
        for combo in combinations(fam, size):
            if is_covering(t, combo):
                return size
    return None


def is_compact(t: MvTopology, enumeration_budget: int = 1 << 18) -> dict:
    """Every open covering contains an additive covering. When the powerset of
    opens is enumerable within budget the check is exhaustive; otherwise the
    pointwise saturation argument applies: a covering reaches the top at every
    point, so some member is positive (hence at least 1/d) there, and its
    d-fold oplus already saturates that point."""
    opens = t.sorted_opens()
    n = len(opens)
    d = t.denominator
    if (1 << n) <= enumeration_budget:
        for mask in range(1, 1 << n):
            family = [opens[i] for i in range(n) if mask >> i & 1]
            if is_covering(t, family) and not is_additive_covering(t, family):
                return {"compact": False, "witness_mask": mask, "mode": "exhaustive"}
        return {"compact": True, "mode": "exhaustive"}
    for i, p in enumerate(t.points):
        positives = [o for o in opens if o.values[i] > 0]
        if not all(min(d * o.values[i], d) == d for o in positives):
            return {"compact": False, "witness_point": p, "mode": "pointwise-saturation"}
    return {"compact": True, "mode": "pointwise-saturation"}


def is_strongly_compact(t: MvTopology, enumeration_budget: int = 1 << 18) -> dict:
    """Every covering contains a finite join-subcover; with finitely many opens
    each covering is its own finite subcover, verified by enumeration when
    affordable."""
    opens = t.sorted_opens()
    n = len(opens)
    if (1 << n) <= enumeration_budget:
        for mask in range(1, 1 << n):
            family = [opens[i] for i in range(n) if mask >> i & 1]
            if is_covering(t, family) and minimal_subcover_size(t, family) is None:
                return {"strongly_compact": False, "witness_mask": mask}
        return {"strongly_compact": True, "mode": "exhaustive"}
    return {"strongly_compact": True, "mode": "finite-opens"}


def is_hausdorff(t: MvTopology) -> dict:
    d = t.denominator
    pairs = []
    for i, x in enumerate(t.points):
        for j, y in enumerate(t.points):
            if j <= i:
                continue
            found = False
            for ox in t.opens:
                if ox.values[i] != d:
                    continue
                for oy in t.opens:
                    if oy.values[j] == d and ox.meet(oy) == t.zero:
                        found = True
                        break
                if found:
                    break
            if not found:
                pairs.append((x, y))
    return {"hausdorff": not pairs, "failing_pairs": pairs[:4]}


def coverings(t: MvTopology) -> dict:
    return {
        "is_covering": lambda fam: is_covering(t, fam),
        "is_additive_covering": lambda fam: is_additive_covering(t, fam),
        "is_compact": lambda: is_compact(t),
        "is_strongly_compact": lambda: is_strongly_compact(t),
        "is_hausdorff": lambda: is_hausdorff(t),
    }


# ---------------------------------------------------------------------------
# the Zariski topology on Max A


def zariski_support(a: alg.MvAlgebra, x, maxes=None) -> frozenset:
    """R(x) = the maximal ideals omitting x."""
    maxes = maxes if maxes is not None else sp.maximal_ideals(a)
    return frozenset(m.label for m in maxes if not m.contains(x))


def zariski_max(a: alg.MvAlgebra, sample_bound: int = 8) -> dict:
    """Classical topology on Max A as a crisp MV-topology with basis
    {R(x)}; verifies the basis identities and compact Hausdorff."""
    maxes = sp.maximal_ideals(a)
    points = tuple(m.label for m in maxes)
    universe = a.elements() if a.is_finite else a.sample(sample_bound)
    basis = {zariski_support(a, x, maxes) for x in universe}
    base_sets = [crisp(points, 1, b) for b in sorted(basis, key=sorted)]
    topo = generate_topology(points, 1, base_sets)
    identity_failures = []
    # quadratic sweep; capped on oversized universes, exhaustive otherwise
    pair_pool = universe if len(universe) <= 100 else universe[:64]
    for x in pair_pool:
        for y in pair_pool:
            rx, ry = zariski_support(a, x, maxes), zariski_support(a, y, maxes)
            if zariski_support(a, a.join(x, y), maxes) != rx | ry:
                identity_failures.append(("join", x, y))
            if zariski_support(a, a.oplus(x, y), maxes) != rx | ry:
                identity_failures.append(("oplus", x, y))
            if zariski_support(a, a.meet(x, y), maxes) != rx & ry:
                identity_failures.append(("meet", x, y))
    compact = is_compact(topo)
    hausdorff = is_hausdorff(topo)
    discreteness = {}
    for m in maxes:
        witness = next(
            (x for x in universe if zariski_support(a, x, maxes) == frozenset({m.label})),
            None,
        )
        discreteness[m.label] = witness
    return {
        "topology": topo,
        "points": points,
        "basis_size": len(basis),
        "identity_failures": identity_failures[:4],
        "identities_pass": not identity_failures,
        "compact": compact["compact"],
        "hausdorff": hausdorff["hausdorff"],
        "discrete": all(w is not None for w in discreteness.values()),
        "discreteness_certificates": discreteness,
    }


# ---------------------------------------------------------------------------
# the fuzzy spectral topology tau_A


def _lcm(xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def mv_spectrum(a: alg.MvAlgebra, sample_bound: int = 8, open_cap: int = 256) -> dict:
    """tau_A: the MV-topology generated by the images of the semisimple
    evaluation a -> (value of a at each maximal quotient). Checks the support /
    Zariski coherence clauses and the locally-zero-set memberships."""
    maxes = sp.maximal_ideals(a)
    points = tuple(m.label for m in maxes)
    quots = []
    for m in maxes:
        q, pi = sp.quotient(a, m)
        quots.append((m, q, pi, sp.chain_denominator(q)))
    d = _lcm([den for _, _, _, den in quots])
    rad = sp.radical(a)

    def hat(x):
        vals = []
        for m, q, pi, den in quots:
            scaled = sp.chain_value(q, pi(x)) * d
            assert scaled.denominator == 1
            vals.append(int(scaled))
        return FuzzySet(points, d, tuple(vals))

    universe = a.elements() if a.is_finite else a.sample(sample_bound)
    base = []
    seen = set()
    for x in universe:
        h = hat(x)
        if h not in seen:
            seen.add(h)
            base.append(h)
    topo = generate_topology(points, d, base, open_cap)
    zar = zariski_max(a, sample_bound)

    supp_failures = [
        x for x in universe if hat(x).supp != zariski_support(a, x, maxes)
    ]
    kernel_failures = [
        x for x in universe if (hat(x) == bottom(points, d)) != rad.contains(x)
    ]
    coarseness_failures = []
    for u in zar["topology"].opens:
        chi = crisp(points, d, u.supp)
        if chi not in topo.opens:
            coarseness_failures.append(sorted(u.supp))

    o_kernels = [(m, sp.o_p(m)) for m in maxes]
    locally_zero = {}
    h_failures = []
    for x in universe:
        hx = frozenset(m.label for m, om in o_kernels if om.contains(x))
        locally_zero[x] = hx
        if crisp(points, d, hx) not in topo.opens:
            h_failures.append(x)
            continue
        # exhibit H as a union of basic supports via annihilator witnesses
        for m, om in o_kernels:
            if m.label in hx:
                witness = next(
                    (b for b in universe
                     if a.meet(x, b) == a.zero() and not m.contains(b)),
                    None,
                )
                if witness is None:
                    h_failures.append((x, m.label, "no annihilator witness"))
    return {
        "topology": topo,
        "points": points,
        "denominator": d,
        "hat": hat,
        "base_size": len(base),
        "open_count": len(topo.opens),
        "supp_matches_zariski": not supp_failures,
        "supp_failures": supp_failures[:4],
        "kernel_is_radical": not kernel_failures,
        "zariski_coarser": not coarseness_failures,
        "coarseness_failures": coarseness_failures[:4],
        "locally_zero_open": not h_failures,
        "locally_zero_failures": h_failures[:4],
        "locally_zero_sets": locally_zero,
        "zariski": zar,
    }
