"""MV-presheaves and MV-sheaves over finite MV-topologies. Carriers come in
two flavors: finite enumerated sets (with restriction functions) and free
abelian groups (with integer restriction matrices, checked by exact linear
algebra over the integers)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iproduct

from . import intlin
from .errors import IsolatedPoint
from .topology import FuzzySet, MvTopology, MvSpaceMap, check_map, preimage, restrict


@dataclass(frozen=True)
class Presheaf:
    """kind "finite": carriers are tuples of elements, restrictions are dicts.
    kind "zlinear": carriers are free-abelian ranks, restrictions are integer
    matrices (tuple of row tuples; () stands for any matrix with 0 rows)."""

    topology: MvTopology
    kind: str
    carriers: dict
    restrictions: dict
    label: str = ""

    def carrier(self, alpha):
        return self.carriers[alpha]

    def restrict(self, alpha, beta, s):
        if alpha == beta:
            return s
        rho = self.restrictions[(alpha, beta)]
        if self.kind == "finite":
            return rho[s]
        return _matvec(rho, self.rank(beta), s)

    def rank(self, alpha) -> int:
        assert self.kind == "zlinear"
        return self.carriers[alpha]

    def sections(self, alpha):
        """Enumerable section list; zlinear carriers enumerate a small window
        of coordinate vectors (used only by cross-check oracles)."""
        if self.kind == "finite":
            return list(self.carriers[alpha])
        n = self.rank(alpha)
        if n == 0:
            return [()]
        rng = range(-2, 3)
        return [tuple(v) for v in _iproduct(rng, repeat=n)]


def _matvec(rows, out_dim, v):
    if out_dim == 0:
        return ()
    assert len(rows) == out_dim
    return tuple(sum(r * x for r, x in zip(row, v)) for row in rows)


def _leq_pairs(t: MvTopology):
    opens = t.sorted_opens()
    return [(a, b) for a in opens for b in opens if b.leq(a) and a != b]


def check_presheaf(p: Presheaf) -> dict:
    """Identity and composition functor laws over every comparable chain,
    plus structure preservation where carriers carry structure (zlinear
    restrictions are group homomorphisms by construction)."""
    t = p.topology
    opens = t.sorted_opens()
    violations = []
    for a in opens:
        if p.kind == "finite":
            for s in p.carriers[a]:
                if p.restrict(a, a, s) != s:
                    violations.append(("identity", a.values, s))
        # identity on zlinear holds definitionally (restrict short-circuits)
    for a in opens:
        for b in opens:
            if not (b.leq(a) and a != b):
                continue
            for c in opens:
                if not (c.leq(b) and b != c):
                    continue
                if p.kind == "finite":
                    for s in p.carriers[a]:
                        direct = p.restrict(a, c, s)
                        via = p.restrict(b, c, p.restrict(a, b, s))
                        if direct != via:
                            violations.append(
                                ("composition", a.values, b.values, c.values, s)
                            )
                else:
                    direct = p.restrictions.get((a, c))
                    lower = p.restrictions.get((b, c))
                    upper = p.restrictions.get((a, b))
                    composed = _matmul(lower, upper, p.rank(c), p.rank(b), p.rank(a))
                    if not _mat_eq(direct, composed, p.rank(c), p.rank(a)):
                        violations.append(
                            ("composition", a.values, b.values, c.values)
                        )
    return {"passed": not violations, "violations": violations[:6],
            "opens": len(opens), "kind": p.kind}


def _matmul(lower, upper, out_dim, mid_dim, in_dim):
    if out_dim == 0:
        return ()
    if mid_dim == 0:
        return tuple((0,) * in_dim for _ in range(out_dim))
    return intlin.matmul(lower, upper)


def _mat_eq(m1, m2, rows, cols):
    if rows == 0:
        return True
    a = m1 if m1 else tuple((0,) * cols for _ in range(rows))
    b = m2 if m2 else tuple((0,) * cols for _ in range(rows))
    return a == b


# ---------------------------------------------------------------------------
# covers


def enumerate_covers(t: MvTopology, alpha: FuzzySet, budget: int = 1 << 16):
    """Decompositions alpha = join of opens. Exhaustive powerset of the
    downset when affordable; otherwise the nullary (bottom only), unary, and
    binary covers, which decide the sheaf conditions by join induction on the
    pointwise-distributive open lattice. Yields (cover_model, families)."""
    down = [o for o in t.sorted_opens() if o.leq(alpha)]
    n = len(down)
    if (1 << n) <= budget:
        joins = [t.zero] * (1 << n)
        families = []
        for mask in range(1, 1 << n):
            low = mask & -mask
            joins[mask] = joins[mask ^ low].join(down[low.bit_length() - 1])
            if joins[mask] == alpha:
                families.append(tuple(down[i] for i in range(n) if mask >> i & 1))
        if alpha == t.zero:
            families.insert(0, ())
        return "exhaustive-powerset", families
    families = []
    if alpha == t.zero:
        families.append(())
    for b in down:
        if b == alpha:
            families.append((b,))
    for i, b in enumerate(down):
        for c in down[i + 1 :]:
            if b.join(c) == alpha:
                families.append((b, c))
    return "nullary-unary-binary", families


def _essential_cover(alpha, fam):
    """Reduce a cover to the family that actually decides its conditions.

    Two reductions, valid over any presheaf by the composition laws: a cover
    containing the covered open itself is discharged by taking u = s_alpha
    (compatibility forces every other section to be its restriction), and a
    member below another member is determined by that same compatibility, so
    only the maximal members matter. Returns None when nothing is left to
    check."""
    if any(b == alpha for b in fam):
        return None
    keep = [
        b
        for i, b in enumerate(fam)
        if not any(j != i and b.leq(c) and (b != c or j < i) for j, c in enumerate(fam))
    ]
    return frozenset(keep)


def check_sheaf(p: Presheaf, cover_budget: int = 1 << 16) -> dict:
    """Separation and gluing for every open and every cover within the model.
    Finite carriers enumerate sections; group carriers reduce separation to a
    trivial stacked kernel and gluing to integer solvability of the
    compatibility kernel. Families sharing the same essential part are
    evaluated once."""
    t = p.topology
    sep_violations, glue_violations = [], []
    cover_model = None
    covers_checked = 0
    for alpha in t.sorted_opens():
        model, families = enumerate_covers(t, alpha, cover_budget)
        cover_model = model if cover_model in (None, model) else "mixed"
        seen = set()
        for fam in families:
            covers_checked += 1
            core = _essential_cover(alpha, fam)
            if core is None or core in seen:
                continue
            seen.add(core)
            fam = sorted(core, key=lambda o: o.values)
            if p.kind == "finite":
                sv, gv = _finite_sheaf_conditions(p, alpha, fam)
            else:
                sv, gv = _zlinear_sheaf_conditions(p, alpha, fam)
            sep_violations.extend(sv)
            glue_violations.extend(gv)
    return {
        "passed": not sep_violations and not glue_violations,
        "separation_violations": sep_violations[:4],
        "gluing_violations": glue_violations[:4],
        "cover_model": cover_model,
        "covers_checked": covers_checked,
    }


def _finite_sheaf_conditions(p: Presheaf, alpha, fam):
    sep, glue = [], []
    secs = list(p.carriers[alpha])
    for s in secs:
        for s2 in secs:
            if s != s2 and all(
                p.restrict(alpha, b, s) == p.restrict(alpha, b, s2) for b in fam
            ):
                sep.append((alpha.values, s, s2))
    pools = [list(p.carriers[b]) for b in fam]
    for combo in _iproduct(*pools):
        compatible = True
        for i, b in enumerate(fam):
            for j, c in enumerate(fam):
                if j <= i:
                    continue
                meet = b.meet(c)
                if p.restrict(b, meet, combo[i]) != p.restrict(c, meet, combo[j]):
                    compatible = False
                    break
            if not compatible:
                break
        if not compatible:
            continue
        glued = [
            s for s in secs
            if all(p.restrict(alpha, b, s) == combo[i] for i, b in enumerate(fam))
        ]
        if not glued:
            glue.append((alpha.values, tuple(combo)))
    return sep, glue


def _zlinear_sheaf_conditions(p: Presheaf, alpha, fam):
    sep, glue = [], []
    n = p.rank(alpha)
    stacked = []
    for b in fam:
        nb = p.rank(b)
        rho = p.restrictions.get((alpha, b)) if b != alpha else _identity(n)
        for r in range(nb):
            stacked.append(tuple(rho[r]))
    if n > 0:
        if not stacked:
            # empty cover: separation demands a trivial carrier
            sep.append((alpha.values, "nonzero carrier under empty cover"))
        else:
            ker = intlin.kernel_basis(tuple(stacked))
            if ker:
                sep.append((alpha.values, "kernel vector", ker[0]))
    # gluing: compatibility kernel must be inside the image of the stacked map
    dims = [p.rank(b) for b in fam]
    total = sum(dims)
    if total == 0:
        # the only compatible family is all-zero; glued by the zero section if
        # the carrier is nontrivial-free (always solvable: x = 0)
        return sep, glue
    diff_rows = []
    offs = [sum(dims[:i]) for i in range(len(fam))]
    for i, b in enumerate(fam):
        for j, c in enumerate(fam):
            if j <= i:
                continue
            meet = b.meet(c)
            nm = p.rank(meet)
            if nm == 0:
                continue
            rb = p.restrictions.get((b, meet)) if meet != b else _identity(dims[i])
            rc = p.restrictions.get((c, meet)) if meet != c else _identity(dims[j])
            for r in range(nm):
                row = [0] * total
                for k in range(dims[i]):
                    row[offs[i] + k] += rb[r][k]
                for k in range(dims[j]):
                    row[offs[j] + k] -= rc[r][k]
                diff_rows.append(tuple(row))
    if diff_rows:
        compat_basis = intlin.kernel_basis(tuple(diff_rows))
    else:
        compat_basis = list(_identity(total))
    if n == 0:
        for v in compat_basis:
            if any(v):
                glue.append((alpha.values, "compatible family over trivial carrier", v))
        return sep, glue
    stacked_mat = tuple(stacked)
    for v in compat_basis:
        if intlin.solve(stacked_mat, tuple(v)) is None:
            glue.append((alpha.values, v))
    return sep, glue


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


_POINT = ("*",)


def constant_presheaf(t: MvTopology, carrier) -> Presheaf:
    """Constant sections over every nonbottom open, a single point over the
    bottom (the empty-cover separation condition forces that collapse)."""
    carrier = tuple(carrier)
    opens = t.sorted_opens()
    carriers = {o: (carrier if o != t.zero else _POINT) for o in opens}
    restrictions = {}
    for a in opens:
        for b in opens:
            if b.leq(a) and a != b:
                if b == t.zero:
                    restrictions[(a, b)] = {s: _POINT[0] for s in carriers[a]}
                else:
                    restrictions[(a, b)] = {s: s for s in carriers[a]}
    return Presheaf(t, "finite", carriers, restrictions, "constant")


# ---------------------------------------------------------------------------
# stalks


@dataclass(frozen=True)
class Stalk:
    point: object
    least_open: FuzzySet
    carrier: object
    kind: str

    def germ(self, presheaf: Presheaf, alpha, s):
        assert self.point in alpha.supp
        return presheaf.restrict(alpha, self.least_open, s)


def stalk_at(p: Presheaf, x) -> Stalk:
    """Directed limit over the opens whose support contains x; over a finite
    topology the family has a least element (supports meet pointwise), so the
    limit is that open's carrier."""
    t = p.topology
    dx = [o for o in t.sorted_opens() if x in o.supp]
    if not dx:
        raise IsolatedPoint("isolated from topology")
    mu = dx[0]
    for o in dx[1:]:
        mu = mu.meet(o)
    assert x in mu.supp and mu in t.opens
    return Stalk(x, mu, p.carriers[mu], p.kind)


def stalk_colimit_oracle(p: Presheaf, x) -> int:
    """Independent general-colimit computation for finite carriers: classes of
    (open, section) pairs under the germ equivalence. Returns the class count
    for comparison with the least-open shortcut."""
    assert p.kind == "finite"
    t = p.topology
    dx = [o for o in t.sorted_opens() if x in o.supp]
    if not dx:
        raise IsolatedPoint("isolated from topology")
    pairs = [(o, s) for o in dx for s in p.carriers[o]]

    def equivalent(p1, p2):
        (a, s), (b, u) = p1, p2
        for c in dx:
            if c.leq(a) and c.leq(b):
                if p.restrict(a, c, s) == p.restrict(b, c, u):
                    return True
        return False

    classes = []
    for pr in pairs:
        for cls in classes:
            if any(equivalent(pr, other) for other in cls):
                cls.append(pr)
                break
        else:
            classes.append([pr])
    return len(classes)


# ---------------------------------------------------------------------------
# sheaf spaces


@dataclass(frozen=True)
class SheafSpace:
    total: MvTopology
    base: MvTopology
    projection: tuple  # pairs (total point, base point)


def check_sheaf_space(s: SheafSpace) -> dict:
    """Continuity of the projection plus the local MV-homeomorphism search:
    for every total point, an open above it whose support projects
    homeomorphically onto the support of a base open."""
    proj_map = MvSpaceMap(s.total, s.base, s.projection)
    continuous = all(preimage(proj_map, a) in s.total.opens for a in s.base.opens)
    fm = dict(s.projection)
    failures = []
    witnesses = {}
    for i, e in enumerate(s.total.points):
        found = None
        for a in s.total.sorted_opens():
            if a.values[i] == 0:
                continue
            sa = a.supp
            image_pts = frozenset(fm[x] for x in sa)
            for b in s.base.sorted_opens():
                if b.supp != image_pts or not b.supp:
                    continue
                if len(sa) != len(image_pts):
                    continue
                sub_total = restrict(s.total, sa)
                sub_base = restrict(s.base, image_pts)
                local = MvSpaceMap(
                    sub_total, sub_base,
                    tuple((x, fm[x]) for x in sub_total.points),
                )
                flags = check_map(local)
                if flags["homeomorphism"]:
                    found = (a.values, b.values)
                    break
            if found:
                break
        if found is None:
            failures.append(e)
        else:
            witnesses[e] = found
    return {
        "passed": continuous and not failures,
        "continuous": continuous,
        "local_homeo_failures": failures[:4],
        "witnesses_found": len(witnesses),
    }
