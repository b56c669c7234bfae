"""Global-section representation over the maximal spectrum.

Per maximal ideal M the pipeline assembles the local kernel O_M, the local
algebra A/O_M, a retraction of its radical quotient, and the group completion
of its radical. An element then becomes a family of (value, displacement)
pairs indexed by Max A; the sheaf of groups glues those displacement blocks
along the spectral topology, and the represented algebra rebuilds the whole
structure on the family tuples.

The per-open carriers of the sheaf split into one block per maximal ideal of
the support. That split is a theorem for the supported shapes (the local
kernels are independent: quotienting by their intersection is the product of
the local quotients), and build_sheaf cross-checks it per distinct support
instead of assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra as alg
from . import sheaves, spectra, topology
from .errors import (
    CompletionUnsupported,
    ForeignElement,
    NotEnumerable,
    NotLocallyRetractive,
    RequiresExternalEmbedding,
)
from .groups import LexGroup


# ---------------------------------------------------------------------------
# per-maximal pipelines and germs


@dataclass
class LocalPipeline:
    """Everything attached to one maximal ideal: the local algebra, its
    residue chain, the radical retraction and the radical's group hull."""

    maximal: spectra.Ideal
    o_m: spectra.Ideal
    local: alg.MvAlgebra
    to_local: object          # payload map A -> A/O_M
    residue: alg.MvAlgebra    # the chain A/M, reached through the local algebra
    to_residue: object        # payload map A/O_M -> A/M
    section: object           # payload map A/M -> A/O_M, homomorphic
    group: LexGroup
    embed: object             # radical members of the local algebra -> vectors
    denominator: int
    declared_quotient: bool = False

    @property
    def label(self):
        return self.maximal.label

    def value_of(self, x) -> Fraction:
        return spectra.chain_value(self.residue, self.to_residue(self.to_local(x)))

    def germ_of(self, x) -> tuple:
        p = self.to_local(x)
        s = self.section(self.to_residue(p))
        excess = self.local.odot(p, self.local.star(s))
        defect = self.local.odot(s, self.local.star(p))
        return self.group.sub(self.embed(excess), self.embed(defect))


def _pipeline_for(a: alg.MvAlgebra, m: spectra.Ideal) -> LocalPipeline:
    om = spectra.o_p(m)
    local, to_local = spectra.quotient(a, om)
    rad = spectra.radical(local)
    residue, to_residue = spectra.quotient(local, rad)
    sec, _cert = spectra.retraction_search(local, rad)
    if sec is None:
        raise NotLocallyRetractive(f"not locally retractive at {m.label}")
    try:
        group, embed, _ = spectra.ideal_completion(rad)
    except CompletionUnsupported as e:
        raise CompletionUnsupported(f"{e} (radical at {m.label})") from e
    declared = isinstance(a, alg.CofiniteAlgebra) and m.data == ("max", spectra.OMEGA)
    return LocalPipeline(
        maximal=m,
        o_m=om,
        local=local,
        to_local=to_local,
        residue=residue,
        to_residue=to_residue,
        section=sec,
        group=group,
        embed=embed,
        denominator=spectra.chain_denominator(residue),
        declared_quotient=declared,
    )


def local_pipelines(a: alg.MvAlgebra):
    return [_pipeline_for(a, m) for m in spectra.maximal_ideals(a)]


def germ_at(a: alg.MvAlgebra, x, m: spectra.Ideal) -> tuple:
    """Displacement of x from the retraction section at one maximal ideal,
    as a vector of the radical's group hull."""
    return _pipeline_for(a, m).germ_of(x)


# ---------------------------------------------------------------------------
# interval arithmetic on (value, displacement) pairs

_ONE = Fraction(1)


def _pair_oplus(group: LexGroup, p, q):
    v = p[0] + q[0]
    g = group.add(p[1], q[1])
    if v > _ONE:
        return (_ONE, group.zero())
    if v == _ONE:
        return (_ONE, group.meet(g, group.zero()))
    return (v, g)


def _pair_star(group: LexGroup, p):
    return (_ONE - p[0], group.neg(p[1]))


class RepresentedAlgebra(alg.MvAlgebra):
    """Families {(value, germ)}_M as an MV-algebra.

    Operations follow the defining recipe: pull the operands back along psi,
    operate in the base algebra, push forward. The convenient componentwise
    form on pairs is a verified property (see represent), not the definition.
    """

    def __init__(self, base: alg.MvAlgebra, pipelines):
        self.base = base
        self.pipelines = list(pipelines)
        self.is_finite = base.is_finite
        self._img = {}
        self._inv = {}
        self.report = None

    def psi(self, x):
        s = self._img.get(x)
        if s is None:
            s = tuple((pl.value_of(x), pl.germ_of(x)) for pl in self.pipelines)
            self._img[x] = s
            self._inv.setdefault(s, x)
        return s

    def pull(self, s):
        try:
            return self._inv[s]
        except KeyError:
            raise ForeignElement(f"foreign element: {s!r} not in {self.describe()}")

    def zero(self):
        return self.psi(self.base.zero())

    def one(self):
        return self.psi(self.base.one())

    def oplus(self, s, t):
        return self.psi(self.base.oplus(self.pull(s), self.pull(t)))

    def star(self, s):
        return self.psi(self.base.star(self.pull(s)))

    def contains(self, s):
        return s in self._inv

    def elements(self):
        if not self.is_finite:
            raise NotEnumerable("not enumerable")
        return [self.psi(x) for x in self.base.elements()]

    def sample(self, bound: int = 8):
        return [self.psi(x) for x in self.base.sample(bound)]

    def pair_oplus(self, s, t):
        return tuple(
            _pair_oplus(pl.group, p, q) for pl, p, q in zip(self.pipelines, s, t)
        )

    def pair_star(self, s):
        return tuple(_pair_star(pl.group, p) for pl, p in zip(self.pipelines, s))

    def describe(self):
        return f"global-sections({self.base.describe()})"


def represent(a: alg.MvAlgebra, sample_bound: int = 8):
    """Build the represented algebra and verify the three isomorphism clauses
    plus the componentwise agreement. Returns (rep, psi); the clause report is
    rep.report."""
    pipelines = local_pipelines(a)
    rep = RepresentedAlgebra(a, pipelines)
    universe = a.elements() if a.is_finite else a.sample(sample_bound)
    images = [rep.psi(x) for x in universe]

    injective = len(set(images)) == len(universe)
    hom_failures = []
    for x in universe:
        sx = rep.psi(x)
        if rep.psi(a.star(x)) != rep.pair_star(sx):
            hom_failures.append(("star", x))
    # all pairs up to 256 elements; past that a strided pool keeps the check
    # quadratic in 256, not in the universe (pairs_checked records the truth)
    pool = universe[:: max(1, (len(universe) + 255) // 256)]
    pairs = 0
    for x in pool:
        sx = rep.psi(x)
        for y in pool:
            pairs += 1
            if rep.psi(a.oplus(x, y)) != rep.pair_oplus(sx, rep.psi(y)):
                hom_failures.append(("oplus", x, y))
                if len(hom_failures) > 4:
                    break
        if len(hom_failures) > 4:
            break

    # derived operations route through the base algebra, so agreement on a
    # thinned sample is a consistency probe, not a new theorem
    derived_failures = []
    probe = universe[:: max(1, len(universe) // 12)]
    for x in probe:
        for y in probe:
            sx, sy = rep.psi(x), rep.psi(y)
            if rep.meet(sx, sy) != rep.psi(a.meet(x, y)):
                derived_failures.append(("meet", x, y))
            if rep.join(sx, sy) != rep.psi(a.join(x, y)):
                derived_failures.append(("join", x, y))

    zero_image = rep.psi(a.zero())
    one_image = rep.psi(a.one())
    supp_failures = [
        x
        for x in universe
        if frozenset(
            pl.label for pl, (v, _) in zip(pipelines, rep.psi(x)) if v > 0
        )
        != frozenset(
            pl.label for pl in pipelines if not pl.maximal.contains(x)
        )
    ]

    try:
        sec, cert = spectra.retraction_search(a, spectra.radical(a))
        radical_retractive = sec is not None
    except spectra.RetractionInconclusive:
        radical_retractive, cert = None, {"route": "inconclusive"}

    rep.report = {
        "algebra": a.describe(),
        "locally_retractive": True,
        "radical_retractive": radical_retractive,
        "radical_certificate": cert,
        "universe_size": len(universe),
        "exhaustive": a.is_finite,
        "injective": injective,
        "pair_homomorphism": not hom_failures,
        "hom_failures": hom_failures[:4],
        "pairs_checked": pairs,
        "derived_agreement": not derived_failures,
        "derived_failures": derived_failures[:4],
        "surjective_by_construction": True,
        "value_supp_matches_comaximal": not supp_failures,
        "zero_image": zero_image,
        "one_image": one_image,
        "per_maximal": [
            {
                "max": pl.label,
                "denominator": pl.denominator,
                "germ_ranks": pl.group.ranks,
                "declared_quotient": pl.declared_quotient,
            }
            for pl in pipelines
        ],
    }
    rep.report["passed"] = (
        injective and not hom_failures and not derived_failures and not supp_failures
    )
    return rep, rep.psi


def representation_dump(rep: RepresentedAlgebra, elements=None):
    """JSON-ready per-element records of the psi families."""
    xs = elements if elements is not None else sorted(rep._img)
    out = []
    for x in xs:
        s = rep.psi(x)
        out.append(
            {
                "element": repr(x),
                "sections": [
                    {
                        "max": pl.label,
                        "value": f"{v.numerator}/{v.denominator}",
                        "germ": list(g),
                    }
                    for pl, (v, g) in zip(rep.pipelines, s)
                ],
            }
        )
    return out


# ---------------------------------------------------------------------------
# the sheaf of groups over the spectral topology


@dataclass
class SheafOfGroups:
    presheaf: sheaves.Presheaf
    base: topology.MvTopology
    blocks: dict          # max label -> LexGroup of its germ block
    stalks: dict          # max label -> stalk record
    report: dict = field(default_factory=dict)


def _support_ideal(a: alg.MvAlgebra, labels, maxes, supp):
    """O_U for a crisp support set U of maximal-ideal labels."""
    picked = [m for m in maxes if m.label in supp]
    if len(picked) == len(maxes):
        return spectra.zero_ideal(a)
    if a.is_finite:
        kernels = [spectra.o_p(m).data for m in picked]
        carrier = (
            frozenset.intersection(*kernels) if kernels else frozenset(a.elements())
        )
        return spectra.Ideal(a, "explicit", carrier, "o[U]")
    if isinstance(a, alg.GammaLex):
        # single maximal ideal: the only proper support is everything
        return spectra.full_ideal(a) if not picked else spectra.o_p(picked[0])
    if isinstance(a, alg.ProductAlgebra):
        slots = []
        for k, f in enumerate(a.factors):
            hit = [m for m in picked if m.data[k].is_proper]
            slots.append(spectra.o_p(hit[0]).data[k] if hit else spectra.full_ideal(f))
        return spectra.Ideal(a, "product", tuple(slots), "o[U]")
    if isinstance(a, alg.CofiniteAlgebra):
        pts = frozenset(m.data[1] for m in picked)
        if not pts:
            return spectra.full_ideal(a)
        return spectra.Ideal(a, "cof", ("ou", pts), "o[U]")
    raise spectra.IdealLatticeUnknown("ideal lattice unknown")


def build_sheaf(
    a: alg.MvAlgebra,
    sample_bound: int = 8,
    open_cap: int = 256,
    cover_budget: int = 1 << 16,
) -> SheafOfGroups:
    """Open alpha -> radical group hull of A/O_{supp alpha}, with restriction
    matrices selecting the germ blocks of the smaller support. Runs the
    presheaf and sheaf checks and matches every stalk against its local
    pipeline group."""
    spec = topology.mv_spectrum(a, sample_bound, open_cap)
    t = spec["topology"]
    labels = list(spec["points"])
    maxes = spectra.maximal_ideals(a)
    pipelines = local_pipelines(a)
    assert [pl.label for pl in pipelines] == labels

    widths = {pl.label: pl.group.dim for pl in pipelines}
    blocks = {pl.label: pl.group for pl in pipelines}

    def layout(open_):
        offs, pos = {}, 0
        for lab in labels:
            if lab in open_.supp:
                offs[lab] = pos
                pos += widths[lab]
        return offs, pos

    opens = t.sorted_opens()
    layouts = {o: layout(o) for o in opens}
    carriers = {o: layouts[o][1] for o in opens}

    restrictions = {}
    for upper in opens:
        offs_u, _ = layouts[upper]
        for lower in opens:
            if not (lower.leq(upper) and lower != upper):
                continue
            offs_l, rank_l = layouts[lower]
            if rank_l == 0:
                restrictions[(upper, lower)] = ()
                continue
            rows = []
            for lab in labels:
                if lab not in offs_l:
                    continue
                for i in range(widths[lab]):
                    row = [0] * layouts[upper][1]
                    row[offs_u[lab] + i] = 1
                    rows.append(tuple(row))
            restrictions[(upper, lower)] = tuple(rows)

    presheaf = sheaves.Presheaf(
        t, "zlinear", carriers, restrictions, label=f"groups({a.describe()})"
    )
    presheaf_report = sheaves.check_presheaf(presheaf)
    sheaf_report = sheaves.check_sheaf(presheaf, cover_budget)

    stalks = {}
    for pl in pipelines:
        st = sheaves.stalk_at(presheaf, pl.label)
        stalks[pl.label] = {
            "rank": st.carrier,
            "expected_rank": widths[pl.label],
            "expected_ranks": pl.group.ranks,
            "least_open_supp": sorted(st.least_open.supp),
            "isomorphic": st.carrier == widths[pl.label],
            "iso": "identity on the germ block"
            if st.least_open.supp == frozenset({pl.label})
            else "block selection",
            "declared_quotient": pl.declared_quotient,
        }

    # block-split cross-check: the radical hull of A/O_U computed through the
    # ideal machinery must have the same dimension as the block sum
    split_failures = []
    for supp in sorted({o.supp for o in opens}, key=sorted):
        ou = _support_ideal(a, labels, maxes, supp)
        expected = sum(widths[lab] for lab in labels if lab in supp)
        if not ou.is_proper:
            if expected:
                split_failures.append((sorted(supp), "empty support, nonzero block"))
            continue
        q, _ = spectra.quotient(a, ou)
        group, _, _ = spectra.ideal_completion(spectra.radical(q))
        if group.dim != expected:
            split_failures.append((sorted(supp), group.dim, expected))

    # germ coherence: transporting a radical member's full family through the
    # restriction matrices must land on its pipeline germ at each stalk
    coherence_failures = []
    members = spectra.radical(a).sample_members(sample_bound)
    top = t.one
    for r in members:
        vec = []
        for pl in pipelines:
            vec.extend(pl.germ_of(r))
        vec = tuple(vec)
        for pl in pipelines:
            st = sheaves.stalk_at(presheaf, pl.label)
            through = presheaf.restrict(top, st.least_open, vec)
            offs, _ = layouts[st.least_open]
            lo = offs[pl.label]
            if through[lo : lo + widths[pl.label]] != pl.germ_of(r):
                coherence_failures.append((r, pl.label))

    report = {
        "presheaf": presheaf_report,
        "sheaf": sheaf_report,
        "stalks": stalks,
        "stalks_match": all(s["isomorphic"] for s in stalks.values()),
        "block_split": not split_failures,
        "block_split_failures": split_failures[:4],
        "radical_germ_coherence": not coherence_failures,
        "coherence_failures": coherence_failures[:4],
        "bottom_rank": carriers[t.zero],
        "open_count": len(opens),
        "passed": (
            presheaf_report["passed"]
            and sheaf_report["passed"]
            and all(s["isomorphic"] for s in stalks.values())
            and not split_failures
            and not coherence_failures
            and carriers[t.zero] == 0
        ),
    }
    return SheafOfGroups(presheaf, t, blocks, stalks, report)


# ---------------------------------------------------------------------------
# the germ space over the spectrum


def build_sheaf_space(
    a: alg.MvAlgebra,
    elements=None,
    sample_bound: int = 2,
    open_cap: int = 256,
):
    """Total space of (germ, max label) points with the membership topology
    generated by the germ-section opens; base is the spectral topology.
    Symbolic algebras are restricted to a finite sample, recorded in the
    report. Returns (SheafSpace, report)."""
    pipelines = local_pipelines(a)
    if elements is not None:
        elems = list(elements)
    elif a.is_finite:
        elems = a.elements()
    else:
        elems = a.sample(sample_bound)
    for c in (a.zero(), a.one()):
        if c not in elems:
            elems.append(c)

    spec = topology.mv_spectrum(a, max(sample_bound, 8), open_cap)
    base = spec["topology"]
    d = spec["denominator"]
    hat = spec["hat"]

    germs = {(x, pl.label): pl.germ_of(x) for x in elems for pl in pipelines}
    points = []
    for pl in pipelines:
        for x in elems:
            pt = (germs[(x, pl.label)], pl.label)
            if pt not in points:
                points.append(pt)
    points = tuple(points)

    subbase = []
    for xa in elems:
        for xb in elems:
            hb = hat(xb)
            vals = tuple(
                hb.value(lab) * d if g == germs[(xa, lab)] else 0
                for (g, lab) in points
            )
            fs = topology.FuzzySet(points, d, tuple(int(v) for v in vals))
            if fs not in subbase:
                subbase.append(fs)
    total = topology.generate_topology(points, d, subbase, open_cap)
    projection = tuple((pt, pt[1]) for pt in points)
    space = sheaves.SheafSpace(total, base, projection)
    space_report = sheaves.check_sheaf_space(space)

    # agreement sets: where two elements share a germ; shown open by writing
    # them as unions of locally-zero sets of sampled elements
    alpha_failures = []
    pool = list(elems)
    checked = 0
    for xa in elems:
        for xb in elems:
            checked += 1
            alpha = frozenset(
                pl.label
                for pl in pipelines
                if germs[(xa, pl.label)] == germs[(xb, pl.label)]
            )
            dist = a.dist(xa, xb)
            candidates = pool + [dist]
            union = frozenset()
            for e in candidates:
                he = frozenset(pl.label for pl in pipelines if pl.o_m.contains(e))
                if he <= alpha:
                    union |= he
            chi = topology.crisp(base.points, d, alpha)
            if chi not in base.opens or union != alpha:
                alpha_failures.append((xa, xb, sorted(alpha), sorted(union)))

    germ_counts = {
        pl.label: len({germs[(x, pl.label)] for x in elems}) for pl in pipelines
    }
    report = {
        "points": len(points),
        "sample_size": len(elems),
        "restricted_to_sample": not a.is_finite,
        "distinct_germs": germ_counts,
        "open_count": len(total.opens),
        "space": space_report,
        "alpha_pairs_checked": checked,
        "alpha_all_exhibited": not alpha_failures,
        "alpha_failures": alpha_failures[:4],
        "projection_bijective": len(points) == len(pipelines),
        "passed": space_report["passed"] and not alpha_failures,
    }
    return space, report


# ---------------------------------------------------------------------------
# embedding arbitrary (locally retractive) algebras into global sections


def embed_into_retractive(a: alg.MvAlgebra, sample_bound: int = 8):
    """Compose the subdirect map into the product of local algebras with that
    product's own representation. Returns (rep, embedding hom, report)."""
    try:
        verdict = spectra.is_locally_retractive(a, sample_bound)
    except NotLocallyRetractive as e:
        raise RequiresExternalEmbedding(
            "requires external embedding (out of scope)"
        ) from e
    if not verdict["verdict"]:
        raise RequiresExternalEmbedding("requires external embedding (out of scope)")

    hom, target, sub_report = spectra.subdirect_embedding(a, sample_bound)
    rep, _psi = represent(target, sample_bound)
    mapping = lambda x: rep.psi(hom(x))
    emb = alg.Hom(a, rep, mapping, f"sections-embed({a.describe()})")

    universe = a.elements() if a.is_finite else a.sample(sample_bound)
    images = {emb(x) for x in universe}
    injective = len(images) == len(universe)
    hom_failures = []
    for x in universe:
        if emb(a.star(x)) != rep.pair_star(emb(x)):
            hom_failures.append(("star", x))
            break
    for x in universe[:: max(1, len(universe) // 16)]:
        for y in universe[:: max(1, len(universe) // 16)]:
            if emb(a.oplus(x, y)) != rep.pair_oplus(emb(x), emb(y)):
                hom_failures.append(("oplus", x, y))

    witness = sub_report.get("non_surjectivity_witness")
    surjective = witness is None
    witness_section = None
    if witness is not None:
        witness_section = rep.psi(witness["tuple"])
        surjective = witness_section in images

    report = {
        "locally_retractive": True,
        "target": rep.describe(),
        "subdirect": sub_report,
        "injective": injective,
        "homomorphism": not hom_failures,
        "hom_failures": hom_failures[:4],
        "surjective_on_universe": surjective,
        "witness_section": witness_section,
        "universe_size": len(universe),
        "passed": injective and not hom_failures,
    }
    return rep, emb, report


def radical_completion(a: alg.MvAlgebra):
    """Group hull of the radical: (group, embed, section)."""
    return spectra.ideal_completion(spectra.radical(a))
