"""Exact-arithmetic MV-algebra kernel.

Every algebra is a descriptor object; elements are plain hashable payloads
(scaled integers, integer vectors, tuples) so equality is sound and hot loops
stay cheap. Fractions appear only at the value interface, never inside ops.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iproduct

from .errors import ClosureBudgetExceeded, ForeignElement, NotEnumerable
from .groups import LexGroup

OPS = ("oplus", "star", "odot", "ominus", "dist", "join", "meet")


class MvAlgebra:
    """Base descriptor. Subclasses provide oplus/star/contains and, when the
    carrier is finite, elements(); the derived operations live here."""

    is_finite = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.star(self.zero())

    def oplus(self, x, y):
        raise NotImplementedError

    def star(self, x):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def elements(self):
        raise NotEnumerable("not enumerable")

    # derived operations, straight from the defining identities
    def odot(self, x, y):
        return self.star(self.oplus(self.star(x), self.star(y)))

    def ominus(self, x, y):
        return self.odot(x, self.star(y))

    def dist(self, x, y):
        return self.oplus(self.ominus(x, y), self.ominus(y, x))

    def join(self, x, y):
        return self.oplus(self.odot(x, self.star(y)), y)

    def meet(self, x, y):
        return self.star(self.join(self.star(x), self.star(y)))

    def leq(self, x, y) -> bool:
        return self.ominus(x, y) == self.zero()

    def nat_scale(self, n: int, x):
        acc = self.zero()
        for _ in range(n):
            acc = self.oplus(acc, x)
        return acc

    def is_infinitesimal(self, x, bound: int = 64) -> bool:
        """nx <= x* for all n; numeric probe up to the bound, structural where
        the subclass knows better (GammaLex overrides)."""
        xs = self.star(x)
        acc = self.zero()
        for _ in range(bound):
            acc = self.oplus(acc, x)
            if not self.leq(acc, xs):
                return False
        return True

    def sample(self, bound: int = 8):
        """Finite, deterministic test universe; the whole carrier when finite."""
        return self.elements()

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.describe()


@dataclass(frozen=True)
class MvElement:
    algebra: MvAlgebra
    payload: object

    def __post_init__(self):
        if not self.algebra.contains(self.payload):
            raise ForeignElement(f"foreign element: {self.payload!r} not in {self.algebra.describe()}")


def apply(algebra: MvAlgebra, op: str, args):
    """Public op dispatch with membership checking; raises "foreign element"."""
    if op not in OPS:
        raise ValueError(f"unknown operation {op!r}")
    payloads = []
    for a in args:
        p = a.payload if isinstance(a, MvElement) else a
        if not algebra.contains(p):
            raise ForeignElement(f"foreign element: {p!r} not in {algebra.describe()}")
        payloads.append(p)
    fn = getattr(algebra, op)
    return fn(*payloads)


class FiniteChain(MvAlgebra):
    """Lukasiewicz chain {0, 1/n, ..., 1}; payloads are the scaled integers 0..n."""

    is_finite = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("chain rank must be positive")
        self.n = n

    def zero(self):
        return 0

    def one(self):
        return self.n

    def oplus(self, x, y):
        s = x + y
        return s if s < self.n else self.n

    def star(self, x):
        return self.n - x

    def join(self, x, y):
        return x if x > y else y

    def meet(self, x, y):
        return x if x < y else y

    def leq(self, x, y):
        return x <= y

    def contains(self, x):
        return isinstance(x, int) and 0 <= x <= self.n

    def elements(self):
        return list(range(self.n + 1))

    def value(self, x) -> Fraction:
        return Fraction(x, self.n)

    def from_value(self, v: Fraction):
        scaled = v * self.n
        if scaled.denominator != 1 or not 0 <= scaled <= self.n:
            raise ForeignElement(f"foreign element: {v} not a point of {self.describe()}")
        return int(scaled)

    def describe(self):
        return f"chain({self.n})"

    def __eq__(self, other):
        return isinstance(other, FiniteChain) and other.n == self.n

    def __hash__(self):
        return hash(("chain", self.n))


class ProductAlgebra(MvAlgebra):
    """Finite direct product; payloads are tuples of factor payloads."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("product needs at least one factor")
        self.factors = factors
        self.is_finite = all(f.is_finite for f in factors)

    def zero(self):
        return tuple(f.zero() for f in self.factors)

    def one(self):
        return tuple(f.one() for f in self.factors)

    def oplus(self, x, y):
        return tuple(f.oplus(a, b) for f, a, b in zip(self.factors, x, y))

    def star(self, x):
        return tuple(f.star(a) for f, a in zip(self.factors, x))

    def join(self, x, y):
        return tuple(f.join(a, b) for f, a, b in zip(self.factors, x, y))

    def meet(self, x, y):
        return tuple(f.meet(a, b) for f, a, b in zip(self.factors, x, y))

    def leq(self, x, y):
        return all(f.leq(a, b) for f, a, b in zip(self.factors, x, y))

    def contains(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == len(self.factors)
            and all(f.contains(a) for f, a in zip(self.factors, x))
        )

    def elements(self):
        if not self.is_finite:
            raise NotEnumerable("not enumerable")
        return [tuple(t) for t in _iproduct(*(f.elements() for f in self.factors))]

    def sample(self, bound: int = 8):
        if self.is_finite:
            return self.elements()
        # symbolic factors get a thinner per-factor grid to keep the product small
        per = max(1, bound // max(1, 2 * (len(self.factors) - 1)))
        grids = [f.elements() if f.is_finite else f.sample(per) for f in self.factors]
        return [tuple(t) for t in _iproduct(*grids)]

    def describe(self):
        return "product(" + ", ".join(f.describe() for f in self.factors) + ")"

    def __eq__(self, other):
        return isinstance(other, ProductAlgebra) and other.factors == self.factors

    def __hash__(self):
        return hash(("product", self.factors))


class GammaLex(MvAlgebra):
    """Unit interval of Z x_lex Z^{r1} x_lex ..., unit (u,0,...,0); payloads are
    integer vectors (h, g...) with 0 <= (h, g...) <= (u, 0...) in the lex order."""

    def __init__(self, height: int, tail_ranks):
        tail_ranks = tuple(tail_ranks)
        if height < 1:
            raise ValueError("unit height must be positive")
        if not tail_ranks or any(r < 1 for r in tail_ranks):
            raise ValueError("tail ranks must be positive")
        self.height = height
        self.tail_ranks = tail_ranks
        self.group = LexGroup((1,) + tail_ranks)
        self.dim = 1 + sum(tail_ranks)
        self._unit = (height,) + (0,) * (self.dim - 1)
        self._zero = (0,) * self.dim

    def zero(self):
        return self._zero

    def one(self):
        return self._unit

    def oplus(self, x, y):
        return self.group.meet(self.group.add(x, y), self._unit)

    def star(self, x):
        return self.group.sub(self._unit, x)

    def join(self, x, y):
        return self.group.join(x, y)

    def meet(self, x, y):
        return self.group.meet(x, y)

    def leq(self, x, y):
        return self.group.leq(x, y)

    def contains(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == self.dim
            and all(isinstance(c, int) for c in x)
            and self.group.is_nonneg(x)
            and self.group.is_nonneg(self.group.sub(self._unit, x))
        )

    def is_infinitesimal(self, x, bound: int = 64):
        structural = x[0] == 0  # below every positive height
        if x != self._zero and self.height == 1 and x[0] == 1:
            structural = False
        if __debug__ and not super().is_infinitesimal(x, min(bound, 16)) and structural:
            raise AssertionError(f"structural infinitesimal test disagrees at {x}")
        return structural

    def sample(self, bound: int = 8):
        """All payloads whose tail coordinates lie in [-bound, bound]."""
        out = []
        tails = _iproduct(range(-bound, bound + 1), repeat=self.dim - 1)
        for tail in tails:
            for h in range(self.height + 1):
                v = (h,) + tail
                if self.contains(v):
                    out.append(v)
        out.sort()
        return out

    def describe(self):
        return f"gamma(unit=({self.height},{','.join('0' for _ in range(self.dim - 1))}), ranks={list(self.tail_ranks)})"

    def __eq__(self, other):
        return (
            isinstance(other, GammaLex)
            and other.height == self.height
            and other.tail_ranks == self.tail_ranks
        )

    def __hash__(self):
        return hash(("gamma", self.height, self.tail_ranks))


class QuotientAlgebra(MvAlgebra):
    """Materialized quotient of a finite algebra by an ideal; payloads are the
    canonical (least, in sorted payload order) representatives of the classes."""

    is_finite = True

    def __init__(self, base: MvAlgebra, ideal_contains, ideal_label: str):
        if not base.is_finite:
            raise NotEnumerable("not enumerable")
        self.base = base
        self.ideal_label = ideal_label
        elems = sorted(base.elements())
        rep = {}
        for e in elems:
            for r in elems:
                if ideal_contains(base.dist(e, r)):
                    rep[e] = r  # least congruent element wins: elems is sorted
                    break
        self._rep = rep
        self._carrier = sorted(set(rep.values()))

    def canon(self, x):
        return self._rep[x]

    def zero(self):
        return self._rep[self.base.zero()]

    def one(self):
        return self._rep[self.base.one()]

    def oplus(self, x, y):
        return self._rep[self.base.oplus(x, y)]

    def star(self, x):
        return self._rep[self.base.star(x)]

    def contains(self, x):
        return x in self._rep and self._rep[x] == x

    def elements(self):
        return list(self._carrier)

    def describe(self):
        return f"quotient({self.base.describe()}, {self.ideal_label})"

    def __eq__(self, other):
        return (
            isinstance(other, QuotientAlgebra)
            and other.base == self.base
            and other._rep == self._rep
        )

    def __hash__(self):
        return hash(("quotient", self.base, tuple(self._carrier)))


class SubAlgebra(MvAlgebra):
    """Subalgebra with an explicitly materialized carrier inside a base algebra."""

    is_finite = True

    def __init__(self, base: MvAlgebra, carrier):
        self.base = base
        self._carrier = sorted(set(carrier))
        for op in ("zero", "one", "oplus", "star", "odot", "join", "meet", "leq", "dist", "ominus"):
            setattr(self, op, getattr(base, op))

    def contains(self, x):
        return x in set(self._carrier)

    def elements(self):
        return list(self._carrier)

    def describe(self):
        return f"subalgebra({self.base.describe()}, {len(self._carrier)} elements)"


def generate_subalgebra(base: MvAlgebra, generators, budget: int = 10000) -> SubAlgebra:
    """Least subset containing the generators and 0, closed under oplus and star."""
    for g in generators:
        if not base.contains(g):
            raise ForeignElement(f"foreign element: {g!r} not in {base.describe()}")
    seen = {base.zero(), base.one()}
    seen.update(generators)
    frontier = set(seen)
    while frontier:
        new = set()
        for a in frontier:
            s = base.star(a)
            if s not in seen:
                new.add(s)
            for b in seen:
                t = base.oplus(a, b)
                if t not in seen:
                    new.add(t)
        for a in seen - frontier:  # oplus pairs straddling old and new
            for b in frontier:
                t = base.oplus(a, b)
                if t not in seen:
                    new.add(t)
        seen |= new
        if len(seen) > budget:
            raise ClosureBudgetExceeded("closure budget exceeded", partial=frozenset(seen))
        frontier = new
    return SubAlgebra(base, seen)


_COFINITE_WINDOW = ("x0", "x1", "x2")


class CofiniteAlgebra(MvAlgebra):
    """Functions into a codomain algebra, written as a default value (the value
    at every unnamed point, including the implicit point at infinity) plus
    exceptions at the named window points. The admissibility predicate on the
    default encodes the cofiniteness condition of the intended function space:
    a function qualifies iff only finitely many points take excluded values, so
    the default itself must be non-excluded."""

    def __init__(self, codomain: MvAlgebra, predicate_tag: str, window=_COFINITE_WINDOW):
        if predicate_tag not in ("komori", "all"):
            raise ValueError(f"unknown default predicate {predicate_tag!r}")
        if predicate_tag == "komori" and not (
            isinstance(codomain, GammaLex) and codomain.dim == 2
        ):
            raise ValueError(
                "komori parity reads (height, germ) pairs; codomain must be a"
                " rank-(1,1) gamma algebra"
            )
        self.codomain = codomain
        self.predicate_tag = predicate_tag
        self.window = tuple(window)

    def admissible_default(self, v) -> bool:
        if self.predicate_tag == "all":
            return True
        # komori parity on K3 payloads (h, g): excluded values are exactly the
        # (h, g) with h and g of different parity
        h, g = v[0], v[1]
        return (h - g) % 2 == 0

    def make(self, default, exceptions=None):
        exceptions = dict(exceptions or {})
        if not self.codomain.contains(default):
            raise ForeignElement(f"foreign element: default {default!r} not in {self.codomain.describe()}")
        for pt, v in exceptions.items():
            if pt not in self.window:
                raise ForeignElement(f"foreign element: exception point {pt!r} outside the window")
            if not self.codomain.contains(v):
                raise ForeignElement(f"foreign element: value {v!r} not in {self.codomain.describe()}")
        if not self.admissible_default(default):
            raise ForeignElement(f"foreign element: default {default!r} fails predicate {self.predicate_tag!r}")
        kept = tuple(sorted((pt, v) for pt, v in exceptions.items() if v != default))
        return (default, kept)

    def value_at(self, x, pt):
        default, exceptions = x
        for p, v in exceptions:
            if p == pt:
                return v
        return default

    def _pointwise(self, op, *xs):
        default = op(*(x[0] for x in xs))
        exceptions = {}
        points = {p for x in xs for p, _ in x[1]}
        for pt in points:
            exceptions[pt] = op(*(self.value_at(x, pt) for x in xs))
        return self.make(default, exceptions)

    def zero(self):
        return (self.codomain.zero(), ())

    def one(self):
        return (self.codomain.one(), ())

    def oplus(self, x, y):
        return self._pointwise(self.codomain.oplus, x, y)

    def star(self, x):
        return self._pointwise(self.codomain.star, x)

    def join(self, x, y):
        return self._pointwise(self.codomain.join, x, y)

    def meet(self, x, y):
        return self._pointwise(self.codomain.meet, x, y)

    def leq(self, x, y):
        return self.codomain.leq(x[0], y[0]) and all(
            self.codomain.leq(self.value_at(x, p), self.value_at(y, p))
            for p in {q for q, _ in x[1]} | {q for q, _ in y[1]}
        )

    def contains(self, x):
        if not (isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], tuple)):
            return False
        default, exceptions = x
        if not self.codomain.contains(default) or not self.admissible_default(default):
            return False
        for pt, v in exceptions:
            if pt not in self.window or not self.codomain.contains(v) or v == default:
                return False
        return exceptions == tuple(sorted(exceptions))

    def sample(self, bound: int = 2):
        """Admissible defaults on a small grid, with single exceptions at every
        window point; a few multi-exception elements cover point interactions.
        The grid is clamped: the sample grows as grid x window and larger bounds
        add nothing structurally new."""
        grid = self.codomain.sample(min(bound, 2))
        defaults = [v for v in grid if self.admissible_default(v)]
        out = []
        for d in defaults:
            out.append(self.make(d))
            for pt in self.window:
                for v in grid:
                    if v != d:
                        out.append(self.make(d, {pt: v}))
        # fully-exceptional elements: zero off a single bump, and the window
        # zeroed out under a unit default (the witnesses point-supported checks need)
        zero, one = self.codomain.zero(), self.codomain.one()
        if self.admissible_default(zero):
            for pt in self.window:
                out.append(self.make(zero, {pt: one}))
        if self.admissible_default(one):
            out.append(self.make(one, {pt: zero for pt in self.window}))
        if defaults and len(grid) > 1:
            d = defaults[0]
            vs = [v for v in grid if v != d]
            if len(self.window) >= 2 and len(vs) >= 2:
                out.append(self.make(d, {self.window[0]: vs[0], self.window[1]: vs[1]}))
        seen, uniq = set(), []
        for x in out:
            if x not in seen:
                seen.add(x)
                uniq.append(x)
        return uniq

    def describe(self):
        return f"cofinite({self.codomain.describe()}, {self.predicate_tag})"

    def __eq__(self, other):
        return (
            isinstance(other, CofiniteAlgebra)
            and other.codomain == self.codomain
            and other.predicate_tag == self.predicate_tag
            and other.window == self.window
        )

    def __hash__(self):
        return hash(("cofinite", self.codomain, self.predicate_tag, self.window))


def enumerate_elements(algebra: MvAlgebra):
    """Complete, duplicate-free, deterministically ordered universe."""
    if not algebra.is_finite:
        raise NotEnumerable("not enumerable")
    return sorted(algebra.elements())


@dataclass(frozen=True)
class Hom:
    """A homomorphism candidate: a total payload map between two algebras.
    Nothing is assumed; check_homomorphism verifies the laws."""

    source: MvAlgebra
    target: MvAlgebra
    mapping: object  # callable payload -> payload
    label: str = ""

    def __call__(self, x):
        return self.mapping(x)

    def compose(self, other: "Hom") -> "Hom":
        return Hom(other.source, self.target, lambda x: self.mapping(other.mapping(x)),
                   label=f"{self.label}∘{other.label}")


def check_homomorphism(h: Hom, pairs=None) -> dict:
    """Verify h(a⊕b) = h(a)⊕h(b), h(a*) = h(a)*, h(0) = 0 on the given pairs
    (exhaustive when the source is finite and pairs is None)."""
    if pairs is None:
        univ = h.source.elements() if h.source.is_finite else h.source.sample()
        pairs = [(a, b) for a in univ for b in univ]
    violations = []
    src, tgt = h.source, h.target
    if h(src.zero()) != tgt.zero():
        violations.append(("zero", src.zero(), h(src.zero())))
    checked_star = set()
    for a, b in pairs:
        if h(src.oplus(a, b)) != tgt.oplus(h(a), h(b)):
            violations.append(("oplus", a, b))
        for x in (a, b):
            if x not in checked_star:
                checked_star.add(x)
                if h(src.star(x)) != tgt.star(h(x)):
                    violations.append(("star", x, None))
    return {"passed": not violations, "violations": violations, "pairs_checked": len(pairs)}
