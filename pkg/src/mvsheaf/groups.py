"""Abelian lattice-ordered groups given as lexicographic towers of integer blocks.

A shape ``(r1, ..., rk)`` denotes Z^r1 x_lex ... x_lex Z^rk: blocks compare
lexicographically and coordinates inside a block compare pointwise.  Such an
order is a lattice order exactly when every block before the last has rank 1,
so shapes are validated accordingly.  The trivial group is ``(0,)``.

Elements are plain tuples of ints of length ``dim``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import CompletionUnsupported, DegenerateUnit


@dataclass(frozen=True)
class LexGroup:
    ranks: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if ranks == (0,):
            return
        if not ranks or any(r < 1 for r in ranks):
            raise ValueError(f"invalid block ranks {ranks!r}")
        if any(r != 1 for r in ranks[:-1]):
            raise ValueError(
                "only the final block may have rank > 1; otherwise the "
                "lexicographic order is not a lattice order"
            )

    @property
    def is_trivial(self):
        return self.ranks == (0,)

    @property
    def dim(self):
        return 0 if self.is_trivial else sum(self.ranks)

    @property
    def head(self):
        """Number of totally ordered scalar coordinates before the final block."""
        return 0 if self.is_trivial else len(self.ranks) - 1

    @property
    def is_chain(self):
        return self.is_trivial or self.ranks[-1] == 1

    def zero(self):
        return (0,) * self.dim

    def contains(self, v):
        return (
            isinstance(v, tuple)
            and len(v) == self.dim
            and all(isinstance(c, int) and not isinstance(c, bool) for c in v)
        )

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def scale(self, n, x):
        return tuple(n * a for a in x)

    def is_nonneg(self, v):
        for i in range(self.head):
            if v[i] != 0:
                return v[i] > 0
        return all(c >= 0 for c in v[self.head:])

    def leq(self, x, y):
        return self.is_nonneg(self.sub(y, x))

    def join(self, x, y):
        for i in range(self.head):
            if x[i] != y[i]:
                return x if x[i] > y[i] else y
        return x[: self.head] + tuple(max(a, b) for a, b in zip(x[self.head:], y[self.head:]))

    def meet(self, x, y):
        for i in range(self.head):
            if x[i] != y[i]:
                return x if x[i] < y[i] else y
        return x[: self.head] + tuple(min(a, b) for a, b in zip(x[self.head:], y[self.head:]))

    def comparable(self, x, y):
        return self.leq(x, y) or self.leq(y, x)


TRIVIAL_GROUP = LexGroup((0,))


@dataclass(frozen=True)
class UnitalGroup:
    """A lex group with a designated strong unit (on the represented fragment)."""

    group: LexGroup
    unit: tuple[int, ...]

    def __post_init__(self):
        if not self.group.contains(self.unit):
            raise ValueError(f"unit {self.unit!r} is not a group element")
        if self.group.is_trivial or not self.group.is_nonneg(self.unit) or self.unit == self.group.zero():
            raise DegenerateUnit(f"degenerate unit {self.unit!r}")


# ----------------------------------------------------------------------------
# Monoid descriptors and structural group completion.
#
# The completion is deliberately structural rather than a generic Grothendieck
# construction: it pattern-matches the cancellative monoid shapes that occur
# as radicals of the supported algebra kinds and refuses everything else.
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class TrivialMonoid:
    pass


@dataclass(frozen=True)
class ConeMonoid:
    """The positive cone of a lex group, elements being group vectors."""

    group: LexGroup


@dataclass(frozen=True)
class ScaledNatMonoid:
    """Multiples of ``step`` inside the naturals, elements being 1-tuples."""

    step: int


@dataclass(frozen=True)
class ProductMonoid:
    """A finite product of monoids ordered pointwise across the factors."""

    factors: tuple


@dataclass(frozen=True)
class Completion:
    """An l-group hull of a monoid.

    ``embed`` maps monoid elements into ``group``; ``section`` maps vectors in
    the positive cone of ``group`` back to monoid elements.
    """

    group: LexGroup
    embed: Callable
    section: Callable


def complete_monoid(monoid) -> Completion:
    if isinstance(monoid, TrivialMonoid):
        return Completion(TRIVIAL_GROUP, lambda v: (), lambda v: ())
    if isinstance(monoid, ConeMonoid):
        g = monoid.group
        return Completion(g, lambda v: v, lambda v: v)
    if isinstance(monoid, ScaledNatMonoid):
        step = monoid.step
        g = LexGroup((1,))
        return Completion(g, lambda v: (v[0] // step,), lambda v: (v[0] * step,))
    if isinstance(monoid, ProductMonoid):
        parts = [complete_monoid(f) for f in monoid.factors]
        if any(not p.group.is_trivial and p.group.head > 0 for p in parts):
            raise CompletionUnsupported(
                "completion unsupported: product with a lexicographically "
                "ordered factor is not a pointwise lattice of supported shape"
            )
        dims_in = []
        for f in monoid.factors:
            if isinstance(f, TrivialMonoid):
                dims_in.append(0)
            elif isinstance(f, ConeMonoid):
                dims_in.append(f.group.dim)
            elif isinstance(f, ScaledNatMonoid):
                dims_in.append(1)
            else:
                raise CompletionUnsupported(f"completion unsupported: {f!r}")
        total = sum(p.group.dim for p in parts)
        g = LexGroup((total,)) if total else TRIVIAL_GROUP

        def embed(v, parts=parts, dims_in=dims_in):
            out = []
            pos = 0
            for p, d in zip(parts, dims_in):
                out.extend(p.embed(v[pos : pos + d]))
                pos += d
            return tuple(out)

        def section(v, parts=parts):
            out = []
            pos = 0
            for p in parts:
                d = p.group.dim
                out.extend(p.section(v[pos : pos + d]))
                pos += d
            return tuple(out)

        return Completion(g, embed, section)
    raise CompletionUnsupported(f"completion unsupported: {monoid!r}")


# ----------------------------------------------------------------------------
# The unit-interval functor and its inverse-direction companions live here;
# they return algebra descriptors, so the import is deferred to avoid a cycle.
# ----------------------------------------------------------------------------


def gamma(ug: UnitalGroup):
    """The MV-algebra on the interval [0, unit] of a unital lex group."""
    from . import algebra

    g = ug.group
    if any(c != 0 for c in ug.unit[1:]):
        raise ValueError(
            "unsupported unit shape: the unit must be concentrated in the "
            "leading scalar coordinate"
        )
    u = ug.unit[0]
    if u <= 0:
        raise DegenerateUnit(f"degenerate unit {ug.unit!r}")
    if g.ranks == (1,):
        return algebra.FiniteChain(u)
    if g.ranks[0] != 1:
        raise ValueError("the leading block must be a single totally ordered coordinate")
    return algebra.GammaLex(u, g.ranks[1:])


def delta(g: LexGroup):
    """The perfect algebra Gamma(Z x_lex G, (1, 0)) built from a lex group."""
    from . import algebra

    if g.is_trivial:
        return algebra.FiniteChain(1)
    return algebra.GammaLex(1, g.ranks)
