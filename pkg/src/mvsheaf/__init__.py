"""Computational workbench for MV-algebras, their spectra, MV-topologies, and
the sheaf-of-ell-groups representation of locally retractive algebras."""

from .algebra import (
    CofiniteAlgebra,
    FiniteChain,
    GammaLex,
    Hom,
    MvAlgebra,
    MvElement,
    ProductAlgebra,
    QuotientAlgebra,
    SubAlgebra,
    apply,
    check_homomorphism,
    enumerate_elements,
    generate_subalgebra,
)
from .errors import (
    ClosureBudgetExceeded,
    CompletionUnsupported,
    DegenerateUnit,
    ForeignElement,
    IdealLatticeUnknown,
    IsolatedPoint,
    MvError,
    NotEnumerable,
    NotLexicographicIdeal,
    NotLocallyRetractive,
    RequiresExternalEmbedding,
    RetractionInconclusive,
    SpectrumValueError,
    TrivialQuotient,
)
from .groups import LexGroup, UnitalGroup, complete_monoid, delta, gamma
from .spectra import (
    Ideal,
    enumerate_ideals,
    ideal_completion,
    is_local,
    is_locally_retractive,
    is_perfect,
    lex_isomorphism,
    maximal_ideals,
    minimal_primes,
    quotient,
    radical,
    radical_retraction_criterion,
    retraction_search,
    spectrum_report,
    subdirect_embedding,
)
from .topology import FuzzySet, MvTopology, generate_topology, mv_spectrum, zariski_max
from .sheaves import Presheaf, SheafSpace, check_presheaf, check_sheaf, stalk_at
from .representation import (
    RepresentedAlgebra,
    build_sheaf,
    build_sheaf_space,
    embed_into_retractive,
    germ_at,
    local_pipelines,
    represent,
)
from .verify import verify_all

__all__ = [name for name in dir() if not name.startswith("_")]
