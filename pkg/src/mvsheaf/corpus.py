"""The desk-scale corpus every acceptance sweep runs over: finite chains up to
rank six, products up to 64 elements, four lex-unit algebras, a symbolic
product, and the two cofinite function algebras (the parity-constrained one is
the counterexample)."""

from __future__ import annotations

from . import algebra as alg


def k3() -> alg.GammaLex:
    return alg.GammaLex(2, (1,))


def chang() -> alg.GammaLex:
    return alg.GammaLex(1, (1,))


def finite_corpus():
    chains = [(f"c{n}", alg.FiniteChain(n)) for n in range(1, 7)]
    products = [
        ("c1xc3", alg.ProductAlgebra([alg.FiniteChain(1), alg.FiniteChain(3)])),
        ("c2xc4", alg.ProductAlgebra([alg.FiniteChain(2), alg.FiniteChain(4)])),
        ("c6xc6", alg.ProductAlgebra([alg.FiniteChain(6), alg.FiniteChain(6)])),
        ("c3cubed", alg.ProductAlgebra([alg.FiniteChain(3)] * 3)),
    ]
    return chains + products


def symbolic_corpus():
    return [
        ("k3", k3()),
        ("chang", chang()),
        ("g12", alg.GammaLex(1, (2,))),
        ("g211", alg.GammaLex(2, (1, 1))),
        ("k3xk3", alg.ProductAlgebra([k3(), k3()])),
        ("cof_komori", alg.CofiniteAlgebra(k3(), "komori")),
        ("cof_all", alg.CofiniteAlgebra(k3(), "all")),
    ]


def corpus():
    return finite_corpus() + symbolic_corpus()


def by_name(name: str) -> alg.MvAlgebra:
    for n, a in corpus():
        if n == name:
            return a
    raise KeyError(name)
