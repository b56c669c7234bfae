"""Batch interface: parse .mvalg algebra documents, run the pipelines, emit
JSON reports.

Exit codes: 0 all verdicts pass, 1 a check failed, 2 inconclusive or
unsupported for the requested input, 3 usage or document errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import algebra as alg
from . import representation
from . import spectra
from . import verify
from .errors import (
    ClosureBudgetExceeded,
    CompletionUnsupported,
    ForeignElement,
    IdealLatticeUnknown,
    NotEnumerable,
    NotLocallyRetractive,
    RequiresExternalEmbedding,
    RetractionInconclusive,
)

SCHEMA = "mvsheaf-report/1"

_INCONCLUSIVE = (
    ClosureBudgetExceeded,
    CompletionUnsupported,
    IdealLatticeUnknown,
    NotEnumerable,
    NotLocallyRetractive,
    RequiresExternalEmbedding,
    RetractionInconclusive,
)


# ---------------------------------------------------------------------------
# .mvalg parsing

class DocError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.message = message
        self.line = line
        self.col = col


_PUNCT = set("()[]=,-")


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), line, start_col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if c in _PUNCT:
            tokens.append((c, c, line, start_col))
            i += 1
            col += 1
            continue
        raise DocError(f"unexpected character {c!r}", line, start_col)
    tokens.append(("EOF", None, line, col))
    return tokens


class _Parser:
    """Recursive descent over the algebra grammar; definitions are built
    eagerly so later names can reference earlier ones."""

    def __init__(self, text: str, closure_budget: int = 512):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.defs: dict = {}
        self.order: list = []
        self.closure_budget = closure_budget

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, what=None):
        t = self.next()
        if t[0] != kind:
            found = "end of document" if t[0] == "EOF" else repr(t[1])
            raise DocError(f"expected {what or kind}, found {found}", t[2], t[3])
        return t

    def error(self, message, tok=None):
        t = tok or self.peek()
        raise DocError(message, t[2], t[3])

    def parse_document(self):
        while self.peek()[0] != "EOF":
            name_tok = self.expect("NAME", "a definition name")
            self.expect("=", "'='")
            a = self.parse_expr()
            self.defs[name_tok[1]] = a
            self.order.append(name_tok[1])
        return self.defs, self.order

    def parse_int(self):
        neg = False
        if self.peek()[0] == "-":
            self.next()
            neg = True
        t = self.expect("INT", "an integer")
        return -t[1] if neg else t[1]

    def parse_int_tuple(self):
        self.expect("(", "'('")
        out = [self.parse_int()]
        while self.peek()[0] == ",":
            self.next()
            out.append(self.parse_int())
        self.expect(")", "')'")
        return tuple(out)

    def parse_int_list(self):
        self.expect("[", "'['")
        out = [self.parse_int()]
        while self.peek()[0] == ",":
            self.next()
            out.append(self.parse_int())
        self.expect("]", "']'")
        return out

    def parse_element(self):
        if self.peek()[0] == "(":
            self.next()
            out = [self.parse_element()]
            while self.peek()[0] == ",":
                self.next()
                out.append(self.parse_element())
            self.expect(")", "')'")
            return tuple(out)
        return self.parse_int()

    def parse_expr(self):
        t = self.expect("NAME", "an algebra expression")
        head = t[1]
        if head == "chain":
            self.expect("(", "'('")
            n_tok = self.peek()
            n = self.parse_int()
            self.expect(")", "')'")
            if n <= 0:
                raise DocError("chain rank must be positive", n_tok[2], n_tok[3])
            return alg.FiniteChain(n)
        if head == "product":
            self.expect("(", "'('")
            factors = [self.parse_expr()]
            while self.peek()[0] == ",":
                self.next()
                factors.append(self.parse_expr())
            self.expect(")", "')'")
            return alg.ProductAlgebra(factors)
        if head == "gamma":
            self.expect("(", "'('")
            key = self.expect("NAME", "'unit'")
            if key[1] != "unit":
                self.error("expected 'unit'", key)
            self.expect("=", "'='")
            unit = self.parse_int_tuple()
            self.expect(",", "','")
            key = self.expect("NAME", "'ranks'")
            if key[1] != "ranks":
                self.error("expected 'ranks'", key)
            self.expect("=", "'='")
            ranks = self.parse_int_list()
            self.expect(")", "')'")
            if unit[0] <= 0 or any(v != 0 for v in unit[1:]):
                raise DocError("gamma unit must be (u, 0, ...) with u positive",
                               t[2], t[3])
            if any(r <= 0 for r in ranks):
                raise DocError("gamma ranks must be positive", t[2], t[3])
            if len(unit) != 1 + sum(ranks):
                raise DocError("gamma unit length must be 1 + sum(ranks)",
                               t[2], t[3])
            return alg.GammaLex(unit[0], tuple(ranks))
        if head == "quotient":
            self.expect("(", "'('")
            base = self.parse_expr()
            self.expect(",", "','")
            sel = self.expect("NAME", "an ideal selector")
            if sel[1] == "zero":
                ideal = spectra.zero_ideal(base)
            elif sel[1] == "radical":
                ideal = spectra.radical(base)
            elif sel[1] == "maximal":
                self.expect("(", "'('")
                idx = self.parse_int()
                self.expect(")", "')'")
                maxes = spectra.maximal_ideals(base)
                if not 0 <= idx < len(maxes):
                    raise DocError(
                        f"maximal index {idx} out of range (algebra has"
                        f" {len(maxes)})", sel[2], sel[3])
                ideal = maxes[idx]
            else:
                raise DocError(f"unknown selector {sel[1]!r}", sel[2], sel[3])
            self.expect(")", "')'")
            if not ideal.is_proper:
                raise DocError("trivial quotient", sel[2], sel[3])
            q, _ = spectra.quotient(base, ideal)
            return q
        if head == "subalgebra":
            self.expect("(", "'('")
            base = self.parse_expr()
            self.expect(",", "','")
            self.expect("[", "'['")
            gens = [self.parse_element()]
            while self.peek()[0] == ",":
                self.next()
                gens.append(self.parse_element())
            self.expect("]", "']'")
            self.expect(")", "')'")
            try:
                return alg.generate_subalgebra(base, gens, self.closure_budget)
            except ForeignElement as e:
                raise DocError(str(e), t[2], t[3])
        if head == "cofinite":
            self.expect("(", "'('")
            cod = self.parse_expr()
            self.expect(",", "','")
            tag = self.expect("NAME", "a default predicate tag")
            self.expect(")", "')'")
            try:
                return alg.CofiniteAlgebra(cod, tag[1])
            except ValueError as e:
                raise DocError(str(e), tag[2], tag[3])
        if head in self.defs:
            return self.defs[head]
        self.error(f"unknown name {head!r}", t)


def parse_document(text: str, closure_budget: int = 512):
    return _Parser(text, closure_budget).parse_document()


# ---------------------------------------------------------------------------
# JSON-friendly rendering

def _keystr(k):
    if isinstance(k, str):
        return k
    return repr(k)


def jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    if isinstance(x, dict):
        return {_keystr(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=repr)
    if isinstance(x, alg.Hom):
        return x.label
    if isinstance(x, alg.MvAlgebra):
        return x.describe()
    if callable(x):
        return getattr(x, "__name__", "callable")
    return repr(x)


# ---------------------------------------------------------------------------
# commands

def _cmd_spectrum(a, flags):
    report = spectra.spectrum_report(a, flags.sample_bound)
    primary_flags = [row["primary"] for row in report["local_kernels"].values()]
    report["passed"] = all(p is not False for p in primary_flags)
    return report


def _cmd_topology(a, flags):
    return verify.spectrum_suite(a, flags.sample_bound, flags.open_cap)


def _cmd_sheaf_check(a, flags):
    return verify.sheaf_suite(a, flags.sample_bound, flags.open_cap)


def _cmd_represent(a, flags):
    rp, _ = representation.represent(a, flags.sample_bound)
    report = dict(rp.report)
    if isinstance(a, alg.GammaLex) and a.height == 2 and a.tail_ranks == (1,):
        report["pinned_values"] = verify._pinned_k3_values(rp)
        report["passed"] = report["passed"] and report["pinned_values"]["passed"]
    universe = a.elements() if a.is_finite else a.sample(flags.sample_bound)
    report["dump"] = representation.representation_dump(rp, universe[:64])
    return report


def _cmd_verify_all(a, flags):
    report = verify.verify_all(a, flags.sample_bound, flags.open_cap)
    return report


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "topology": _cmd_topology,
    "sheaf-check": _cmd_sheaf_check,
    "represent": _cmd_represent,
    "verify-all": _cmd_verify_all,
}


def _exit_code(verdict: dict) -> int:
    if verdict.get("error") is not None:
        return 2
    if verdict.get("failed") or verdict.get("passed") is False:
        return 1
    if verdict.get("inconclusive"):
        return 2
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mvsheaf",
        description="Exact verification pipelines for desk-scale MV-algebras.")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("file", help=".mvalg document")
    parser.add_argument("--algebra", help="definition name inside the document")
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument("--sample-bound", type=int, default=8)
    parser.add_argument("--closure-budget", type=int, default=512)
    parser.add_argument("--open-cap", type=int, default=256)
    try:
        flags = parser.parse_args(argv)
    except SystemExit as e:
        # argparse uses 2 for usage errors; 2 means inconclusive here
        return 3 if e.code == 2 else (e.code or 0)

    t0 = time.monotonic()
    try:
        with open(flags.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"mvsheaf: {e}", file=sys.stderr)
        return 3
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    try:
        defs, order = parse_document(text, flags.closure_budget)
    except DocError as e:
        print(f"mvsheaf: {flags.file}: {e}", file=sys.stderr)
        return 3
    except ClosureBudgetExceeded as e:
        print(f"mvsheaf: {flags.file}: {e}", file=sys.stderr)
        return 2
    if not order:
        print("mvsheaf: document defines no algebras", file=sys.stderr)
        return 3
    if flags.algebra is None:
        if len(order) > 1:
            print("mvsheaf: document defines several algebras; pick one with"
                  f" --algebra {{{', '.join(order)}}}", file=sys.stderr)
            return 3
        name = order[0]
    else:
        name = flags.algebra
        if name not in defs:
            print(f"mvsheaf: no definition named {name!r}; document defines"
                  f" {', '.join(order)}", file=sys.stderr)
            return 3
    a = defs[name]
    parse_s = time.monotonic() - t0

    t1 = time.monotonic()
    error = None
    try:
        verdict = _COMMANDS[flags.command](a, flags)
    except _INCONCLUSIVE as e:
        error = f"{type(e).__name__}: {e}"
        verdict = {"error": error, "passed": None}
    run_s = time.monotonic() - t1

    report = {
        "schema": SCHEMA,
        "command": flags.command,
        "input": {
            "path": flags.file,
            "sha256": digest,
            "algebra": name,
            "expression": a.describe(),
        },
        "flags": {
            "sample_bound": flags.sample_bound,
            "closure_budget": flags.closure_budget,
            "open_cap": flags.open_cap,
        },
        "verdict": jsonable(verdict),
        "timings": {"parse_s": round(parse_s, 6), "run_s": round(run_s, 6)},
    }
    body = json.dumps(report, indent=2, sort_keys=True)
    if flags.out:
        with open(flags.out, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
    else:
        print(body)
    return _exit_code(verdict)


if __name__ == "__main__":
    sys.exit(main())
