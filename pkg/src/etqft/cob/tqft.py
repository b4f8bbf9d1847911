"""The 2d TQFT determined by a commutative Frobenius algebra."""

from __future__ import annotations

import random
from fractions import Fraction

from etqft.cob.frobenius import FrobeniusAlgebra, require_valid, swap
from etqft.cob.syntax import GENERATORS, CobTerm, Gen, Id, Par, Seq, parse_cob, typecheck
from etqft.exactlinalg import RationalMatrix, compose, kron
from etqft.report import Report

# (name, lhs, rhs): both sides denote the same cobordism
RELATIONS = (
    ("associativity", "pants . (pants * id(1))", "pants . (id(1) * pants)"),
    ("left unit", "pants . (cap * id(1))", "id(1)"),
    ("right unit", "pants . (id(1) * cap)", "id(1)"),
    ("coassociativity", "(copants * id(1)) . copants", "(id(1) * copants) . copants"),
    ("left counit", "(cup * id(1)) . copants", "id(1)"),
    ("right counit", "(id(1) * cup) . copants", "id(1)"),
    ("frobenius left", "(id(1) * pants) . (copants * id(1))", "copants . pants"),
    ("frobenius right", "(pants * id(1)) . (id(1) * copants)", "copants . pants"),
    ("commutativity", "pants . twist", "pants"),
    ("cocommutativity", "twist . copants", "copants"),
    ("twist involution", "twist . twist", "id(2)"),
    ("twist natural in pants (left)", "twist . (pants * id(1))",
     "(id(1) * pants) . (twist * id(1)) . (id(1) * twist)"),
    ("twist natural in pants (right)", "twist . (id(1) * pants)",
     "(pants * id(1)) . (id(1) * twist) . (twist * id(1))"),
    ("twist natural in copants", "(copants * id(1)) . twist",
     "(id(1) * twist) . (twist * id(1)) . (id(1) * copants)"),
)

# words that present the same closed surface
SYNONYMS = {
    "sphere": (
        "cup . cap",
        "cup . pants . (cap * cap)",
        "cup . (cup * id(1)) . copants . cap",
    ),
    "torus": (
        "cup . pants . copants . cap",
        "cup . pants . twist . copants . cap",
        "cup . pants . copants . pants . (id(1) * cap) . cap",
        "cup . (cup * pants) . (copants * id(1)) . copants . cap",
    ),
    "genus-2": (
        "cup . pants . copants . pants . copants . cap",
        "cup . pants . (pants * id(1)) . (id(1) * copants) . copants . cap",
    ),
}


def surface_word(genus: int) -> str:
    return "cup . " + "pants . copants . " * genus + "cap"


def _generator_matrix(name: str, f: FrobeniusAlgebra) -> RationalMatrix:
    if name == "twist":
        return swap(f.n)
    return {"cap": f.unit, "cup": f.counit, "pants": f.mult, "copants": f.comult}[name]


def _eval(term: CobTerm, f: FrobeniusAlgebra) -> RationalMatrix:
    if isinstance(term, Gen):
        return _generator_matrix(term.name, f)
    if isinstance(term, Id):
        return RationalMatrix.identity(f.n ** term.n)
    if isinstance(term, Seq):
        return compose(_eval(term.left, f), _eval(term.right, f))
    if isinstance(term, Par):
        return kron(_eval(term.left, f), _eval(term.right, f))
    raise TypeError(f"not a cobordism term: {term!r}")


def _term(word: CobTerm | str) -> CobTerm:
    return parse_cob(word) if isinstance(word, str) else word


def evaluate(term: CobTerm | str, f: FrobeniusAlgebra) -> RationalMatrix:
    """Linear map ``V^(x)src -> V^(x)tgt`` assigned to a cobordism word."""
    term = _term(term)
    typecheck(term)
    require_valid(f)
    return _eval(term, f)


def closed_invariant(genus: int, f: FrobeniusAlgebra) -> Fraction:
    if genus < 0:
        raise ValueError("genus must be non-negative")
    return evaluate(surface_word(genus), f)[0, 0]


def relation_suite(f: FrobeniusAlgebra) -> Report:
    """Evaluate both sides of every relation.  Does not require ``f`` to be valid,
    so that a broken algebra shows up as failing relations."""
    rep = Report(f"cobordism relations, algebra of dimension {f.n}")
    for name, lhs, rhs in RELATIONS:
        rep.expect_equal(name, _eval(parse_cob(lhs), f), _eval(parse_cob(rhs), f),
                         f"'{lhs}' vs '{rhs}'")
    return rep


# -- random well-typed words -------------------------------------------------

def _leaf(rng: random.Random, src: int, max_circles: int) -> CobTerm:
    options = [Gen(g) for g, (s, t) in GENERATORS.items() if s == src and t <= max_circles]
    options.append(Id(src))
    return rng.choice(options)


def random_word(rng: random.Random, src: int | None = None, depth: int = 6,
                max_circles: int = 4) -> CobTerm:
    """A random well-typed word with the given source, nesting depth at most
    ``depth`` and never more than ``max_circles`` circles at any stage."""
    if src is None:
        src = rng.randint(0, min(3, max_circles))
    if depth == 0 or rng.random() < 0.2:
        return _leaf(rng, src, max_circles)
    if rng.random() < 0.55:
        right = random_word(rng, src, depth - 1, max_circles)
        left = random_word(rng, typecheck(right)[1], depth - 1, max_circles)
        return Seq(left, right)
    for _ in range(10):
        a = rng.randint(0, src)
        left = random_word(rng, a, depth - 1, max_circles)
        right = random_word(rng, src - a, depth - 1, max_circles)
        if typecheck(left)[1] + typecheck(right)[1] <= max_circles:
            return Par(left, right)
    return Id(src)
