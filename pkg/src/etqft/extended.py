"""
Extended 2d TQFTs valued in 2-vector spaces.

A Frobenius object in 2Vect is a carrier ``T`` with four internal functors
between tensor powers of ``T`` (left-nested, ``T^0`` the unit).  A cobordism
word is evaluated by the same recursion as the ordinary evaluator: ``.``
composes functors, ``*`` tensors them and then regroups the bracketing with
associators, ``twist`` is the symmetry of ``T (x) T``.

For discrete carriers every regrouping is an identity and ``F1 = F0``, so
``restrict`` recovers the ordinary linear map.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from etqft.cob.frobenius import FrobeniusAlgebra
from etqft.cob.frobenius import require_valid as require_valid_algebra
from etqft.cob.syntax import CobTerm, Gen, Id, Par, Seq, parse_cob, typecheck
from etqft.cob.tqft import RELATIONS
from etqft.errors import RestrictionError, ShapeError, ValidationError
from etqft.exactlinalg import RationalMatrix, compose_all
from etqft.monoidal import (
    associator,
    invert_functor,
    tensor_functors,
    tensor_power,
    tensor_presentation,
    whisker_1cell,
)
from etqft.report import Report
from etqft.twocells import (
    InternalFunctor,
    compose_functors,
    functor_from_chain_map,
    functor_from_json,
    functor_to_json,
    id_functor,
    validate_functor,
)
from etqft.twovect import TwoVect, discrete, is_canonical, presentation
from etqft.twovect import from_json as twovect_from_json
from etqft.twovect import to_json as twovect_to_json

STRUCTURE = {"unit": (0, 1), "mult": (2, 1), "counit": (1, 0), "comult": (1, 2)}
_GENERATOR_MAP = {"cap": "unit", "pants": "mult", "cup": "counit", "copants": "comult"}

# which relation words witness which Frobenius law
LAW_RELATIONS = {
    "associativity": ("associativity",),
    "unit": ("left unit", "right unit"),
    "coassociativity": ("coassociativity",),
    "counit": ("left counit", "right counit"),
    "frobenius": ("frobenius left", "frobenius right"),
    "commutativity": ("commutativity",),
}


@dataclass(frozen=True)
class FrobeniusObject2Vect:
    carrier: TwoVect
    unit: InternalFunctor
    mult: InternalFunctor
    counit: InternalFunctor
    comult: InternalFunctor

    def __post_init__(self):
        for name, (src, tgt) in STRUCTURE.items():
            F = getattr(self, name)
            if F.dom != self.power(src) or F.cod != self.power(tgt):
                raise ShapeError(f"{name} must run from T^{src} to T^{tgt}")

    def power(self, n: int) -> TwoVect:
        return tensor_power(self.carrier, n)


@dataclass(frozen=True)
class ExtendedValue:
    functor: InternalFunctor
    src: int
    tgt: int


# -- structural isomorphisms ---------------------------------------------------

@lru_cache(maxsize=256)
def swap_functor(T: TwoVect) -> InternalFunctor:
    """The symmetry ``T (x) T -> T (x) T``."""
    tc = presentation(T)
    tp = tensor_presentation(tc, tc)
    v0, v1 = tc.v0, tc.v1
    perm0 = [j * v0 + i for i in range(v0) for j in range(v0)]
    # flat arrows: T1 (x) T0 block, then T0 (x) T1 block
    first = [v1 * v0 + j * v1 + i for i in range(v1) for j in range(v0)]
    second = [j * v0 + i for i in range(v0) for j in range(v1)]
    flat = RationalMatrix.permutation(first + second)
    f1 = compose_all(tp.proj, flat, tp.sect)
    return functor_from_chain_map(RationalMatrix.permutation(perm0), f1, tp.cc, tp.cc)


@lru_cache(maxsize=1024)
def regroup(T: TwoVect, a: int, c: int) -> InternalFunctor:
    """``T^a (x) T^c -> T^(a+c)`` built from associators."""
    if a == 0 or c <= 1:
        # I (x) X = X, X (x) I = X and T^a (x) T = T^(a+1) hold on the nose
        X = tensor_power(T, a + c)
        return id_functor(X)
    back = invert_functor(associator(tensor_power(T, a), tensor_power(T, c - 1), T))
    return compose_functors(whisker_1cell(regroup(T, a, c - 1), T, "right"), back)


def regroup_inverse(T: TwoVect, a: int, c: int) -> InternalFunctor:
    return invert_functor(regroup(T, a, c))


def tensor_in_powers(f: InternalFunctor, fa: tuple[int, int], g: InternalFunctor,
                     ga: tuple[int, int], T: TwoVect) -> InternalFunctor:
    """``f (x) g`` as a functor ``T^(a+c) -> T^(b+d)``."""
    (a, b), (c, d) = fa, ga
    return compose_functors(regroup(T, b, d),
                            compose_functors(tensor_functors(f, g), regroup_inverse(T, a, c)))


# -- evaluation ----------------------------------------------------------------

def _eval(term: CobTerm, fo: FrobeniusObject2Vect) -> tuple[InternalFunctor, int, int]:
    if isinstance(term, Gen):
        if term.name == "twist":
            return swap_functor(fo.carrier), 2, 2
        name = _GENERATOR_MAP[term.name]
        return getattr(fo, name), *STRUCTURE[name]
    if isinstance(term, Id):
        return id_functor(fo.power(term.n)), term.n, term.n
    if isinstance(term, Seq):
        g, _, tgt = _eval(term.left, fo)
        f, src, _ = _eval(term.right, fo)
        return compose_functors(g, f), src, tgt
    if isinstance(term, Par):
        f, a, b = _eval(term.left, fo)
        g, c, d = _eval(term.right, fo)
        return tensor_in_powers(f, (a, b), g, (c, d), fo.carrier), a + c, b + d
    raise TypeError(f"not a cobordism term: {term!r}")


def evaluate_extended(term: CobTerm | str, fo: FrobeniusObject2Vect) -> ExtendedValue:
    term = parse_cob(term) if isinstance(term, str) else term
    typecheck(term)
    require_valid(fo)
    F, src, tgt = _eval(term, fo)
    return ExtendedValue(F, src, tgt)


def restrict(v: ExtendedValue | InternalFunctor) -> RationalMatrix:
    """The underlying linear map, defined when both boundaries are discrete."""
    F = v.functor if isinstance(v, ExtendedValue) else v
    if not (F.dom.is_discrete and F.cod.is_discrete):
        raise RestrictionError("boundary is not discrete; F0 alone does not determine the functor")
    return F.F0


# -- validation ----------------------------------------------------------------

def validate_frobenius_object(fo: FrobeniusObject2Vect) -> Report:
    rep = Report(f"Frobenius object on {fo.carrier!r}")
    rep.record("canonical carrier", is_canonical(fo.carrier),
               "carrier is not in canonical chain-complex form")
    for name in STRUCTURE:
        fr = validate_functor(getattr(fo, name))
        rep.record(f"{name} is a functor", fr.passed, f"fails {', '.join(fr.failed())}")
    if not rep.passed:
        return rep
    words = {name: (lhs, rhs) for name, lhs, rhs in RELATIONS}
    for law, names in LAW_RELATIONS.items():
        for name in names:
            lhs, rhs = words[name]
            F, _, _ = _eval(parse_cob(lhs), fo)
            G, _, _ = _eval(parse_cob(rhs), fo)
            ok = F == G
            rep.record(law, ok, None if ok else f"'{lhs}' vs '{rhs}' differ as (F0, F1)")
    return rep


@lru_cache(maxsize=64)
def is_valid(fo: FrobeniusObject2Vect) -> bool:
    return validate_frobenius_object(fo).passed


def require_valid(fo: FrobeniusObject2Vect) -> FrobeniusObject2Vect:
    if not is_valid(fo):
        rep = validate_frobenius_object(fo)
        raise ValidationError(f"invalid Frobenius object: failed {', '.join(rep.failed())}", rep)
    return fo


def relation_suite_extended(fo: FrobeniusObject2Vect) -> Report:
    rep = Report(f"cobordism relations in 2Vect on {fo.carrier!r}")
    for name, lhs, rhs in RELATIONS:
        F, _, _ = _eval(parse_cob(lhs), fo)
        G, _, _ = _eval(parse_cob(rhs), fo)
        rep.expect_equal(name, F.F0, G.F0, f"F0 of '{lhs}' vs '{rhs}'")
        rep.expect_equal(name, F.F1, G.F1, f"F1 of '{lhs}' vs '{rhs}'")
    return rep


def lift_discrete(f: FrobeniusAlgebra) -> FrobeniusObject2Vect:
    require_valid_algebra(f)
    T = discrete(f.n)
    maps = {}
    for name, (src, tgt) in STRUCTURE.items():
        m = getattr(f, name)
        maps[name] = InternalFunctor(tensor_power(T, src), tensor_power(T, tgt), m, m)
    return FrobeniusObject2Vect(T, **maps)


# -- file form -----------------------------------------------------------------

def save_frobenius_object(fo: FrobeniusObject2Vect, directory) -> Path:
    """Write ``carrier.json``, one functor file per structure map and an index
    ``frobenius-object.json`` referencing them; returns the index path."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    (out / "carrier.json").write_text(json.dumps(twovect_to_json(fo.carrier), indent=1) + "\n")
    index = {"carrier": "carrier.json"}
    for name in STRUCTURE:
        body = functor_to_json(getattr(fo, name), boundaries=False)
        (out / f"{name}.json").write_text(json.dumps(body, indent=1) + "\n")
        index[name] = f"{name}.json"
    path = out / "frobenius-object.json"
    path.write_text(json.dumps(index, indent=1) + "\n")
    return path


def frobenius_object_from_json(obj: dict, base=None) -> FrobeniusObject2Vect:
    """Index form: carrier and structure maps inline or as relative paths.
    Functor boundaries are the carrier powers and need not be spelled out."""
    base = Path(base or ".")

    def load(ref):
        return json.loads((base / ref).read_text()) if isinstance(ref, str) else ref

    try:
        T = twovect_from_json(load(obj["carrier"]))
        maps = {}
        for name, (src, tgt) in STRUCTURE.items():
            maps[name] = functor_from_json(load(obj[name]), base, tensor_power(T, src),
                                           tensor_power(T, tgt))
    except KeyError as exc:
        raise ShapeError(f"Frobenius-object file is missing field {exc}") from None
    return FrobeniusObject2Vect(T, **maps)


def load_frobenius_object(path) -> FrobeniusObject2Vect:
    path = Path(path)
    return frobenius_object_from_json(json.loads(path.read_text()), path.parent)
