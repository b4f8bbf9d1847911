"""
2-vector spaces: categories internal to finite-dimensional rational vector
spaces, plus their presentation as 2-term chain complexes.

Conventions
-----------
A pair of arrows ``(g, f)`` is composable when ``s g = t f``; the composite
``g . f`` runs from ``s f`` to ``t g``.  Pairs live in the pullback of ``s``
and ``t`` (``PullbackWitness``), ``p`` picking out ``g`` and ``q`` picking
out ``f``.  ``comp`` is the composition map written in the witness's
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from etqft.errors import PreconditionError, ShapeError, ValidationError
from etqft.exactlinalg import (
    PullbackWitness,
    RationalMatrix,
    compose,
    compose_all,
    hstack,
    kernel_basis,
    left_inverse,
    pullback,
    vstack,
)
from etqft.report import Report

I = RationalMatrix.identity
Z = RationalMatrix.zeros

AXIOMS = ("identity boundary", "composite boundary", "associativity",
          "left unit", "right unit")


@dataclass(frozen=True, eq=False)
class TwoVect:
    c0: int
    c1: int
    s: RationalMatrix
    t: RationalMatrix
    i: RationalMatrix
    comp: RationalMatrix

    def __post_init__(self):
        c0, c1 = self.c0, self.c1
        for name, m, shape in (("s", self.s, (c0, c1)), ("t", self.t, (c0, c1)),
                               ("i", self.i, (c1, c0))):
            if m.shape != shape:
                raise ShapeError(f"{name} is {m.rows}x{m.cols}, expected {shape[0]}x{shape[1]}")
        pb = pullback(self.s, self.t)
        if self.comp.shape != (c1, pb.dim):
            raise ShapeError(f"comp is {self.comp.rows}x{self.comp.cols}, "
                             f"expected {c1}x{pb.dim} (pullback coordinates)")
        object.__setattr__(self, "pb", pb)

    pb: PullbackWitness = field(init=False, repr=False)

    def _key(self):
        return (self.c0, self.c1, self.s, self.t, self.i, self.comp)

    def __eq__(self, other):
        if not isinstance(other, TwoVect):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self._key())
            self.__dict__["_hash"] = h
        return h

    def __repr__(self):
        return f"TwoVect(c0={self.c0}, c1={self.c1})"

    def composite(self, g: RationalMatrix, f: RationalMatrix) -> RationalMatrix:
        """The map ``x -> g(x) . f(x)`` for maps ``g, f`` into composable pairs."""
        return compose(self.comp, self.pb.pair(g, f))

    @property
    def is_discrete(self) -> bool:
        return (self.c0 == self.c1 and self.s == I(self.c0) and self.t == I(self.c0)
                and self.i == I(self.c0))


@dataclass(frozen=True)
class ChainComplex2:
    """``d: V1 -> V0``."""
    v0: int
    v1: int
    d: RationalMatrix

    def __post_init__(self):
        if self.d.shape != (self.v0, self.v1):
            raise ShapeError(f"d is {self.d.rows}x{self.d.cols}, expected {self.v0}x{self.v1}")

    @classmethod
    def of(cls, d: RationalMatrix) -> "ChainComplex2":
        return cls(d.rows, d.cols, d)


def validate(tv: TwoVect) -> Report:
    """Check the five internal-category axiom families exactly."""
    rep = Report(f"2-vector space c0={tv.c0} c1={tv.c1}")
    for name in AXIOMS:
        rep.check(name)
    s, t, i, comp, pb = tv.s, tv.t, tv.i, tv.comp, tv.pb
    n0, n1 = I(tv.c0), I(tv.c1)

    rep.expect_equal("identity boundary", compose(s, i), n0, "s.i")
    rep.expect_equal("identity boundary", compose(t, i), n0, "t.i")

    rep.expect_equal("composite boundary", compose(s, comp), compose(s, pb.q), "s.comp vs s.q")
    rep.expect_equal("composite boundary", compose(t, comp), compose(t, pb.p), "t.comp vs t.p")

    rep.expect_equal("left unit", tv.composite(compose(i, t), n1), n1, "i(t f).f")
    rep.expect_equal("right unit", tv.composite(n1, compose(i, s)), n1, "g.i(s g)")

    _check_associativity(tv, rep)
    return rep


def _check_associativity(tv: TwoVect, rep: Report):
    c1 = tv.c1
    s, t, pb = tv.s, tv.t, tv.pb
    zero = Z(tv.c0, c1)
    constraint = vstack(hstack(s, -t, zero), hstack(zero, s, -t))
    triples = kernel_basis(constraint)
    n = triples.cols
    h = triples.block(0, c1, 0, n)
    g = triples.block(c1, 2 * c1, 0, n)
    f = triples.block(2 * c1, 3 * c1, 0, n)
    gf = tv.composite(g, f)
    hg = tv.composite(h, g)
    if not pb.contains(h, gf):
        rep.record("associativity", False, "(h, g.f) is not composable")
        return
    if not pb.contains(hg, f):
        rep.record("associativity", False, "(h.g, f) is not composable")
        return
    rep.expect_equal("associativity", tv.composite(h, gf), tv.composite(hg, f),
                     "h.(g.f) vs (h.g).f on triple pullback basis")


def require_valid(tv: TwoVect) -> TwoVect:
    rep = validate(tv)
    if not rep.passed:
        raise ValidationError(f"invalid 2-vector space: failed {', '.join(rep.failed())}", rep)
    return tv


def forced_composition(s: RationalMatrix, t: RationalMatrix, i: RationalMatrix) -> RationalMatrix:
    """The only composition compatible with ``s, t, i``: ``g . f = g + f - i t f``."""
    if s.shape != t.shape or i.shape != (s.cols, s.rows):
        raise ShapeError(f"s {s.shape}, t {t.shape}, i {i.shape} do not fit together")
    n0 = I(s.rows)
    if compose(s, i) != n0 or compose(t, i) != n0:
        raise PreconditionError("i is not a section of both s and t")
    pb = pullback(s, t)
    return pb.p + pb.q - compose_all(i, t, pb.q)


def discrete(n: int) -> TwoVect:
    if n < 0:
        raise ValueError("dimension must be non-negative")
    e = I(n)
    return TwoVect(n, n, e, e, e, forced_composition(e, e, e))


@lru_cache(maxsize=8192)
def from_chain_complex(cc: ChainComplex2) -> TwoVect:
    """``C0 = V0``, ``C1 = V0 + V1``, ``s(x, v) = x``, ``t(x, v) = x + d v``."""
    v0, v1, d = cc.v0, cc.v1, cc.d
    s = hstack(I(v0), Z(v0, v1))
    t = hstack(I(v0), d)
    i = vstack(I(v0), Z(v1, v0))
    c1 = v0 + v1
    # (y, w) . (x, v) = (x, v + w) on pairs with y = x + d v
    on_pairs = vstack(hstack(Z(v0, c1), I(v0), Z(v0, v1)),
                      hstack(Z(v1, v0), I(v1), Z(v1, v0), I(v1)))
    pb = pullback(s, t)
    return TwoVect(v0, c1, s, t, i, compose(on_pairs, pb.embed))


@lru_cache(maxsize=8192)
def presentation(tv: TwoVect) -> ChainComplex2:
    """Chain complex ``t|ker s``, without re-validating ``tv``."""
    k = kernel_basis(tv.s)
    return ChainComplex2(tv.c0, k.cols, compose(tv.t, k))


def to_chain_complex(tv: TwoVect) -> ChainComplex2:
    require_valid(tv)
    return presentation(tv)


def canonical(tv: TwoVect) -> TwoVect:
    return from_chain_complex(presentation(tv))


def is_canonical(tv: TwoVect) -> bool:
    return tv == canonical(tv)


@lru_cache(maxsize=4096)
def arrow_coords(tv: TwoVect) -> RationalMatrix:
    """Coordinates of ``ker s`` vectors in the canonical kernel basis."""
    return left_inverse(kernel_basis(tv.s))


def roundtrip_iso(tv: TwoVect) -> tuple[RationalMatrix, RationalMatrix]:
    """Arrow maps ``(phi, phi_inv)`` between ``canonical(tv)`` and ``tv``.

    ``phi(x, v) = i x + K v`` with ``K`` the kernel basis of ``s``; the
    object components are identities.
    """
    k = kernel_basis(tv.s)
    phi = hstack(tv.i, k)
    phi_inv = vstack(tv.s, compose(arrow_coords(tv), I(tv.c1) - compose(tv.i, tv.s)))
    return phi, phi_inv


def to_json(tv: TwoVect) -> dict:
    return {"c0": tv.c0, "c1": tv.c1, "s": tv.s.to_json(), "t": tv.t.to_json(),
            "i": tv.i.to_json(), "comp": tv.comp.to_json()}


def from_json(obj: dict) -> TwoVect:
    if "chain" in obj:
        ch = obj["chain"]
        d = RationalMatrix.from_json(ch["d"])
        cc = ChainComplex2(int(ch.get("v0", d.rows)), int(ch.get("v1", d.cols)), d)
        return from_chain_complex(cc)
    try:
        c0, c1 = int(obj["c0"]), int(obj["c1"])
        s, t, i = (RationalMatrix.from_json(obj[k]) for k in ("s", "t", "i"))
    except KeyError as exc:
        raise ShapeError(f"2-vector space file is missing field {exc}") from None
    if "comp" in obj:
        comp = RationalMatrix.from_json(obj["comp"])
    else:
        comp = forced_composition(s, t, i)
    return TwoVect(c0, c1, s, t, i, comp)
