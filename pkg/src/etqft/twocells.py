"""
Internal functors and internal natural transformations between 2-vector
spaces, and the strict 2-category they form.

Naturality convention: ``alpha: F => G`` is natural when, for every arrow
``a`` of the domain, ``alpha(t a) . F1(a) == G1(a) . alpha(s a)``; the two
sides are the composites of the pairs ``(alpha t, F1)`` and
``(G1, alpha s)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from etqft.errors import CompositionError, PreconditionError, ShapeError, ValidationError
from etqft.exactlinalg import RationalMatrix, compose, direct_sum, kernel_basis
from etqft.report import Report
from etqft.twovect import (
    ChainComplex2,
    TwoVect,
    arrow_coords,
    from_chain_complex,
    is_canonical,
)

I = RationalMatrix.identity


@dataclass(frozen=True)
class InternalFunctor:
    dom: TwoVect
    cod: TwoVect
    F0: RationalMatrix
    F1: RationalMatrix

    def __post_init__(self):
        if self.F0.shape != (self.cod.c0, self.dom.c0):
            raise ShapeError(f"F0 is {self.F0.rows}x{self.F0.cols}, "
                             f"expected {self.cod.c0}x{self.dom.c0}")
        if self.F1.shape != (self.cod.c1, self.dom.c1):
            raise ShapeError(f"F1 is {self.F1.rows}x{self.F1.cols}, "
                             f"expected {self.cod.c1}x{self.dom.c1}")

    def __repr__(self):
        return f"InternalFunctor({self.dom!r} -> {self.cod!r})"


@dataclass(frozen=True)
class InternalNatTrans:
    dom: InternalFunctor
    cod: InternalFunctor
    alpha: RationalMatrix  # C0 -> D1

    def __post_init__(self):
        if self.dom.dom != self.cod.dom or self.dom.cod != self.cod.cod:
            raise ShapeError("a natural transformation needs parallel functors")
        tgt = self.dom.cod
        if self.alpha.shape != (tgt.c1, self.dom.dom.c0):
            raise ShapeError(f"alpha is {self.alpha.rows}x{self.alpha.cols}, "
                             f"expected {tgt.c1}x{self.dom.dom.c0}")

    @property
    def source(self) -> TwoVect:
        return self.dom.dom

    @property
    def target(self) -> TwoVect:
        return self.dom.cod

    def __repr__(self):
        return f"InternalNatTrans({self.source!r} -> {self.target!r})"


def id_functor(tv: TwoVect) -> InternalFunctor:
    return InternalFunctor(tv, tv, I(tv.c0), I(tv.c1))


def validate_functor(F: InternalFunctor) -> Report:
    rep = Report(f"internal functor {F.dom!r} -> {F.cod!r}")
    C, D = F.dom, F.cod
    for name in ("domain/codomain", "identities", "composites"):
        rep.check(name)
    rep.expect_equal("domain/codomain", compose(F.F0, C.s), compose(D.s, F.F1), "F0.s vs s'.F1")
    rep.expect_equal("domain/codomain", compose(F.F0, C.t), compose(D.t, F.F1), "F0.t vs t'.F1")
    rep.expect_equal("identities", compose(F.F1, C.i), compose(D.i, F.F0), "F1.i vs i'.F0")
    fp, fq = compose(F.F1, C.pb.p), compose(F.F1, C.pb.q)
    if not D.pb.contains(fp, fq):
        rep.record("composites", False, "F1 x F1 leaves the pullback")
    else:
        rep.expect_equal("composites", compose(F.F1, C.comp), D.composite(fp, fq),
                         "F1.comp vs comp'.(F1 x F1)")
    return rep


def require_valid_functor(F: InternalFunctor) -> InternalFunctor:
    rep = validate_functor(F)
    if not rep.passed:
        raise ValidationError(f"invalid internal functor: failed {', '.join(rep.failed())}", rep)
    return F


def functor_from_chain_map(f0: RationalMatrix, f1: RationalMatrix,
                           dom: ChainComplex2, cod: ChainComplex2) -> InternalFunctor:
    if f0.shape != (cod.v0, dom.v0) or f1.shape != (cod.v1, dom.v1):
        raise ShapeError(f"chain map components {f0.shape}, {f1.shape} do not fit "
                         f"({dom.v0},{dom.v1}) -> ({cod.v0},{cod.v1})")
    residual = compose(f0, dom.d) - compose(cod.d, f1)
    if not residual.is_zero():
        raise PreconditionError(f"chain-map square does not commute; residual {residual.pretty()}")
    return InternalFunctor(from_chain_complex(dom), from_chain_complex(cod), f0, direct_sum(f0, f1))


def chain_map_of(F: InternalFunctor) -> tuple[RationalMatrix, RationalMatrix]:
    """``(f0, f1)`` on the arrow parts ``ker s`` in their canonical bases."""
    f1 = compose(arrow_coords(F.cod), compose(F.F1, kernel_basis(F.dom.s)))
    return F.F0, f1


def compose_functors(G: InternalFunctor, F: InternalFunctor) -> InternalFunctor:
    """``G . F`` (apply ``F`` first)."""
    if F.cod != G.dom:
        raise CompositionError(f"cannot compose {G!r} after {F!r}")
    return InternalFunctor(F.dom, G.cod, compose(G.F0, F.F0), compose(G.F1, F.F1))


def id_nat(F: InternalFunctor) -> InternalNatTrans:
    return InternalNatTrans(F, F, compose(F.cod.i, F.F0))


def validate_nat(a: InternalNatTrans) -> Report:
    rep = Report(f"internal natural transformation {a.source!r} -> {a.target!r}")
    rep.check("boundary")
    rep.check("naturality")
    C, D = a.source, a.target
    F, G = a.dom, a.cod
    rep.expect_equal("boundary", compose(D.s, a.alpha), F.F0, "s'.alpha vs F0")
    rep.expect_equal("boundary", compose(D.t, a.alpha), G.F0, "t'.alpha vs G0")
    lg, lf = compose(a.alpha, C.t), F.F1
    rg, rf = G.F1, compose(a.alpha, C.s)
    if not (D.pb.contains(lg, lf) and D.pb.contains(rg, rf)):
        rep.record("naturality", False, "naturality pairs are not composable")
    else:
        rep.expect_equal("naturality", D.composite(lg, lf), D.composite(rg, rf),
                         "alpha(t a).F1(a) vs G1(a).alpha(s a)")
    return rep


def vcompose(b: InternalNatTrans, a: InternalNatTrans) -> InternalNatTrans:
    """``b o a``: ``F => G => H``."""
    if a.cod != b.dom:
        raise CompositionError("vertical composition needs a.cod == b.dom")
    return InternalNatTrans(a.dom, b.cod, a.target.composite(b.alpha, a.alpha))


def _check_horizontal(c: InternalNatTrans, a: InternalNatTrans):
    if a.target != c.source:
        raise CompositionError(
            f"horizontal composition: {a!r} does not end where {c!r} starts")


def hcompose(c: InternalNatTrans, a: InternalNatTrans) -> InternalNatTrans:
    """``c * a : H.F => K.G`` for ``a: F => G`` and ``c: H => K``.

    Component at ``x``: ``K1(a_x) . c_(F0 x)``.
    """
    _check_horizontal(c, a)
    F, K = a.dom, c.cod
    alpha = c.target.composite(compose(K.F1, a.alpha), compose(c.alpha, F.F0))
    return InternalNatTrans(compose_functors(c.dom, a.dom), compose_functors(c.cod, a.cod), alpha)


def hcompose_other(c: InternalNatTrans, a: InternalNatTrans) -> InternalNatTrans:
    """The other pasting: component ``c_(G0 x) . H1(a_x)``."""
    _check_horizontal(c, a)
    G, H = a.cod, c.dom
    alpha = c.target.composite(compose(c.alpha, G.F0), compose(H.F1, a.alpha))
    return InternalNatTrans(compose_functors(c.dom, a.dom), compose_functors(c.cod, a.cod), alpha)


def whisker_left(h: InternalFunctor, a: InternalNatTrans) -> InternalNatTrans:
    """``h o a`` for ``a: F => G`` with ``h`` applied after."""
    return hcompose(id_nat(h), a)


def whisker_right(a: InternalNatTrans, f: InternalFunctor) -> InternalNatTrans:
    """``a o f`` for ``a: F => G`` with ``f`` applied before."""
    return hcompose(a, id_nat(f))


def interchange_check(delta: InternalNatTrans, gamma: InternalNatTrans,
                      beta: InternalNatTrans, alpha: InternalNatTrans) -> bool:
    """``(delta * beta) o (gamma * alpha) == (delta o gamma) * (beta o alpha)``.

    ``alpha: f => g``, ``beta: g => h`` between the same pair of objects;
    ``gamma: f' => g'``, ``delta: g' => h'`` on the following pair.
    """
    if alpha.cod != beta.dom:
        raise CompositionError("interchange: beta does not start where alpha ends")
    if gamma.cod != delta.dom:
        raise CompositionError("interchange: delta does not start where gamma ends")
    if alpha.target != gamma.source:
        raise CompositionError("interchange: the two columns of 2-cells are not adjacent")
    lhs = vcompose(hcompose(delta, beta), hcompose(gamma, alpha))
    rhs = hcompose(vcompose(delta, gamma), vcompose(beta, alpha))
    return lhs == rhs


# -- 2-cells from chain homotopies ----------------------------------------

def homotopy_of(a: InternalNatTrans) -> RationalMatrix:
    """``h: C0 -> ker s'`` with ``alpha = i' F0 + K' h``."""
    D = a.target
    return compose(arrow_coords(D), a.alpha - compose(D.i, a.dom.F0))


def nat_from_homotopy(F: InternalFunctor, h: RationalMatrix) -> InternalNatTrans:
    """2-cell ``F => G`` with ``G = F + (d' h, h d)``; canonical objects only."""
    C, D = F.dom, F.cod
    if not (is_canonical(C) and is_canonical(D)):
        raise PreconditionError("homotopy 2-cells are built between canonical 2-vector spaces")
    from etqft.twovect import presentation

    dc, dd = presentation(C), presentation(D)
    if h.shape != (dd.v1, dc.v0):
        raise ShapeError(f"homotopy is {h.rows}x{h.cols}, expected {dd.v1}x{dc.v0}")
    f0, f1 = chain_map_of(F)
    G = functor_from_chain_map(f0 + compose(dd.d, h), f1 + compose(h, dc.d), dc, dd)
    alpha = RationalMatrix.from_rows(F.F0.tolist() + h.tolist(), cols=dc.v0)
    return InternalNatTrans(F, G, alpha)


def check_strict_2category(samples: int = 200, seed: int = 0, max_dim: int = 4) -> Report:
    """Sample homotopy-induced configurations and check the strict 2-category laws."""
    from etqft import sampling

    rng = sampling.make_rng(seed)
    rep = Report(f"strict 2-category laws (samples={samples}, seed={seed}, max_dim={max_dim})")
    for _ in range(samples):
        cfg = sampling.random_2cell_configuration(rng, max_dim)
        a1, a2, a3 = cfg.vertical           # f0 => f1 => f2 => f3 on A -> B
        b1, b2 = cfg.next_vertical          # on B -> C
        c1 = cfg.last                       # on C -> D

        for name, cell in (("2-cells valid", a1), ("2-cells valid", b1), ("2-cells valid", c1)):
            rep.record(name, validate_nat(cell).passed, repr(cell))

        rep.record("vertical associativity",
                   vcompose(a3, vcompose(a2, a1)) == vcompose(vcompose(a3, a2), a1))
        rep.record("vertical units",
                   vcompose(id_nat(a1.cod), a1) == a1 and vcompose(a1, id_nat(a1.dom)) == a1)
        rep.record("horizontal associativity",
                   hcompose(c1, hcompose(b1, a1)) == hcompose(hcompose(c1, b1), a1))
        ida = id_nat(id_functor(a1.source))
        idb = id_nat(id_functor(a1.target))
        rep.record("horizontal units", hcompose(idb, a1) == a1 and hcompose(a1, ida) == a1)
        rep.record("identity 2-cells compose",
                   hcompose(id_nat(b1.dom), id_nat(a1.dom)) == id_nat(compose_functors(b1.dom, a1.dom)))
        rep.record("interchange", interchange_check(b2, b1, a2, a1))
        rep.record("pasting orders agree", hcompose(b1, a1) == hcompose_other(b1, a1))
        hv = hcompose(b1, a1)
        rep.record("horizontal composite valid", validate_nat(hv).passed, repr(hv))
    return rep


# -- file forms --------------------------------------------------------------

def _resolve(ref, base) -> tuple[dict, object]:
    """An inline object, or a path relative to ``base``; returns the object and
    the directory further relative paths are resolved against."""
    import json
    from pathlib import Path

    if isinstance(ref, dict):
        return ref, base
    path = Path(base or ".") / ref
    return json.loads(path.read_text()), path.parent


def _load_twovect(ref, base) -> TwoVect:
    from etqft.twovect import from_json

    return from_json(_resolve(ref, base)[0])


def functor_to_json(F: InternalFunctor, boundaries: bool = True) -> dict:
    from etqft.twovect import to_json

    out = {"F0": F.F0.to_json(), "F1": F.F1.to_json()}
    if boundaries:
        out = {"dom": to_json(F.dom), "cod": to_json(F.cod), **out}
    return out


def functor_from_json(obj: dict, base=None, dom: TwoVect | None = None,
                      cod: TwoVect | None = None) -> InternalFunctor:
    """``{"dom", "cod", "F0", "F1"}``; ``dom``/``cod`` are inline 2-vector
    spaces or paths relative to ``base``, and may be omitted when passed in."""
    try:
        dom = dom if dom is not None else _load_twovect(obj["dom"], base)
        cod = cod if cod is not None else _load_twovect(obj["cod"], base)
        return InternalFunctor(dom, cod, RationalMatrix.from_json(obj["F0"]),
                               RationalMatrix.from_json(obj["F1"]))
    except KeyError as exc:
        raise ShapeError(f"functor file is missing field {exc}") from None


def nat_to_json(a: InternalNatTrans) -> dict:
    return {"dom": functor_to_json(a.dom), "cod": functor_to_json(a.cod),
            "alpha": a.alpha.to_json()}


def nat_from_json(obj: dict, base=None) -> InternalNatTrans:
    try:
        return InternalNatTrans(functor_from_json(*_resolve(obj["dom"], base)),
                                functor_from_json(*_resolve(obj["cod"], base)),
                                RationalMatrix.from_json(obj["alpha"]))
    except KeyError as exc:
        raise ShapeError(f"natural transformation file is missing field {exc}") from None
