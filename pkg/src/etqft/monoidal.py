"""
Semistrict monoidal structure on 2-vector spaces.

Objects are tensored through their chain-complex presentations.  For
``A = (dA: A1 -> A0)`` and ``B = (dB: B1 -> B0)`` the tensor has

    V0 = A0 (x) B0
    V1 = (A1 (x) B0  +  A0 (x) B1) / im(d2)
    d  = [dA (x) 1 | 1 (x) dB]

where ``d2: A1 (x) B1 -> A1 (x) B0 + A0 (x) B1`` is ``a(x)b -> (-a(x)dB b, dA a(x)b)``,
the degree-2 differential of the full tensor complex.  Dividing by its
image is what lets homotopies tensor with identities; when either factor is
discrete ``im(d2) = 0`` and ``V1`` is the plain direct sum.

The quotient uses a fixed complement: reduce a basis of ``im(d2)`` to row
echelon form and keep the non-pivot coordinates.  All Kronecker products put
the left factor's index first.

Tensorators are identities: both whiskered composites around every square
are equal matrices.  ``check_semistrict`` accepts any tensorator function so
the axioms can be exercised against perturbed ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from etqft import sampling
from etqft.errors import ShapeError, ValidationError
from etqft.exactlinalg import (
    ONE,
    ZERO,
    RationalMatrix,
    compose,
    compose_all,
    direct_sum,
    hstack,
    inverse,
    kron,
    rref,
    vstack,
)
from etqft.report import Report
from etqft.twocells import (
    InternalFunctor,
    InternalNatTrans,
    chain_map_of,
    compose_functors,
    functor_from_chain_map,
    hcompose,
    homotopy_of,
    id_functor,
    id_nat,
    validate_functor,
    validate_nat,
    vcompose,
    whisker_left,
    whisker_right,
)
from etqft.twovect import ChainComplex2, TwoVect, discrete, from_chain_complex, presentation, validate

I = RationalMatrix.identity
Z = RationalMatrix.zeros

CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")


@lru_cache(maxsize=4096)
def _valid(tv: TwoVect) -> bool:
    return validate(tv).passed


def _require(tv: TwoVect):
    if not _valid(tv):
        raise ValidationError(f"{tv!r} is not a valid 2-vector space", validate(tv))


@dataclass(frozen=True)
class TensorPresentation:
    left: ChainComplex2
    right: ChainComplex2
    proj: RationalMatrix   # flat V1 -> V1
    sect: RationalMatrix   # V1 -> flat V1
    cc: ChainComplex2


def _quotient_maps(n: int, relations: RationalMatrix) -> tuple[RationalMatrix, RationalMatrix]:
    """Projection onto ``Q^n / colspace(relations)`` and its coordinate section."""
    if relations.cols == 0:
        return I(n), I(n)
    red, pivots = rref(relations.T)
    r = len(pivots)
    keep = [j for j in range(n) if j not in set(pivots)]
    basis_rows = red.block(0, r, 0, n)
    select_p = RationalMatrix.identity(n).select_rows(list(pivots))
    select_keep = RationalMatrix.identity(n).select_rows(keep)
    proj = compose(select_keep, I(n) - compose(basis_rows.T, select_p))
    return proj, select_keep.T


@lru_cache(maxsize=4096)
def tensor_presentation(a: ChainComplex2, b: ChainComplex2) -> TensorPresentation:
    flat_d = hstack(kron(a.d, I(b.v0)), kron(I(a.v0), b.d))
    d2 = vstack(-kron(I(a.v1), b.d), kron(a.d, I(b.v1)))
    proj, sect = _quotient_maps(a.v1 * b.v0 + a.v0 * b.v1, d2)
    cc = ChainComplex2(a.v0 * b.v0, sect.cols, compose(flat_d, sect))
    return TensorPresentation(a, b, proj, sect, cc)


@lru_cache(maxsize=4096)
def tensor_objects(a: TwoVect, b: TwoVect) -> TwoVect:
    _require(a)
    _require(b)
    return from_chain_complex(tensor_presentation(presentation(a), presentation(b)).cc)


def tensor_power(tv: TwoVect, n: int) -> TwoVect:
    """Left-nested ``((T (x) T) (x) ...) (x) T``; the zeroth power is the unit."""
    if n == 0:
        return discrete(1)
    out = tv
    for _ in range(n - 1):
        out = tensor_objects(out, tv)
    return out


def _tensor_chain_maps(f, g, dom: TensorPresentation, cod: TensorPresentation):
    (f0, f1), (g0, g1) = f, g
    flat = direct_sum(kron(f1, g0), kron(f0, g1))
    return kron(f0, g0), compose_all(cod.proj, flat, dom.sect)


def _identity_chain_map(cc: ChainComplex2):
    return I(cc.v0), I(cc.v1)


@lru_cache(maxsize=8192)
def whisker_1cell(f: InternalFunctor, b: TwoVect, side: str = "right") -> InternalFunctor:
    """``f (x) B`` for ``side="right"``, ``B (x) f`` for ``side="left"``."""
    _require(f.dom)
    _require(f.cod)
    _require(b)
    bc = presentation(b)
    x, y = presentation(f.dom), presentation(f.cod)
    fm = chain_map_of(f)
    ib = _identity_chain_map(bc)
    if side == "right":
        dom, cod = tensor_presentation(x, bc), tensor_presentation(y, bc)
        f0, f1 = _tensor_chain_maps(fm, ib, dom, cod)
    elif side == "left":
        dom, cod = tensor_presentation(bc, x), tensor_presentation(bc, y)
        f0, f1 = _tensor_chain_maps(ib, fm, dom, cod)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return functor_from_chain_map(f0, f1, dom.cc, cod.cc)


def whisker_2cell(a: InternalNatTrans, b: TwoVect, side: str = "right") -> InternalNatTrans:
    """``alpha (x) B`` or ``B (x) alpha``: the homotopy tensored with ``1_B``."""
    fw = whisker_1cell(a.dom, b, side)
    gw = whisker_1cell(a.cod, b, side)
    h = homotopy_of(a)
    bc = presentation(b)
    x, y = presentation(a.source), presentation(a.target)
    if side == "right":
        cod = tensor_presentation(y, bc)
        flat = vstack(kron(h, I(bc.v0)), Z(y.v0 * bc.v1, x.v0 * bc.v0))
    else:
        cod = tensor_presentation(bc, y)
        flat = vstack(Z(bc.v1 * y.v0, bc.v0 * x.v0), kron(I(bc.v0), h))
    hw = compose(cod.proj, flat)
    return InternalNatTrans(fw, gw, vstack(fw.F0, hw))


def tensor_functors(f: InternalFunctor, g: InternalFunctor) -> InternalFunctor:
    """``f (x) g = (A' (x) g) . (f (x) B)`` for ``f: A -> A'``, ``g: B -> B'``."""
    return compose_functors(whisker_1cell(g, f.cod, "left"), whisker_1cell(f, g.dom, "right"))


# -- tensorator -------------------------------------------------------------

@dataclass(frozen=True)
class Tensorator:
    f: InternalFunctor
    g: InternalFunctor
    cell: InternalNatTrans  # (A' (x) g)(f (x) B) => (f (x) B')(A (x) g)

    def inverse(self) -> InternalNatTrans:
        return nat_inverse(self.cell)

    def is_isomorphism(self) -> bool:
        inv = self.inverse()
        return (vcompose(inv, self.cell) == id_nat(self.cell.dom)
                and vcompose(self.cell, inv) == id_nat(self.cell.cod))


def nat_inverse(a: InternalNatTrans) -> InternalNatTrans:
    """Inverse 2-cell: the negated homotopy, from ``G`` back to ``F``."""
    D = a.target
    arrow = a.alpha - compose(D.i, a.dom.F0)
    return InternalNatTrans(a.cod, a.dom, compose(D.i, a.cod.F0) - arrow)


def square_composites(f: InternalFunctor, g: InternalFunctor):
    a, a2 = f.dom, f.cod
    b, b2 = g.dom, g.cod
    first = compose_functors(whisker_1cell(g, a2, "left"), whisker_1cell(f, b, "right"))
    second = compose_functors(whisker_1cell(f, b2, "right"), whisker_1cell(g, a, "left"))
    return first, second


def tensorator(f: InternalFunctor, g: InternalFunctor) -> Tensorator:
    first, second = square_composites(f, g)
    return Tensorator(f, g, InternalNatTrans(first, second, compose(first.cod.i, first.F0)))


def perturbed_tensorator(f: InternalFunctor, g: InternalFunctor) -> Tensorator:
    """A non-identity cell in place of the tensorator (axiom-checker mutation)."""
    t = tensorator(f, g)
    alpha = t.cell.alpha
    if alpha.rows == 0 or alpha.cols == 0:
        return t
    bumped = list(alpha.entries)
    bumped[0] += ONE
    cell = InternalNatTrans(t.cell.dom, t.cell.cod, RationalMatrix(alpha.rows, alpha.cols, tuple(bumped)))
    return Tensorator(f, g, cell)


# -- associativity identifications -------------------------------------------

def _labels_left(a, b, c):
    """Basis of ``(A(x)B)_flat (x) C0 + (A(x)B)_0 (x) C1`` as triple-index labels."""
    ab_flat = ([("A", i, j) for i in range(a.v1) for j in range(b.v0)]
               + [("B", i, j) for i in range(a.v0) for j in range(b.v1)])
    out = [(kind, i, j, k) for (kind, i, j) in ab_flat for k in range(c.v0)]
    out += [("C", i, j, k) for i in range(a.v0) for j in range(b.v0) for k in range(c.v1)]
    return out


def _labels_right(a, b, c):
    """Basis of ``A1 (x) (B(x)C)_0 + A0 (x) (B(x)C)_flat``."""
    bc_flat = ([("B", j, k) for j in range(b.v1) for k in range(c.v0)]
               + [("C", j, k) for j in range(b.v0) for k in range(c.v1)])
    out = [("A", i, j, k) for i in range(a.v1) for j in range(b.v0) for k in range(c.v0)]
    out += [(kind, i, j, k) for i in range(a.v0) for (kind, j, k) in bc_flat]
    return out


@lru_cache(maxsize=1024)
def associator(a: TwoVect, b: TwoVect, c: TwoVect) -> InternalFunctor:
    """Canonical identification ``(A(x)B)(x)C -> A(x)(B(x)C)``; identity on objects."""
    ac, bc, cc = presentation(a), presentation(b), presentation(c)
    ab = tensor_presentation(ac, bc)
    left = tensor_presentation(ab.cc, cc)
    bcp = tensor_presentation(bc, cc)
    right = tensor_presentation(ac, bcp.cc)

    lift = direct_sum(kron(ab.sect, I(cc.v0)), I(ab.cc.v0 * cc.v1))
    pos = {lab: n for n, lab in enumerate(_labels_right(ac, bc, cc))}
    perm = RationalMatrix.permutation([pos[lab] for lab in _labels_left(ac, bc, cc)])
    push = direct_sum(I(ac.v1 * bc.v0 * cc.v0), kron(I(ac.v0), bcp.proj))
    phi1 = compose_all(right.proj, push, perm, lift, left.sect)
    return functor_from_chain_map(I(left.cc.v0), phi1, left.cc, right.cc)


def invert_functor(f: InternalFunctor) -> InternalFunctor:
    return InternalFunctor(f.cod, f.dom, inverse(f.F0), inverse(f.F1))


# -- axiom checker -------------------------------------------------------------

@dataclass
class MonoidalContext:
    unit: TwoVect = field(default_factory=lambda: discrete(1))
    max_dim: int = 3
    samples: int = 50
    seed: int = 0

    def __post_init__(self):
        if not (self.unit.is_discrete and self.unit.c0 == 1):
            raise ShapeError("the monoidal unit must be discrete of dimension 1")
        if self.max_dim < 1 or self.samples < 1:
            raise ValueError("max_dim and samples must be positive")


class _Sampler:
    def __init__(self, ctx: MonoidalContext):
        self.rng = random.Random(ctx.seed)
        self.max_dim = ctx.max_dim

    def cc(self) -> ChainComplex2:
        return sampling.random_chain_complex(self.rng, self.max_dim, self.max_dim - 1, min_v0=1)

    def obj(self) -> TwoVect:
        return from_chain_complex(self.cc())

    def functor(self, dom: TwoVect, cod: TwoVect | None = None) -> InternalFunctor:
        cod = cod if cod is not None else self.obj()
        return sampling.random_functor(self.rng, presentation(dom), presentation(cod))

    def cell(self, f: InternalFunctor) -> InternalNatTrans:
        return sampling.random_homotopy_cell(self.rng, f)


def _same(rep: Report, name: str, lhs, rhs, what: str):
    rep.record(name, lhs == rhs, None if lhs == rhs else what)


def check_semistrict(ctx: MonoidalContext | None = None,
                     conditions: Iterable[str] | None = None,
                     tensorator_fn: Callable[[InternalFunctor, InternalFunctor], Tensorator] = tensorator,
                     ) -> Report:
    """Check conditions (i)-(viii) as exact equations on seeded samples."""
    ctx = ctx or MonoidalContext()
    wanted = tuple(conditions) if conditions is not None else CONDITIONS
    for c in wanted:
        if c not in CONDITIONS:
            raise ValueError(f"unknown condition {c!r}")
    rep = Report(f"semistrict monoidal axioms (max_dim={ctx.max_dim}, samples={ctx.samples}, "
                 f"seed={ctx.seed})")
    for c in wanted:
        rep.check(c)
    sm = _Sampler(ctx)
    unit = ctx.unit
    T = tensorator_fn
    w1, w2 = whisker_1cell, whisker_2cell

    for _ in range(ctx.samples):
        A, B = sm.obj(), sm.obj()
        f = sm.functor(A)
        A2 = f.cod
        g = sm.functor(B)
        B2 = g.cod
        g2 = sm.functor(B2)
        B3 = g2.cod
        beta = sm.cell(g)
        beta2 = sm.cell(beta.cod)
        alpha = sm.cell(f)
        gamma = sm.cell(g2)

        if "i" in wanted:
            for side in ("left", "right"):
                _same(rep, "i", w1(compose_functors(g2, g), A, side),
                      compose_functors(w1(g2, A, side), w1(g, A, side)), f"{side}: composites")
                _same(rep, "i", w1(id_functor(B), A, side), id_functor(
                    tensor_objects(A, B) if side == "left" else tensor_objects(B, A)),
                    f"{side}: identities")
                _same(rep, "i", w2(vcompose(beta2, beta), A, side),
                      vcompose(w2(beta2, A, side), w2(beta, A, side)), f"{side}: vertical")
                _same(rep, "i", w2(id_nat(g), A, side), id_nat(w1(g, A, side)),
                      f"{side}: identity 2-cells")
                _same(rep, "i", w2(hcompose(gamma, beta), A, side),
                      hcompose(w2(gamma, A, side), w2(beta, A, side)), f"{side}: horizontal")
                rep.record("i", validate_nat(w2(beta, A, side)).passed, f"{side}: whiskered 2-cell invalid")

        if "ii" in wanted:
            _same(rep, "ii", tensor_objects(A, unit), A, "A (x) I")
            _same(rep, "ii", tensor_objects(unit, A), A, "I (x) A")
            _same(rep, "ii", w1(f, unit, "right"), f, "f (x) I")
            _same(rep, "ii", w1(f, unit, "left"), f, "I (x) f")
            _same(rep, "ii", w2(alpha, unit, "right"), alpha, "alpha (x) I")
            _same(rep, "ii", w2(alpha, unit, "left"), alpha, "I (x) alpha")

        if "iii" in wanted or "iv" in wanted:
            C = sm.obj()
            h = sm.functor(C)
            C2 = h.cod
            eta = sm.cell(h)

        if "iii" in wanted:
            assoc = associator(A, B, C)
            rep.record("iii", validate_functor(assoc).passed, "associator is not a functor")
            inv = invert_functor(assoc)
            rep.record("iii", validate_functor(inv).passed, "associator inverse is not a functor")
            # X in the last slot: (A(x)B)(x)X = A(x)(B(x)X)
            AB = tensor_objects(A, B)
            _check_transport(rep, "iii", associator(A, B, C), associator(A, B, C2),
                             w1(h, AB, "left"), w1(w1(h, B, "left"), A, "left"),
                             w2(eta, AB, "left"), w2(w2(eta, B, "left"), A, "left"), "A(x)B(x)X")
            _check_transport(rep, "iii", associator(A, C, B), associator(A, C2, B),
                             w1(w1(h, A, "left"), B, "right"), w1(w1(h, B, "right"), A, "left"),
                             w2(w2(eta, A, "left"), B, "right"), w2(w2(eta, B, "right"), A, "left"),
                             "A(x)X(x)B")
            _check_transport(rep, "iii", associator(C, A, B), associator(C2, A, B),
                             w1(w1(h, A, "right"), B, "right"), w1(h, AB, "right"),
                             w2(w2(eta, A, "right"), B, "right"), w2(eta, AB, "right"), "X(x)A(x)B")

        if "iv" in wanted:
            # f: A -> A2, g: B -> B2, h: C -> C2
            lhs = T(w1(g, A, "left"), h).cell
            rhs = w2(T(g, h).cell, A, "left")
            _same(rep, "iv", whisker_left(associator(A, B2, C2), lhs),
                  whisker_right(rhs, associator(A, B, C)), "T(A(x)g, h) vs A(x)T(g, h)")
            lhs = T(w1(f, B, "right"), h).cell
            rhs = T(f, w1(h, B, "left")).cell
            _same(rep, "iv", whisker_left(associator(A2, B, C2), lhs),
                  whisker_right(rhs, associator(A, B, C)), "T(f(x)B, h) vs T(f, B(x)h)")
            lhs = T(f, w1(g, C, "right")).cell
            rhs = w2(T(f, g).cell, C, "right")
            _same(rep, "iv", whisker_left(associator(A2, B2, C), rhs),
                  whisker_right(lhs, associator(A, B, C)), "T(f, g(x)C) vs T(f, g)(x)C")

        if "v" in wanted:
            AB = tensor_objects(A, B)
            _same(rep, "v", w1(id_functor(A), B, "right"), id_functor(AB), "1_A (x) B")
            _same(rep, "v", w1(id_functor(B), A, "left"), id_functor(AB), "A (x) 1_B")

        if "vi" in wanted:
            g_alt = beta.cod
            for gg in (g, g_alt):
                first, second = square_composites(f, gg)
                _same(rep, "vi", first, second, "(A'(x)g)(f(x)B) vs (f(x)B')(A(x)g)")
            t = T(f, g)
            rep.record("vi", validate_nat(t.cell).passed, "tensorator is not a valid 2-cell")
            rep.record("vi", t.is_isomorphism(), "tensorator is not invertible")
            lhs = vcompose(T(f, g_alt).cell, whisker_right(w2(beta, A2, "left"), w1(f, B, "right")))
            rhs = vcompose(whisker_left(w1(f, B2, "right"), w2(beta, A, "left")), t.cell)
            _same(rep, "vi", lhs, rhs, "(A'(x)beta) o T(f,g) vs T(f,g') o (A(x)beta)")

        if "vii" in wanted:
            f_alt = alpha.cod
            for ff in (f, f_alt):
                first, second = square_composites(ff, g)
                _same(rep, "vii", first, second, "(A'(x)g)(f(x)B) vs (f(x)B')(A(x)g)")
            t = T(f, g)
            rep.record("vii", validate_nat(t.cell).passed, "tensorator is not a valid 2-cell")
            lhs = vcompose(T(f_alt, g).cell, whisker_left(w1(g, A2, "left"), w2(alpha, B, "right")))
            rhs = vcompose(whisker_right(w2(alpha, B2, "right"), w1(g, A, "left")), t.cell)
            _same(rep, "vii", lhs, rhs, "(alpha(x)B) o T(f,g) vs T(f',g) o (alpha(x)B)")

        if "viii" in wanted:
            direct = T(f, compose_functors(g2, g)).cell
            step1 = whisker_left(w1(g2, A2, "left"), T(f, g).cell)
            step2 = whisker_right(T(f, g2).cell, w1(g, A, "left"))
            _same(rep, "viii", vcompose(step2, step1), direct, "T(f, g'g) vs pasting")
            f2 = sm.functor(A2)
            direct = T(compose_functors(f2, f), g).cell
            step1 = whisker_right(T(f2, g).cell, w1(f, B, "right"))
            step2 = whisker_left(w1(f2, B2, "right"), T(f, g).cell)
            _same(rep, "viii", vcompose(step2, step1), direct, "T(f'f, g) vs pasting")
    return rep


def _check_transport(rep, name, phi_dom, phi_cod, f_left, f_right, a_left, a_right, what):
    _same(rep, name, compose_functors(phi_cod, f_left), compose_functors(f_right, phi_dom),
          f"{what}: 1-cell")
    _same(rep, name, whisker_left(phi_cod, a_left), whisker_right(a_right, phi_dom),
          f"{what}: 2-cell")
