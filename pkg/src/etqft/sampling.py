"""Seeded random chain complexes, chain maps and homotopy 2-cells."""

from __future__ import annotations

import random
from dataclasses import dataclass

from etqft.exactlinalg import RationalMatrix, kernel_basis
from etqft.twocells import (
    InternalFunctor,
    InternalNatTrans,
    functor_from_chain_map,
    nat_from_homotopy,
)
from etqft.twovect import ChainComplex2

ENTRY_RANGE = (-2, 2)


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_matrix(rng: random.Random, rows: int, cols: int, lo=ENTRY_RANGE[0], hi=ENTRY_RANGE[1]):
    return RationalMatrix(rows, cols, tuple(rng.randint(lo, hi) for _ in range(rows * cols)))


def random_chain_complex(rng: random.Random, max_v0: int = 4, max_v1: int = 4,
                         min_v0: int = 0) -> ChainComplex2:
    v0 = rng.randint(min_v0, max_v0)
    v1 = rng.randint(0, max_v1)
    return ChainComplex2(v0, v1, random_matrix(rng, v0, v1))


def chain_map_space(dom: ChainComplex2, cod: ChainComplex2) -> RationalMatrix:
    """Basis (as columns) of chain maps, vectorised as ``(f0 row-major, f1 row-major)``."""
    n0 = cod.v0 * dom.v0
    n1 = cod.v1 * dom.v1
    rows = []
    # equation f0 d - d' f1 = 0, entry (i, j) with i < cod.v0, j < dom.v1
    for i in range(cod.v0):
        for j in range(dom.v1):
            row = [0] * (n0 + n1)
            for b in range(dom.v0):
                row[i * dom.v0 + b] += dom.d[b, j]
            for a in range(cod.v1):
                row[n0 + a * dom.v1 + j] -= cod.d[i, a]
            rows.append(row)
    constraint = RationalMatrix.from_rows(rows, cols=n0 + n1) if rows else \
        RationalMatrix.zeros(0, n0 + n1)
    return kernel_basis(constraint)


def random_chain_map(rng: random.Random, dom: ChainComplex2, cod: ChainComplex2):
    basis = chain_map_space(dom, cod)
    n0 = cod.v0 * dom.v0
    vec = [0] * basis.rows
    for k in range(basis.cols):
        c = rng.randint(-2, 2)
        if c:
            col = basis.col(k)
            vec = [x + c * y for x, y in zip(vec, col)]
    f0 = RationalMatrix(cod.v0, dom.v0, tuple(vec[:n0]))
    f1 = RationalMatrix(cod.v1, dom.v1, tuple(vec[n0:]))
    return f0, f1


def random_functor(rng, dom: ChainComplex2, cod: ChainComplex2) -> InternalFunctor:
    f0, f1 = random_chain_map(rng, dom, cod)
    return functor_from_chain_map(f0, f1, dom, cod)


def random_homotopy_cell(rng, F: InternalFunctor) -> InternalNatTrans:
    from etqft.twovect import presentation

    dc, dd = presentation(F.dom), presentation(F.cod)
    return nat_from_homotopy(F, random_matrix(rng, dd.v1, dc.v0, -1, 1))


def random_vertical_chain(rng, F: InternalFunctor, length: int) -> list[InternalNatTrans]:
    cells = []
    for _ in range(length):
        cell = random_homotopy_cell(rng, F)
        cells.append(cell)
        F = cell.cod
    return cells


@dataclass
class TwoCellConfiguration:
    complexes: tuple
    vertical: list        # three composable 2-cells between the first pair of objects
    next_vertical: list   # two composable 2-cells between the second pair
    last: InternalNatTrans


def random_2cell_configuration(rng, max_dim: int = 4) -> TwoCellConfiguration:
    cs = [random_chain_complex(rng, max_dim, max_dim) for _ in range(4)]
    f = random_functor(rng, cs[0], cs[1])
    g = random_functor(rng, cs[1], cs[2])
    h = random_functor(rng, cs[2], cs[3])
    return TwoCellConfiguration(
        complexes=tuple(cs),
        vertical=random_vertical_chain(rng, f, 3),
        next_vertical=random_vertical_chain(rng, g, 2),
        last=random_homotopy_cell(rng, h),
    )
