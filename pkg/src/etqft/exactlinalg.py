"""
Dense matrices over the rationals, with exact arithmetic throughout.

Every linear map in the package (source/target/identity/composition maps,
functor components, natural transformations, Frobenius structure maps) is a
``RationalMatrix``.  Entries are ``fractions.Fraction`` so every equation is
decided exactly.

Row-reduction is canonical: the pivot of each column is the first nonzero
entry at or below the current row, so kernels, ranks and pullback bases are
deterministic functions of their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from etqft.errors import PreconditionError, ShapeError

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"not an exact rational: {x!r}")
    return Fraction(x)


def fstr(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, eq=False)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major Fractions

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape {self.rows}x{self.cols}")
        entries = tuple(to_fraction(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ShapeError(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    # -- construction -------------------------------------------------------

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple) -> "RationalMatrix":
        """Trusted constructor: ``entries`` is already a tuple of Fractions."""
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ShapeError(f"ragged rows: expected {cols} entries, got {len(r)}")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int):
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ShapeError(f"column of length {len(c)}, expected {rows}")
        return cls(rows, len(columns),
                   tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int):
        return cls._raw(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls._raw(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def permutation(cls, perm: Sequence[int]):
        """Matrix sending basis vector ``j`` to basis vector ``perm[j]``."""
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError(f"not a permutation: {perm!r}")
        data = [ZERO] * (n * n)
        for j, i in enumerate(perm):
            data[i * n + j] = ONE
        return cls._raw(n, n, tuple(data))

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def tolist(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    @cached_property
    def _sparse_rows(self):
        c = self.cols
        e = self.entries
        return tuple(
            tuple((j, e[i * c + j]) for j in range(c) if e[i * c + j])
            for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.entries)

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix._raw(self.cols, self.rows,
                              tuple(self.entries[i * self.cols + j]
                                    for j in range(self.cols) for i in range(self.rows)))

    # -- equality -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.rows, self.cols, self.entries))
            self.__dict__["_hash"] = h
        return h

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, {self.pretty()})"

    def pretty(self) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(fstr(x) for x in self.row(i)) + "]"
            for i in range(self.rows)) + "]"

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other):
        return compose(self, other)

    def _check_same_shape(self, other, op):
        if self.shape != other.shape:
            raise ShapeError(f"cannot {op} {self.rows}x{self.cols} and {other.rows}x{other.cols}")

    def __add__(self, other):
        self._check_same_shape(other, "add")
        return RationalMatrix._raw(self.rows, self.cols,
                              tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check_same_shape(other, "subtract")
        return RationalMatrix._raw(self.rows, self.cols,
                              tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return RationalMatrix._raw(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "RationalMatrix":
        c = to_fraction(c)
        return RationalMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def select_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix.from_rows([self.row(i) for i in idx], cols=self.cols)

    def select_cols(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix._raw(self.rows, len(idx),
                              tuple(self.entries[i * self.cols + j]
                                    for i in range(self.rows) for j in idx))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "RationalMatrix":
        return RationalMatrix._raw(r1 - r0, c1 - c0,
                              tuple(self.entries[i * self.cols + j]
                                    for i in range(r0, r1) for j in range(c0, c1)))

    # -- (de)serialisation --------------------------------------------------

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[fstr(x) for x in self.row(i)] for i in range(self.rows)]}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalMatrix":
        try:
            rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed matrix literal: {exc}") from None
        if len(entries) != rows:
            raise ShapeError(f"matrix literal declares {rows} rows, has {len(entries)}")
        try:
            return cls.from_rows([[to_fraction(x) for x in r] for r in entries], cols=cols)
        except (ValueError, ZeroDivisionError) as exc:
            raise ShapeError(f"bad matrix entry: {exc}") from None


def mat(rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
    """Shorthand for ``RationalMatrix.from_rows``."""
    return RationalMatrix.from_rows(rows, cols)


def compose(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Exact product ``a @ b`` (apply ``b`` first)."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot compose {a.rows}x{a.cols} with {b.rows}x{b.cols}")
    n = b.cols
    brows = b._sparse_rows
    out = []
    for arow in a._sparse_rows:
        acc = [ZERO] * n
        for k, x in arow:
            for j, y in brows[k]:
                acc[j] += x * y
        out.extend(acc)
    return RationalMatrix._raw(a.rows, n, tuple(out))


def compose_all(*ms: RationalMatrix) -> RationalMatrix:
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = compose(m, out)
    return out


def kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Kronecker product, index of ``a`` major."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    data = [ZERO] * (rows * cols)
    bsp = b._sparse_rows
    for i, arow in enumerate(a._sparse_rows):
        for j, x in arow:
            for k, brow in enumerate(bsp):
                base = (i * b.rows + k) * cols + j * b.cols
                for l, y in brow:
                    data[base + l] = x * y
    return RationalMatrix._raw(rows, cols, tuple(data))


def hstack(*ms: RationalMatrix) -> RationalMatrix:
    rows = ms[0].rows
    for m in ms:
        if m.rows != rows:
            raise ShapeError(f"hstack: row counts {[m.rows for m in ms]}")
    out = []
    for i in range(rows):
        for m in ms:
            out.extend(m.entries[i * m.cols:(i + 1) * m.cols])
    return RationalMatrix._raw(rows, sum(m.cols for m in ms), tuple(out))


def vstack(*ms: RationalMatrix) -> RationalMatrix:
    cols = ms[0].cols
    for m in ms:
        if m.cols != cols:
            raise ShapeError(f"vstack: column counts {[m.cols for m in ms]}")
    return RationalMatrix._raw(sum(m.rows for m in ms), cols,
                          tuple(x for m in ms for x in m.entries))


def direct_sum(*ms: RationalMatrix) -> RationalMatrix:
    """Block-diagonal matrix."""
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    data = [ZERO] * (rows * cols)
    r0 = c0 = 0
    for m in ms:
        for i in range(m.rows):
            for j in range(m.cols):
                data[(r0 + i) * cols + c0 + j] = m.entries[i * m.cols + j]
        r0 += m.rows
        c0 += m.cols
    return RationalMatrix._raw(rows, cols, tuple(data))


def rref(a: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    m = a.tolist()
    pivots = []
    r = 0
    for c in range(a.cols):
        if r == a.rows:
            break
        for k in range(r, a.rows):
            if m[k][c]:
                break
        else:
            continue
        if k != r:
            m[r], m[k] = m[k], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        prow = m[r]
        for k in range(a.rows):
            f = m[k][c]
            if k != r and f:
                m[k] = [x - f * y for x, y in zip(m[k], prow)]
        pivots.append(c)
        r += 1
    return RationalMatrix._raw(a.rows, a.cols, tuple(x for row in m for x in row)), tuple(pivots)


def rank(a: RationalMatrix) -> int:
    return len(rref(a)[1])


def kernel_basis(a: RationalMatrix) -> RationalMatrix:
    """Columns spanning the null space, one per free variable of ``rref(a)``.

    Column ``k`` has a 1 in the ``k``-th free position and zeros in the
    other free positions.
    """
    return _kernel(a)[0]


def free_variables(a: RationalMatrix) -> tuple[int, ...]:
    return _kernel(a)[1]


@lru_cache(maxsize=8192)
def _kernel(a: RationalMatrix):
    r, pivots = rref(a)
    pset = set(pivots)
    free = tuple(j for j in range(a.cols) if j not in pset)
    k = len(free)
    data = [ZERO] * (a.cols * k)
    for col, f in enumerate(free):
        data[f * k + col] = ONE
        for i, p in enumerate(pivots):
            data[p * k + col] = -r.entries[i * a.cols + f]
    return RationalMatrix._raw(a.cols, k, tuple(data)), free


def inverse(a: RationalMatrix) -> RationalMatrix:
    if a.rows != a.cols:
        raise ShapeError(f"cannot invert a {a.rows}x{a.cols} matrix")
    n = a.rows
    r, pivots = rref(hstack(a, RationalMatrix.identity(n)))
    if pivots[:n] != tuple(range(n)):
        raise PreconditionError("matrix is singular")
    return r.block(0, n, n, 2 * n)


def left_inverse(a: RationalMatrix) -> RationalMatrix:
    """Some ``l`` with ``l @ a == I``; ``a`` must have full column rank.

    Built from the first maximal set of independent rows of ``a``, so the
    result only reads those rows.
    """
    _, rows = rref(a.T)
    if len(rows) != a.cols:
        raise PreconditionError(
            f"{a.rows}x{a.cols} matrix has rank {len(rows)}, not full column rank")
    inv = inverse(a.select_rows(rows))
    data = [ZERO] * (a.cols * a.rows)
    for k, i in enumerate(rows):
        for r in range(a.cols):
            data[r * a.rows + i] = inv[r, k]
    return RationalMatrix._raw(a.cols, a.rows, tuple(data))


def solve(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix | None:
    """A solution ``x`` of ``a @ x == b`` (free variables zero), or ``None``."""
    if a.rows != b.rows:
        raise ShapeError(f"solve: {a.rows}x{a.cols} system with {b.rows}x{b.cols} right side")
    r, pivots = rref(hstack(a, b))
    if pivots and pivots[-1] >= a.cols:
        return None
    x = [[ZERO] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            x[p][j] = r[i, a.cols + j]
    return RationalMatrix.from_rows(x, cols=b.cols)


def first_nonzero_column(m: RationalMatrix) -> int | None:
    for j in range(m.cols):
        if any(m.entries[i * m.cols + j] for i in range(m.rows)):
            return j
    return None


def difference_witness(lhs: RationalMatrix, rhs: RationalMatrix) -> str | None:
    """Describe the first basis vector on which two maps disagree."""
    if lhs.shape != rhs.shape:
        return f"shape {lhs.rows}x{lhs.cols} vs {rhs.rows}x{rhs.cols}"
    diff = lhs - rhs
    j = first_nonzero_column(diff)
    if j is None:
        return None
    return (f"e_{j}: lhs=({', '.join(fstr(x) for x in lhs.col(j))}) "
            f"rhs=({', '.join(fstr(x) for x in rhs.col(j))})")


@dataclass(frozen=True)
class PullbackWitness:
    """Basis of ``{(g, f) in C1 + C1 : s g = t f}`` with its two projections.

    ``embed`` is ``kernel_basis([s | -t])``; ``free`` are the coordinates on
    which ``embed`` restricts to the identity, so ``coords`` (selecting those
    coordinates) inverts ``embed`` on its image.
    """
    dim: int
    embed: RationalMatrix
    p: RationalMatrix
    q: RationalMatrix
    free: tuple

    @cached_property
    def coords(self) -> RationalMatrix:
        n = self.embed.rows
        data = [ZERO] * (self.dim * n)
        for k, i in enumerate(self.free):
            data[k * n + i] = ONE
        return RationalMatrix._raw(self.dim, n, tuple(data))

    def pair(self, g: RationalMatrix, f: RationalMatrix) -> RationalMatrix:
        """Map ``x -> (g x, f x)`` into pullback coordinates."""
        return compose(self.coords, vstack(g, f))

    def contains(self, g: RationalMatrix, f: RationalMatrix) -> bool:
        stacked = vstack(g, f)
        return compose(self.embed, compose(self.coords, stacked)) == stacked


@lru_cache(maxsize=8192)
def pullback(s: RationalMatrix, t: RationalMatrix) -> PullbackWitness:
    if s.shape != t.shape:
        raise ShapeError(f"pullback of {s.rows}x{s.cols} and {t.rows}x{t.cols}")
    c1 = s.cols
    constraint = hstack(s, -t)
    embed, free = _kernel(constraint)
    return PullbackWitness(
        dim=embed.cols,
        embed=embed,
        p=embed.block(0, c1, 0, embed.cols),
        q=embed.block(c1, 2 * c1, 0, embed.cols),
        free=free,
    )


def columns_independent(a: RationalMatrix) -> bool:
    return rank(a) == a.cols


def sum_matrices(ms: Iterable[RationalMatrix]) -> RationalMatrix:
    ms = list(ms)
    out = ms[0]
    for m in ms[1:]:
        out = out + m
    return out
