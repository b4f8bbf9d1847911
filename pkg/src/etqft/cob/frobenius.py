"""Commutative Frobenius algebras given by their four structure matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from etqft.errors import ShapeError, ValidationError
from etqft.exactlinalg import RationalMatrix, compose, kron, mat
from etqft.report import Report

I = RationalMatrix.identity

LAWS = ("associativity", "unit", "coassociativity", "counit", "frobenius", "commutativity")

BUNDLED = ("ground-field", "dual-numbers", "group-algebra-Z2")


def swap(n: int) -> RationalMatrix:
    """The flip ``V (x) V -> V (x) V`` on the lexicographic basis."""
    return RationalMatrix.permutation([j * n + i for i in range(n) for j in range(n)])


@dataclass(frozen=True)
class FrobeniusAlgebra:
    n: int
    unit: RationalMatrix     # n x 1
    mult: RationalMatrix     # n x n^2
    counit: RationalMatrix   # 1 x n
    comult: RationalMatrix   # n^2 x n

    def __post_init__(self):
        n = self.n
        expected = {"unit": (n, 1), "mult": (n, n * n), "counit": (1, n), "comult": (n * n, n)}
        for name, shape in expected.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ShapeError(f"{name} is {got[0]}x{got[1]}, expected {shape[0]}x{shape[1]}")


def validate_frobenius(f: FrobeniusAlgebra) -> Report:
    n = f.n
    one = I(n)
    mu, eta, eps, delta = f.mult, f.unit, f.counit, f.comult
    rep = Report(f"Frobenius algebra of dimension {n}")
    rep.expect_equal("associativity", compose(mu, kron(mu, one)), compose(mu, kron(one, mu)),
                     "mu(mu x 1) vs mu(1 x mu)")
    rep.expect_equal("unit", compose(mu, kron(eta, one)), one, "mu(eta x 1) vs 1")
    rep.expect_equal("unit", compose(mu, kron(one, eta)), one, "mu(1 x eta) vs 1")
    rep.expect_equal("coassociativity", compose(kron(delta, one), delta),
                     compose(kron(one, delta), delta), "(delta x 1)delta vs (1 x delta)delta")
    rep.expect_equal("counit", compose(kron(eps, one), delta), one, "(eps x 1)delta vs 1")
    rep.expect_equal("counit", compose(kron(one, eps), delta), one, "(1 x eps)delta vs 1")
    dm = compose(delta, mu)
    rep.expect_equal("frobenius", compose(kron(one, mu), kron(delta, one)), dm,
                     "(1 x mu)(delta x 1) vs delta mu")
    rep.expect_equal("frobenius", compose(kron(mu, one), kron(one, delta)), dm,
                     "(mu x 1)(1 x delta) vs delta mu")
    rep.expect_equal("commutativity", compose(mu, swap(n)), mu, "mu.swap vs mu")
    return rep


@lru_cache(maxsize=64)
def is_valid(f: FrobeniusAlgebra) -> bool:
    return validate_frobenius(f).passed


def require_valid(f: FrobeniusAlgebra) -> FrobeniusAlgebra:
    if not is_valid(f):
        rep = validate_frobenius(f)
        raise ValidationError(f"invalid Frobenius algebra: failed {', '.join(rep.failed())}", rep)
    return f


# -- file form ----------------------------------------------------------------

def _matrix(obj) -> RationalMatrix:
    # accept the {"rows", "cols", "entries"} literal or a bare list of rows
    if isinstance(obj, dict):
        return RationalMatrix.from_json(obj)
    if isinstance(obj, list) and all(isinstance(r, list) for r in obj):
        try:
            return mat(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise ShapeError(f"bad matrix literal: {exc}") from None
    raise ShapeError(f"not a matrix literal: {obj!r}")


def from_json(obj: dict) -> FrobeniusAlgebra:
    try:
        n = int(obj["n"])
        maps = {k: _matrix(obj[k]) for k in ("unit", "mult", "counit", "comult")}
    except KeyError as exc:
        raise ShapeError(f"algebra file is missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"malformed algebra file: {exc}") from None
    return FrobeniusAlgebra(n, **maps)


def to_json(f: FrobeniusAlgebra) -> dict:
    return {"n": f.n, "unit": f.unit.to_json(), "mult": f.mult.to_json(),
            "counit": f.counit.to_json(), "comult": f.comult.to_json()}


def bundled(name: str) -> FrobeniusAlgebra:
    stem = name[:-5] if name.endswith(".json") else name
    if stem not in BUNDLED:
        raise FileNotFoundError(f"no bundled algebra named {name!r}; have {', '.join(BUNDLED)}")
    text = resources.files("etqft.data").joinpath(f"{stem}.json").read_text()
    return from_json(json.loads(text))


def load_algebra(spec: str) -> FrobeniusAlgebra:
    """Read an algebra from a file path, falling back to the bundled names."""
    path = Path(spec)
    if path.is_file():
        return from_json(json.loads(path.read_text()))
    return bundled(path.name)


# -- examples -----------------------------------------------------------------

def ground_field() -> FrobeniusAlgebra:
    one = mat([[1]])
    return FrobeniusAlgebra(1, one, one, one, one)


def dual_numbers() -> FrobeniusAlgebra:
    """``Q[x]/(x^2)`` on the basis ``(1, x)`` with ``eps(x) = 1``."""
    return FrobeniusAlgebra(
        2,
        unit=mat([[1], [0]]),
        mult=mat([[1, 0, 0, 0], [0, 1, 1, 0]]),
        counit=mat([[0, 1]]),
        comult=mat([[0, 0], [1, 0], [1, 0], [0, 1]]),
    )


def group_algebra_z2() -> FrobeniusAlgebra:
    """``Q[Z/2]`` on the basis ``(e, a)``; the counit reads off the ``e`` coefficient."""
    return FrobeniusAlgebra(
        2,
        unit=mat([[1], [0]]),
        mult=mat([[1, 0, 0, 1], [0, 1, 1, 0]]),
        counit=mat([[1, 0]]),
        comult=mat([[1, 0], [0, 1], [0, 1], [1, 0]]),
    )


def upper_triangular() -> FrobeniusAlgebra:
    """Upper-triangular 2x2 matrices on ``(E11, E12, E22)``: associative and unital
    but not commutative.  The coalgebra half is the group-like one, ``delta(e) = e (x) e``."""
    n = 3
    table = {(0, 0): 0, (0, 1): 1, (1, 2): 1, (2, 2): 2}
    mult = [[0] * (n * n) for _ in range(n)]
    for (a, b), c in table.items():
        mult[c][a * n + b] = 1
    comult = [[0] * n for _ in range(n * n)]
    for k in range(n):
        comult[k * n + k][k] = 1
    return FrobeniusAlgebra(n, mat([[1], [0], [1]]), mat(mult), mat([[1, 1, 1]]), mat(comult))
