import random

import pytest
from hypothesis import given, strategies as st

from etqft.errors import PreconditionError, ShapeError, ValidationError
from etqft.exactlinalg import RationalMatrix, compose, inverse, mat, rank
from etqft.sampling import random_chain_complex, random_matrix
from etqft.twocells import InternalFunctor, validate_functor
from etqft.twovect import (
    AXIOMS,
    ChainComplex2,
    TwoVect,
    canonical,
    discrete,
    forced_composition,
    from_chain_complex,
    from_json,
    is_canonical,
    roundtrip_iso,
    to_chain_complex,
    to_json,
    validate,
)
from strategies import chain_complexes

I = RationalMatrix.identity


def change_arrow_basis(tv: TwoVect, p: RationalMatrix) -> TwoVect:
    """The same category with arrows expressed in a new basis (``p``: new -> old)."""
    q = inverse(p)
    s, t, i = compose(tv.s, p), compose(tv.t, p), compose(q, tv.i)
    return TwoVect(tv.c0, tv.c1, s, t, i, forced_composition(s, t, i))


def random_invertible(rng, n):
    while True:
        p = random_matrix(rng, n, n)
        if rank(p) == n:
            return p


@pytest.mark.parametrize("n", [0, 1, 3, 5])
def test_discrete_is_valid(n):
    tv = discrete(n)
    assert validate(tv).passed
    assert tv.is_discrete
    assert to_chain_complex(tv) == ChainComplex2(n, 0, RationalMatrix.zeros(n, 0))


def test_discrete_composition_is_diagonal():
    tv = discrete(2)
    # on the pullback (g, g) of a discrete category the composite is g
    pair = tv.pb.pair(I(2), I(2))
    assert compose(tv.comp, pair) == I(2)


def test_chain_complex_example_values():
    tv = from_chain_complex(ChainComplex2.of(mat([[2]])))
    assert (tv.c0, tv.c1) == (1, 2)
    assert tv.s == mat([[1, 0]])
    assert tv.t == mat([[1, 2]])
    assert tv.i == mat([[1], [0]])
    assert validate(tv).passed


def test_composite_of_chain_complex_arrows():
    tv = from_chain_complex(ChainComplex2.of(mat([[2]])))
    # (x, v) = (1, 1) runs 1 -> 3, then (y, w) = (3, 5); composite is (1, 6)
    f, g = mat([[1], [1]]), mat([[3], [5]])
    assert compose(tv.comp, tv.pb.pair(g, f)) == mat([[1], [6]])


def test_zero_differential_gives_loops():
    tv = from_chain_complex(ChainComplex2.of(mat([[0]])))
    assert tv.s == tv.t
    assert validate(tv).passed


def test_empty_arrow_part_is_discrete():
    assert from_chain_complex(ChainComplex2(3, 0, RationalMatrix.zeros(3, 0))) == discrete(3)


@given(chain_complexes())
def test_from_chain_complex_validates_and_round_trips(cc):
    tv = from_chain_complex(cc)
    assert validate(tv).passed
    assert to_chain_complex(tv) == cc
    assert forced_composition(tv.s, tv.t, tv.i) == tv.comp


def test_every_comp_mutation_is_caught():
    rng = random.Random(3)
    for _ in range(30):
        tv = from_chain_complex(random_chain_complex(rng, 3, 3, min_v0=1))
        for k in range(len(tv.comp.entries)):
            bumped = list(tv.comp.entries)
            bumped[k] += 1
            bad = TwoVect(tv.c0, tv.c1, tv.s, tv.t, tv.i,
                          RationalMatrix(tv.comp.rows, tv.comp.cols, tuple(bumped)))
            rep = validate(bad)
            assert not rep.passed
            assert set(rep.failed()) & {"left unit", "right unit", "composite boundary"}


def test_failure_carries_witness():
    tv = discrete(1)
    bad = TwoVect(1, 1, tv.s, tv.t, tv.i, mat([[2]]))
    rep = validate(bad)
    assert "left unit" in rep.failed()
    assert rep.checks["left unit"].failures[0].startswith("i(t f).f: e_0")


def test_shape_errors():
    with pytest.raises(ShapeError):
        TwoVect(1, 2, mat([[1, 0]]), mat([[1, 0]]), mat([[1]]), mat([[1]]))
    with pytest.raises(ShapeError):
        TwoVect(1, 1, mat([[1]]), mat([[1]]), mat([[1]]), mat([[1, 0]]))


def test_forced_composition_precondition():
    with pytest.raises(PreconditionError):
        forced_composition(mat([[1]]), mat([[1]]), mat([[2]]))


def test_to_chain_complex_rejects_invalid():
    tv = discrete(1)
    with pytest.raises(ValidationError):
        to_chain_complex(TwoVect(1, 1, tv.s, tv.t, tv.i, mat([[2]])))


@given(chain_complexes(max_v0=3, max_v1=3), st.randoms(use_true_random=False))
def test_non_canonical_objects(cc, rnd):
    base = from_chain_complex(cc)
    if base.c1 == 0:
        return
    tv = change_arrow_basis(base, random_invertible(rnd, base.c1))
    assert validate(tv).passed
    # composition is forced by s, t, i
    assert forced_composition(tv.s, tv.t, tv.i) == tv.comp
    back = canonical(tv)
    assert is_canonical(back)
    assert (back.c0, back.c1) == (tv.c0, tv.c1)
    assert back.c1 - rank(back.s) == tv.c1 - rank(tv.s)
    phi, phi_inv = roundtrip_iso(tv)
    assert compose(phi_inv, phi) == I(tv.c1)
    assert compose(phi, phi_inv) == I(tv.c1)
    assert validate_functor(InternalFunctor(back, tv, I(tv.c0), phi)).passed
    assert validate_functor(InternalFunctor(tv, back, I(tv.c0), phi_inv)).passed


def test_json_roundtrip_and_chain_form():
    tv = from_chain_complex(ChainComplex2.of(mat([[1, 2], [0, "1/2"]])))
    assert from_json(to_json(tv)) == tv
    assert from_json({"chain": {"d": mat([[1, 2], [0, "1/2"]]).to_json()}}) == tv
    obj = to_json(tv)
    del obj["comp"]
    assert from_json(obj) == tv
    del obj["s"]
    with pytest.raises(ShapeError):
        from_json(obj)


def test_axiom_names():
    assert set(validate(discrete(2)).checks) == set(AXIOMS)
