import json
import random

import pytest

from etqft import sampling
from etqft.errors import CompositionError, PreconditionError, ShapeError
from etqft.exactlinalg import RationalMatrix, compose, mat
from etqft.twocells import (
    InternalFunctor,
    InternalNatTrans,
    check_strict_2category,
    compose_functors,
    functor_from_chain_map,
    functor_from_json,
    functor_to_json,
    hcompose,
    hcompose_other,
    homotopy_of,
    id_functor,
    id_nat,
    interchange_check,
    nat_from_homotopy,
    nat_from_json,
    nat_to_json,
    validate_functor,
    validate_nat,
    vcompose,
    whisker_left,
    whisker_right,
)
from etqft.twovect import ChainComplex2, discrete, from_chain_complex, presentation, to_json

I = RationalMatrix.identity
D2 = ChainComplex2.of(mat([[2]]))


def _random_functors(seed, n, max_dim=4):
    rng = random.Random(seed)
    cs = [sampling.random_chain_complex(rng, max_dim, max_dim) for _ in range(n + 1)]
    return rng, cs, [sampling.random_functor(rng, cs[k], cs[k + 1]) for k in range(n)]


def test_identity_functor():
    F = id_functor(discrete(2))
    assert F.F0 == I(2) and F.F1 == I(2)
    assert validate_functor(F).passed


def test_identity_chain_map_gives_identity_functor():
    assert functor_from_chain_map(I(1), I(1), D2, D2) == id_functor(from_chain_complex(D2))


def test_scaling_chain_map():
    F = functor_from_chain_map(mat([[3]]), mat([[3]]), D2, D2)
    assert validate_functor(F).passed
    assert F.F1 == mat([[3, 0], [0, 3]])


def test_zero_differential_imposes_nothing():
    zero = ChainComplex2.of(mat([[0]]))
    assert validate_functor(functor_from_chain_map(I(1), mat([[0]]), zero, zero)).passed


def test_non_commuting_square_reports_residual():
    with pytest.raises(PreconditionError, match="residual"):
        functor_from_chain_map(mat([[1]]), mat([[3]]), D2, D2)


def test_zeroed_arrow_map_breaks_identities():
    tv = discrete(1)
    rep = validate_functor(InternalFunctor(tv, tv, I(1), mat([[0]])))
    assert "identities" in rep.failed()


def test_functor_shape_error():
    with pytest.raises(ShapeError):
        InternalFunctor(discrete(1), discrete(2), I(1), I(1))


def test_functor_composition_laws():
    for seed in range(40):
        _, cs, (f, g, h) = _random_functors(seed, 3)
        assert compose_functors(f, id_functor(f.dom)) == f
        assert compose_functors(id_functor(f.cod), f) == f
        assert compose_functors(h, compose_functors(g, f)) == compose_functors(compose_functors(h, g), f)
        assert validate_functor(compose_functors(g, f)).passed


def test_compose_mismatch():
    with pytest.raises(CompositionError):
        compose_functors(id_functor(discrete(1)), id_functor(discrete(2)))


def test_identity_2cells():
    F = id_functor(from_chain_complex(D2))
    a = id_nat(F)
    assert a.alpha == F.cod.i
    assert validate_nat(a).passed


def test_homotopy_cells_are_natural_and_round_trip():
    for seed in range(60):
        rng, _, (f,) = _random_functors(seed, 1)
        a = sampling.random_homotopy_cell(rng, f)
        assert validate_nat(a).passed
        h = homotopy_of(a)
        assert nat_from_homotopy(f, h) == a
        assert a.cod.F0 - f.F0 == compose(presentation(a.target).d, h)


def test_wrong_boundary_is_reported():
    F = id_functor(from_chain_complex(D2))
    a = nat_from_homotopy(F, mat([[1]]))
    assert a.cod.F0 == mat([[3]])
    assert "boundary" in validate_nat(InternalNatTrans(F, F, a.alpha)).failed()


def test_homotopies_add_under_vertical_composition():
    for seed in range(40):
        rng, _, (f,) = _random_functors(seed, 1)
        a = sampling.random_homotopy_cell(rng, f)
        b = sampling.random_homotopy_cell(rng, a.cod)
        assert homotopy_of(vcompose(b, a)) == homotopy_of(b) + homotopy_of(a)


def test_vertical_units_and_mismatch():
    rng, _, (f,) = _random_functors(7, 1)
    a = sampling.random_homotopy_cell(rng, f)
    assert vcompose(a, id_nat(f)) == a
    assert vcompose(id_nat(a.cod), a) == a
    shifted = nat_from_homotopy(id_functor(from_chain_complex(D2)), mat([[1]]))
    with pytest.raises(CompositionError):
        vcompose(shifted, shifted)


def test_horizontal_identity_of_identities():
    for seed in range(20):
        _, _, (f, h) = _random_functors(seed, 2)
        assert hcompose(id_nat(h), id_nat(f)) == id_nat(compose_functors(h, f))


def test_whiskers_are_horizontal_composites():
    rng, _, (f, h) = _random_functors(11, 2)
    a = sampling.random_homotopy_cell(rng, f)
    assert whisker_left(h, a) == hcompose(id_nat(h), a)
    c = sampling.random_homotopy_cell(rng, h)
    assert whisker_right(c, f) == hcompose(c, id_nat(f))
    assert validate_nat(whisker_left(h, a)).passed


def test_pastings_agree():
    for seed in range(40):
        rng, _, (f, h) = _random_functors(seed, 2)
        a = sampling.random_homotopy_cell(rng, f)
        c = sampling.random_homotopy_cell(rng, h)
        assert hcompose(c, a) == hcompose_other(c, a)


def test_interchange_identities_and_mismatch():
    _, _, (f, g) = _random_functors(2, 2)
    one_f, one_g = id_nat(f), id_nat(g)
    assert interchange_check(one_g, one_g, one_f, one_f)
    with pytest.raises(CompositionError):
        interchange_check(one_f, one_f, one_g, one_g)


def test_strict_2category_small_run():
    rep = check_strict_2category(samples=25, seed=1, max_dim=3)
    assert rep.passed, rep.table()


def test_file_forms(tmp_path):
    rng, _, (f,) = _random_functors(4, 1)
    assert functor_from_json(functor_to_json(f)) == f
    (tmp_path / "a.json").write_text(json.dumps(to_json(f.dom)))
    (tmp_path / "b.json").write_text(json.dumps(to_json(f.cod)))
    obj = {"dom": "a.json", "cod": "b.json", **functor_to_json(f, boundaries=False)}
    assert functor_from_json(obj, tmp_path) == f
    a = sampling.random_homotopy_cell(rng, f)
    assert nat_from_json(nat_to_json(a)) == a
    (tmp_path / "f.json").write_text(json.dumps(obj))
    g = functor_to_json(a.cod, boundaries=False)
    g.update(dom="a.json", cod="b.json")
    (tmp_path / "g.json").write_text(json.dumps(g))
    assert nat_from_json({"dom": "f.json", "cod": "g.json", "alpha": a.alpha.to_json()},
                         tmp_path) == a
    with pytest.raises(ShapeError):
        functor_from_json({"F0": f.F0.to_json()}, dom=f.dom, cod=f.cod)
