import random

import pytest

from etqft.cob import frobenius as fr
from etqft.cob.syntax import typecheck
from etqft.cob.tqft import RELATIONS, SYNONYMS, evaluate, random_word
from etqft.errors import CobTypeError, RestrictionError, ShapeError, ValidationError
from etqft.exactlinalg import RationalMatrix, mat
from etqft.extended import (
    ExtendedValue,
    FrobeniusObject2Vect,
    evaluate_extended,
    lift_discrete,
    load_frobenius_object,
    regroup,
    relation_suite_extended,
    restrict,
    save_frobenius_object,
    swap_functor,
    tensor_in_powers,
    validate_frobenius_object,
)
from etqft.monoidal import tensor_power
from etqft.twocells import compose_functors, id_functor, validate_functor
from etqft.twovect import ChainComplex2, discrete, from_chain_complex

T_ARROWS = from_chain_complex(ChainComplex2.of(mat([[1, 0], [0, 0]])))


def test_lift_ground_field():
    fo = lift_discrete(fr.ground_field())
    assert fo.carrier == discrete(1)
    for name in ("unit", "mult", "counit", "comult"):
        F = getattr(fo, name)
        assert F.F0 == mat([[1]]) and F.F1 == mat([[1]])


def test_lift_dual_numbers():
    fo = lift_discrete(fr.dual_numbers())
    assert fo.carrier == discrete(2)
    assert fo.mult.F0 == fr.dual_numbers().mult
    assert fo.mult.dom == discrete(4)
    assert validate_frobenius_object(fo).passed


def test_lift_rejects_invalid_algebra():
    with pytest.raises(ValidationError):
        lift_discrete(fr.upper_triangular())


def test_lifted_objects_pass_invariants(algebra):
    rep = validate_frobenius_object(lift_discrete(algebra))
    assert rep.passed, rep.table()


def test_structure_maps_need_the_right_boundaries():
    fo = lift_discrete(fr.dual_numbers())
    with pytest.raises(ShapeError):
        FrobeniusObject2Vect(fo.carrier, fo.unit, fo.comult, fo.counit, fo.mult)


def test_identity_word():
    fo = lift_discrete(fr.group_algebra_z2())
    v = evaluate_extended("id(1)", fo)
    assert v.functor == id_functor(fo.carrier)
    assert (v.src, v.tgt) == (1, 1)


def test_torus_value():
    v = evaluate_extended("cup . pants . copants . cap", lift_discrete(fr.dual_numbers()))
    assert v.functor.dom == discrete(1) and v.functor.cod == discrete(1)
    assert v.functor.F0 == mat([[2]])


def test_relations_lift(algebra):
    rep = relation_suite_extended(lift_discrete(algebra))
    assert rep.passed, rep.table()


def test_restriction_on_named_words(algebra):
    fo = lift_discrete(algebra)
    for words in SYNONYMS.values():
        for w in words:
            assert restrict(evaluate_extended(w, fo)) == evaluate(w, algebra)
    for _, lhs, rhs in RELATIONS:
        assert restrict(evaluate_extended(lhs, fo)) == evaluate(lhs, algebra)
        assert restrict(evaluate_extended(rhs, fo)) == evaluate(rhs, algebra)


def test_restriction_on_random_words(algebra):
    fo = lift_discrete(algebra)
    rng = random.Random(23)
    for _ in range(40):
        w = random_word(rng)
        v = evaluate_extended(w, fo)
        src, tgt = typecheck(w)
        assert v.functor.dom == tensor_power(fo.carrier, src)
        assert v.functor.cod == tensor_power(fo.carrier, tgt)
        # discrete carriers: arrows carry nothing beyond objects
        assert v.functor.F1 == v.functor.F0
        assert restrict(v) == evaluate(w, algebra)


def test_restrict_identity_and_non_discrete():
    assert restrict(id_functor(discrete(3))) == RationalMatrix.identity(3)
    with pytest.raises(RestrictionError):
        restrict(ExtendedValue(id_functor(T_ARROWS), 1, 1))


def test_evaluate_extended_preconditions():
    fo = lift_discrete(fr.ground_field())
    with pytest.raises(CobTypeError):
        evaluate_extended("cap . cap", fo)


# -- non-discrete carrier: structural maps only ------------------------------------

def test_swap_functor_on_arrows():
    S = swap_functor(T_ARROWS)
    assert validate_functor(S).passed
    assert compose_functors(S, S) == id_functor(S.dom)


def test_regroupings_are_valid_isos():
    for a in range(4):
        for c in range(4 - a + 1):
            R = regroup(T_ARROWS, a, c)
            assert validate_functor(R).passed
            assert R.dom.c0 == R.cod.c0


def test_braid_relation_on_arrows():
    T = T_ARROWS
    S, one = swap_functor(T), id_functor(T)
    left = tensor_in_powers(S, (2, 2), one, (1, 1), T)
    right = tensor_in_powers(one, (1, 1), S, (2, 2), T)
    assert compose_functors(left, compose_functors(right, left)) == \
        compose_functors(right, compose_functors(left, right))


def test_par_is_strictly_associative_on_arrows():
    T = T_ARROWS
    S, one = swap_functor(T), id_functor(T)
    x = tensor_in_powers(tensor_in_powers(S, (2, 2), one, (1, 1), T), (3, 3), S, (2, 2), T)
    y = tensor_in_powers(S, (2, 2), tensor_in_powers(one, (1, 1), S, (2, 2), T), (3, 3), T)
    assert x == y


def test_frobenius_object_file_roundtrip(tmp_path):
    fo = lift_discrete(fr.group_algebra_z2())
    path = save_frobenius_object(fo, tmp_path / "z2")
    assert load_frobenius_object(path) == fo
