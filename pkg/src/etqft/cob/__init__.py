"""Cobordism words, Frobenius algebras and the ordinary 2d TQFT evaluator."""
