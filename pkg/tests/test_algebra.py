from fractions import Fraction

import pytest

from gsmash.algebra import (AlgebraMap, dual_groupoid_algebra, find_unit, graded_algebra, groupoid_algebra,
                            homogeneous_units, product_span, regular_module, subalgebra, validate_algebra,
                            validate_module)
from gsmash.errors import GsmError
from gsmash.fixtures import m2, m2_cyclic, pair2, qxq_diagonal, scalars
from gsmash.groupoid import cyclic_group, pair_groupoid, trivial_groupoid
from gsmash.linalg import Subspace

import oracles


@pytest.mark.parametrize("make", [lambda: m2(), m2_cyclic, lambda: qxq_diagonal(pair2()),
                                  lambda: scalars(trivial_groupoid()), lambda: groupoid_algebra(pair2()),
                                  lambda: groupoid_algebra(cyclic_group(3))])
def test_fixture_algebras_pass_the_oracle(make):
    GA = make()
    assert oracles.associativity_unit_failures(GA.algebra) == []


def test_m2_products():
    A = m2().algebra
    E = {n: A.basis(i) for i, n in enumerate(A.names)}
    assert A.mul(E["E21"], E["E12"]) == E["E22"]
    assert A.mul(E["E12"], E["E12"]) == (0, 0, 0, 0)


def test_nonassociative_and_nonunital_are_rejected():
    # b0 b0 = b1, all else zero except b1 b0 = b0: (b1 b0) b0 = b1 but b1 (b0 b0) = 0
    with pytest.raises(GsmError) as e:
        validate_algebra(2, {(0, 0): {1: 1}, (1, 0): {0: 1}}, [1, 0])
    assert e.value.code == "E_ASSOC"
    with pytest.raises(GsmError) as e:
        validate_algebra(2, {(0, 0): {0: 1}}, [1, 0])
    assert e.value.code in {"E_UNIT", "E_NO_UNIT"}


def test_find_unit():
    A = m2().algebra
    assert find_unit(A.dim, A.mult) == tuple(Fraction(c) for c in (1, 0, 0, 1))
    assert find_unit(1, {}) is None


def test_grading_violation_is_caught():
    G = pair2()
    mult = m2().algebra.mult
    with pytest.raises(GsmError) as e:
        graded_algebra(4, mult, [1, 0, 0, 1], G, [0, 1, 1, 3], ["E11", "E12", "E21", "E22"])
    assert e.value.code == "E_GRADING"


def test_homogeneous_units():
    GA = m2()
    assert len(homogeneous_units(GA)) == 2


def test_subalgebra_and_product_span():
    GA = m2()
    A = GA.algebra
    D = Subspace.coordinate(4, [0, 3])
    B = subalgebra(A, D)
    assert B.dim == 2 and oracles.associativity_unit_failures(B) == []
    off = GA.component_space(GA.groupoid.morphism("f_e"))
    assert product_span(A, off, GA.component_space(GA.groupoid.morphism("e_f"))) == Subspace.coordinate(4, [0])


def test_algebra_maps():
    A = m2().algebra
    ident = AlgebraMap(A, A, [[int(i == j) for j in range(4)] for i in range(4)])
    assert ident.is_isomorphism() and ident.is_unital() and ident.rank == 4
    # transpose is an anti-automorphism, so not multiplicative
    t = AlgebraMap(A, A, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert t.multiplicative_witness() is not None


def test_groupoid_algebra_and_dual():
    G = pair_groupoid(2)
    kG = groupoid_algebra(G)
    assert kG.dim == 4 and sum(kG.algebra.unit) == 2
    D = dual_groupoid_algebra(G)
    assert D.coassociativity_witness() is None
    assert D.comultiplicativity_witness() is None
    assert D.counit_witness() is None


def test_modules():
    A = m2().algebra
    R = regular_module(A)
    assert R.dim == 4
    col = [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]]
    validate_module(A, col, "left")
    with pytest.raises(GsmError) as e:
        validate_module(A, [col[0], col[2], col[1], col[3]], "left")
    assert e.value.code == "E_MODULE"
