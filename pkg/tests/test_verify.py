import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fasla.algebra import Algebra, FaslaTriple, SymplecticForm, commutator_algebra, standard_omega
from fasla.catalog import dim2_family, even_dim_family
from fasla.cohomology import dual_bimodule
from fasla.linalg import zeros
from fasla.sampling import random_fasla, random_left_symmetric
from fasla.verify import (
    check_associative,
    check_bimodule,
    check_compatibility,
    check_fasla,
    check_jacobi,
    check_left_symmetric,
    check_lie_bracket,
    check_nondegenerate,
    check_scalar_2cocycle,
    is_fasla,
)

F = Fraction


def test_left_symmetric_examples():
    assert check_left_symmetric(Algebra.zero(3)).passed
    assert check_left_symmetric(dim2_family(1, 2, 2).algebra).passed


def test_left_symmetric_failure_witness():
    # basis (e, d): d.e = e, e.e = d
    a = Algebra.from_table(2, {(1, 0): {0: 1}, (0, 0): {1: 1}}, ("e", "d"))
    (chk,) = check_left_symmetric(a).checks
    assert not chk.passed
    # (d,e,e) = -d and (e,d,e) = d, so the defect is 2d up to order
    i, j, k = chk.witness
    assert {i, j} == {0, 1} and k == 0
    assert abs(chk.discrepancy) == 2


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_left_symmetry_implies_jacobi(seed):
    a = random_left_symmetric(3, seed)
    assert check_left_symmetric(a).passed
    assert check_jacobi(a).passed


def test_jacobi_failure():
    # [e0,e1] = e2, [e0,e2] = e2, [e1,e2] = e0: the Jacobi sum is e0
    b = zeros((3, 3, 3))
    for (i, j, k) in ((0, 1, 2), (0, 2, 2), (1, 2, 0)):
        b[i, j, k] = F(1)
        b[j, i, k] = F(-1)
    rep = check_lie_bracket(Algebra(b))
    assert not rep["jacobi"].passed
    assert rep["jacobi"].witness == (0, 1, 2)


def test_scalar_cocycle_examples():
    t = dim2_family(1, 1, 1)
    assert check_scalar_2cocycle(t.algebra, SymplecticForm([[0, 3], [-3, 0]])).passed
    t4 = even_dim_family(2)
    assert check_scalar_2cocycle(t4.algebra, t4.omega).passed
    assert check_scalar_2cocycle(Algebra.zero(4), standard_omega(2)).passed


def test_compatibility_examples():
    t = dim2_family(2, 1, 1)
    assert check_compatibility(Algebra.zero(2), t.omega).passed
    assert check_compatibility(t.algebra, t.omega).passed
    sym = [[1, 0], [0, 1]]
    assert not check_compatibility(t.algebra, sym).passed


def test_nondegenerate():
    assert check_nondegenerate(standard_omega(1))
    assert not check_nondegenerate(SymplecticForm(zeros((2, 2))))
    assert check_nondegenerate(even_dim_family(2).omega)


def test_full_check():
    assert is_fasla(FaslaTriple(Algebra.zero(2), standard_omega(1)))
    assert is_fasla(dim2_family(0, 1, 2))
    t = dim2_family(0, 1, 1)
    bad = FaslaTriple(t.algebra, SymplecticForm(zeros((2, 2))))
    rep = check_fasla(bad)
    assert not rep.passed
    assert [c.name for c in rep.failures] == ["nondegenerate"]


def test_report_rendering():
    rep = check_fasla(dim2_family(0, 1, 1))
    doc = json.loads(rep.to_json())
    assert all(line["passed"] for line in doc)
    assert "left_symmetric" in rep.to_table()


def test_bimodule_examples():
    a = dim2_family(0, 1, 1).algebra
    zero = [zeros((2, 2))] * 2
    assert check_bimodule(a, zero, zero).passed
    b = dual_bimodule(a)
    assert b.check().passed
    left = list(b.left_action)
    left[0] = left[0] + F(1)
    rep = check_bimodule(a, left, b.right_action)
    assert not rep["bimodule_left_representation"].passed


def test_associative():
    assert check_associative(Algebra.zero(2))
    assert not check_associative(dim2_family(0, 1, 1).algebra)
    assert check_associative(dim2_family(1, 0, 0).algebra)


@pytest.mark.parametrize("dim", [2, 4])
def test_random_faslas_pass(dim):
    for seed in range(3):
        t = random_fasla(dim, seed)
        assert check_fasla(t).passed
        assert check_jacobi(commutator_algebra(t.algebra)).passed
