from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fasla.algebra import (
    Algebra,
    FaslaTriple,
    SymplecticForm,
    basis_vector,
    commutator_algebra,
    right_mult_matrix,
    standard_omega,
)
from fasla.catalog import aff_r, dim2_family, paper_suite, zero_triple
from fasla.cotangent import CotangentData, hess_data, hess_product, twisted_cotangent
from fasla.double_extension import ExtensionParams, double_extend
from fasla.dynamics import (
    AffineSymplecticElement,
    NonNilpotentExponential,
    approx_etale,
    biinvariant_analysis,
    central_translations,
    chu_connection,
    completeness,
    compose_affine,
    cotangent_completeness,
    etale_representation,
    sample_vectors,
    symplectic_check,
    translation_directions,
)
from fasla.linalg import as_rational, char_poly, exact_rank, eye, is_zero, rational_roots, zeros
from fasla.sampling import random_fasla
from fasla.verify import check_associative, check_compatibility, check_left_symmetric

F = Fraction
E, D = basis_vector(2, 0), basis_vector(2, 1)


def test_abelian_beta_one_complete():
    t = dim2_family(1, 0, 0)
    r = completeness(t)
    assert r.unimodular and r.complete and r.right_mults_nilpotent
    rd = right_mult_matrix(t.algebra, D)
    assert is_zero(rd @ rd)


@pytest.mark.parametrize("mu", [1, 3, F(-1, 2)])
def test_lambda_eq_mu_incomplete(mu):
    mu = F(mu)
    t = dim2_family(0, mu, mu)
    r = completeness(t)
    assert not r.complete and not r.unimodular
    # tr(ad_d) is +mu with [d, e] = mu e
    assert r.traces_ad[1] == mu
    assert -mu in rational_roots(char_poly(right_mult_matrix(t.algebra, D)))
    assert r.non_nilpotent_witness is not None


def test_traces_of_left_multiplications_vanish():
    for e in paper_suite():
        assert not any(completeness(e.triple).traces_L)
    for seed in range(4):
        assert not any(completeness(random_fasla(4, seed)).traces_L)


def test_completeness_rejects_non_fasla():
    bad = FaslaTriple(Algebra.zero(2), SymplecticForm(zeros((2, 2))))
    with pytest.raises(ValueError):
        completeness(bad)


def test_sample_seed_override(monkeypatch):
    monkeypatch.setenv("FASLA_SEED", "17")
    a = sample_vectors(3)
    monkeypatch.setenv("FASLA_SEED", "17")
    assert all(np.all(x == y) for x, y in zip(a, sample_vectors(3)))
    monkeypatch.setenv("FASLA_SEED", "not-a-number")
    with pytest.raises(ValueError):
        sample_vectors(3)


def test_chu_abelian_is_zero():
    assert is_zero(chu_connection(Algebra.zero(2), standard_omega(1)).product)


def test_chu_aff_r():
    t = dim2_family(0, 1, 1)
    prod = chu_connection(commutator_algebra(t.algebra), t.omega)
    # solved by hand from omega(x.y, z) = -omega(y, [x, z])
    assert list(prod.mul(D, D)) == [0, -1]
    assert list(prod.mul(E, D)) == [-1, 0]
    assert is_zero(prod.mul(D, E)) and is_zero(prod.mul(E, E))
    assert not check_compatibility(prod, t.omega).passed


def test_chu_cotangent_bracket():
    t = hess_product(aff_r())
    br = commutator_algebra(t.algebra)
    prod = chu_connection(br, t.omega)
    assert check_left_symmetric(prod).passed
    assert commutator_algebra(prod) == br


def test_chu_rejects_bad_input():
    t = dim2_family(0, 1, 1)
    with pytest.raises(ValueError):
        chu_connection(t.algebra, t.omega)


def test_etale_trivial():
    t = FaslaTriple(Algebra.zero(2), standard_omega(1))
    x = as_rational([3, -1])
    el = etale_representation(t, x)
    assert el == AffineSymplecticElement(x, eye(2))


@settings(max_examples=20, deadline=None)
@given(st.fractions(max_denominator=9, min_value=-5, max_value=5),
       st.fractions(max_denominator=9, min_value=-5, max_value=5),
       st.integers(-3, 3))
def test_etale_closed_form(s, r, beta):
    t = dim2_family(beta, 0, 0)
    el = etale_representation(t, s * D)
    big_e = zeros((2, 2))
    big_e[0, 1] = F(1)
    assert np.all(el.translation == s * D + s * s * beta / 2 * E)
    assert np.all(el.linear == eye(2) + s * beta * big_e)
    assert symplectic_check(el, t.omega)
    both = compose_affine(el, etale_representation(t, r * D))
    assert both == etale_representation(t, (s + r) * D)


def test_etale_non_nilpotent():
    t = dim2_family(0, 2, 2)
    with pytest.raises(NonNilpotentExponential) as info:
        etale_representation(t, D)
    # L_d has eigenvalues mu and -mu
    assert info.value.min_poly == (1, 0, -4)


def test_etale_symplectic_on_random():
    t = random_fasla(4, 3)
    for x in sample_vectors(4, seed=5):
        try:
            el = etale_representation(t, x)
        except NonNilpotentExponential:
            continue
        assert symplectic_check(el, t.omega)


def test_approx_etale_matches_exact():
    t = dim2_family(2, 0, 0)
    q, f, bound = approx_etale(t, D, 4)
    el = etale_representation(t, D)
    assert np.allclose(q, np.array(el.translation, dtype=float))
    assert np.allclose(f, np.array(el.linear, dtype=float))
    assert bound >= 0


def test_symplectic_check():
    om = standard_omega(1)
    assert symplectic_check(AffineSymplecticElement.identity(2), om)
    assert not symplectic_check(AffineSymplecticElement(zeros(2), as_rational([[2, 0], [0, 1]])), om)


def test_compose():
    el = AffineSymplecticElement(as_rational([1, 2]), as_rational([[1, 1], [0, 1]]))
    ident = AffineSymplecticElement.identity(2)
    assert compose_affine(el, ident) == el and compose_affine(ident, el) == el
    a = AffineSymplecticElement(as_rational([1, 2]), eye(2))
    b = AffineSymplecticElement(as_rational([-3, 5]), eye(2))
    assert compose_affine(a, b) == AffineSymplecticElement(as_rational([-2, 7]), eye(2))


def test_central_translations():
    for e in paper_suite():
        if check_associative(e.triple.algebra):
            assert central_translations(e.triple)
    assert central_translations(dim2_family(0, 1, 2)) == []


def test_translation_directions_contain_e_when_lambda_eq_mu():
    for mu in (1, 2):
        t = double_extend(random_fasla(2, mu), ExtensionParams.zero(2, 1, mu, mu))
        dirs = translation_directions(t)
        e = basis_vector(4, 0)
        assert exact_rank(np.array(dirs + [e], dtype=object)) == len(dirs)


def test_biinvariant_dim2():
    b = biinvariant_analysis(dim2_family(1, 0, 0))
    assert b.passed and b.power_chain_dims == [2, 1, 0]


def test_biinvariant_two_step():
    t = double_extend(double_extend(zero_triple(), ExtensionParams.zero(0)),
                      ExtensionParams.zero(2))
    b = biinvariant_analysis(t)
    assert b.passed and b.power_chain_dims[-1] == 0


def test_biinvariant_needs_associative():
    with pytest.raises(ValueError):
        biinvariant_analysis(dim2_family(0, 1, 1))


def test_cotangent_completeness_examples():
    r = cotangent_completeness(hess_data(Algebra.zero(2)))
    assert r.agree and r.complete and r.hess_base_complete
    nil = Algebra.from_table(2, {(1, 1): {0: 1}})
    r = cotangent_completeness(hess_data(nil))
    assert r.agree and r.complete and r.built_trace_complete
    r = cotangent_completeness(hess_data(aff_r()))
    assert r.agree and not r.complete and not r.base_right_nilpotent
    assert not r.hess_base_complete


def test_cotangent_completeness_line():
    line = Algebra.from_table(1, {(0, 0): {0: 1}})
    f = zeros((1, 1, 1))
    f[0, 0, 0] = F(1)
    d = CotangentData(line, zeros((1, 1, 1)), f)
    r = cotangent_completeness(d)
    assert r.agree and not r.complete
    assert twisted_cotangent(d).dim == 2
