from fractions import Fraction

import pytest

from fasla.algebra import basis_vector
from fasla.catalog import (
    TABLE_NOTE,
    CatalogError,
    compute_annotations,
    dim2_family,
    entry_names,
    even_dim_family,
    get_entry,
    paper_suite,
)
from fasla.dynamics import central_translations, completeness
from fasla.linalg import as_rational, exact_rank, is_zero, zeros
from fasla.verify import check_fasla

F = Fraction


def test_suite_names_unique():
    names = entry_names()
    assert len(names) == len(set(names)) == 8


@pytest.mark.parametrize("name", [
    "dim2-abelian-beta0", "dim2-abelian-beta1", "dim2-lambda-eq-mu", "dim2-lambda-half-mu",
    "even-dim-n2", "even-dim-n3", "cotangent-aff(R)-hess", "cotangent-line-symmetric-f"])
def test_entry_annotations(name):
    e = get_entry(name)
    assert check_fasla(e.triple).passed
    assert compute_annotations(e.triple, e.expected) == e.expected


def test_beta1_entry():
    e = get_entry("dim2-abelian-beta1")
    assert e.expected["complete"]
    vecs = central_translations(e.triple)
    assert exact_rank(as_rational([list(v) for v in vecs] + [[1, 0]])) == len(vecs)


def test_lambda_eq_mu_entry_incomplete():
    assert not completeness(get_entry("dim2-lambda-eq-mu").triple).complete


def test_table_note():
    assert dim2_family(0, 1, 2).meta["table_note"] == TABLE_NOTE
    assert "table_note" not in dim2_family(0, 1, 1).meta


def test_dim2_rejects_bad_lambda():
    with pytest.raises(CatalogError):
        dim2_family(0, 3, 1)


def test_even_dim_examples():
    D = as_rational([[0, 1], [0, 0]])
    t = even_dim_family(2, D=D)
    r = completeness(t)
    assert check_fasla(t).passed and r.unimodular and r.complete
    assert is_zero(even_dim_family(2, D=zeros((2, 2))).algebra.product)
    x0 = zeros(4)
    x0[0] = F(1)
    t = even_dim_family(3, D=zeros((4, 4)), mu=1, lam=1, x0=x0)
    r = completeness(t)
    assert not r.complete and r.traces_ad[-1] == 1


def test_even_dim_rejects_bad_data():
    with pytest.raises(CatalogError):
        even_dim_family(2, D=as_rational([[1, 0], [0, 0]]))
    with pytest.raises(CatalogError):
        even_dim_family(2, mu=2, lam=1, x0=basis_vector(2, 0))
    with pytest.raises(CatalogError):
        even_dim_family(0)


def test_suite_is_deterministic():
    a = [(e.name, e.triple.algebra, e.triple.omega) for e in paper_suite()]
    b = [(e.name, e.triple.algebra, e.triple.omega) for e in paper_suite()]
    assert a == b
