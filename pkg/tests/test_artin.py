import random
from fractions import Fraction

import pytest

from weylcas.artin import ArtinAlgebra, decompose_local
from weylcas.groebner import Ideal, NotZeroDimensionalError
from weylcas.poly import SparsePoly

Y = ("y",)
XY = ("x", "y")
yv = SparsePoly.variable(Y, 0)
x2 = SparsePoly.variable(XY, 0)
y2 = SparsePoly.variable(XY, 1)


def test_dual_numbers():
    A = ArtinAlgebra.from_presentation(Y, [yv ** 2])
    assert A.dim == 2
    ybar = A.to_vector(yv)
    assert all(c == 0 for c in A.mult(ybar, ybar))


def test_two_vars_presentation():
    A = ArtinAlgebra.from_presentation(XY, [x2, y2 ** 2])
    assert A.dim == 2


def test_cubic_presentation():
    A = ArtinAlgebra.from_presentation(Y, [yv ** 3 - yv ** 2])
    assert A.dim == 3
    assert [e for e in A.basis] == [(0,), (1,), (2,)]


def test_not_zero_dimensional():
    with pytest.raises(NotZeroDimensionalError):
        ArtinAlgebra.from_presentation(XY, [y2])


def test_ring_axioms_small():
    A = ArtinAlgebra.from_presentation(XY, [x2 ** 2 - y2, y2 ** 2])
    assert A.check_ring_axioms()


def test_decompose_split_quadratic():
    A = ArtinAlgebra.from_presentation(Y, [yv ** 2 - 1])
    factors = decompose_local(A)
    assert sorted(f.dim for f in factors) == [1, 1]


def test_decompose_local_already():
    A = ArtinAlgebra.from_presentation(Y, [yv ** 2])
    factors = decompose_local(A)
    assert [f.dim for f in factors] == [2]
    assert factors[0].residue_dim == 1


def test_decompose_nilpotent_plus_point():
    A = ArtinAlgebra.from_presentation(Y, [yv ** 3 - yv ** 2])
    factors = decompose_local(A)
    assert sorted(f.dim for f in factors) == [1, 2]


def test_decompose_irreducible_quadratic_is_field():
    A = ArtinAlgebra.from_presentation(Y, [yv ** 2 + 1])
    factors = decompose_local(A)
    assert [f.dim for f in factors] == [2]
    assert factors[0].residue_dim == 2
    assert A.is_field()


def test_decompose_product_of_two_quadratic_fields():
    A = ArtinAlgebra.from_presentation(Y, [(yv ** 2 + 1) * (yv ** 2 - 2)])
    factors = decompose_local(A)
    assert sorted(f.dim for f in factors) == [2, 2]
    assert sorted(f.residue_dim for f in factors) == [2, 2]


def test_decompose_needs_random_combination():
    # Q[x,y]/(x^2-2, y^2-2) = Q(sqrt2) x Q(sqrt2); both generators have
    # irreducible minimal polynomials, only a combination splits it
    A = ArtinAlgebra.from_presentation(XY, [x2 ** 2 - 2, y2 ** 2 - 2])
    factors = decompose_local(A)
    assert sorted(f.dim for f in factors) == [2, 2]


def test_radical_of_field_is_zero():
    A = ArtinAlgebra.from_presentation(Y, [yv ** 2 + 7])
    assert A.radical_basis() == []


def test_radical_dimension_dual_numbers():
    A = ArtinAlgebra.from_presentation(Y, [yv ** 4])
    assert len(A.radical_basis()) == 3


def random_zero_dim_ideal(rng):
    a = rng.randint(1, 5)
    b = rng.randint(1, 5)
    gens = []
    for lead_var, lead_deg in ((0, a), (1, b)):
        e = [0, 0]
        e[lead_var] = lead_deg
        terms = {tuple(e): Fraction(1)}
        for _ in range(rng.randint(0, 3)):
            tot = rng.randrange(max(lead_deg, 1))
            i = rng.randrange(tot + 1)
            mono = (i, tot - i)
            terms[mono] = terms.get(mono, 0) + Fraction(rng.randint(-3, 3))
        gens.append(SparsePoly(XY, terms))
    return Ideal(XY, gens)


def test_decompose_soundness_random():
    rng = random.Random(42)
    for _ in range(25):
        I = random_zero_dim_ideal(rng)
        A = ArtinAlgebra(I)
        if A.dim == 0:
            continue
        factors = decompose_local(A)  # internal asserts check idempotents
        assert sum(f.dim for f in factors) == A.dim
        assert sum(f.residue_dim for f in factors) <= A.dim
