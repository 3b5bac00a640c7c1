import copy
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from acnf import FieldSpec, InputError, build_algebra, build_field
from corpus import CUBE_ROOT_2, RATIONAL, quad


def supplied(**changes):
    data = copy.deepcopy(CUBE_ROOT_2.supplied_data)
    data.update(changes)
    return FieldSpec(CUBE_ROOT_2.poly, data)


def test_rational_field():
    k = build_field(RATIONAL)
    assert (k.degree, k.disc, k.w, k.h, k.r1, k.r2) == (1, 1, 2, 1, 1, 0)


@pytest.mark.parametrize("poly,disc,w,r1", [
    ((1, 0, 1), -4, 4, 0),
    ((1, 1, 1), -3, 6, 0),
    ((3, 0, 1), -3, 6, 0),
    ((-5, 0, 1), 5, 2, 2),
    ((-12, 0, 1), 12, 2, 2),
    ((5, 1, 1), -19, 2, 0),
])
def test_quadratic_fields(poly, disc, w, r1):
    k = build_field(FieldSpec(poly))
    assert (k.disc, k.w, k.r1) == (disc, w, r1)


def test_non_reduced_polynomial_basis():
    # theta^2 = 12, so omega = sqrt 3 = theta / 2
    k = build_field(FieldSpec((-12, 0, 1)))
    assert k.integral_basis[1] == (Fraction(0), Fraction(1, 2))


def test_golden_regulator():
    k = build_field(FieldSpec((-5, 0, 1)))
    assert k.regulator == pytest.approx(float(mpmath.log((1 + mpmath.sqrt(5)) / 2)), rel=1e-15)
    assert k.unit_generators == ((0, 1),)


@pytest.mark.parametrize("poly", [(1, 0, 2), (0, 2), (-4, 0, 1), (2, -3, 1), (-1, 0, 0, 0, 1)])
def test_rejects_bad_polynomials(poly):
    with pytest.raises(InputError):
        build_field(FieldSpec(poly))


def test_higher_degree_needs_data():
    with pytest.raises(InputError, match="supplied_data"):
        build_field(FieldSpec((-2, 0, 0, 1)))


def test_cubic_supplied():
    k = build_field(CUBE_ROOT_2)
    assert (k.degree, k.disc, k.r1, k.r2, k.w, k.h) == (3, -108, 1, 1, 2, 1)
    # a^3 = 2
    assert k.mult_table[1][2] == (2, 0, 0)


@pytest.mark.parametrize("changes,match", [
    ({"disc": -107}, "determinant"),
    ({"r1": 3, "r2": 0, "disc": 108, "unit_generators": [[1, 1, 1]] * 2}, "real roots"),
    ({"r1": 1, "r2": 0}, "r1 \\+ 2\\*r2"),
    ({"unit_generators": [[2, 1, 1]]}, "norm"),
    ({"unit_generators": []}, "unit generators"),
    ({"torsion_generator": [1, 0, 0]}, "exact order"),
    ({"disc": 108}, "sign"),
    ({"integral_basis": [[1, 0], [0, 1]]}, "integral_basis"),
    ({"w": "two"}, "integer"),
])
def test_supplied_data_validation(changes, match):
    with pytest.raises(InputError, match=match):
        build_field(supplied(**changes))


def test_supplied_data_missing_key():
    data = dict(CUBE_ROOT_2.supplied_data)
    del data["h"]
    with pytest.raises(InputError, match="'h'"):
        build_field(FieldSpec(CUBE_ROOT_2.poly, data))


def test_empty_algebra():
    with pytest.raises(InputError):
        build_algebra([])


def test_signature():
    alg = build_algebra([RATIONAL, quad(-1), quad(5), CUBE_ROOT_2])
    assert (alg.n, alg.r1, alg.r2, alg.m, alg.r) == (8, 4, 2, 4, 2)
    assert alg.offsets == (0, 1, 3, 5)


ALG = build_algebra([RATIONAL, quad(-3), CUBE_ROOT_2])
elem = st.lists(st.integers(-6, 6), min_size=ALG.n, max_size=ALG.n).map(tuple)


@given(elem, elem, elem)
def test_ring_axioms(x, y, z):
    assert ALG.mul(x, y) == ALG.mul(y, x)
    assert ALG.mul(ALG.mul(x, y), z) == ALG.mul(x, ALG.mul(y, z))
    assert ALG.mul(x, ALG.one()) == x
    s = tuple(a + b for a, b in zip(y, z))
    assert ALG.mul(x, s) == tuple(a + b for a, b in zip(ALG.mul(x, y), ALG.mul(x, z)))


@given(elem, elem)
def test_embeddings_are_ring_maps(x, y):
    xy = ALG.mul(x, y)
    for idx, (bx, by, bxy) in enumerate(zip(ALG.blocks(x), ALG.blocks(y), ALG.blocks(xy))):
        with mpmath.workdps(30):
            for a, b, c in zip(ALG.embed(idx, bx), ALG.embed(idx, by), ALG.embed(idx, bxy)):
                assert abs(a * b - c) <= 1e-20 * (1 + abs(c))


def test_trace():
    assert ALG.trace(ALG.one()) == ALG.n
    # trace of omega = (1 + sqrt -3)/2 is 1, of cbrt 2 is 0
    assert ALG.trace((0, 0, 1, 0, 0, 0)) == 1
    assert ALG.trace((0, 0, 0, 0, 1, 0)) == 0


def test_units_and_torsion():
    torsion, free = ALG.unit_group_generators()
    assert len(free) == ALG.r
    for _, u in free:
        assert abs(_det(ALG.mult_matrix(u))) == 1
    roots = ALG.torsion_elements()
    assert len(roots) == 2 * 6 * 2
    assert len(set(roots)) == len(roots)
    for z in roots:
        assert ALG.power(z, 6) == ALG.one()


def _det(m):
    from acnf.lattice import det
    return det(m)
