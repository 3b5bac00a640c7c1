import math
from fractions import Fraction

import pytest

from acnf import (
    FieldSpec,
    build_algebra,
    class_number,
    discriminant,
    global_unit_index,
    maximal_invariants,
    order_invariants,
    regulator,
    verify_acnf,
    zeta_correction,
    zeta_partial,
)
from acnf.invariants import LeadingTerm, leading_term_lhs, local_product, zeta_correction_at
from acnf.oracle import order_unit_generators
from acnf.order import maximal_order, singular_primes
from acnf.quadratic import narrow_class_number, norm
from corpus import CUBE_ROOT_2, RATIONAL, conductor_order, corpus, monogenic, quad


def test_leading_term_extracts_squares():
    lt = LeadingTerm.build(1, 1, 1.0, 12)
    assert (lt.rational_factor, lt.abs_disc) == (Fraction(1, 2), 3)
    assert lt.float_value == pytest.approx(math.pi / math.sqrt(12))
    assert lt.same_shape(LeadingTerm(Fraction(1, 2), 1, 7.0, 3))
    assert not lt.same_shape(LeadingTerm(Fraction(1, 2), 0, 1.0, 3))


def test_maximal_invariants_multiply():
    alg = build_algebra([quad(-5), quad(-23), RATIONAL])
    inv = maximal_invariants(alg)
    assert (inv.h, inv.w, inv.disc) == (6, 8, -20 * -23)


def test_z_sqrt_minus_3():
    o = monogenic([quad(-3)], (-1, 2))
    inv = order_invariants(o)
    assert (inv.index, inv.disc, inv.w, inv.unit_index, inv.h) == (2, -12, 2, 3, 1)
    lt = inv.leading_term
    assert (lt.rational_factor, lt.pi_exponent, lt.abs_disc) == (Fraction(1, 2), 1, 3)


def test_gaussian_suborders():
    # Z[fi] has h = f prod(1 - (-4/p)/p) / [units]
    for f, h in [(2, 1), (3, 2), (5, 2), (7, 4), (10, 4)]:
        assert class_number(conductor_order([quad(-1)], f)) == h


def test_exact_sequence_identity():
    for _, o in corpus():
        lhs = class_number(o) * global_unit_index(o)
        rhs = maximal_invariants(o.algebra).h * local_product(o)
        assert lhs == rhs


def _fundamental_unit_norm(o):
    (u,) = order_unit_generators(o)
    d = o.algebra.components[0].squarefree
    return norm(d, *u)


@pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 10, 13, 15, 21, 34, 79])
@pytest.mark.parametrize("f", [1, 2, 3, 4, 5, 6])
def test_real_orders_against_narrow_cycles(d, f):
    o = conductor_order([quad(d)], f)
    hplus = narrow_class_number(discriminant(o))
    expect = hplus if _fundamental_unit_norm(o) == -1 else hplus // 2
    assert class_number(o) == expect


def test_regulator_of_suborder():
    # Z[sqrt 5] has fundamental unit 2 + sqrt 5 = golden^3
    o = conductor_order([quad(5)], 2)
    assert regulator(o) == pytest.approx(3 * maximal_invariants(o.algebra).regulator, rel=1e-15)


def test_zeta_correction():
    o = conductor_order([RATIONAL, RATIONAL], 7)
    assert zeta_correction(o) == Fraction(7, 6)
    assert zeta_correction(maximal_order(o.algebra)) == 1
    assert leading_term_lhs(o).rational_factor == Fraction(6, 7)


def test_zeta_correction_at_integer_is_exact():
    o = monogenic([quad(-3)], (-1, 2))
    # primes above 2: one of norm 4; below: one of norm 2
    assert zeta_correction_at(o, 2) == Fraction(15, 16) / Fraction(3, 4)
    assert zeta_correction_at(o, 2, prime_bound=1) == 1
    assert zeta_correction_at(o, 2.0) == pytest.approx(1.25)


def test_zeta_partial_domain():
    o = maximal_order(build_algebra([RATIONAL]))
    with pytest.raises(ValueError):
        zeta_partial(o, 1, 100)
    with pytest.raises(ValueError):
        zeta_partial(o, 2, 1)


def test_riemann_zeta():
    o = maximal_order(build_algebra([RATIONAL]))
    assert zeta_partial(o, 2, 10**5) == pytest.approx(math.pi ** 2 / 6, rel=1e-6)
    assert zeta_partial(o, 4, 10**4) == pytest.approx(math.pi ** 4 / 90, rel=1e-12)


def test_dedekind_zeta_gaussian():
    # zeta_{Q(i)}(2) = zeta(2) L(2, chi_4) = pi^2/6 * Catalan
    o = maximal_order(build_algebra([quad(-1)]))
    catalan = 0.915965594177219015
    assert zeta_partial(o, 2, 10**5) == pytest.approx(math.pi ** 2 / 6 * catalan, rel=1e-5)


@pytest.mark.parametrize("name", [n for n, _ in corpus()])
def test_verify_corpus(name):
    rep = verify_acnf(dict(corpus())[name])
    assert rep.verdict == "PASS", rep


def test_verify_detects_wrong_regulator():
    data = dict(CUBE_ROOT_2.supplied_data, regulator=1.3473195)
    o = conductor_order([FieldSpec(CUBE_ROOT_2.poly, data)], 3)
    rep = verify_acnf(o)
    assert rep.verdict == "FAIL"
    assert rep.exact_match and rep.regulator_rel_diff > 1e-6


def test_singular_primes_cover_index():
    for _, o in corpus():
        prod = 1
        for sp in singular_primes(o):
            prod *= sp.local_quotient_size
        assert prod == o.index


@pytest.mark.parametrize("p", [3, 7, 97])
def test_fiber_product_euler_product(p):
    o = conductor_order([RATIONAL, RATIONAL], p)
    z = maximal_order(build_algebra([RATIONAL]))
    bound = 2000
    assert zeta_partial(o, 2, bound) == pytest.approx(
        (1 - p ** -2) * zeta_partial(z, 2, bound) ** 2, rel=1e-14)
