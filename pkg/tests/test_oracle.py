import math

import pytest

from acnf import InputError, build_algebra, direct_regulator, fiber_product_order, regulator
from acnf.oracle import log_embedding, order_unit_generators, unit_exponent_lattice
from acnf.order import maximal_order
from corpus import CUBE_ROOT_2, conductor_order, corpus, quad


def test_fiber_product_order():
    o = fiber_product_order(5)
    assert o.basis == ((1, 1), (0, 5))
    assert fiber_product_order(3, k=3).index == 9
    for bad in (1, 4, 91):
        with pytest.raises(InputError):
            fiber_product_order(bad)
    with pytest.raises(InputError):
        fiber_product_order(3, k=1)


def test_exponent_lattice():
    assert unit_exponent_lattice(conductor_order([quad(5)], 2)) == ((3,),)
    assert unit_exponent_lattice(maximal_order(build_algebra([quad(2)]))) == ((1,),)
    assert unit_exponent_lattice(maximal_order(build_algebra([quad(-1)]))) == ()


def test_units_lie_in_order():
    for _, o in corpus():
        gens = order_unit_generators(o)
        assert len(gens) == o.algebra.r
        for u in gens:
            assert o.contains(u)


def test_log_embedding_trace_zero():
    o = conductor_order([quad(2), quad(3), quad(-1)], 2)
    emb = log_embedding(o.algebra, order_unit_generators(o))
    for row in emb.full_rows:
        # columns are (Q(2): 2 places, Q(3): 2, Q(i): 1)
        assert abs(row[0] + row[1]) < 1e-12 and abs(row[2] + row[3]) < 1e-12
        assert abs(row[4]) < 1e-12
    assert emb.numerical_rank() == 2


def test_direct_regulator_maximal():
    assert direct_regulator(maximal_order(build_algebra([quad(5)]))) == pytest.approx(
        math.log((1 + math.sqrt(5)) / 2), rel=1e-14)
    assert direct_regulator(maximal_order(build_algebra([CUBE_ROOT_2]))) == pytest.approx(
        1.3473773483293841, rel=1e-14)
    assert direct_regulator(maximal_order(build_algebra([quad(-7)]))) == 1.0


def test_direct_regulator_big_unit():
    # Q(sqrt 94): fundamental unit 2143295 + 221064 sqrt 94
    o = conductor_order([quad(94)], 3)
    assert direct_regulator(o) == pytest.approx(regulator(o), rel=1e-12)
