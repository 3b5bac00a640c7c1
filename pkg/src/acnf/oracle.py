"""Brute-force cross-checks that avoid the exact-sequence route.

* ``form_class_number`` counts reduced binary quadratic forms.
* ``direct_regulator`` finds actual generators of O^x modulo torsion and takes
  the covolume of their logarithmic embedding.
* ``fiber_product_order`` builds the order {(a, b) : a = b mod p} in Z x Z.
"""

from dataclasses import dataclass
from itertools import product

import mpmath
import numpy as np
from sympy import isprime

from . import lattice
from .algebra import FieldSpec, build_algebra
from .errors import InconsistencyError, InputError
from .finite import global_unit_index
from .order import conductor, order_from_generators
from .quadratic import form_class_number  # noqa: F401  (public oracle)

RANK_THRESHOLD = 1e-6


@dataclass(frozen=True)
class LogEmbedding:
    full_rows: tuple
    rows: tuple
    covolume: float

    def numerical_rank(self, threshold=RANK_THRESHOLD):
        if not self.rows:
            return 0
        sv = np.linalg.svd(np.array(self.rows, dtype=float), compute_uv=False)
        return int(np.sum(sv > threshold))


def unit_exponent_lattice(order):
    """HNF basis of L = {a in Z^r : zeta * eps^a lies in O for some root of unity zeta}.

    eps_1..eps_r are the fundamental units of the components, in input order.
    Every a with entries in [0, [O~^x : O^x]] is tested; by Lagrange the
    lattice contains index * Z^r, so this box always finds a full-rank set.
    """
    alg = order.algebra
    _, free = alg.unit_group_generators()
    r = len(free)
    if r == 0:
        return ()
    ui = global_unit_index(order)
    ideal = conductor(order)
    red = lambda x: lattice.reduce_vector(x, ideal.basis)  # noqa: E731
    zetas = [red(z) for z in alg.torsion_elements()]
    powers = []
    for _, u in free:
        row = [red(alg.one())]
        for _ in range(ui):
            row.append(red(alg.mul(row[-1], u)))
        powers.append(row)
    hits = []
    for a in product(range(ui + 1), repeat=r):
        if not any(a):
            continue
        x = red(alg.one())
        for i, k in enumerate(a):
            x = red(alg.mul(x, powers[i][k]))
        if any(order.contains(red(alg.mul(z, x))) for z in zetas):
            hits.append(a)
    if not hits:
        raise InconsistencyError("no unit of O found in the exponent box")
    try:
        return lattice.hnf(hits, r)
    except ValueError:
        raise InconsistencyError(
            "enumeration box exhausted without a rank-r subgroup; unit index is inconsistent") from None


def order_unit_generators(order):
    """Exact generators of O^x modulo torsion, one per HNF column of the exponent lattice."""
    alg = order.algebra
    _, free = alg.unit_group_generators()
    gens = []
    for col in unit_exponent_lattice(order):
        x = alg.one()
        for (_, u), k in zip(free, col):
            x = alg.mul(x, alg.power(u, k))
        for z in alg.torsion_elements():
            y = alg.mul(z, x)
            if order.contains(y):
                gens.append(y)
                break
        else:
            raise InconsistencyError("exponent vector has no torsion twist inside O")
    return gens


def log_vector(algebra, x):
    """lambda(x): ln|x| at real places, 2 ln|x| at complex places, per component."""
    # conjugates can be as small as 1/|x|, so cancellation eats ~digits(x) digits
    digits = max(len(str(abs(a))) for a in x) if x else 1
    dps = 30 + 2 * digits
    out = []
    with mpmath.workdps(dps):
        for idx, (comp, block) in enumerate(zip(algebra.components, algebra.blocks(x))):
            vals = algebra.embed(idx, block, dps)
            out.append([(1 if k < comp.r1 else 2) * mpmath.log(abs(v)) for k, v in enumerate(vals)])
    return out


def log_embedding(algebra, units):
    full, rows = [], []
    for u in units:
        blocks = log_vector(algebra, u)
        full.append(tuple(float(v) for b in blocks for v in b))
        rows.append(tuple(float(v) for b in blocks for v in b[:-1]))
        with mpmath.workdps(30):
            for b in blocks:
                if abs(mpmath.fsum(b)) > 1e-9:
                    raise InconsistencyError("log vector of a unit does not sum to 0")
    vol = 1.0
    if rows:
        vol = abs(float(mpmath.det(mpmath.matrix([list(r) for r in rows]))))
    return LogEmbedding(tuple(full), tuple(rows), vol)


def direct_regulator(order):
    """Covolume of the log image of O^x, from explicit unit generators."""
    if order.algebra.r == 0:
        return 1.0
    return log_embedding(order.algebra, order_unit_generators(order)).covolume


def fiber_product_order(p, k=2):
    """{(a_1, ..., a_k) in Z^k : a_1 = ... = a_k mod p}."""
    if not isprime(p):
        raise InputError(f"fiber product needs a prime, got {p}")
    if k < 2:
        raise InputError("fiber product needs at least two copies")
    alg = build_algebra([FieldSpec((0, 1))] * k)
    gens = [tuple(p * int(i == j) for i in range(k)) for j in range(k - 1)]
    return order_from_generators(alg, gens)
