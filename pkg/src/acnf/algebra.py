"""Etale Q-algebras K = K_1 x ... x K_m and the data of their maximal orders.

Every element of the maximal order is an integer vector of length ``n``: the
concatenation of its coordinates over the integral basis of each component.
"""

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import product

import mpmath
from sympy import Poly, Symbol

from . import quadratic
from .errors import InputError
from .lattice import det

_X = Symbol("x")


@dataclass(frozen=True)
class MaximalFieldData:
    """Classical invariants of the ring of integers of one number field.

    ``integral_basis[i]`` holds the power-basis coordinates (in the root of
    ``poly``) of the i-th integral basis element; ``mult_table[i][j]`` holds the
    integral-basis coordinates of the product of basis elements i and j.
    Unit generators and the torsion generator are integral-basis coordinates.
    """

    poly: tuple
    degree: int
    disc: int
    r1: int
    r2: int
    w: int
    h: int
    regulator: float
    integral_basis: tuple
    unit_generators: tuple
    torsion_generator: tuple
    mult_table: tuple = field(repr=False)

    @property
    def rank(self):
        return self.r1 + self.r2 - 1

    def is_quadratic(self):
        return self.degree == 2

    @property
    def squarefree(self):
        """d with K = Q(sqrt d); only meaningful for quadratic fields."""
        D = self.disc
        return D if D % 4 == 1 else D // 4


@dataclass(frozen=True)
class FieldSpec:
    poly: tuple
    supplied_data: dict = None


def _poly_mod_mul(a, b, f):
    """Product of two power-basis coordinate lists modulo the monic ``f``."""
    d = len(f) - 1
    prod = [Fraction(0)] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d):
                prod[k - d + j] -= c * f[j]
        prod[k] = 0
    return prod[:d]


def _solve_rational(rows_basis, target):
    """Coordinates c with sum c_i * rows_basis[i] == target (exact)."""
    d = len(target)
    # augmented system: columns are basis vectors
    a = [[Fraction(rows_basis[j][i]) for j in range(d)] + [Fraction(target[i])] for i in range(d)]
    for c in range(d):
        piv = next(i for i in range(c, d) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(d):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][d] for i in range(d)]


def multiplication_table(poly, basis):
    d = len(poly) - 1
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            prod = _poly_mod_mul(basis[i], basis[j], poly)
            coords = _solve_rational(basis, prod)
            if any(c.denominator != 1 for c in coords):
                raise InputError("integral basis is not closed under multiplication")
            row.append(tuple(int(c) for c in coords))
        table.append(tuple(row))
    return tuple(table)


def _field_mul(table, x, y):
    d = len(x)
    out = [0] * d
    for i in range(d):
        if x[i]:
            for j in range(d):
                if y[j]:
                    c = x[i] * y[j]
                    for k, t in enumerate(table[i][j]):
                        if t:
                            out[k] += c * t
    return tuple(out)


def _mult_matrix(table, x):
    """Rows of the matrix of multiplication by x on integral-basis coordinates."""
    d = len(x)
    cols = [_field_mul(table, x, tuple(int(i == j) for i in range(d))) for j in range(d)]
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _field_power(table, x, k):
    d = len(x)
    out = tuple(int(i == 0) for i in range(d))
    while k:
        if k & 1:
            out = _field_mul(table, out, x)
        x = _field_mul(table, x, x)
        k >>= 1
    return out


def _check_poly(poly):
    if len(poly) < 2 or poly[-1] != 1:
        raise InputError(f"polynomial {list(poly)} must be monic of degree >= 1")
    if len(poly) > 3 and not Poly(list(reversed(poly)), _X).is_irreducible:
        raise InputError(f"polynomial {list(poly)} is reducible over Q")


def _rational_field(poly):
    return MaximalFieldData(
        poly=poly, degree=1, disc=1, r1=1, r2=0, w=2, h=1, regulator=1.0,
        integral_basis=((Fraction(1),),), unit_generators=(), torsion_generator=(-1,),
        mult_table=(((1,),),),
    )


def _quadratic_field(poly):
    c0, c1, _ = poly
    s, d = quadratic.squarefree_decomposition(c1 * c1 - 4 * c0)
    if d == 1:
        raise InputError(f"polynomial {list(poly)} is reducible over Q (square discriminant)")
    D = quadratic.field_discriminant(d)
    # root theta = (-c1 + s*sqrt d)/2, so sqrt d = (2 theta + c1)/s
    if d % 4 == 1:
        omega = (Fraction(s + c1, 2 * s), Fraction(1, s))
    else:
        omega = (Fraction(c1, s), Fraction(2, s))
    basis = ((Fraction(1), Fraction(0)), omega)
    t, nrm = quadratic.omega_data(d)
    table = (((1, 0), (0, 1)), ((0, 1), (-nrm, t)))
    if d < 0:
        roots = [(x, y) for x in range(-2, 3) for y in range(-2, 3) if quadratic.norm(d, x, y) == 1]
        w = len(roots)
        gen = next(u for u in roots if _order_of(table, u, w) == w)
        return MaximalFieldData(
            poly=poly, degree=2, disc=D, r1=0, r2=1, w=w, h=quadratic.form_class_number(D),
            regulator=1.0, integral_basis=basis, unit_generators=(), torsion_generator=gen,
            mult_table=table,
        )
    eps = quadratic.fundamental_unit(d)
    h_narrow = quadratic.narrow_class_number(D)
    h = h_narrow if quadratic.norm(d, *eps) == -1 else h_narrow // 2
    with mpmath.workdps(30):
        reg = float(mpmath.log(eps[0] + eps[1] * (1 + mpmath.sqrt(d)) / 2 if d % 4 == 1
                               else eps[0] + eps[1] * mpmath.sqrt(d)))
    return MaximalFieldData(
        poly=poly, degree=2, disc=D, r1=2, r2=0, w=2, h=h, regulator=reg,
        integral_basis=basis, unit_generators=(eps,), torsion_generator=(-1, 0),
        mult_table=table,
    )


def _order_of(table, x, bound):
    one = tuple(int(i == 0) for i in range(len(x)))
    y = x
    for k in range(1, bound + 1):
        if y == one:
            return k
        y = _field_mul(table, y, x)
    return None


def _as_int(v, what):
    try:
        if isinstance(v, bool):
            raise TypeError
        if isinstance(v, str):
            return int(v.strip())
        if isinstance(v, int):
            return v
    except (TypeError, ValueError):
        pass
    raise InputError(f"{what}: expected an integer, got {v!r}")


def _as_fraction(v, what):
    try:
        if isinstance(v, (int, str)) and not isinstance(v, bool):
            return Fraction(v)
    except (ValueError, ZeroDivisionError):
        pass
    raise InputError(f"{what}: expected an exact rational 'num/den', got {v!r}")


def _supplied_field(poly, data):
    deg = len(poly) - 1
    try:
        degree = _as_int(data.get("degree", deg), "degree")
        disc = _as_int(data["disc"], "disc")
        r1 = _as_int(data["r1"], "r1")
        r2 = _as_int(data["r2"], "r2")
        w = _as_int(data["w"], "w")
        h = _as_int(data["h"], "h")
        reg = float(data["regulator"])
        basis = tuple(tuple(_as_fraction(c, "integral_basis") for c in row)
                      for row in data["integral_basis"])
        units = tuple(tuple(_as_int(c, "unit_generators") for c in u) for u in data["unit_generators"])
        tors = tuple(_as_int(c, "torsion_generator") for c in data["torsion_generator"])
    except KeyError as e:
        raise InputError(f"supplied_data missing field {e.args[0]!r}") from None
    except (TypeError, AttributeError):
        raise InputError("supplied_data has the wrong shape") from None
    if degree != deg:
        raise InputError(f"supplied degree {degree} != polynomial degree {deg}")
    if r1 < 0 or r2 < 0 or r1 + 2 * r2 != deg:
        raise InputError(f"r1 + 2*r2 must equal the degree ({r1} + 2*{r2} != {deg})")
    if w <= 0 or h <= 0 or reg < 0:
        raise InputError("w and h must be positive and the regulator nonnegative")
    if len(units) != r1 + r2 - 1:
        raise InputError(f"need r1 + r2 - 1 = {r1 + r2 - 1} unit generators, got {len(units)}")
    if (disc < 0) != (r2 % 2 == 1):
        raise InputError(f"sign of disc {disc} must be (-1)^r2")
    if len(basis) != deg or any(len(row) != deg for row in basis):
        raise InputError("integral_basis must be a degree x degree array")
    if any(len(u) != deg for u in units) or len(tors) != deg:
        raise InputError("unit and torsion generators must have degree coordinates")
    real_roots = Poly(list(reversed(poly)), _X).count_roots()
    if real_roots != r1:
        raise InputError(f"polynomial has {real_roots} real roots but r1 = {r1}")
    table = multiplication_table(poly, basis)
    traces = [sum(table[i][j][j] for j in range(deg)) for i in range(deg)]
    gram = [[sum(c * traces[k] for k, c in enumerate(table[i][j])) for j in range(deg)]
            for i in range(deg)]
    if det(gram) != disc:
        raise InputError(f"trace form of the integral basis has determinant {det(gram)}, not {disc}")
    for u in units:
        if abs(det(_mult_matrix(table, u))) != 1:
            raise InputError(f"unit generator {list(u)} does not have norm +-1")
    if _order_of(table, tors, w) != w:
        raise InputError(f"torsion generator does not have exact order {w}")
    return MaximalFieldData(
        poly=poly, degree=deg, disc=disc, r1=r1, r2=r2, w=w, h=h, regulator=reg,
        integral_basis=basis, unit_generators=units, torsion_generator=tors, mult_table=table,
    )


def build_field(spec):
    poly = tuple(_as_int(c, "poly") for c in spec.poly)
    _check_poly(poly)
    deg = len(poly) - 1
    if spec.supplied_data is not None:
        return _supplied_field(poly, spec.supplied_data)
    if deg == 1:
        return _rational_field(poly)
    if deg == 2:
        return _quadratic_field(poly)
    raise InputError(f"degree {deg} field needs supplied_data (only degrees 1 and 2 are computed)")


@dataclass(frozen=True, eq=False)
class EtaleAlgebra:
    components: tuple
    n: int
    r1: int
    r2: int
    m: int
    r: int
    offsets: tuple = field(repr=False)

    @cached_property
    def structure_constants(self):
        """Block-diagonal multiplication table of the integral basis of O~."""
        n = self.n
        table = [[(0,) * n for _ in range(n)] for _ in range(n)]
        for comp, off in zip(self.components, self.offsets):
            for i in range(comp.degree):
                for j in range(comp.degree):
                    v = [0] * n
                    for k, c in enumerate(comp.mult_table[i][j]):
                        v[off + k] = c
                    table[off + i][off + j] = tuple(v)
        return tuple(tuple(row) for row in table)

    def blocks(self, x):
        return [tuple(x[off:off + c.degree]) for c, off in zip(self.components, self.offsets)]

    def join(self, parts):
        return tuple(a for p in parts for a in p)

    def one(self):
        return self.join(tuple(int(i == 0) for i in range(c.degree)) for c in self.components)

    def basis_vector(self, j):
        return tuple(int(i == j) for i in range(self.n))

    def mul(self, x, y):
        return self.join(_field_mul(c.mult_table, a, b)
                         for c, a, b in zip(self.components, self.blocks(x), self.blocks(y)))

    def power(self, x, k):
        return self.join(_field_power(c.mult_table, a, k)
                         for c, a in zip(self.components, self.blocks(x)))

    def mult_matrix(self, x):
        """Rows of the n x n integer matrix of y -> x*y."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.n)]
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def trace(self, x):
        return sum(a * t for a, t in zip(x, self._traces))

    @cached_property
    def _traces(self):
        out = []
        for c in self.components:
            out += [sum(c.mult_table[i][j][j] for j in range(c.degree)) for i in range(c.degree)]
        return out

    def embed(self, comp_index, x, dps=30):
        """Values of the component element ``x`` (integral-basis coordinates) at
        the archimedean places of that component: real roots first, then one
        root from each complex pair.
        """
        comp = self.components[comp_index]
        coeffs = [sum(Fraction(a) * row[k] for a, row in zip(x, comp.integral_basis))
                  for k in range(comp.degree)]
        with mpmath.workdps(dps):
            roots = _places(comp.poly, comp.r1, dps)
            return [mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator
                                    for c in reversed(coeffs)], t) for t in roots]

    def unit_group_generators(self):
        """Torsion generators and fundamental units of O~, embedded in the product."""
        torsion, free = [], []
        for idx, comp in enumerate(self.components):
            parts = [tuple(int(i == 0) for i in range(c.degree)) for c in self.components]
            parts[idx] = comp.torsion_generator
            torsion.append(self.join(parts))
            for u in comp.unit_generators:
                parts = [tuple(int(i == 0) for i in range(c.degree)) for c in self.components]
                parts[idx] = tuple(u)
                free.append((idx, self.join(parts)))
        return torsion, free

    def torsion_elements(self):
        """All w(O~) roots of unity of O~, as products of component torsion powers."""
        per = []
        for comp in self.components:
            g = comp.torsion_generator
            per.append([_field_power(comp.mult_table, g, k) for k in range(comp.w)])
        return [self.join(p) for p in product(*per)]


def _places(poly, r1, dps):
    roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(poly)], maxsteps=200,
                             extraprec=4 * dps)
    real = sorted((mpmath.re(t) for t in roots if abs(mpmath.im(t)) < mpmath.mpf(10) ** (-dps // 2)))
    cplx = sorted((t for t in roots if mpmath.im(t) >= mpmath.mpf(10) ** (-dps // 2)),
                  key=lambda t: (mpmath.re(t), mpmath.im(t)))
    if len(real) != r1:
        raise ArithmeticError("real root count disagrees with r1")
    return real + cplx


def build_algebra(specs):
    if not specs:
        raise InputError("an etale algebra needs at least one component (the zero ring is rejected)")
    comps = tuple(s if isinstance(s, MaximalFieldData) else build_field(s) for s in specs)
    offsets, off = [], 0
    for c in comps:
        offsets.append(off)
        off += c.degree
    r1 = sum(c.r1 for c in comps)
    r2 = sum(c.r2 for c in comps)
    return EtaleAlgebra(components=comps, n=off, r1=r1, r2=r2, m=len(comps),
                        r=r1 + r2 - len(comps), offsets=tuple(offsets))
