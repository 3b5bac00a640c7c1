"""Orders as full-rank sublattices of the maximal order, their conductors and
the primes where they are singular."""

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import Poly, factorint, symbols
from sympy import discriminant as sympy_discriminant

from . import lattice, quadratic
from .errors import InconsistencyError, InvalidOrderError

_X = symbols("x")


@dataclass(frozen=True)
class OrderLattice:
    """An order inside the maximal order of ``algebra``.

    ``basis`` is the canonical HNF (tuple of columns) of the order in
    integral-basis coordinates of the maximal order.
    """

    algebra: object
    basis: tuple

    @property
    def n(self):
        return self.algebra.n

    @property
    def index(self):
        return lattice.determinant_hnf(self.basis)

    def contains(self, x):
        return lattice.contains(self.basis, x)

    def is_maximal(self):
        return self.index == 1


@dataclass(frozen=True)
class ConductorIdeal:
    basis: tuple
    norm: int

    def contains(self, x):
        return lattice.contains(self.basis, x)


@dataclass(frozen=True)
class SingularPrimeData:
    """Local data at a rational prime p dividing the index.

    ``primes_above`` are the norms of the maximal ideals of O~ over p and
    ``primes_below`` those of the maximal ideals of O over p.  When O has a
    single prime over p this is the usual local picture at that prime; in
    general everything is the product over all primes of O above p.
    """

    p: int
    local_quotient_size: int
    primes_above: tuple
    primes_below: tuple
    local_unit_index: int

    @property
    def local_factor(self):
        """prod_P (1 - 1/NP) / prod_p (1 - 1/Np), exact."""
        out = Fraction(1)
        for q in self.primes_above:
            out *= 1 - Fraction(1, q)
        for q in self.primes_below:
            out /= 1 - Fraction(1, q)
        return out


def order_from_generators(algebra, gens, max_rounds=None):
    """Smallest order of ``algebra`` containing ``gens`` (integral-basis coordinates)."""
    n = algebra.n
    gens = [tuple(g) for g in gens]
    if not gens:
        raise InvalidOrderError("at least one generator is required")
    for g in gens:
        if len(g) != n or not all(isinstance(a, int) for a in g):
            raise InvalidOrderError(f"generator {list(g)} must be {n} integers")
    rounds = 2 * n if max_rounds is None else max_rounds
    current = lattice.echelon([algebra.one()] + gens, n)
    for _ in range(rounds):
        prods = [algebra.mul(u, v) for i, u in enumerate(current) for v in current[i:]]
        grown = lattice.echelon(list(current) + prods, n)
        if len(grown) < n:
            if len(grown) == len(current):
                raise InvalidOrderError(
                    f"generated ring has rank {len(grown)} < n = {n}: QO != K")
            current = grown
            continue
        if len(current) == n and lattice.hnf(grown) == lattice.hnf(current):
            return OrderLattice(algebra, lattice.hnf(current))
        current = grown
    raise InvalidOrderError(f"multiplicative closure did not stabilize within {rounds} rounds")


def maximal_order(algebra):
    return OrderLattice(algebra, lattice.hnf([algebra.basis_vector(j) for j in range(algebra.n)]))


def order_from_basis(algebra, columns):
    """Validate a proposed Z-basis and return the order it spans."""
    try:
        basis = lattice.hnf([tuple(c) for c in columns], algebra.n)
    except ValueError as e:
        raise InvalidOrderError(str(e)) from None
    if not lattice.contains(basis, algebra.one()):
        raise InvalidOrderError("the lattice does not contain 1")
    for i, u in enumerate(basis):
        for v in basis[i:]:
            if not lattice.contains(basis, algebra.mul(u, v)):
                raise InvalidOrderError("the lattice is not closed under multiplication")
    return OrderLattice(algebra, basis)


def _maximal_disc(algebra):
    d = 1
    for c in algebra.components:
        d *= c.disc
    return d


def trace_form_discriminant(order):
    alg = order.algebra
    cols = order.basis
    gram = [[alg.trace(alg.mul(u, v)) for v in cols] for u in cols]
    return lattice.det(gram)


@lru_cache(maxsize=8192)
def discriminant(order):
    """det(Tr(e_i e_j)) on the order's own basis, checked against index^2 * Disc O~."""
    d = trace_form_discriminant(order)
    expected = order.index ** 2 * _maximal_disc(order.algebra)
    if d != expected:
        raise InconsistencyError(f"trace-form discriminant {d} != index^2 * Disc(O~) = {expected}")
    return d


@lru_cache(maxsize=8192)
def conductor(order):
    """{x in O~ : x O~ is contained in O}, via the congruences N H^{-1} (x e_j) = 0 mod N."""
    alg = order.algebra
    n, N = alg.n, order.index
    if N == 1:
        return ConductorIdeal(order.basis, 1)
    adj = lattice.inverse_times_det(order.basis)
    rows = []
    for j in range(n):
        m = alg.mult_matrix(alg.basis_vector(j))
        rows += [[sum(adj[i][k] * m[k][c] for k in range(n)) for c in range(n)] for i in range(n)]
    basis = lattice.solve_congruences(rows, N, n)
    return ConductorIdeal(basis, lattice.determinant_hnf(basis))


def index_ideal(order):
    """The ideal index * O~; a valid (non-maximal) alternative to the conductor."""
    N = order.index
    n = order.n
    return ConductorIdeal(lattice.hnf([tuple(N * int(i == j) for i in range(n)) for j in range(n)]),
                          N ** n)


# ---------------------------------------------------------------------------
# residue fields over p

def _mul_mod(table, x, y, p):
    n = len(x)
    out = [0] * n
    for i in range(n):
        if x[i]:
            for j in range(n):
                if y[j]:
                    c = x[i] * y[j]
                    for k, t in enumerate(table[i][j]):
                        if t:
                            out[k] += c * t
    return tuple(a % p for a in out)


def _pow_mod(table, x, e, one, p):
    out = one
    while e:
        if e & 1:
            out = _mul_mod(table, out, x, p)
        x = _mul_mod(table, x, x, p)
        e >>= 1
    return out


def residue_degrees(table, one, p):
    """Residue degrees of the maximal ideals of the F_p-algebra A = R/pR.

    ``table[i][j]`` is the product of basis elements i and j.  Frobenius is
    F_p-linear on A and dim ker(F^k - 1) = sum_j gcd(f_j, k) over the maximal
    ideals of A; the gcd matrix is invertible, so these dimensions for
    k = 1..n determine the multiset {f_j}.
    """
    n = len(table)
    frob_cols = [_pow_mod(table, tuple(int(i == j) for i in range(n)), p, one, p) for j in range(n)]
    frob = [[frob_cols[j][i] for j in range(n)] for i in range(n)]
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    dims = []
    for _ in range(n):
        power = [[sum(power[i][k] * frob[k][j] for k in range(n)) % p for j in range(n)]
                 for i in range(n)]
        shifted = [[power[i][j] - int(i == j) for j in range(n)] for i in range(n)]
        dims.append(n - lattice.rank_mod_p(shifted, p))
    # solve sum_f b_f gcd(f, k) = dims[k-1]
    a = [[Fraction(gcd(f, k)) for f in range(1, n + 1)] + [Fraction(dims[k - 1])]
         for k in range(1, n + 1)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    counts = [a[i][n] for i in range(n)]
    if any(c.denominator != 1 or c < 0 for c in counts):
        raise InconsistencyError(f"Frobenius data at p={p} does not decompose")
    return sorted(f for f, c in zip(range(1, n + 1), counts) for _ in range(int(c)))


@lru_cache(maxsize=64)
def _poly_disc(poly):
    return int(sympy_discriminant(Poly(list(reversed(poly)), _X)))


def _pmod(a, f, p):
    """a mod f over F_p; f monic, coefficients low to high."""
    a = [c % p for c in a]
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    a = a[:df] if len(a) > df else a
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _pgcd(a, b, p):
    while b:
        inv = pow(b[-1], -1, p)
        b = [c * inv % p for c in b]
        a, b = b, _pmod(a, b, p)
    return a


def _pdiv(a, b, p):
    """Exact quotient a / b over F_p, b monic."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] % p
        q[i] = c
        for j, t in enumerate(b):
            a[i + j] -= c * t
    return [c % p for c in q]


def _factor_degrees(poly, p):
    """Degrees of the irreducible factors of a squarefree monic poly mod p
    (distinct-degree factorization)."""
    g = [c % p for c in poly]
    h = [0, 1]
    degrees = []
    k = 0
    while len(g) - 1 >= 2 * (k + 1):
        k += 1
        x, e, acc = h, p, [1]
        while e:
            if e & 1:
                acc = _pmulmod(acc, x, g, p)
            x = _pmulmod(x, x, g, p)
            e >>= 1
        h = acc
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        d = _pgcd(g, diff, p) if diff else g
        if len(d) > 1:
            degrees += [k] * ((len(d) - 1) // k)
            g = _pdiv(g, d, p)
            h = _pmod(h, g, p)
    if len(g) > 1:
        degrees.append(len(g) - 1)
    return sorted(degrees)


@lru_cache(maxsize=1 << 17)
def _unramified_norms(poly, p):
    return tuple(p ** f for f in _factor_degrees(poly, p))


@lru_cache(maxsize=1 << 17)
def _quadratic_norms(D, p):
    return {0: (p,), 1: (p, p), -1: (p * p,)}[quadratic.kronecker(D, p)]


def component_prime_norms(comp, p):
    """Norms of the primes above p in the ring of integers of one component."""
    if comp.degree == 1:
        return (p,)
    if comp.degree == 2:
        return _quadratic_norms(comp.disc, p)
    if _poly_disc(comp.poly) % p:
        # p is prime to the index of Z[theta], so the factorization mod p decides
        return _unramified_norms(comp.poly, p)
    one = (1,) + (0,) * (comp.degree - 1)
    return tuple(p ** f for f in residue_degrees(comp.mult_table, one, p))


def maximal_prime_norms(algebra, p):
    out = []
    for c in algebra.components:
        out += component_prime_norms(c, p)
    return out


def order_structure_constants(order):
    alg = order.algebra
    cols = order.basis
    return tuple(tuple(lattice.coordinates(cols, alg.mul(u, v)) for v in cols) for u in cols)


def order_prime_norms(order, p):
    """Norms of the maximal ideals of O above p, from O/pO."""
    table = order_structure_constants(order)
    one = lattice.coordinates(order.basis, order.algebra.one())
    return [p ** f for f in residue_degrees(table, one, p)]


@lru_cache(maxsize=8192)
def singular_primes(order):
    """One SingularPrimeData per rational prime dividing the index."""
    from .finite import local_unit_index

    out = []
    for p, e in sorted(factorint(order.index).items()):
        data = SingularPrimeData(
            p=p,
            local_quotient_size=p ** e,
            primes_above=tuple(maximal_prime_norms(order.algebra, p)),
            primes_below=tuple(order_prime_norms(order, p)),
            local_unit_index=0,
        )
        out.append(replace(data, local_unit_index=local_unit_index(data)))
    return tuple(out)
