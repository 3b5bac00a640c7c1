"""Finite quotient rings O~/c and O/c, and the unit indices they compute."""

from dataclasses import dataclass
from functools import lru_cache

from . import lattice
from .errors import InconsistencyError, InputError
from .order import conductor

ENUMERATION_BOUND = 10**6


@dataclass(frozen=True, eq=False)
class FiniteQuotientRing:
    """The ring L/I for an ideal I of O~ contained in a subring L of O~.

    Elements are canonical representatives modulo ``ideal`` (HNF reduction)
    that lie in ``sub_lattice``.  ``group`` lists the invariant factors of the
    additive group.
    """

    algebra: object
    sub_lattice: tuple
    ideal: tuple
    group: tuple
    size: int

    def reduce(self, x):
        return lattice.reduce_vector(x, self.ideal)

    def mul(self, x, y):
        return self.reduce(self.algebra.mul(x, y))

    def one(self):
        return self.reduce(self.algebra.one())

    def __contains__(self, x):
        return lattice.contains(self.sub_lattice, x)

    def elements(self):
        for x in lattice.coset_representatives(self.ideal):
            if x in self:
                yield x

    def is_unit(self, x):
        """True when x*y = 1 for some y in the ring: 1 lies in x*L + I."""
        alg = self.algebra
        cols = [alg.mul(x, b) for b in self.sub_lattice] + list(self.ideal)
        try:
            span = lattice.hnf(cols, alg.n)
        except ValueError:
            return False
        return lattice.contains(span, alg.one())


def quotient_ring(lattice_basis, ideal, algebra):
    ideal_basis = ideal.basis if hasattr(ideal, "basis") else ideal
    try:
        coords = [lattice.coordinates(lattice_basis, c) for c in ideal_basis]
    except ValueError:
        raise InputError("ideal is not contained in the lattice") from None
    size = lattice.determinant_hnf(ideal_basis) // lattice.determinant_hnf(lattice_basis)
    return FiniteQuotientRing(algebra, tuple(lattice_basis), tuple(ideal_basis),
                              lattice.elementary_divisors(coords), size)


def unit_count_brute(ring, bound=ENUMERATION_BOUND):
    """Number of invertible elements, by testing every element."""
    if ring.size > bound:
        raise InputError(f"ring of size {ring.size} exceeds the enumeration bound {bound}")
    return sum(1 for x in ring.elements() if ring.is_unit(x))


def local_unit_index(prime_data):
    """#(O~_p^x / O_p^x) = #(O~_p/O_p) * prod(1 - 1/NP) / prod(1 - 1/Np)."""
    val = prime_data.local_quotient_size * prime_data.local_factor
    if val.denominator != 1 or val <= 0:
        raise InconsistencyError(f"local unit index at p={prime_data.p} is {val}, not a positive integer")
    return int(val)


def _p_part(order, ideal, p):
    """Bases of O~ and O modulo the p-primary part of c: (O~/J, (O + J)/J)."""
    n = order.n
    e = 0
    N = ideal.norm
    while N % p == 0:
        N //= p
        e += 1
    pe = p ** e
    J = lattice.hnf(list(ideal.basis) + [tuple(pe * int(i == j) for i in range(n)) for j in range(n)], n)
    full = lattice.hnf([order.algebra.basis_vector(j) for j in range(n)], n)
    sub = lattice.hnf(list(order.basis) + list(J), n)
    return full, sub, J


def local_quotient_rings(order, p, ideal=None):
    """The p-parts of O~/c and O/c, i.e. prod over primes above p of the local quotients."""
    ideal = conductor(order) if ideal is None else ideal
    full, sub, J = _p_part(order, ideal, p)
    alg = order.algebra
    return quotient_ring(full, J, alg), quotient_ring(sub, J, alg)


def brute_local_unit_index(order, p, ideal=None, bound=ENUMERATION_BOUND):
    """Coset count #(O~_p/c_p)^x / #(O_p/c_p)^x by enumeration of both rings."""
    big, small = local_quotient_rings(order, p, ideal)
    num = unit_count_brute(big, bound)
    den = unit_count_brute(small, bound)
    if num % den:
        raise InconsistencyError(f"unit group of O/c does not divide that of O~/c at p={p}")
    return num // den


def _unit_subgroup(order, ideal):
    """The subgroup of (O~/c)^x generated by the images of O~^x generators."""
    alg = order.algebra
    torsion, free = alg.unit_group_generators()
    gens = [lattice.reduce_vector(g, ideal.basis) for g in torsion]
    gens += [lattice.reduce_vector(u, ideal.basis) for _, u in free]
    one = lattice.reduce_vector(alg.one(), ideal.basis)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = lattice.reduce_vector(alg.mul(x, g), ideal.basis)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > ideal.norm:
            raise InconsistencyError("unit closure exceeded the size of O~/c")
        frontier = nxt
    return seen


@lru_cache(maxsize=8192)
def global_unit_index(order, ideal=None):
    """[O~^x : O^x] as the order of the image of O~^x in (O~/c)^x / (O/c)^x.

    With H the image of O~^x in (O~/c)^x, that image is H / (H n (O/c)^x);
    since c lies in O, membership in O/c is plain membership in O.
    """
    ideal = conductor(order) if ideal is None else ideal
    if ideal.norm == 1:
        return 1
    group = _unit_subgroup(order, ideal)
    inside = sum(1 for x in group if order.contains(x))
    if len(group) % inside:
        raise InconsistencyError("image of O^x is not a subgroup of the unit image")
    return len(group) // inside


@lru_cache(maxsize=8192)
def roots_of_unity(order):
    """``(w, elements)`` where elements are the roots of unity of O~ lying in O."""
    mu = [z for z in order.algebra.torsion_elements() if order.contains(z)]
    return len(mu), tuple(mu)
