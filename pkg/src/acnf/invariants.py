"""Class number, regulator and both sides of the analytic class number formula."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import primerange

from . import lattice
from .errors import InconsistencyError
from .finite import global_unit_index, roots_of_unity
from .oracle import direct_regulator, unit_exponent_lattice
from .quadratic import squarefree_decomposition
from .order import (
    conductor,
    discriminant,
    maximal_prime_norms,
    order_prime_norms,
    singular_primes,
)

REGULATOR_RTOL = 1e-9


@dataclass(frozen=True)
class LeadingTerm:
    """rational * pi^pi_exponent * regulator / sqrt(abs_disc), abs_disc squarefree."""

    rational_factor: Fraction
    pi_exponent: int
    regulator_factor: float
    abs_disc: int

    @classmethod
    def build(cls, rational, pi_exponent, regulator, abs_disc):
        s, _ = squarefree_decomposition(abs_disc)
        return cls(Fraction(rational) / s, pi_exponent, float(regulator), abs_disc // (s * s))

    @property
    def float_value(self):
        return (float(self.rational_factor) * math.pi ** self.pi_exponent
                * self.regulator_factor / math.sqrt(self.abs_disc))

    def same_shape(self, other):
        return (self.rational_factor == other.rational_factor
                and self.pi_exponent == other.pi_exponent
                and self.abs_disc == other.abs_disc)


@dataclass(frozen=True)
class OrderInvariants:
    index: int
    disc: int
    w: int
    unit_index: int
    h: int
    regulator: float
    leading_term: LeadingTerm


def _eq1(r1, r2, h, w, reg, disc):
    return LeadingTerm.build(Fraction(2 ** (r1 + r2) * h, w), r2, reg, abs(disc))


@lru_cache(maxsize=1024)
def maximal_invariants(algebra):
    """Invariants of O~ as products of the component invariants."""
    disc = w = h = 1
    reg = 1.0
    for c in algebra.components:
        disc *= c.disc
        w *= c.w
        h *= c.h
        reg *= c.regulator
    return OrderInvariants(index=1, disc=disc, w=w, unit_index=1, h=h, regulator=reg,
                           leading_term=_eq1(algebra.r1, algebra.r2, h, w, reg, disc))


def zeta_correction(order):
    """lim_{s->1} zeta_O~(s) / zeta_O(s), exact."""
    out = Fraction(1)
    for sp in singular_primes(order):
        out /= sp.local_factor
    return out


def local_product(order):
    """#(O~/O) * prod over singular p of the local factor = prod of local unit indices."""
    out = Fraction(order.index)
    for sp in singular_primes(order):
        out *= sp.local_factor
    return out


@lru_cache(maxsize=8192)
def class_number(order):
    """h(O) = h(O~) #(O~/O) prod(local factors) / [O~^x : O^x]."""
    h_max = maximal_invariants(order.algebra).h
    val = h_max * local_product(order) / global_unit_index(order)
    if val.denominator != 1 or val <= 0:
        raise InconsistencyError(f"class number came out as {val}; exact sequence violated")
    return int(val)


def regulator_ratio(order):
    """R(O)/R(O~) = [O~^x : O^x] * w(O) / w(O~), exact."""
    w, _ = roots_of_unity(order)
    return Fraction(global_unit_index(order) * w, maximal_invariants(order.algebra).w)


def regulator(order):
    if order.algebra.r == 0:
        return 1.0
    return maximal_invariants(order.algebra).regulator * float(regulator_ratio(order))


def order_invariants(order):
    w, _ = roots_of_unity(order)
    return OrderInvariants(
        index=order.index, disc=discriminant(order), w=w, unit_index=global_unit_index(order),
        h=class_number(order), regulator=regulator(order), leading_term=leading_term_rhs(order),
    )


def leading_term_rhs(order):
    """2^r1 (2 pi)^r2 h R / (w sqrt|Disc|) with R from the direct log-lattice covolume."""
    alg = order.algebra
    w, _ = roots_of_unity(order)
    return _eq1(alg.r1, alg.r2, class_number(order), w, direct_regulator(order), discriminant(order))


def leading_term_lhs(order):
    """Leading term of zeta_O~ (classical, multiplicative) divided by the zeta correction."""
    lt = maximal_invariants(order.algebra).leading_term
    return LeadingTerm(lt.rational_factor / zeta_correction(order), lt.pi_exponent,
                       lt.regulator_factor, lt.abs_disc)


@dataclass
class AcnfReport:
    lhs: LeadingTerm
    rhs: LeadingTerm
    rhs_normalized: LeadingTerm
    regulator_ratio: Fraction
    lattice_index: int
    exact_match: bool
    regulator_rel_diff: float
    value_rel_diff: float
    invariants: dict = field(default_factory=dict)

    @property
    def verdict(self):
        ok = (self.exact_match and self.regulator_rel_diff <= REGULATOR_RTOL
              and self.regulator_ratio == self.lattice_index)
        return "PASS" if ok else "FAIL"


def verify_acnf(order):
    """Evaluate both sides of the formula through independent routes and compare.

    The right side carries R(O) from explicit units; dividing it by the exact
    ratio R(O)/R(O~) puts both sides over the same real R(O~), after which
    rational parts must agree exactly and the reals to REGULATOR_RTOL.  The
    ratio itself is checked against the index of the unit exponent lattice.
    """
    alg = order.algebra
    lhs = leading_term_lhs(order)
    rhs = leading_term_rhs(order)
    ratio = regulator_ratio(order)
    exps = unit_exponent_lattice(order)
    lattice_index = lattice.determinant_hnf(exps) if exps else 1
    norm = LeadingTerm(rhs.rational_factor * ratio, rhs.pi_exponent,
                       rhs.regulator_factor / float(ratio), rhs.abs_disc)
    reg_diff = abs(norm.regulator_factor - lhs.regulator_factor) / abs(lhs.regulator_factor)
    val_diff = abs(rhs.float_value - lhs.float_value) / abs(lhs.float_value)
    inv = maximal_invariants(alg)
    c = conductor(order)
    w, _ = roots_of_unity(order)
    details = {
        "n": alg.n, "r1": alg.r1, "r2": alg.r2, "m": alg.m, "r": alg.r,
        "index": order.index, "conductor_norm": c.norm, "disc": discriminant(order),
        "disc_maximal": inv.disc, "w": w, "w_maximal": inv.w,
        "unit_index": global_unit_index(order), "h": class_number(order), "h_maximal": inv.h,
        "regulator": regulator(order), "regulator_direct": rhs.regulator_factor,
        "regulator_maximal": inv.regulator, "zeta_correction": zeta_correction(order),
        "local_product": local_product(order),
    }
    return AcnfReport(lhs=lhs, rhs=rhs, rhs_normalized=norm, regulator_ratio=ratio,
                      lattice_index=lattice_index, exact_match=lhs.same_shape(norm),
                      regulator_rel_diff=reg_diff, value_rel_diff=val_diff, invariants=details)


# ---------------------------------------------------------------------------
# Euler products

@lru_cache(maxsize=8)
def _primes_upto(bound):
    return tuple(primerange(2, bound + 1))


def _prime_norms(order, q, singular):
    if q in singular:
        return order_prime_norms(order, q)
    return maximal_prime_norms(order.algebra, q)


def zeta_partial(order, s, prime_bound):
    """prod over maximal ideals p of O with residue characteristic <= bound of (1 - Np^-s)^-1."""
    if s <= 1:
        raise ValueError(f"the Euler product needs s > 1, got {s}")
    if prime_bound < 2:
        raise ValueError("prime_bound must be at least 2")
    singular = {sp.p for sp in singular_primes(order)}
    logs = []
    for q in _primes_upto(prime_bound):
        for N in _prime_norms(order, q, singular):
            logs.append(-math.log1p(-float(N) ** -s))
    return math.exp(math.fsum(logs))


def zeta_correction_at(order, s, prime_bound=None):
    """zeta_O / zeta_O~ restricted to singular primes <= bound, at s.

    Exact Fraction for integer s, float otherwise.
    """
    exact = isinstance(s, int)
    out = Fraction(1) if exact else 1.0
    for sp in singular_primes(order):
        if prime_bound is not None and sp.p > prime_bound:
            continue
        for N in sp.primes_above:
            out *= (1 - Fraction(1, N ** s)) if exact else (1 - N ** -s)
        for N in sp.primes_below:
            out /= (1 - Fraction(1, N ** s)) if exact else (1 - N ** -s)
    return out
