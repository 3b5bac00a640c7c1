"""Classical quadratic-field machinery: discriminants, Kronecker symbols,
binary quadratic forms and continued-fraction units.

Elements of a quadratic ring of integers are pairs ``(x, y)`` meaning
``x + y*omega`` with ``omega = (1 + sqrt d)/2`` when ``d = 1 (mod 4)`` and
``omega = sqrt d`` otherwise.
"""

from math import gcd, isqrt

from sympy import factorint

from .errors import InputError


def squarefree_decomposition(n):
    """Return ``(s, d)`` with ``n = s**2 * d`` and ``d`` squarefree (sign kept in d)."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    s, d = 1, -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


def field_discriminant(d):
    return d if d % 4 == 1 else 4 * d


def is_discriminant(D):
    return D % 4 in (0, 1) and isqrt(abs(D)) ** 2 != abs(D)


def kronecker(D, p):
    """Kronecker symbol (D/p) for a discriminant D and a prime p."""
    if D % p == 0:
        return 0
    if p == 2:
        return 1 if D % 8 in (1, 7) else -1
    return 1 if pow(D % p, (p - 1) // 2, p) == 1 else -1


def omega_data(d):
    """``(trace, norm)`` of omega, so omega**2 = trace*omega - norm."""
    if d % 4 == 1:
        return 1, (1 - d) // 4
    return 0, -d


def norm(d, x, y):
    t, n = omega_data(d)
    return x * x + t * x * y + n * y * y


def multiply(d, a, b):
    t, n = omega_data(d)
    x1, y1 = a
    x2, y2 = b
    yy = y1 * y2
    return (x1 * x2 - n * yy, x1 * y2 + x2 * y1 + t * yy)


def power(d, a, k):
    out, base = (1, 0), a
    while k:
        if k & 1:
            out = multiply(d, out, base)
        base = multiply(d, base, base)
        k >>= 1
    return out


# ---------------------------------------------------------------------------
# positive definite forms

def form_class_number(D):
    """Number of reduced primitive positive definite forms of discriminant D."""
    if D >= 0 or D % 4 not in (0, 1):
        raise InputError(f"form_class_number needs D < 0 with D = 0,1 mod 4, got {D}")
    return len(reduced_forms(D))


def reduced_forms(D):
    """All reduced primitive positive definite forms (a, b, c) of discriminant D."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append((a, b, c))
        a += 1
    return out


# ---------------------------------------------------------------------------
# indefinite forms

def _below_sqrt(u, D):
    return u < 0 or u * u < D


def _above_sqrt(v, D):
    return v > 0 and v * v > D


def indefinite_reduced_forms(D):
    """Primitive reduced indefinite forms: |sqrt D - 2|a|| < b < sqrt D."""
    if D <= 0 or not is_discriminant(D):
        raise ValueError(f"not a nonsquare positive discriminant: {D}")
    s = isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4
        m = -ac
        for a_abs in range(1, m + 1):
            if m % a_abs:
                continue
            if not (_below_sqrt(2 * a_abs - b, D) and _above_sqrt(2 * a_abs + b, D)):
                continue
            for a in (a_abs, -a_abs):
                c = ac // a
                if gcd(gcd(a, b), c) == 1:
                    out.append((a, b, c))
    return out


def rho(form, D):
    """Reduction operator on indefinite forms; permutes the reduced ones."""
    a, b, c = form
    s = isqrt(D)
    m = 2 * abs(c)
    b2 = s - ((s + b) % m)
    return (c, b2, (b2 * b2 - D) // (4 * c))


def narrow_class_number(D):
    """Number of rho-cycles of reduced forms, i.e. the narrow class number."""
    forms = set(indefinite_reduced_forms(D))
    cycles = 0
    while forms:
        start = forms.pop()
        f = rho(start, D)
        while f != start:
            forms.discard(f)
            f = rho(f, D)
        cycles += 1
    return cycles


# ---------------------------------------------------------------------------
# continued fractions

def _cf_digit(P, Q, s):
    # floor((P + sqrt d)/Q) for nonsquare d with floor(sqrt d) = s
    if Q > 0:
        return (P + s) // Q
    return -((P + s) // -Q) - 1


def fundamental_unit(d, max_steps=10**6):
    """Fundamental unit ``(x, y)`` of the real quadratic ring of integers for
    squarefree ``d > 1``; it is the first convergent ``x/y`` of -omega' whose
    element ``x + y*omega`` has norm +-1.
    """
    if d <= 1:
        raise ValueError("real quadratic fields need d > 1")
    s = isqrt(d)
    # -omega' written as (P + sqrt d)/Q
    P, Q = (-1, 2) if d % 4 == 1 else (0, 1)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for _ in range(max_steps):
        a = _cf_digit(P, Q, s)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        if q >= 1 and abs(norm(d, p, q)) == 1:
            return p, q
        P = a * Q - P
        Q = (d - P * P) // Q
    raise ArithmeticError(f"no unit found for d={d} within {max_steps} steps")
