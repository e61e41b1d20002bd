"""Dense univariate polynomial helpers over Q.

A polynomial is a list of Fractions indexed by degree with no trailing
zeros; [] is the zero polynomial.  These routines back minimal-polynomial
work and the idempotent splitting: Euclidean arithmetic, Yun squarefree
decomposition, and enough factorization (rational roots, quadratics,
quartic resolvent) to separate the local factors that occur at desk scale.
Squarefree remainders of degree >= 5 with no linear factor are kept whole;
the algebra-level splitting retries with random elements in that case.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .poly import SparsePoly

Dense = list  # list[Fraction]


def trim(c: Dense) -> Dense:
    while c and c[-1] == 0:
        c.pop()
    return c


def deg(c: Dense) -> int:
    return len(c) - 1


def is_zero(c: Dense) -> bool:
    return not c


def constant(a) -> Dense:
    a = Fraction(a)
    return [a] if a != 0 else []


def add(a: Dense, b: Dense) -> Dense:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def neg(a: Dense) -> Dense:
    return [-x for x in a]


def sub(a: Dense, b: Dense) -> Dense:
    return add(a, neg(b))


def mul(a: Dense, b: Dense) -> Dense:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def scale(a: Dense, c) -> Dense:
    c = Fraction(c)
    if c == 0:
        return []
    return [x * c for x in a]


def divmod_poly(a: Dense, b: Dense) -> tuple[Dense, Dense]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    db, lb = deg(b), b[-1]
    while r and deg(r) >= db:
        k = deg(r) - db
        c = r[-1] / lb
        q[k] = c
        for i in range(len(b)):
            r[i + k] -= c * b[i]
        trim(r)
    return trim(q), r


def monic(a: Dense) -> Dense:
    if not a:
        return []
    return scale(a, 1 / a[-1])


def gcd(a: Dense, b: Dense) -> Dense:
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def lcm(a: Dense, b: Dense) -> Dense:
    if not a or not b:
        return []
    g = gcd(a, b)
    return monic(divmod_poly(mul(a, b), g)[0])


def derivative(a: Dense) -> Dense:
    return trim([a[i] * i for i in range(1, len(a))])


def eval_at(a: Dense, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def squarefree_decomposition(a: Dense) -> list[tuple[Dense, int]]:
    """Yun's algorithm: return [(q_i, i)] with a = lead * prod q_i^i,
    the q_i monic, squarefree, and pairwise coprime."""
    a = monic(a)
    if deg(a) <= 0:
        return []
    out = []
    g = gcd(a, derivative(a))
    w = divmod_poly(a, g)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, g)
        factor = divmod_poly(w, y)[0]
        if deg(factor) > 0:
            out.append((monic(factor), i))
        w = y
        g = divmod_poly(g, y)[0]
        i += 1
    return out


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(a: Dense) -> list[Fraction]:
    """Distinct rational roots of a (a nonzero)."""
    if not a:
        raise ValueError("zero polynomial")
    roots = []
    # strip powers of x
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    if k > 0:
        roots.append(Fraction(0))
        a = a[k:]
    if deg(a) <= 0:
        return roots
    # clear denominators
    denom_lcm = 1
    for c in a:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in a]
    a0, an = ints[0], ints[-1]
    for p in _int_divisors(a0):
        for q in _int_divisors(an):
            for sgn in (1, -1):
                cand = Fraction(sgn * p, q)
                if cand not in roots and eval_at(a, cand) == 0:
                    roots.append(cand)
    return roots


def _sqrt_fraction(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def split_quadratic(a: Dense) -> list[Dense] | None:
    """Split a monic quadratic into two monic linears, or None if irreducible."""
    if deg(a) != 2:
        raise ValueError("not a quadratic")
    a = monic(a)
    p, q = a[1], a[0]
    disc = p * p - 4 * q
    r = _sqrt_fraction(disc)
    if r is None:
        return None
    x1 = (-p + r) / 2
    x2 = (-p - r) / 2
    return [[-x1, Fraction(1)], [-x2, Fraction(1)]]


def split_quartic(a: Dense) -> list[Dense] | None:
    """Split a monic quartic with no rational root into two monic quadratics
    via the resolvent cubic, or None if no rational split exists."""
    if deg(a) != 4:
        raise ValueError("not a quartic")
    a = monic(a)
    s, r, q, p = a[0], a[1], a[2], a[3]
    # resolvent cubic for x^4 + p x^3 + q x^2 + r x + s, roots u = b + d
    resolvent = trim([
        -(p * p * s - 4 * q * s + r * r),
        p * r - 4 * s,
        -q,
        Fraction(1),
    ])
    for u in rational_roots(resolvent):
        # b + d = u, b*d = s, a1 + c1 = p, a1*c1 = q - u, a1*d + b*c1 = r
        # solve a1, c1 from t^2 - p t + (q - u) = 0
        disc = p * p - 4 * (q - u)
        root = _sqrt_fraction(disc)
        if root is None:
            continue
        for a1 in ((p + root) / 2, (p - root) / 2):
            c1 = p - a1
            # b + d = u and a1*d + b*c1 = r
            if a1 != c1:
                d_val = (r - u * c1) / (a1 - c1)
                b_val = u - d_val
            else:
                bd = _sqrt_fraction(u * u - 4 * s)
                if bd is None:
                    continue
                b_val = (u + bd) / 2
                d_val = (u - bd) / 2
            f1 = [b_val, a1, Fraction(1)]
            f2 = [d_val, c1, Fraction(1)]
            if mul(f1, f2) == a:
                return [trim(f1), trim(f2)]
    return None


def _split_squarefree(a: Dense) -> list[Dense]:
    """Split a monic squarefree polynomial into coprime monic factors,
    irreducible whenever the degree-by-degree strategies apply."""
    a = monic(a)
    if deg(a) <= 1:
        return [a]
    factors = []
    rest = a
    for root in rational_roots(a):
        lin = [-root, Fraction(1)]
        factors.append(lin)
        rest = divmod_poly(rest, lin)[0]
    d = deg(rest)
    if d <= 1:
        if d == 1:
            factors.append(monic(rest))
        return factors
    if d == 2:
        split = split_quadratic(rest)
        factors.extend(split if split else [rest])
        return factors
    if d == 3:
        # a cubic with no rational root is irreducible over Q
        factors.append(rest)
        return factors
    if d == 4:
        split = split_quartic(rest)
        if split:
            for f in split:
                sub_split = split_quadratic(f)
                factors.extend(sub_split if sub_split else [f])
        else:
            factors.append(rest)
        return factors
    # degree >= 5 with no linear factor: keep whole
    factors.append(rest)
    return factors


def coprime_factorization(a: Dense) -> list[tuple[Dense, int]]:
    """Factor a into pairwise coprime monic prime powers (q, m), complete
    up to the degree->=5 limitation noted in the module docstring."""
    out = []
    for q, m in squarefree_decomposition(a):
        for piece in _split_squarefree(q):
            out.append((piece, m))
    return out


# ---------- conversions to/from SparsePoly ----------

def from_sparse(p: SparsePoly, index: int = 0) -> Dense:
    """Dense coefficients of p, which must only involve variable `index`."""
    out = [Fraction(0)] * (p.degree_in(index) + 1 if not p.is_zero() else 0)
    for e, c in p.terms.items():
        if any(x != 0 for i, x in enumerate(e) if i != index):
            raise ValueError("polynomial is not univariate in the given variable")
        out[e[index]] = c
    return trim(out)


def to_sparse(c: Dense, variables, index: int = 0) -> SparsePoly:
    vs = tuple(variables)
    terms = {}
    for k, coeff in enumerate(c):
        if coeff != 0:
            e = [0] * len(vs)
            e[index] = k
            terms[tuple(e)] = coeff
    return SparsePoly(vs, terms)
