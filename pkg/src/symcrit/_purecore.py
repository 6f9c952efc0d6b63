"""Pure-Python kernels for F_{l^k} arithmetic and curve operations.

Elements of F_{l^k} = F_l[x]/(f) are tuples of k ints (coefficients of
1, x, ..., x^{k-1}); f is the monic modulus as a list of k+1 ints.  Curves are
long Weierstrass with coefficients in F_l, given as a 5-tuple of ints.  Points
are (x, y) pairs of elements, or None for the point at infinity.

The compiled module ``_fastcore`` exposes the same functions with the same
signatures; ``symcrit.kernels`` picks one at import time.
"""

from __future__ import annotations

BACKEND = "python"


def fq_mul(a, b, f, ell):
    k = len(f) - 1
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for d in range(2 * k - 2, k - 1, -1):
        c = prod[d] % ell
        if c:
            base = d - k
            for i in range(k):
                prod[base + i] -= c * f[i]
    return tuple(c % ell for c in prod[:k])


def fq_add(a, b, ell):
    return tuple((x + y) % ell for x, y in zip(a, b))


def fq_sub(a, b, ell):
    return tuple((x - y) % ell for x, y in zip(a, b))


def fq_scale(a, c, ell):
    return tuple((x * c) % ell for x in a)


def fq_pow(a, n, f, ell):
    k = len(f) - 1
    result = (1,) + (0,) * (k - 1)
    base = a
    while n > 0:
        if n & 1:
            result = fq_mul(result, base, f, ell)
        n >>= 1
        if n:
            base = fq_mul(base, base, f, ell)
    return result


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def fq_inv(a, f, ell):
    """Inverse via the extended Euclidean algorithm in F_l[x]."""
    k = len(f) - 1
    r0, r1 = list(f), _trim([c % ell for c in a])
    if not r1:
        raise ZeroDivisionError("inverse of zero in F_q")
    s0, s1 = [0], [1]
    while len(r1) > 1:
        # r0 = q*r1 + r
        inv_lead = pow(r1[-1], -1, ell)
        q = [0] * (len(r0) - len(r1) + 1)
        r = list(r0)
        for d in range(len(r0) - len(r1), -1, -1):
            c = (r[d + len(r1) - 1] * inv_lead) % ell
            q[d] = c
            if c:
                for i, ci in enumerate(r1):
                    r[d + i] = (r[d + i] - c * ci) % ell
        r = _trim(r)
        # s = s0 - q*s1
        s = [0] * max(len(s0), len(q) + len(s1) - 1)
        for i, c in enumerate(s0):
            s[i] = c
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    s[i + j] = (s[i + j] - qi * sj) % ell
        r0, r1, s0, s1 = r1, r, s1, _trim(s)
        if not r1:
            raise ZeroDivisionError("element not invertible (modulus reducible?)")
    c = pow(r1[0], -1, ell)
    out = [(x * c) % ell for x in s1] + [0] * k
    return tuple(out[:k])


def _is_zero(a):
    return not any(a)


def _one(k):
    return (1,) + (0,) * (k - 1)


def _const(c, k, ell):
    return (c % ell,) + (0,) * (k - 1)


def ec_neg(P, ainvs, f, ell):
    if P is None:
        return None
    a1, a2, a3, a4, a6 = ainvs
    x, y = P
    # -(x, y) = (x, -y - a1 x - a3)
    ny = tuple((-yi - a1 * xi) % ell for xi, yi in zip(x, y))
    ny = (((ny[0] - a3) % ell),) + ny[1:]
    return (x, ny)


def _slope(P, Q, ainvs, f, ell):
    """Slope of the line through P, Q (tangent if P == Q); None if vertical."""
    a1, a2, a3, a4, a6 = ainvs
    k = len(f) - 1
    x1, y1 = P
    x2, y2 = Q
    if x1 != x2:
        return fq_mul(fq_sub(y2, y1, ell), fq_inv(fq_sub(x2, x1, ell), f, ell), f, ell)
    # same x: either P == -Q (vertical) or P == Q
    den = fq_add(fq_add(fq_scale(y1, 2, ell), fq_scale(x1, a1, ell), ell), _const(a3, k, ell), ell)
    if y1 != y2 or _is_zero(den):
        return None
    x1sq = fq_mul(x1, x1, f, ell)
    num = fq_add(fq_scale(x1sq, 3, ell), fq_scale(x1, 2 * a2, ell), ell)
    num = fq_add(num, _const(a4, k, ell), ell)
    num = fq_sub(num, fq_scale(y1, a1, ell), ell)
    return fq_mul(num, fq_inv(den, f, ell), f, ell)


def _add_with_slope(P, Q, lam, ainvs, f, ell):
    a1, a2, a3, a4, a6 = ainvs
    k = len(f) - 1
    x1, y1 = P
    x2 = Q[0]
    # x3 = lam^2 + a1 lam - a2 - x1 - x2 ; y3 = -(lam + a1) x3 - nu - a3, nu = y1 - lam x1
    x3 = fq_add(fq_mul(lam, lam, f, ell), fq_scale(lam, a1, ell), ell)
    x3 = fq_sub(fq_sub(fq_sub(x3, _const(a2, k, ell), ell), x1, ell), x2, ell)
    nu = fq_sub(y1, fq_mul(lam, x1, f, ell), ell)
    y3 = fq_mul(fq_add(lam, _const(a1, k, ell), ell), x3, f, ell)
    y3 = fq_sub(fq_sub(fq_scale(y3, -1, ell), nu, ell), _const(a3, k, ell), ell)
    return (x3, y3)


def ec_add(P, Q, ainvs, f, ell):
    if P is None:
        return Q
    if Q is None:
        return P
    lam = _slope(P, Q, ainvs, f, ell)
    if lam is None:
        return None
    return _add_with_slope(P, Q, lam, ainvs, f, ell)


def ec_mul(P, n, ainvs, f, ell):
    if n < 0:
        return ec_mul(ec_neg(P, ainvs, f, ell), -n, ainvs, f, ell)
    R = None
    while n > 0:
        if n & 1:
            R = ec_add(R, P, ainvs, f, ell)
        n >>= 1
        if n:
            P = ec_add(P, P, ainvs, f, ell)
    return R


def miller(P, Q, n, ainvs, f, ell):
    """Value at Q of the normalised Miller function with divisor n(P) - n(O).

    Assumes nP = O and that Q avoids the zeros and poles met along the way
    (true when Q is not in the subgroup generated by P).
    """
    k = len(f) - 1
    xq, yq = Q
    one = _one(k)
    num, den = one, one
    T = P
    for bit in bin(n)[3:]:
        # doubling step
        num = fq_mul(num, num, f, ell)
        den = fq_mul(den, den, f, ell)
        lam = _slope(T, T, ainvs, f, ell)
        if lam is None:
            num = fq_mul(num, fq_sub(xq, T[0], ell), f, ell)
            T = None
        else:
            line = fq_sub(fq_sub(yq, T[1], ell), fq_mul(lam, fq_sub(xq, T[0], ell), f, ell), ell)
            T2 = _add_with_slope(T, T, lam, ainvs, f, ell)
            num = fq_mul(num, line, f, ell)
            den = fq_mul(den, fq_sub(xq, T2[0], ell), f, ell)
            T = T2
        if bit == "1":
            if T is None:
                T = P
                continue
            lam = _slope(T, P, ainvs, f, ell)
            if lam is None:
                num = fq_mul(num, fq_sub(xq, T[0], ell), f, ell)
                T = None
            else:
                line = fq_sub(fq_sub(yq, T[1], ell), fq_mul(lam, fq_sub(xq, T[0], ell), f, ell), ell)
                T2 = _add_with_slope(T, P, lam, ainvs, f, ell)
                num = fq_mul(num, line, f, ell)
                den = fq_mul(den, fq_sub(xq, T2[0], ell), f, ell)
                T = T2
    return fq_mul(num, fq_inv(den, f, ell), f, ell)


def count_points(ainvs, ell):
    """#E(F_l) for a long Weierstrass model over F_l (naive)."""
    a1, a2, a3, a4, a6 = (c % ell for c in ainvs)
    if ell == 2:
        n = 1
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                    n += 1
        return n
    # complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    half = (ell - 1) // 2
    n = 1
    for x in range(ell):
        r = (4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6) % ell
        if r == 0:
            n += 1
        elif pow(r, half, ell) == 1:
            n += 2
    return n
