"""Finite fields F_{l^k} with a canonical modulus, and small F_l[x] helpers.

The modulus of F_{l^k} is the lexicographically smallest monic irreducible
polynomial of degree k, comparing coefficient vectors (a_0, ..., a_{k-1}).
Elements are tuples of k ints, as used by the kernels.
"""

from __future__ import annotations

import random
from functools import lru_cache

from sympy import factorint

from . import kernels as K

# ---------------------------------------------------------------- F_l[x]
# polynomials are lists of ints, constant term first, no trailing zeros


def ptrim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def pmod(a: list, b: list, ell: int) -> list:
    a = [c % ell for c in a]
    b = ptrim([c % ell for c in b])
    inv = pow(b[-1], -1, ell)
    db = len(b) - 1
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] * inv % ell
        if c:
            for i in range(db + 1):
                a[d - db + i] = (a[d - db + i] - c * b[i]) % ell
    return ptrim(a[:db] if db > 0 else [])


def pgcd(a: list, b: list, ell: int) -> list:
    a, b = ptrim([c % ell for c in a]), ptrim([c % ell for c in b])
    while b:
        a, b = b, pmod(a, b, ell)
    if a:
        inv = pow(a[-1], -1, ell)
        a = [c * inv % ell for c in a]
    return a


def pmul(a: list, b: list, ell: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim([c % ell for c in out])


def peval(a: list, x: int, ell: int) -> int:
    r = 0
    for c in reversed(a):
        r = (r * x + c) % ell
    return r


def _x_frob_chain(f: list, ell: int, k: int):
    """Yield x^(l^i) mod f for i = 1..k, as element tuples."""
    x = [0] * k
    if k == 1:
        x = [(-f[0]) % ell]
    else:
        x[1] = 1
    cur = tuple(x)
    for _ in range(k):
        cur = K.fq_pow(cur, ell, f, ell)
        yield cur


def is_irreducible(f: list, ell: int) -> bool:
    """Rabin's test for a monic polynomial f (constant term first)."""
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] % ell == 0:
        return False
    if any(peval(f, c, ell) == 0 for c in range(min(ell, 64))):
        return False
    primes = list(factorint(k).keys())
    wanted = {k // r for r in primes}
    xs = {}
    for i, v in enumerate(_x_frob_chain(f, ell, k), start=1):
        if i in wanted or i == k:
            xs[i] = v
    xpoly = [0, 1]
    top = list(xs[k])
    top = ptrim(top)
    if ptrim([(a - b) % ell for a, b in zip(top + [0] * k, xpoly + [0] * k)]):
        return False
    for i in wanted:
        g = ptrim([(a - b) % ell for a, b in zip(list(xs[i]) + [0] * k, xpoly + [0] * k)])
        if len(pgcd(f, g, ell)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def canonical_modulus(ell: int, k: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree k over F_l."""
    if k == 1:
        return (0, 1)
    # enumerate (a_0, ..., a_{k-1}) in lexicographic order, a_0 >= 1
    digits = [1] + [0] * (k - 1)
    while True:
        f = digits + [1]
        if is_irreducible(f, ell):
            return tuple(f)
        i = k - 1
        while True:
            digits[i] += 1
            if digits[i] < ell:
                break
            digits[i] = 0
            i -= 1
            if i < 0:
                raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """F_{l^k} = F_l[x]/(f) with the canonical modulus."""

    def __init__(self, ell: int, k: int):
        self.ell = ell
        self.k = k
        self.modulus = list(canonical_modulus(ell, k))
        self.order = ell ** k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def __repr__(self):
        return f"FiniteField({self.ell}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.ell, self.k) == (other.ell, other.k)

    def __hash__(self):
        return hash((self.ell, self.k))

    # element helpers
    def const(self, c: int) -> tuple:
        return (c % self.ell,) + (0,) * (self.k - 1)

    def gen(self) -> tuple:
        # the class of x; for k = 1 that is the root of x + f0
        return (-self.modulus[0] % self.ell,) if self.k == 1 else (0, 1) + (0,) * (self.k - 2)

    def mul(self, a, b):
        return K.fq_mul(a, b, self.modulus, self.ell)

    def add(self, a, b):
        return K.fq_add(a, b, self.ell)

    def sub(self, a, b):
        return K.fq_sub(a, b, self.ell)

    def neg(self, a):
        return K.fq_scale(a, -1, self.ell)

    def scale(self, a, c):
        return K.fq_scale(a, c, self.ell)

    def inv(self, a):
        return K.fq_inv(a, self.modulus, self.ell)

    def pow(self, a, n: int):
        if n < 0:
            return K.fq_pow(self.inv(a), -n, self.modulus, self.ell)
        return K.fq_pow(a, n, self.modulus, self.ell)

    def frob(self, a):
        return self.pow(a, self.ell)

    def is_zero(self, a) -> bool:
        return not any(a)

    def random(self, rng: random.Random) -> tuple:
        return tuple(rng.randrange(self.ell) for _ in range(self.k))

    def embed_poly(self, coeffs, x):
        """Evaluate an F_l[X] polynomial (constant first) at x in this field."""
        r = self.zero
        for c in reversed(coeffs):
            r = self.add(self.mul(r, x), self.const(c))
        return r

    def order_of(self, a) -> int:
        """Multiplicative order of a nonzero element."""
        n = self.order - 1
        for r, e in factorint(n).items():
            for _ in range(e):
                if self.pow(a, n // r) == self.one:
                    n //= r
                else:
                    break
        return n

    def sqrt(self, a, rng: random.Random):
        """A square root of a, or None if a is a non-square (odd characteristic)."""
        if self.is_zero(a):
            return self.zero
        q = self.order
        if self.ell == 2:
            return self.pow(a, q // 2)
        if self.pow(a, (q - 1) // 2) != self.one:
            return None
        # Tonelli-Shanks
        s, m = 0, q - 1
        while m % 2 == 0:
            m //= 2
            s += 1
        z = self.random(rng)
        while self.is_zero(z) or self.pow(z, (q - 1) // 2) == self.one:
            z = self.random(rng)
        c = self.pow(z, m)
        x = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        while t != self.one:
            i, t2 = 0, t
            while t2 != self.one:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.mul(b, b)
            x = self.mul(x, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            s = i
        return x

    def trace_to_prime(self, a) -> int:
        """Absolute trace F_{l^k} -> F_l."""
        t, cur = self.zero, a
        for _ in range(self.k):
            t = self.add(t, cur)
            cur = self.frob(cur)
        assert all(c == 0 for c in t[1:])
        return t[0]

    def solve_artin_schreier(self, c, rng: random.Random):
        """A root z of z^2 + z = c in characteristic 2, or None."""
        assert self.ell == 2
        if self.trace_to_prime(c) != 0:
            return None
        if self.k % 2 == 1:
            # half trace
            z, cur = self.zero, c
            for _ in range((self.k + 1) // 2):
                z = self.add(z, cur)
                cur = self.frob(self.frob(cur))
            return z
        delta = self.random(rng)
        while self.trace_to_prime(delta) != 1:
            delta = self.random(rng)
        # z = sum_{i=0}^{k-2} (sum_{j=i+1}^{k-1} delta^{2^j}) c^{2^i}
        dpow = [delta]
        cpow = [c]
        for _ in range(self.k - 1):
            dpow.append(self.frob(dpow[-1]))
            cpow.append(self.frob(cpow[-1]))
        z = self.zero
        for i in range(self.k - 1):
            inner = self.zero
            for j in range(i + 1, self.k):
                inner = self.add(inner, dpow[j])
            z = self.add(z, self.mul(inner, cpow[i]))
        return z
