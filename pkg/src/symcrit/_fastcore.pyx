# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for F_{l^k} arithmetic, curve addition, scalar
multiplication, Miller loops and naive point counting.

Same API and data layout as ``symcrit._purecore``.
"""

from libc.string cimport memcpy, memset

BACKEND = "cython"

DEF MAXK = 256

ctypedef long long ll


cdef struct Ctx:
    int k
    ll ell
    ll f[MAXK + 1]
    ll a1, a2, a3, a4, a6


cdef struct Pt:
    int inf
    ll x[MAXK]
    ll y[MAXK]


cdef inline ll md(ll a, ll m) nogil:
    a %= m
    return a + m if a < 0 else a


cdef ll inv_mod(ll a, ll m) nogil:
    cdef ll t = 0, nt = 1, r = m, nr = md(a, m), q, tmp
    while nr:
        q = r // nr
        tmp = t - q * nt; t = nt; nt = tmp
        tmp = r - q * nr; r = nr; nr = tmp
    return md(t, m)


cdef int setup(Ctx* c, f, ell, ainvs) except -1:
    cdef int i
    c.k = len(f) - 1
    if c.k > MAXK or c.k < 1:
        raise ValueError("extension degree out of kernel range")
    c.ell = ell
    for i in range(c.k + 1):
        c.f[i] = md(f[i], ell)
    if ainvs is not None:
        c.a1 = md(ainvs[0], ell); c.a2 = md(ainvs[1], ell); c.a3 = md(ainvs[2], ell)
        c.a4 = md(ainvs[3], ell); c.a6 = md(ainvs[4], ell)
    return 0


cdef int load(ll* out, a, Ctx* c) except -1:
    cdef int i
    if len(a) != c.k:
        raise ValueError("element has wrong length")
    for i in range(c.k):
        out[i] = md(a[i], c.ell)
    return 0


cdef tuple dump(ll* a, Ctx* c):
    return tuple([a[i] for i in range(c.k)])


cdef int load_pt(Pt* P, obj, Ctx* c) except -1:
    if obj is None:
        P.inf = 1
        return 0
    P.inf = 0
    load(P.x, obj[0], c)
    load(P.y, obj[1], c)
    return 0


cdef object dump_pt(Pt* P, Ctx* c):
    if P.inf:
        return None
    return (dump(P.x, c), dump(P.y, c))


cdef void fmul(const ll* a, const ll* b, ll* out, Ctx* c) nogil:
    cdef ll prod[2 * MAXK]
    cdef int k = c.k, i, j, d, base
    cdef ll ell = c.ell, cc, ai
    memset(prod, 0, sizeof(ll) * (2 * k))
    for i in range(k):
        ai = a[i]
        if ai:
            for j in range(k):
                prod[i + j] += ai * b[j]
        if (i & 31) == 31:
            for j in range(2 * k - 1):
                prod[j] %= ell
    for d in range(2 * k - 2, k - 1, -1):
        cc = md(prod[d], ell)
        if cc:
            base = d - k
            for i in range(k):
                prod[base + i] = (prod[base + i] - cc * c.f[i]) % ell
    for i in range(k):
        out[i] = md(prod[i], ell)


cdef inline void fadd(const ll* a, const ll* b, ll* out, Ctx* c) nogil:
    cdef int i
    for i in range(c.k):
        out[i] = (a[i] + b[i]) % c.ell


cdef inline void fsub(const ll* a, const ll* b, ll* out, Ctx* c) nogil:
    cdef int i
    for i in range(c.k):
        out[i] = md(a[i] - b[i], c.ell)


cdef inline void fscale(const ll* a, ll s, ll* out, Ctx* c) nogil:
    cdef int i
    s = md(s, c.ell)
    for i in range(c.k):
        out[i] = (a[i] * s) % c.ell


cdef inline void faddc(ll* a, ll s, Ctx* c) nogil:
    a[0] = md(a[0] + s, c.ell)


cdef inline int fzero(const ll* a, Ctx* c) nogil:
    cdef int i
    for i in range(c.k):
        if a[i]:
            return 0
    return 1


cdef inline int feq(const ll* a, const ll* b, Ctx* c) nogil:
    cdef int i
    for i in range(c.k):
        if a[i] != b[i]:
            return 0
    return 1


cdef int finv(const ll* a, ll* out, Ctx* c) nogil:
    """Extended Euclid; returns -1 if not invertible."""
    cdef ll r0[MAXK + 1]
    cdef ll r1[MAXK + 1]
    cdef ll s0[MAXK + 1]
    cdef ll s1[MAXK + 1]
    cdef ll tmp[MAXK + 1]
    cdef int d0, d1, ds0, ds1, i, j, sh
    cdef ll ell = c.ell, lead, q
    cdef int k = c.k
    memset(r0, 0, sizeof(ll) * (MAXK + 1))
    memset(r1, 0, sizeof(ll) * (MAXK + 1))
    memset(s0, 0, sizeof(ll) * (MAXK + 1))
    memset(s1, 0, sizeof(ll) * (MAXK + 1))
    for i in range(k + 1):
        r0[i] = c.f[i]
    d0 = k
    d1 = -1
    for i in range(k):
        r1[i] = a[i]
        if a[i]:
            d1 = i
    if d1 < 0:
        return -1
    ds0 = 0  # s0 = 0
    s1[0] = 1
    ds1 = 0
    while d1 > 0:
        # r0 <- r0 mod r1, s0 <- s0 - q s1, tracked on the fly
        lead = inv_mod(r1[d1], ell)
        while d0 >= d1:
            q = (r0[d0] * lead) % ell
            sh = d0 - d1
            if q:
                for i in range(d1 + 1):
                    r0[sh + i] = md(r0[sh + i] - q * r1[i], ell)
                for i in range(ds1 + 1):
                    s0[sh + i] = md(s0[sh + i] - q * s1[i], ell)
                if sh + ds1 > ds0:
                    ds0 = sh + ds1
            while d0 >= 0 and r0[d0] == 0:
                d0 -= 1
            if d0 < 0:
                return -1
        while ds0 > 0 and s0[ds0] == 0:
            ds0 -= 1
        # swap (r0, s0) <-> (r1, s1)
        memcpy(tmp, r0, sizeof(ll) * (MAXK + 1)); memcpy(r0, r1, sizeof(ll) * (MAXK + 1)); memcpy(r1, tmp, sizeof(ll) * (MAXK + 1))
        memcpy(tmp, s0, sizeof(ll) * (MAXK + 1)); memcpy(s0, s1, sizeof(ll) * (MAXK + 1)); memcpy(s1, tmp, sizeof(ll) * (MAXK + 1))
        i = d0; d0 = d1; d1 = i
        i = ds0; ds0 = ds1; ds1 = i
    lead = inv_mod(r1[0], ell)
    for i in range(k):
        out[i] = (s1[i] * lead) % ell if i <= ds1 else 0
    return 0


cdef int slope(Pt* P, Pt* Q, ll* lam, Ctx* c) nogil:
    """Returns 1 and sets lam, or 0 when the line is vertical; -1 on failure."""
    cdef ll t1[MAXK]
    cdef ll t2[MAXK]
    cdef ll t3[MAXK]
    if not feq(P.x, Q.x, c):
        fsub(Q.y, P.y, t1, c)
        fsub(Q.x, P.x, t2, c)
        if finv(t2, t3, c) < 0:
            return -1
        fmul(t1, t3, lam, c)
        return 1
    # den = 2y + a1 x + a3
    fscale(P.y, 2, t1, c)
    fscale(P.x, c.a1, t2, c)
    fadd(t1, t2, t1, c)
    faddc(t1, c.a3, c)
    if not feq(P.y, Q.y, c) or fzero(t1, c):
        return 0
    # num = 3x^2 + 2 a2 x + a4 - a1 y
    fmul(P.x, P.x, t2, c)
    fscale(t2, 3, t2, c)
    fscale(P.x, 2 * c.a2, t3, c)
    fadd(t2, t3, t2, c)
    faddc(t2, c.a4, c)
    fscale(P.y, c.a1, t3, c)
    fsub(t2, t3, t2, c)
    if finv(t1, t3, c) < 0:
        return -1
    fmul(t2, t3, lam, c)
    return 1


cdef void add_with_slope(Pt* P, Pt* Q, ll* lam, Pt* R, Ctx* c) nogil:
    cdef ll x3[MAXK]
    cdef ll nu[MAXK]
    cdef ll t[MAXK]
    fmul(lam, lam, x3, c)
    fscale(lam, c.a1, t, c)
    fadd(x3, t, x3, c)
    faddc(x3, -c.a2, c)
    fsub(x3, P.x, x3, c)
    fsub(x3, Q.x, x3, c)
    fmul(lam, P.x, t, c)
    fsub(P.y, t, nu, c)
    memcpy(t, lam, sizeof(ll) * c.k)
    faddc(t, c.a1, c)
    fmul(t, x3, R.y, c)
    fscale(R.y, -1, R.y, c)
    fsub(R.y, nu, R.y, c)
    faddc(R.y, -c.a3, c)
    memcpy(R.x, x3, sizeof(ll) * c.k)
    R.inf = 0


cdef int padd(Pt* P, Pt* Q, Pt* R, Ctx* c) nogil:
    cdef ll lam[MAXK]
    cdef int s
    cdef Pt tmp
    if P.inf:
        memcpy(R, Q, sizeof(Pt))
        return 0
    if Q.inf:
        memcpy(R, P, sizeof(Pt))
        return 0
    s = slope(P, Q, lam, c)
    if s < 0:
        return -1
    if s == 0:
        R.inf = 1
        return 0
    add_with_slope(P, Q, lam, &tmp, c)
    memcpy(R, &tmp, sizeof(Pt))
    return 0


def fq_mul(a, b, f, ell):
    cdef Ctx c
    cdef ll x[MAXK]
    cdef ll y[MAXK]
    cdef ll z[MAXK]
    setup(&c, f, ell, None)
    load(x, a, &c); load(y, b, &c)
    fmul(x, y, z, &c)
    return dump(z, &c)


def fq_add(a, b, ell):
    return tuple([(x + y) % ell for x, y in zip(a, b)])


def fq_sub(a, b, ell):
    return tuple([(x - y) % ell for x, y in zip(a, b)])


def fq_scale(a, s, ell):
    return tuple([(x * s) % ell for x in a])


def fq_pow(a, n, f, ell):
    cdef Ctx c
    cdef ll base[MAXK]
    cdef ll res[MAXK]
    cdef ll tmp[MAXK]
    setup(&c, f, ell, None)
    load(base, a, &c)
    memset(res, 0, sizeof(ll) * MAXK)
    res[0] = 1
    n = int(n)
    if n < 0:
        raise ValueError("negative exponent")
    while n > 0:
        if n & 1:
            fmul(res, base, tmp, &c)
            memcpy(res, tmp, sizeof(ll) * c.k)
        n >>= 1
        if n:
            fmul(base, base, tmp, &c)
            memcpy(base, tmp, sizeof(ll) * c.k)
    return dump(res, &c)


def fq_inv(a, f, ell):
    cdef Ctx c
    cdef ll x[MAXK]
    cdef ll y[MAXK]
    setup(&c, f, ell, None)
    load(x, a, &c)
    if finv(x, y, &c) < 0:
        raise ZeroDivisionError("element not invertible in F_q")
    return dump(y, &c)


def ec_neg(P, ainvs, f, ell):
    if P is None:
        return None
    a1, a2, a3 = ainvs[0], ainvs[1], ainvs[2]
    x, y = P
    ny = [(-yi - a1 * xi) % ell for xi, yi in zip(x, y)]
    ny[0] = (ny[0] - a3) % ell
    return (tuple(x), tuple(ny))


def ec_add(P, Q, ainvs, f, ell):
    cdef Ctx c
    cdef Pt A, B, R
    setup(&c, f, ell, ainvs)
    load_pt(&A, P, &c); load_pt(&B, Q, &c)
    if padd(&A, &B, &R, &c) < 0:
        raise ZeroDivisionError("point addition failed")
    return dump_pt(&R, &c)


def ec_mul(P, n, ainvs, f, ell):
    cdef Ctx c
    cdef Pt A, R
    if n < 0:
        return ec_mul(ec_neg(P, ainvs, f, ell), -n, ainvs, f, ell)
    setup(&c, f, ell, ainvs)
    load_pt(&A, P, &c)
    R.inf = 1
    n = int(n)
    while n > 0:
        if n & 1:
            if padd(&R, &A, &R, &c) < 0:
                raise ZeroDivisionError("point addition failed")
        n >>= 1
        if n:
            if padd(&A, &A, &A, &c) < 0:
                raise ZeroDivisionError("point doubling failed")
    return dump_pt(&R, &c)


cdef int miller_step(Pt* T, Pt* S, Pt* Qp, ll* num, ll* den, Ctx* c) nogil:
    """num/den *= line(T,S)/vertical(T+S) evaluated at Qp; T <- T + S."""
    cdef ll lam[MAXK]
    cdef ll t1[MAXK]
    cdef ll t2[MAXK]
    cdef Pt R
    cdef int s = slope(T, S, lam, c)
    if s < 0:
        return -1
    if s == 0:
        fsub(Qp.x, T.x, t1, c)
        fmul(num, t1, t2, c)
        memcpy(num, t2, sizeof(ll) * c.k)
        T.inf = 1
        return 0
    # line = yq - yT - lam (xq - xT)
    fsub(Qp.x, T.x, t1, c)
    fmul(lam, t1, t2, c)
    fsub(Qp.y, T.y, t1, c)
    fsub(t1, t2, t1, c)
    fmul(num, t1, t2, c)
    memcpy(num, t2, sizeof(ll) * c.k)
    add_with_slope(T, S, lam, &R, c)
    fsub(Qp.x, R.x, t1, c)
    fmul(den, t1, t2, c)
    memcpy(den, t2, sizeof(ll) * c.k)
    memcpy(T, &R, sizeof(Pt))
    return 0


def miller(P, Q, n, ainvs, f, ell):
    cdef Ctx c
    cdef Pt A, B, T
    cdef ll num[MAXK]
    cdef ll den[MAXK]
    cdef ll tmp[MAXK]
    cdef ll out[MAXK]
    setup(&c, f, ell, ainvs)
    load_pt(&A, P, &c); load_pt(&B, Q, &c)
    memset(num, 0, sizeof(ll) * MAXK); memset(den, 0, sizeof(ll) * MAXK)
    num[0] = 1; den[0] = 1
    memcpy(&T, &A, sizeof(Pt))
    for bit in bin(int(n))[3:]:
        fmul(num, num, tmp, &c); memcpy(num, tmp, sizeof(ll) * c.k)
        fmul(den, den, tmp, &c); memcpy(den, tmp, sizeof(ll) * c.k)
        if T.inf:
            raise ZeroDivisionError("Miller loop reached infinity early")
        if miller_step(&T, &T, &B, num, den, &c) < 0:
            raise ZeroDivisionError("Miller doubling failed")
        if bit == "1":
            if T.inf:
                memcpy(&T, &A, sizeof(Pt))
                continue
            if miller_step(&T, &A, &B, num, den, &c) < 0:
                raise ZeroDivisionError("Miller addition failed")
    if finv(den, tmp, &c) < 0:
        raise ZeroDivisionError("Miller denominator vanished")
    fmul(num, tmp, out, &c)
    return dump(out, &c)


def count_points(ainvs, ell):
    cdef ll a1, a2, a3, a4, a6, b2, b4, b6, x, r, n, p = ell
    cdef ll y
    cdef bytearray sq
    a1 = md(ainvs[0], p); a2 = md(ainvs[1], p); a3 = md(ainvs[2], p)
    a4 = md(ainvs[3], p); a6 = md(ainvs[4], p)
    if p == 2:
        n = 1
        for x in range(2):
            for y in range(2):
                if md(y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6, 2) == 0:
                    n += 1
        return n
    sq = bytearray(p)
    for y in range(1, p):
        sq[(y * y) % p] = 1
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    n = 1
    for x in range(p):
        r = md(((4 * x % p) * x % p * x + b2 * x % p * x + 2 * b4 * x + b6), p)
        if r == 0:
            n += 1
        elif sq[r]:
            n += 2
    return n
