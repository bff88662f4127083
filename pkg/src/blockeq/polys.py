"""Univariate polynomials over the small finite fields.

Coefficient arrays run low to high degree.  Factoring is squarefree
decomposition, then distinct-degree, then Cantor-Zassenhaus equal-degree
splitting; the random choices inside the splitting are drawn from a
generator seeded by the polynomial itself, so results are reproducible.
"""

import numpy as np
import random

__all__ = ['ptrim', 'pdeg', 'padd', 'psub', 'pmul', 'pdivmod', 'pmod',
           'pgcd', 'pxgcd', 'monic', 'ppowmod', 'factor', 'roots', 'peval']


def ptrim(a):
    a = np.asarray(a, dtype=np.int64)
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return np.zeros(1, dtype=np.int64)
    return a[:nz[-1] + 1]


def pdeg(a):
    a = ptrim(a)
    return len(a) - 1 if a.any() else -1


def padd(F, a, b):
    n = max(len(a), len(b))
    out = F.zeros(n)
    out[:len(a)] = a
    out[:len(b)] = F.add(out[:len(b)], b)
    return ptrim(out)


def psub(F, a, b):
    return padd(F, a, F.neg(np.asarray(b)))


def pmul(F, a, b):
    a, b = ptrim(a), ptrim(b)
    if not a.any() or not b.any():
        return F.zeros(1)
    if F.k == 1:
        return ptrim(np.convolve(a, b) % F.p)
    out = F.zeros(len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            out[i:i + len(b)] = F.add(out[i:i + len(b)], F.mul(int(c), b))
    return ptrim(out)


def pdivmod(F, a, b):
    a, b = ptrim(a).copy(), ptrim(b)
    db = pdeg(b)
    assert db >= 0, 'division by zero polynomial'
    da = pdeg(a)
    if da < db:
        return F.zeros(1), a
    lead_inv = F.inv(b[-1])
    q = F.zeros(da - db + 1)
    for i in range(da - db, -1, -1):
        c = F.mul(a[i + db], lead_inv)
        if c:
            q[i] = c
            a[i:i + db + 1] = F.sub(a[i:i + db + 1], F.mul(int(c), b))
    return ptrim(q), ptrim(a)


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def monic(F, a):
    a = ptrim(a)
    if not a.any() or a[-1] == 1:
        return a
    return F.mul(int(F.inv(a[-1])), a)


def pgcd(F, a, b):
    a, b = ptrim(a), ptrim(b)
    while b.any():
        a, b = b, pmod(F, a, b)
    return monic(F, a)


def pxgcd(F, a, b):
    """Extended gcd: returns (g, u, v) monic with u a + v b = g."""
    r0, r1 = ptrim(a), ptrim(b)
    u0, u1 = F.array([1]), F.zeros(1)
    v0, v1 = F.zeros(1), F.array([1])
    while r1.any():
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, psub(F, u0, pmul(F, q, u1))
        v0, v1 = v1, psub(F, v0, pmul(F, q, v1))
    if r0.any() and r0[-1] != 1:
        c = int(F.inv(r0[-1]))
        r0, u0, v0 = F.mul(c, r0), F.mul(c, u0), F.mul(c, v0)
    return ptrim(r0), ptrim(u0), ptrim(v0)


def ppowmod(F, a, e, m):
    r = F.array([1])
    b = pmod(F, a, m)
    while e:
        if e & 1:
            r = pmod(F, pmul(F, r, b), m)
        b = pmod(F, pmul(F, b, b), m)
        e >>= 1
    return r


def peval(F, a, x):
    acc = np.int64(0)
    for c in reversed(ptrim(a)):
        acc = F.add(F.mul(acc, x), int(c))
    return acc


def _derivative(F, a):
    a = ptrim(a)
    if len(a) <= 1:
        return F.zeros(1)
    mult = np.arange(1, len(a), dtype=np.int64) % F.p
    out = F.zeros(len(a) - 1)
    for i in range(len(out)):
        # integer multiple of a field element
        m = int(mult[i])
        acc = np.int64(0)
        for _ in range(m):
            acc = F.add(acc, a[i + 1])
        out[i] = acc
    return ptrim(out)


def _pth_root(F, a):
    """For f with f' = 0, return g with g^p = f (coefficientwise)."""
    a = ptrim(a)
    assert (pdeg(a) % F.p) == 0 or pdeg(a) == 0
    coeffs = a[::F.p]
    # p-th root on F_q is the inverse of Frobenius: x -> x^(p^(k-1))
    return ptrim(F.pow(coeffs, F.p ** (F.k - 1)))


def _squarefree(F, f):
    """List of (squarefree factor, multiplicity) with product f (monic)."""
    f = monic(F, f)
    out = []
    if pdeg(f) < 1:
        return out
    d = _derivative(F, f)
    if not d.any():
        for g, m in _squarefree(F, _pth_root(F, f)):
            out.append((g, m * F.p))
        return out
    c = pgcd(F, f, d)
    w = pdivmod(F, f, c)[0]
    i = 1
    while pdeg(w) > 0:
        y = pgcd(F, w, c)
        z = pdivmod(F, w, y)[0]
        if pdeg(z) > 0:
            out.append((z, i))
        w = y
        c = pdivmod(F, c, y)[0]
        i += 1
    if pdeg(c) > 0:
        for g, m in _squarefree(F, _pth_root(F, c)):
            out.append((g, m * F.p))
    return out


def _distinct_degree(F, f):
    """(factor, degree) pieces of a squarefree monic f."""
    out = []
    x = F.array([0, 1])
    h = x
    d = 0
    while pdeg(f) > 0:
        d += 1
        if 2 * d > pdeg(f):
            out.append((f, pdeg(f)))
            break
        h = ppowmod(F, h, F.q, f)
        g = pgcd(F, psub(F, h, x), f)
        if pdeg(g) > 0:
            out.append((g, d))
            f = pdivmod(F, f, g)[0]
            h = pmod(F, h, f)
    return out


def _equal_degree(F, f, d, rng):
    """Split a squarefree monic f that is a product of degree-d irreducibles."""
    n = pdeg(f)
    if n == d:
        return [f]
    while True:
        a = F.array([rng.randrange(F.q) for _ in range(n)])
        a = ptrim(a)
        if pdeg(a) < 1:
            continue
        g = pgcd(F, a, f)
        if 0 < pdeg(g) < n:
            return _equal_degree(F, g, d, rng) + \
                _equal_degree(F, pdivmod(F, f, g)[0], d, rng)
        if F.p == 2:
            # trace map over GF(2^k)
            t = F.zeros(1)
            b = pmod(F, a, f)
            for _ in range(d * F.k):
                t = padd(F, t, b)
                b = pmod(F, pmul(F, b, b), f)
            g = pgcd(F, t, f)
        else:
            b = ppowmod(F, a, (F.q ** d - 1) // 2, f)
            g = pgcd(F, psub(F, b, F.array([1])), f)
        if 0 < pdeg(g) < n:
            return _equal_degree(F, g, d, rng) + \
                _equal_degree(F, pdivmod(F, f, g)[0], d, rng)


def factor(F, f):
    """Monic irreducible factors with multiplicity, deterministically ordered."""
    f = ptrim(f)
    assert pdeg(f) >= 1
    lead = f[-1]
    f = monic(F, f)
    rng = random.Random(0x5EED ^ hash((F.p, F.k, tuple(int(c) for c in f))))
    out = []
    for sq, mult in _squarefree(F, f):
        for piece, d in _distinct_degree(F, sq):
            for irr in _equal_degree(F, piece, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (pdeg(t[0]), [int(c) for c in t[0]]))
    total = F.array([int(lead)])
    for g, m in out:
        for _ in range(m):
            total = pmul(F, total, g)
    forig = pmul(F, F.array([int(lead)]), monic(F, ptrim(np.asarray(f))))
    assert np.array_equal(ptrim(total), ptrim(forig)), 'factorization check failed'
    return out


def roots(F, f):
    """Roots in the field, with multiplicity, sorted by code."""
    out = []
    for g, m in factor(F, f):
        if pdeg(g) == 1:
            # g = x + c, root = -c
            out.extend([int(F.neg(g[0]))] * m)
    return sorted(out)
