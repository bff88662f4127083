"""Exact cyclotomic arithmetic and the bridge to the finite fields.

Values of characters live in Q(zeta_N).  A Cyc stores Fraction coefficients
over the power basis of Q(zeta_N) after reduction modulo the N-th cyclotomic
polynomial; mixed-conductor arithmetic lifts both operands to the lcm.

A Chart ties a finite field F_q to the cyclotomic side.  It fixes the
multiplicative generator g0 the field tables are built on, lifts field units
along g0^t -> zeta_{q-1}^t, and carries the maximal ideal of the residue map
Z[zeta_N] -> F_q (zeta parts of p-power order drop to 1).  Valuations at that
prime are computed as lattice memberships in its powers, via integer Hermite
normal forms, so perfectness bounds are decided exactly.

WittRing is Z[x]/(h, p^N): enough p-adic precision to lift idempotents and
Teichmueller representatives and to reconstruct small integers exactly.
"""

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

__all__ = ['Cyc', 'zeta', 'cyclotomic_integer_coeffs', 'Chart', 'WittRing']


@lru_cache(maxsize=None)
def cyclotomic_integer_coeffs(n):
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    x = sympy.Symbol('x')
    poly = sympy.Poly(sympy.cyclotomic_poly(n, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _phi(n):
    return len(cyclotomic_integer_coeffs(n)) - 1


def _reduce_mod_cyclotomic(coeffs, n):
    """Reduce a Fraction coefficient list modulo Phi_n; returns a tuple of
    length phi(n)."""
    d = _phi(n)
    phi_co = cyclotomic_integer_coeffs(n)
    work = list(coeffs) + [Fraction(0)] * max(0, d - len(coeffs))
    for i in range(len(work) - 1, d - 1, -1):
        c = work[i]
        if c:
            work[i] = Fraction(0)
            for j in range(d):
                work[i - d + j] -= c * phi_co[j]
    return tuple(work[:d])


class Cyc:
    """An element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^{phi(n)-1}."""

    __slots__ = ('n', 'co')

    def __init__(self, n, coeffs, reduce=True):
        self.n = n
        if reduce:
            self.co = _reduce_mod_cyclotomic(
                [Fraction(c) for c in coeffs], n)
        else:
            self.co = tuple(coeffs)

    @classmethod
    def rational(cls, a):
        return cls(1, [Fraction(a)], reduce=False)

    def lift_to(self, n):
        """Rewrite in conductor n (self.n must divide n)."""
        if n == self.n:
            return self
        assert n % self.n == 0
        t = n // self.n
        co = [Fraction(0)] * (len(self.co) * t)
        for i, c in enumerate(self.co):
            co[i * t] = c
        return Cyc(n, co)

    def _pair(self, other):
        if not isinstance(other, Cyc):
            other = Cyc.rational(other)
        n = math.lcm(self.n, other.n)
        return self.lift_to(n), other.lift_to(n), n

    def __add__(self, other):
        a, b, n = self._pair(other)
        return Cyc(n, tuple(x + y for x, y in zip(a.co, b.co)), reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, tuple(-c for c in self.co), reduce=False)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyc) else Cyc.rational(-Fraction(other)))

    def __rsub__(self, other):
        return Cyc.rational(other) - self

    def __mul__(self, other):
        if not isinstance(other, Cyc):
            f = Fraction(other)
            return Cyc(self.n, tuple(c * f for c in self.co), reduce=False)
        a, b, n = self._pair(other)
        out = [Fraction(0)] * (len(a.co) + len(b.co) - 1)
        for i, c in enumerate(a.co):
            if c:
                for j, d in enumerate(b.co):
                    if d:
                        out[i + j] += c * d
        return Cyc(n, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        f = Fraction(other)
        return Cyc(self.n, tuple(c / f for c in self.co), reduce=False)

    def __bool__(self):
        return any(self.co)

    def __eq__(self, other):
        a, b, _ = self._pair(other)
        return a.co == b.co

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        if self.is_rational():
            return 'Cyc(%s)' % self.as_rational()
        terms = []
        for i, c in enumerate(self.co):
            if c:
                terms.append('%s*z%d^%d' % (c, self.n, i))
        return 'Cyc(' + ' + '.join(terms) + ')'

    def galois(self, a):
        """Apply zeta_n -> zeta_n^a; a must be prime to n."""
        assert math.gcd(a, self.n) == 1
        out = [Fraction(0)] * self.n
        for i, c in enumerate(self.co):
            if c:
                out[(a * i) % self.n] += c
        return Cyc(self.n, out)

    def conjugate(self):
        if self.n <= 2:
            return self
        return self.galois(self.n - 1)

    def is_rational(self):
        return not any(self.co[1:])

    def as_rational(self):
        assert self.is_rational(), 'value is not rational'
        return self.co[0] if self.co else Fraction(0)

    def as_integer(self):
        r = self.as_rational()
        assert r.denominator == 1, 'value is not an integer'
        return int(r)

    def denominator_lcm(self):
        out = 1
        for c in self.co:
            out = out * c.denominator // math.gcd(out, c.denominator)
        return out

    def normalized(self):
        """The same value written in its minimal cyclotomic field."""
        cur = self
        changed = True
        while changed and cur.n > 1:
            changed = False
            for ell in _prime_divisors(cur.n):
                m = cur.n // ell
                down = cur._descend_to(m)
                if down is not None:
                    cur = down
                    changed = True
                    break
        return cur

    def _descend_to(self, m):
        """Rewrite in Q(zeta_m) if the value lies there (m | n), else None."""
        n = self.n
        if m == 0 or n % m:
            return None
        fixers = [a for a in range(1, n + 1)
                  if math.gcd(a, n) == 1 and a % m == 1 % m]
        for a in fixers:
            if self.galois(a) != self:
                return None
        d = _phi(m)
        t = n // m
        rows = []
        for i in range(d):
            rows.append(Cyc(n, [Fraction(0)] * (i * t) + [Fraction(1)]).co)
        sol = _solve_rational([list(r) for r in rows], list(self.co))
        if sol is None:
            return None
        return Cyc(m, sol, reduce=False)

    def to_json(self):
        v = self.normalized()
        return {'conductor': v.n,
                'coefficients': [str(c) for c in v.co]}


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _solve_rational(rows, target):
    """Solve sum_i x_i rows[i] = target over Q; None if inconsistent."""
    m = len(rows)
    n = len(target)
    aug = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(0)] * m
           for i in range(m)]
    for i in range(m):
        aug[i][n + i] = Fraction(1)
    # row reduce [rows | I], then express target over the reduced rows
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if aug[i][c]:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    t = list(target)
    coeffs = [Fraction(0)] * m
    for j, c in enumerate(pivots):
        if t[c]:
            f = t[c]
            t = [a - f * b for a, b in zip(t, aug[j][:n])]
            for i in range(m):
                coeffs[i] += f * aug[j][n + i]
    if any(t):
        return None
    return coeffs


def zeta(n, j=1):
    """The root of unity zeta_n^j as a Cyc."""
    j %= n
    co = [Fraction(0)] * (j + 1)
    co[j] = Fraction(1)
    return Cyc(n, co)


# ---------------------------------------------------------------------------
# integer lattices (for valuations)


def _hnf(cols):
    """Triangular basis of the lattice spanned by integer columns: one
    column per leading row, produced by Euclidean column reduction."""
    cols = [list(c) for c in cols if any(c)]
    out = []
    if not cols:
        return out
    n = len(cols[0])
    for row in range(n):
        live = [c for c in cols if c[row] != 0]
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[row]))
            a = live[0]
            for c in live[1:]:
                qv = c[row] // a[row]
                if qv:
                    for i in range(n):
                        c[i] -= qv * a[i]
            live = [c for c in live if c[row] != 0]
        if not live:
            continue
        piv = live[0]
        if piv[row] < 0:
            piv[:] = [-x for x in piv]
        out.append(piv)
        cols = [c for c in cols if c is not piv and any(c)]
    return out


def _lattice_member(hnf_cols, v):
    """Is integer vector v in the lattice spanned by the HNF columns?"""
    v = list(v)
    n = len(v)
    for col in hnf_cols:
        lead = next(i for i in range(n) if col[i])
        if v[lead]:
            if v[lead] % col[lead]:
                return False
            q = v[lead] // col[lead]
            for i in range(n):
                v[i] -= q * col[i]
    return not any(v)


def _solve_mod_pn(cols, target, p, mod):
    """Solve sum_i x_i cols[i] = target mod `mod` (a power of p) when the
    column matrix is invertible mod p; returns the x list or None."""
    n = len(target)
    m = len(cols)
    aug = [[cols[j][i] % mod for j in range(m)] + [target[i] % mod]
           for i in range(n)]
    xs = [0] * m
    used = []
    for c in range(m):
        pr = None
        for r in range(n):
            if r not in used and aug[r][c] % p:
                pr = r
                break
        if pr is None:
            return None
        used.append(pr)
        inv = pow(aug[pr][c], -1, mod)
        aug[pr] = [(v * inv) % mod for v in aug[pr]]
        for r in range(n):
            if r != pr and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(a - f * b) % mod for a, b in zip(aug[r], aug[pr])]
    for c, r in enumerate(used):
        xs[c] = aug[r][m]
    for r in range(n):
        if r not in used and aug[r][m] % mod:
            return None
    return xs


# ---------------------------------------------------------------------------
# the chart: field <-> cyclotomic bridge


class Chart:
    """Deterministic identification of F_q-units with (q-1)-th roots of unity.

    zeta_{q-1} corresponds to the generator the field tables use, and the
    residue map Z[zeta_N] -> F_q sends p-power-order roots to 1.  All
    valuations are taken at the kernel of that residue map.
    """

    def __init__(self, field):
        self.field = field
        self.p = field.p
        self.k = field.k
        self.q = field.q
        self.m = self.q - 1
        self.g0 = int(field.generator) if self.q > 2 else 1
        self.h = self._minpoly_of_generator()
        self._mem_cache = {}

    def _minpoly_of_generator(self):
        F = self.field
        if self.q == 2:
            return (-1, 1)
        conj = []
        a = np.int64(self.g0)
        while int(a) not in conj:
            conj.append(int(a))
            a = F.frobenius(a)
        poly = [np.int64(1)]
        for root in conj:
            nxt = [np.int64(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] = F.add(nxt[i + 1], c)
                nxt[i] = F.add(nxt[i], F.mul(c, F.neg(np.int64(root))))
            poly = nxt
        out = []
        for c in poly:
            c = int(c)
            assert c < self.p, 'minimal polynomial not over the prime field'
            out.append(c)
        assert len(out) == self.k + 1
        return tuple(out)

    # lifting ---------------------------------------------------------------

    def lift_unit(self, code):
        """The root of unity over a nonzero field element."""
        code = int(code)
        assert code != 0
        if self.q == 2:
            return Cyc.rational(1)
        t = int(self.field._log[code])
        return zeta(self.m, t)

    # residue ---------------------------------------------------------------

    def _split_conductor(self, n):
        a = 0
        while n % self.p == 0:
            n //= self.p
            a += 1
        return a, n

    def residue(self, x):
        """Image of x in F_q = Z[zeta_N]/P; requires v_P(x) >= 0 and the
        p'-part of the conductor dividing q-1."""
        F = self.field
        n = x.n
        a, mprime = self._split_conductor(n)
        assert self.m % mprime == 0, 'conductor escapes the chart'
        pa = self.p ** a
        out = np.int64(0)
        for i, c in enumerate(x.co):
            if not c:
                continue
            assert c.denominator % self.p, 'value not p-integral'
            num = c.numerator * pow(c.denominator, -1, self.p)
            # the p'-component of zeta_n^i is zeta_{m'}^{i * inv(p^a) mod m'}
            if mprime == 1:
                unit = np.int64(1)
            else:
                e = (i * pow(pa, -1, mprime)) % mprime
                t = (e * (self.m // mprime)) % self.m
                unit = F.pow(np.int64(self.g0), t)
            out = F.add(out, F.mul(np.int64(num % self.p), unit))
        return out

    # valuation -------------------------------------------------------------

    def _maximal_ideal_hnf(self, n, power):
        key = (n, power)
        hit = self._mem_cache.get(key)
        if hit is not None:
            return hit
        d = _phi(n)
        if power == 0:
            out = _hnf([[1 if i == j else 0 for i in range(d)]
                        for j in range(d)])
        elif power == 1:
            # kernel of the residue map: reduce it mod p, where it becomes
            # an F_p-linear map F_p^d -> F_q on monomial residues
            F = self.field
            from .fields import gf
            Fp = gf(self.p, 1)
            rho = Fp.zeros((self.k, d))
            for j in range(d):
                code = self.residue(zeta(n, j))
                rho[:, j] = F.to_int_vector(code)
            ker = Fp.kernel(rho)
            cols = [[self.p if i == j else 0 for i in range(d)]
                    for j in range(d)]
            cols += [[int(c) for c in row] for row in ker]
            out = _hnf(cols)
        else:
            below = self._maximal_ideal_hnf(n, power - 1)
            one = self._maximal_ideal_hnf(n, 1)
            cols = []
            for u in below:
                for v in one:
                    prod = Cyc(n, [Fraction(c) for c in u]) * \
                        Cyc(n, [Fraction(c) for c in v])
                    cols.append([int(c) for c in prod.co])
            out = _hnf(cols)
        self._mem_cache[key] = out
        return out

    def ramification(self, n):
        """v_P(p) in Q(zeta_n): phi of the p-part of the conductor."""
        a, _ = self._split_conductor(n)
        return _phi(self.p ** a) if a else 1

    def p_valuation(self, x):
        """Valuation of x at the chart prime of Q(zeta_n), n = x.n."""
        if not x:
            return math.inf
        den = x.denominator_lcm()
        n = x.n
        num = x * den
        vden = 0
        d = den
        while d % self.p == 0:
            d //= self.p
            vden += 1
        vec = [int(c) for c in num.co]
        a = 0
        while a < 512:
            if not _lattice_member(self._maximal_ideal_hnf(n, a + 1), vec):
                break
            a += 1
        assert a < 512, 'valuation runaway'
        return a - vden * self.ramification(n)


# ---------------------------------------------------------------------------
# truncated Witt vectors


class WittRing:
    """Z[x]/(h(x), p^N): the unramified lift of F_q at precision N."""

    def __init__(self, chart, precision):
        self.chart = chart
        self.p = chart.p
        self.N = precision
        self.mod = chart.p ** precision
        self.h = chart.h
        self.k = len(chart.h) - 1

    def from_field(self, code):
        """Coefficientwise (naive) lift of a field element."""
        F = self.chart.field
        digs = F.to_int_vector(np.int64(int(code)))
        return tuple(int(d) % self.mod for d in digs)

    def to_field(self, w):
        F = self.chart.field
        return F.from_int_vector([c % self.p for c in w])

    def zero(self):
        return (0,) * self.k

    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def add(self, a, b):
        return tuple((x + y) % self.mod for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.mod for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, c, a):
        return tuple((c * x) % self.mod for x in a)

    def mul(self, a, b):
        k = self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % self.mod
        # reduce by monic h
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.k):
                    prod[i - k + j] = (prod[i - k + j] - c * self.h[j]) % self.mod
        return tuple(prod[:k])

    def power(self, a, e):
        out = self.one()
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def lift_idempotent(self, code):
        """The unique idempotent of W over an idempotent of the field."""
        e = self.from_field(code)
        for _ in range(64):
            e2 = self.mul(e, e)
            if e2 == e:
                return e
            e = self.sub(self.scale(3, e2), self.scale(2, self.mul(e2, e)))
        raise AssertionError('idempotent lift did not converge')

    def teichmueller(self, code):
        """The root-of-unity representative over a field unit."""
        assert int(code) != 0
        t = self.from_field(code)
        for _ in range(self.N + 2):
            t2 = self.power(t, self.chart.q)
            if t2 == t:
                return t
            t = t2
        raise AssertionError('Teichmueller lift did not converge')

    def balanced(self, a):
        """Centered integer coefficients in (-p^N/2, p^N/2]."""
        half = self.mod // 2
        return tuple(c - self.mod if c > half else c for c in a)

    def reconstruct_cyclotomic(self, a):
        """Read a Witt element as an element of Z[zeta_{q-1}] with balanced
        coefficients.  Only valid when Phi_{q-1} stays irreducible mod p, so
        the Witt ring is exactly Z_p[zeta_{q-1}] at this precision; the basis
        used is the powers of the Teichmueller representative of g0."""
        m = self.chart.m
        assert self.k == _phi(m), \
            'reconstruction needs the cyclotomic polynomial irreducible mod p'
        if self.k == 1:
            return Cyc.rational(self.balanced(a)[0])
        t = self.teichmueller(np.int64(self.chart.g0))
        cols = []
        cur = self.one()
        for _ in range(self.k):
            cols.append(list(cur))
            cur = self.mul(cur, t)
        coeffs = _solve_mod_pn([list(c) for c in cols], list(a),
                               self.p, self.mod)
        assert coeffs is not None, 'reconstruction solve failed'
        half = self.mod // 2
        co = [c - self.mod if c > half else c for c in coeffs]
        return Cyc(m, [Fraction(c) for c in co])