"""Small finite fields and exact linear algebra over them.

Field elements are integer codes 0..q-1; the base-p digits of a code are
the coefficients of the residue polynomial.  All matrix work happens in
numpy int64 arrays of codes.  Fields stay tiny here (q <= a few hundred),
so multiplication runs through discrete-log tables built on a fixed
primitive element, which also serves as the deterministic chart for
lifting eigenvalues to roots of unity later.
"""

import numpy as np
from functools import lru_cache

__all__ = ['GF', 'gf', 'splitting_field_degree', 'minpoly_element',
           'embed_codes']


# Conway polynomials for the (p, k) this library actually reaches, as
# coefficient tuples (constant term first, degree k monic).  Fallback for
# anything else: least primitive polynomial in lexicographic order.
_CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (11, 1): (9, 1),
    (13, 1): (11, 1),
}


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class GF:
    """The field with p^k elements."""

    def __init__(self, p, k):
        assert _is_prime(p) and k >= 1
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = self._defining_polynomial()
        self._build_tables()

    # construction ----------------------------------------------------------

    def _defining_polynomial(self):
        if (self.p, self.k) in _CONWAY:
            return _CONWAY[(self.p, self.k)]
        if self.k == 1:
            # x - g for the least primitive root g
            for g in range(2, self.p):
                if self._order_mod_p(g) == self.p - 1:
                    return ((-g) % self.p, 1)
            return (1, 1)  # p == 2
        for code in range(self.q, 2 * self.q):
            coeffs = self._digits(code)
            if self._poly_is_primitive(coeffs):
                return tuple(coeffs)
        raise AssertionError('no primitive polynomial found')

    def _order_mod_p(self, g):
        o, x = 1, g % self.p
        while x != 1:
            x = x * g % self.p
            o += 1
        return o

    def _digits(self, code):
        out = []
        for _ in range(self.k + 1):
            out.append(code % self.p)
            code //= self.p
        return out

    def _poly_is_primitive(self, coeffs):
        """Monic degree-k polynomial whose root generates the units."""
        if coeffs[self.k] != 1 or coeffs[0] == 0:
            return False
        # arithmetic mod (p, coeffs): states are tuples of length k
        def mulx(v):
            w = [0] + list(v[:-1])
            lead = v[-1]
            if lead:
                for i in range(self.k):
                    w[i] = (w[i] - lead * coeffs[i]) % self.p
            return tuple(w)
        x = tuple([0, 1] + [0] * (self.k - 2)) if self.k > 1 else (1,)
        seen = x
        for n in range(1, self.q):
            if seen == tuple([1] + [0] * (self.k - 1)):
                return n == self.q - 1
            seen = mulx(seen)
        return False

    def _code_mul_slow(self, a, b):
        """Product of two codes by residue-polynomial arithmetic."""
        p, k = self.p, self.k
        da = [(a // p ** i) % p for i in range(k)]
        db = [(b // p ** i) % p for i in range(k)]
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for m in range(2 * k - 2, k - 1, -1):
            c = prod[m]
            if c:
                prod[m] = 0
                for i in range(k):
                    prod[m - k + i] = (prod[m - k + i] - c * self.modulus[i]) % p
        return sum(prod[i] * p ** i for i in range(k))

    def _build_tables(self):
        q = self.q
        # least primitive element as the chart generator
        def order(c):
            o, x = 1, c
            while x != 1:
                x = self._code_mul_slow(x, c)
                o += 1
            return o
        g0 = 1
        if q > 2:
            for c in range(2, q):
                if order(c) == q - 1:
                    g0 = c
                    break
        self.generator = g0
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            exp[i + q - 1] = x
            log[x] = i
            x = self._code_mul_slow(x, g0)
        assert x == 1
        self._exp = exp
        self._log = log
        if self.k > 1 and self.p != 2:
            codes = np.arange(q, dtype=np.int64)
            digs = np.stack([(codes // self.p ** i) % self.p for i in range(self.k)])
            s = (digs[:, :, None] + digs[:, None, :]) % self.p
            self._add_table = sum(s[i] * self.p ** i for i in range(self.k))
        # reduction vectors for x^m, m = k..2k-2, used by matmul
        red = np.zeros((2 * self.k - 1, self.k), dtype=np.int64)
        for d in range(self.k):
            red[d, d] = 1
        for m in range(self.k, 2 * self.k - 1):
            # x^m = x * x^(m-1)
            prev = red[m - 1]
            shifted = np.zeros(self.k + 1, dtype=np.int64)
            shifted[1:] = prev
            lead = shifted[self.k]
            vec = shifted[:self.k].copy()
            if lead:
                vec = (vec - lead * np.array(self.modulus[:self.k], dtype=np.int64)) % self.p
            red[m] = vec % self.p
        self._reduction = red

    def __repr__(self):
        return 'GF(%d)' % self.q if self.k == 1 else 'GF(%d^%d)' % (self.p, self.k)

    def __eq__(self, other):
        return isinstance(other, GF) and self.p == other.p and self.k == other.k

    def __hash__(self):
        return hash((self.p, self.k))

    # scalar and array arithmetic -------------------------------------------

    def array(self, data):
        return np.asarray(data, dtype=np.int64)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return (a + b) % self.p
        return self._add_table[a, b]

    def neg(self, a):
        if self.p == 2:
            return np.asarray(a) + 0
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        digs = [(np.asarray(a) // self.p ** i) % self.p for i in range(self.k)]
        return sum(((-d) % self.p) * self.p ** i for i, d in enumerate(digs))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a)
        assert np.all(a != 0), 'division by zero'
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a, e):
        a = np.asarray(a)
        if e == 0:
            return np.where(a == a, 1, 0) if a.shape else np.int64(1)
        la = self._log[a] * (e % (self.q - 1) if self.q > 2 else e)
        out = self._exp[la % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def frobenius(self, a, j=1):
        return self.pow(a, self.p ** j)

    def log(self, a):
        """Discrete log base the stored generator; a must be nonzero."""
        a = int(a)
        assert a != 0, 'log of zero'
        return int(self._log[a])

    def to_int_vector(self, a):
        """Base-p digit expansion of codes, shape (..., k)."""
        a = np.asarray(a)
        return np.stack([(a // self.p ** i) % self.p for i in range(self.k)], axis=-1)

    def from_int_vector(self, v):
        v = np.asarray(v) % self.p
        return sum(v[..., i] * self.p ** i for i in range(self.k))

    # matrices ---------------------------------------------------------------

    def _raw_matmul(self, A, B):
        """Exact integer product of matrices with entries in [0, p).

        numpy routes integer matmul through a plain C loop; going through
        float64 picks up BLAS instead and stays exact as long as every
        accumulated entry fits below 2**53.
        """
        n = A.shape[-1]
        if 0 < n * (self.p - 1) ** 2 <= 2 ** 52:
            C = A.astype(np.float64) @ B.astype(np.float64)
            return np.rint(C).astype(np.int64)
        return A @ B

    def matmul(self, A, B):
        A = np.asarray(A) % self.p if self.k == 1 else np.asarray(A)
        B = np.asarray(B) % self.p if self.k == 1 else np.asarray(B)
        if self.k == 1:
            return self._raw_matmul(A, B) % self.p
        Ad = [(A // self.p ** i) % self.p for i in range(self.k)]
        Bd = [(B // self.p ** i) % self.p for i in range(self.k)]
        k = self.k
        parts = [np.zeros((A.shape[0], B.shape[-1]), dtype=np.int64)
                 for _ in range(2 * k - 1)]
        for i in range(k):
            for j in range(k):
                parts[i + j] = parts[i + j] + self._raw_matmul(Ad[i], Bd[j])
        acc = np.zeros((k,) + parts[0].shape, dtype=np.int64)
        for m in range(2 * k - 1):
            vec = self._reduction[m]
            for d in range(k):
                if vec[d]:
                    acc[d] = acc[d] + vec[d] * parts[m]
        acc %= self.p
        return sum(acc[d] * self.p ** d for d in range(k))

    def mat_inv(self, A):
        n = A.shape[0]
        R, piv = self.rref(np.concatenate([A, self.eye(n)], axis=1))
        assert piv == list(range(n)), 'matrix not invertible'
        return R[:, n:]

    def rref(self, A):
        """Reduced row echelon form; returns (R, pivot_columns)."""
        A = np.array(A, dtype=np.int64)
        m, n = A.shape
        pivots = []
        r = 0
        for c in range(n):
            if r == m:
                break
            rows = np.nonzero(A[r:, c])[0]
            if len(rows) == 0:
                continue
            i = r + rows[0]
            if i != r:
                A[[r, i]] = A[[i, r]]
            inv = self.inv(A[r, c])
            A[r] = self.mul(A[r], inv)
            col = A[:, c].copy()
            col[r] = 0
            nz = np.nonzero(col)[0]
            if len(nz):
                A[nz] = self.sub(A[nz], self.mul(col[nz][:, None], A[r][None, :]))
            pivots.append(c)
            r += 1
        return A, pivots

    def rank(self, A):
        if A.size == 0:
            return 0
        return len(self.rref(A)[1])

    def row_space(self, A):
        """Basis of the row space, as rref rows."""
        R, piv = self.rref(A)
        return R[:len(piv)]

    def kernel(self, A):
        """Basis (rows) of the right null space of A."""
        A = np.asarray(A)
        m, n = A.shape
        R, piv = self.rref(A)
        free = [c for c in range(n) if c not in piv]
        out = self.zeros((len(free), n))
        if free:
            out[np.arange(len(free)), free] = 1
            if piv:
                out[:, piv] = self.neg(R[:len(piv), free]).T
        return out

    def solve(self, A, b):
        """One solution x of A x = b, or None.  b may be a matrix of columns."""
        A = np.asarray(A)
        b = np.atleast_2d(np.asarray(b))
        if b.shape[0] != A.shape[0]:
            b = b.T
        m, n = A.shape
        R, piv = self.rref(np.concatenate([A, b], axis=1))
        for j, c in enumerate(piv):
            if c >= n:
                return None
        x = self.zeros((n, b.shape[1]))
        for j, c in enumerate(piv):
            x[c] = R[j, n:]
        return x

    def in_row_space(self, B, v):
        """Is v in the row space of B (B already arbitrary)?"""
        if B.size == 0:
            return not np.any(v)
        return self.rank(np.vstack([B, v])) == self.rank(B)

    # characteristic and minimal polynomials ---------------------------------

    def charpoly(self, A):
        """Characteristic polynomial of A, coefficients low to high,
        sign convention det(xI - A)."""
        H = np.array(A, dtype=np.int64)
        n = H.shape[0]
        for m in range(1, n):
            rows = np.nonzero(H[m:, m - 1])[0]
            if len(rows) == 0:
                continue
            i = m + rows[0]
            if i != m:
                H[[m, i]] = H[[i, m]]
                H[:, [m, i]] = H[:, [i, m]]
            t = self.inv(H[m, m - 1])
            if m + 1 < n:
                u = self.mul(H[m + 1:, m - 1], t)
                nz = np.nonzero(u)[0]
                if len(nz):
                    H[m + 1 + nz] = self.sub(H[m + 1 + nz],
                                             self.mul(u[nz][:, None], H[m][None, :]))
                    # column compensation: col m += sum u[i] * col (m+1+i)
                    H[:, m] = self.add(H[:, m],
                                       self._dotvec(H[:, m + 1 + nz], u[nz]))
        # recurrence on the Hessenberg form
        polys = [self.array([1])]
        for m in range(1, n + 1):
            # p_m = (x - H[m-1,m-1]) p_{m-1} - sum_i H[i-1,m-1] (prod subdiag) p_{i-1}
            prev = polys[m - 1]
            cur = self.zeros(m + 1)
            cur[1:] = prev
            cur[:-1] = self.sub(cur[:-1], self.mul(H[m - 1, m - 1], prev))
            t = 1
            for i in range(m - 1, 0, -1):
                t = self.mul(t, H[i, i - 1])
                coef = self.mul(t, H[i - 1, m - 1])
                if coef:
                    cur[:i] = self.sub(cur[:i], self.mul(coef, polys[i - 1]))
            polys.append(cur)
        return polys[n]

    def _dotvec(self, M, v):
        """M @ v over the field, M shape (m, r), v shape (r,)."""
        if self.k == 1:
            return (M @ v) % self.p
        acc = self.zeros(M.shape[0])
        for j in range(M.shape[1]):
            acc = self.add(acc, self.mul(M[:, j], v[j]))
        return acc

    def minpoly_matrix(self, A):
        """Minimal polynomial of a square matrix, low-to-high coefficients."""
        n = A.shape[0]
        rows = [self.eye(n).reshape(-1)]
        X = A
        basis = np.array(rows)
        while True:
            v = X.reshape(-1)
            R = np.vstack([basis, v])
            if self.rank(R) < R.shape[0]:
                sol = self.solve(basis.T, v)
                assert sol is not None
                d = basis.shape[0]
                coeffs = self.zeros(d + 1)
                coeffs[:d] = self.neg(sol[:, 0])
                coeffs[d] = 1
                return coeffs
            basis = R
            X = self.matmul(X, A)

    def eval_poly_matrix(self, coeffs, A):
        n = A.shape[0]
        out = self.zeros((n, n))
        for c in reversed(list(coeffs)):
            out = self.matmul(out, A)
            out[np.diag_indices(n)] = self.add(out[np.diag_indices(n)], int(c))
        return out


@lru_cache(maxsize=None)
def gf(p, k=1):
    return GF(p, k)


def minpoly_element(F, code):
    """Minimal polynomial of a field element over F_p, low-to-high codes."""
    code = int(code)
    conj = []
    x = np.int64(code)
    while True:
        conj.append(x)
        x = F.frobenius(x)
        if int(x) == code:
            break
    poly = [np.int64(1)]
    for c in conj:
        nxt = [np.int64(0)] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i + 1] = F.add(nxt[i + 1], a)
            nxt[i] = F.sub(nxt[i], F.mul(a, c))
        poly = nxt
    assert all(int(a) < F.p for a in poly), 'coefficients escaped the prime field'
    return [int(a) for a in poly]


@lru_cache(maxsize=None)
def _embedding_table(ps, ks, pb, kb):
    Fs = gf(ps, ks)
    Fb = gf(pb, kb)
    assert ps == pb and kb % ks == 0, 'no embedding between these fields'
    tab = np.zeros(Fs.q, dtype=np.int64)
    if Fs.q == 2:
        tab[1] = 1
        return tab
    mp = minpoly_element(Fs, Fs.generator)
    step = (Fb.q - 1) // (Fs.q - 1)
    # prefer the root that matches the chart generators, so root-of-unity
    # lifts through either field agree; any root gives a field embedding
    candidates = [Fb._exp[(step * pb ** i) % (Fb.q - 1)] for i in range(kb)]
    candidates += [c for c in range(1, Fb.q)]
    root = None
    for c in candidates:
        acc = np.int64(0)
        for a in reversed(mp):
            acc = Fb.add(Fb.mul(acc, np.int64(c)), np.int64(a))
        if int(acc) == 0:
            root = np.int64(c)
            break
    assert root is not None
    x = np.int64(1)
    for j in range(Fs.q - 1):
        tab[Fs._exp[j]] = x
        x = Fb.mul(x, root)
    for a in range(Fs.q):
        for b in range(Fs.q):
            assert tab[Fs.add(np.int64(a), np.int64(b))] == \
                Fb.add(tab[a], tab[b])
    return tab


def embed_codes(F_small, F_big, a):
    """Apply a fixed subfield embedding F_{p^k} -> F_{p^l}, k | l, to codes."""
    if F_small == F_big:
        return np.asarray(a, dtype=np.int64)
    tab = _embedding_table(F_small.p, F_small.k, F_big.p, F_big.k)
    return tab[np.asarray(a, dtype=np.int64)]


def splitting_field_degree(p, exponent):
    """Least k with (p'-part of the exponent) dividing p^k - 1."""
    m = exponent
    while m % p == 0:
        m //= p
    if m == 1:
        return 1
    k = 1
    while (p ** k - 1) % m != 0:
        k += 1
    return k
