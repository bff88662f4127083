"""Krull-Schmidt decomposition of modules over modular group algebras.

Splitting works through idempotents of the endomorphism algebra.  The quick
phase factors minimal polynomials of endomorphisms and uses a CRT idempotent
whenever a minimal polynomial has two coprime parts.  When no split shows up
that way, the radical of the endomorphism algebra is computed by the
Cohen-Ivanyos-Wales chain of semilinear trace forms; verdicts never rest on
that computation alone, though.  A "decomposable" answer always carries an
explicit idempotent (checked by squaring), and an "indecomposable" answer is
certified by exhibiting the computed radical as a nilpotent ideal whose
quotient is a field, which is impossible unless the quotient really is the
semisimple quotient and the endomorphism ring is local.
"""

import random

import numpy as np

from .groups import PermGroup, p_subgroups_up_to_conjugacy, sylow, all_subgroups
from .modules import (MatModule, endomorphism_algebra, hom_space, submodule,
                      quotient_module, restrict, brauer_construction,
                      permutation_module, regular_module, _attach_cut_data)
from . import polys

__all__ = ['decompose', 'decompose_with_multiplicity', 'is_isomorphic',
           'find_isomorphism', 'vertex', 'is_p_permutation',
           'radical_of_group_algebra', 'simple_modules', 'ciw_radical']


# ---------------------------------------------------------------------------
# radical of a matrix algebra


def ciw_radical(F, mats, coords=None):
    """Radical of the span of `mats` (a subalgebra of M_n(F)).

    Returns (rad_mats, rad_coords) with coordinates over the input basis.
    The chain of p-power trace forms is computed as in Cohen-Ivanyos-Wales;
    the caller should treat the output as a candidate and keep the
    certificates in radical_certificate().
    """
    n = mats[0].shape[0]
    p, k = F.p, F.k
    basis = list(mats)
    if coords is None:
        coords = F.eye(len(mats))
    j = 0
    while p ** j <= n and basis:
        lam = F.zeros((len(basis), len(basis)))
        for b in range(len(basis)):
            for i in range(len(basis)):
                cp = F.charpoly(F.matmul(basis[i], basis[b]))
                lam[b, i] = cp[n - p ** j]
        eta = F.kernel(lam)
        if eta.shape[0] == 0:
            return [], F.zeros((0, coords.shape[1]))
        inv_frob = (k - (j % k)) % k
        xi = F.frobenius(eta, inv_frob) if inv_frob else eta
        new_basis = []
        for row in xi:
            acc = F.zeros((n, n))
            for i, c in enumerate(row):
                if c:
                    acc = F.add(acc, F.mul(int(c), basis[i]))
            new_basis.append(acc)
        coords = F.matmul(xi, coords)
        basis = new_basis
        j += 1
    return basis, coords


def radical_certificate(F, alg_mats, rad_mats):
    """Assert that span(rad_mats) is a nilpotent two-sided ideal of
    span(alg_mats).  With a field quotient this pins the radical down."""
    if not rad_mats:
        return True
    n = rad_mats[0].shape[0]
    flat_rad = F.row_space(np.vstack([m.reshape(1, -1) for m in rad_mats]))

    def contained(mats_flat):
        for row in mats_flat:
            if not F.in_row_space(flat_rad, row):
                return False
        return True

    prods = []
    for a in rad_mats:
        for b in alg_mats:
            prods.append(F.matmul(a, b).reshape(-1))
            prods.append(F.matmul(b, a).reshape(-1))
    assert contained(prods), 'radical candidate is not an ideal'
    power = [m for m in rad_mats]
    for _ in range(len(rad_mats) + 1):
        if not power:
            return True
        nxt = []
        for a in power:
            for b in rad_mats:
                q = F.matmul(a, b)
                if np.any(q):
                    nxt.append(q.reshape(-1))
        if not nxt:
            return True
        space = F.row_space(np.vstack(nxt))
        power = [r.reshape(n, n) for r in space]
    raise AssertionError('radical candidate is not nilpotent')


# ---------------------------------------------------------------------------
# quotient-algebra arithmetic (endomorphism algebra modulo its radical)


class _QuotientAlgebra:
    """E/J with elements as coordinate rows over a complement basis."""

    def __init__(self, F, e_mats, rad_coords):
        self.F = F
        self.e_mats = e_mats
        self.n = e_mats[0].shape[0]
        self.flat = np.vstack([m.reshape(1, -1) for m in e_mats])
        R, piv = F.rref(rad_coords) if rad_coords.shape[0] else (rad_coords, [])
        self.jrows = R[:len(piv)]
        self.jpiv = list(piv)
        self.free = [c for c in range(len(e_mats)) if c not in self.jpiv]
        self.dim = len(self.free)
        self._mul_table = {}

    def reduce(self, ecoords):
        v = np.array(ecoords, dtype=np.int64)
        F = self.F
        for j, c in enumerate(self.jpiv):
            if v[c]:
                v = F.sub(v, F.mul(int(v[c]), self.jrows[j]))
        return v[self.free]

    def lift(self, bar):
        v = self.F.zeros(len(self.e_mats))
        for idx, c in enumerate(self.free):
            v[c] = bar[idx]
        return v

    def matrix_of(self, ecoords):
        F = self.F
        acc = F.zeros((self.n, self.n))
        for i, c in enumerate(ecoords):
            if c:
                acc = F.add(acc, F.mul(int(c), self.e_mats[i]))
        return acc

    def coords_of_matrix(self, m):
        c = self.F.solve(self.flat.T, m.reshape(-1))
        assert c is not None, 'product left the algebra span'
        return c[:, 0]

    def one(self):
        eye = self.F.eye(self.n)
        return self.reduce(self.coords_of_matrix(eye))

    def mul(self, a_bar, b_bar):
        key = (a_bar.tobytes(), b_bar.tobytes())
        hit = self._mul_table.get(key)
        if hit is not None:
            return hit
        m = self.F.matmul(self.matrix_of(self.lift(a_bar)),
                          self.matrix_of(self.lift(b_bar)))
        out = self.reduce(self.coords_of_matrix(m))
        self._mul_table[key] = out
        return out

    def basis(self):
        out = []
        for i in range(self.dim):
            v = self.F.zeros(self.dim)
            v[i] = 1
            out.append(v)
        return out

    def is_commutative(self):
        b = self.basis()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if not np.array_equal(self.mul(b[i], b[j]), self.mul(b[j], b[i])):
                    return False
        return True

    def power(self, a_bar, e):
        out = self.one()
        b = a_bar
        while e:
            if e & 1:
                out = self.mul(out, b)
            b = self.mul(b, b)
            e >>= 1
        return out

    def minpoly(self, a_bar):
        F = self.F
        rows = [self.one()]
        cur = self.one()
        while True:
            cur = self.mul(cur, a_bar)
            stack = np.vstack(rows)
            sol = F.solve(stack.T, cur)
            if sol is not None:
                coeffs = F.zeros(len(rows) + 1)
                coeffs[:len(rows)] = F.neg(sol[:, 0])
                coeffs[len(rows)] = 1
                return polys.ptrim(coeffs)
            rows.append(cur)

    def eval_poly(self, coeffs, a_bar):
        acc = self.F.zeros(self.dim)
        for c in reversed(polys.ptrim(coeffs)):
            acc = self.mul(acc, a_bar)
            if c:
                one = self.one()
                acc = self.F.add(acc, self.F.mul(int(c), one))
        return acc

    def center(self):
        F = self.F
        b = self.basis()
        left = []
        right = []
        for x in b:
            lcols = np.vstack([self.mul(x, y) for y in b]).T
            rcols = np.vstack([self.mul(y, x) for y in b]).T
            left.append(lcols)
            right.append(rcols)
        stacked = np.vstack([F.sub(left[i], right[i]) for i in range(len(b))])
        return F.kernel(stacked)

    def frobenius_fixed(self, inside_rows=None):
        """Basis of {x : x^q = x} within the span of inside_rows (or all).
        On a commutative span the q-power map is F_q-linear."""
        F = self.F
        rows = inside_rows if inside_rows is not None else np.vstack(self.basis())
        if rows.shape[0] == 0:
            return rows
        imgs = np.vstack([F.sub(self.power(r, F.q), r) for r in rows])
        coef = F.kernel(np.ascontiguousarray(imgs.T))
        return F.matmul(coef, rows) if coef.shape[0] else coef


# ---------------------------------------------------------------------------
# idempotent hunting


def _crt_idempotent_matrix(F, X, mp):
    """Exact idempotent from a minimal polynomial with >= 2 distinct
    irreducible factors, or None."""
    fac = polys.factor(F, mp)
    if len({tuple(f) for f, _ in fac}) < 2:
        return None
    f0, e0 = fac[0]
    f = f0
    for _ in range(e0 - 1):
        f = polys.pmul(F, f, f0)
    g = mp
    for _ in range(e0):
        g = polys.pdivmod(F, g, f0)[0]
    gg, u, v = polys.pxgcd(F, f, g)
    assert polys.pdeg(gg) == 0
    e = F.eval_poly_matrix(polys.pmul(F, v, g), X)
    assert np.array_equal(F.matmul(e, e), e)
    assert np.any(e) and np.any(F.sub(e, F.eye(X.shape[0])))
    return e


def _newton_idempotent(F, e):
    """Lift e with e^2 = e mod nilpotents to an exact idempotent."""
    c3 = 3 % F.p
    cm2 = (-2) % F.p
    for _ in range(64):
        e2 = F.matmul(e, e)
        if np.array_equal(e2, e):
            return e
        e3 = F.matmul(e2, e)
        e = F.add(F.mul(c3, e2), F.mul(cm2, e3))
    raise AssertionError('idempotent refinement did not converge')


def find_splitting_idempotent(M, endos=None):
    """A nontrivial idempotent endomorphism of M, or None with a proof of
    indecomposability (local endomorphism ring)."""
    F = M.field
    if M.dim == 0:
        return None
    E = endos if endos is not None else endomorphism_algebra(M)
    if len(E) == 1:
        return None

    # quick phase: minimal polynomials of a few explicit endomorphisms
    def quick_candidates():
        for X in E:
            yield X
        for i in range(len(E)):
            for j in range(len(E)):
                if i != j:
                    yield F.matmul(E[i], E[j])
        rng = random.Random(0xE11D ^ (M.dim * 1009 + len(E)))
        for _ in range(24):
            acc = F.zeros((M.dim, M.dim))
            for X in E:
                c = rng.randrange(F.q)
                if c:
                    acc = F.add(acc, F.mul(c, X))
            yield acc

    seen = set()
    budget = 0
    for X in quick_candidates():
        key = X.tobytes()
        if key in seen or not np.any(X):
            continue
        seen.add(key)
        budget += 1
        e = _crt_idempotent_matrix(F, X, F.minpoly_matrix(X))
        if e is not None:
            return e
        if budget > 40 + 3 * len(E):
            break

    # certified phase
    rad_mats, rad_coords = ciw_radical(F, E)
    radical_certificate(F, E, rad_mats)
    bar = _QuotientAlgebra(F, E, rad_coords)
    if bar.dim == 1:
        return None

    def idempotent_from(y):
        mp = bar.minpoly(y)
        fac = polys.factor(F, mp)
        if len({tuple(f) for f, _ in fac}) < 2:
            return None
        f0, e0 = fac[0]
        f = f0
        for _ in range(e0 - 1):
            f = polys.pmul(F, f, f0)
        g = mp
        for _ in range(e0):
            g = polys.pdivmod(F, g, f0)[0]
        _, u, v = polys.pxgcd(F, f, g)
        ebar = bar.eval_poly(polys.pmul(F, v, g), y)
        if not np.any(ebar) or np.array_equal(ebar, bar.one()):
            return None
        e0m = bar.matrix_of(bar.lift(ebar))
        e = _newton_idempotent(F, e0m)
        if np.any(e) and np.any(F.sub(e, F.eye(M.dim))):
            return e
        return None

    if bar.is_commutative():
        fixed = bar.frobenius_fixed()
        if fixed.shape[0] == 1:
            # quotient is a field: certify by finding a primitive element
            assert _field_certificate(bar), 'could not certify local ring'
            return None
        for y in fixed:
            e = idempotent_from(y)
            if e is not None:
                return e
        raise AssertionError('split of a non-field commutative quotient failed')

    zrows = bar.center()
    fixed = bar.frobenius_fixed(inside_rows=zrows)
    if fixed.shape[0] >= 2:
        for y in fixed:
            e = idempotent_from(y)
            if e is not None:
                return e
        raise AssertionError('central split failed')
    # single simple factor, full matrix algebra over its center field
    rng = random.Random(0xACE5 ^ (M.dim * 911 + bar.dim))
    b = bar.basis()
    for i in range(len(b)):
        for j in range(len(b)):
            e = idempotent_from(bar.mul(b[i], b[j]))
            if e is not None:
                return e
    for _ in range(400):
        y = F.zeros(bar.dim)
        for v in b:
            c = rng.randrange(F.q)
            if c:
                y = F.add(y, F.mul(c, v))
        e = idempotent_from(y)
        if e is not None:
            return e
    raise AssertionError('matrix-algebra quotient split exhausted its budget')


def _field_certificate(bar):
    """Find y generating E/J with irreducible minimal polynomial of full
    degree; that makes the quotient a field and the ring local."""
    F = bar.F
    cands = list(bar.basis())
    rng = random.Random(0xF1E1D ^ bar.dim)
    for _ in range(200):
        for y in cands:
            mp = bar.minpoly(y)
            if polys.pdeg(mp) == bar.dim:
                fac = polys.factor(F, mp)
                if len(fac) == 1 and fac[0][1] == 1:
                    return True
        y = F.zeros(bar.dim)
        for v in bar.basis():
            c = rng.randrange(F.q)
            if c:
                y = F.add(y, F.mul(c, v))
        cands = [y]
    return False


def split_by_idempotent(M, e):
    F = M.field
    ec = F.sub(F.eye(M.dim), e)
    B1 = F.row_space(e.T.copy())
    B2 = F.row_space(ec.T.copy())
    m1 = submodule(M, B1)
    m2 = submodule(M, B2)
    _attach_cut_data(m1, M, B1, e)
    _attach_cut_data(m2, M, B2, ec)
    assert m1.dim + m2.dim == M.dim
    assert m1.dim and m2.dim
    return m1, m2


def decompose(M):
    """Indecomposable summands of M (repetition = multiplicity)."""
    if M.dim == 0:
        return []
    e = find_splitting_idempotent(M)
    if e is None:
        return [M]
    m1, m2 = split_by_idempotent(M, e)
    return sorted(decompose(m1) + decompose(m2), key=lambda x: x.dim)


def decompose_with_multiplicity(M):
    parts = decompose(M)
    groups = []
    for piece in parts:
        for g in groups:
            if g[0].dim == piece.dim and is_isomorphic(g[0], piece):
                g[1] += 1
                break
        else:
            groups.append([piece, 1])
    return [(m, c) for m, c in groups]


# ---------------------------------------------------------------------------
# isomorphism testing


def find_isomorphism(M, N):
    """An invertible intertwiner M -> N, or None."""
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return M.field.zeros((0, 0))
    F = M.field
    hs = hom_space(M, N)
    if not hs:
        return None
    for X in hs:
        if F.rank(X) == M.dim:
            return X
    d = len(hs)
    # necessary condition when an isomorphism exists
    if not (d == len(endomorphism_algebra(M)) == len(endomorphism_algebra(N))):
        return None
    rng = random.Random(0x150 ^ (M.dim * 31 + d))
    for _ in range(128):
        X = F.zeros((M.dim, M.dim))
        for h in hs:
            c = rng.randrange(F.q)
            if c:
                X = F.add(X, F.mul(c, h))
        if F.rank(X) == M.dim:
            return X
    if F.q ** d <= 4096:
        for code in range(1, F.q ** d):
            X = F.zeros((M.dim, M.dim))
            cc = code
            for h in hs:
                c = cc % F.q
                cc //= F.q
                if c:
                    X = F.add(X, F.mul(c, h))
            if F.rank(X) == M.dim:
                return X
        return None
    raise AssertionError('isomorphism test inconclusive at this size')


def is_isomorphic(M, N):
    """Whether M and N are isomorphic modules.

    A uniformly random homomorphism between isomorphic modules is
    invertible with probability equal to the unit density of the
    endomorphism algebra, which decays exponentially in the number of
    distinct summands.  So the random search in find_isomorphism is only
    trusted directly for a limited hom-space dimension; past that we
    decompose both sides and match indecomposables, where a local
    endomorphism algebra makes the unit density at least 1 - 1/q.
    """
    if M.dim != N.dim:
        return False
    if M.dim == 0:
        return True
    try:
        return find_isomorphism(M, N) is not None
    except AssertionError:
        pass
    parts_m = decompose(M)
    parts_n = decompose(N)
    if [p.dim for p in parts_m] != [p.dim for p in parts_n]:
        return False
    unused = list(parts_n)
    for a in parts_m:
        for i, b in enumerate(unused):
            if a.dim == b.dim and find_isomorphism(a, b) is not None:
                del unused[i]
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# vertices and trivial-source recognition


def vertex(M):
    """Vertex of an indecomposable p-permutation module: the largest
    p-subgroup (up to conjugacy) with nonvanishing Brauer construction."""
    assert M.dim > 0
    F = M.field
    G = M.group
    classes = p_subgroups_up_to_conjugacy(G, F.p)
    alive = [P for P in classes if brauer_construction(M, P).dim > 0]
    assert alive, 'even the trivial subgroup vanished'
    top = max(P.order for P in alive)
    tops = [P for P in alive if P.order == top]
    assert len(tops) == 1, 'vertex is not unique up to conjugacy'
    return tops[0]


def is_p_permutation(M):
    """Does M restrict to a Sylow p-subgroup as a direct sum of transitive
    permutation modules?"""
    if M.dim == 0:
        return True
    F = M.field
    P = sylow(M.group, F.p)
    pieces = decompose(restrict(M, P))
    for N in pieces:
        ok = False
        for Q in all_subgroups(P):
            if Q.order * N.dim == P.order:
                if is_isomorphic(N, permutation_module(P, F, Q)):
                    ok = True
                    break
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# group algebra radical and simple modules


def radical_of_group_algebra(G, F):
    """Coordinate rows (over the element basis of FG) of a basis of J(FG)."""
    R = regular_module(G, F)
    mats = [R.matrix(g) for g in G.elements]
    rad_mats, rad_coords = ciw_radical(F, mats)
    radical_certificate(F, mats, rad_mats)
    return rad_coords


def simple_modules(G, F):
    """The distinct simple FG-modules, smallest dimension first."""
    from .modules import trivial_module
    if G.is_p_group(F.p):
        return [trivial_module(G, F)]
    R = regular_module(G, F)
    # the regular module's basis is G.elements in order, so radical
    # coordinate rows are directly a basis of the radical submodule
    rad = radical_of_group_algebra(G, F)
    head = quotient_module(R, rad) if rad.shape[0] else R
    pieces = decompose(head)
    out = []
    for piece in pieces:
        if not any(is_isomorphic(piece, s) for s in out):
            out.append(piece)
    return sorted(out, key=lambda s: s.dim)