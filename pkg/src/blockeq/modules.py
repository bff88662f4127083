"""Modules over group algebras of small permutation groups.

A MatModule stores the acting group, the coefficient field and matrices for
the group generators; matrices of other elements are built on demand along
a factorization tree.  Permutation modules additionally remember their
point set and generator permutations, and every construction that stays
within permutation modules (induction, restriction, duals, fixed points,
Brauer constructions, tensor products of point sets) keeps that backing,
which is what makes the bigger verification runs cheap.

Vectors are column vectors; rho(gh) = rho(g) rho(h).
"""

import json

import numpy as np

from .groups import (PermGroup, Perm, coset_space, coset_reps, normalizer,
                     p_subgroups_up_to_conjugacy, QuotientGroup)
from .fields import embed_codes
from . import polys

__all__ = [
    'MatModule', 'permutation_module', 'trivial_module', 'regular_module',
    'module_from_matrices', 'direct_sum', 'fixed_points', 'relative_trace',
    'brauer_construction', 'restrict', 'extend_scalars', 'induce',
    'conjugate_module', 'dual', 'inflate', 'deflate', 'tensor_over_field',
    'hom_space',
    'endomorphism_algebra', 'cut_by_idempotent', 'submodule', 'quotient_module',
]


def _bfs_tree(G):
    """Factorization tree: elt -> (parent, generator) with parent*gen = elt."""
    if 'bfstree' in G._cache:
        return G._cache['bfstree']
    tree = {G.identity: None}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in G.gens:
                b = a * g
                if b not in tree:
                    tree[b] = (a, g)
                    nxt.append(b)
        frontier = nxt
    G._cache['bfstree'] = tree
    return tree


class MatModule:

    def __init__(self, group, field, dim, gen_mats, points=None, gen_perms=None):
        self.group = group
        self.field = field
        self.dim = dim
        self._gen_mats = dict(gen_mats)
        self._mats = {group.identity: field.eye(dim)}
        self._mats.update(gen_mats)
        self.points = tuple(points) if points is not None else None
        self._gen_perms = dict(gen_perms) if gen_perms is not None else None
        self._perms = None
        if self._gen_perms is not None:
            self._perms = {group.identity: tuple(range(dim))}
            self._perms.update(self._gen_perms)

    # --- construction helpers

    @classmethod
    def from_perm_action(cls, group, field, points, gen_perms):
        """gen_perms: dict generator -> index tuple sending point i to
        position gen_perms[g][i] (so point j moves to index, see matrix)."""
        dim = len(points)
        mats = {}
        for g, pi in gen_perms.items():
            m = field.zeros((dim, dim))
            for j in range(dim):
                m[pi[j], j] = 1
            mats[g] = m
        return cls(group, field, dim, mats, points=points, gen_perms=gen_perms)

    @property
    def is_permutation_backed(self):
        return self._gen_perms is not None

    def to_json(self):
        sub = getattr(self, '_coset_subgroup', None)
        if sub is not None:
            return {'type': 'induced_trivial',
                    'subgroup': [[int(i) for i in g.img] for g in sub.gens]}
        return {'type': 'matrix', 'dim': int(self.dim),
                'action': {json.dumps([int(i) for i in g.img]):
                           [[int(x) for x in row] for row in self.matrix(g)]
                           for g in self.group.gens}}

    def matrix(self, g):
        m = self._mats.get(g)
        if m is not None:
            return m
        if self._perms is not None:
            pi = self.perm(g)
            m = self.field.zeros((self.dim, self.dim))
            for j in range(self.dim):
                m[pi[j], j] = 1
        else:
            parent, gen = _bfs_tree(self.group)[g]
            m = self.field.matmul(self.matrix(parent), self._gen_mats[gen])
        m.setflags(write=False)
        self._mats[g] = m
        return m

    def perm(self, g):
        """The point permutation of g (permutation-backed modules only)."""
        pi = self._perms.get(g)
        if pi is not None:
            return pi
        parent, gen = _bfs_tree(self.group)[g]
        pp = self.perm(parent)
        pg = self._gen_perms[gen]
        pi = tuple(pp[pg[j]] for j in range(self.dim))
        self._perms[g] = pi
        return pi

    def verify_action(self):
        """Check rho(a*g) = rho(a) rho(g) across the whole group."""
        F = self.field
        for a in self.group.elements:
            ma = self.matrix(a)
            for g in self.group.gens:
                lhs = self.matrix(a * g)
                rhs = F.matmul(ma, self.matrix(g))
                assert np.array_equal(lhs, rhs), 'action is not a homomorphism'
        return True

    def apply(self, g, vecs):
        """rho(g) @ vecs."""
        return self.field.matmul(self.matrix(g), vecs)

    def spanned_by(self, rows):
        return self.field.row_space(np.asarray(rows))

    def __repr__(self):
        tag = 'perm' if self.is_permutation_backed else 'mat'
        return 'MatModule(dim=%d over %r, %s, %s)' % (
            self.dim, self.group, self.field, tag)


def permutation_module(G, field, H):
    """F[G/H] with the left multiplication action."""
    labels, act = coset_space(G, H)
    gen_perms = {g: act(g) for g in G.gens}
    M = MatModule.from_perm_action(G, field, tuple(labels), gen_perms)
    M._coset_subgroup = H
    return M


def trivial_module(G, field):
    return permutation_module(G, field, G)


def regular_module(G, field):
    return permutation_module(G, field, G.trivial_subgroup())


def module_from_matrices(G, field, gen_mats, check=True):
    dims = {m.shape for m in gen_mats.values()}
    assert len(dims) == 1
    dim = dims.pop()[0]
    M = MatModule(G, field, dim, {g: field.array(m) for g, m in gen_mats.items()})
    if check:
        M.verify_action()
    return M


def direct_sum(mods):
    mods = list(mods)
    assert mods, 'empty direct sum needs an explicit group'
    G, F = mods[0].group, mods[0].field
    assert all(m.group == G and m.field == F for m in mods)
    dim = sum(m.dim for m in mods)
    if all(m.is_permutation_backed for m in mods):
        points = []
        for i, m in enumerate(mods):
            points.extend((i, pt) for pt in m.points)
        gen_perms = {}
        for g in G.gens:
            off = 0
            pi = []
            for m in mods:
                pi.extend(off + j for j in m.perm(g))
                off += m.dim
            gen_perms[g] = tuple(pi)
        return MatModule.from_perm_action(G, F, tuple(points), gen_perms)
    mats = {}
    for g in G.gens:
        m = F.zeros((dim, dim))
        off = 0
        for piece in mods:
            m[off:off + piece.dim, off:off + piece.dim] = piece.matrix(g)
            off += piece.dim
        mats[g] = m
    return MatModule(G, F, dim, mats)


# ---------------------------------------------------------------------------
# submodules, quotients, cuts


def submodule(M, rows, group=None):
    """The module on a basis of span(rows), over `group` (default M.group).

    The span must be invariant under that group.
    """
    F = M.field
    G = group if group is not None else M.group
    B = F.row_space(np.asarray(rows))
    if B.shape[0] == 0:
        return MatModule(G, F, 0, {g: F.zeros((0, 0)) for g in G.gens})
    mats = {}
    for g in G.gens:
        img = F.matmul(M.matrix(g), B.T)
        A = F.solve(B.T, img)
        assert A is not None, 'span is not invariant'
        mats[g] = A
    return MatModule(G, F, B.shape[0], mats)


def quotient_module(M, rows, group=None):
    """M modulo the invariant span of `rows`, with canonical free coordinates."""
    F = M.field
    G = group if group is not None else M.group
    U, piv = F.rref(np.asarray(rows)) if np.asarray(rows).size else (F.zeros((0, M.dim)), [])
    U = U[:len(piv)]
    free = [c for c in range(M.dim) if c not in piv]

    def reduce_vec(cols):
        # canonical representative: subtract pivot rows, keep free coords
        v = cols.copy()
        for j, c in enumerate(piv):
            coef = v[c].copy()
            nz = np.nonzero(coef)[0]
            if len(nz):
                v = F.sub(v, F.mul(U[j][:, None], coef[None, :]))
        return v[free]

    mats = {}
    for g in G.gens:
        if len(piv):
            kill = reduce_vec(F.matmul(M.matrix(g), U.T))
            assert not np.any(kill), 'quotient by a non-invariant subspace'
        lifted = F.zeros((M.dim, len(free)))
        for idx, c in enumerate(free):
            lifted[c, idx] = 1
        img = F.matmul(M.matrix(g), lifted)
        mats[g] = reduce_vec(img)
    Q = MatModule(G, F, len(free), mats)
    Q._reduce_from_ambient = reduce_vec
    return Q


def algebra_element_operator(M, coeffs):
    """The matrix of sum_g coeffs[g] * rho(g) on M."""
    F = M.field
    out = F.zeros((M.dim, M.dim))
    for g, c in coeffs.items():
        if c:
            out = F.add(out, F.mul(int(c), M.matrix(g)))
    return out


def cut_by_idempotent(M, coeffs, group=None, check=True):
    """The image of an idempotent algebra element, as a module over `group`.

    coeffs maps group elements to field codes; the operator must commute
    with the action of `group` (checked).
    """
    F = M.field
    G = group if group is not None else M.group
    E = algebra_element_operator(M, coeffs)
    if check:
        assert np.array_equal(F.matmul(E, E), E), 'cut by a non-idempotent'
    B = F.row_space(E.T)
    if check:
        for g in G.gens:
            assert np.array_equal(F.matmul(M.matrix(g), E),
                                  F.matmul(E, M.matrix(g))), \
                'idempotent does not commute with the action'
    piece = submodule(M, B, group=G)
    if piece.dim and G == M.group:
        _attach_cut_data(piece, M, B, E)
    return piece


# ---------------------------------------------------------------------------
# fixed points, traces, Brauer construction


def fixed_points(M, P):
    """Basis (rows) of the P-fixed subspace of M."""
    F = M.field
    if M.is_permutation_backed:
        # fixed vectors are spanned by P-orbit sums of points
        idx_orbits = _point_orbits(M, P)
        B = F.zeros((len(idx_orbits), M.dim))
        for i, orb in enumerate(idx_orbits):
            B[i, list(orb)] = 1
        return B
    gens = P.gens if isinstance(P, PermGroup) else tuple(P)
    stack = []
    for x in gens:
        stack.append(F.sub(M.matrix(x), F.eye(M.dim)))
    if not stack:
        return F.eye(M.dim)
    return F.kernel(np.vstack(stack))


def _point_orbits(M, P):
    gens = [M.perm(x) for x in (P.gens if isinstance(P, PermGroup) else P)]
    seen = [False] * M.dim
    orbits = []
    for i in range(M.dim):
        if seen[i]:
            continue
        orb = {i}
        frontier = [i]
        seen[i] = True
        while frontier:
            nxt = []
            for j in frontier:
                for pi in gens:
                    t = pi[j]
                    if not seen[t]:
                        seen[t] = True
                        orb.add(t)
                        nxt.append(t)
            frontier = nxt
        orbits.append(tuple(sorted(orb)))
    return orbits


def relative_trace(M, Q, P):
    """Images in M^P of a basis of M^Q under tr_Q^P, as rows."""
    F = M.field
    BQ = fixed_points(M, Q)
    if BQ.shape[0] == 0:
        return F.zeros((0, M.dim))
    reps = coset_reps(P, Q)
    acc = F.zeros((M.dim, BQ.shape[0]))
    for r in reps:
        acc = F.add(acc, F.matmul(M.matrix(r), BQ.T))
    return acc.T


def _maximal_subgroups_of_p_group(P):
    """Index-p subgroups of a p-group (kernels of maps to C_p work, but
    enumeration over the subgroup lattice is simplest at this scale)."""
    from .groups import all_subgroups
    p = _group_p(P)
    return [s for s in all_subgroups(P) if s.order * p == P.order]


def _group_p(P):
    n = P.order
    assert n > 1
    d = 2
    while n % d:
        d += 1
    return d


def brauer_construction(M, P, ambient=None):
    """M(P) = M^P / sum of proper relative traces, over `ambient` (default
    the full normalizer of P in M.group).  P acts trivially on the result."""
    F = M.field
    G = M.group
    if ambient is None:
        ambient = normalizer(G, P)
    if P.order == 1:
        return restrict(M, ambient) if ambient != G else M
    if M.is_permutation_backed:
        fixed_idx = [i for i in range(M.dim)
                     if all(M.perm(x)[i] == i for x in P.gens)]
        pos = {i: t for t, i in enumerate(fixed_idx)}
        gen_perms = {}
        for g in ambient.gens:
            pi = M.perm(g)
            gen_perms[g] = tuple(pos[pi[i]] for i in fixed_idx)
        pts = tuple(M.points[i] for i in fixed_idx)
        return MatModule.from_perm_action(ambient, F, pts, gen_perms)
    # use the rref basis throughout so trace coordinates match the basis
    # that submodule() fixes internally
    BP = F.row_space(fixed_points(M, P))
    traces = [relative_trace(M, Q, P) for Q in _maximal_subgroups_of_p_group(P)]
    traces = [t for t in traces if t.shape[0]]
    if not traces:
        U = F.zeros((0, BP.shape[0]))
    else:
        T = np.vstack(traces)
        C = F.solve(BP.T, T.T)
        assert C is not None, 'trace image escaped the fixed space'
        U = C.T
    fixed_mod = submodule(M, BP, group=ambient)
    return quotient_module(fixed_mod, U, group=ambient)


# ---------------------------------------------------------------------------
# the standard functors


def restrict(M, H):
    """Restriction along a subgroup H of M.group."""
    if M.is_permutation_backed:
        return MatModule.from_perm_action(
            H, M.field, M.points, {g: M.perm(g) for g in H.gens})
    return MatModule(H, M.field, M.dim, {g: M.matrix(g) for g in H.gens})


def extend_scalars(M, field):
    """The representation read over an extension field of M.field."""
    F = M.field
    if field == F:
        return M
    if M.is_permutation_backed:
        return MatModule.from_perm_action(
            M.group, field, M.points, {g: M.perm(g) for g in M.group.gens})
    mats = {g: embed_codes(F, field, M.matrix(g)) for g in M.group.gens}
    return MatModule(M.group, field, M.dim, mats)


def induce(M, G):
    """Ind_H^G M for H = M.group <= G."""
    H = M.group
    F = M.field
    reps = coset_reps(G, H)
    rep_of = {}
    hpart = {}
    hset = H.element_set()
    for r in reps:
        for h in H.elements:
            rep_of[r * h] = r
    if M.is_permutation_backed:
        slot = {(r, j): i for i, (r, j) in
                enumerate((r, j) for r in reps for j in range(M.dim))}
        gen_perms = {}
        for g in G.gens:
            pi = []
            for r in reps:
                gr = g * r
                r2 = rep_of[gr]
                h = ~r2 * gr
                assert h in hset
                ph = M.perm(h)
                pi.extend(slot[(r2, ph[j])] for j in range(M.dim))
            gen_perms[g] = tuple(pi)
        points = tuple((r, M.points[j]) for r in reps for j in range(M.dim))
        return MatModule.from_perm_action(G, F, points, gen_perms)
    n = M.dim * len(reps)
    pos = {r: i for i, r in enumerate(reps)}
    mats = {}
    for g in G.gens:
        mat = F.zeros((n, n))
        for i, r in enumerate(reps):
            gr = g * r
            r2 = rep_of[gr]
            h = ~r2 * gr
            j = pos[r2]
            mat[j * M.dim:(j + 1) * M.dim, i * M.dim:(i + 1) * M.dim] = M.matrix(h)
        mats[g] = mat
    return MatModule(G, F, n, mats)


def conjugate_module(M, g, target_group=None):
    """The conjugate module over gHg^-1 acting by rho(g^-1 x g)."""
    H = M.group
    T = target_group if target_group is not None else H.conjugate_subgroup(g)
    gi = ~g
    if M.is_permutation_backed:
        return MatModule.from_perm_action(
            T, M.field, M.points, {x: M.perm(gi * x * g) for x in T.gens})
    return MatModule(T, M.field, M.dim, {x: M.matrix(gi * x * g) for x in T.gens})


def dual(M):
    """The contragredient module."""
    if M.is_permutation_backed:
        # permutation matrices are orthogonal, so the dual is the same action
        return MatModule.from_perm_action(
            M.group, M.field, M.points, dict(M._gen_perms))
    F = M.field
    return MatModule(M.group, F, M.dim,
                     {g: F.array(M.matrix(~g).T) for g in M.group.gens})


def inflate(M, G, proj):
    """Pull a module over a quotient back to G along proj : G -> M.group."""
    if M.is_permutation_backed:
        return MatModule.from_perm_action(
            G, M.field, M.points, {g: M.perm(proj(g)) for g in G.gens})
    return MatModule(G, M.field, M.dim, {g: M.matrix(proj(g)) for g in G.gens})


def deflate(M, N, quotient=None):
    """Coinvariants M_N as a module over M.group/N."""
    F = M.field
    G = M.group
    Q = quotient if quotient is not None else QuotientGroup(G, N)
    rows = []
    for x in N.gens:
        rows.append(F.sub(M.matrix(x), F.eye(M.dim)).T)
    U = np.vstack(rows) if rows else F.zeros((0, M.dim))
    coinv = quotient_module(M, U, group=G)
    mats = {}
    for g in G.gens:
        q = Q.proj(g)
        mg = coinv.matrix(g)
        if q in mats:
            assert np.array_equal(mats[q], mg), 'deflation is not well defined'
        else:
            mats[q] = mg
    return MatModule(Q, F, coinv.dim, mats)


def tensor_over_field(M, N):
    """M (x) N with the diagonal action (same acting group)."""
    assert M.group == N.group and M.field == N.field
    F = M.field
    G = M.group
    if M.is_permutation_backed and N.is_permutation_backed:
        points = tuple((a, b) for a in M.points for b in N.points)
        gen_perms = {}
        for g in G.gens:
            pm, pn = M.perm(g), N.perm(g)
            gen_perms[g] = tuple(pm[i] * N.dim + pn[j]
                                 for i in range(M.dim) for j in range(N.dim))
        return MatModule.from_perm_action(G, F, points, gen_perms)
    mats = {}
    for g in G.gens:
        mats[g] = _kron(F, M.matrix(g), N.matrix(g))
    return MatModule(G, F, M.dim * N.dim, mats)


def _kron(F, A, B):
    if F.k == 1:
        return np.kron(A, B) % F.p
    out = F.mul(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


# ---------------------------------------------------------------------------
# hom spaces


def hom_space(M, N):
    """Basis of Hom_{FG}(M, N) as matrices X with rho_N(g) X = X rho_M(g).

    Results are memoized on M (modules are immutable once built), so
    callers must treat the returned matrices as read only.
    """
    assert M.group == N.group and M.field == N.field
    cached = getattr(M, '_hom_cache', None)
    if cached is not None and id(N) in cached:
        return cached[id(N)][1]
    out = _hom_space_raw(M, N)
    if cached is None:
        cached = M._hom_cache = {}
    cached[id(N)] = (N, out)
    return out


def _hom_space_raw(M, N):
    F = M.field
    G = M.group
    if M.dim == 0 or N.dim == 0:
        return []
    if M.is_permutation_backed and N.is_permutation_backed:
        return _hom_space_perm(M, N)
    if _cut_chain_is_cheap(M) and _cut_chain_is_cheap(N):
        return _hom_space_via_parents(M, N)
    # B X = X A becomes (I (x) B - A^T (x) I) vec(X) = 0 with vec stacking
    # columns, so X[i, j] sits at position j * N.dim + i.
    basis = None  # rows are vec(X)
    for g in G.gens:
        A = M.matrix(g)
        B = N.matrix(g)
        op = F.sub(_kron(F, F.eye(M.dim), B),
                   _kron(F, F.array(A.T.copy()), F.eye(N.dim)))
        if basis is None:
            basis = F.kernel(op)
        else:
            prod = F.matmul(op, basis.T)
            coef = F.kernel(prod)
            basis = F.matmul(coef, basis) if coef.shape[0] else coef
        if basis.shape[0] == 0:
            return []
    return [_unvec(F, row, N.dim, M.dim) for row in basis]


def _unvec(F, row, nrows, ncols):
    # rows of the kernel are vec(X) with entry (i,j) at position j*nrows+i
    X = F.zeros((nrows, ncols))
    for j in range(ncols):
        X[:, j] = row[j * nrows:(j + 1) * nrows]
    return X


def _attach_cut_data(piece, parent, B, E):
    """Record that `piece` is the image of the idempotent operator E on
    `parent`, realized on the rref basis rows B.  hom_space uses this to
    sandwich the parent's hom space instead of solving a Kronecker system.
    """
    F = parent.field
    piv = [int(np.nonzero(row)[0][0]) for row in B]
    V = F.zeros((len(piv), parent.dim))
    for j, c in enumerate(piv):
        V[j, c] = 1
    piece._parent = parent
    piece._embed = F.array(B.T.copy())
    piece._proj = F.matmul(V, E)


def _cut_chain_is_cheap(M):
    # the sandwich is a win exactly when the chain of parents ends in a
    # permutation-backed module, where homs come from point orbits
    while getattr(M, '_parent', None) is not None:
        if M._parent.group != M.group:
            return False
        M = M._parent
    return M.is_permutation_backed


def _hom_space_via_parents(M, N):
    F = M.field
    pm = getattr(M, '_parent', None)
    pn = getattr(N, '_parent', None)
    big = hom_space(pm if pm is not None else M, pn if pn is not None else N)
    if not big:
        return []
    emb = M._embed if pm is not None else F.eye(M.dim)
    prj = N._proj if pn is not None else F.eye(N.dim)
    rows = [F.matmul(prj, F.matmul(X, emb)).T.reshape(-1) for X in big]
    R = F.row_space(np.stack(rows))
    return [_unvec(F, row, N.dim, M.dim) for row in R]


def _hom_space_perm(M, N):
    F = M.field
    G = M.group
    pairs = [(i, j) for i in range(N.dim) for j in range(M.dim)]
    pos = {pr: t for t, pr in enumerate(pairs)}
    seen = [False] * len(pairs)
    out = []
    gperms = [(N.perm(g), M.perm(g)) for g in G.gens]
    for t0 in range(len(pairs)):
        if seen[t0]:
            continue
        orbit = [t0]
        seen[t0] = True
        k = 0
        while k < len(orbit):
            i, j = pairs[orbit[k]]
            k += 1
            for pn, pm in gperms:
                t = pos[(pn[i], pm[j])]
                if not seen[t]:
                    seen[t] = True
                    orbit.append(t)
        X = F.zeros((N.dim, M.dim))
        for t in orbit:
            i, j = pairs[t]
            X[i, j] = 1
        out.append(X)
    return out


def endomorphism_algebra(M):
    return hom_space(M, M)
