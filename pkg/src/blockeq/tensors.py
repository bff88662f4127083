"""Tensor products over a shared middle group and their refinements.

A module over the direct product G x H is read as a (G,H)-bimodule through
(g,h)m = g m h^(-1).  The tensor product of such a module with an
(H,K)-bimodule over FH is realized as an explicit quotient of the tensor
product over the base field.  The same machinery handles the finer version
for modules over subgroups X <= G x H and Y <= H x K: the underlying space
is the quotient by the identification (1,l)m (x) n = m (x) (l,1)n for l in
k2(X) n k1(Y), and an element (g,k) of X*Y acts through a witness h with
(g,h) in X and (h,k) in Y.  Independence of the witness is asserted rather
than taken on faith.

Permutation-backed inputs stay permutation-backed, because the
identification above matches basis point pairs; the quotient is then the
module on the orbit set of those pairs.  Matrix inputs go through the
canonical free coordinates of the relation row space.

The last block of this file decomposes a block-cut Brauer construction of
a bimodule tensor product into extended tensor products of the factors'
cut constructions, indexed by orbits of middle-group triples.
"""

import numpy as np

from .groups import (GroupHom, direct_product, centralizer, sylow,
                     all_subgroups, isomorphisms, double_coset_reps)
from .products import (ProductSubgroup, twisted_diagonal, compose,
                       normalizer_of_twisted_diagonal)
from .modules import (MatModule, _kron, _point_orbits, direct_sum, induce,
                      conjugate_module, brauer_construction,
                      cut_by_idempotent)
from .decompose import decompose, vertex, is_p_permutation
from .blocks import (BrauerPair, pair_stabilizer, centralizer_blocks,
                     brauer_hom)

__all__ = [
    'tensor_over_group', 'extended_tensor', 'op_bimodule', 'mackey_rhs',
    'external_element', 'antipode', 'has_twisted_diagonal_vertices',
    'linking_triples', 'triple_orbit_reps', 'bp_decomposition', 'bp_direct',
]


def _product_of(group):
    prod = group._cache.get('product')
    assert prod is not None, 'group was not built as a direct product'
    return prod


def _zero_module(group, field):
    return MatModule(group, field, 0,
                     {g: field.zeros((0, 0)) for g in group.gens})


# ---------------------------------------------------------------------------
# quotient-of-tensor cores
#
# rel_pairs is a list of (u, v) with u in M.group and v in N.group; the
# quotient identifies (u.m) (x) n with m (x) (v^-1 . ... ) -- concretely it
# divides by the span of rho_M(u) (x) rho_N(v) - 1 applied to everything,
# which for permutation modules is the orbit identification
# (a, b) ~ (u.a, v.b).  action_pairs maps each generator z of the output
# group to a nonempty list of candidate pairs (x, y); all candidates must
# induce the same map downstairs, and the first is used.


def _perm_quotient_tensor(M, N, rel_pairs, out_group, action_pairs):
    F = M.field
    n = N.dim
    total = M.dim * n
    moves = [(M.perm(u), N.perm(v)) for u, v in rel_pairs]
    orbit_of = [-1] * total
    reps = []
    for start in range(total):
        if orbit_of[start] >= 0:
            continue
        label = len(reps)
        reps.append(start)
        orbit_of[start] = label
        frontier = [start]
        while frontier:
            idx = frontier.pop()
            i, j = divmod(idx, n)
            for pu, pv in moves:
                nxt = pu[i] * n + pv[j]
                if orbit_of[nxt] < 0:
                    orbit_of[nxt] = label
                    frontier.append(nxt)
    d = len(reps)
    points = tuple((M.points[idx // n], N.points[idx % n]) for idx in reps)
    gen_perms = {}
    for z, cands in action_pairs.items():
        pi = None
        for x, y in cands:
            px, py = M.perm(x), N.perm(y)
            cur = [-1] * d
            for idx in range(total):
                i, j = divmod(idx, n)
                src = orbit_of[idx]
                dst = orbit_of[px[i] * n + py[j]]
                if cur[src] < 0:
                    cur[src] = dst
                else:
                    assert cur[src] == dst, \
                        'action does not respect the identification'
            if pi is None:
                pi = cur
                assert sorted(cur) == list(range(d))
            else:
                assert cur == pi, 'action depends on the witness'
        gen_perms[z] = tuple(pi)
    return MatModule.from_perm_action(out_group, F, points, gen_perms)


def _matrix_quotient_tensor(M, N, rel_pairs, out_group, action_pairs):
    F = M.field
    total = M.dim * N.dim
    if total == 0:
        return _zero_module(out_group, F)
    rows = []
    for u, v in rel_pairs:
        R = F.sub(_kron(F, M.matrix(u), N.matrix(v)), F.eye(total))
        rows.append(R.T)
    if rows:
        U, piv = F.rref(np.vstack(rows))
        U = U[:len(piv)]
    else:
        U, piv = F.zeros((0, total)), []
    pivset = set(piv)
    free = [c for c in range(total) if c not in pivset]

    def reduce_cols(cols):
        # canonical representatives: clear the pivot coordinates
        w = cols.copy()
        for j, c in enumerate(piv):
            coef = w[c].copy()
            if np.any(coef):
                w = F.sub(w, F.mul(U[j][:, None], coef[None, :]))
        return w[free]

    mats = {}
    for z, cands in action_pairs.items():
        down = None
        for x, y in cands:
            A = _kron(F, M.matrix(x), N.matrix(y))
            if len(piv):
                spill = reduce_cols(F.matmul(A, U.T))
                assert not np.any(spill), \
                    'action does not respect the identification'
            cur = reduce_cols(A[:, free])
            if down is None:
                down = cur
            else:
                assert np.array_equal(cur, down), \
                    'action depends on the witness'
        mats[z] = down
    return MatModule(out_group, F, len(free), mats)


def _quotient_tensor(M, N, rel_pairs, out_group, action_pairs):
    if M.is_permutation_backed and N.is_permutation_backed:
        return _perm_quotient_tensor(M, N, rel_pairs, out_group, action_pairs)
    return _matrix_quotient_tensor(M, N, rel_pairs, out_group, action_pairs)


# ---------------------------------------------------------------------------
# the two tensor products


def tensor_over_group(M, N, prod_left=None, prod_right=None, prod_out=None):
    """M (x)_{FH} N over G x K, for M over G x H and N over H x K.

    The underlying space is M (x)_F N modulo (1,h)m (x) n = m (x) (h,1)n
    for h in H, and (g,k) acts as (g,1) (x) (1,k); in bimodule terms this
    is the usual relation mh (x) n = m (x) hn with action g(m (x) n)k^-1.
    """
    if prod_left is None:
        prod_left = _product_of(M.group)
    if prod_right is None:
        prod_right = _product_of(N.group)
    assert M.group == prod_left.group, 'left factor must live over G x H'
    assert N.group == prod_right.group, 'right factor must live over H x K'
    assert prod_left.H == prod_right.G, 'middle groups differ'
    assert M.field == N.field
    H = prod_left.H
    if prod_out is None:
        prod_out = direct_product(prod_left.G, prod_right.H)
    eG, eH, eK = prod_left.G.identity, H.identity, prod_right.H.identity
    rel = [(prod_left.pair(eG, h), prod_right.pair(h, eK)) for h in H.gens]
    act = {}
    for z in prod_out.group.gens:
        g, k = prod_out.components(z)
        act[z] = [(prod_left.pair(g, eH), prod_right.pair(eH, k))]
    return _quotient_tensor(M, N, rel, prod_out.group, act)


def extended_tensor(M, X, N, Y, Z=None, prod_out=None):
    """The tensor product of M over X <= G x H and N over Y <= H x K,
    taken over k2(X) n k1(Y), as a module over X*Y.

    Each generator (g,k) of X*Y acts through a witness h in H with
    (g,h) in X and (h,k) in Y; every valid witness is checked to induce
    the same map on the quotient.  Pass Z to reuse a precomputed
    composition X*Y.
    """
    assert isinstance(X, ProductSubgroup) and isinstance(Y, ProductSubgroup)
    assert M.group == X.sub, 'left factor does not live over X'
    assert N.group == Y.sub, 'right factor does not live over Y'
    assert X.prod.H == Y.prod.G, 'middle groups differ'
    assert M.field == N.field
    if Z is None:
        Z = compose(X, Y, prod_out)
    H = X.prod.H
    common = sorted(X.k2().element_set() & Y.k1().element_set())
    L = H.subgroup(elements=common)
    eG = X.prod.G.identity
    eK = Y.prod.H.identity
    rel = [(X.prod.pair(eG, l), Y.prod.pair(l, eK)) for l in L.gens]
    xset, yset = X.sub.element_set(), Y.sub.element_set()
    act = {}
    for z in Z.sub.gens:
        g, k = Z.prod.components(z)
        cands = []
        for h in X.p2().elements:
            if X.prod.pair(g, h) in xset and Y.prod.pair(h, k) in yset:
                cands.append((X.prod.pair(g, h), Y.prod.pair(h, k)))
        assert cands, 'element of the composition has no witness'
        act[z] = cands
    return _quotient_tensor(M, N, rel, Z.sub, act)


def op_bimodule(M, prod=None, prod_op=None):
    """The dual of a module over G x H as a module over H x G.

    (h,g) sends a functional to its composite with the action of
    (g,h)^(-1); for a permutation module the point set is kept and (h,g)
    acts by the permutation of (g,h).
    """
    if prod is None:
        prod = _product_of(M.group)
    assert M.group == prod.group
    if prod_op is None:
        prod_op = direct_product(prod.H, prod.G)
    F = M.field
    if M.is_permutation_backed:
        gen_perms = {}
        for z in prod_op.group.gens:
            h, g = prod_op.components(z)
            gen_perms[z] = M.perm(prod.pair(g, h))
        return MatModule.from_perm_action(prod_op.group, F, M.points,
                                          gen_perms)
    mats = {}
    for z in prod_op.group.gens:
        h, g = prod_op.components(z)
        mats[z] = F.array(M.matrix(prod.pair(~g, ~h)).T)
    return MatModule(prod_op.group, F, M.dim, mats)


def mackey_rhs(X, Y, M, N, prod_out=None):
    """The decomposition of Ind(M) (x)_{FH} Ind(N) into induced extended
    tensor products, one summand per double coset p2(X) \\ H / p1(Y).

    The t-summand is Ind to G x K of the extended tensor of M with the
    (t,1)-conjugate of N over X * (t,1)Y.
    """
    assert M.group == X.sub and N.group == Y.sub
    H = X.prod.H
    assert Y.prod.G == H, 'middle groups differ'
    if prod_out is None:
        prod_out = direct_product(X.prod.G, Y.prod.H)
    eK = Y.prod.H.identity
    pieces = []
    for t in double_coset_reps(H, X.p2(), Y.p1()):
        tY = Y.conjugate(t, eK)
        tN = conjugate_module(N, Y.prod.pair(t, eK), target_group=tY.sub)
        Zt = compose(X, tY, prod_out)
        Et = extended_tensor(M, X, tN, tY, Z=Zt)
        pieces.append(induce(Et, prod_out.group))
    return direct_sum(pieces)


# ---------------------------------------------------------------------------
# coefficient helpers


def antipode(a):
    """Linear extension of g -> g^(-1) on a coefficient dict."""
    return {~g: c for g, c in a.items()}


def external_element(F, prod, a, b):
    """The element of F[G x H] with coefficient a_g * b_h at (g,h)."""
    out = {}
    for g, ca in a.items():
        for h, cb in b.items():
            c = int(F.mul(int(ca), int(cb)))
            if c:
                out[prod.pair(g, h)] = c
    return out


# ---------------------------------------------------------------------------
# vertex shape of bimodules


def has_twisted_diagonal_vertices(M, prod=None):
    """Do all indecomposable summands of M have twisted diagonal vertices?

    A permutation module is a sum of modules induced from its point
    stabilizers, so it is enough that the Sylow p-subgroups of the
    stabilizers are twisted diagonal (vertices lie inside those up to
    conjugacy).  If that quick test is inconclusive the summands are
    computed and their vertices tested one by one.
    """
    if prod is None:
        prod = _product_of(M.group)
    if M.dim == 0:
        return True
    F = M.field
    Gfull = M.group
    if M.is_permutation_backed:
        quick = True
        for orb in _point_orbits(M, Gfull):
            i = orb[0]
            stab = Gfull.subgroup(
                elements=[x for x in Gfull.elements if M.perm(x)[i] == i])
            Sp = sylow(stab, F.p)
            if not ProductSubgroup(prod, Sp).is_twisted_diagonal():
                quick = False
                break
        if quick:
            return True
    for piece in decompose(M):
        V = vertex(piece)
        if not ProductSubgroup(prod, V).is_twisted_diagonal():
            return False
    return True


# ---------------------------------------------------------------------------
# middle triples and the decomposition of cut Brauer constructions
#
# Fix Brauer pairs (P,e) of FG and (R,d) of FK and an isomorphism
# sigma: R -> P.  A middle triple is (phi, (Q,f), psi) where (Q,f) is a
# Brauer pair of FH and psi: R -> Q, phi: Q -> P are isomorphisms with
# phi o psi = sigma.  The middle group H moves triples by
# (phi c_h^-1, (hQh^-1, f^h), c_h psi) and a pair (g,k) normalizing the
# twisted diagonal of sigma moves them by (c_g phi, (Q,f), psi c_k^-1).


def linking_triples(H, field, sigma):
    """All middle triples through H for sigma, sorted by canonical key."""
    R = sigma.src
    order = R.order
    out = []
    for Q in all_subgroups(H):
        if Q.order != order:
            continue
        isos = isomorphisms(R, Q)
        if not isos:
            continue
        fs = centralizer_blocks(H, field, Q)
        for psi in isos:
            phi = sigma * psi.inverse()
            for f in fs:
                out.append((phi, (Q, f), psi))
    out.sort(key=lambda t: _triple_key(t, R))
    return out


def _triple_key(triple, R):
    phi, (Q, f), psi = triple
    fvec = tuple(sorted((g, int(c)) for g, c in f.coeffs.items()))
    return (tuple(Q.elements), fvec, tuple(psi(r) for r in R.elements))


def _triple_h_image(triple, h, H, P, R):
    phi, (Q, f), psi = triple
    hi = ~h
    Q2 = Q.conjugate_subgroup(h)
    f2 = f.conjugate(h, group=centralizer(H, Q2))
    psi2 = GroupHom(R, Q2, {r: h * psi(r) * hi for r in R.elements})
    phi2 = GroupHom(Q2, P, {q: phi(hi * q * h) for q in Q2.elements})
    return (phi2, (Q2, f2), psi2)


def _triple_gk_image(triple, g, k, P, R):
    phi, (Q, f), psi = triple
    gi, ki = ~g, ~k
    psi2 = GroupHom(R, Q, {r: psi(ki * r * k) for r in R.elements})
    phi2 = GroupHom(Q, P, {q: g * phi(q) * gi for q in Q.elements})
    return (phi2, (Q, f), psi2)


def triple_orbit_reps(H, sigma, triples, gk_moves=()):
    """Representatives (least key first) of the orbits of the combined
    action on middle triples.  gk_moves lists generator pairs (g,k) of the
    outer normalizer; leave it empty for plain H-orbits."""
    R = sigma.src
    P = sigma.image()
    by_key = {}
    for t in triples:
        by_key[_triple_key(t, R)] = t
    assert len(by_key) == len(triples), 'duplicate triples'
    seen = set()
    reps = []
    for key in sorted(by_key):
        if key in seen:
            continue
        reps.append(by_key[key])
        seen.add(key)
        frontier = [by_key[key]]
        while frontier:
            t = frontier.pop()
            images = [_triple_h_image(t, h, H, P, R) for h in H.gens]
            images += [_triple_gk_image(t, g, k, P, R) for g, k in gk_moves]
            for t2 in images:
                k2 = _triple_key(t2, R)
                assert k2 in by_key, 'action left the enumerated triples'
                if k2 not in seen:
                    seen.add(k2)
                    frontier.append(by_key[k2])
    return reps


def _bp_context(M, N, pair_left, sigma, pair_right, S, T,
                prod_left, prod_right, prod_out):
    if prod_left is None:
        prod_left = _product_of(M.group)
    if prod_right is None:
        prod_right = _product_of(N.group)
    F = M.field
    assert F == N.field
    assert M.group == prod_left.group and N.group == prod_right.group
    G, H = prod_left.G, prod_left.H
    assert prod_right.G == H, 'middle groups differ'
    K = prod_right.H
    if prod_out is None:
        prod_out = direct_product(G, K)
    P, R = pair_left.P, pair_right.P
    assert pair_left.group == G and pair_right.group == K
    assert sigma.is_isomorphism()
    assert sigma.src == R and sigma.image() == P, \
        'sigma must map the right pair subgroup onto the left one'
    if S is None:
        S = pair_stabilizer(pair_left)
    if T is None:
        T = pair_stabilizer(pair_right)
    assert centralizer(G, P) <= S <= pair_stabilizer(pair_left), \
        'left intermediate group out of range'
    assert centralizer(K, R) <= T <= pair_stabilizer(pair_right), \
        'right intermediate group out of range'
    big = normalizer_of_twisted_diagonal(prod_out, sigma, S=S, T=T)
    return F, prod_left, prod_right, prod_out, S, T, big


def bp_decomposition(M, N, pair_left, sigma, pair_right, S=None, T=None,
                     check_vertices=True, prod_left=None, prod_right=None,
                     prod_out=None):
    """Decompose the block-cut Brauer construction of M (x)_{FH} N at the
    twisted diagonal of sigma into induced extended tensor products.

    pair_left = (P,e) over G and pair_right = (R,d) over K are Brauer
    pairs, sigma: R -> P an isomorphism, and S, T intermediate groups
    between the centralizers and the pair stabilizers (defaulting to the
    stabilizers).  One summand per orbit representative of the middle
    triples: the extended tensor of the cut constructions
    e M(dephi) f and f N(depsi) d over their pair normalizers, induced up
    to N_{SxT}(Delta(P,sigma,R)).  Isomorphic to bp_direct on the same
    data; that equivalence is this module's central invariant and is
    exercised by the test suite rather than recomputed here.
    """
    F, prod_left, prod_right, prod_out, S, T, big = _bp_context(
        M, N, pair_left, sigma, pair_right, S, T,
        prod_left, prod_right, prod_out)
    G, H = prod_left.G, prod_left.H
    P, e = pair_left.P, pair_left.e
    R, d = pair_right.P, pair_right.e
    if check_vertices:
        assert is_p_permutation(M), 'left factor is not p-permutation'
        assert is_p_permutation(N), 'right factor is not p-permutation'
        assert has_twisted_diagonal_vertices(M, prod_left), \
            'left factor has a summand without twisted diagonal vertex'
        assert has_twisted_diagonal_vertices(N, prod_right), \
            'right factor has a summand without twisted diagonal vertex'
    triples = linking_triples(H, F, sigma)
    gk_moves = [prod_out.components(z) for z in big.sub.gens]
    reps = triple_orbit_reps(H, sigma, triples, gk_moves=gk_moves)
    pieces = []
    for rep in reps:
        phi, (Q, f), psi = rep
        stab = [h for h in H.elements
                if _triple_key(_triple_h_image(rep, h, H, P, R), R)
                == _triple_key(rep, R)]
        assert stab == list(centralizer(H, Q).elements), \
            'middle stabilizer of a triple is not the centralizer'
        NHQf = pair_stabilizer(BrauerPair(H, Q, f))
        X = normalizer_of_twisted_diagonal(prod_left, phi, S=S, T=NHQf)
        Y = normalizer_of_twisted_diagonal(prod_right, psi, S=NHQf, T=T)
        dphi = twisted_diagonal(prod_left, phi)
        dpsi = twisted_diagonal(prod_right, psi)
        ef = external_element(F, prod_left, e.coeffs, antipode(f.coeffs))
        fd = external_element(F, prod_right, f.coeffs, antipode(d.coeffs))
        MQ = brauer_construction(M, dphi.sub, ambient=X.sub)
        NQ = brauer_construction(N, dpsi.sub, ambient=Y.sub)
        Mw = cut_by_idempotent(
            MQ, brauer_hom(ef, dphi.sub, group=prod_left.group, field=F),
            group=X.sub)
        Nw = cut_by_idempotent(
            NQ, brauer_hom(fd, dpsi.sub, group=prod_right.group, field=F),
            group=Y.sub)
        Z = compose(X, Y, prod_out)
        assert Z.sub <= big.sub, 'composition escapes the target normalizer'
        Ew = extended_tensor(Mw, X, Nw, Y, Z=Z)
        pieces.append(induce(Ew, big.sub))
    if not pieces:
        return _zero_module(big.sub, F)
    return direct_sum(pieces)


def bp_direct(M, N, pair_left, sigma, pair_right, S=None, T=None,
              prod_left=None, prod_right=None, prod_out=None):
    """e (M (x)_{FH} N)(Delta(P,sigma,R)) d computed head on: tensor first,
    then the Brauer construction over N_{SxT}, then the cut by the image
    of e (x) d* under the Brauer homomorphism."""
    F, prod_left, prod_right, prod_out, S, T, big = _bp_context(
        M, N, pair_left, sigma, pair_right, S, T,
        prod_left, prod_right, prod_out)
    e, d = pair_left.e, pair_right.e
    full = tensor_over_group(M, N, prod_left, prod_right, prod_out)
    delta = twisted_diagonal(prod_out, sigma)
    built = brauer_construction(full, delta.sub, ambient=big.sub)
    ed = external_element(F, prod_out, e.coeffs, antipode(d.coeffs))
    cut = brauer_hom(ed, delta.sub, group=prod_out.group, field=F)
    return cut_by_idempotent(built, cut, group=big.sub)
