"""Subgroups of direct products: projections, composition, twisted diagonals.

A subgroup X of G x H carries four invariants (the two projections and the
two kernel subgroups) and a canonical isomorphism between the corresponding
quotients.  Composition of such subgroups and the stabilizer calculus for
twisted diagonal subgroups are implemented by direct enumeration.
"""

from .groups import (PermGroup, GroupHom, QuotientGroup, Perm,
                     ProductStructure, direct_product, normalizer,
                     centralizer)

__all__ = [
    'ProductSubgroup', 'product_subgroup', 'twisted_diagonal', 'diagonal',
    'compose', 'opposite', 'n_stabilizer', 'normalizer_of_twisted_diagonal',
]


class ProductSubgroup:
    """A subgroup of G x H together with its product bookkeeping."""

    def __init__(self, prod, sub):
        assert isinstance(prod, ProductStructure)
        assert sub.element_set() <= prod.group.element_set()
        self.prod = prod
        self.sub = sub
        self._cache = {}

    @classmethod
    def from_pairs(cls, prod, pairs):
        gens = [prod.pair(g, h) for g, h in pairs]
        return cls(prod, prod.group.generated(gens))

    @property
    def order(self):
        return self.sub.order

    def pairs(self):
        """Elements as (g, h) pairs."""
        return [self.prod.components(x) for x in self.sub.elements]

    def __contains__(self, pair):
        g, h = pair
        return self.prod.pair(g, h) in self.sub

    def __eq__(self, other):
        return (isinstance(other, ProductSubgroup) and self.prod is other.prod
                and self.sub == other.sub)

    def __hash__(self):
        return hash(self.sub)

    def __repr__(self):
        return 'ProductSubgroup(order=%d of %r)' % (self.order, self.prod.group)

    # invariants -----------------------------------------------------------

    def p1(self):
        if 'p1' not in self._cache:
            els = sorted({self.prod.left(x) for x in self.sub.elements})
            self._cache['p1'] = self.prod.G.subgroup(elements=els)
        return self._cache['p1']

    def p2(self):
        if 'p2' not in self._cache:
            els = sorted({self.prod.right(x) for x in self.sub.elements})
            self._cache['p2'] = self.prod.H.subgroup(elements=els)
        return self._cache['p2']

    def k1(self):
        if 'k1' not in self._cache:
            eH = self.prod.H.identity
            els = sorted(g for g, h in self.pairs() if h == eH)
            self._cache['k1'] = self.prod.G.subgroup(elements=els)
        return self._cache['k1']

    def k2(self):
        if 'k2' not in self._cache:
            eG = self.prod.G.identity
            els = sorted(h for g, h in self.pairs() if g == eG)
            self._cache['k2'] = self.prod.H.subgroup(elements=els)
        return self._cache['k2']

    def invariants(self):
        """(p1, p2, k1, k2) with the order identities checked."""
        p1, p2, k1, k2 = self.p1(), self.p2(), self.k1(), self.k2()
        assert k1.is_normal_in(p1) and k2.is_normal_in(p2)
        assert self.order == p1.order * k2.order == p2.order * k1.order
        return p1, p2, k1, k2

    def eta(self):
        """The canonical isomorphism p2/k2 -> p1/k1 sending hk2 to gk1
        whenever (g,h) lies in the subgroup."""
        if 'eta' in self._cache:
            return self._cache['eta']
        p1, p2, k1, k2 = self.invariants()
        Q2 = QuotientGroup(p2, k2)
        Q1 = QuotientGroup(p1, k1)
        mp = {}
        for g, h in self.pairs():
            a, b = Q2.proj(h), Q1.proj(g)
            if a in mp:
                assert mp[a] == b, 'eta is not well defined'
            else:
                mp[a] = b
        assert len(mp) == Q2.order
        eta = GroupHom(Q2, Q1, mp)
        assert eta.is_isomorphism()
        self._cache['eta'] = eta
        return eta

    # twisted diagonal structure -------------------------------------------

    def is_twisted_diagonal(self):
        return self.k1().order == 1 and self.k2().order == 1

    def as_twisted_diagonal(self):
        """(P, phi, Q) with phi : Q -> P an isomorphism, for a twisted
        diagonal subgroup."""
        assert self.is_twisted_diagonal()
        P, Q = self.p1(), self.p2()
        mp = {h: g for g, h in self.pairs()}
        phi = GroupHom(Q, P, mp)
        assert phi.is_isomorphism()
        return P, phi, Q

    def conjugate(self, g, h):
        """The (g,h)-conjugate subgroup."""
        x = self.prod.pair(g, h)
        return ProductSubgroup(self.prod, self.sub.conjugate_subgroup(x))


def product_subgroup(prod, pairs):
    return ProductSubgroup.from_pairs(prod, pairs)


def twisted_diagonal(prod, phi):
    """Delta(P, phi, Q) for an isomorphism phi : Q -> P with Q <= H, P <= G."""
    Q = phi.src
    assert Q.element_set() <= prod.H.element_set()
    assert phi.image().element_set() <= prod.G.element_set()
    els = sorted(prod.pair(phi(y), y) for y in Q.elements)
    sub = prod.group.subgroup(elements=els)
    X = ProductSubgroup(prod, sub)
    assert X.is_twisted_diagonal()
    return X


def diagonal(prod, P):
    """Delta(P) in G x G (both factors must be the same group)."""
    assert prod.G == prod.H
    return twisted_diagonal(prod, GroupHom.identity_map(P))


def opposite(X, prod_op=None):
    """X with the two coordinates swapped: a subgroup of H x G."""
    if prod_op is None:
        prod_op = direct_product(X.prod.H, X.prod.G)
    els = sorted(prod_op.pair(h, g) for g, h in X.pairs())
    return ProductSubgroup(prod_op, prod_op.group.subgroup(elements=els))


def compose(X, Y, prod_out=None):
    """X * Y for X <= G x H and Y <= H x K."""
    assert X.prod.H == Y.prod.G, 'middle groups differ'
    if prod_out is None:
        prod_out = direct_product(X.prod.G, Y.prod.H)
    by_h = {}
    for g, h in X.pairs():
        by_h.setdefault(h, []).append(g)
    els = set()
    for h, k in Y.pairs():
        for g in by_h.get(h, ()):
            els.add(prod_out.pair(g, k))
    return ProductSubgroup(prod_out, prod_out.group.subgroup(elements=sorted(els)))


def n_stabilizer(S, phi, T):
    """N_(S,phi,T): elements g of S admitting h in T with c_g phi c_h = phi.

    Here phi : Q -> P; S must normalize P and T must normalize Q.
    """
    Q = phi.src
    qgens = Q.gens
    out = []
    for g in S.elements:
        gi = ~g
        ok = False
        for h in T.elements:
            hi = ~h
            if all(g * phi(h * y * hi) * gi == phi(y) for y in qgens):
                ok = True
                break
        if ok:
            out.append(g)
    return S.subgroup(elements=out)


def normalizer_of_twisted_diagonal(prod, phi, S=None, T=None):
    """N_{S x T}(Delta(P, phi, Q)), computed directly.

    When C_G(P) <= S <= N_G(P) and C_H(Q) <= T <= N_H(Q), the projection
    and kernel invariants of the result are checked against the stabilizer
    description (k1 = C_G(P), k2 = C_H(Q), p1 = N_(S,phi,T),
    p2 = N_(T,phi^-1,S)).
    """
    G, H = prod.G, prod.H
    X = twisted_diagonal(prod, phi)
    P, Q = X.p1(), X.p2()
    NP, NQ = normalizer(G, P), normalizer(H, Q)
    if S is None:
        S = NP
    if T is None:
        T = NQ
    sub_els = []
    xs = X.sub.element_set()
    for g in S.elements:
        for h in T.elements:
            u = prod.pair(g, h)
            if all(u * x * ~u in xs for x in X.sub.gens):
                sub_els.append(u)
    N = ProductSubgroup(prod, prod.group.subgroup(elements=sorted(sub_els)))
    CP, CQ = centralizer(G, P), centralizer(H, Q)
    if (CP <= S <= NP) and (CQ <= T <= NQ):
        assert N.k1() == CP and N.k2() == CQ
        assert N.p1() == n_stabilizer(S, phi, T)
        assert N.p2() == n_stabilizer(T, phi.inverse(), S)
    return N
