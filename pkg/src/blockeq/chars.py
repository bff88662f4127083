"""Class functions and exact character arithmetic.

Brauer characters of modules in characteristic p take values in cyclotomic
integers through a fixed chart that matches field units with roots of
unity.  Ordinary characters of lifts of p-permutation modules are read off
the Brauer constructions at the p-parts of group elements, so no character
table is ever computed.  Decomposition maps with a block cut evaluate
p-adically through a lifted central idempotent; the result is certified
exact by a precision bound before reconstruction.
"""

from fractions import Fraction
from functools import lru_cache
import math

import numpy as np

from .groups import (conjugacy_classes, centralizer, direct_product,
                     p_part_decomposition)
from .fields import gf
from .cyclo import Cyc, Chart, zeta
from .modules import restrict, extend_scalars, brauer_construction
from .decompose import is_p_permutation
from .blocks import lift_idempotent_padic

__all__ = ['ClassFunction', 'character_chart', 'splitting_extension',
           'brauer_character', 'lift_character', 'char_dot',
           'apply_isometry', 'dual_class_function', 'inner_product',
           'decomposition_map', 'generalized_decomposition',
           'is_quasi_perfect', 'is_perfect', 'p_valuation']

_ZERO = Cyc.rational(0)

_charts = {}


def character_chart(field):
    """The chart identifying units of the field with roots of unity.

    One chart per field for the whole session, so values produced by
    different computations stay comparable.
    """
    key = (field.p, field.k)
    chart = _charts.get(key)
    if chart is None:
        chart = _charts[key] = Chart(field)
    return chart


def splitting_extension(field, group):
    """The smallest extension of the field containing every eigenvalue of
    every p-regular element of the group."""
    m = 1
    for rep, _ in conjugacy_classes(group):
        o = rep.order()
        if o % field.p:
            m = math.lcm(m, o)
    k = field.k
    while (field.p ** k - 1) % m:
        k += field.k
    return field if k == field.k else gf(field.p, k)


def _rep_map(G):
    tbl = G._cache.get('class rep map')
    if tbl is None:
        tbl = {}
        for rep, members in conjugacy_classes(G):
            for x in members:
                tbl[x] = rep
        G._cache['class rep map'] = tbl
    return tbl


def _class_sizes(G):
    tbl = G._cache.get('class sizes')
    if tbl is None:
        tbl = {rep: len(members) for rep, members in conjugacy_classes(G)}
        G._cache['class sizes'] = tbl
    return tbl


class ClassFunction:
    """An exact cyclotomic-valued class function, stored per class.

    support is the producer's promise: 'p-regular' marks functions known
    to vanish off the p-regular classes.  chart and mass ride along when
    known; mass bounds how many roots of unity can add up to any single
    value, which is what the p-adic evaluation certificate consumes.
    """

    def __init__(self, group, values, support='all', chart=None, mass=None):
        reps = _rep_map(group)
        vv = {}
        for x, v in values.items():
            if not isinstance(v, Cyc):
                v = Cyc.rational(v)
            rep = reps[x]
            if rep in vv:
                assert vv[rep] == v, 'conflicting values on one class'
            else:
                vv[rep] = v
        self.group = group
        self.values = {r: v for r, v in vv.items() if v}
        self.support = support
        self.chart = chart
        self.mass = mass

    def value(self, x):
        return self.values.get(_rep_map(self.group)[x], _ZERO)

    def degree(self):
        return self.value(self.group.identity)

    def is_zero(self):
        return not self.values

    def __bool__(self):
        return bool(self.values)

    def __eq__(self, other):
        return (isinstance(other, ClassFunction)
                and self.group == other.group
                and self.values == other.values)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def _join_chart(self, other):
        return self.chart if self.chart is not None else other.chart

    def __add__(self, other):
        assert isinstance(other, ClassFunction)
        assert self.group == other.group
        vals = dict(self.values)
        for r, v in other.values.items():
            vals[r] = vals.get(r, _ZERO) + v
        support = self.support if self.support == other.support else 'all'
        mass = None
        if self.mass is not None and other.mass is not None:
            mass = self.mass + other.mass
        return ClassFunction(self.group, vals, support,
                             self._join_chart(other), mass)

    def __neg__(self):
        vals = {r: -v for r, v in self.values.items()}
        return ClassFunction(self.group, vals, self.support, self.chart,
                             self.mass)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Pointwise product: the character of a tensor product over F."""
        assert isinstance(other, ClassFunction)
        assert self.group == other.group
        vals = {}
        for r, v in self.values.items():
            w = other.values.get(r)
            if w is not None:
                vals[r] = v * w
        support = 'all'
        if 'p-regular' in (self.support, other.support):
            support = 'p-regular'
        mass = None
        if self.mass is not None and other.mass is not None:
            mass = self.mass * other.mass
        return ClassFunction(self.group, vals, support,
                             self._join_chart(other), mass)

    def scale(self, c):
        """Multiply by a rational or cyclotomic scalar."""
        if not c:
            return ClassFunction(self.group, {}, self.support, self.chart, 0)
        vals = {r: v * c for r, v in self.values.items()}
        mass = None
        if self.mass is not None and isinstance(c, int):
            mass = self.mass * abs(c)
        return ClassFunction(self.group, vals, self.support, self.chart, mass)

    def conjugate(self):
        """Complex conjugation applied to every value."""
        vals = {r: v.conjugate() for r, v in self.values.items()}
        return ClassFunction(self.group, vals, self.support, self.chart,
                             self.mass)

    def to_json(self):
        out = []
        for rep, _ in conjugacy_classes(self.group):
            v = self.values.get(rep, _ZERO)
            out.append({'class': [int(i) for i in rep.img],
                        'value': v.to_json()})
        return {'group_order': self.group.order, 'support': self.support,
                'classes': out}

    def __repr__(self):
        return ('ClassFunction(|G|=%d, %d classes, %d nonzero)'
                % (self.group.order, len(conjugacy_classes(self.group)),
                   len(self.values)))


# ---------------------------------------------------------------------------
# characters of modules


def brauer_character(M, chart=None):
    """The Brauer character of M, supported on the p-regular classes.

    A p-regular element acts semisimply with eigenvalues in a large enough
    extension field; the module is extended silently when its own field is
    too small, which changes no multiplicities.  The value is the sum of
    the chart lifts of the eigenvalues, counted by kernel dimension.
    """
    G = M.group
    if chart is None:
        big = splitting_extension(M.field, G)
        chart = character_chart(big)
    else:
        big = chart.field
        assert big.p == M.field.p and big.k % M.field.k == 0
    M = extend_scalars(M, big)
    F = M.field
    q = F.q
    g0 = np.int64(F.generator if q > 2 else 1)
    vals = {}
    for rep, _ in conjugacy_classes(G):
        o = rep.order()
        if o % F.p == 0 or M.dim == 0:
            continue
        assert (q - 1) % o == 0, 'field does not split this element'
        A = M.matrix(rep)
        I = F.eye(M.dim)
        total = _ZERO
        seen = 0
        step = (q - 1) // o
        for j in range(o):
            lam = F.pow(g0, j * step)
            mult = M.dim - F.rank(F.sub(A, F.mul(lam, I)))
            if mult:
                seen += mult
                total = total + chart.lift_unit(lam) * mult
        assert seen == M.dim, 'p-regular action failed to diagonalize'
        vals[rep] = total
    return ClassFunction(G, vals, 'p-regular', chart, M.dim)


def lift_character(M, chart=None, check=True):
    """The ordinary character of the p-adic lift of a p-permutation module.

    Each group element factors as a commuting product of its p-part u and
    p'-part s, and the value is the Brauer character of the Brauer
    construction at <u>, restricted to the centralizer of u, evaluated at
    s.  Virtual inputs (anything carrying .terms) extend linearly.
    """
    if hasattr(M, 'terms'):
        total = ClassFunction(M.group, {}, 'all', chart, 0)
        for c, N in M.terms:
            total = total + lift_character(N, chart=chart,
                                           check=check).scale(int(c))
        return total
    G = M.group
    p = M.field.p
    if check:
        assert is_p_permutation(M), 'lift requires a p-permutation module'
    if chart is None:
        chart = character_chart(splitting_extension(M.field, G))
    vals = {}
    local = {}
    for rep, _ in conjugacy_classes(G):
        u, s = p_part_decomposition(rep, p)
        bc = local.get(u)
        if bc is None:
            C = centralizer(G, u)
            Mu = brauer_construction(M, G.subgroup(gens=[u]))
            bc = brauer_character(restrict(Mu, C), chart=chart)
            local[u] = bc
        v = bc.value(s)
        if v:
            vals[rep] = v
    return ClassFunction(G, vals, 'all', chart, M.dim)


# ---------------------------------------------------------------------------
# products and pairings


def _product_structure(group):
    ps = group._cache.get('product')
    assert ps is not None, 'class function does not live on a direct product'
    return ps


def char_dot(mu, nu, prod_out=None):
    """Contraction over the middle group: mu on GxH and nu on HxK pair to
    the class function (g,k) -> |H|^{-1} sum over h of mu(g,h) nu(h,k)."""
    pl = _product_structure(mu.group)
    pr = _product_structure(nu.group)
    assert pr.G == pl.H, 'middle groups differ'
    H = pl.H
    if prod_out is None:
        prod_out = direct_product(pl.G, pr.H)
    inv = Fraction(1, H.order)
    vals = {}
    for rep, _ in conjugacy_classes(prod_out.group):
        g, k = prod_out.components(rep)
        acc = _ZERO
        for h in H.elements:
            a = mu.value(pl.pair(g, h))
            if a:
                b = nu.value(pr.pair(h, k))
                if b:
                    acc = acc + a * b
        if acc:
            vals[rep] = acc * inv
    mass = None
    if mu.mass is not None and nu.mass is not None:
        mass = mu.mass * nu.mass
    return ClassFunction(prod_out.group, vals, 'all', mu._join_chart(nu),
                         mass)


def apply_isometry(mu, psi):
    """Transport psi on H through mu on GxH: the contraction with the
    second factor collapsed, g -> |H|^{-1} sum over h of mu(g,h) psi(h)."""
    pl = _product_structure(mu.group)
    G, H = pl.G, pl.H
    assert psi.group == H
    inv = Fraction(1, H.order)
    vals = {}
    for rep, _ in conjugacy_classes(G):
        acc = _ZERO
        for h in H.elements:
            a = mu.value(pl.pair(rep, h))
            if a:
                b = psi.value(h)
                if b:
                    acc = acc + a * b
        if acc:
            vals[rep] = acc * inv
    mass = None
    if mu.mass is not None and psi.mass is not None:
        mass = mu.mass * psi.mass
    return ClassFunction(G, vals, 'all', mu._join_chart(psi), mass)


def dual_class_function(mu, prod_op=None):
    """The dual on the flipped product: value at (h,g) is mu(g^-1, h^-1)."""
    pl = _product_structure(mu.group)
    if prod_op is None:
        prod_op = direct_product(pl.H, pl.G)
    vals = {}
    for rep, _ in conjugacy_classes(prod_op.group):
        h, g = prod_op.components(rep)
        v = mu.value(pl.pair(~g, ~h))
        if v:
            vals[rep] = v
    return ClassFunction(prod_op.group, vals, mu.support, mu.chart, mu.mass)


def inner_product(chi, psi):
    """The standard pairing |G|^{-1} sum over g of chi(g) psi(g^-1)."""
    G = chi.group
    assert psi.group == G
    sizes = _class_sizes(G)
    acc = _ZERO
    for rep, v in chi.values.items():
        w = psi.value(~rep)
        if w:
            acc = acc + v * w * sizes[rep]
    return acc * Fraction(1, G.order)


# ---------------------------------------------------------------------------
# decomposition maps


@lru_cache(maxsize=None)
def _coefficient_radius(m):
    """Largest power-basis coordinate magnitude over all reduced powers of
    zeta_m; every root of unity of conductor dividing m stays within it."""
    best = 1
    for t in range(m):
        for c in zeta(m, t).co:
            best = max(best, abs(int(c)))
    return best


def _conductor_p_part(v, p):
    n = v.normalized().n
    pa = 1
    while n % p == 0:
        n //= p
        pa *= p
    return pa, n


def _embed_split(v, W, tpow, P):
    """Write the cyclotomic integer v as a sum over i of zeta_P^i * w_i
    with w_i in the Witt ring.

    The p-power direction of the conductor stays symbolic as the exponent
    i, while the p-regular direction embeds through the Teichmueller
    powers tpow.  Exponents are not yet reduced below phi(P).
    """
    p = W.p
    mhat = W.chart.m
    v = v.normalized()
    pa, nn = _conductor_p_part(v, p)
    assert mhat % nn == 0, 'conductor escapes the chart'
    c1 = pow(nn, -1, pa)
    c2 = pow(pa, -1, nn)
    out = {}
    for t, c in enumerate(v.co):
        if not c:
            continue
        assert c.denominator == 1, 'value is not an algebraic integer'
        i = ((c1 * t) % pa) * (P // pa)
        if mhat > 1 and nn > 1:
            e = (c2 * t) % nn
            w = tpow[(e * (mhat // nn)) % mhat]
        else:
            w = W.one()
        w = W.scale(int(c), w)
        out[i] = W.add(out[i], w) if i in out else w
    return out


def _padic_value(terms, W, tpow, bound):
    """Certified exact value of a sum of Witt coefficients times cyclotomic
    integers.

    The true value is a signed sum of at most `mass` roots of unity, which
    bounds every coordinate over the basis zeta_P^i zeta_m^j by the mass
    times the reduction radius of the p-regular part.  The Witt precision
    exceeds twice that bound, so balanced reconstruction is exact.
    """
    p = W.p
    P = 1
    live = []
    for w_coeff, v in terms:
        if not v:
            continue
        pa, _ = _conductor_p_part(v, p)
        P = max(P, pa)
        live.append((w_coeff, v))
    assert W.mod > 2 * bound, 'insufficient precision for the certificate'
    acc = [W.zero()] * P
    for w_coeff, v in live:
        for i, w in _embed_split(v, W, tpow, P).items():
            acc[i] = W.add(acc[i], W.mul(w_coeff, w))
    phi_p = P - P // p if P > 1 else 1
    for i in range(P - 1, phi_p - 1, -1):
        c = acc[i]
        if any(c):
            acc[i] = W.zero()
            r = i - phi_p
            for j in range(p - 1):
                k = j * (P // p) + r
                acc[k] = W.sub(acc[k], c)
    total = _ZERO
    for i in range(phi_p):
        if not any(acc[i]):
            continue
        piece = W.reconstruct_cyclotomic(acc[i])
        worst = max(abs(int(c)) for c in piece.co)
        assert worst <= bound, 'precision certificate failed'
        if P > 1:
            piece = piece * zeta(P, i)
        total = total + piece
    return total


def _lifted_block(e, mass, precision):
    mhat = e.field.q - 1
    bound = mass * _coefficient_radius(mhat)
    N = 1
    while e.field.p ** N <= 2 * bound:
        N += 1
    if precision is not None:
        N = max(N, precision)
    W, lifted = lift_idempotent_padic(e, N)
    tpow = [W.one()]
    if mhat > 1:
        t = W.teichmueller(np.int64(e.field.generator))
        cur = W.one()
        for _ in range(mhat - 1):
            cur = W.mul(cur, t)
            tpow.append(cur)
    return W, lifted, tpow, bound


def generalized_decomposition(chi, u, e=None, precision=None, mass=None):
    """The generalized decomposition of chi at the p-element u, optionally
    cut by a block of the centralizer algebra.

    The result is a class function on C_G(u) supported on its p-regular
    classes, with value chi(u g e) at g.  Without e the evaluation is
    exact restriction; with e it runs p-adically through the lifted
    idempotent, certified by the precision bound, so a mass bound on the
    values of chi is required (chi.mass when produced by a lift).
    """
    G = chi.group
    if e is not None:
        p = e.field.p
    else:
        assert chi.chart is not None, 'no prime in scope'
        p = chi.chart.p
    o = u.order()
    while o % p == 0:
        o //= p
    assert o == 1, 'u must be a p-element'
    C = centralizer(G, u)
    if e is not None:
        assert e.group == C, 'block does not live on the centralizer of u'
        if mass is None:
            mass = chi.mass
        assert mass is not None, 'a mass bound is required for the certificate'
        W, lifted, tpow, bound = _lifted_block(e, int(mass), precision)
    vals = {}
    for rep, _ in conjugacy_classes(C):
        if rep.order() % p == 0:
            continue
        if e is None:
            v = chi.value(u * rep)
        else:
            terms = [(w, chi.value(u * rep * x)) for x, w in lifted.items()]
            v = _padic_value(terms, W, tpow, bound)
        if v:
            vals[rep] = v
    chart = chi.chart
    if chart is None:
        chart = character_chart(e.field)
    return ClassFunction(C, vals, 'p-regular', chart, mass or chi.mass)


def decomposition_map(chi, e=None, precision=None, mass=None):
    """Restriction of chi to the p-regular classes, with an optional block
    cut evaluated as chi(g e)."""
    G = chi.group
    if e is None:
        assert chi.chart is not None, 'no prime in scope'
        p = chi.chart.p
        vals = {r: v for r, v in chi.values.items() if r.order() % p}
        return ClassFunction(G, vals, 'p-regular', chi.chart, chi.mass)
    return generalized_decomposition(chi, G.identity, e, precision, mass)


# ---------------------------------------------------------------------------
# isometry predicates


def _int_p_valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_quasi_perfect(mu, p=None):
    """Whether every nonzero value pairs p-regular with p-regular."""
    if p is None:
        assert mu.chart is not None, 'no prime in scope'
        p = mu.chart.p
    ps = _product_structure(mu.group)
    for rep in mu.values:
        g, h = ps.components(rep)
        if (g.order() % p == 0) != (h.order() % p == 0):
            return False
    return True


def is_perfect(mu, chart=None):
    """Both perfect-isometry conditions on values, checked exactly.

    The separation condition is support inspection; the divisibility
    condition asks each value to sit in the ideals generated by both
    centralizer orders, which for p-regular conductors reduces to a chart
    valuation bound.  Values with ramified conductor are out of scope.
    """
    if chart is None:
        chart = mu.chart
    assert chart is not None, 'a chart fixes the prime ideal for valuations'
    p = chart.p
    if not is_quasi_perfect(mu, p):
        return False
    ps = _product_structure(mu.group)
    G, H = ps.G, ps.H
    for rep, v in mu.values.items():
        n = v.normalized().n
        if n % p == 0:
            raise NotImplementedError(
                'valuation at ramified conductors is not supported')
        g, h = ps.components(rep)
        cg = G.order // _class_sizes(G)[_rep_map(G)[g]]
        ch = H.order // _class_sizes(H)[_rep_map(H)[h]]
        need = max(_int_p_valuation(cg, p), _int_p_valuation(ch, p))
        if need and chart.p_valuation(v) < need:
            return False
    return True


def p_valuation(x, chart):
    """Valuation of x at the chart prime; infinite on zero."""
    return chart.p_valuation(x)
