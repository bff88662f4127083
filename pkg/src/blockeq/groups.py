"""Finite permutation groups, exhaustively.

Every group handled here is small enough that its full element list fits in
memory, and we lean on that everywhere: conjugacy questions, transporters,
normalizers and subgroup enumeration are settled by direct search.  All
orderings are deterministic (permutations compare by their image tuples),
so representatives and listings never depend on hash seeds or dict order.
"""

from functools import reduce
from math import gcd, lcm

__all__ = [
    'Perm', 'PermGroup', 'GroupHom', 'QuotientGroup', 'ProductStructure',
    'catalog_group', 'direct_product', 'centralizer', 'normalizer',
    'conjugacy_classes', 'class_of', 'p_prime_classes', 'is_p_regular',
    'p_part_decomposition', 'all_subgroups', 'subgroup_classes',
    'p_subgroups_up_to_conjugacy', 'sylow', 'transporter', 'coset_reps',
    'double_coset_reps', 'coset_space', 'conjugation_hom', 'isomorphisms',
]


class Perm:
    """A permutation of {0, ..., n-1}, stored as its image tuple."""

    __slots__ = ('img', '_hash')

    def __init__(self, img):
        self.img = tuple(img)
        self._hash = hash(self.img)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n, *cycles):
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self):
        return len(self.img)

    def __call__(self, i):
        return self.img[i]

    def __mul__(self, other):
        # left action convention: (p*q)(i) = p(q(i))
        return Perm(tuple(self.img[j] for j in other.img))

    def __invert__(self):
        inv = [0] * len(self.img)
        for i, j in enumerate(self.img):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k):
        if k < 0:
            return (~self) ** (-k)
        r = Perm.identity(len(self.img))
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def conj(self, g):
        """g * self * g^-1."""
        return g * self * ~g

    def order(self):
        n = 1
        x = self
        e = Perm.identity(len(self.img))
        while x != e:
            x = x * self
            n += 1
        return n

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.img))

    def cycles(self):
        seen = [False] * len(self.img)
        out = []
        for i in range(len(self.img)):
            if seen[i] or self.img[i] == i:
                seen[i] = True
                continue
            c = [i]
            seen[i] = True
            j = self.img[i]
            while j != i:
                c.append(j)
                seen[j] = True
                j = self.img[j]
            out.append(tuple(c))
        return out

    def __eq__(self, other):
        return isinstance(other, Perm) and self.img == other.img

    def __lt__(self, other):
        return self.img < other.img

    def __le__(self, other):
        return self.img <= other.img

    def __hash__(self):
        return self._hash

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return '()'
        return ''.join('(' + ' '.join(map(str, c)) + ')' for c in cyc)


def _closure(degree, gens):
    """All products of the given permutations, as a sorted tuple."""
    e = Perm.identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(seen))


class PermGroup:
    """A finite permutation group with materialized element list.

    Subgroups are PermGroups of the same degree; ambient-relative notions
    (conjugacy, normalizers, transporters) are methods of the ambient group
    taking the subgroup as argument.
    """

    def __init__(self, degree, gens, elements=None, name=None):
        self.degree = degree
        self.gens = tuple(gens) if gens else (Perm.identity(degree),)
        self.elements = elements if elements is not None else _closure(degree, self.gens)
        self.name = name
        self._index = None
        self._eltset = None
        self._cache = {}

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return Perm.identity(self.degree)

    def element_set(self):
        if self._eltset is None:
            self._eltset = frozenset(self.elements)
        return self._eltset

    def index_of(self, g):
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.elements)}
        return self._index[g]

    def __contains__(self, g):
        return g in self.element_set()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, PermGroup) and self.degree == other.degree
                and self.element_set() == other.element_set())

    def __hash__(self):
        return hash((self.degree, self.element_set()))

    def __le__(self, other):
        return self.degree == other.degree and self.element_set() <= other.element_set()

    def __lt__(self, other):
        return self <= other and self.order < other.order

    def __repr__(self):
        if self.name:
            return self.name
        return 'PermGroup(deg=%d, order=%d)' % (self.degree, self.order)

    def subgroup(self, gens=None, elements=None, name=None):
        if elements is not None:
            elements = tuple(sorted(elements))
            if gens is None:
                gens = _generating_subset(self.degree, elements)
            return PermGroup(self.degree, gens, elements, name=name)
        sub = PermGroup(self.degree, tuple(gens), name=name)
        assert sub.element_set() <= self.element_set(), 'not a subgroup'
        return sub

    def trivial_subgroup(self):
        return self.subgroup(elements=(self.identity,))

    def generated(self, elts):
        return PermGroup(self.degree, tuple(elts) or (self.identity,))

    def is_subgroup_of(self, other):
        return self <= other

    def is_normal_in(self, other):
        s = self.element_set()
        return all(g * x * ~g in s for g in other.gens for x in self.gens)

    def conjugate_subgroup(self, g):
        return PermGroup(self.degree, tuple(g * x * ~g for x in self.gens),
                         tuple(sorted(g * x * ~g for x in self.elements)))

    def exponent(self):
        return reduce(lcm, (g.order() for g in self.elements), 1)

    def is_p_group(self, p):
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def center(self):
        els = [z for z in self.elements
               if all(z * g == g * z for g in self.gens)]
        return self.subgroup(elements=els)

    def random_element(self, rng):
        return self.elements[rng.randrange(self.order)]


def _generating_subset(degree, elements):
    """A small generating set for a group given by its element list."""
    e = Perm.identity(degree)
    gens = []
    have = {e}
    for x in elements:
        if x not in have:
            gens.append(x)
            have = set(_closure(degree, gens))
            if len(have) == len(elements):
                break
    return tuple(gens) if gens else (e,)


# ---------------------------------------------------------------------------
# ambient-relative operations


def centralizer(G, target):
    """C_G(target); target is a PermGroup, a Perm, or an iterable of Perms."""
    if isinstance(target, Perm):
        gens = (target,)
    elif isinstance(target, PermGroup):
        gens = target.gens
    else:
        gens = tuple(target)
    els = [g for g in G.elements if all(g * x == x * g for x in gens)]
    return G.subgroup(elements=els)


def normalizer(G, S):
    """N_G(S) for a subgroup S of G."""
    s = S.element_set()
    els = [g for g in G.elements
           if all(g * x * ~g in s for x in S.gens)]
    return G.subgroup(elements=els)


def transporter(G, S, T):
    """Some g in G with gSg^-1 = T, or None.  Deterministic (least g)."""
    if S.order != T.order:
        return None
    t = T.element_set()
    for g in G.elements:
        if all(g * x * ~g in t for x in S.gens):
            return g
    return None


def conjugacy_classes(G):
    """Classes of G, each as (representative, tuple of members).

    The representative is the least member; classes are sorted by
    (size, representative).
    """
    key = 'conjclasses'
    if key in G._cache:
        return G._cache[key]
    seen = set()
    classes = []
    for x in G.elements:
        if x in seen:
            continue
        orb = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in G.gens:
                    z = g * y * ~g
                    if z not in orb:
                        orb.add(z)
                        nxt.append(z)
            frontier = nxt
        seen |= orb
        members = tuple(sorted(orb))
        classes.append((members[0], members))
    classes.sort(key=lambda c: (len(c[1]), c[0].img))
    G._cache[key] = classes
    return classes


def class_of(G, x):
    for rep, members in conjugacy_classes(G):
        if x in members:
            return rep
    raise ValueError('element not in group')


def p_part_decomposition(g, p):
    """Write g = u*s = s*u with u a p-element and s p-regular, both powers of g."""
    n = g.order()
    a = 1
    while n % p == 0:
        n //= p
        a *= p
    m = n  # p'-part of the order
    if a == 1:
        return (Perm.identity(g.degree), g)
    if m == 1:
        return (g, Perm.identity(g.degree))
    # CRT exponents: u = g^(m * m^-1 mod a), s = g^(a * a^-1 mod m)
    u = g ** (m * pow(m, -1, a))
    s = g ** (a * pow(a, -1, m))
    assert u * s == g and s * u == g
    return (u, s)


def is_p_regular(g, p):
    return g.order() % p != 0


def p_prime_classes(G, p):
    """Conjugacy classes of G with p-regular representatives."""
    return [(rep, mem) for rep, mem in conjugacy_classes(G)
            if rep.order() % p != 0]


def coset_reps(G, H, side='left'):
    """Deterministic transversal of H in G (least element per coset)."""
    h = H.element_set()
    seen = set()
    reps = []
    for g in G.elements:
        if g in seen:
            continue
        coset = {g * x for x in h} if side == 'left' else {x * g for x in h}
        seen |= coset
        reps.append(min(coset))
    return reps


def double_coset_reps(G, A, B):
    """Representatives of A\\G/B, least element first."""
    a, b = A.element_set(), B.element_set()
    seen = set()
    reps = []
    for g in G.elements:
        if g in seen:
            continue
        dc = {x * g * y for x in a for y in b}
        seen |= dc
        reps.append(min(dc))
    return reps


def coset_space(G, H):
    """The G-set G/H: (labels, act) where labels are least coset reps and
    act(g) gives the image index list of left multiplication by g."""
    h = H.element_set()
    elt_to_idx = {}
    labels = []
    for g in G.elements:
        if g in elt_to_idx:
            continue
        coset = sorted(g * x for x in h)
        idx = len(labels)
        labels.append(coset[0])
        for y in coset:
            elt_to_idx[y] = idx

    def act(g):
        return tuple(elt_to_idx[g * r] for r in labels)

    return labels, act


# ---------------------------------------------------------------------------
# subgroup enumeration


def all_subgroups(G):
    """Every subgroup of G, as a tuple sorted by (order, element list).

    Closure of the cyclic subgroups under pairwise join; fine for the
    orders this library targets (a few hundred at the very most).
    """
    key = 'all_subgroups'
    if key in G._cache:
        return G._cache[key]
    assert G.order <= 1152, 'subgroup enumeration is exhaustive; group too large'
    cyclics = {}
    for g in G.elements:
        els = frozenset(_closure(G.degree, (g,)))
        cyclics.setdefault(els, g)
    seeds = list(cyclics.items())
    found = {frozenset((G.identity,)): ()}
    for els, g in seeds:
        found.setdefault(els, (g,))
    frontier = list(found.items())
    while frontier:
        new = []
        for els, gens in frontier:
            for cels, c in seeds:
                if cels <= els:
                    continue
                joined = frozenset(_closure(G.degree, gens + (c,)))
                if joined not in found:
                    jg = gens + (c,)
                    found[joined] = jg
                    new.append((joined, jg))
        frontier = new
    subs = [G.subgroup(gens=gens if gens else None,
                       elements=tuple(sorted(els)))
            for els, gens in found.items()]
    subs.sort(key=lambda s: (s.order, [x.img for x in s.elements]))
    out = tuple(subs)
    G._cache[key] = out
    return out


def subgroup_classes(G, subs=None):
    """Conjugacy classes of subgroups: list of (representative, members)."""
    if subs is None:
        subs = all_subgroups(G)
    by_set = {s.element_set(): s for s in subs}
    seen = set()
    classes = []
    for s in subs:
        key0 = s.element_set()
        if key0 in seen:
            continue
        orbit_sets = {key0}
        frontier = [key0]
        while frontier:
            nxt = []
            for els in frontier:
                for g in G.gens:
                    conj = frozenset(g * x * ~g for x in els)
                    if conj not in orbit_sets:
                        orbit_sets.add(conj)
                        nxt.append(conj)
            frontier = nxt
        seen |= orbit_sets
        members = sorted((by_set[e] if e in by_set else
                          G.subgroup(elements=tuple(sorted(e))))
                         for e in orbit_sets
                         )
        members = sorted(members, key=lambda t: [x.img for x in t.elements])
        classes.append((members[0], tuple(members)))
    classes.sort(key=lambda c: (c[0].order, [x.img for x in c[0].elements]))
    return classes


def sylow(G, p):
    """A Sylow p-subgroup (deterministic choice)."""
    key = ('sylow', p)
    if key in G._cache:
        return G._cache[key]
    target = 1
    n = G.order
    while n % p == 0:
        n //= p
        target *= p
    # grow a p-subgroup through its normalizer until Sylow order is reached
    P = G.trivial_subgroup()
    while P.order < target:
        N = normalizer(G, P)
        nxt = None
        for g in N.elements:
            if g in P:
                continue
            o = g.order()
            if o % p == 0:
                u = g ** (o // (p ** _valuation(o, p)))
                # u is the p-part of g; P<u> is a p-group since u normalizes P
                cand = G.generated(P.gens + (u,))
                if cand.is_p_group(p) and cand.order > P.order:
                    nxt = cand
                    break
        assert nxt is not None, 'Sylow growth stalled'
        P = nxt
    G._cache[key] = P
    return P


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_subgroups_up_to_conjugacy(G, p):
    """Representatives of the G-classes of p-subgroups, sorted by order.

    Enumerates inside a Sylow p-subgroup and then fuses under G; the
    trivial subgroup comes first.
    """
    key = ('p_subgroup_classes', p)
    if key in G._cache:
        return G._cache[key]
    P = sylow(G, p)
    inside = all_subgroups(P)
    # fuse under G-conjugacy
    seen = set()
    classes = []
    for s in inside:
        if s.element_set() in seen:
            continue
        orbit_sets = set()
        frontier = [s.element_set()]
        orbit_sets.add(s.element_set())
        while frontier:
            nxt = []
            for els in frontier:
                for g in G.gens:
                    conj = frozenset(g * x * ~g for x in els)
                    if conj not in orbit_sets:
                        orbit_sets.add(conj)
                        nxt.append(conj)
            frontier = nxt
        seen |= {e for e in orbit_sets}
        rep_els = min((tuple(sorted(e)) for e in orbit_sets),
                      key=lambda t: [x.img for x in t])
        classes.append(G.subgroup(elements=rep_els))
    classes.sort(key=lambda s: (s.order, [x.img for x in s.elements]))
    out = tuple(classes)
    G._cache[key] = out
    return out


# ---------------------------------------------------------------------------
# homomorphisms and quotients


class GroupHom:
    """A homomorphism between two permutation groups, stored elementwise."""

    def __init__(self, src, dst, mapping):
        self.src = src
        self.dst = dst
        self.mapping = mapping  # dict Perm -> Perm on all of src

    @classmethod
    def from_gen_images(cls, src, dst, images, check=True):
        """Extend generator images to all of src, verifying consistency."""
        m = {src.identity: dst.identity}
        genimg = dict(zip(src.gens, images))
        frontier = [src.identity]
        while frontier:
            nxt = []
            for a in frontier:
                fa = m[a]
                for g, fg in genimg.items():
                    b = a * g
                    fb = fa * fg
                    if b in m:
                        if check and m[b] != fb:
                            raise ValueError('generator images are inconsistent')
                    else:
                        m[b] = fb
                        nxt.append(b)
            frontier = nxt
        if len(m) != src.order:
            raise ValueError('generators do not generate the source')
        return cls(src, dst, m)

    @classmethod
    def identity_map(cls, G):
        return cls(G, G, {g: g for g in G.elements})

    def __call__(self, g):
        return self.mapping[g]

    def __mul__(self, other):
        """Composition self after other."""
        return GroupHom(other.src, self.dst,
                        {g: self.mapping[other.mapping[g]] for g in other.src.elements})

    def image(self):
        return self.dst.subgroup(elements=tuple(sorted(set(self.mapping.values()))))

    def kernel(self):
        e = self.dst.identity
        return self.src.subgroup(elements=[g for g in self.src.elements
                                           if self.mapping[g] == e])

    def is_injective(self):
        return len(set(self.mapping.values())) == self.src.order

    def is_isomorphism(self):
        return self.is_injective() and self.image().order == self.dst.order

    def inverse(self):
        assert self.is_isomorphism()
        return GroupHom(self.dst, self.src, {v: k for k, v in self.mapping.items()})

    def restrict(self, sub):
        return GroupHom(sub, self.dst, {g: self.mapping[g] for g in sub.elements})

    def __eq__(self, other):
        return (isinstance(other, GroupHom) and self.src == other.src
                and self.mapping == other.mapping)

    def __hash__(self):
        return hash((self.src, tuple(sorted(((k.img, v.img) for k, v in self.mapping.items())))))

    def __repr__(self):
        return 'GroupHom(%r -> %r)' % (self.src, self.dst)


def conjugation_hom(S, g, ambient_degree=None):
    """c_g : S -> gSg^-1, x |-> gxg^-1."""
    T = S.conjugate_subgroup(g)
    return GroupHom(S, T, {x: g * x * ~g for x in S.elements})


def isomorphisms(A, B, limit=None):
    """All isomorphisms A -> B by backtracking on generator images.

    Deterministic order.  With limit=1 this is an isomorphism test.
    """
    if A.order != B.order:
        return []
    gens = _small_gens(A)
    orders = [g.order() for g in gens]
    cands = [[b for b in B.elements if b.order() == o] for o in orders]
    out = []

    def extend(i, chosen):
        if limit is not None and len(out) >= limit:
            return
        if i == len(gens):
            try:
                out.append(GroupHom.from_gen_images(
                    A.subgroup(gens=gens) if gens else A, B, chosen))
            except ValueError:
                pass
            return
        for b in cands[i]:
            extend(i + 1, chosen + [b])

    # ensure gens generate A (they do, by construction)
    extend(0, [])
    return out


def _small_gens(G):
    """A short deterministic generating sequence for G."""
    gens = []
    cur = {G.identity}
    for x in sorted(G.elements, key=lambda g: (-g.order(), g.img)):
        if x not in cur:
            gens.append(x)
            cur = set(_closure(G.degree, tuple(gens)))
            if len(cur) == G.order:
                break
    return tuple(gens) if gens else (G.identity,)


class QuotientGroup(PermGroup):
    """G/N as a permutation group on the coset space, with the projection."""

    def __init__(self, G, N):
        assert N.is_normal_in(G), 'quotient by a non-normal subgroup'
        labels, act = coset_space(G, N)
        gens = tuple(Perm(act(g)) for g in G.gens)
        super().__init__(len(labels), gens,
                         name=None)
        self.base = G
        self.kernel_sub = N
        self.coset_labels = labels  # least element of each coset
        self.proj = GroupHom(G, self, {g: Perm(act(g)) for g in G.elements})

    def section(self, q):
        """The least preimage of a quotient element."""
        for g in self.base.elements:
            if self.proj(g) == q:
                return g
        raise ValueError('not a quotient element')


# ---------------------------------------------------------------------------
# direct products


class ProductStructure:
    """Bookkeeping for G x H on the disjoint union of their domains."""

    def __init__(self, G, H):
        self.G = G
        self.H = H
        dG, dH = G.degree, H.degree
        self.degree = dG + dH

        def emb(g, h):
            return Perm(tuple(g.img) + tuple(dG + i for i in h.img))

        self.pair = emb
        gens = ([emb(g, H.identity) for g in G.gens]
                + [emb(G.identity, h) for h in H.gens])
        elements = tuple(sorted(emb(g, h) for g in G.elements for h in H.elements))
        name = None
        if G.name and H.name:
            name = '%s x %s' % (G.name, H.name)
        self.group = PermGroup(self.degree, tuple(gens), elements, name=name)
        self.group._cache['product'] = self

    def left(self, x):
        """First component of an element of G x H."""
        return Perm(x.img[:self.G.degree])

    def right(self, x):
        g = self.G.degree
        return Perm(tuple(i - g for i in x.img[g:]))

    def components(self, x):
        return self.left(x), self.right(x)


def direct_product(G, H):
    return ProductStructure(G, H)


# ---------------------------------------------------------------------------
# catalog


def _cyclic(n):
    """C_n at minimal faithful degree (one cycle per prime power factor)."""
    parts = []
    m = n
    for p in _prime_factors(n):
        q = 1
        while m % p == 0:
            m //= p
            q *= p
        parts.append(q)
    if not parts:
        parts = [1]
    degree = sum(parts)
    off = 0
    img = list(range(degree))
    for q in parts:
        for i in range(q):
            img[off + i] = off + (i + 1) % q
        off += q
    return PermGroup(degree, (Perm(img),), name='C%d' % n)


def _prime_factors(n):
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


def _dihedral(order):
    assert order % 2 == 0 and order >= 4
    n = order // 2
    if n == 2:
        return PermGroup(4, (Perm.from_cycles(4, (0, 1)), Perm.from_cycles(4, (2, 3))), name='D4')
    rot = Perm(tuple((i + 1) % n for i in range(n)))
    ref = Perm(tuple((n - i) % n for i in range(n)))
    return PermGroup(n, (rot, ref), name='D%d' % order)


def _symmetric(n):
    if n == 1:
        return PermGroup(1, (), name='S1')
    gens = (Perm.from_cycles(n, tuple(range(n))), Perm.from_cycles(n, (0, 1)))
    return PermGroup(n, gens, name='S%d' % n)


def _alternating(n):
    if n <= 2:
        return PermGroup(max(n, 1), (), name='A%d' % n)
    threes = [Perm.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return PermGroup(n, tuple(threes), name='A%d' % n)


def _elementary_abelian(q):
    facs = _prime_factors(q)
    assert len(facs) == 1, 'elementary abelian group needs a prime power order'
    p = facs[0]
    k = 0
    m = q
    while m > 1:
        m //= p
        k += 1
    gens = []
    degree = p * k
    for i in range(k):
        img = list(range(degree))
        for j in range(p):
            img[i * p + j] = i * p + (j + 1) % p
        gens.append(Perm(img))
    return PermGroup(degree, tuple(gens), name='E%d' % q)


def catalog_group(label):
    """Standard groups by name: C*, D* (by order), S*, A*, V4, E* (elem. ab.)."""
    label = label.strip()
    if label == 'V4':
        g = _elementary_abelian(4)
        return PermGroup(g.degree, g.gens, g.elements, name='V4')
    kind, num = label[0], label[1:]
    if not num.isdigit():
        raise ValueError('unknown catalog label %r' % label)
    n = int(num)
    if kind == 'C':
        return _cyclic(n)
    if kind == 'D':
        return _dihedral(n)
    if kind == 'S':
        return _symmetric(n)
    if kind == 'A':
        return _alternating(n)
    if kind == 'E':
        return _elementary_abelian(n)
    raise ValueError('unknown catalog label %r' % label)
