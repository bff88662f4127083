"""Block theory of group algebras over finite fields.

Elements of FG are dicts mapping group elements to field codes.  The
center is handled in class-sum coordinates: structure constants are
integer counts reduced into the prime field, and block idempotents come
out of splitting the center along semisimple elements.  The q-power map
on the center is F_q-linear; its fixed subspace has one dimension per
block, which certifies that a splitting run found everything.

Brauer pairs carry a block idempotent of F[C_G(P)] around with the
p-subgroup P.  Containment follows the normal-chain definition, with
uniqueness of subpairs asserted at every step.
"""

import numpy as np

from .groups import (GroupHom, QuotientGroup,
                     centralizer, normalizer, transporter,
                     conjugacy_classes, coset_reps, all_subgroups,
                     p_subgroups_up_to_conjugacy)
from .modules import (algebra_element_operator, conjugate_module,
                      brauer_construction, restrict, hom_space)
from .decompose import simple_modules, is_p_permutation
from . import polys
from .cyclo import Chart, WittRing, _hnf, _lattice_member

__all__ = [
    'alg_mul', 'alg_conjugate', 'augmentation',
    'BlockIdempotent', 'block_idempotents', 'principal_block',
    'brauer_hom', 'defect_group',
    'BrauerPair', 'normal_subpair_below', 'subpair', 'pair_le',
    'pair_conjugate_le', 'pairs_conjugate', 'pair_stabilizer',
    'brauer_pair_poset', 'PairPoset',
    'FusionSystem', 'fusion_system', 'm_brauer_pairs',
    'CocycleClass', 'schur_class', 'kp_class',
    'lift_idempotent_padic',
]


# ---------------------------------------------------------------------------
# group algebra elements as coefficient dicts


def alg_mul(F, a, b):
    """Convolution product of two coefficient dicts."""
    out = {}
    for x, cx in a.items():
        if not cx:
            continue
        for y, cy in b.items():
            if not cy:
                continue
            z = x * y
            c = F.add(out.get(z, 0), F.mul(cx, cy))
            if c:
                out[z] = c
            elif z in out:
                del out[z]
    return out


def alg_conjugate(a, g):
    """g a g^-1 coefficientwise."""
    gi = ~g
    return {g * x * gi: c for x, c in a.items() if c}


def alg_eq(a, b):
    return {x: c for x, c in a.items() if c} == {x: c for x, c in b.items() if c}


def augmentation(F, a):
    s = np.int64(0)
    for c in a.values():
        s = F.add(s, c)
    return s


def _alg_scale(F, c, a):
    if not c:
        return {}
    return {x: F.mul(c, v) for x, v in a.items() if v}


def _alg_add(F, a, b):
    out = dict(a)
    for x, c in b.items():
        v = F.add(out.get(x, 0), c)
        if v:
            out[x] = v
        elif x in out:
            del out[x]
    return out


# ---------------------------------------------------------------------------
# the center in class-sum coordinates


class _CenterAlgebra:
    """Z(FG) with basis the conjugacy class sums."""

    def __init__(self, G, F):
        self.G = G
        self.F = F
        self.classes = conjugacy_classes(G)
        self.r = len(self.classes)
        self.class_index = {}
        for i, (_, members) in enumerate(self.classes):
            for x in members:
                self.class_index[x] = i
        # structure constants: mult[i][k, j] = coefficient of class k in C_i C_j
        p = F.p
        reps = [rep for rep, _ in self.classes]
        counts = np.zeros((self.r, self.r, self.r), dtype=np.int64)
        for i, (_, mi) in enumerate(self.classes):
            for j, (_, mj) in enumerate(self.classes):
                tally = {}
                for x in mi:
                    for y in mj:
                        z = x * y
                        tally[z] = tally.get(z, 0) + 1
                for k, rep in enumerate(reps):
                    counts[i, k, j] = tally.get(rep, 0)
        self.mult = counts % p  # prime-field codes
        self.one = np.zeros(self.r, dtype=np.int64)
        self.one[self.class_index[G.identity]] = 1

    def matrix_of(self, x):
        F = self.F
        out = F.zeros((self.r, self.r))
        for i in range(self.r):
            if x[i]:
                out = F.add(out, F.mul(x[i], self.mult[i]))
        return out

    def mul(self, x, y):
        return self.F.matmul(self.matrix_of(x), y.reshape(-1, 1)).ravel()

    def power(self, x, e):
        out, base = self.one.copy(), x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frobenius_fixed(self):
        """Basis of {x in Z : x^q = x}; one dimension per block."""
        F = self.F
        cols = [self.power(row, F.q) for row in F.eye(self.r)]
        Pq = F.array(np.stack(cols, axis=1))
        return F.kernel(F.sub(Pq, F.eye(self.r)))

    def minpoly_on_ideal(self, z, e):
        """Minimal monic f with f(z) e = 0, low-to-high coefficients."""
        F = self.F
        vs = [e]
        while True:
            nxt = self.mul(z, vs[-1])
            stack = F.array(np.stack(vs, axis=0))
            sol = F.solve(stack.T, nxt.reshape(-1, 1))
            if sol is not None:
                c = sol.ravel()
                return np.concatenate([F.neg(c), np.int64([1])])
            vs.append(nxt)

    def to_dict(self, x):
        out = {}
        for i, (_, members) in enumerate(self.classes):
            if x[i]:
                for g in members:
                    out[g] = np.int64(int(x[i]))
        return out

    def coords_of_dict(self, a):
        x = np.zeros(self.r, dtype=np.int64)
        for g, c in a.items():
            i = self.class_index[g]
            if x[i] == 0:
                x[i] = c
            else:
                assert x[i] == c, 'not a class function'
        # verify constancy on classes
        for i, (_, members) in enumerate(self.classes):
            if x[i]:
                assert all(a.get(g, 0) == x[i] for g in members), \
                    'not a class function'
        return x


# ---------------------------------------------------------------------------
# block idempotents


class BlockIdempotent:
    """A primitive central idempotent of FG, as a coefficient dict."""

    __slots__ = ('group', 'field', 'coeffs', 'primitive', '_key', '_defect')

    def __init__(self, group, field, coeffs, primitive=True):
        self.group = group
        self.field = field
        self.coeffs = {g: np.int64(int(c)) for g, c in coeffs.items() if c}
        self.primitive = primitive
        self._key = None
        self._defect = None

    @property
    def support_size(self):
        return len(self.coeffs)

    def sort_key(self):
        if self._key is None:
            vec = tuple(int(self.coeffs.get(g, 0)) for g in self.group.elements)
            self._key = (len(self.coeffs), vec)
        return self._key

    def is_principal(self):
        return int(augmentation(self.field, self.coeffs)) == 1

    def conjugate(self, g, group=None):
        return BlockIdempotent(group if group is not None else self.group,
                               self.field, alg_conjugate(self.coeffs, g),
                               primitive=self.primitive)

    def __eq__(self, other):
        return (isinstance(other, BlockIdempotent)
                and self.group == other.group and self.field == other.field
                and alg_eq(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.group, self.field,
                     frozenset((g, int(c)) for g, c in self.coeffs.items())))

    def __repr__(self):
        return 'BlockIdempotent(|supp|=%d on %r)' % (self.support_size,
                                                     self.group)


_blocks_cache = {}


def _group_key(G):
    return (G.degree, frozenset(G.element_set()))


def block_idempotents(G, F):
    """The primitive central idempotents of FG, deterministically ordered.

    Splits the center along its q-power-fixed subalgebra; every element
    there is semisimple with totally split minimal polynomial, so plain
    Lagrange interpolation produces exact idempotents.  The dimension of
    the fixed subalgebra equals the number of blocks, which certifies
    completeness and primitivity of the result.
    """
    key = (_group_key(G), F.p, F.k)
    if key in _blocks_cache:
        return _blocks_cache[key]
    Z = _CenterAlgebra(G, F)
    fixed = Z.frobenius_fixed()
    nblocks = len(fixed)
    idems = [Z.one.copy()]
    for y in fixed:
        refined = []
        for e in idems:
            z = Z.mul(e, y)
            f = Z.minpoly_on_ideal(z, e)
            if polys.pdeg(f) <= 1:
                refined.append(e)
                continue
            rts = polys.roots(F, f)
            assert len(rts) == polys.pdeg(f), \
                'semisimple element with a non-split minimal polynomial'
            pieces = []
            for a in rts:
                num = e
                den = np.int64(1)
                for b in rts:
                    if b == a:
                        continue
                    num = Z.mul(num, F.sub(F.array(z), F.mul(b, F.array(e))))
                    den = F.mul(den, F.sub(a, b))
                piece = F.mul(F.inv(den), F.array(num))
                assert np.array_equal(Z.mul(piece, piece), piece)
                assert piece.any()
                pieces.append(piece)
            total = pieces[0]
            for piece in pieces[1:]:
                total = F.add(total, piece)
            assert np.array_equal(total, e), 'Lagrange pieces do not sum back'
            refined.extend(pieces)
        idems = refined
    assert len(idems) == nblocks, \
        'splitting run is incomplete against the fixed-subalgebra count'
    out = []
    for x in idems:
        coeffs = Z.to_dict(x)
        assert alg_eq(alg_mul(F, coeffs, coeffs), coeffs), \
            'center arithmetic disagrees with the group algebra'
        out.append(BlockIdempotent(G, F, coeffs, primitive=True))
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            prod = alg_mul(F, out[i].coeffs, out[j].coeffs)
            assert not prod, 'block idempotents are not orthogonal'
    total = {}
    for e in out:
        total = _alg_add(F, total, e.coeffs)
    assert alg_eq(total, {G.identity: np.int64(1)}), 'blocks do not sum to 1'
    out.sort(key=lambda e: e.sort_key())
    principal = [e for e in out if e.is_principal()]
    assert len(principal) == 1, 'augmentation should pick out one block'
    out = tuple(out)
    _blocks_cache[key] = out
    return out


def principal_block(G, F):
    for e in block_idempotents(G, F):
        if e.is_principal():
            return e
    raise AssertionError('no principal block found')


def dual_block(e):
    """The image of a block under the antipode g -> g^(-1).

    The antipode is an algebra antiautomorphism, so the image is again a
    primitive central idempotent of the same group algebra.
    """
    return BlockIdempotent(e.group, e.field,
                           {~g: c for g, c in e.coeffs.items()},
                           primitive=e.primitive)


# ---------------------------------------------------------------------------
# Brauer homomorphism and defect groups


def _coeffs_of(a):
    return a.coeffs if isinstance(a, BlockIdempotent) else a


def brauer_hom(a, P, group=None, field=None):
    """br_P: truncate a P-fixed element of FG to F[C_G(P)]."""
    if isinstance(a, BlockIdempotent):
        group = group if group is not None else a.group
        field = field if field is not None else a.field
    coeffs = _coeffs_of(a)
    for x in P.gens:
        assert alg_eq(alg_conjugate(coeffs, x), coeffs), \
            'element is not P-fixed'
    C = centralizer(group, P)
    cset = C.element_set()
    return {g: c for g, c in coeffs.items() if g in cset}


def _conjugation_orbits(G, D):
    """Orbits of D acting on G by conjugation."""
    seen = set()
    orbits = []
    for x in G.elements:
        if x in seen:
            continue
        orb = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for d in D.gens:
                    z = d * y * ~d
                    if z not in orb:
                        orb.add(z)
                        nxt.append(z)
            frontier = nxt
        seen |= orb
        orbits.append(sorted(orb))
    return orbits


def _trace_image_rows(G, F, D, Z):
    """Class coordinates of tr_D^G applied to the D-fixed orbit sums."""
    reps = coset_reps(G, D)
    rows = []
    for orb in _conjugation_orbits(G, D):
        t = {}
        for r in reps:
            ri = ~r
            for x in orb:
                y = r * x * ri
                t[y] = t.get(y, 0) + 1
        coeffs = {g: np.int64(c % F.p) for g, c in t.items() if c % F.p}
        rows.append(Z.coords_of_dict(coeffs))
    return F.array(np.stack(rows, axis=0))


def _is_subgroup_up_to_conjugacy(G, A, B):
    """Whether some G-conjugate of A lies in B."""
    if A.order > B.order:
        return False
    bset = B.element_set()
    agens = A.gens
    for g in G.elements:
        gi = ~g
        if all(g * x * gi in bset for x in agens):
            return True
    return False


def defect_group(e):
    """A representative of the defect-group class of the block e.

    Tests e in tr_D^G((FG)^D) for every class of p-subgroups (the
    definition, via exact linear solves), takes the minimal classes, and
    cross-checks against the maximal classes with br_D(e) nonzero.
    """
    if e._defect is not None:
        return e._defect
    G, F = e.group, e.field
    p = F.p
    Z = _CenterAlgebra(G, F)
    target = Z.coords_of_dict(e.coeffs)
    classes = p_subgroups_up_to_conjugacy(G, p)
    alive = [D for D in classes
             if F.in_row_space(_trace_image_rows(G, F, D, Z), target)]
    assert alive, 'a block lies in the image of the Sylow trace'
    minimal = [D for D in alive
               if not any(E.order < D.order
                          and _is_subgroup_up_to_conjugacy(G, E, D)
                          for E in alive)]
    assert len({D.order for D in minimal}) == 1
    for D in minimal[1:]:
        assert transporter(G, D, minimal[0]) is not None, \
            'minimal trace classes are not a single conjugacy class'
    defect = minimal[0]
    # the Brauer-side characterization must agree
    br_alive = [D for D in classes if brauer_hom(e, D)]
    br_max = [D for D in br_alive
              if not any(D.order < E.order
                         and _is_subgroup_up_to_conjugacy(G, D, E)
                         for E in br_alive)]
    assert len(br_max) == 1 and br_max[0].order == defect.order
    assert transporter(G, br_max[0], defect) is not None, \
        'trace and Brauer characterizations of the defect group disagree'
    # normal p-subgroups sit inside every defect group
    dset = defect.element_set()
    for N in classes:
        if N.is_normal_in(G):
            assert N.element_set() <= dset, \
                'normal p-subgroup outside a defect group'
    e._defect = defect
    return defect


# ---------------------------------------------------------------------------
# Brauer pairs


class BrauerPair:
    """(P, e): a p-subgroup with a block of F[C_G(P)], inside ambient G."""

    __slots__ = ('group', 'P', 'e')

    def __init__(self, group, P, e):
        self.group = group
        self.P = P
        self.e = e

    @property
    def field(self):
        return self.e.field

    def conjugate(self, g):
        Pg = self.P.conjugate_subgroup(g)
        Cg = centralizer(self.group, Pg)
        return BrauerPair(self.group, Pg, self.e.conjugate(g, group=Cg))

    def key(self):
        return (frozenset(self.P.element_set()),
                frozenset((g, int(c)) for g, c in self.e.coeffs.items()))

    def __eq__(self, other):
        return (isinstance(other, BrauerPair) and self.group == other.group
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.group, self.key()))

    def __repr__(self):
        return 'BrauerPair(|P|=%d, |supp e|=%d)' % (self.P.order,
                                                    self.e.support_size)


def centralizer_blocks(G, F, P):
    """Blocks of F[C_G(P)], cached through the main block cache."""
    return block_idempotents(centralizer(G, P), F)


def pair_stabilizer(pair):
    """N_G(P, e): the stabilizer of the pair under conjugation."""
    G, P = pair.group, pair.P
    N = normalizer(G, P)
    fixed = [n for n in N.elements
             if alg_eq(alg_conjugate(pair.e.coeffs, n), pair.e.coeffs)]
    H = G.subgroup(elements=tuple(sorted(fixed)))
    C = centralizer(G, P)
    pc = G.generated(tuple(P.gens) + tuple(C.gens))
    assert pc.is_subgroup_of(H) and H.is_subgroup_of(N), \
        'stabilizer should sit between PC_G(P) and N_G(P)'
    return H


def normal_le(small, big):
    """The one-step containment (Q,f) normal-in (P,e)."""
    G, F = big.group, big.field
    Q, P = small.P, big.P
    if not Q.is_subgroup_of(P):
        return False
    # P must normalize Q and fix f
    for x in P.gens:
        if not all(x * q * ~x in Q.element_set() for q in Q.gens):
            return False
        if not alg_eq(alg_conjugate(small.e.coeffs, x), small.e.coeffs):
            return False
    t = brauer_hom(small.e.coeffs, P, group=G, field=F)
    return alg_eq(alg_mul(F, t, big.e.coeffs), big.e.coeffs)


def normal_subpair_below(pair, Q):
    """The unique (Q, f) normal in (P, e); Q must be normal in P."""
    G, F, P = pair.group, pair.field, pair.P
    found = []
    for f in centralizer_blocks(G, F, Q):
        cand = BrauerPair(G, Q, f)
        if normal_le(cand, pair):
            found.append(cand)
    assert len(found) == 1, \
        'normal subpair not unique (%d found)' % len(found)
    return found[0]


def subpair(pair, Q):
    """The unique Brauer pair (Q, f) <= (P, e), for any Q <= P."""
    P = pair.P
    assert Q.is_subgroup_of(P), 'subpair of a non-subgroup'
    chain = [Q]
    while chain[-1].order < P.order:
        cur = chain[-1]
        nxt = P.subgroup(elements=tuple(sorted(
            x for x in P.elements
            if all(x * q * ~x in cur.element_set() for q in cur.gens))))
        assert nxt.order > cur.order, 'normalizer chain stalled'
        chain.append(nxt)
    cur = pair
    for H in reversed(chain[:-1]):
        cur = normal_subpair_below(cur, H)
    return cur


def pair_le(small, big):
    """Containment of Brauer pairs (transitive closure of the normal one)."""
    if not small.P.is_subgroup_of(big.P):
        return False
    return subpair(big, small.P) == small


def pairs_conjugate(a, b):
    """Whether two Brauer pairs lie in one G-orbit."""
    G = a.group
    if a.P.order != b.P.order:
        return False
    for g in transporter_all(G, a.P, b.P):
        if alg_eq(alg_conjugate(a.e.coeffs, g), b.e.coeffs):
            return True
    return False


def transporter_all(G, A, B):
    """All g with g A g^-1 = B."""
    aset, bset = A.element_set(), B.element_set()
    if len(aset) != len(bset):
        return
    for g in G.elements:
        gi = ~g
        if all(g * x * gi in bset for x in aset):
            yield g


def pair_conjugate_le(small, big):
    """Whether some G-conjugate of `small` is contained in `big`."""
    G = small.group
    Q, P = small.P, big.P
    if Q.order > P.order:
        return False
    pset = P.element_set()
    seen = set()
    for g in G.elements:
        gi = ~g
        moved = frozenset(g * x * gi for x in Q.element_set())
        if not (moved <= pset) or moved in seen:
            continue
        seen.add(moved)
        # all blocks occurring as g-conjugates of small.e over this image
        for h in G.elements:
            if frozenset(h * x * ~h for x in Q.element_set()) == moved:
                if pair_le(small.conjugate(h), big):
                    return True
    return False


class PairPoset:
    """The B-Brauer pairs at class representatives, with the order data."""

    def __init__(self, block, pairs, maximal):
        self.block = block
        self.pairs = pairs
        self.maximal = maximal

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


def brauer_pair_poset(block):
    """All B-Brauer pairs (P, f) with P a class representative.

    Membership in the block is br_P(e_B) f = f.  Checks along the way:
    (1, e_B) sits below every pair, and the maximal pairs are exactly
    those with P a defect group, forming one conjugacy class.
    """
    G, F = block.group, block.field
    pairs = []
    for P in p_subgroups_up_to_conjugacy(G, F.p):
        t = brauer_hom(block, P)
        for f in centralizer_blocks(G, F, P):
            if alg_eq(alg_mul(F, t, f.coeffs), f.coeffs):
                pairs.append(BrauerPair(G, P, f))
    trivial = G.trivial_subgroup()
    assert BrauerPair(G, trivial, block) in pairs
    for pair in pairs:
        assert subpair(pair, trivial).e == block, \
            'pair does not lie over the block idempotent'
    D = defect_group(block)
    maximal = [pair for pair in pairs if pair.P.order == D.order]
    for pair in maximal:
        assert transporter(G, pair.P, D) is not None
    for i in range(1, len(maximal)):
        assert pairs_conjugate(maximal[0], maximal[i]), \
            'maximal pairs do not form a single class'
    # maximality really is cut out by the defect group
    for pair in pairs:
        dominated = any(big.P.order > pair.P.order
                        and pair_conjugate_le(pair, big) for big in pairs)
        assert dominated == (pair.P.order < D.order), \
            'poset maximality disagrees with the defect group'
    return PairPoset(block, pairs, maximal)


# ---------------------------------------------------------------------------
# fusion systems


class FusionSystem:
    """The fusion system of a block at a chosen maximal Brauer pair."""

    def __init__(self, block, max_pair):
        self.block = block
        self.group = block.group
        self.field = block.field
        self.base = max_pair.P
        self.max_pair = max_pair
        self._sub_idem = {}
        self._homs = {}
        self.subgroups = all_subgroups(self.base)
        for Q in self.subgroups:
            self._sub_idem[Q.element_set()] = subpair(max_pair, Q)

    def pair_at(self, Q):
        return self._sub_idem[Q.element_set()]

    def hom(self, Q, R):
        """Hom_F(Q, R): conjugation maps c_g with (Q,e_Q)^g <= (R,e_R)."""
        key = (Q.element_set(), R.element_set())
        if key in self._homs:
            return self._homs[key]
        G = self.group
        pq, pr = self.pair_at(Q), self.pair_at(R)
        rset = R.element_set()
        maps = {}
        for g in G.elements:
            gi = ~g
            if not all(g * x * gi in rset for x in Q.gens):
                continue
            mapping = tuple((x, g * x * gi) for x in Q.elements)
            if mapping in maps:
                continue
            if pair_le(pq.conjugate(g), pr):
                maps[mapping] = GroupHom(Q, R, dict(mapping))
        out = tuple(maps.values())
        self._homs[key] = out
        return out

    def isomorphic_subgroups(self, Q):
        """All F-isomorphic images of Q inside the base."""
        out = []
        seen = set()
        for phi in self.hom(Q, self.base):
            img = frozenset(phi(x) for x in Q.elements)
            if img not in seen:
                seen.add(img)
                out.append(self.base.subgroup(elements=tuple(sorted(img))))
        return out

    def _local_order(self, kind, Q):
        D = self.base
        qset = Q.element_set()
        if kind == 'cent':
            els = [x for x in D.elements
                   if all(x * q == q * x for q in Q.gens)]
        else:
            els = [x for x in D.elements
                   if all(x * q * ~x in qset for q in Q.gens)]
        return D.subgroup(elements=tuple(sorted(els)))

    def centralizer_in_base(self, Q):
        return self._local_order('cent', Q)

    def normalizer_in_base(self, Q):
        return self._local_order('norm', Q)

    def is_fully_centralized(self, Q):
        c = self.centralizer_in_base(Q).order
        return all(self.centralizer_in_base(Q2).order <= c
                   for Q2 in self.isomorphic_subgroups(Q))

    def is_fully_normalized(self, Q):
        n = self.normalizer_in_base(Q).order
        return all(self.normalizer_in_base(Q2).order <= n
                   for Q2 in self.isomorphic_subgroups(Q))

    def is_centric(self, Q):
        for Q2 in self.isomorphic_subgroups(Q):
            zq = {x for x in Q2.elements
                  if all(x * y == y * x for y in Q2.gens)}
            if self.centralizer_in_base(Q2).element_set() != zq:
                return False
        return True


def fusion_system(block, max_pair=None):
    if max_pair is None:
        poset = brauer_pair_poset(block)
        max_pair = min(poset.maximal, key=lambda p: p.e.sort_key())
    D = defect_group(block)
    assert max_pair.P.order == D.order, 'fusion system needs a maximal pair'
    return FusionSystem(block, max_pair)


# ---------------------------------------------------------------------------
# Brauer pairs of a p-permutation module


def m_brauer_pairs(M, check_ppermutation=True):
    """The pairs (P, e) with e M(P) nonzero, at class representatives."""
    if check_ppermutation:
        assert is_p_permutation(M), 'Brauer pairs ask for a p-permutation module'
    G, F = M.group, M.field
    out = []
    for P in p_subgroups_up_to_conjugacy(G, F.p):
        C = centralizer(G, P)
        MP = brauer_construction(M, P)
        if MP.dim == 0:
            continue
        MPC = restrict(MP, C)
        for f in centralizer_blocks(G, F, P):
            op = algebra_element_operator(MPC, f.coeffs)
            if F.rank(op) > 0:
                out.append(BrauerPair(G, P, f))
    return out


# ---------------------------------------------------------------------------
# Schur and Kuelshammer-Puig classes


class CocycleClass:
    """A normalized 2-cocycle with values in F_q^x, stored as exponents.

    The table maps pairs of group elements to integers mod q-1 (discrete
    logs with respect to the field generator).  Equality of classes is
    decided by solving the coboundary system over Z/(q-1).
    """

    def __init__(self, group, field, table):
        self.group = group
        self.field = field
        self.modulus = field.q - 1
        one = group.identity
        self.table = {k: int(v) % max(self.modulus, 1)
                      for k, v in table.items()}
        for x in group.elements:
            assert self.table.get((one, x), 0) == 0
            assert self.table.get((x, one), 0) == 0
        self._check_cocycle()

    def _check_cocycle(self):
        m = self.modulus
        if m <= 1:
            return
        t = self.table
        for x in self.group.elements:
            for y in self.group.elements:
                for z in self.group.elements:
                    lhs = t.get((x, y), 0) + t.get((x * y, z), 0)
                    rhs = t.get((y, z), 0) + t.get((x, y * z), 0)
                    assert (lhs - rhs) % m == 0, 'not a 2-cocycle'

    def value(self, x, y):
        return self.table.get((x, y), 0)

    def mul(self, other):
        assert self.group == other.group and self.field == other.field
        t = {k: self.value(*k) + other.value(*k)
             for k in set(self.table) | set(other.table)}
        return CocycleClass(self.group, self.field, t)

    def inverse(self):
        return CocycleClass(self.group, self.field,
                            {k: -v for k, v in self.table.items()})

    def pullback(self, hom):
        """The cocycle alpha(hom(x), hom(y)) on hom's source."""
        src = hom.src
        t = {(x, y): self.value(hom(x), hom(y))
             for x in src.elements for y in src.elements}
        return CocycleClass(src, self.field, t)

    def is_trivial(self):
        zero = CocycleClass(self.group, self.field, {})
        return cohomologous(self, zero)

    def __repr__(self):
        nz = sum(1 for v in self.table.values() if v)
        return 'CocycleClass(|G|=%d, %d nonzero entries mod %d)' % (
            len(self.group), nz, self.modulus)


def cohomologous(a, b):
    """Whether a and b differ by a coboundary, over Z/(q-1)."""
    assert a.group == b.group and a.modulus == b.modulus
    m = a.modulus
    if m <= 1:
        return True
    els = [x for x in a.group.elements if not x.is_identity()]
    if not els:
        return True
    idx = {x: i for i, x in enumerate(els)}
    nvar = len(els)
    rows = []
    target = []
    for x in a.group.elements:
        for y in a.group.elements:
            if x.is_identity() or y.is_identity():
                continue
            row = [0] * nvar
            row[idx[x]] += 1
            row[idx[y]] += 1
            z = x * y
            if not z.is_identity():
                row[idx[z]] -= 1
            rows.append(row)
            target.append((a.value(x, y) - b.value(x, y)) % m)
    # solvable mod m iff target lies in the column lattice of [A | mI]
    cols = [[rows[r][c] for r in range(len(rows))] for c in range(nvar)]
    for r in range(len(rows)):
        col = [0] * len(rows)
        col[r] = m
        cols.append(col)
    H = _hnf(cols)
    return _lattice_member(H, target) is not None


def schur_class(V, N, I):
    """The obstruction class of the I-stable simple F[N]-module V, on I/N.

    Intertwiners T_g with T_g rho(n) = rho(g n g^-1) T_g are chosen on a
    section of I/N; the failure of T to be multiplicative is the cocycle.
    """
    F = V.field
    assert N.is_normal_in(I), 'Schur class needs N normal in I'
    ends = hom_space(V, V)
    assert len(ends) == 1, 'module is not split simple'
    Ibar = QuotientGroup(I, N)
    sect = {q: Ibar.section(q) for q in Ibar.elements}
    assert sect[Ibar.identity] == I.identity
    T = {}
    for q in Ibar.elements:
        if q.is_identity():
            T[q] = F.eye(V.dim)
            continue
        g = sect[q]
        hs = hom_space(conjugate_module(V, g, N), V)
        assert len(hs) == 1, 'conjugate module not isomorphic: V is not I-stable'
        Tg = hs[0]
        assert F.rank(Tg) == V.dim
        T[q] = Tg
    table = {}
    for x in Ibar.elements:
        for y in Ibar.elements:
            n = ~sect[x * y] * sect[x] * sect[y]
            assert n in N.element_set()
            M1 = F.matmul(T[x], T[y])
            M2 = F.matmul(T[x * y], V.matrix(n))
            pos = np.argwhere(M2 != 0)
            assert len(pos), 'degenerate intertwiner'
            i, j = pos[0]
            c = F.mul(M1[i, j], F.inv(M2[i, j]))
            assert np.array_equal(M1, F.mul(c, M2)), \
                'intertwiner ratio is not scalar'
            table[(x, y)] = F.log(c) if int(c) != 1 else 0
    return CocycleClass(Ibar, F, table)


def kp_class(pair):
    """The Kuelshammer-Puig class of a self-centralizing Brauer pair.

    Built as the Schur class of the unique simple F[PC_G(P)]e-module
    with respect to PC_G(P) normal in N_G(P, e).
    """
    G, F, P, e = pair.group, pair.field, pair.P, pair.e
    C = centralizer(G, P)
    zp = P.center()
    e_as_c_block = BlockIdempotent(C, F, e.coeffs)
    D = defect_group(e_as_c_block)
    assert D.order == zp.order and transporter(C, D, zp) is not None, \
        'pair is not self-centralizing'
    PC = G.generated(tuple(P.gens) + tuple(C.gens))
    # e is a block idempotent of F[PC] as well
    for x in PC.gens:
        assert alg_eq(alg_conjugate(e.coeffs, x), e.coeffs)
    I = pair_stabilizer(pair)
    assert PC.is_normal_in(I)
    simples = []
    for V in simple_modules(PC, F):
        op = algebra_element_operator(V, e.coeffs)
        r = F.rank(op)
        if r:
            assert r == V.dim
            simples.append(V)
    assert len(simples) == 1, \
        'self-centralizing block should have a unique simple module'
    return schur_class(simples[0], PC, I)


# ---------------------------------------------------------------------------
# p-adic lifting


def lift_idempotent_padic(e, precision):
    """Lift a block idempotent to the unramified ring at given precision.

    Newton iteration x <- 3x^2 - 2x^3 on the coefficient dict; returns
    (witt_ring, coefficient dict with Witt-vector values).
    """
    F = e.field
    W = WittRing(Chart(F), precision)

    def wmul(a, b):
        out = {}
        for x, cx in a.items():
            for y, cy in b.items():
                z = x * y
                v = W.mul(cx, cy)
                out[z] = W.add(out.get(z, W.zero()), v)
        return {k: v for k, v in out.items() if any(v)}

    def wcomb(three_sq, minus_two_cube):
        out = {}
        for k in set(three_sq) | set(minus_two_cube):
            v = W.add(three_sq.get(k, W.zero()), minus_two_cube.get(k, W.zero()))
            if any(v):
                out[k] = v
        return out

    x = {g: W.from_field(c) for g, c in e.coeffs.items()}
    for _ in range(precision.bit_length() + 2):
        sq = wmul(x, x)
        if sq == x:
            break
        cube = wmul(sq, x)
        x = wcomb({k: W.scale(3, v) for k, v in sq.items()},
                  {k: W.scale(-2, v) for k, v in cube.items()})
    assert wmul(x, x) == x, 'Newton iteration failed to converge'
    assert alg_eq({g: W.to_field(v) for g, v in x.items()}, e.coeffs), \
        'lift does not reduce to the input idempotent'
    for g in e.group.gens:
        gi = ~g
        assert {g * k * gi: v for k, v in x.items()} == x, 'lift is not central'
    return W, x
