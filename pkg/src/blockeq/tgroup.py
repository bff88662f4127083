"""Virtual p-permutation modules and the ghost embedding.

A virtual module is an integer combination of honest modules over one
group.  Equality in the Grothendieck group is decided through ghost
vectors: Brauer characters of block-cut Brauer constructions, one entry
per representative Brauer pair.  That route is exact and deterministic;
the randomized decomposition machinery is used only to read coordinates
in the standard basis, never to decide equality.
"""

from .groups import (normalizer, centralizer, all_subgroups, subgroup_classes,
                     p_subgroups_up_to_conjugacy, direct_product,
                     QuotientGroup)
from .modules import (restrict, induce, inflate, deflate, brauer_construction,
                      cut_by_idempotent)
from .decompose import decompose, is_isomorphic, vertex
from .blocks import (block_idempotents, alg_conjugate, alg_eq, brauer_hom,
                     BlockIdempotent)
from .tensors import tensor_over_group, op_bimodule
from .chars import brauer_character, ClassFunction

__all__ = ['VirtualModule', 'virtual', 't_map', 'restrict_T', 'induce_T',
           'inflate_T', 'deflate_T', 'cut_T', 'tensor_over_group_T',
           'dual_T', 'brauer_construction_T', 'brauer_pair_family',
           'GhostVector', 'ghost_vector', 't_equal', 'appearing_summands',
           'standard_basis_coordinates']


class VirtualModule:
    """An integer combination of modules over one group.

    cut, when present, is the pair of block idempotents (left, right)
    whose bimodule category the terms live in.  It rides along as a tag
    for the equivalence machinery; arithmetic only demands that tags
    agree when both sides carry one.
    """

    def __init__(self, group, terms, cut=None):
        clean = []
        for c, M in terms:
            c = int(c)
            assert M.group == group, 'term over the wrong group'
            if c and M.dim:
                clean.append((c, M))
        self.group = group
        self.terms = tuple(clean)
        self.cut = cut

    @property
    def field(self):
        for _, M in self.terms:
            return M.field
        return None

    def _join_cut(self, other):
        if self.cut is None:
            return other.cut
        if other.cut is not None:
            assert self.cut == other.cut, 'mismatched block cuts'
        return self.cut

    def __add__(self, other):
        assert isinstance(other, VirtualModule)
        assert other.group == self.group
        return VirtualModule(self.group, self.terms + other.terms,
                             self._join_cut(other))

    def __neg__(self):
        return VirtualModule(self.group, [(-c, M) for c, M in self.terms],
                             self.cut)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        return VirtualModule(self.group,
                             [(a * c, M) for c, M in self.terms], self.cut)

    def to_json(self):
        out = {'terms': [{'coeff': c, 'module': M.to_json()}
                         for c, M in self.terms]}
        if self.cut is not None:
            left, right = self.cut
            out['cut'] = {'left_block': _block_json(left),
                          'right_block': _block_json(right)}
        return out

    def __repr__(self):
        return 'VirtualModule(|G|=%d, %d terms)' % (self.group.order,
                                                    len(self.terms))


def _block_json(e):
    return {'support': [[int(i) for i in g.img] for g in sorted(e.coeffs)],
            'coeffs': [int(e.coeffs[g]) for g in sorted(e.coeffs)]}


def virtual(M, cut=None):
    """The class of a single module."""
    return VirtualModule(M.group, [(1, M)], cut)


# ---------------------------------------------------------------------------
# linear extensions of module operations


def t_map(omega, f, group, cut=None):
    """Apply a module operation to every term."""
    return VirtualModule(group, [(c, f(M)) for c, M in omega.terms], cut)


def restrict_T(omega, H):
    return t_map(omega, lambda M: restrict(M, H), H)


def induce_T(omega, G):
    return t_map(omega, lambda M: induce(M, G), G)


def inflate_T(omega, G, proj):
    return t_map(omega, lambda M: inflate(M, G, proj), G)


def deflate_T(omega, N, quotient=None):
    if quotient is None:
        quotient = QuotientGroup(omega.group, N)
    return t_map(omega, lambda M: deflate(M, N, quotient), quotient)


def cut_T(omega, coeffs, cut=None):
    """Cut every term by a central idempotent of the group algebra."""
    return t_map(omega, lambda M: cut_by_idempotent(M, coeffs), omega.group,
                 cut)


def tensor_over_group_T(w1, w2, prod_left=None, prod_right=None,
                        prod_out=None):
    """Bilinear extension of the tensor product over the middle group."""
    terms = []
    for c1, M in w1.terms:
        for c2, N in w2.terms:
            terms.append((c1 * c2,
                          tensor_over_group(M, N, prod_left, prod_right,
                                            prod_out)))
    group = prod_out.group if prod_out is not None else None
    if group is None:
        for _, M in terms:
            group = M.group
            break
    assert group is not None, 'need prod_out when the product is empty'
    return VirtualModule(group, terms)


def dual_T(omega, prod=None, prod_op=None):
    """Linear extension of the bimodule dual; swaps a block-cut tag."""
    if prod is None:
        prod = omega.group._cache.get('product')
        assert prod is not None, 'not a module over a direct product'
    if prod_op is None:
        prod_op = direct_product(prod.H, prod.G)
    cut = None
    if omega.cut is not None:
        left, right = omega.cut
        cut = (right, left)
    return VirtualModule(prod_op.group,
                         [(c, op_bimodule(M, prod, prod_op))
                          for c, M in omega.terms], cut)


def brauer_construction_T(omega, X, cut=None, ambient=None):
    """Linear extension of the Brauer construction at the p-subgroup X.

    cut, when given, is a central idempotent of the ambient group algebra
    (a BlockIdempotent or a plain coefficient dict); it is pushed through
    the construction as its image under br_X and applied afterwards, so
    the result is the X-construction of the cut module.
    """
    if hasattr(X, 'sub'):
        X = X.sub
    G = omega.group
    if ambient is None:
        ambient = normalizer(G, X)
    cut_coeffs = None
    if cut is not None:
        cut_coeffs = brauer_hom(cut, X, group=G, field=omega.field)
    terms = []
    for c, M in omega.terms:
        MX = brauer_construction(M, X, ambient=ambient)
        if cut_coeffs is not None and MX.dim:
            MX = cut_by_idempotent(restrict(MX, ambient), cut_coeffs)
        terms.append((c, MX))
    return VirtualModule(ambient, terms)


# ---------------------------------------------------------------------------
# ghost vectors


def _perm_root(M):
    while getattr(M, '_parent', None) is not None \
            and M._parent.group == M.group:
        M = M._parent
    return M if M.is_permutation_backed else None


def _support_subgroups(omegas):
    """Conjugacy representatives of p-subgroups that can carry a nonzero
    Brauer construction of any term of the given virtual modules.

    Terms here are permutation modules or idempotent cuts of permutation
    modules; the construction at P embeds into the span of the P-fixed
    points of the backing, so subgroups of point stabilizers cover the
    support.  An untracked matrix term falls back to every p-subgroup.
    """
    group = None
    field = None
    for omega in omegas:
        if omega.terms:
            group = omega.group
            field = omega.field
            break
    if group is None:
        return []
    p = field.p
    roots = []
    for omega in omegas:
        for _, M in omega.terms:
            root = _perm_root(M)
            if root is None:
                return [P for P in p_subgroups_up_to_conjugacy(group, p)]
            roots.append(root)
    stab_sets = set()
    for root in roots:
        n = len(root.points)
        stabs = [[] for _ in range(n)]
        for g in group.elements:
            pi = root.perm(g)
            for i in range(n):
                if pi[i] == i:
                    stabs[i].append(g)
        stab_sets.update(frozenset(s) for s in stabs)
    cand = {}
    for els in stab_sets:
        S = group.subgroup(elements=tuple(sorted(els)))
        for T in all_subgroups(S):
            o = T.order
            while o % p == 0:
                o //= p
            if o == 1:
                cand.setdefault(T.element_set(), T)
    classes = subgroup_classes(group, subs=list(cand.values()))
    return [rep for rep, _ in classes]


def brauer_pair_family(G, F, subs=None):
    """Representatives of the G-classes of Brauer pairs, as a list of
    (P, e, N_G(P, e)) with P drawn from the given subgroup representatives
    (all p-subgroup classes by default)."""
    if subs is None:
        subs = p_subgroups_up_to_conjugacy(G, F.p)
    fam = []
    for P in subs:
        C = centralizer(G, P)
        blocks = block_idempotents(C, F)
        N = normalizer(G, P)
        seen = set()
        for j, e in enumerate(blocks):
            if j in seen:
                continue
            fixed = []
            for n in N.elements:
                conj = alg_conjugate(e.coeffs, n)
                if alg_eq(conj, e.coeffs):
                    fixed.append(n)
                else:
                    for k, e2 in enumerate(blocks):
                        if k != j and k not in seen \
                                and alg_eq(conj, e2.coeffs):
                            seen.add(k)
                            break
            stab = G.subgroup(elements=tuple(sorted(fixed)))
            fam.append((P, e, stab))
    return fam


def _ghost_entries(omega, fam):
    entries = []
    cache = {}
    for P, e, stab in fam:
        total = None
        for c, M in omega.terms:
            key = (id(M), P.element_set())
            MP = cache.get(key)
            if MP is None:
                MP = cache[key] = brauer_construction(M, P)
            if MP.dim == 0:
                continue
            piece = cut_by_idempotent(restrict(MP, stab), e.coeffs)
            if piece.dim == 0:
                continue
            bc = brauer_character(piece).scale(c)
            total = bc if total is None else total + bc
        if total is None:
            total = ClassFunction(stab, {})
        entries.append(total)
    return entries


class GhostVector:
    """The family of Brauer characters of cut Brauer constructions over
    representative Brauer pairs; zero exactly for the zero element."""

    def __init__(self, group, fam, entries):
        self.group = group
        self.fam = tuple(fam)
        self.entries = tuple(entries)

    def is_zero(self):
        return all(not e for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, GhostVector) or self.group != other.group:
            return False
        if len(self.fam) != len(other.fam):
            return False
        for (P, e, _), (P2, e2, _) in zip(self.fam, other.fam):
            if P.element_set() != P2.element_set() or e != e2:
                return False
        return all(a == b for a, b in zip(self.entries, other.entries))

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def to_json(self):
        out = []
        for (P, e, stab), ent in zip(self.fam, self.entries):
            out.append({'subgroup': [[int(i) for i in g.img]
                                     for g in P.gens],
                        'subgroup_order': P.order,
                        'block': _block_json(e),
                        'entry': ent.to_json()})
        return out


def ghost_vector(omega, fam=None):
    """The ghost vector of a virtual module over its support family."""
    if fam is None:
        if omega.field is None:
            return GhostVector(omega.group, [], [])
        fam = brauer_pair_family(omega.group, omega.field,
                                 _support_subgroups([omega]))
    return GhostVector(omega.group, fam, _ghost_entries(omega, fam))


def t_equal(w1, w2):
    """Equality in the Grothendieck group, decided through ghost vectors.

    Entries at pairs whose subgroup fixes no point of any term's backing
    vanish on both sides, so the comparison runs over the union of the
    two support families and is still exact.
    """
    assert w1.group == w2.group, 'different groups'
    f1, f2 = w1.field, w2.field
    if f1 is None and f2 is None:
        return True
    assert f1 is None or f2 is None or f1 == f2, 'different fields'
    field = f1 if f1 is not None else f2
    subs = _support_subgroups([w1, w2])
    fam = brauer_pair_family(w1.group, field, subs)
    return _ghost_entries(w1, fam) == _ghost_entries(w2, fam)


# ---------------------------------------------------------------------------
# standard basis


def appearing_summands(omega):
    """Net coefficients of the indecomposable summands of the terms, as a
    list of (coefficient, representative) with zero net entries dropped."""
    reps = []
    counts = []
    for c, M in omega.terms:
        for piece in decompose(M):
            for i, R in enumerate(reps):
                if piece.dim == R.dim and is_isomorphic(piece, R):
                    counts[i] += c
                    break
            else:
                reps.append(piece)
                counts.append(c)
    return [(n, R) for n, R in zip(counts, reps) if n]


def standard_basis_coordinates(omega):
    """Coordinates of omega in the standard basis of classes of
    indecomposable p-permutation modules.

    Labels name the vertex, the dimension of the module and of its Brauer
    construction at the vertex (the projective part seen by the local
    correspondent); a counter separates distinct isomorphism classes that
    share all three.
    """
    out = {}
    for n, R in appearing_summands(omega):
        V = vertex(R)
        green = brauer_construction(R, V)
        base = 'vertex %d | local dim %d | dim %d' % (V.order, green.dim,
                                                      R.dim)
        label = base
        k = 1
        while label in out:
            k += 1
            label = base + ' #%d' % k
        out[label] = n
    return out
