"""Module and bimodule classes over a finite abelian base.

A class is a pair (H, psi): a subgroup of the base together with an
alternating bicharacter on H, stored on the canonical generators of H.
Sums of classes carry integer multiplicities.  The two tensor products
(one-sided over a fixed base, and the relative product of bimodule
classes over a shared middle factor) both follow the same pattern:
cut out a fiber, take an orthogonal complement, push the pairing down
to the image.  Every descent is checked explicitly and every
multiplicity is computed by two independent formulas; a disagreement
is an internal error, never bad input.

The translation into Lagrangian subgroups of the hyperbolic extension
(tau / sigma / the correspondence functor) lives here as well, along
with the concrete Brauer-Picard group: isometries of A + A*, their
bimodule classes, and the simple-object bookkeeping per component.
"""

from collections import namedtuple
from math import gcd, isqrt

from .abelian import all_subgroups, solve_mod
from .errors import InvalidData, NotInvertible
from .lagrangian import LagCorrespondence, _slice_part
from .quadratic import (
    DEFAULT_CAP,
    Bicharacter,
    QmodZ,
    hyperbolic,
    orthogonal_group,
    pairing,
)


def _coords_in(sub, elem):
    """Coordinates of an ambient element on the canonical generators
    of sub.  The element must belong to sub."""
    abstract, emb = sub.decompose()
    sol = solve_mod(emb.matrix, list(elem), sub.group.moduli)
    if sol is None:
        raise InvalidData("element lies outside the subgroup")
    return abstract.reduce(sol)


class ModCatClass:
    """A pair (H, psi) over a fixed base group.

    psi is an alternating bicharacter on the abstract form of H, i.e.
    its value table is indexed by the canonical generators of H.
    """

    __slots__ = ("base", "subgroup", "psi")

    def __init__(self, base, subgroup, psi):
        if subgroup.group != base:
            raise InvalidData("subgroup does not live in the base group")
        abstract, _ = subgroup.decompose()
        if psi.group != abstract:
            raise InvalidData("bicharacter is not on the canonical generators")
        if not psi.is_alternating():
            raise InvalidData("bicharacter must be alternating")
        self.base = base
        self.subgroup = subgroup
        self.psi = psi

    def psi_value(self, x, y):
        """psi on two ambient elements of H."""
        return self.psi.evaluate(
            _coords_in(self.subgroup, x), _coords_in(self.subgroup, y)
        )

    def opposite(self):
        return ModCatClass(self.base, self.subgroup, -self.psi)

    def sort_key(self):
        return (
            self.subgroup.basis,
            tuple(tuple((v.num, v.den) for v in row) for row in self.psi.rows),
        )

    def __eq__(self, other):
        if not isinstance(other, ModCatClass):
            return NotImplemented
        return (
            self.base == other.base
            and self.subgroup == other.subgroup
            and self.psi == other.psi
        )

    def __hash__(self):
        return hash((self.base, self.subgroup, self.psi))

    def __repr__(self):
        return "ModCatClass(base={!r}, H order {}, psi={!r})".format(
            self.base, self.subgroup.order, self.psi
        )


def modcat_class(base, gens, entries=()):
    """Build a class from generating rows and upper-triangular psi
    entries (i, j, value) indexed by the canonical generators."""
    sub = base.subgroup(gens)
    abstract, _ = sub.decompose()
    return ModCatClass(base, sub, Bicharacter.from_upper(abstract, entries))


class ModCatSum:
    """Multiset of classes with positive integer multiplicities."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        merged = {}
        for mult, cls in terms:
            if not isinstance(mult, int) or mult <= 0:
                raise InvalidData("multiplicities must be positive integers")
            merged[cls] = merged.get(cls, 0) + mult
        self.terms = tuple(
            sorted(((m, c) for c, m in merged.items()), key=lambda t: t[1].sort_key())
        )

    def single(self):
        """The unique class with multiplicity one, if the sum is one."""
        if len(self.terms) != 1 or self.terms[0][0] != 1:
            raise NotInvertible("sum is not a single multiplicity-one class")
        return self.terms[0][1]

    def total_multiplicity(self):
        return sum(m for m, _ in self.terms)

    def __add__(self, other):
        return ModCatSum(self.terms + other.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ModCatSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return "ModCatSum({})".format(
            " + ".join("{}*{!r}".format(m, c) for m, c in self.terms) or "0"
        )


def modcat_opposite(m):
    """Same subgroup, negated bicharacter."""
    return m.opposite()


def is_invertible_modcat(a, m):
    if m.base != a:
        raise InvalidData("class lives over a different base")
    return m.psi.is_nondegenerate()


def _descend(pair, p_sub, u, target):
    """Push the pairing on p_sub forward along u onto target = u(p_sub).

    Descent must be well defined here; a failure means a broken caller,
    so it raises RuntimeError rather than InvalidData.
    """
    pabs, pemb = p_sub.decompose()
    comp = pemb.then(u)
    tabs, temb = target.decompose()
    lifts = []
    for h in temb.matrix:
        c = solve_mod(comp.matrix, list(h), u.target.moduli)
        if c is None:
            raise RuntimeError("image generator has no lift")
        lifts.append(pemb(pabs.reduce(c)))
    for kg in comp.kernel().gens:
        kelt = pemb(kg)
        for pg in pemb.matrix:
            if pair.evaluate(kelt, pg):
                raise RuntimeError("bicharacter does not descend")
    rows = [[pair.evaluate(x, y) for y in lifts] for x in lifts]
    return Bicharacter(tabs, rows)


def modcat_tensor(a, m1, m2):
    """Tensor product of two classes over the same base.

    The intersection H1 n H2 sits antidiagonally inside H1 + H2; its
    orthogonal complement under psi1 x psi2 maps onto the resulting
    subgroup via (h1, h2) -> h1 + h2, carrying the descended pairing.
    The multiplicity is the number of common radical elements of the
    intersection, cross-checked against the complement count.
    """
    if m1.base != a or m2.base != a:
        raise InvalidData("classes live over different base groups")
    h1, h2 = m1.subgroup, m2.subgroup
    ab1, emb1 = h1.decompose()
    ab2, emb2 = h2.decompose()
    pair = m1.psi.block_sum(m2.psi)
    dgrp = pair.group
    inter = h1.intersect(h2)
    anti_rows = []
    for x in inter.gens:
        c1 = _coords_in(h1, x)
        c2 = _coords_in(h2, x)
        anti_rows.append(tuple(ab1.neg(c1)) + tuple(c2))
    perp = pair.complement(dgrp.subgroup(anti_rows))
    u = dgrp.hom(a, [list(r) for r in emb1.matrix] + [list(r) for r in emb2.matrix])
    h_res = a.subgroup([u(g) for g in perp.gens])
    psi_res = _descend(pair, perp, u, h_res)
    rad1 = a.subgroup([emb1(r) for r in m1.psi.radical().gens])
    rad2 = a.subgroup([emb2(r) for r in m2.psi.radical().gens])
    mult = inter.intersect(rad1).intersect(rad2).order
    if mult * h1.order * h2.order != perp.order * inter.order:
        raise RuntimeError("multiplicity formulas disagree")
    return ModCatSum([(mult, ModCatClass(a, h_res, psi_res))])


def modcat_restrict(a, m, b):
    """Restriction of scalars to a subgroup B of the base.

    Returns [A : B + H] copies of (H n B, psi restricted), expressed
    over the abstract form of B.
    """
    if m.base != a or b.group != a:
        raise InvalidData("restriction data does not match the base")
    mult = a.order // b.sum_with(m.subgroup).order
    babs, bemb = b.decompose()
    hb = m.subgroup.intersect(b)
    sub_b = babs.subgroup([_coords_in(b, x) for x in hb.gens])
    sabs, semb = sub_b.decompose()
    rows = [
        [m.psi_value(bemb(x), bemb(y)) for y in semb.matrix] for x in semb.matrix
    ]
    return ModCatSum([(mult, ModCatClass(babs, sub_b, Bicharacter(sabs, rows)))])


def equivariantization_decompose(a, bgrp, phi, xi):
    """Decomposition attached to a homomorphism phi: B -> A and an
    alternating bicharacter xi on B (graded spaces equivariant under
    B acting through phi, with 2-cocycle xi).

    K = ker(phi); its xi-complement maps onto the resulting subgroup,
    xi descends; multiplicity |K n Rad(xi)| = |K| |K-perp| / |B|.
    """
    if phi.source != bgrp or phi.target != a:
        raise InvalidData("homomorphism endpoints do not match")
    if xi.group != bgrp:
        raise InvalidData("bicharacter is not on B")
    if not xi.is_alternating():
        raise InvalidData("bicharacter must be alternating")
    k = phi.kernel()
    kperp = xi.complement(k)
    h = a.subgroup([phi(x) for x in kperp.gens])
    psi = _descend(xi, kperp, phi, h)
    mult = k.intersect(xi.radical()).order
    if mult * bgrp.order != k.order * kperp.order:
        raise RuntimeError("multiplicity formulas disagree")
    return ModCatSum([(mult, ModCatClass(a, h, psi))])


def unit_bimodule(a):
    """The identity bimodule class over (A, A): diagonal subgroup,
    zero bicharacter."""
    amb = a.direct_sum(a)
    k = a.rank
    diag = amb.subgroup(
        [tuple(1 if j == i else 0 for j in range(k)) * 2 for i in range(k)]
    )
    abstract, _ = diag.decompose()
    return ModCatClass(amb, diag, Bicharacter.zero(abstract))


def bimodcat_tensor(a1, a2, a3, m, mp):
    """Relative tensor product of a class over A1 + A2 with a class
    over A2 + A3, landing over A1 + A3.

    The fiber is cut out by matching middle components; the middle
    kernel K (elements lying in both factors through A2) embeds into
    it, and the complement of K inside the fiber projects onto the
    result.  The multiplicity is computed by the direct count and by
    the annihilator formula; the two must agree.
    """
    amb12 = a1.direct_sum(a2)
    amb23 = a2.direct_sum(a3)
    if m.base != amb12 or mp.base != amb23:
        raise InvalidData("bimodule bases are not chained")
    k1, k2, k3 = a1.rank, a2.rank, a3.rank
    h, hp = m.subgroup, mp.subgroup
    ab1, emb1 = h.decompose()
    ab2, emb2 = hp.decompose()
    pair = m.psi.block_sum(mp.psi)
    dgrp = pair.group
    mid_rows = [list(r[k1:]) for r in emb1.matrix] + [
        [-x for x in r[:k2]] for r in emb2.matrix
    ]
    fib = dgrp.hom(a2, mid_rows).kernel()
    s1 = _slice_part(h, k1, k1 + k2, a2)
    s2 = _slice_part(hp, 0, k2, a2)
    ksub = s1.intersect(s2)
    krows = []
    for x in ksub.gens:
        c1 = _coords_in(h, (0,) * k1 + tuple(x))
        c2 = _coords_in(hp, tuple(x) + (0,) * k3)
        krows.append(tuple(c1) + tuple(c2))
    p_sub = pair.complement(dgrp.subgroup(krows)).intersect(fib)
    amb13 = a1.direct_sum(a3)
    u = dgrp.hom(
        amb13,
        [list(r[:k1]) + [0] * k3 for r in emb1.matrix]
        + [[0] * k1 + list(r[k2:]) for r in emb2.matrix],
    )
    h_res = amb13.subgroup([u(g) for g in p_sub.gens])
    psi_res = _descend(pair, p_sub, u, h_res)
    num = ksub.order * p_sub.order * a2.order
    den = h.order * hp.order
    if num % den:
        raise RuntimeError("multiplicity is not an integer")
    mult = num // den
    pr1 = a2.subgroup([r[k1:] for r in h.basis])
    pr2 = a2.subgroup([r[:k2] for r in hp.basis])
    ann = pr1.annihilator().intersect(pr2.annihilator())
    alt = ksub.order * p_sub.order * ann.order
    if alt != mult * fib.order:
        raise RuntimeError("multiplicity formulas disagree")
    return ModCatSum([(mult, ModCatClass(amb13, h_res, psi_res))])


def bimodcat_tensor_sum(a1, a2, a3, msum, mpsum):
    """Bilinear extension of bimodcat_tensor to sums."""
    out = []
    for cm, cls in msum:
        for cp, clsp in mpsum:
            for mult, res in bimodcat_tensor(a1, a2, a3, cls, clsp):
                out.append((cm * cp * mult, res))
    return ModCatSum(out)


def tau(a, m):
    """The Lagrangian subgroup of A + A* attached to a class (H, psi):
    pairs (h, z) where z restricts on H to psi(h, -), together with
    the annihilator of H in the dual slot."""
    if m.base != a:
        raise InvalidData("class lives over a different base")
    hyp = hyperbolic(a)
    k = a.rank
    abstract, emb = m.subgroup.decompose()
    gens_h = emb.matrix
    L = a.exponent if a.rank else 1
    # coefficient of z_t in L * <z, h_j>
    mat = [
        [(hj[t] * (L // a.moduli[t])) % L for hj in gens_h] for t in range(k)
    ]
    rows = []
    for i, hi in enumerate(gens_h):
        target = [m.psi.rows[i][j].scaled(L) for j in range(len(gens_h))]
        z = solve_mod(mat, target, [L] * len(gens_h))
        if z is None:
            raise RuntimeError("generator admits no dual lift")
        rows.append(tuple(hi) + a.dual().reduce(z))
    for r in m.subgroup.annihilator().basis:
        rows.append((0,) * k + tuple(r))
    sub = hyp.group.subgroup(rows)
    if not hyp.is_lagrangian(sub):
        raise RuntimeError("lift of the class is not Lagrangian")
    return sub


def sigma(a, lag):
    """Inverse of tau: project a Lagrangian to A, read psi off lifts."""
    hyp = hyperbolic(a)
    if lag.group != hyp.group:
        raise InvalidData("subgroup does not live in A + A*")
    if not hyp.is_lagrangian(lag):
        raise InvalidData("subgroup is not Lagrangian")
    k = a.rank
    h = a.subgroup([r[:k] for r in lag.basis])
    abstract, emb = h.decompose()
    proj = [list(r[:k]) for r in lag.basis]
    lifts = []
    for hi in emb.matrix:
        c = solve_mod(proj, list(hi), a.moduli)
        if c is None:
            raise RuntimeError("projection lost a generator")
        full = lag.group.reduce(
            tuple(
                sum(c[s] * lag.basis[s][t] for s in range(len(lag.basis)))
                for t in range(2 * k)
            )
        )
        lifts.append(full[k:])
    rows = [[pairing(a, z, hj) for hj in emb.matrix] for z in lifts]
    psi = Bicharacter(abstract, rows)
    if not psi.is_alternating():
        raise RuntimeError("lifted pairing is not alternating")
    return ModCatClass(a, h, psi)


def enumerate_modcat_classes(a):
    """Every class over a: all subgroups, all alternating bicharacters."""
    for sub in all_subgroups(a):
        abstract, _ = sub.decompose()
        ms = abstract.moduli
        pairs = [(i, j) for i in range(len(ms)) for j in range(i + 1, len(ms))]
        gcds = [gcd(ms[i], ms[j]) for i, j in pairs]

        def emit(pos, entries):
            if pos == len(pairs):
                yield ModCatClass(
                    a, sub, Bicharacter.from_upper(abstract, tuple(entries))
                )
                return
            i, j = pairs[pos]
            for c in range(gcds[pos]):
                if c:
                    entries.append((i, j, QmodZ(c, gcds[pos])))
                yield from emit(pos + 1, entries)
                if c:
                    entries.pop()

        yield from emit(0, [])


def random_modcat_class(a, rng):
    """A random class: random generating set, random alternating psi."""
    sub = a.subgroup([a.random_element(rng) for _ in range(rng.randrange(4))])
    abstract, _ = sub.decompose()
    ms = abstract.moduli
    entries = []
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            g = gcd(ms[i], ms[j])
            c = rng.randrange(g)
            if c:
                entries.append((i, j, QmodZ(c, g)))
    return ModCatClass(a, sub, Bicharacter.from_upper(abstract, entries))


def t_functor(a1, a2, m):
    """The correspondence attached to a bimodule class: reorder the
    Lagrangian lift into (x1, f1, x2, -f2) coordinates."""
    amb = a1.direct_sum(a2)
    if m.base != amb:
        raise InvalidData("class does not live over the declared pair")
    lag = tau(amb, m)
    k1, k2 = a1.rank, a2.rank
    e1, e2 = hyperbolic(a1), hyperbolic(a2)
    big = e1.inverse().direct_sum(e2).group
    rows = []
    for r in lag.basis:
        x1, x2 = r[:k1], r[k1 : k1 + k2]
        f1, f2 = r[k1 + k2 : 2 * k1 + k2], r[2 * k1 + k2 :]
        nf2 = tuple((-v) % n for v, n in zip(f2, a2.moduli))
        rows.append(x1 + f1 + x2 + nf2)
    return LagCorrespondence(e1, e2, [(1, big.subgroup(rows))])


def t_functor_sum(a1, a2, msum):
    """Additive extension of t_functor."""
    terms = []
    for mult, cls in msum:
        corr = t_functor(a1, a2, cls)
        for cm, sub in corr.terms:
            terms.append((mult * cm, sub))
    return LagCorrespondence(hyperbolic(a1), hyperbolic(a2), terms)


def brpic_from_isometry(a, g):
    """The invertible bimodule class whose correspondence is the graph
    of an isometry g of A + A*."""
    hyp = hyperbolic(a)
    if not hyp.is_isometry(g):
        raise InvalidData("not an isometry of the hyperbolic group")
    k = a.rank
    amb = a.direct_sum(a)
    big = hyperbolic(amb).group
    rows = []
    for i in range(2 * k):
        e = tuple(1 if j == i else 0 for j in range(2 * k))
        v = g(e)
        nf2 = tuple((-x) % n for x, n in zip(v[k:], a.moduli))
        rows.append(e[:k] + v[:k] + e[k:] + nf2)
    return sigma(amb, big.subgroup(rows))


BrPicGroup = namedtuple("BrPicGroup", "isometries classes table")


def brpic_group(a, cap=DEFAULT_CAP):
    """The Brauer-Picard group of the base, presented concretely.

    Enumerates O(A + A*), attaches the bimodule class of each isometry,
    and certifies that composition of isometries matches the relative
    tensor product of the classes.  Returns the elements, their
    classes, and the multiplication table (i, j) -> index of product.
    """
    hyp = hyperbolic(a)
    isos = orthogonal_group(hyp, cap)
    classes = [brpic_from_isometry(a, g) for g in isos]
    index = {g: i for i, g in enumerate(isos)}
    table = {}
    for i, gi in enumerate(isos):
        for j, gj in enumerate(isos):
            k = index[gi.then(gj)]
            prod = bimodcat_tensor(a, a, a, classes[i], classes[j])
            if prod != ModCatSum([(1, classes[k])]):
                raise RuntimeError("tensor product strays from the group law")
            table[i, j] = k
    return BrPicGroup(isos, classes, table)


def simple_count(a, g):
    """Number of simple objects in the component attached to g: the
    dual elements whose image under g has no group part."""
    hyp = hyperbolic(a)
    if not hyp.is_isometry(g):
        raise InvalidData("not an isometry of the hyperbolic group")
    k = a.rank
    zero = (0,) * k
    count = 0
    for f in a.dual().elements():
        if g(zero + tuple(f))[:k] == zero:
            count += 1
    return count


FPDims = namedtuple("FPDims", "count fpdim_squared integral")


def fpdim_simples(a, g):
    """Each simple in the g-component has squared dimension
    |A| / count; kept symbolically together with a squareness flag."""
    count = simple_count(a, g)
    if a.order % count:
        raise RuntimeError("simple count does not divide the group order")
    d = a.order // count
    r = isqrt(d)
    return FPDims(count, d, r * r == d)


def is_integral_brpic(a, g):
    return fpdim_simples(a, g).integral
