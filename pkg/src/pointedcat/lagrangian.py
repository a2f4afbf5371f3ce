"""Lagrangian correspondences between metric groups.

A morphism from (E1, q1) to (E2, q2) is a formal nonnegative-integer
combination of Lagrangian subgroups of (E1 + E2, -q1 + q2).  Composing
single Lagrangians projects a fiber intersection and weights it by the
exact count of middle elements over a point, which is the order of a
subgroup, never a sampled number.
"""

from __future__ import annotations

from .abelian import Homomorphism
from .errors import InvalidData, NotInvertible


class LagCorrespondence:
    """Formal sum of Lagrangians in source^{-1} + target."""

    __slots__ = ("source", "target", "ambient", "terms")

    def __init__(self, source, target, terms):
        ambient = source.inverse().direct_sum(target)
        merged = {}
        for mult, sub in terms:
            mult = int(mult)
            if mult <= 0:
                raise InvalidData("multiplicities must be positive")
            if sub.group != ambient.group:
                raise InvalidData("term does not live in source^{-1} + target")
            if not ambient.is_lagrangian(sub):
                raise InvalidData("term is not Lagrangian for -q1 + q2")
            merged[sub] = merged.get(sub, 0) + mult
        self.source = source
        self.target = target
        self.ambient = ambient
        self.terms = tuple(
            (merged[sub], sub) for sub in sorted(merged, key=lambda s: s.basis)
        )

    def single(self):
        """The unique underlying Lagrangian of a multiplicity-1 morphism."""
        if len(self.terms) != 1 or self.terms[0][0] != 1:
            raise NotInvertible("morphism is not a single multiplicity-1 Lagrangian")
        return self.terms[0][1]

    def __add__(self, other):
        if self.source != other.source or self.target != other.target:
            raise InvalidData("cannot add morphisms between different objects")
        return LagCorrespondence(
            self.source, self.target, list(self.terms) + list(other.terms)
        )

    def __eq__(self, other):
        return (
            isinstance(other, LagCorrespondence)
            and self.source == other.source
            and self.target == other.target
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.source, self.target, self.terms))

    def __repr__(self):
        return "LagCorrespondence(%d term(s): %s)" % (
            len(self.terms),
            ", ".join("%d*order%d" % (m, s.order) for m, s in self.terms),
        )


def identity_corr(metric):
    """The diagonal of E + E, the unit of composition."""
    group = metric.group
    k = group.rank
    gens = []
    for i in range(k):
        e = tuple(1 if j == i else 0 for j in range(k))
        gens.append(e + e)
    ambient = metric.inverse().direct_sum(metric)
    return LagCorrespondence(
        metric, metric, [(1, ambient.group.subgroup(gens))]
    )


def _slice_part(sub, lo, hi, target_group):
    """Elements of sub supported in coordinates [lo, hi), as a subgroup
    of the factor they live in."""
    group = sub.group
    k = group.rank
    window = group.subgroup(
        [tuple(1 if j == i else 0 for j in range(k)) for i in range(lo, hi)]
    )
    cut = sub.intersect(window)
    return target_group.subgroup([r[lo:hi] for r in cut.basis if any(r[lo:hi])])


def middle_multiplicity(lag_l, lag_m, e1, e2, e3):
    """|(L n E2) n (M n E2)|: the number of middle points over any
    element of the composed Lagrangian."""
    k1, k2 = e1.group.rank, e2.group.rank
    from_l = _slice_part(lag_l, k1, k1 + k2, e2.group)
    from_m = _slice_part(lag_m, 0, k2, e2.group)
    return from_l.intersect(from_m).order


def compose_single(lag_m, lag_l, e1, e2, e3):
    """(composite Lagrangian, multiplicity) for single Lagrangians
    L: E1 -> E2 and M: E2 -> E3."""
    k1, k2, k3 = e1.group.rank, e2.group.rank, e3.group.rank
    big = e1.group.direct_sum(e2.group).direct_sum(e2.group).direct_sum(e3.group)
    z = lambda n: (0,) * n
    gens = [r + z(k2 + k3) for r in lag_l.basis] + [z(k1 + k2) + r for r in lag_m.basis]
    both = big.subgroup(gens)
    # the locus where the two middle coordinates agree
    diag_gens = (
        [tuple(1 if j == i else 0 for j in range(k1)) + z(2 * k2 + k3) for i in range(k1)]
        + [
            z(k1)
            + tuple(1 if j == i else 0 for j in range(k2)) * 2
            + z(k3)
            for i in range(k2)
        ]
        + [z(k1 + 2 * k2) + tuple(1 if j == i else 0 for j in range(k3)) for i in range(k3)]
    )
    fiber = both.intersect(big.subgroup(diag_gens))
    out_group = e1.group.direct_sum(e3.group)
    composite = out_group.subgroup(
        [r[:k1] + r[k1 + 2 * k2 :] for r in fiber.basis]
    )
    if composite.order * e2.order != lag_l.order * lag_m.order:
        raise RuntimeError(
            "composite order %d violates |M || L|/|E2|" % composite.order
        )
    return composite, middle_multiplicity(lag_l, lag_m, e1, e2, e3)


def compose(m_corr, l_corr):
    """m_corr after l_corr, bilinearly, with multiplicity weights."""
    if l_corr.target != m_corr.source:
        raise InvalidData("correspondences are not composable")
    e1, e2, e3 = l_corr.source, l_corr.target, m_corr.target
    terms = []
    for cl, lag_l in l_corr.terms:
        for cm, lag_m in m_corr.terms:
            comp, m = compose_single(lag_m, lag_l, e1, e2, e3)
            terms.append((cl * cm * m, comp))
    return LagCorrespondence(e1, e3, terms)


def graph_of_isometry(source, g, target=None):
    """The graph {(x, g(x))} as a correspondence source -> target."""
    target = source if target is None else target
    if not source.is_isometry(g, target):
        raise InvalidData("not an isometry between the given metric groups")
    k = source.group.rank
    gens = [
        tuple(1 if j == i else 0 for j in range(k)) + g.matrix[i] for i in range(k)
    ]
    ambient = source.inverse().direct_sum(target)
    return LagCorrespondence(source, target, [(1, ambient.group.subgroup(gens))])


def corr_to_isometry(corr):
    """Invert graph_of_isometry.  Raises NotInvertible unless the
    morphism is a single multiplicity-1 Lagrangian meeting both factors
    trivially."""
    lag = corr.single()
    e1, e2 = corr.source, corr.target
    k1, k2 = e1.group.rank, e2.group.rank
    if _slice_part(lag, 0, k1, e1.group).order > 1:
        raise NotInvertible("correspondence meets the source factor")
    if _slice_part(lag, k1, k1 + k2, e2.group).order > 1:
        raise NotInvertible("correspondence meets the target factor")
    rows = []
    basis = [list(r) for r in lag.basis]
    for i in range(k1):
        e = [1 if j == i else 0 for j in range(k1)]
        sol = _solve_prefix(basis, e, e1.group.moduli, k1)
        if sol is None:
            raise NotInvertible("graph does not cover the source")
        rows.append(e2.group.reduce(sol[k1:]))
    g = Homomorphism(e1.group, e2.group, rows)
    if not e1.is_isometry(g, e2):
        raise RuntimeError("recovered map is not an isometry")
    return g


def _solve_prefix(basis, prefix, prefix_moduli, k1):
    """Find an element of the lattice spanned by basis whose first k1
    coordinates equal prefix modulo prefix_moduli; returns the full
    vector or None."""
    from .abelian import solve_mod

    mat = [row[:k1] for row in basis]
    c = solve_mod(mat, list(prefix), list(prefix_moduli))
    if c is None:
        return None
    full = [
        sum(c[t] * basis[t][j] for t in range(len(basis)))
        for j in range(len(basis[0]))
    ]
    return full
