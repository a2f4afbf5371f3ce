"""Module/bimodule class calculus: tensor products, tau/sigma, the
correspondence functor, and the concrete Brauer-Picard group."""

import random

import pytest

from pointedcat.abelian import FinAbGroup
from pointedcat.errors import InvalidData
from pointedcat.lagrangian import compose, identity_corr
from pointedcat.modcat import (
    ModCatClass,
    ModCatSum,
    bimodcat_tensor,
    bimodcat_tensor_sum,
    brpic_from_isometry,
    brpic_group,
    enumerate_modcat_classes,
    equivariantization_decompose,
    fpdim_simples,
    is_integral_brpic,
    is_invertible_modcat,
    modcat_class,
    modcat_opposite,
    modcat_restrict,
    modcat_tensor,
    random_modcat_class,
    sigma,
    simple_count,
    t_functor,
    t_functor_sum,
    tau,
    unit_bimodule,
)
from pointedcat.quadratic import (
    QmodZ,
    det_square_class,
    enumerate_lagrangians,
    hyperbolic,
    is_special,
    orthogonal_group,
)

Z2 = FinAbGroup([2])
Z3 = FinAbGroup([3])
Z4 = FinAbGroup([4])
V4 = FinAbGroup([2, 2])
Z33 = FinAbGroup([3, 3])
Z24 = FinAbGroup([2, 4])
TRIV = FinAbGroup([])


def unit_class(a):
    return modcat_class(a, [])


def full_rows(a):
    k = a.rank
    return [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]


def test_opposite():
    m = modcat_class(Z33, full_rows(Z33), [(0, 1, QmodZ(1, 3))])
    op = modcat_opposite(m)
    assert op.psi.rows[0][1] == QmodZ(2, 3)
    assert modcat_opposite(op) == m
    flat = modcat_class(Z4, [(2,)])
    assert modcat_opposite(flat) == flat


def test_tensor_unit_law_exhaustive():
    for base in (Z4, V4, Z33):
        unit = unit_class(base)
        for m in enumerate_modcat_classes(base):
            assert modcat_tensor(base, unit, m) == ModCatSum([(1, m)])
            assert modcat_tensor(base, m, unit) == ModCatSum([(1, m)])


def test_tensor_regular_square_z2():
    m = modcat_class(Z2, [(1,)])
    assert modcat_tensor(Z2, m, m) == ModCatSum([(2, m)])


def test_invertible_times_opposite_is_unit():
    for base in (Z2, Z4, V4, Z24):
        unit = ModCatSum([(1, unit_class(base))])
        seen = 0
        for m in enumerate_modcat_classes(base):
            if not is_invertible_modcat(base, m):
                continue
            seen += 1
            assert modcat_tensor(base, m, modcat_opposite(m)) == unit
        assert seen >= 1


def test_invertibles_form_group():
    # as many invertible classes as alternating pairings on the dual
    for base, expected in ((V4, 2), (Z4, 1), (Z24, 2)):
        invs = [
            m for m in enumerate_modcat_classes(base) if is_invertible_modcat(base, m)
        ]
        assert len(invs) == expected
        for x in invs:
            for y in invs:
                mult, res = modcat_tensor(base, x, y).terms[0]
                assert mult == 1
                assert res in invs


def test_is_invertible_examples():
    assert not is_invertible_modcat(Z2, modcat_class(Z2, [(1,)]))
    assert is_invertible_modcat(Z2, unit_class(Z2))
    nd = modcat_class(Z33, full_rows(Z33), [(0, 1, QmodZ(1, 3))])
    assert is_invertible_modcat(Z33, nd)


def test_restrict_whole_and_trivial():
    m = modcat_class(Z4, [(2,)])
    whole = modcat_restrict(Z4, m, Z4.full_subgroup())
    assert whole == ModCatSum([(1, m)])
    to_zero = modcat_restrict(Z4, m, Z4.trivial_subgroup())
    assert to_zero.terms[0][0] == 2  # index of H
    assert to_zero.terms[0][1].subgroup.order == 1


def test_restrict_z4_to_even_part():
    m = modcat_class(Z4, [(2,)])
    res = modcat_restrict(Z4, m, Z4.subgroup([(2,)]))
    (mult, cls), = res.terms
    assert mult == 2
    assert cls.base == FinAbGroup([2])
    assert cls.subgroup.order == 2
    assert not any(v for row in cls.psi.rows for v in row)


def test_restrict_carries_psi():
    m = modcat_class(Z33, full_rows(Z33), [(0, 1, QmodZ(1, 3))])
    res = modcat_restrict(Z33, m, Z33.subgroup([(1, 0)]))
    (mult, cls), = res.terms
    assert mult == 1
    assert cls.subgroup.order == 3
    assert not any(v for row in cls.psi.rows for v in row)  # rank one


def test_equivariantization_injective():
    phi = Z2.hom(Z4, [(2,)])
    from pointedcat.quadratic import Bicharacter

    res = equivariantization_decompose(Z4, Z2, phi, Bicharacter.zero(Z2))
    (mult, cls), = res.terms
    assert mult == 1
    assert cls.subgroup == Z4.subgroup([(2,)])


def test_equivariantization_zero_map():
    from pointedcat.quadratic import Bicharacter

    phi = V4.hom(Z3, [(0,), (0,)])
    res = equivariantization_decompose(Z3, V4, phi, Bicharacter.zero(V4))
    (mult, cls), = res.terms
    assert mult == 4
    assert cls.subgroup.order == 1


def test_equivariantization_collapse():
    from pointedcat.quadratic import Bicharacter

    phi = V4.hom(Z2, [(1,), (0,)])
    res = equivariantization_decompose(Z2, V4, phi, Bicharacter.zero(V4))
    (mult, cls), = res.terms
    assert mult == 2
    assert cls.subgroup.order == 2


def test_equivariantization_nondegenerate_cocycle():
    from pointedcat.quadratic import Bicharacter

    xi = Bicharacter.from_upper(V4, [(0, 1, QmodZ(1, 2))])
    phi = V4.hom(Z3, [(0,), (0,)])
    res = equivariantization_decompose(Z3, V4, phi, xi)
    (mult, cls), = res.terms
    assert mult == 1
    assert cls.subgroup.order == 1


def test_bimod_unit_laws_exhaustive():
    amb = Z2.direct_sum(Z4)
    for m in enumerate_modcat_classes(amb):
        right = bimodcat_tensor(Z2, Z4, Z4, m, unit_bimodule(Z4))
        assert right == ModCatSum([(1, m)])
        left = bimodcat_tensor(Z2, Z2, Z4, unit_bimodule(Z2), m)
        assert left == ModCatSum([(1, m)])


def test_bimod_base_mismatch():
    with pytest.raises(InvalidData):
        bimodcat_tensor(Z2, Z4, Z2, unit_bimodule(Z2), unit_bimodule(Z2))


def test_bimod_reduces_to_one_sided_pairing():
    # with trivial outer groups the relative product collapses to a
    # plain number: the same count the one-sided tensor spreads over
    # its resulting class
    for a in (Z3, Z4, V4):
        classes = list(enumerate_modcat_classes(a))
        for m1 in classes:
            for m2 in classes:
                bim = bimodcat_tensor(TRIV, a, TRIV, m1, m2)
                (mult, cls), = bim.terms
                assert cls.subgroup.order == 1
                (m_one, res), = modcat_tensor(a, m1, m2).terms
                assert mult == m_one * (a.order // res.subgroup.order)


def test_bimod_multiplicity_formulas_random():
    rng = random.Random(20260822)
    pools = [(), (2,), (3,), (4,), (2, 2)]
    for _ in range(200):
        a1, a2, a3 = (FinAbGroup(rng.choice(pools)) for _ in range(3))
        m = random_modcat_class(a1.direct_sum(a2), rng)
        mp = random_modcat_class(a2.direct_sum(a3), rng)
        res = bimodcat_tensor(a1, a2, a3, m, mp)
        assert res.total_multiplicity() >= 1


def test_tau_extreme_classes():
    for a in (Z4, V4):
        hyp = hyperbolic(a)
        k = a.rank
        whole = modcat_class(a, full_rows(a))
        expected = hyp.group.subgroup(
            [tuple(r) + (0,) * k for r in full_rows(a)]
        )
        assert tau(a, whole) == expected
        nothing = modcat_class(a, [])
        expected_dual = hyp.group.subgroup(
            [(0,) * k + tuple(r) for r in full_rows(a)]
        )
        assert tau(a, nothing) == expected_dual


def test_tau_sigma_roundtrip_and_counts():
    counts = []
    for a in (Z2, Z3, Z4, V4):
        classes = list(enumerate_modcat_classes(a))
        for m in classes:
            lag = tau(a, m)
            assert sigma(a, lag) == m
        lags = enumerate_lagrangians(hyperbolic(a))
        for lag in lags:
            back = tau(a, sigma(a, lag))
            assert back == lag
        assert len(classes) == len(lags)
        counts.append(len(classes))
    assert counts == [2, 2, 3, 6]


def test_sigma_rejects_non_lagrangian():
    with pytest.raises(InvalidData):
        sigma(Z2, hyperbolic(Z2).group.full_subgroup())


def test_t_unit_is_identity():
    for a in (Z2, V4, FinAbGroup([6])):
        corr = t_functor(a, a, unit_bimodule(a))
        assert corr == identity_corr(hyperbolic(a))


def test_t_functoriality_random():
    rng = random.Random(7)
    pools = [(), (2,), (3,), (4,), (2, 2)]
    for _ in range(30):
        a1, a2, a3 = (FinAbGroup(rng.choice(pools)) for _ in range(3))
        m = random_modcat_class(a1.direct_sum(a2), rng)
        mp = random_modcat_class(a2.direct_sum(a3), rng)
        prod = bimodcat_tensor(a1, a2, a3, m, mp)
        lhs = t_functor_sum(a1, a3, prod)
        rhs = compose(t_functor(a2, a3, mp), t_functor(a1, a2, m))
        assert lhs == rhs


def test_brpic_counts_and_identity():
    for a, size in ((Z2, 2), (Z3, 4)):
        bp = brpic_group(a)
        assert len(bp.isometries) == size
        ident = hyperbolic(a).group.identity_hom()
        i0 = bp.isometries.index(ident)
        for j in range(size):
            assert bp.table[i0, j] == j
            assert bp.table[j, i0] == j


def test_brpic_identity_gives_unit():
    for a in (Z2, Z4, V4):
        g = hyperbolic(a).group.identity_hom()
        assert brpic_from_isometry(a, g) == unit_bimodule(a)


def test_simple_count_identity():
    for a in (Z4, V4):
        g = hyperbolic(a).group.identity_hom()
        assert simple_count(a, g) == a.order
        dims = fpdim_simples(a, g)
        assert dims == (a.order, 1, True)


def test_simple_count_swap_z2():
    hyp = hyperbolic(Z2)
    g = hyp.group.hom(hyp.group, [(0, 1), (1, 0)])
    assert simple_count(Z2, g) == 1
    dims = fpdim_simples(Z2, g)
    assert dims.fpdim_squared == 2 and not dims.integral
    assert not is_integral_brpic(Z2, g)
    assert det_square_class(hyp, g) == 2


def test_simple_count_z4_half_kernel():
    hyp = hyperbolic(Z4)
    hits = [g for g in orthogonal_group(hyp) if simple_count(Z4, g) == 2]
    if not hits:
        pytest.skip("no isometry of A + A* with a half-size kernel here")
    for g in hits:
        assert fpdim_simples(Z4, g).fpdim_squared == 2


def test_integral_iff_special():
    for a in (Z2, Z3, Z4, V4):
        hyp = hyperbolic(a)
        for g in orthogonal_group(hyp):
            assert is_integral_brpic(a, g) == is_special(hyp, g)


def test_orthogonal_order_multiplicative_coprime():
    z6 = FinAbGroup([6])
    n6 = len(orthogonal_group(hyperbolic(z6)))
    n2 = len(orthogonal_group(hyperbolic(Z2)))
    n3 = len(orthogonal_group(hyperbolic(Z3)))
    assert n6 == n2 * n3


def test_sum_arithmetic():
    m = modcat_class(Z2, [(1,)])
    u = unit_class(Z2)
    s = ModCatSum([(1, m), (2, u), (1, m)])
    assert s.total_multiplicity() == 4
    assert dict((c, k) for k, c in s.terms)[m] == 2
    both = s + ModCatSum([(1, u)])
    assert both.total_multiplicity() == 5
    ext = bimodcat_tensor_sum(
        Z2, Z2, Z2,
        ModCatSum([(2, unit_bimodule(Z2))]),
        ModCatSum([(3, unit_bimodule(Z2))]),
    )
    assert ext == ModCatSum([(6, unit_bimodule(Z2))])
