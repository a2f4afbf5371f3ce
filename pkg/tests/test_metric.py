"""Metric group layer: forms, complements, Lagrangians, isometries.

The orthogonal-group tests check the search against a brute force scan
of every endomorphism matrix, filtered by the definition alone.
"""

import itertools

import pytest

from pointedcat.abelian import FinAbGroup, Homomorphism, all_subgroups
from pointedcat.errors import CapExceeded, InvalidData
from pointedcat.quadratic import (
    Bicharacter,
    MetricGroup,
    QmodZ,
    QuadraticForm,
    QZ_ZERO,
    d_distance,
    det_square_class,
    enumerate_lagrangians,
    hyperbolic,
    is_special,
    orthogonal_group,
    pairing,
    squarefree_part,
)


def brute_isometries(metric):
    """Every endomorphism matrix, filtered by bijectivity and q alone."""
    group = metric.group
    rows_choices = itertools.product(list(group.elements()), repeat=group.rank)
    out = []
    for rows in rows_choices:
        try:
            h = Homomorphism(group, group, list(rows))
        except InvalidData:
            continue
        if not h.is_isomorphism():
            continue
        if all(metric.q(h(x)) == metric.q(x) for x in group.elements()):
            out.append(h.matrix)
    return sorted(out)


def test_qmodz_arithmetic():
    assert QmodZ(7, 4) == QmodZ(3, 4)
    assert QmodZ(1, 2) + QmodZ(1, 2) == QZ_ZERO
    assert 3 * QmodZ(1, 6) == QmodZ(1, 2)
    assert (-QmodZ(1, 3)) == QmodZ(2, 3)
    assert QmodZ.parse("5/15") == QmodZ(1, 3)
    assert QmodZ.parse("2") == QZ_ZERO
    assert str(QmodZ(1, 4)) == "1/4"
    assert QmodZ(1, 4).scaled(8) == 2
    with pytest.raises(InvalidData):
        QmodZ(1, 4).scaled(6)
    with pytest.raises(InvalidData):
        QmodZ(1, 0)


def test_pairing():
    a = FinAbGroup([2, 4])
    assert pairing(a, (1, 1), (1, 1)) == QmodZ(3, 4)
    assert pairing(a, (0, 2), (0, 2)) == QZ_ZERO


def test_hyperbolic_z2():
    e = hyperbolic(FinAbGroup([2]))
    assert e.group.moduli == (2, 2)
    assert e.q((1, 1)) == QmodZ(1, 2)
    assert e.q((1, 0)) == QZ_ZERO
    assert e.q((0, 1)) == QZ_ZERO


def test_hyperbolic_trivial():
    e = hyperbolic(FinAbGroup([]))
    assert e.order == 1


def test_hyperbolic_z3_isotropic_count():
    e = hyperbolic(FinAbGroup([3]))
    zeros = [x for x in e.group.elements() if not e.q(x)]
    assert len(zeros) == 5


def test_quadratic_form_validation():
    a = FinAbGroup([2])
    # q(e) = 1/4 is fine on Z/2 (order 2n), 1/3 is not
    QuadraticForm(a, [QmodZ(1, 4)], {})
    with pytest.raises(InvalidData):
        QuadraticForm(a, [QmodZ(1, 3)], {})
    with pytest.raises(InvalidData):
        QuadraticForm(FinAbGroup([3]), [QmodZ(1, 6)], {})


@pytest.mark.parametrize(
    "metric",
    [
        hyperbolic(FinAbGroup([2])),
        hyperbolic(FinAbGroup([4])),
        hyperbolic(FinAbGroup([2, 2])),
        MetricGroup(FinAbGroup([2]), QuadraticForm(FinAbGroup([2]), [QmodZ(1, 4)], {})),
        MetricGroup(FinAbGroup([4]), QuadraticForm(FinAbGroup([4]), [QmodZ(1, 8)], {})),
    ],
)
def test_polarization_identity(metric):
    for x in metric.group.elements():
        for y in metric.group.elements():
            lhs = metric.q(metric.group.add(x, y)) - metric.q(x) - metric.q(y)
            assert lhs == metric.b(x, y)


def test_orthogonal_complement_examples():
    e = hyperbolic(FinAbGroup([2]))
    full = e.group.full_subgroup()
    assert e.complement(e.group.trivial_subgroup()) == full
    n = e.group.subgroup([(1, 0)])
    assert e.complement(n) == n
    # degenerate pairings are allowed outside MetricGroup
    z2 = FinAbGroup([2])
    zero_b = Bicharacter.zero(z2)
    assert zero_b.complement(z2.full_subgroup()) == z2.full_subgroup()
    assert not zero_b.is_nondegenerate()


def test_complement_order_identity():
    e = hyperbolic(FinAbGroup([4]))
    for sub in all_subgroups(e.group):
        assert sub.order * e.complement(sub).order == e.order


def test_isotropic_lagrangian_flags():
    e = hyperbolic(FinAbGroup([2]))
    lag = e.group.subgroup([(1, 0)])
    assert e.is_isotropic(lag) and e.is_lagrangian(lag)
    bad = e.group.subgroup([(1, 1)])
    assert not e.is_isotropic(bad)
    triv = e.group.trivial_subgroup()
    assert e.is_isotropic(triv) and not e.is_lagrangian(triv)


def test_enumerate_lagrangians():
    assert len(enumerate_lagrangians(hyperbolic(FinAbGroup([2])))) == 2
    lags3 = enumerate_lagrangians(hyperbolic(FinAbGroup([3])))
    a3 = hyperbolic(FinAbGroup([3])).group
    assert sorted(l.basis for l in lags3) == sorted(
        [a3.subgroup([(1, 0)]).basis, a3.subgroup([(0, 1)]).basis]
    )
    # non-square order has no Lagrangians at all
    z2 = FinAbGroup([2])
    m = MetricGroup(z2, QuadraticForm(z2, [QmodZ(1, 4)], {}))
    assert enumerate_lagrangians(m) == []
    with pytest.raises(CapExceeded):
        enumerate_lagrangians(hyperbolic(FinAbGroup([4])), cap=4)


def test_orthogonal_group_against_brute_force():
    for a in ([2], [3]):
        metric = hyperbolic(FinAbGroup(a))
        got = sorted(h.matrix for h in orthogonal_group(metric))
        assert got == brute_isometries(metric)
    assert len(orthogonal_group(hyperbolic(FinAbGroup([2])))) == 2
    assert len(orthogonal_group(hyperbolic(FinAbGroup([3])))) == 4
    assert len(orthogonal_group(hyperbolic(FinAbGroup([])))) == 1


def test_orthogonal_group_closure():
    metric = hyperbolic(FinAbGroup([4]))
    isos = orthogonal_group(metric)
    mats = {h.matrix for h in isos}
    for g in isos:
        for h in isos:
            assert g.then(h).matrix in mats
    ident = metric.group.identity_hom()
    assert ident.matrix in mats


def test_cap_on_orthogonal_group():
    with pytest.raises(CapExceeded):
        orthogonal_group(hyperbolic(FinAbGroup([4])), cap=8)


def test_isometry_check():
    e = hyperbolic(FinAbGroup([2]))
    swap = Homomorphism(e.group, e.group, [(0, 1), (1, 0)])
    assert e.is_isometry(swap)
    shear = Homomorphism(e.group, e.group, [(1, 1), (0, 1)])
    assert not e.is_isometry(shear)


def test_squarefree_part():
    assert squarefree_part(1) == 1
    assert squarefree_part(4) == 1
    assert squarefree_part(12) == 3
    assert squarefree_part(18) == 2
    with pytest.raises(InvalidData):
        squarefree_part(0)


def test_d_distance_examples():
    e2 = hyperbolic(FinAbGroup([2]))
    l1 = e2.group.subgroup([(1, 0)])
    l2 = e2.group.subgroup([(0, 1)])
    assert d_distance(e2, l1, l1) == 1
    assert d_distance(e2, l1, l2) == 2
    assert d_distance(e2, l2, l1) == 2
    e3 = hyperbolic(FinAbGroup([3]))
    m1 = e3.group.subgroup([(1, 0)])
    m2 = e3.group.subgroup([(0, 1)])
    assert d_distance(e3, m1, m2) == 3
    with pytest.raises(InvalidData):
        d_distance(e2, e2.group.trivial_subgroup(), l1)


def test_det_square_class_examples():
    e = hyperbolic(FinAbGroup([2]))
    ident = e.group.identity_hom()
    assert det_square_class(e, ident) == 1
    assert is_special(e, ident)
    swap = Homomorphism(e.group, e.group, [(0, 1), (1, 0)])
    assert det_square_class(e, swap) == 2
    assert not is_special(e, swap)


@pytest.mark.parametrize("a", [[2], [3], [4], [2, 2]])
def test_det_equals_distance_to_image(a):
    metric = hyperbolic(FinAbGroup(a))
    lags = enumerate_lagrangians(metric)
    for g in orthogonal_group(metric):
        d = det_square_class(metric, g)
        for lag in lags:
            moved = metric.group.subgroup([g(x) for x in lag.gens])
            assert d_distance(metric, lag, moved) == d


@pytest.mark.parametrize("a", [[2], [3], [4], [2, 2]])
def test_lagrangian_triple_distance_cocycle(a):
    metric = hyperbolic(FinAbGroup(a))
    lags = enumerate_lagrangians(metric)
    for l1 in lags:
        for l2 in lags:
            for l3 in lags:
                lhs = d_distance(metric, l1, l2) * d_distance(metric, l2, l3)
                assert squarefree_part(lhs) == d_distance(metric, l1, l3)


def test_det_multiplicative_small():
    metric = hyperbolic(FinAbGroup([3]))
    isos = orthogonal_group(metric)
    for g in isos:
        for h in isos:
            assert squarefree_part(
                det_square_class(metric, g) * det_square_class(metric, h)
            ) == det_square_class(metric, g.then(h))
