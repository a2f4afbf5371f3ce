"""Quadratic forms and bicharacters valued in Q/Z.

The torsion of the multiplicative group of an algebraically closed
field of characteristic zero is Q/Z written additively, so characters,
bicharacters and quadratic forms all take values here and stay exact.

A quadratic form is stored by its values on the standard generators
together with the polarization values b(e_i, e_j) for i < j.  On a
generator of order n the form may take values of order up to
n * gcd(2, n); both well-definedness constraints (n^2 q = 0 and
2n q = 0) are enforced, which is exactly what makes evaluation on
reduced coordinates consistent.
"""

from __future__ import annotations

from math import gcd, isqrt, lcm, prod

from sympy import factorint

from .abelian import FinAbGroup, Homomorphism, Subgroup, left_kernel, subgroups_of_order
from .errors import CapExceeded, InvalidData

DEFAULT_CAP = 256


class QmodZ:
    """An element of Q/Z as a reduced fraction in [0, 1).

    >>> QmodZ(7, 4) + QmodZ(3, 4)
    QmodZ(1, 2)
    >>> -QmodZ(1, 3)
    QmodZ(2, 3)
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = int(num), int(den)
        if den == 0:
            raise InvalidData("zero denominator")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        self.num = num // g
        self.den = den // g

    @classmethod
    def parse(cls, text):
        """Parse "num/den" or a bare integer string."""
        s = str(text).strip()
        if "/" in s:
            a, b = s.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(s))

    def __add__(self, other):
        return QmodZ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return QmodZ(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return QmodZ(-self.num, self.den)

    def __mul__(self, k):
        return QmodZ(self.num * int(k), self.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, QmodZ) and self.num == other.num and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return self.num != 0

    @property
    def order(self):
        """Additive order, i.e. the denominator."""
        return self.den

    def scaled(self, L):
        """num * L / den as an integer; requires den | L."""
        if L % self.den:
            raise InvalidData("denominator %d does not divide scale %d" % (self.den, L))
        return self.num * (L // self.den)

    def __str__(self):
        return "%d/%d" % (self.num, self.den)

    def __repr__(self):
        return "QmodZ(%d, %d)" % (self.num, self.den)


QZ_ZERO = QmodZ(0)


def pairing(group, f, a):
    """Canonical pairing of the coordinate-wise dual with the group:
    <f, a> = sum f_i a_i / n_i."""
    out = QZ_ZERO
    for fi, ai, n in zip(f, a, group.moduli):
        out = out + QmodZ(fi * ai, n)
    return out


class Bicharacter:
    """Biadditive Q/Z-valued pairing on a group, by its generator matrix.

    Degenerate pairings are allowed; only metric groups insist on
    nondegeneracy.
    """

    __slots__ = ("group", "rows")

    def __init__(self, group, rows):
        k = group.rank
        if len(rows) != k or any(len(r) != k for r in rows):
            raise InvalidData("bicharacter matrix must be %d x %d" % (k, k))
        for i in range(k):
            for j in range(k):
                v = rows[i][j]
                if (group.moduli[i] * v) or (group.moduli[j] * v):
                    raise InvalidData(
                        "entry (%d,%d) not killed by the generator orders" % (i, j)
                    )
        self.group = group
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def zero(cls, group):
        k = group.rank
        return cls(group, [[QZ_ZERO] * k for _ in range(k)])

    @classmethod
    def from_upper(cls, group, entries):
        """Alternating bicharacter from values on pairs i < j."""
        k = group.rank
        rows = [[QZ_ZERO] * k for _ in range(k)]
        for i, j, v in entries:
            if not 0 <= i < j < k:
                raise InvalidData("pair (%r,%r) is not an ordered generator pair" % (i, j))
            rows[i][j] = v
            rows[j][i] = -v
        return cls(group, rows)

    def evaluate(self, x, y):
        out = QZ_ZERO
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        out = out + (xi * yj) * self.rows[i][j]
        return out

    def is_symmetric(self):
        k = self.group.rank
        return all(self.rows[i][j] == self.rows[j][i] for i in range(k) for j in range(i))

    def is_alternating(self):
        """b(x, x) = 0 for all x; on generators this is skewness plus a
        zero diagonal."""
        k = self.group.rank
        if any(self.rows[i][i] for i in range(k)):
            return False
        return all(
            self.rows[i][j] == -self.rows[j][i] for i in range(k) for j in range(i)
        )

    def scale(self):
        """An integer L with L * (every entry) = 0."""
        return lcm(1, *(v.den for r in self.rows for v in r))

    def complement(self, sub):
        """{a : b(x, a) = 0 for all x in sub}."""
        if sub.group != self.group:
            raise InvalidData("subgroup lives in a different group")
        k = self.group.rank
        L = self.scale()
        # column t of the constraint matrix: a |-> L * b(h, a) for basis row h
        cons = [
            [
                sum(h[i] * self.rows[i][j].scaled(L) for i in range(k)) % L
                for h in sub.basis
            ]
            for j in range(k)
        ]
        ext = [list(r) for r in cons]
        m = len(sub.basis)
        for t in range(m):
            ext.append([L if s == t else 0 for s in range(m)])
        gens = [row[:k] for row in left_kernel(ext)]
        return self.group.subgroup(gens)

    def radical(self):
        return self.complement(self.group.full_subgroup())

    def is_nondegenerate(self):
        return self.radical().order == 1

    def restrict(self, sub):
        """Restriction to the abstract form of a subgroup."""
        abstract, emb = sub.decompose()
        return Bicharacter(
            abstract,
            [[self.evaluate(a, b) for b in emb.matrix] for a in emb.matrix],
        )

    def block_sum(self, other):
        g = self.group.direct_sum(other.group)
        k1, k2 = self.group.rank, other.group.rank
        rows = [[QZ_ZERO] * (k1 + k2) for _ in range(k1 + k2)]
        for i in range(k1):
            for j in range(k1):
                rows[i][j] = self.rows[i][j]
        for i in range(k2):
            for j in range(k2):
                rows[k1 + i][k1 + j] = other.rows[i][j]
        return Bicharacter(g, rows)

    def __neg__(self):
        return Bicharacter(self.group, [[-v for v in r] for r in self.rows])

    def __eq__(self, other):
        return (
            isinstance(other, Bicharacter)
            and self.group == other.group
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.group.moduli, self.rows))

    def __repr__(self):
        return "Bicharacter(%r, %r)" % (self.group, [list(r) for r in self.rows])


class QuadraticForm:
    """Q/Z-valued quadratic form given on generators plus polarization
    values on generator pairs."""

    __slots__ = ("group", "diag", "off")

    def __init__(self, group, diag, off):
        k = group.rank
        if len(diag) != k:
            raise InvalidData("expected %d diagonal values" % k)
        for n, v in zip(group.moduli, diag):
            if (n * n) * v:
                raise InvalidData("q on an order-%d generator must be killed by %d^2" % (n, n))
            if n * (2 * v):
                raise InvalidData("2q on an order-%d generator must be killed by %d" % (n, n))
        clean = {}
        for (i, j), v in dict(off).items():
            if not 0 <= i < j < k:
                raise InvalidData("off-diagonal key (%r,%r) must have i < j" % (i, j))
            if group.moduli[i] * v or group.moduli[j] * v:
                raise InvalidData("b(e_%d,e_%d) not killed by the generator orders" % (i, j))
            if v:
                clean[(i, j)] = v
        self.group = group
        self.diag = tuple(diag)
        self.off = tuple(sorted(clean.items()))

    def off_value(self, i, j):
        if i == j:
            return 2 * self.diag[i]
        if i > j:
            i, j = j, i
        for (a, b), v in self.off:
            if (a, b) == (i, j):
                return v
        return QZ_ZERO

    def evaluate(self, x):
        x = self.group.reduce(x)
        out = QZ_ZERO
        for i, xi in enumerate(x):
            if xi:
                out = out + (xi * xi) * self.diag[i]
        for (i, j), v in self.off:
            if x[i] and x[j]:
                out = out + (x[i] * x[j]) * v
        return out

    def bq(self):
        """Polarization b_q(x,y) = q(x+y) - q(x) - q(y), a symmetric
        bicharacter with b_q(e_i, e_i) = 2 q(e_i)."""
        k = self.group.rank
        rows = [[self.off_value(i, j) for j in range(k)] for i in range(k)]
        return Bicharacter(self.group, rows)

    def restrict(self, sub):
        abstract, emb = sub.decompose()
        diag = [self.evaluate(g) for g in emb.matrix]
        off = {}
        for i in range(abstract.rank):
            for j in range(i + 1, abstract.rank):
                v = (
                    self.evaluate(self.group.add(emb.matrix[i], emb.matrix[j]))
                    - diag[i]
                    - diag[j]
                )
                off[(i, j)] = v
        return QuadraticForm(abstract, diag, off)

    def vanishes_on(self, sub):
        """True iff q is zero on every element of sub.

        Checked on canonical generators and their pairwise sums; the
        polarization rule makes that sufficient.
        """
        _, emb = sub.decompose()
        gens = list(emb.matrix)
        for i, g in enumerate(gens):
            if self.evaluate(g):
                return False
            for h in gens[:i]:
                if self.evaluate(self.group.add(g, h)):
                    return False
        return True

    def direct_sum(self, other):
        g = self.group.direct_sum(other.group)
        k1 = self.group.rank
        off = dict(self.off)
        for (i, j), v in other.off:
            off[(k1 + i, k1 + j)] = v
        return QuadraticForm(g, list(self.diag) + list(other.diag), off)

    def __neg__(self):
        return QuadraticForm(
            self.group, [-v for v in self.diag], {ij: -v for ij, v in self.off}
        )

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticForm)
            and self.group == other.group
            and self.diag == other.diag
            and self.off == other.off
        )

    def __hash__(self):
        return hash((self.group.moduli, self.diag, self.off))

    def __repr__(self):
        return "QuadraticForm(%r, %r, %r)" % (self.group, list(self.diag), dict(self.off))


class MetricGroup:
    """A group with a nondegenerate quadratic form."""

    __slots__ = ("group", "form", "_bq")

    def __init__(self, group, form):
        if form.group != group:
            raise InvalidData("form lives on a different group")
        bq = form.bq()
        if not bq.is_nondegenerate():
            raise InvalidData("the polarization form is degenerate")
        self.group = group
        self.form = form
        self._bq = bq

    @property
    def order(self):
        return self.group.order

    @property
    def bq(self):
        return self._bq

    def q(self, x):
        return self.form.evaluate(x)

    def b(self, x, y):
        return self._bq.evaluate(x, y)

    def complement(self, sub):
        return self._bq.complement(sub)

    def is_isotropic(self, sub):
        if sub.group != self.group:
            raise InvalidData("subgroup of a different group")
        return self.form.vanishes_on(sub)

    def is_lagrangian(self, sub):
        return self.is_isotropic(sub) and sub.order * sub.order == self.order

    def direct_sum(self, other):
        return MetricGroup(
            self.group.direct_sum(other.group), self.form.direct_sum(other.form)
        )

    def inverse(self):
        """Same group, negated form."""
        return MetricGroup(self.group, -self.form)

    def is_isometry(self, hom, target=None):
        """hom preserves q and is bijective; checked on generators plus
        polarization pairs, which is exact."""
        tgt = self if target is None else target
        if hom.source != self.group or hom.target != tgt.group:
            raise InvalidData("wrong source or target")
        if not hom.is_isomorphism():
            return False
        k = self.group.rank
        imgs = [hom(e) for e in _unit_vectors(self.group)]
        for i in range(k):
            if tgt.q(imgs[i]) != self.q(_unit_vector(self.group, i)):
                return False
            for j in range(i):
                if tgt.b(imgs[i], imgs[j]) != self._bq.rows[i][j]:
                    return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, MetricGroup)
            and self.group == other.group
            and self.form == other.form
        )

    def __hash__(self):
        return hash((self.group.moduli, self.form))

    def __repr__(self):
        return "MetricGroup(%r)" % (self.group,)


def _unit_vector(group, i):
    return tuple(1 if j == i else 0 for j in range(group.rank))


def _unit_vectors(group):
    return [_unit_vector(group, i) for i in range(group.rank)]


def hyperbolic(a):
    """The standard metric group on A + A* with q(a, f) = f(a)."""
    e = a.direct_sum(a.dual())
    k = a.rank
    off = {}
    for i, n in enumerate(a.moduli):
        if n > 1:
            off[(i, k + i)] = QmodZ(1, n)
    form = QuadraticForm(e, [QZ_ZERO] * (2 * k), off)
    return MetricGroup(e, form)


def enumerate_lagrangians(metric, cap=DEFAULT_CAP):
    """All Lagrangian subgroups, canonically ordered.

    Empty when |E| is not a perfect square.  The cap bounds |E|.
    """
    n = metric.order
    if n > cap:
        raise CapExceeded("|E| = %d exceeds the cap %d" % (n, cap))
    s = isqrt(n)
    if s * s != n:
        return []
    out = [
        sub
        for sub in subgroups_of_order(metric.group, s)
        if metric.is_isotropic(sub)
    ]
    out.sort(key=lambda sub: sub.basis)
    return out


def orthogonal_group(metric, cap=DEFAULT_CAP):
    """All isometries of the metric group, by depth-first search over
    generator images with pruning on order, q values, pairings against
    the earlier images, and the order of the partial span."""
    if metric.order > cap:
        raise CapExceeded("|E| = %d exceeds the cap %d" % (metric.order, cap))
    group = metric.group
    k = group.rank
    if k == 0:
        return [group.identity_hom()]
    moduli = group.moduli
    elems = list(group.elements())
    qL = lcm(1, *(metric.q(x).den for x in elems))
    bL = metric.bq.scale()
    qint = {x: metric.q(x).scaled(qL) for x in elems}
    units = _unit_vectors(group)
    bints = {}

    def bint(x, y):
        key = (x, y)
        v = bints.get(key)
        if v is None:
            v = metric.b(x, y).scaled(bL)
            bints[key] = v
        return v

    # candidates for the image of e_i: right order and right q value
    cands = [
        sorted(
            x
            for x in elems
            if all(moduli[i] * c % n == 0 for c, n in zip(x, moduli))
            and qint[x] == qint[units[i]]
        )
        for i in range(k)
    ]
    span_targets = [prod(moduli[:t]) for t in range(k + 1)]
    found = []
    chosen = []

    def close_span(span, x):
        order = group.element_order(x)
        return frozenset(
            group.add(s, group.smul(c, x)) for s in span for c in range(order)
        )

    def dfs(level, span):
        if level == k:
            found.append(Homomorphism(group, group, list(chosen)))
            return
        want = [bint(units[level], units[j]) for j in range(level)]
        for x in cands[level]:
            if any(bint(x, chosen[j]) != want[j] for j in range(level)):
                continue
            new_span = close_span(span, x)
            if len(new_span) != span_targets[level + 1]:
                continue
            chosen.append(x)
            dfs(level + 1, new_span)
            chosen.pop()

    dfs(0, frozenset([group.zero]))
    found.sort(key=lambda h: h.matrix)
    return found


def squarefree_part(n):
    """The squarefree integer representing the square class of n > 0."""
    if n <= 0:
        raise InvalidData("square classes live in positive rationals")
    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return out


def d_distance(metric, lag1, lag2):
    """Square class of |L1| / |L1 n L2| for Lagrangians L1, L2."""
    for lag in (lag1, lag2):
        if not metric.is_lagrangian(lag):
            raise InvalidData("d is only defined between Lagrangian subgroups")
    return squarefree_part(lag1.order // lag1.intersect(lag2).order)


def det_square_class(metric, g):
    """Square class of |(g - 1)E| for an isometry g."""
    if not metric.is_isometry(g):
        raise InvalidData("not an isometry of this metric group")
    group = metric.group
    rows = [
        group.sub(g.matrix[i], _unit_vector(group, i)) for i in range(group.rank)
    ]
    return squarefree_part(group.subgroup(rows).order)


def is_special(metric, g):
    return det_square_class(metric, g) == 1
