"""Exact arithmetic in finite abelian groups.

A group is a product of cyclic groups ``Z/n1 x ... x Z/nk`` and an
element is a plain tuple of residues.  Subgroups are represented by the
Hermite basis of the preimage lattice in ``Z^k``, which makes equality,
membership, sums, intersections and quotients exact integer linear
algebra.  Everything is hand rolled on lists of Python ints so there is
no overflow anywhere.

Row convention throughout: vectors are rows, matrices act on the right,
and a homomorphism is the matrix whose i-th row is the image of the
i-th standard generator of the source.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm, prod

from .errors import InvalidData, NotInvertible


def xgcd(a, b):
    """Extended gcd.  Returns (g, x, y) with g = a*x + b*y and g >= 0.

    >>> xgcd(12, 18)
    (6, -1, 1)
    >>> xgcd(0, 0)
    (0, 1, 0)
    """
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(mat):
    """Smith normal form with transforms.

    Returns ``(d, u, v)`` where ``u`` and ``v`` are unimodular,
    ``u * mat * v`` is diagonal with diagonal ``d``, and the entries of
    ``d`` are nonnegative with ``d[i]`` dividing ``d[i+1]``.

    >>> d, u, v = smith_normal_form([[1, 2], [3, 4]])
    >>> d
    [1, 2]
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    a = [list(r) for r in mat]
    u = _identity(rows)
    v = _identity(cols)
    n = min(rows, cols)
    for t in range(n):
        while True:
            # pick the nonzero entry of smallest magnitude as pivot
            piv = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    e = a[i][j]
                    if e and (best is None or abs(e) < best):
                        best, piv = abs(e), (i, j)
            if piv is None:
                break
            i0, j0 = piv
            if i0 != t:
                a[t], a[i0] = a[i0], a[t]
                u[t], u[i0] = u[i0], u[t]
            if j0 != t:
                for r in range(rows):
                    a[r][t], a[r][j0] = a[r][j0], a[r][t]
                for r in range(cols):
                    v[r][t], v[r][j0] = v[r][j0], v[r][t]
            # clear the pivot cross.  When the pivot divides an entry a
            # plain elimination leaves the pivot row and column alone;
            # otherwise an xgcd combine strictly shrinks the pivot, so
            # the ping-pong between row and column passes terminates.
            while True:
                for i in range(t + 1, rows):
                    if a[i][t]:
                        if a[i][t] % a[t][t] == 0:
                            q = a[i][t] // a[t][t]
                            for k in range(cols):
                                a[i][k] -= q * a[t][k]
                            for k in range(rows):
                                u[i][k] -= q * u[t][k]
                        else:
                            g, x, y = xgcd(a[t][t], a[i][t])
                            p, q = a[t][t] // g, a[i][t] // g
                            a[t], a[i] = (
                                [x * a[t][k] + y * a[i][k] for k in range(cols)],
                                [p * a[i][k] - q * a[t][k] for k in range(cols)],
                            )
                            u[t], u[i] = (
                                [x * u[t][k] + y * u[i][k] for k in range(rows)],
                                [p * u[i][k] - q * u[t][k] for k in range(rows)],
                            )
                dirty = False
                for j in range(t + 1, cols):
                    if a[t][j]:
                        if a[t][j] % a[t][t] == 0:
                            q = a[t][j] // a[t][t]
                            for r in range(rows):
                                a[r][j] -= q * a[r][t]
                            for r in range(cols):
                                v[r][j] -= q * v[r][t]
                        else:
                            g, x, y = xgcd(a[t][t], a[t][j])
                            p, q = a[t][t] // g, a[t][j] // g
                            for r in range(rows):
                                art, arj = a[r][t], a[r][j]
                                a[r][t] = x * art + y * arj
                                a[r][j] = p * arj - q * art
                            for r in range(cols):
                                vrt, vrj = v[r][t], v[r][j]
                                v[r][t] = x * vrt + y * vrj
                                v[r][j] = p * vrj - q * vrt
                            dirty = True
                if not dirty and all(a[i][t] == 0 for i in range(t + 1, rows)):
                    break
            # divisor chain: fold in any row holding a non-multiple and redo
            bad = None
            for i in range(t + 1, rows):
                if any(a[i][j] % a[t][t] for j in range(t + 1, cols)):
                    bad = i
                    break
            if bad is None:
                break
            for k in range(cols):
                a[t][k] += a[bad][k]
            for k in range(rows):
                u[t][k] += u[bad][k]
        if t < rows and t < cols and a[t][t] < 0:
            for k in range(cols):
                a[t][k] = -a[t][k]
            for k in range(rows):
                u[t][k] = -u[t][k]
        if t < rows and t < cols and a[t][t] == 0:
            break
    d = [a[i][i] for i in range(n)]
    return d, u, v


def left_kernel(mat):
    """Rows spanning {x : x * mat = 0} over Z."""
    if not mat:
        return []
    d, u, _ = smith_normal_form(mat)
    rank = sum(1 for e in d if e)
    return [list(r) for r in u[rank:]]


def solve_left(mat, target):
    """One solution x of x * mat = target over Z, or None."""
    rows = len(mat)
    cols = len(mat[0]) if rows else len(target)
    if rows == 0:
        return [] if all(t == 0 for t in target) else None
    d, u, v = smith_normal_form(mat)
    tv = [sum(target[i] * v[i][j] for i in range(cols)) for j in range(cols)]
    y = [0] * rows
    for j in range(cols):
        dj = d[j] if j < len(d) else 0
        if dj:
            if tv[j] % dj:
                return None
            y[j] = tv[j] // dj
        elif tv[j]:
            return None
    return [sum(y[i] * u[i][j] for i in range(rows)) for j in range(rows)]


def solve_mod(mat, target, moduli):
    """One x with x * mat = target modulo per-coordinate moduli, or None.

    A modulus of 0 means that coordinate is an exact equation over Z.
    """
    cols = len(target)
    ext = [list(r) for r in mat]
    for j, m in enumerate(moduli):
        if m:
            ext.append([m if k == j else 0 for k in range(cols)])
    sol = solve_left(ext, list(target))
    if sol is None:
        return None
    return sol[: len(mat)]


def hermite_row_basis(rows, moduli):
    """Canonical basis of the lattice spanned by ``rows`` and n_i * e_i.

    The result is a k x k upper triangular matrix with positive diagonal
    and entries above each pivot reduced into [0, pivot).  Two subgroups
    are equal iff their bases are equal.
    """
    k = len(moduli)
    work = [list(r) for r in rows]
    for i, m in enumerate(moduli):
        work.append([m if j == i else 0 for j in range(k)])
    basis = []
    for col in range(k):
        live = [r for r in work if any(r)]
        # euclid on the current column until one row carries it
        while True:
            nz = [r for r in live if r[col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for j in range(col, k):
                    r[j] -= q * p[j]
        pivot = next(r for r in live if r[col])
        if pivot[col] < 0:
            for j in range(k):
                pivot[j] = -pivot[j]
        basis.append(pivot)
        work = [r for r in live if r is not pivot]
    # reduce the entries above each pivot
    for col in range(k):
        p = basis[col]
        for i in range(col):
            q = basis[i][col] // p[col]
            if q:
                for j in range(col, k):
                    basis[i][j] -= q * p[j]
    return [tuple(r) for r in basis]


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


class FinAbGroup:
    """A finite abelian group Z/n1 x ... x Z/nk with elements as tuples."""

    __slots__ = ("moduli",)

    def __init__(self, moduli):
        ms = tuple(int(n) for n in moduli)
        if any(n <= 0 for n in ms):
            raise InvalidData("cyclic factors must have positive order: %r" % (moduli,))
        self.moduli = ms

    @property
    def rank(self):
        return len(self.moduli)

    @property
    def order(self):
        return prod(self.moduli)

    @property
    def exponent(self):
        return lcm(*self.moduli) if self.moduli else 1

    @property
    def zero(self):
        return (0,) * len(self.moduli)

    def reduce(self, vec):
        return tuple(int(v) % n for v, n in zip(vec, self.moduli))

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % n for x, n in zip(a, self.moduli))

    def sub(self, a, b):
        return tuple((x - y) % n for x, y, n in zip(a, b, self.moduli))

    def smul(self, c, a):
        return tuple((c * x) % n for x, n in zip(a, self.moduli))

    def element_order(self, a):
        return lcm(*(n // gcd(x, n) for x, n in zip(a, self.moduli))) if self.moduli else 1

    def elements(self):
        return itertools.product(*[range(n) for n in self.moduli])

    def element_index(self, a):
        """Mixed radix index, inverse of element_at."""
        idx = 0
        for x, n in zip(a, self.moduli):
            idx = idx * n + x
        return idx

    def element_at(self, idx):
        out = []
        for n in reversed(self.moduli):
            idx, r = divmod(idx, n)
            out.append(r)
        return tuple(reversed(out))

    def contains(self, a):
        return len(a) == len(self.moduli) and all(
            0 <= x < n for x, n in zip(a, self.moduli)
        )

    def direct_sum(self, other):
        return FinAbGroup(self.moduli + other.moduli)

    def dual(self):
        """Character group, identified coordinate-wise: f pairs with a
        to sum(f_i * a_i / n_i) in Q/Z."""
        return FinAbGroup(self.moduli)

    def subgroup(self, gens):
        for g in gens:
            if len(g) != self.rank:
                raise InvalidData("generator %r has wrong length" % (g,))
        return Subgroup(self, hermite_row_basis([self.reduce(g) for g in gens], self.moduli))

    def full_subgroup(self):
        return self.subgroup([e for e in _identity(self.rank)])

    def trivial_subgroup(self):
        return self.subgroup([])

    def hom(self, target, rows):
        return Homomorphism(self, target, rows)

    def identity_hom(self):
        return Homomorphism(self, self, _identity(self.rank))

    def random_element(self, rng):
        return tuple(rng.randrange(n) for n in self.moduli)

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(("FinAbGroup", self.moduli))

    def __repr__(self):
        return "FinAbGroup(%r)" % (list(self.moduli),)


class Subgroup:
    """Subgroup of a FinAbGroup as a canonical lattice basis."""

    __slots__ = ("group", "basis", "_decomp")

    def __init__(self, group, basis):
        self.group = group
        self.basis = tuple(tuple(r) for r in basis)
        self._decomp = None

    @property
    def order(self):
        ind = prod(self.basis[i][i] for i in range(len(self.basis)))
        return self.group.order // ind

    def contains(self, elem):
        return self._coords(elem) is not None

    def _coords(self, elem):
        """Integer coordinates of elem in the basis rows, or None."""
        v = list(elem)
        out = []
        for i, row in enumerate(self.basis):
            if v[i] % row[i]:
                return None
            c = v[i] // row[i]
            out.append(c)
            for j in range(i, len(v)):
                v[j] -= c * row[j]
        if any(v):
            return None
        return out

    def sum_with(self, other):
        self._check_ambient(other)
        return Subgroup(
            self.group,
            hermite_row_basis(list(self.basis) + list(other.basis), self.group.moduli),
        )

    def intersect(self, other):
        self._check_ambient(other)
        k = self.group.rank
        stacked = [list(r) for r in self.basis] + [[-x for x in r] for r in other.basis]
        gens = []
        for ker in left_kernel(stacked):
            gens.append(
                tuple(
                    sum(ker[i] * self.basis[i][j] for i in range(k)) for j in range(k)
                )
            )
        return self.group.subgroup(gens)

    __add__ = sum_with
    __and__ = intersect

    def _check_ambient(self, other):
        if other.group != self.group:
            raise InvalidData("subgroups live in different ambient groups")

    def is_contained_in(self, other):
        self._check_ambient(other)
        return all(other.contains(self.group.reduce(r)) for r in self.basis)

    def decompose(self):
        """(abstract, emb) with abstract = product of invariant factors
        and emb an injective hom onto this subgroup.

        The rows of emb.matrix are canonical independent generators; the
        i-th one has exact order abstract.moduli[i].
        """
        if self._decomp is not None:
            return self._decomp
        k = self.group.rank
        w = []
        for i, m in enumerate(self.group.moduli):
            c = self._coords(tuple(m if j == i else 0 for j in range(k)))
            w.append(c)
        d, _, v = smith_normal_form(w)
        vinv = unimodular_inverse(v)
        invs = []
        gens = []
        for j, dj in enumerate(d):
            if dj > 1:
                invs.append(dj)
                gens.append(
                    self.group.reduce(
                        tuple(
                            sum(vinv[j][i] * self.basis[i][t] for i in range(k))
                            for t in range(k)
                        )
                    )
                )
        abstract = FinAbGroup(invs)
        emb = Homomorphism(abstract, self.group, gens)
        self._decomp = (abstract, emb)
        return self._decomp

    @property
    def gens(self):
        """Canonical independent generators (may be empty)."""
        _, emb = self.decompose()
        return [tuple(r) for r in emb.matrix]

    def elements(self):
        abstract, emb = self.decompose()
        for a in abstract.elements():
            yield emb(a)

    def quotient(self):
        """(Q, proj) with Q the quotient group and proj: ambient -> Q."""
        d, _, v = smith_normal_form([list(r) for r in self.basis])
        keep = [j for j, dj in enumerate(d) if dj != 1]
        q = FinAbGroup([d[j] for j in keep])
        rows = [[v[i][j] % d[j] for j in keep] for i in range(self.group.rank)]
        return q, Homomorphism(self.group, q, rows)

    def annihilator(self):
        """Characters of the ambient group killing this subgroup, as a
        subgroup of the coordinate-wise dual."""
        a = self.group
        n = a.exponent if a.moduli else 1
        k = a.rank
        # f annihilates iff sum_i f_i * h_i * (n / n_i) = 0 mod n, per basis row h
        p = [[row[i] * (n // a.moduli[i]) for row in self.basis] for i in range(k)]
        ext = [list(r) for r in p]
        cols = len(self.basis)
        for j in range(cols):
            ext.append([n if t == j else 0 for t in range(cols)])
        gens = [ker[:k] for ker in left_kernel(ext)]
        return a.dual().subgroup(gens)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group == other.group
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.group.moduli, self.basis))

    def __repr__(self):
        return "Subgroup(%r, order=%d)" % (self.group, self.order)


class Homomorphism:
    """Hom of FinAbGroups, matrix rows = images of source generators."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, rows):
        rows = [target.reduce(r) for r in rows]
        if len(rows) != source.rank:
            raise InvalidData("expected %d generator images" % source.rank)
        for n, r in zip(source.moduli, rows):
            if any(n * x % m for x, m in zip(r, target.moduli)):
                raise InvalidData(
                    "image %r of an order-%d generator is not killed by %d" % (r, n, n)
                )
        self.source = source
        self.target = target
        self.matrix = tuple(rows)

    def __call__(self, elem):
        k = self.source.rank
        return self.target.reduce(
            tuple(
                sum(elem[i] * self.matrix[i][j] for i in range(k))
                for j in range(self.target.rank)
            )
        )

    def then(self, other):
        """self followed by other."""
        if other.source != self.target:
            raise InvalidData("homs do not compose")
        return Homomorphism(
            self.source, other.target, [other(r) for r in self.matrix]
        )

    def image(self):
        return self.target.subgroup(list(self.matrix))

    def kernel(self):
        return self.preimage(self.target.trivial_subgroup())

    def preimage(self, sub):
        if sub.group != self.target:
            raise InvalidData("subgroup lives in the wrong group")
        stacked = [list(r) for r in self.matrix] + [
            [-x for x in r] for r in sub.basis
        ]
        ks = self.source.rank
        gens = [ker[:ks] for ker in left_kernel(stacked)]
        return self.source.subgroup(gens)

    def is_injective(self):
        return self.kernel().order == 1

    def is_surjective(self):
        return self.image().order == self.target.order

    def is_isomorphism(self):
        return self.source.order == self.target.order and self.is_injective()

    def inverse(self):
        if not self.is_isomorphism():
            raise NotInvertible("homomorphism is not bijective")
        rows = []
        for j in range(self.target.rank):
            e = tuple(1 if t == j else 0 for t in range(self.target.rank))
            x = solve_mod(
                [list(r) for r in self.matrix], list(e), list(self.target.moduli)
            )
            if x is None:
                raise NotInvertible("no preimage for a generator")
            rows.append(self.source.reduce(x))
        return Homomorphism(self.target, self.source, rows)

    def restrict_to(self, sub):
        """Composite sub -> ambient -> target on the abstract form of sub."""
        _, emb = sub.decompose()
        return emb.then(self)

    def __eq__(self, other):
        return (
            isinstance(other, Homomorphism)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source.moduli, self.target.moduli, self.matrix))

    def __repr__(self):
        return "Homomorphism(%r -> %r, %r)" % (self.source, self.target, self.matrix)


def unimodular_inverse(mat):
    """Inverse of a unimodular integer matrix, as integer rows."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = a[i][n + j]
            if v.denominator != 1:
                raise InvalidData("matrix is not unimodular")
            row.append(int(v))
        out.append(row)
    return out


def subgroups_of_order(group, order):
    """Iterate all subgroups of the given order, each exactly once."""
    if group.order % order:
        return
    index = group.order // order
    k = group.rank
    if k == 0:
        if order == 1:
            yield group.trivial_subgroup()
        return
    div_choices = [_divisors(n) for n in group.moduli]

    def diag_tuples(i, remaining):
        if i == k:
            if remaining == 1:
                yield ()
            return
        for d in div_choices[i]:
            if remaining % d == 0:
                for rest in diag_tuples(i + 1, remaining // d):
                    yield (d,) + rest

    for diag in diag_tuples(0, index):
        ranges = [range(diag[j]) for j in range(k)]
        # free entries sit above each pivot
        above = [(i, j) for j in range(k) for i in range(j)]

        def fill(pos, rows):
            if pos == len(above):
                cand = Subgroup(group, [tuple(r) for r in rows])
                # keep only matrices whose span contains the relation lattice
                if all(
                    cand.contains(tuple(group.moduli[i] if t == i else 0 for t in range(k)))
                    for i in range(k)
                ):
                    yield cand
                return
            i, j = above[pos]
            for val in ranges[j]:
                rows[i][j] = val
                yield from fill(pos + 1, rows)
            rows[i][j] = 0

        base = [[diag[i] if i == j else 0 for j in range(k)] for i in range(k)]
        yield from fill(0, base)


def all_subgroups(group):
    """All subgroups, by increasing order."""
    for order in _divisors(group.order):
        yield from subgroups_of_order(group, order)
