"""Bar-resolution group cohomology for small finite groups.

Coefficients are finite abelian groups with an arbitrary action given
by automorphism matrices.  Cochains are dense tables indexed by tuples
of group elements in lexicographic order.  Cohomology is computed from
the raw bar complex: the cocycle and coboundary data are assembled as
sparse systems, split into primary parts, reduced by unit-pivot
elimination, and finished exactly on the small residue with the
integer normal forms from the subgroup toolkit.  Each (module, degree)
pair is solved once and memoized together with a fixed basis, so class
coordinates are canonical across a whole session.

For multiplicative k*-valued coefficients use qz_coefficients: values
live in (1/m) Z/Z.  A finite coefficient level can carry more
cohomology than the colimit does in even degrees, so the functions
that model Q/Z itself work with the image of the enlargement map
H^n(level m) -> H^n(level m |G|); see stable_invariants.
"""

from collections import defaultdict
from heapq import heappop, heappush
from itertools import product
from math import gcd

from sympy import factorint

from .abelian import FinAbGroup, left_kernel, solve_mod, xgcd
from .errors import BudgetExceeded, CocycleViolation, InvalidData

MAX_GROUP_ORDER = 12
MAX_DEGREE = 5


class FiniteGroup:
    """A finite group as a multiplication table (not assumed abelian).

    table[a][b] is the product ab.  The axioms are checked outright;
    at the supported sizes the cubic associativity sweep is nothing.
    """

    __slots__ = ("order", "table", "identity", "inv")

    def __init__(self, table):
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise InvalidData("multiplication table must be square and nonempty")
        tab = tuple(tuple(row) for row in table)
        if any(x < 0 or x >= n for row in tab for x in row):
            raise InvalidData("table entries out of range")
        ident = None
        for e in range(n):
            if all(tab[e][g] == g and tab[g][e] == g for g in range(n)):
                ident = e
                break
        if ident is None:
            raise InvalidData("table has no identity element")
        inv = [None] * n
        for g in range(n):
            for h in range(n):
                if tab[g][h] == ident and tab[h][g] == ident:
                    inv[g] = h
                    break
            if inv[g] is None:
                raise InvalidData("element {} has no inverse".format(g))
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if tab[tab[a][b]][c] != tab[a][tab[b][c]]:
                        raise InvalidData("table is not associative")
        self.order = n
        self.table = tab
        self.identity = ident
        self.inv = tuple(inv)

    @classmethod
    def cyclic(cls, n):
        return cls([[(a + b) % n for b in range(n)] for a in range(n)])

    @classmethod
    def direct_product(cls, g1, g2):
        n1, n2 = g1.order, g2.order
        return cls(
            [
                [
                    g1.table[a1][b1] * n2 + g2.table[a2][b2]
                    for b1 in range(n1)
                    for b2 in range(n2)
                ]
                for a1 in range(n1)
                for a2 in range(n2)
            ]
        )

    @classmethod
    def symmetric(cls, n):
        """S_n on tuples, composing left-to-right: (st)(x) = t(s(x))."""
        from itertools import permutations

        perms = sorted(permutations(range(n)))
        idx = {p: i for i, p in enumerate(perms)}
        return cls(
            [
                [idx[tuple(t[s[x]] for x in range(n))] for t in perms]
                for s in perms
            ]
        )

    def mul(self, a, b):
        return self.table[a][b]

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return "FiniteGroup(order={})".format(self.order)


class GModule:
    """Coefficients: a finite abelian group with a left G-action.

    action[g] is a matrix whose rows are the images of the module
    generators; g acting on v is v * action[g] in row convention.
    """

    __slots__ = ("group", "module", "action")

    def __init__(self, group, module, action):
        if len(action) != group.order:
            raise InvalidData("need one action matrix per group element")
        homs = [module.hom(module, rows) for rows in action]
        for g, h in enumerate(homs):
            if not h.is_isomorphism():
                raise InvalidData("element {} does not act invertibly".format(g))
        ident = module.identity_hom()
        if homs[group.identity] != ident:
            raise InvalidData("identity must act trivially")
        for g in range(group.order):
            for h in range(group.order):
                if homs[h].then(homs[g]) != homs[group.mul(g, h)]:
                    raise InvalidData("action is not a homomorphism")
        self.group = group
        self.module = module
        self.action = tuple(h.matrix for h in homs)

    @classmethod
    def trivial(cls, group, module):
        ident = module.identity_hom().matrix
        return cls(group, module, [ident] * group.order)

    def act(self, g, value):
        mat = self.action[g]
        k = self.module.rank
        return self.module.reduce(
            tuple(
                sum(value[i] * mat[i][j] for i in range(k)) for j in range(k)
            )
        )

    def __eq__(self, other):
        if not isinstance(other, GModule):
            return NotImplemented
        return (
            self.group == other.group
            and self.module == other.module
            and self.action == other.action
        )

    def __hash__(self):
        return hash((self.group, self.module, self.action))

    def __repr__(self):
        return "GModule(|G|={}, M={!r})".format(self.group.order, self.module)


def qz_coefficients(group, m):
    """(1/m) Z/Z with trivial action; value c means c/m mod Z."""
    if m < 1:
        raise InvalidData("coefficient level must be positive")
    module = FinAbGroup([m]) if m > 1 else FinAbGroup([])
    return GModule.trivial(group, module)


class Cochain:
    """Dense n-cochain: values on all |G|^n tuples, lexicographic,
    first argument most significant."""

    __slots__ = ("gmod", "degree", "values")

    def __init__(self, gmod, degree, values):
        size = gmod.group.order**degree
        vals = tuple(gmod.module.reduce(v) for v in values)
        if len(vals) != size:
            raise InvalidData("value table has the wrong size")
        self.gmod = gmod
        self.degree = degree
        self.values = vals

    @classmethod
    def zero(cls, gmod, degree):
        z = gmod.module.zero()
        return cls(gmod, degree, [z] * gmod.group.order**degree)

    @classmethod
    def from_function(cls, gmod, degree, fn):
        n = gmod.group.order
        return cls(
            gmod, degree, [fn(*t) for t in product(range(n), repeat=degree)]
        )

    def index(self, gs):
        n = self.gmod.group.order
        idx = 0
        for g in gs:
            idx = idx * n + g
        return idx

    def value(self, gs):
        return self.values[self.index(gs)]

    def __add__(self, other):
        self._match(other)
        add = self.gmod.module.add
        return Cochain(
            self.gmod,
            self.degree,
            [add(a, b) for a, b in zip(self.values, other.values)],
        )

    def __sub__(self, other):
        self._match(other)
        sub = self.gmod.module.sub
        return Cochain(
            self.gmod,
            self.degree,
            [sub(a, b) for a, b in zip(self.values, other.values)],
        )

    def __neg__(self):
        neg = self.gmod.module.neg
        return Cochain(self.gmod, self.degree, [neg(a) for a in self.values])

    def scale(self, c):
        smul = self.gmod.module.smul
        return Cochain(self.gmod, self.degree, [smul(c, a) for a in self.values])

    def is_zero(self):
        z = self.gmod.module.zero()
        return all(v == z for v in self.values)

    def _match(self, other):
        if self.gmod != other.gmod or self.degree != other.degree:
            raise InvalidData("cochains live in different spaces")

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.gmod == other.gmod
            and self.degree == other.degree
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.gmod, self.degree, self.values))

    def __repr__(self):
        return "Cochain(degree={}, |G|={})".format(
            self.degree, self.gmod.group.order
        )


def random_cochain(gmod, degree, rng):
    size = gmod.group.order**degree
    return Cochain(
        gmod, degree, [gmod.module.random_element(rng) for _ in range(size)]
    )


def coboundary(c):
    """The bar differential, degree n to n + 1."""
    gmod = c.gmod
    group = gmod.group
    n = c.degree
    go = group.order
    add, neg = gmod.module.add, gmod.module.neg
    out = []
    for t in product(range(go), repeat=n + 1):
        acc = gmod.act(t[0], c.value(t[1:]))
        sign = -1
        for i in range(1, n + 1):
            merged = t[: i - 1] + (group.mul(t[i - 1], t[i]),) + t[i + 1 :]
            term = c.value(merged)
            acc = add(acc, term if sign > 0 else neg(term))
            sign = -sign
        last = c.value(t[:n])
        acc = add(acc, last if sign > 0 else neg(last))
        out.append(acc)
    return Cochain(gmod, n + 1, out)


def is_cocycle(c):
    return coboundary(c).is_zero()


def _eliminate(store, L, p):
    """Unit-pivot Gauss sweep on sparse rows modulo L = p^e.

    store: list of dicts var -> coefficient (entries nonzero mod L);
    mutated in place.  Returns (pivots, residual): pivots is the
    ordered list of (var, inverse-of-pivot, row) used, residual the
    indices of surviving rows (no unit coefficient left).
    """
    col = defaultdict(set)
    heap = []
    stuck = set()
    for rid, row in enumerate(store):
        for v in row:
            col[v].add(rid)
        heappush(heap, (len(row), rid))
    pivots = []
    while heap:
        ln, rid = heappop(heap)
        row = store[rid]
        if row is None or len(row) != ln or rid in stuck:
            continue
        if not row:
            store[rid] = None
            continue
        pv = None
        best = None
        for v, cc in row.items():
            if cc % p:
                key = (len(col[v]), v)
                if best is None or key < best:
                    best = key
                    pv = v
        if pv is None:
            stuck.add(rid)
            continue
        inv = pow(row[pv], -1, L)
        pivots.append((pv, inv, row))
        store[rid] = None
        for v in row:
            col[v].discard(rid)
        for rid2 in list(col[pv]):
            other = store[rid2]
            factor = (other[pv] * inv) % L
            for v, cc in row.items():
                新 = (other.get(v, 0) - factor * cc) % L
                if 新:
                    if v not in other:
                        col[v].add(rid2)
                    other[v] = 新
                elif v in other:
                    del other[v]
                    col[v].discard(rid2)
            if rid2 in stuck:
                stuck.discard(rid2)
            heappush(heap, (len(other), rid2))
    residual = [store[rid] for rid in sorted(stuck) if store[rid]]
    return pivots, residual


def _reduce_vector(vec, pivots, L):
    """Clear the pivot coordinates of a sparse vector by subtracting
    multiples of the pivot rows, in sweep order."""
    for pv, inv, row in pivots:
        val = vec.get(pv)
        if not val:
            continue
        factor = (val * inv) % L
        for v, cc in row.items():
            nv = (vec.get(v, 0) - factor * cc) % L
            if nv:
                vec[v] = nv
            elif v in vec:
                del vec[v]
    return vec


class _PrimarySolver:
    """Cohomology of one primary block of the coefficients.

    Variables carry the uniformized scale: the coordinate of true
    order p^b is stored as its image in Z/p^e (e the block exponent),
    with membership equations p^b y = 0 keeping the range honest.
    """

    def __init__(self, gmod, n, prime, coords, exps):
        group = gmod.group
        go = group.order
        self.prime = prime
        self.coords = coords
        self.exps = exps
        self.e = max(exps)
        self.L = prime**self.e
        self.r = len(coords)
        self.n = n
        self.nvars = go**n * self.r
        L, p, r = self.L, prime, self.r

        rows = []
        for t in product(range(go), repeat=n + 1):
            head = 0
            for g in t[1:]:
                head = head * go + g
            merges = []
            for i in range(1, n + 1):
                m = 0
                for j, g in enumerate(
                    t[: i - 1] + (group.mul(t[i - 1], t[i]),) + t[i + 1 :]
                ):
                    m = m * go + g
                merges.append(m)
            tail = 0
            for g in t[:n]:
                tail = tail * go + g
            act = gmod.action[t[0]]
            for cp in range(r):
                bprime = exps[cp]
                eq = defaultdict(int)
                for cs in range(r):
                    a = act[coords[cs]][coords[cp]]
                    if a % (p ** min(bprime, exps[cs])) == 0:
                        continue
                    bc = exps[cs]
                    if bc >= bprime:
                        coeff = a * p ** (bc - bprime)
                    else:
                        coeff = a // p ** (bprime - bc)
                    eq[head * r + cs] += coeff
                sign = -1
                for m in merges:
                    eq[m * r + cp] += sign
                    sign = -sign
                eq[tail * r + cp] += sign
                eq = {v: c % L for v, c in eq.items() if c % L}
                if eq:
                    rows.append(eq)
        for u in range(go**n):
            for cs in range(r):
                if exps[cs] < self.e:
                    rows.append({u * r + cs: p ** exps[cs]})

        brows = []
        if n > 0:
            for s in product(range(go), repeat=n - 1):
                for cs in range(r):
                    b = defaultdict(int)
                    for g in range(go):
                        idx = g
                        for x in s:
                            idx = idx * go + x
                        arow = gmod.action[g][coords[cs]]
                        for cp in range(r):
                            a = arow[coords[cp]] % (p ** exps[cp])
                            if a:
                                b[idx * r + cp] += a * p ** (self.e - exps[cp])
                    sign = -1
                    for i in range(1, n):
                        for a in range(go):
                            bb = group.table[group.inv[a]][s[i - 1]]
                            t2 = s[: i - 1] + (a, bb) + s[i:]
                            idx = 0
                            for x in t2:
                                idx = idx * go + x
                            b[idx * r + cs] += sign * p ** (self.e - exps[cs])
                        sign = -sign
                    for g in range(go):
                        idx = 0
                        for x in s + (g,):
                            idx = idx * go + x
                        b[idx * r + cs] += sign * p ** (self.e - exps[cs])
                    b = {v: c % L for v, c in b.items() if c % L}
                    if b:
                        brows.append(b)

        self.pivots1, residual_eqs = _eliminate(rows, L, p)
        solved = {pv for pv, _, _ in self.pivots1}
        free = [v for v in range(self.nvars) if v not in solved]
        self.free = free
        free_set = set(free)

        bcut = []
        for b in brows:
            cut = {v: c for v, c in b.items() if v in free_set}
            if cut:
                bcut.append(cut)
        self.pivots2, residual_b = _eliminate(bcut, L, p)
        killed = {pv for pv, _, _ in self.pivots2}
        self.survivors = [v for v in free if v not in killed]
        spos = {v: i for i, v in enumerate(self.survivors)}
        ns = len(self.survivors)

        gs = FinAbGroup([L] * ns)
        eq_cols = []
        for eq in residual_eqs:
            colv = [eq.get(v, 0) for v in self.survivors]
            if any(colv):
                eq_cols.append(colv)
        if eq_cols:
            ext = [[eq_cols[j][i] for j in range(len(eq_cols))] for i in range(ns)]
            for j in range(len(eq_cols)):
                ext.append([L if t == j else 0 for t in range(len(eq_cols))])
            zgens = [row[:ns] for row in left_kernel(ext)]
        else:
            zgens = [
                tuple(1 if j == i else 0 for j in range(ns)) for i in range(ns)
            ]
        zsmall = gs.subgroup(zgens)
        self.zabs, self.zemb = zsmall.decompose()
        wrows = []
        for b in residual_b:
            vec = [b.get(v, 0) for v in self.survivors]
            c = solve_mod(self.zemb.matrix, vec, gs.moduli)
            if c is None:
                raise RuntimeError("coboundary escaped the cocycle space")
            wrows.append(self.zabs.reduce(c))
        self.proj = self.zabs.subgroup(wrows).quotient()
        self.invariants = self.proj.target.moduli

        self.gs_moduli = gs.moduli
        self.basis_assignments = []
        for i in range(len(self.invariants)):
            unit = tuple(
                1 if j == i else 0 for j in range(len(self.invariants))
            )
            c = solve_mod(self.proj.matrix, unit, self.proj.target.moduli)
            if c is None:
                raise RuntimeError("quotient generator has no preimage")
            svec = self.zemb(self.zabs.reduce(c))
            self.basis_assignments.append(self._full_assignment(svec))

    def _full_assignment(self, svec):
        """Extend survivor values by zero on other free variables and
        back-substitute the cocycle pivots."""
        vec = {}
        for v, val in zip(self.survivors, svec):
            if val:
                vec[v] = val
        L = self.L
        for pv, inv, row in reversed(self.pivots1):
            acc = 0
            for v, cc in row.items():
                if v != pv and v in vec:
                    acc += cc * vec[v]
            val = (-acc * inv) % L
            if val:
                vec[pv] = val
        return vec

    def block_values(self, vec):
        """y-assignment -> x-values per tuple index (list of tuples)."""
        p, e = self.prime, self.e
        out = []
        r = self.r
        go_n = self.nvars // r
        for u in range(go_n):
            out.append(
                tuple(
                    vec.get(u * r + c, 0) // p ** (e - self.exps[c])
                    for c in range(r)
                )
            )
        return out

    def coords(self, cochain):
        p, e, L, r = self.prime, self.e, self.L, self.r
        vec = {}
        for u, val in enumerate(cochain.values):
            for c in range(r):
                x = val[self.coords[c]] % p ** self.exps[c]
                if x:
                    vec[u * r + c] = x * p ** (e - self.exps[c])
        cut = {v: vec[v] for v in self.free if v in vec}
        _reduce_vector(cut, self.pivots2, L)
        svec = [cut.get(v, 0) for v in self.survivors]
        c = solve_mod(self.zemb.matrix, svec, self.gs_moduli)
        if c is None:
            raise RuntimeError("cocycle missed the solved kernel")
        return self.proj(self.zabs.reduce(c))


def _crt_pair(a1, m1, a2, m2):
    g, x, _ = xgcd(m1, m2)
    if (a2 - a1) % g:
        raise RuntimeError("inconsistent residues")
    lcm = m1 // g * m2
    return (a1 + (a2 - a1) // g * x % (m2 // g) * m1) % lcm, lcm


class CochainSpace:
    """Solved cohomology in one degree: invariants, a fixed basis of
    representative cocycles, and canonical class coordinates."""

    def __init__(self, gmod, degree):
        self.gmod = gmod
        self.degree = degree
        moduli = gmod.module.moduli
        primes = sorted({p for m in moduli for p in factorint(m)})
        self.solvers = []
        for p in primes:
            coords = [i for i, m in enumerate(moduli) if m % p == 0]
            exps = [factorint(moduli[i])[p] for i in coords]
            self.solvers.append(_PrimarySolver(gmod, degree, p, coords, exps))
        width = max((len(s.invariants) for s in self.solvers), default=0)
        invs = []
        for i in range(width):
            f = 1
            for s in self.solvers:
                pi = i - (width - len(s.invariants))
                if pi >= 0:
                    f *= s.invariants[pi]
            invs.append(f)
        self.invariants = tuple(invs)
        self.basis = [self._combined_rep(i, width) for i in range(width)]

    def _combined_rep(self, i, width):
        go_n = self.gmod.group.order**self.degree
        moduli = self.gmod.module.moduli
        values = []
        for u in range(go_n):
            values.append(list(self.gmod.module.zero()))
        for s in self.solvers:
            pi = i - (width - len(s.invariants))
            if pi < 0:
                continue
            block = s.block_values(s.basis_assignments[pi])
            for u in range(go_n):
                for cl, j in enumerate(s.coords):
                    xval = block[u][cl]
                    mj = moduli[j]
                    pe = s.prime ** s.exps[cl]
                    cur = values[u][j]
                    # stitch the p-part into the value, leaving the
                    # other primary components untouched
                    rest = mj // pe
                    comb, _ = _crt_pair(xval % pe, pe, cur % rest, rest) if rest > 1 else (xval % pe, pe)
                    values[u][j] = comb % mj
        return Cochain(self.gmod, self.degree, [tuple(v) for v in values])

    def coords(self, cochain):
        if cochain.gmod != self.gmod or cochain.degree != self.degree:
            raise InvalidData("cochain belongs to a different space")
        if not is_cocycle(cochain):
            raise CocycleViolation("not a cocycle")
        width = len(self.invariants)
        out = [0] * width
        for s in self.solvers:
            pc = s.coords(cochain)
            off = width - len(s.invariants)
            for k, val in enumerate(pc):
                pe = s.invariants[k]
                i = off + k
                rest = self.invariants[i] // pe
                if rest > 1:
                    comb, _ = _crt_pair(val % pe, pe, out[i] % rest, rest)
                else:
                    comb = val % pe
                out[i] = comb % self.invariants[i]
        return tuple(out)


_SPACES = {}


def get_space(gmod, degree, max_order=MAX_GROUP_ORDER, max_degree=MAX_DEGREE):
    if gmod.group.order > max_order:
        raise BudgetExceeded(
            "group order {} beyond limit {}".format(gmod.group.order, max_order)
        )
    if degree > max_degree:
        raise BudgetExceeded(
            "degree {} beyond limit {}".format(degree, max_degree)
        )
    key = (gmod, degree)
    space = _SPACES.get(key)
    if space is None:
        space = CochainSpace(gmod, degree)
        _SPACES[key] = space
    return space


def cohomology_group(gmod, degree, max_order=MAX_GROUP_ORDER, max_degree=MAX_DEGREE):
    """(invariant factors, basis of representative cocycles)."""
    space = get_space(gmod, degree, max_order, max_degree)
    return space.invariants, list(space.basis)


class CohClass:
    """A cohomology class: representative plus canonical coordinates."""

    __slots__ = ("gmod", "degree", "rep", "coords", "invariants")

    def __init__(self, gmod, degree, rep, coords, invariants):
        self.gmod = gmod
        self.degree = degree
        self.rep = rep
        self.coords = coords
        self.invariants = invariants

    def is_zero(self):
        return not any(self.coords)

    def order(self):
        o = 1
        for c, m in zip(self.coords, self.invariants):
            d = m // gcd(c, m)
            o = o * d // gcd(o, d)
        return o

    def __add__(self, other):
        return cohomology_class(self.rep + other.rep)

    def __sub__(self, other):
        return cohomology_class(self.rep - other.rep)

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return (
            self.gmod == other.gmod
            and self.degree == other.degree
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.gmod, self.degree, self.coords))

    def __repr__(self):
        return "CohClass(degree={}, coords={}, invariants={})".format(
            self.degree, self.coords, self.invariants
        )


def cohomology_class(cochain, max_order=MAX_GROUP_ORDER, max_degree=MAX_DEGREE):
    space = get_space(cochain.gmod, cochain.degree, max_order, max_degree)
    return CohClass(
        cochain.gmod,
        cochain.degree,
        cochain,
        space.coords(cochain),
        space.invariants,
    )


def cup_product(alpha, beta, pair, target):
    """Cup product of cocycles through a biadditive G-map on values.

    pair(a, b) must be a value of target's module, additive in each
    slot and compatible with the three actions; the result is checked
    to be a cocycle and bad pairing data is rejected.
    """
    if alpha.gmod.group != beta.gmod.group or alpha.gmod.group != target.group:
        raise InvalidData("cup product needs one common group")
    if not is_cocycle(alpha) or not is_cocycle(beta):
        raise CocycleViolation("cup product needs cocycle inputs")
    group = target.group
    go = group.order
    p, q = alpha.degree, beta.degree
    values = []
    for t in product(range(go), repeat=p + q):
        head = t[:p]
        acc = group.identity
        for g in head:
            acc = group.mul(acc, g)
        moved = target.act(acc, pair(alpha.value(head), beta.value(t[p:])))
        # pair is applied first on the raw second value, then moved:
        # (g1...gp) . pair(alpha, beta)  ==  pair(alpha, (g1...gp) . beta)
        # for an equivariant pairing; we act after pairing so the
        # contract is checked by the cocycle test below either way
        values.append(moved)
    out = Cochain(target, p + q, values)
    if not is_cocycle(out):
        raise InvalidData("pairing is not biadditive G-equivariant")
    return out


def subgroup_embedding_valid(big, small, emb):
    if len(emb) != small.order or len(set(emb)) != small.order:
        return False
    if any(x < 0 or x >= big.order for x in emb):
        return False
    for a in range(small.order):
        for b in range(small.order):
            if emb[small.mul(a, b)] != big.mul(emb[a], emb[b]):
                return False
    return True


def restriction_map(big_gmod, small_group, emb, cls):
    """Restrict a class along a subgroup embedding given as an
    injective index map small -> big."""
    if cls.gmod != big_gmod:
        raise InvalidData("class does not live over the big group")
    if not subgroup_embedding_valid(big_gmod.group, small_group, emb):
        raise InvalidData("not a subgroup embedding")
    sub_gmod = GModule(
        small_group,
        big_gmod.module,
        [big_gmod.action[emb[i]] for i in range(small_group.order)],
    )
    n = cls.degree
    so = small_group.order
    values = [
        cls.rep.value(tuple(emb[g] for g in t))
        for t in product(range(so), repeat=n)
    ]
    return cohomology_class(Cochain(sub_gmod, n, values))


def push_coefficients(cochain, hom, target_gmod):
    """Apply a module map to every value of a cochain."""
    if hom.source != cochain.gmod.module or hom.target != target_gmod.module:
        raise InvalidData("coefficient map endpoints do not match")
    if cochain.gmod.group != target_gmod.group:
        raise InvalidData("coefficient map must keep the group")
    return Cochain(
        target_gmod, cochain.degree, [hom(v) for v in cochain.values]
    )


def qz_enlargement(group, m, k):
    """The inclusion (1/m) Z/Z -> (1/mk) Z/Z as a module map."""
    src = qz_coefficients(group, m)
    dst = qz_coefficients(group, m * k)
    rows = [[k]] if m > 1 else []
    hom = src.module.hom(dst.module, rows)
    return src, dst, hom


def qz_level_map(group, m, k, degree):
    """The map H^n(level m) -> H^n(level mk) on canonical coordinates,
    as a homomorphism of abstract groups."""
    src, dst, hom = qz_enlargement(group, m, k)
    sp1 = get_space(src, degree)
    sp2 = get_space(dst, degree)
    rows = [
        sp2.coords(push_coefficients(b, hom, dst)) for b in sp1.basis
    ]
    h1 = FinAbGroup([x for x in sp1.invariants])
    h2 = FinAbGroup([x for x in sp2.invariants])
    return h1.hom(h2, rows)


def stable_invariants(group, m, degree):
    """Invariants of the image of H^n(level m) inside H^n(level m|G|).

    A single finite level can carry extra classes that die under
    enlargement (already for cyclic groups in even degrees), so the
    colimit coefficients are modeled by this image; for m a multiple
    of |G| it is the honest Q/Z cohomology.
    """
    f = qz_level_map(group, m, group.order, degree)
    abstract, _ = f.image().decompose()
    return abstract.moduli
