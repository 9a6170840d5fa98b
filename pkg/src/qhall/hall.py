"""Finite-field oracle: quiver representations over F_q and their Hall
algebra, used to cross-check the symbolic structure constants.

Points of the representation variety are tuples of matrices (one per
arrow, entries 0..q-1), iso-classes are enumerated as orbits under the
product of general linear groups, and the canonical representative of a
class is the lexicographically least point of the orbit.  Exhaustive
loops check a configurable budget and fail fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .cartan import CartanDatum, Quiver, is_sink, is_source, load_datum
from .falgebra import normal_form
from .freealg import FreeElement, words_of_weight
from .ratfunc import ONE as RF_ONE

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(
            f"enumeration needs about {needed} points but the budget is "
            f"{budget}; rerun with smaller dimensions or a larger --budget"
        )
        self.needed = needed
        self.budget = budget


# ---------------------------------------------------------------------------
# the field


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _poly_mul_mod(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_rem(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        off = len(a) - len(b)
        for j, y in enumerate(b):
            a[off + j] = (a[off + j] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _find_irreducible(p: int, d: int):
    """Smallest monic irreducible of degree d over F_p, by encoding order."""
    for code in range(p ** d):
        coeffs = [(code // p ** k) % p for k in range(d)] + [1]
        if _irreducible(coeffs, p):
            return coeffs
    raise RuntimeError("no irreducible polynomial found")


def _irreducible(f, p):
    d = len(f) - 1
    # x^(p^k) == x mod f has gcd checks; small d, so trial division works
    for code in range(p, p ** ((d // 2) + 1)):
        g = []
        c = code
        while c:
            g.append(c % p)
            c //= p
        if len(g) < 2 or g[-1] == 0:
            continue
        if len(_poly_rem(f, g, p)) == 0:
            return False
    return True


class Fq:
    """The field with q = p^d elements; elements are ints 0..q-1 encoding
    polynomial residues base p.  Multiplication runs on log/antilog
    tables built from a primitive element (q <= 256)."""

    def __init__(self, q: int):
        if q < 2 or q > 256:
            raise ValueError("field size must be between 2 and 256")
        p, d = q, 1
        for cand in range(2, q + 1):
            if _is_prime(cand):
                k, power = 0, 1
                while power < q:
                    power *= cand
                    k += 1
                if power == q:
                    p, d = cand, k
                    break
        else:
            raise ValueError(f"{q} is not a prime power")
        if p ** d != q:
            raise ValueError(f"{q} is not a prime power")
        self.p, self.d, self.q = p, d, q
        self.modulus = _find_irreducible(p, d) if d > 1 else None
        self._add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        self._neg = [next(b for b in range(q) if self._add[a][b] == 0) for a in range(q)]
        gen = self._find_generator()
        self.exp = [1] * (q - 1)
        self.log = [0] * q
        acc = 1
        for k in range(q - 1):
            self.exp[k] = acc
            self.log[acc] = k
            acc = self._mul_slow(acc, gen)
        self._verify()

    def _digits(self, a):
        return [(a // self.p ** k) % self.p for k in range(self.d)]

    def _undigits(self, ds):
        return sum(c * self.p ** k for k, c in enumerate(ds))

    def _add_slow(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def _mul_slow(self, a, b):
        if self.d == 1:
            return (a * b) % self.p
        pa = [c for c in self._digits(a)]
        pb = [c for c in self._digits(b)]
        while pa and pa[-1] == 0:
            pa.pop()
        while pb and pb[-1] == 0:
            pb.pop()
        if not pa or not pb:
            return 0
        prod = _poly_mul_mod(pa, pb, self.p)
        rem = _poly_rem(prod, self.modulus, self.p)
        return self._undigits(rem + [0] * (self.d - len(rem)))

    def _find_generator(self):
        for g in range(1, self.q):
            acc, order = g, 1
            while acc != 1:
                acc = self._mul_slow(acc, g)
                order += 1
            if order == self.q - 1:
                return g
        raise RuntimeError("no multiplicative generator found")

    def _verify(self):
        q = self.q
        sample = range(q) if q <= 32 else [0, 1, 2, q // 2, q - 1]
        for a in sample:
            for b in sample:
                ab = self.mul(a, b)
                if ab != self.mul(b, a) or self.add(a, b) != self.add(b, a):
                    raise RuntimeError("field tables are not commutative")
                for c in sample:
                    if self.mul(a, self.add(b, c)) != self.add(
                        self.mul(a, b), self.mul(a, c)
                    ):
                        raise RuntimeError("distributivity fails")
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise RuntimeError("associativity fails")
        for a in range(1, q):
            if self.mul(a, self.inv(a)) != 1:
                raise RuntimeError("inverses fail")

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]


@lru_cache(maxsize=None)
def field(q: int) -> Fq:
    return Fq(q)


# ---------------------------------------------------------------------------
# matrices over Fq: tuples of row tuples


def zero_mat(rows, cols):
    return tuple((0,) * cols for _ in range(rows))


def mat_mul(F: Fq, a, b):
    if not a or not b:
        return tuple(() for _ in a) if a else ()
    bl = list(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bl:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = F.add(s, F.mul(x, y))
            orow.append(s)
        out.append(tuple(orow))
    return tuple(out)


def mat_rref(F: Fq, a):
    m = [list(r) for r in a]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def mat_rank(F: Fq, a):
    return len(mat_rref(F, a)[1])


def mat_inv(F: Fq, a):
    n = len(a)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(a)]
    red, pivots = mat_rref(F, aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def kernel_basis(F: Fq, a, ncols):
    """Column vectors (as rows) spanning the kernel of a."""
    red, pivots = mat_rref(F, a)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    out = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = F.neg(red[r][fc])
        out.append(tuple(vec))
    return out


def solve_columns(F: Fq, basis_cols, target_cols):
    """Express target columns in terms of basis columns; both are lists of
    column vectors.  Returns the coefficient matrix or None."""
    if not target_cols:
        return ()
    nrows = len(basis_cols[0]) if basis_cols else len(target_cols[0])
    out_cols = []
    for t in target_cols:
        aug = [
            [bc[r] for bc in basis_cols] + [t[r]] for r in range(nrows)
        ]
        red, pivots = mat_rref(F, aug)
        n = len(basis_cols)
        if n in pivots:
            return None
        x = [0] * n
        for r, pc in enumerate(pivots):
            x[pc] = red[r][n]
        out_cols.append(x)
    return tuple(tuple(out_cols[c][r] for c in range(len(out_cols))) for r in range(len(basis_cols)))


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class QuiverRep:
    quiver: Quiver
    q: int
    dims: tuple
    mats: tuple  # one matrix per arrow, shape dims[t] x dims[s]

    def point(self) -> tuple:
        return self.mats


def _arrow_shapes(quiver: Quiver, dims: tuple):
    idx = {v: k for k, v in enumerate(quiver.vertices)}
    return [
        (dims[idx[t]], dims[idx[s]]) for s, t in quiver.arrows
    ]


def e_v_dimension(quiver: Quiver, dims: tuple) -> int:
    return sum(r * c for r, c in _arrow_shapes(quiver, dims))


def all_points(quiver: Quiver, q: int, dims: tuple, budget: int = DEFAULT_BUDGET):
    """Every point of the representation space, lexicographic order."""
    shapes = _arrow_shapes(quiver, dims)
    total_entries = sum(r * c for r, c in shapes)
    needed = q ** total_entries
    if needed > budget:
        raise BudgetExceeded(needed, budget)

    def rec(k):
        if k == len(shapes):
            yield ()
            return
        rows, cols = shapes[k]
        n = rows * cols
        for rest in rec(k + 1):
            for code in range(q ** n):
                entries = []
                c = code
                for _ in range(n):
                    entries.append(c % q)
                    c //= q
                mat = tuple(
                    tuple(entries[r * cols + cc] for cc in range(cols))
                    for r in range(rows)
                )
                yield (mat,) + rest

    yield from rec(0)


def _gl_generators(F: Fq, n: int):
    if n == 0:
        return []
    gens = []
    prim = F.exp[1] if F.q > 2 else 1
    diag = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    diag[0][0] = prim
    gens.append(tuple(tuple(r) for r in diag))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for c in range(1, F.q):
                m = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
                m[i][j] = c
                gens.append(tuple(tuple(r) for r in m))
    return gens


@lru_cache(maxsize=None)
def _group_generators(quiver: Quiver, q: int, dims: tuple):
    """Generators of prod GL(V_i) as (vertex index, matrix, inverse)."""
    F = field(q)
    out = []
    for k, n in enumerate(dims):
        for g in _gl_generators(F, n):
            out.append((k, g, mat_inv(F, g)))
    return tuple(out)


def _act(F: Fq, quiver: Quiver, dims: tuple, gen, point):
    k, g, ginv = gen
    idx = {v: i for i, v in enumerate(quiver.vertices)}
    mats = []
    for (s, t), m in zip(quiver.arrows, point):
        if idx[t] == k:
            m = mat_mul(F, g, m)
        if idx[s] == k:
            m = mat_mul(F, m, ginv)
        mats.append(m)
    return tuple(mats)


def orbit_of(quiver: Quiver, q: int, dims: tuple, point: tuple) -> set:
    F = field(q)
    gens = _group_generators(quiver, q, dims)
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for p in frontier:
            for gen in gens:
                moved = _act(F, quiver, dims, gen, p)
                if moved not in seen:
                    seen.add(moved)
                    nxt.append(moved)
        frontier = nxt
    return seen


_canon_cache: dict = {}


def canonical_point(quiver: Quiver, q: int, dims: tuple, point: tuple) -> tuple:
    key = (quiver, q, dims, point)
    hit = _canon_cache.get(key)
    if hit is not None:
        return hit
    orb = orbit_of(quiver, q, dims, point)
    rep = min(orb)
    for p in orb:
        _canon_cache[(quiver, q, dims, p)] = rep
    return rep


@lru_cache(maxsize=None)
def iso_classes(
    quiver: Quiver, q: int, dims: tuple, budget: int = DEFAULT_BUDGET
) -> tuple:
    """G-orbit decomposition of the representation space: a sorted tuple
    of (canonical representative, orbit size)."""
    seen: set = set()
    out = []
    for p in all_points(quiver, q, dims, budget):
        if p in seen:
            continue
        orb = orbit_of(quiver, q, dims, p)
        rep = min(orb)
        for x in orb:
            _canon_cache[(quiver, q, dims, x)] = rep
        seen.update(orb)
        out.append((rep, len(orb)))
    return tuple(sorted(out))


def gl_order(q: int, n: int) -> int:
    out = 1
    for k in range(n):
        out *= q ** n - q ** k
    return out


def group_order(q: int, dims: tuple) -> int:
    out = 1
    for n in dims:
        out *= gl_order(q, n)
    return out


# ---------------------------------------------------------------------------
# subrepresentations and Hall numbers


def _subspaces(F: Fq, n: int, k: int):
    """All k-dimensional subspaces of F^n as rref basis-row matrices."""
    if k == 0:
        yield ()
        return
    if k > n:
        return
    from itertools import combinations

    for pivots in combinations(range(n), k):
        free_positions = [
            (r, c)
            for r, p in enumerate(pivots)
            for c in range(p + 1, n)
            if c not in pivots
        ]
        count = len(free_positions)
        for code in range(F.q ** count):
            rows = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            c = code
            for (r, col) in free_positions:
                rows[r][col] = c % F.q
                c //= F.q
            yield tuple(tuple(r) for r in rows)


def graded_subreps(M: QuiverRep, sub_dims: tuple):
    """All arrow-stable graded subspaces of the given dimension vector,
    as tuples of basis-row matrices per vertex."""
    F = field(M.q)
    quiver = M.quiver
    idx = {v: i for i, v in enumerate(quiver.vertices)}
    per_vertex = [
        list(_subspaces(F, M.dims[i], sub_dims[i])) for i in range(len(M.dims))
    ]

    def stable(choice):
        for (s, t), m in zip(quiver.arrows, M.mats):
            si, ti = idx[s], idx[t]
            ubasis = choice[si]
            tbasis = choice[ti]
            target_cols = [
                tuple(
                    _apply_mat(F, m, row)[r] for r in range(M.dims[ti])
                )
                for row in ubasis
            ]
            basis_cols = [tuple(row) for row in tbasis]
            if target_cols and solve_columns(F, basis_cols, target_cols) is None:
                return False
        return True

    def rec(k, acc):
        if k == len(per_vertex):
            if stable(acc):
                yield tuple(acc)
            return
        for s in per_vertex[k]:
            acc.append(s)
            yield from rec(k + 1, acc)
            acc.pop()

    yield from rec(0, [])


def _apply_mat(F: Fq, m, vec):
    out = []
    for row in m:
        s = 0
        for x, y in zip(row, vec):
            if x and y:
                s = F.add(s, F.mul(x, y))
        out.append(s)
    return tuple(out)


def _complete_basis(F: Fq, rows, n):
    """Extend independent rows to a basis of F^n with unit vectors."""
    chosen = [list(r) for r in rows]
    for c in range(n):
        cand = [0] * n
        cand[c] = 1
        test = chosen + [cand]
        if mat_rank(F, tuple(tuple(r) for r in test)) == len(test):
            chosen.append(cand)
        if len(chosen) == n:
            break
    return tuple(tuple(r) for r in chosen)


def sub_quotient_reps(M: QuiverRep, sub_basis: tuple):
    """Induced representations on a stable graded subspace and on the
    quotient by it."""
    F = field(M.q)
    quiver = M.quiver
    idx = {v: i for i, v in enumerate(quiver.vertices)}
    sub_dims = tuple(len(b) for b in sub_basis)
    quo_dims = tuple(n - k for n, k in zip(M.dims, sub_dims))
    full = []
    for i, b in enumerate(sub_basis):
        full.append(_complete_basis(F, b, M.dims[i]))
    # change of basis: coordinates of x in the completed basis
    inv = [
        mat_inv(F, tuple(zip(*full[i]))) if M.dims[i] else ()
        for i in range(len(M.dims))
    ]
    sub_mats, quo_mats = [], []
    for (s, t), m in zip(quiver.arrows, M.mats):
        si, ti = idx[s], idx[t]
        ks, kt = sub_dims[si], sub_dims[ti]
        cols = []
        for r in range(M.dims[si]):
            basis_vec = full[si][r]
            img = _apply_mat(F, m, basis_vec)
            coords = _apply_mat(F, inv[ti], img) if M.dims[ti] else ()
            cols.append(coords)
        sub_mats.append(
            tuple(tuple(cols[c][r] for c in range(ks)) for r in range(kt))
        )
        quo_mats.append(
            tuple(
                tuple(cols[ks + c][kt + r] for c in range(M.dims[si] - ks))
                for r in range(M.dims[ti] - kt)
            )
        )
    sub = QuiverRep(quiver, M.q, sub_dims, tuple(sub_mats))
    quo = QuiverRep(quiver, M.q, quo_dims, tuple(quo_mats))
    return sub, quo


def hall_number(M: QuiverRep, N: QuiverRep, L: QuiverRep) -> int:
    """Count arrow-stable graded subspaces of M isomorphic to L with
    quotient isomorphic to N."""
    if tuple(
        a + b for a, b in zip(N.dims, L.dims)
    ) != M.dims:
        raise ValueError("dimension vectors of quotient and sub must add up")
    quiver, q = M.quiver, M.q
    canon_L = canonical_point(quiver, q, L.dims, L.mats)
    canon_N = canonical_point(quiver, q, N.dims, N.mats)
    count = 0
    for sub_basis in graded_subreps(M, L.dims):
        sub, quo = sub_quotient_reps(M, sub_basis)
        if canonical_point(quiver, q, sub.dims, sub.mats) != canon_L:
            continue
        if canonical_point(quiver, q, quo.dims, quo.mats) == canon_N:
            count += 1
    return count


# ---------------------------------------------------------------------------
# the twisted composition product


class HallElement:
    """Linear combination of iso-classes with exact rational coefficients.
    Keys are (dims, canonical point)."""

    __slots__ = ("quiver", "q", "terms")

    def __init__(self, quiver: Quiver, q: int, terms: dict | None = None):
        self.quiver = quiver
        self.q = q
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @staticmethod
    def unit(quiver: Quiver, q: int) -> "HallElement":
        dims = (0,) * len(quiver.vertices)
        shapes = _arrow_shapes(quiver, dims)
        point = tuple(zero_mat(r, c) for r, c in shapes)
        return HallElement(quiver, q, {(dims, point): Fraction(1)})

    @staticmethod
    def of_class(quiver: Quiver, q: int, dims: tuple, point: tuple) -> "HallElement":
        return HallElement(
            quiver, q, {(dims, canonical_point(quiver, q, dims, point)): Fraction(1)}
        )

    @staticmethod
    def simple(quiver: Quiver, q: int, vertex: int) -> "HallElement":
        dims = tuple(1 if v == vertex else 0 for v in quiver.vertices)
        shapes = _arrow_shapes(quiver, dims)
        point = tuple(zero_mat(r, c) for r, c in shapes)
        return HallElement.of_class(quiver, q, dims, point)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, HallElement)
            and (self.quiver, self.q) == (other.quiver, other.q)
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HallElement(self.quiver, self.q, out)

    def scale(self, c) -> "HallElement":
        c = Fraction(c)
        if not c:
            return HallElement(self.quiver, self.q)
        return HallElement(self.quiver, self.q, {k: c * x for k, x in self.terms.items()})

    def __repr__(self):
        return f"HallElement({self.terms})"


def hall_product(
    a: HallElement, b: HallElement, v_num: int, budget: int = DEFAULT_BUDGET
) -> HallElement:
    """Twisted composition product: the Euler-form power of v times the
    Hall-number sum, with the left factor the quotient side."""
    if (a.quiver, a.q) != (b.quiver, b.q):
        raise ValueError("operands live over different Hall algebras")
    q = a.q
    if v_num * v_num != q:
        raise ValueError(
            "the evaluation parameter must square to q exactly; use a "
            "perfect-square q such as 4"
        )
    quiver = a.quiver
    datum = load_datum(quiver)
    out = HallElement(quiver, q)
    for (dims_a, pa), ca in a.terms.items():
        A = QuiverRep(quiver, q, dims_a, pa)
        for (dims_b, pb), cb in b.terms.items():
            B = QuiverRep(quiver, q, dims_b, pb)
            dims_m = tuple(x + y for x, y in zip(dims_a, dims_b))
            twist = Fraction(v_num) ** datum.euler_form(dims_a, dims_b)
            terms: dict = {}
            for rep, _size in iso_classes(quiver, q, dims_m, budget):
                M = QuiverRep(quiver, q, dims_m, rep)
                g = hall_number(M, A, B)
                if g:
                    terms[(dims_m, rep)] = ca * cb * twist * g
            out = out + HallElement(quiver, q, terms)
    return out


def hall_word(
    quiver: Quiver, q: int, v_num: int, word: tuple, budget: int = DEFAULT_BUDGET
) -> HallElement:
    """Image of a theta-word: the ordered product of simple-class
    generators."""
    out = HallElement.unit(quiver, q)
    for letter in word:
        out = hall_product(out, HallElement.simple(quiver, q, letter), v_num, budget)
    return out


# ---------------------------------------------------------------------------
# strata and reflection functors


def stratum_index(x: QuiverRep, vertex: int) -> int:
    """At a sink: codimension of the total incoming image; at a source:
    dimension of the total outgoing kernel."""
    F = field(x.q)
    quiver = x.quiver
    idx = {v: i for i, v in enumerate(quiver.vertices)}
    vi = idx[vertex]
    if is_sink(vertex, quiver):
        blocks = [m for (s, t), m in zip(quiver.arrows, x.mats) if t == vertex]
        ni = x.dims[vi]
        if ni == 0:
            return 0
        if not blocks:
            return ni
        rows = [sum((list(b[r]) for b in blocks), []) for r in range(ni)]
        return ni - mat_rank(F, tuple(tuple(r) for r in rows))
    if is_source(vertex, quiver):
        blocks = [m for (s, t), m in zip(quiver.arrows, x.mats) if s == vertex]
        ni = x.dims[vi]
        if ni == 0:
            return 0
        if not blocks:
            return ni
        stacked = tuple(row for b in blocks for row in b)
        return ni - mat_rank(F, stacked)
    raise ValueError(f"vertex {vertex} is neither a sink nor a source")


def stratum_counts(
    quiver: Quiver, dims: tuple, q: int, vertex: int, budget: int = DEFAULT_BUDGET
) -> list[int]:
    if not (is_sink(vertex, quiver) or is_source(vertex, quiver)):
        raise ValueError(f"vertex {vertex} is neither a sink nor a source")
    ni = dims[quiver.vertices.index(vertex)]
    counts = [0] * (ni + 1)
    for p in all_points(quiver, q, dims, budget):
        counts[stratum_index(QuiverRep(quiver, q, dims, p), vertex)] += 1
    return counts


def bgp_reflect(vertex: int, x: QuiverRep) -> QuiverRep:
    """Reflection functor at a stratum-0 sink (or its inverse at a
    kernel-stratum-0 source); errors off the open stratum."""
    from .cartan import sigma_i

    F = field(x.q)
    quiver = x.quiver
    idx = {v: i for i, v in enumerate(quiver.vertices)}
    vi = idx[vertex]
    if stratum_index(x, vertex) != 0:
        raise ValueError(
            "reflection functor is only an equivalence on the open stratum"
        )
    new_quiver = sigma_i(vertex, quiver)
    new_dims = load_datum(quiver).reflect_dim(vertex, x.dims)
    if is_sink(vertex, quiver):
        incoming = [
            (k, s) for k, (s, t) in enumerate(quiver.arrows) if t == vertex
        ]
        ni = x.dims[vi]
        widths = [x.dims[idx[s]] for _k, s in incoming]
        total = sum(widths)
        rows = []
        for r in range(ni):
            row = []
            for (k, _s), w in zip(incoming, widths):
                row.extend(x.mats[k][r] if ni else [0] * w)
            rows.append(tuple(row))
        kern = kernel_basis(F, tuple(rows), total) if total else []
        dprime = len(kern)
        assert dprime == new_dims[vi]
        new_mats = []
        for k, (s, t) in enumerate(quiver.arrows):
            if t != vertex:
                new_mats.append(x.mats[k])
                continue
            pos = 0
            for (kk, ss), w in zip(incoming, widths):
                if kk == k:
                    break
                pos += w
            w = x.dims[idx[s]]
            block = tuple(
                tuple(vec[pos + r] for vec in kern) for r in range(w)
            )
            new_mats.append(block)
        return QuiverRep(new_quiver, x.q, new_dims, tuple(new_mats))
    if is_source(vertex, quiver):
        outgoing = [
            (k, t) for k, (s, t) in enumerate(quiver.arrows) if s == vertex
        ]
        ni = x.dims[vi]
        heights = [x.dims[idx[t]] for _k, t in outgoing]
        total = sum(heights)
        stacked = []
        for (k, _t), h in zip(outgoing, heights):
            for r in range(h):
                stacked.append(tuple(x.mats[k][r]))
        # columns of the stacked map span the image; complete to a basis
        img_cols = [
            tuple(stacked[r][c] for r in range(total)) for c in range(ni)
        ]
        full = _complete_basis(F, [list(c) for c in img_cols], total)
        inv = mat_inv(F, tuple(zip(*full))) if total else ()
        dprime = total - ni
        assert dprime == new_dims[vi]
        new_mats = []
        for k, (s, t) in enumerate(quiver.arrows):
            if s != vertex:
                new_mats.append(x.mats[k])
                continue
            pos = 0
            for (kk, tt), h in zip(outgoing, heights):
                if kk == k:
                    break
                pos += h
            h = x.dims[idx[t]]
            # projection to the cokernel coordinates of the inclusion of V_t
            block = []
            for r in range(dprime):
                row = []
                for c in range(h):
                    unit = [0] * total
                    unit[pos + c] = 1
                    coords = _apply_mat(F, inv, tuple(unit))
                    row.append(coords[ni + r])
                block.append(tuple(row))
            new_mats.append(tuple(block))
        return QuiverRep(new_quiver, x.q, new_dims, tuple(new_mats))
    raise ValueError(f"vertex {vertex} is neither a sink nor a source")


# ---------------------------------------------------------------------------
# comparison against the symbolic quotient algebra


def specialize_compare(
    datum: CartanDatum,
    nu_a: tuple,
    nu_b: tuple,
    q: int,
    budget: int = DEFAULT_BUDGET,
) -> list[dict]:
    """Check that composition-algebra products of theta-word functions
    match the symbolic structure constants evaluated at v = sqrt(q)."""
    v_num = isqrt(q)
    if v_num * v_num != q:
        raise ValueError("comparison needs a perfect-square q")
    quiver = datum.quiver
    report = []
    for w1 in words_of_weight(datum, nu_a):
        h1 = hall_word(quiver, q, v_num, w1, budget)
        for w2 in words_of_weight(datum, nu_b):
            h2 = hall_word(quiver, q, v_num, w2, budget)
            lhs = hall_product(h1, h2, v_num, budget)
            prod = normal_form(FreeElement(datum, {w1 + w2: RF_ONE}))
            rhs = HallElement(quiver, q)
            for word, coeff in prod.terms.items():
                val = coeff.eval_at(Fraction(v_num))
                rhs = rhs + hall_word(quiver, q, v_num, word, budget).scale(val)
            report.append(
                {
                    "left": w1,
                    "right": w2,
                    "match": lhs == rhs,
                }
            )
    return report
