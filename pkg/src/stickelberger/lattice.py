"""Exact sublattices of Z^n kept in a canonical Hermite normal form.

Convention: rows, upper triangular (echelon), each pivot positive, every
entry above a pivot reduced into ``[0, pivot)``.  Two generating sets of
the same lattice give identical bases.
"""
import math
from dataclasses import dataclass

from .errors import DimensionMismatch, NotASublattice

INFINITE = math.inf


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


class HNFBuilder:
    """Folds generators in one at a time, keeping an echelon basis.

    Rows are kept reduced to the right of their pivot against later pivots,
    which bounds entry growth on long generator streams.  Once the lattice
    has full rank with all pivots 1, further generators are skipped.
    """

    def __init__(self, n):
        self.n = n
        self.pivots = {}  # pivot column -> row (list)
        self.unit_pivots = 0

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def saturated(self):
        return self.unit_pivots == self.n

    def _reduce_tail(self, v, start):
        n = self.n
        piv = self.pivots
        for k in range(start, n):
            x = v[k]
            if x:
                p = piv.get(k)
                if p is not None:
                    q = x // p[k]
                    if q:
                        for i in range(k, n):
                            v[i] -= q * p[i]

    def _install(self, j, row):
        if row[j] < 0:
            row = [-x for x in row]
        self._reduce_tail(row, j + 1)
        old = self.pivots.get(j)
        if old is not None and old[j] == 1:
            self.unit_pivots -= 1
        if row[j] == 1:
            self.unit_pivots += 1
        self.pivots[j] = row

    def add(self, vec):
        n = self.n
        if len(vec) != n:
            raise DimensionMismatch(f"vector of length {len(vec)} in Z^{n}")
        if self.saturated:
            return
        v = [int(x) for x in vec]
        piv = self.pivots
        j = 0
        while True:
            while j < n and not v[j]:
                j += 1
            if j == n:
                return
            p = piv.get(j)
            if p is None:
                self._install(j, v)
                return
            a, b = p[j], v[j]
            if b % a == 0:
                q = b // a
                for i in range(j, n):
                    v[i] -= q * p[i]
            else:
                g, s, t = xgcd(a, b)
                A, B = a // g, b // g
                newp = [s * x + t * y for x, y in zip(p, v)]
                v = [A * y - B * x for x, y in zip(p, v)]
                self._install(j, newp)
            j += 1

    def extend(self, vecs):
        for v in vecs:
            self.add(v)
            if self.saturated:
                break
        return self

    def lattice(self):
        n = self.n
        cols = sorted(self.pivots)
        rows = [list(self.pivots[c]) for c in cols]
        # reduce entries above each pivot into [0, pivot); later pivot rows
        # vanish left of their pivot, so left-to-right order is stable
        for s, rs in enumerate(rows):
            for r in range(s + 1, len(rows)):
                c = cols[r]
                p = rows[r]
                q = rs[c] // p[c]
                if q:
                    for i in range(c, n):
                        rs[i] -= q * p[i]
        return IntegerLattice(n, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class IntegerLattice:
    ambient_rank: int
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)

    @property
    def pivot_columns(self):
        out = []
        for row in self.basis:
            out.append(next(i for i, x in enumerate(row) if x))
        return tuple(out)

    def is_full_rank(self):
        return self.rank == self.ambient_rank

    def __contains__(self, v):
        return contains(self, v)

    def to_json(self):
        return {"ambient_rank": self.ambient_rank,
                "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, data):
        lat = hnf_from_generators(data["basis"], data["ambient_rank"])
        if [list(r) for r in lat.basis] != [list(r) for r in data["basis"]]:
            raise ValueError("stored basis is not in canonical form")
        return lat


def hnf_from_generators(rows, n):
    return HNFBuilder(n).extend(rows).lattice()


def ambient(n):
    return IntegerLattice(n, tuple(
        tuple(1 if i == j else 0 for i in range(n)) for j in range(n)))


def _reduce(L, v):
    """Reduce v against the basis; return (residual, coordinates)."""
    if len(v) != L.ambient_rank:
        raise DimensionMismatch(
            f"vector of length {len(v)} in Z^{L.ambient_rank}")
    v = [int(x) for x in v]
    coords = []
    for row, c in zip(L.basis, L.pivot_columns):
        if any(v[:c]):
            return v, None
        q, r = divmod(v[c], row[c])
        if r:
            return v, None
        coords.append(q)
        if q:
            for i in range(c, len(v)):
                v[i] -= q * row[i]
    return v, coords


def contains(L, v):
    res, coords = _reduce(L, v)
    return coords is not None and not any(res)


def coordinates(L, v):
    """Integer coordinates of v in the basis of L, or None when v is not in L."""
    res, coords = _reduce(L, v)
    if coords is None or any(res):
        return None
    return coords


def is_sublattice(sub, sup):
    if sub.ambient_rank != sup.ambient_rank:
        raise DimensionMismatch("lattices live in different ambient spaces")
    return all(contains(sup, row) for row in sub.basis)


def index_in(sub, sup):
    """[sup : sub] as an integer, or INFINITE when the ranks differ."""
    if not is_sublattice(sub, sup):
        raise NotASublattice("first lattice is not contained in the second")
    if sub.rank != sup.rank:
        return INFINITE
    num = 1
    for row, c in zip(sub.basis, sub.pivot_columns):
        num *= row[c]
    den = 1
    for row, c in zip(sup.basis, sup.pivot_columns):
        den *= row[c]
    return num // den


def intersect(L1, L2):
    """Intersection via the kernel of the stacked bases.

    Rows (b, b) for b in L1 and (b, 0) for b in L2 are reduced in Z^{2n};
    rows with vanishing left half carry the intersection in the right half.
    """
    n = L1.ambient_rank
    if L2.ambient_rank != n:
        raise DimensionMismatch("lattices live in different ambient spaces")
    if L1.rank == 0 or L2.rank == 0:
        return IntegerLattice(n, ())
    gens = [list(b) + list(b) for b in L1.basis]
    gens += [list(b) + [0] * n for b in L2.basis]
    builder = HNFBuilder(2 * n).extend(gens)
    out = [row[n:] for c, row in builder.pivots.items() if c >= n]
    return hnf_from_generators(out, n)


def sum_lattice(L1, L2):
    if L1.ambient_rank != L2.ambient_rank:
        raise DimensionMismatch("lattices live in different ambient spaces")
    return hnf_from_generators(list(L1.basis) + list(L2.basis), L1.ambient_rank)


def smallest_positive_on_axis(L, axis=0):
    """Least m > 0 with m*e_axis in L, or None when the axis meets L only in 0."""
    n = L.ambient_rank
    line = IntegerLattice(n, (tuple(1 if i == axis else 0 for i in range(n)),))
    meet = intersect(L, line)
    if meet.rank == 0:
        return None
    return abs(meet.basis[0][axis])


def smith_invariants(L):
    """Invariant factors of Z^n / L, d_1 | d_2 | ..., trailing zeros for rank deficit."""
    n = L.ambient_rank
    diag = smith_diagonal([list(r) for r in L.basis])
    return diag + [0] * (n - len(diag))


def smith_diagonal(mat):
    """Nonzero Smith diagonal of an integer matrix, in divisibility order."""
    A = [list(map(int, r)) for r in mat if any(r)]
    if not A:
        return []
    rows, cols = len(A), len(A[0])
    out = []
    t = 0
    while t < min(rows, cols):
        # choose the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[t]
                if A[t][j]:
                    done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows)
                            for j in range(t + 1, cols) if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, cols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for r in A:
                r[t], r[j] = r[j], r[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


def bareiss_determinant(mat):
    """Exact determinant by fraction-free elimination."""
    M = [list(map(int, r)) for r in mat]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pk = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * M[n - 1][n - 1]
