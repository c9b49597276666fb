"""Exact rational and integer linear algebra.

Ranks and kernels over Q, Hermite/Smith normal forms over Z, mixed
integer-rational affine solving, lattice indices with coset enumeration,
and ranks of spans of exterior powers.  Matrices are lists of row tuples;
rational entries are Fractions, integer entries are plain ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


# ---------------------------------------------------------------------------
# generic elimination (works over Fraction and over FElem)

def rref(rows) -> list[list]:
    """Reduced row echelon form over a field; zero rows dropped.

    Canonical: two matrices have the same row space iff their rrefs agree.
    Entries only need +, -, *, / and truthiness-at-zero, so this serves both
    Fraction matrices and quadratic-field matrices.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        pr = None
        for i in range(pivot_row, len(mat)):
            if mat[i][col]:
                pr = i
                break
        if pr is None:
            continue
        mat[pivot_row], mat[pr] = mat[pr], mat[pivot_row]
        piv = mat[pivot_row][col]
        mat[pivot_row] = [x / piv for x in mat[pivot_row]]
        for i in range(len(mat)):
            if i != pivot_row and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return [r for r in mat[:pivot_row]]


def rat_rank(rows) -> int:
    return len(rref(rows))


def rational_kernel(rows, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x in Q^ncols : M x = 0}."""
    red = rref(rows)
    pivots = []
    for r in red:
        for j, x in enumerate(r):
            if x:
                pivots.append(j)
                break
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def left_annihilator(rows, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {c : c M = 0} for M given by `rows` (len(rows) x ncols)."""
    transposed = [tuple(r[i] for r in rows) for i in range(ncols)]
    return rational_kernel(transposed, len(rows))


# ---------------------------------------------------------------------------
# integer normal forms

def _ident(k: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def hnf(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form: H = U M, U unimodular.

    Row echelon with positive pivots and entries above each pivot reduced
    into [0, pivot); canonical for the row lattice.  H keeps the shape of M
    (zero rows at the bottom).
    """
    h = [list(r) for r in rows]
    nrows = len(h)
    u = _ident(nrows)
    if nrows == 0:
        return h, u
    ncols = len(h[0])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # clear column c below row r by gcd steps
        while True:
            nz = [i for i in range(r, nrows) if h[i][c] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            for i in nz:
                if i == p:
                    continue
                q = h[i][c] // h[p][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[p])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[p])]
        nz = [i for i in range(r, nrows) if h[i][c] != 0]
        if not nz:
            continue
        p = nz[0]
        h[r], h[p] = h[p], h[r]
        u[r], u[p] = u[p], u[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def snf(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form: D = U M V, U and V unimodular, d1 | d2 | ... >= 0."""
    d = [list(r) for r in rows]
    nrows = len(d)
    ncols = len(d[0]) if nrows else 0
    u = _ident(nrows)
    v = _ident(ncols)
    k = 0
    while k < min(nrows, ncols):
        # locate a pivot
        piv = None
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < best):
                    best = abs(d[i][j])
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        d[k], d[i0] = d[i0], d[k]
        u[k], u[i0] = u[i0], u[k]
        for row in d:
            row[k], row[j0] = row[j0], row[k]
        for row in v:
            row[k], row[j0] = row[j0], row[k]
        # clear row and column k
        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, nrows):
                if d[i][k]:
                    q = d[i][k] // d[k][k]
                    d[i] = [x - q * y for x, y in zip(d[i], d[k])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[k])]
                    if d[i][k]:  # remainder smaller than pivot: swap and redo
                        d[k], d[i] = d[i], d[k]
                        u[k], u[i] = u[i], u[k]
                        dirty = True
            for j in range(k + 1, ncols):
                if d[k][j]:
                    q = d[k][j] // d[k][k]
                    for row in d:
                        row[j] -= q * row[k]
                    for row in v:
                        row[j] -= q * row[k]
                    if d[k][j]:
                        for row in d:
                            row[k], row[j] = row[j], row[k]
                        for row in v:
                            row[k], row[j] = row[j], row[k]
                        dirty = True
        if d[k][k] < 0:
            for row in d:
                row[k] = -row[k]
            for row in v:
                row[k] = -row[k]
        # enforce divisibility d_k | d[i][j]
        fixed = False
        for i in range(k + 1, nrows):
            if fixed:
                break
            for j in range(k + 1, ncols):
                if d[i][j] % d[k][k] != 0:
                    d[k] = [x + y for x, y in zip(d[k], d[i])]
                    u[k] = [x + y for x, y in zip(u[k], u[i])]
                    fixed = True
                    break
        if fixed:
            continue  # redo position k
        k += 1
    return d, u, v


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def int_matvec(a: Sequence[Sequence[int]], x: Sequence) -> list:
    return [sum(p * q for p, q in zip(row, x)) for row in a]


def int_inverse(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix."""
    k = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(m)]
    red = rref(aug)
    inv = [[int(red[i][k + j]) for j in range(k)] for i in range(k)]
    return inv


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


# ---------------------------------------------------------------------------
# lattices and cosets

@dataclass(frozen=True)
class IntLattice:
    """Sublattice of Z^ambient, basis rows Z-independent and in HNF."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(ambient: int, rows: Sequence[Sequence[int]]) -> "IntLattice":
        h, _ = hnf(rows)
        nonzero = tuple(tuple(r) for r in h if any(r))
        return IntLattice(ambient, nonzero)

    @staticmethod
    def full(n: int) -> "IntLattice":
        return IntLattice(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def coords_of(self, vec: Sequence[int]) -> list[int] | None:
        """Row coordinates of vec in this lattice, or None if not a member."""
        v = list(vec)
        coords = []
        for row, p in zip(self.basis, self._pivots()):
            q, r = divmod(v[p], row[p])
            if r != 0:
                return None
            coords.append(q)
            v = [x - q * y for x, y in zip(v, row)]
        if any(v):
            return None
        return coords

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of vec modulo this lattice (HNF box)."""
        v = list(vec)
        for row, p in zip(self.basis, self._pivots()):
            q = v[p] // row[p]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return tuple(v)


@dataclass(frozen=True)
class Coset:
    """Affine solution set base + lattice inside Z^k."""

    base: tuple[int, ...]
    lattice: IntLattice


def integer_kernel(rows, ncols: int) -> IntLattice:
    """Lattice {x in Z^ncols : A x = 0} for a rational matrix A."""
    int_rows: list[list[int]] = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        if not any(fr):
            continue
        scale = 1
        for x in fr:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
        int_rows.append([int(x * scale) for x in fr])
    if not int_rows:
        return IntLattice.full(ncols)
    d, _, v = snf(int_rows)
    rank = sum(1 for i in range(min(len(d), ncols)) if d[i][i] != 0)
    cols = [tuple(v[i][j] for i in range(ncols)) for j in range(rank, ncols)]
    return IntLattice.from_rows(ncols, cols)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def mixed_solve(a_rows, b_rows, c, k: int) -> Coset | None:
    """Solve {x in Z^k : exists t in Q^s, A x + B t = c}.

    a_rows: r x k rational, b_rows: r x s rational, c: length-r rational.
    Eliminates t by projecting onto a rational complement of col(B), then
    solves the pure-integer affine system by SNF.  Returns None when empty.
    """
    r = len(a_rows)
    if r == 0:
        return Coset(tuple([0] * k), IntLattice.full(k))
    s = len(b_rows[0]) if (b_rows and b_rows[0]) else 0
    if s:
        proj = left_annihilator(b_rows, s)
    else:
        proj = [tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)]
    if not proj:
        return Coset(tuple([0] * k), IntLattice.full(k))
    m_rows = []
    rhs = []
    for p in proj:
        m_rows.append([sum(p[i] * Fraction(a_rows[i][j]) for i in range(r)) for j in range(k)])
        rhs.append(sum(p[i] * Fraction(c[i]) for i in range(r)))
    # clear denominators row by row
    int_m: list[list[int]] = []
    int_b: list[int] = []
    for row, b in zip(m_rows, rhs):
        scale = 1
        for x in list(row) + [b]:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
        int_m.append([int(x * scale) for x in row])
        int_b.append(int(b * scale))
    d, u, v = snf(int_m)
    ub = int_matvec(u, int_b)
    rank = 0
    y0 = [0] * k
    for i in range(min(len(d), k)):
        if d[i][i] != 0:
            rank = i + 1
    for i in range(len(ub)):
        if i < rank:
            q, rem = divmod(ub[i], d[i][i])
            if rem != 0:
                return None
            y0[i] = q
        elif ub[i] != 0:
            return None
    x0 = int_matvec(v, y0)
    gens = [tuple(v[i][j] for i in range(k)) for j in range(rank, k)]
    lat = IntLattice.from_rows(k, gens)
    return Coset(lat.reduce(x0), lat)


def lattice_index(s_lat: IntLattice, h_lat: IntLattice) -> int | None:
    """[S : H]; None when infinite.  Raises if H is not contained in S."""
    if s_lat.ambient != h_lat.ambient:
        raise ValueError("ambient mismatch")
    coords = []
    for row in h_lat.basis:
        c = s_lat.coords_of(row)
        if c is None:
            raise ValueError("H is not a sublattice of S")
        coords.append(c)
    if h_lat.rank < s_lat.rank:
        return None
    return abs(int_det(coords))


def coset_reps(s_lat: IntLattice, h_lat: IntLattice) -> list[tuple[int, ...]]:
    """One canonical representative per coset of H in S, lexicographic.

    Representatives are HNF-box-reduced in S-coordinates and returned as
    ambient vectors, ordered lexicographically by the reduced coordinates.
    """
    coords = []
    for row in h_lat.basis:
        c = s_lat.coords_of(row)
        if c is None:
            raise ValueError("H is not a sublattice of S")
        coords.append(c)
    r = s_lat.rank
    if len(coords) < r:
        raise ValueError("infinite index")
    d, _, v = snf(coords)
    vinv = int_inverse(v)
    h_in_s = IntLattice.from_rows(r, coords)
    seen = []
    for resid in itertools.product(*(range(d[i][i]) for i in range(r))):
        # row convention: x = resid * V^{-1}
        x = [sum(resid[i] * vinv[i][j] for i in range(r)) for j in range(r)]
        seen.append(h_in_s.reduce(x))
    seen = sorted(set(seen))
    return [tuple(sum(c[i] * s_lat.basis[i][j] for i in range(r))
                  for j in range(s_lat.ambient)) for c in seen]


def wedge_span_rank(lats: Sequence[IntLattice], p: int) -> int:
    """Rank over Q of the span of all p-fold wedges of the lattices' bases.

    Coordinates in Lambda^p Z^n indexed by lexicographic p-subsets; entries
    are p x p minors.  p = 0 gives 1 for a nonempty family.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    if p == 0:
        return 1 if lats else 0
    rows = []
    for lat in lats:
        if lat.rank < p:
            continue
        n = lat.ambient
        col_subsets = list(itertools.combinations(range(n), p))
        for rows_sel in itertools.combinations(range(lat.rank), p):
            vec = []
            for cols_sel in col_subsets:
                sub = [[lat.basis[i][j] for j in cols_sel] for i in rows_sel]
                vec.append(Fraction(int_det(sub)))
            rows.append(tuple(vec))
    if not rows:
        return 0
    return rat_rank(rows)
