"""Exact integer symmetric-bilinear-form engine.

Everything here runs over unbounded integers or exact rationals; no
floating point enters any verdict.  Floats appear only as first guesses
for enumeration bounds, and every guess is corrected against the exact
inequality before use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class LatticeError(ValueError):
    """Raised when an operation's precondition on a matrix fails."""


class IntegralLattice:
    """A symmetric matrix of (unbounded) integers."""

    def __init__(self, entries):
        rows = [[int(x) for x in row] for row in entries]
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise LatticeError("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError("matrix is not symmetric at (%d, %d)" % (i, j))
        self.entries = rows

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def empty(cls) -> "IntegralLattice":
        return cls([])

    @classmethod
    def identity(cls, n: int) -> "IntegralLattice":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag) -> "IntegralLattice":
        diag = list(diag)
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegralLattice) and self.entries == other.entries

    def __repr__(self) -> str:
        return "IntegralLattice(%r)" % (self.entries,)

    def evaluate(self, v) -> int:
        """The quadratic form v^T L v."""
        v = list(v)
        if len(v) != self.n:
            raise LatticeError("vector length %d, matrix rank %d" % (len(v), self.n))
        return sum(v[i] * self.entries[i][j] * v[j]
                   for i in range(self.n) for j in range(self.n))


@dataclass
class Inertia:
    positive: int
    zero: int
    negative: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative


@dataclass
class AbelianGroupPresentation:
    """rank + invariant factors d1 | d2 | ..., each >= 2."""

    rank: int
    torsion: list[int]

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append("Z^%d" % self.rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(A):
    """Exact Smith decomposition A == U * S * V.

    `A` is any rectangular integer matrix (lists of lists); U and V are
    unimodular, S is diagonal with a nonnegative divisibility chain.
    Pivots are chosen by smallest nonzero absolute value, ties broken by
    row-major scan, so the transforms are fully deterministic.
    """
    if isinstance(A, IntegralLattice):
        A = A.entries
    S = [[int(x) for x in row] for row in A]
    m = len(S)
    n = len(S[0]) if m else 0
    for row in S:
        if len(row) != n:
            raise LatticeError("ragged matrix")
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    # Left op on S is mirrored by the inverse column op on U; right op on
    # S by the inverse row op on V, keeping A == U*S*V at every step.
    def row_add(i, j, k):  # row j += k * row i
        for c in range(n):
            S[j][c] += k * S[i][c]
        for r in range(m):
            U[r][i] -= k * U[r][j]

    def col_add(i, j, k):  # col j += k * col i
        for r in range(m):
            S[r][j] += k * S[r][i]
        for c in range(n):
            V[i][c] -= k * V[j][c]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        for r in range(m):
            U[r][i], U[r][j] = U[r][j], U[r][i]

    def col_swap(i, j):
        for r in range(m):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        V[i], V[j] = V[j], V[i]

    def row_negate(i):
        for c in range(n):
            S[i][c] = -S[i][c]
        for r in range(m):
            U[r][i] = -U[r][i]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while True:
        piv = find_pivot(t)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            # clear column t then row t by division steps; if a remainder
            # appears it becomes the new, smaller pivot.
            again = False
            for i in range(t + 1, m):
                if S[i][t]:
                    k = S[i][t] // S[t][t]
                    row_add(t, i, -k)
                    if S[i][t]:
                        row_swap(t, i)
                        again = True
            for j in range(t + 1, n):
                if S[t][j]:
                    k = S[t][j] // S[t][t]
                    col_add(t, j, -k)
                    if S[t][j]:
                        col_swap(t, j)
                        again = True
            if not again:
                break
        # divisibility: S[t][t] must divide everything below-right
        stuck = False
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % S[t][t]:
                    row_add(i, t, 1)
                    stuck = True
                    break
            if stuck:
                break
        if not stuck:
            t += 1
    for i in range(min(m, n)):
        if S[i][i] < 0:
            row_negate(i)
    return U, S, V


def snf_diagonal(A) -> list[int]:
    _, S, _ = smith_normal_form(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def homology_from_linking(L: IntegralLattice) -> AbelianGroupPresentation:
    """First homology of the surgered manifold: cokernel of the linking
    matrix, read off the Smith diagonal."""
    diag = snf_diagonal(L)
    rank = sum(1 for d in diag if d == 0)
    torsion = [d for d in diag if d >= 2]
    return AbelianGroupPresentation(rank=rank, torsion=torsion)


# ---------------------------------------------------------------------------
# determinant and inertia


def determinant(L) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    rows = L.entries if isinstance(L, IntegralLattice) else L
    A = [[int(x) for x in row] for row in rows]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def inertia(L: IntegralLattice) -> Inertia:
    """Counts of positive/zero/negative eigenvalues by exact symmetric
    reduction over the rationals."""
    n = L.n
    A = [[Fraction(x) for x in row] for row in L.entries]
    active = list(range(n))
    pos = neg = zero = 0
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is not None:
            d = A[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in active if i != piv]
            for r in rest:
                if A[r][piv] == 0:
                    continue
                f = A[r][piv] / d
                for c in rest:
                    A[r][c] -= f * A[piv][c]
            for r in rest:
                A[r][piv] = A[piv][r] = Fraction(0)
            active = rest
            continue
        off = next(((i, j) for ai, i in enumerate(active)
                    for j in active[ai + 1:] if A[i][j] != 0), None)
        if off is None:
            zero += len(active)
            break
        i, j = off
        # zero diagonal: symmetric add of row/col j into i makes the
        # diagonal entry 2*A[i][j] != 0 (the hyperbolic-block rule).
        for c in active:
            A[i][c] += A[j][c]
        for r in active:
            A[r][i] += A[r][j]
    return Inertia(positive=pos, zero=zero, negative=neg)


def is_positive_definite(L: IntegralLattice) -> bool:
    return inertia(L).positive == L.n


def is_unimodular(L: IntegralLattice) -> bool:
    return abs(determinant(L)) == 1


# ---------------------------------------------------------------------------
# congruence moves mirroring Kirby moves


def congruence_slide(L: IntegralLattice, i: int, j: int, s: int) -> IntegralLattice:
    """Handle slide as a basis change: E^T L E with E = I + s*e_j e_i^T
    (column i gains s times column j)."""
    if i == j:
        raise LatticeError("slide needs two distinct indices")
    n = L.n
    if not (0 <= i < n and 0 <= j < n):
        raise LatticeError("slide index out of range")
    A = [row[:] for row in L.entries]
    for r in range(n):
        A[r][i] += s * A[r][j]
    for c in range(n):
        A[i][c] += s * A[j][c]
    return IntegralLattice(A)


def stabilize(L: IntegralLattice, eps: int) -> IntegralLattice:
    """Block sum with the rank-one form <eps>."""
    n = L.n
    A = [row[:] + [0] for row in L.entries]
    A.append([0] * n + [int(eps)])
    return IntegralLattice(A)


def blow_down(L: IntegralLattice, k: int) -> IntegralLattice:
    """Remove a +/-1 diagonal entry and push its rank-one correction into
    the rest; the cokernel is unchanged."""
    n = L.n
    if not 0 <= k < n:
        raise LatticeError("blow-down index out of range")
    eps = L.entries[k][k]
    if eps not in (1, -1):
        raise LatticeError("blow-down pivot must be +1 or -1, got %d" % eps)
    idx = [i for i in range(n) if i != k]
    A = [[L.entries[i][j] - eps * L.entries[i][k] * L.entries[k][j] for j in idx]
         for i in idx]
    return IntegralLattice(A)


def direct_sum(L1: IntegralLattice, L2: IntegralLattice) -> IntegralLattice:
    n1, n2 = L1.n, L2.n
    A = [row[:] + [0] * n2 for row in L1.entries]
    A.extend([0] * n1 + row[:] for row in L2.entries)
    return IntegralLattice(A)


def e8_matrix() -> IntegralLattice:
    """The rank-8 E8 plumbing form: 2 on the diagonal, 1 at adjacent
    nodes.  Node order: chain 0-1-2-3-4-5-6 with node 7 attached to
    node 4."""
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]
    A = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in edges:
        A[i][j] = A[j][i] = 1
    return IntegralLattice(A)


# ---------------------------------------------------------------------------
# short vectors (Fincke-Pohst)


def _fp_decompose(L: IntegralLattice):
    """Rational Cholesky data: L = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2."""
    n = L.n
    q = [[Fraction(x) for x in row] for row in L.entries]
    for i in range(n):
        if q[i][i] <= 0:
            raise LatticeError("matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] = q[k][l] - q[k][i] * q[i][l]
    return q


def _int_range(d: Fraction, c: Fraction, T: Fraction) -> range:
    """Integers x with d*(x + c)^2 <= T, found by float guess plus exact
    correction."""
    if T < 0:
        return range(0)
    r = float(T / d) ** 0.5
    lo = math.floor(-float(c) - r) - 2
    hi = math.ceil(-float(c) + r) + 2
    while d * (Fraction(lo) + c) ** 2 > T and lo <= hi:
        lo += 1
    while d * (Fraction(hi) + c) ** 2 > T and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(L: IntegralLattice, bound: int) -> list[tuple[int, ...]]:
    """All nonzero v with v^T L v <= bound, one representative per +/-v
    pair (first nonzero coordinate positive), in lexicographic order.

    Fincke-Pohst backtracking over the exact rational Cholesky
    decomposition; deterministic by construction.
    """
    if not is_positive_definite(L):
        raise LatticeError("short_vectors needs a positive definite matrix")
    n = L.n
    if n == 0:
        return []
    q = _fp_decompose(L)
    found: list[tuple[int, ...]] = []
    x = [0] * n

    def descend(i: int, T: Fraction):
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for xi in _int_range(q[i][i], c, T):
            x[i] = xi
            if i == 0:
                v = tuple(x)
                if any(v):
                    found.append(v)
            else:
                descend(i - 1, T - q[i][i] * (Fraction(xi) + c) ** 2)
        x[i] = 0

    descend(n - 1, Fraction(bound))
    canon = set()
    for v in found:
        first = next((t for t in v if t), 0)
        canon.add(v if first > 0 else tuple(-t for t in v))
    return sorted(canon)


# ---------------------------------------------------------------------------
# diagonalizability over Z


def _kernel_complement(u: list[int]):
    """For an integer row u with gcd 1, a unimodular W with u*W =
    (1, 0, ..., 0); columns 1.. span the kernel of u."""
    n = len(u)
    r = list(u)
    W = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_sub(dst, src, k):  # col dst -= k * col src
        r[dst] -= k * r[src]
        for row in W:
            row[dst] -= k * row[src]

    while True:
        nz = [j for j in range(n) if r[j]]
        if len(nz) <= 1:
            break
        p = min(nz, key=lambda j: (abs(r[j]), j))
        for j in nz:
            if j != p:
                col_sub(j, p, r[j] // r[p])
    nz = [j for j in range(n) if r[j]]
    if not nz or abs(r[nz[0]]) != 1:
        raise LatticeError("row is not primitive")
    p = nz[0]
    if r[p] < 0:
        r[p] = -r[p]
        for row in W:
            row[p] = -row[p]
    if p != 0:
        r[0], r[p] = r[p], r[0]
        for row in W:
            row[0], row[p] = row[p], row[0]
    return W


def diagonalizable_over_Z(L: IntegralLattice):
    """Split off <1> summands along norm-one vectors until none remain.

    Returns (verdict, diagonal_part, residual): verdict is True iff the
    residual has rank zero.  Requires a positive definite unimodular
    form; unimodularity guarantees each orthogonal complement splits
    integrally.
    """
    if not is_positive_definite(L):
        raise LatticeError("diagonalizability test needs a positive definite matrix")
    if not is_unimodular(L):
        raise LatticeError("diagonalizability test needs a unimodular matrix")
    cur = L
    count = 0
    while cur.n > 0:
        ones = [v for v in short_vectors(cur, 1) if cur.evaluate(v) == 1]
        if not ones:
            return False, count, cur
        v = ones[0]
        u = [sum(cur.entries[i][j] * v[i] for i in range(cur.n)) for j in range(cur.n)]
        W = _kernel_complement(u)
        basis = [[W[i][j] for i in range(cur.n)] for j in range(1, cur.n)]
        A = [[sum(bi[r] * cur.entries[r][c] * bj[c]
                  for r in range(cur.n) for c in range(cur.n))
              for bj in basis] for bi in basis]
        cur = IntegralLattice(A)
        count += 1
    return True, count, cur
