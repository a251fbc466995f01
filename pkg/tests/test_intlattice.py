import itertools
import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from conftest import random_symmetric
from surgerykit.intlattice import (AbelianGroupPresentation, IntegralLattice,
                                   LatticeError, blow_down, congruence_slide,
                                   determinant, diagonalizable_over_Z,
                                   direct_sum, e8_matrix,
                                   homology_from_linking, inertia,
                                   is_positive_definite, is_unimodular,
                                   short_vectors, smith_normal_form,
                                   snf_diagonal, stabilize)


def _mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B)))
             for j in range(len(B[0]))] for i in range(len(A))]


def _is_unimodular_matrix(M):
    return abs(determinant(M)) == 1


# -- constructors ------------------------------------------------------------

def test_rejects_nonsquare_and_asymmetric():
    with pytest.raises(LatticeError):
        IntegralLattice([[1, 2]])
    with pytest.raises(LatticeError):
        IntegralLattice([[1, 2], [3, 1]])


def test_evaluate():
    L = IntegralLattice([[2, 1], [1, 2]])
    assert L.evaluate([1, 0]) == 2
    assert L.evaluate([1, -1]) == 2
    assert L.evaluate([1, 1]) == 6


# -- Smith normal form -------------------------------------------------------

def test_snf_small_example():
    assert snf_diagonal(IntegralLattice.diagonal([2, 3])) == [1, 6]


def test_snf_zero_and_empty():
    assert snf_diagonal([[0, 0], [0, 0]]) == [0, 0]
    assert snf_diagonal([]) == []


def test_snf_decomposition_randomized():
    rng = random.Random(101)
    for _ in range(200):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        U, S, V = smith_normal_form(A)
        assert _mul(_mul(U, S), V) == A
        assert _is_unimodular_matrix(U)
        assert _is_unimodular_matrix(V)
        diag = [S[i][i] for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert S[i][j] == 0
        assert all(d >= 0 for d in diag)
        nz = [d for d in diag if d]
        assert diag == nz + [0] * (len(diag) - len(nz))
        for a, b in zip(nz, nz[1:]):
            assert b % a == 0
        # independent oracle: sympy's invariant factors
        want = [int(x) for x in sympy_snf(sympy.Matrix(A)).diagonal()]
        want = want + [0] * (min(m, n) - len(want))
        assert diag == want


def test_snf_is_deterministic():
    A = [[4, 6, 2], [6, 0, 3], [2, 3, 9]]
    assert smith_normal_form(A) == smith_normal_form(A)


def test_homology_presentations():
    assert str(homology_from_linking(IntegralLattice([[0]]))) == "Z"
    assert str(homology_from_linking(IntegralLattice([[5]]))) == "Z/5"
    assert str(homology_from_linking(IntegralLattice([[1]]))) == "0"
    h = homology_from_linking(IntegralLattice.diagonal([2, 4, 0]))
    assert (h.rank, h.torsion) == (1, [2, 4])
    assert str(h) == "Z + Z/2 + Z/4"
    assert str(AbelianGroupPresentation(2, [3])) == "Z^2 + Z/3"


# -- determinant and inertia -------------------------------------------------

def test_determinant_examples():
    assert determinant(IntegralLattice.empty()) == 1
    assert determinant(IntegralLattice([[0, 1], [1, 0]])) == -1
    assert determinant(e8_matrix()) == 1


def test_determinant_randomized_against_sympy():
    rng = random.Random(103)
    for _ in range(100):
        n = rng.randint(1, 5)
        A = [[rng.randint(-7, 7) for _ in range(n)] for _ in range(n)]
        assert determinant(A) == int(sympy.Matrix(A).det())


def _inertia_oracle(rows):
    """Sign counts of the eigenvalues via the characteristic polynomial.

    Symmetric matrices have real spectrum, so Descartes' rule of signs is
    exact on p(x) and p(-x)."""
    M = sympy.Matrix(rows)
    p = sympy.Poly(M.charpoly().as_expr(), sympy.Symbol("lambda"))
    coeffs = [int(c) for c in p.all_coeffs()]
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1

    def sign_changes(cs):
        signs = [1 if c > 0 else -1 for c in cs if c]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = sign_changes(coeffs)
    neg = sign_changes([c * (-1) ** k for k, c in enumerate(coeffs)])
    return pos, zero, neg


def test_inertia_examples():
    assert inertia(IntegralLattice.identity(3)) == inertia(IntegralLattice.identity(3))
    i = inertia(IntegralLattice([[0, 1], [1, 0]]))
    assert (i.positive, i.zero, i.negative) == (1, 0, 1)
    assert i.signature == 0
    i = inertia(e8_matrix())
    assert (i.positive, i.zero, i.negative) == (8, 0, 0)


def test_inertia_randomized_against_charpoly():
    rng = random.Random(107)
    for _ in range(150):
        n = rng.randint(1, 5)
        L = IntegralLattice(random_symmetric(rng, n, -5, 5))
        i = inertia(L)
        assert (i.positive, i.zero, i.negative) == _inertia_oracle(L.entries)
        assert i.positive + i.zero + i.negative == n


def test_definite_and_unimodular_predicates():
    assert is_positive_definite(e8_matrix())
    assert is_unimodular(e8_matrix())
    assert not is_positive_definite(IntegralLattice([[0, 1], [1, 0]]))
    assert not is_unimodular(IntegralLattice([[2]]))


# -- congruence moves --------------------------------------------------------

def test_congruence_slide_is_explicit_basis_change():
    L = IntegralLattice([[2, 1], [1, 3]])
    E = [[1, 0], [1, 1]]  # col 0 += col 1
    want = _mul(_mul([[E[j][i] for j in range(2)] for i in range(2)],
                     L.entries), E)
    assert congruence_slide(L, 0, 1, 1).entries == want


def test_slide_inverse_pair():
    rng = random.Random(109)
    for _ in range(30):
        n = rng.randint(2, 5)
        L = IntegralLattice(random_symmetric(rng, n, -4, 4))
        i, j = rng.sample(range(n), 2)
        s = rng.choice((1, -1))
        assert congruence_slide(congruence_slide(L, i, j, s), i, j, -s) == L


def test_slide_rejects_bad_indices():
    L = IntegralLattice.identity(2)
    with pytest.raises(LatticeError):
        congruence_slide(L, 0, 0, 1)
    with pytest.raises(LatticeError):
        congruence_slide(L, 0, 2, 1)


def test_stabilize_blow_down_cancel():
    L = IntegralLattice([[3, 1], [1, -2]])
    assert blow_down(stabilize(L, 1), 2) == L
    assert blow_down(stabilize(L, -1), 2) == L


def test_blow_down_requires_unit_pivot():
    with pytest.raises(LatticeError):
        blow_down(IntegralLattice([[2]]), 0)
    with pytest.raises(LatticeError):
        blow_down(IntegralLattice([[1]]), 1)


def test_blow_down_preserves_cokernel():
    rng = random.Random(113)
    for _ in range(40):
        n = rng.randint(2, 5)
        A = random_symmetric(rng, n, -4, 4)
        k = rng.randrange(n)
        A[k][k] = rng.choice((1, -1))
        L = IntegralLattice(A)
        h1 = homology_from_linking(L)
        h2 = homology_from_linking(blow_down(L, k))
        assert (h1.rank, h1.torsion) == (h2.rank, h2.torsion)


def test_moves_preserve_cokernel():
    rng = random.Random(127)
    for _ in range(40):
        n = rng.randint(2, 5)
        L = IntegralLattice(random_symmetric(rng, n, -4, 4))
        h0 = homology_from_linking(L)
        i, j = rng.sample(range(n), 2)
        Ls = congruence_slide(L, i, j, rng.choice((1, -1)))
        hs = homology_from_linking(Ls)
        assert (h0.rank, h0.torsion) == (hs.rank, hs.torsion)
        eps = rng.choice((1, -1))
        hst = homology_from_linking(stabilize(L, eps))
        assert (h0.rank, h0.torsion) == (hst.rank, hst.torsion)


def test_direct_sum_additivity():
    L1 = IntegralLattice([[2, 1], [1, 2]])
    L2 = IntegralLattice([[-3]])
    S = direct_sum(L1, L2)
    assert S.n == 3
    assert determinant(S) == determinant(L1) * determinant(L2)
    i1, i2, i = inertia(L1), inertia(L2), inertia(S)
    assert i.positive == i1.positive + i2.positive
    assert i.negative == i1.negative + i2.negative


# -- E8 ----------------------------------------------------------------------

def test_e8_invariants():
    E = e8_matrix()
    assert determinant(E) == 1
    i = inertia(E)
    assert (i.positive, i.zero, i.negative) == (8, 0, 0)
    assert homology_from_linking(E).is_trivial()
    assert snf_diagonal(E) == [1] * 8
    # even form: every diagonal entry of any v^T E v is even
    rng = random.Random(131)
    for _ in range(20):
        v = [rng.randint(-3, 3) for _ in range(8)]
        assert E.evaluate(v) % 2 == 0


# -- short vectors -----------------------------------------------------------

def _invert_fraction(rows):
    n = len(rows)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        d = A[c][c]
        A[c] = [x / d for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _short_vectors_box(L, bound):
    """Brute force: for pos. definite A and v^T A v <= T one has
    v_i^2 <= T * (A^-1)_ii, so a finite box contains every solution."""
    inv = _invert_fraction(L.entries)
    lims = []
    for i in range(L.n):
        m = 0
        while Fraction((m + 1) ** 2) <= Fraction(bound) * inv[i][i]:
            m += 1
        lims.append(m)
    out = set()
    for v in itertools.product(*[range(-m, m + 1) for m in lims]):
        if any(v) and L.evaluate(v) <= bound:
            first = next(t for t in v if t)
            out.add(v if first > 0 else tuple(-t for t in v))
    return sorted(out)


def test_short_vectors_identity():
    got = short_vectors(IntegralLattice.identity(2), 1)
    assert got == [(0, 1), (1, 0)]
    got = short_vectors(IntegralLattice.identity(2), 2)
    assert got == [(0, 1), (1, -1), (1, 0), (1, 1)]


def test_short_vectors_e8_roots():
    # E8 has 240 roots of norm 2 and no vectors of norm 1
    roots = short_vectors(e8_matrix(), 2)
    assert len(roots) == 120
    assert all(e8_matrix().evaluate(v) == 2 for v in roots)
    assert short_vectors(e8_matrix(), 1) == []


def test_short_vectors_rejects_indefinite():
    with pytest.raises(LatticeError):
        short_vectors(IntegralLattice([[0, 1], [1, 0]]), 2)


def test_short_vectors_randomized_against_box():
    rng = random.Random(137)
    done = 0
    while done < 50:
        n = rng.randint(1, 4)
        B = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        A = [[sum(B[k][i] * B[k][j] for k in range(n)) + int(i == j)
              for j in range(n)] for i in range(n)]
        L = IntegralLattice(A)
        assert is_positive_definite(L)
        bound = rng.randint(1, 4)
        assert short_vectors(L, bound) == _short_vectors_box(L, bound)
        done += 1


# -- diagonalizability over Z ------------------------------------------------

def test_identity_diagonalizes():
    ok, count, res = diagonalizable_over_Z(IntegralLattice.identity(4))
    assert ok and count == 4 and res.n == 0


def test_e8_does_not_diagonalize():
    ok, count, res = diagonalizable_over_Z(e8_matrix())
    assert not ok
    assert count == 0
    assert res == e8_matrix()


def test_e8_plus_identity_strips_only_the_identity():
    L = direct_sum(e8_matrix(), IntegralLattice.identity(2))
    ok, count, res = diagonalizable_over_Z(L)
    assert not ok
    assert count == 2
    assert res.n == 8
    assert determinant(res) == 1
    i = inertia(res)
    assert (i.positive, i.zero, i.negative) == (8, 0, 0)
    assert short_vectors(res, 1) == []


def test_unimodular_change_of_basis_still_diagonalizes():
    rng = random.Random(139)
    for _ in range(10):
        n = rng.randint(2, 4)
        P = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(6):
            i, j = rng.sample(range(n), 2)
            k = rng.randint(-2, 2)
            for r in range(n):
                P[r][i] += k * P[r][j]
        Pt = [[P[j][i] for j in range(n)] for i in range(n)]
        L = IntegralLattice(_mul(Pt, P))
        ok, count, res = diagonalizable_over_Z(L)
        assert ok and count == n and res.n == 0


def test_diagonalizable_rejects_bad_input():
    with pytest.raises(LatticeError):
        diagonalizable_over_Z(IntegralLattice([[-1]]))
    with pytest.raises(LatticeError):
        diagonalizable_over_Z(IntegralLattice([[2]]))
