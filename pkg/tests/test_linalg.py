import random
from fractions import Fraction

import pytest

from tiltindex.linalg import (
    ColumnSpace,
    IntegerMatrix,
    RationalMatrix,
    kernel_basis,
    lattice_membership,
    poly_divmod,
    poly_gcd,
    poly_mul,
    rational_irreducible_factors,
    smith_normal_form,
    solve,
    squarefree_part,
)


def random_rational_matrix(rng, rows, cols, span=5):
    return RationalMatrix(
        [[Fraction(rng.randint(-span, span)) for _ in range(cols)] for _ in range(rows)]
    )


def random_integer_matrix(rng, rows, cols, span=6):
    return IntegerMatrix([[rng.randint(-span, span) for _ in range(cols)] for _ in range(rows)])


class TestKernelBasis:
    def test_identity_has_empty_kernel(self):
        k = kernel_basis(RationalMatrix.identity(2))
        assert k.cols == 0

    def test_zero_1x1(self):
        k = kernel_basis(RationalMatrix([[0]]))
        assert k.cols == 1
        assert k.column(0) == (Fraction(1),)

    def test_rank_one_2x2(self):
        m = RationalMatrix([[1, 2], [2, 4]])
        k = kernel_basis(m)
        assert k.cols == 1
        # spans (-2, 1)
        x, y = k.column(0)
        assert x == -2 * y and y != 0

    @pytest.mark.parametrize("seed", range(20))
    def test_kernel_relations(self, seed):
        rng = random.Random(seed)
        m = random_rational_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        k = kernel_basis(m)
        assert k.cols == m.cols - m.rank()
        if k.cols:
            assert (m * k).is_zero()
            assert k.rank() == k.cols


class TestSolve:
    def test_identity(self):
        x = solve(RationalMatrix.identity(3), [1, 2, 3])
        assert x == [1, 2, 3]

    def test_underdetermined(self):
        a = RationalMatrix([[1, 1]])
        x = solve(a, [2])
        assert x is not None and sum(x) == 2

    def test_inconsistent(self):
        assert solve(RationalMatrix([[0]]), [1]) is None

    @pytest.mark.parametrize("seed", range(20))
    def test_consistency_matches_rank(self, seed):
        rng = random.Random(100 + seed)
        a = random_rational_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        b = [Fraction(rng.randint(-5, 5)) for _ in range(a.rows)]
        aug = RationalMatrix([list(row) + [bv] for row, bv in zip(a.data, b)])
        x = solve(a, b)
        if x is None:
            assert aug.rank() > a.rank()
        else:
            assert aug.rank() == a.rank()
            assert a.apply(x) == b


class TestSmith:
    def test_diag_2_3(self):
        snf = smith_normal_form(IntegerMatrix([[2, 0], [0, 3]]))
        assert snf.invariant_factors() == [1, 6]

    def test_zero(self):
        snf = smith_normal_form(IntegerMatrix.zeros(2, 3))
        assert snf.d.is_zero()

    def test_identity(self):
        snf = smith_normal_form(IntegerMatrix.identity(3))
        assert snf.invariant_factors() == [1, 1, 1]

    @pytest.mark.parametrize("seed", range(25))
    def test_invariants_on_random_input(self, seed):
        rng = random.Random(200 + seed)
        a = random_integer_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        snf = smith_normal_form(a)  # constructor re-validates U*A*V = D etc.
        assert snf.rank() == a.rank()


class TestLatticeMembership:
    def test_identity_lattice(self):
        assert lattice_membership(IntegerMatrix.identity(3), [4, -7, 0])

    def test_even_lattice(self):
        assert not lattice_membership(IntegerMatrix([[2]]), [1])
        assert lattice_membership(IntegerMatrix([[2]]), [-4])

    def test_mixed(self):
        b = IntegerMatrix([[2, 0], [0, 3]])
        assert lattice_membership(b, [2, 3])
        assert not lattice_membership(b, [1, 3])

    def test_empty_generators(self):
        b = IntegerMatrix.zeros(2, 0)
        assert lattice_membership(b, [0, 0])
        assert not lattice_membership(b, [1, 0])

    @pytest.mark.parametrize("seed", range(15))
    def test_span_members_and_perturbations(self, seed):
        rng = random.Random(300 + seed)
        b = random_integer_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), span=4)
        combo = b.apply([rng.randint(-3, 3) for _ in range(b.cols)])
        assert lattice_membership(b, combo)


class TestMatrixBasics:
    def test_det_and_inverse(self):
        m = RationalMatrix([[2, 1], [1, 1]])
        assert m.det() == 1
        inv = m.inverse()
        assert m * inv == RationalMatrix.identity(2)

    def test_block_diag(self):
        m = RationalMatrix.block_diag([RationalMatrix([[1]]), RationalMatrix([[2, 0], [0, 3]])])
        assert m.rows == 3 and m.cols == 3
        assert m.entry(1, 1) == 2

    def test_integer_det_bareiss(self):
        a = IntegerMatrix([[3, 1, 0], [1, 2, 1], [0, 1, 2]])
        assert a.det() == round(float(a.to_rational().det()))

    def test_column_space(self):
        cs = ColumnSpace([[1, 0], [1, 1]], length=2)
        assert cs.contains([2, 1])
        assert cs.coordinates([2, 1]) is not None


class TestPolynomials:
    def test_divmod_and_gcd(self):
        # (x - 1)(x - 2) against (x - 1)
        p = poly_mul((Fraction(-1), Fraction(1)), (Fraction(-2), Fraction(1)))
        q, r = poly_divmod(p, (Fraction(-1), Fraction(1)))
        assert r == ()
        assert q == (Fraction(-2), Fraction(1))
        g = poly_gcd(p, (Fraction(-1), Fraction(1)))
        assert g == (Fraction(-1), Fraction(1))

    def test_squarefree_part(self):
        lin = (Fraction(-1), Fraction(1))
        p = poly_mul(poly_mul(lin, lin), (Fraction(-2), Fraction(1)))
        rad = squarefree_part(p)
        assert poly_divmod(rad, lin)[1] == ()
        assert len(rad) == 3

    def test_irreducible_factors(self):
        # x^2 - 1 splits, x^2 + 1 does not
        fs = rational_irreducible_factors((Fraction(-1), Fraction(0), Fraction(1)))
        assert len(fs) == 2
        fs = rational_irreducible_factors((Fraction(1), Fraction(0), Fraction(1)))
        assert len(fs) == 1
