import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slowent.linalg import (
    RationalMatrix,
    Subspace,
    char_poly,
    complement_in,
    intersect,
    inverse,
    kernel,
    preimage,
    rref,
    solve_particular,
)


def mat(rows, cols=None):
    return RationalMatrix(rows, cols=cols)


small_fractions = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    data = draw(
        st.lists(
            st.lists(small_fractions, min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
    return mat(data)


class TestRref:
    def test_identity(self):
        m = RationalMatrix.identity(3)
        red, rank = rref(m)
        assert red == m
        assert rank == 3

    def test_zero(self):
        m = RationalMatrix.zero(2, 4)
        red, rank = rref(m)
        assert red == m
        assert rank == 0

    def test_dependent_rows(self):
        red, rank = rref(mat([[1, 2], [2, 4]]))
        assert red == mat([[1, 2], [0, 0]])
        assert rank == 1

    @given(matrices())
    @settings(max_examples=60, deadline=None)
    def test_idempotent(self, m):
        red, rank = rref(m)
        again, rank2 = rref(red)
        assert again == red
        assert rank2 == rank

    @given(matrices(), st.randoms(use_true_random=False))
    @settings(max_examples=60, deadline=None)
    def test_rank_invariant_under_row_permutation(self, m, rnd):
        rows = list(m.data)
        rnd.shuffle(rows)
        assert rref(mat(rows, cols=m.cols))[1] == rref(m)[1]


class TestKernel:
    def test_identity_kernel_is_zero(self):
        assert kernel(RationalMatrix.identity(3)) == Subspace.zero(3)

    def test_zero_matrix_kernel_is_full(self):
        assert kernel(RationalMatrix.zero(2, 3)) == Subspace.full(3)

    def test_single_constraint(self):
        m = mat([[1, 1, 0]])
        ker = kernel(m)
        assert ker.dim == 2
        for row in ker.basis.data:
            assert all(x == 0 for x in m.apply(row))

    @given(matrices())
    @settings(max_examples=60, deadline=None)
    def test_rank_nullity_and_membership(self, m):
        ker = kernel(m)
        assert ker.dim == m.cols - rref(m)[1]
        for row in ker.basis.data:
            assert all(x == 0 for x in m.apply(row))


def random_subspace(rng, ambient, dim):
    rows = [
        [Fraction(rng.randint(-4, 4)) for _ in range(ambient)] for _ in range(dim)
    ]
    return Subspace.from_rows(ambient, rows)


class TestIntersect:
    def test_self_intersection(self):
        s = Subspace.from_rows(3, [[1, 2, 0], [0, 0, 1]])
        assert intersect(s, s) == s

    def test_transverse_lines(self):
        a = Subspace.from_rows(2, [[1, 0]])
        b = Subspace.from_rows(2, [[0, 1]])
        assert intersect(a, b) == Subspace.zero(2)

    def test_dimension_formula_random(self):
        rng = random.Random(7)
        for _ in range(40):
            a = random_subspace(rng, 4, 3)
            b = random_subspace(rng, 4, 3)
            meet = intersect(a, b)
            join = a.sum(b)
            assert meet.dim + join.dim == a.dim + b.dim
            assert a.contains_subspace(meet) and b.contains_subspace(meet)

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            intersect(Subspace.full(2), Subspace.full(3))


class TestComplement:
    def test_complement_of_zero(self):
        v = Subspace.from_rows(3, [[1, 0, 0], [0, 1, 3]])
        assert complement_in(Subspace.zero(3), v) == v

    def test_complement_of_self(self):
        v = Subspace.from_rows(3, [[1, 0, 0], [0, 1, 3]])
        assert complement_in(v, v) == Subspace.zero(3)

    def test_pivot_rule(self):
        sub = Subspace.from_rows(2, [[1, 1]])
        comp = complement_in(sub, Subspace.full(2))
        assert comp == Subspace.from_rows(2, [[0, 1]])

    def test_direct_sum_property_random(self):
        rng = random.Random(3)
        for _ in range(40):
            sup = random_subspace(rng, 5, 4)
            sub_rows = [sup.basis.data[i] for i in range(0, sup.dim, 2)]
            sub = Subspace.from_rows(5, sub_rows)
            for strategy in ("pivot", "greedy_reversed"):
                comp = complement_in(sub, sup, strategy=strategy)
                assert comp.dim + sub.dim == sup.dim
                assert intersect(comp, sub) == Subspace.zero(5)
                assert comp.sum(sub) == sup

    def test_containment_violation(self):
        with pytest.raises(ValueError):
            complement_in(
                Subspace.from_rows(2, [[1, 0]]), Subspace.from_rows(2, [[0, 1]])
            )


class TestPreimage:
    def test_full_target(self):
        m = mat([[1, 2], [3, 4], [0, 0]])
        assert preimage(m, Subspace.full(3)) == Subspace.full(2)

    def test_zero_target_is_kernel(self):
        rng = random.Random(11)
        for _ in range(20):
            m = mat([[rng.randint(-3, 3) for _ in range(4)] for _ in range(3)])
            assert preimage(m, Subspace.zero(3)) == kernel(m)

    def test_nilpotent_shift(self):
        m = mat([[0, 1], [0, 0]])
        assert preimage(m, Subspace.from_rows(2, [[1, 0]])) == Subspace.full(2)

    def test_membership_characterization(self):
        rng = random.Random(5)
        m = mat([[rng.randint(-3, 3) for _ in range(4)] for _ in range(3)])
        target = random_subspace(rng, 3, 2)
        pre = preimage(m, target)
        for row in pre.basis.data:
            assert target.contains(m.apply(row))


class TestSolveInverse:
    def test_solve_particular(self):
        a = mat([[1, 2, 0], [0, 0, 1]])
        x = solve_particular(a, [5, 7])
        assert x is not None
        assert list(a.apply(x)) == [Fraction(5), Fraction(7)]

    def test_solve_inconsistent(self):
        a = mat([[1, 1], [2, 2]])
        assert solve_particular(a, [1, 3]) is None

    def test_inverse_round_trip(self):
        m = mat([[2, 1], [1, 1]])
        assert m @ inverse(m) == RationalMatrix.identity(2)

    def test_inverse_singular(self):
        with pytest.raises(ValueError):
            inverse(mat([[1, 2], [2, 4]]))


class TestCharPoly:
    def test_diagonal(self):
        m = mat([[2, 0], [0, 3]])
        # (x-2)(x-3) = x^2 - 5x + 6
        assert char_poly(m) == [Fraction(1), Fraction(-5), Fraction(6)]

    def test_nilpotent(self):
        m = mat([[0, 1], [0, 0]])
        assert char_poly(m) == [Fraction(1), Fraction(0), Fraction(0)]

    def test_root_annihilates(self):
        m = mat([[1, 2], [0, Fraction(1, 2)]])
        coeffs = char_poly(m)
        acc = RationalMatrix.zero(2, 2)
        for c in coeffs:
            acc = acc @ m + RationalMatrix.identity(2).scale(c)
        assert acc.is_zero()
