import itertools
import random
from fractions import Fraction

import pytest

from conftest import abelian, heisenberg, sl2
from slowent.catalog import ExampleSpec, build_example, enumerate_catalog
from slowent.filtration import (
    NotUnipotentError,
    centralizer,
    compute_filtration,
    slow_entropy,
    witness_nonkill,
)
from slowent.lie import SubalgebraSpec, basis_vector, is_zero, vector
from slowent.linalg import RationalMatrix, Subspace, intersect, kernel


def literal_tilde(algebra, u, i):
    """Eq.-style definition: common kernel of all (i+1)-fold ad words."""
    ad_mats = [algebra.ad(g) for g in u.generators]
    out = Subspace.full(algebra.dim)
    for combo in itertools.product(ad_mats, repeat=i + 1):
        word = RationalMatrix.identity(algebra.dim)
        for m in combo:
            word = m @ word
        out = intersect(out, kernel(word))
    return out


class TestCentralizer:
    def test_abelian_central(self):
        alg = abelian(3)
        u = SubalgebraSpec((basis_vector(3, 0),))
        assert centralizer(alg, u) == Subspace.full(3)

    def test_sl2_span_e(self):
        alg, u = sl2()
        c = centralizer(alg, u)
        assert c.dim == 1
        assert c.contains(u.generators[0])

    def test_sl3_first_row(self):
        # centralizer of the full first row is the first row itself
        alg, u = build_example(ExampleSpec("sl_first_row_restriction", (3, 2)))
        c = centralizer(alg, u)
        assert c.dim == 2
        assert c == u.subspace(alg.dim)


class TestComputeFiltration:
    def test_sl2(self):
        alg, u = sl2()
        f = compute_filtration(alg, u)
        assert f.dims == (1, 1, 1)
        assert f.m == 2

    def test_sl3_jordan_powers(self):
        alg, u = build_example(ExampleSpec("sl_jordan_powers", (3,)))
        f = compute_filtration(alg, u)
        assert f.dims == (2, 2, 2, 1, 1)
        assert f.m == 4

    def test_heisenberg(self):
        alg, u = heisenberg()
        f = compute_filtration(alg, u)
        assert f.dims == (2, 1)
        assert f.m == 1

    def test_structural_invariants(self):
        alg, u = build_example(ExampleSpec("sl_first_row_restriction", (3, 1)))
        f = compute_filtration(alg, u)
        assert f.graded[0] == f.tilde[0]
        assert sum(f.dims) == alg.dim
        assert f.tilde[f.m].is_full()
        for i in range(1, f.m + 1):
            assert f.tilde[i - 1].dim < f.tilde[i].dim
            joined = f.graded[i].sum(f.tilde[i - 1])
            assert joined == f.tilde[i]

    def test_not_unipotent(self):
        from test_lie import sl2_hef

        alg = sl2_hef()
        u = SubalgebraSpec((basis_vector(3, 0),))  # ad H is semisimple
        with pytest.raises(NotUnipotentError):
            compute_filtration(alg, u)

    def test_recursion_matches_literal_definition(self):
        for spec in enumerate_catalog(4):
            alg, u = build_example(spec)
            if alg.dim > 15:
                continue
            f = compute_filtration(alg, u)
            for i in range(min(f.m, 3) + 1):
                assert f.tilde[i] == literal_tilde(alg, u, i), spec

    def test_generator_change_invariance(self):
        rng = random.Random(9)
        for spec in [
            ExampleSpec("sl_first_row_restriction", (3, 2)),
            ExampleSpec("sl_jordan_powers", (3,)),
            ExampleSpec("strictly_upper_first_row", (4, 2)),
        ]:
            alg, u = build_example(spec)
            f = compute_filtration(alg, u)
            k = u.k
            while True:
                g = [[Fraction(rng.randint(-3, 3)) for _ in range(k)] for _ in range(k)]
                gm = RationalMatrix(g)
                from slowent.linalg import rref

                if rref(gm)[1] == k:
                    break
            mixed = []
            for row in g:
                acc = [Fraction(0)] * alg.dim
                for c, gen in zip(row, u.generators):
                    for idx, x in enumerate(gen):
                        acc[idx] += c * x
                mixed.append(vector(acc))
            f2 = compute_filtration(alg, SubalgebraSpec(tuple(mixed)))
            assert f2.tilde == f.tilde
            assert f2.dims == f.dims
            assert f2.m == f.m
            assert slow_entropy(f2) == slow_entropy(f)

    def test_complement_choice_invariance(self):
        for spec in [
            ExampleSpec("sl_first_row_restriction", (3, 1)),
            ExampleSpec("sl_jordan_powers", (3,)),
        ]:
            alg, u = build_example(spec)
            a = compute_filtration(alg, u)
            b = compute_filtration(alg, u, complement_strategy="greedy_reversed")
            assert a.dims == b.dims
            assert slow_entropy(a) == slow_entropy(b)


class TestSlowEntropy:
    def test_sl2_value(self):
        alg, u = sl2()
        e = slow_entropy(compute_filtration(alg, u))
        assert e.unnormalized_h == 3
        assert e.normalized_h == 3

    def test_sl3_jordan_value(self):
        alg, u = build_example(ExampleSpec("sl_jordan_powers", (3,)))
        e = slow_entropy(compute_filtration(alg, u))
        assert e.normalized_h == Fraction(13, 2)

    def test_central_u_gives_zero(self):
        alg = abelian(4)
        u = SubalgebraSpec((basis_vector(4, 1),))
        e = slow_entropy(compute_filtration(alg, u))
        assert e.unnormalized_h == 0
        assert e.normalized_h == 0

    def test_normalization_identity(self):
        alg, u = build_example(ExampleSpec("sl_first_row_restriction", (4, 2)))
        e = slow_entropy(compute_filtration(alg, u))
        assert e.normalized_h * u.k == e.unnormalized_h


class TestWitnessNonkill:
    def test_level_zero_empty_tuple(self):
        alg, u = sl2()
        f = compute_filtration(alg, u)
        assert witness_nonkill(alg, u, f, u.generators[0]) == ()

    def test_sl2_level_one(self):
        alg, u = sl2()
        f = compute_filtration(alg, u)
        h = basis_vector(3, 2)  # H1 in the (E12, E21, H1) basis
        (w,) = witness_nonkill(alg, u, f, h)
        image = alg.ad(w).apply(h)
        assert not is_zero(image)
        assert f.tilde[0].contains(image)

    def test_sl2_level_two(self):
        alg, u = sl2()
        f = compute_filtration(alg, u)
        fvec = basis_vector(3, 1)  # E21
        ws = witness_nonkill(alg, u, f, fvec)
        assert len(ws) == 2
        image = fvec
        for w in ws:
            image = alg.ad(w).apply(image)
        assert not is_zero(image)
        assert f.tilde[0].contains(image)

    def test_catalog_every_graded_basis_vector(self):
        for spec in [
            ExampleSpec("sl_first_row_restriction", (3, 2)),
            ExampleSpec("sl_jordan_powers", (3,)),
        ]:
            alg, u = build_example(spec)
            f = compute_filtration(alg, u)
            for i, g in enumerate(f.graded):
                for row in g.basis.data:
                    ws = witness_nonkill(alg, u, f, row)
                    assert len(ws) == i
