import random
from fractions import Fraction

import pytest

from tiltindex.linalg import RationalMatrix
from tiltindex.modules import (
    ModuleMorphism,
    Representation,
    cokernel,
    composition_vector,
    decompose,
    direct_sum,
    dual_representation,
    hom_basis,
    hom_dim,
    identity_morphism,
    image,
    indecomposable_injective,
    indecomposable_projective,
    is_isomorphic,
    kernel,
    simple_module,
    summand_inclusion,
    summand_projection,
    top_dims,
    zero_module,
    zero_morphism,
)
from tiltindex.quiver import PathExpression, Quiver, build_algebra


@pytest.fixture(scope="module")
def a2():
    return build_algebra(Quiver(["1", "2"], [("a", "1", "2")]), [], 2)


@pytest.fixture(scope="module")
def a3ab():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    return build_algebra(q, [PathExpression(q, [(1, ["a", "b"])])], 2)


def random_base_change(rng, m):
    """Conjugate a representation by random invertible vertex matrices."""
    q = m.algebra.quiver
    changes = {}
    for v in q.vertices:
        n = m.dim(v)
        while True:
            mat = RationalMatrix([[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
            if n == 0 or mat.det() != 0:
                break
        changes[v] = mat
    maps = {}
    for name, s, t in q.arrows:
        maps[name] = changes[t] * m.arrow_maps[name] * changes[s].inverse()
    return Representation(m.algebra, dict(zip(q.vertices, m.dims)), maps)


class TestBuilders:
    def test_projective_dims(self, a2):
        assert indecomposable_projective(a2, "1").dims == (1, 1)
        assert indecomposable_projective(a2, "2").dims == (0, 1)

    def test_projective_with_relation(self, a3ab):
        assert indecomposable_projective(a3ab, "1").dims == (1, 1, 0)
        assert indecomposable_projective(a3ab, "2").dims == (0, 1, 1)

    def test_injective_dims(self, a2):
        assert indecomposable_injective(a2, "2").dims == (1, 1)
        assert indecomposable_injective(a2, "1").dims == (1, 0)

    def test_injective_socle_via_relation(self, a3ab):
        assert indecomposable_injective(a3ab, "2").dims == (1, 1, 0)
        assert indecomposable_injective(a3ab, "3").dims == (0, 1, 1)

    def test_one_vertex_semisimple(self):
        alg = build_algebra(Quiver(["v"], []), [], 1)
        p = indecomposable_projective(alg, "v")
        i = indecomposable_injective(alg, "v")
        s = simple_module(alg, "v")
        assert p.dims == i.dims == s.dims == (1,)

    def test_relation_violation_rejected(self, a3ab):
        with pytest.raises(ValueError):
            Representation(
                a3ab,
                {"1": 1, "2": 1, "3": 1},
                {"a": [[1]], "b": [[1]]},
            )

    def test_dual_involution(self, a2):
        p1 = indecomposable_projective(a2, "1")
        dd = dual_representation(dual_representation(p1))
        assert dd.algebra is a2
        assert is_isomorphic(dd, p1)


class TestHom:
    def test_hom_p1_p2_vanishes(self, a2):
        p1 = indecomposable_projective(a2, "1")
        p2 = indecomposable_projective(a2, "2")
        assert hom_dim(p1, p2) == 0

    def test_identity_always_present(self, a2):
        p1 = indecomposable_projective(a2, "1")
        assert hom_dim(p1, p1) >= 1

    def test_hom_from_zero(self, a2):
        assert hom_dim(zero_module(a2), indecomposable_projective(a2, "1")) == 0

    def test_projective_hom_counts_dimensions(self, a3ab):
        # Hom(P_v, X) has dimension dim X_v
        for v in a3ab.quiver.vertices:
            p = indecomposable_projective(a3ab, v)
            for w in a3ab.quiver.vertices:
                x = indecomposable_projective(a3ab, w)
                assert hom_dim(p, x) == x.dim(v)

    @pytest.mark.parametrize("seed", range(8))
    def test_hom_dim_is_iso_invariant(self, a3ab, seed):
        rng = random.Random(seed)
        p1 = indecomposable_projective(a3ab, "1")
        s2 = simple_module(a3ab, "2")
        m = direct_sum(a3ab, [p1, s2])
        n = direct_sum(a3ab, [indecomposable_projective(a3ab, "2"), s2])
        d = hom_dim(m, n)
        assert hom_dim(random_base_change(rng, m), random_base_change(rng, n)) == d

    def test_hom_additive(self, a3ab):
        parts = [indecomposable_projective(a3ab, v) for v in a3ab.quiver.vertices]
        s = direct_sum(a3ab, parts[:2])
        c = parts[2]
        assert hom_dim(s, c) == hom_dim(parts[0], c) + hom_dim(parts[1], c)


class TestKernelCokernel:
    def test_kernel_of_identity(self, a2):
        p1 = indecomposable_projective(a2, "1")
        k, _ = kernel(identity_morphism(p1))
        assert k.is_zero()

    def test_kernel_of_zero(self, a2):
        p1 = indecomposable_projective(a2, "1")
        s1 = simple_module(a2, "1")
        k, _ = kernel(zero_morphism(p1, s1))
        assert k.dims == p1.dims

    def test_kernel_of_cover(self, a2):
        p1 = indecomposable_projective(a2, "1")
        s1 = simple_module(a2, "1")
        cover = ModuleMorphism(p1, s1, {"1": [[1]]})
        k, incl = kernel(cover)
        assert k.dims == (0, 1)
        assert cover.compose(incl).is_zero()

    def test_cokernel_of_identity(self, a2):
        p1 = indecomposable_projective(a2, "1")
        c, _ = cokernel(identity_morphism(p1))
        assert c.is_zero()

    def test_cokernel_of_zero(self, a2):
        p1 = indecomposable_projective(a2, "1")
        s1 = simple_module(a2, "1")
        c, _ = cokernel(zero_morphism(s1, p1))
        assert c.dims == p1.dims

    def test_cokernel_of_socle_inclusion(self, a2):
        p1 = indecomposable_projective(a2, "1")
        s2 = simple_module(a2, "2")
        incl = ModuleMorphism(s2, p1, {"2": [[1]]})
        c, proj = cokernel(incl)
        assert c.dims == (1, 0)
        assert proj.compose(incl).is_zero()

    @pytest.mark.parametrize("seed", range(10))
    def test_rank_nullity(self, a3ab, seed):
        rng = random.Random(1000 + seed)
        pool = [indecomposable_projective(a3ab, v) for v in a3ab.quiver.vertices]
        pool += [simple_module(a3ab, v) for v in a3ab.quiver.vertices]
        m = direct_sum(a3ab, [rng.choice(pool) for _ in range(2)])
        n = direct_sum(a3ab, [rng.choice(pool) for _ in range(2)])
        basis = hom_basis(m, n)
        if not basis:
            return
        f = basis[0]
        for b in basis[1:]:
            f = f.add(b.scale(rng.randint(-2, 2)))
        ker, _ = kernel(f)
        img, _, onto = image(f)
        for v in a3ab.quiver.vertices:
            assert ker.dim(v) + img.dim(v) == m.dim(v)
            assert onto.rank_at(v) == img.dim(v)


class TestDirectSumAndVectors:
    def test_zero_summand(self, a2):
        p1 = indecomposable_projective(a2, "1")
        s = direct_sum(a2, [p1, zero_module(a2)])
        assert is_isomorphic(s, p1)

    def test_dims_add(self, a2):
        p1 = indecomposable_projective(a2, "1")
        s1 = simple_module(a2, "1")
        assert direct_sum(a2, [p1, s1]).dims == (2, 1)

    def test_inclusion_projection(self, a2):
        parts = [indecomposable_projective(a2, "1"), simple_module(a2, "2")]
        total = direct_sum(a2, parts)
        for k in range(2):
            inc = summand_inclusion(total, parts, k)
            prj = summand_projection(total, parts, k)
            assert prj.compose(inc).is_invertible()

    def test_composition_vector(self, a2):
        assert composition_vector(simple_module(a2, "2")) == (0, 1)
        assert composition_vector(indecomposable_projective(a2, "1")) == (1, 1)
        p1 = indecomposable_projective(a2, "1")
        s1 = simple_module(a2, "1")
        both = direct_sum(a2, [p1, s1])
        assert composition_vector(both) == tuple(
            x + y for x, y in zip(p1.dims, s1.dims)
        )

    def test_top_dims(self, a2):
        p1 = indecomposable_projective(a2, "1")
        assert top_dims(p1) == {"1": 1, "2": 0}


class TestDecompose:
    def test_projective_is_indecomposable(self, a2):
        d = decompose(indecomposable_projective(a2, "1"))
        assert len(d.summands) == 1 and d.summands[0][1] == 1

    def test_multiplicity_two(self, a2):
        s1 = simple_module(a2, "1")
        d = decompose(direct_sum(a2, [s1, s1]))
        assert len(d.summands) == 1 and d.summands[0][1] == 2

    def test_scrambled_sum_recovered(self, a2):
        rng = random.Random(7)
        p1 = indecomposable_projective(a2, "1")
        s2 = simple_module(a2, "2")
        scrambled = random_base_change(rng, direct_sum(a2, [p1, s2]))
        d = decompose(scrambled)
        found = sorted(s.dims for s, _ in d.summands)
        assert found == [(0, 1), (1, 1)]
        assert d.witness.is_invertible()

    def test_zero_module(self, a2):
        assert decompose(zero_module(a2)).summands == []

    def test_idempotent(self, a2):
        p1 = indecomposable_projective(a2, "1")
        d = decompose(direct_sum(a2, [p1, p1, simple_module(a2, "1")]))
        for s, _ in d.summands:
            again = decompose(s)
            assert len(again.summands) == 1 and again.summands[0][1] == 1

    @pytest.mark.parametrize("seed", [1, 2])
    def test_seed_independence(self, a3ab, seed):
        rng = random.Random(40 + seed)
        pool = [indecomposable_projective(a3ab, v) for v in a3ab.quiver.vertices]
        pool += [simple_module(a3ab, v) for v in a3ab.quiver.vertices]
        m = random_base_change(rng, direct_sum(a3ab, [rng.choice(pool) for _ in range(3)]))
        d1 = decompose(m, seed=0)
        d2 = decompose(m, seed=99)
        assert sorted(x.dims for x, k in d1.summands for _ in range(k)) == sorted(
            x.dims for x, k in d2.summands for _ in range(k)
        )


class TestIsIsomorphic:
    def test_reflexive(self, a2):
        p1 = indecomposable_projective(a2, "1")
        assert is_isomorphic(p1, p1)

    def test_different_dims(self, a2):
        assert not is_isomorphic(simple_module(a2, "1"), simple_module(a2, "2"))

    def test_p1_vs_split_sum(self, a2):
        p1 = indecomposable_projective(a2, "1")
        split = direct_sum(a2, [simple_module(a2, "1"), simple_module(a2, "2")])
        assert not is_isomorphic(p1, split)

    def test_base_change_invariance(self, a3ab):
        rng = random.Random(3)
        p2 = indecomposable_projective(a3ab, "2")
        assert is_isomorphic(p2, random_base_change(rng, p2))
