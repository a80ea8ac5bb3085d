import pytest

from tiltindex.errors import MalformedRelation, NotAdmissible
from tiltindex.quiver import PathExpression, Quiver, build_algebra


def a2_quiver():
    return Quiver(["1", "2"], [("a", "1", "2")])


def a3_quiver():
    return Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])


def a3_rad_square():
    q = a3_quiver()
    rel = PathExpression(q, [(1, ["a", "b"])])
    return build_algebra(q, [rel], 2)


class TestBuildAlgebra:
    def test_a2_basis(self):
        alg = build_algebra(a2_quiver(), [], 2)
        assert alg.dimension == 3
        lengths = sorted(len(p[1]) for p in alg.path_basis)
        assert lengths == [0, 0, 1]

    def test_a3_with_relation(self):
        alg = a3_rad_square()
        assert alg.dimension == 5
        assert all(len(p[1]) <= 1 for p in alg.path_basis)

    def test_single_vertex(self):
        alg = build_algebra(Quiver(["v"], []), [], 1)
        assert alg.dimension == 1

    def test_a3_free_algebra(self):
        alg = build_algebra(a3_quiver(), [], 3)
        # e1 e2 e3 a b ab
        assert alg.dimension == 6

    def test_loop_without_relations_is_not_admissible(self):
        q = Quiver(["v"], [("x", "v", "v")])
        with pytest.raises(NotAdmissible):
            build_algebra(q, [], 3)

    def test_loop_with_nilpotent_relation(self):
        q = Quiver(["v"], [("x", "v", "v")])
        rel = PathExpression(q, [(1, ["x", "x"])])
        alg = build_algebra(q, [rel], 2)
        assert alg.dimension == 2

    def test_trivial_paths_always_survive(self):
        alg = a3_rad_square()
        for v in alg.quiver.vertices:
            assert (v, ()) in alg.path_basis

    def test_dimension_counts_by_pair(self):
        alg = a3_rad_square()
        total = sum(
            len(alg.basis_paths_between(u, w))
            for u in alg.quiver.vertices
            for w in alg.quiver.vertices
        )
        assert total == alg.dimension


class TestRelationsValidation:
    def test_short_path_rejected(self):
        q = a2_quiver()
        with pytest.raises(MalformedRelation):
            PathExpression(q, [(1, ["a"])])

    def test_non_parallel_rejected(self):
        q = Quiver(
            ["1", "2", "3"],
            [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "2"), ("d", "2", "2")],
        )
        with pytest.raises(MalformedRelation):
            PathExpression(q, [(1, ["a", "b"]), (1, ["a", "d"])])

    def test_non_composable_rejected(self):
        q = a3_quiver()
        with pytest.raises(MalformedRelation):
            PathExpression(q, [(1, ["b", "a"])])

    def test_zero_relation_rejected(self):
        q = a3_quiver()
        with pytest.raises(MalformedRelation):
            PathExpression(q, [(0, ["a", "b"])])


class TestOpposite:
    def test_a2_opposite(self):
        alg = build_algebra(a2_quiver(), [], 2)
        opp = alg.opposite()
        assert opp.dimension == 3
        assert opp.quiver.arrow_source["a"] == "2"
        assert opp.opposite() is alg

    def test_relation_reversal(self):
        alg = a3_rad_square()
        opp = alg.opposite()
        assert opp.dimension == 5
        (rel,) = opp.relations
        assert rel.terms[0][1][1] == ("b", "a")

    def test_mixed_length_relation(self):
        # commutativity-style relation with two parallel length-2 paths
        q = Quiver(
            ["1", "2", "3", "4"],
            [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        rel = PathExpression(q, [(1, ["a", "b"]), (-1, ["c", "d"])])
        alg = build_algebra(q, [rel], 3)
        # paths: 4 trivial + 4 arrows + one surviving class of {ab = cd}
        assert alg.dimension == 9
        opp = alg.opposite()
        assert opp.dimension == 9


class TestPathArithmetic:
    def test_reduce_kills_relation(self):
        alg = a3_rad_square()
        assert alg.reduce_path(("1", ("a", "b"))) == {}

    def test_extend_by_arrow(self):
        alg = build_algebra(a3_quiver(), [], 3)
        combo = alg.extend_by_arrow({("1", ("a",)): 1}, "b")
        assert list(combo.keys()) == [("1", ("a", "b"))]

    def test_nonhomogeneous_rewrite(self):
        # relation forces the length-2 loop path to rewrite to a shorter arrow
        q = Quiver(["1", "2"], [("a", "1", "2"), ("e", "2", "2"), ("f", "2", "2")])
        rels = [
            PathExpression(q, [(1, ["e", "e"])]),
            PathExpression(q, [(1, ["e", "f"])]),
            PathExpression(q, [(1, ["f", "e"])]),
            PathExpression(q, [(1, ["f", "f"]), (-1, ["e", "e"])]),
        ]
        alg = build_algebra(q, rels, 3)
        # f*f is congruent to e*e which is zero
        assert alg.reduce_path(("2", ("f", "f"))) == {}
