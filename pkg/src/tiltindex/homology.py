"""Minimal projective resolutions, Ext dimensions, vector space duality,
higher transposes and the higher Auslander-Reiten translate.

Projective terms remember their summand vertices and generator
positions, so Hom spaces out of them and dualized differentials come
from path bookkeeping instead of generic intertwiner solving.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ZeroModule
from .linalg import RationalMatrix
from .modules import (
    ModuleMorphism,
    Representation,
    cokernel,
    dual_representation,
    hom_dim,
    kernel,
    radical_subspaces,
    zero_module,
)
from .quiver import BoundQuiverAlgebra


class ProjectiveTerm:
    """Direct sum of indecomposable projectives with explicit generators.

    The basis at a vertex w is the list of pairs (copy index, basis path
    from the copy's vertex to w), in copy order."""

    def __init__(self, algebra: BoundQuiverAlgebra, copies: Sequence[str]) -> None:
        self.algebra = algebra
        self.copies = list(copies)
        q = algebra.quiver
        labels: Dict[str, list] = {w: [] for w in q.vertices}
        for i, v in enumerate(self.copies):
            for w in q.vertices:
                for p in algebra.basis_paths_between(v, w):
                    labels[w].append((i, p))
        self.labels = labels
        self.label_index = {
            w: {lab: k for k, lab in enumerate(labels[w])} for w in q.vertices
        }
        dims = {w: len(labels[w]) for w in q.vertices}
        maps = {}
        for name, s, t in q.arrows:
            cols = labels[s]
            rows = self.label_index[t]
            m = [[Fraction(0)] * len(cols) for _ in range(len(rows))]
            for j, (i, p) in enumerate(cols):
                for ext, c in algebra.extend_by_arrow({p: Fraction(1)}, name).items():
                    m[rows[(i, ext)]][j] = c
            maps[name] = (
                RationalMatrix(m)
                if rows and cols
                else RationalMatrix.zeros(len(rows), len(cols))
            )
        self.rep = Representation(algebra, dims, maps, check=False)
        self.generator_offsets = [
            self.label_index[v][(i, (v, ()))] for i, v in enumerate(self.copies)
        ]

    def multiplicities(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for v in self.copies:
            out[v] = out.get(v, 0) + 1
        return out

    def is_empty(self) -> bool:
        return not self.copies

    def hom_dim_to(self, n: Representation) -> int:
        return sum(n.dim(v) for v in self.copies)

    def morphism_from_generator_values(
        self, n: Representation, values: Sequence[Sequence]
    ) -> ModuleMorphism:
        """The unique morphism to n sending each generator to the given
        vector of its copy's vertex block."""
        q = self.algebra.quiver
        path_cache: Dict[tuple, RationalMatrix] = {}

        def path_mat(p):
            m = path_cache.get(p)
            if m is None:
                m = n.path_matrix(p)
                path_cache[p] = m
            return m

        vm = {}
        for w in q.vertices:
            cols = []
            for (i, p) in self.labels[w]:
                cols.append(path_mat(p).apply(values[i]))
            vm[w] = RationalMatrix.from_columns(cols, rows=n.dim(w)) if cols else RationalMatrix.zeros(n.dim(w), 0)
        return ModuleMorphism(self.rep, n, vm, check=False)

    def generator_columns(self, f: ModuleMorphism) -> List[list]:
        """Values of a morphism out of this term on the generators."""
        out = []
        for i, v in enumerate(self.copies):
            out.append(list(f.vertex_maps[v].column(self.generator_offsets[i])))
        return out

    def differential_paths(self, d: ModuleMorphism, target_term: "ProjectiveTerm"):
        """Express a morphism from another projective term into this one
        as a matrix of path combinations.

        Entry (i, j') lists (coefficient, path from self.copies[i] to
        target_term.copies[j']) with d(generator j') = sum of generator_i
        * path."""
        cols = target_term.generator_columns(d)
        out: Dict[Tuple[int, int], list] = {}
        for jp, w in enumerate(target_term.copies):
            col = cols[jp]
            for k, coeff in enumerate(col):
                if coeff != 0:
                    i, p = self.labels[w][k]
                    out.setdefault((i, jp), []).append((coeff, p))
        return out


class ProjectiveResolution:
    """Minimal projective resolution, lazily extended and cached per
    module inside a session."""

    def __init__(self, target: Representation) -> None:
        self.target = target
        self.algebra = target.algebra
        self.terms: List[ProjectiveTerm] = []
        self.differentials: List[Optional[ModuleMorphism]] = []
        self.augmentation: Optional[ModuleMorphism] = None
        self._next_kernel = None  # (rep, inclusion into last term)
        self._finished = target.is_zero()
        if self._finished:
            self.augmentation = None

    def ensure_length(self, n: int) -> None:
        while len(self.terms) <= n and not self._finished:
            self._extend()
        while len(self.terms) <= n:
            self.terms.append(ProjectiveTerm(self.algebra, []))
            self.differentials.append(None)

    def _extend(self) -> None:
        if not self.terms:
            cover, term = projective_cover_onto(self.target)
            self.terms.append(term)
            self.augmentation = cover
            ker, incl = kernel(cover)
            if ker.is_zero():
                self._finished = True
                self._next_kernel = None
            else:
                self._next_kernel = (ker, incl)
            self.differentials.append(None)
            return
        ker, incl = self._next_kernel
        cover, term = projective_cover_onto(ker)
        self.terms.append(term)
        self.differentials.append(incl.compose(cover))
        ker2, incl2 = kernel(cover)
        if ker2.is_zero():
            self._finished = True
            self._next_kernel = None
        else:
            self._next_kernel = (ker2, incl2.compose(
                ModuleMorphism(ker2, ker, incl2.vertex_maps, check=False)
            ) if False else incl2)
            # the new kernel sits inside the new term; record its inclusion there
            self._next_kernel = (ker2, incl2)

    def term(self, k: int) -> ProjectiveTerm:
        self.ensure_length(k)
        return self.terms[k]

    def differential(self, k: int) -> ModuleMorphism:
        """The map from term k to term k-1 (k >= 1)."""
        self.ensure_length(k)
        d = self.differentials[k]
        if d is None:
            d = ModuleMorphism(self.terms[k].rep, self.terms[k - 1].rep, {}, check=False)
        return d

    def length_computed(self) -> int:
        return len(self.terms)

    def is_exhausted_by(self, k: int) -> bool:
        self.ensure_length(k)
        return self._finished and all(t.is_empty() for t in self.terms[k + 1 :])

    def verify(self, upto: int) -> None:
        """Re-check exactness and minimality by vertexwise ranks."""
        self.ensure_length(upto + 1)
        rads = {k: radical_subspaces(self.terms[k].rep) for k in range(upto + 2)}
        q = self.algebra.quiver
        for v in q.vertices:
            rank_aug = self.augmentation.rank_at(v) if self.augmentation else 0
            assert rank_aug == self.target.dim(v), "augmentation is not surjective"
        for k in range(1, upto + 1):
            d = self.differential(k)
            prev = self.differential(k + 1)
            for v in q.vertices:
                if k == 1:
                    ker_dim = self.terms[0].rep.dim(v) - self.target.dim(v)
                else:
                    ker_dim = self.terms[k - 1].rep.dim(v) - self.differential(k - 1).rank_at(v)
                assert d.rank_at(v) == ker_dim, f"resolution not exact at step {k}"
            # minimality: image lies in the radical of the codomain
            for v in q.vertices:
                rad = rads[k - 1][v]
                cols = [d.vertex_maps[v].column(j) for j in range(d.vertex_maps[v].cols)]
                if cols:
                    joined = RationalMatrix.hstack(
                        [rad, RationalMatrix.from_columns(cols, rows=d.vertex_maps[v].rows)]
                    )
                    assert joined.rank() == rad.rank(), "differential escapes the radical"


def projective_cover_onto(m: Representation) -> Tuple[ModuleMorphism, ProjectiveTerm]:
    """Projective cover as (cover morphism, source term).

    Generators are lifted from a complement of the radical, taken on
    standard coordinate vectors, so the kernel sits inside the radical."""
    if m.is_zero():
        raise ZeroModule("the zero module has no projective cover")
    q = m.algebra.quiver
    rads = radical_subspaces(m)
    copies = []
    values = []
    for v in q.vertices:
        rad = rads[v]
        span = [rad.column(j) for j in range(rad.cols)]
        n = m.dim(v)
        for e in range(n):
            if len(span) == n:
                break
            cand = [Fraction(1 if i == e else 0) for i in range(n)]
            trial = RationalMatrix.from_columns(span + [cand], rows=n)
            if trial.rank() == len(span) + 1:
                span.append(tuple(cand))
                copies.append(v)
                values.append(cand)
    term = ProjectiveTerm(m.algebra, copies)
    cover = term.morphism_from_generator_values(m, values)
    for v in q.vertices:
        assert cover.rank_at(v) == m.dim(v), "cover is not surjective"
    return cover, term


def projective_cover(m: Representation) -> ModuleMorphism:
    return projective_cover_onto(m)[0]


_RESOLUTION_CACHE: Dict[Representation, ProjectiveResolution] = {}


def minimal_projective_resolution(m: Representation, length: int = 0) -> ProjectiveResolution:
    res = _RESOLUTION_CACHE.get(m)
    if res is None:
        res = ProjectiveResolution(m)
        _RESOLUTION_CACHE[m] = res
    res.ensure_length(length)
    return res


def is_projective(m: Representation) -> bool:
    """Whether the module is a direct sum of indecomposable projectives."""
    if m.is_zero():
        return True
    from .modules import top_dims

    tops = top_dims(m)
    expected = {v: 0 for v in m.algebra.quiver.vertices}
    for v, k in tops.items():
        for w in m.algebra.quiver.vertices:
            expected[w] += k * len(m.algebra.basis_paths_between(v, w))
    return all(expected[v] == m.dim(v) for v in m.algebra.quiver.vertices)


# ---------------------------------------------------------------------------
# Ext dimensions

_EXT_CACHE: Dict[tuple, int] = {}


def _hom_complex_differential(
    res: ProjectiveResolution, k: int, n: Representation
) -> RationalMatrix:
    """Matrix of Hom(P_k, n) -> Hom(P_{k+1}, n) given by composing with
    the differential, in the generator-value bases."""
    term_k = res.term(k)
    term_k1 = res.term(k + 1)
    rows = term_k1.hom_dim_to(n)
    cols = term_k.hom_dim_to(n)
    if rows == 0 or cols == 0:
        return RationalMatrix.zeros(rows, cols)
    d = res.differential(k + 1)
    paths = term_k.differential_paths(d, term_k1)
    blocks: List[List[RationalMatrix]] = []
    for jp, w in enumerate(term_k1.copies):
        row_blocks = []
        for i, v in enumerate(term_k.copies):
            t = RationalMatrix.zeros(n.dim(w), n.dim(v))
            for coeff, p in paths.get((i, jp), []):
                t = t + n.path_matrix(p).scale(coeff)
            row_blocks.append(t)
        blocks.append(row_blocks)
    return RationalMatrix.vstack([RationalMatrix.hstack(rb) for rb in blocks])


def ext_dim(i: int, m: Representation, n: Representation) -> int:
    """Dimension of the i-th Ext space computed from a minimal projective
    resolution of the first argument."""
    if i < 0:
        raise ValueError("negative Ext index")
    if m.is_zero() or n.is_zero():
        return 0
    if i == 0:
        return hom_dim(m, n)
    key = (m, n, i)
    cached = _EXT_CACHE.get(key)
    if cached is not None:
        return cached
    res = minimal_projective_resolution(m, i + 1)
    hom_i = res.term(i).hom_dim_to(n)
    if hom_i == 0:
        _EXT_CACHE[key] = 0
        return 0
    rank_in = _hom_complex_differential(res, i - 1, n).rank()
    rank_out = _hom_complex_differential(res, i, n).rank()
    value = hom_i - rank_in - rank_out
    assert value >= 0
    _EXT_CACHE[key] = value
    return value


# ---------------------------------------------------------------------------
# duality, transpose, translate


def dual(m: Representation) -> Representation:
    """Vector space duality onto the opposite algebra."""
    return dual_representation(m)


class _LeftProjectiveTerm:
    """Direct sum of left projectives, packaged over the opposite
    algebra; basis at u is (copy, basis path from u into the copy's
    vertex)."""

    def __init__(self, algebra: BoundQuiverAlgebra, copies: Sequence[str]) -> None:
        self.algebra = algebra
        self.opposite = algebra.opposite()
        self.copies = list(copies)
        q = algebra.quiver
        labels: Dict[str, list] = {u: [] for u in q.vertices}
        for i, v in enumerate(self.copies):
            for u in q.vertices:
                for p in algebra.basis_paths_between(u, v):
                    labels[u].append((i, p))
        self.labels = labels
        self.label_index = {
            u: {lab: k for k, lab in enumerate(labels[u])} for u in q.vertices
        }
        dims = {u: len(labels[u]) for u in q.vertices}
        maps = {}
        # opposite arrow a runs t -> s for an algebra arrow a: s -> t
        for name, s, t in q.arrows:
            cols = labels[t]
            rows = self.label_index[s]
            mat = [[Fraction(0)] * len(cols) for _ in range(len(rows))]
            for j, (i, p) in enumerate(cols):
                pre = (s, (name,) + p[1])
                for red, c in algebra.reduce_path(pre).items():
                    mat[rows[(i, red)]][j] = c
            maps[name] = (
                RationalMatrix(mat)
                if rows and cols
                else RationalMatrix.zeros(len(rows), len(cols))
            )
        self.rep = Representation(self.opposite, dims, maps, check=False)


def transpose(m: Representation, d: int) -> Representation:
    """The d-th transpose: cokernel of the dualized differential between
    resolution degrees d-1 and d, over the opposite algebra."""
    if d < 1:
        raise ValueError("transpose degree must be positive")
    opp = m.algebra.opposite()
    if m.is_zero():
        return zero_module(opp)
    res = minimal_projective_resolution(m, d)
    term_prev = res.term(d - 1)
    term_top = res.term(d)
    if term_top.is_empty():
        return zero_module(opp)
    star_prev = _LeftProjectiveTerm(m.algebra, term_prev.copies)
    star_top = _LeftProjectiveTerm(m.algebra, term_top.copies)
    paths = term_prev.differential_paths(res.differential(d), term_top)
    q = m.algebra.quiver
    vm = {}
    for u in q.vertices:
        cols = []
        for (j, p) in star_prev.labels[u]:
            # right-multiply the basis path by each path entry of the
            # dualized differential
            col = [Fraction(0)] * len(star_top.labels[u])
            for jp in range(len(term_top.copies)):
                for coeff, x in paths.get((j, jp), []):
                    for red, c in m.algebra.compose({p: Fraction(1)}, x).items():
                        col[star_top.label_index[u][(jp, red)]] += coeff * c
            cols.append(col)
        vm[u] = RationalMatrix.from_columns(cols, rows=len(star_top.labels[u])) if cols else RationalMatrix.zeros(len(star_top.labels[u]), 0)
    star_map = ModuleMorphism(star_prev.rep, star_top.rep, vm)
    coker, _ = cokernel(star_map)
    return coker


_TAU_CACHE: Dict[tuple, Representation] = {}


def ar_translate(m: Representation, d: int) -> Representation:
    """Higher Auslander-Reiten translate: duality applied to the d-th
    transpose.  Projective modules translate to zero."""
    key = (m, d)
    cached = _TAU_CACHE.get(key)
    if cached is None:
        cached = dual_representation(transpose(m, d)) if not m.is_zero() else zero_module(m.algebra)
        if transpose(m, d).is_zero() if not m.is_zero() else True:
            cached = zero_module(m.algebra)
        _TAU_CACHE[key] = cached
    return cached


def inverse_ar_translate(m: Representation) -> Representation:
    """Classical inverse translate, the transpose of the dual; injective
    modules go to zero."""
    if m.is_zero():
        return zero_module(m.algebra)
    return transpose(dual_representation(m), 1)
