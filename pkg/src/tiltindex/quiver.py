"""Bound quiver algebras with admissible relations.

A path is a pair ``(source_vertex, arrow_name_tuple)``; the trivial path
at a vertex v is ``(v, ())``.  Composition is written left to right:
the path ``(v, ("a", "b"))`` means "a then b", and representations carry
linear maps along arrows in the arrow direction.  With this convention
the modules of the quotient algebra are its finitely generated right
modules, and the indecomposable projective at v has basis the residue
classes of paths starting at v.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import MalformedRelation, NotAdmissible
from .linalg import as_fraction

Path = Tuple[str, Tuple[str, ...]]


class Quiver:
    """Finite quiver with labelled vertices and named arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]]) -> None:
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self.arrows = tuple((str(n), str(s), str(t)) for n, s, t in arrows)
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vset = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vset or t not in vset:
                raise ValueError(f"arrow {name} has undeclared endpoint")
        self.arrow_source = {n: s for n, s, t in self.arrows}
        self.arrow_target = {n: t for n, s, t in self.arrows}
        self.arrows_by_source: Dict[str, list] = {v: [] for v in self.vertices}
        for n, s, t in self.arrows:
            self.arrows_by_source[s].append(n)
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}

    def path_target(self, path: Path) -> str:
        src, arrows = path
        return self.arrow_target[arrows[-1]] if arrows else src

    def path_is_composable(self, path: Path) -> bool:
        src, arrows = path
        at = src
        for a in arrows:
            if a not in self.arrow_source or self.arrow_source[a] != at:
                return False
            at = self.arrow_target[a]
        return True

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(n, t, s) for n, s, t in self.arrows])

    def __repr__(self) -> str:
        return f"Quiver({list(self.vertices)}, {list(self.arrows)})"


class PathExpression:
    """Rational combination of parallel paths, used for relations.

    All paths in one expression must share a source and a target, and
    relation terms must have length at least two.
    """

    def __init__(self, quiver: Quiver, terms: Sequence[Tuple[object, Sequence[str]]]) -> None:
        self.quiver = quiver
        cleaned = []
        for coeff, arrows in terms:
            coeff = as_fraction(coeff)
            arrows = tuple(str(a) for a in arrows)
            if coeff == 0:
                continue
            if not arrows:
                raise MalformedRelation("relation term has an empty path")
            src = quiver.arrow_source.get(arrows[0])
            if src is None:
                raise MalformedRelation(f"unknown arrow {arrows[0]!r}")
            path = (src, arrows)
            if not quiver.path_is_composable(path):
                raise MalformedRelation(f"non-composable path {arrows}")
            cleaned.append((coeff, path))
        if not cleaned:
            raise MalformedRelation("relation has no nonzero terms")
        sources = {p[0] for _, p in cleaned}
        targets = {quiver.path_target(p) for _, p in cleaned}
        if len(sources) != 1 or len(targets) != 1:
            raise MalformedRelation("relation terms are not parallel")
        if any(len(p[1]) < 2 for _, p in cleaned):
            raise MalformedRelation("relation contains a path of length < 2")
        self.terms: Tuple[Tuple[Fraction, Path], ...] = tuple(cleaned)
        self.source = cleaned[0][1][0]
        self.target = quiver.path_target(cleaned[0][1])

    def reversed(self, opposite_quiver: Quiver) -> "PathExpression":
        return PathExpression(
            opposite_quiver,
            [(c, tuple(reversed(p[1]))) for c, p in self.terms],
        )

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{'.'.join(p[1])}" for c, p in self.terms)
        return f"PathExpression({body})"


class _BlockReducer:
    """Row reduction state for the ideal restricted to one parallel class."""

    def __init__(self, paths_desc: List[Path]) -> None:
        self.paths = paths_desc  # longest first
        self.index = {p: i for i, p in enumerate(paths_desc)}
        self.rows: List[List[Fraction]] = []
        self.pivot_of_row: List[int] = []
        self.pivot_cols: Dict[int, int] = {}

    def add(self, vec: List[Fraction]) -> bool:
        """Reduce a candidate against the current rows; keep it if new."""
        v = list(vec)
        for col, r in sorted(self.pivot_cols.items()):
            if v[col] != 0:
                f = v[col]
                row = self.rows[r]
                v = [x - f * y for x, y in zip(v, row)]
        lead = next((i for i, x in enumerate(v) if x != 0), None)
        if lead is None:
            return False
        inv = 1 / v[lead]
        v = [x * inv for x in v]
        for r, row in enumerate(self.rows):
            if row[lead] != 0:
                f = row[lead]
                self.rows[r] = [x - f * y for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivot_of_row.append(lead)
        self.pivot_cols[lead] = len(self.rows) - 1
        return True


class BoundQuiverAlgebra:
    """Quotient of a path algebra by an admissible relation ideal.

    Constructed through :func:`build_algebra`.  Stores a reduced path
    basis together with a rewriting table sending each non-basis path of
    length below the nilpotency bound to its normal form.
    """

    def __init__(self, quiver: Quiver, relations, nilpotency_bound: int, _internal=None) -> None:
        if _internal is None:
            raise TypeError("use build_algebra to construct algebras")
        self.quiver = quiver
        self.relations = tuple(relations)
        self.nilpotency_bound = nilpotency_bound
        (self.path_basis, self._rewrite, self._basis_by_pair) = _internal
        self._basis_index = {p: i for i, p in enumerate(self.path_basis)}
        self._opposite: Optional[BoundQuiverAlgebra] = None
        self.dimension = len(self.path_basis)

    # -- path arithmetic ---------------------------------------------------

    def basis_paths_between(self, src: str, tgt: str) -> List[Path]:
        return self._basis_by_pair.get((src, tgt), [])

    def reduce_path(self, path: Path) -> Dict[Path, Fraction]:
        """Normal form of a single path as a basis-path combination."""
        if len(path[1]) >= self.nilpotency_bound:
            return {}
        rew = self._rewrite.get(path)
        if rew is not None:
            return dict(rew)
        return {path: Fraction(1)}

    def extend_by_arrow(self, combo: Dict[Path, Fraction], arrow: str) -> Dict[Path, Fraction]:
        """Right-multiply a basis combination by an arrow and re-reduce."""
        out: Dict[Path, Fraction] = {}
        src_needed = self.quiver.arrow_source[arrow]
        for path, coeff in combo.items():
            if self.quiver.path_target(path) != src_needed:
                continue
            extended = (path[0], path[1] + (arrow,))
            for q, c in self.reduce_path(extended).items():
                out[q] = out.get(q, Fraction(0)) + coeff * c
        return {p: c for p, c in out.items() if c != 0}

    def compose(self, left: Dict[Path, Fraction], right_path: Path) -> Dict[Path, Fraction]:
        """Product (left combination) * (right path), reduced stepwise."""
        out = dict(left)
        for arrow in right_path[1]:
            out = self.extend_by_arrow(out, arrow)
            if not out:
                break
        # right_path of length zero acts as the idempotent at its vertex
        if not right_path[1]:
            out = {
                p: c
                for p, c in out.items()
                if self.quiver.path_target(p) == right_path[0]
            }
        return out

    def multiply(self, a: Dict[Path, Fraction], b: Dict[Path, Fraction]) -> Dict[Path, Fraction]:
        out: Dict[Path, Fraction] = {}
        for pb, cb in b.items():
            partial = self.compose(a, pb)
            for q, c in partial.items():
                out[q] = out.get(q, Fraction(0)) + cb * c
        return {p: c for p, c in out.items() if c != 0}

    # -- structure ---------------------------------------------------------

    def opposite(self) -> "BoundQuiverAlgebra":
        """The opposite algebra; arrows reversed, relations reversed.

        Memoized, and the opposite of the opposite is this very object,
        so dualizing twice lands on the same algebra instance.
        """
        if self._opposite is None:
            opp_quiver = self.quiver.opposite()
            opp_rels = [r.reversed(opp_quiver) for r in self.relations]
            opp = build_algebra(opp_quiver, opp_rels, self.nilpotency_bound)
            opp._opposite = self
            self._opposite = opp
        return self._opposite

    def __repr__(self) -> str:
        return (
            f"BoundQuiverAlgebra(dim={self.dimension}, vertices={len(self.quiver.vertices)}, "
            f"arrows={len(self.quiver.arrows)}, relations={len(self.relations)})"
        )


def _all_paths_up_to(quiver: Quiver, max_len: int) -> List[Path]:
    paths: List[Path] = [(v, ()) for v in quiver.vertices]
    frontier = list(paths)
    for _ in range(max_len):
        nxt = []
        for path in frontier:
            tgt = quiver.path_target(path)
            for a in quiver.arrows_by_source[tgt]:
                nxt.append((path[0], path[1] + (a,)))
        paths.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    return paths


def default_nilpotency_bound(quiver: Quiver) -> int:
    return len(quiver.arrows) + 2


def build_algebra(
    quiver: Quiver,
    relations: Sequence[PathExpression],
    nilpotency_bound: Optional[int] = None,
) -> BoundQuiverAlgebra:
    """Build the quotient algebra and verify admissibility.

    The two-sided ideal is spanned degree by degree up to the nilpotency
    bound N by closing the relations under pre- and post-composition by
    arrows; components of length above N are dropped.  Construction
    fails with :class:`NotAdmissible` unless every path of length N
    reduces to zero.
    """
    n_bound = nilpotency_bound if nilpotency_bound is not None else default_nilpotency_bound(quiver)
    if n_bound < 1:
        raise ValueError("nilpotency bound must be positive")
    checked = []
    for r in relations:
        if not isinstance(r, PathExpression):
            raise MalformedRelation("relations must be PathExpression instances")
        if r.quiver is not quiver:
            r = PathExpression(quiver, [(c, p[1]) for c, p in r.terms])
        checked.append(r)
    relations = checked

    all_paths = _all_paths_up_to(quiver, n_bound)
    by_pair: Dict[Tuple[str, str], List[Path]] = {}
    for p in all_paths:
        by_pair.setdefault((p[0], quiver.path_target(p)), []).append(p)
    # longest first inside each block so elimination rewrites long paths
    # in terms of shorter ones
    paths_desc = {
        key: sorted(block, key=lambda p: (-len(p[1]), p[1]))
        for key, block in by_pair.items()
    }
    reducers = {key: _BlockReducer(block) for key, block in paths_desc.items()}

    def vector_of(terms: Dict[Path, Fraction], key) -> List[Fraction]:
        block = paths_desc[key]
        idx = reducers[key].index
        v = [Fraction(0)] * len(block)
        for p, c in terms.items():
            v[idx[p]] = c
        return v

    worklist: List[Tuple[Tuple[str, str], Dict[Path, Fraction]]] = []
    for rel in relations:
        key = (rel.source, rel.target)
        terms = {p: c for c, p in rel.terms}
        if reducers[key].add(vector_of(terms, key)):
            worklist.append((key, terms))

    while worklist:
        key, terms = worklist.pop()
        src, tgt = key
        # post-compose: relation * arrow
        for a in quiver.arrows_by_source[tgt]:
            new_terms: Dict[Path, Fraction] = {}
            for p, c in terms.items():
                ext = (p[0], p[1] + (a,))
                if len(ext[1]) <= n_bound:
                    new_terms[ext] = new_terms.get(ext, Fraction(0)) + c
            if not new_terms:
                continue
            new_key = (src, quiver.arrow_target[a])
            if reducers[new_key].add(vector_of(new_terms, new_key)):
                worklist.append((new_key, new_terms))
        # pre-compose: arrow * relation
        for name, asrc, atgt in quiver.arrows:
            if atgt != src:
                continue
            new_terms = {}
            for p, c in terms.items():
                ext = (asrc, (name,) + p[1])
                if len(ext[1]) <= n_bound:
                    new_terms[ext] = new_terms.get(ext, Fraction(0)) + c
            if not new_terms:
                continue
            new_key = (asrc, tgt)
            if reducers[new_key].add(vector_of(new_terms, new_key)):
                worklist.append((new_key, new_terms))

    # canonical reduced rows, rewrite table, admissibility, basis
    basis: List[Path] = []
    rewrite: Dict[Path, Dict[Path, Fraction]] = {}
    basis_by_pair: Dict[Tuple[str, str], List[Path]] = {}
    for key, block in paths_desc.items():
        red = reducers[key]
        pivot_paths = {}
        for row, lead in zip(red.rows, red.pivot_of_row):
            pivot_paths[block[lead]] = row
        for p in block:
            if len(p[1]) == n_bound:
                row = pivot_paths.get(p)
                idx = red.index[p]
                in_ideal = row is not None and all(
                    x == 0 for i, x in enumerate(row) if i != idx
                )
                if not in_ideal:
                    raise NotAdmissible(
                        f"path {'.'.join(p[1])} of length {n_bound} does not reduce to zero"
                    )
        block_basis = []
        for p in block:
            if len(p[1]) == n_bound:
                continue
            row = pivot_paths.get(p)
            if row is None:
                block_basis.append(p)
            else:
                idx = red.index[p]
                nf: Dict[Path, Fraction] = {}
                for i, x in enumerate(row):
                    if x != 0 and i != idx:
                        q = block[i]
                        if len(q[1]) == n_bound:
                            raise NotAdmissible(
                                f"rewrite of {'.'.join(p[1])} meets a surviving maximal path"
                            )
                        nf[q] = -x
                rewrite[p] = nf
        block_basis.sort(key=lambda p: (len(p[1]), p[1]))
        basis_by_pair[key] = block_basis
        basis.extend(block_basis)

    basis.sort(key=lambda p: (len(p[1]), quiver.vertex_index[p[0]], p[1]))
    return BoundQuiverAlgebra(
        quiver, relations, n_bound, _internal=(basis, rewrite, basis_by_pair)
    )
