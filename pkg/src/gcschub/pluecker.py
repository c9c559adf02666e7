"""Plücker-index combinatorics of translated Schubert varieties and their
toric shadows: vanishing sets, divisor facet unions and the face-union
intersection Delta(u, v).

A Schubert variety is cut out of the ambient product of projective spaces by
coordinate hyperplanes; at each cut level n_i the coordinate p_I vanishes on
X^v iff the path of I does not run above the path of sort(v([1..n_i])), and
on X_w iff it does not run below the path of sort(w([1..n_i])).  Translating
by u sends p_I to p_{sort(u(I))}; Plücker signs are dropped since only
vanishing matters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gc_polytope import Face, FaceUnion, Polytope
from .ladder import LadderDiagram, PositivePath, path_leq
from .weyl import Permutation, longest_element, min_coset_rep


@dataclass(frozen=True)
class VanishingSet:
    """For each cut level, the set of index tuples with p_I = 0."""

    n: int
    per_level: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]

    @staticmethod
    def of(n: int, data: dict[int, set[tuple[int, ...]]]) -> "VanishingSet":
        return VanishingSet(
            n,
            tuple((level, tuple(sorted(data[level]))) for level in sorted(data)),
        )

    def level(self, level: int) -> frozenset[tuple[int, ...]]:
        for lv, idxs in self.per_level:
            if lv == level:
                return frozenset(idxs)
        return frozenset()

    def paths(self) -> list[PositivePath]:
        return [
            PositivePath(idx, self.n)
            for _, idxs in self.per_level
            for idx in idxs
        ]

    def translate(self, u: Permutation) -> "VanishingSet":
        data = {
            lv: {tuple(sorted(u(i) for i in idx)) for idx in idxs}
            for lv, idxs in self.per_level
        }
        return VanishingSet.of(self.n, data)

    def to_json(self) -> dict:
        return {str(lv): [list(i) for i in idxs] for lv, idxs in self.per_level}


@dataclass(frozen=True)
class DivisorFacetUnion:
    """A divisor path together with the facets of the effective edges on it."""

    path: PositivePath
    facets: tuple[Face, ...]


def w_divisor(u: Permutation, level: int) -> PositivePath:
    """The divisor path of u X^{s_level}: horizontal steps u({1..level})."""
    if not 1 <= level <= u.n:
        raise ValueError(f"level out of range: {level}")
    return PositivePath(u.image(range(1, level + 1)), u.n)


def vanishing_schubert(
    diagram: LadderDiagram, v: Permutation, opposite: bool = True
) -> VanishingSet:
    """Vanishing coordinates of X^v (opposite=True) or X_v on the diagram's
    flag variety, level by level."""
    shape = diagram.shape
    if v.n != shape.n:
        raise ValueError(f"rank mismatch: {v.n} vs {shape.n}")
    if not shape.in_min_coset_reps(v):
        raise ValueError(f"{v} is not a minimal coset representative for {shape}")
    data: dict[int, set[tuple[int, ...]]] = {}
    for level in shape.cuts:
        ref = PositivePath(v.image(range(1, level + 1)), shape.n)
        dead = set()
        for p in diagram.paths_at_level(level):
            alive = path_leq(ref, p) if opposite else path_leq(p, ref)
            if not alive:
                dead.add(p.steps)
        data[level] = dead
    return VanishingSet.of(shape.n, data)


def vanishing_translated(
    diagram: LadderDiagram, u: Permutation, v: Permutation
) -> VanishingSet:
    """Vanishing set of the translated variety u X^v."""
    return vanishing_schubert(diagram, v, opposite=True).translate(u)


def divisor_facets(poly: Polytope, path: PositivePath) -> DivisorFacetUnion:
    facets = tuple(
        poly.facet_face(e) for e in poly.diagram.effective_edges_on(path)
    )
    return DivisorFacetUnion(path, facets)


def fold_paths(poly: Polytope, paths) -> FaceUnion:
    """Intersection of the facet unions of the given divisor paths, as a
    canonical antichain of maximal faces.

    Paths with fewer facets are folded first purely to keep intermediate
    antichains small; the result does not depend on the order.
    """
    divisors = [divisor_facets(poly, p) for p in paths]
    divisors.sort(key=lambda d: (len(d.facets), d.path.steps))
    union = FaceUnion.whole(poly)
    for div in divisors:
        if not div.facets:
            return FaceUnion.empty(poly)
        union = union.intersect_with_facets(list(div.facets))
        if union.is_empty:
            return union
    return union


def delta_uv(poly: Polytope, u: Permutation, v: Permutation) -> FaceUnion:
    """The set-theoretic intersection, over the divisors cutting out u X^v,
    of the unions of facets on each divisor path."""
    vanishing = vanishing_translated(poly.diagram, u, v)
    return fold_paths(poly, vanishing.paths())


def delta_schubert_bottom(poly: Polytope, w: Permutation) -> FaceUnion:
    """Delta(w_0, pi(w_0 w)): the toric shadow of X_w."""
    w0 = longest_element(w.n)
    rep = min_coset_rep(w0 * w, poly.shape)
    return delta_uv(poly, w0, rep)


def toric_divisor_equations(diagram: LadderDiagram, edge) -> VanishingSet:
    """Coordinates vanishing on the toric divisor of an effective edge: all
    p_I whose path contains the edge."""
    if not diagram.is_effective(edge):
        raise ValueError(f"edge {edge} is not effective")
    data: dict[int, set[tuple[int, ...]]] = {}
    for level in diagram.shape.cuts:
        data[level] = {
            p.steps
            for p in diagram.paths_at_level(level)
            if edge in diagram.effective_edges_on(p)
        }
    return VanishingSet.of(diagram.n, data)


def toric_subvariety_equations(
    diagram: LadderDiagram, mu: tuple[int, ...], dual: bool = False
) -> VanishingSet:
    """Grassmannian toric subvariety equations: p_I = 0 for paths not above
    (dual: not below) the path of mu.  These agree with the Schubert
    vanishing sets, which is how the degeneration preserves index sets."""
    shape = diagram.shape
    if not shape.is_grassmannian():
        raise ValueError(f"Grassmannian shape required, got {shape}")
    from .ladder import path_of_partition

    m = shape.cuts[0]
    ref = path_of_partition(tuple(mu), m, shape.n)
    dead = set()
    for p in diagram.paths_at_level(m):
        alive = path_leq(p, ref) if dual else path_leq(ref, p)
        if not alive:
            dead.add(p.steps)
    return VanishingSet.of(shape.n, {m: dead})
