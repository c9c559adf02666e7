"""Exact face arithmetic on Gelfand-Cetlin polytopes.

The polytope is stored combinatorially: block values are kept symbolic as
indices 1..k+1 with a_1 > a_2 > ... > a_{k+1}, since every strictly
decreasing numeric instantiation yields the same face structure.  A face is
an equality system on the boxes, kept in saturated canonical form: boxes
merged into blocks, blocks pinned to constants whenever the order
constraints squeeze them.  Saturation makes feasibility, dimension and
containment exact for these systems, and the vertex-rank oracle double
checks that in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .ladder import (
    Cell,
    EdgeKey,
    LadderDiagram,
    Pattern,
    path_of_partition,
    validate_lambda,
)


class UnsupportedShapeError(ValueError):
    """Raised when an operation is only characterized for Grassmannians or
    complete flags and another shape is requested."""


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra
        return ra


@dataclass(frozen=True)
class Face:
    """Saturated equality system on the boxes of a polytope.

    ``key`` assigns every box either -l (pinned to block value a_l) or a
    positive block number given by first occurrence; ``None`` marks the
    empty face.  Faces compare and hash by key alone.
    """

    poly: "Polytope"
    key: tuple[int, ...] | None

    def __eq__(self, other) -> bool:
        return isinstance(other, Face) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "Face") -> bool:
        return (self.key is None, self.key or ()) < (other.key is None, other.key or ())

    @property
    def is_empty(self) -> bool:
        return self.key is None

    @property
    def dim(self) -> int:
        if self.key is None:
            return -1
        return len({v for v in self.key if v > 0})

    def pinned(self) -> dict[Cell, int]:
        """Box -> block-value index for the pinned boxes."""
        return {
            cell: -v
            for cell, v in zip(self.poly.boxes, self.key)
            if v < 0
        }

    def blocks(self) -> list[tuple[Cell, ...]]:
        """Unpinned blocks as tuples of boxes."""
        groups: dict[int, list[Cell]] = {}
        for cell, v in zip(self.poly.boxes, self.key):
            if v > 0:
                groups.setdefault(v, []).append(cell)
        return [tuple(g) for _, g in sorted(groups.items())]

    def contains(self, other: "Face") -> bool:
        """Point-set containment: other is a subset of self."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        # every equality of self must hold identically on other
        classes: dict[int, set[int]] = {}
        for mine, theirs in zip(self.key, other.key):
            classes.setdefault(mine, set()).add(theirs)
        for mine, theirs in classes.items():
            if mine < 0:
                if theirs != {mine}:
                    return False
            elif len(theirs) != 1:
                return False
        return True

    def vertex(self) -> "Vertex":
        if self.dim != 0:
            raise ValueError(f"face of dimension {self.dim} is not a vertex")
        return Vertex(self.poly, tuple(-v for v in self.key))

    def edge_ids(self) -> list[str]:
        """Sorted identifiers of the effective edges whose facets contain
        this face."""
        return sorted(
            f"{k}({a},{b})"
            for (k, a, b) in self.poly.diagram.effective_edges
            if self.poly.facet_face((k, a, b)).contains(self)
        )

    def __repr__(self) -> str:
        if self.is_empty:
            return "Face(empty)"
        return f"Face(dim={self.dim}, key={self.key})"


@dataclass(frozen=True)
class Vertex:
    """0-dimensional face: every box carries a block-value index."""

    poly: "Polytope"
    values: tuple[int, ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, Vertex) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __lt__(self, other: "Vertex") -> bool:
        return self.values < other.values

    def value_of(self, cell: Cell) -> int:
        """Block-value index of any cell, box or forced."""
        poly = self.poly
        if cell in poly.box_index:
            return self.values[poly.box_index[cell]]
        return poly.diagram.forced_value(cell)

    def facet_set(self) -> frozenset[EdgeKey]:
        out = []
        for edge in self.poly.diagram.effective_edges:
            a, b = self.poly.diagram.edge_cells(edge)
            if self.value_of(a) == self.value_of(b):
                out.append(edge)
        return frozenset(out)

    def as_face(self) -> Face:
        return Face(self.poly, tuple(-v for v in self.values))

    def pattern(self, lam: tuple[int, ...]) -> Pattern:
        """Numeric Gelfand-Cetlin pattern at this vertex."""
        validate_lambda(self.poly.shape, lam)
        block_val = [lam[c - 1] for c in self.poly.shape.bounds[1:]]
        n = self.poly.n
        return tuple(
            tuple(block_val[self.value_of((j, i - j + 1)) - 1] for j in range(1, i + 1))
            for i in range(1, n + 1)
        )

    def __repr__(self) -> str:
        return f"Vertex({self.values})"


class Polytope:
    """Gelfand-Cetlin polytope of a ladder diagram with symbolic block
    values a_1 > ... > a_{k+1}."""

    def __init__(self, diagram: LadderDiagram):
        self.diagram = diagram
        self.shape = diagram.shape
        self.n = diagram.n
        self.boxes: tuple[Cell, ...] = diagram.boxes
        self.box_index = {cell: i for i, cell in enumerate(self.boxes)}
        self.num_values = self.shape.k + 1
        # order constraints (lo, hi) with cells resolved to box index or
        # pinned pseudo-nodes; pseudo-node for value l is len(boxes)+l-1.
        self._pairs: list[tuple[int, int]] = []
        for lo, hi in diagram.adjacent_pairs():
            self._pairs.append((self._node(lo), self._node(hi)))
        self._pairs = sorted(set(self._pairs))
        self._vertices: list[Vertex] | None = None
        self._facet_cache: dict[EdgeKey, Face] = {}

    def _node(self, cell: Cell) -> int:
        if cell in self.box_index:
            return self.box_index[cell]
        return len(self.boxes) + self.diagram.forced_value(cell) - 1

    @property
    def dim(self) -> int:
        return len(self.boxes)

    @property
    def facet_count(self) -> int:
        return len(self.diagram.effective_edges)

    # -- face construction ---------------------------------------------------

    def whole_face(self) -> Face:
        return self._saturate([], {})

    def empty_face(self) -> Face:
        return Face(self, None)

    def facet_face(self, edge: EdgeKey) -> Face:
        if edge not in self._facet_cache:
            if not self.diagram.is_effective(edge):
                raise ValueError(f"edge {edge} is not effective")
            self._facet_cache[edge] = self.face_from_atoms([self.diagram.edge_cells(edge)])
        return self._facet_cache[edge]

    def face_from_atoms(self, atoms) -> Face:
        """Build the face from (cellA, cellB) equality atoms; forced cells
        turn into constant pins."""
        merges: list[tuple[int, int]] = []
        pins: dict[int, int] = {}
        for a, b in atoms:
            nodes = []
            values = []
            for cell in (a, b):
                if cell in self.box_index:
                    nodes.append(self.box_index[cell])
                else:
                    values.append(self.diagram.forced_value(cell))
            if len(values) == 2:
                if values[0] != values[1]:
                    return self.empty_face()
                continue
            if len(values) == 1:
                prev = pins.get(nodes[0])
                if prev is not None and prev != values[0]:
                    return self.empty_face()
                pins[nodes[0]] = values[0]
            else:
                merges.append((nodes[0], nodes[1]))
        return self._saturate(merges, pins)

    def face_from_pins(self, pin_cells: dict[Cell, int]) -> Face:
        return self._saturate([], {self.box_index[c]: v for c, v in pin_cells.items()})

    # -- saturation ------------------------------------------------------------

    def _saturate(self, merges, pins) -> Face:
        """Close an equality system: merge strongly connected blocks, pin
        squeezed blocks, detect infeasibility.  Returns the canonical face."""
        nb = len(self.boxes)
        size = nb + self.num_values
        uf = _UnionFind(size)
        for a, b in merges:
            uf.union(a, b)
        pin: dict[int, int] = dict(pins)

        while True:
            # re-key pins on current roots; constant pseudo-nodes carry pins
            root_pin: dict[int, int] = {}
            for l in range(1, self.num_values + 1):
                root = uf.find(nb + l - 1)
                if root_pin.setdefault(root, l) != l:
                    return self.empty_face()
            for node, val in pin.items():
                root = uf.find(node)
                if root_pin.setdefault(root, val) != val:
                    return self.empty_face()
            pin = root_pin

            edges = {
                (uf.find(lo), uf.find(hi))
                for lo, hi in self._pairs
                if uf.find(lo) != uf.find(hi)
            }
            roots = sorted({uf.find(i) for i in range(size)})
            index = {r: i for i, r in enumerate(roots)}
            m = len(roots)
            succ = [0] * m
            for lo, hi in edges:
                succ[index[lo]] |= 1 << index[hi]
            changed = True
            while changed:  # transitive closure; the graphs are tiny
                changed = False
                for i in range(m):
                    acc = succ[i]
                    mask = acc
                    while mask:
                        j = (mask & -mask).bit_length() - 1
                        acc |= succ[j]
                        mask &= mask - 1
                    if acc != succ[i]:
                        succ[i] = acc
                        changed = True
            merged_any = False
            for i in range(m):
                mask = succ[i]
                while mask:
                    j = (mask & -mask).bit_length() - 1
                    mask &= mask - 1
                    if i != j and (succ[j] >> i) & 1:
                        merged_any |= uf.find(roots[i]) != uf.find(roots[j])
                        uf.union(roots[i], roots[j])
            if merged_any:
                continue

            # bound propagation on the DAG; value a_l gets proxy -l so that
            # a_1 > ... > a_{k+1} matches ordinary integer order.
            lo_bound = [-self.num_values] * m
            hi_bound = [-1] * m
            for r, val in pin.items():
                i = index[r]
                lo_bound[i] = hi_bound[i] = -val
            moved = True
            while moved:
                moved = False
                for a, b in edges:
                    ia, ib = index[a], index[b]
                    if lo_bound[ib] < lo_bound[ia]:
                        lo_bound[ib] = lo_bound[ia]
                        moved = True
                    if hi_bound[ia] > hi_bound[ib]:
                        hi_bound[ia] = hi_bound[ib]
                        moved = True
            squeezed = False
            for i, r in enumerate(roots):
                if lo_bound[i] > hi_bound[i]:
                    return self.empty_face()
                if lo_bound[i] == hi_bound[i] and r not in pin:
                    pin[r] = -lo_bound[i]
                    squeezed = True
            if not squeezed:
                break

        key: list[int] = []
        block_no: dict[int, int] = {}
        for i in range(nb):
            root = uf.find(i)
            if root in pin:
                key.append(-pin[root])
            else:
                key.append(block_no.setdefault(root, len(block_no) + 1))
        return Face(self, tuple(key))

    # -- face operations --------------------------------------------------------

    def intersect(self, f: Face, g: Face) -> Face:
        if f.is_empty or g.is_empty:
            return self.empty_face()
        merges = []
        pins: dict[int, int] = {}
        for key in (f.key, g.key):
            groups: dict[int, list[int]] = {}
            for idx, v in enumerate(key):
                if v < 0:
                    prev = pins.get(idx)
                    if prev is not None and prev != -v:
                        return self.empty_face()
                    pins[idx] = -v
                else:
                    groups.setdefault(v, []).append(idx)
            for members in groups.values():
                merges.extend(zip(members, members[1:]))
        return self._saturate(merges, pins)

    # -- vertices -----------------------------------------------------------------

    def vertices(self) -> list[Vertex]:
        """All 0-dimensional faces, enumerated once and cached."""
        if self._vertices is not None:
            return self._vertices
        # sweep columns right to left, each top to bottom, so that the two
        # constraining neighbors (above and to the right) are always known
        order = sorted(self.boxes, key=lambda cr: (-cr[0], -cr[1]))
        values: dict[Cell, int] = {}
        found: list[tuple[int, ...]] = []

        def known(cell: Cell) -> int:
            if cell in values:
                return values[cell]
            return self.diagram.forced_value(cell)

        def rec(pos: int):
            if pos == len(order):
                found.append(tuple(values[c] for c in self.boxes))
                return
            c, r = order[pos]
            # value index grows as the actual value shrinks: the cell above
            # bounds l from below, the cell to the right from above
            for l in range(known((c, r + 1)), known((c + 1, r)) + 1):
                values[(c, r)] = l
                rec(pos + 1)
            del values[(c, r)]

        rec(0)
        verts = [Vertex(self, vals) for vals in found if self._is_extreme(vals)]
        self._vertices = sorted(verts)
        return self._vertices

    def _is_extreme(self, values: tuple[int, ...]) -> bool:
        """Every equal-value component of boxes must touch a forced cell;
        otherwise the component can drift and the point is not a vertex."""

        def val(cell: Cell) -> int:
            idx = self.box_index.get(cell)
            return values[idx] if idx is not None else self.diagram.forced_value(cell)

        uf = _UnionFind(len(self.boxes))
        anchored = [False] * len(self.boxes)
        for lo, hi in self.diagram.adjacent_pairs():
            if val(lo) != val(hi):
                continue
            lo_idx, hi_idx = self.box_index.get(lo), self.box_index.get(hi)
            if lo_idx is not None and hi_idx is not None:
                uf.union(lo_idx, hi_idx)
            elif lo_idx is not None:
                anchored[lo_idx] = True
            elif hi_idx is not None:
                anchored[hi_idx] = True
        roots_ok = {uf.find(i) for i, a in enumerate(anchored) if a}
        return all(uf.find(i) in roots_ok for i in range(len(self.boxes)))

    def vertices_of_face(self, face: Face) -> list[Vertex]:
        if face.is_empty:
            return []
        return [v for v in self.vertices() if face.contains(v.as_face())]

    def face_dimension_by_rank(self, face: Face) -> int:
        """Affine rank of the face's vertex set; the exact reference for the
        saturation fast path."""
        verts = self.vertices_of_face(face)
        if not verts:
            return -1
        base = verts[0].values
        rows = [
            [Fraction(v - b) for v, b in zip(vert.values, base)]
            for vert in verts[1:]
        ]
        return _rank(rows)

    # -- regularity and membership in the flag variety -----------------------------

    def is_regular(self, v: Vertex) -> bool:
        if not self.shape.is_complete():
            raise UnsupportedShapeError("regular vertices are defined for complete flags")
        return len(v.facet_set()) == self.n * (self.n - 1) // 2

    def in_VX(self, v: Vertex) -> bool:
        """Whether the coordinate point of the vertex lies on the flag
        variety: always for Grassmannians; the no-constant-2x2-square
        criterion for complete flags."""
        if self.shape.is_grassmannian():
            return True
        if not self.shape.is_complete():
            raise UnsupportedShapeError(
                f"membership in the flag variety is not characterized for shape {self.shape}"
            )
        n = self.n
        for i in range(1, n - 1):
            for j in range(1, i + 1):
                cells = [(j, i - j + 1), (j, i - j + 2), (j + 1, i - j + 1), (j + 1, i - j + 2)]
                vals = {v.value_of(c) for c in cells}
                if len(vals) == 1:
                    return False
        return True

    def coordinate_point(self, v: Vertex) -> dict[int, tuple[int, ...]]:
        """Per level, the unique nonvanishing coordinate index: the path
        separating values > a_{i+1} from values <= a_{i+1}."""
        out = {}
        for i, level in enumerate(self.shape.cuts, start=1):
            steps = []
            for c in range(1, level + 1):
                low = sum(
                    1
                    for r in range(1, self.n + 2 - c)
                    if v.value_of((c, r)) >= i + 1
                )
                steps.append(c + low)
            out[level] = tuple(steps)
        return out

    # -- named faces (Grassmannian) ----------------------------------------------

    def _require_grassmannian(self):
        if not self.shape.is_grassmannian():
            raise UnsupportedShapeError(f"operation needs a Grassmannian shape, got {self.shape}")

    def named_face_F(self, mu: tuple[int, ...]) -> Face:
        """All boxes below the path of mu pinned to the bottom value b."""
        self._require_grassmannian()
        m = self.shape.cuts[0]
        p = path_of_partition(tuple(mu), m, self.n)
        pins = {}
        for c in range(1, m + 1):
            for r in range(1, p.steps[c - 1] - c + 1):
                pins[(c, r)] = 2
        return self.face_from_pins(pins)

    def named_face_Fvee(self, mu: tuple[int, ...]) -> Face:
        """All boxes above the path of mu pinned to the top value a."""
        self._require_grassmannian()
        m = self.shape.cuts[0]
        p = path_of_partition(tuple(mu), m, self.n)
        pins = {}
        for c in range(1, m + 1):
            for r in range(p.steps[c - 1] - c + 1, self.n - m + 1):
                pins[(c, r)] = 1
        return self.face_from_pins(pins)

    def delta_k_face(self, k: int) -> Face:
        """For Gr(2, n): the codimension-two face pinning level k to level
        k+1 in both columns, with the boundary conventions reading a and b."""
        self._require_grassmannian()
        if self.shape.cuts[0] != 2:
            raise UnsupportedShapeError("delta_k is defined for Gr(2, n)")
        n = self.n
        if not 1 <= k <= n - 2:
            raise ValueError(f"k must be within 1..{n - 2}: {k}")
        atoms = [((1, k), (1, k + 1)), ((2, k - 1), (2, k)) if k > 1 else None]
        atoms = [a for a in atoms if a is not None]
        face = self.face_from_atoms(atoms)
        if k == 1:
            face = self.intersect(face, self.face_from_pins({(2, 1): 2}))
        return face

    # -- lattice points --------------------------------------------------------------

    def lattice_points(self, lam: tuple[int, ...]) -> list[Pattern]:
        """All integral Gelfand-Cetlin patterns with top row lam."""
        validate_lambda(self.shape, lam)
        n = self.n
        rows: list[tuple[int, ...]] = [tuple(lam)]
        out: list[Pattern] = []

        def rec(i: int):
            # build row i-1 below row i
            if i == 1:
                out.append(tuple(reversed(rows)))
                return
            above = rows[-1]
            ranges = [range(above[j], above[j - 1] + 1) for j in range(1, i)]
            for combo in itertools.product(*ranges):
                rows.append(tuple(combo))
                rec(i - 1)
                rows.pop()

        rec(n)
        return out


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col] / pr[col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank


# -- module-level operations matching the public surface -------------------------


def polytope(diagram: LadderDiagram, lam: tuple[int, ...] | None = None) -> Polytope:
    """Construct the polytope; a numeric lam, when given, is only validated."""
    poly = Polytope(diagram)
    if lam is not None:
        validate_lambda(diagram.shape, lam)
    return poly


def intersect_faces(f: Face, g: Face) -> Face:
    if f.poly is not g.poly:
        raise ValueError("faces belong to different polytopes")
    return f.poly.intersect(f, g)


def face_dimension(f: Face) -> int:
    return f.dim


@dataclass(frozen=True)
class FaceUnion:
    """Antichain of maximal faces; the value of all set-theoretic
    intersections of facet unions."""

    poly: Polytope
    faces: tuple[Face, ...]

    @staticmethod
    def whole(poly: Polytope) -> "FaceUnion":
        return FaceUnion(poly, (poly.whole_face(),))

    @staticmethod
    def empty(poly: Polytope) -> "FaceUnion":
        return FaceUnion(poly, ())

    @staticmethod
    def of(poly: Polytope, faces) -> "FaceUnion":
        return FaceUnion(poly, _antichain(faces))

    @property
    def is_empty(self) -> bool:
        return not self.faces

    def max_dim(self) -> int:
        return max((f.dim for f in self.faces), default=-1)

    def intersect_with_facets(self, facets: list[Face]) -> "FaceUnion":
        new = []
        for f in self.faces:
            for g in facets:
                h = self.poly.intersect(f, g)
                if not h.is_empty:
                    new.append(h)
        return FaceUnion(self.poly, _antichain(new))

    def intersect(self, other: "FaceUnion") -> "FaceUnion":
        new = []
        for f in self.faces:
            for g in other.faces:
                h = self.poly.intersect(f, g)
                if not h.is_empty:
                    new.append(h)
        return FaceUnion(self.poly, _antichain(new))

    def vertices(self) -> list[Vertex]:
        """The point set when every maximal face is 0-dimensional."""
        if any(f.dim != 0 for f in self.faces):
            raise ValueError("face union is not a finite set of vertices")
        return sorted({f.vertex() for f in self.faces})

    def contains_face(self, g: Face) -> bool:
        return any(f.contains(g) for f in self.faces)

    def equals_pointwise(self, other: "FaceUnion") -> bool:
        return self.faces == other.faces

    def to_json(self) -> list[list[str]]:
        return [f.edge_ids() for f in self.faces]


def _antichain(faces) -> tuple[Face, ...]:
    """Drop contained faces; distinct saturated keys never coincide as point
    sets, so strict containment is exactly `contains` between unequal keys."""
    uniq = sorted({f for f in faces if not f.is_empty})
    return tuple(
        f for f in uniq if not any(g != f and g.contains(f) for g in uniq)
    )
