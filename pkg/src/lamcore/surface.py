"""Closed oriented surfaces as one-vertex triangulations, and multicurves in
normal coordinates.

The canonical chart for genus ``g`` is the fan triangulation of the standard
``4g``-gon with boundary word ``a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1``:
all polygon corners glue to a single vertex, the ``2g`` identified polygon
sides and the ``4g-3`` fan diagonals give ``6g-3`` edges, and the fan gives
``4g-2`` triangles.  This chart is fixed once per genus; normal coordinates
are stable across versions.

Edge-side encoding: edge ``e`` has side ``2e`` (the triangle whose ccw
boundary runs along ``e`` forward, i.e. the left side) and side ``2e+1``
(backward, right side).  Every side occurs in exactly one triangle and the
gluing pairs ``2e`` with ``2e+1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InvalidGenus,
    NotDisjoint,
    TrivialComponent,
    ViolatedParity,
    ViolatedTriangleInequality,
    WrongLength,
)


def _fan_triangulation(genus):
    """Side triples (ccw) of the fan triangulation of the 4g-gon.

    Edges 0..2g-1 are the polygon side classes A_0, B_0, A_1, B_1, ...
    (A_j = 2j, B_j = 2j+1); edges 2g..6g-4 are the fan diagonals d_2..d_{4g-2}
    (d_k = 2g + k - 2).
    """
    g = genus

    def poly_side(k):
        # polygon side s_k as (edge, forward?)
        j, r = divmod(k, 4)
        edge = 2 * j + (r % 2)
        return edge, r < 2

    def code(edge, forward):
        return 2 * edge if forward else 2 * edge + 1

    def diag(k):
        return 2 * g + k - 2

    tris = []
    # t_1 = (s_0, s_1, d_2 backward)
    tris.append((code(*poly_side(0)), code(*poly_side(1)), code(diag(2), False)))
    for k in range(2, 4 * g - 2):
        tris.append((code(diag(k), True), code(*poly_side(k)), code(diag(k + 1), False)))
    # t_{4g-2} = (d_{4g-2}, s_{4g-2}, s_{4g-1})
    tris.append(
        (code(diag(4 * g - 2), True), code(*poly_side(4 * g - 2)), code(*poly_side(4 * g - 1)))
    )
    return tris


class TriangulatedSurface:
    """A one-vertex triangulation of the closed oriented genus-g surface.

    Immutable after construction.  The constructor checks the cell-structure
    invariants: Euler characteristic, fixed-point-free side gluing,
    connectivity and orientability (each edge is traversed once forward and
    once backward by the ccw triangle boundaries).
    """

    __slots__ = (
        "genus",
        "n_edges",
        "n_tris",
        "tri_sides",
        "side_tri",
        "fan_corners",
        "fan_pos_of_side",
        "fan_sides",
        "_chain",
        "_h1",
    )

    def __init__(self, genus, tri_sides=None):
        if not isinstance(genus, int) or genus < 2:
            raise InvalidGenus(f"genus must be an integer >= 2, got {genus!r}")
        self.genus = genus
        self.n_edges = 6 * genus - 3
        self.n_tris = 4 * genus - 2
        if tri_sides is None:
            tri_sides = _fan_triangulation(genus)
        self.tri_sides = tuple(tuple(t) for t in tri_sides)
        self._chain = None
        self._h1 = None
        self._check()

    def _check(self):
        n_sides = 2 * self.n_edges
        if len(self.tri_sides) != self.n_tris:
            raise InvalidGenus("wrong number of triangles")
        side_tri = [None] * n_sides
        for t, sides in enumerate(self.tri_sides):
            for i, h in enumerate(sides):
                if not 0 <= h < n_sides:
                    raise InvalidGenus(f"side {h} out of range")
                if side_tri[h] is not None:
                    raise InvalidGenus(f"side {h} occurs twice")
                side_tri[h] = (t, i)
        if any(v is None for v in side_tri):
            raise InvalidGenus("some edge side is unused")
        self.side_tri = tuple(side_tri)
        # orientability is built in: side 2e is the forward occurrence and
        # 2e+1 the backward one, and both exist by the checks above.
        # Euler characteristic of the glued complex (one vertex).
        if 1 - self.n_edges + self.n_tris != 2 - 2 * self.genus:
            raise InvalidGenus("Euler characteristic mismatch")
        self._build_fan()
        # single vertex and connectivity both follow from the fan being one
        # cycle through all corners.
        if len(self.fan_corners) != 3 * self.n_tris:
            raise InvalidGenus("glued complex does not have a single vertex")

    def _build_fan(self):
        """Cyclic (ccw) order of the triangle corners around the vertex.

        Corner ``(t, i)`` sits between side ``tri_sides[t][i]`` (which ends at
        the vertex there) and side ``tri_sides[t][i+1]`` (which starts there).
        Rotating ccw out of corner ``(t, i)`` crosses side ``tri_sides[t][i]``.
        """
        start = (0, 0)
        corners = []
        pos_of_side = [-1] * (2 * self.n_edges)
        cur = start
        while True:
            t, i = cur
            s = self.tri_sides[t][i]
            pos_of_side[s] = len(corners)
            corners.append(cur)
            t2, i2 = self.side_tri[s ^ 1]
            cur = (t2, (i2 - 1) % 3)
            if cur == start:
                break
        self.fan_corners = tuple(corners)
        self.fan_pos_of_side = tuple(pos_of_side)
        self.fan_sides = tuple(self.tri_sides[t][i] for (t, i) in corners)

    # -- normal coordinates ------------------------------------------------

    def corner_counts(self, tri, coords):
        """Arc counts (n0, n1, n2) at the three corners of a triangle.

        ``n_i`` arcs join side i and side i+1; non-negativity is the triangle
        inequality and integrality is the parity condition.
        """
        w = [coords[h >> 1] for h in self.tri_sides[tri]]
        doubled = (
            w[0] + w[1] - w[2],
            w[1] + w[2] - w[0],
            w[2] + w[0] - w[1],
        )
        if (w[0] + w[1] + w[2]) % 2:
            raise ViolatedParity(tri)
        for d in doubled:
            if d < 0:
                raise ViolatedTriangleInequality(tri)
        return doubled[0] // 2, doubled[1] // 2, doubled[2] // 2

    def check_coords(self, coords):
        if len(coords) != self.n_edges:
            raise WrongLength(f"expected {self.n_edges} coordinates, got {len(coords)}")
        for c in coords:
            if not isinstance(c, int) or c < 0:
                raise WrongLength(f"coordinates must be non-negative integers, got {c!r}")
        for t in range(self.n_tris):
            self.corner_counts(t, coords)

    # -- fixtures ----------------------------------------------------------

    def chain_curves(self):
        """The fixture (2g+1)-chain c1..c(2g+1), as NormalMulticurve values.

        Consecutive chain curves meet once, all other pairs are disjoint.
        Computed once per surface and cached.
        """
        if self._chain is None:
            from . import fixtures

            self._chain = tuple(
                NormalMulticurve(self, coords) for coords in fixtures.chain_coords(self)
            )
        return self._chain

    def chain_curve(self, name):
        """Look up a chain curve by its fixture label ``c1`` .. ``c(2g+1)``."""
        if not (name.startswith("c") and name[1:].isdigit()):
            raise KeyError(name)
        k = int(name[1:])
        chain = self.chain_curves()
        if not 1 <= k <= len(chain):
            raise KeyError(name)
        return chain[k - 1]

    @property
    def labels(self):
        return {f"c{i+1}": c for i, c in enumerate(self.chain_curves())}

    def homology(self):
        from . import homology

        if self._h1 is None:
            self._h1 = homology.H1Data(self)
        return self._h1

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, TriangulatedSurface)
            and self.genus == other.genus
            and self.tri_sides == other.tri_sides
        )

    def __hash__(self):
        return hash((self.genus, self.tri_sides))

    def __repr__(self):
        return f"TriangulatedSurface(genus={self.genus})"

    def to_json(self):
        return {
            "genus": self.genus,
            "edges": self.n_edges,
            "triangles": [list(t) for t in self.tri_sides],
            "gluing": [[2 * e, 2 * e + 1] for e in range(self.n_edges)],
        }

    @classmethod
    def from_json(cls, doc):
        genus = doc["genus"]
        surf = cls(genus, tri_sides=doc.get("triangles") or None)
        return surf


_SURFACES = {}


def new_surface(genus: int) -> TriangulatedSurface:
    """Canonical one-vertex triangulation for a given genus (deterministic).

    Instances are cached per genus so fixture data is computed once.
    """
    if genus not in _SURFACES:
        _SURFACES[genus] = TriangulatedSurface(genus)
    return _SURFACES[genus]


class NormalMulticurve:
    """An (unweighted) multicurve in normal coordinates.

    ``coords[e]`` counts intersections with edge ``e``; the all-zero vector is
    the empty multicurve.  Instances are immutable and hashable.
    """

    __slots__ = ("surface", "coords")

    def __init__(self, surface, coords):
        surface.check_coords(tuple(coords))
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, *a):
        raise AttributeError("NormalMulticurve is immutable")

    def is_empty(self):
        return not any(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, NormalMulticurve)
            and self.surface == other.surface
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"NormalMulticurve{self.coords}"

    def to_json(self):
        return {"coords": list(self.coords)}


def validate_normal(surface: TriangulatedSurface, coords) -> NormalMulticurve:
    """Check triangle inequalities and parity; return the multicurve."""
    return NormalMulticurve(surface, coords)


@dataclass(frozen=True)
class CutPiece:
    """A connected component of the surface cut along a curve system.

    ``boundary_map`` lists ``(curve_index, side)`` provenance for each
    boundary circle, where ``side`` is 0 for the left side of the curve (with
    respect to its traced direction) and 1 for the right.  ``carrier`` is a
    region handle into the cut arrangement, used to locate components.
    """

    genus: int
    boundary_count: int
    boundary_map: tuple
    carrier: object = field(compare=False, default=None)

    @property
    def euler(self):
        return 2 - 2 * self.genus - self.boundary_count

    def is_disk(self):
        return self.euler == 1

    def is_annulus(self):
        return self.genus == 0 and self.boundary_count == 2

    def is_essential(self):
        return self.euler < 0

    def to_json(self):
        return {
            "genus": self.genus,
            "boundaries": self.boundary_count,
            "boundary_map": [list(b) for b in self.boundary_map],
        }


def trace_components(m: NormalMulticurve):
    """Connected components of a normal multicurve, with multiplicities.

    Components are returned in their traced position, so multiplicity-scaled
    coordinates sum back to ``m.coords`` exactly.  A component that is
    null-homotopic (it bounds a disk; the vertex-linking curve is the normal
    example) raises :class:`TrivialComponent`.
    """
    from . import engine, pi1

    if m.is_empty():
        return []
    groups = {}
    order = []
    for coords, itin in engine.trace(m.surface, m.coords):
        if not pi1.class_key_of_steps(m.surface, itin):
            raise TrivialComponent(f"component {coords} bounds a disk")
        if coords not in groups:
            groups[coords] = 0
            order.append(coords)
        groups[coords] += 1
    return [(NormalMulticurve(m.surface, coords), groups[coords]) for coords in order]


def cut_along(surface: TriangulatedSurface, system) -> list:
    """Cut the surface along a system of disjoint essential simple curves.

    The system is a list of NormalMulticurve values that must be pairwise
    disjoint, pairwise non-isotopic, connected and essential.  Returns the
    CutPiece list; Euler characteristics sum to ``2 - 2g``.
    """
    from . import engine, lamination

    for c in system:
        if c.surface != surface:
            raise NotDisjoint("curves on different surfaces")
    canon = []
    for c in system:
        comps = trace_components(c)
        if len(comps) != 1 or comps[0][1] != 1:
            raise NotDisjoint("system members must be connected simple curves")
        canon.append(engine.canonical_coords(surface, c.coords))
    if len(set(canon)) != len(canon):
        raise NotDisjoint("system members must be pairwise non-isotopic")
    for i in range(len(system)):
        for j in range(i + 1, len(system)):
            if lamination.primitive_intersection(surface, system[i].coords, system[j].coords):
                raise NotDisjoint("system members intersect")
    return engine.cut_pieces(surface, [c.coords for c in system])
