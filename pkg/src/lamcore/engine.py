"""Mid-level driver for tracing, tightening, overlays and cutting."""

from __future__ import annotations

from functools import lru_cache

from . import kernel
from ._ktables import tables
from .overlay import Comp, Overlay, _Order
from .surface import CutPiece


def trace(surface, coords):
    """Directed component itineraries of a normal coordinate vector."""
    return kernel.trace(tables(surface), tuple(coords))


def reduce_itinerary(surface, steps):
    """Taut representative of the free homotopy class ([] if trivial)."""
    return kernel.reduce_steps(tables(surface), list(steps))


def coords_of_steps(surface, steps):
    return kernel.coords_of_steps(tables(surface), steps)


_CANON_CACHE = {}


def canonical_coords(surface, coords):
    """Canonical coordinates of the isotopy class of a connected curve.

    Taut positions of a class are not unique on a one-vertex triangulation,
    so the class representative is pinned through its conjugacy key: the
    canonical cyclic word is rebuilt into a position and tightened, making
    the result a function of the class alone.
    """
    coords = tuple(coords)
    hit = _CANON_CACHE.get((surface, coords))
    if hit is not None:
        return hit
    from . import pi1

    comps = trace(surface, coords)
    if len(comps) != 1:
        raise ValueError("canonical_coords expects a connected curve")
    if sum(coords) > _CANON_SIZE_LIMIT:
        # class-canonical rebuilding is quadratic in the word length; very
        # large curves are only ever consumed through intersection numbers,
        # so a deterministic tight position is enough
        out = coords_of_steps(surface, reduce_itinerary(surface, comps[0][1]))
    else:
        rebuilt = pi1.canonical_class_steps(surface, comps[0][1])
        steps = reduce_itinerary(surface, rebuilt) if rebuilt else []
        out = coords_of_steps(surface, steps) if steps else (0,) * surface.n_edges
    _CANON_CACHE[(surface, coords)] = out
    return out


_CANON_SIZE_LIMIT = 1500


def taut_steps(surface, coords):
    """Taut itinerary of a connected essential curve in normal coordinates."""
    comps = trace(surface, coords)
    if len(comps) != 1:
        raise ValueError("expected a connected curve")
    steps = reduce_itinerary(surface, comps[0][1])
    if not steps:
        raise ValueError("curve is null-homotopic")
    return steps


def overlay_of(surface, *diagrams, minimal=True, protect=None):
    """Overlay of diagrams, each a list of taut component itineraries."""
    ov = Overlay(surface, list(diagrams))
    if minimal:
        ov.ensure_minimal(protect=protect)
    return ov


class PieceCarrier:
    """Handle tying a CutPiece to its region in the cut arrangement."""

    __slots__ = ("surface", "system_steps", "arrangement", "region")

    def __init__(self, surface, system_steps, arrangement, region):
        self.surface = surface
        self.system_steps = system_steps
        self.arrangement = arrangement
        self.region = region

    def contains_curve(self, steps):
        """Which piece-region a curve disjoint from the system lies in."""
        return locate_steps_region(self.surface, self.arrangement, steps) == self.region


def locate_steps_region(surface, arrangement, steps):
    """Region of the cut arrangement containing a disjoint curve.

    The curve must have zero geometric intersection with the system the
    arrangement was built from; every edge passage then lands in the same
    region, which is returned.
    """
    ov = arrangement.ov
    order = _Order(ov.tab)
    probe = Comp(len(ov.comps) + 7, 0, list(steps))
    regions = set()
    for k, passage in enumerate(probe.passages):
        lst = ov.edge_lists[passage.edge]
        pos = 0
        for q in lst:
            if order.compare(passage, q) > 0:
                pos += 1
        regions.add(arrangement.region_of_segment(passage.edge, pos))
    if len(regions) != 1:
        raise AssertionError("curve is not disjoint from the system")
    return regions.pop()


def cut_pieces(surface, system_coords):
    """Cut the surface along disjoint connected curves; see surface.cut_along."""
    steps = [taut_steps(surface, c) for c in system_coords]
    ov = overlay_of(surface, steps) if steps else overlay_of(surface, [])
    arr = ov.arrangement()
    pieces = []
    for region in arr.regions:
        if arr._find(region) != region:
            continue
        walks = arr.walks_of_region(region)
        boundary = []
        for walk in walks:
            sides = arr.walk_comp_sides(walk)
            assert len(sides) == 1, "cut system must be embedded and disjoint"
            (key, side) = sides.pop()
            boundary.append((key[1], side))
        b = len(boundary)
        chi = arr.chi(region)
        genus2 = 2 - chi - b
        assert genus2 % 2 == 0 and genus2 >= 0, "bad piece characteristic"
        pieces.append(
            CutPiece(
                genus=genus2 // 2,
                boundary_count=b,
                boundary_map=tuple(sorted(boundary)),
                carrier=PieceCarrier(surface, steps, arr, region),
            )
        )
    assert sum(p.euler for p in pieces) == 2 - 2 * surface.genus
    return sorted(pieces, key=lambda p: (p.genus, p.boundary_map))
