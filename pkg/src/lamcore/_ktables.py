"""Flat lookup tables for the tracing/reduction kernels.

The kernels (pure-Python and compiled) work on plain integer tuples so the
same data can back both implementations.  Conventions:

* a *side* is ``2e`` (triangle running along edge ``e`` forward) or ``2e+1``
  (backward);
* an itinerary *step* is stored as the side through which the strand exits
  its triangle, so step ``s`` crosses edge ``s >> 1`` with sign ``+1`` when
  ``s`` is even (passing from the left triangle to the right one);
* after step ``s`` the strand is inside ``tri_of[s ^ 1]``.
"""

from collections import namedtuple

SurfTables = namedtuple(
    "SurfTables",
    [
        "genus",
        "n_edges",
        "n_tris",
        "tri_sides",  # flat tuple, 3 per triangle
        "tri_of",  # side -> triangle
        "pos_of",  # side -> position in triangle (0, 1, 2)
        "fan_sides",  # fan position -> side crossed (ccw around the vertex)
        "fan_pos",  # side -> fan position
    ],
)

_CACHE = {}


def tables(surface):
    key = (surface.genus, surface.tri_sides)
    t = _CACHE.get(key)
    if t is None:
        flat = tuple(h for tri in surface.tri_sides for h in tri)
        tri_of = tuple(surface.side_tri[h][0] for h in range(2 * surface.n_edges))
        pos_of = tuple(surface.side_tri[h][1] for h in range(2 * surface.n_edges))
        t = SurfTables(
            surface.genus,
            surface.n_edges,
            surface.n_tris,
            flat,
            tri_of,
            pos_of,
            surface.fan_sides,
            surface.fan_pos_of_side,
        )
        _CACHE[key] = t
    return t
