"""Fixture chain curves.

Every surface ships a (2g+1)-chain c1..c(2g+1): consecutive curves meet
exactly once, all other pairs are disjoint, and the union fills the surface.
The even-position curves and the two end curves are regular-neighborhood
push-offs of single polygon-side vertex loops; the bridge curves between
consecutive handles are found by a deterministic search (least total weight,
then lexicographic) over normal vectors supported near the two handles.  The
full chain intersection matrix is verified before the result is cached, so
the fixtures are stable across versions by construction.
"""

from __future__ import annotations

import itertools

from . import engine
from .errors import LamcoreError


def _fan_arc(surface, a, b):
    """Sides crossed by a ccw vertex-link arc from fan position a to b."""
    F = len(surface.fan_sides)
    return [surface.fan_sides[(a + i) % F] for i in range(((b - a) % F) + 1)]


def _is_simple(surface, coords):
    from .surface import NormalMulticurve, trace_components

    try:
        comps = trace_components(NormalMulticurve(surface, coords))
    except LamcoreError:
        return False
    return len(comps) == 1 and comps[0][1] == 1 and comps[0][0].coords == coords


def _edge_pushoff(surface, edge):
    """Taut coordinates of the curve parallel to the vertex loop of an edge."""
    pos = surface.fan_pos_of_side
    F = len(surface.fan_sides)
    steps = _fan_arc(surface, (pos[2 * edge] + 1) % F, (pos[2 * edge + 1] - 1) % F)
    red = engine.reduce_itinerary(surface, steps)
    if not red:
        raise LamcoreError(f"push-off of edge {edge} is trivial")
    coords = engine.coords_of_steps(surface, red)
    if not _is_simple(surface, coords):
        raise LamcoreError(f"push-off of edge {edge} is not simple")
    return coords


def _window_vectors(surface, window, max_entry=3):
    """Valid normal vectors supported on a small set of edges, by total size."""
    n = surface.n_edges
    out = []
    for combo in itertools.product(range(max_entry + 1), repeat=len(window)):
        if not any(combo):
            continue
        v = [0] * n
        for e, w in zip(window, combo):
            v[e] = w
        v = tuple(v)
        try:
            surface.check_coords(v)
        except LamcoreError:
            continue
        out.append(v)
    out.sort(key=lambda v: (sum(v), v))
    return out


def _bridge(surface, k, fixed, neighbors, earlier):
    """Least bridge curve around handles k and k+1.

    Meets each of the two ``neighbors`` once and is disjoint from every
    other fixed curve and from earlier bridges.
    """
    from .lamination import primitive_intersection

    g = surface.genus
    window = [2 * k, 2 * k + 1, 2 * k + 2, 2 * k + 3]
    window += [e for e in range(2 * g + 4 * k, min(2 * g + 4 * k + 6, 6 * g - 3))]
    for cand in _window_vectors(surface, window):
        if not _is_simple(surface, cand):
            continue
        ok = True
        for other in fixed + earlier:
            want = 1 if other in neighbors else 0
            if primitive_intersection(surface, cand, other) != want:
                ok = False
                break
        if ok:
            return cand
    raise LamcoreError(f"no bridge curve between handles {k} and {k+1}")


def chain_coords(surface):
    """Coordinates of the fixture chain c1..c(2g+1), verified."""
    from .lamination import primitive_intersection

    g = surface.genus
    A = [2 * j for j in range(g)]
    B = [2 * j + 1 for j in range(g)]
    po_a = {j: _edge_pushoff(surface, A[j]) for j in (0, g - 1)}
    po_b = {j: _edge_pushoff(surface, B[j]) for j in range(g)}
    fixed = [po_a[g - 1], po_b[g - 1]] + [po_b[j] for j in range(g - 2, -1, -1)] + [po_a[0]]
    bridges = {}
    earlier = []
    for k in range(g - 2, -1, -1):
        br = _bridge(surface, k, fixed, (po_b[k + 1], po_b[k]), earlier)
        bridges[k] = br
        earlier.append(br)
    chain = [po_a[g - 1], po_b[g - 1]]
    for k in range(g - 2, -1, -1):
        chain.append(bridges[k])
        chain.append(po_b[k])
    chain.append(po_a[0])
    if len(chain) != 2 * g + 1:
        raise LamcoreError("chain has wrong length")
    chain = [engine.canonical_coords(surface, c) for c in chain]
    for i in range(len(chain)):
        for j in range(i, len(chain)):
            want = 1 if j == i + 1 else 0
            got = primitive_intersection(surface, chain[i], chain[j])
            if got != want:
                raise LamcoreError(f"chain verification failed at ({i}, {j}): {got}")
    return [tuple(c) for c in chain]
