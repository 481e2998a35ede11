"""Pure-Python tracing and tightening kernel.

This module and the compiled extension ``lamcore._kernel`` implement the same
contract; :mod:`lamcore.kernel` selects one at import time.  Everything here
is exact integer combinatorics on one-vertex triangulations.

A multicurve itinerary is a cyclic list of steps (exit sides, see
``_ktables``).  ``reduce_steps`` computes the taut representative of the free
homotopy class by iterating two moves:

* backtrack cancellation: a strand that leaves a triangle through the side it
  entered bounds a disk with the edge and is pulled across it;
* vertex moves: a subpath crossing more than half of the edge-end fan around
  the vertex consecutively is pushed across the vertex to the complementary,
  shorter fan arc.

A curve whose strands all turn the same way winds around the vertex and is
null-homotopic; it reduces to the empty itinerary.  When both fan arcs have
equal length the slide is applied only if it lowers the coordinate vector
lexicographically, which pins a canonical taut position.
"""


def trace(tab, coords):
    """Split a normal coordinate vector into directed component itineraries.

    Returns a list of ``(component_coords, steps)`` pairs, one per undirected
    component, each traversed once in a deterministic direction.
    """
    n_edges = tab.n_edges
    tri_sides = tab.tri_sides
    tri_of = tab.tri_of
    pos_of = tab.pos_of

    # corner counts per triangle
    corner = []
    for t in range(tab.n_tris):
        w0 = coords[tri_sides[3 * t] >> 1]
        w1 = coords[tri_sides[3 * t + 1] >> 1]
        w2 = coords[tri_sides[3 * t + 2] >> 1]
        corner.append(((w0 + w1 - w2) >> 1, (w1 + w2 - w0) >> 1, (w2 + w0 - w1) >> 1))

    visited = [None] * (2 * n_edges)
    for h in range(2 * n_edges):
        visited[h] = bytearray(coords[h >> 1])

    out = []
    for h0 in range(2 * n_edges):
        for p0 in range(coords[h0 >> 1]):
            if visited[h0][p0]:
                continue
            steps = []
            comp = [0] * n_edges
            h, p = h0, p0
            while True:
                visited[h][p] = 1
                t = tri_of[h]
                i = pos_of[h]
                n = corner[t]
                if p < n[(i - 1) % 3]:
                    h_out = tri_sides[3 * t + (i - 1) % 3]
                    p_out = coords[h_out >> 1] - 1 - p
                else:
                    h_out = tri_sides[3 * t + (i + 1) % 3]
                    p_out = coords[h >> 1] - p - 1
                # mark the same point as seen by the reversed traversal
                visited[h_out][p_out] = 1
                steps.append(h_out)
                comp[h_out >> 1] += 1
                h = h_out ^ 1
                p = coords[h_out >> 1] - 1 - p_out
                if h == h0 and p == p0:
                    break
            out.append((tuple(comp), steps))
    return out


def coords_of_steps(tab, steps):
    comp = [0] * tab.n_edges
    for s in steps:
        comp[s >> 1] += 1
    return tuple(comp)


def _cancel_backtracks(steps):
    """Remove adjacent (side, side^1) pairs, cyclically, via a stack sweep."""
    stack = []
    for s in steps:
        if stack and stack[-1] == s ^ 1:
            stack.pop()
        else:
            stack.append(s)
    # cyclic wrap-around
    while len(stack) >= 2 and stack[0] == stack[-1] ^ 1:
        stack.pop()
        stack.pop(0)
    return stack


def _turns(tab, steps):
    """turn[k] for the strand between steps k and k+1 (cyclically).

    0 means the strand cuts the corner at the start of its entry side (the
    vertex stays on its left; ccw hug), 1 the corner at the end (cw hug).
    """
    pos_of = tab.pos_of
    n = len(steps)
    turns = [0] * n
    for k in range(n):
        i_in = pos_of[steps[k] ^ 1]
        i_out = pos_of[steps[(k + 1) % n]]
        turns[k] = 0 if i_out == (i_in - 1) % 3 else 1
    return turns


def _find_run(tab, steps, turns, want, min_len):
    """First index/length of a cyclic run of ``want`` turns with length >= min_len."""
    n = len(turns)
    k = 0
    # start scanning just after a break to measure runs from their beginning
    start = None
    for k in range(n):
        if turns[k] != want:
            start = k + 1
            break
    if start is None:
        return None  # all strands turn the same way
    run = 0
    for d in range(n):
        k = (start + d) % n
        if turns[k] == want:
            run += 1
            if run >= min_len:
                return ((k - run + 1) % n, run)
        else:
            run = 0
    return None


def _apply_vertex_move(tab, steps, first_strand, n_strands):
    """Push the subpath spanned by the given strand run across the vertex.

    The run covers steps ``first_strand .. first_strand + n_strands`` (one
    more step than strands); those steps cross consecutive fan sides and are
    replaced by the complementary fan arc traversed the other way.
    """
    F = len(tab.fan_sides)
    L = len(steps)
    m = n_strands + 1
    a = first_strand
    q = tab.fan_pos[steps[a]]
    # replacement: fan positions q-1 down to q+m (mod F), crossed clockwise
    new_sub = [tab.fan_sides[(q - 1 - i) % F] ^ 1 for i in range(F - m)]
    idx = [(a + j) % L for j in range(m)]
    keep = [steps[j] for j in range(L) if j not in set(idx)]
    # splice keeping cyclic order: rotate so the removed block is at the end
    rot = [(a + m + j) % L for j in range(L - m)]
    keep = [steps[j] for j in rot]
    return keep + new_sub


def _check_run_fan(tab, steps, a, n_strands):
    F = len(tab.fan_sides)
    q = tab.fan_pos[steps[a]]
    L = len(steps)
    for j in range(n_strands + 1):
        if tab.fan_pos[steps[(a + j) % L]] != (q + j) % F:
            return False
    return True


def _reduce_strict(tab, steps):
    """R1/R2 reduction with strictly decreasing length."""
    half = 3 * (2 * tab.genus - 1)  # (12g-6)/2 = 6g-3
    F = len(tab.fan_sides)
    while True:
        steps = _cancel_backtracks(steps)
        if not steps:
            return []
        turns = _turns(tab, steps)
        if all(t == turns[0] for t in turns):
            # corner sequence follows the fan cycle forever: winds around the
            # vertex and is null-homotopic
            assert len(steps) % F == 0, "closed same-turn itinerary off the fan"
            return []
        hit = _find_run(tab, steps, turns, 0, half)
        if hit is not None:
            a, run = hit
            a = a % len(steps)
            assert _check_run_fan(tab, steps, a, half)
            steps = _apply_vertex_move(tab, steps, a, half)
            continue
        # clockwise runs: reduce the reversed itinerary
        rev = [s ^ 1 for s in reversed(steps)]
        rturns = _turns(tab, rev)
        hit = _find_run(tab, rev, rturns, 0, half)
        if hit is not None:
            a, run = hit
            assert _check_run_fan(tab, rev, a, half)
            rev = _apply_vertex_move(tab, rev, a, half)
            steps = [s ^ 1 for s in reversed(rev)]
            continue
        return steps


def reduce_steps(tab, steps):
    """Tightened itinerary: backtracks cancelled, no over-half fan runs.

    The result is a deterministic function of the input position.  It is a
    locally shortest position of the free homotopy class; positions of one
    class need not tighten to equal coordinates (sweeps across the vertex can
    connect distinct tight positions), so class-level canonical coordinates
    and triviality tests go through the conjugacy key instead (`lamcore.pi1`).
    An empty result certifies a null-homotopic curve, but a non-empty one
    does not certify essentiality by itself.
    """
    return _reduce_strict(tab, list(steps))
