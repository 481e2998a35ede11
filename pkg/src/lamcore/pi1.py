"""Conjugacy keys for free homotopy classes via Dehn's algorithm.

Collapsing a spanning tree of the dual graph turns the triangulation into a
one-relator presentation of the surface group: generators are the non-tree
edges (2g of them), and the boundary of the single dual 2-cell, the vertex
fan, is the standard length-4g surface relator.  A transverse curve's word
is its itinerary with tree letters dropped.

The relator satisfies the small cancellation condition C'(1/6) for genus at
least two, so Dehn's algorithm (cyclic free reduction plus replacing relator
subwords longer than half by the shorter complement) terminates in shortest
cyclically reduced words, and shortest conjugates differ only by rotations
and exactly-half relator swaps.  The canonical key is the minimum over that
closure and over inversion, which makes it a complete invariant of the
unoriented free homotopy class.
"""

from __future__ import annotations

from ._ktables import tables

_CACHE = {}


class DualPresentation:
    def __init__(self, surface):
        tab = tables(surface)
        n_edges = tab.n_edges
        # spanning tree of the dual graph (vertices = triangles)
        adj = {}
        for e in range(n_edges):
            t0, t1 = tab.tri_of[2 * e], tab.tri_of[2 * e + 1]
            adj.setdefault(t0, []).append((e, t1))
            adj.setdefault(t1, []).append((e, t0))
        seen = {0}
        tree = set()
        frontier = [0]
        while frontier:
            nxt = []
            for t in frontier:
                for e, t2 in sorted(adj[t]):
                    if t2 not in seen:
                        seen.add(t2)
                        tree.add(e)
                        nxt.append(t2)
            frontier = nxt
        assert len(seen) == tab.n_tris, "dual graph must be connected"
        self.letter = {}
        idx = 0
        for e in range(n_edges):
            if e not in tree:
                idx += 1
                self.letter[e] = idx
        self.n_letters = idx
        assert idx == 2 * surface.genus
        relator = []
        for s in surface.fan_sides:
            e = s >> 1
            if e in self.letter:
                relator.append(self.letter[e] if (s & 1) == 0 else -self.letter[e])
        relator = _free_reduce_cyclic(relator)
        assert len(relator) == 4 * surface.genus, "relator must have length 4g"
        self.relator = tuple(relator)
        self.half = 2 * surface.genus
        # all cyclic rotations of the relator and its inverse
        rots = set()
        for base in (list(self.relator), [-x for x in reversed(self.relator)]):
            for i in range(len(base)):
                rots.add(tuple(base[i:] + base[:i]))
        self.rotations = sorted(rots)

    def word_of_steps(self, steps):
        w = []
        for s in steps:
            e = s >> 1
            if e in self.letter:
                w.append(self.letter[e] if (s & 1) == 0 else -self.letter[e])
        return w


def _free_reduce_cyclic(w):
    stack = []
    for x in w:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    while len(stack) >= 2 and stack[0] == -stack[-1]:
        stack.pop()
        stack.pop(0)
    return stack


def _match_at(w, i, rot):
    """Length of the common prefix of w (cyclically from i) and rot."""
    n = len(w)
    k = 0
    while k < len(rot) and k < n and w[(i + k) % n] == rot[k]:
        k += 1
    return k


def _dehn_pass(pres, w):
    """One Dehn replacement (subword longer than half the relator), or None."""
    n = len(w)
    if n == 0:
        return None
    for rot in pres.rotations:
        for i in range(n):
            k = _match_at(w, i, rot)
            if k > pres.half:
                tail = [w[(i + j) % n] for j in range(k, n)]
                compl = [-x for x in reversed(rot[k:])]
                return _free_reduce_cyclic(compl + tail)
    return None


def dehn_reduce(pres, w):
    w = _free_reduce_cyclic(list(w))
    while True:
        nxt = _dehn_pass(pres, w)
        if nxt is None:
            return w
        w = nxt


def _half_swaps(pres, w):
    """Equal-length rewrites replacing an exactly-half relator subword."""
    n = len(w)
    out = []
    for rot in pres.rotations:
        for i in range(n):
            k = _match_at(w, i, rot)
            if k == pres.half:
                tail = [w[(i + j) % n] for j in range(k, n)]
                compl = [-x for x in reversed(rot[k:])]
                out.append(_free_reduce_cyclic(compl + tail))
    return out


def _min_rotation(w):
    if not w:
        return ()
    best = None
    n = len(w)
    for i in range(n):
        cand = tuple(w[i:] + w[:i])
        if best is None or cand < best:
            best = cand
    return best


def _cyc_key(w):
    inv = [-x for x in reversed(w)]
    return min(_min_rotation(w), _min_rotation(inv))


class ClosureTooLarge(Exception):
    """The geodesic-representative closure is too large to enumerate."""


def conjugacy_key(pres, word, cap=4096):
    """Canonical key of the unoriented conjugacy class of a cyclic word.

    Explores the closure of shortest cyclic representatives under
    exactly-half relator swaps; raises ClosureTooLarge past the cap (spiral
    words have exponentially many geodesic representatives).
    """
    w = dehn_reduce(pres, word)
    if not w:
        return ()
    start = _cyc_key(w)
    seen = {start}
    best = start
    queue = [list(start)]
    while queue:
        cur = queue.pop()
        for cand in _half_swaps(pres, cur):
            cand = dehn_reduce(pres, cand)
            key = _cyc_key(cand)
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > cap:
                raise ClosureTooLarge(len(seen))
            queue.append(list(key))
            if key < best:
                best = key
    return best


def presentation(surface) -> DualPresentation:
    if surface not in _CACHE:
        _CACHE[surface] = DualPresentation(surface)
    return _CACHE[surface]


def class_key_of_steps(surface, steps):
    pres = presentation(surface)
    return conjugacy_key(pres, pres.word_of_steps(steps))


class _TreePaths:
    """Itinerary fragments along the dual spanning tree."""

    def __init__(self, surface, pres):
        tab = tables(surface)
        self.tab = tab
        # tree adjacency: triangle -> [(exit side, neighbour triangle)]
        adj = {t: [] for t in range(tab.n_tris)}
        for e in range(tab.n_edges):
            if e in pres.letter:
                continue
            s0, s1 = 2 * e, 2 * e + 1
            t0, t1 = tab.tri_of[s0], tab.tri_of[s1]
            adj[t0].append((s0, t1))
            adj[t1].append((s1, t0))
        self.adj = adj
        self.n_tris = tab.n_tris

    def steps_between(self, t_from, t_to):
        """Exit sides crossed along the unique tree path."""
        if t_from == t_to:
            return []
        prev = {t_from: None}
        frontier = [t_from]
        while frontier and t_to not in prev:
            nxt = []
            for t in frontier:
                for side, t2 in self.adj[t]:
                    if t2 not in prev:
                        prev[t2] = (t, side)
                        nxt.append(t2)
            frontier = nxt
        path = []
        cur = t_to
        while prev[cur] is not None:
            t, side = prev[cur]
            path.append(side)
            cur = t
        path.reverse()
        return path


_TREE_CACHE = {}


def rebuild_steps(surface, word):
    """A transverse itinerary realizing a cyclic word of the presentation.

    Letters cross their non-tree edges; consecutive crossings are joined by
    the unique dual-tree path, making the result a deterministic function of
    the word.
    """
    pres = presentation(surface)
    if surface not in _TREE_CACHE:
        _TREE_CACHE[surface] = _TreePaths(surface, pres)
    paths = _TREE_CACHE[surface]
    tab = tables(surface)
    edge_of = {v: e for e, v in pres.letter.items()}
    steps = []
    letters = list(word)
    n = len(letters)
    for i, ell in enumerate(letters):
        e = edge_of[abs(ell)]
        step = 2 * e if ell > 0 else 2 * e + 1
        steps.append(step)
        land = tab.tri_of[step ^ 1]
        nxt = letters[(i + 1) % n]
        e2 = edge_of[abs(nxt)]
        depart = tab.tri_of[2 * e2 if nxt > 0 else 2 * e2 + 1]
        steps.extend(paths.steps_between(land, depart))
    return steps


def is_trivial_steps(surface, steps):
    """Certified null-homotopy test (Dehn's algorithm, no closure needed)."""
    pres = presentation(surface)
    return not dehn_reduce(pres, pres.word_of_steps(steps))


def canonical_class_steps(surface, steps):
    """Deterministic class representative: rebuild from the canonical word.

    Returns the rebuilt (un-tightened) itinerary, or [] for a trivial class.
    The caller reduces it; since the rebuilt itinerary depends only on the
    conjugacy key, every position of a class reduces to the same coordinates.
    Raises ClosureTooLarge when the class has too many geodesic words.
    """
    key = class_key_of_steps(surface, steps)
    if not key:
        return []
    return rebuild_steps(surface, key)
