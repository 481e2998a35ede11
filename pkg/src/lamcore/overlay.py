"""Minimal position of several multicurves on a triangulated surface.

The overlay holds explicit transverse positions: every component is a cyclic
sequence of edge passages, and every edge carries a total order of the
passages crossing it.  The initial order places each pair of strands by
walking their itineraries backwards to the first divergence (parallel strands
stack by diagram index), which realizes taut curves with few or no excess
crossings.  Crossings are counted per triangle by straight-chord
interleaving.  Any remaining bigon -- an empty disk region bounded by one
segment of each of two diagrams -- is removed by sliding one side across the
other; each slide removes exactly those two crossings and nothing else, so
the loop terminates in pairwise minimal position.  (No empty bigon between
any pair implies no bigon at all, by passing to an innermost one.)

Conventions used throughout:

* passages are stored by their exit side, so ``sigma = +1`` iff the side is
  even (the strand passes from the left triangle of the edge to the right);
* edge slots are numbered from the tail of the edge; a side traverses its
  points in slot order iff the side is even;
* triangle boundary coordinates ``(i, p)`` (side position, traversal
  position) enumerate the boundary counterclockwise;
* at a crossing, ``sign = +1`` iff the two strand directions form a
  counterclockwise frame; the four darts A_OUT, B_OUT, A_IN, B_IN then sit
  counterclockwise in that order (A_OUT, B_IN, A_IN, B_OUT when the sign is
  negative);
* a face walk advances by ``d -> rho^-1(theta(d))`` and covers the sectors
  ``(d, rho(d))``, which lie to the left of each dart ``d`` it contains.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cmp_to_key

from ._ktables import tables

TOWARD_START = 0
TOWARD_END = 1

A_OUT, A_IN, B_OUT, B_IN = 0, 1, 2, 3


class Passage:
    """One crossing of one component through one edge."""

    __slots__ = ("comp", "side", "slot", "idx")

    def __init__(self, comp, side):
        self.comp = comp
        self.side = side
        self.slot = -1
        self.idx = -1

    @property
    def edge(self):
        return self.side >> 1

    @property
    def sigma(self):
        return 1 if (self.side & 1) == 0 else -1

    def __repr__(self):
        return f"P({self.comp.key},{self.idx},e{self.edge},{'+' if self.sigma > 0 else '-'})"


class Comp:
    """A component inside an overlay: its current position as a passage cycle."""

    __slots__ = ("did", "cid", "key", "passages")

    def __init__(self, did, cid, steps):
        self.did = did
        self.cid = cid
        self.key = (did, cid)
        self.passages = [Passage(self, s) for s in steps]
        self._reindex()

    def _reindex(self):
        for i, p in enumerate(self.passages):
            p.idx = i

    @property
    def steps(self):
        return [p.side for p in self.passages]

    def __len__(self):
        return len(self.passages)

    def coords(self, n_edges):
        c = [0] * n_edges
        for p in self.passages:
            c[p.edge] += 1
        return tuple(c)


def _strand_iter(steps, k, direction):
    """Strands ``(entry_side, exit_side)`` leaving passage ``k``.

    ``direction=+1`` walks with the component orientation, ``-1`` against it.
    """
    L = len(steps)
    j = 0
    while True:
        if direction > 0:
            yield steps[(k + j) % L] ^ 1, steps[(k + j + 1) % L]
        else:
            yield steps[(k - j) % L], steps[(k - j - 1) % L] ^ 1
        j += 1


class _Order:
    """Transverse order of passages along an edge (tail to head)."""

    def __init__(self, tab):
        self.pos_of = tab.pos_of

    def _turn(self, entry, exit_):
        return TOWARD_START if self.pos_of[exit_] == (self.pos_of[entry] - 1) % 3 else TOWARD_END

    def compare(self, p, q):
        if p is q:
            return 0
        sp = p.comp.steps
        sq = q.comp.steps
        dp = 1 if p.sigma > 0 else -1
        dq = 1 if q.sigma > 0 else -1
        bound = len(sp) + len(sq) + 2
        for forward in (False, True):
            itp = _strand_iter(sp, p.idx, dp if forward else -dp)
            itq = _strand_iter(sq, q.idx, dq if forward else -dq)
            for _ in range(bound):
                ep, xp = next(itp)
                eq, xq = next(itq)
                assert ep == eq, "comparator walk desynchronized"
                if xp != xq:
                    start = self._turn(ep, xp) == TOWARD_START
                    if forward:
                        # first forward entry side is odd: head-to-tail
                        return 1 if start else -1
                    # first backward entry side is even: tail-to-head
                    return -1 if start else 1
        if p.comp.key == q.comp.key:
            return 0
        # fully parallel strands: the lower diagram sits on the left of its
        # own direction, which is the head side when it crosses positively
        if p.comp.key < q.comp.key:
            return 1 if p.sigma > 0 else -1
        return -1 if q.sigma > 0 else 1


class Chord:
    """Strand of a component between consecutive passages, inside a triangle."""

    __slots__ = ("comp", "k", "tri", "a", "b", "crossings")

    def __init__(self, comp, k, tri, a, b):
        self.comp = comp
        self.k = k
        self.tri = tri
        self.a = a
        self.b = b
        self.crossings = []


class Crossing:
    __slots__ = ("ca", "cb", "tri", "sign", "uid")

    def __init__(self, ca, cb, tri, sign, uid):
        self.ca = ca
        self.cb = cb
        self.tri = tri
        self.sign = sign
        self.uid = uid

    def chord(self, comp_key):
        return self.ca if self.ca.comp.key == comp_key else self.cb

    def other(self, comp_key):
        return self.cb if self.ca.comp.key == comp_key else self.ca

    def comp_of_role(self, role):
        return self.ca.comp if role in (A_OUT, A_IN) else self.cb.comp


class Overlay:
    """Explicit transverse position of one or more multicurve diagrams.

    ``diagrams`` is a list (one entry per multicurve) of lists of taut
    component itineraries.  After ``ensure_minimal()`` every pair of diagrams
    is in minimal position; single diagrams are embedded throughout.
    """

    def __init__(self, surface, diagrams):
        self.surface = surface
        self.tab = tables(surface)
        self.comps = []
        for did, comps in enumerate(diagrams):
            for cid, steps in enumerate(comps):
                if not steps:
                    raise ValueError("empty component itinerary")
                self.comps.append(Comp(did, cid, list(steps)))
        self._initial_place()
        self._derived = None

    # -- placement -----------------------------------------------------------

    def _initial_place(self):
        order = _Order(self.tab)
        lists = [[] for _ in range(self.tab.n_edges)]
        for comp in self.comps:
            for p in comp.passages:
                lists[p.edge].append(p)
        for lst in lists:
            lst.sort(key=cmp_to_key(order.compare))
        self.edge_lists = lists
        self._reslot()

    def _reslot(self):
        for lst in self.edge_lists:
            for i, p in enumerate(lst):
                p.slot = i
        for comp in self.comps:
            comp._reindex()

    # -- derived combinatorics -------------------------------------------------

    def _boundary_coord(self, side, passage, totals):
        i = self.tab.pos_of[side]
        p = passage.slot if (side & 1) == 0 else totals[side >> 1] - 1 - passage.slot
        return (i, p)

    @staticmethod
    def _between(a, x, b):
        """Is x strictly inside the ccw cyclic interval (a, b)?"""
        if a < b:
            return a < x < b
        return x > a or x < b

    def _compute(self):
        if self._derived is not None:
            return self._derived
        tab = self.tab
        totals = [len(lst) for lst in self.edge_lists]
        tri_chords = [[] for _ in range(tab.n_tris)]
        chord_of = {}
        for comp in self.comps:
            ps = comp.passages
            L = len(ps)
            for k in range(L):
                p_in, p_out = ps[k], ps[(k + 1) % L]
                entry = p_in.side ^ 1
                tri = tab.tri_of[entry]
                assert tab.tri_of[p_out.side] == tri, "broken itinerary"
                ch = Chord(
                    comp,
                    k,
                    tri,
                    self._boundary_coord(entry, p_in, totals),
                    self._boundary_coord(p_out.side, p_out, totals),
                )
                tri_chords[tri].append(ch)
                chord_of[(comp.key, k)] = ch
        crossings = []
        for tri, chords in enumerate(tri_chords):
            for ca, cb in itertools.combinations(chords, 2):
                if ca.comp.did == cb.comp.did:
                    continue
                if cb.comp.did < ca.comp.did:
                    ca, cb = cb, ca
                in1 = self._between(ca.a, cb.a, ca.b)
                in2 = self._between(ca.a, cb.b, ca.b)
                if in1 == in2:
                    continue
                x = Crossing(ca, cb, tri, 1 if in1 else -1, len(crossings))
                ca.crossings.append(x)
                cb.crossings.append(x)
                crossings.append(x)
        for chords in tri_chords:
            for ch in chords:
                if len(ch.crossings) > 1:
                    self._sort_along(ch, totals)
        cycles = {}
        for comp in self.comps:
            seq = []
            for k in range(len(comp)):
                seq.extend(chord_of[(comp.key, k)].crossings)
            cycles[comp.key] = seq
        self._derived = {
            "tri_chords": tri_chords,
            "totals": totals,
            "crossings": crossings,
            "cycles": cycles,
            "chord_of": chord_of,
        }
        return self._derived

    def _sort_along(self, ch, totals):
        dids = {x.other(ch.comp.key).comp.did for x in ch.crossings}
        if len(dids) == 1:
            # chords of a single other diagram never cross each other, so
            # the endpoint inside the ccw interval (a, b) sorts them
            big = max(totals) + 1

            def key(x):
                oc = x.other(ch.comp.key)
                for endpoint in (oc.a, oc.b):
                    if self._between(ch.a, endpoint, ch.b):
                        ka = ch.a[0] * big + ch.a[1]
                        kx = endpoint[0] * big + endpoint[1]
                        return (kx - ka) % (3 * big)
                raise AssertionError("crossing chord has no endpoint inside")

            ch.crossings.sort(key=key)
        else:
            pts = self._tri_points(ch.tri, totals)
            a, b = pts[ch.a], pts[ch.b]

            def param(x):
                oc = x.other(ch.comp.key)
                c, d = pts[oc.a], pts[oc.b]
                den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
                num = (c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])
                return Fraction(num, den)

            ch.crossings.sort(key=param)

    def _tri_points(self, tri, totals):
        """Exact convex (ccw) positions for the boundary points of a triangle."""
        pts = {}
        idx = 0
        for i in range(3):
            side = self.tab.tri_sides[3 * tri + i]
            for p in range(totals[side >> 1]):
                t = Fraction(idx)
                den = 1 + t * t
                pts[(i, p)] = ((1 - t * t) / den, 2 * t / den)
                idx += 1
        return pts

    # -- public access -----------------------------------------------------------

    @property
    def crossings(self):
        return self._compute()["crossings"]

    @property
    def totals(self):
        return self._compute()["totals"]

    def cycle(self, comp_key):
        return self._compute()["cycles"][comp_key]

    def chord(self, comp_key, k):
        return self._compute()["chord_of"][(comp_key, k)]

    def comp(self, did, cid):
        for c in self.comps:
            if c.key == (did, cid):
                return c
        raise KeyError((did, cid))

    def count(self, did_a, did_b):
        return sum(1 for x in self.crossings if {x.ca.comp.did, x.cb.comp.did} == {did_a, did_b})

    def count_by_comp(self, did_a, did_b):
        out = {}
        for x in self.crossings:
            da, db = x.ca.comp.did, x.cb.comp.did
            if {da, db} != {did_a, did_b}:
                continue
            key = (x.ca.comp.cid, x.cb.comp.cid) if da == did_a else (x.cb.comp.cid, x.ca.comp.cid)
            out[key] = out.get(key, 0) + 1
        return out

    def self_check(self):
        """Debug: components of one diagram never cross each other."""
        d = self._compute()
        for chords in d["tri_chords"]:
            for ca, cb in itertools.combinations(chords, 2):
                if ca.comp.did != cb.comp.did or ca.comp is cb.comp:
                    continue
                in1 = self._between(ca.a, cb.a, ca.b)
                in2 = self._between(ca.a, cb.b, ca.b)
                assert in1 == in2, f"diagram {ca.comp.did} self-crosses"
        return True

    # -- face walks of the crossing graph ------------------------------------------

    def _dart_maps(self):
        cycles = self._compute()["cycles"]
        theta = {}
        for key, cyc in cycles.items():
            m = len(cyc)
            for i, x in enumerate(cyc):
                nxt = cyc[(i + 1) % m]
                out_role = A_OUT if x.ca.comp.key == key else B_OUT
                in_role = A_IN if nxt.ca.comp.key == key else B_IN
                theta[(x.uid, out_role)] = (nxt.uid, in_role)
                theta[(nxt.uid, in_role)] = (x.uid, out_role)
        rho_inv = {}
        for x in self.crossings:
            if x.sign > 0:
                cyc = ((x.uid, A_OUT), (x.uid, B_OUT), (x.uid, A_IN), (x.uid, B_IN))
            else:
                cyc = ((x.uid, A_OUT), (x.uid, B_IN), (x.uid, A_IN), (x.uid, B_OUT))
            for i in range(4):
                rho_inv[cyc[(i + 1) % 4]] = cyc[i]
        return theta, rho_inv

    def face_walks(self):
        theta, rho_inv = self._dart_maps()
        seen = set()
        walks = []
        for d0 in theta:
            if d0 in seen:
                continue
            walk = []
            d = d0
            while True:
                walk.append(d)
                seen.add(d)
                d = rho_inv[theta[d]]
                if d == d0:
                    break
            walks.append(walk)
        return walks

    # -- bigon reduction ---------------------------------------------------------

    def ensure_minimal(self, protect=None):
        """Remove all bigons; diagram ``protect`` is never re-routed."""
        guard = 0
        while True:
            n_before = len(self.crossings)
            bigon = self._find_bigon()
            if bigon is None:
                return self
            d1, d2 = bigon
            if protect is not None and self.crossings[d1[0]].comp_of_role(d1[1]).did == protect:
                d1, d2 = d2, d1
            self._smooth(d1, d2)
            assert len(self.crossings) == n_before - 2, "smoothing must remove 2 crossings"
            guard += 1
            if guard > max(4 * n_before + 8, 64):
                raise RuntimeError("bigon reduction did not terminate")

    def _find_bigon(self):
        if not self.crossings:
            return None
        candidates = [w for w in self.face_walks() if len(w) == 2]
        if not candidates:
            return None
        arr = self.arrangement()
        for walk in candidates:
            reg = arr.region_of_overlay_dart(walk[0])
            if arr.chi(reg) == 1 and arr.corner_count(reg) == 2:
                return walk[0], walk[1]
        return None

    def _smooth(self, d1, d2):
        """Slide the side carrying d1 across the side carrying d2."""
        u1, r1 = d1
        u2, r2 = d2
        x1 = self.crossings[u1]
        x2 = self.crossings[u2]
        assert x1 is not x2, "degenerate bigon"
        comp_m = x1.comp_of_role(r1)
        comp_o = x2.comp_of_role(r2)
        # never re-route diagram 0 across a higher diagram unless both darts
        # allow it; callers rely on lower diagrams keeping canonical position
        # only when they never participate in bigons, so no special casing.
        m_forward = r1 in (A_OUT, B_OUT)
        o_forward = r2 in (A_OUT, B_OUT)
        # the m-side segment runs from x1 to x2 in dart direction; express it
        # in comp_m's own orientation
        if m_forward:
            m_first, m_second = x1, x2
        else:
            m_first, m_second = x2, x1
        # the o-side dart is based at x2 and points toward x1
        if o_forward:
            o_first, o_second = x2, x1
        else:
            o_first, o_second = x1, x2
        k1 = m_first.chord(comp_m.key).k
        k2 = m_second.chord(comp_m.key).k
        ok1 = o_first.chord(comp_o.key).k
        ok2 = o_second.chord(comp_o.key).k
        L, Lo = len(comp_m.passages), len(comp_o.passages)
        # comp_o passages along the o-side arc, in comp_o's orientation
        opass = []
        j = (ok1 + 1) % Lo
        while j != (ok2 + 1) % Lo:
            opass.append(comp_o.passages[j])
            j = (j + 1) % Lo
        # comp_m travels its new arc from m_first to m_second; aligned with
        # comp_o's orientation iff the two arcs run anti-parallel around the
        # bigon, i.e. iff exactly one of the darts is an OUT dart
        aligned = m_forward != o_forward
        template = opass if aligned else list(reversed(opass))
        news = []
        for p in template:
            side = p.side if aligned else p.side ^ 1
            news.append((p, Passage(comp_m, side)))
        # the bigon lies to the left of each walk dart, so to the left of
        # comp_o's orientation iff its dart points forward; insert the new
        # passages on the opposite (far) side of comp_o
        bigon_left = o_forward
        for p_tpl, p_new in news:
            lst = self.edge_lists[p_tpl.edge]
            pos = lst.index(p_tpl)
            bigon_above = bigon_left == (p_tpl.sigma > 0)
            lst.insert(pos if bigon_above else pos + 1, p_new)
        # drop comp_m's passages strictly between the two chords
        drop = []
        j = (k1 + 1) % L
        while j != (k2 + 1) % L:
            drop.append(comp_m.passages[j])
            j = (j + 1) % L
        for p in drop:
            self.edge_lists[p.edge].remove(p)
        seq = []
        j = (k2 + 1) % L
        while j != (k1 + 1) % L:
            seq.append(comp_m.passages[j])
            j = (j + 1) % L
        comp_m.passages = seq + [pn for _, pn in news]
        comp_m._reindex()
        self._reslot()
        self._derived = None

    # -- regions ---------------------------------------------------------------

    def arrangement(self):
        from .arrangement import Arrangement

        return Arrangement(self)
