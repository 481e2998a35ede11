"""Cell decomposition of the surface refined by an overlay.

The triangulation edges together with the overlay strands cut the surface
into disk cells.  Gluing cells across edge segments yields the complement
regions of the union of all diagrams, with exact Euler characteristics via
open cells:

    chi(region) = #cells - #edge segments + (1 if it contains the vertex)

Each region also knows its crossing corner count (two corners per pi of cone
angle in the flat pieces), and its boundary walks: cyclic sequences of
strand-piece darts obtained by stitching the local face walks across glued
edge segments.  Walks are the regular-neighborhood boundaries used by the
decomposition machinery.
"""

from __future__ import annotations

from .overlay import A_IN, A_OUT, B_IN, B_OUT


class Arrangement:
    def __init__(self, ov):
        self.ov = ov
        self.tab = ov.tab
        d = ov._compute()
        self.totals = d["totals"]
        self.tri_chords = d["tri_chords"]
        self._build_local()
        self._glue()
        self._walks = None

    # -- local planar graphs ---------------------------------------------------

    def _build_local(self):
        tab = self.tab
        ov = self.ov
        self.cell_of_dart = {}  # dart -> cell id
        self.cells = []  # cell id -> list of darts
        self.cell_tri = []
        self.cell_corners = []  # crossing-sector count per cell
        self.arc_cell = {}  # (tri, side_pos, j) -> cell id of the interior dart
        self.corner_cell = {}  # (tri, i) -> cell id
        self.next_local = {}
        self.piece_info = {}  # piece dart -> (comp, strand k, end node kind, ...)
        self._piece_of_overlay = {}
        for tri in range(tab.n_tris):
            self._build_triangle(tri)

    def _build_triangle(self, tri):
        tab = self.tab
        ov = self.ov
        sides = tab.tri_sides[3 * tri : 3 * tri + 3]
        pts = []  # per side: passages in traversal order
        for h in sides:
            lst = ov.edge_lists[h >> 1]
            pts.append(list(lst) if (h & 1) == 0 else list(reversed(lst)))

        darts_at = {}  # node -> placeholder; rotations built per node kind
        # element = ('a', i, j) arc j on side i  |  ('s', c, n) piece n of chord c
        # dart = (tri, element, orient)
        def dart(elem, orient):
            return (tri, elem, orient)

        # endpoints of elements
        ends = {}
        for i in range(3):
            T = len(pts[i])
            for j in range(T + 1):
                n0 = ("c", (i - 1) % 3) if j == 0 else ("p", i, j - 1)
                n1 = ("c", i) if j == T else ("p", i, j)
                ends[("a", i, j)] = (n0, n1)
        chords = self.tri_chords[tri]
        inward = {}  # boundary point node -> piece dart based there
        for ci, ch in enumerate(chords):
            nodes = [("p", ch.a[0], ch.a[1])]
            nodes += [("x", x.uid) for x in ch.crossings]
            nodes.append(("p", ch.b[0], ch.b[1]))
            for n in range(len(nodes) - 1):
                ends[("s", ci, n)] = (nodes[n], nodes[n + 1])
            inward[nodes[0]] = dart(("s", ci, 0), 0)
            inward[nodes[-1]] = dart(("s", ci, len(nodes) - 2), 1)
            for n, x in enumerate(ch.crossings):
                self._piece_of_overlay.setdefault(x.uid, {})[
                    (ch.comp.key, ch.k)
                ] = (ci, n)

        # rotations (ccw dart cycles per node)
        rho = {}

        def set_cycle(cyc):
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                rho[a] = b

        for i in range(3):
            T = len(pts[i])
            # corner i sits between side i and side i+1
            fwd = dart(("a", (i + 1) % 3, 0), 0)
            bwd = dart(("a", i, T), 1)
            set_cycle([fwd, bwd])
            for j in range(T):
                node = ("p", i, j)
                fwd = dart(("a", i, j + 1), 0)
                bwd = dart(("a", i, j), 1)
                set_cycle([fwd, inward[node], bwd])
        for ci, ch in enumerate(chords):
            for n, x in enumerate(ch.crossings):
                ca_loc = self._piece_of_overlay[x.uid][(x.ca.comp.key, x.ca.k)]
                cb_loc = self._piece_of_overlay[x.uid][(x.cb.comp.key, x.cb.k)]
                if ch is x.ca:  # build the rotation once per crossing
                    a_out = dart(("s", ca_loc[0], ca_loc[1] + 1), 0)
                    a_in = dart(("s", ca_loc[0], ca_loc[1]), 1)
                    b_out = dart(("s", cb_loc[0], cb_loc[1] + 1), 0)
                    b_in = dart(("s", cb_loc[0], cb_loc[1]), 1)
                    if x.sign > 0:
                        set_cycle([a_out, b_out, a_in, b_in])
                    else:
                        set_cycle([a_out, b_in, a_in, b_out])

        # face orbits: next(d) = rho^-1(theta(d)); build rho^-1
        rho_inv = {b: a for a, b in rho.items()}

        def theta(d):
            return (d[0], d[1], d[2] ^ 1)

        seen = set()
        outer_marker = dart(("a", 0, 0), 1)
        for d0 in rho:
            if d0 in seen:
                continue
            orbit = []
            d = d0
            while True:
                orbit.append(d)
                seen.add(d)
                d = rho_inv[theta(d)]
                if d == d0:
                    break
            if outer_marker in orbit:
                continue  # the face outside the triangle
            cid = len(self.cells)
            self.cells.append(orbit)
            self.cell_tri.append(tri)
            corners = 0
            for d in orbit:
                self.cell_of_dart[d] = cid
                nxt = rho_inv[theta(d)]
                self.next_local[d] = nxt
                elem = d[1]
                if elem[0] == "a" and d[2] == 0:
                    self.arc_cell[(tri, elem[1], elem[2])] = cid
                base = ends[elem][d[2]]
                if base[0] == "x":
                    corners += 1
            self.cell_corners.append(corners)
        for i in range(3):
            self.corner_cell[(tri, i)] = self.cell_of_dart[dart(("a", (i + 1) % 3, 0), 0)]
        # stash per-triangle data used by walk extraction
        for i in range(3):
            for j, p in enumerate(pts[i]):
                self.piece_info[(tri, i, j)] = p

    # -- gluing ------------------------------------------------------------------

    def _glue(self):
        tab = self.tab
        parent = list(range(len(self.cells)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        self._arc_partner = {}
        seg_pairs = []
        for e in range(tab.n_edges):
            T = self.totals[e]
            h0, h1 = 2 * e, 2 * e + 1
            t0, i0 = tab.tri_of[h0], tab.pos_of[h0]
            t1, i1 = tab.tri_of[h1], tab.pos_of[h1]
            for s in range(T + 1):
                a = (t0, i0, s)
                b = (t1, i1, T - s)
                union(self.arc_cell[a], self.arc_cell[b])
                self._arc_partner[a] = b
                self._arc_partner[b] = a
                seg_pairs.append((e, s, a))
        self._find = find
        self.region_cells = {}
        self.region_segments = {}
        for cid in range(len(self.cells)):
            r = find(cid)
            self.region_cells.setdefault(r, []).append(cid)
        self._segment_region = {}
        for e, s, a in seg_pairs:
            r = find(self.arc_cell[a])
            self.region_segments[r] = self.region_segments.get(r, 0) + 1
            self._segment_region[(e, s)] = r
        roots = {find(c) for c, _ in self.corner_cell.items()} if False else None
        vroots = {find(c) for c in self.corner_cell.values()}
        assert len(vroots) == 1, "vertex corners must share one region"
        self.vertex_region = vroots.pop()
        self.regions = sorted(self.region_cells)

    # -- region queries ------------------------------------------------------------

    def region_of_cell(self, cid):
        return self._find(cid)

    def chi(self, region):
        r = self._find(region)
        return (
            len(self.region_cells[r])
            - self.region_segments.get(r, 0)
            + (1 if r == self.vertex_region else 0)
        )

    def corner_count(self, region):
        r = self._find(region)
        return sum(self.cell_corners[c] for c in self.region_cells[r])

    def region_of_segment(self, edge, seg):
        return self._segment_region[(edge, seg)]

    def region_of_overlay_dart(self, dart):
        uid, role = dart
        x = self.ov.crossings[uid]
        ch = x.ca if role in (A_OUT, A_IN) else x.cb
        ci, n = self._piece_of_overlay[uid][(ch.comp.key, ch.k)]
        if role in (A_OUT, B_OUT):
            d = (x.tri, ("s", ci, n + 1), 0)
        else:
            d = (x.tri, ("s", ci, n), 1)
        return self._find(self.cell_of_dart[d])

    # -- boundary walks ---------------------------------------------------------------

    def _next_walk_dart(self, d):
        d = self.next_local[d]
        while d[1][0] == "a":
            tri, (_, i, j), orient = d
            assert orient == 0, "outer dart inside an interior face"
            pt = self._arc_partner[(tri, i, j)]
            d = self.next_local[(pt[0], ("a", pt[1], pt[2]), 0)]
        return d

    def walks(self):
        """Region boundary walks as cyclic lists of strand-piece darts."""
        if self._walks is not None:
            return self._walks
        seen = set()
        out = []
        for d0 in self.next_local:
            if d0[1][0] != "s" or d0 in seen:
                continue
            walk = []
            d = d0
            while True:
                walk.append(d)
                seen.add(d)
                d = self._next_walk_dart(d)
                if d == d0:
                    break
            out.append((self._find(self.cell_of_dart[d0]), walk))
        self._walks = out
        return out

    def walks_of_region(self, region):
        r = self._find(region)
        return [w for reg, w in self.walks() if reg == r]

    def walk_comp_sides(self, walk):
        """(comp, side) pairs the walk runs along; side 0 = left of the strand."""
        sides = set()
        for tri, (_, ci, n), orient in walk:
            ch = self.tri_chords[tri][ci]
            sides.add((ch.comp.key, 0 if orient == 0 else 1))
        return sides

    def walk_steps(self, walk):
        """Itinerary of the closed curve running parallel to a boundary walk."""
        steps = []
        for d, d2 in zip(walk, walk[1:] + walk[:1]):
            tri, (_, ci, n), orient = d
            ch = self.tri_chords[tri][ci]
            # end node of d in its direction
            nodes = self._chord_nodes(tri, ci)
            end = nodes[n + 1] if orient == 0 else nodes[n]
            if end[0] != "p":
                continue  # turned at a crossing
            # the walk crosses the edge at this passage
            passage = self.piece_info[(tri, end[1], end[2])]
            steps.append(passage.side if orient == 0 else passage.side ^ 1)
        return steps

    def _chord_nodes(self, tri, ci):
        ch = self.tri_chords[tri][ci]
        nodes = [("p", ch.a[0], ch.a[1])]
        nodes += [("x", x.uid) for x in ch.crossings]
        nodes.append(("p", ch.b[0], ch.b[1]))
        return nodes
