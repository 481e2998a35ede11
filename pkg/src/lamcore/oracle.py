"""Brute-force geometric intersection oracle.

Independent cross-check for the overlay engine on small instances.  The
surface is realized as a convex 4g-gon with exact rational vertices and the
fan triangulation drawn with straight lines; a connected normal curve is
placed as an explicit polyline (curve 0 keeps parameters in (0, 1/2) on every
edge, curve 1 in (1/2, 1)); crossings are exact segment intersections.  The
planar subdivision is computed per triangle by angular sweeps, cells are
glued across edge identifications, and any empty bigon region is removed by
literally re-drawing one of its sides next to the other.  No data structures
are shared with the main engine.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key, lru_cache


def _circle_pt(t):
    den = 1 + t * t
    return ((1 - t * t) / den, 2 * t / den)


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _seg_cross(a0, a1, b0, b1):
    """(point, parameter along a) of a proper open intersection, or None."""
    da = _sub(a1, a0)
    db = _sub(b1, b0)
    den = _cross(da, db)
    if den == 0:
        return None
    w = _sub(b0, a0)
    s = Fraction(_cross(w, db), den)
    u = Fraction(_cross(w, da), den)
    if 0 < s < 1 and 0 < u < 1:
        return (a0[0] + s * da[0], a0[1] + s * da[1]), s
    return None


class _Geom:
    """Fan triangulation of the 4g-gon with rational vertex coordinates."""

    def __init__(self, genus):
        g = genus
        self.genus = g
        n = 4 * g
        V = [_circle_pt(Fraction(k)) for k in range(n)]
        self.n_edges = 6 * g - 3
        # realization: (triangle, tail point, head point); two per edge
        self.realizations = [[] for _ in range(self.n_edges)]
        self.tris = []  # triangle -> list of (edge, side_forward?) in ccw order

        def side_edge(k):
            j, r = divmod(k, 4)
            return 2 * j + (r % 2), r < 2

        def diag(k):
            return 2 * g + k - 2

        for k in range(1, n - 1):
            tri = len(self.tris)
            P = (V[0], V[k], V[(k + 1) % n])
            raw = []
            if k == 1:
                raw.append(side_edge(0) + (P[0], P[1]))
            else:
                raw.append((diag(k), True, P[0], P[1]))
            raw.append(side_edge(k) + (P[1], P[2]))
            if k == n - 2:
                raw.append(side_edge(n - 1) + (P[2], P[0]))
            else:
                raw.append((diag(k + 1), False, P[2], P[0]))
            sides = []
            for e, fwd, p0, p1 in raw:
                tail, head = (p0, p1) if fwd else (p1, p0)
                self.realizations[e].append((tri, tail, head))
                sides.append((e, fwd))
            self.tris.append(sides)
            if k == 1:
                self.corner_pts = []
            self.corner_pts.append(P)

    def occurrence(self, edge, tri):
        for occ, (t, _, _) in enumerate(self.realizations[edge]):
            if t == tri:
                return occ
        raise AssertionError("edge not on triangle")

    def point_on(self, edge, occ, u):
        _, tail, head = self.realizations[edge][occ]
        return (tail[0] + u * (head[0] - tail[0]), tail[1] + u * (head[1] - tail[1]))


@lru_cache(maxsize=8)
def _geom(genus):
    return _Geom(genus)


def _corner_counts(w):
    return ((w[0] + w[1] - w[2]) // 2, (w[1] + w[2] - w[0]) // 2, (w[2] + w[0] - w[1]) // 2)


def _param(block, m, i):
    """Edge parameter of the i-th point (tail to head) of a curve with m points."""
    return Fraction(block, 2) + Fraction(i + 1, 2 * (m + 1))


def _trace_polyline(genus, coords, block):
    """Place a connected normal curve; returns cyclic [(edge, exit_occ, u)].

    ``exit_occ`` names the edge realization whose triangle the strand leaves
    at that event.
    """
    geom = _geom(genus)
    start = None
    for tri, sides in enumerate(geom.tris):
        for i in range(3):
            if coords[sides[i][0]] > 0:
                start = (tri, i, 0)
                break
        if start:
            break
    if start is None:
        raise ValueError("empty curve")
    events = []
    tri, i, p = start
    total = sum(coords)
    while True:
        sides = geom.tris[tri]
        w = [coords[e] for e, _ in sides]
        n = _corner_counts(w)
        if p < n[(i - 1) % 3]:
            i_out = (i - 1) % 3
            p_out = w[i_out] - 1 - p
        else:
            i_out = (i + 1) % 3
            p_out = w[i] - p - 1
        e_out, fwd_out = sides[i_out]
        m = coords[e_out]
        tail_idx = p_out if fwd_out else m - 1 - p_out
        occ_out = geom.occurrence(e_out, tri)
        events.append((e_out, occ_out, _param(block, m, tail_idx)))
        occ_in = 1 - occ_out
        tri2 = geom.realizations[e_out][occ_in][0]
        i2 = next(
            ii for ii, (ee, _) in enumerate(geom.tris[tri2]) if ee == e_out
        )
        fwd_in = geom.tris[tri2][i2][1]
        p2 = tail_idx if fwd_in else m - 1 - tail_idx
        tri, i, p = tri2, i2, p2
        if (tri, i, p) == start:
            break
        if len(events) > 2 * total:
            raise ValueError("curve is not connected")
    if len(events) != total:
        raise ValueError("curve is not connected")
    return events


class _State:
    def __init__(self, genus, pa, pb):
        self.geom = _geom(genus)
        self.curves = [list(pa), list(pb)]

    def strands(self):
        """Per triangle: (owner, event index k, P, Q) for the strand k -> k+1."""
        geom = self.geom
        out = [[] for _ in geom.tris]
        for owner, evs in enumerate(self.curves):
            L = len(evs)
            for k in range(L):
                e1, occ1, u1 = evs[k]
                e2, occ2, u2 = evs[(k + 1) % L]
                tri = geom.realizations[e1][1 - occ1][0]
                assert geom.realizations[e2][occ2][0] == tri, "broken polyline"
                p = geom.point_on(e1, 1 - occ1, u1)
                q = geom.point_on(e2, occ2, u2)
                out[tri].append((owner, k, p, q))
        return out

    def crossings(self):
        n = 0
        for strands in self.strands():
            for oa, ka, p0, p1 in strands:
                if oa != 0:
                    continue
                for ob, kb, q0, q1 in strands:
                    if ob == 1 and _seg_cross(p0, p1, q0, q1) is not None:
                        n += 1
        return n

    # -- planar subdivision ------------------------------------------------------

    def census(self):
        geom = self.geom
        tri_strands = self.strands()
        cells = []
        parent = {}

        def find(a):
            root = a
            while parent.setdefault(root, root) != root:
                root = parent[root]
            while parent[a] != root:
                parent[a], a = root, parent[a]
            return root

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        edge_params = [[] for _ in range(geom.n_edges)]
        for owner, evs in enumerate(self.curves):
            for e, _, u in evs:
                edge_params[e].append(u)
        for lst in edge_params:
            lst.sort()

        tri_tables = []
        for tri, sides in enumerate(geom.tris):
            nodes = {}

            def node(p):
                return nodes.setdefault(p, len(nodes))

            segs = []
            # boundary sub-segments (ccw)
            for e, fwd in sides:
                occ = geom.occurrence(e, tri)
                pts = [geom.point_on(e, occ, u) for u in edge_params[e]]
                _, tail, head = geom.realizations[e][occ]
                chain = [tail] + pts + [head]
                if not fwd:
                    chain = list(reversed(chain))
                for i in range(len(chain) - 1):
                    segs.append((node(chain[i]), node(chain[i + 1]), ("edge", e)))
            corner_nodes = {node(p) for p in geom.corner_pts[tri]}
            # strand pieces, split at crossings
            cross_nodes = set()
            for oa, ka, p, q in tri_strands[tri]:
                cuts = [(Fraction(0), p)]
                for ob, kb, r, s in tri_strands[tri]:
                    if ob == oa:
                        continue
                    hit = _seg_cross(p, q, r, s)
                    if hit is not None:
                        cuts.append((hit[1], hit[0]))
                cuts.sort()
                cuts.append((Fraction(1), q))
                for i in range(len(cuts) - 1):
                    segs.append((node(cuts[i][1]), node(cuts[i + 1][1]), ("strand", oa, ka)))
                for _, pc in cuts[1:-1]:
                    cross_nodes.add(node(pc))
            coords_of = {v: k for k, v in nodes.items()}
            darts_at = {}
            for sid, (na, nb, _) in enumerate(segs):
                darts_at.setdefault(na, []).append((sid, 0))
                darts_at.setdefault(nb, []).append((sid, 1))

            def direction(d):
                na, nb, _ = segs[d[0]]
                a, b = coords_of[na], coords_of[nb]
                return _sub(b, a) if d[1] == 0 else _sub(a, b)

            def ccw_cmp(d1, d2):
                v1, v2 = direction(d1), direction(d2)
                h1 = 0 if (v1[1] > 0 or (v1[1] == 0 and v1[0] > 0)) else 1
                h2 = 0 if (v2[1] > 0 or (v2[1] == 0 and v2[0] > 0)) else 1
                if h1 != h2:
                    return -1 if h1 < h2 else 1
                c = _cross(v1, v2)
                return -1 if c > 0 else (1 if c < 0 else 0)

            rho_inv = {}
            for nd, ds in darts_at.items():
                ds.sort(key=cmp_to_key(ccw_cmp))
                for i in range(len(ds)):
                    rho_inv[ds[(i + 1) % len(ds)]] = ds[i]

            seen = set()
            for d0 in list(rho_inv):
                if d0 in seen:
                    continue
                orbit = []
                d = d0
                while True:
                    orbit.append(d)
                    seen.add(d)
                    d = rho_inv[(d[0], d[1] ^ 1)]
                    if d == d0:
                        break
                area = Fraction(0)
                for d in orbit:
                    na, nb, _ = segs[d[0]]
                    a, b = (coords_of[na], coords_of[nb]) if d[1] == 0 else (
                        coords_of[nb],
                        coords_of[na],
                    )
                    area += _cross(a, b)
                if area <= 0:
                    continue  # the face outside the triangle
                cid = len(cells)
                corner_pts = [
                    coords_of[segs[d[0]][d[1]]]
                    for d in orbit
                    if segs[d[0]][d[1]] in cross_nodes
                ]
                cells.append(
                    {
                        "tri": tri,
                        "corners": len(corner_pts),
                        "corner_pts": corner_pts,
                        "vertex": any(segs[d[0]][d[1]] in corner_nodes for d in orbit),
                        "sides": {
                            segs[d[0]][2][1:] for d in orbit if segs[d[0]][2][0] == "strand"
                        },
                        "darts": orbit,
                    }
                )
            tri_tables.append((segs, coords_of, {d: None for d in ()}))
            # map darts to cells for boundary lookups
            for cid in range(len(cells)):
                if cells[cid]["tri"] != tri:
                    continue
                for d in cells[cid]["darts"]:
                    tri_tables[tri][2][d] = cid

        # glue cells across edge identifications
        def boundary_cell(e, occ, umid):
            tri = geom.realizations[e][occ][0]
            segs, coords_of, cell_of = tri_tables[tri]
            pm = geom.point_on(e, occ, umid)
            for sid, (na, nb, tag) in enumerate(segs):
                if tag != ("edge", e):
                    continue
                a, b = coords_of[na], coords_of[nb]
                if _cross(_sub(b, a), _sub(pm, a)) != 0:
                    continue
                lo0, hi0 = min(a[0], b[0]), max(a[0], b[0])
                lo1, hi1 = min(a[1], b[1]), max(a[1], b[1])
                if lo0 <= pm[0] <= hi0 and lo1 <= pm[1] <= hi1:
                    for d in ((sid, 0), (sid, 1)):
                        if cell_of.get(d) is not None:
                            return cell_of[d]
            raise AssertionError("no cell at boundary point")

        seg_count = {}
        seg_cell = {}
        for e in range(geom.n_edges):
            ps = edge_params[e]
            for s in range(len(ps) + 1):
                lo = ps[s - 1] if s > 0 else Fraction(0)
                hi = ps[s] if s < len(ps) else Fraction(1)
                mid = (lo + hi) / 2
                c0 = boundary_cell(e, 0, mid)
                c1 = boundary_cell(e, 1, mid)
                union(c0, c1)
                seg_cell[(e, s)] = c0
        regions = {}
        for cid, data in enumerate(cells):
            r = find(cid)
            reg = regions.setdefault(
                r,
                {
                    "cells": 0,
                    "segments": 0,
                    "corners": 0,
                    "vertex": False,
                    "sides": set(),
                    "corner_pts": [],
                },
            )
            reg["cells"] += 1
            reg["corners"] += data["corners"]
            reg["corner_pts"].extend(data["corner_pts"])
            reg["vertex"] = reg["vertex"] or data["vertex"]
            reg["sides"] |= data["sides"]
        for key, cid in seg_cell.items():
            regions[find(cid)]["segments"] += 1
        out = []
        for r, reg in regions.items():
            out.append(
                {
                    "chi": reg["cells"] - reg["segments"] + (1 if reg["vertex"] else 0),
                    "corners": reg["corners"],
                    "corner_pts": reg["corner_pts"],
                    "owners": {o for o, _ in reg["sides"]},
                    "sides": reg["sides"],
                    "region": r,
                }
            )
        # open regions: chi sums to chi(S) minus the curve graph's V - E,
        # and the curve 1-complex contributes exactly -#crossings
        total_chi = sum(reg["chi"] for reg in out)
        assert total_chi == 2 - 2 * geom.genus + self.crossings(), "Euler characteristic broken"
        self._seg_region = {k: find(c) for k, c in seg_cell.items()}
        self._edge_params = edge_params
        return out

    # -- bigon removal -----------------------------------------------------------

    def _strand_pts(self, owner, k):
        evs = self.curves[owner]
        e1, occ1, u1 = evs[k]
        e2, occ2, u2 = evs[(k + 1) % len(evs)]
        return (
            self.geom.point_on(e1, 1 - occ1, u1),
            self.geom.point_on(e2, occ2, u2),
        )

    @staticmethod
    def _on_strand(p, a, b):
        if _cross(_sub(b, a), _sub(p, a)) != 0:
            return None
        d = _sub(b, a)
        t = Fraction(p[0] - a[0], d[0]) if d[0] else Fraction(p[1] - a[1], d[1])
        return t if 0 < t < 1 else None

    def _interior_passage(self, region, owner, j):
        """Does the arc bounding ``region`` pass through event j of a curve?

        At an interior passage point of the bounding arc the edge crosses the
        arc, so exactly one of the two flanking edge intervals touches the
        region; at points away from the boundary neither interval does.
        """
        e, _, u = self.curves[owner][j]
        ps = self._edge_params[e]
        i = ps.index(u)
        below = self._seg_region.get((e, i)) == region
        above = self._seg_region.get((e, i + 1)) == region
        return below != above

    def _arc_data(self, owner, ks, corners, region):
        """Travel data of one side of a bigon along one curve.

        Returns (start corner, dropped event indices in travel order); the
        arc runs between the two corner crossings in the curve's own
        orientation, starting at the returned corner.
        """
        L = len(self.curves[owner])
        kset = set(ks)
        strand_of = []
        for p in corners:
            hits = [
                k
                for k in kset
                if self._on_strand(p, *self._strand_pts(owner, k)) is not None
            ]
            assert len(hits) == 1, "corner on several strands"
            strand_of.append(hits[0])
        sa0, sa1 = strand_of
        if sa0 == sa1:
            a, b = self._strand_pts(owner, sa0)
            t0 = self._on_strand(corners[0], a, b)
            t1 = self._on_strand(corners[1], a, b)
            if len(kset) == 1:
                # the arc stays inside the strand
                return (corners[0] if t0 < t1 else corners[1]), []
            assert len(kset) == L, "arc returning to its strand must wrap"
            start = corners[0] if t0 > t1 else corners[1]
            return start, [(sa0 + 1 + j) % L for j in range(L)]
        candidates = []
        for start_corner, k_from, k_to in (
            (corners[0], sa0, sa1),
            (corners[1], sa1, sa0),
        ):
            drop = []
            j = (k_from + 1) % L
            while j != (k_to + 1) % L:
                drop.append(j)
                j = (j + 1) % L
            covered = {k_from, k_to} | {(k_from + 1 + i) % L for i in range(len(drop))}
            if covered != kset:
                continue
            if all(self._interior_passage(region, owner, j) for j in drop):
                candidates.append((start_corner, drop))
        assert len(candidates) == 1, f"ambiguous bigon arc ({len(candidates)} candidates)"
        return candidates[0]

    def smooth(self, reg):
        """Re-draw the curve-0 side of a bigon along the curve-1 side."""
        corners = reg["corner_pts"]
        assert len(corners) == 2 and corners[0] != corners[1], "not a bigon"
        a_run = [k for o, k in reg["sides"] if o == 0]
        b_run = [k for o, k in reg["sides"] if o == 1]
        x_start, a_drop = self._arc_data(0, a_run, corners, reg["region"])
        y_start, b_drop = self._arc_data(1, b_run, corners, reg["region"])
        A, B = self.curves
        aligned = x_start == y_start
        b_events = b_drop if aligned else list(reversed(b_drop))
        live = {}
        news = []
        for j in b_events:
            e, occ, u = B[j]
            news.append((e, occ if aligned else 1 - occ, self._far_param(reg, e, u, live)))
        keep = []
        dropped = set(a_drop)
        # keep events in cyclic order starting after the dropped block
        if len(dropped) == len(A):
            self.curves[0] = news
            return
        if a_drop:
            j = (a_drop[-1] + 1) % len(A)
        else:
            # arc inside a single strand k: splice after event k
            k0 = next(k for k in a_run if True)
            # the single bounding strand
            ks = sorted(set(a_run))
            assert len(ks) == 1
            j = (ks[0] + 1) % len(A)
        stop = j
        while True:
            if j not in dropped:
                keep.append(A[j])
            j = (j + 1) % len(A)
            if j == stop:
                break
        self.curves[0] = keep + news

    def _far_param(self, reg, e, u, live):
        """A fresh parameter right next to u, away from the region.

        ``live`` collects parameters inserted earlier in the same smoothing
        pass so that parallel insertions never collide.
        """
        ps = self._edge_params[e]
        i = ps.index(u)
        region_above = self._seg_region.get((e, i + 1)) == reg["region"]
        region_below = self._seg_region.get((e, i)) == reg["region"]
        assert region_above != region_below, "bigon does not touch this point"
        cur = live.setdefault(e, sorted(ps))
        j = cur.index(u)
        if region_above:
            neighbor = cur[j - 1] if j > 0 else Fraction(0)
        else:
            neighbor = cur[j + 1] if j + 1 < len(cur) else Fraction(1)
        new_u = (u + neighbor) / 2
        import bisect

        bisect.insort(cur, new_u)
        return new_u


def oracle_intersection(surface, coords_a, coords_b) -> int:
    """Exact i(a, b) for connected essential curves, by geometric reduction."""
    n, _ = oracle_census(surface, coords_a, coords_b)
    return n


def oracle_census(surface, coords_a, coords_b):
    """(crossing count, complement regions) in oracle minimal position."""
    genus = surface.genus
    pa = _trace_polyline(genus, tuple(coords_a), 0)
    pb = _trace_polyline(genus, tuple(coords_b), 1)
    st = _State(genus, pa, pb)
    before = st.crossings()
    for _ in range(before + 2):
        regs = st.census()
        bigon = next(
            (r for r in regs if r["chi"] == 1 and r["corners"] == 2 and r["owners"] == {0, 1}),
            None,
        )
        if bigon is None:
            return st.crossings(), regs
        st.smooth(bigon)
        after = st.crossings()
        assert after == before - 2, "oracle smoothing must remove two crossings"
        before = after
    raise RuntimeError("oracle reduction did not terminate")
