"""Rational measured laminations as weighted multicurves.

A WeightedMulticurve is a finite set of pairwise disjoint, pairwise
non-isotopic essential simple closed curves, each carrying a positive
rational weight.  Geometric intersection numbers are exact; the pairwise
curve intersection is computed from a minimal-position overlay and memoized.
A VectorLamination carries a pair of non-negative weights per component and
models laminations valued in the positive quadrant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import engine
from .errors import (
    EmptyLamination,
    NonPositiveScale,
    SupportOutsidePiece,
    SurfaceMismatch,
)
from .surface import NormalMulticurve, trace_components


def _frac(x):
    f = Fraction(x)
    return f


@lru_cache(maxsize=None)
def _primitive_intersection(surface, ca, cb):
    if ca == cb:
        return 0
    ov = engine.overlay_of(
        surface,
        [engine.taut_steps(surface, ca)],
        [engine.taut_steps(surface, cb)],
    )
    return len(ov.crossings)


def primitive_intersection(surface, coords_a, coords_b) -> int:
    """Exact geometric intersection number of two connected curves."""
    a, b = tuple(coords_a), tuple(coords_b)
    if a > b:
        a, b = b, a
    return _primitive_intersection(surface, a, b)


class WeightedMulticurve:
    """components: tuple of (coords, weight) with canonical taut coords."""

    __slots__ = ("surface", "components")

    def __init__(self, surface, components):
        merged = {}
        for coords, weight in components:
            if isinstance(coords, NormalMulticurve):
                coords = coords.coords
            weight = _frac(weight)
            if weight <= 0:
                raise NonPositiveScale("weights must be positive")
            for comp, mult in trace_components(NormalMulticurve(surface, coords)):
                canon = engine.canonical_coords(surface, comp.coords)
                merged[canon] = merged.get(canon, Fraction(0)) + mult * weight
        comps = tuple(sorted(merged.items()))
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                if primitive_intersection(surface, comps[i][0], comps[j][0]):
                    raise ValueError("multicurve components must be disjoint")
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, *a):
        raise AttributeError("WeightedMulticurve is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, surface):
        return cls(surface, [])

    @classmethod
    def of(cls, *pairs, surface=None):
        """Build from (curve, weight) pairs of NormalMulticurve values."""
        pairs = list(pairs)
        if surface is None:
            surface = pairs[0][0].surface
        return cls(surface, [(c, w) for c, w in pairs])

    # -- basics ----------------------------------------------------------------

    def is_zero(self):
        return not self.components

    @property
    def weights(self):
        return tuple(w for _, w in self.components)

    def curves(self):
        return tuple(NormalMulticurve(self.surface, c) for c, _ in self.components)

    def weighted_coords(self):
        """Rational vector of weighted edge crossings (injective on classes)."""
        out = [Fraction(0)] * self.surface.n_edges
        for coords, w in self.components:
            for e, c in enumerate(coords):
                out[e] += w * c
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, WeightedMulticurve)
            and self.surface == other.surface
            and self.components == other.components
        )

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        if not self.components:
            return "WeightedMulticurve(0)"
        return "WeightedMulticurve(" + " + ".join(f"{w}*{c}" for c, w in self.components) + ")"

    def to_json(self):
        return {
            "components": [
                {"coords": list(c), "weight": f"{w.numerator}/{w.denominator}"}
                for c, w in self.components
            ]
        }

    @classmethod
    def from_json(cls, surface, doc):
        return cls(
            surface,
            [(tuple(c["coords"]), Fraction(c["weight"])) for c in doc["components"]],
        )


class VectorLamination:
    """Support curves with weight pairs (w1, w2), w1 + w2 > 0 per component."""

    __slots__ = ("surface", "components")

    def __init__(self, surface, components):
        comps = []
        for coords, pair in components:
            if isinstance(coords, NormalMulticurve):
                coords = coords.coords
            w1, w2 = _frac(pair[0]), _frac(pair[1])
            if w1 < 0 or w2 < 0 or w1 + w2 == 0:
                raise NonPositiveScale("vector weights must be >= 0 with positive sum")
            comps.append((tuple(coords), (w1, w2)))
        comps = tuple(sorted(comps))
        support = [c for c, _ in comps]
        if len(set(support)) != len(support):
            raise ValueError("duplicate support component")
        for i in range(len(support)):
            for j in range(i + 1, len(support)):
                if primitive_intersection(surface, support[i], support[j]):
                    raise ValueError("support curves must be disjoint")
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, *a):
        raise AttributeError("VectorLamination is immutable")

    def is_empty(self):
        return not self.components

    def project(self, which):
        """First or second coordinate as a WeightedMulticurve (which in 1, 2)."""
        idx = which - 1
        return WeightedMulticurve(
            self.surface,
            [(c, w[idx]) for c, w in self.components if w[idx] > 0],
        )

    def __eq__(self, other):
        return (
            isinstance(other, VectorLamination)
            and self.surface == other.surface
            and self.components == other.components
        )

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "VectorLamination(" + ", ".join(f"{c}:{w}" for c, w in self.components) + ")"

    def to_json(self):
        return {
            "components": [
                {
                    "coords": list(c),
                    "weights": [
                        f"{w[0].numerator}/{w[0].denominator}",
                        f"{w[1].numerator}/{w[1].denominator}",
                    ],
                }
                for c, w in self.components
            ]
        }


def _check_same_surface(x, y):
    if x.surface != y.surface:
        raise SurfaceMismatch("laminations live on different surfaces")


def intersection_number(x: WeightedMulticurve, y: WeightedMulticurve) -> Fraction:
    """Bonahon pairing of weighted multicurves: exact and bilinear."""
    _check_same_surface(x, y)
    total = Fraction(0)
    for ca, wa in x.components:
        for cb, wb in y.components:
            total += wa * wb * primitive_intersection(x.surface, ca, cb)
    return total


def nowhere_transverse(x: WeightedMulticurve, y: WeightedMulticurve) -> bool:
    """True iff every pair of components is disjoint (they merge into one
    vector-valued lamination)."""
    _check_same_surface(x, y)
    return all(
        primitive_intersection(x.surface, ca, cb) == 0
        for ca, _ in x.components
        for cb, _ in y.components
    )


def merge(x: WeightedMulticurve, y: WeightedMulticurve) -> VectorLamination:
    """The vector lamination (x, y); requires nowhere transverse inputs."""
    _check_same_surface(x, y)
    if not nowhere_transverse(x, y):
        raise ValueError("laminations are transverse somewhere")
    wx = dict(x.components)
    wy = dict(y.components)
    comps = []
    for c in sorted(set(wx) | set(wy)):
        comps.append((c, (wx.get(c, Fraction(0)), wy.get(c, Fraction(0)))))
    return VectorLamination(x.surface, comps)


def add(v: VectorLamination) -> WeightedMulticurve:
    """Total lamination with per-component weight w1 + w2."""
    return WeightedMulticurve(
        v.surface, [(c, w[0] + w[1]) for c, w in v.components]
    )


def scale(x: WeightedMulticurve, t) -> WeightedMulticurve:
    t = _frac(t)
    if t <= 0:
        raise NonPositiveScale(f"scale factor must be positive, got {t}")
    return WeightedMulticurve(x.surface, [(c, w * t) for c, w in x.components])


def _steps_of(x: WeightedMulticurve):
    return [engine.taut_steps(x.surface, c) for c, _ in x.components]


def fills(x: WeightedMulticurve, y: WeightedMulticurve, piece=None) -> bool:
    """Do x and y fill the piece (default: the whole surface)?

    True iff every complementary region of their union in minimal position,
    within the piece, is a disk or an annulus parallel to the piece boundary.
    """
    _check_same_surface(x, y)
    surface = x.surface
    if piece is None or piece.carrier is None or not piece.carrier.system_steps:
        if piece is not None and piece.carrier is None:
            raise SupportOutsidePiece("piece carries no arrangement")
        if x.is_zero() or y.is_zero():
            return False
        ov = engine.overlay_of(surface, _steps_of(x), _steps_of(y))
        arr = ov.arrangement()
        return all(arr.chi(r) == 1 for r in arr.regions)
    carrier = piece.carrier
    sys_steps = carrier.system_steps
    for lam in (x, y):
        for c, _ in lam.components:
            if not carrier.contains_curve(engine.taut_steps(surface, c)):
                raise SupportOutsidePiece(f"component {c} not in the piece")
    if x.is_zero() or y.is_zero():
        return False
    ov = engine.overlay_of(surface, _steps_of(x), _steps_of(y), sys_steps, protect=2)
    arr = ov.arrangement()
    piece_of = _regions_by_piece(arr, carrier)
    ok = True
    for r in arr.regions:
        if piece_of[r] != carrier.region:
            continue
        chi = arr.chi(r)
        if chi == 1:
            continue
        if chi == 0:
            walks = arr.walks_of_region(r)
            if len(walks) == 2 and any(
                all(key[0] == 2 for key, _ in arr.walk_comp_sides(w)) for w in walks
            ):
                continue
        ok = False
        break
    return ok


def _regions_by_piece(arr, carrier):
    """Map regions of an (x, y, system) arrangement to cut-piece regions.

    Regions touching an edge segment project directly (the system passages
    keep their canonical order); the rest are flooded across x/y strands,
    which never separate pieces.
    """
    ov = arr.ov
    sys_arr = carrier.arrangement
    piece_of = {}
    # project anchored regions through edge segments
    for (e, s), r in arr._segment_region.items():
        if r in piece_of:
            continue
        lst = ov.edge_lists[e]
        s_sys = sum(1 for p in lst[:s] if p.comp.did == 2)
        piece_of[r] = sys_arr.region_of_segment(e, s_sys)
    # flood the rest across non-system strand sides
    pending = [r for r in arr.regions if r not in piece_of]
    if pending:
        adj = {}
        for tri, chords in enumerate(arr.tri_chords):
            for ci, ch in enumerate(chords):
                if ch.comp.did == 2:
                    continue
                for n in range(len(ch.crossings) + 1):
                    r0 = arr.region_of_cell(arr.cell_of_dart[(tri, ("s", ci, n), 0)])
                    r1 = arr.region_of_cell(arr.cell_of_dart[(tri, ("s", ci, n), 1)])
                    adj.setdefault(r0, set()).add(r1)
                    adj.setdefault(r1, set()).add(r0)
        changed = True
        while pending and changed:
            changed = False
            rest = []
            for r in pending:
                hit = next((piece_of[s] for s in adj.get(r, ()) if s in piece_of), None)
                if hit is not None:
                    piece_of[r] = hit
                    changed = True
                else:
                    rest.append(r)
            pending = rest
        assert not pending, "unanchored region"
    return piece_of
