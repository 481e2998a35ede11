"""Integral first homology of the surface, with the intersection form.

The 2g polygon-side edges are vertex loops generating H_1.  A transverse
curve pairs with each such loop by its signed edge crossings (positive when
passing from the left triangle to the right one), which recovers its class
exactly: the Gram matrix of the intersection form on the loop classes is
measured once from the push-offs of the loops themselves, and the pairing
vector is solved through it.  Dehn twists act by transvections, giving every
mapping class an exact integer matrix; this separates the hyperelliptic
involution (which acts as -1 here) from the identity even though it fixes
every curve class on genus two.
"""

from __future__ import annotations

from fractions import Fraction

from . import engine
from .fixtures import _edge_pushoff


class H1Data:
    def __init__(self, surface):
        self.surface = surface
        g = surface.genus
        self.rank = 2 * g
        measured = []
        for i in range(self.rank):
            steps = engine.taut_steps(surface, _edge_pushoff(surface, i))
            measured.append(self.pairings(steps))
        # each push-off is traced with an arbitrary orientation, so row i is
        # eps_i * <e_i, e_j>; recover the signs from antisymmetry
        eps = [0] * self.rank
        for i in range(self.rank):
            if eps[i]:
                continue
            eps[i] = 1
            stack = [i]
            while stack:
                a = stack.pop()
                for b in range(self.rank):
                    if measured[a][b] and not eps[b]:
                        # eps_a * M[a][b] = -eps_b * M[b][a]
                        eps[b] = -eps[a] * measured[a][b] * measured[b][a]
                        eps[b] = 1 if eps[b] > 0 else -1
                        assert measured[b][a] != 0
                        stack.append(b)
        self.gram = [
            [eps[i] * measured[i][j] for j in range(self.rank)] for i in range(self.rank)
        ]
        for i in range(self.rank):
            assert self.gram[i][i] == 0, "loop pairs with itself"
            for j in range(self.rank):
                assert self.gram[i][j] == -self.gram[j][i], "form is not alternating"

    def pairings(self, steps):
        """Signed crossing counts with the 2g basis loops."""
        p = [0] * self.rank
        for s in steps:
            e = s >> 1
            if e < self.rank:
                p[e] += 1 if (s & 1) == 0 else -1
        return p

    def class_of_steps(self, steps):
        """Coefficients of the curve's class in the basis loop classes."""
        return self._solve(self.pairings(steps))

    def class_of_coords(self, coords):
        return self.class_of_steps(engine.taut_steps(self.surface, coords))

    def _solve(self, p):
        # coefficients c with sum_i c_i * gram[i][j] = p[j]
        n = self.rank
        M = [[Fraction(self.gram[i][j]) for j in range(n)] for i in range(n)]
        rhs = [Fraction(x) for x in p]
        cols = list(range(n))
        sol = [Fraction(0)] * n
        # Gaussian elimination on the transposed system
        A = [[M[i][j] for i in range(n)] + [rhs[j]] for j in range(n)]
        piv = []
        r = 0
        for c in range(n):
            pr = next((i for i in range(r, n) if A[i][c] != 0), None)
            if pr is None:
                continue
            A[r], A[pr] = A[pr], A[r]
            pv = A[r][c]
            A[r] = [x / pv for x in A[r]]
            for i in range(n):
                if i != r and A[i][c] != 0:
                    f = A[i][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[r])]
            piv.append(c)
            r += 1
        assert r == n, "intersection form is degenerate"
        for i, c in enumerate(piv):
            sol[c] = A[i][n]
        out = []
        for x in sol:
            assert x.denominator == 1, "non-integral homology class"
            out.append(int(x))
        return out

    def pair(self, u, v):
        """Intersection form on coefficient vectors."""
        total = 0
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.gram[i]
            for j, vj in enumerate(v):
                if vj:
                    total += ui * row[j] * vj
        return total

    def twist_matrix(self, curve_coords, sign):
        """Transvection of the twist about a curve, as columns.

        The library's positive twist acts on classes by v -> v - <v, c> c
        (verified against traced twist images).
        """
        c = self.class_of_coords(curve_coords)
        n = self.rank
        cols = []
        for j in range(n):
            basis = [1 if i == j else 0 for i in range(n)]
            coef = self.pair(basis, c)
            cols.append([basis[i] - sign * coef * c[i] for i in range(n)])
        # matrix stored column-major: M[j] is the image of basis vector j
        return tuple(tuple(col) for col in cols)

    @staticmethod
    def identity(n):
        return tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))

    @staticmethod
    def matmul(a, b):
        # column-major: (a @ b)[j] = a applied to b's column j
        n = len(a)
        out = []
        for j in range(n):
            col = [0] * n
            for k in range(n):
                bkj = b[j][k]
                if bkj:
                    ak = a[k]
                    for i in range(n):
                        col[i] += ak[i] * bkj
            out.append(tuple(col))
        return tuple(out)

    @staticmethod
    def apply_matrix(m, v):
        n = len(m)
        out = [0] * n
        for j, vj in enumerate(v):
            if vj:
                col = m[j]
                for i in range(n):
                    out[i] += col[i] * vj
        return out
