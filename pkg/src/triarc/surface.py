"""Two-sheeted genus-1 surface machinery: homology cuts, periods, the
normalized holomorphic differential, the Abel map and the geometric-growth
function Phi.

Conventions (verified numerically against the rotationally symmetric
closed forms):

* cycle alpha projects onto a path joining a2 -> a1, beta onto a1 -> a3;
  both lift symmetrically to the two sheets, so a cycle integral equals
  twice the path integral of the sheet-0 integrand;
* the lifted contour cycles satisfy D1 ~ alpha + beta, D2 ~ -beta,
  D3 ~ -alpha, giving the arc-collapsed forms
      oint_alpha ds/w = -2 int_{D3} ds/w_+,
      oint_beta  ds/w = -2 int_{D2} ds/w_+;
* omega = I1 + I3 and tau = -(I1 + I2) with the real arc integrals I_i;
* canonical evaluation paths start at the center into the sector between
  the second and third arcs (sector S1) and stay on the cut surface: points
  in the bounded face behind arc 1 are reached by crossing arc 3 then arc 1
  (sector S3 region) or arc 2 then arc 1 (sector S2 region), flipping sheet
  twice.
"""

from dataclasses import dataclass

import numpy as np
from matplotlib.path import Path as MplPath
from mpmath import mp, mpf, mpc

from .geometry import GeometryError, radical_values_on_chain
from .quad import (BranchTracker, chain_quadrature, richardson_limit)


@dataclass
class SurfaceConstants:
    omega: object
    tau: object
    B: object
    A: object
    alpha_period_w: object     # oint_alpha ds/w (normalization of the
                               # holomorphic differential is its reciprocal)
    I: tuple

    @property
    def a_inf0(self):
        """Abel map value at infinity on the principal sheet."""
        return (self.omega + self.B * self.tau) / 2


class CutSystem:
    """Projections of the homology cycles: alpha joins a2 -> a1 (oriented
    toward a1), beta joins a1 -> a3. Straight chords by default; a chord
    crossing the contour is replaced by a quadratic bulge away from the
    center."""

    def __init__(self, geom):
        self.geom = geom
        a1, a2, a3 = geom.spec.points
        self.alpha_path = self._build(a2, a1)
        self.beta_path = self._build(a1, a3)
        self.alpha_float = np.array([complex(z) for z in self.alpha_path])
        self.beta_float = np.array([complex(z) for z in self.beta_path])

    def _build(self, p, q):
        geom = self.geom
        for lam in (0, mpf("0.15"), mpf("0.3"), mpf("0.5"), mpf("0.8")):
            if lam == 0:
                verts = [p, q]
            else:
                mid = (p + q) / 2
                away = mid - geom.a0
                away = away / abs(away) if abs(away) > 0 else mpc(1)
                verts = []
                nseg = 12
                for k in range(nseg + 1):
                    t = mpf(k) / nseg
                    bump = lam * geom.scale * 4 * t * (1 - t)
                    verts.append(p * (1 - t) + q * t + bump * away)
            try:
                for k in range(len(verts) - 1):
                    u, v = verts[k], verts[k + 1]
                    if k == 0:
                        u = u + (v - u) * mpf("1e-5")
                    if k == len(verts) - 2:
                        v = v - (v - u) * mpf("1e-5")
                    if geom._crossings(u, v) != 0:
                        raise GeometryError("cut crosses contour")
                return verts
            except GeometryError:
                continue
        raise GeometryError("could not place homology cut off the contour")

    def midpoint(self, which):
        path = self.alpha_path if which == "alpha" else self.beta_path
        if len(path) == 2:
            return (path[0] + path[1]) / 2
        return path[len(path) // 2]

    def left_normal(self, which):
        path = self.alpha_path if which == "alpha" else self.beta_path
        k = len(path) // 2
        if len(path) == 2:
            t = path[1] - path[0]
        else:
            t = path[min(k + 1, len(path) - 1)] - path[k - 1]
        return mpc(0, 1) * t / abs(t)


class Surface:
    """Periods, Abel map, and Phi on the cut surface for a fixed geometry."""

    def __init__(self, geom, cuts=None):
        self.geom = geom
        self.cuts = cuts if cuts is not None else CutSystem(geom)
        self._frame_cache = {}
        self._route_cache = {}
        self._anchor_cache = {}
        self._compute_periods()
        self._build_faces()

    # ------------------------------------------------------------------
    # periods and constants
    # ------------------------------------------------------------------

    def _collapsed_cycle(self, arc_idx, numer):
        arc = self.geom.arcs[arc_idx]
        return 2 * mp.fsum(nd.w * numer(nd) / wp
                           for nd, wp in zip(arc.chain, arc.wplus))

    def _compute_periods(self):
        geom = self.geom
        self.alpha_w = -self._collapsed_cycle(2, lambda nd: 1)
        self.beta_w = -self._collapsed_cycle(1, lambda nd: 1)
        self.norm = 1 / self.alpha_w
        B = self.beta_w / self.alpha_w
        if not B.imag > 0:
            raise GeometryError("period ratio has non-positive imaginary part")
        I = geom.I_real
        for v in I:
            if not (0 < v < 1):
                raise GeometryError("real period outside (0,1)")
        omega = I[0] + I[2]
        tau = -(I[0] + I[1])
        A = (1 + omega) / 2 + B * (1 + tau) / 2
        self.constants = SurfaceConstants(omega=omega, tau=tau, B=B, A=A,
                                          alpha_period_w=self.alpha_w,
                                          I=tuple(I))

    def direct_cycle_checks(self):
        """Cross-check the collapsed cycle integrals against quadrature over
        the lifted cut paths (independent integration route)."""
        geom = self.geom
        out = {}
        for which, path, coll in (("alpha", self.cuts.alpha_path, self.alpha_w),
                                  ("beta", self.cuts.beta_path, self.beta_w)):
            nodes, vals = geom.cut_chain(path)
            direct = 2 * mp.fsum(nd.w / v for nd, v in zip(nodes, vals))
            out[which + "_w"] = abs(direct - coll)
            directG = 2 * mp.fsum(nd.w * (nd.s - geom.a0) / v
                                  for nd, v in zip(nodes, vals))
            if which == "alpha":
                out["tau"] = abs(directG / (2 * mp.pi * mpc(0, 1))
                                 - self.constants.tau)
            else:
                out["omega"] = abs(-directG / (2 * mp.pi * mpc(0, 1))
                                   - self.constants.omega)
        return out

    # ------------------------------------------------------------------
    # faces and navigation
    # ------------------------------------------------------------------

    def _build_faces(self):
        geom = self.geom
        arc1, arc2, arc3 = geom.arcs
        fa = list(arc1.float_nodes[::-1]) + \
            list(self.cuts.alpha_float[::-1]) + list(arc2.float_nodes)
        fb = list(arc1.float_nodes[::-1]) + \
            list(self.cuts.beta_float) + list(arc3.float_nodes[::-1])
        self._poly_fa = MplPath(np.array([(z.real, z.imag) for z in fa]))
        self._poly_fb = MplPath(np.array([(z.real, z.imag) for z in fb]))
        self._obstacles = [a.float_nodes for a in geom.arcs] + \
            [self.cuts.alpha_float, self.cuts.beta_float]
        # canonical exit into sector S1 and crossing gates
        r_exit = mpf("0.3") * min(abs(a - geom.a0) for a in geom.spec.points)
        self.e0 = geom.a0 + r_exit * mp.exp(mpc(0, 1) * geom.sector_bis[1])
        self._gates = {}
        delta = mpf("0.05") * geom.scale
        for i, arc in enumerate(geom.arcs):
            k = len(arc.nodes) // 2
            # gate pier sits mid-chord so the crossing test is unambiguous
            m = (arc.nodes[k] + arc.nodes[k + 1]) / 2
            nhat = geom.arc_left_normal(arc, m)
            plus, minus = m + delta * nhat, m - delta * nhat
            if self._count_all(plus, minus) != 1:
                raise GeometryError(f"gate through arc {i + 1} is ambiguous")
            self._gates[i] = (m, plus, minus)

    def _count_all(self, p, q):
        return self.geom._crossings(p, q, obstacles=self._obstacles)

    def face_of(self, z):
        pt = (float(mpf(mpc(z).real)), float(mpf(mpc(z).imag)))
        if self._poly_fa.contains_point(pt):
            return "Fa"
        if self._poly_fb.contains_point(pt):
            return "Fb"
        return "O"

    def _navigate(self, p, q):
        """Waypoints (excluding p, including q) for a crossing-free walk."""
        try:
            if self._count_all(p, q) == 0:
                return [q]
        except GeometryError:
            pass
        # fallback: go out radially, around a far ring, and back in
        geom = self.geom
        R = 3 * geom.scale
        a0 = geom.a0
        best = None
        for nring in (24,):
            ring = [a0 + R * mp.exp(mpc(0, 1) * (2 * mp.pi * k / nring))
                    for k in range(nring)]
            nodes = [p] + ring + [q]
            n = len(nodes)
            dist = [mp.inf] * n
            prev = [None] * n
            dist[0] = mpf(0)
            todo = set(range(n))
            while todo:
                u = min(todo, key=lambda k: dist[k])
                todo.discard(u)
                if dist[u] is mp.inf:
                    break
                if u == n - 1:
                    break
                for v in list(todo):
                    try:
                        if self._count_all(nodes[u], nodes[v]) != 0:
                            continue
                    except GeometryError:
                        continue
                    d = dist[u] + abs(nodes[v] - nodes[u])
                    if d < dist[v]:
                        dist[v] = d
                        prev[v] = u
            if prev[n - 1] is not None:
                path = [n - 1]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                best = [nodes[k] for k in reversed(path)][1:]
                break
        if best is None:
            raise GeometryError("no crossing-free route found")
        return best

    def route_to(self, z, face=None):
        """Canonical waypoints from the center to z on the principal sheet.

        The returned list starts at the center; consecutive points are joined
        by straight segments. Crossing an arc is encoded simply by a segment
        passing through it at its gate."""
        z = mpc(z)
        face = face or self.face_of(z)
        geom = self.geom
        if face == "O":
            pts = [geom.a0, self.e0] + self._navigate(self.e0, z)
        elif face == "Fa":
            # cross arc 3 from its + (outer) side, then arc 1 from its + side
            _, g3p, g3m = self._gates[2]
            _, g1p, g1m = self._gates[0]
            pts = [geom.a0, self.e0] + self._navigate(self.e0, g3p) + [g3m] \
                + self._navigate(g3m, g1p) + [g1m] + self._navigate(g1m, z)
        elif face == "Fb":
            # cross arc 2 from its - (outer) side, then arc 1 toward + side
            _, g2p, g2m = self._gates[1]
            _, g1p, g1m = self._gates[0]
            pts = [geom.a0, self.e0] + self._navigate(self.e0, g2m) + [g2p] \
                + self._navigate(g2p, g1m) + [g1p] + self._navigate(g1p, z)
        else:
            raise ValueError(face)
        return self._refine(pts)

    def _refine(self, pts):
        """Split segments so that chord length stays below the distance to
        the nearest branch point (keeps per-chord quadrature geometric)."""
        bps = [self.geom.a0] + list(self.geom.spec.points)
        out = [pts[0]]
        for q in pts[1:]:
            stack = [(out[-1], q)]
            seg = []
            while stack:
                u, v = stack.pop()
                d = min(min(abs(u - b) for b in bps), min(abs(v - b) for b in bps))
                if abs(v - u) > mpf("0.7") * d and abs(v - u) > mpf("1e-12") * self.geom.scale:
                    m = (u + v) / 2
                    stack.append((m, v))
                    stack.append((u, m))
                else:
                    seg.append(v)
            out.extend(seg)
        return out

    # ------------------------------------------------------------------
    # canonical frames: Abel map and log Phi
    # ------------------------------------------------------------------

    def _integrate_route(self, pts, end_is_branch=False):
        """(abel, logphi) integrals along a canonical route."""
        geom = self.geom
        nodes = chain_quadrature(pts, sing_left=True, sing_right=end_is_branch)
        bps = [geom.a0] + list(geom.spec.points)
        # seed on the first chord, away from the center
        first_len = abs(pts[1] - pts[0])
        seed_j = max(k for k, nd in enumerate(nodes)
                     if abs(nd.dL) <= first_len) - 2
        seed_j = max(seed_j, 1)
        seed_w = geom.w(nodes[seed_j].s)
        endR = pts[-1] if end_is_branch else None
        vals = radical_values_on_chain(bps, geom.a0, endR, nodes, seed_j,
                                       seed_w, geom.scale)
        a_raw = mp.fsum(nd.w / v for nd, v in zip(nodes, vals))
        g_raw = mp.fsum(nd.w * (nd.s - geom.a0) / v
                        for nd, v in zip(nodes, vals))
        return self.norm * a_raw, g_raw

    def frame(self, z, face=None):
        """Canonical (abel, logphi) at z on the principal sheet."""
        key = (mp.dps, str(mpc(z)))
        if key not in self._frame_cache:
            pts = self.route_to(z, face)
            self._frame_cache[key] = self._integrate_route(pts)
        return self._frame_cache[key]

    def abel(self, z, sheet=0):
        a, _ = self.frame(z)
        return a if sheet == 0 else -a

    def log_phi(self, z, sheet=0):
        _, g = self.frame(z)
        return g if sheet == 0 else -g

    def phi(self, z, sheet=0):
        return mp.exp(self.log_phi(z, sheet))

    def abel_branch_point(self, i):
        """Abel map at the ramification point over a_i (canonical route)."""
        key = ("bp", mp.dps, i)
        if key not in self._anchor_cache:
            ai = self.geom.spec.points[i]
            off = -self.geom.arcs[i].u_start
            near = ai + mpf("0.1") * self.geom.scale * off
            pts = self.route_to(near) + [ai]
            self._anchor_cache[key] = self._integrate_route(
                self._refine(pts), end_is_branch=True)
        return self._anchor_cache[key][0]

    # -- local frames near the center ------------------------------------

    def sector_anchor(self, k):
        """Canonical frame at a fixed anchor point inside sector S_k."""
        key = ("anchor", mp.dps, k)
        if key not in self._anchor_cache:
            geom = self.geom
            r = mpf("0.3") * min(abs(a - geom.a0) for a in geom.spec.points)
            p = geom.a0 + r * mp.exp(mpc(0, 1) * geom.sector_bis[k])
            face = {1: "O", 2: "Fb", 3: "Fa"}[k]
            got = self.face_of(p)
            if got != face:
                raise GeometryError(
                    f"sector anchor S{k} fell into face {got}; "
                    "contour too distorted")
            a_val, g_val = self.frame(p, face)
            # branch-consistent w at the anchor: continue from the route seed
            pts = self.route_to(p, face)
            nodes = chain_quadrature(pts, sing_left=True)
            first_len = abs(pts[1] - pts[0])
            seed_j = max(kk for kk, nd in enumerate(nodes)
                         if abs(nd.dL) <= first_len) - 2
            seed_j = max(seed_j, 1)
            seed_w = geom.w(nodes[seed_j].s)
            bps = [geom.a0] + list(geom.spec.points)
            vals = radical_values_on_chain(bps, geom.a0, None, nodes, seed_j,
                                           seed_w, geom.scale)
            tr = BranchTracker(geom.P, nodes[-1].s, vals[-1])
            w_p = tr.advance(p)
            self._anchor_cache[key] = (p, a_val, g_val, w_p)
        return self._anchor_cache[key]

    def local_frame(self, z):
        """(abel, logphi, w) at a point near the center, continued from the
        anchor of its sector. Works on the principal sheet; use the
        involution for the other sheet."""
        geom = self.geom
        z = mpc(z)
        k = geom.sector_of(z)
        p, a_p, g_p, w_p = self.sector_anchor(k)
        pts = self._refine([p, z])
        nodes = chain_quadrature(pts, sing_left=False, sing_right=False)
        vals = [None] * len(nodes)
        tr = BranchTracker(geom.P, p, w_p)
        for j, nd in enumerate(nodes):
            vals[j] = tr.advance(nd.s)
        w_z = tr.advance(z)
        da = self.norm * mp.fsum(nd.w / v for nd, v in zip(nodes, vals))
        dg = mp.fsum(nd.w * (nd.s - geom.a0) / v for nd, v in zip(nodes, vals))
        return a_p + da, g_p + dg, w_z

    # ------------------------------------------------------------------
    # derived quantities
    # ------------------------------------------------------------------

    def capacity(self, base_radius=8):
        """Logarithmic capacity of the contour from the growth of Phi:
        log cap = lim (log|z| - log|Phi(z)|), Richardson-extrapolated."""
        geom = self.geom
        vals = []
        for k in range(4):
            R = base_radius * (2 ** k) * geom.scale
            z = geom.a0 + R * mp.exp(mpc(0, 1) * geom.sector_bis[1])
            _, g = self.frame(z)
            vals.append(mp.log(abs(z)) - g.real)
        return mp.exp(richardson_limit(vals))

    def reduce_lattice(self, v):
        """v = v0 + m + n*B with v0 in the centered fundamental cell."""
        B = self.constants.B
        n = mp.nint(v.imag / B.imag)
        m = mp.nint((v - n * B).real)
        return v - m - n * B, int(m), int(n)

    def lattice_distance(self, u, v):
        d, _, _ = self.reduce_lattice(u - v)
        # account for cell corners: also try neighboring lattice shifts
        best = abs(d)
        B = self.constants.B
        for dm in (-1, 0, 1):
            for dn in (-1, 0, 1):
                best = min(best, abs(d + dm + dn * B))
        return best


def compute_constants(geom, cuts=None):
    """SurfaceConstants for a traced geometry (convenience wrapper)."""
    return Surface(geom, cuts).constants
