"""Chebotarev-center geometry: center solve, critical-arc tracing, and the
branched radical w(z).

The contour consists of the three critical trajectories of the quadratic
differential Q(z) dz^2, Q(z) = (z - a0) / prod (z - a_i), emanating from the
a_i and meeting at the center a0. Along each trajectory Re of the natural
parameter psi(z) = int sqrt(Q) dz is conserved (= 0), which gives both the
tracing direction field and a Newton projection that pins every stored node
onto the true trajectory to working accuracy.

w(z) = sqrt((z - a0)(z - a1)(z - a2)(z - a3)) is evaluated on its principal
sheet (w ~ z^2 at infinity, cut exactly on the three arcs) by continuing
sqrt(P) from a far-field anchor along a straight segment and flipping the
sign once per arc crossing.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp, mpf, mpc

from .model import InvalidInputError
from .quad import (BranchTracker, ChainNode, chain_quadrature, gl_nodes,
                   integrate, integrate_values, resample_dyadic)


class GeometryError(RuntimeError):
    """Arc tracing / center solve failure (CLI exit code 3)."""


# ---------------------------------------------------------------------------
# Chebotarev center
# ---------------------------------------------------------------------------

def _chord_sqrtQ_integral(b, A, B, third, dps_goal):
    """int_A^B sqrt((z-b)/((z-a1)(z-a2)(z-a3))) dz along the straight chord,
    with a branch continuous on the chord (fixed ray cuts pointing away from
    the chord for each factor). A and B are two of the a_i; `third` is the
    remaining one."""
    span = B - A
    theta = mp.arg(span)

    def away_cut_log(base, z, d=None):
        # log(z - base) with the cut ray pointing away from the chord
        dd = d if d is not None else z - base
        # direction from chord midpoint to base, prolonged
        ref = base - (A + B) / 2
        cut = mp.arg(ref) if abs(ref) > 0 else theta + mp.pi / 2
        a = mp.arg(dd)
        while a > cut:
            a -= 2 * mp.pi
        while a <= cut - 2 * mp.pi:
            a += 2 * mp.pi
        return mp.log(abs(dd)) + mpc(0, 1) * a

    def integrand(node):
        z = node.s
        # sqrt(z - b), sqrt-reciprocals of the three endpoint factors
        logs = away_cut_log(b, z)
        logs -= mp.log(abs(node.dL)) + mpc(0, 1) * theta          # (z-A)
        logs -= mp.log(abs(node.dR)) + mpc(0, 1) * (theta - mp.pi)  # (z-B)
        logs -= away_cut_log(third, z)
        return mp.exp(logs / 2)

    nodes = chain_quadrature([A, B], True, True,
                             ts_deg=max(5, int(math.log2(dps_goal)) + 1))
    return integrate(integrand, nodes)


def solve_center(spec, dps=None):
    """Newton solve for the Chebotarev center: both chord periods
    Re int sqrt(Q_b) over a1->a2 and a2->a3 must vanish."""
    policy = spec.precision
    dps_final = dps or policy.base_digits
    a1, a2, a3 = spec.points
    scale = spec.scale

    def F(b, dps_goal):
        i1 = _chord_sqrtQ_integral(b, a1, a2, a3, dps_goal)
        i2 = _chord_sqrtQ_integral(b, a2, a3, a1, dps_goal)
        return mpf(i1.real), mpf(i2.real)

    b = (a1 + a2 + a3) / 3
    # staged Newton: coarse quadrature first, then full precision
    for stage_dps in (18, dps_final // 2 + 8, dps_final + 6):
        tol = mpf(10) ** (-stage_dps + 2) * scale
        for _ in range(50):
            f1, f2 = F(b, stage_dps)
            if abs(f1) + abs(f2) < tol:
                break
            h = mpf(10) ** (-max(stage_dps // 2, 6)) * scale
            d1x, d2x = F(b + h, stage_dps)
            d1y, d2y = F(b + h * mpc(0, 1), stage_dps)
            j11, j12 = (d1x - f1) / h, (d1y - f1) / h
            j21, j22 = (d2x - f2) / h, (d2y - f2) / h
            det = j11 * j22 - j12 * j21
            if abs(det) == 0:
                raise GeometryError("singular Jacobian in center solve")
            dx = (-f1 * j22 + f2 * j12) / det
            dy = (-j11 * f2 + j21 * f1) / det
            step = dx + mpc(0, 1) * dy
            if abs(step) > scale:
                step *= scale / abs(step)
            b = b + step
        else:
            raise GeometryError("center Newton did not converge in 50 steps")
    for a in spec.points:
        if abs(b - a) < mpf("1e-6") * scale:
            raise GeometryError("center collided with a branch point; "
                                "configuration too close to collinear")
    return b


# ---------------------------------------------------------------------------
# Arc tracing
# ---------------------------------------------------------------------------

@dataclass
class Arc:
    """One traced trajectory from a_i to a0 (orientation: toward a0)."""
    index: int                  # 0-based (arc i+1 joins a_{i+1} to a0)
    endpoint: object            # a_{i+1}
    nodes: list                 # mp polyline from endpoint to a0 (a0 exact)
    u_start: object             # unit tangent at the endpoint, toward a0
    d_end: object               # unit direction of (arc - a0) at the center
    trajectory_residual: object
    length: object = None
    float_nodes: np.ndarray = None
    chain: list = None          # ChainNode quadrature along the polyline
    chain_order: list = None    # node indices sorted by position along arc
    wplus: list = None          # w_+ values at chain nodes

    def midpoint(self):
        return self.nodes[len(self.nodes) // 2]


def _trace_one_arc(a0, points, i, scale, tol, n_target=300):
    """Trace the critical trajectory from points[i] to a0."""
    ai = points[i]
    others = [points[j] for j in range(3) if j != i]
    P = lambda z: (z - a0) * (z - points[0]) * (z - points[1]) * (z - points[2])

    ci = (ai - a0) / ((ai - others[0]) * (ai - others[1]))
    u = mp.exp(mpc(0, 1) * (mp.pi - mp.arg(ci)))

    h0 = mpf("1e-4") * scale
    z = ai + h0 * u
    tracker = BranchTracker(P, z, mp.sqrt(P(z)))

    sgn = 1
    v0 = mpc(0, 1) * tracker.w / (z - a0)
    v0 = v0 / abs(v0)
    if (v0 * mp.conj(u)).real < 0:
        sgn = -1

    def direction(zz, wguess):
        p = P(zz)
        r = mp.sqrt(p)
        w = r if abs(r - wguess) <= abs(-r - wguess) else -r
        v = sgn * mpc(0, 1) * w / (zz - a0)
        return v / abs(v), w

    # psi = int sqrt(Q) dz from a_i, singular start handled by a dedicated
    # mini-chain; afterwards accumulated per step with GL. Nodes sorted along
    # the chord: the branch continuation below is sequential.
    glq = sorted(gl_nodes(3))

    def dpsi(z_from, z_to, wg):
        acc = mpc(0)
        mid, half = (z_from + z_to) / 2, (z_to - z_from) / 2
        for (x, wt) in glq:
            zz = mid + half * x
            p = P(zz)
            r = mp.sqrt(p)
            w = r if abs(r - wg) <= abs(-r - wg) else -r
            wg = w
            acc += wt * (zz - a0) / w
        return acc * half, wg

    start_nodes = chain_quadrature([ai, z], True, False, ts_deg=5, gl_deg=3)
    dir0 = mp.arg(u)
    wj = tracker.w
    vals = []
    for nd in start_nodes:
        g2 = (nd.s - a0) * (nd.s - others[0]) * (nd.s - others[1])
        g = mp.sqrt(g2)
        if vals and abs(g - vals[-1][1]) > abs(g + vals[-1][1]):
            g = -g
        vals.append((nd, g))
    # align local-model branch with tracker at the junction z
    gj = mp.sqrt(abs(z - ai)) * mp.exp(mpc(0, 1) * dir0 / 2) * vals[-1][1]
    if abs(gj - wj) > abs(gj + wj):
        vals = [(nd, -g) for (nd, g) in vals]
    psi = mp.fsum(
        nd.w * (nd.s - a0) / (mp.sqrt(abs(nd.dL)) * mp.exp(mpc(0, 1) * dir0 / 2) * g)
        for (nd, g) in vals)

    # project the first offset node onto the trajectory before stepping
    for _ in range(4):
        v1, w1 = direction(z, tracker.w)
        nu1 = mpc(0, 1) * v1
        deriv = (nu1 * (z - a0) / w1).real
        if deriv == 0 or abs(psi.real) < mpf(10) ** (-mp.dps + 6):
            break
        t = -psi.real / deriv
        z_corr = z + nu1 * t
        dval, _ = dpsi(z, z_corr, tracker.w)
        psi += dval
        tracker.advance(z_corr)
        z = z_corr

    nodes = [ai, z]
    r_switch = mpf("1e-3") * scale
    h_base = scale / mpf(n_target // 3)
    steps = 0
    residual = abs(psi.real)
    while True:
        steps += 1
        if steps > 40 * n_target:
            raise GeometryError(f"arc {i + 1}: step limit exceeded")
        dist0 = abs(z - a0)
        if dist0 < r_switch:
            break
        if dist0 > 5 * scale:
            raise GeometryError(f"arc {i + 1}: trajectory escaped")
        h = min(h_base, mpf("0.2") * dist0)
        if steps < 12:
            h = min(h, h0 * 2 ** steps)
        # RK4 on the unit direction field
        w0 = tracker.w
        k1, w1 = direction(z, w0)
        k2, w2 = direction(z + h / 2 * k1, w1)
        k3, _ = direction(z + h / 2 * k2, w2)
        k4, _ = direction(z + h * k3, w2)
        z_new = z + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        dpsi_val, _ = dpsi(z, z_new, w0)
        psi_new = psi + dpsi_val
        w_new = tracker.advance(z_new)
        # Newton projection along the normal: kill Re psi
        v, _ = direction(z_new, w_new)
        nu = mpc(0, 1) * v
        for _ in range(3):
            if abs(psi_new.real) < tol / 8:
                break
            deriv = (nu * (z_new - a0) / tracker.w).real
            if deriv == 0:
                break
            t = -psi_new.real / deriv
            t = max(min(t, float(h)), -float(h))
            z_corr = z_new + nu * t
            dps_corr, _ = dpsi(z_new, z_corr, tracker.w)
            psi_new += dps_corr
            tracker.advance(z_corr)
            z_new = z_corr
        z, psi = z_new, psi_new
        residual = max(residual, abs(psi.real))
        nodes.append(z)

    # closing fan into a0 along the local 3/2-power coordinate
    phi = mp.arg(z - a0)
    r = abs(z - a0)
    closing = []
    r_min = scale * mpf(10) ** (-max(12, mp.dps // 2))
    w_loc = tracker.w
    z_prev, psi_loc = z, psi
    while r > r_min:
        r = r / 2
        z_try = a0 + r * mp.exp(mpc(0, 1) * phi)
        for _ in range(8):
            dpsi_val, w_try = dpsi(z_prev, z_try, w_loc)
            resid = (psi_loc + dpsi_val).real
            if abs(resid) < tol / 8:
                break
            rr = mp.sqrt(P(z_try))
            w_at = rr if abs(rr - w_try) <= abs(-rr - w_try) else -rr
            dphi = -resid / (mpc(0, 1) * r * mp.exp(mpc(0, 1) * phi)
                             * (z_try - a0) / w_at).real
            phi += dphi
            z_try = a0 + r * mp.exp(mpc(0, 1) * phi)
        dpsi_val, w_loc = dpsi(z_prev, z_try, w_loc)
        psi_loc += dpsi_val
        residual = max(residual, abs(psi_loc.real))
        closing.append(z_try)
        z_prev = z_try
    nodes.extend(closing)
    nodes.append(a0)

    # arrival direction at a0 (Richardson on the last fan angles)
    phis = [mp.arg(c - a0) for c in closing[-4:]]
    d_end = mp.exp(mpc(0, 1) * (2 * phis[-1] - phis[-2])) if len(phis) >= 2 \
        else mp.exp(mpc(0, 1) * phi)

    return Arc(index=i, endpoint=ai, nodes=nodes, u_start=u,
               d_end=d_end, trajectory_residual=residual)


# ---------------------------------------------------------------------------
# Geometry container
# ---------------------------------------------------------------------------

def radical_values_on_chain(branch_points, endL, endR, nodes, seed_j, seed_w,
                            scale):
    """Branch-continued w = sqrt(prod (s - b)) at ordered chain nodes.

    endL/endR are the chain-end branch points (or None when an end is not a
    branch point). Within 2% of `scale` of a singular end the square root is
    assembled from the exact end offset (node.dL/.dR) times a tracked root of
    the remaining factors, which avoids both cancellation and sign flips of
    naive continuation toward a zero of the polynomial.
    """
    n = len(nodes)
    vals = [None] * n

    def P(z):
        acc = mpc(1)
        for b in branch_points:
            acc *= (z - b)
        return acc

    def fill(direction):
        seq = range(seed_j, n) if direction > 0 else range(seed_j, -1, -1)
        trk = BranchTracker(P, nodes[seed_j].s, seed_w)
        near_tag = None
        h_prev = None
        for j in seq:
            nd = nodes[j]
            dL = nd.dL if endL is not None else None
            dR = nd.dR if endR is not None else None
            use_L = dL is not None and abs(dL) < mpf("0.02") * scale
            use_R = dR is not None and abs(dR) < mpf("0.02") * scale
            if use_R and (not use_L or abs(dR) < abs(dL)):
                dloc, endpt, tag = dR, endR, "R"
            elif use_L:
                dloc, endpt, tag = dL, endL, "L"
            else:
                vals[j] = trk.advance(nd.s)
                near_tag = None
                h_prev = None
                continue
            h2 = mpc(1)
            for b in branch_points:
                if b != endpt:
                    h2 *= (nd.s - b)
            root = mp.sqrt(abs(dloc)) * mp.exp(mpc(0, 1) * mp.arg(dloc) / 2)
            h = mp.sqrt(h2)
            if near_tag == tag and h_prev is not None:
                if abs(h - h_prev) > abs(h + h_prev):
                    h = -h
            else:
                wt = trk.at(nd.s)
                if abs(root * h - wt) > abs(root * h + wt):
                    h = -h
            near_tag = tag
            h_prev = h
            vals[j] = root * h

    fill(+1)
    fill(-1)
    vals[seed_j] = seed_w
    return vals


class ContourGeometry:
    """Traced contour plus the branched radical and arc quadrature chains."""

    def __init__(self, spec, a0, arcs):
        self.spec = spec
        self.a0 = a0
        self.arcs = arcs
        self.scale = max(abs(a - a0) for a in spec.points)
        for arc in arcs:
            arc.float_nodes = np.array([complex(z) for z in arc.nodes])
            arc.length = mp.fsum(abs(arc.nodes[k + 1] - arc.nodes[k])
                                 for k in range(len(arc.nodes) - 1))
        self._check_disjoint()
        self._sector_angles()
        self._wref_cache = {}
        self._build_chains()
        self.I = self._compute_I()

    # -- sectors ------------------------------------------------------------

    def _sector_angles(self):
        th = [mp.arg(arc.d_end) for arc in self.arcs]
        self.theta = th

        def ccw_mid(lo, hi):
            span = mp.fmod(hi - lo, 2 * mp.pi)
            if span < 0:
                span += 2 * mp.pi
            return lo + span / 2

        # sector S_k is opposite arc k: S1 between arcs 2,3; S2 between 3,1;
        # S3 between 1,2 (ccw order of directions follows the ccw labeling)
        self.sector_bis = {
            1: ccw_mid(th[1], th[2]),
            2: ccw_mid(th[2], th[0]),
            3: ccw_mid(th[0], th[1]),
        }
        self.cut_angle_center = self.sector_bis[1]

    def cut_angle_endpoint(self, i):
        """Cut ray direction for (z - a_i)^alpha: arc tangent prolonged
        beyond the endpoint, away from the center."""
        return mp.arg(-self.arcs[i].u_start)

    def sector_of(self, z):
        """Which sector S_1/S_2/S_3 (near a0) contains z, by angle:
        S1 in (th2, th3), S2 in (th3, th1), S3 in (th1, th2)."""
        ang = mp.arg(z - self.a0)

        def in_ccw(a, lo, hi):
            x = mp.fmod(a - lo, 2 * mp.pi)
            if x < 0:
                x += 2 * mp.pi
            y = mp.fmod(hi - lo, 2 * mp.pi)
            if y < 0:
                y += 2 * mp.pi
            return 0 < x < y
        th = self.theta
        if in_ccw(ang, th[1], th[2]):
            return 1
        if in_ccw(ang, th[2], th[0]):
            return 2
        return 3

    # -- disjointness diagnostics -------------------------------------------

    def _check_disjoint(self):
        a0f = complex(self.a0)
        r0 = 0.02 * float(self.scale)
        for i in range(3):
            for j in range(i + 1, 3):
                pi = self.arcs[i].float_nodes[1:]
                pj = self.arcs[j].float_nodes[1:]
                pi = pi[np.abs(pi - a0f) > r0]
                pj = pj[np.abs(pj - a0f) > r0]
                if len(pi) == 0 or len(pj) == 0:
                    continue
                d = np.abs(pi[:, None] - pj[None, :]).min()
                if d < 1e-3 * float(self.scale):
                    raise GeometryError(
                        f"arcs {i + 1} and {j + 1} collide away from the center")

    # -- branched radical ----------------------------------------------------

    def P(self, z):
        acc = z - self.a0
        for a in self.spec.points:
            acc *= (z - a)
        return acc

    def _far_anchor(self, angle):
        key = (mp.dps, mp.nstr(angle, 8))
        if key not in self._wref_cache:
            R = 6 * self.scale
            zr = self.a0 + R * mp.exp(mpc(0, 1) * angle)
            base = zr - self.a0
            val = base ** 2
            for a in self.spec.points:
                val *= mp.sqrt((zr - a) / base)
            self._wref_cache[key] = (zr, val)
        return self._wref_cache[key]

    def _crossings(self, p, q, obstacles=None):
        """Number of proper intersections of segment [p, q] with the arc
        polylines (or given obstacle polylines). Raises GeometryError when an
        intersection parameter falls too close to a polyline vertex or the
        segment endpoints (ambiguous count)."""
        p = complex(p)
        q = complex(q)
        d = q - p
        eps = 1e-12
        total = 0
        polys = obstacles if obstacles is not None else \
            [arc.float_nodes for arc in self.arcs]
        for v in polys:
            a = v[:-1]
            b = v[1:]
            e = b - a
            det = d.real * e.imag - d.imag * e.real
            ap = a - p
            tnum = ap.real * e.imag - ap.imag * e.real
            unum = ap.real * d.imag - ap.imag * d.real
            ok = np.abs(det) > eps * abs(d) * np.abs(e)
            t = np.where(ok, tnum / np.where(ok, det, 1.0), np.inf)
            u = np.where(ok, unum / np.where(ok, det, 1.0), np.inf)
            # parallel and collinear-overlapping segments are degenerate
            par = ~ok & (np.abs(tnum) < eps * abs(d) * np.abs(e) * 10)
            if np.any(par):
                # collinear line: degenerate only if spans overlap
                for k in np.nonzero(par)[0]:
                    ta = ((a[k] - p) / d).real
                    tb = ((b[k] - p) / d).real
                    if max(min(ta, tb), 0.0) <= min(max(ta, tb), 1.0):
                        raise GeometryError("collinear overlap in crossing test")
            inside = (t > eps) & (t < 1 - eps) & (u > eps) & (u < 1 - eps)
            border = ((np.abs(t) < eps) | (np.abs(t - 1) < eps) |
                      (np.abs(u) < eps) | (np.abs(u - 1) < eps)) & \
                     (t > -eps) & (t < 1 + eps) & (u > -eps) & (u < 1 + eps)
            if np.any(border):
                raise GeometryError("near-vertex intersection; ambiguous count")
            total += int(np.count_nonzero(inside))
        return total

    def w(self, z, side=None, arc_index=None):
        """Principal-sheet radical; `side`/'arc_index' select a one-sided
        boundary value for points on (or numerically near) an arc."""
        z = mpc(z)
        if side is not None:
            return self._w_one_sided(z, side, arc_index)
        for a in [self.a0] + list(self.spec.points):
            if abs(z - a) == 0:
                raise GeometryError("w evaluated at a branch point")
        angle = mp.arg(z - self.a0)
        for jitter in (0, 1e-5, -1e-5, 3e-5):
            try:
                zr, wr = self._far_anchor(angle + mpf(jitter))
                parity = self._crossings(zr, z)
                tr = BranchTracker(self.P, zr, wr)
                val = tr.advance(z)
                return val if parity % 2 == 0 else -val
            except GeometryError:
                continue
        raise GeometryError("branched radical: no valid reference path")

    def _w_one_sided(self, z, side, arc_index):
        arc = self.arcs[arc_index]
        k = int(np.argmin(np.abs(arc.float_nodes - complex(z))))
        k = min(max(k, 1), len(arc.nodes) - 2)
        tangent = arc.nodes[k + 1] - arc.nodes[k - 1]
        nhat = mpc(0, 1) * tangent / abs(tangent)
        sgn = 1 if side in ("+", "plus", 1) else -1
        probe = arc.nodes[k] + sgn * nhat * mpf("1e-3") * self.scale
        wp = self.w(probe)
        tr = BranchTracker(self.P, probe, wp)
        return tr.advance(mpc(z))

    # -- quadrature chains ----------------------------------------------------

    def _build_chains(self):
        for arc in self.arcs:
            verts = resample_dyadic(arc.nodes, n_side=10)
            arc.chain = chain_quadrature(verts, True, True)
            arc.chain_order = list(range(len(arc.chain)))
            arc.wplus = self._wplus_on_chain(arc)

    def arc_left_normal(self, arc, z):
        """Unit left normal (the + side) of an arc near the point z."""
        k = int(np.argmin(np.abs(arc.float_nodes - complex(z))))
        k = min(max(k, 1), len(arc.nodes) - 2)
        tangent = arc.nodes[k + 1] - arc.nodes[k - 1]
        return mpc(0, 1) * tangent / abs(tangent)

    def _wplus_on_chain(self, arc):
        """One-sided w values at the chain nodes, by branch continuation from
        a mid-arc anchor on the + side (left of the orientation toward a0)."""
        chain = arc.chain
        n = len(chain)
        mid_j = n // 2
        mid = chain[mid_j].s
        nhat = self.arc_left_normal(arc, mid)
        probe = mid + nhat * mpf("1e-3") * self.scale
        w_anchor = self.w(probe)
        tr = BranchTracker(self.P, probe, w_anchor)
        w_mid = tr.advance(mid)
        pts = [self.a0] + list(self.spec.points)
        return radical_values_on_chain(pts, arc.endpoint, self.a0, chain,
                                       mid_j, w_mid, self.scale)

    def cut_chain(self, vertices):
        """Quadrature chain along a cut path joining two branch points, with
        principal-sheet w values at the nodes (the path must stay off the
        arcs; verified by a crossing count)."""
        for k in range(len(vertices) - 1):
            u, v = vertices[k], vertices[k + 1]
            # trim at the chain ends: they terminate on branch points that are
            # also polyline endpoints, which the crossing test treats as
            # degenerate contacts
            if k == 0:
                u = u + (v - u) * mpf("1e-5")
            if k == len(vertices) - 2:
                v = v - (v - u) * mpf("1e-5")
            if self._crossings(u, v) != 0:
                raise GeometryError("cut path crosses the contour")
        nodes = chain_quadrature(vertices, True, True)
        mid_j = len(nodes) // 2
        w_mid = self.w(nodes[mid_j].s)
        pts = [self.a0] + list(self.spec.points)
        vals = radical_values_on_chain(pts, vertices[0], vertices[-1], nodes,
                                       mid_j, w_mid, self.scale)
        return nodes, vals

    # -- real-period data ------------------------------------------------------

    def _compute_I(self):
        out = []
        for arc in self.arcs:
            vals = [(nd.dR) / wp for nd, wp in zip(arc.chain, arc.wplus)]
            ii = -integrate_values(vals, arc.chain) / (mp.pi * mpc(0, 1))
            out.append(ii)
        return out

    @property
    def I_real(self):
        return [v.real for v in self.I]

    def trajectory_residual(self):
        return max(arc.trajectory_residual for arc in self.arcs)

    def arc_endpoint_distance(self, z):
        return min(min(abs(z - a) for a in self.spec.points), abs(z - self.a0))


def trace_arcs(spec, a0, n_target=300):
    scale = spec.scale
    tol = mpf(10) ** (-(spec.precision.base_digits // 2 + 6))
    arcs = [_trace_one_arc(a0, list(spec.points), i, scale, tol, n_target)
            for i in range(3)]
    return ContourGeometry(spec, a0, arcs)


def build_geometry(spec, n_target=300):
    """Center solve + arc tracing, at the spec's base precision."""
    a0 = solve_center(spec)
    return trace_arcs(spec, a0, n_target)
