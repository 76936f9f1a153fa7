"""Quadrature primitives: Gauss-Legendre / tanh-sinh node caches, polyline
(chain) quadrature with singular endpoints, and branch-tracked continuation
of square roots along paths.

Contour integrals in this package are taken along polylines whose vertices
lie on traced arcs or on constructed cut paths. Because every integrand is
analytic in a neighborhood of the contour (endpoint singularities excepted),
integrating along the polyline instead of the exact curve is lossless; the
quadrature error is controlled purely by node counts, with tanh-sinh rules
absorbing the integrable endpoint singularities.

Endpoint-singular factors like (s - a)^alpha cannot be evaluated from the
rounded point s without catastrophic cancellation, so chain nodes carry the
offsets to the chain endpoints (exact tiny mpf values on the end chords).
Integrand evaluators receive a :class:`ChainNode` and read whichever fields
they need.
"""

import math
from dataclasses import dataclass

from mpmath import mp, mpf, mpc
from mpmath.calculus.quadrature import GaussLegendre

_NODE_CACHE = {}


def gl_nodes(degree):
    """Gauss-Legendre nodes/weights on [-1, 1]; ~3*2^degree points."""
    key = ("gl", degree, mp.prec)
    if key not in _NODE_CACHE:
        _NODE_CACHE[key] = GaussLegendre(mp).calc_nodes(degree, mp.prec)
    return _NODE_CACHE[key]


def ts_nodes01(degree):
    """Tanh-sinh nodes on (0, 1), stored as (y, 1-y, weight).

    y = (1 + tanh((pi/2) sinh(jh)))/2 is computed through the logistic form
    1/(1 + exp(-pi sinh(jh))), which stays exact (own exponent, no
    cancellation) however close to 0 or 1 the node falls. The symmetric
    counterpart 1-y is computed independently for the same reason.
    """
    key = ("ts01", degree, mp.prec)
    if key not in _NODE_CACHE:
        h = mpf(2) ** (-degree)
        # Truncate once the node weight alone is negligible: weights decay
        # doubly exponentially while admissible singularities grow at most
        # like a power < 1, so cutting at gap^0.1 < 10^-dps is safe.
        log_cut = -mpf(10) * (mp.dps + 10) * mp.log(10)
        nodes = []
        j = 0
        while True:
            t = j * h
            u = mp.pi * mp.sinh(t)
            y = 1 / (1 + mp.exp(-u))
            ym = 1 / (1 + mp.exp(u))
            if -u < log_cut:
                break
            w = h * mp.pi * mp.cosh(t) * y * ym
            nodes.append((y, ym, w))
            if j > 0:
                nodes.append((ym, y, w))
            j += 1
            if j > 1 << (degree + 8):
                break
        _NODE_CACHE[key] = nodes
    return _NODE_CACHE[key]


def ts_degree_for(dps):
    """Tanh-sinh level delivering ~dps digits (error ~ exp(-c 2^k))."""
    return max(5, int(math.log2(dps)) + 3)


def gl_degree_for(dps):
    """GL level for analytic integrands on comfortably short chords."""
    return max(4, int(math.log2(max(dps, 8))) + 2)


@dataclass
class ChainNode:
    """One quadrature node on a polyline chain.

    s   : the point in the plane (rounded; fine for analytic factors)
    dL  : s - (chain start), exact near the start
    dR  : s - (chain end), exact near the end
    w   : complex quadrature weight (includes the direction element ds)
    """
    s: object
    dL: object
    dR: object
    w: object


def chain_quadrature(vertices, sing_left=True, sing_right=True,
                     gl_deg=None, ts_deg=None):
    """Quadrature nodes along a polyline through `vertices`.

    Interior chords get Gauss-Legendre; the first/last chord gets tanh-sinh
    when the corresponding chain endpoint carries an integrable singularity.
    Offsets dL/dR are exact on the singular chords.
    """
    gl = sorted(gl_nodes(gl_deg if gl_deg is not None else gl_degree_for(mp.dps)))
    ts = ts_nodes01(ts_deg if ts_deg is not None else ts_degree_for(mp.dps))
    ts = sorted(ts, key=lambda t: t[0])
    A, B = vertices[0], vertices[-1]
    out = []
    last = len(vertices) - 2
    for k in range(last + 1):
        u, v = vertices[k], vertices[k + 1]
        span = v - u
        left_ts = (k == 0 and sing_left)
        right_ts = (k == last and sing_right)
        if left_ts or right_ts:
            for (y, ym, wy) in ts:
                if left_ts and not right_ts:
                    dL = span * y
                    s = u + dL
                    dR = s - B
                elif right_ts and not left_ts:
                    dR = -span * ym
                    s = v + dR
                    dL = s - A
                else:
                    dL = span * y
                    dR = -span * ym
                    s = u + dL
                out.append(ChainNode(s, dL, dR, span * wy))
        else:
            mid = (u + v) / 2
            half = span / 2
            for (x, wx) in gl:
                s = mid + half * x
                out.append(ChainNode(s, s - A, s - B, half * wx))
    return out


def integrate(f, nodes):
    """Sum w * f(node) over chain nodes; f receives the ChainNode."""
    return mp.fsum(n.w * f(n) for n in nodes)


def integrate_values(values, nodes):
    return mp.fsum(n.w * v for n, v in zip(nodes, values))


def resample_dyadic(vertices, n_side=9):
    """Pick a subset of polyline vertices with dyadic refinement toward both
    ends (arclength fractions 2^-n_side .. 1/2 .. 1-2^-n_side).

    The selected vertices still lie exactly on the original path, so the
    resampled polyline stays inside any analyticity tube around it.
    """
    n = len(vertices)
    lengths = [abs(vertices[k + 1] - vertices[k]) for k in range(n - 1)]
    total = mp.fsum(lengths)
    cum = [mp.zero]
    for L in lengths:
        cum.append(cum[-1] + L)
    fracs = [mpf(2) ** (-j) for j in range(n_side, 0, -1)]
    fracs += [1 - f for f in reversed(fracs[:-1])]
    targets = [f * total for f in fracs]
    idx = [0]
    j = 0
    for t in targets:
        while j < n - 1 and cum[j + 1] < t:
            j += 1
        if j > idx[-1]:
            idx.append(j)
    if idx[-1] != n - 1:
        idx.append(n - 1)
    return [vertices[k] for k in idx]


class BranchTracker:
    """Continues a square-root branch w(z) = sqrt(P(z)) along paths.

    Holds a current (z, w) state and advances it by nearest-sign continuation
    with automatic step refinement. Refinement triggers whenever P swings by
    more than a fraction of its magnitude between consecutive points, which
    keeps the sign choice unambiguous away from zeros of P.
    """

    def __init__(self, P, z0, w0):
        self.P = P
        self.z = z0
        self.w = w0

    def copy(self):
        return BranchTracker(self.P, self.z, self.w)

    def advance(self, z1, depth=0):
        p0 = self.w * self.w
        p1 = self.P(z1)
        if depth < 64 and (p1 == 0 or abs(p1 - p0) > 0.5 * max(abs(p0), abs(p1))):
            zm = (self.z + z1) / 2
            if zm != self.z and zm != z1:
                self.advance(zm, depth + 1)
                return self.advance(z1, depth + 1)
        r = mp.sqrt(p1)
        self.w = r if abs(r - self.w) <= abs(-r - self.w) else -r
        self.z = z1
        return self.w

    def at(self, z1):
        """Value at z1 without moving the persistent state."""
        saved_z, saved_w = self.z, self.w
        w = self.advance(z1)
        self.z, self.w = saved_z, saved_w
        return w


def richardson_limit(values, ratio=2):
    """Limit of f(R), f(qR), f(q^2 R), ... assuming integer-power tails in
    1/R; classical Richardson triangle, returns the highest-order estimate."""
    tbl = list(values)
    k = 1
    while len(tbl) > 1:
        fac = mpf(ratio) ** k
        tbl = [(fac * tbl[i + 1] - tbl[i]) / (fac - 1) for i in range(len(tbl) - 1)]
        k += 1
    return tbl[0]
