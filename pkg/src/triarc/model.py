"""Input model: contour points, weight functions, precision policy.

A weight on the three-arc contour is described per arc as

    rho_i(s) = (s - a0)^alpha0 * (s - a_i)^alpha_i * h_i(s),

where h_i is an analytic non-vanishing factor. Branch cuts of the power
factors are fixed once and for all (see BranchRules): the cut of
(z - a_i)^alpha_i runs along the ray prolonging the arc beyond a_i (away
from the center), and the cut of (z - a0)^alpha0 runs along the bisector of
the sector between the second and third arcs. Both stay off the contour and
off the region swept during contour deformations.

Analytic factors are polynomials, optionally multiplied by power-product
terms prod_j (s - b_j)^beta_j with the same off-contour cut convention;
the power products are needed to represent the weights induced by pure
power-law functions, whose analytic parts are not polynomial.
"""

import json
from dataclasses import dataclass, field

from mpmath import mp, mpf, mpc

from .precision import to_mpc, to_mpf, complex_str_pair, real_str, parse_complex


class InvalidInputError(ValueError):
    """Raised when constructor preconditions fail (CLI exit code 2)."""


COLLINEAR_TOL = mpf("1e-12")


@dataclass(frozen=True)
class PrecisionPolicy:
    """Working-precision rules.

    moment_digits(n) adds 10 digits per polynomial degree on top of the base:
    the non-Hermitian Hankel systems lose O(n) digits and the factor 10 keeps
    a wide margin (validated against the exact segment oracle).
    """
    base_digits: int = 30
    digits_per_degree: int = 10
    quadrature_tol_exp: int = None  # 10^-exp; defaults to base_digits - 5

    def __post_init__(self):
        if self.base_digits < 30:
            raise InvalidInputError("precision_digits must be at least 30")

    def moment_digits(self, n):
        return self.base_digits + self.digits_per_degree * int(n)

    @property
    def quadrature_tol(self):
        e = self.quadrature_tol_exp
        if e is None:
            e = self.base_digits - 5
        return mpf(10) ** (-e)


@dataclass(frozen=True)
class ContourSpec:
    """Three distinct, non-collinear branch points a1, a2, a3, labeled
    counter-clockwise around their eventual center."""
    a1: object
    a2: object
    a3: object
    precision: PrecisionPolicy = field(default_factory=PrecisionPolicy)

    def __post_init__(self):
        object.__setattr__(self, "a1", to_mpc(self.a1))
        object.__setattr__(self, "a2", to_mpc(self.a2))
        object.__setattr__(self, "a3", to_mpc(self.a3))
        a1, a2, a3 = self.a1, self.a2, self.a3
        if a1 == a2 or a2 == a3 or a1 == a3:
            raise InvalidInputError("branch points must be pairwise distinct")
        r = (a2 - a1) / (a3 - a1)
        if abs(r.imag) <= COLLINEAR_TOL:
            raise InvalidInputError("branch points are (numerically) collinear")
        centroid = (a1 + a2 + a3) / 3
        angs = [mp.arg(a - centroid) for a in (a1, a2, a3)]
        d21 = mp.fmod(angs[1] - angs[0], 2 * mp.pi)
        d31 = mp.fmod(angs[2] - angs[0], 2 * mp.pi)
        if d21 < 0:
            d21 += 2 * mp.pi
        if d31 < 0:
            d31 += 2 * mp.pi
        if not d21 < d31:
            raise InvalidInputError(
                "points must be labeled counter-clockwise around the center; "
                "swap a2 and a3")

    @property
    def points(self):
        return (self.a1, self.a2, self.a3)

    @property
    def scale(self):
        c = (self.a1 + self.a2 + self.a3) / 3
        return max(abs(a - c) for a in self.points)


def _fixed_cut_log(z, cut_angle):
    """log with branch cut along the ray arg = cut_angle; the argument is
    taken in (cut_angle - 2*pi, cut_angle]."""
    a = mp.arg(z)  # in (-pi, pi]
    # shift into (cut_angle - 2pi, cut_angle]
    while a > cut_angle:
        a -= 2 * mp.pi
    while a <= cut_angle - 2 * mp.pi:
        a += 2 * mp.pi
    return mp.log(abs(z)) + mpc(0, 1) * a


@dataclass(frozen=True)
class PowerTerm:
    """(z - point)^exponent with a fixed ray cut at cut_angle."""
    point: object
    exponent: object
    cut_angle: object

    def log_at(self, z, offset=None):
        d = offset if offset is not None else (z - self.point)
        return self.exponent * _fixed_cut_log(d, self.cut_angle)


@dataclass(frozen=True)
class AnalyticFactor:
    """Non-vanishing analytic part h(s) of a weight restriction: a polynomial
    (coefficients in increasing degree) times optional power-product terms."""
    coeffs: tuple
    powers: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(to_mpc(c) for c in self.coeffs))
        if not self.coeffs or all(c == 0 for c in self.coeffs):
            raise InvalidInputError("analytic factor must not vanish identically")

    def poly_at(self, z):
        acc = mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def poly_deriv_at(self, z):
        acc = mpc(0)
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * z + k * self.coeffs[k]
        return acc

    def __call__(self, z):
        val = self.poly_at(z)
        for p in self.powers:
            val *= mp.exp(p.log_at(z))
        return val

    def log_deriv_at(self, z):
        """h'/h, exact for polynomial x power-product factors."""
        val = self.poly_deriv_at(z) / self.poly_at(z)
        for p in self.powers:
            val += p.exponent / (z - p.point)
        return val


@dataclass(frozen=True)
class WeightSpec:
    """Weight data: center/endpoint exponents and per-arc analytic factors.

    alphas = (alpha0, alpha1, alpha2, alpha3), each > -1. factors[i] is the
    analytic part on arc i (i = 1..3 stored 0-based). Winding offsets shift
    the log determination used by the Szego machinery by 2*pi*i per unit on
    the corresponding arc; the constant of the Szego jump shifts by lattice
    vectors accordingly.
    """
    alphas: tuple
    factors: tuple
    windings: tuple = (0, 0, 0)
    symmetric_oracle: bool = False
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(to_mpf(a) for a in self.alphas))
        if len(self.alphas) != 4:
            raise InvalidInputError("need exactly four exponents alpha0..alpha3")
        for a in self.alphas:
            if not a > -1:
                raise InvalidInputError("every exponent must exceed -1")
        if len(self.factors) != 3:
            raise InvalidInputError("need one analytic factor per arc")

    @property
    def alpha0(self):
        return self.alphas[0]

    def requires_asymptotics_hypothesis(self):
        return -1 < self.alpha0 < 1


def weight_from_logs(c1, c2, c3):
    """Weight of a combination of logarithms: constant 2*pi*i*c_i on arc i,
    all exponents zero. Records c0 = -(c1+c2+c3)."""
    cs = [to_mpc(c) for c in (c1, c2, c3)]
    if any(c == 0 for c in cs):
        raise InvalidInputError("log coefficients must be non-zero")
    two_pi_i = 2 * mp.pi * mpc(0, 1)
    factors = tuple(AnalyticFactor((two_pi_i * c,)) for c in cs)
    c0 = -(cs[0] + cs[1] + cs[2])
    return WeightSpec(
        alphas=(mpf(0), mpf(0), mpf(0), mpf(0)),
        factors=factors,
        metadata={"kind": "logs", "c0": c0, "c": tuple(cs)},
    )


def weight_from_powers(alpha0, alpha1, alpha2, alpha3, geometry=None):
    """Weight of a pure power product prod (z - a_l)^alpha_l.

    Requires an integer exponent sum >= -2 (single-valuedness at infinity).
    The induced per-arc analytic parts are a common power product times the
    phase constants (1 - e^{2 pi i a1}), e^{2 pi i a1}(1 - e^{2 pi i a2}),
    (e^{-2 pi i a3} - 1). The common product is expressed with this package's
    fixed cut rays, which changes each arc's factor by at most a unimodular
    constant and leaves the boundary-ratio data (Stokes parameters) intact.

    When `geometry` is given, the power-product terms carry the true cut
    rays; otherwise the factor records only the phase constants, which is
    enough for all boundary-ratio computations.
    """
    als = [to_mpf(a) for a in (alpha0, alpha1, alpha2, alpha3)]
    for a in als:
        if not a > -1:
            raise InvalidInputError("every exponent must exceed -1")
    total = mp.fsum(als)
    if abs(total - mp.nint(total)) > mpf("1e-30") or mp.nint(total) < -2:
        raise InvalidInputError(
            "power weights need an integer exponent sum >= -2")
    e = lambda a: mp.exp(2 * mp.pi * mpc(0, 1) * a)
    phase = (1 - e(als[1]),
             e(als[1]) * (1 - e(als[2])),
             e(-als[3]) - 1)
    if any(abs(p) < mpf("1e-30") for p in phase):
        raise InvalidInputError(
            "integer endpoint exponent: the weight vanishes on an arc")
    factors = []
    for i in range(3):
        powers = ()
        if geometry is not None:
            powers = tuple(
                PowerTerm(geometry.spec.points[j], als[1 + j],
                          geometry.cut_angle_endpoint(j))
                for j in range(3) if j != i)
        factors.append(AnalyticFactor((phase[i],), powers))
    return WeightSpec(
        alphas=tuple(als),
        factors=tuple(factors),
        metadata={"kind": "powers"},
    )


def weight_symmetric_pullback(rho_hat_coeffs):
    """Weight rho(s) = rho_hat(s^3) for the rotationally symmetric contour.

    rho_hat is a polynomial (coefficients in increasing degree) that must not
    vanish near [-1, 0]; checked by dense sampling.
    """
    coeffs = [to_mpc(c) for c in rho_hat_coeffs]
    for k in range(400):
        x = mpf(-1.02) + mpf("1.04") * k / 399
        val = mpc(0)
        for c in reversed(coeffs):
            val = val * x + c
        if abs(val) < mpf("1e-12"):
            raise InvalidInputError("rho_hat vanishes near [-1, 0]")
    comp = [mpc(0)] * (3 * (len(coeffs) - 1) + 1)
    for k, c in enumerate(coeffs):
        comp[3 * k] = c
    factor = AnalyticFactor(tuple(comp))
    return WeightSpec(
        alphas=(mpf(0),) * 4,
        factors=(factor, factor, factor),
        symmetric_oracle=True,
        metadata={"kind": "symmetric", "rho_hat": tuple(coeffs)},
    )


# ---------------------------------------------------------------------------
# JSON configuration round-trip
# ---------------------------------------------------------------------------

def contour_to_json(spec):
    return {
        "contour": {
            "a1": complex_str_pair(spec.a1),
            "a2": complex_str_pair(spec.a2),
            "a3": complex_str_pair(spec.a3),
        },
        "precision": {
            "base_digits": spec.precision.base_digits,
            "digits_per_degree": spec.precision.digits_per_degree,
        },
    }


def weight_to_json(w):
    return {
        "alpha": [real_str(a) for a in w.alphas],
        "factors": [
            {
                "coeffs": [complex_str_pair(c) for c in f.coeffs],
                "powers": [
                    {"point": complex_str_pair(p.point),
                     "exponent": real_str(p.exponent),
                     "cut_angle": real_str(p.cut_angle)}
                    for p in f.powers
                ],
            }
            for f in w.factors
        ],
        "windings": list(w.windings),
        "symmetric_oracle": w.symmetric_oracle,
    }


def config_from_dict(cfg):
    """Parse {"contour": ..., "weight": ..., "precision": ...}."""
    try:
        prec_cfg = cfg.get("precision", {})
        policy = PrecisionPolicy(
            base_digits=int(prec_cfg.get("base_digits", 30)),
            digits_per_degree=int(prec_cfg.get("digits_per_degree", 10)),
        )
        c = cfg["contour"]
        with_prec = mp.workdps(policy.base_digits + 20)
        with with_prec:
            spec = ContourSpec(parse_complex(c["a1"]), parse_complex(c["a2"]),
                               parse_complex(c["a3"]), policy)
            wcfg = cfg.get("weight")
            weight = None
            if wcfg is not None:
                if "rho_hat" in wcfg:
                    weight = weight_symmetric_pullback(
                        [parse_complex(x) for x in wcfg["rho_hat"]])
                elif "logs" in wcfg:
                    weight = weight_from_logs(*[parse_complex(x) for x in wcfg["logs"]])
                else:
                    factors = tuple(
                        AnalyticFactor(
                            tuple(parse_complex(x) for x in f["coeffs"]),
                            tuple(PowerTerm(parse_complex(p["point"]),
                                            to_mpf(p["exponent"]),
                                            to_mpf(p["cut_angle"]))
                                  for p in f.get("powers", ())))
                        for f in wcfg["factors"])
                    weight = WeightSpec(
                        alphas=tuple(to_mpf(a) for a in wcfg["alpha"]),
                        factors=factors,
                        windings=tuple(int(k) for k in wcfg.get("windings", (0, 0, 0))),
                        symmetric_oracle=bool(wcfg.get("symmetric_oracle", False)),
                    )
    except InvalidInputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed configuration: {exc}") from exc
    return spec, weight


def load_config(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(cfg)
