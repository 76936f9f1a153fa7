"""Working-precision management and exact decimal serialization.

All heavy numerics in this package run on mpmath. Every public entry point
wraps its body in :func:`working_dps` so that callers never have to touch the
global mpmath context themselves. Values are serialized as decimal strings
(never binary floats) so that runs at a fixed precision are reproducible
byte-for-byte.
"""

from contextlib import contextmanager

from mpmath import mp, mpf, mpc

# Guard digits added on top of a caller-requested precision: quadrature and
# linear solves are tuned to deliver the *requested* digits, so intermediate
# arithmetic runs slightly hotter.
GUARD_DIGITS = 10


@contextmanager
def working_dps(dps):
    """Temporarily set the global mpmath precision (plus guard digits)."""
    old = mp.dps
    mp.dps = int(dps) + GUARD_DIGITS
    try:
        yield mp
    finally:
        mp.dps = old


def to_mpc(value):
    """Coerce ints/floats/strings/2-tuples into an mpc at current precision."""
    if isinstance(value, mpc):
        return value
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return mpc(mpf(str(value[0])), mpf(str(value[1])))
    if isinstance(value, complex):
        return mpc(value.real, value.imag)
    return mpc(mpf(str(value)))


def to_mpf(value):
    if isinstance(value, mpf):
        return value
    return mpf(str(value))


def real_str(x, digits=None):
    """Decimal string of a real value with full working precision."""
    digits = digits or mp.dps
    return mp.nstr(mpf(x), digits, strip_zeros=False)


def complex_str_pair(z, digits=None):
    """[re, im] decimal-string pair used throughout the JSON interfaces."""
    z = to_mpc(z)
    return [real_str(z.real, digits), real_str(z.imag, digits)]


def parse_complex(obj):
    """Inverse of :func:`complex_str_pair`; accepts scalars too."""
    if isinstance(obj, (list, tuple)):
        return mpc(mpf(str(obj[0])), mpf(str(obj[1])))
    return to_mpc(obj)
