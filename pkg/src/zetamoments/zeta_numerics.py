"""High precision constants from the zeta function and the primes.

Everything here returns mpmath floats computed at an elevated internal
precision and rounded to a few digits beyond the request, so callers can do
further arithmetic at their own working precision.  The central objects are
Taylor coefficient families: of zeta itself around a real point, of the
Stieltjes expansion around the pole, and of prime power sums

    sum over primes of p**(-r) * (-log p)**n / n!

for integer r.  The r = 1 family is regularized by removing the logarithmic
singularity before expanding.  Two construction routes are kept deliberately
separate: the default route goes through an in-house Euler-Maclaurin engine
and the Moebius inversion of log zeta, while prime_zeta_direct sums sieved
primes and closes the tail with mpmath's own zeta derivatives, sharing no
zeta code with the default route.
"""

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import mpmath
from mpmath import mp
from sympy import primerange
from sympy.functions.combinatorial.numbers import mobius as _mobius


def mobius_int(m):
    return int(_mobius(m))


def primes_upto(x):
    """All primes p <= x, ascending."""
    return [int(p) for p in primerange(2, x + 1)]


def bernoulli(n):
    """Exact Bernoulli number; the n = 1 value is -1/2."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("Bernoulli index must be a nonnegative integer")
    p, q = mp.bernfrac(n)
    return Fraction(int(p), int(q))


def _round_out(values, digits):
    with mp.workdps(digits + 5):
        return tuple(+v for v in values)


def _poly_mul(a, b):
    out = [mp.mpf(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _series_log_list(s):
    """log of a scalar power series with s[0] = 1, same truncation order."""
    n = len(s) - 1
    out = [mp.mpf(0)] * (n + 1)
    for w in range(1, n + 1):
        acc = s[w]
        for j in range(1, w):
            acc -= Fraction(j, w) * out[j] * s[w - j]
        out[w] = acc
    return out


def zeta_taylor(x0, nmax, digits=50):
    """Taylor coefficients of zeta around x0: zeta^(a)(x0)/a! for a <= nmax.

    Euler-Maclaurin with the head length tied to the digit request; only the
    region strictly right of the pole is supported, with a small buffer so the
    pole distance cannot eat the whole working precision silently.
    """
    if not isinstance(nmax, int) or nmax < 0:
        raise ValueError("nmax must be a nonnegative integer")
    xf = float(mp.mpf(1) * x0)
    if not xf > 1 + 1e-3:
        raise ValueError("zeta_taylor needs x0 > 1.001, got %r" % (x0,))
    M = max(20, digits)
    extra = int((nmax + 1) * max(0.0, -math.log10(xf - 1))) + 15
    wp = digits + extra
    with mp.workdps(wp):
        x = mp.mpf(1) * x0
        out = [mp.mpf(0)] * (nmax + 1)
        for j in range(1, M):
            t = mp.mpf(j) ** (-x)
            Lj = -mp.log(j)
            out[0] += t
            for a in range(1, nmax + 1):
                t = t * Lj / a
                out[a] += t
        L = mp.log(M)
        c = x - 1
        E = [mp.mpf(1)]
        for u in range(1, nmax + 1):
            E.append(E[-1] * (-L) / u)
        Mpow = mp.mpf(M) ** (1 - x)
        cpow = 1 / c
        C = []
        for v in range(nmax + 1):
            C.append(cpow)
            cpow = -cpow / c
        for a in range(nmax + 1):
            s = mp.mpf(0)
            for u in range(a + 1):
                s += E[u] * C[a - u]
            out[a] += Mpow * s
        half = Mpow / M / 2
        for a in range(nmax + 1):
            out[a] += half * E[a]
        thresh = mp.mpf(10) ** (-(digits + 10)) * max(1, abs(out[0]))
        poly = [x, mp.mpf(1)]
        i = 1
        prev_mag = mp.inf
        mfac = Mpow / (M * M)
        while True:
            coef = mp.bernoulli(2 * i) / mp.factorial(2 * i) * mfac
            mag = mp.mpf(0)
            for a in range(nmax + 1):
                s = mp.mpf(0)
                for u in range(a + 1):
                    if a - u < len(poly):
                        s += E[u] * poly[a - u]
                term = coef * s
                out[a] += term
                mag = max(mag, abs(term))
            if mag < thresh:
                break
            if mag > prev_mag and i > 3:
                raise RuntimeError(
                    "Euler-Maclaurin tail diverged before reaching %d digits" % digits
                )
            prev_mag = mag
            i += 1
            poly = _poly_mul(poly, [x + 2 * i - 3, mp.mpf(1)])
            poly = _poly_mul(poly, [x + 2 * i - 2, mp.mpf(1)])
            mfac /= M * M
    return _round_out(out, digits)


def zeta_derivative(a, x, digits=50):
    """a-th derivative of zeta at real x > 1.001."""
    if not isinstance(a, int) or a < 0:
        raise ValueError("derivative order must be a nonnegative integer")
    coeffs = zeta_taylor(x, a, digits)
    with mp.workdps(digits + 5):
        return +(coeffs[a] * mp.factorial(a))


def _derive_log_family(fam):
    """One d/dt step on a combination of (log t)**a * t**-c basis terms."""
    out = {}
    for (a, c), coef in fam.items():
        if a > 0:
            key = (a - 1, c + 1)
            out[key] = out.get(key, Fraction(0)) + a * coef
        key = (a, c + 1)
        out[key] = out.get(key, Fraction(0)) - c * coef
    return out


def stieltjes_gamma(n, digits=50):
    """n-th Stieltjes constant, by Euler-Maclaurin on (log t)**n / t.

    The odd-order derivatives at the cut point are carried as exact rational
    combinations of the log-power basis, so the correction terms cost no
    precision beyond the final evaluation.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("Stieltjes index must be a nonnegative integer")
    M = max(20, digits)
    wp = digits + 20 + n
    with mp.workdps(wp):
        L = mp.log(M)
        acc = mp.mpf(1) if n == 0 else mp.mpf(0)
        for j in range(2, M):
            acc += mp.log(j) ** n / j
        acc -= L ** (n + 1) / (n + 1)
        acc += L ** n / (2 * M)
        thresh = mp.mpf(10) ** (-(digits + 10))
        fam = {(n, 1): Fraction(1)}
        i = 1
        prev_mag = mp.inf
        while True:
            steps = 1 if i == 1 else 2
            for _ in range(steps):
                fam = _derive_log_family(fam)
            val = mp.mpf(0)
            for (a, c), coef in fam.items():
                val += mp.mpf(coef.numerator) / coef.denominator * L ** a * mp.mpf(M) ** (-c)
            b2i = mp.bernoulli(2 * i) / mp.factorial(2 * i)
            term = b2i * val
            acc -= term
            mag = abs(term)
            if mag < thresh:
                break
            if mag > prev_mag and i > 3:
                raise RuntimeError(
                    "Euler-Maclaurin tail diverged before reaching %d digits" % digits
                )
            prev_mag = mag
            i += 1
    with mp.workdps(digits + 5):
        return +acc


def stieltjes_cumulant(n, digits=50):
    """Cumulant-style recombination of the Stieltjes constants.

    Coefficient n of the logarithm of s*zeta(1+s), rescaled by n! and an
    alternating sign; the n = 0 value is exactly 0.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("cumulant index must be a nonnegative integer")
    if n == 0:
        return mp.mpf(0)
    with mp.workdps(digits + 15):
        s = [mp.mpf(1)]
        for m in range(1, n + 1):
            g = stieltjes_gamma(m - 1, digits + 8)
            s.append((-1) ** (m - 1) * g / mp.factorial(m - 1))
        lo = _series_log_list(s)
        val = -((-1) ** n) * lo[n] * mp.factorial(n)
    with mp.workdps(digits + 5):
        return +val


def _log_zeta_taylor(x0, nmax, digits):
    """Coefficients of log zeta(x0 + u) in u, through the in-house engine."""
    zt = zeta_taylor(x0, nmax, digits)
    with mp.workdps(digits + 10):
        z0 = zt[0]
        s = [mp.mpf(1)] + [zt[a] / z0 for a in range(1, nmax + 1)]
        lo = _series_log_list(s)
        lo[0] = mp.log(z0)
        return _round_out(lo, digits)


class PrimeZetaCoeffs(NamedTuple):
    """Taylor family of a prime power sum: coeffs[n] pairs with (-log p)**n/n!.

    tail_bounds[n] is an upper estimate on the numerical error of coeffs[n],
    combining the certified truncation of the Moebius sum with the rounding
    floor of the working precision.
    """

    r: int
    coeffs: tuple
    digits: int
    tail_bounds: tuple = ()

    def tail_bound(self, M, n):
        """Certified bound on the part of coeffs[n] coming from primes above M."""
        return envelope_bound(self.r, n, M)


_installed_pzeta = {}


def install_prime_zeta(r, entry):
    """Register (or with None, drop) a precomputed coefficient family for r."""
    if entry is None:
        _installed_pzeta.pop(r, None)
    else:
        _installed_pzeta[r] = entry


def prime_zeta_taylor(r, nmax, digits=50):
    """Coefficient family for sum_p p**(-r): index n carries (-log p)**n / n!.

    For r >= 2 this is Moebius inversion of log zeta along the arithmetic
    progression of arguments m*r.  For r = 1 the family is the regularized
    one: the logarithmic blowup is removed before expanding, which shifts the
    n = 0 value to about -0.3157.  An installed cache entry is returned as is
    when it covers the requested order and digits.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError("prime zeta order must be a positive integer")
    if not isinstance(nmax, int) or nmax < 0:
        raise ValueError("nmax must be a nonnegative integer")
    entry = _installed_pzeta.get(r)
    if entry is not None and entry.digits >= digits and len(entry.coeffs) > nmax:
        return entry
    return _compute_prime_zeta(r, nmax, digits)


@lru_cache(maxsize=None)
def _compute_prime_zeta(r, nmax, digits):
    with mp.workdps(digits + 15):
        thresh = mp.mpf(10) ** (-(digits + 10))
        if r == 1:
            gam = [stieltjes_gamma(j, digits + 8) for j in range(nmax)]
            s = [mp.mpf(1)]
            for m in range(1, nmax + 1):
                s.append((-1) ** (m - 1) * gam[m - 1] / mp.factorial(m - 1))
            out = _series_log_list(s)
            m = 2
        else:
            out = [mp.mpf(0)] * (nmax + 1)
            m = 1
        while True:
            bound = 4 * mp.mpf(m) ** nmax * mp.mpf(2) ** (-m * r)
            if bound < thresh:
                break
            mu = mobius_int(m)
            if mu:
                lz = _log_zeta_taylor(m * r, nmax, digits + 5)
                scale = mp.mpf(1)
                for n in range(nmax + 1):
                    out[n] += Fraction(mu, m) * scale * lz[n]
                    scale *= m
            m += 1
        floor = mp.mpf(10) ** (-(digits + 2 if r == 1 else digits + 4))
        tb = _round_out([4 * bound + floor] * (nmax + 1), digits)
    return PrimeZetaCoeffs(r, _round_out(out, digits), digits, tb)


def prime_zeta_beyond(r, nmax, primes, digits=50):
    """The same family with the listed primes' contribution removed.

    The full family and the head are both tiny multiples of what cancels, so
    the subtraction runs at a precision elevated by roughly the cancelled
    ratio; the returned values are reliable near 10**-(digits+5) absolutely.
    """
    primes = sorted(primes)
    if primes and primes[-1] >= 2:
        extra = int(r * math.log10(max(primes[-1], 4) / 2.0)) + 8
    else:
        extra = 0
    base = prime_zeta_taylor(r, nmax, digits + extra)
    with mp.workdps(digits + 10 + extra):
        out = list(base.coeffs[: nmax + 1])
        for p in primes:
            Lp = -mp.log(p)
            t = mp.mpf(p) ** (-r)
            out[0] -= t
            for n in range(1, nmax + 1):
                t = t * Lp / n
                out[n] -= t
    return _round_out(out, digits)


def envelope_bound(r, n, M, digits=15):
    """Certified upper bound on sum over primes p > M of p**-r (log p)**n / n!.

    Integers above M dominate the primes; the stretch where the integrand may
    still rise is summed explicitly and the rest is the exact incomplete
    integral, a finite sum after integrating by parts.
    """
    if not isinstance(r, int) or r < 2:
        raise ValueError("envelope needs r >= 2")
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    if M < 2:
        raise ValueError("M must be at least 2")
    with mp.workdps(digits + 10):
        mprime = max(int(M), int(math.exp(n / r)) + 1)
        total = mp.mpf(0)
        for j in range(int(M) + 1, mprime + 1):
            total += mp.mpf(j) ** (-r) * mp.log(j) ** n
        L = mp.log(mprime)
        integral = mp.mpf(0)
        for j in range(n + 1):
            integral += (
                mp.factorial(n)
                / mp.factorial(j)
                * L ** j
                / mp.mpf(r - 1) ** (n + 1 - j)
            )
        integral *= mp.mpf(mprime) ** (1 - r)
        return +((total + integral) / mp.factorial(n))


def prime_zeta_direct(r, nmax, digits=30, prime_cutoff=10000):
    """Independent evaluation of the r >= 2 family for cross-checking.

    Sums the sieved primes up to the cutoff outright, then closes with
    Moebius inversion of log zeta restricted to the remaining primes, taking
    zeta derivatives from mpmath itself.  No code is shared with
    prime_zeta_taylor beyond the final rounding.
    """
    if not isinstance(r, int) or r < 2:
        raise ValueError("direct route needs r >= 2")
    X = int(prime_cutoff)
    if X < 10:
        raise ValueError("prime cutoff too small to be useful")
    ps = primes_upto(X)
    with mp.workdps(digits + 15):
        thresh = mp.mpf(10) ** (-(digits + 10))
        tiny = mp.mpf(10) ** (-(digits + 14))
        out = [mp.mpf(0)] * (nmax + 1)
        for p in ps:
            Lp = -mp.log(p)
            t = mp.mpf(p) ** (-r)
            out[0] += t
            for n in range(1, nmax + 1):
                t = t * Lp / n
                out[n] += t
        m = 1
        while True:
            x0 = m * r
            bound = 4 * mp.mpf(m) ** nmax * mp.mpf(X) ** (1 - x0)
            if bound < thresh:
                break
            mu = mobius_int(m)
            if mu:
                lz = [
                    mpmath.zeta(mp.mpf(x0), derivative=a) / mp.factorial(a)
                    for a in range(nmax + 1)
                ]
                z0 = lz[0]
                s = [mp.mpf(1)] + [v / z0 for v in lz[1:]]
                lo = _series_log_list(s)
                lo[0] = mp.log(z0)
                for p in ps:
                    lp = mp.log(p)
                    t = mp.mpf(p) ** (-x0)
                    if t < tiny:
                        break
                    j = 1
                    pj = t
                    while pj / j > tiny:
                        base = pj / j
                        lo[0] -= base
                        v = base
                        for a in range(1, nmax + 1):
                            v = v * (-j * lp) / a
                            lo[a] -= v
                        j += 1
                        pj *= t
                scale = mp.mpf(1)
                for n in range(nmax + 1):
                    out[n] += Fraction(mu, m) * scale * lo[n]
                    scale *= m
            m += 1
    return _round_out(out, digits)
