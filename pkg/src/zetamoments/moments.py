"""Moment polynomial pipeline: exact tables feeding big-real coefficients.

The chain: the logarithm of an exact pair series gives a rational f-table;
contracting the f-table against monomial symmetric evaluations gives the V
polynomials in k; V at an integer k combines with prime power sums into the
W coefficients; exponentiating the W series and switching both slots to the
Schur basis gives the d-table; d-entries paired with complement skew
dimensions assemble every coefficient c_N(k) of the degree-k**2 moment
polynomial for the 2k-th moment of zeta on the critical line.

The naive r-sum defining W diverges for k >= 3 because the V side outgrows
the decay of the prime family.  The engine therefore splits: local log
factors are accumulated prime by prime up to a cutoff (with each prime's
leading 1/p part removed), and the r-sum is restarted on the primes beyond
the cutoff only, where it converges geometrically.  The cutoff comes from
the digit and tolerance request; tail estimates combine a certified envelope
on the beyond-cutoff prime sums with the measured decay of the last few
increments.
"""

import math
import warnings
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from mpmath import mp

from . import __version__
from .characters import character_table
from .frobenius_schur import dim_complement
from .partitions import centralizer_order, check_partition, dim_hook, partitions_of
from .symseries import (
    EMPTY_KEY,
    POWERSUM,
    KPoly,
    PairSeries,
    monomial_eval,
    multinomial,
    p_to_schur,
    series_exp,
    series_log,
    series_mul,
)
from .zeta_numerics import (
    envelope_bound,
    prime_zeta_beyond,
    prime_zeta_taylor,
    primes_upto,
)

try:
    from math import sumprod as _sumprod
except ImportError:
    def _sumprod(a, b):
        return sum(x * y for x, y in zip(a, b))


class ValueWithError(NamedTuple):
    """A big real paired with an absolute error estimate."""

    value: object
    error: object


class NonConvergenceError(RuntimeError):
    """A truncation scheme hit its hard cap before reaching the target.

    partial carries whatever table was accumulated so far and meta the
    parameters in force, so callers can report diagnostics rather than a
    bare failure.
    """

    def __init__(self, message, partial=None, meta=None):
        super().__init__(message)
        self.partial = partial
        self.meta = meta


class FTable(NamedTuple):
    """Exact rational log-series table over equal-weight partition pairs."""

    max_weight: int
    entries: dict


class MomentPolynomial(NamedTuple):
    """Full coefficient family of one moment polynomial.

    coefficients holds (N, value, error) triples for N = 0..k**2, value
    multiplying x**(k**2 - N); metadata records the truncation actually used.
    """

    k: int
    digits: int
    coefficients: tuple
    metadata: dict

    def evaluate(self, x):
        acc = mp.mpf(0)
        for n, value, _ in self.coefficients:
            acc += value * mp.mpf(x) ** (self.k * self.k - n)
        return acc


_f_store = {"built": None, "installed": None}


def install_f_table(entry):
    """Register (or with None, drop) an externally supplied f-table."""
    _f_store["installed"] = entry


def _build_f_table(n_max):
    coeffs = {EMPTY_KEY: 1}
    for a in range(1, n_max + 1):
        for ka in partitions_of(a):
            za = centralizer_order(ka)
            for la in partitions_of(a):
                coeffs[(ka, la)] = Fraction(1, za * centralizer_order(la))
    series = PairSeries(POWERSUM, 2 * n_max, coeffs)
    return FTable(n_max, dict(series_log(series).coeffs))


def _f_entries(n_max):
    inst = _f_store["installed"]
    if inst is not None and inst.max_weight >= n_max:
        return inst.entries
    built = _f_store["built"]
    if built is None or built.max_weight < n_max:
        built = _build_f_table(n_max)
        _f_store["built"] = built
    return built.entries


def f_table(n_max):
    """Exact coupling table: log coefficients of the diagonal pair series.

    The series sums p_kappa (x) p_lambda over equal-weight pairs, each term
    divided by both centralizer orders; entry (kappa, lambda) of the table is
    the matching coefficient of its formal logarithm.  Entries exist exactly
    for 1 <= |kappa| = |lambda| <= n_max.
    """
    if not isinstance(n_max, int) or n_max < 1:
        raise ValueError("n_max must be a positive integer")
    entries = _f_entries(n_max)
    picked = {key: v for key, v in entries.items() if sum(key[0]) <= n_max}
    return FTable(n_max, picked)


def V_poly(r, mu, nu):
    """The weight-r mixing polynomial in k attached to the key (mu, nu).

    Exact: a multinomial prefactor times the f-table at size r contracted
    against monomial symmetric evaluations at the parts of each size-r
    partition, with k carrying the length difference as its exponent.  The
    degree never exceeds 2r - len(mu) - len(nu).
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError("r must be a positive integer")
    mu = check_partition(mu)
    nu = check_partition(nu)
    ft = _f_entries(r)
    scale = multinomial(sum(mu) + sum(nu), mu + nu)
    by_exp = {}
    for ka in partitions_of(r):
        ma = monomial_eval(mu, ka)
        if not ma:
            continue
        for la in partitions_of(r):
            fv = ft.get((ka, la))
            if not fv:
                continue
            mb = monomial_eval(nu, la)
            if not mb:
                continue
            e = len(ka) + len(la) - len(mu) - len(nu)
            by_exp[e] = by_exp.get(e, Fraction(0)) + fv * ma * mb
    if not by_exp:
        return KPoly()
    top = max(by_exp)
    return KPoly([scale * by_exp.get(e, Fraction(0)) for e in range(top + 1)])


@lru_cache(maxsize=None)
def _v_fixed(k, wmax, r, absolute=False):
    """V values at integer k for every key of total weight <= wmax, exact.

    Matrix route: contract the f-table once per left slot, then dot against
    each right slot.  absolute=True replaces every f entry by its magnitude,
    giving a termwise upper bound used by the tail bookkeeping.
    """
    ft = _f_entries(r)
    kaps = partitions_of(r)
    nk = len(kaps)
    mus = [m for a in range(wmax + 1) for m in partitions_of(a)]
    amat = {m: [monomial_eval(m, ka) * k ** len(ka) for ka in kaps] for m in mus}
    rows = []
    for ka in kaps:
        row = []
        for la in kaps:
            fv = ft.get((ka, la), 0)
            row.append(abs(fv) if absolute else fv)
        rows.append(row)
    half = {}
    for m in mus:
        cur = [Fraction(0)] * nk
        am = amat[m]
        for i in range(nk):
            ai = am[i]
            if ai:
                fr = rows[i]
                for j in range(nk):
                    if fr[j]:
                        cur[j] += ai * fr[j]
        half[m] = cur
    out = {}
    for m in mus:
        wm = sum(m)
        hm = half[m]
        for nu in mus:
            if wm + sum(nu) > wmax:
                continue
            an = amat[nu]
            acc = Fraction(0)
            for j in range(nk):
                if an[j] and hm[j]:
                    acc += hm[j] * an[j]
            if acc:
                acc = acc * multinomial(wm + sum(nu), m + nu)
                out[(m, nu)] = acc / k ** (len(m) + len(nu))
    return out


@lru_cache(maxsize=None)
def _gauss_square_poly(k):
    """Polynomial part of the local Euler factor: squared binomial row k-1."""
    return tuple(Fraction(math.comb(k - 1, j) ** 2) for j in range(k))


@lru_cache(maxsize=None)
def _b_series(k, R, absolute=False):
    """[Q^r] log of the local factor, split as (2k-1)/r plus the log of the
    polynomial part; absolute=True accumulates magnitudes instead."""
    pol = _gauss_square_poly(k)
    x = [Fraction(0)] * (R + 1)
    for j in range(1, min(k - 1, R) + 1):
        x[j] = pol[j]
    cur = [Fraction(1)] + [Fraction(0)] * R
    out = [Fraction(0)] * (R + 1)
    for m in range(1, R + 1):
        new = [Fraction(0)] * (R + 1)
        for i in range(R + 1):
            ci = cur[i]
            if ci:
                for j in range(1, min(k - 1, R - i) + 1):
                    if x[j]:
                        new[i + j] += ci * x[j]
        cur = new
        if not any(cur):
            break
        sgn = 1 if (m % 2 == 1 or absolute) else -1
        for i in range(R + 1):
            out[i] += sgn * Fraction(cur[i], m)
    for r in range(1, R + 1):
        out[r] += Fraction(2 * k - 1, r)
    return tuple(out)


def _b_coeff(k, r, absolute=False):
    R = ((r + 39) // 40) * 40
    return _b_series(k, R, absolute)[r]


@lru_cache(maxsize=None)
def _rho_inv(k):
    """Growth proxy for the local log coefficients, used to place cutoffs."""
    return 1 + max(math.comb(k - 1, j) ** 2 for j in range(k))


@lru_cache(maxsize=None)
def _keys_upto(wmax):
    out = []
    for a in range(wmax + 1):
        for m in partitions_of(a):
            for b in range(wmax + 1 - a):
                for nu in partitions_of(b):
                    out.append((m, nu))
    return tuple(out)


def _norm_den(mu):
    mult = {}
    den = 1
    for q in mu:
        den *= math.factorial(q)
        mult[q] = mult.get(q, 0) + 1
    for c in mult.values():
        den *= math.factorial(c)
    return den


@lru_cache(maxsize=None)
def _a_seqs(k, wmax, U):
    """Integer coefficient lists of the local numerator factors.

    Entry mu, index u: the T**u coefficient of (1-T)**-k times, for each part
    m of mu, the weighted geometric sum of u**(m-1) T**u.  Built by extending
    a parent sequence one part at a time.
    """
    mus = sorted(
        {m for a in range(wmax + 1) for m in partitions_of(a)},
        key=lambda m: (len(m), m),
    )
    out = {(): [math.comb(u + k - 1, k - 1) for u in range(U + 1)]}
    wt_cache = {}
    for m in mus:
        if m in out:
            continue
        part = m[-1]
        if part not in wt_cache:
            wt_cache[part] = [0] + [u ** (part - 1) for u in range(1, U + 1)]
        wt = wt_cache[part]
        par = out[m[:-1]]
        new = [0] * (U + 1)
        for u in range(U + 1):
            cu = par[u]
            if cu:
                for v in range(1, U + 1 - u):
                    new[u + v] += cu * wt[v]
        out[m] = new
    return out


_w_cache = {}
_installed_w = {}


def install_w_table(k, entries):
    """Register (or with None, drop) a complete W table override for k.

    Entries map (mu, nu) keys to numbers or ValueWithError pairs; keys the
    table omits count as exactly zero.  Meant for cache plumbing and for
    probing which entries downstream values depend on.
    """
    if entries is None:
        _installed_w.pop(k, None)
    else:
        _installed_w[k] = dict(entries)


def _prime_cutoff(k, digits, tol_f):
    log10_t = 12 + max(digits, -math.log10(tol_f))
    cut = max(50.0, _rho_inv(k) * 10 ** (log10_t / 15))
    if cut > 2_000_000:
        raise NonConvergenceError(
            "prime cutoff %.0f beyond the supported range; lower digits or tol"
            % cut,
            meta={"k": k, "digits": digits, "tol": tol_f},
        )
    return int(math.ceil(cut))


def _w_full(k, wmax, digits, tol=None):
    """All W values for keys of total weight <= wmax: (values, errors, meta)."""
    inst = _installed_w.get(k)
    if inst is not None:
        vals, errs = {}, {}
        for key in _keys_upto(wmax):
            got = inst.get(key, 0)
            if isinstance(got, ValueWithError):
                vals[key] = mp.mpf(1) * got.value
                errs[key] = mp.mpf(1) * got.error
            else:
                vals[key] = mp.mpf(1) * got
                errs[key] = mp.mpf(0)
        meta = {"r_max_used": None, "prime_cutoff": None, "digits": digits,
                "tol": None, "installed": True}
        return vals, errs, meta
    tol_f = 10.0 ** (-digits) if tol is None else float(tol)
    ckey = (k, wmax, digits, tol_f)
    hit = _w_cache.get(ckey)
    if hit is None:
        for (ck, cw, cd, ct), stored in _w_cache.items():
            if ck == k and cd == digits and ct == tol_f and cw >= wmax:
                hit = stored
                break
    if hit is None:
        hit = _w_engine(k, wmax, digits, tol_f)
        _w_cache[ckey] = hit
    vals = {key: hit[0][key] for key in _keys_upto(wmax)}
    errs = {key: hit[1][key] for key in _keys_upto(wmax)}
    return vals, errs, dict(hit[2])


def _w_engine(k, wmax, digits, tol_f):
    wdps = digits + 15
    pcut = _prime_cutoff(k, digits, tol_f)
    keys = _keys_upto(wmax)
    mus = [m for a in range(wmax + 1) for m in partitions_of(a)]
    with mp.workdps(wdps):
        tol_eff = mp.mpf(tol_f)
        primes = primes_upto(pcut)
        vals = {key: mp.mpf(0) for key in keys}
        u_top = int((wdps * math.log(10) + 30) / math.log(2)) + 30
        aseq = _a_seqs(k, wmax, u_top)
        normf = {
            key: mp.mpf(1) / (_norm_den(key[0]) * _norm_den(key[1]))
            for key in keys
        }
        norm1 = {}
        for m, nu in keys:
            if len(m) <= 1 and len(nu) <= 1:
                den = (math.factorial(m[0]) if m else 1) * (
                    math.factorial(nu[0]) if nu else 1
                )
                norm1[(m, nu)] = mp.mpf(k ** (2 - len(m) - len(nu))) / den
        for p in primes:
            lp = mp.log(p)
            pinv = mp.mpf(1) / p
            lpow = [mp.mpf(1)]
            for _ in range(wmax):
                lpow.append(lpow[-1] * (-lp))
            up = min(u_top, int((wdps * math.log(10) + 30) / math.log(p)) + 30)
            pw = [1] * (up + 1)
            for u in range(up - 1, -1, -1):
                pw[u] = pw[u + 1] * p
            scaled = {m: [aseq[m][u] * pw[u] for u in range(up + 1)] for m in mus}
            p_top = mp.mpf(p) ** (-up)
            dots = {}
            z = {}
            for m, nu in keys:
                pair = (m, nu) if m <= nu else (nu, m)
                d = dots.get(pair)
                if d is None:
                    d = _sumprod(aseq[pair[0]][: up + 1], scaled[pair[1]])
                    dots[pair] = d
                z[(m, nu)] = (
                    mp.mpf(d) * p_top * normf[(m, nu)] * lpow[sum(m) + sum(nu)]
                )
            z0 = z[EMPTY_KEY]
            vals[EMPTY_KEY] += mp.log(z0) - norm1[EMPTY_KEY] * pinv
            if wmax:
                norm = {key: v / z0 for key, v in z.items()}
                norm[EMPTY_KEY] = mp.mpf(1)
                glog = series_log(PairSeries(POWERSUM, wmax, norm)).coeffs
                for key in keys:
                    if key == EMPTY_KEY:
                        continue
                    g = glog.get(key, 0)
                    n1 = norm1.get(key)
                    if n1 is not None:
                        g = g - n1 * lpow[sum(key[0]) + sum(key[1])] * pinv
                    if g:
                        vals[key] += g
        head = prime_zeta_taylor(1, wmax, wdps - 5).coeffs
        for key, fv in _v_fixed(k, wmax, 1).items():
            n = sum(key[0]) + sum(key[1])
            vals[key] += mp.mpf(fv.numerator) / fv.denominator * head[n]

        def tail_v(r):
            if wmax:
                return _v_fixed(k, wmax, r), _v_fixed(k, wmax, r, True)
            return (
                {EMPTY_KEY: _b_coeff(k, r)},
                {EMPTY_KEY: _b_coeff(k, r, True)},
            )

        history = {key: [] for key in keys}
        gmax_hist = []
        growth = []
        vb_prev_max = None
        envtail = {}
        streak = 0
        min_stop = max(8, wmax + 3)
        r = 1
        while True:
            r += 1
            if r > 200:
                raise NonConvergenceError(
                    "W tail not converged by r=200 at k=%d" % k,
                    partial=dict(vals),
                    meta={"prime_cutoff": pcut, "r_max_used": r - 1,
                          "digits": digits, "tol": tol_f},
                )
            vr, vb = tail_v(r)
            ct = prime_zeta_beyond(r, wmax, primes, wdps - 5)
            allsmall = True
            tmax = mp.mpf(0)
            for key, fv in vr.items():
                n = sum(key[0]) + sum(key[1])
                term = mp.mpf(fv.numerator) / fv.denominator * ct[n]
                vals[key] += term
                mag = abs(term)
                tmax = max(tmax, mag)
                h = history[key]
                h.append(mag)
                if len(h) > 3:
                    del h[0]
                if mag >= tol_eff * (1 + abs(vals[key])):
                    allsmall = False
            gmax_hist.append(tmax)
            if len(gmax_hist) > 4:
                del gmax_hist[0]
            streak = streak + 1 if allsmall else 0
            vb_max = max(
                (mp.mpf(f.numerator) / f.denominator for f in vb.values()),
                default=mp.mpf(0),
            )
            if vb_prev_max:
                growth.append(float(vb_max / vb_prev_max))
                if len(growth) > 3:
                    del growth[0]
            vb_prev_max = vb_max
            if r < min_stop or streak < 3:
                continue
            # certified closure: beyond-cutoff prime families shrink at least
            # by 1/pcut per step in r, the V bound grows by a measured factor
            chat = mp.mpf(max([2.0] + growth))
            envs = [envelope_bound(r, n, pcut) for n in range(wmax + 1)]
            ok = True
            for key in keys:
                fb = vb.get(key)
                n = sum(key[0]) + sum(key[1])
                if fb:
                    bound = (
                        mp.mpf(fb.numerator) / fb.denominator
                        * envs[n] * chat / (pcut - chat)
                    )
                else:
                    bound = mp.mpf(0)
                envtail[key] = bound
                if bound >= tol_eff * (1 + abs(vals[key])):
                    ok = False
            if ok:
                break
        q = 0.5
        rats = [
            float(gmax_hist[i + 1] / gmax_hist[i])
            for i in range(len(gmax_hist) - 1)
            if gmax_hist[i] > 0
        ]
        if rats:
            q = min(0.9, max(1e-6, max(rats)))
        qm = mp.mpf(q)
        floor = mp.mpf(10) ** (-(digits + 6))
        errs = {}
        for key in keys:
            h = history[key]
            geo = mp.mpf("1.5") * max(h) * qm / (1 - qm) if h else mp.mpf(0)
            env = mp.mpf("1.5") * envtail.get(key, mp.mpf(0))
            errs[key] = geo + env + floor * (1 + abs(vals[key]))
        meta = {"r_max_used": r, "prime_cutoff": pcut, "digits": digits,
                "tol": tol_f}
    with mp.workdps(digits + 8):
        vals = {key: +v for key, v in vals.items()}
        errs = {key: +v for key, v in errs.items()}
    return vals, errs, meta


def W_coeff(mu, nu, k, digits=50, tol=None):
    """One W value with its error estimate.

    The tail sum over r stops at the first index past the floor where three
    consecutive increments stay below tolerance and the certified prime
    envelope closes the remainder; a hard cap at r=200 raises
    NonConvergenceError carrying the partial table.
    """
    mu = check_partition(mu)
    nu = check_partition(nu)
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    vals, errs, _ = _w_full(k, sum(mu) + sum(nu), digits, tol)
    return ValueWithError(vals[(mu, nu)], errs[(mu, nu)])


def d_table(k, n_max, digits=50, tol=None):
    """Schur-basis coefficients of the exponentiated W series, with errors.

    Exponentiates the powersum-basis W series to total weight n_max, converts
    both slots to the Schur basis, and scales everything by the zeroth
    exponential factor.  Error bounds are first order: the magnitude series
    of the exponential convolved with the W error bounds, pushed through the
    same basis change with absolute character values.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    if not isinstance(n_max, int) or n_max < 0:
        raise ValueError("n_max must be a nonnegative integer")
    if n_max > k * k:
        raise ValueError("n_max cannot exceed k**2")
    vals, werr, _ = _w_full(k, n_max, digits, tol)
    with mp.workdps(digits + 12):
        expo = {key: v for key, v in vals.items() if key != EMPTY_KEY and v != 0}
        eser = series_exp(PairSeries(POWERSUM, n_max, expo))
        sser = p_to_schur(eser)
        aval = mp.exp(vals[EMPTY_KEY])
        a_err = aval * werr[EMPTY_KEY]
        mags = {key: abs(v) for key, v in eser.coeffs.items()}
        errser = {
            key: v for key, v in werr.items() if key != EMPTY_KEY and v != 0
        }
        delta = series_mul(
            PairSeries(POWERSUM, n_max, mags),
            PairSeries(POWERSUM, n_max, errser),
        ).coeffs
        out = {}
        for kap, lam in _keys_upto(n_max):
            ta = character_table(sum(kap))
            tb = character_table(sum(lam))
            derr = mp.mpf(0)
            for m in partitions_of(sum(kap)):
                xa = ta[(kap, m)]
                if not xa:
                    continue
                for nu in partitions_of(sum(lam)):
                    xb = tb[(lam, nu)]
                    if xb:
                        dv = delta.get((m, nu))
                        if dv:
                            derr += abs(xa * xb) * dv
            sval = sser.get(kap, lam)
            out[(kap, lam)] = ValueWithError(
                +(aval * sval), +(aval * derr + abs(sval) * a_err)
            )
    return out


class WPoly:
    """Polynomial with rational coefficients in formal per-key symbols.

    terms maps each monomial, a sorted tuple of (mu, nu) keys read as a
    multiset, to its coefficient.  The symbolic d-table uses these to keep
    the exact dependence of every Schur coefficient on the W values visible
    instead of substituting numbers.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    self.terms[tuple(sorted(mono))] = Fraction(c)

    @classmethod
    def constant(cls, c):
        return cls({(): c})

    @classmethod
    def symbol(cls, mu, nu):
        return cls({((tuple(mu), tuple(nu)),): 1})

    def substitute(self, values):
        tot = 0
        for mono, c in self.terms.items():
            prod = c
            for key in mono:
                prod = prod * values[key]
            tot = prod + tot
        return tot

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, WPoly):
            return self.terms == other.terms
        if not self.terms:
            return other == 0
        only = self.terms.get(())
        return len(self.terms) == 1 and only is not None and only == other

    def __add__(self, other):
        if not isinstance(other, WPoly):
            other = WPoly.constant(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        ret = WPoly()
        ret.terms = out
        return ret

    __radd__ = __add__

    def __neg__(self):
        ret = WPoly()
        ret.terms = {m: -c for m, c in self.terms.items()}
        return ret

    def __sub__(self, other):
        return self + -1 * other

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, WPoly):
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    mono = tuple(sorted(m1 + m2))
                    s = out.get(mono, 0) + c1 * c2
                    if s:
                        out[mono] = s
                    else:
                        out.pop(mono, None)
            ret = WPoly()
            ret.terms = out
            return ret
        if not other:
            return WPoly()
        ret = WPoly()
        ret.terms = {m: c * other for m, c in self.terms.items()}
        return ret

    __rmul__ = __mul__

    def __repr__(self):
        return "WPoly(%r)" % (self.terms,)


def d_table_symbolic(n_max):
    """Schur-basis coefficients as explicit polynomials in the W symbols.

    Runs the same exponential and basis change as d_table but with one
    formal symbol per nonempty key, so each entry comes back as a WPoly with
    rational coefficients.  The overall factor exp of the empty-key W is not
    polynomial and stays outside: numeric d equals that factor times the
    substituted entry.  Kept to small weights, where the expansion is
    readable; the numeric pipeline covers the rest.
    """
    if not isinstance(n_max, int) or n_max < 0:
        raise ValueError("n_max must be a nonnegative integer")
    if n_max > 3:
        raise ValueError("symbolic mode is limited to n_max <= 3")
    sym = {
        key: WPoly.symbol(*key)
        for key in _keys_upto(n_max)
        if key != EMPTY_KEY
    }
    sser = p_to_schur(series_exp(PairSeries(POWERSUM, n_max, sym)))
    out = {}
    for kap, lam in _keys_upto(n_max):
        got = sser.get(kap, lam)
        out[(kap, lam)] = got if isinstance(got, WPoly) else WPoly.constant(got)
    return out


def g_factor(k):
    """Number of standard fillings of the k by k square, exactly."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a nonnegative integer")
    return dim_hook((k,) * k)


def a_factor(k, digits=50):
    """The arithmetic Euler product over all primes, to the digit request.

    Local factors are evaluated outright up to a cutoff; the log of the
    remaining product is a series in beyond-cutoff prime power sums whose
    terms shrink geometrically, summed until two consecutive terms fall
    below the target.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a nonnegative integer")
    if k == 0:
        return mp.mpf(1)
    cutoff = max(800, 4 * _rho_inv(k))
    with mp.workdps(digits + 15):
        primes = primes_upto(cutoff)
        e2 = (k - 1) ** 2
        pol = _gauss_square_poly(k)
        acc = mp.mpf(0)
        for p in primes:
            q = mp.mpf(1) / p
            loc = mp.mpf(0)
            for j in range(len(pol) - 1, -1, -1):
                loc = loc * q + int(pol[j])
            acc += e2 * mp.log(1 - q) + mp.log(loc)
        thresh = mp.mpf(10) ** (-(digits + 8))
        small = 0
        r = 1
        while small < 2:
            r += 1
            if r > 400:
                raise NonConvergenceError(
                    "Euler product tail not closed by r=400", meta={"k": k}
                )
            br = _b_coeff(k, r) - Fraction(k * k, r)
            tail0 = prime_zeta_beyond(r, 0, primes, digits + 6)[0]
            term = mp.mpf(br.numerator) / br.denominator * tail0
            acc += term
            small = small + 1 if abs(term) < thresh * max(1, abs(acc)) else 0
        out = mp.exp(acc)
    with mp.workdps(digits + 5):
        return +out


def _assemble(N, k, digits, dtab):
    with mp.workdps(digits + 10):
        acc = mp.mpf(0)
        err = mp.mpf(0)
        for kap, lam in _keys_upto(N):
            if sum(kap) + sum(lam) != N:
                continue
            dm = dim_complement(kap, lam, k)
            if dm:
                dv = dtab[(kap, lam)]
                acc += dv.value * dm
                err += dv.error * dm
        fct = mp.factorial(k * k - N)
        return ValueWithError(+(acc / fct), +(err / fct))


def c_coeff(N, k, digits=50, tol=None):
    """Coefficient c_N(k): the weight-N d-entries against complement skew
    dimensions, divided by (k**2 - N)!.

    N beyond k**2 is the degenerate regime where the assembly is empty; the
    value is exactly zero and a warning notes it.
    """
    if not isinstance(N, int) or N < 0:
        raise ValueError("N must be a nonnegative integer")
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a nonnegative integer")
    if N > k * k:
        warnings.warn(
            "c_%d at k=%d lies beyond degree k**2; empty assembly, exact 0"
            % (N, k)
        )
        return ValueWithError(mp.mpf(0), mp.mpf(0))
    if k == 0:
        return ValueWithError(mp.mpf(1), mp.mpf(0))
    return _assemble(N, k, digits, d_table(k, N, digits, tol))


def moment_polynomial(k, digits=50, tol=None):
    """Every coefficient of the degree-k**2 moment polynomial at once.

    One shared W engine run and one shared d-table cover all N; the k = 0
    polynomial is the empty-product constant 1.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a nonnegative integer")
    if not isinstance(digits, int) or digits < 1:
        raise ValueError("digits must be a positive integer")
    if k == 0:
        meta = {"r_max_used": 0, "prime_cutoff": 0, "tol": None,
                "cache_versions": {"zetamoments": __version__}}
        return MomentPolynomial(0, digits, ((0, mp.mpf(1), mp.mpf(0)),), meta)
    _, _, wmeta = _w_full(k, k * k, digits, tol)
    dtab = d_table(k, k * k, digits, tol)
    triples = []
    for N in range(k * k + 1):
        got = _assemble(N, k, digits, dtab)
        triples.append((N, got.value, got.error))
    meta = {
        "r_max_used": wmeta.get("r_max_used"),
        "prime_cutoff": wmeta.get("prime_cutoff"),
        "tol": wmeta.get("tol"),
        "cache_versions": {"zetamoments": __version__},
    }
    return MomentPolynomial(k, digits, tuple(triples), meta)
