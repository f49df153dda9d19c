"""Formal series over pairs of partitions, and the scalar types they carry.

Coefficients are exact rationals, dense polynomials in the moment order k
(KPoly), or mpmath floats at the ambient working precision.  Mixed arithmetic
promotes in that order: rational times poly stays a poly, anything times a
float becomes a float, a poly scaled by a float keeps polynomial shape with
float coefficients.

A PairSeries is a truncated series indexed by pairs (mu, nu) of partitions,
graded by total weight.  In the powersum basis multiplication is the free
commutative product (part multisets concatenate); log and exp are computed by
a weight-by-weight recurrence obtained from the grading derivation, which
matches the defining power series through the truncation order.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from mpmath import mp

from .characters import character_table
from .partitions import (
    ZERO_MARKER,
    centralizer_order,
    check_partition,
    partitions_of,
    sort_merge,
)

POWERSUM = "powersum"
SCHUR = "schur"
EMPTY_KEY = ((), ())


class KPoly:
    """Dense univariate polynomial, low degree first, zero stored as ()."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def variable(cls):
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __eq__(self, other):
        if isinstance(other, KPoly):
            return self.coeffs == other.coeffs
        # scalar comparison against the constant polynomial
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, KPoly):
            other = KPoly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return KPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return KPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, KPoly):
            if not self.coeffs or not other.coeffs:
                return KPoly()
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return KPoly(out)
        return KPoly(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __repr__(self):
        return "KPoly(%r)" % (self.coeffs,)


def multinomial(n, parts):
    """n! / prod(parts!), requiring the parts to sum to n."""
    parts = tuple(parts)
    if any((not isinstance(x, int)) or x < 0 for x in parts):
        raise ValueError("multinomial parts must be nonnegative integers")
    if sum(parts) != n:
        raise ValueError("multinomial parts sum to %d, expected %d" % (sum(parts), n))
    out = factorial(n)
    for x in parts:
        out //= factorial(x)
    return out


@lru_cache(maxsize=None)
def monomial_eval(mu, xs):
    """Monomial symmetric polynomial m_mu at the points xs (exact).

    Recursion on the last variable: its exponent is either zero or consumes
    one distinct part value of mu.
    """
    if not mu:
        return 1
    if not xs:
        return 0
    head, last = xs[:-1], xs[-1]
    total = monomial_eval(mu, head)
    seen = set()
    for i, r in enumerate(mu):
        if r in seen:
            continue
        seen.add(r)
        rest = mu[:i] + mu[i + 1 :]
        total += last ** r * monomial_eval(rest, head)
    return total


def _det(rows):
    """Determinant by Gaussian elimination; works for Fraction and mpf entries."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = 1
    for c in range(n):
        piv, pv = None, None
        for r in range(c, n):
            if m[r][c] != 0 and (pv is None or abs(m[r][c]) > pv):
                piv, pv = r, abs(m[r][c])
        if piv is None:
            return 0 * det
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] / inv
                for cc in range(c, n):
                    m[r][cc] = m[r][cc] - f * m[c][cc]
    return det


def schur_eval(lam, points):
    """Schur polynomial s_lam at a finite alphabet, by the ratio of alternants.

    Coincident points make the denominator vanish and are rejected; an alphabet
    shorter than the number of rows gives 0.
    """
    lam = check_partition(lam)
    points = tuple(points)
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            if points[i] == points[j]:
                raise ValueError("alphabet points must be pairwise distinct")
    if len(lam) > n:
        return 0
    if n == 0:
        return 1
    lamv = tuple(lam) + (0,) * (n - len(lam))
    num = _det([[x ** (lamv[j] + n - 1 - j) for j in range(n)] for x in points])
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            den *= points[i] - points[j]
    return num / den


class PairSeries:
    """Truncated series over partition pairs, graded by total weight."""

    __slots__ = ("basis", "max_weight", "coeffs")

    def __init__(self, basis, max_weight, coeffs=None):
        if basis not in (POWERSUM, SCHUR):
            raise ValueError("unknown basis %r" % (basis,))
        if not isinstance(max_weight, int) or max_weight < 0:
            raise ValueError("max_weight must be a nonnegative integer")
        self.basis = basis
        self.max_weight = max_weight
        self.coeffs = {}
        if coeffs:
            for (mu, nu), val in coeffs.items():
                mu = check_partition(mu)
                nu = check_partition(nu)
                if sum(mu) + sum(nu) > max_weight:
                    raise ValueError(
                        "key (%r, %r) exceeds max_weight %d" % (mu, nu, max_weight)
                    )
                if val != 0:
                    self.coeffs[(mu, nu)] = val

    def get(self, mu, nu):
        return self.coeffs.get((tuple(mu), tuple(nu)), 0)

    def __eq__(self, other):
        if not isinstance(other, PairSeries):
            return NotImplemented
        return (
            self.basis == other.basis
            and self.max_weight == other.max_weight
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return "PairSeries(%s, max_weight=%d, %d terms)" % (
            self.basis,
            self.max_weight,
            len(self.coeffs),
        )

    def copy(self):
        out = PairSeries(self.basis, self.max_weight)
        out.coeffs = dict(self.coeffs)
        return out


def _key_weight(key):
    return sum(key[0]) + sum(key[1])


def _merge(a, b):
    return tuple(sorted(a + b, reverse=True))


def _components(series):
    comp = [dict() for _ in range(series.max_weight + 1)]
    for key, val in series.coeffs.items():
        comp[_key_weight(key)][key] = val
    return comp


def _mul_comp(d1, d2, acc, scale=1):
    """acc += scale * d1 * d2 for homogeneous component dicts."""
    for (m1, n1), v1 in d1.items():
        for (m2, n2), v2 in d2.items():
            key = (_merge(m1, m2), _merge(n1, n2))
            prev = acc.get(key, 0)
            val = prev + scale * (v1 * v2)
            if val == 0:
                acc.pop(key, None)
            else:
                acc[key] = val


def _from_components(basis, max_weight, comp):
    out = PairSeries(basis, max_weight)
    for d in comp:
        for key, val in d.items():
            if val != 0:
                out.coeffs[key] = val
    return out


def series_mul(a, b):
    """Product of two powersum-basis series, truncated at the smaller order."""
    if a.basis != b.basis:
        raise ValueError("cannot multiply series in different bases")
    if a.basis != POWERSUM:
        raise ValueError("series multiplication requires the powersum basis")
    mw = min(a.max_weight, b.max_weight)
    ca, cb = _components(a), _components(b)
    comp = [dict() for _ in range(mw + 1)]
    for wa in range(mw + 1):
        if not ca[wa]:
            continue
        for wb in range(mw + 1 - wa):
            if cb[wb]:
                _mul_comp(ca[wa], cb[wb], comp[wa + wb])
    return _from_components(POWERSUM, mw, comp)


def series_log(series):
    """Logarithm of a powersum-basis series with constant term exactly 1.

    Weight recurrence L_w = S_w - (1/w) * sum_{j<w} j L_j S_{w-j}; this agrees
    with substituting into log(1+x) = x - x^2/2 + ... up to the truncation.
    """
    if series.basis != POWERSUM:
        raise ValueError("series_log requires the powersum basis")
    if series.coeffs.get(EMPTY_KEY, 0) != 1:
        raise ValueError("series_log needs constant term 1")
    W = series.max_weight
    comp = _components(series)
    log_comp = [dict() for _ in range(W + 1)]
    for w in range(1, W + 1):
        acc = dict(comp[w])
        for j in range(1, w):
            if log_comp[j] and comp[w - j]:
                _mul_comp(log_comp[j], comp[w - j], acc, scale=Fraction(-j, w))
        log_comp[w] = {k: v for k, v in acc.items() if v != 0}
    return _from_components(POWERSUM, W, log_comp)


def series_exp(series):
    """Exponential of a powersum-basis series with zero constant term.

    Weight recurrence F_w = (1/w) * sum_{j<=w} j A_j F_{w-j} with F_0 = 1.
    """
    if series.basis != POWERSUM:
        raise ValueError("series_exp requires the powersum basis")
    if series.coeffs.get(EMPTY_KEY, 0) != 0:
        raise ValueError("series_exp needs zero constant term")
    W = series.max_weight
    comp = _components(series)
    exp_comp = [dict() for _ in range(W + 1)]
    exp_comp[0][EMPTY_KEY] = 1
    for w in range(1, W + 1):
        acc = {}
        for j in range(1, w + 1):
            if comp[j] and exp_comp[w - j]:
                _mul_comp(comp[j], exp_comp[w - j], acc, scale=Fraction(j, w))
        exp_comp[w] = {k: v for k, v in acc.items() if v != 0}
    return _from_components(POWERSUM, W, exp_comp)


def p_to_schur(series):
    """Change both slots from the powersum to the Schur basis.

    The Schur-side coefficient at (kappa, lambda) is the character-weighted sum
    of powersum coefficients over classes of the matching weights, with no
    centralizer division in this direction.
    """
    if series.basis != POWERSUM:
        raise ValueError("series is not in the powersum basis")
    blocks = {}
    for (mu, nu), val in series.coeffs.items():
        blocks.setdefault((sum(mu), sum(nu)), {})[(mu, nu)] = val
    out = PairSeries(SCHUR, series.max_weight)
    for (a, b), blk in blocks.items():
        ta, tb = character_table(a), character_table(b)
        for kap in partitions_of(a):
            for lam in partitions_of(b):
                tot = 0
                for (mu, nu), val in blk.items():
                    tot += ta[(kap, mu)] * tb[(lam, nu)] * val
                if tot != 0:
                    out.coeffs[(kap, lam)] = tot
    return out


def schur_to_p(series):
    """Inverse transition; divides by both centralizer orders."""
    if series.basis != SCHUR:
        raise ValueError("series is not in the Schur basis")
    blocks = {}
    for (kap, lam), val in series.coeffs.items():
        blocks.setdefault((sum(kap), sum(lam)), {})[(kap, lam)] = val
    out = PairSeries(POWERSUM, series.max_weight)
    for (a, b), blk in blocks.items():
        ta, tb = character_table(a), character_table(b)
        for mu in partitions_of(a):
            zmu = centralizer_order(mu)
            for nu in partitions_of(b):
                znu = centralizer_order(nu)
                tot = 0
                for (kap, lam), val in blk.items():
                    tot += ta[(kap, mu)] * tb[(lam, nu)] * val
                if tot != 0:
                    out.coeffs[(mu, nu)] = tot * Fraction(1, zmu * znu)
    return out


def bump_gamburd_residual(kap, lam, points):
    """Residual of the split-alphabet identity for one pair and one alphabet.

    The left side merges the two indices into a single Schur value on the full
    alphabet (zero when the merge collides); the right side sums over balanced
    splits of the alphabet, dividing by the full cross-difference product.
    Expects an even alphabet with both indices at most half its size; returns
    the absolute difference at the current working precision.
    """
    kap = check_partition(kap)
    lam = check_partition(lam)
    points = tuple(points)
    if len(points) % 2:
        raise ValueError("alphabet must have even size")
    k = len(points) // 2
    if len(kap) > k or len(lam) > k:
        raise ValueError("indices must have at most half the alphabet in rows")
    res = sort_merge(kap, lam, k, k)
    if res is ZERO_MARKER:
        lhs = mp.mpf(0)
    else:
        mu, omega = res
        lhs = omega * schur_eval(mu, points)
    rhs = mp.mpf(0)
    idx = range(2 * k)
    for chosen in combinations(idx, k):
        inA = set(chosen)
        A = tuple(points[i] for i in chosen)
        B = tuple(points[i] for i in idx if i not in inA)
        den = 1
        for a in A:
            for b in B:
                den *= a - b
        rhs += schur_eval(kap, A) * schur_eval(lam, B) / den
    return abs(lhs - rhs)
