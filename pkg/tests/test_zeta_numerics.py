from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from zetamoments.zeta_numerics import (
    PrimeZetaCoeffs,
    bernoulli,
    envelope_bound,
    install_prime_zeta,
    mobius_int,
    prime_zeta_beyond,
    prime_zeta_direct,
    prime_zeta_taylor,
    primes_upto,
    stieltjes_cumulant,
    stieltjes_gamma,
    zeta_derivative,
    zeta_taylor,
)


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == Fraction(-691, 2730)
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_primes_and_mobius():
    assert primes_upto(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert [mobius_int(m) for m in range(1, 7)] == [1, -1, -1, 0, -1, 1]


class TestZetaTaylor:
    def test_zeta_two(self):
        with mp.workdps(40):
            got = zeta_taylor(2, 0, 35)[0]
            assert abs(got - mp.pi ** 2 / 6) < mp.mpf("1e-34")

    def test_derivatives_match_mpmath(self):
        with mp.workdps(40):
            for x in (2, 3, mp.mpf("2.5")):
                for a in range(4):
                    got = zeta_derivative(a, x, 30)
                    ref = mpmath.zeta(mp.mpf(1) * x, derivative=a)
                    assert abs(got - ref) < mp.mpf("1e-28"), (x, a)

    def test_close_to_pole_allowed_with_buffer(self):
        with mp.workdps(40):
            x = mp.mpf("1.01")
            got = zeta_taylor(x, 1, 25)
            ref0 = mpmath.zeta(x)
            ref1 = mpmath.zeta(x, derivative=1)
            assert abs(got[0] - ref0) < mp.mpf("1e-22")
            assert abs(got[1] - ref1) < mp.mpf("1e-20")

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            zeta_taylor(1.0005, 2, 20)
        with pytest.raises(ValueError):
            zeta_taylor(0.5, 2, 20)
        with pytest.raises(ValueError):
            zeta_derivative(-1, 2, 20)
        with pytest.raises(ValueError):
            zeta_taylor(2, -1, 20)

    def test_first_derivative_matches_finite_difference(self):
        digits = 30
        with mp.workdps(2 * digits):
            h = mp.mpf(10) ** (-digits // 3)
            fd = (zeta_derivative(0, 2 + h, digits) - zeta_derivative(0, 2 - h, digits)) / (2 * h)
            got = zeta_derivative(1, 2, digits)
            assert abs(got - fd) < mp.mpf(10) ** (-(digits // 3))


class TestStieltjes:
    def test_gamma_zero_is_euler_constant(self):
        with mp.workdps(45):
            got = stieltjes_gamma(0, 40)
            assert abs(got - mp.euler) < mp.mpf("1e-39")

    def test_matches_mpmath_stieltjes(self):
        with mp.workdps(35):
            for n in range(6):
                got = stieltjes_gamma(n, 30)
                ref = mpmath.stieltjes(n)
                assert abs(got - ref) < mp.mpf("1e-28"), n

    def test_gamma_one_leading_digits(self):
        with mp.workdps(30):
            got = stieltjes_gamma(1, 25)
            assert abs(got - mp.mpf("-0.0728158454")) < mp.mpf("1e-10")

    def test_cumulants(self):
        with mp.workdps(35):
            assert stieltjes_cumulant(0, 30) == 0
            g0 = stieltjes_gamma(0, 32)
            g1 = stieltjes_gamma(1, 32)
            assert abs(stieltjes_cumulant(1, 30) - g0) < mp.mpf("1e-28")
            # order two combines the first two constants
            ref = 2 * g1 + g0 * g0
            assert abs(stieltjes_cumulant(2, 30) - ref) < mp.mpf("1e-27")

    def test_gamma_series_rebuilds_zeta_near_pole(self):
        # zeta(1+s) = 1/s + sum (-1)^n gamma_n s^n / n!, checked at s = 0.01
        digits = 30
        with mp.workdps(digits + 10):
            s = mp.mpf(1) / 100
            acc = 1 / s
            for n in range(12):
                acc += (-1) ** n * stieltjes_gamma(n, digits) * s ** n / mp.factorial(n)
            direct = zeta_derivative(0, 1 + s, digits)
            assert abs(acc - direct) < mp.mpf(10) ** (-(digits // 2))

    def test_cumulant_series_evaluates_log(self):
        # -sum (-1)^n g_n s^n / n! at s = 0.1 against log(0.1 * zeta(1.1))
        digits = 25
        with mp.workdps(digits + 10):
            s = mp.mpf(1) / 10
            acc = mp.mpf(0)
            for n in range(1, 18):
                acc -= (-1) ** n * stieltjes_cumulant(n, digits) * s ** n / mp.factorial(n)
            direct = mp.log(s * zeta_derivative(0, 1 + s, digits))
            assert abs(acc - direct) < mp.mpf(10) ** (-(digits // 2))

    def test_cumulant_log_exp_round_trip(self):
        # exponentiating the log-series built from cumulants returns the
        # gamma-series coefficients
        with mp.workdps(40):
            lo = [mp.mpf(0)] + [
                -((-1) ** n) * stieltjes_cumulant(n, 32) / mp.factorial(n)
                for n in range(1, 7)
            ]
            ser = [mp.mpf(1)] + [mp.mpf(0)] * 6
            for w in range(1, 7):
                acc = mp.mpf(0)
                for j in range(1, w + 1):
                    acc += mp.mpf(j) / w * lo[j] * ser[w - j]
                ser[w] = acc
            for n in range(6):
                ref = (-1) ** n * stieltjes_gamma(n, 32) / mp.factorial(n)
                assert abs(ser[n + 1] - ref) < mp.mpf("1e-26"), n

    def test_validation(self):
        with pytest.raises(ValueError):
            stieltjes_gamma(-1, 20)


class TestPrimeZetaTaylor:
    def test_regularized_r1_leading_value(self):
        with mp.workdps(35):
            pz = prime_zeta_taylor(1, 3, 30)
            assert pz.r == 1
            assert abs(pz.coeffs[0] - mp.mpf("-0.315718452")) < mp.mpf("5e-10")

    def test_r2_head_value(self):
        # sum of inverse squared primes
        with mp.workdps(35):
            pz = prime_zeta_taylor(2, 0, 30)
            assert abs(pz.coeffs[0] - mp.mpf("0.45224742004106549850654336483224793")) < mp.mpf(
                "1e-28"
            )

    def test_digits_doubling_consistency(self):
        with mp.workdps(40):
            lo = prime_zeta_taylor(3, 4, 15)
            hi = prime_zeta_taylor(3, 4, 30)
            for a, b in zip(lo.coeffs, hi.coeffs):
                assert abs(a - b) < mp.mpf("1e-15")

    def test_superexponential_decay(self):
        with mp.workdps(30):
            for r in range(8, 16):
                c0 = prime_zeta_taylor(r, 0, 25).coeffs[0]
                assert abs(c0 - mp.mpf(2) ** (-r)) < 2 * mp.mpf(3) ** (-r)

    def test_two_routes_agree(self):
        with mp.workdps(35):
            for r in (2, 3, 4):
                a = prime_zeta_taylor(r, 4, 28)
                b = prime_zeta_direct(r, 4, 28)
                for n in range(5):
                    assert abs(a.coeffs[n] - b[n]) < mp.mpf("1e-25"), (r, n)

    def test_r10_against_brute_head(self):
        with mp.workdps(35):
            pz = prime_zeta_taylor(10, 4, 30)
            head = [mp.mpf(0)] * 5
            for p in primes_upto(2000):
                t = mp.mpf(p) ** (-10)
                head[0] += t
                L = -mp.log(p)
                for n in range(1, 5):
                    t = t * L / n
                    head[n] += t
            for n in range(5):
                slack = envelope_bound(10, n, 2000)
                assert abs(pz.coeffs[n] - head[n]) <= slack, n

    def test_tail_bounds_populated_and_small(self):
        with mp.workdps(30):
            pz = prime_zeta_taylor(2, 4, 25)
            assert len(pz.tail_bounds) == 5
            for tb in pz.tail_bounds:
                assert 0 < tb < mp.mpf("1e-20")

    def test_coeffs_within_full_prime_envelope(self):
        # |c_n| can never exceed the all-primes envelope
        with mp.workdps(30):
            for r in (2, 3):
                pz = prime_zeta_taylor(r, 4, 25)
                for n in range(5):
                    cap = mp.mpf(2) ** (-r) * mp.log(2) ** n / mp.factorial(
                        n
                    ) + envelope_bound(r, n, 2)
                    assert abs(pz.coeffs[n]) <= cap, (r, n)

    def test_validation(self):
        with pytest.raises(ValueError):
            prime_zeta_taylor(0, 2, 20)
        with pytest.raises(ValueError):
            prime_zeta_taylor(2, -1, 20)
        with pytest.raises(ValueError):
            prime_zeta_direct(1, 2, 20)


class TestBeyondAndEnvelope:
    def test_beyond_nothing_is_full(self):
        with mp.workdps(30):
            full = prime_zeta_taylor(2, 3, 25).coeffs
            beyond = prime_zeta_beyond(2, 3, [], 25)
            for a, b in zip(full, beyond):
                assert abs(a - b) < mp.mpf("1e-24")

    def test_beyond_bounded_by_envelope(self):
        with mp.workdps(35):
            ps = primes_upto(100)
            for r in (2, 3):
                tail = prime_zeta_beyond(r, 4, ps, 28)
                for n in range(5):
                    assert abs(tail[n]) <= envelope_bound(r, n, 100), (r, n)

    def test_beyond_matches_midrange_brute_sum(self):
        with mp.workdps(40):
            ps_small = primes_upto(50)
            tail = prime_zeta_beyond(3, 3, ps_small, 30)
            mid = [mp.mpf(0)] * 4
            for p in primes_upto(20000):
                if p <= 50:
                    continue
                t = mp.mpf(p) ** (-3)
                mid[0] += t
                L = -mp.log(p)
                for n in range(1, 4):
                    t = t * L / n
                    mid[n] += t
            for n in range(4):
                assert abs(tail[n] - mid[n]) <= envelope_bound(3, n, 20000) + mp.mpf(
                    "1e-28"
                ), n

    def test_envelope_validation(self):
        with pytest.raises(ValueError):
            envelope_bound(1, 0, 100)
        with pytest.raises(ValueError):
            envelope_bound(2, -1, 100)
        with pytest.raises(ValueError):
            envelope_bound(2, 0, 1)

    def test_envelope_decreases_in_cutoff(self):
        with mp.workdps(20):
            b1 = envelope_bound(2, 2, 100)
            b2 = envelope_bound(2, 2, 1000)
            assert b2 < b1


class TestInstallHook:
    def test_install_and_clear(self):
        with mp.workdps(30):
            real = prime_zeta_taylor(5, 2, 20)
            fake = PrimeZetaCoeffs(5, tuple(c + 1 for c in real.coeffs), 25)
            install_prime_zeta(5, fake)
            try:
                got = prime_zeta_taylor(5, 2, 20)
                assert got is fake
            finally:
                install_prime_zeta(5, None)
            again = prime_zeta_taylor(5, 2, 20)
            assert abs(again.coeffs[0] - real.coeffs[0]) < mp.mpf("1e-18")

    def test_insufficient_entry_recomputed(self):
        with mp.workdps(30):
            real = prime_zeta_taylor(6, 2, 20)
            shallow = PrimeZetaCoeffs(6, real.coeffs[:2], 20)
            install_prime_zeta(6, shallow)
            try:
                got = prime_zeta_taylor(6, 2, 20)
                assert len(got.coeffs) >= 3
                weak = PrimeZetaCoeffs(6, real.coeffs, 10)
                install_prime_zeta(6, weak)
                got = prime_zeta_taylor(6, 2, 20)
                assert got.digits >= 20
            finally:
                install_prime_zeta(6, None)
