#include "doctest.h"
#include "g17/bigcx.hpp"

#include <random>

using namespace g17;

// trapezoid rule on K0(x) = int_0^inf exp(-x cosh t) dt; the integrand is
// analytic in a strip so the error decays like exp(-pi^2/h)
static BigReal k0_quadrature(BigReal const & x, prec_t p)
{
    double digits = p * 0.30103;
    double h = 9.8696 / (digits * 2.3026 + 20);
    double T = std::acosh((digits * 2.3026 + 30) / x.to_double() + 1);
    BigReal H(h, p), sum(p);
    long n = (long)(T / h) + 1;
    for (long k = 0; k <= n; ++k) {
        BigReal t = H * k;
        BigReal c(p);
        mpfr_cosh(c.get(), t.get(), MPFR_RNDN);
        BigReal term = exp(-(x * c));
        if (k == 0) term = term / 2;
        sum += term;
    }
    return sum * H;
}

static double rel(BigReal const & a, BigReal const & b)
{
    return (abs(a - b) / abs(b)).to_double();
}

TEST_CASE("exp_pi_i basic values")
{
    prec_t p = 200;
    auto one = exp_pi_i(BigComplex(0.0, 0.0, p), p);
    CHECK(abs(one - BigComplex(1L, p)).to_double() < 1e-58);
    auto m1 = exp_pi_i(BigComplex(1.0, 0.0, p), p);
    CHECK(abs(m1 + BigComplex(1L, p)).to_double() < 1e-58);

    // e^{-pi} by its own Taylor series
    BigReal pi = BigReal::pi(p + 20);
    BigReal term(1L, p + 20), s(1L, p + 20);
    for (long k = 1; k < 200; ++k) {
        term = -(term * pi) / BigReal(k, p + 20);
        s += term;
    }
    auto e = exp_pi_i(BigComplex(0.0, 1.0, p), p);
    CHECK(rel(e.re, BigReal(s, p)) < 1e-58);
    CHECK(abs(e.im).to_double() < 1e-58);
    CHECK(e.re.str(9).substr(0, 9) == "0.0432139");
}

TEST_CASE("exp_pi_i is 2-periodic")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-50, 50), V(-3, 3);
    prec_t p = 300;
    for (int i = 0; i < 20; ++i) {
        BigComplex q(U(rng), V(rng), p);
        BigComplex q2 = q + BigComplex(2L, p);
        auto a = exp_pi_i(q, p), b = exp_pi_i(q2, p);
        CHECK((abs(a - b) / abs(a)).to_double() < std::ldexp(1.0, 4 - (int)p));
    }
}

TEST_CASE("exp_pi_i reports exponent overflow")
{
    BigComplex q(0.0, -1e30, 100);
    CHECK_THROWS_AS(exp_pi_i(q, 100), overflow_error);
}

TEST_CASE("bessel_k0 against quadrature")
{
    prec_t p = 340;
    for (const char * xs : {"1", "0.1", "3.7", "19.9", "20.1", "33"}) {
        BigReal x(std::string(xs), p + 40);
        BigReal ref = k0_quadrature(x, p + 40);
        BigReal got = bessel_k0(BigReal(x, p), p);
        CAPTURE(xs);
        CHECK(rel(got, BigReal(ref, p)) < std::ldexp(1.0, 8 - (int)p));
    }
    BigReal k1 = bessel_k0(BigReal(1L, 200), 200);
    CHECK(k1.str(10).substr(0, 10) == "0.42102443");
    BigReal k01 = bessel_k0(BigReal(std::string("0.1"), 200), 200);
    CHECK(k01.str(11).substr(0, 11) == "2.427069024");
    CHECK(bessel_k0(BigReal(10L, 100), 100) < bessel_k0(BigReal(1L, 100), 100));
    CHECK_THROWS(bessel_k0(BigReal(0L, 100), 100));
}

TEST_CASE("bessel_k0 branches agree across the crossover")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(2.0, 50.0);
    prec_t p = 256;
    for (int i = 0; i < 12; ++i) {
        BigReal x(U(rng), p);
        auto a = bessel_k0_series(x, p), b = bessel_k0_cf(x, p);
        CAPTURE(x.to_double());
        CHECK(rel(a, b) < std::ldexp(1.0, 16 - (int)p));
    }
}

TEST_CASE("bessel_k1 is -K0'")
{
    prec_t p = 300;
    for (double xd : {0.3, 2.0, 15.0, 25.0}) {
        BigReal x(xd, p);
        BigReal h = ldexp(BigReal(1L, p), -60);
        BigReal d = (bessel_k0(x + h, p) - bessel_k0(x - h, p)) / (h * 2);
        CHECK(rel(bessel_k1(x, p), -d) < 1e-30);
    }
}

TEST_CASE("mixed precision takes the minimum")
{
    BigReal a(1L, 100), b(1L, 300);
    CHECK((a + b).prec() == 100);
    CHECK((b * a).prec() == 100);
    BigComplex c(1.0, 1.0, 64), d(1.0, 1.0, 200);
    CHECK((c * d).prec() == 64);
}
