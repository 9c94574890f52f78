#include "g17/bigcx.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace g17 {

BigReal::BigReal(std::string const & s, prec_t p)
{
    mpfr_init2(v, p);
    if (mpfr_set_str(v, s.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(v))
        throw std::invalid_argument("bad real literal: " + s);
}

mpz_class BigReal::round_to_mpz() const
{
    mpz_class r;
    mpfr_get_z(r.get_mpz_t(), v, MPFR_RNDN);
    return r;
}

std::string BigReal::str(int digits) const
{
    if (!mpfr_number_p(v)) return mpfr_nan_p(v) ? "nan" : (mpfr_sgn(v) > 0 ? "inf" : "-inf");
    if (digits <= 0) digits = (int)(prec() * 0.30102999566398120) + 1;
    char * buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

static inline prec_t pmin(BigReal const & a, BigReal const & b) { return std::min(a.prec(), b.prec()); }

BigReal & BigReal::operator+=(BigReal const & o)
{
    if (o.prec() < prec()) mpfr_prec_round(v, o.prec(), MPFR_RNDN);
    mpfr_add(v, v, o.v, MPFR_RNDN);
    return *this;
}
BigReal & BigReal::operator-=(BigReal const & o)
{
    if (o.prec() < prec()) mpfr_prec_round(v, o.prec(), MPFR_RNDN);
    mpfr_sub(v, v, o.v, MPFR_RNDN);
    return *this;
}
BigReal & BigReal::operator*=(BigReal const & o)
{
    if (o.prec() < prec()) mpfr_prec_round(v, o.prec(), MPFR_RNDN);
    mpfr_mul(v, v, o.v, MPFR_RNDN);
    return *this;
}
BigReal & BigReal::operator/=(BigReal const & o)
{
    if (o.prec() < prec()) mpfr_prec_round(v, o.prec(), MPFR_RNDN);
    mpfr_div(v, v, o.v, MPFR_RNDN);
    return *this;
}

BigReal operator+(BigReal const & a, BigReal const & b) { BigReal r(pmin(a, b)); mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
BigReal operator-(BigReal const & a, BigReal const & b) { BigReal r(pmin(a, b)); mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
BigReal operator*(BigReal const & a, BigReal const & b) { BigReal r(pmin(a, b)); mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
BigReal operator/(BigReal const & a, BigReal const & b) { BigReal r(pmin(a, b)); mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
BigReal operator*(BigReal const & a, long b) { BigReal r(a.prec()); mpfr_mul_si(r.get(), a.get(), b, MPFR_RNDN); return r; }
BigReal operator/(BigReal const & a, long b) { BigReal r(a.prec()); mpfr_div_si(r.get(), a.get(), b, MPFR_RNDN); return r; }
bool operator<(BigReal const & a, BigReal const & b) { return mpfr_less_p(a.get(), b.get()); }

BigReal abs(BigReal const & a) { BigReal r(a.prec()); mpfr_abs(r.get(), a.get(), MPFR_RNDN); return r; }
BigReal sqrt(BigReal const & a) { BigReal r(a.prec()); mpfr_sqrt(r.get(), a.get(), MPFR_RNDN); return r; }
BigReal exp(BigReal const & a) { BigReal r(a.prec()); mpfr_exp(r.get(), a.get(), MPFR_RNDN); return r; }
BigReal log(BigReal const & a) { BigReal r(a.prec()); mpfr_log(r.get(), a.get(), MPFR_RNDN); return r; }
BigReal pow(BigReal const & a, long n) { BigReal r(a.prec()); mpfr_pow_si(r.get(), a.get(), n, MPFR_RNDN); return r; }
BigReal floor(BigReal const & a) { BigReal r(a.prec()); mpfr_floor(r.get(), a.get()); return r; }
BigReal round(BigReal const & a) { BigReal r(a.prec()); mpfr_round(r.get(), a.get()); return r; }
BigReal ldexp(BigReal const & a, long e) { BigReal r(a.prec()); mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN); return r; }

std::ostream & operator<<(std::ostream & os, BigReal const & x) { return os << x.str(20); }

BigReal BigComplex::abs() const
{
    BigReal r(prec());
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
    return r;
}

BigReal BigComplex::arg() const
{
    BigReal r(prec());
    mpfr_atan2(r.get(), im.get(), re.get(), MPFR_RNDN);
    return r;
}

std::string BigComplex::str(int digits) const
{
    std::string s = re.str(digits);
    std::string t = im.str(digits);
    if (t[0] == '-') return s + " - " + t.substr(1) + "i";
    return s + " + " + t + "i";
}

BigComplex & BigComplex::operator*=(BigComplex const & o)
{
    *this = *this * o;
    return *this;
}

BigComplex & BigComplex::operator/=(BigComplex const & o)
{
    *this = *this / o;
    return *this;
}

BigComplex operator+(BigComplex const & a, BigComplex const & b) { return BigComplex(a.re + b.re, a.im + b.im); }
BigComplex operator-(BigComplex const & a, BigComplex const & b) { return BigComplex(a.re - b.re, a.im - b.im); }

BigComplex operator*(BigComplex const & a, BigComplex const & b)
{
    prec_t p = std::min(a.prec(), b.prec());
    BigComplex r(p);
    mpfr_fmms(r.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmma(r.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    return r;
}

BigComplex operator/(BigComplex const & a, BigComplex const & b)
{
    prec_t p = std::min(a.prec(), b.prec());
    BigReal n(p);
    mpfr_fmma(n.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
    if (n.is_zero()) throw std::domain_error("complex division by zero");
    BigComplex r(p);
    mpfr_fmma(r.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmms(r.im.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    r.re /= n;
    r.im /= n;
    return r;
}

BigComplex operator*(BigComplex const & a, BigReal const & b) { return BigComplex(a.re * b, a.im * b); }
BigComplex operator/(BigComplex const & a, BigReal const & b) { return BigComplex(a.re / b, a.im / b); }
BigComplex operator*(BigComplex const & a, long b) { return BigComplex(a.re * b, a.im * b); }

BigComplex pow(BigComplex const & a, long n)
{
    if (n < 0) return BigComplex(1L, a.prec()) / pow(a, -n);
    BigComplex r(1L, a.prec()), b(a);
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

BigComplex exp(BigComplex const & a)
{
    prec_t p = a.prec();
    BigReal m = exp(a.re);
    BigComplex r(p);
    mpfr_sin_cos(r.im.get(), r.re.get(), a.im.get(), MPFR_RNDN);
    r.re *= m;
    r.im *= m;
    return r;
}

BigComplex sqrt(BigComplex const & a)
{
    // principal branch
    prec_t p = a.prec();
    if (a.re.is_zero() && a.im.is_zero()) return BigComplex(p);
    BigReal m = a.abs();
    BigReal t = sqrt((m + abs(a.re)) / 2);
    BigComplex r(p);
    if (a.re.sign() >= 0) {
        r.re = t;
        r.im = a.im / (t * 2);
    } else {
        r.re = abs(a.im) / (t * 2);
        r.im = a.im.sign() < 0 ? -t : t;
    }
    return r;
}

std::ostream & operator<<(std::ostream & os, BigComplex const & x) { return os << x.str(20); }

BigComplex exp_pi_i(BigComplex const & q, prec_t prec)
{
    if (!q.re.is_finite() || !q.im.is_finite()) throw std::domain_error("exp_pi_i: non-finite argument");
    prec_t w = prec + 16;
    // reduce Re q mod 2 exactly before multiplying by pi
    BigReal x(q.re, std::max<prec_t>(q.re.prec(), w));
    BigReal k = round(x / 2);
    mpfr_mul_2ui(k.get(), k.get(), 1, MPFR_RNDN);
    x -= k;
    x = BigReal(x, w);
    BigReal pi = BigReal::pi(w);
    BigReal ang = pi * x;
    BigReal mag = -(pi * BigReal(q.im, w));
    mpfr_clear_flags();
    BigReal e(w);
    mpfr_exp(e.get(), mag.get(), MPFR_RNDN);
    if (mpfr_overflow_p() || mpfr_underflow_p() || !e.is_finite() || e.is_zero()) {
        mpfr_clear_flags();
        throw overflow_error("exp_pi_i: pi*Im(q) exceeds exponent range");
    }
    BigComplex r(w);
    mpfr_sin_cos(r.im.get(), r.re.get(), ang.get(), MPFR_RNDN);
    r.re *= e;
    r.im *= e;
    return BigComplex(r, prec);
}

// Power series about 0. Terms grow like e^x before the e^{-x} result
// emerges, so the working precision carries 2x*log2(e) extra bits.
static void bessel_k01_series(BigReal const & x, prec_t prec, BigReal * k0, BigReal * k1)
{
    double xd = x.to_double();
    prec_t w = prec + 32 + (prec_t)(2.0 * xd * 1.4426950408889634) + 8;
    BigReal X(x, w);
    BigReal y = X * X / 4;
    BigReal gam(w);
    mpfr_const_euler(gam.get(), MPFR_RNDN);
    BigReal lg = log(X / 2) + gam;

    // I0 = sum y^k/k!^2, S0 = sum y^k/k!^2 H_k
    // I1 = (x/2) sum y^k/(k!(k+1)!), S1 = sum y^k/(k!(k+1)!) (H_k + H_{k+1})
    BigReal t0(1L, w), t1(1L, w);
    BigReal I0(1L, w), S0(w), I1s(1L, w), S1(1L, w);
    BigReal H(w);
    BigReal eps = ldexp(BigReal(1L, w), -(long)w);
    for (long k = 1;; ++k) {
        t0 *= y;
        t0 /= BigReal(k * k, w);
        t1 *= y;
        t1 /= BigReal(k * (k + 1), w);
        BigReal hk = H + BigReal(1L, w) / BigReal(k, w);
        BigReal hk1 = hk + BigReal(1L, w) / BigReal(k + 1, w);
        I0 += t0;
        S0 += t0 * hk;
        I1s += t1;
        S1 += t1 * (hk + hk1);
        H = hk;
        if (t0 < eps * I0 && t1 < eps * I1s && (double)k > xd) break;
    }
    if (k0) {
        BigReal r = S0 - lg * I0;
        *k0 = BigReal(r, prec);
    }
    if (k1) {
        // K1 = 1/x + (x/2) I1s (log(x/2) + gamma) - (x/4) S1 ... with psi(k+1)+psi(k+2) = H_k + H_{k+1} - 2 gamma
        BigReal half = X / 2;
        BigReal r = BigReal(1L, w) / X + half * I1s * (lg - gam) - X / 4 * (S1 - gam * 2 * I1s);
        *k1 = BigReal(r, prec);
    }
}

// Steed/Temme continued fraction for K_0 and K_1, accurate for x >= 2.
static void bessel_k01_cf(BigReal const & x, prec_t prec, BigReal * k0, BigReal * k1)
{
    prec_t w = prec + 32;
    BigReal X(x, w);
    BigReal one(1L, w);
    BigReal b = (X + 1) * 2;
    BigReal d = one / b;
    BigReal h = d, delh = d;
    BigReal q1(w), q2(1L, w);
    BigReal a1(0.25, w);
    BigReal q = a1, c = a1, a = -a1;
    BigReal s = one + q * delh;
    BigReal eps = ldexp(one, -(long)w);
    for (long i = 1; i < 1000000; ++i) {
        a -= BigReal(2 * i, w);
        c = -(a * c) / BigReal(i + 1, w);
        BigReal qn = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qn;
        q += c * qn;
        b += BigReal(2L, w);
        d = one / (b + a * d);
        delh = (b * d - one) * delh;
        h += delh;
        BigReal dels = q * delh;
        s += dels;
        if (abs(dels) < eps * abs(s) && abs(delh) < eps * abs(h)) break;
    }
    h = a1 * h;
    BigReal pi = BigReal::pi(w);
    BigReal kmu = sqrt(pi / (X * 2)) * exp(-X) / s;
    if (k0) *k0 = BigReal(kmu, prec);
    if (k1) {
        BigReal r = kmu * (X + BigReal(0.5, w) - h) / X;
        *k1 = BigReal(r, prec);
    }
}

BigReal bessel_k0_series(BigReal const & x, prec_t prec)
{
    if (x.sign() <= 0) throw std::domain_error("bessel_k0: nonpositive argument");
    BigReal r(prec);
    bessel_k01_series(x, prec, &r, nullptr);
    return r;
}

BigReal bessel_k0_cf(BigReal const & x, prec_t prec)
{
    if (x.sign() <= 0) throw std::domain_error("bessel_k0: nonpositive argument");
    BigReal r(prec);
    bessel_k01_cf(x, prec, &r, nullptr);
    return r;
}

BigReal bessel_k0(BigReal const & x, prec_t prec)
{
    if (x.sign() <= 0) throw std::domain_error("bessel_k0: nonpositive argument");
    BigReal r(prec);
    if (x.to_double() <= 20.0) bessel_k01_series(x, prec, &r, nullptr);
    else bessel_k01_cf(x, prec, &r, nullptr);
    return r;
}

BigReal bessel_k1(BigReal const & x, prec_t prec)
{
    if (x.sign() <= 0) throw std::domain_error("bessel_k1: nonpositive argument");
    BigReal r(prec);
    if (x.to_double() <= 20.0) bessel_k01_series(x, prec, nullptr, &r);
    else bessel_k01_cf(x, prec, nullptr, &r);
    return r;
}

} // namespace g17
