#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>
#include <stdexcept>
#include <iosfwd>

namespace g17 {

using prec_t = mpfr_prec_t;

constexpr prec_t default_prec = 400;

inline prec_t bits_for_digits(long digits) { return (prec_t)(digits * 3.3219280948873623) + 8; }

class BigReal {
    mpfr_t v;
public:
    explicit BigReal(prec_t p = default_prec) { mpfr_init2(v, p); mpfr_set_zero(v, 1); }
    BigReal(double x, prec_t p) { mpfr_init2(v, p); mpfr_set_d(v, x, MPFR_RNDN); }
    BigReal(long x, prec_t p) { mpfr_init2(v, p); mpfr_set_si(v, x, MPFR_RNDN); }
    BigReal(int x, prec_t p) : BigReal((long)x, p) {}
    BigReal(mpz_class const & x, prec_t p) { mpfr_init2(v, p); mpfr_set_z(v, x.get_mpz_t(), MPFR_RNDN); }
    BigReal(mpq_class const & x, prec_t p) { mpfr_init2(v, p); mpfr_set_q(v, x.get_mpq_t(), MPFR_RNDN); }
    BigReal(std::string const & s, prec_t p);
    BigReal(mpfr_srcptr x) { mpfr_init2(v, mpfr_get_prec(x)); mpfr_set(v, x, MPFR_RNDN); }
    BigReal(BigReal const & o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
    BigReal(BigReal const & o, prec_t p) { mpfr_init2(v, p); mpfr_set(v, o.v, MPFR_RNDN); }
    BigReal(BigReal && o) noexcept { mpfr_init2(v, MPFR_PREC_MIN); mpfr_swap(v, o.v); }
    BigReal & operator=(BigReal const & o) {
        if (this != &o) { mpfr_set_prec(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
        return *this;
    }
    BigReal & operator=(BigReal && o) noexcept { mpfr_swap(v, o.v); return *this; }
    ~BigReal() { mpfr_clear(v); }

    mpfr_ptr get() { return v; }
    mpfr_srcptr get() const { return v; }
    prec_t prec() const { return mpfr_get_prec(v); }

    double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }
    mpz_class round_to_mpz() const;
    std::string str(int digits = 0) const;
    bool is_zero() const { return mpfr_zero_p(v); }
    bool is_finite() const { return mpfr_number_p(v); }
    int sign() const { return mpfr_sgn(v); }
    long exponent() const { return mpfr_zero_p(v) ? -(1L << 40) : mpfr_get_exp(v); }

    static BigReal pi(prec_t p) { BigReal r(p); mpfr_const_pi(r.v, MPFR_RNDN); return r; }
    static BigReal log2c(prec_t p) { BigReal r(p); mpfr_const_log2(r.v, MPFR_RNDN); return r; }

    BigReal & operator+=(BigReal const & o);
    BigReal & operator-=(BigReal const & o);
    BigReal & operator*=(BigReal const & o);
    BigReal & operator/=(BigReal const & o);
    BigReal operator-() const { BigReal r(*this); mpfr_neg(r.v, r.v, MPFR_RNDN); return r; }
};

BigReal operator+(BigReal const & a, BigReal const & b);
BigReal operator-(BigReal const & a, BigReal const & b);
BigReal operator*(BigReal const & a, BigReal const & b);
BigReal operator/(BigReal const & a, BigReal const & b);
BigReal operator*(BigReal const & a, long b);
BigReal operator/(BigReal const & a, long b);
inline BigReal operator*(long b, BigReal const & a) { return a * b; }
inline BigReal operator+(BigReal const & a, long b) { return a + BigReal(b, a.prec()); }
inline BigReal operator-(BigReal const & a, long b) { return a - BigReal(b, a.prec()); }
bool operator<(BigReal const & a, BigReal const & b);
inline bool operator>(BigReal const & a, BigReal const & b) { return b < a; }
inline bool operator<=(BigReal const & a, BigReal const & b) { return !(b < a); }
inline bool operator>=(BigReal const & a, BigReal const & b) { return !(a < b); }

BigReal abs(BigReal const & a);
BigReal sqrt(BigReal const & a);
BigReal exp(BigReal const & a);
BigReal log(BigReal const & a);
BigReal pow(BigReal const & a, long n);
BigReal floor(BigReal const & a);
BigReal round(BigReal const & a);
BigReal ldexp(BigReal const & a, long e);

std::ostream & operator<<(std::ostream & os, BigReal const & x);

class BigComplex {
public:
    BigReal re, im;
    explicit BigComplex(prec_t p = default_prec) : re(p), im(p) {}
    BigComplex(BigReal r) : re(std::move(r)), im(re.prec()) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {
        if (im.prec() != re.prec()) {
            prec_t p = std::min(re.prec(), im.prec());
            re = BigReal(re, p);
            im = BigReal(im, p);
        }
    }
    BigComplex(double r, double i, prec_t p) : re(r, p), im(i, p) {}
    BigComplex(long r, prec_t p) : re(r, p), im(p) {}
    BigComplex(BigComplex const & o, prec_t p) : re(o.re, p), im(o.im, p) {}

    prec_t prec() const { return std::min(re.prec(), im.prec()); }
    BigComplex conj() const { return BigComplex(re, -im); }
    BigReal norm2() const { return re * re + im * im; }
    BigReal abs() const;
    BigReal arg() const;
    std::string str(int digits = 0) const;

    BigComplex & operator+=(BigComplex const & o) { re += o.re; im += o.im; return *this; }
    BigComplex & operator-=(BigComplex const & o) { re -= o.re; im -= o.im; return *this; }
    BigComplex & operator*=(BigComplex const & o);
    BigComplex & operator/=(BigComplex const & o);
    BigComplex operator-() const { return BigComplex(-re, -im); }
};

BigComplex operator+(BigComplex const & a, BigComplex const & b);
BigComplex operator-(BigComplex const & a, BigComplex const & b);
BigComplex operator*(BigComplex const & a, BigComplex const & b);
BigComplex operator/(BigComplex const & a, BigComplex const & b);
BigComplex operator*(BigComplex const & a, BigReal const & b);
inline BigComplex operator*(BigReal const & b, BigComplex const & a) { return a * b; }
BigComplex operator/(BigComplex const & a, BigReal const & b);
BigComplex operator*(BigComplex const & a, long b);
BigComplex pow(BigComplex const & a, long n);
BigComplex exp(BigComplex const & a);
BigComplex sqrt(BigComplex const & a);
inline BigReal abs(BigComplex const & a) { return a.abs(); }

std::ostream & operator<<(std::ostream & os, BigComplex const & x);

struct overflow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// e^{pi i q}; throws overflow_error if pi*Im(q) leaves the exponent range
BigComplex exp_pi_i(BigComplex const & q, prec_t prec);

// modified Bessel functions of the second kind, x > 0
BigReal bessel_k0(BigReal const & x, prec_t prec);
BigReal bessel_k1(BigReal const & x, prec_t prec);

// branch-level access, for crossover checks
BigReal bessel_k0_series(BigReal const & x, prec_t prec);
BigReal bessel_k0_cf(BigReal const & x, prec_t prec);

} // namespace g17
