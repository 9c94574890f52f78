#pragma once

#include "g17/bigcx.hpp"

#include <gmpxx.h>
#include <vector>

namespace g17 {

// dense complex matrix at a fixed precision
class CMatrix {
    int nr = 0, nc = 0;
    std::vector<BigComplex> a;
public:
    CMatrix() = default;
    CMatrix(int r, int c, prec_t p) : nr(r), nc(c), a((size_t)r * c, BigComplex(p)) {}
    static CMatrix identity(int n, prec_t p);

    int rows() const { return nr; }
    int cols() const { return nc; }
    prec_t prec() const;
    BigComplex & operator()(int i, int j) { return a[(size_t)i * nc + j]; }
    BigComplex const & operator()(int i, int j) const { return a[(size_t)i * nc + j]; }

    CMatrix transpose() const;
    CMatrix re() const;
    CMatrix im() const;
    CMatrix rounded(prec_t p) const;
    std::vector<double> im_double() const;
    std::vector<double> re_double() const;
    BigReal max_abs() const;
};

CMatrix operator+(CMatrix const & A, CMatrix const & B);
CMatrix operator-(CMatrix const & A, CMatrix const & B);
CMatrix operator*(CMatrix const & A, CMatrix const & B);
CMatrix operator*(CMatrix const & A, BigComplex const & s);

// Gaussian elimination with partial pivoting; throw std::domain_error on a zero pivot
CMatrix inverse(CMatrix const & A);
BigComplex det(CMatrix const & A);
std::vector<BigComplex> solve(CMatrix const & A, std::vector<BigComplex> const & b);

// exact integer matrices
class ZMatrix {
    int nr = 0, nc = 0;
    std::vector<mpz_class> a;
public:
    ZMatrix() = default;
    ZMatrix(int r, int c) : nr(r), nc(c), a((size_t)r * c) {}
    static ZMatrix identity(int n);
    int rows() const { return nr; }
    int cols() const { return nc; }
    mpz_class & operator()(int i, int j) { return a[(size_t)i * nc + j]; }
    mpz_class const & operator()(int i, int j) const { return a[(size_t)i * nc + j]; }
    ZMatrix transpose() const;
    bool operator==(ZMatrix const & o) const { return nr == o.nr && nc == o.nc && a == o.a; }
    bool is_zero() const;
};

ZMatrix operator*(ZMatrix const & A, ZMatrix const & B);
ZMatrix operator+(ZMatrix const & A, ZMatrix const & B);
ZMatrix operator-(ZMatrix const & A);
mpz_class det(ZMatrix const & A);   // Bareiss
CMatrix to_complex(ZMatrix const & A, prec_t p);

// real symmetric positive definite helpers in double precision
// upper-triangular R with A = R^T R (row-major, n*n); returns false if not PD
bool cholesky_upper(std::vector<double> const & A, int n, std::vector<double> & R);
double min_eigenvalue_sym(std::vector<double> const & A, int n);

// LLL on the Gram matrix A (delta = 0.99); returns unimodular T (column
// operations) so that T^T A T is reduced
std::vector<long> lll_gram(std::vector<double> const & A, int n);

} // namespace g17
