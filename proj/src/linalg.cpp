#include "g17/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace g17 {

CMatrix CMatrix::identity(int n, prec_t p)
{
    CMatrix I(n, n, p);
    for (int i = 0; i < n; ++i) I(i, i) = BigComplex(1L, p);
    return I;
}

prec_t CMatrix::prec() const
{
    prec_t p = a.empty() ? default_prec : a[0].prec();
    for (auto const & x : a) p = std::min(p, x.prec());
    return p;
}

CMatrix CMatrix::transpose() const
{
    CMatrix T(nc, nr, prec());
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) T(j, i) = (*this)(i, j);
    return T;
}

CMatrix CMatrix::re() const
{
    CMatrix T(nr, nc, prec());
    for (size_t k = 0; k < a.size(); ++k) T.a[k].re = a[k].re;
    return T;
}

CMatrix CMatrix::im() const
{
    CMatrix T(nr, nc, prec());
    for (size_t k = 0; k < a.size(); ++k) T.a[k].re = a[k].im;
    return T;
}

CMatrix CMatrix::rounded(prec_t p) const
{
    CMatrix T(nr, nc, p);
    for (size_t k = 0; k < a.size(); ++k) T.a[k] = BigComplex(a[k], p);
    return T;
}

std::vector<double> CMatrix::im_double() const
{
    std::vector<double> r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k].im.to_double();
    return r;
}

std::vector<double> CMatrix::re_double() const
{
    std::vector<double> r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k].re.to_double();
    return r;
}

BigReal CMatrix::max_abs() const
{
    BigReal m(prec());
    for (auto const & x : a) {
        BigReal t = x.abs();
        if (m < t) m = t;
    }
    return m;
}

CMatrix operator+(CMatrix const & A, CMatrix const & B)
{
    CMatrix C(A.rows(), A.cols(), std::min(A.prec(), B.prec()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C(i, j) = A(i, j) + B(i, j);
    return C;
}

CMatrix operator-(CMatrix const & A, CMatrix const & B)
{
    CMatrix C(A.rows(), A.cols(), std::min(A.prec(), B.prec()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C(i, j) = A(i, j) - B(i, j);
    return C;
}

CMatrix operator*(CMatrix const & A, CMatrix const & B)
{
    if (A.cols() != B.rows()) throw std::invalid_argument("matrix shape mismatch");
    prec_t p = std::min(A.prec(), B.prec());
    CMatrix C(A.rows(), B.cols(), p);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            BigComplex s(p);
            for (int k = 0; k < A.cols(); ++k) s += A(i, k) * B(k, j);
            C(i, j) = s;
        }
    return C;
}

CMatrix operator*(CMatrix const & A, BigComplex const & s)
{
    CMatrix C(A.rows(), A.cols(), std::min(A.prec(), s.prec()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C(i, j) = A(i, j) * s;
    return C;
}

namespace {
// LU with partial pivoting in place; returns sign of permutation, 0 if singular
int lu(CMatrix & M, std::vector<int> & perm)
{
    int n = M.rows();
    perm.resize(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    int sgn = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        BigReal best = M(k, k).abs();
        for (int i = k + 1; i < n; ++i) {
            BigReal t = M(i, k).abs();
            if (best < t) { best = t; piv = i; }
        }
        if (best.is_zero()) return 0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(M(k, j), M(piv, j));
            std::swap(perm[k], perm[piv]);
            sgn = -sgn;
        }
        for (int i = k + 1; i < n; ++i) {
            BigComplex f = M(i, k) / M(k, k);
            M(i, k) = f;
            for (int j = k + 1; j < n; ++j) M(i, j) -= f * M(k, j);
        }
    }
    return sgn;
}
}

BigComplex det(CMatrix const & A)
{
    CMatrix M = A;
    std::vector<int> perm;
    int s = lu(M, perm);
    if (s == 0) return BigComplex(A.prec());
    BigComplex d(1L, A.prec());
    for (int i = 0; i < A.rows(); ++i) d *= M(i, i);
    return s < 0 ? -d : d;
}

std::vector<BigComplex> solve(CMatrix const & A, std::vector<BigComplex> const & b)
{
    int n = A.rows();
    CMatrix M = A;
    std::vector<int> perm;
    if (lu(M, perm) == 0) throw std::domain_error("singular matrix");
    std::vector<BigComplex> y(n, BigComplex(A.prec()));
    for (int i = 0; i < n; ++i) {
        BigComplex s = b[perm[i]];
        for (int j = 0; j < i; ++j) s -= M(i, j) * y[j];
        y[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        BigComplex s = y[i];
        for (int j = i + 1; j < n; ++j) s -= M(i, j) * y[j];
        y[i] = s / M(i, i);
    }
    return y;
}

CMatrix inverse(CMatrix const & A)
{
    int n = A.rows();
    prec_t p = A.prec();
    CMatrix M = A;
    std::vector<int> perm;
    if (lu(M, perm) == 0) throw std::domain_error("singular matrix");
    CMatrix R(n, n, p);
    for (int c = 0; c < n; ++c) {
        std::vector<BigComplex> y(n, BigComplex(p));
        for (int i = 0; i < n; ++i) {
            BigComplex s(perm[i] == c ? 1L : 0L, p);
            for (int j = 0; j < i; ++j) s -= M(i, j) * y[j];
            y[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            BigComplex s = y[i];
            for (int j = i + 1; j < n; ++j) s -= M(i, j) * y[j];
            y[i] = s / M(i, i);
        }
        for (int i = 0; i < n; ++i) R(i, c) = y[i];
    }
    return R;
}

ZMatrix ZMatrix::identity(int n)
{
    ZMatrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

ZMatrix ZMatrix::transpose() const
{
    ZMatrix T(nc, nr);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) T(j, i) = (*this)(i, j);
    return T;
}

bool ZMatrix::is_zero() const
{
    for (auto const & x : a) if (x != 0) return false;
    return true;
}

ZMatrix operator*(ZMatrix const & A, ZMatrix const & B)
{
    if (A.cols() != B.rows()) throw std::invalid_argument("matrix shape mismatch");
    ZMatrix C(A.rows(), B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int k = 0; k < A.cols(); ++k) {
            if (A(i, k) == 0) continue;
            for (int j = 0; j < B.cols(); ++j) C(i, j) += A(i, k) * B(k, j);
        }
    return C;
}

ZMatrix operator+(ZMatrix const & A, ZMatrix const & B)
{
    ZMatrix C(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C(i, j) = A(i, j) + B(i, j);
    return C;
}

ZMatrix operator-(ZMatrix const & A)
{
    ZMatrix C(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C(i, j) = -A(i, j);
    return C;
}

mpz_class det(ZMatrix const & A)
{
    int n = A.rows();
    ZMatrix M = A;
    int sgn = 1;
    mpz_class prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M(k, k) == 0) {
            int r = -1;
            for (int i = k + 1; i < n; ++i) if (M(i, k) != 0) { r = i; break; }
            if (r < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(M(k, j), M(r, j));
            sgn = -sgn;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                M(i, j) = t;
            }
        prev = M(k, k);
    }
    return sgn * M(n - 1, n - 1);
}

CMatrix to_complex(ZMatrix const & A, prec_t p)
{
    CMatrix C(A.rows(), A.cols(), p);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C(i, j) = BigComplex(BigReal(A(i, j), p));
    return C;
}

bool cholesky_upper(std::vector<double> const & A, int n, std::vector<double> & R)
{
    R.assign((size_t)n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = A[i * n + i];
        for (int k = 0; k < i; ++k) s -= R[k * n + i] * R[k * n + i];
        if (!(s > 0)) return false;
        R[i * n + i] = std::sqrt(s);
        for (int j = i + 1; j < n; ++j) {
            double t = A[i * n + j];
            for (int k = 0; k < i; ++k) t -= R[k * n + i] * R[k * n + j];
            R[i * n + j] = t / R[i * n + i];
        }
    }
    return true;
}

double min_eigenvalue_sym(std::vector<double> const & A, int n)
{
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = 0.5 * (A[i * n + j] + A[j * n + i]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

std::vector<long> lll_gram(std::vector<double> const & A, int n)
{
    std::vector<long> T((size_t)n * n, 0);
    for (int i = 0; i < n; ++i) T[i * n + i] = 1;
    auto gram = [&](int i, int j) {
        double s = 0;
        for (int a = 0; a < n; ++a) {
            if (!T[a * n + i]) continue;
            for (int b = 0; b < n; ++b) s += T[a * n + i] * A[a * n + b] * T[b * n + j];
        }
        return s;
    };
    auto gso = [&](std::vector<double> & mu, std::vector<double> & B) {
        mu.assign((size_t)n * n, 0.0);
        B.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                double s = gram(i, j);
                for (int k = 0; k < j; ++k) s -= mu[j * n + k] * mu[i * n + k] * B[k];
                mu[i * n + j] = s / B[j];
            }
            double s = gram(i, i);
            for (int k = 0; k < i; ++k) s -= mu[i * n + k] * mu[i * n + k] * B[k];
            B[i] = s;
        }
    };
    std::vector<double> mu, B;
    gso(mu, B);
    int k = 1;
    int guard = 0;
    while (k < n && guard++ < 100000) {
        for (int j = k - 1; j >= 0; --j) {
            long q = std::lround(mu[k * n + j]);
            if (q) {
                for (int a = 0; a < n; ++a) T[a * n + k] -= q * T[a * n + j];
                gso(mu, B);
            }
        }
        if (B[k] >= (0.99 - mu[k * n + k - 1] * mu[k * n + k - 1]) * B[k - 1]) {
            ++k;
        } else {
            for (int a = 0; a < n; ++a) std::swap(T[a * n + k], T[a * n + k - 1]);
            gso(mu, B);
            k = std::max(k - 1, 1);
        }
    }
    return T;
}

} // namespace g17
