#include "g17/abvar.hpp"

#include <cmath>
#include <sstream>

namespace g17 {

namespace {

using ZVec = std::vector<mpz_class>;

mpz_class form(ZMatrix const & M, ZVec const & x, ZVec const & y)
{
    mpz_class s = 0;
    int n = M.rows();
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        mpz_class t = 0;
        for (int j = 0; j < n; ++j)
            if (y[j] != 0) t += M(i, j) * y[j];
        s += x[i] * t;
    }
    return s;
}

void axpy(ZVec & v, mpz_class const & a, ZVec const & w)
{
    for (size_t i = 0; i < v.size(); ++i) v[i] += a * w[i];
}

// inverse of a unimodular integer matrix (Gauss-Jordan over Q, checked integral)
ZMatrix unimodular_inverse(ZMatrix const & A)
{
    int n = A.rows();
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(2 * n, mpq_class(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M[i][j] = A(i, j);
        M[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && M[piv][c] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular integer matrix");
        std::swap(M[piv], M[c]);
        mpq_class iv = 1 / M[c][c];
        for (auto & x : M[c]) x *= iv;
        for (int r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            mpq_class f = M[r][c];
            for (int k = 0; k < 2 * n; ++k) M[r][k] -= f * M[c][k];
        }
    }
    ZMatrix R(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (M[i][n + j].get_den() != 1) throw std::domain_error("matrix is not unimodular");
            R(i, j) = M[i][n + j].get_num();
        }
    return R;
}

bool block_form(ZMatrix const & M, int g)
{
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            if (M(i, j) != 0 || M(g + i, g + j) != 0 || M(g + j, i) != -M(i, g + j)) return false;
    return true;
}

} // namespace

ZMatrix standard_J(int g)
{
    ZMatrix J(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        J(i, g + i) = 1;
        J(g + i, i) = -1;
    }
    return J;
}

bool is_alternating(ZMatrix const & M)
{
    if (M.rows() != M.cols()) return false;
    for (int i = 0; i < M.rows(); ++i) {
        if (M(i, i) != 0) return false;
        for (int j = 0; j < i; ++j)
            if (M(i, j) != -M(j, i)) return false;
    }
    return true;
}

ZMatrix pairing_gram(FieldRef const & K, NFElem const & c)
{
    if (c.is_zero()) throw std::domain_error("pairing element is zero");
    int g = K->degree();
    std::vector<NFElem> pw = {c};
    for (int i = 1; i < 2 * g - 1; ++i) pw.push_back(pw.back() * K->gen());
    ZMatrix M(2 * g, 2 * g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            mpq_class t = pw[i + j].trace();
            if (t.get_den() != 1) {
                std::ostringstream os;
                os << "Tr(c nu^" << i << " nu^" << j << ") = " << t.get_str() << " is not an integer";
                throw non_integral_pairing(os.str());
            }
            M(i, g + j) = t.get_num();
            M(g + j, i) = -t.get_num();
        }
    return M;
}

ZMatrix symplectic_basis(ZMatrix const & M)
{
    int n = M.rows();
    if (n % 2 || !is_alternating(M)) throw std::invalid_argument("symplectic_basis needs an alternating matrix of even size");
    if (det(M) != 1) throw std::domain_error("alternating form is not unimodular");
    int g = n / 2;
    if (block_form(M, g)) {
        ZMatrix T(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) T(i, j) = M(i, g + j);
        ZMatrix Ti = unimodular_inverse(T);
        ZMatrix U = ZMatrix::identity(n);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) U(g + i, g + j) = Ti(i, j);
        return U;
    }
    // hyperbolic pair extraction by gcd pivoting
    std::vector<ZVec> rest;
    for (int i = 0; i < n; ++i) {
        ZVec v(n, 0);
        v[i] = 1;
        rest.push_back(v);
    }
    std::vector<ZVec> es, fs;
    while (!rest.empty()) {
        ZVec e = rest.front();
        rest.erase(rest.begin());
        // reduce pairings E(e, r) to a single +-1 with Euclid on the remaining vectors
        for (;;) {
            int best = -1, nz = 0;
            mpz_class bv;
            for (size_t j = 0; j < rest.size(); ++j) {
                mpz_class a = form(M, e, rest[j]);
                if (a == 0) continue;
                ++nz;
                if (best < 0 || abs(a) < abs(bv)) { best = (int)j; bv = a; }
            }
            if (best < 0) throw std::domain_error("degenerate vector in symplectic reduction");
            if (nz == 1) {
                if (abs(bv) != 1) throw std::domain_error("alternating form is not unimodular");
                break;
            }
            for (size_t j = 0; j < rest.size(); ++j) {
                if ((int)j == best) continue;
                mpz_class a = form(M, e, rest[j]);
                if (a == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), bv.get_mpz_t());
                axpy(rest[j], -q, rest[best]);
            }
        }
        int fi = -1;
        for (size_t j = 0; j < rest.size(); ++j)
            if (form(M, e, rest[j]) != 0) fi = (int)j;
        ZVec f = rest[fi];
        if (form(M, e, f) < 0)
            for (auto & x : f) x = -x;
        rest.erase(rest.begin() + fi);
        for (auto & v : rest) {
            mpz_class vf = form(M, v, f), ve = form(M, v, e);
            axpy(v, -vf, e);
            axpy(v, ve, f);
        }
        es.push_back(e);
        fs.push_back(f);
    }
    ZMatrix U(n, n);
    for (int k = 0; k < g; ++k)
        for (int i = 0; i < n; ++i) {
            U(i, k) = es[k][i];
            U(i, g + k) = fs[k][i];
        }
    return U;
}

CMatrix big_period_matrix(RMLattice const & L, prec_t prec)
{
    int g = L.K->degree();
    if ((int)L.Ps.size() != g || (int)L.Pp.size() != g) throw std::invalid_argument("period vector length must equal the degree");
    auto roots = L.K->real_roots(prec);
    CMatrix Pi(g, 2 * g, prec);
    for (int k = 0; k < g; ++k) {
        int r = L.order.empty() ? k : L.order[k];
        BigReal x(1L, prec);
        for (int i = 0; i < g; ++i) {
            Pi(k, i) = L.Ps[k] * x;
            Pi(k, g + i) = L.Pp[k] * x;
            x = x * roots[r];
        }
    }
    return Pi;
}

SmallPeriodMatrix small_period_matrix(CMatrix const & Pi0, ZMatrix const & M, prec_t prec)
{
    int g = Pi0.rows();
    SmallPeriodMatrix out;
    out.U = symplectic_basis(M);
    CMatrix Pi = Pi0 * to_complex(out.U, prec);
    CMatrix P1(g, g, prec), P2(g, g, prec);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            P1(i, j) = Pi(i, j);
            P2(i, j) = Pi(i, g + j);
        }
    CMatrix Z = inverse(P2) * P1;
    BigReal defect(0L, prec), scale(1L, prec);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            BigReal d = (Z(i, j) - Z(j, i)).abs();
            if (defect < d) defect = d;
            BigReal a = Z(i, j).abs();
            if (scale < a) scale = a;
        }
    out.symmetry_defect = (defect / scale).to_double();
    double digits = prec * std::log10(2.0);
    if (out.symmetry_defect > std::pow(10.0, -(digits - 15))) throw std::runtime_error("period matrix far from symmetric: wrong basis");
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) {
            BigComplex m = (Z(i, j) + Z(j, i)) * BigReal(0.5, prec);
            Z(i, j) = m;
            Z(j, i) = m;
        }
    std::vector<double> Y = Z.im_double();
    out.min_eig_im = min_eigenvalue_sym(Y, g);
    out.Z = Z;
    return out;
}

SmallPeriodMatrix small_period_matrix(RMLattice const & L, prec_t prec)
{
    if (!is_codifferent_generator(L.K, L.c.inv()).generator)
        throw std::invalid_argument("pairing element does not come from a codifferent generator");
    ZMatrix M = pairing_gram(L.K, L.c);
    SmallPeriodMatrix s = small_period_matrix(big_period_matrix(L, prec), M, prec);
    if (s.min_eig_im > 0) return s;
    RMLattice Lf = L;
    for (auto & x : Lf.Ps) x = -x;
    SmallPeriodMatrix t = small_period_matrix(big_period_matrix(Lf, prec), M, prec);
    if (t.min_eig_im <= 0) throw std::runtime_error("imaginary part not definite for either sign convention");
    t.flipped = true;
    return t;
}

RMLattice rm_lattice(FieldRef const & K, std::vector<BigComplex> const & z, NFElem const & d, std::vector<int> const & order)
{
    RMLattice L;
    L.K = K;
    L.Ps = z;
    prec_t p = z.empty() ? default_prec : z[0].prec();
    L.Pp.assign(z.size(), BigComplex(1L, p));
    L.order = order;
    L.c = d.inv();
    return L;
}

CMatrix rm_period_matrix(FieldRef const & K, std::vector<BigComplex> const & z, NFElem const & d,
                         std::vector<int> const & order, prec_t prec)
{
    int g = K->degree();
    auto roots = K->real_roots(prec);
    std::vector<BigComplex> w(g, BigComplex(prec));
    std::vector<std::vector<BigReal>> V(g);
    for (int k = 0; k < g; ++k) {
        int r = order.empty() ? k : order[k];
        w[k] = BigComplex(z[k], prec) * (BigReal(1L, prec) / d.embed(r, prec));
        BigReal x(1L, prec);
        for (int i = 0; i < 2 * g - 1; ++i) {
            V[k].push_back(x);
            x = x * roots[r];
        }
    }
    CMatrix Z(g, g, prec);
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) {
            BigComplex s(prec);
            for (int k = 0; k < g; ++k) s += w[k] * V[k][i + j];
            Z(i, j) = s;
            Z(j, i) = s;
        }
    return Z;
}

ReducedPeriodMatrix reduce_period_matrix(CMatrix const & Z)
{
    int g = Z.rows();
    prec_t p = Z.prec();
    std::vector<double> Y = Z.im_double();
    std::vector<long> t = lll_gram(Y, g);
    ZMatrix T(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) T(i, j) = t[i * g + j];
    CMatrix Tc = to_complex(T, p);
    CMatrix Z1 = Tc.transpose() * Z * Tc;
    if (min_eigenvalue_sym(Z1.im_double(), g) < min_eigenvalue_sym(Y, g)) {
        T = ZMatrix::identity(g);
        Z1 = Z;
    }
    ReducedPeriodMatrix out;
    out.T = T;
    out.B = ZMatrix(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) {
            // k = ceil(x - 1/2) puts x - k in (-1/2, 1/2]
            mpz_class k = -floor(BigReal(0.5, p) - Z1(i, j).re).round_to_mpz();
            out.B(i, j) = -k;
            out.B(j, i) = -k;
        }
    out.Z = Z1;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) out.Z(i, j) += BigComplex(BigReal(out.B(i, j), p));
    return out;
}

} // namespace g17
