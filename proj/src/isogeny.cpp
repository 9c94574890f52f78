#include "g17/isogeny.hpp"
#include "g17/parallel.hpp"
#include "g17/polymodp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace g17 {

namespace {

double log2_abs(BigReal const & x)
{
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    long e;
    double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
    return std::log2(std::fabs(m)) + (double)e;
}

std::vector<BigComplex> at_prec(std::vector<BigComplex> const & z, prec_t p)
{
    std::vector<BigComplex> r;
    for (auto const & x : z) r.emplace_back(x, p);
    return r;
}

void require_inert_2(FieldRef const & K)
{
    ModP m2(2);
    PolyP f = m2.reduce(K->minpoly());
    bool inert = m2.squarefree(f) && m2.ddf_degrees(f) == std::vector<int>{K->degree()};
    if (!inert) throw std::domain_error("neighbors_2: 2 is not inert in K");
}

} // namespace

std::vector<BigComplex> act(RMFamily const & F, Mat2K const & g, std::vector<BigComplex> const & z, prec_t prec)
{
    std::vector<BigComplex> out;
    for (size_t k = 0; k < z.size(); ++k) {
        int r = F.root_index((int)k);
        BigComplex zk(z[k], prec);
        BigComplex num = zk * g.a.embed(r, prec) + BigComplex(g.b.embed(r, prec));
        BigComplex den = zk * g.c.embed(r, prec) + BigComplex(g.d.embed(r, prec));
        if (den.abs().is_zero()) throw numeric_failure("act: zero denominator");
        out.push_back(num / den);
    }
    return out;
}

std::vector<Neighbor> neighbors_2(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec)
{
    auto const & K = F.K;
    require_inert_2(K);
    int g = K->degree();
    std::vector<Neighbor> out;
    for (unsigned m = 0; m < (1u << g); ++m) {
        // bit i of m is the coordinate of nu^i; m = 0 first
        std::vector<mpq_class> c(g);
        std::vector<int> e(g);
        for (int i = 0; i < g; ++i) {
            e[i] = (m >> i) & 1;
            c[i] = e[i];
        }
        Mat2K gm{K->one(), K->from_coeffs(c), K->zero(), K->from_int(2)};
        out.push_back({gm, act(F, gm, z, prec), e});
    }
    Mat2K g2{K->from_int(2), K->zero(), K->zero(), K->one()};
    out.push_back({g2, act(F, g2, z, prec), {}});
    return out;
}

mpz_class lattice_index(Mat2K const & g)
{
    NFElem const * blocks[2][2] = {{&g.a, &g.b}, {&g.c, &g.d}};
    int n = g.a.field()->degree();
    ZMatrix M(2 * n, 2 * n);
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) {
            auto m = blocks[bi][bj]->mult_matrix();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (m[i][j].get_den() != 1) throw std::domain_error("lattice_index: entries must be integral");
                    M(bi * n + i, bj * n + j) = m[i][j].get_num();
                }
        }
    return abs(det(M));
}

BigComplex factor_of_automorphy(RMFamily const & F, Mat2K const & g, std::vector<BigComplex> const & z, int k, prec_t prec)
{
    NFElem dt = g.det();
    BigComplex j(1L, prec);
    for (size_t s = 0; s < z.size(); ++s) {
        int r = F.root_index((int)s);
        BigComplex den = BigComplex(z[s], prec) * g.c.embed(r, prec) + BigComplex(g.d.embed(r, prec));
        if (den.abs().is_zero()) throw numeric_failure("factor_of_automorphy: zero denominator");
        j = j * pow(BigComplex(dt.embed(r, prec)) / den, k);
    }
    return j;
}

BigComplex modular_G(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec)
{
    prec_t wp = prec + 24;
    auto R = reduce_period_matrix(F.period_matrix(z, wp));
    return BigComplex(eisenstein_E4(R.Z, wp), prec);
}

BigReal schottky_value(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec)
{
    prec_t wp = prec + 24;
    auto R = reduce_period_matrix(F.period_matrix(z, wp));
    return BigReal(schottky_normalized(theta_squares(R.Z, wp)), prec);
}

NeighborSelection select_neighbor(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec)
{
    auto nb = neighbors_2(F, z, prec);
    NeighborSelection s;
    s.log10_values.assign(nb.size(), 0);
    parallel_for((int)nb.size(), [&](int i) {
        s.log10_values[i] = log2_abs(schottky_value(F, nb[i].z, prec)) * std::log10(2.0);
    });
    std::vector<double> v = s.log10_values;
    s.index = (int)(std::min_element(v.begin(), v.end()) - v.begin());
    std::sort(v.begin(), v.end());
    s.runner_up = v.size() > 1 ? v[1] : v[0];
    return s;
}

OrderSearch find_embedding_order(FieldRef const & K, NFElem const & d, std::vector<BigComplex> const & z, prec_t prec)
{
    std::vector<int> perm(K->degree());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<std::vector<int>, NeighborSelection>> all;
    do {
        RMFamily F{K, d, perm};
        all.push_back({perm, select_neighbor(F, z, prec)});
    } while (std::next_permutation(perm.begin(), perm.end()));
    double best = 1e300;
    for (auto const & a : all) best = std::min(best, a.second.log10_values[a.second.index]);
    OrderSearch out;
    out.best = best;
    out.runner_up = 1e300;
    // orderings within 5 decades of the best form the hit class; the lexicographically first is used
    for (auto const & a : all) {
        double v = a.second.log10_values[a.second.index];
        if (v < best + 5) {
            if (out.order.empty()) {
                out.order = a.first;
                out.neighbor = a.second.index;
            }
        } else {
            out.runner_up = std::min(out.runner_up, v);
        }
    }
    return out;
}

std::vector<BigComplex> poly_from_roots(std::vector<BigComplex> const & roots, prec_t prec)
{
    std::vector<BigComplex> c{BigComplex(1L, prec)};
    for (auto const & r : roots) {
        c.push_back(BigComplex(prec));
        for (size_t i = c.size() - 1; i >= 1; --i) c[i] -= c[i - 1] * r;
    }
    return c;
}

IsogenyPolynomial isogeny_polynomial(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec)
{
    prec_t wp = prec + 16;
    auto zw = at_prec(z, wp);
    auto nb = neighbors_2(F, zw, wp);
    BigComplex G0 = modular_G(F, zw, wp);
    if (log2_abs(G0.abs()) < -(double)prec / 2)
        throw numeric_failure("isogeny_polynomial: G(z) is too close to zero");
    IsogenyPolynomial T;
    T.z = at_prec(z, prec);
    T.prec = prec;
    T.roots.assign(nb.size(), BigComplex(wp));
    parallel_for((int)nb.size(), [&](int i) {
        T.roots[i] = factor_of_automorphy(F, nb[i].gamma, zw, 4, wp) * modular_G(F, nb[i].z, wp) / G0;
    });
    auto c = poly_from_roots(T.roots, wp);
    for (auto & x : c) {
        T.coeffs.emplace_back(x, prec);
        double n = std::max(0.0, log2_abs(x.abs()));
        T.max_imag = std::max(T.max_imag, std::exp2(log2_abs(x.im) - n));
    }
    for (auto & r : T.roots) r = BigComplex(r, prec);
    return T;
}

std::optional<mpq_class> recognize_rational(BigReal const & x, mpz_class const & den_bound, double tol_log2)
{
    prec_t p = x.prec();
    double tl = tol_log2 != 0 ? tol_log2 : -(double)p / 3 + std::max(0.0, log2_abs(x));
    BigReal y = x;
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 100000; ++it) {
        BigReal fl = floor(y);
        mpz_class a = fl.round_to_mpz();
        mpz_class h = a * h1 + h0, k = a * k1 + k0;
        if (k > den_bound) return std::nullopt;
        mpq_class q(h, k);
        q.canonicalize();
        if (log2_abs(x - BigReal(q, p)) < tl) return q;
        BigReal fr = y - fl;
        if (fr.is_zero()) return std::nullopt;
        y = BigReal(1L, p) / fr;
        h0 = h1; h1 = h;
        k0 = k1; k1 = k;
    }
    return std::nullopt;
}

std::vector<BigReal> scaled_coefficients(IsogenyPolynomial const & T, mpz_class const & D)
{
    std::vector<BigReal> out;
    mpz_class s = 1;
    for (auto const & c : T.coeffs) {
        out.push_back(c.re * BigReal(s, T.prec));
        s *= D;
    }
    return out;
}

RecognizedPrefix normalize_and_recognize(IsogenyPolynomial const & T, mpz_class const & D, int count, double max_residual)
{
    if (count >= (int)T.coeffs.size()) throw std::invalid_argument("normalize_and_recognize: count too large");
    RecognizedPrefix R;
    auto v = scaled_coefficients(T, D);
    mpz_class s = 1;
    for (int i = 1; i <= count; ++i) {
        s *= D;
        mpz_class a = v[i].round_to_mpz();
        BigReal re = v[i] - BigReal(a, T.prec);
        BigReal im = T.coeffs[i].im * BigReal(s, T.prec);
        BigReal res = sqrt(re * re + im * im);
        double l10 = log2_abs(res) * std::log10(2.0);
        if (l10 > std::log10(max_residual))
            throw numeric_failure("normalize_and_recognize: residual 10^" + std::to_string(l10) + " at x^" +
                                  std::to_string(T.degree() - i));
        R.a.push_back(a);
        R.log10_residual.push_back(l10);
    }
    return R;
}

namespace {

struct Eval {
    IsogenyPolynomial T;
    std::vector<BigComplex> F;
    double r = 0;   // log2 max |F_i|
};

Eval evaluate(RMFamily const & Fam, std::vector<BigComplex> const & z, std::vector<BigComplex> const & targets, int first, prec_t p)
{
    Eval e;
    e.T = isogeny_polynomial(Fam, z, p);
    e.r = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < targets.size(); ++i) {
        BigComplex t(targets[i], p);
        e.F.push_back((e.T.coeffs[i + first] - t) / t);
        e.r = std::max(e.r, log2_abs(e.F.back().abs()));
    }
    return e;
}

CMatrix jacobian(RMFamily const & Fam, std::vector<BigComplex> const & z, std::vector<BigComplex> const & targets, int first, prec_t jp)
{
    // coefficients are holomorphic in z: central differences along the real axis
    int m = (int)targets.size(), n = (int)z.size();
    CMatrix J(m, n, jp);
    BigReal h = ldexp(BigReal(1L, jp), -(long)jp / 3);
    for (int k = 0; k < n; ++k) {
        auto zp = at_prec(z, jp), zm = at_prec(z, jp);
        zp[k] += BigComplex(h);
        zm[k] -= BigComplex(h);
        auto ep = evaluate(Fam, zp, targets, first, jp), em = evaluate(Fam, zm, targets, first, jp);
        for (int i = 0; i < m; ++i) J(i, k) = (ep.F[i] - em.F[i]) / (h * 2L);
    }
    return J;
}

} // namespace

NewtonResult newton_refine(RMFamily const & F, std::vector<BigComplex> const & z0, std::vector<BigComplex> const & targets,
                           prec_t prec, NewtonOptions const & opt)
{
    if (targets.size() != z0.size()) throw std::invalid_argument("newton_refine: need as many targets as coordinates");
    if (opt.first_coeff < 1) throw std::invalid_argument("newton_refine: first_coeff must be positive");
    prec_t jp = opt.jac_prec ? opt.jac_prec : prec;
    double stop = -(double)(opt.stop_bits ? opt.stop_bits : prec / 2);
    NewtonResult R;
    auto z = at_prec(z0, prec);
    Eval cur = evaluate(F, z, targets, opt.first_coeff, prec);
    R.log2_residuals.push_back(cur.r);
    CMatrix J;
    bool fresh = false;
    for (int it = 0; it < opt.max_iter && cur.r >= stop; ++it) {
        if (J.rows() == 0 || !opt.reuse_jacobian) {
            J = jacobian(F, z, targets, opt.first_coeff, jp);
            ++R.jacobians;
            fresh = true;
        }
        std::vector<BigComplex> rhs;
        for (auto const & f : cur.F) rhs.push_back(-BigComplex(f, jp));
        auto delta = solve(J, rhs);
        bool accepted = false;
        BigReal lam(1L, prec);
        for (int h = 0; h < 12 && !accepted; ++h, lam = lam / 2L) {
            auto zt = z;
            for (size_t k = 0; k < z.size(); ++k) zt[k] += BigComplex(delta[k], prec) * lam;
            try {
                Eval e = evaluate(F, zt, targets, opt.first_coeff, prec);
                if (e.r < cur.r) {
                    double gain = cur.r - e.r;
                    z = zt;
                    cur = std::move(e);
                    accepted = true;
                    // a stale Jacobian that gains under one bit per step is refreshed
                    if (opt.reuse_jacobian && gain < 1) J = CMatrix();
                }
            } catch (numeric_failure const &) {
            }
        }
        if (opt.verbose)
            fprintf(stderr, "newton it %d: log2 residual %.1f%s\n", it, cur.r, accepted ? "" : " (no progress)");
        if (!accepted) {
            if (opt.reuse_jacobian && !fresh) {
                J = CMatrix();
                continue;
            }
            break;
        }
        fresh = false;
        R.log2_residuals.push_back(cur.r);
    }
    R.converged = cur.r < stop;
    R.z = z;
    R.T = std::move(cur.T);
    return R;
}

std::vector<mpz_class> euler_factor_product(NFElem const & a, mpz_class const & N)
{
    QPoly chi = a.charpoly();   // low to high, degree g
    int g = (int)chi.size() - 1;
    std::vector<mpq_class> out(2 * g + 1);
    // T^g chi((1 + N T^2) / T) = sum_i e_i (1 + N T^2)^i T^(g - i)
    for (int i = 0; i <= g; ++i) {
        mpz_class binom = 1;
        for (int j = 0; j <= i; ++j) {
            // C(i, j) N^j T^(2j + g - i)
            mpz_class Nj;
            mpz_pow_ui(Nj.get_mpz_t(), N.get_mpz_t(), j);
            out[2 * j + g - i] += chi[i] * mpq_class(binom * Nj);
            binom = binom * (i - j) / (j + 1);
        }
    }
    std::vector<mpz_class> r;
    for (auto & c : out) {
        if (c.get_den() != 1) throw std::domain_error("euler_factor_product: a is not integral");
        r.push_back(c.get_num());
    }
    return r;
}

} // namespace g17
