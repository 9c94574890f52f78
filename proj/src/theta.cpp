#include "g17/theta.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace g17 {

namespace {

constexpr double max_points = 4e8;

inline void cmul(BigComplex & r, BigComplex const & a, BigComplex const & b, mpfr_ptr t)
{
    // r may alias a or b
    mpfr_fmms(t, a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmma(r.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_swap(r.re.get(), t);
}

inline void cadd(BigComplex & r, BigComplex const & a)
{
    mpfr_add(r.re.get(), r.re.get(), a.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), r.im.get(), a.im.get(), MPFR_RNDN);
}

// table of base^p for p in [-n, n]
struct PowTable {
    long n = 0;
    std::vector<BigComplex> v;
    BigComplex const & operator[](long p) const { return v[p + n]; }
};

PowTable pow_table(BigComplex const & q, long n, prec_t w)
{
    // powers of exp(pi i q)
    PowTable T;
    T.n = n;
    T.v.assign(2 * n + 1, BigComplex(w));
    BigComplex up = exp_pi_i(q, w);
    BigComplex dn = exp_pi_i(-q, w);
    BigReal tmp(w);
    T.v[n] = BigComplex(1L, w);
    for (long p = 1; p <= n; ++p) {
        cmul(T.v[n + p], T.v[n + p - 1], up, tmp.get());
        cmul(T.v[n - p], T.v[n - p + 1], dn, tmp.get());
    }
    return T;
}

// exp(pi i c m^2) for m in [-n, n]
PowTable square_table(BigComplex const & c, long n, prec_t w)
{
    PowTable T;
    T.n = n;
    T.v.assign(2 * n + 1, BigComplex(w));
    BigComplex step = exp_pi_i(c, w);                       // ratio for m=0 -> 1
    BigComplex w2 = exp_pi_i(c * 2L, w);
    BigReal tmp(w);
    BigComplex cur(1L, w);
    T.v[n] = cur;
    for (long m = 1; m <= n; ++m) {
        cmul(cur, cur, step, tmp.get());
        T.v[n + m] = cur;
        T.v[n - m] = cur;
        cmul(step, step, w2, tmp.get());
    }
    return T;
}

struct Setup {
    int g;
    std::vector<double> R;      // upper Cholesky of scale*Im(Z)
    std::vector<long> B;        // box bounds
    double R2;
    double est;
};

Setup setup(CMatrix const & Z, double scale, prec_t prec, double radius_scale)
{
    int g = Z.rows();
    if (g < 1 || g > 6 || Z.cols() != g) throw std::invalid_argument("theta: Z must be square, genus 1..6");
    std::vector<double> Y = Z.im_double();
    for (auto & y : Y) y *= scale;
    Setup S;
    S.g = g;
    if (!cholesky_upper(Y, g, S.R)) throw std::domain_error("theta: Im Z not positive definite");
    // terms outside the ellipsoid are below exp(-pi R2)
    S.R2 = radius_scale * ((double)prec + 24 + 4.0 * g) * 0.6931471805599453 / M_PI;
    // box bound R*sqrt((A^-1)_ii)
    std::vector<double> Rinv((size_t)g * g, 0.0);
    for (int i = g - 1; i >= 0; --i) {
        Rinv[i * g + i] = 1.0 / S.R[i * g + i];
        for (int j = i + 1; j < g; ++j) {
            double s = 0;
            for (int k = i + 1; k <= j; ++k) s += S.R[i * g + k] * Rinv[k * g + j];
            Rinv[i * g + j] = -s / S.R[i * g + i];
        }
    }
    S.B.resize(g);
    double detR = 1;
    for (int i = 0; i < g; ++i) {
        double s = 0;
        for (int j = i; j < g; ++j) s += Rinv[i * g + j] * Rinv[i * g + j];
        S.B[i] = (long)std::floor(std::sqrt(S.R2 * s) + 1e-9) + 1;
        detR *= S.R[i * g + i];
    }
    double vol = std::pow(M_PI, g / 2.0) / std::tgamma(g / 2.0 + 1) * std::pow(S.R2, g / 2.0) / detR;
    double box = 1;
    for (int i = 0; i < g; ++i) box *= 2.0 * S.B[i] + 1;
    S.est = std::min(vol * 1.2 + box / std::max(1.0, (double)S.B[0]) * 2, box);
    return S;
}

} // namespace

double theta_point_estimate(CMatrix const & Z, prec_t prec, double radius_scale)
{
    return setup(Z, 0.5, prec, radius_scale).est;
}

namespace {

// sum of exp(pi i s m^T Z m) over m in Z^g, binned by m mod 4 (two bits
// per coordinate); m and -m are folded together
struct Binned {
    std::vector<BigComplex> S;
    long points;
    double R2;
};

Binned lattice_sum(CMatrix const & Z, double scale, prec_t prec, double radius_scale)
{
    Setup S = setup(Z, scale, prec, radius_scale);
    if (S.est > max_points) throw std::runtime_error("theta: truncation radius exceeds the enumeration cap");
    const int g = S.g;
    const prec_t w = prec + 56;
    BigReal sc(scale, w);

    // tables: diagonal squares, off-diagonal pair products, inner ratios
    std::vector<PowTable> E(g);
    std::vector<std::vector<PowTable>> F(g, std::vector<PowTable>(g));
    for (int i = 0; i < g; ++i) {
        BigComplex zi(Z(i, i), w);
        E[i] = square_table(zi * sc, S.B[i], w);
        for (int j = i + 1; j < g; ++j) {
            BigComplex zij(Z(i, j), w);
            zij = zij + BigComplex(Z(j, i), w);
            F[i][j] = pow_table(zij * sc, S.B[i] * S.B[j], w);
        }
    }
    // t(m0+1)/t(m0) = exp(pi i s Z00 (2 m0 + 1)) * prod_j F0j[m_j]
    BigComplex z00 = BigComplex(Z(0, 0), w) * sc;
    PowTable G = pow_table(z00 * 2L, S.B[0] + 1, w);
    BigComplex u = exp_pi_i(z00, w);
    BigComplex step = exp_pi_i(z00 * 2L, w);

    const int nb = 1 << (2 * g);
    std::vector<BigComplex> H(nb, BigComplex(w));
    std::vector<BigComplex> P(g + 1, BigComplex(w));
    P[g] = BigComplex(1L, w);
    std::vector<long> m(g, 0);
    BigComplex t(w), r(w);
    BigReal tmp(w), wtmp(w), ssum(w), sdif(w), sre(w);
    std::vector<BigReal> k(3, BigReal(w));
    long points = 0;

    auto inner = [&](bool zero_above, int binbase) {
        // center and width of the m0 range
        double c = 0;
        for (int j = 1; j < g; ++j) c -= S.R[0 * g + j] / S.R[0] * m[j];
        double rem = 0;
        {
            double used = 0;
            for (int i = g - 1; i >= 1; --i) {
                double ci = 0;
                for (int j = i + 1; j < g; ++j) ci -= S.R[i * g + j] / S.R[i * g + i] * m[j];
                double d = S.R[i * g + i] * (m[i] - ci);
                used += d * d;
            }
            rem = S.R2 - used;
        }
        if (rem < 0) return;
        double half = std::sqrt(rem) / S.R[0];
        long lo = (long)std::ceil(c - half - 1e-9), hi = (long)std::floor(c + half + 1e-9);
        lo = std::max(lo, -S.B[0]);
        hi = std::min(hi, S.B[0]);
        if (zero_above) lo = std::max(lo, 1L);
        if (lo > hi) return;
        // terms in this row are below exp(-pi*used); drop the bits they cannot affect
        double used = S.R2 - rem;
        prec_t pr = w - (prec_t)(used * M_PI / M_LN2);
        if (pr < 64) pr = 64;
        mpfr_prec_round(t.re.get(), pr, MPFR_RNDN);
        mpfr_prec_round(t.im.get(), pr, MPFR_RNDN);
        mpfr_prec_round(r.re.get(), pr, MPFR_RNDN);
        mpfr_prec_round(r.im.get(), pr, MPFR_RNDN);
        for (auto & x : k) mpfr_set_prec(x.get(), pr);
        mpfr_set_prec(tmp.get(), pr);
        mpfr_set_prec(ssum.get(), pr);
        mpfr_set_prec(sdif.get(), pr);
        mpfr_set_prec(sre.get(), pr);
        mpfr_set(sre.get(), step.re.get(), MPFR_RNDN);
        mpfr_add(ssum.get(), step.re.get(), step.im.get(), MPFR_RNDN);
        mpfr_sub(sdif.get(), step.im.get(), step.re.get(), MPFR_RNDN);

        // t = P1 * E0[lo] * prod_j F0j[lo m_j];  r = exp(pi i Z00 (2lo+1)/4) * prod_j F0j[m_j]
        cmul(t, P[1], E[0][lo], tmp.get());
        cmul(r, u, G[lo], tmp.get());
        for (int j = 1; j < g; ++j) {
            cmul(t, t, F[0][j][lo * m[j]], tmp.get());
            cmul(r, r, F[0][j][m[j]], tmp.get());
        }
        BigComplex * bins[4];
        for (int q = 0; q < 4; ++q) bins[q] = &H[binbase + q];
        long kk = ((lo % 4) + 4) % 4;
        mpfr_ptr k1 = k[0].get(), k2 = k[1].get(), k3 = k[2].get();
        for (long m0 = lo;; ++m0) {
            cadd(*bins[kk], t);
            ++points;
            if (m0 == hi) break;
            // t *= r
            mpfr_add(tmp.get(), t.re.get(), t.im.get(), MPFR_RNDN);
            mpfr_mul(k1, r.re.get(), tmp.get(), MPFR_RNDN);
            mpfr_sub(tmp.get(), r.im.get(), r.re.get(), MPFR_RNDN);
            mpfr_mul(k2, t.re.get(), tmp.get(), MPFR_RNDN);
            mpfr_add(tmp.get(), r.re.get(), r.im.get(), MPFR_RNDN);
            mpfr_mul(k3, t.im.get(), tmp.get(), MPFR_RNDN);
            mpfr_sub(t.re.get(), k1, k3, MPFR_RNDN);
            mpfr_add(t.im.get(), k1, k2, MPFR_RNDN);
            // r *= step
            mpfr_add(tmp.get(), r.re.get(), r.im.get(), MPFR_RNDN);
            mpfr_mul(k1, sre.get(), tmp.get(), MPFR_RNDN);
            mpfr_mul(k2, r.re.get(), sdif.get(), MPFR_RNDN);
            mpfr_mul(k3, r.im.get(), ssum.get(), MPFR_RNDN);
            mpfr_sub(r.re.get(), k1, k3, MPFR_RNDN);
            mpfr_add(r.im.get(), k1, k2, MPFR_RNDN);
            kk = (kk + 1) & 3;
        }
    };

    // recursive walk over m_{g-1}, ..., m_1
    std::function<void(int, bool, int)> walk = [&](int i, bool zero_above, int binbase) {
        if (i == 0) { inner(zero_above, binbase); return; }
        double c = 0;
        for (int j = i + 1; j < g; ++j) c -= S.R[i * g + j] / S.R[i * g + i] * m[j];
        double used = 0;
        for (int l = g - 1; l > i; --l) {
            double cl = 0;
            for (int j = l + 1; j < g; ++j) cl -= S.R[l * g + j] / S.R[l * g + l] * m[j];
            double d = S.R[l * g + l] * (m[l] - cl);
            used += d * d;
        }
        double rem = S.R2 - used;
        if (rem < 0) return;
        double half = std::sqrt(rem) / S.R[i * g + i];
        long lo = (long)std::ceil(c - half - 1e-9), hi = (long)std::floor(c + half + 1e-9);
        lo = std::max(lo, -S.B[i]);
        hi = std::min(hi, S.B[i]);
        if (zero_above) lo = std::max(lo, 0L);
        long pw = 1L << (2 * i);
        for (long mi = lo; mi <= hi; ++mi) {
            m[i] = mi;
            cmul(P[i], P[i + 1], E[i][mi], wtmp.get());
            for (int j = i + 1; j < g; ++j) cmul(P[i], P[i], F[i][j][mi * m[j]], wtmp.get());
            walk(i - 1, zero_above && mi == 0, binbase + (int)(((mi % 4) + 4) % 4) * (int)pw);
        }
        m[i] = 0;
    };
    walk(g - 1, true, 0);

    // symmetrize: term(-m) = term(m)
    std::vector<BigComplex> Sb(nb, BigComplex(w));
    for (int b = 0; b < nb; ++b) {
        int nbm = 0;
        for (int i = 0; i < g; ++i) {
            int d = (b >> (2 * i)) & 3;
            nbm |= ((4 - d) & 3) << (2 * i);
        }
        Sb[b] = H[b] + H[nbm];
    }
    Sb[0] += BigComplex(1L, w);
    return Binned{std::move(Sb), points, S.R2};
}

inline int digit_index(int g, unsigned lo, unsigned hi)
{
    int idx = 0;
    for (int i = 0; i < g; ++i) idx |= (int)(((lo >> i) & 1) + 2 * ((hi >> i) & 1)) << (2 * i);
    return idx;
}

} // namespace

ThetaConstants theta_constants(CMatrix const & Z, prec_t prec, double radius_scale)
{
    // m = 2(n + a): theta[a;b] = i^{a.b} sum_e (-1)^{e.b} S[a + 2e]
    int g = Z.rows();
    Binned B = lattice_sum(Z, 0.25, prec, radius_scale);
    prec_t w = B.S[0].prec();
    ThetaConstants out;
    out.g = g;
    out.prec = prec;
    out.points = B.points;
    out.radius2 = B.R2;
    const unsigned nc = 1u << g;
    out.v.assign((size_t)nc * nc, BigComplex(prec));
    for (unsigned a = 0; a < nc; ++a) {
        for (unsigned b = 0; b < nc; ++b) {
            BigComplex s(w);
            for (unsigned e = 0; e < nc; ++e) {
                int idx = digit_index(g, a, e);
                if (__builtin_popcount(e & b) & 1) s -= B.S[idx];
                else s += B.S[idx];
            }
            switch (__builtin_popcount(a & b) & 3) {
            case 1: s = BigComplex(-s.im, s.re); break;
            case 2: s = -s; break;
            case 3: s = BigComplex(s.im, -s.re); break;
            default: break;
            }
            out.v[((size_t)a << g) | b] = BigComplex(s, prec);
        }
    }
    return out;
}

ThetaConstants theta_squares(CMatrix const & Z, prec_t prec, double radius_scale)
{
    // theta[a;b](Z)^2 = sum_al (-1)^{al.b} theta[al;0](2Z) theta[al+a;0](2Z),
    // and theta[al;0](2Z) sums exp(pi i m^T Z m / 2) over m = al mod 2
    int g = Z.rows();
    Binned B = lattice_sum(Z, 0.5, prec, radius_scale);
    prec_t w = B.S[0].prec();
    const unsigned nc = 1u << g;
    std::vector<BigComplex> T(nc, BigComplex(w));
    for (size_t idx = 0; idx < B.S.size(); ++idx) {
        unsigned al = 0;
        for (int i = 0; i < g; ++i) al |= (unsigned)((idx >> (2 * i)) & 1) << i;
        T[al] += B.S[idx];
    }
    ThetaConstants out;
    out.g = g;
    out.prec = prec;
    out.squared = true;
    out.points = B.points;
    out.radius2 = B.R2;
    out.v.assign((size_t)nc * nc, BigComplex(prec));
    std::vector<BigComplex> prod((size_t)nc * nc, BigComplex(w));
    for (unsigned a = 0; a < nc; ++a)
        for (unsigned al = 0; al < nc; ++al) prod[a * nc + al] = T[al] * T[al ^ a];
    for (unsigned a = 0; a < nc; ++a)
        for (unsigned b = 0; b < nc; ++b) {
            BigComplex s(w);
            for (unsigned al = 0; al < nc; ++al) {
                if (__builtin_popcount(al & b) & 1) s -= prod[a * nc + al];
                else s += prod[a * nc + al];
            }
            out.v[((size_t)a << g) | b] = BigComplex(s, prec);
        }
    return out;
}

BigComplex theta_constant(ThetaChar ch, CMatrix const & Z, prec_t prec)
{
    return theta_constants(Z, prec)(ch);
}

namespace {
// theta^8 of an entry, whether the table holds theta or theta^2
BigComplex pow8(ThetaConstants const & th, unsigned a, unsigned b)
{
    BigComplex t = th(a, b);
    if (!th.squared) t = t * t;
    t = t * t;
    return t * t;
}
}

BigComplex eisenstein_E4(ThetaConstants const & th)
{
    unsigned nc = 1u << th.g;
    BigComplex s(th.prec);
    for (unsigned a = 0; a < nc; ++a)
        for (unsigned b = 0; b < nc; ++b)
            if (ThetaChar{a, b}.even()) s += pow8(th, a, b);
    return s;
}

BigComplex eisenstein_E4(CMatrix const & Z, prec_t prec)
{
    return eisenstein_E4(theta_squares(Z, prec));
}

BigComplex schottky_J(ThetaConstants const & th)
{
    if (th.g != 4) throw std::invalid_argument("schottky_J: genus must be 4");
    BigComplex s8(th.prec), s16(th.prec);
    for (unsigned a = 0; a < 16; ++a)
        for (unsigned b = 0; b < 16; ++b) {
            if (!ThetaChar{a, b}.even()) continue;
            BigComplex t = pow8(th, a, b);
            s8 += t;
            s16 += t * t;
        }
    return s8 * s8 - s16 * 16L;
}

BigComplex schottky_J(CMatrix const & Z, prec_t prec)
{
    if (Z.rows() != 4) throw std::invalid_argument("schottky_J: genus must be 4");
    return schottky_J(theta_squares(Z, prec));
}

BigReal schottky_normalized(ThetaConstants const & th)
{
    BigComplex J = schottky_J(th);
    BigReal d(th.prec);
    for (unsigned a = 0; a < 16; ++a)
        for (unsigned b = 0; b < 16; ++b) {
            if (!ThetaChar{a, b}.even()) continue;
            BigReal n = pow8(th, a, b).norm2();
            d += n;
        }
    return J.abs() / (d * 16);
}

} // namespace g17
