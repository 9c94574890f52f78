#include "g17/numfield.hpp"
#include "g17/polymodp.hpp"
#include "g17/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace g17 {

// ---- rational polynomials and matrices

QPoly qpoly_mul(QPoly const & a, QPoly const & b)
{
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

mpq_class qpoly_eval(QPoly const & a, mpq_class const & x)
{
    mpq_class r = 0;
    for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

namespace {

void qtrim(QPoly & a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qrem(QPoly a, QPoly const & m)
{
    qtrim(a);
    size_t n = m.size() - 1;
    while (a.size() > n) {
        mpq_class c = a.back() / m.back();
        size_t sh = a.size() - 1 - n;
        for (size_t i = 0; i <= n; ++i) a[sh + i] -= c * m[i];
        a.pop_back();
        qtrim(a);
    }
    return a;
}

int sign_at_infinity(QPoly const & p, bool positive)
{
    if (p.empty()) return 0;
    int s = sgn(p.back());
    if (!positive && ((p.size() - 1) & 1)) s = -s;
    return s;
}

int sign_changes(std::vector<int> const & v)
{
    int c = 0, last = 0;
    for (int s : v) {
        if (!s) continue;
        if (last && s != last) ++c;
        last = s;
    }
    return c;
}

mpq_class rdet(std::vector<std::vector<mpq_class>> M)
{
    size_t n = M.size();
    mpq_class d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) { std::swap(M[piv], M[c]); d = -d; }
        d *= M[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (M[r][c] == 0) continue;
            mpq_class f = M[r][c] / M[c][c];
            for (size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
        }
    }
    return d;
}

std::vector<mpq_class> rsolve(std::vector<std::vector<mpq_class>> M, std::vector<mpq_class> b)
{
    size_t n = M.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv][c] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular rational system");
        std::swap(M[piv], M[c]);
        std::swap(b[piv], b[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            mpq_class f = M[r][c] / M[c][c];
            for (size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
            b[r] -= f * b[c];
        }
    }
    for (size_t i = 0; i < n; ++i) b[i] /= M[i][i];
    return b;
}

} // namespace

int sturm_real_root_count(QPoly const & f0)
{
    QPoly f = f0;
    qtrim(f);
    if (f.size() < 2) return 0;
    std::vector<QPoly> seq = {f};
    QPoly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (long)i);
    seq.push_back(d);
    while (seq.back().size() > 1) {
        QPoly r = qrem(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto & c : r) c = -c;
        seq.push_back(r);
    }
    std::vector<int> lo, hi;
    for (auto const & p : seq) {
        lo.push_back(sign_at_infinity(p, false));
        hi.push_back(sign_at_infinity(p, true));
    }
    return sign_changes(lo) - sign_changes(hi);
}

QPoly charpoly(std::vector<std::vector<mpq_class>> const & A)
{
    size_t n = A.size();
    // Faddeev-LeVerrier: M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
    QPoly c(n + 1, mpq_class(0));
    c[n] = 1;
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n, mpq_class(0)));
    for (size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<mpq_class>> AM(n, std::vector<mpq_class>(n, mpq_class(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                mpq_class s = 0;
                for (size_t t = 0; t < n; ++t) s += A[i][t] * M[t][j];
                AM[i][j] = s;
            }
        for (size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
        M = AM;
        mpq_class tr = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t t = 0; t < n; ++t) tr += A[i][t] * M[t][i];
        c[n - k] = -tr / (long)k;
    }
    return c;
}

// ---- NumberField

namespace {

// some mod-p factor pattern forbids every proper factor degree
bool irreducible_over_Q(ZPoly const & f)
{
    int n = (int)f.size() - 1;
    if (n == 1) return true;
    std::vector<bool> possible(n, true);    // possible[d]: a factor of degree d might exist
    possible[0] = false;
    int used = 0;
    for (uint64_t p = 3; p < 2000 && used < 60; p += 2) {
        if (!is_prime_u64(p)) continue;
        ModP M(p);
        PolyP fp = M.reduce(f);
        if ((int)fp.size() - 1 != n || !M.squarefree(fp)) continue;
        ++used;
        auto parts = M.ddf_degrees(fp);
        std::vector<bool> sums(n + 1, false);
        sums[0] = true;
        for (int d : parts)
            for (int s = n; s >= d; --s)
                if (sums[s - d]) sums[s] = true;
        for (int d = 1; d < n; ++d)
            if (!sums[d]) possible[d] = false;
        if (std::none_of(possible.begin(), possible.end(), [](bool b) { return b; })) return true;
    }
    return false;
}

} // namespace

std::shared_ptr<const NumberField> NumberField::make(ZPoly f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.size() < 2 || f.back() != 1) throw std::invalid_argument("minimal polynomial must be monic of degree >= 1");
    if (!irreducible_over_Q(f)) throw std::invalid_argument("polynomial not shown irreducible over Q");
    auto K = std::shared_ptr<NumberField>(new NumberField());
    K->f_ = std::move(f);
    K->g_ = (int)K->f_.size() - 1;
    return K;
}

std::shared_ptr<const NumberField> NumberField::real_quadratic(long D)
{
    long m = D % 4;
    if (D <= 1 || !(m == 0 || m == 1)) throw std::invalid_argument("not a real quadratic discriminant");
    long r = std::lround(std::sqrt((double)D));
    if (r * r == D) throw std::invalid_argument("square discriminant");
    ZPoly f = (m == 0) ? ZPoly{mpz_class(-D / 4), 0, 1} : ZPoly{mpz_class(-(D - 1) / 4), -1, 1};
    auto K = std::shared_ptr<NumberField>(new NumberField());
    K->f_ = f;
    K->g_ = 2;
    K->qdisc_ = D;
    long core = (m == 0) ? D / 4 : D;
    if (m == 0 && !(core % 4 == 2 || core % 4 == 3)) throw std::invalid_argument("non-fundamental discriminant");
    for (long q = 2; q * q <= core; ++q)
        if (core % (q * q) == 0) throw std::invalid_argument("non-fundamental discriminant");
    return K;
}

std::shared_ptr<const NumberField> NumberField::hecke_field()
{
    static auto K = make({1, 1, -3, -1, 1});
    return K;
}

mpz_class NumberField::poly_discriminant() const
{
    // disc = (-1)^{n(n-1)/2} Res(f, f') for monic f; via Sylvester determinant
    int n = g_;
    std::vector<mpz_class> d;
    for (int i = 1; i <= n; ++i) d.push_back(f_[i] * i);
    int m = n - 1;
    int N = n + m;
    std::vector<std::vector<mpq_class>> S(N, std::vector<mpq_class>(N, mpq_class(0)));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) S[r][r + i] = f_[n - i];
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) S[m + r][r + i] = d[m - i];
    mpq_class res = rdet(S);
    if ((n * (n - 1) / 2) & 1) res = -res;
    return res.get_num();
}

NFElem NumberField::zero() const { return NFElem(shared_from_this(), std::vector<mpq_class>(g_, mpq_class(0))); }
NFElem NumberField::one() const { return from_int(1); }
NFElem NumberField::from_int(long n) const
{
    std::vector<mpq_class> c(g_, mpq_class(0));
    c[0] = n;
    return NFElem(shared_from_this(), c);
}
NFElem NumberField::gen() const
{
    std::vector<mpq_class> c(g_, mpq_class(0));
    if (g_ == 1) c[0] = -mpq_class(f_[0]);
    else c[1] = 1;
    return NFElem(shared_from_this(), c);
}
NFElem NumberField::from_coeffs(std::vector<mpq_class> c) const
{
    if ((int)c.size() > g_) throw std::invalid_argument("too many coefficients");
    c.resize(g_, mpq_class(0));
    return NFElem(shared_from_this(), c);
}

std::vector<std::vector<mpq_class>> NumberField::companion() const
{
    std::vector<std::vector<mpq_class>> C(g_, std::vector<mpq_class>(g_, mpq_class(0)));
    for (int i = 1; i < g_; ++i) C[i][i - 1] = 1;
    for (int i = 0; i < g_; ++i) C[i][g_ - 1] = -mpq_class(f_[i]);
    return C;
}

bool NumberField::totally_real() const
{
    std::lock_guard<std::mutex> lk(mu_);
    if (totreal_ < 0) {
        QPoly q(f_.begin(), f_.end());
        totreal_ = sturm_real_root_count(q) == g_ ? 1 : 0;
    }
    return totreal_ == 1;
}

std::vector<BigReal> NumberField::real_roots(prec_t prec) const
{
    if (!totally_real()) throw std::domain_error("field is not totally real");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = roots_.find(prec);
        if (it != roots_.end()) return it->second;
    }
    // double seeds from the companion matrix
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(g_, g_);
    for (int i = 1; i < g_; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < g_; ++i) C(i, g_ - 1) = -f_[i].get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    std::vector<double> seeds;
    for (int i = 0; i < g_; ++i) seeds.push_back(es.eigenvalues()[i].real());
    std::sort(seeds.begin(), seeds.end());
    std::vector<BigReal> out;
    prec_t work = prec + 32;
    for (double s : seeds) {
        BigReal x(s, work);
        auto step = [&](prec_t p) {
            BigReal v(0L, p), dv(0L, p);
            BigReal xp(x, p);
            for (int i = g_; i >= 0; --i) {
                dv = dv * xp + v;
                v = v * xp + BigReal(f_[i], p);
            }
            BigReal dx = v / dv;
            x = BigReal(x - dx, work);
            return dx;
        };
        // precision doubles along with the correct digits
        for (prec_t p = 64;; p = std::min<prec_t>(2 * p, work)) {
            for (int k = 0; k < 2; ++k) step(p);
            if (p == work) break;
        }
        BigReal dx = step(work);
        if (!dx.is_zero() && dx.exponent() > -(long)prec) throw std::runtime_error("root refinement did not converge");
        out.push_back(BigReal(x, prec));
    }
    for (size_t i = 1; i < out.size(); ++i)
        if (!(out[i - 1] < out[i])) throw std::runtime_error("real roots not separated");
    std::lock_guard<std::mutex> lk(mu_);
    roots_[prec] = out;
    return out;
}

// ---- NFElem

NFElem::NFElem(FieldRef K, std::vector<mpq_class> c) : K_(std::move(K)), c_(std::move(c))
{
    if ((int)c_.size() != K_->degree()) throw std::invalid_argument("coefficient vector length must equal the degree");
}

NFElem NFElem::operator+(NFElem const & o) const
{
    std::vector<mpq_class> r = c_;
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
    return NFElem(K_, r);
}

NFElem NFElem::operator-(NFElem const & o) const
{
    std::vector<mpq_class> r = c_;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
    return NFElem(K_, r);
}

NFElem NFElem::operator-() const
{
    std::vector<mpq_class> r = c_;
    for (auto & x : r) x = -x;
    return NFElem(K_, r);
}

NFElem NFElem::operator*(mpq_class const & s) const
{
    std::vector<mpq_class> r = c_;
    for (auto & x : r) x *= s;
    return NFElem(K_, r);
}

NFElem NFElem::operator*(NFElem const & o) const
{
    int g = K_->degree();
    ZPoly const & f = K_->minpoly();
    std::vector<mpq_class> r(2 * g - 1, mpq_class(0));
    for (int i = 0; i < g; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < g; ++j) r[i + j] += c_[i] * o.c_[j];
    }
    for (int k = 2 * g - 2; k >= g; --k) {
        if (r[k] == 0) continue;
        mpq_class t = r[k];
        for (int i = 0; i < g; ++i) r[k - g + i] -= t * f[i];
        r[k] = 0;
    }
    r.resize(g);
    return NFElem(K_, r);
}

bool NFElem::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](mpq_class const & x) { return x == 0; });
}

bool NFElem::is_integral_coeffs() const
{
    return std::all_of(c_.begin(), c_.end(), [](mpq_class const & x) { return x.get_den() == 1; });
}

std::vector<std::vector<mpq_class>> NFElem::mult_matrix() const
{
    int g = K_->degree();
    std::vector<std::vector<mpq_class>> M(g, std::vector<mpq_class>(g, mpq_class(0)));
    NFElem b = K_->one();
    NFElem nu = K_->gen();
    for (int j = 0; j < g; ++j) {
        NFElem col = *this * b;
        for (int i = 0; i < g; ++i) M[i][j] = col.c_[i];
        b = b * nu;
    }
    return M;
}

NFElem NFElem::inv() const
{
    if (is_zero()) throw std::domain_error("inverse of zero in number field");
    std::vector<mpq_class> e(K_->degree(), mpq_class(0));
    e[0] = 1;
    return NFElem(K_, rsolve(mult_matrix(), e));
}

NFElem NFElem::pow(long n) const
{
    if (n < 0) return inv().pow(-n);
    NFElem r = K_->one(), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

QPoly NFElem::charpoly() const { return g17::charpoly(mult_matrix()); }

mpq_class NFElem::trace() const
{
    auto M = mult_matrix();
    mpq_class t = 0;
    for (size_t i = 0; i < M.size(); ++i) t += M[i][i];
    return t;
}

mpq_class NFElem::norm() const
{
    QPoly c = charpoly();
    mpq_class n = c[0];
    return (K_->degree() & 1) ? mpq_class(-n) : n;
}

BigReal NFElem::embed(int k, prec_t prec) const
{
    auto roots = K_->real_roots(prec);
    BigReal r(0L, prec);
    for (int i = K_->degree() - 1; i >= 0; --i) r = r * roots.at(k) + BigReal(c_[i], prec);
    return r;
}

std::vector<BigReal> NFElem::embeddings(prec_t prec) const
{
    std::vector<BigReal> v;
    for (int k = 0; k < K_->degree(); ++k) v.push_back(embed(k, prec));
    return v;
}

NFElem NFElem::apply_poly_map(NFElem const & img) const
{
    NFElem r = K_->zero();
    for (int i = K_->degree() - 1; i >= 0; --i) r = r * img + K_->one() * c_[i];
    return r;
}

std::string NFElem::str() const
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
    os << "]";
    return os.str();
}

// ---- real quadratic fields

long kronecker(long D, long p) { return mpz_kronecker_si(mpz_class(D).get_mpz_t(), p); }

namespace {

void quad_check(FieldRef const & F)
{
    if (!F->quad_disc()) throw std::invalid_argument("operation needs a real quadratic field built by real_quadratic");
}

// omega = (t + sqrt D)/2, t = trace of omega
long omega_trace(FieldRef const & F) { return F->quad_disc() % 4 == 0 ? 0 : 1; }

NFElem conj(NFElem const & x)
{
    // omega -> t - omega
    long t = omega_trace(x.field());
    return x.field()->from_coeffs({x[0] + x[1] * t, -x[1]});
}

long height(NFElem const & x)
{
    mpq_class h = abs(x[0]) + abs(x[1]);
    return h.get_num().get_si();
}

bool is_square_mpz(mpz_class const & n, mpz_class & r)
{
    if (n < 0) return false;
    r = sqrt(n);
    return r * r == n;
}

NFElem normalize_generator(NFElem x, NFElem const & eps)
{
    NFElem best = x;
    long bh = height(x);
    NFElem ei = eps.inv();
    NFElem up = x, dn = x;
    for (int k = 1; k <= 4; ++k) {
        up = up * eps;
        dn = dn * ei;
        for (auto const & c : {dn, up}) {
            long h = height(c);
            if (h < bh) { bh = h; best = c; }
        }
    }
    if (best.embed(0, 128).sign() < 0) best = -best;
    return best;
}

long mod_root(NFElem const & pi, long p)
{
    // omega = -a/b mod (pi)
    mpz_class a = pi[0].get_num(), b = pi[1].get_num();
    mpz_class pp = p, r;
    mpz_class binv;
    if (!mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), pp.get_mpz_t())) return -1;
    r = -a * binv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
    return r.get_si();
}

} // namespace

BigReal embed_plus(NFElem const & x, prec_t prec) { return x.embed(x.field()->degree() - 1, prec); }

std::vector<int> signs(NFElem const & x)
{
    std::vector<int> s;
    for (prec_t p = 128;; p *= 2) {
        s.clear();
        bool ok = true;
        for (auto const & v : x.embeddings(p)) {
            if (v.is_zero() || v.exponent() < -(long)p / 2) { ok = false; break; }
            s.push_back(v.sign());
        }
        if (ok) return s;
        if (x.is_zero()) throw std::domain_error("sign of zero");
        if (p > 1 << 14) throw std::runtime_error("sign undetermined");
    }
}

bool totally_positive(NFElem const & x)
{
    auto s = signs(x);
    return std::all_of(s.begin(), s.end(), [](int v) { return v > 0; });
}

bool totally_positive_associate(NFElem const & x, NFElem & out)
{
    FieldRef F = x.field();
    NFElem eps = fundamental_unit(F);
    NFElem y = x;
    for (int k = 0; k <= 4; ++k) {
        for (NFElem const & c : {y, NFElem(-y)})
            if (totally_positive(c)) { out = c; return true; }
        y = y * eps;
    }
    return false;
}

bool divides(NFElem const & pi, NFElem const & x)
{
    if (pi.is_zero()) return x.is_zero();
    return (x / pi).is_integral_coeffs();
}

PrimeIdeal const * identify_prime(std::vector<PrimeIdeal> const & list, NFElem const & x)
{
    for (auto const & P : list)
        if (divides(P.gen, x)) return &P;
    return nullptr;
}

std::vector<PrimeIdeal> prime_split(FieldRef const & F, long p, long bound)
{
    quad_check(F);
    if (p < 2 || !is_prime_u64((uint64_t)p)) throw std::invalid_argument("prime_split needs a rational prime");
    long D = F->quad_disc();
    long k = kronecker(D, p);
    NFElem eps = fundamental_unit(F);
    std::vector<PrimeIdeal> out;
    if (k == -1) {
        PrimeIdeal P;
        P.p = p;
        P.residue_degree = 2;
        P.norm = p * p;
        P.gen = F->from_int(p);
        P.kind = 'i';
        out.push_back(P);
        return out;
    }
    // solve a^2 + a b t + b^2 n = +-p: disc b^2 D +- 4p must be a square s^2, a = (-bt +- s)/2
    long t = omega_trace(F);
    if (bound <= 0) bound = 200000;
    NFElem gen;
    bool found = false;
    for (long b = 1; b <= bound && !found; ++b) {
        for (int sg : {1, -1}) {
            mpz_class disc = mpz_class(b) * b * D + mpz_class(4 * sg) * p, s;
            if (!is_square_mpz(disc, s)) continue;
            mpz_class num = -mpz_class(b * t) + s;
            if (num % 2 != 0) continue;
            mpz_class a = num / 2;
            gen = F->from_coeffs({mpq_class(a), mpq_class(b)});
            found = true;
            break;
        }
    }
    if (!found) throw generator_search_failed("no generator of norm " + std::to_string(p) + " found with |b| <= " + std::to_string(bound));
    gen = normalize_generator(gen, eps);
    PrimeIdeal P;
    P.p = p;
    P.norm = p;
    P.gen = gen;
    P.root = mod_root(gen, p);
    P.kind = (k == 0) ? 'r' : 's';
    if (k == 0) {
        out.push_back(P);
        return out;
    }
    PrimeIdeal Q = P;
    Q.gen = normalize_generator(conj(gen), eps);
    Q.root = mod_root(Q.gen, p);
    if (Q.root < P.root) std::swap(P, Q);
    P.index = 1;
    Q.index = 2;
    out.push_back(P);
    out.push_back(Q);
    return out;
}

NFElem fundamental_unit(FieldRef const & F)
{
    quad_check(F);
    long D = F->quad_disc();
    long t = omega_trace(F);
    // continued fraction of omega = (P + sqrt D)/Q with P = t, Q = 2
    mpz_class s = sqrt(mpz_class(D));
    mpz_class P = t, Q = 2;
    mpz_class A2 = 0, A1 = 1, B2 = 1, B1 = 0;
    NFElem omega = F->gen();
    for (int i = 0; i < 100000; ++i) {
        mpz_class num, a;
        if (Q > 0) {
            num = P + s;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        } else {
            num = -P - s - 1;
            mpz_class nq = -Q;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), nq.get_mpz_t());
        }
        mpz_class A = a * A1 + A2, B = a * B1 + B2;
        A2 = A1; A1 = A;
        B2 = B1; B1 = B;
        NFElem u = F->from_int(0) + F->one() * mpq_class(A) - omega * mpq_class(B);
        mpq_class n = u.norm();
        if (B != 0 && (n == 1 || n == -1)) {
            NFElem best;
            bool have = false;
            for (NFElem const & c : {u, NFElem(-u), u.inv(), NFElem(-u.inv())}) {
                if (embed_plus(c, 128) > BigReal(1L, 128)) { best = c; have = true; break; }
            }
            if (have && best != F->one()) return best;
        }
        mpz_class Pn = a * Q - P;
        mpz_class Qn = (mpz_class(D) - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
    }
    throw std::runtime_error("continued fraction did not produce a unit");
}

std::vector<IdealFactored> ideals_of_norm_upto(FieldRef const & F, long X)
{
    quad_check(F);
    std::vector<PrimeIdeal> primes;
    std::vector<bool> comp(X + 1, false);
    for (long p = 2; p <= X; ++p) {
        if (comp[p]) continue;
        for (long q = p * p; q <= X; q += p) comp[q] = true;
        for (auto const & P : prime_split(F, p))
            if (P.norm <= X) primes.push_back(P);
    }
    std::sort(primes.begin(), primes.end());
    std::vector<IdealFactored> out;
    IdealFactored cur;
    cur.gen = F->one();
    // depth first over primes in increasing norm
    std::function<void(size_t)> rec = [&](size_t start) {
        out.push_back(cur);
        for (size_t i = start; i < primes.size(); ++i) {
            long N = primes[i].norm;
            if (N > X / cur.norm) break;
            IdealFactored saved = cur;
            long n = saved.norm;
            NFElem gg = saved.gen;
            for (int e = 1; n <= X / N; ++e) {
                n *= N;
                gg = gg * primes[i].gen;
                cur = saved;
                cur.norm = n;
                cur.gen = gg;
                cur.factors.push_back({primes[i], e});
                rec(i + 1);
            }
            cur = saved;
        }
    };
    rec(0);
    std::stable_sort(out.begin(), out.end(), [](IdealFactored const & a, IdealFactored const & b) { return a.norm < b.norm; });
    return out;
}

// ---- quartic field helpers

CodifferentReport is_codifferent_generator(FieldRef const & K, NFElem const & d)
{
    if (d.is_zero()) throw std::domain_error("zero codifferent candidate");
    int g = K->degree();
    NFElem di = d.inv();
    std::vector<NFElem> pw = {K->one()};
    for (int i = 1; i < 2 * g; ++i) pw.push_back(pw.back() * K->gen());
    CodifferentReport r;
    r.integral = true;
    std::vector<std::vector<mpq_class>> G(g, std::vector<mpq_class>(g));
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            G[i][j] = (pw[i + j] * di).trace();
            if (G[i][j].get_den() != 1) r.integral = false;
        }
    r.det = rdet(G);
    r.generator = r.integral && (r.det == 1 || r.det == -1);
    r.signs = signs(d);
    r.totally_positive = std::all_of(r.signs.begin(), r.signs.end(), [](int s) { return s > 0; });
    return r;
}

std::vector<NFElem> automorphisms(FieldRef const & K)
{
    int g = K->degree();
    prec_t p = 256;
    auto roots = K->real_roots(p);
    std::vector<int> perm(g);
    std::iota(perm.begin(), perm.end(), 0);
    // Vandermonde V[k][i] = r_k^i
    CMatrix V(g, g, p);
    for (int k = 0; k < g; ++k) {
        BigReal x(1L, p);
        for (int i = 0; i < g; ++i) {
            V(k, i) = BigComplex(x);
            x = x * roots[k];
        }
    }
    CMatrix Vi = inverse(V);
    std::vector<NFElem> out;
    QPoly fq(K->minpoly().begin(), K->minpoly().end());
    do {
        std::vector<mpq_class> c(g);
        bool ok = true;
        for (int i = 0; i < g && ok; ++i) {
            BigReal s(0L, p);
            for (int k = 0; k < g; ++k) s += Vi(i, k).re * roots[perm[k]];
            mpz_class z = s.round_to_mpz();
            BigReal err = abs(s - BigReal(z, p));
            if (!err.is_zero() && err.exponent() > -(long)p / 2) ok = false;
            c[i] = mpq_class(z);
        }
        if (!ok) continue;
        NFElem img = K->from_coeffs(c);
        // exact check f(img) = 0
        NFElem v = K->zero();
        for (int i = g; i >= 0; --i) v = v * img + K->from_int(0) + K->one() * mpq_class(K->minpoly()[i]);
        if (!v.is_zero()) continue;
        if (std::find(out.begin(), out.end(), img) == out.end()) out.push_back(img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto id = std::find(out.begin(), out.end(), K->gen());
    if (id != out.end()) std::iter_swap(out.begin(), id);
    return out;
}

ResidueMap2::ResidueMap2(FieldRef K) : K_(std::move(K)), F16_(FiniteField::f16())
{
    int g = K_->degree();
    if (4 % g != 0) throw std::invalid_argument("residue field does not embed in F16");
    ModP M2(2);
    PolyP f2 = M2.reduce(K_->minpoly());
    if ((int)f2.size() - 1 != g || !M2.squarefree(f2) || M2.ddf_degrees(f2) != std::vector<int>{g})
        throw std::invalid_argument("2 is not inert in the field");
    std::vector<long> c;
    for (auto x : f2) c.push_back((long)x);
    for (unsigned a = 0; a < 16; ++a)
        if (F16_->eval_prime_poly(c, a) == 0) { nu_ = a; return; }
    throw std::logic_error("no root of the reduced polynomial in F16");
}

ZPoly ResidueMap2::reduced_poly() const
{
    ModP M2(2);
    PolyP f2 = M2.reduce(K_->minpoly());
    return ZPoly(f2.begin(), f2.end());
}

unsigned ResidueMap2::operator()(NFElem const & x) const
{
    std::vector<long> c;
    for (auto const & q : x.coeffs()) {
        if (q.get_den() % 2 == 0) throw std::domain_error("element not 2-integral");
        mpz_class n = q.get_num() % 2;
        c.push_back(n != 0 ? 1 : 0);
    }
    return F16_->eval_prime_poly(c, nu_);
}

} // namespace g17
