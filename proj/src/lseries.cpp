#include "g17/lseries.hpp"

#include "g17/isogeny.hpp"
#include "g17/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace g17 {

namespace {

mpq_class co(NFElem const & x, int i)
{
    return i < (int)x.coeffs().size() ? x[i] : mpq_class(0);
}

mpz_class zco(NFElem const & x, int i)
{
    mpq_class q = co(x, i);
    if (q.get_den() != 1) throw std::invalid_argument("element is not integral: " + x.str());
    return q.get_num();
}

double log2abs(BigReal const & x)
{
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    long e;
    double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
    return std::log2(std::fabs(m)) + (double)e;
}

double log2abs(BigComplex const & z)
{
    return std::max(log2abs(z.re), log2abs(z.im));
}

std::string sign_str(std::array<int, 2> const & s)
{
    return std::string(s[0] > 0 ? "+" : "-") + (s[1] > 0 ? "+" : "-");
}

NFElem sqrt_disc(FieldRef const & F)
{
    // omega = (t + sqrt D)/2
    long t = F->quad_disc() % 4 == 0 ? 0 : 1;
    return F->from_coeffs({-t, 2});
}

bool ideal_divides(NFElem const & a, NFElem const & b)
{
    return (b / a).is_integral_coeffs();
}

} // namespace

// ---- residues

ResidueRing::ResidueRing(FieldRef F, NFElem c) : F_(std::move(F)), c_(std::move(c))
{
    if (F_->degree() != 2 || !F_->quad_disc()) throw std::invalid_argument("ResidueRing needs a real quadratic field");
    if (c_.is_zero()) throw std::invalid_argument("zero modulus");
    NFElem cw = c_ * F_->gen();
    mpz_class x1 = zco(c_, 0), y1 = zco(c_, 1), x2 = zco(cw, 0), y2 = zco(cw, 1);
    mpz_class d, u, v;
    mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), y1.get_mpz_t(), y2.get_mpz_t());
    mpz_class det = abs(x1 * y2 - x2 * y1);
    if (d == 0) throw std::invalid_argument("degenerate modulus");
    mpz_class a = det / d, b = u * x1 + v * x2;
    if (!a.fits_slong_p() || a * d > 1000000) throw std::invalid_argument("modulus too large");
    a_ = a.get_si();
    d_ = d.get_si();
    mpz_class br = b % a;
    if (br < 0) br += a;
    b_ = br.get_si();
    long N = size();
    unit_.assign(N, 0);
    long one = key(F_->one());
    for (long x = 0; x < N; ++x) {
        if (unit_[x]) continue;
        for (long y = 0; y < N; ++y)
            if (mul(x, y) == one) {
                unit_[x] = unit_[y] = 1;
                break;
            }
    }
    for (long x = 0; x < N; ++x)
        if (unit_[x]) units_.push_back(x);
}

long ResidueRing::key(NFElem const & x) const
{
    mpz_class u = zco(x, 0), v = zco(x, 1);
    mpz_class j = v % d_;
    if (j < 0) j += d_;
    mpz_class k = (v - j) / d_;
    mpz_class i = (u - k * b_) % a_;
    if (i < 0) i += a_;
    return i.get_si() + a_ * j.get_si();
}

NFElem ResidueRing::rep(long key) const
{
    long i = key % a_, j = key / a_;
    return F_->from_coeffs({mpq_class(i), mpq_class(j)});
}

long ResidueRing::mul(long x, long y) const
{
    return key(rep(x) * rep(y));
}

// ---- characters

bool RayClassCharacter::trivial() const
{
    if (sign[0] != 1 || sign[1] != 1) return false;
    for (auto const & [k, v] : chi0)
        if (v != 1) return false;
    return true;
}

std::string RayClassCharacter::sign_string() const
{
    return sign_str(sign);
}

std::string RayClassCharacter::name() const
{
    std::string s = "N" + std::to_string(modulus_norm) + "(" + modulus.str() + ")" + sign_string();
    if (!gen_values.empty()) {
        s += "[";
        for (int v : gen_values) s += v > 0 ? "+" : "-";
        s += "]";
    }
    return s;
}

int RayClassCharacter::finite_part(NFElem const & x) const
{
    long k = ring->key(x);
    auto it = chi0.find(k);
    return it == chi0.end() ? 0 : it->second;
}

int RayClassCharacter::operator()(NFElem const & x) const
{
    int v = finite_part(x);
    if (!v) return 0;
    auto s = signs(x);
    for (int k = 0; k < 2; ++k)
        if (s[k] < 0) v *= sign[k];
    return v;
}

int RayClassCharacter::on_prime(PrimeIdeal const & P) const
{
    return (*this)(P.gen);
}

RayClassCharacter RayClassCharacter::primitive_version() const
{
    if (primitive()) return *this;
    for (auto const & c : enumerate_quadratic_characters(F, conductor, sign)) {
        bool ok = true;
        for (auto const & [k, v] : chi0)
            if (c.finite_part(ring->rep(k)) != v) { ok = false; break; }
        if (ok) return c;
    }
    throw lseries_error("no primitive character induces " + name());
}

namespace {

// divisors of the principal ideal (c), (1) first, by norm
std::vector<NFElem> ideal_divisors(FieldRef const & F, NFElem const & c)
{
    long N = std::labs(c.norm().get_num().get_si());
    std::vector<NFElem> out;
    for (auto const & I : ideals_of_norm_upto(F, N))
        if (N % I.norm == 0 && ideal_divides(I.gen, c)) out.push_back(I.gen);
    return out;
}

}

std::vector<RayClassCharacter> enumerate_quadratic_characters(FieldRef const & F, NFElem const & c,
                                                              std::optional<std::array<int, 2>> sign)
{
    auto R = std::make_shared<ResidueRing>(F, c);
    auto const & U = R->units();
    // generators of U/U^2, greedily
    std::set<long> H;
    for (long x : U) H.insert(R->mul(x, x));
    std::vector<long> gens;
    std::map<long, unsigned> mask;   // element -> exponents on gens, as a bitmask
    for (long s : H) mask[s] = 0;
    for (long x : U) {
        if (mask.count(x)) continue;
        unsigned bit = 1u << gens.size();
        gens.push_back(x);
        std::map<long, unsigned> add;
        for (auto const & [h, m] : mask) add[R->mul(x, h)] = m | bit;
        for (auto const & kv : add) mask.insert(kv);
    }
    if (mask.size() != U.size()) throw std::logic_error("unit group closure failed");
    int r = (int)gens.size();
    NFElem eps = fundamental_unit(F);
    std::vector<NFElem> units = {F->from_int(-1), eps};
    auto divs = ideal_divisors(F, c);
    std::vector<RayClassCharacter> out;
    for (unsigned e = 0; e < (1u << r); ++e) {
        std::map<long, int> chi0;
        for (auto const & [x, m] : mask) chi0[x] = (__builtin_popcount(m & e) % 2) ? -1 : 1;
        for (int s0 : {1, -1})
            for (int s1 : {1, -1}) {
                RayClassCharacter ch;
                ch.F = F;
                ch.modulus = c;
                ch.modulus_norm = R->size();
                ch.ring = R;
                ch.gen_keys = gens;
                for (int i = 0; i < r; ++i) ch.gen_values.push_back((e >> i) & 1 ? -1 : 1);
                ch.sign = {s0, s1};
                ch.chi0 = chi0;
                bool ok = true;
                for (auto const & u : units)
                    if (ch(u) != 1) { ok = false; break; }
                if (!ok) continue;
                if (sign && *sign != ch.sign) continue;
                // conductor: the smallest divisor through which chi0 factors
                for (auto const & f : divs) {
                    ResidueRing Rf(F, f);
                    long onef = Rf.key(F->one());
                    bool factors = true;
                    for (long x : U)
                        if (Rf.key(R->rep(x)) == onef && chi0[x] != 1) { factors = false; break; }
                    if (factors) {
                        ch.conductor = f;
                        ch.conductor_norm = Rf.size();
                        break;
                    }
                }
                out.push_back(std::move(ch));
            }
    }
    return out;
}

std::vector<RayClassCharacter> primitive_characters_upto(FieldRef const & F, long bound,
                                                         std::optional<std::array<int, 2>> sign, NFElem const * level)
{
    std::vector<RayClassCharacter> out;
    for (auto const & I : ideals_of_norm_upto(F, bound)) {
        if (level) {
            bool coprime = true;
            for (auto const & [P, e] : I.factors)
                if (ideal_divides(P.gen, *level)) coprime = false;
            if (!coprime) continue;
        }
        for (auto & ch : enumerate_quadratic_characters(F, I.gen, sign))
            if (ch.primitive()) out.push_back(std::move(ch));
    }
    return out;
}

GaussSum gauss_sum(RayClassCharacter const & chi, prec_t prec)
{
    if (!chi.primitive()) throw lseries_error("Gauss sum of an imprimitive character " + chi.name());
    FieldRef const & F = chi.F;
    NFElem g0 = chi.modulus * sqrt_disc(F);
    NFElem eps = fundamental_unit(F);
    std::vector<NFElem> cands;
    NFElem y = g0;
    for (int k = 0; k < 4; ++k) {
        cands.push_back(y);
        cands.push_back(-y);
        y = y * eps;
    }
    GaussSum G;
    G.gamma = g0;
    G.gamma_matches = false;
    for (auto const & c : cands)
        if (totally_positive(c)) { G.gamma = c; G.gamma_matches = true; break; }
    if (!G.gamma_matches)
        for (auto const & c : cands) {
            auto s = signs(c);
            if (s[0] == chi.sign[0] && s[1] == chi.sign[1]) { G.gamma = c; G.gamma_matches = true; break; }
        }
    prec_t wp = prec + 16;
    BigComplex sum(wp);
    NFElem ginv = G.gamma.inv();
    for (auto const & [k, v] : chi.chi0) {
        mpq_class t = (chi.ring->rep(k) * ginv).trace();
        // exp(2 pi i t) depends on t mod 1
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
        mpq_class fr = t - fl;
        BigComplex e = exp_pi_i(BigComplex(BigReal(mpq_class(2 * fr), wp)), wp);
        if (v > 0)
            sum += e;
        else
            sum -= e;
    }
    G.value = BigComplex(sum, prec);
    return G;
}

// ---- L-values

// g(x) = x K1(x); the slow side of the smoothed sum has x = 4 pi sqrt(n / (cutoff A))
double lvalue_tail_log2(double A, long X, double cutoff)
{
    double c = std::max(cutoff, 1.0 / cutoff);
    double y = 4 * M_PI * std::sqrt((double)X / (c * A));
    if (y <= 3) return 64;
    // sum_{n>X} 16 g(x_n) <= 16 int_X^inf g, with g(x) <= sqrt(pi x / 2) e^-x (1 + 1/x)
    double lnb = std::log(2 * c * A / (M_PI * M_PI)) + 0.5 * std::log(M_PI / 2) - y +
                 std::log(std::pow(y, 1.5) + std::sqrt(y)) - std::log(1 - 1.5 / y);
    return lnb / std::log(2.0);
}

long lvalue_terms_needed(double A, double target_bits, double cutoff)
{
    long lo = 1, hi = 2;
    while (lvalue_tail_log2(A, hi, cutoff) > -target_bits) {
        lo = hi;
        hi *= 2;
        if (hi > (1L << 40)) throw lseries_error("truncation bound overflow");
    }
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        if (lvalue_tail_log2(A, mid, cutoff) > -target_bits)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

LValue lvalue_from_coefficients(std::vector<BigReal> const & lambda, BigReal const & sqrtN, prec_t prec,
                                LValueOptions const & opt)
{
    double target = opt.target_bits > 0 ? opt.target_bits : (double)prec - 16;
    double c = opt.cutoff;
    if (!(c > 1)) throw std::invalid_argument("cutoff must exceed 1");
    double A = sqrtN.to_double();
    long avail = (long)lambda.size() - 1;
    long needed = lvalue_terms_needed(A, target, c);
    long X = std::min(needed, avail);
    if (opt.max_terms > 0) X = std::min(X, opt.max_terms);
    double tail = lvalue_tail_log2(A, X, c);
    if (X < needed && !opt.allow_partial)
        throw coverage_error("L-value needs " + std::to_string(needed) + " coefficients, have " + std::to_string(X) +
                                 " (about " + std::to_string((int)-tail) + " bits reachable)",
                             -tail);
    prec_t wp = prec + 24;
    BigReal Aw(sqrtN, wp), fourpi = BigReal::pi(wp) * 4;
    BigReal cw(c, wp);
    std::vector<BigReal> ts = {Aw, Aw / cw, Aw * cw};   // A / t for t = 1, c, 1/c
    std::vector<BigReal> P(3, BigReal(0L, wp));
    for (long n = 1; n <= X; ++n) {
        if (lambda[n].is_zero()) continue;
        BigReal ln = BigReal(lambda[n], wp) / n;
        for (int k = 0; k < 3; ++k) {
            BigReal x = fourpi * sqrt(BigReal(n, wp) / ts[k]);
            P[k] += ln * x * bessel_k1(x, wp);
        }
    }
    BigReal S1p = P[0] * 2, Scp = P[1] + P[2], Scm = P[1] - P[2];
    LValue out;
    out.terms = X;
    out.tail_log2 = tail;
    out.conductor = sqrtN * sqrtN;
    out.mismatch_log2[0] = log2abs(S1p - Scp);
    out.mismatch_log2[1] = log2abs(Scm);
    double achieved = std::min(-tail, (double)prec - 8);
    double tol = -achieved + 8;
    bool okp = out.mismatch_log2[0] <= tol, okm = out.mismatch_log2[1] <= tol;
    if (okp && okm) {
        out.degenerate = true;
        out.root_number = 0;
        out.value = BigComplex(BigReal(S1p, prec));
        return out;
    }
    int eps = out.mismatch_log2[0] <= out.mismatch_log2[1] ? 1 : -1;
    double best = std::min(out.mismatch_log2[0], out.mismatch_log2[1]);
    if (best > -achieved / 2)
        throw lseries_error("functional equation not satisfied: log2 mismatch " + std::to_string(best) + " for both signs");
    out.root_number = eps;
    out.value = BigComplex(eps > 0 ? BigReal(S1p, prec) : BigReal(0L, prec));
    return out;
}

namespace {

void check_coprime(NewformRecord const & f, RayClassCharacter const & chi)
{
    long N = chi.conductor_norm;
    for (long p = 2; p <= N; ++p) {
        if (N % p) continue;
        while (N % p == 0) N /= p;
        for (auto const & P : prime_split(f.F, p))
            if (ideal_divides(P.gen, chi.conductor) && ideal_divides(P.gen, f.level_gen))
                throw lseries_error("character conductor is not coprime to the level at " + P.label());
    }
}

}

LValue lvalue_at_1(NewformRecord const & f, RayClassCharacter const & chi0, int embedding, prec_t prec,
                   LValueOptions const & opt)
{
    RayClassCharacter chi = chi0.primitive_version();
    check_coprime(f, chi);
    prec_t wp = prec + 24;
    long D = f.F->quad_disc();
    mpz_class N = mpz_class(f.level_norm) * D * D * chi.conductor_norm * chi.conductor_norm;
    BigReal sqrtN = sqrt(BigReal(N, wp));
    double target = opt.target_bits > 0 ? opt.target_bits : (double)prec - 16;
    long needed = lvalue_terms_needed(sqrtN.to_double(), target, opt.cutoff);
    long X = std::min(needed, f.bound);
    if (opt.max_terms > 0) X = std::min(X, opt.max_terms);
    if (X < needed && !opt.allow_partial) {
        double tail = lvalue_tail_log2(sqrtN.to_double(), X, opt.cutoff);
        throw coverage_error("L-value of " + f.label + " x " + chi.name() + " needs eigenvalues up to norm " +
                                 std::to_string(needed) + ", stored bound " + std::to_string(f.bound) + " (about " +
                                 std::to_string((int)-tail) + " bits reachable)",
                             -tail);
    }
    auto lam = dirichlet_coefficients(
        f, [&](PrimeIdeal const & P) { return chi.on_prime(P); }, X, embedding, wp);
    LValueOptions o = opt;
    o.allow_partial = true;
    o.target_bits = target;
    return lvalue_from_coefficients(lam, sqrtN, prec, o);
}

TwistSample twist_sample(NewformRecord const & f, RayClassCharacter const & chi0, prec_t prec, LValueOptions const & opt)
{
    TwistSample s;
    s.chi = chi0.primitive_version();
    int g = f.Kf->degree();
    s.lvalues.resize(g);
    parallel_for(g, [&](size_t j) { s.lvalues[j] = lvalue_at_1(f, s.chi, (int)j, prec, opt); });
    BigReal fac = BigReal::pi(prec) * BigReal::pi(prec) * 4 * sqrt(BigReal(f.F->quad_disc(), prec));
    BigComplex G = gauss_sum(s.chi, prec).value;
    for (int j = 0; j < g; ++j) s.values.push_back(-(G * fac) * s.lvalues[j].value);
    return s;
}

// ---- periods

void assemble_periods(PeriodSet & P, std::string const & sign, std::vector<TwistSample> const & samples,
                      PeriodOptions const & opt)
{
    if (!P.Kf) throw std::invalid_argument("PeriodSet without a Hecke field");
    prec_t prec = P.prec;
    int g = P.Kf->degree();
    double digits = prec * std::log10(2.0);
    double vanish = opt.vanishing_log10 != 0 ? opt.vanishing_log10 : -digits / 2;
    double resid = opt.residual_log10 != 0 ? opt.residual_log10 : -digits / 4;
    long dend = opt.den_bound_digits > 0 ? opt.den_bound_digits : std::max(1L, (long)(digits / 6));
    std::vector<TwistSample const *> use;
    bool any = false;
    for (auto const & s : samples) {
        if (s.chi.sign_string() != sign) continue;
        any = true;
        if ((int)s.values.size() != g) throw std::invalid_argument("sample has the wrong number of embeddings");
        double m = -1e300;
        for (auto const & v : s.values) m = std::max(m, log2abs(v) * std::log10(2.0));
        if (m < vanish) continue;
        bool zero = false;
        for (auto const & v : s.values)
            if (log2abs(v) * std::log10(2.0) < vanish) zero = true;
        if (zero) continue;
        use.push_back(&s);
    }
    if (!any) throw lseries_error("no characters of sign " + sign);
    if (use.empty()) throw lseries_error("all L-values of sign " + sign + " vanish");
    if ((int)use.size() < opt.min_characters)
        throw lseries_error("only " + std::to_string(use.size()) + " nonvanishing characters of sign " + sign);
    auto roots = P.Kf->real_roots(prec);
    CMatrix E(g, g, prec);
    for (int j = 0; j < g; ++j) {
        BigReal pw(1L, prec);
        for (int k = 0; k < g; ++k) {
            E(j, k) = BigComplex(pw);
            pw *= roots[j];
        }
    }
    CMatrix Ei = inverse(E);
    auto const & ref = *use[0];
    mpz_class den_bound = 1;
    mpz_ui_pow_ui(den_bound.get_mpz_t(), 10, dend);
    std::vector<std::vector<mpq_class>> beta;
    std::vector<TwistSample const *> kept;
    for (auto const * s : use) {
        std::vector<BigComplex> r(g, BigComplex(prec));
        for (int j = 0; j < g; ++j) r[j] = s->values[j] / ref.values[j];
        std::vector<mpq_class> b(g);
        bool ok = true;
        for (int k = 0; k < g && ok; ++k) {
            BigComplex x(prec);
            for (int j = 0; j < g; ++j) x += Ei(k, j) * r[j];
            if (log2abs(x.im) * std::log10(2.0) > resid + std::max(0.0, log2abs(x.re) * std::log10(2.0))) ok = false;
            // generic reals sit about 2^(-prec/3) from fractions below the bound; demand far less
            double tl = -0.6 * (double)prec + std::max(0.0, log2abs(x.re));
            auto q = recognize_rational(x.re, den_bound, tl);
            if (!q) ok = false;
            else b[k] = *q;
        }
        if (!ok) {
            P.disagreements.push_back(sign + ": " + s->chi.name() + " is not a K_f-multiple of " + ref.chi.name());
            continue;
        }
        beta.push_back(b);
        kept.push_back(s);
    }
    mpz_class D = 1, G = 0;
    for (auto const & b : beta)
        for (auto const & q : b) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), q.get_den().get_mpz_t());
    for (auto const & b : beta)
        for (auto const & q : b) {
            mpz_class v = q.get_num() * (D / q.get_den());
            mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), v.get_mpz_t());
        }
    if (G == 0) throw lseries_error("no consistent lattice for sign " + sign);
    mpq_class scale(D, G);
    scale.canonicalize();
    std::vector<BigComplex> omega(g, BigComplex(prec));
    BigReal sc(scale, prec);
    for (int j = 0; j < g; ++j) omega[j] = ref.values[j] / sc;
    std::vector<RecognizedAlpha> alphas;
    for (size_t i = 0; i < kept.size(); ++i) {
        RecognizedAlpha a;
        a.character = kept[i]->chi.name();
        double worst = -1e300;
        for (int k = 0; k < g; ++k) {
            BigComplex x(prec);
            for (int j = 0; j < g; ++j) x += Ei(k, j) * (kept[i]->values[j] / omega[j]);
            mpz_class rnd = x.re.round_to_mpz();
            a.coords.push_back(rnd);
            BigReal d = x.re - BigReal(rnd, prec);
            worst = std::max(worst, std::max(log2abs(d), log2abs(x.im)) * std::log10(2.0));
        }
        a.residual_log10 = std::max(worst, -digits);
        if (a.residual_log10 > resid)
            P.disagreements.push_back(sign + ": " + a.character + " rounding residual 1e" + std::to_string((int)a.residual_log10));
        alphas.push_back(std::move(a));
    }
    P.omega[sign] = omega;
    P.alpha[sign] = alphas;
}

PeriodSet recover_periods(NewformRecord const & f, std::string const & sign, std::vector<RayClassCharacter> const & chars,
                          prec_t prec, LValueOptions const & lopt, PeriodOptions const & popt)
{
    PeriodSet P;
    P.Kf = f.Kf;
    P.prec = prec;
    std::vector<RayClassCharacter> mine;
    for (auto const & c : chars)
        if (c.sign_string() == sign) mine.push_back(c);
    if (mine.empty()) throw lseries_error("no characters of sign " + sign);
    std::vector<TwistSample> samples(mine.size());
    for (size_t i = 0; i < mine.size(); ++i) samples[i] = twist_sample(f, mine[i], prec, lopt);
    assemble_periods(P, sign, samples, popt);
    return P;
}

ModuliPointReport moduli_point(PeriodSet const & P, std::string const & sign)
{
    auto it = P.omega.find(sign), ip = P.omega.find("++");
    if (it == P.omega.end()) throw lseries_error("no periods of sign " + sign);
    if (ip == P.omega.end()) throw lseries_error("no periods of sign ++");
    ModuliPointReport r;
    r.point.sign = sign;
    double digits = P.prec * std::log10(2.0);
    for (size_t j = 0; j < it->second.size(); ++j) {
        BigComplex const & den = ip->second[j];
        if (den.re.is_zero() && den.im.is_zero()) throw lseries_error("zero period in the denominator");
        BigComplex z = it->second[j] / den;
        bool flip = z.im.sign() < 0;
        if (flip) z = -z;
        r.flipped.push_back(flip);
        if ((log2abs(z.im) - log2abs(z)) * std::log10(2.0) < -digits / 2) r.interior = false;
        r.point.z.push_back(z);
    }
    return r;
}

double quadratic_relation_log10(PeriodSet const & P)
{
    for (auto const * s : {"++", "+-", "-+", "--"})
        if (!P.omega.count(s)) throw lseries_error(std::string("quadratic relation needs sign ") + s);
    auto const & a = P.omega.at("++");
    auto const & b = P.omega.at("--");
    auto const & c = P.omega.at("+-");
    auto const & d = P.omega.at("-+");
    double num = -1e300, den = -1e300;
    for (size_t j = 0; j < a.size(); ++j) {
        num = std::max(num, log2abs(a[j] * b[j] + c[j] * d[j]));
        den = std::max(den, log2abs(a[j] * b[j]));
    }
    return (num - den) * std::log10(2.0);
}

} // namespace g17
