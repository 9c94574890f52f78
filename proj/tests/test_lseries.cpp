#include "doctest.h"
#include "g17/lseries.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <set>

using namespace g17;

namespace {

// q-expansion of the weight 2 newform of level 11: eta(q)^2 eta(q^11)^2
std::vector<long> coefficients_11a(long N)
{
    std::vector<long> c(N + 1, 0);
    c[0] = 1;
    auto times = [&](long k) {
        for (long n = N; n >= k; --n) c[n] -= c[n - k];
    };
    for (long k = 1; k < N; ++k) {
        times(k);
        times(k);
        if (11 * k < N) {
            times(11 * k);
            times(11 * k);
        }
    }
    std::vector<long> a(N + 1, 0);
    for (long n = 1; n <= N; ++n) a[n] = c[n - 1];
    return a;
}

bool is_prime(long p)
{
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// base change of 11a to Q(sqrt 3): rational Hecke field
NewformRecord base_change_11a(long B)
{
    static std::map<long, NewformRecord> memo;
    if (memo.count(B)) return memo[B];
    auto a = coefficients_11a(B);
    NewformRecord r;
    r.label = "bc-11a";
    r.F = NumberField::real_quadratic(12);
    r.Kf = NumberField::make({0, 1});
    r.level_gen = r.F->from_int(11);
    r.level_norm = 121;
    r.bound = B;
    for (long p = 2; p <= B; ++p) {
        if (!is_prime(p)) continue;
        for (auto const & P : prime_split(r.F, p)) {
            if (P.norm > B) continue;
            long ap = P.kind == 'i' ? a[p] * a[p] - 2 * p : a[p];
            r.entries.push_back({P, r.Kf->from_int(ap), p == 11});
        }
    }
    r.sort_entries();
    return memo[B] = r;
}

// L(E x psi, 1) over Q for a quadratic Dirichlet character psi = (D/.), exponential kernel, both cutoffs
struct Degree2 {
    double value, other_cutoff;
};
Degree2 degree2_lvalue(long D, long conductor, prec_t prec)
{
    long N = 4000;
    auto a = coefficients_11a(N);
    BigReal A = sqrt(BigReal(conductor, prec)), twopi = BigReal::pi(prec) * 2;
    auto S = [&](BigReal const & t, int eps) {
        BigReal s(0L, prec);
        for (long n = 1; n <= N; ++n) {
            int k = D == 1 ? 1 : mpz_kronecker_si(mpz_class(D).get_mpz_t(), n);
            if (!a[n] || !k) continue;
            BigReal term = exp(-(twopi * n * t / A)) + BigReal(eps, prec) * exp(-(twopi * n / (t * A)));
            s += term * (a[n] * k) / n;
        }
        return s;
    };
    BigReal one(1L, prec), c(1.3, prec);
    // pick the sign for which the two cutoffs agree
    BigReal p1 = S(one, 1), pc = S(c, 1), m1 = S(one, -1), mc = S(c, -1);
    if (abs(p1 - pc) < abs(m1 - mc)) return {p1.to_double(), pc.to_double()};
    return {m1.to_double(), mc.to_double()};
}

// Z_F / c by brute force: representatives i + j omega, 0 <= i, j < Nm c
struct BruteResidues {
    FieldRef F;
    NFElem c;
    std::vector<NFElem> reps;
    long find(NFElem const & x) const
    {
        for (size_t i = 0; i < reps.size(); ++i)
            if (((x - reps[i]) / c).is_integral_coeffs()) return (long)i;
        return -1;
    }
};
BruteResidues brute_residues(FieldRef const & F, NFElem const & c)
{
    BruteResidues R{F, c, {}};
    long N = std::labs(c.norm().get_num().get_si());
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j) {
            NFElem x = F->from_coeffs({i, j});
            if (R.find(x) < 0) R.reps.push_back(x);
        }
    return R;
}

// |Hom(G, +-1)| for G = (Z_F/c)^x x {+-1}^2 modulo the image of the global units
long brute_quadratic_count(FieldRef const & F, NFElem const & c)
{
    auto R = brute_residues(F, c);
    long n = (long)R.reps.size();
    REQUIRE(n == std::labs(c.norm().get_num().get_si()));
    std::vector<long> units;
    long one = R.find(F->one());
    for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y)
            if (R.find(R.reps[x] * R.reps[y]) == one) {
                units.push_back(x);
                break;
            }
    // elements of G as (residue, s0, s1) with s in {0, 1}
    auto enc = [&](long x, int s0, int s1) { return x * 4 + s0 * 2 + s1; };
    auto mulg = [&](long a, long b) {
        long x = R.find(R.reps[a / 4] * R.reps[b / 4]);
        return enc(x, ((a >> 1) ^ (b >> 1)) & 1, (a ^ b) & 1);
    };
    std::set<long> H;
    for (long x : units)
        for (int s0 : {0, 1})
            for (int s1 : {0, 1}) H.insert(mulg(enc(x, s0, s1), enc(x, s0, s1)));
    for (NFElem const & u : {F->from_int(-1), fundamental_unit(F)}) {
        auto s = signs(u);
        H.insert(enc(R.find(u), s[0] < 0, s[1] < 0));
    }
    // closure
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<long> cur(H.begin(), H.end());
        for (long a : cur)
            for (long b : cur)
                if (H.insert(mulg(a, b)).second) grew = true;
    }
    return (long)(units.size() * 4 / H.size());
}

NFElem random_integral(FieldRef const & F, std::mt19937 & rng, int h = 40)
{
    return F->from_coeffs({(long)(rng() % (2 * h + 1)) - h, (long)(rng() % (2 * h + 1)) - h});
}

} // namespace

TEST_CASE("quadratic characters of Q(sqrt 3) with trivial modulus")
{
    auto F = NumberField::real_quadratic(12);
    auto all = enumerate_quadratic_characters(F, F->one());
    REQUIRE(all.size() == 2);
    CHECK(all[0].trivial());
    CHECK(!all[1].trivial());
    CHECK(all[1].sign_string() == "--");
    auto pp = enumerate_quadratic_characters(F, F->one(), std::array<int, 2>{1, 1});
    REQUIRE(pp.size() == 1);
    CHECK(pp[0].trivial());
    // the narrow class character is the sign of the norm
    std::mt19937 rng(3);
    for (int t = 0; t < 200; ++t) {
        NFElem x = random_integral(F, rng);
        if (x.is_zero()) continue;
        CHECK(all[1](x) == (x.norm() > 0 ? 1 : -1));
    }
}

TEST_CASE("character counts against the ray class group")
{
    for (long D : {12L, 5L}) {
        auto F = NumberField::real_quadratic(D);
        for (auto const & I : ideals_of_norm_upto(F, 25)) {
            auto chars = enumerate_quadratic_characters(F, I.gen);
            CHECK_MESSAGE((long)chars.size() == brute_quadratic_count(F, I.gen), "D=" << D << " modulus " << I.gen.str());
        }
    }
}

TEST_CASE("character properties")
{
    std::mt19937 rng(5);
    for (long D : {12L, 5L}) {
        auto F = NumberField::real_quadratic(D);
        NFElem eps = fundamental_unit(F);
        for (auto const & I : ideals_of_norm_upto(F, 25)) {
            for (auto const & ch : enumerate_quadratic_characters(F, I.gen)) {
                CHECK(ch(F->from_int(-1)) == 1);
                CHECK(ch(eps) == 1);
                for (auto const & [k, v] : ch.chi0) CHECK((v == 1 || v == -1));
                for (int t = 0; t < 20; ++t) {
                    NFElem x = random_integral(F, rng), y = random_integral(F, rng);
                    CHECK(ch(x * y) == ch(x) * ch(y));
                }
                // conductor divides the modulus, and the primitive version agrees away from it
                CHECK(((ch.modulus / ch.conductor).is_integral_coeffs()));
                auto pv = ch.primitive_version();
                CHECK(pv.primitive());
                CHECK(pv.sign == ch.sign);
                for (int t = 0; t < 20; ++t) {
                    NFElem x = random_integral(F, rng);
                    if (ch(x) != 0) CHECK(pv(x) == ch(x));
                }
            }
        }
    }
}

TEST_CASE("Gauss sums")
{
    auto F = NumberField::real_quadratic(12);
    prec_t p = 160;
    auto triv = enumerate_quadratic_characters(F, F->one())[0];
    auto G1 = gauss_sum(triv, p);
    CHECK(abs(G1.value - BigComplex(1L, p)).to_double() < 1e-40);
    auto chars = primitive_characters_upto(F, 25);
    REQUIRE(chars.size() > 4);
    for (auto const & ch : chars) {
        auto G = gauss_sum(ch, p);
        BigReal n2 = G.value.norm2() - BigReal(ch.conductor_norm, p);
        CHECK(std::fabs(n2.to_double()) < std::ldexp(1.0, 8 - (int)p) * ch.conductor_norm);
        // direct summation in double precision over independently enumerated residues
        auto R = brute_residues(F, ch.conductor);
        std::complex<double> s = 0;
        NFElem gi = G.gamma.inv();
        for (auto const & x : R.reps) {
            int v = ch.finite_part(x);
            if (!v) continue;
            double t = (x * gi).trace().get_d();
            s += (double)v * std::exp(std::complex<double>(0, 2 * M_PI * t));
        }
        CHECK(std::abs(s - std::complex<double>(G.value.re.to_double(), G.value.im.to_double())) < 1e-9);
        // a quadratic Gauss sum is real or purely imaginary
        CHECK(std::min(std::fabs(G.value.re.to_double()), std::fabs(G.value.im.to_double())) < 1e-30);
    }
    auto imp = enumerate_quadratic_characters(F, F->from_int(5));
    for (auto const & ch : imp)
        if (!ch.primitive()) CHECK_THROWS_AS(gauss_sum(ch, p), lseries_error);
}

TEST_CASE("L-values of a base change against degree 2 sums")
{
    prec_t p = 128;
    auto f = base_change_11a(9000);
    auto chars = enumerate_quadratic_characters(f.F, f.F->one());
    auto L = lvalue_at_1(f, chars[0], 0, p);
    auto e1 = degree2_lvalue(1, 11, p), e12 = degree2_lvalue(12, 11 * 144, p);
    CHECK(std::fabs(e1.value - e1.other_cutoff) < 1e-14);
    CHECK(std::fabs(e1.value - 0.25384186085591068) < 1e-14);
    CHECK(L.root_number == 1);
    CHECK(!L.degenerate);
    CHECK(std::fabs(L.value.re.to_double() - e1.value * e12.value) < 1e-13);
    CHECK(L.value.im.is_zero());
    CHECK(L.mismatch_log2[0] < -100);
    // narrow class twist: the two imaginary quadratic twists over Q
    auto Ln = lvalue_at_1(f, chars[1], 0, p);
    auto e4 = degree2_lvalue(-4, 11 * 16, p), e3 = degree2_lvalue(-3, 11 * 9, p);
    CHECK(Ln.root_number == 1);
    CHECK(std::fabs(Ln.value.re.to_double() - e4.value * e3.value) < 1e-13);
    // the reported tail bound covers truncation
    BigReal sqrtN = sqrt(BigReal(121L * 144, p + 24));
    auto lam = dirichlet_coefficients(f, [](PrimeIdeal const &) { return 1; }, 9000, 0, p + 24);
    for (long X : {1500L, 2500L, 4000L}) {
        LValueOptions o;
        o.allow_partial = true;
        o.max_terms = X;
        o.target_bits = 400;
        auto Lx = lvalue_from_coefficients(lam, sqrtN, p, o);
        CHECK(Lx.terms == X);
        double err = std::fabs((Lx.value.re - L.value.re).to_double());
        CHECK(err <= std::ldexp(1.0, (int)std::ceil(Lx.tail_log2)));
    }
    // another smoothing cutoff gives the same value
    LValueOptions o2;
    o2.cutoff = 1.5;
    o2.target_bits = 100;
    auto L2 = lvalue_from_coefficients(lam, sqrtN, p, o2);
    CHECK(std::fabs((L2.value.re - L.value.re).to_double()) < 1e-30);
}

TEST_CASE("L-value errors and cross-validation")
{
    prec_t p = 96;
    auto f = base_change_11a(9000);
    auto F = f.F;
    // coverage
    auto small = base_change_11a(500);
    try {
        lvalue_at_1(small, enumerate_quadratic_characters(F, F->one())[0], 0, p);
        FAIL("no error");
    } catch (coverage_error const & e) {
        CHECK(e.achievable_bits > 5);
        CHECK(e.achievable_bits < 96);
    }
    // a wrong level norm breaks the functional equation
    auto bad = f;
    bad.level_norm = 242;
    CHECK_THROWS_AS(lvalue_at_1(bad, enumerate_quadratic_characters(F, F->one())[0], 0, p), lseries_error);
    // moduli sharing a prime with the level are rejected
    auto P11 = prime_split(F, 11)[0];
    for (auto const & ch : enumerate_quadratic_characters(F, P11.gen))
        if (ch.conductor_norm == 11) CHECK_THROWS_AS(lvalue_at_1(f, ch, 0, p), lseries_error);
    // conductor 12 twist: doubling the truncation agrees with the reported precision; real coefficients give a real value
    auto chars = primitive_characters_upto(F, 12, std::array<int, 2>{1, -1});
    REQUIRE(!chars.empty());
    auto big = base_change_11a(60000);
    LValueOptions o;
    o.target_bits = 40;
    auto La = lvalue_at_1(big, chars[0], 0, p, o);
    o.target_bits = 80;
    auto Lb = lvalue_at_1(big, chars[0], 0, p, o);
    CHECK(Lb.terms > La.terms);
    CHECK(std::fabs((La.value.re - Lb.value.re).to_double()) < std::ldexp(1.0, (int)std::ceil(La.tail_log2) + 1));
    CHECK(La.value.im.is_zero());
    CHECK(Lb.root_number == 1);
}

TEST_CASE("period recovery on the base change")
{
    prec_t p = 64;
    auto f = base_change_11a(60000);
    auto chars = primitive_characters_upto(f.F, 25, std::nullopt, &f.level_gen);
    PeriodOptions po;
    auto P = recover_periods(f, "+-", chars, p, {}, po);
    REQUIRE(P.omega.count("+-"));
    CHECK(P.disagreements.empty());
    REQUIRE(P.alpha["+-"].size() >= 3);
    for (auto const & a : P.alpha["+-"]) {
        CHECK(a.residual_log10 < -p * std::log10(2.0) / 4);
        CHECK(a.coords.size() == 1);
    }
    // the period is purely imaginary here
    auto const & om = P.omega["+-"][0];
    CHECK(std::fabs(om.re.to_double()) < 1e-12 * std::fabs(om.im.to_double()));
    // one ++ twist vanishes (conductor 16); the remaining two fix Omega++
    po.min_characters = 2;
    auto Pp = recover_periods(f, "++", chars, p, {}, po);
    P.omega["++"] = Pp.omega["++"];
    CHECK(Pp.alpha["++"].size() == 2);
    auto z = moduli_point(P, "+-");
    CHECK(z.interior);
    CHECK(z.point.z[0].im.sign() > 0);
    CHECK(std::fabs(z.point.z[0].re.to_double()) < 1e-12);
    CHECK_THROWS_WITH_AS(recover_periods(f, "+-", primitive_characters_upto(f.F, 1), p), "no characters of sign +-",
                         lseries_error);
}

TEST_CASE("Cremona's trick on synthetic samples")
{
    prec_t p = 256;
    auto K = NumberField::hecke_field();
    auto F = NumberField::real_quadratic(12);
    std::mt19937 rng(11);
    auto pool = primitive_characters_upto(F, 25);
    std::vector<RayClassCharacter> chars;
    for (auto const & c : pool)
        if (chars.size() < 5) {
            chars.push_back(c);
            chars.back().sign = {1, -1};
        }
    REQUIRE(chars.size() == 5);
    std::vector<BigComplex> omega = {BigComplex(0.0, 1.7, p), BigComplex(0.0, -0.31, p), BigComplex(0.0, 4.2, p),
                                     BigComplex(0.0, 0.093, p)};
    std::vector<NFElem> alpha;
    for (int i = 0; i < 5; ++i)
        alpha.push_back(K->from_coeffs({(long)(rng() % 21) - 10, (long)(rng() % 21) - 10, (long)(rng() % 7) - 3,
                                        (long)(rng() % 7) - 3}));
    auto make = [&](std::vector<NFElem> const & al, std::vector<BigComplex> const & om) {
        std::vector<TwistSample> s(5);
        for (int i = 0; i < 5; ++i) {
            s[i].chi = chars[i];
            auto e = al[i].embeddings(p);
            for (int j = 0; j < 4; ++j) s[i].values.push_back(om[j] * e[j]);
        }
        return s;
    };
    PeriodSet P;
    P.Kf = K;
    P.prec = p;
    assemble_periods(P, "+-", make(alpha, omega));
    CHECK(P.disagreements.empty());
    auto const & rec = P.alpha["+-"];
    REQUIRE(rec.size() == 5);
    auto elem = [&](RecognizedAlpha const & a) {
        std::vector<mpq_class> c(a.coords.begin(), a.coords.end());
        return K->from_coeffs(c);
    };
    for (int i = 0; i < 5; ++i) {
        CHECK(elem(rec[i]) / elem(rec[0]) == alpha[i] / alpha[0]);
        CHECK(rec[i].residual_log10 < -p * std::log10(2.0) / 4);
    }
    // coordinates are jointly coprime
    mpz_class g = 0;
    for (auto const & a : rec)
        for (auto const & c : a.coords) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    CHECK(g == 1);
    // scaling every sample by beta scales Omega by beta and leaves the alphas alone
    NFElem beta = K->from_coeffs({3, 1, 0, -1});
    auto scaled = alpha;
    for (auto & a : scaled) a = a * beta;
    PeriodSet Q;
    Q.Kf = K;
    Q.prec = p;
    assemble_periods(Q, "+-", make(scaled, omega));
    CHECK(Q.disagreements.empty());
    for (int i = 0; i < 5; ++i) CHECK(Q.alpha["+-"][i].coords == rec[i].coords);
    auto be = beta.embeddings(p);
    for (int j = 0; j < 4; ++j)
        CHECK(abs(Q.omega["+-"][j] - P.omega["+-"][j] * be[j]).to_double() < 1e-60 * abs(P.omega["+-"][j]).to_double());
    // a sample off the lattice is flagged
    auto bad = make(alpha, omega);
    bad[3].values[2] = bad[3].values[2] * BigReal(1.0001, p);
    PeriodSet B;
    B.Kf = K;
    B.prec = p;
    assemble_periods(B, "+-", bad);
    CHECK(B.disagreements.size() == 1);
    // wrong sign, vanishing values, too few characters
    PeriodSet E;
    E.Kf = K;
    E.prec = p;
    CHECK_THROWS_WITH_AS(assemble_periods(E, "++", make(alpha, omega)), "no characters of sign ++", lseries_error);
    auto zero = make(alpha, omega);
    for (auto & s : zero)
        for (auto & v : s.values) v = BigComplex(p);
    CHECK_THROWS_AS(assemble_periods(E, "+-", zero), lseries_error);
    auto two = make(alpha, omega);
    two.resize(2);
    CHECK_THROWS_AS(assemble_periods(E, "+-", two), lseries_error);
}

TEST_CASE("moduli points and the quadratic period relation")
{
    prec_t p = 200;
    auto K = NumberField::hecke_field();
    PeriodSet P;
    P.Kf = K;
    P.prec = p;
    std::vector<BigComplex> zt = {BigComplex(0.0, 2.7829, p), BigComplex(0.0, 0.75416, p), BigComplex(0.0, 1.4277, p),
                                  BigComplex(0.0, 5.0448, p)};
    std::vector<BigComplex> opp = {BigComplex(1.3, 0.0, p), BigComplex(-0.7, 0.0, p), BigComplex(2.1, 0.0, p),
                                   BigComplex(0.45, 0.0, p)};
    P.omega["++"] = opp;
    std::vector<BigComplex> opm, omp, omm;
    for (int j = 0; j < 4; ++j) {
        BigComplex w = opp[j] * zt[j];
        opm.push_back(j == 1 ? -w : w);   // one component lands in the lower half plane
        BigComplex v = opp[j] * BigComplex(0.0, 0.5 + j, p);
        omp.push_back(v);
        // O++ O-- = -O+- O-+
        omm.push_back(-(opm[j] * omp[j]) / opp[j]);
    }
    P.omega["+-"] = opm;
    P.omega["-+"] = omp;
    P.omega["--"] = omm;
    auto z = moduli_point(P, "+-");
    CHECK(z.interior);
    CHECK(z.flipped == std::vector<bool>{false, true, false, false});
    for (int j = 0; j < 4; ++j) CHECK(abs(z.point.z[j] - zt[j]).to_double() < 1e-55);
    CHECK(quadratic_relation_log10(P) < -55);
    // the same totally positive scaling on both signs leaves z unchanged
    NFElem beta = K->from_coeffs({2, 0, 1, 0});
    auto be = beta.embeddings(p);
    for (int j = 0; j < 4; ++j) REQUIRE(be[j].sign() > 0);
    PeriodSet S = P;
    for (auto & [s, v] : S.omega)
        for (int j = 0; j < 4; ++j) v[j] = v[j] * be[j];
    auto zs = moduli_point(S, "+-");
    for (int j = 0; j < 4; ++j) CHECK(abs(zs.point.z[j] - z.point.z[j]).to_double() < 1e-55);
    // Omega^s = Omega^+ is not an interior point
    PeriodSet T = P;
    T.omega["+-"] = T.omega["++"];
    CHECK(!moduli_point(T, "+-").interior);
    // a broken relation is visible
    P.omega["--"][2] = P.omega["--"][2] * BigReal(1.01, p);
    CHECK(quadratic_relation_log10(P) > -3);
    PeriodSet Z = P;
    Z.omega["++"][0] = BigComplex(p);
    CHECK_THROWS_AS(moduli_point(Z, "+-"), lseries_error);
}
