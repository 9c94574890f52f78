// one PASS/FAIL line per acceptance criterion; details on stderr
#include "g17/abvar.hpp"
#include "g17/ffgroup.hpp"
#include "g17/galverify.hpp"
#include "g17/hmfdata.hpp"
#include "g17/lseries.hpp"
#include "g17/pipeline.hpp"
#include "g17/polymodp.hpp"
#include "g17/theta.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

using namespace g17;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fixture_dir;
bool verbose = false;

void log(std::string const & s)
{
    if (verbose) std::cerr << "  " << s << std::endl;
}

std::string fmt(double x, int prec = 3)
{
    std::ostringstream o;
    o.precision(prec);
    o << x;
    return o.str();
}

std::optional<NewformRecord> fixture(std::string const & label, std::string & why)
{
    auto path = std::filesystem::path(fixture_dir) / (label + ".jsonl");
    if (std::filesystem::exists(path)) return load_newform(path.string());
    // an LMFDB cache populated by `g17 fetch` also counts
    try {
        auto cfg = default_fetch_config();
        cfg.offline = true;
        return lmfdb_fetch(label, cfg);
    } catch (std::exception const &) {
    }
    why = "no eigenvalue data for " + label + " (looked in " + path.string() + " and the LMFDB cache)";
    return std::nullopt;
}

// ---- 1
Outcome group_suite()
{
    auto G = build_17T7();
    auto D = G.derived_subgroup();
    bool ok = G.order() == 8160 && G.degree() == 17 && G.is_transitive() && G.stabilizer_order(0) == 480 &&
              G.order() == 2 * D.order() && D.is_normal_subgroup_of(G) && D.is_simple();
    return {ok, "order " + std::to_string(G.order()) + ", stabilizer " + std::to_string(G.stabilizer_order(0)) +
                    ", derived order " + std::to_string(D.order()) + (D.is_simple() ? " simple" : " not simple")};
}

// ---- 2
Outcome trace_suite()
{
    bool ok = trace_lemma_bruteforce(4);
    std::string d = std::string("q=4 brute force ") + (ok ? "holds" : "fails");
    for (unsigned q : {2u, 3u, 5u}) {
        bool refused = false;
        try {
            std::set<unsigned> all;
            for (unsigned i = 0; i < q; ++i) all.insert(i);
            trace_lemma_check(all, q);
        } catch (unsupported_field const &) {
            refused = true;
        }
        // the refusal is justified by a proper subgroup with every trace
        auto c = sl2_subgroup_census(q);
        bool counterexample = c.full_trace >= 2 && !c.only_whole_group;
        ok = ok && refused && counterexample;
        d += "; q=" + std::to_string(q) + (refused ? " refused" : " accepted") + ", " + std::to_string(c.full_trace - 1) +
             " proper full-trace subgroups";
    }
    return {ok, d};
}

// ---- 3
Outcome descent_suite()
{
    std::string why;
    bool ok = true;
    std::string d;
    for (std::string label : {"2.2.12.1-578.1-c", "2.2.12.1-578.1-d"}) {
        auto f = fixture(label, why);
        if (!f) return {false, why};
        auto m = descent_check_mod2(*f);
        auto t = trace_surjectivity(*f);
        auto e = exact_descent_check(*f);
        ok = ok && m.pass && t.surjective && e.holds;
        d += label + (m.pass && t.surjective && e.holds ? " PASS; " : " FAIL; ");
    }
    auto f = fixture("2.2.77.1-99.1-j", why);
    if (!f) return {false, why};
    auto m = descent_check_mod2(*f);
    auto e = exact_descent_check(*f);
    ok = ok && m.pass && !e.holds;
    d += std::string("99.1-j mod 2 ") + (m.pass ? "pass" : "fail") + ", exact " + (e.holds ? "holds" : "fails");
    return {ok, d};
}

// ---- 4, 5
struct PeriodRun {
    bool ran = false;
    std::string why;
    PeriodSet P;
};

PeriodRun period_run()
{
    PeriodRun R;
    auto f = fixture("2.2.12.1-578.1-c", R.why);
    if (!f) return R;
    if (f->bound < 80000) {
        R.why = "fixture covers norms <= " + std::to_string(f->bound) + ", need 80000";
        return R;
    }
    prec_t prec = bits_for_digits(100);
    R.P.Kf = f->Kf;
    R.P.prec = prec;
    try {
        for (std::string s : {"++", "+-", "-+", "--"}) {
            std::array<int, 2> sg{s[0] == '+' ? 1 : -1, s[1] == '+' ? 1 : -1};
            auto chars = primitive_characters_upto(f->F, 25, sg, &f->level_gen);
            std::vector<TwistSample> samples;
            for (auto const & c : chars) {
                log("sign " + s + " " + c.name());
                samples.push_back(twist_sample(*f, c, prec, {}));
            }
            assemble_periods(R.P, s, samples, {});
        }
        R.ran = true;
    } catch (std::exception const & e) {
        R.why = e.what();
    }
    return R;
}

Outcome moduli_reproduction(PeriodRun const & R)
{
    if (!R.ran) return {false, R.why};
    double printed[4] = {2.7829, 0.75416, 1.4277, 5.0448};
    auto zpm = moduli_point(R.P, "+-").point.z;
    auto zmp = moduli_point(R.P, "-+").point.z;
    // embeddings are labeled by our root ordering; find the relabeling matching the printed values
    std::vector<int> perm = {0, 1, 2, 3}, best;
    double best_err = 1e300;
    do {
        double e = 0;
        for (int k = 0; k < 4; ++k) {
            double re = zpm[perm[k]].re.to_double(), im = zpm[perm[k]].im.to_double();
            e = std::max(e, std::hypot(re, im - printed[k]) / printed[k]);
        }
        if (e < best_err) best_err = e, best = perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    int swap12_34[4] = {1, 0, 3, 2};
    double perr = 0;
    for (int k = 0; k < 4; ++k) {
        auto a = zmp[best[k]], b = zpm[best[swap12_34[k]]];
        perr = std::max(perr, ((a - b).abs() / b.abs()).to_double());
    }
    return {best_err < 1e-3 && perr < 1e-3, "max rel error vs printed " + fmt(best_err) + ", z-+ vs permuted z+- " + fmt(perr)};
}

Outcome period_relation(PeriodRun const & R)
{
    if (!R.ran) return {false, R.why};
    double l = quadratic_relation_log10(R.P);
    return {l < -20, "relative residual 1e" + fmt(l, 4)};
}

// ---- 6
Outcome theta_suite()
{
    bool ok = true;
    std::string d;
    prec_t p = 256;
    {
        CMatrix Z(1, 1, p);
        Z(0, 0) = BigComplex(0.0, 1.0, p);
        auto th = theta_constants(Z, p);
        BigReal pi = BigReal::pi(p), s(1L, p);
        for (long n = 1; n < 40; ++n) s += exp(-(pi * BigReal(n * n, p))) * 2;
        // and the closed form pi^(1/4) / Gamma(3/4)
        BigReal g34(p), q(p);
        mpfr_set_d(q.get(), 0.75, MPFR_RNDN);
        mpfr_gamma(g34.get(), q.get(), MPFR_RNDN);
        BigReal cf = sqrt(sqrt(pi)) / g34;
        double e = std::max({abs(th(0, 0).re - s).to_double(), abs(th(0, 0).re - cf).to_double(),
                             abs(th(0, 0).im).to_double()});
        ok = ok && e < 1e-50;
        d += "g=1 theta error " + fmt(e);
    }
    std::mt19937_64 rng(20260);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    auto random_siegel = [&](int g, double ymin) {
        std::vector<double> A(g * g);
        for (auto & a : A) a = U(rng) * 0.8;
        CMatrix Z(g, g, p);
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                double y = i == j ? ymin : 0.0;
                for (int k = 0; k < g; ++k) y += A[i * g + k] * A[j * g + k];
                Z(i, j) = BigComplex(U(rng), y, p);
                Z(j, i) = Z(i, j);
            }
        return Z;
    };
    double odd_max = 0;
    for (int g = 1; g <= 4; ++g) {
        auto th = theta_constants(random_siegel(g, 0.7), p);
        for (unsigned a = 0; a < (1u << g); ++a)
            for (unsigned b = 0; b < (1u << g); ++b)
                if (!ThetaChar{a, b}.even()) odd_max = std::max(odd_max, th(a, b).abs().to_double());
    }
    ok = ok && odd_max < 1e-50;
    d += "; odd max " + fmt(odd_max);
    double worst = 0;
    for (int t = 0; t < 5; ++t) {
        CMatrix Z = reduce_period_matrix(random_siegel(4, 0.8)).Z;
        CMatrix Wr = reduce_period_matrix(inverse(Z) * BigComplex(-1L, p)).Z;
        BigComplex rhs = pow(det(Z), 4) * eisenstein_E4(Z, p);
        worst = std::max(worst, ((eisenstein_E4(Wr, p) - rhs).abs() / rhs.abs()).to_double());
    }
    ok = ok && worst < 1e-30;
    d += "; E4 weight-4 residual " + fmt(worst);
    return {ok, d};
}

// ---- 7, 8, 9
struct IsogenyRun {
    bool ran = false;
    std::string why;
    ModuliPointFile m;
    PipelineResult R;   // selection and recognition; TD when ran
    double seconds = 0;
};

IsogenyRun isogeny_run()
{
    IsogenyRun I;
    auto t0 = std::chrono::steady_clock::now();
    try {
        I.m = load_moduli_point_file(default_moduli_point_path());
        PipelineOptions o;
        o.verbose = verbose;
        o.refine = false;
        I.R = run_isogeny_pipeline(I.m.K, I.m.d, I.m.z_re, I.m.z_im, o);
        // kept separately so a Newton failure still leaves the selection and recognition results
        o.refine = true;
        o.order = I.R.order;
        I.R = run_isogeny_pipeline(I.m.K, I.m.d, I.m.z_re, I.m.z_im, o);
        I.ran = true;
    } catch (std::exception const & e) {
        I.why = e.what();
    }
    I.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return I;
}

Outcome schottky_filter(IsogenyRun const & I)
{
    if (I.R.selection.log10_values.empty()) return {false, I.why};
    auto const & v = I.R.selection.log10_values;
    int below = 0, above = 0;
    for (double x : v) {
        below += x < -30;
        above += x > -6;
    }
    bool ok = v.size() == 17 && below == 1 && above == 16;
    return {ok, "neighbor " + std::to_string(I.R.selection.index) + " at 1e" + fmt(v[I.R.selection.index], 4) +
                    ", runner-up 1e" + fmt(I.R.selection.runner_up, 4) + ", " + std::to_string(above) +
                    " neighbors above 1e-6"};
}

Outcome isogeny_polynomial_check(IsogenyRun const & I)
{
    if (I.R.T.coeffs.empty()) return {false, I.why};
    bool ok = true;
    double worst = 0;
    for (int i = 0; i < 3 && i < (int)I.m.T_leading_approx.size(); ++i) {
        double c = I.R.T.coeffs[i + 1].re.to_double(), r = I.m.T_leading_approx[i];
        worst = std::max(worst, std::fabs(c - r) / std::fabs(r));
    }
    ok = ok && I.m.T_leading_approx.size() == 3 && worst < 1e-6;
    std::string d = "x^16..x^14 rel error " + fmt(worst) + "; D = " + I.R.D.get_str();
    ok = ok && I.R.D == 267075169;
    bool a12 = I.R.prefix.a.size() >= 2 && I.R.prefix.a[0] == mpz_class("-155176125916688") &&
               I.R.prefix.a[1] == mpz_class("-3903775123456327337126372744");
    ok = ok && a12;
    d += std::string("; a1, a2 ") + (a12 ? "match" : "differ");
    if (!I.ran) return {false, d + "; " + I.why};
    ok = ok && I.R.TD.size() == 18 && I.R.max_residual_log10 < -20 && I.R.constant_digits == 204;
    std::string c0 = I.R.TD.back().get_str();
    bool ends = c0.rfind(I.m.TD_constant_prefix, 0) == 0 && c0.size() >= I.m.TD_constant_suffix.size() &&
                c0.compare(c0.size() - I.m.TD_constant_suffix.size(), std::string::npos, I.m.TD_constant_suffix) == 0;
    ok = ok && ends;
    d += "; integral residual 1e" + fmt(I.R.max_residual_log10, 4) + ", constant " +
         std::to_string(I.R.constant_digits) + " digits" + (ends ? "" : " (printed digits differ)") +
         "; pipeline " + fmt(I.seconds, 4) + " s";
    return {ok, d};
}

Outcome field_identity(IsogenyRun const & I)
{
    if (!I.ran) return {false, "no recognized polynomial: " + I.why};
    ZPoly td(I.R.TD.rbegin(), I.R.TD.rend());
    int below3000 = 0;
    for (long p = 2; p < 3000; ++p) below3000 += is_prime_u64(p);
    auto cmp = fields_likely_equal(td, fx17_polynomial(), below3000);
    auto G = build_17T7();
    auto rep = census_consistent(cycle_census(td, below3000), G, 100);
    auto cov = census_consistent(cycle_census(td, 500), G, 100);
    bool ok = cmp.equal_patterns && rep.membership && cov.coverage >= 0.9;
    return {ok, std::to_string(cmp.compared) + " primes compared" +
                    (cmp.equal_patterns ? "" : ", first difference at " + std::to_string(cmp.first_difference)) +
                    "; " + std::to_string(rep.violations.size()) + " non-17T7 patterns; coverage " +
                    fmt(cov.coverage) + " by 500 primes"};
}

// ---- 10
ZMatrix random_unimodular(int n, std::mt19937 & rng)
{
    ZMatrix V = ZMatrix::identity(n);
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3);
    for (int s = 0; s < 60; ++s) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        int c = coef(rng);
        for (int r = 0; r < n; ++r) V(r, j) += c * V(r, i);
        if (rng() % 5 == 0)
            for (int r = 0; r < n; ++r) std::swap(V(r, i), V(r, j));
    }
    return V;
}

long kernel_fixing_left(BipartiteGraph const & G)
{
    std::set<std::pair<int, int>> E(G.edges.begin(), G.edges.end());
    std::vector<int> s(G.right);
    std::iota(s.begin(), s.end(), 0);
    long n = 0;
    do {
        bool ok = true;
        for (auto [a, b] : G.edges)
            if (!E.count({a, s[b]})) { ok = false; break; }
        n += ok;
    } while (std::next_permutation(s.begin(), s.end()));
    return n;
}

Outcome oracle_equivalences()
{
    std::mt19937 rng(808);
    int sym_bad = 0;
    ZMatrix J = standard_J(4);
    for (int t = 0; t < 100; ++t) {
        ZMatrix V = random_unimodular(8, rng);
        ZMatrix M = V.transpose() * J * V;
        ZMatrix U = symplectic_basis(M);
        sym_bad += !(U.transpose() * M * U == J && abs(det(U)) == 1);
    }
    int bip_bad = 0;
    for (int t = 0; t < 200; ++t) {
        BipartiteGraph G{1 + (int)(rng() % 8), 1 + (int)(rng() % 8), {}};
        unsigned dens = 200 + rng() % 600;
        for (int a = 0; a < G.left; ++a)
            for (int b = 0; b < G.right; ++b)
                if (rng() % 1000 < dens) G.edges.push_back({a, b});
        BipartiteGraph T{G.right, G.left, {}};
        for (auto [a, b] : G.edges) T.edges.push_back({b, a});
        auto v = bipartite_projection_injective(G);
        bip_bad += v.left_injective != (kernel_fixing_left(G) == 1);
        bip_bad += v.right_injective != (kernel_fixing_left(T) == 1);
    }
    // Phi_n: every factor mod p has degree ord_n(p)
    int deg_bad = 0;
    for (int n : {5, 17}) {
        ZPoly phi(n, 1);
        int seen = 0;
        for (long p = 2; seen < 50; ++p) {
            if (!is_prime_u64(p) || p == n) continue;
            ++seen;
            int o = 1;
            for (long t = p % n; t != 1; t = t * p % n) ++o;
            auto pat = degree_pattern_mod_p(phi, p);
            deg_bad += !pat || *pat != Partition((n - 1) / o, o);
        }
    }
    bool ok = sym_bad == 0 && bip_bad == 0 && deg_bad == 0;
    return {ok, "symplectic mismatches " + std::to_string(sym_bad) + "/100, bipartite " + std::to_string(bip_bad) +
                    "/400, degree patterns " + std::to_string(deg_bad) + "/100"};
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"acceptance checks"};
    std::vector<int> only;
    fixture_dir = std::string(G17_DATA_DIR) + "/fixtures";
    if (char const * e = std::getenv("G17_DATA_DIR")) fixture_dir = std::string(e) + "/fixtures";
    app.add_option("--only", only, "run only these criteria");
    app.add_option("--fixtures", fixture_dir, "directory of <label>.jsonl eigenvalue files");
    app.add_flag("-v,--verbose", verbose, "progress on stderr");
    CLI11_PARSE(app, argc, argv);
    auto want = [&](int k) { return only.empty() || std::find(only.begin(), only.end(), k) != only.end(); };

    int failed = 0;
    auto report = [&](int k, std::string const & name, auto && fn) {
        if (!want(k)) return;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (std::exception const & e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::cout << "criterion " << k << " " << name << ": " << (o.pass ? "PASS" : "FAIL") << "  [" << o.detail << "] ("
                  << fmt(s, 3) << " s)" << std::endl;
    };

    report(1, "group", group_suite);
    report(2, "trace lemma", trace_suite);
    report(3, "descent", descent_suite);
    PeriodRun pr;
    if (want(4) || want(5)) pr = period_run();
    report(4, "moduli point", [&] { return moduli_reproduction(pr); });
    report(5, "period relation", [&] { return period_relation(pr); });
    report(6, "theta", theta_suite);
    IsogenyRun ir;
    if (want(7) || want(8) || want(9)) ir = isogeny_run();
    report(7, "Schottky filter", [&] { return schottky_filter(ir); });
    report(8, "isogeny polynomial", [&] { return isogeny_polynomial_check(ir); });
    report(9, "field identity", [&] { return field_identity(ir); });
    report(10, "oracle equivalences", oracle_equivalences);
    return failed == 0 ? 0 : 1;
}
