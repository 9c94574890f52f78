// command line driver; JSON on stdout, progress on stderr
#include "g17/galverify.hpp"
#include "g17/hmfdata.hpp"
#include "g17/lseries.hpp"
#include "g17/pipeline.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace g17;
using json = nlohmann::json;

namespace {

enum Exit { OK = 0, GENERIC = 1, DATA = 2, NUMERIC = 3, VERDICT_FAIL = 4 };

struct Globals {
    int threads = 0;
    std::string cache_dir;
    bool offline = false;
    std::string out;
    bool quiet = false;
};
Globals G;

void emit(json const & j)
{
    std::string s = j.dump(2);
    std::cout << s << std::endl;
    if (!G.out.empty()) {
        std::ofstream f(G.out);
        f << s << "\n";
    }
}

void note(std::string const & s)
{
    if (!G.quiet) std::cerr << s << std::endl;
}

FetchConfig fetch_config()
{
    auto c = default_fetch_config();
    if (!G.cache_dir.empty()) c.cache_dir = G.cache_dir;
    if (G.offline) c.offline = true;
    return c;
}

// a newform file path or an LMFDB label
NewformRecord load_form(std::string const & arg)
{
    if (std::filesystem::exists(arg)) return load_newform(arg);
    note("fetching " + arg);
    return lmfdb_fetch(arg, fetch_config());
}

std::string str(BigReal const & x, int digits)
{
    return x.str(digits);
}

json cjson(BigComplex const & z, int digits)
{
    return json{{"re", str(z.re, digits)}, {"im", str(z.im, digits)}};
}

// 2^8 1 style
std::string partition_str(std::vector<int> const & p)
{
    std::string out;
    for (size_t i = 0; i < p.size();) {
        size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        if (!out.empty()) out += " ";
        out += std::to_string(p[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

// "fx17", a polynomial in x, a text file holding one, or a JSON file with a "TD" array (leading first)
ZPoly load_poly(std::string const & arg)
{
    if (arg == "fx17") return fx17_polynomial();
    std::string text = arg;
    if (std::filesystem::exists(arg)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            json j = json::parse(text);
            if (!j.contains("TD")) throw data_error(arg + ": no TD array");
            ZPoly f;
            for (auto const & c : j["TD"]) f.push_back(mpz_class(c.get<std::string>()));
            std::reverse(f.begin(), f.end());
            return f;
        }
    }
    while (!text.empty() && std::isspace((unsigned char)text.back())) text.pop_back();
    auto q = parse_univariate(text, 'x');
    ZPoly f;
    for (auto const & c : q) {
        if (c.get_den() != 1) throw data_error("polynomial has non-integral coefficients");
        f.push_back(c.get_num());
    }
    return f;
}

int cmd_descent(std::string const & form)
{
    auto f = load_form(form);
    auto m = descent_check_mod2(f);
    auto t = trace_surjectivity(f);
    auto e = exact_descent_check(f);
    bool pass = m.pass && t.surjective && e.holds;
    json j;
    j["form"] = f.label;
    j["bound"] = f.bound;
    j["primes"] = f.entries.size();
    j["mod2"] = {{"pass", m.pass}, {"checked", m.checked}, {"failures", m.failures}, {"missing", m.missing}};
    j["trace"] = {{"surjective", t.surjective}, {"residues", std::vector<unsigned>(t.residues.begin(), t.residues.end())},
                  {"missing", t.missing}};
    j["exact"] = {{"holds", e.holds}, {"degenerate", e.degenerate}, {"checked", e.checked},
                  {"witness", e.witness ? e.witness->str() : ""}};
    j["warnings"] = f.warnings;
    j["verdict"] = pass ? "PASS" : "FAIL";
    emit(j);
    note(std::string("descent check: ") + (pass ? "PASS" : "FAIL"));
    return pass ? OK : VERDICT_FAIL;
}

int cmd_group(std::string const & name, bool verify)
{
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), ::tolower);
    if (n != "17t7") throw std::invalid_argument("only 17t7 is built");
    auto Gp = build_17T7();
    json j;
    j["group"] = "17T7";
    j["order"] = Gp.order();
    j["degree"] = Gp.degree();
    bool ok = true;
    if (verify) {
        bool trans = Gp.is_transitive();
        size_t stab = Gp.stabilizer_order(0);
        auto Dg = Gp.derived_subgroup();
        bool normal = Dg.is_normal_subgroup_of(Gp);
        bool simple = Dg.is_simple();
        j["transitive"] = trans;
        j["stabilizer_order"] = stab;
        j["derived_order"] = Dg.order();
        j["derived_index"] = Gp.order() / Dg.order();
        j["derived_normal"] = normal;
        j["derived_simple"] = simple;
        std::vector<json> ct;
        for (auto const & [t, c] : Gp.cycle_type_counts()) ct.push_back(json{{"type", partition_str(t)}, {"count", c}});
        j["cycle_types"] = ct;
        ok = Gp.order() == 8160 && trans && stab == 480 && Gp.order() == 2 * Dg.order() && normal && simple;
        j["verdict"] = ok ? "PASS" : "FAIL";
    }
    emit(j);
    note("order " + std::to_string(Gp.order()));
    return ok ? OK : VERDICT_FAIL;
}

std::vector<std::string> split_signs(std::string const & s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string x; std::getline(ss, x, ',');) {
        if (x.size() != 2 || (x[0] != '+' && x[0] != '-') || (x[1] != '+' && x[1] != '-'))
            throw std::invalid_argument("bad sign " + x);
        out.push_back(x);
    }
    return out;
}

struct PeriodsArgs {
    std::string form;
    std::string signs = "++,+-,-+,--";
    int digits = 120;
    long bound = 25;
    std::vector<std::string> include;
    bool partial = false;
    int min_characters = 3;
};

PeriodSet compute_periods(NewformRecord const & f, PeriodsArgs const & a, json & report)
{
    if (a.digits < 30) throw std::invalid_argument("precision must be at least 30 digits");
    if (a.bound < 1) throw std::invalid_argument("conductor bound must be at least 1");
    prec_t prec = bits_for_digits(a.digits);
    PeriodSet P;
    P.Kf = f.Kf;
    P.prec = prec;
    LValueOptions lo;
    lo.allow_partial = a.partial;
    PeriodOptions po;
    po.min_characters = a.min_characters;
    for (auto const & s : split_signs(a.signs)) {
        std::array<int, 2> sg{s[0] == '+' ? 1 : -1, s[1] == '+' ? 1 : -1};
        auto chars = primitive_characters_upto(f.F, a.bound, sg, &f.level_gen);
        if (!a.include.empty()) {
            std::vector<RayClassCharacter> keep;
            for (auto const & c : chars)
                if (std::find(a.include.begin(), a.include.end(), c.name()) != a.include.end()) keep.push_back(c);
            chars = keep;
        }
        note("sign " + s + ": " + std::to_string(chars.size()) + " characters");
        std::vector<TwistSample> samples;
        json lv = json::array();
        for (auto const & c : chars) {
            samples.push_back(twist_sample(f, c, prec, lo));
            auto const & t = samples.back();
            json e{{"character", c.name()}, {"conductor_norm", c.conductor_norm}};
            std::vector<json> vals;
            for (auto const & L : t.lvalues)
                vals.push_back(json{{"L", cjson(L.value, 30)}, {"root_number", L.root_number}, {"terms", L.terms},
                                    {"tail_log2", L.tail_log2}});
            e["embeddings"] = vals;
            lv.push_back(e);
        }
        report["lvalues"][s] = lv;
        assemble_periods(P, s, samples, po);
        std::vector<json> om;
        for (auto const & w : P.omega[s]) om.push_back(cjson(w, a.digits));
        report["periods"][s] = om;
        std::vector<json> al;
        for (auto const & x : P.alpha[s]) {
            std::vector<std::string> co;
            for (auto const & c : x.coords) co.push_back(c.get_str());
            al.push_back(json{{"character", x.character}, {"coords", co}, {"residual_log10", x.residual_log10}});
        }
        report["alpha"][s] = al;
    }
    report["disagreements"] = P.disagreements;
    if (P.omega.count("++"))
        for (auto const & [s, w] : P.omega) {
            if (s == "++") continue;
            auto z = moduli_point(P, s);
            std::vector<json> zs;
            for (auto const & c : z.point.z) zs.push_back(cjson(c, a.digits));
            report["moduli_points"][s] = {{"z", zs}, {"flipped", z.flipped}, {"interior", z.interior}};
        }
    if (P.omega.size() == 4) report["quadratic_relation_log10"] = quadratic_relation_log10(P);
    return P;
}

int cmd_periods(PeriodsArgs const & a)
{
    auto f = load_form(a.form);
    json j;
    j["form"] = f.label;
    j["digits"] = a.digits;
    j["conductor_bound"] = a.bound;
    compute_periods(f, a, j);
    emit(j);
    return OK;
}

struct IsogenyArgs {
    std::string form;
    std::string point;
    PeriodsArgs periods;
    bool quick = false;
    long final_bits = 900;
    std::vector<int> order;
};

int cmd_isogeny(IsogenyArgs const & a)
{
    json j;
    FieldRef K;
    NFElem d;
    std::vector<std::string> zr, zi;
    if (!a.form.empty()) {
        auto f = load_form(a.form);
        PeriodsArgs pa = a.periods;
        pa.form = a.form;
        pa.signs = "++,+-";
        json pj;
        auto P = compute_periods(f, pa, pj);
        auto z = moduli_point(P, "+-");
        for (auto const & c : z.point.z) {
            zr.push_back(c.re.str(a.periods.digits));
            zi.push_back(c.im.str(a.periods.digits));
        }
        K = f.Kf;
        // a codifferent generator is needed for the polarization; the bundled one matches this Hecke field
        auto m = load_moduli_point_file(default_moduli_point_path());
        if (m.K->minpoly() != K->minpoly()) throw data_error("no codifferent generator known for this Hecke field");
        d = m.d;
        j["periods"] = pj;
        j["source"] = f.label;
    } else {
        auto m = load_moduli_point_file(a.point.empty() ? default_moduli_point_path() : a.point);
        K = m.K;
        d = m.d;
        zr = m.z_re;
        zi = m.z_im;
        j["source"] = a.point.empty() ? default_moduli_point_path() : a.point;
    }
    PipelineOptions o;
    o.refine = !a.quick;
    o.final_prec = a.final_bits;
    o.stop_bits = a.final_bits - 100;
    o.order = a.order;
    o.verbose = !G.quiet;
    auto R = run_isogeny_pipeline(K, d, zr, zi, o);
    j["embedding_order"] = R.order;
    j["neighbor"] = {{"index", R.selection.index}, {"log10_values", R.selection.log10_values},
                     {"runner_up", R.selection.runner_up}};
    std::vector<std::string> lead;
    for (int i = 1; i <= 3; ++i) lead.push_back(R.T.coeffs[i].re.str(25));
    j["T_leading"] = lead;
    j["D"] = R.D.get_str();
    std::vector<std::string> pre;
    for (auto const & x : R.prefix.a) pre.push_back(x.get_str());
    j["recognized"] = pre;
    j["recognized_log10_residual"] = R.prefix.log10_residual;
    if (!a.quick) {
        std::vector<std::string> td;
        for (auto const & c : R.TD) td.push_back(c.get_str());
        j["TD"] = td;
        j["TD_max_residual_log10"] = R.max_residual_log10;
        j["constant_digits"] = R.constant_digits;
        j["newton_log2_residuals"] = R.newton.log2_residuals;
    }
    emit(j);
    return OK;
}

int cmd_census(std::string const & poly, std::string const & group, std::string const & compare, int primes)
{
    auto f = load_poly(poly);
    json j;
    bool ok = true;
    auto c = cycle_census(f, primes);
    j["degree"] = (int)f.size() - 1;
    j["primes"] = primes;
    j["excluded"] = c.excluded;
    std::map<Partition, int> counts;
    for (auto const & [p, part] : c.patterns) counts[part]++;
    std::vector<json> cj;
    for (auto const & [part, n] : counts) cj.push_back(json{{"type", partition_str(part)}, {"count", n}});
    j["patterns"] = cj;
    if (!group.empty()) {
        std::string g = group;
        std::transform(g.begin(), g.end(), g.begin(), ::tolower);
        if (g != "17t7") throw std::invalid_argument("only 17t7 is built");
        auto r = census_consistent(c, build_17T7(), std::min(primes, 100));
        j["group"] = "17T7";
        j["membership"] = r.membership;
        j["coverage"] = r.coverage;
        j["max_frequency_deviation"] = r.max_frequency_deviation;
        std::vector<json> viol;
        for (auto const & [p, part] : r.violations) viol.push_back(json{{"p", p}, {"type", partition_str(part)}});
        j["violations"] = viol;
        j["consistent"] = r.consistent;
        ok = ok && r.consistent;
    }
    if (!compare.empty()) {
        auto g = load_poly(compare);
        auto r = fields_likely_equal(f, g, primes);
        j["compare"] = {{"equal_patterns", r.equal_patterns}, {"compared", r.compared}, {"first_difference", r.first_difference}};
        j["comparison"] = r.equal_patterns ? "EQUAL-PATTERNS" : "DIFFERENT";
        ok = ok && r.equal_patterns;
    }
    emit(j);
    return ok ? OK : VERDICT_FAIL;
}

int cmd_fetch(std::string const & label)
{
    auto cfg = fetch_config();
    auto raw = lmfdb_fetch_raw(label, cfg);
    auto f = newform_from_lmfdb(raw.form_json, raw.field_json);
    json j{{"label", label},           {"from_cache", raw.from_cache}, {"cache_dir", cfg.cache_dir},
           {"level_norm", f.level_norm}, {"bound", f.bound},           {"primes", f.entries.size()},
           {"hecke_field", f.Kf->minpoly().size() - 1}};
    emit(j);
    return OK;
}

int run(std::function<int()> const & fn)
{
    auto fail = [](int code, std::string const & kind, std::string const & msg) {
        emit(json{{"error", kind}, {"message", msg}});
        std::cerr << kind << ": " << msg << std::endl;
        return code;
    };
    try {
        return fn();
    } catch (coverage_error const & e) {
        return fail(NUMERIC, "coverage", e.what());
    } catch (numeric_failure const & e) {
        return fail(NUMERIC, "numeric", e.what());
    } catch (lseries_error const & e) {
        return fail(NUMERIC, "lseries", e.what());
    } catch (overflow_error const & e) {
        return fail(NUMERIC, "overflow", e.what());
    } catch (network_error const & e) {
        return fail(DATA, "network", e.what());
    } catch (data_error const & e) {
        return fail(DATA, "data", e.what());
    } catch (std::invalid_argument const & e) {
        return fail(DATA, "input", e.what());
    } catch (std::exception const & e) {
        return fail(GENERIC, "internal", e.what());
    }
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Hilbert modular form descent, periods and isogeny polynomials"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", G.threads, "worker threads (default: hardware)");
    app.add_option("--cache-dir", G.cache_dir, "LMFDB cache directory");
    app.add_flag("--offline", G.offline, "never touch the network");
    app.add_option("--out", G.out, "also write the JSON report here");
    app.add_flag("-q,--quiet", G.quiet, "no progress on stderr");

    std::string form;
    auto * dc = app.add_subcommand("descent-check", "mod 2 descent, trace surjectivity and exact descent");
    dc->add_option("form", form, "newform file or LMFDB label")->required();

    std::string group_name;
    bool verify = false;
    auto * gr = app.add_subcommand("group", "build a permutation group");
    gr->add_option("name", group_name, "17t7")->required();
    gr->add_flag("--verify", verify, "check order, transitivity and normal structure");

    PeriodsArgs pa;
    auto * pe = app.add_subcommand("periods", "twisted L-values, periods and moduli points");
    pe->add_option("form", pa.form, "newform file or LMFDB label")->required();
    pe->add_option("--signs", pa.signs, "comma separated sign list");
    pe->add_option("--digits", pa.digits, "working precision in decimal digits");
    pe->add_option("--conductor-bound", pa.bound, "largest character conductor norm");
    pe->add_option("--character", pa.include, "restrict to these character names");
    pe->add_option("--min-characters", pa.min_characters, "characters needed per sign");
    pe->add_flag("--partial", pa.partial, "use all stored eigenvalues even if short of the precision target");

    IsogenyArgs ia;
    auto * ip = app.add_subcommand("isogeny-poly", "2-neighbors, Schottky selection, T, D and the integral T_D");
    ip->add_option("form", ia.form, "newform file or LMFDB label (default: bundled moduli point)");
    ip->add_option("--point", ia.point, "moduli point JSON");
    ip->add_option("--digits", ia.periods.digits, "period precision when starting from a form");
    ip->add_option("--conductor-bound", ia.periods.bound, "largest character conductor norm");
    ip->add_option("--final-bits", ia.final_bits, "precision of the Newton stage");
    ip->add_option("--order", ia.order, "embedding order (default: searched)");
    ip->add_flag("--quick", ia.quick, "stop after recognizing D and a_1..a_4");

    std::string poly, cgroup, compare;
    int primes = 200;
    auto * ce = app.add_subcommand("census", "Frobenius cycle types");
    ce->add_option("poly", poly, "fx17, a polynomial in x, or a file")->required();
    ce->add_option("--group", cgroup, "compare against the cycle types of this group");
    ce->add_option("--compare", compare, "second polynomial");
    ce->add_option("--primes", primes, "number of primes");

    std::string label;
    auto * fe = app.add_subcommand("fetch", "LMFDB ingestion into the cache");
    fe->add_option("label", label, "LMFDB label")->required();

    CLI11_PARSE(app, argc, argv);
    if (G.threads > 0) setenv("G17_THREADS", std::to_string(G.threads).c_str(), 1);

    if (*dc) return run([&] { return cmd_descent(form); });
    if (*gr) return run([&] { return cmd_group(group_name, verify); });
    if (*pe) return run([&] { return cmd_periods(pa); });
    if (*ip) return run([&] { return cmd_isogeny(ia); });
    if (*ce) return run([&] { return cmd_census(poly, cgroup, compare, primes); });
    if (*fe) return run([&] { return cmd_fetch(label); });
    return GENERIC;
}
