#include "g17/hmfdata.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace g17 {

using json = nlohmann::json;

namespace {

mpq_class to_rational(json const & v, std::string const & where)
{
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (v.is_string()) {
        mpq_class q;
        if (q.set_str(v.get<std::string>(), 10) != 0) throw data_error(where + ": bad rational '" + v.get<std::string>() + "'");
        q.canonicalize();
        return q;
    }
    throw data_error(where + ": expected an integer or a rational string");
}

std::vector<mpq_class> rational_list(json const & v, std::string const & where)
{
    if (!v.is_array()) throw data_error(where + ": expected an array");
    std::vector<mpq_class> out;
    for (auto const & x : v) out.push_back(to_rational(x, where));
    return out;
}

json rational_json(mpq_class const & q)
{
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

json coeffs_json(NFElem const & x, int n)
{
    json a = json::array();
    for (int i = 0; i < n; ++i) a.push_back(rational_json(i < (int)x.coeffs().size() ? x.coeffs()[i] : mpq_class(0)));
    return a;
}

json require(json const & o, char const * key, std::string const & where)
{
    if (!o.contains(key)) throw data_error(where + ": missing field '" + key + "'");
    return o[key];
}

} // namespace

EigenEntry const * NewformRecord::find(PrimeIdeal const & P) const
{
    auto it = std::lower_bound(entries.begin(), entries.end(), P,
                               [](EigenEntry const & e, PrimeIdeal const & q) { return e.P < q; });
    if (it != entries.end() && it->P.norm == P.norm && it->P.index == P.index) return &*it;
    return nullptr;
}

void NewformRecord::sort_entries()
{
    std::sort(entries.begin(), entries.end(), [](EigenEntry const & a, EigenEntry const & b) { return a.P < b.P; });
}

EigenEntry const * NewformRecord::find(std::string const & label) const
{
    for (auto const & e : entries)
        if (e.P.label() == label) return &e;
    return nullptr;
}

std::vector<mpq_class> parse_univariate(std::string const & s, char var)
{
    std::vector<mpq_class> out;
    std::string t;
    for (char c : s)
        if (!std::isspace((unsigned char)c)) t += c;
    if (t.empty()) throw data_error("parse_univariate: empty expression");
    size_t i = 0;
    auto add = [&](int deg, mpq_class c) {
        if ((int)out.size() <= deg) out.resize(deg + 1);
        out[deg] += c;
    };
    while (i < t.size()) {
        int sign = 1;
        if (t[i] == '+' || t[i] == '-') {
            sign = t[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw data_error("parse_univariate: expected +/- in '" + s + "'");
        }
        mpq_class c = 1;
        size_t j = i;
        while (j < t.size() && (std::isdigit((unsigned char)t[j]) || t[j] == '/')) ++j;
        bool have_num = j > i;
        if (have_num) {
            if (c.set_str(t.substr(i, j - i), 10) != 0) throw data_error("parse_univariate: bad number in '" + s + "'");
            c.canonicalize();
            i = j;
        }
        int deg = 0;
        if (i < t.size() && t[i] == '*') {
            ++i;
            if (i >= t.size() || t[i] != var) throw data_error("parse_univariate: expected variable in '" + s + "'");
        }
        if (i < t.size() && t[i] == var) {
            ++i;
            deg = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                size_t k = i;
                while (k < t.size() && std::isdigit((unsigned char)t[k])) ++k;
                if (k == i) throw data_error("parse_univariate: bad exponent in '" + s + "'");
                deg = std::stoi(t.substr(i, k - i));
                i = k;
            }
        } else if (!have_num) {
            throw data_error("parse_univariate: unexpected character in '" + s + "'");
        }
        add(deg, sign * c);
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

void validate_newform(NewformRecord & r)
{
    prec_t p = 64;
    for (auto const & e : r.entries) {
        double lim = 2 * std::sqrt((double)e.P.norm) * (1 + 1e-12);
        for (auto const & x : e.ap.embeddings(p))
            if (std::fabs(x.to_double()) > lim)
                throw data_error("eigenvalue at " + e.P.label() + " violates the Ramanujan bound");
    }
    if (r.bound > 0) {
        for (long q = 2; q <= r.bound; ++q) {
            bool prime = true;
            for (long d = 2; d * d <= q; ++d)
                if (q % d == 0) { prime = false; break; }
            if (!prime) continue;
            for (auto const & P : prime_split(r.F, q)) {
                if (P.norm > r.bound) continue;
                if (!r.find(P)) {
                    if (divides(P.gen, r.level_gen))
                        r.warnings.push_back("no eigenvalue at level prime " + P.label());
                    else
                        throw data_error("eigenvalue table misses prime " + P.label() + " below the bound");
                }
            }
        }
    }
}

NewformRecord parse_newform(std::istream & in, std::string const & label)
{
    std::string line;
    int lineno = 0;
    NewformRecord r;
    r.label = label;
    bool have_header = false;
    std::map<long, std::vector<PrimeIdeal>> split_cache;
    std::set<std::pair<long, int>> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string where = "line " + std::to_string(lineno);
        json o;
        try {
            o = json::parse(line);
        } catch (json::exception const & e) {
            throw data_error(where + ": " + e.what());
        }
        if (!have_header) {
            for (char const * k : {"base_field_disc", "level_gen", "level_norm", "hecke_min_poly", "bound"})
                require(o, k, where + " (header)");
            r.F = NumberField::real_quadratic(o["base_field_disc"].get<long>());
            ZPoly f;
            for (auto const & c : rational_list(o["hecke_min_poly"], where)) {
                if (c.get_den() != 1) throw data_error(where + ": Hecke polynomial must be integral");
                f.push_back(c.get_num());
            }
            r.Kf = NumberField::make(f);
            r.level_gen = r.F->from_coeffs(rational_list(o["level_gen"], where));
            r.level_norm = o["level_norm"].get<long>();
            r.bound = o["bound"].get<long>();
            if (o.contains("label") && r.label.empty()) r.label = o["label"].get<std::string>();
            if (abs(r.level_gen.norm()) != r.level_norm) throw data_error(where + ": level generator does not have the level norm");
            have_header = true;
            continue;
        }
        for (char const * k : {"p", "norm", "gen", "ap"}) require(o, k, where);
        long p = o["p"].get<long>();
        auto it = split_cache.find(p);
        if (it == split_cache.end()) it = split_cache.emplace(p, prime_split(r.F, p)).first;
        NFElem gen = r.F->from_coeffs(rational_list(o["gen"], where));
        PrimeIdeal const * P = identify_prime(it->second, gen);
        if (!P || P->norm != o["norm"].get<long>()) throw data_error(where + ": generator is not a prime of the stated norm");
        EigenEntry e{*P, r.Kf->from_coeffs(rational_list(o["ap"], where)), divides(P->gen, r.level_gen)};
        if (!seen.insert({e.P.norm, e.P.index}).second) throw data_error(where + ": duplicate prime " + e.P.label());
        r.entries.push_back(e);
    }
    if (!have_header) throw data_error("empty newform file: missing header (base_field_disc, level_gen, level_norm, hecke_min_poly, bound)");
    r.sort_entries();
    validate_newform(r);
    return r;
}

NewformRecord load_newform(std::string const & path)
{
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    std::string label = path.substr(path.find_last_of('/') + 1);
    auto dot = label.rfind(".jsonl");
    if (dot != std::string::npos) label = label.substr(0, dot);
    auto r = parse_newform(in, "");
    if (r.label.empty()) r.label = label;
    return r;
}

void write_newform(NewformRecord const & r, std::ostream & out)
{
    json h;
    h["label"] = r.label;
    h["base_field_disc"] = r.F->quad_disc();
    h["level_gen"] = coeffs_json(r.level_gen, 2);
    h["level_norm"] = r.level_norm;
    json mp = json::array();
    for (auto const & c : r.Kf->minpoly()) mp.push_back(c.get_si());
    h["hecke_min_poly"] = mp;
    h["bound"] = r.bound;
    out << h.dump() << "\n";
    for (auto const & e : r.entries) {
        json o;
        o["p"] = e.P.p;
        o["norm"] = e.P.norm;
        o["gen"] = coeffs_json(e.P.gen, 2);
        o["ap"] = coeffs_json(e.ap, r.Kf->degree());
        out << o.dump() << "\n";
    }
}

PrimeIdeal galois_conjugate_prime(FieldRef const & F, PrimeIdeal const & P)
{
    if (P.kind != 's') return P;
    auto aut = automorphisms(F);
    NFElem g = P.gen.apply_poly_map(aut.at(1));
    auto L = prime_split(F, P.p);
    PrimeIdeal const * Q = identify_prime(L, g);
    if (!Q) throw std::logic_error("galois_conjugate_prime: conjugate not found");
    return *Q;
}

Mod2Report descent_check_mod2(NewformRecord const & f)
{
    ResidueMap2 R(f.Kf);
    auto const & k = R.field();
    Mod2Report rep;
    for (auto const & e : f.entries) {
        if (e.divides_level) continue;
        PrimeIdeal s = galois_conjugate_prime(f.F, e.P);
        EigenEntry const * c = f.find(s);
        if (!c) {
            rep.missing.push_back(e.P.label());
            continue;
        }
        ++rep.checked;
        if (R(c->ap) != k->pow(R(e.ap), 4)) rep.failures.push_back(e.P.label());
    }
    rep.pass = rep.failures.empty() && rep.checked > 0;
    return rep;
}

TraceReport trace_surjectivity(NewformRecord const & f)
{
    ResidueMap2 R(f.Kf);
    TraceReport t;
    for (auto const & e : f.entries)
        if (!e.divides_level) t.residues.insert(R(e.ap));
    for (unsigned x = 0; x < 16; ++x)
        if (!t.residues.count(x)) t.missing.push_back(x);
    t.surjective = t.missing.empty();
    return t;
}

ExactDescent exact_descent_check(NewformRecord const & f)
{
    auto aut = automorphisms(f.Kf);
    ExactDescent out;
    for (size_t i = 1; i < aut.size(); ++i) {
        bool ok = true;
        int n = 0;
        for (auto const & e : f.entries) {
            if (e.divides_level) continue;
            EigenEntry const * c = f.find(galois_conjugate_prime(f.F, e.P));
            if (!c) continue;
            ++n;
            if (e.ap.apply_poly_map(aut[i]) != c->ap) { ok = false; break; }
        }
        out.checked = std::max(out.checked, n);
        if (ok && n > 0 && !out.witness) out.witness = aut[i];
    }
    out.holds = (bool)out.witness;
    // every automorphism fixes every eigenvalue: the witness carries no information
    out.degenerate = aut.size() > 1;
    for (auto const & e : f.entries)
        for (size_t i = 1; i < aut.size() && out.degenerate; ++i)
            if (e.ap.apply_poly_map(aut[i]) != e.ap) out.degenerate = false;
    return out;
}

std::vector<BigReal> dirichlet_coefficients(NewformRecord const & f, PrimeCharacter const & chi, long X, int embedding,
                                            prec_t prec)
{
    std::vector<BigReal> lam(X + 1, BigReal(0L, prec));
    auto ideals = ideals_of_norm_upto(f.F, X);
    std::map<std::string, std::vector<BigReal>> powers;   // tau_j(a_{p^k}), k = 0..
    auto apk = [&](PrimeIdeal const & P, int k) -> BigReal const & {
        auto & v = powers[P.label()];
        if (v.empty()) {
            EigenEntry const * e = f.find(P);
            if (!e) throw data_error("dirichlet_coefficients: no eigenvalue at " + P.label() + " (norm " + std::to_string(P.norm) + ")");
            v.push_back(BigReal(1L, prec));
            v.push_back(e->ap.embed(embedding, prec));
        }
        EigenEntry const * e = f.find(P);
        while ((int)v.size() <= k) {
            size_t n = v.size();
            if (e->divides_level)
                v.push_back(v[n - 1] * v[1]);
            else
                v.push_back(v[n - 1] * v[1] - v[n - 2] * P.norm);
        }
        return v[k];
    };
    for (auto const & I : ideals) {
        BigReal term(1L, prec);
        int c = 1;
        for (auto const & [P, k] : I.factors) {
            int x = chi(P);
            for (int i = 0; i < k; ++i) c *= x;
            if (c == 0) break;
            term *= apk(P, k);
        }
        if (c == 0) continue;
        lam[I.norm] += c > 0 ? term : -term;
    }
    return lam;
}

} // namespace g17
