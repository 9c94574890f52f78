#include "g17/hmfdata.hpp"

#ifdef G17_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"
#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace g17 {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string field_label_of(std::string const & label)
{
    auto dash = label.find('-');
    if (dash == std::string::npos) throw data_error("not a Hilbert modular form label: " + label);
    return label.substr(0, dash);
}

struct FileLock {
    int fd = -1;
    explicit FileLock(std::string const & path)
    {
        fd = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd >= 0) ::flock(fd, LOCK_EX);
    }
    ~FileLock()
    {
        if (fd >= 0) {
            ::flock(fd, LOCK_UN);
            ::close(fd);
        }
    }
};

bool read_file(fs::path const & p, std::string & out)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

void write_atomic(fs::path const & p, std::string const & s)
{
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << s;
        if (!out) throw data_error("cannot write cache file " + tmp.string());
    }
    fs::rename(tmp, p);
}

std::string http_get(FetchConfig const & cfg, std::string const & path)
{
    std::string last;
    for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::duration<double>(cfg.backoff_seconds * (1 << (attempt - 1))));
        try {
            httplib::Client cli(cfg.base_url);
            cli.set_connection_timeout(10, 0);
            cli.set_read_timeout(60, 0);
            cli.set_follow_location(true);
            auto res = cli.Get(path);
            if (!res) {
                last = "request failed: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status == 404) throw data_error("not found: " + path);
            if (res->status != 200) {
                last = "HTTP " + std::to_string(res->status);
                continue;
            }
            return res->body;
        } catch (data_error const &) {
            throw;
        } catch (std::exception const & e) {
            last = e.what();
        }
    }
    throw network_error("GET " + cfg.base_url + path + ": " + last);
}

json first_record(std::string const & body, std::string const & what)
{
    json j;
    try {
        j = json::parse(body);
    } catch (json::exception const & e) {
        throw data_error(what + ": " + e.what());
    }
    if (j.is_object() && j.contains("data")) j = j["data"];
    if (j.is_array()) {
        if (j.empty()) throw data_error(what + ": label not found");
        j = j[0];
    }
    if (!j.is_object()) throw data_error(what + ": unexpected response shape");
    return j;
}

// "[norm, p, gen]" with gen a polynomial in w
std::vector<std::string> bracket_fields(std::string s)
{
    auto a = s.find('['), b = s.rfind(']');
    if (a == std::string::npos || b == std::string::npos || b < a) throw data_error("bad prime/ideal string: " + s);
    s = s.substr(a + 1, b - a - 1);
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

} // namespace

FetchConfig default_fetch_config()
{
    FetchConfig c;
    if (char const * e = std::getenv("G17_CACHE_DIR"))
        c.cache_dir = e;
    else if (char const * h = std::getenv("HOME"))
        c.cache_dir = std::string(h) + "/.cache/g17";
    if (char const * e = std::getenv("G17_OFFLINE")) c.offline = std::string(e) != "0";
    if (char const * e = std::getenv("G17_LMFDB_URL")) c.base_url = e;
    return c;
}

LmfdbPayload lmfdb_fetch_raw(std::string const & label, FetchConfig const & cfg)
{
    std::string fl = field_label_of(label);
    LmfdbPayload out;
    std::unique_ptr<FileLock> lock;
    fs::path fp, dp;
    if (!cfg.cache_dir.empty()) {
        fs::create_directories(cfg.cache_dir);
        lock = std::make_unique<FileLock>((fs::path(cfg.cache_dir) / (label + ".lock")).string());
        fp = fs::path(cfg.cache_dir) / (label + ".form.json");
        dp = fs::path(cfg.cache_dir) / (fl + ".field.json");
        if (read_file(fp, out.form_json) && read_file(dp, out.field_json)) {
            out.from_cache = true;
            return out;
        }
    }
    if (cfg.offline) throw network_error("offline and " + label + " is not cached");
    out.form_json = http_get(cfg, cfg.forms_path + "?label=" + label + "&_format=json");
    out.field_json = http_get(cfg, cfg.fields_path + "?label=" + fl + "&_format=json");
    first_record(out.form_json, label);
    first_record(out.field_json, fl);
    if (!cfg.cache_dir.empty()) {
        write_atomic(fp, out.form_json);
        write_atomic(dp, out.field_json);
    }
    return out;
}

NewformRecord newform_from_lmfdb(std::string const & form_json, std::string const & field_json)
{
    json f = first_record(form_json, "form"), k = first_record(field_json, "field");
    NewformRecord r;
    r.label = f.value("label", std::string());
    std::string fl = f.value("field_label", r.label.empty() ? std::string() : field_label_of(r.label));
    // field label d.r.D.i: degree, real places, discriminant, index
    std::vector<std::string> parts;
    std::stringstream ss(fl);
    for (std::string x; std::getline(ss, x, '.');) parts.push_back(x);
    if (parts.size() != 4 || parts[0] != "2" || parts[1] != "2") throw data_error("not a real quadratic field label: " + fl);
    r.F = NumberField::real_quadratic(std::stol(parts[2]));
    auto hp = parse_univariate(f.at("hecke_polynomial").get<std::string>(), 'x');
    ZPoly hz;
    for (auto const & c : hp) {
        if (c.get_den() != 1) throw data_error("Hecke polynomial is not integral");
        hz.push_back(c.get_num());
    }
    r.Kf = NumberField::make(hz);
    r.level_norm = f.at("level_norm").get<long>();
    auto li = bracket_fields(f.at("level_ideal").get<std::string>());
    if (li.size() < 3) throw data_error("level_ideal lacks a generator");
    r.level_gen = r.F->from_coeffs(parse_univariate(li[2], 'w'));
    auto const & primes = k.at("primes");
    auto const & ev = f.at("hecke_eigenvalues");
    std::map<long, std::vector<PrimeIdeal>> cache;
    size_t n = std::min(primes.size(), ev.size());
    for (size_t i = 0; i < n; ++i) {
        auto pf = bracket_fields(primes[i].get<std::string>());
        if (pf.size() < 3) throw data_error("bad prime entry " + primes[i].get<std::string>());
        long norm = std::stol(pf[0]);
        NFElem gen = r.F->from_coeffs(parse_univariate(pf[2], 'w'));
        long p = std::stol(pf[1]);
        auto it = cache.find(p);
        if (it == cache.end()) it = cache.emplace(p, prime_split(r.F, p)).first;
        PrimeIdeal const * P = identify_prime(it->second, gen);
        if (!P || P->norm != norm) throw data_error("prime entry does not match: " + primes[i].get<std::string>());
        NFElem a = r.Kf->from_coeffs(parse_univariate(ev[i].get<std::string>(), 'e'));
        r.entries.push_back({*P, a, divides(P->gen, r.level_gen)});
        r.bound = norm;   // primes are listed by norm
    }
    // the last norm may be only partially covered
    if (n < primes.size()) {
        long next = std::stol(bracket_fields(primes[n].get<std::string>())[0]);
        if (next == r.bound) --r.bound;
    }
    r.sort_entries();
    validate_newform(r);
    return r;
}

NewformRecord lmfdb_fetch(std::string const & label, FetchConfig const & cfg)
{
    auto raw = lmfdb_fetch_raw(label, cfg);
    auto r = newform_from_lmfdb(raw.form_json, raw.field_json);
    if (r.label.empty()) r.label = label;
    return r;
}

} // namespace g17
