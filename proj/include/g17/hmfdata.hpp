#pragma once

#include "g17/numfield.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace g17 {

struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct network_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenEntry {
    PrimeIdeal P;
    NFElem ap;
    bool divides_level = false;
};

struct NewformRecord {
    std::string label;
    FieldRef F;                  // real quadratic base field
    FieldRef Kf;                 // Hecke field
    NFElem level_gen;
    long level_norm = 0;
    long bound = 0;              // eigenvalues cover every prime of norm <= bound
    std::vector<EigenEntry> entries;   // sorted by (norm, index); call sort_entries after editing
    std::vector<std::string> warnings;

    EigenEntry const * find(PrimeIdeal const & P) const;
    EigenEntry const * find(std::string const & label) const;
    void sort_entries();
};

// JSON lines: a header object, then one object per prime
NewformRecord parse_newform(std::istream & in, std::string const & label = "");
NewformRecord load_newform(std::string const & path);
void write_newform(NewformRecord const & r, std::ostream & out);
// the Ramanujan bound and coverage checks; violations throw data_error
void validate_newform(NewformRecord & r);

// polynomial in one variable with rational coefficients, e.g. "1/2*e^3 - e + 4" (low to high)
std::vector<mpq_class> parse_univariate(std::string const & s, char var);

struct FetchConfig {
    std::string base_url = "https://www.lmfdb.org";
    std::string forms_path = "/api/hmf_forms/";
    std::string fields_path = "/api/hmf_fields/";
    std::string cache_dir;       // empty: no cache
    bool offline = false;        // cache only
    int retries = 3;
    double backoff_seconds = 1.0;
};
FetchConfig default_fetch_config();   // honours G17_CACHE_DIR, G17_OFFLINE, G17_LMFDB_URL

// the raw API responses, cached on disk by label
struct LmfdbPayload {
    std::string form_json, field_json;
    bool from_cache = false;
};
LmfdbPayload lmfdb_fetch_raw(std::string const & label, FetchConfig const & cfg);
NewformRecord newform_from_lmfdb(std::string const & form_json, std::string const & field_json);
NewformRecord lmfdb_fetch(std::string const & label, FetchConfig const & cfg);

PrimeIdeal galois_conjugate_prime(FieldRef const & F, PrimeIdeal const & P);

struct Mod2Report {
    bool pass = false;
    int checked = 0;
    std::vector<std::string> failures;   // prime labels
    std::vector<std::string> missing;    // conjugate eigenvalue absent
};
// residue(a_{sigma p}) = residue(a_p)^4 in F16 at every stored good prime
Mod2Report descent_check_mod2(NewformRecord const & f);

struct TraceReport {
    bool surjective = false;
    std::set<unsigned> residues;   // F16 elements in the x^4+x+1 encoding
    std::vector<unsigned> missing;
};
TraceReport trace_surjectivity(NewformRecord const & f);

struct ExactDescent {
    bool holds = false;
    std::optional<NFElem> witness;   // image of the Hecke-field generator
    bool degenerate = false;         // every automorphism works (eigenvalues in a fixed subfield)
    int checked = 0;
};
ExactDescent exact_descent_check(NewformRecord const & f);

// lambda_n = sum over ideals of norm n of chi(n) tau_j(a_n), n = 0..X (lambda_0 = 0);
// chi is given on primes, 0 allowed
using PrimeCharacter = std::function<int(PrimeIdeal const &)>;
std::vector<BigReal> dirichlet_coefficients(NewformRecord const & f, PrimeCharacter const & chi, long X, int embedding,
                                            prec_t prec);

} // namespace g17
