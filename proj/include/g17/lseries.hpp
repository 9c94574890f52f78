#pragma once

#include "g17/abvar.hpp"
#include "g17/hmfdata.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace g17 {

struct lseries_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// the stored eigenvalues do not reach the truncation the precision target needs
struct coverage_error : lseries_error {
    coverage_error(std::string const & msg, double achievable_bits) : lseries_error(msg), achievable_bits(achievable_bits) {}
    double achievable_bits;
};

// Z_F / (c) for a principal ideal of a real quadratic field; residues keyed 0..N-1
class ResidueRing {
public:
    ResidueRing(FieldRef F, NFElem c);
    FieldRef const & field() const { return F_; }
    NFElem const & modulus() const { return c_; }
    long size() const { return a_ * d_; }
    long key(NFElem const & x) const;        // x integral
    NFElem rep(long key) const;
    long mul(long x, long y) const;
    std::vector<long> const & units() const { return units_; }
    bool is_unit(long key) const { return unit_[key]; }

private:
    FieldRef F_;
    NFElem c_;
    long a_ = 1, b_ = 0, d_ = 1;   // HNF basis {a, b + d omega}
    std::vector<long> units_;
    std::vector<char> unit_;
};

// quadratic character of the ray class group mod c * (both infinite places)
struct RayClassCharacter {
    FieldRef F;
    NFElem modulus;
    long modulus_norm = 1;
    std::vector<long> gen_keys;      // generators of (Z_F/c)^x modulo squares
    std::vector<int> gen_values;     // +-1
    std::array<int, 2> sign{1, 1};   // chi_infinity at the ascending real places
    std::map<long, int> chi0;        // on every unit residue
    std::shared_ptr<const ResidueRing> ring;
    NFElem conductor;
    long conductor_norm = 1;

    bool primitive() const { return conductor_norm == modulus_norm; }
    bool trivial() const;
    std::string sign_string() const;   // "+-" etc.
    std::string name() const;
    int finite_part(NFElem const & x) const;   // 0 unless x is a unit mod c
    int operator()(NFElem const & x) const;    // on the principal ideal (x)
    int on_prime(PrimeIdeal const & P) const;
    // the primitive character inducing this one
    RayClassCharacter primitive_version() const;
};

// all quadratic characters mod c * infinity (trivial included), optionally of one sign
std::vector<RayClassCharacter> enumerate_quadratic_characters(FieldRef const & F, NFElem const & c,
                                                              std::optional<std::array<int, 2>> sign = std::nullopt);
// characters of conductor norm <= bound, coprime to the level if given, deduplicated
std::vector<RayClassCharacter> primitive_characters_upto(FieldRef const & F, long bound,
                                                         std::optional<std::array<int, 2>> sign = std::nullopt,
                                                         NFElem const * level = nullptr);

struct GaussSum {
    BigComplex value;
    NFElem gamma;                 // generator of conductor * different used
    bool gamma_matches = true;    // false if neither a totally positive nor a chi_inf-signed gamma exists
};
GaussSum gauss_sum(RayClassCharacter const & chi, prec_t prec);

struct LValueOptions {
    double target_bits = 0;       // 0: prec - 16
    bool allow_partial = false;   // use every stored coefficient instead of throwing coverage_error
    long max_terms = 0;           // 0: no cap; otherwise truncate at min(cap, needed)
    double cutoff = 1.2;          // second smoothing cutoff
};

struct LValue {
    BigComplex value;
    int root_number = 0;          // 0 when both signs are consistent
    bool degenerate = false;
    long terms = 0;
    double tail_log2 = 0;         // log2 bound on the neglected tail
    double mismatch_log2[2] = {0, 0};   // log2 |S(1) - S(cutoff)| for eps = +1, -1
    BigReal conductor;
};

// log2 of a bound on sum_{n > X} of the smoothed terms
double lvalue_tail_log2(double A, long X, double cutoff);
long lvalue_terms_needed(double A, double target_bits, double cutoff);

// L(tau_j(f) x chi, 1) through the smoothed functional equation
LValue lvalue_at_1(NewformRecord const & f, RayClassCharacter const & chi, int embedding, prec_t prec,
                   LValueOptions const & opt = {});
// the same with precomputed Dirichlet coefficients lambda_0..lambda_X and sqrt(conductor)
LValue lvalue_from_coefficients(std::vector<BigReal> const & lambda, BigReal const & sqrt_conductor, prec_t prec,
                                LValueOptions const & opt = {});

// -4 pi^2 sqrt(disc F) G(chi) L(tau_j f x chi, 1) for every embedding
struct TwistSample {
    RayClassCharacter chi;
    std::vector<BigComplex> values;
    std::vector<LValue> lvalues;
};

struct RecognizedAlpha {
    std::string character;
    std::vector<mpz_class> coords;   // on the power basis of K_f
    double residual_log10 = 0;
};

struct PeriodSet {
    FieldRef Kf;
    prec_t prec = 0;
    std::map<std::string, std::vector<BigComplex>> omega;   // sign -> Omega_j, j over ascending embeddings
    std::map<std::string, std::vector<RecognizedAlpha>> alpha;
    std::vector<std::string> disagreements;
};

struct PeriodOptions {
    int min_characters = 3;
    double vanishing_log10 = 0;     // 0: -digits/2
    double residual_log10 = 0;      // 0: -digits/4
    long den_bound_digits = 0;      // 0: digits/6
};

// Cremona's trick on precomputed samples of one sign
void assemble_periods(PeriodSet & P, std::string const & sign, std::vector<TwistSample> const & samples,
                      PeriodOptions const & opt = {});
TwistSample twist_sample(NewformRecord const & f, RayClassCharacter const & chi, prec_t prec, LValueOptions const & opt = {});
PeriodSet recover_periods(NewformRecord const & f, std::string const & sign, std::vector<RayClassCharacter> const & chars,
                          prec_t prec, LValueOptions const & lopt = {}, PeriodOptions const & popt = {});

struct ModuliPointReport {
    ModuliPoint point;
    std::vector<bool> flipped;
    bool interior = true;     // every Im z_j clearly positive
};
ModuliPointReport moduli_point(PeriodSet const & P, std::string const & sign);

// max_j |O++ O-- + O+- O-+| / max_j |O++ O--|
double quadratic_relation_log10(PeriodSet const & P);

} // namespace g17
