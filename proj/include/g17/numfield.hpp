#pragma once

#include "g17/bigcx.hpp"
#include "g17/ffgroup.hpp"

#include <gmpxx.h>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace g17 {

using ZPoly = std::vector<mpz_class>;   // low to high
using QPoly = std::vector<mpq_class>;

QPoly qpoly_mul(QPoly const & a, QPoly const & b);
mpq_class qpoly_eval(QPoly const & a, mpq_class const & x);
// number of real roots of a squarefree polynomial (Sturm)
int sturm_real_root_count(QPoly const & f);
// characteristic polynomial of a square rational matrix (Faddeev-LeVerrier), monic, low to high
QPoly charpoly(std::vector<std::vector<mpq_class>> const & M);

class NFElem;

class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    // monic integer polynomial, irreducible over Q (checked), assumed monogenic
    static std::shared_ptr<const NumberField> make(ZPoly minpoly);
    // Q(sqrt(D)) for a fundamental discriminant D > 0, power basis {1, omega}
    static std::shared_ptr<const NumberField> real_quadratic(long disc);
    // the quartic Hecke field x^4 - x^3 - 3x^2 + x + 1
    static std::shared_ptr<const NumberField> hecke_field();

    int degree() const { return g_; }
    ZPoly const & minpoly() const { return f_; }
    long quad_disc() const { return qdisc_; }     // 0 unless built by real_quadratic
    mpz_class poly_discriminant() const;

    NFElem zero() const;
    NFElem one() const;
    NFElem gen() const;                            // the power basis generator
    NFElem from_int(long n) const;
    NFElem from_coeffs(std::vector<mpq_class> c) const;

    // real roots ascending at precision prec (refined by Newton from double seeds); cached
    std::vector<BigReal> real_roots(prec_t prec) const;
    bool totally_real() const;

    // multiplication by gen on the power basis (column convention)
    std::vector<std::vector<mpq_class>> companion() const;

private:
    NumberField() = default;
    int g_ = 0;
    ZPoly f_;
    long qdisc_ = 0;
    mutable std::mutex mu_;
    mutable std::map<prec_t, std::vector<BigReal>> roots_;
    mutable int totreal_ = -1;
};

using FieldRef = std::shared_ptr<const NumberField>;

class NFElem {
public:
    NFElem() = default;
    NFElem(FieldRef K, std::vector<mpq_class> c);

    FieldRef const & field() const { return K_; }
    std::vector<mpq_class> const & coeffs() const { return c_; }
    mpq_class const & operator[](int i) const { return c_[i]; }

    NFElem operator+(NFElem const & o) const;
    NFElem operator-(NFElem const & o) const;
    NFElem operator-() const;
    NFElem operator*(NFElem const & o) const;
    NFElem operator*(mpq_class const & s) const;
    NFElem operator/(NFElem const & o) const { return *this * o.inv(); }
    NFElem & operator+=(NFElem const & o) { return *this = *this + o; }
    NFElem & operator*=(NFElem const & o) { return *this = *this * o; }
    bool operator==(NFElem const & o) const { return c_ == o.c_; }
    bool operator!=(NFElem const & o) const { return c_ != o.c_; }

    NFElem inv() const;                       // throws std::domain_error on zero
    NFElem pow(long n) const;
    bool is_zero() const;
    bool is_integral_coeffs() const;          // all power-basis coordinates integers
    mpq_class trace() const;
    mpq_class norm() const;
    QPoly charpoly() const;
    std::vector<std::vector<mpq_class>> mult_matrix() const;

    BigReal embed(int k, prec_t prec) const;  // at the k-th ascending real root
    std::vector<BigReal> embeddings(prec_t prec) const;
    NFElem apply_poly_map(NFElem const & image_of_gen) const;   // substitute gen -> image

    std::string str() const;

private:
    FieldRef K_;
    std::vector<mpq_class> c_;
};

// ---- real quadratic fields

struct PrimeIdeal {
    long p = 0;
    int residue_degree = 1;
    long norm = 0;
    NFElem gen;
    int index = 1;          // label (norm, index)
    long root = -1;         // omega mod this prime for split or ramified primes, else -1
    char kind = 's';        // 's' split, 'i' inert, 'r' ramified
    bool operator==(PrimeIdeal const & o) const { return norm == o.norm && index == o.index && p == o.p; }
    bool operator<(PrimeIdeal const & o) const { return norm != o.norm ? norm < o.norm : index < o.index; }
    std::string label() const { return std::to_string(norm) + "." + std::to_string(index); }
};

struct generator_search_failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long kronecker(long D, long p);
std::vector<PrimeIdeal> prime_split(FieldRef const & F, long p, long search_bound = 0);
NFElem fundamental_unit(FieldRef const & F);
// the embedding omega -> larger root (sqrt(D) -> +sqrt(D))
BigReal embed_plus(NFElem const & x, prec_t prec);
// sign vector at (ascending) real embeddings
std::vector<int> signs(NFElem const & x);
bool totally_positive(NFElem const & x);
// try eps^k * (+-x), k = 0..4, for a totally positive associate
bool totally_positive_associate(NFElem const & x, NFElem & out);
// does pi divide x (x in Z_F), using norms
bool divides(NFElem const & pi, NFElem const & x);
// prime in the list generating the same ideal as x (|Norm x| prime or prime square)
PrimeIdeal const * identify_prime(std::vector<PrimeIdeal> const & list, NFElem const & x);

struct IdealFactored {
    std::vector<std::pair<PrimeIdeal, int>> factors;
    long norm = 1;
    NFElem gen;
};
std::vector<IdealFactored> ideals_of_norm_upto(FieldRef const & F, long X);

// ---- quartic Hecke field

struct CodifferentReport {
    bool generator = false;
    bool integral = false;
    mpq_class det;
    std::vector<int> signs;
    bool totally_positive = false;
};
CodifferentReport is_codifferent_generator(FieldRef const & K, NFElem const & d);

// automorphisms as images of the generator (identity first)
std::vector<NFElem> automorphisms(FieldRef const & K);

// reduction mod 2 into the x^4+x+1 model of F16; throws if 2 is not inert
class ResidueMap2 {
public:
    explicit ResidueMap2(FieldRef K);
    unsigned operator()(NFElem const & x) const;
    unsigned image_of_gen() const { return nu_; }
    FieldPtr field() const { return F16_; }
    ZPoly reduced_poly() const;   // min poly mod 2

private:
    FieldRef K_;
    FieldPtr F16_;
    unsigned nu_ = 0;
};

} // namespace g17
