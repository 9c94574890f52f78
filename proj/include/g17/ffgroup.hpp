#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace g17 {

// F_q for q = l^e <= 2^16, elements stored as their coefficient vector in
// base l (so 0..q-1), arithmetic through log/antilog tables
class FiniteField {
public:
    // defpoly: monic, low to high, length e+1, coefficients mod l
    FiniteField(unsigned l, std::vector<unsigned> defpoly);
    static std::shared_ptr<const FiniteField> make(unsigned l, unsigned e);   // first irreducible defpoly in lex order with a primitive root x
    static std::shared_ptr<const FiniteField> f16();                          // x^4 + x + 1 over F_2

    unsigned l, e, q;
    std::vector<unsigned> defpoly;

    unsigned add(unsigned a, unsigned b) const;
    unsigned neg(unsigned a) const;
    unsigned sub(unsigned a, unsigned b) const { return add(a, neg(b)); }
    unsigned mul(unsigned a, unsigned b) const;
    unsigned inv(unsigned a) const;
    unsigned div(unsigned a, unsigned b) const { return mul(a, inv(b)); }
    unsigned pow(unsigned a, uint64_t n) const;
    unsigned frob(unsigned a, unsigned k) const { return pow(a, ipow(l, k)); }
    unsigned from_int(long n) const;            // image of an integer
    unsigned gen() const { return gen_; }       // a primitive element
    unsigned order(unsigned a) const;           // multiplicative order
    bool is_subfield_elem(unsigned a, unsigned d) const { return frob(a, d) == a; }
    // polynomial over the prime field (low to high) evaluated at a
    unsigned eval_prime_poly(std::vector<long> const & c, unsigned a) const;

    static uint64_t ipow(uint64_t b, unsigned k) { uint64_t r = 1; while (k--) r *= b; return r; }

private:
    std::vector<unsigned> addt_;
    std::vector<int> log_;
    std::vector<unsigned> exp_;
    unsigned gen_ = 0;
    unsigned mul_slow(unsigned a, unsigned b) const;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

struct FqElem {
    FieldPtr K;
    unsigned v = 0;
    FqElem() = default;
    FqElem(FieldPtr k, unsigned x) : K(std::move(k)), v(x) {}
    FqElem operator+(FqElem const & o) const { return {K, K->add(v, o.v)}; }
    FqElem operator-(FqElem const & o) const { return {K, K->sub(v, o.v)}; }
    FqElem operator*(FqElem const & o) const { return {K, K->mul(v, o.v)}; }
    FqElem operator/(FqElem const & o) const { return {K, K->div(v, o.v)}; }
    bool operator==(FqElem const & o) const { return v == o.v; }
    bool operator!=(FqElem const & o) const { return v != o.v; }
    bool is_zero() const { return v == 0; }
};

struct Mat2 {
    unsigned a, b, c, d;          // elements of a common field
    bool operator==(Mat2 const & o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator<(Mat2 const & o) const
    {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        if (c != o.c) return c < o.c;
        return d < o.d;
    }
};

Mat2 mat_mul(FiniteField const & K, Mat2 const & x, Mat2 const & y);
unsigned mat_det(FiniteField const & K, Mat2 const & x);
unsigned mat_trace(FiniteField const & K, Mat2 const & x);
Mat2 mat_inv(FiniteField const & K, Mat2 const & x);
Mat2 mat_scale(FiniteField const & K, unsigned s, Mat2 const & x);
Mat2 mat_identity();

// (tr g)^2 / det g; throws on singular g
unsigned u_invariant(FiniteField const & K, Mat2 const & g);

// points of P^1(F_q): index i < q is (i : 1), index q is (1 : 0)
struct ProjPoint {
    unsigned x, y;
    bool operator==(ProjPoint const & o) const { return x == o.x && y == o.y; }
};
ProjPoint proj_normalize(FiniteField const & K, unsigned x, unsigned y);
unsigned proj_index(FiniteField const & K, ProjPoint const & P);
ProjPoint proj_point(FiniteField const & K, unsigned idx);

// (x:y) -> (a s(x) + b s(y) : c s(x) + d s(y)), s = l^frob_power Frobenius
ProjPoint pgammal_action(FiniteField const & K, Mat2 const & g, unsigned frob_power, ProjPoint const & P);

using Perm = std::vector<uint8_t>;
Perm perm_compose(Perm const & p, Perm const & q);   // (p*q)(i) = p(q(i))
Perm perm_inverse(Perm const & p);
std::vector<int> cycle_type(Perm const & p);         // descending

class PermGroup {
public:
    PermGroup(unsigned degree, std::vector<Perm> gens, size_t cap = 1000000);
    static PermGroup from_elements(unsigned degree, std::set<Perm> elems);

    unsigned degree() const { return n_; }
    std::vector<Perm> const & generators() const { return gens_; }
    std::set<Perm> const & elements() const { return elems_; }
    size_t order() const { return elems_.size(); }
    bool contains(Perm const & p) const { return elems_.count(p) != 0; }
    bool is_transitive() const;
    size_t stabilizer_order(unsigned pt) const;
    bool is_normal_subgroup_of(PermGroup const & G) const;
    PermGroup derived_subgroup() const;
    // normal closure of a set of elements
    PermGroup normal_closure(std::vector<Perm> const & xs) const;
    bool is_simple() const;
    std::map<std::vector<int>, size_t> cycle_type_counts() const;
    std::set<std::vector<int>> cycle_type_set() const;

private:
    unsigned n_;
    std::vector<Perm> gens_;
    std::set<Perm> elems_;
};

// PSL2-type action group generated by SL2(F_16) and the Frobenius a -> a^4
PermGroup build_17T7();
// the image of SL2(F_16) alone
PermGroup build_psl2_16();
// generators of SL2: upper transvection, diag(g, 1/g), [[0,-1],[1,0]]
std::vector<Mat2> sl2_generators(FiniteField const & K);

struct LargeImageReport {
    bool cond[4] = {false, false, false, false};
    Mat2 witness[4] = {};
    bool contains_sl2 = false;
};
// conditions on the generated subgroup G <= GL2(k), #k >= 7:
//  (i) a split semisimple element (distinct roots in k)
//  (ii) a nonsplit semisimple element (irreducible char poly)
//  (iii) projective order > 5
//  (iv) u(g) generates k over the prime field
// G is enumerated explicitly; all four <=> G >= SL2(k)
LargeImageReport large_image_check(FieldPtr K, std::vector<Mat2> const & elems);

// true iff traces is all of F_q; q in {2,3,5} refused
bool trace_lemma_check(std::set<unsigned> const & traces, unsigned q);
struct unsupported_field : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SubgroupCensus {
    size_t subgroups = 0;
    size_t full_trace = 0;        // subgroups whose trace set is all of k
    bool only_whole_group = false;
};
// all subgroups of SL2(F_q), found by joining cyclic subgroups
SubgroupCensus sl2_subgroup_census(unsigned q);
bool trace_lemma_bruteforce(unsigned q);

// element set of the subgroup generated by matrices (closure)
unsigned projective_order(FiniteField const & K, Mat2 const & g);
std::set<Mat2> mat_closure(FiniteField const & K, std::vector<Mat2> const & gens, size_t cap = 1000000);

} // namespace g17
