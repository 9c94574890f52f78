#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <vector>

namespace g17 {

// dense polynomials over Z/p, p < 2^31, low to high, no trailing zeros
using PolyP = std::vector<uint64_t>;

struct ModP {
    uint64_t p;
    explicit ModP(uint64_t p_) : p(p_) {}
    uint64_t inv(uint64_t a) const;
    void trim(PolyP & a) const;
    PolyP reduce(std::vector<mpz_class> const & f) const;
    PolyP mul(PolyP const & a, PolyP const & b) const;
    PolyP sub(PolyP const & a, PolyP const & b) const;
    PolyP rem(PolyP a, PolyP const & m) const;
    PolyP mulmod(PolyP const & a, PolyP const & b, PolyP const & m) const { return rem(mul(a, b), m); }
    PolyP powmod(PolyP const & a, mpz_class n, PolyP const & m) const;
    PolyP gcd(PolyP a, PolyP b) const;
    PolyP derivative(PolyP const & a) const;
    PolyP divexact(PolyP a, PolyP const & b) const;
    PolyP monic(PolyP a) const;
    bool squarefree(PolyP const & f) const;
    // degrees of irreducible factors (distinct-degree factorization); f squarefree, deg >= 1
    std::vector<int> ddf_degrees(PolyP f) const;
};

bool is_prime_u64(uint64_t n);

} // namespace g17
