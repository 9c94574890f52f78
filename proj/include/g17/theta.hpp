#pragma once

#include "g17/bigcx.hpp"
#include "g17/linalg.hpp"

#include <vector>

namespace g17 {

// half-integer characteristic: bit i of a (resp. b) set means a_i = 1/2
struct ThetaChar {
    unsigned a = 0, b = 0;
    bool even() const { return (__builtin_popcount(a & b) & 1) == 0; }
};

// all 4^g theta constants theta[a;b](0,Z), indexed by (a << g) | b;
// when squared is set the entries are theta[a;b](0,Z)^2
struct ThetaConstants {
    int g = 0;
    prec_t prec = 0;
    bool squared = false;
    std::vector<BigComplex> v;
    long points = 0;       // lattice points summed (half space)
    double radius2 = 0;    // ellipsoid bound used for the lattice sum

    BigComplex const & operator()(unsigned a, unsigned b) const { return v[(a << g) | b]; }
    BigComplex const & operator()(ThetaChar c) const { return (*this)(c.a, c.b); }
};

// Absolute error of each value is below 2^-prec. radius_scale multiplies
// the truncation radius (used to validate the tail bound).
ThetaConstants theta_constants(CMatrix const & Z, prec_t prec, double radius_scale = 1.0);
// squares via theta[a;b](Z)^2 = sum_al (-1)^{al.b} theta[al;0](2Z) theta[al+a;0](2Z);
// needs about a quarter of the lattice points of theta_constants at g = 4
ThetaConstants theta_squares(CMatrix const & Z, prec_t prec, double radius_scale = 1.0);
BigComplex theta_constant(ThetaChar ch, CMatrix const & Z, prec_t prec);

BigComplex eisenstein_E4(ThetaConstants const & th);
BigComplex eisenstein_E4(CMatrix const & Z, prec_t prec);

// (sum theta^8)^2 - 16 sum theta^16 over even characteristics, g = 4
BigComplex schottky_J(ThetaConstants const & th);
BigComplex schottky_J(CMatrix const & Z, prec_t prec);
// |J| / (16 sum |theta|^16), scale free
BigReal schottky_normalized(ThetaConstants const & th);

// upper bound on the number of lattice points the summation would visit
double theta_point_estimate(CMatrix const & Z, prec_t prec, double radius_scale = 1.0);

} // namespace g17
